"""Shipped scenarios for the K-unstable index-2 surfaces, and family sweeps.

Each preset is built as a plain JSON-able dict so that exporting it and
re-running the file goes through exactly the same parser.
"""

from __future__ import annotations

import csv
import io
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from .scenario import Scenario, parse_scenario, run

F = Fraction


class BadParameters(ValueError):
    pass


def _s(x) -> str:
    return str(F(x))


def _gram(rows) -> list[list[str]]:
    return [[_s(x) for x in row] for row in rows]


def s9() -> dict:
    """P(1,3,3,4) degree 9: H_x = L1 + L2 + L3 meeting at p_t = 1/4(1,1)."""
    self_int, meet = F(-5, 12), F(1, 4)
    gram = [[self_int if i == j else meet for j in range(3)] for i in range(3)]
    germs = {"L1": [[1, 0]], "L2": [[0, 1]], "L3": [[1, 0], [0, 1]]}
    return {
        "name": "s9",
        "notes": "t^2x + yz(ay + bz) + x^3 f(x,y,z) = 0",
        "surface": {"weights": [1, 3, 3, 4], "degree": 9},
        "curves": {
            "names": ["L1", "L2", "L3"],
            "gram": _gram(gram),
            "antican": ["2", "2", "2"],
            "hyperplane_degrees": ["1/12"] * 3,
        },
        "singularities": [{"label": "p_t", "m": 4, "raw_weights": [1, 1], "coordinates": ["y", "z"]}],
        "blowup": {"point": "p_t", "weights": [1, 1], "germs": germs},
        "lct": {
            "components": [{"name": c, "mult": "1", "germs": {"p_t": g}} for c, g in germs.items()],
            "points": ["p_t"],
        },
        "mode": "both",
    }


def fam_11nm(n: int, m: int) -> dict:
    """P(1,1,n+1,m+1) degree n+m+2: H_z splits into n+m+2 lines through p_t."""
    k = n + m + 2
    names = [f"L{i + 1}" for i in range(k)]
    gram = [[F(-m, m + 1) if i == j else F(1, m + 1) for j in range(k)] for i in range(k)]
    germs = {}
    for i, nm in enumerate(names):
        germs[nm] = [[1, 0]] if i == 0 else [[0, 1]] if i == 1 else [[1, 0], [0, 1]]
    return {
        "name": f"fam-11nm(n={n},m={m})",
        "notes": "tz + f_{n+m+2}(x,y) = 0",
        "surface": {"weights": [1, 1, n + 1, m + 1], "degree": k},
        "curves": {
            "names": names,
            "gram": _gram(gram),
            "antican": [_s(F(2, n + 1))] * k,
            "hyperplane_degrees": [_s(F(1, m + 1))] * k,
        },
        "singularities": [
            {"label": "p_t", "m": m + 1, "raw_weights": [1, 1], "coordinates": ["x", "y"]},
            {"label": "p_z", "m": n + 1, "raw_weights": [1, 1], "coordinates": ["x", "y"]},
        ],
        "blowup": {"point": "p_t", "weights": [1, 1], "germs": germs},
        "mode": "beta",
    }


def fam_3n4(n: int) -> dict:
    """P(1,3,3n+4,3n+5) degree 6n+11: H_x = L + R, blown up at p_t with weights (2, n+1)."""
    a, b = 3 * n + 4, 3 * n + 5
    gram = [
        [F(-(6 * n + 7), a * b), F(2, b)],
        [F(2, b), F(-4, 3 * b)],
    ]
    return {
        "name": f"fam-3n4(n={n})",
        "notes": "t^2x + ty^{n+2} + z^2y + x f_{6n+10}(x,y,z,t) = 0",
        "surface": {"weights": [1, 3, a, b], "degree": 6 * n + 11},
        "curves": {
            "names": ["L", "R"],
            "gram": _gram(gram),
            "antican": ["2", "2"],
            "hyperplane_degrees": [_s(F(1, a * b)), _s(F(2, 3 * b))],
        },
        "singularities": [{"label": "p_t", "m": b, "raw_weights": [3, a], "coordinates": ["y", "z"]}],
        "blowup": {"point": "p_t", "weights": [2, n + 1], "germs": {"L": [[1, 0]], "R": [[n + 1, 0], [0, 2]]}},
        "mode": "beta",
    }


def _single_hyperplane(name: str, notes: str, weights, degree, point, components) -> dict:
    h2 = F(degree, weights[0] * weights[1] * weights[2] * weights[3])
    return {
        "name": name,
        "notes": notes,
        "surface": {"weights": list(weights), "degree": degree},
        "curves": {"names": ["H_x"], "gram": [[_s(h2)]], "antican": ["2"], "hyperplane_degrees": [_s(h2)]},
        "singularities": [point],
        "lct": {"components": components, "points": [point["label"]]},
        "mode": "alpha",
    }


def s27() -> dict:
    return _single_hyperplane(
        "s27",
        "t^2x + z^3 + z^2 f_9(x,y) + z f_18(x,y) + f_27(x,y) = 0; H_x = (z^3 + zy^3 = 0)",
        (1, 6, 9, 13), 27,
        {"label": "p_t", "m": 13, "raw_weights": [6, 9], "coordinates": ["y", "z"]},
        [
            {"name": "z", "mult": "1", "germs": {"p_t": [[0, 1]]}},
            {"name": "z^2+y^3", "mult": "1", "germs": {"p_t": [[0, 2], [3, 0]]}},
        ],
    )


def s45() -> dict:
    return _single_hyperplane(
        "s45",
        "z^3 + y^5 + x f(x,y,z,t) = 0; H_x = (z^3 + y^5 = 0)",
        (1, 9, 15, 22), 45,
        {"label": "p_t", "m": 22, "raw_weights": [9, 15], "coordinates": ["y", "z"]},
        [{"name": "z^3+y^5", "mult": "1", "germs": {"p_t": [[0, 3], [5, 0]]}}],
    )


def fam_6n9(n: int) -> dict:
    return _single_hyperplane(
        f"fam-6n9(n={n})",
        "t^2x + tx f + z^2y + azy^{n+2} + by^{2n+3} + x g = 0; H_x = y(z^2 + azy^{n+1} + by^{2n+2})",
        (1, 3, 3 * n + 3, 3 * n + 4), 6 * n + 9,
        {"label": "p_t", "m": 3 * n + 4, "raw_weights": [3, 3 * n + 3], "coordinates": ["y", "z"]},
        [
            {"name": "y", "mult": "1", "germs": {"p_t": [[1, 0]]}},
            {"name": "z^2+azy^{n+1}+by^{2n+2}", "mult": "1", "germs": {"p_t": [[0, 2], [n + 1, 1], [2 * n + 2, 0]]}},
        ],
    )


PRESETS = ("s9", "s27", "s45", "fam-6n9", "fam-11nm", "fam-3n4")


def preset_dict(name: str, n: int | None = None, m: int | None = None, allow_boundary: bool = False) -> dict:
    def need(x, what):
        if x is None:
            raise BadParameters(f"preset {name} needs --{what}")
        if x < 0:
            raise BadParameters(f"--{what} must be nonnegative, got {x}")
        return x

    if name == "s9":
        return s9()
    if name == "s27":
        return s27()
    if name == "s45":
        return s45()
    if name == "fam-6n9":
        return fam_6n9(need(n, "n"))
    if name == "fam-3n4":
        return fam_3n4(need(n, "n"))
    if name == "fam-11nm":
        n, m = need(n, "n"), need(m, "m")
        if n > m or (n == m and not allow_boundary):
            raise BadParameters(f"fam-11nm needs n < m (n = m with --allow-boundary), got n={n}, m={m}")
        return fam_11nm(n, m)
    raise BadParameters(f"unknown preset {name!r}; choose from {', '.join(PRESETS)}")


def preset(name: str, n: int | None = None, m: int | None = None, allow_boundary: bool = False) -> Scenario:
    return parse_scenario(preset_dict(name, n, m, allow_boundary))


def run_preset(name: str, n: int | None = None, m: int | None = None, allow_boundary: bool = False) -> dict:
    return run(preset(name, n, m, allow_boundary))


# --- closed forms ------------------------------------------------------------

def beta_11nm(n: int, m: int) -> Fraction:
    return F(8, 3 * (m + 1) ** 2) - F(8, 3 * (n + 1) ** 2)


def beta_3n4(n: int) -> Fraction:
    """beta(E) for the (1,3,3n+4,3n+5) family with (-K)^2 = 4 O(1)^2 throughout."""
    num = 54 * n ** 3 + 189 * n ** 2 + 171 * n + 14
    return F(-4 * num, 27 * (3 * n + 4) ** 2 * (3 * n + 5) ** 2)


def integral_3n4(n: int) -> Fraction:
    num = 108 * n ** 3 + 594 * n ** 2 + 1053 * n + 601
    return F(8 * num, 27 * (3 * n + 4) ** 2 * (3 * n + 5) ** 2)


def lct_6n9(n: int) -> Fraction:
    return F(n + 2, 2 * n + 3)


# --- sweeps ------------------------------------------------------------------

FAMILIES = ("fam-11nm", "fam-3n4", "fam-6n9")


def _row(args) -> dict:
    family, n, m, allow_boundary = args
    rep = run_preset(family, n, m, allow_boundary)
    if family == "fam-6n9":
        a = rep["alpha"]
        expected = lct_6n9(n)
        got = F(a["lct_ub"])
        return {"family": family, "n": n, "lct_ub": a["lct_ub"], "delta_ub": a["delta_ub"],
                "verdict": a["verdict"], "closed_form": str(expected), "matches": got == expected}
    b = rep["beta"]
    expected = beta_11nm(n, m) if family == "fam-11nm" else beta_3n4(n)
    got = F(b["beta"])
    row = {"family": family, "n": n}
    if family == "fam-11nm":
        row["m"] = m
    row.update({"beta": b["beta"], "verdict": b["verdict"], "closed_form": str(expected), "matches": got == expected})
    return row


def sweep(
    family: str,
    n_range: range,
    m_range: range | None = None,
    allow_boundary: bool = False,
    workers: int = 1,
) -> list[dict]:
    """One row per parameter tuple; raises BadParameters if a row disagrees with its closed form."""
    if family not in FAMILIES:
        raise BadParameters(f"unknown family {family!r}; choose from {', '.join(FAMILIES)}")
    if family == "fam-11nm":
        if m_range is None:
            raise BadParameters("fam-11nm sweeps need an m range")
        jobs = [(family, n, m, allow_boundary) for m in m_range for n in n_range
                if n < m or (allow_boundary and n == m)]
        jobs.sort(key=lambda j: (j[1], j[2]))
    else:
        jobs = [(family, n, None, False) for n in n_range]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(_row, jobs))
    else:
        rows = [_row(j) for j in jobs]
    bad = [r for r in rows if not r["matches"]]
    if bad:
        raise BadParameters(f"{len(bad)} rows disagree with the closed form, first: {bad[0]}")
    return rows


def rows_to_csv(rows: list[dict]) -> str:
    if not rows:
        return ""
    fields = [k for k in rows[0] if k not in ("closed_form", "matches")]
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=fields, extrasaction="ignore", lineterminator="\n")
    w.writeheader()
    w.writerows(rows)
    return buf.getvalue()
