"""JSON scenarios in, JSON/text reports out.

Every rational is written as the string "p/q" (or "p"); floats are refused
on input and never produced on output.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Any

from .betaflow import BetaReport, DegenerateConfig, Verdict, beta
from .geometry import (
    BlowupResult,
    CurveSystem,
    GeometryError,
    MonomialGerm,
    blow_up,
    pullback_anticanonical,
    validate_config,
)
from .lctalpha import AlphaReport, BoundaryDivisor, Component, alpha_verdict
from .surface import QuotientPoint, SurfaceError, SurfaceSpec, antican_square, hyperplane_square, normalize_quotient, validate

MODES = ("beta", "alpha", "both")


class ScenarioError(ValueError):
    """Schema or validation failure, anchored at a dotted path in the JSON."""

    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}" if path else message)
        self.path = path
        self.message = message


@dataclass(frozen=True)
class BlowupRequest:
    point: str
    weights: tuple[int, int]
    germs: dict[str, MonomialGerm | None]


@dataclass(frozen=True)
class LctRequest:
    divisor: BoundaryDivisor
    points: tuple[str, ...]


@dataclass(frozen=True)
class Scenario:
    name: str
    surface: SurfaceSpec
    curves: CurveSystem
    singularities: dict[str, QuotientPoint]
    blowup: BlowupRequest | None
    lct: LctRequest | None
    mode: str
    notes: str = ""
    source: dict | None = None


# --- parsing ---------------------------------------------------------------

def _rational(x, path: str) -> Fraction:
    if isinstance(x, bool) or isinstance(x, float):
        raise ScenarioError(path, f"expected an integer or a 'p/q' string, got {x!r}")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        if "." in x or "e" in x.lower():
            raise ScenarioError(path, f"decimal {x!r} is not allowed; write it as 'p/q'")
        try:
            return Fraction(x.strip())
        except (ValueError, ZeroDivisionError):
            raise ScenarioError(path, f"cannot parse rational {x!r}") from None
    raise ScenarioError(path, f"expected an integer or a 'p/q' string, got {x!r}")


def _int(x, path: str) -> int:
    if isinstance(x, bool) or not isinstance(x, int):
        raise ScenarioError(path, f"expected an integer, got {x!r}")
    return x


def _get(obj: dict, key: str, path: str, kind=None, required=True):
    if not isinstance(obj, dict):
        raise ScenarioError(path, "expected an object")
    if key not in obj:
        if required:
            raise ScenarioError(f"{path}.{key}" if path else key, "missing required key")
        return None
    val = obj[key]
    if kind is not None and not isinstance(val, kind):
        raise ScenarioError(f"{path}.{key}" if path else key, f"expected {kind.__name__}, got {type(val).__name__}")
    return val


def _germ(data, path: str) -> MonomialGerm | None:
    if data is None:
        return None
    if not isinstance(data, list) or not data:
        raise ScenarioError(path, "a germ is a nonempty list of [a, c] exponent pairs or null")
    mons = []
    for k, mon in enumerate(data):
        if not (isinstance(mon, list) and len(mon) == 2):
            raise ScenarioError(f"{path}[{k}]", "expected an exponent pair [a, c]")
        a, c = _int(mon[0], f"{path}[{k}][0]"), _int(mon[1], f"{path}[{k}][1]")
        if a < 0 or c < 0:
            raise ScenarioError(f"{path}[{k}]", "exponents must be nonnegative")
        mons.append((a, c))
    return MonomialGerm.of(mons)


def parse_scenario(data: dict) -> Scenario:
    if not isinstance(data, dict):
        raise ScenarioError("", "scenario must be a JSON object")
    name = _get(data, "name", "", str, required=False) or "scenario"
    notes = _get(data, "notes", "", str, required=False) or ""

    surf = _get(data, "surface", "", dict)
    weights = _get(surf, "weights", "surface", list)
    if len(weights) != 4:
        raise ScenarioError("surface.weights", "expected four weights")
    spec = SurfaceSpec(
        tuple(_int(w, f"surface.weights[{i}]") for i, w in enumerate(weights)),
        _int(_get(surf, "degree", "surface"), "surface.degree"),
    )
    try:
        validate(spec)
    except SurfaceError as exc:
        raise ScenarioError("surface", str(exc)) from exc

    singularities: dict[str, QuotientPoint] = {}
    for k, s in enumerate(_get(data, "singularities", "", list, required=False) or []):
        path = f"singularities[{k}]"
        label = _get(s, "label", path, str)
        raw = _get(s, "raw_weights", path, list)
        if len(raw) != 2:
            raise ScenarioError(f"{path}.raw_weights", "expected two weights")
        coords = _get(s, "coordinates", path, list, required=False) or ["u", "v"]
        try:
            singularities[label] = normalize_quotient(
                _int(_get(s, "m", path), f"{path}.m"),
                (_int(raw[0], f"{path}.raw_weights[0]"), _int(raw[1], f"{path}.raw_weights[1]")),
                label,
                tuple(str(c) for c in coords),
            )
        except SurfaceError as exc:
            raise ScenarioError(path, str(exc)) from exc

    cdata = _get(data, "curves", "", dict)
    names = tuple(_get(cdata, "names", "curves", list))
    gram_rows = _get(cdata, "gram", "curves", list)
    if len(gram_rows) != len(names):
        raise ScenarioError("curves.gram", f"expected {len(names)} rows, got {len(gram_rows)}")
    gram = []
    for i, row in enumerate(gram_rows):
        if not isinstance(row, list) or len(row) != len(names):
            raise ScenarioError(f"curves.gram[{i}]", f"expected a row of length {len(names)}")
        gram.append(tuple(_rational(x, f"curves.gram[{i}][{j}]") for j, x in enumerate(row)))
    antican = _get(cdata, "antican", "curves", list)
    if len(antican) != len(names):
        raise ScenarioError("curves.antican", f"expected {len(names)} coefficients")
    antican = tuple(_rational(x, f"curves.antican[{i}]") for i, x in enumerate(antican))
    hdeg = _get(cdata, "hyperplane_degrees", "curves", list, required=False)
    if hdeg is not None:
        if len(hdeg) != len(names):
            raise ScenarioError("curves.hyperplane_degrees", f"expected {len(names)} values")
        hdeg = tuple(_rational(x, f"curves.hyperplane_degrees[{i}]") for i, x in enumerate(hdeg))

    mode = _get(data, "mode", "", str, required=False) or "both"
    if mode not in MODES:
        raise ScenarioError("mode", f"must be one of {MODES}, got {mode!r}")

    blowup = None
    bdata = _get(data, "blowup", "", dict, required=False)
    germs: dict[str, MonomialGerm | None] = {}
    marked = None
    if bdata is not None:
        point = _get(bdata, "point", "blowup", str)
        if point not in singularities:
            raise ScenarioError("blowup.point", f"unknown point {point!r}")
        bw = _get(bdata, "weights", "blowup", list)
        if len(bw) != 2:
            raise ScenarioError("blowup.weights", "expected two weights")
        for cname, g in (_get(bdata, "germs", "blowup", dict, required=False) or {}).items():
            if cname not in names:
                raise ScenarioError(f"blowup.germs.{cname}", "unknown curve")
            germs[cname] = _germ(g, f"blowup.germs.{cname}")
        blowup = BlowupRequest(point, (_int(bw[0], "blowup.weights[0]"), _int(bw[1], "blowup.weights[1]")), germs)
        marked = singularities[point]

    try:
        curves = CurveSystem(names, tuple(gram), antican, marked, germs, hdeg)
    except (GeometryError, ValueError) as exc:
        raise ScenarioError("curves", str(exc)) from exc

    lct = None
    ldata = _get(data, "lct", "", dict, required=False)
    if ldata is not None:
        comps = []
        for k, c in enumerate(_get(ldata, "components", "lct", list)):
            path = f"lct.components[{k}]"
            cg = {}
            for label, g in (_get(c, "germs", path, dict, required=False) or {}).items():
                if label not in singularities:
                    raise ScenarioError(f"{path}.germs.{label}", "unknown point")
                cg[label] = _germ(g, f"{path}.germs.{label}")
            mult = _rational(_get(c, "mult", path), f"{path}.mult")
            if mult <= 0:
                raise ScenarioError(f"{path}.mult", "multiplicity must be positive")
            comps.append(Component(mult, cg, _get(c, "name", path, str, required=False) or f"D{k}"))
        pts = tuple(_get(ldata, "points", "lct", list, required=False) or [])
        for k, label in enumerate(pts):
            if label not in singularities:
                raise ScenarioError(f"lct.points[{k}]", f"unknown point {label!r}")
        lct = LctRequest(BoundaryDivisor(tuple(comps)), pts)

    if mode in ("beta", "both") and blowup is None:
        raise ScenarioError("blowup", f"mode {mode!r} needs a blowup section")
    if mode in ("alpha", "both") and lct is None:
        raise ScenarioError("lct", f"mode {mode!r} needs an lct section")

    return Scenario(name, spec, curves, singularities, blowup, lct, mode, notes, data)


def load_scenario(text: str) -> Scenario:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ScenarioError("", f"line {exc.lineno}: invalid JSON: {exc.msg}") from exc
    return parse_scenario(data)


def locate_line(text: str, path: str) -> int | None:
    """Best-effort line number of a dotted JSON path: follow its keys in order."""
    pos = 0
    found = None
    for part in path.replace("]", "").replace("[", ".").split("."):
        if not part or part.isdigit():
            continue
        idx = text.find(f'"{part}"', pos)
        if idx < 0:
            break
        pos = idx
        found = idx
    if found is None:
        return None
    return text.count("\n", 0, found) + 1


# --- running -----------------------------------------------------------------

def q(x: Fraction) -> str:
    return str(Fraction(x))


def _beta_section(sc: Scenario, br: BlowupResult, rep: BetaReport) -> dict:
    cs = br.curves
    pq = rep.volume_curve
    segs = []
    for i, (c0, c1, c2) in enumerate(pq.segments):
        segs.append({
            "from": q(pq.breakpoints[i]),
            "to": q(pq.breakpoints[i + 1]),
            "negative_support": list(pq.supports[i]) if pq.supports else [],
            "c0": q(c0), "c1": q(c1), "c2": q(c2),
        })
    return {
        "point": br.point.label,
        "type": br.point.type_label(),
        "weights": list(br.weights),
        "log_discrepancy": q(br.log_discrepancy),
        "discrepancy": q(br.discrepancy),
        "e_square": q(br.e_square),
        "pullback_coeffs": {n: q(br.pullback_coeffs[n]) for n in br.base.names},
        "curves": list(cs.names),
        "gram": [[q(x) for x in row] for row in cs.gram],
        "pullback_anticanonical": {n: q(c) for n, c in zip(cs.names, pullback_anticanonical(br).coeffs)},
        "breakpoints": [q(b) for b in pq.breakpoints],
        "segments": segs,
        "tau": q(rep.tau),
        "a_times_antican_sq": q(rep.a_times_volume),
        "integral": q(rep.integral),
        "beta": q(rep.beta),
        "verdict": str(rep.verdict),
    }


def _alpha_section(rep: AlphaReport) -> dict:
    w = rep.witness
    witness = {"kind": w.kind, "value": q(w.value)}
    if w.point is not None:
        witness["point"] = w.point
    if w.weights is not None:
        witness["weights"] = list(w.weights)
    if w.component:
        witness["component"] = w.component
    return {
        "lct_ub": q(rep.lct_ub),
        "witness": witness,
        "alpha_ub": q(rep.alpha_ub),
        "delta_ub": q(rep.delta_ub),
        "verdict": str(rep.verdict),
    }


def compute(sc: Scenario) -> tuple[BetaReport | None, AlphaReport | None, BlowupResult | None]:
    """Run the requested computations; raises ScenarioError on invalid data."""
    try:
        validate_config(sc.surface, sc.curves)
    except GeometryError as exc:
        raise ScenarioError("curves.gram", str(exc)) from exc
    brep = arep = br = None
    if sc.mode in ("beta", "both"):
        req = sc.blowup
        try:
            br = blow_up(sc.surface, sc.curves, sc.singularities[req.point], req.weights)
            brep = beta(sc.surface, br)
        except GeometryError as exc:
            raise ScenarioError("blowup", str(exc)) from exc
        except DegenerateConfig as exc:
            raise ScenarioError("blowup", str(exc)) from exc
    if sc.mode in ("alpha", "both"):
        req = sc.lct
        try:
            arep = alpha_verdict(sc.surface, req.divisor, [sc.singularities[p] for p in req.points])
        except (GeometryError, ValueError) as exc:
            raise ScenarioError("lct", str(exc)) from exc
    return brep, arep, br


def run(sc: Scenario) -> dict:
    brep, arep, br = compute(sc)
    report: dict[str, Any] = {
        "scenario": sc.source if sc.source is not None else {"name": sc.name},
        "surface": {
            "weights": list(sc.surface.weights),
            "degree": sc.surface.degree,
            "index": sc.surface.index,
            "hyperplane_square": q(hyperplane_square(sc.surface)),
            "antican_square": q(antican_square(sc.surface)),
        },
        "singularities": {label: p.type_label() for label, p in sc.singularities.items()},
        "validation": [
            {"identity": name, "passed": ok, "detail": detail}
            for name, ok, detail in validate_config(sc.surface, sc.curves, strict=False).checks
        ],
    }
    verdicts = []
    if brep is not None:
        report["beta"] = _beta_section(sc, br, brep)
        verdicts.append(brep.verdict)
    if arep is not None:
        report["alpha"] = _alpha_section(arep)
        verdicts.append(arep.verdict)
    overall = Verdict.NOT_K_SEMISTABLE if Verdict.NOT_K_SEMISTABLE in verdicts else Verdict.INCONCLUSIVE
    report["verdict"] = str(overall)
    return report


def dumps(obj: dict) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def format_text(report: dict) -> str:
    """Human-readable report: singularity, blow-up, nef threshold, Zariski, integral, beta, then lct."""
    s = report["surface"]
    out = []
    name = report["scenario"].get("name", "scenario")
    out.append(f"{name}: S_{s['degree']} in P({','.join(map(str, s['weights']))}), index {s['index']}")
    out.append(f"  O(1)^2 = {s['hyperplane_square']}   (-K)^2 = {s['antican_square']}")
    notes = report["scenario"].get("notes")
    if notes:
        out.append(f"  normal form: {notes}")
    for label, t in report["singularities"].items():
        out.append(f"  singular point {label} of type {t}")
    for v in report["validation"]:
        out.append(f"  check {v['identity']}: {'ok' if v['passed'] else 'FAILED'} ({v['detail']})")
    b = report.get("beta")
    if b:
        out.append("")
        out.append(f"weighted blow-up at {b['point']} with weights ({b['weights'][0]},{b['weights'][1]})")
        out.append(f"  A(E) = {b['log_discrepancy']}   K_Y = pi^*K_S + ({b['discrepancy']}) E   E^2 = {b['e_square']}")
        for n, c in b["pullback_coeffs"].items():
            out.append(f"  pi^*{n} = {n}' + ({c}) E")
        names = b["curves"]
        width = max(len(x) for row in b["gram"] for x in row) + 2
        out.append("  intersection table:")
        out.append("    " + "".join(f"{n:>{width}}" for n in names))
        for n, row in zip(names, b["gram"]):
            out.append("    " + "".join(f"{x:>{width}}" for x in row) + f"   {n}")
        terms = " + ".join(f"{c}*{n}" for n, c in b["pullback_anticanonical"].items() if c != "0")
        out.append(f"  pi^*(-K_S) = {terms}")
        segs = b["segments"]
        out.append(f"  nef threshold: {segs[0]['to'] if len(segs) > 1 else b['tau']}")
        for seg in segs:
            sup = ", ".join(seg["negative_support"]) or "none"
            out.append(
                f"  t in [{seg['from']}, {seg['to']}]: negative support {{{sup}}}, "
                f"vol = {seg['c0']} + ({seg['c1']}) t + ({seg['c2']}) t^2"
            )
        out.append(f"  tau(E) = {b['tau']}")
        out.append(f"  integral of vol over [0, tau] = {b['integral']}")
        out.append(f"  A(E) (-K)^2 = {b['a_times_antican_sq']}")
        out.append(f"  beta(E) = {b['beta']}  -> {b['verdict']}")
    a = report.get("alpha")
    if a:
        out.append("")
        w = a["witness"]
        how = w["kind"]
        if "weights" in w:
            how += f" {tuple(w['weights'])}"
        if "point" in w:
            how += f" at {w['point']}"
        if "component" in w:
            how += f" {w['component']}"
        out.append(f"lct(S, H) <= {a['lct_ub']}  (witness: {how})")
        out.append(f"  alpha <= {a['alpha_ub']}   delta <= {a['delta_ub']}  -> {a['verdict']}")
    out.append("")
    out.append(f"VERDICT {report['verdict']}")
    return "\n".join(out) + "\n"
