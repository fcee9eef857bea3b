"""
Drive the command line: export a preset, edit it, run it back.

A scenario file is plain JSON with rationals as strings; a broken Gram
entry is reported with its path and line.
"""

import json
import subprocess
import sys
import tempfile
from pathlib import Path


def kstab(*args):
    out = subprocess.run([sys.executable, "-m", "kstab.cli", *args], capture_output=True, text=True)
    return out.returncode, out.stdout, out.stderr


work = Path(tempfile.mkdtemp())
path = work / "s9.json"
kstab("export-preset", "s9", "-o", str(path))
code, out, _ = kstab("report", str(path))
print(out)

data = json.loads(path.read_text())
data["curves"]["gram"][0][0] = "-1"
bad = work / "bad.json"
bad.write_text(json.dumps(data, indent=2))
code, _, err = kstab("report", str(bad))
print(f"edited file -> exit {code}\n{err}")

code, out, _ = kstab("sweep", "fam-11nm", "--n", "0:3", "--m", "0:3")
print(out)
