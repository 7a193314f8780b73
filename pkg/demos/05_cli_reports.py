"""Driving the command line front end.

Each invocation produces one versioned JSON report; repeated runs with
the same inputs are replayed byte for byte from a content-addressed
cache.  This demo shells out to the installed ``symhom`` entry point
(falling back to ``python -m symhom.cli``), exercising reports, caching
and the regression corpus.
"""

import json
import shutil
import subprocess
import sys
import tempfile
from pathlib import Path

from symhom import scalar_algebra

CLI = [shutil.which("symhom") or "symhom"]
if shutil.which("symhom") is None:
    CLI = [sys.executable, "-m", "symhom.cli"]


def run(*argv):
    proc = subprocess.run([*CLI, *argv], capture_output=True, text=True)
    return proc.returncode, proc.stdout, proc.stderr


def show(title):
    print(f"\n== {title} ==")


workdir = Path(tempfile.mkdtemp(prefix="symhom-demo-"))
cache = workdir / "cache"
algebra = workdir / "k.json"
algebra.write_text(json.dumps(scalar_algebra().to_json_dict()))

show("a homology report")
code, out, _ = run("sym-homology", "--p", "3", "--ring", "Z",
                   "--cache-dir", str(cache))
report = json.loads(out)
print("exit:", code, "| schema:", report["schema"],
      "| engine:", report["engine_version"])
print("input hash:", report["input_hash"][:16], "...")
print("poincare:", report["result"]["poincare"],
      "| torsion-free:", report["result"]["certified_torsion_free"])

show("the second run replays the cached bytes")
code2, out2, err2 = run("sym-homology", "--p", "3", "--ring", "Z",
                        "--cache-dir", str(cache))
print("byte-identical:", out2 == out, "|", err2.strip())

show("algebra homology from a description file")
code, out, _ = run("hs", "--algebra", str(algebra), "--degree", "0",
                   "--cache-dir", str(cache))
print("result:", json.loads(out)["result"])

show("validation failures exit with status 2")
bad = workdir / "bad.json"
bad.write_text(json.dumps({"kind": "finite_dim", "basis": ["e"],
                           "mul": [[0, 0, 0, "2"]], "unit": ["1"]}))
code, _, err = run("hs", "--algebra", str(bad), "--degree", "0",
                   "--no-cache")
print("exit:", code, "|", err.strip())

show("resource guards exit with status 3")
kt = workdir / "kt.json"
kt.write_text(json.dumps({"kind": "free_monoid", "gens": ["t"]}))
code, _, err = run("hs", "--algebra", str(kt), "--degree", "2",
                   "--weight", "6", "--route", "honest", "--no-cache")
print("exit:", code, "|", err.strip()[:100], "...")

show("the regression corpus")
code, out, _ = run("verify-paper", "--fast", "--no-cache")
result = json.loads(out)["result"]
for check in result["checks"]:
    print(f"  {'PASS' if check['passed'] else 'FAIL'}  {check['name']}")
print("all passed:", result["all_passed"],
      "(the three-translate relation is knowingly not a boundary; "
      "see the four-translate check)")

shutil.rmtree(workdir)
