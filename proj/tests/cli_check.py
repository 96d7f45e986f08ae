"""End-to-end checks of swanlab_cli: exit codes, schema validity and byte-identical reruns."""

import json
import subprocess
import sys

import jsonschema

CLI, SCHEMA = sys.argv[1], sys.argv[2]
with open(SCHEMA) as f:
    validator = jsonschema.Draft202012Validator(json.load(f))

failures = []


def run(args, want_rc, validate=True):
    p = subprocess.run([CLI] + args, capture_output=True, text=True)
    label = " ".join(args)
    if p.returncode != want_rc:
        failures.append(f"{label}: exit {p.returncode}, expected {want_rc}: {p.stderr.strip()}")
        return None
    if validate and p.returncode in (0, 1, 3) and not args[-1:] == ["csv"]:
        doc = json.loads(p.stdout)
        for err in validator.iter_errors(doc):
            failures.append(f"{label}: schema: {err.message}")
        return doc
    return p.stdout


flagship = ["--class", "1 + 2*u1, u1, 2", "--center", "(1)"]

doc = run(["--field", "2/Q2", "rsw", "--shape", "unit-unit", "--x", "x1", "--y", "x2", "--n", "1"], 0)
if doc and doc["result"]["rsw"]["beta"] != "x1*dx2/x2":
    failures.append("unit-unit shape beta")
doc = run(["rsw", "--shape", "x-pi", "--x", "x1"], 0)
if doc and (doc["result"]["rsw"]["n"] != 2 or doc["result"]["rsw"]["beta"] != "dx1/x1"):
    failures.append("x-pi shape level or beta")
run(["rsw", "--shape", "bogus"], 2, validate=False)
run(["rsw", "--field", "Q2", "--class", "1 + u1,"], 2, validate=False)
run(["--frobnicate"], 2, validate=False)

doc = run(["sweep"] + flagship + ["--radius", "1"], 0)
if doc and doc["result"]["table"]["verdict"] != "MATCH":
    failures.append("flagship verdict")
doc = run(["sweep"] + flagship + ["--predict", "0"], 1)
if doc and doc["result"]["table"]["verdict"] != "FAIL":
    failures.append("corrupted prediction verdict")
doc = run(["--budget", "0", "sweep"] + flagship, 3)
if doc and doc["result"]["table"]["verdict"] != "UNDECIDED":
    failures.append("zero budget verdict")
run(["sweep"] + flagship + ["--out", "csv"], 0, validate=False)

run(["--field", "Q3z3", "construct", "--beta", "dx1 - dx2", "--n", "2"], 0)
run(["--field", "Q3z3", "sweep", "--beta", "dx1 - dx2", "--n", "2", "--jobs", "3"], 0)
run(["--field", "Q2c", "quadsweep", "--shape", "unit-unit", "--x", "x1", "--y", "x2", "--n", "4",
     "--center", "(1, 1)"], 0)
run(["probe"] + flagship, 0)
run(["--field", "Q2i", "probe", "--beta", "dx1 + dx2", "--n", "4", "--t", "1", "--center", "(1, 1)",
     "--jobs", "2"], 0)
run(["filtration"] + flagship[:2] + ["--expect", "1"], 0)
run(["filtration"] + flagship[:2] + ["--expect", "2"], 1)
run(["conductor", "--kummer", "1 + u1*pi"], 0)
run(["conductor"] + flagship[:2], 0)
run(["verify", "nope"], 2, validate=False)
run(["verify", "forms", "--out", "json"], 0)

a = run(["verify", "all", "--seed", "7"], 0, validate=False)
b = run(["verify", "all", "--seed", "7", "--jobs", "3"], 0, validate=False)
if a is None or a != b:
    failures.append("verify all --seed 7 is not reproducible")

for f in failures:
    print("FAIL", f)
print(f"cli checks: {len(failures)} failures")
sys.exit(1 if failures else 0)
