"""Runs the sublin binary on the shipped scenarios: exit codes, schema
validity of every report, determinism modulo timings, profile tables."""

import json
import subprocess
import sys
import tempfile
from pathlib import Path

import jsonschema

binary, root = sys.argv[1], Path(sys.argv[2])
scenarios = root / "scenarios"
failures = []


def run(*args):
    return subprocess.run([binary, *map(str, args)], capture_output=True, text=True)


def expect(cond, what):
    print(("ok   " if cond else "FAIL ") + what)
    if not cond:
        failures.append(what)


schema_proc = run("schema")
expect(schema_proc.returncode == 0, "schema exits 0")
schema = json.loads(schema_proc.stdout)
expect(schema == json.loads((root / "schema" / "report.schema.json").read_text()), "schema matches the shipped file")
validator = jsonschema.Draft7Validator(schema)

with tempfile.TemporaryDirectory() as tmp:
    tmp = Path(tmp)
    for name, code in [("torsion", 0), ("homogeneous", 0), ("bad_p", 1)]:
        out = tmp / f"{name}.json"
        proc = run("run", scenarios / f"{name}.json", "--out", out, "--profiles", tmp / name)
        expect(proc.returncode == code, f"{name}: exit {proc.returncode} (expected {code}) {proc.stderr.strip()}")
        if code == 0:
            report = json.loads(out.read_text())
            errors = list(validator.iter_errors(report))
            expect(not errors, f"{name}: report validates against the schema {[e.message for e in errors[:3]]}")
            expect(len(report["checks"]) == len(report["scenario"]["checks"]), f"{name}: every check appears once")
            for csv in ["Gsigma", "Gmu", "lower_bound", "solution"]:
                lines = (tmp / name / f"{csv}.csv").read_text().splitlines()
                expect(lines[0] == "r,value" and len(lines) > 2, f"{name}: profile {csv}.csv")
        if name == "bad_p":
            expect("strict" in proc.stderr, "bad_p: message names the strict inequality")

    a, b = tmp / "a.json", tmp / "b.json"
    run("run", scenarios / "homogeneous.json", "--out", a, "--seed", "5")
    run("run", scenarios / "homogeneous.json", "--out", b, "--seed", "5")

    def strip(path):
        text = path.read_text()
        return text[: text.index('  "timings"')]

    expect(strip(a) == strip(b), "homogeneous: byte-identical reports modulo timings")

    expo = run("exponents", "--n", "3", "--p", "4", "--q", "0.5")
    expect(expo.returncode == 0 and abs(json.loads(expo.stdout)["gamma"] - 1 / 3) < 1e-15, "exponents prints gamma = 1/3")
    expect(run("exponents", "--n", "3", "--p", "3", "--q", "0.5").returncode == 1, "exponents at p = n/(n-2) exits 1")
    expect(run("run", scenarios / "torsion.json").returncode == 1, "missing --out exits 1")
    expect(run("run", tmp / "none.json", "--out", a).returncode == 1, "missing scenario exits 1")
    expect(run("run", scenarios / "torsion.json", "--out", a, "--tolerance", "bogus=1").returncode == 1,
           "unknown tolerance exits 1")
    atomic = json.loads((scenarios / "homogeneous.json").read_text())
    atomic["sigma"] = {"kind": "atomic", "points": [[0, 0, 0]], "weights": [1]}
    atomic["checks"] = ["thm11", "cor12"]
    (tmp / "atomic.json").write_text(json.dumps(atomic))
    proc = run("run", tmp / "atomic.json", "--out", a)
    expect(proc.returncode == 2, "atomic sigma: exit 2 (hypothesis failure)")
    expect(not list(validator.iter_errors(json.loads(a.read_text()))), "atomic sigma: report validates")

print(f"{len(failures)} failure(s)")
sys.exit(1 if failures else 0)
