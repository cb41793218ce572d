#!/usr/bin/env python3
"""End-to-end checks of the cdgacyc command line: exit codes, messages, JSON."""
import json
import os
import subprocess
import sys
import tempfile

BIN, ROOT = sys.argv[1], sys.argv[2]
FIX = os.path.join(ROOT, "fixtures")
DATA = os.path.join(ROOT, "tests", "data")
failures = []


def run(*args):
    p = subprocess.run([BIN, *args], capture_output=True, text=True, timeout=300)
    return p.returncode, p.stdout, p.stderr


def expect(name, cond, info=""):
    print(("ok   " if cond else "FAIL ") + name)
    if not cond:
        failures.append(name)
        if info:
            print("     " + info.replace("\n", "\n     "))


def fx(name):
    return os.path.join(FIX, name)


def dims(out):
    return [d["total"] for d in json.loads(out)["degrees"]]


# cohomology of the odd sphere
rc, out, err = run("cohomology", fx("sphere3.json"), "--cutoff", "10", "--json")
expect("cohomology sphere3", rc == 0 and dims(out) == [1, 0, 0, 1] + [0] * 7, out + err)
rc, out, _ = run("cohomology", fx("trivial.json"), "--json")
expect("cohomology trivial", rc == 0 and dims(out) == [1] + [0] * 12)

# functor tables
rc, out, err = run("hh", fx("sphere3.json"), "--json")
expect("hh sphere3", rc == 0 and dims(out) == [1, 0] + [1] * 11, err)
j = json.loads(out)
expect("hh sphere3 weights", j["degrees"][4]["weights"] == {"2": 1} and j["degrees"][7]["weights"] == {"2": 1})
rc, out, _ = run("hh", fx("sphere2.json"), "--per-weight")
expect("hh sphere2 per weight", rc == 0 and "by weight" in out and " 0:1" in out)
rc, out, _ = run("hh", fx("sphere2.json"), "--json")
expect("hh sphere2", dims(out) == [1] * 13)
rc, out, _ = run("ch", fx("sphere3.json"), "--json")
expect("ch sphere3", dims(out) == [1] + [0, 2] * 6)
rc, out, _ = run("ph", fx("trivial.json"), "--json")
expect("ph trivial", dims(out) == [1, 0] * 6 + [1])
rc, out, _ = run("sh", fx("sphere3.json"), "--json", "--cutoff", "8")
expect("sh sphere3", dims(out) == [1, 1, 0, 2, 0, 2, 0, 2, 0])

# finite input goes through the minimal model
rc, a, _ = run("hh", fx("s3_cohomology.json"), "--json")
rc2, b, _ = run("hh", fx("sphere3.json"), "--json")
expect("hh through the builder", rc == 0 and dims(a) == dims(b) and "model" in json.loads(a))

# table and JSON agree
rc, txt, _ = run("ch", fx("sphere2.json"))
rc, js, _ = run("ch", fx("sphere2.json"), "--json")
rows = [l.split() for l in txt.splitlines()[2:]]
expect("text and json agree", [int(r[1]) for r in rows] == dims(js))

# schema
try:
    import jsonschema

    schema = json.load(open(os.path.join(ROOT, "docs", "report.schema.json")))
    ok = True
    for cmd in ["cohomology", "hh", "ch", "ph", "sh"]:
        for f in ["sphere2.json", "cp2-finite.json", "trivial.json"]:
            rc, out, _ = run(cmd, fx(f), "--json", "--cutoff", "8")
            try:
                jsonschema.validate(json.loads(out), schema)
            except jsonschema.ValidationError as e:
                ok = False
                print("     " + cmd + " " + f + ": " + e.message)
    expect("json output validates against the schema", ok)
except ImportError:
    print("skip json schema validation (python jsonschema missing)")

# check and negative control
rc, out, _ = run("check", fx("sphere2.json"))
expect("check sphere2 passes", rc == 0 and "all checks passed" in out, out)
rc, out, _ = run("check", fx("sphere2.json"), "--corrupt-bar-sign", "--cutoff", "6")
expect("corrupted bar sign fails the axioms", rc == 1 and "FAIL    loop algebra identities" in out and "(degree" in out, out)

# euler
rc, out, _ = run("euler", fx("sphere3.json"))
lines = [l.split() for l in out.splitlines() if len(l.split()) == 3 and l.split()[2] == "yes"]
expect("euler sphere3", rc == 0 and "PASS" in out and any(l[1] == "0" for l in lines))
rc, out, _ = run("euler", fx("trivial.json"))
expect("euler trivial", rc == 0 and "   0         1  yes" in out)

# minimal models
with tempfile.TemporaryDirectory() as tmp:
    path = os.path.join(tmp, "model.json")
    rc, out, err = run("minimal-model", fx("s2_cohomology.json"), "--emit", path)
    expect("minimal-model s2", rc == 0 and os.path.exists(path), out + err)
    m = json.load(open(path))
    expect("model is Lambda[x2, y3], dy = x^2",
           [g["degree"] for g in m["generators"]] == [2, 3]
           and m["differential"] == {"x3": [{"coeff": "1", "monomial": [["x2", 2]]}]}, json.dumps(m))
    rc, out, _ = run("verify-minimal", path)
    expect("emitted model is minimal", rc == 0)
    rc, again, _ = run("minimal-model", path)
    expect("minimal-model rejects free input", rc == 2)
    # round trip: parse -> emit -> parse
    rc, out, _ = run("minimal-model", fx("trivial-finite.json"), "--emit", path)
    expect("trivial finite model has no generators", rc == 0 and json.load(open(path))["generators"] == [])
rc, out, _ = run("verify-minimal", fx("sphere2-nonminimal.json"))
expect("non-minimal free input fails verify-minimal", rc == 1 and "linear term" in out, out)

# input errors exit with 2 and say where
cases = [
    ("bad_float_coeff.json", "/differential/y/0/coeff"),
    ("bad_syntax.json", "bad_syntax.json:3:"),
    ("bad_unknown_field.json", "unknown field 'colour'"),
    ("bad_degree.json", "has degree 6, expected 4"),
    ("bad_dd.json", "d∘d != 0"),
    ("bad_nonassociative.json", "associativity"),
]
for f, needle in cases:
    rc, out, err = run("hh", os.path.join(DATA, f))
    expect("input error " + f, rc == 2 and needle in err, err)
rc, out, err = run("minimal-model", os.path.join(DATA, "h1_nonzero.json"))
expect("h1 nonzero rejected", rc == 2 and "requires homological 1-connectedness" in err, err)
rc, out, err = run("sh", fx("circle.json"))
expect("sh on circle needs --weight-max", rc == 2 and "usage error" in err, err)
rc, out, err = run("frobnicate", fx("trivial.json"))
expect("unknown command", rc == 2)
rc, out, err = run("hh", fx("missing.json"))
expect("missing file", rc == 2 and "cannot open" in err, err)
rc, out, err = run("hh", fx("trivial.json"), "--cutoff", "1")
expect("cutoff range", rc == 2, err)

print(f"{len(failures)} failure(s)")
sys.exit(1 if failures else 0)
