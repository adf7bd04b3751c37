#!/usr/bin/env python3
"""CLI contract tests: flags, output formats, and the exit-code contract
(0 pass, 1 sweep failures, 2 input/domain, 3 hypothesis, 4 numeric)."""

import json
import subprocess
import sys
import tempfile
from pathlib import Path

BIN = sys.argv[1]
failures = []


def run(*args):
    return subprocess.run([BIN, *args], capture_output=True, text=True)


def check(name, cond, extra=""):
    if cond:
        print(f"ok   {name}")
    else:
        failures.append(name)
        print(f"FAIL {name} {extra}")


# ---- eval ----
r = run("eval", "-a", "1", "-b", "1", "-c", "2", "-x", "0.5")
check("eval exit 0", r.returncode == 0, r.stderr)
check("eval log value", "1.38629436112" in r.stdout, r.stdout)

r = run("eval", "-a", "0.5", "-b", "0.5", "-c", "1", "-x", "0.5", "--format", "json")
check("eval json exit 0", r.returncode == 0, r.stderr)
doc = json.loads(r.stdout)
check("eval json value", abs(doc["value"] - 1.1803405990160962) < 1e-10)
check("eval json method", doc["method"] == "SERIES")
check("eval json round-trip", json.dumps(json.loads(r.stdout)) == json.dumps(doc))

r = run("eval", "-a", "1", "-b", "1", "-c", "2", "-x", "1.5")
check("eval domain exit 2", r.returncode == 2, str(r.returncode))
check("eval domain message", "[0,1)" in r.stderr, r.stderr)

r = run("eval", "-a", "1", "-b", "1", "-c", "2")
check("eval missing flag nonzero", r.returncode != 0)

# ---- constants ----
r = run("constants", "-a", "0.5", "-b", "0.5", "-c", "1")
check("constants exit 0", r.returncode == 0, r.stderr)
check("constants B", "3.14159265359" in r.stdout, r.stdout)
check("constants R", "2.77258872224" in r.stdout, r.stdout)
check("constants regime", "ZERO_BALANCED" in r.stdout, r.stdout)
check("constants A absent", "absent" in r.stdout, r.stdout)

r = run("constants", "-a", "0.5", "-b", "0.5", "-c", "2", "--format", "json")
doc = json.loads(r.stdout)
check("constants A = 4/pi", abs(doc["A"] - 1.2732395447351627) < 1e-10)

r = run("constants", "-a", "1", "-b", "1", "-c", "2", "--format", "json")
doc = json.loads(r.stdout)
check("constants B=1 R=0", abs(doc["B"] - 1) < 1e-12 and abs(doc["R"]) < 1e-12)

# ---- check ----
r = run("check", "T3_5_1", "-c", "0.5", "-d", "0.5", "-x", "0.3", "-y", "0.7")
check("check pass exit 0", r.returncode == 0, r.stderr)
check("check margins printed", "margin_lower" in r.stdout, r.stdout)

r = run("check", "T3_4", "-c", "1", "-d", "1", "-x", "0.5", "-y", "0.5")
check("check hypothesis exit 3", r.returncode == 3, str(r.returncode))
check("check hypothesis message", "(1,1)" in r.stderr or "hypothesis" in r.stderr, r.stderr)

r = run("check", "--list")
check("check --list exit 0", r.returncode == 0)
rows = [ln for ln in r.stdout.splitlines() if ln and not ln.startswith(" ")]
check("check --list 16 rows", len(rows) == 16, f"{len(rows)} rows")

r = run("check", "--list", "--format", "json")
check("check --list json 16", len(json.loads(r.stdout)) == 16)

r = run("check", "T3_9_1", "-a", "0.5", "-b", "0.5", "-t", "0.75")
check("check scalar theorem", r.returncode == 0, r.stderr)

r = run("check", "NOPE", "-a", "1", "-b", "1")
check("check unknown id exit 2", r.returncode == 2)

# ---- sweep ----
with tempfile.TemporaryDirectory() as td:
    out1 = Path(td) / "r1.csv"
    out2 = Path(td) / "r2.csv"

    # the full default sweep: every theorem, default params, clean pass
    rep = Path(td) / "report.csv"
    r = run("sweep", "--theorems", "all", "--params", "default", "--points",
            "200", "--seed", "42", "--format", "csv", "-o", str(rep))
    check("default sweep exit 0", r.returncode == 0, r.stderr)
    lines = rep.read_text().splitlines()
    check("default sweep row count", len(lines) == 1 + 15 * 20 * 200 + 20,
          f"{len(lines)} lines")
    check("default sweep all pass",
          all(ln.endswith(",true") for ln in lines[1:]))
    args = ("sweep", "--theorems", "T1_1,T3_5_1", "--params", "6", "--points",
            "60", "--seed", "42", "--format", "csv")
    r = run(*args, "-o", str(out1))
    check("sweep exit 0", r.returncode == 0, r.stderr)
    r = run(*args, "-o", str(out2))
    b1, b2 = out1.read_bytes(), out2.read_bytes()
    check("sweep CSV byte-identical", b1 == b2)
    header = b1.decode().splitlines()[0]
    check("sweep CSV header",
          header == "theorem_id,a,b,c,x,y,value,lower,upper,margin_lower,margin_upper,pass",
          header)
    check("sweep CSV row count", len(b1.decode().splitlines()) == 1 + 2 * 6 * 60)
    check("sweep CSV LF endings", b"\r" not in b1)

    # different seed differs
    r = run("sweep", "--theorems", "T1_1", "--params", "4", "--points", "40",
            "--seed", "7", "--format", "csv", "-o", str(out1))
    r = run("sweep", "--theorems", "T1_1", "--params", "4", "--points", "40",
            "--seed", "8", "--format", "csv", "-o", str(out2))
    check("sweep seed moves sample", out1.read_bytes() != out2.read_bytes())

    # JSON output parses and is idempotent under round-trip
    r = run("sweep", "--theorems", "T3_9_1", "--params", "4", "--points", "30",
            "--format", "json")
    doc = json.loads(r.stdout)
    check("sweep json totals", doc["totals"]["failures"] == 0, r.stdout[:200])
    check("sweep json round-trip",
          json.dumps(json.loads(r.stdout), sort_keys=True)
          == json.dumps(doc, sort_keys=True))

    # spec file with an intentionally tightened bound must fail with exit 1
    bad = Path(td) / "bad_fixture.json"
    bad.write_text(json.dumps({
        "version": "v1",
        "theorems": ["T1_1"],
        "params": {"count": 5},
        "points": {"count": 60, "scheme": "corner-biased"},
        "seed": 42,
        "overrides": {"tighten": 0.01},
    }))
    r = run("sweep", "--spec", str(bad))
    check("bad fixture exit 1", r.returncode == 1, str(r.returncode))
    check("bad fixture lists failures", "FAIL" in r.stdout, r.stdout[:200])

    # spec schema guard
    v2 = Path(td) / "v2.json"
    v2.write_text('{"version": "v2"}')
    r = run("sweep", "--spec", str(v2))
    check("wrong schema version exit 2", r.returncode == 2)

    # threads flag does not change bytes
    r = run("sweep", "--theorems", "T1_3", "--params", "4", "--points", "40",
            "--threads", "1", "--format", "csv", "-o", str(out1))
    r = run("sweep", "--theorems", "T1_3", "--params", "4", "--points", "40",
            "--threads", "3", "--format", "csv", "-o", str(out2))
    check("sweep threads-invariant bytes", out1.read_bytes() == out2.read_bytes())

    # HYPOTEST_THREADS env fallback is honored (and still deterministic)
    import os
    env = dict(os.environ, HYPOTEST_THREADS="2")
    r = subprocess.run(
        [BIN, "sweep", "--theorems", "T1_3", "--params", "4", "--points", "40",
         "--format", "csv", "-o", str(out2)],
        capture_output=True, text=True, env=env)
    check("HYPOTEST_THREADS env run", r.returncode == 0, r.stderr)
    check("HYPOTEST_THREADS same bytes", out1.read_bytes() == out2.read_bytes())

# ---- extremes ----
r = run("extremes", "inf-DF", "-a", "0.5", "-b", "0.5", "--budget", "2000")
check("extremes exit 0", r.returncode == 0, r.stderr)
check("extremes prints best", "best" in r.stdout, r.stdout)

r = run("extremes", "inf-DF", "-a", "0.5", "-b", "0.5", "--budget", "2000",
        "--format", "json")
doc = json.loads(r.stdout)
check("extremes above reference bound",
      doc["best"] > doc["reference_lower_bound"] - 1e-9)

r = run("extremes", "nope", "-a", "1", "-b", "1")
check("extremes unknown objective exit 2", r.returncode == 2)

# ---- no subcommand ----
r = run()
check("no subcommand nonzero", r.returncode != 0)

print()
if failures:
    print(f"{len(failures)} CLI contract checks failed: {failures}")
    sys.exit(1)
print("all CLI contract checks passed")
