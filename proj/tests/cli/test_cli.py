"""Exit codes and output of the command-line driver."""

import json
import os
import subprocess
import sys

binary, corpus = sys.argv[1], sys.argv[2]
failures = 0


def run(args, code, contains=None, stream="stdout"):
    global failures
    p = subprocess.run([binary] + args, capture_output=True, text=True, env={**os.environ, "NO_COLOR": "1"})
    out = p.stdout if stream == "stdout" else p.stderr
    ok = p.returncode == code and (contains is None or contains in out)
    if not ok:
        failures += 1
        print(f"FAIL {args}: exit {p.returncode} (want {code})\n{p.stdout}{p.stderr}")
    return p


run(["check", os.path.join(corpus, "02-hom.sstt")], 0, "ok: 1 file(s)")
run(["corpus", corpus], 0, "ok: 15 file(s)")
p = run(["corpus", "--machine", corpus], 0)
if p.returncode == 0 and json.loads(p.stdout)["status"] != "ok":
    failures += 1
    print("machine report not ok")

run(["tope", "x y | x <= y /\\ y <= x |- x === y"], 0, "entailed")
run(["tope", "x y | TOP |- x <= y"], 1, "not entailed; counter-model: 0 = y < x = 1")
run(["tope", "t1 t2 | Delta2 (t1, t2) |- Lambda21 (t1, t2)"], 1, "counter-model")

run([], 2)
run(["tope", "x | |- x <="], 2, "sstt:", stream="stderr")
run(["--fuel", "0", "tope", "x | TOP |- x <= 1"], 2)
run(["frobnicate"], 2)
run(["check", "/nonexistent/file.sstt"], 2, "sstt:", stream="stderr")
run(["--version"], 0)
run(["--help"], 0)

# a failing declaration exits 1 with a located diagnostic
neg = os.path.join(os.path.dirname(corpus), "tests", "negative")
files = sorted(os.path.join(corpus, f) for f in os.listdir(corpus) if f.endswith(".sstt"))
run(["check"] + files + [os.path.join(neg, "n01-hom-wrong-endpoint.sstt")], 1, "error[boundary_mismatch]")

print(f"{failures} failure(s)")
sys.exit(1 if failures else 0)
