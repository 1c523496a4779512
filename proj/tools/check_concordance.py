#!/usr/bin/env python3
"""Check docs/concordance.tsv against the corpus manifest.

Every row must name a declaration that exists in the stated file with the
stated tag and checks. Every required item and every postulate of the corpus
must appear exactly once.
"""
import csv
import json
import subprocess
import sys
from collections import Counter

# Definitions the corpus must cover, by declaration name.
REQUIRED = {
    "Delta0", "Delta1", "Delta2", "BDelta1", "BDelta2", "Lambda21",
    "hom", "hom2", "idarr", "isSegal", "comp", "apHom", "nat", "component",
    "isiso", "iso", "idtoiso", "isRezk", "homOver", "isCovariant", "isContravariant",
    "covTrans", "contraTrans", "evid", "yon", "isRepresentable", "isInitial", "isTerminal",
    "diag", "cocone", "cone", "isColimit", "isLimit", "colimit", "limit", "transposing",
    "arrtofun", "isUnivalentFamily", "dua", "issmall",
    "extSigmaForward", "extSigmaBackward", "extCompForward", "extCompBackward",
}


def main(argv):
    if len(argv) != 4:
        print("usage: check_concordance.py SSTT_BINARY CORPUS_DIR CONCORDANCE_TSV", file=sys.stderr)
        return 2
    binary, corpus, table = argv[1:]
    out = subprocess.run([binary, "corpus", "--machine", corpus], capture_output=True, text=True)
    if out.returncode not in (0, 1):
        print(out.stderr, file=sys.stderr)
        return 2
    manifest = json.loads(out.stdout)
    decls = {}
    for f in manifest["files"]:
        for d in f["decls"]:
            decls[d["name"]] = (f["file"], d["tag"], d["status"])

    with open(table, newline="", encoding="utf-8") as fh:
        rows = list(csv.DictReader(fh, delimiter="\t"))

    problems = []
    counts = Counter(r["decl"] for r in rows)
    for name, n in counts.items():
        if n > 1:
            problems.append(f"{name}: listed {n} times")
    for r in rows:
        got = decls.get(r["decl"])
        if got is None:
            problems.append(f"{r['decl']}: not declared in the corpus")
            continue
        file, tag, status = got
        if file != r["file"]:
            problems.append(f"{r['decl']}: declared in {file}, table says {r['file']}")
        if tag != r["kind"]:
            problems.append(f"{r['decl']}: tag {tag}, table says {r['kind']}")
        if status != "ok":
            problems.append(f"{r['decl']}: status {status}")
    for name in sorted(REQUIRED - counts.keys()):
        problems.append(f"{name}: required item missing from the table")
    for name, (_, tag, _) in sorted(decls.items()):
        if tag in ("axiom", "shape") and name not in counts:
            problems.append(f"{name}: {tag} missing from the table")

    for p in problems:
        print(p)
    print(f"{len(rows)} rows, {len(problems)} problem(s)")
    return 1 if problems else 0


if __name__ == "__main__":
    sys.exit(main(sys.argv))
