#!/usr/bin/env python3
"""Classify every knot of a KnotInfo table export and tally the verdicts.

The table is not shipped with this repository. Download the full KnotInfo
export (pipe-delimited, as in the `database_knotinfo` package's
`knotinfo_data_complete.csv`) and pass its path:

    scripts/knotinfo_tally.py knotinfo_data_complete.csv --cli build/algconc

The script writes the Seifert matrices as JSON lines, runs the CLI with
certificate replay, compares each verdict with the table's
`algebraic_concordance_order` column and prints the tallies next to the
reference counts for prime knots of at most 12 crossings. Exit status is 0
only when every verdict matches and every tally agrees.
"""

import argparse
import collections
import csv
import json
import subprocess
import sys
import tempfile

import numpy as np

# Reference counts for the 2977 prime knots with at most 12 crossings.
REFERENCE = {
    "signature of V+V^t nonzero": 2132,
    "only an omega-signature nonzero": 125,
    "finite order": 720,
    "order 4": 172,
    "order 2": 373,
    "algebraically slice": 175,
}

TABLE_ORDER = {"infty": "infinite", "1": "slice", "2": "2", "4": "4"}


def parse_matrix(text):
    text = text.strip().replace("{", "[").replace("}", "]")
    return json.loads(text)


def read_table(path, max_crossings, delimiter):
    csv.field_size_limit(sys.maxsize)
    with open(path, newline="") as f:
        for row in csv.DictReader(f, delimiter=delimiter):
            if not row.get("seifert_matrix", "").strip():
                continue
            try:
                crossings = int(row["crossing_number"])
            except (KeyError, ValueError):
                continue
            if crossings > max_crossings:
                continue
            yield row


def symmetric_signature(v):
    m = np.array(v, dtype=float)
    eig = np.linalg.eigvalsh(m + m.T)
    return int(np.sum(eig > 1e-9) - np.sum(eig < -1e-9))


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("table", help="KnotInfo export (CSV)")
    ap.add_argument("--cli", default="build/algconc", help="path to the algconc binary")
    ap.add_argument("--delimiter", default="|", help="field delimiter of the export (default '|')")
    ap.add_argument("--max-crossings", type=int, default=12)
    ap.add_argument("--jobs", type=int, default=1)
    ap.add_argument("--amphicheiral", action="store_true",
                    help="pass the table's amphicheiral symmetry types to the engine as a shortcut")
    args = ap.parse_args()

    rows = list(read_table(args.table, args.max_crossings, args.delimiter))
    if not rows:
        sys.exit("no knots with Seifert matrices found in " + args.table)

    matrices = {}
    with tempfile.NamedTemporaryFile("w", suffix=".jsonl", delete=False) as tmp:
        for row in rows:
            v = parse_matrix(row["seifert_matrix"])
            matrices[row["name"]] = v
            rec = {"name": row["name"], "seifert_matrix": v}
            if args.amphicheiral and "amphicheiral" in row.get("symmetry_type", ""):
                rec["amphicheiral"] = True
            tmp.write(json.dumps(rec) + "\n")
        input_path = tmp.name

    proc = subprocess.run(
        [args.cli, "--input", input_path, "--report", "json", "--explain", "--verify", "--jobs", str(args.jobs)],
        capture_output=True, text=True)
    if proc.returncode == 2:
        sys.exit("algconc failed: " + proc.stderr.strip())
    records = json.loads(proc.stdout)["records"]

    expected = {row["name"]: TABLE_ORDER.get(row.get("algebraic_concordance_order", "").strip()) for row in rows}
    orders = collections.Counter()
    rules = collections.Counter()
    mismatches, unverified, errors = [], [], []
    nonzero_sym = omega_only = 0
    for r in records:
        if r.get("error"):
            errors.append((r["name"], r["error"]))
            continue
        order = r["order"]
        orders[order] += 1
        rules[r.get("rule", "")] += 1
        if r.get("verified") is not True:
            unverified.append(r["name"])
        want = expected.get(r["name"])
        if want is not None and want != order:
            mismatches.append((r["name"], order, want))
        if order == "infinite":
            if symmetric_signature(matrices[r["name"]]) != 0:
                nonzero_sym += 1
            else:
                omega_only += 1

    computed = {
        "signature of V+V^t nonzero": nonzero_sym,
        "only an omega-signature nonzero": omega_only,
        "finite order": orders["slice"] + orders["2"] + orders["4"],
        "order 4": orders["4"],
        "order 2": orders["2"],
        "algebraically slice": orders["slice"],
    }

    print(f"knots classified: {len(records)}")
    print(f"{'tally':<36}{'computed':>10}{'reference':>11}")
    all_agree = True
    for key, ref in REFERENCE.items():
        mark = "" if computed[key] == ref else "  <-- differs"
        all_agree = all_agree and computed[key] == ref
        print(f"{key:<36}{computed[key]:>10}{ref:>11}{mark}")
    if orders["undetermined"]:
        print(f"undetermined: {orders['undetermined']}")
    print("\ndeciding rule counts:")
    for rule, n in sorted(rules.items()):
        print(f"  {rule:<30}{n:>6}")
    print(f"\nmismatches with the table column: {len(mismatches)}")
    for name, got, want in mismatches[:20]:
        print(f"  {name}: engine {got}, table {want}")
    print(f"certificates not replayed: {len(unverified)}")
    print(f"input errors: {len(errors)}")
    for name, err in errors[:20]:
        print(f"  {name}: {err}")

    ok = all_agree and not mismatches and not unverified and not errors
    sys.exit(0 if ok else 1)


if __name__ == "__main__":
    main()
