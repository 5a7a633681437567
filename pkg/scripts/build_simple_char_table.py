#!/usr/bin/env python3
"""Solve simple characters below a bound and write a table file.

The resulting JSON can be fed back to the CLI and the library through
--table; undetermined weights are listed on stderr so the coverage of the
solver is visible.

Example:
    python scripts/build_simple_char_table.py --type A --rank 2 --p 3 \
        --bound 4,4 -o tables/a2_p3.json
"""
import argparse
import json
import os
import sys

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from tiltchar.rootsys import RootSystemSpec, build_root_datum
from tiltchar.simplechar import jsf_solve


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--type", required=True, dest="series", choices=list("ABCDEFG"))
    ap.add_argument("--rank", required=True, type=int)
    ap.add_argument("--p", required=True, type=int)
    ap.add_argument("--bound", required=True, help="dominant weight, e.g. 4,4")
    ap.add_argument("-o", "--output", default="-")
    args = ap.parse_args()

    d = build_root_datum(RootSystemSpec(args.series, args.rank))
    bound = tuple(int(x) for x in args.bound.split(","))
    table = jsf_solve(d, args.p, bound)

    blob = json.dumps(table.to_json_list(), indent=2)
    if args.output == "-":
        print(blob)
    else:
        os.makedirs(os.path.dirname(args.output) or ".", exist_ok=True)
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(blob + "\n")
        print(f"wrote {len(table)} entries to {args.output}", file=sys.stderr)

    if table.undetermined:
        print(f"{len(table.undetermined)} undetermined weights:", file=sys.stderr)
        for key in table.undetermined:
            print(f"  {key[0]}{key[1]} p={key[3]} weight={list(key[2])}", file=sys.stderr)
    return 0


if __name__ == "__main__":
    sys.exit(main())
