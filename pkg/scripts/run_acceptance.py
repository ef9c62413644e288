"""Run the acceptance criteria and write a JSON summary.

    python scripts/run_acceptance.py --seed 0 --out results/acceptance.json
"""
import argparse
import json
from pathlib import Path

from plurikit.checks import CRITERIA, run_criterion
from plurikit.jsonio import to_jsonable


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--only", type=int, nargs="*", help="criterion numbers (default: all)")
    ap.add_argument("--out", type=Path)
    args = ap.parse_args()

    rows = []
    for i in args.only or range(1, len(CRITERIA) + 1):
        r = run_criterion(i, args.seed)
        print(r.line(), flush=True)
        rows.append({"index": i, "name": r.name, "passed": r.passed, "elapsed_s": r.elapsed, "detail": r.detail, "reproducer": r.reproducer})
    print(f"{sum(r['passed'] for r in rows)}/{len(rows)} passed")
    if args.out:
        args.out.parent.mkdir(parents=True, exist_ok=True)
        args.out.write_text(json.dumps(to_jsonable(rows), indent=2))
    raise SystemExit(0 if all(r["passed"] for r in rows) else 1)


if __name__ == "__main__":
    main()
