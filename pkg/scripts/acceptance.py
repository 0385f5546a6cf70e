"""Run the acceptance harness and write a JSON summary next to the printed lines."""

from __future__ import annotations

import argparse
import json
import logging

from splitex.harness import SCALES, run_acceptance


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--scale", choices=SCALES, default="small")
    p.add_argument("--json", default=None, help="optional path for the summary")
    p.add_argument("--progress", action="store_true")
    args = p.parse_args()
    logging.basicConfig(level=logging.INFO if args.progress else logging.WARNING)
    results = run_acceptance(args.scale, progress=args.progress)
    for r in results:
        print(r.line())
    if args.json:
        summary = [
            {"criterion": r.number, "passed": r.passed, "checked": r.checked, "detail": r.detail,
             "seconds": round(r.seconds, 2), "first_failure": r.failure}
            for r in results
        ]
        with open(args.json, "w") as fh:
            json.dump({"scale": args.scale, "criteria": summary}, fh, indent=2)
            fh.write("\n")


if __name__ == "__main__":
    main()
