#!/usr/bin/env python3
"""Print all six summary tables in one pass.

Convenience wrapper over `minrep table`; useful for eyeballing the
whole catalog or diffing against a previous run.
"""

import argparse
import sys

from minrep.cli import TABLES, _TABLE_FORMATS


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--format", choices=tuple(_TABLE_FORMATS),
                    default="markdown")
    ap.add_argument("--only", choices=tuple(TABLES), action="append",
                    help="restrict to one table (repeatable)")
    args = ap.parse_args()

    render = _TABLE_FORMATS[args.format]
    for table_id in (args.only or TABLES):
        sys.stdout.write(f"## {table_id}\n\n")
        sys.stdout.write(render(TABLES[table_id]()))
        sys.stdout.write("\n")
    return 0


if __name__ == "__main__":
    sys.exit(main())
