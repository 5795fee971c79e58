"""Command line: scan, report, verify-resolutions, oracle.

Exit codes: 0 clean, 2 when some record (or check) failed, 1 on a
configuration error.
"""

import argparse
import json
import logging
import sys
from typing import List, Optional

from sympy import isprime

from .errors import ConfigError, CorruptCache, ProviderFormatError
from .oracle.groups import GROUP_NAMES
from .oracle.suite import run_oracle_suite
from .resolutions.ladder import build_ladder
from .resolutions.verify import verify_complex, verify_exactness_modp
from .scan.config import ScanConfig
from .scan.report import report
from .scan.scanner import has_errors, load_records, resume, scan

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_RECORD_ERRORS = 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="masseytower", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    s = sub.add_parser("scan", help="Zassenhaus matrices over a discriminant range")
    s.add_argument("--prime", type=int)
    s.add_argument("--from", dest="disc_min", type=int, required=True)
    s.add_argument("--to", dest="disc_max", type=int, required=True)
    s.add_argument("--time-limit", type=float)
    s.add_argument("--provider")
    s.add_argument("--grh", action=argparse.BooleanOptionalAction, default=None)
    s.add_argument("--jobs", type=int)
    s.add_argument("--seed", type=int)
    s.add_argument("--out")
    s.add_argument("--resume", action="store_true")
    s.add_argument("--timings", action="store_true", default=None, help="store wall times in each record")

    r = sub.add_parser("report", help="group a scan output by verdict")
    r.add_argument("--in", dest="path", required=True)
    r.add_argument("--json", action="store_true")

    v = sub.add_parser("verify-resolutions", help="check the group ring resolutions for one prime")
    v.add_argument("--prime", type=int, required=True)

    o = sub.add_parser("oracle", help="cochain-level Massey identities on a small group")
    o.add_argument("--group", choices=GROUP_NAMES, required=True)
    o.add_argument("--trials", type=int, default=100)
    o.add_argument("--seed", type=int, default=0)
    return parser


def _scan(args) -> int:
    config = ScanConfig.from_env(
        p=args.prime,
        disc_min=args.disc_min,
        disc_max=args.disc_max,
        per_entry_time_limit_seconds=args.time_limit,
        provider_path=args.provider,
        grh_flag=args.grh,
        parallelism=args.jobs,
        seed=args.seed,
        output_path=args.out,
        record_timings=args.timings,
    )
    records = list((resume if args.resume else scan)(config))
    summary = report(records)
    for line in summary.lines():
        print(line)
    return EXIT_RECORD_ERRORS if has_errors(records) else EXIT_OK


def _report(args) -> int:
    records = load_records(args.path)
    summary = report(records)
    if args.json:
        print(json.dumps(summary.to_dict(), indent=2))
    else:
        for line in summary.lines():
            print(line)
    return EXIT_OK


def _verify_resolutions(args) -> int:
    p = args.prime
    if p == 2 or not isprime(p):
        raise ConfigError(f"p={p} is not an odd prime")
    ladder = build_ladder(p)
    identities = verify_complex(ladder, raise_on_failure=False)
    homology = verify_exactness_modp(ladder, raise_on_failure=False)
    for line in identities.table() + homology.table():
        print(line)
    return EXIT_OK if identities.passed and homology.passed else EXIT_RECORD_ERRORS


def _oracle(args) -> int:
    result = run_oracle_suite(args.group, trials=args.trials, seed=args.seed)
    for name, ok in result.checks.items():
        print(f"{'pass' if ok else 'FAIL'}  {name}")
    for note in result.notes:
        print(f"note  {note}")
    return EXIT_OK if result.passed else EXIT_RECORD_ERRORS


COMMANDS = {
    "scan": _scan,
    "report": _report,
    "verify-resolutions": _verify_resolutions,
    "oracle": _oracle,
}


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO, format='%(asctime)s - %(levelname)s - %(message)s')
    if args.verbose:
        logging.getLogger().setLevel(logging.DEBUG)
    try:
        return COMMANDS[args.command](args)
    except ConfigError as e:
        logging.error(f"configuration error: {e}")
        return EXIT_CONFIG
    except (CorruptCache, ProviderFormatError) as e:
        logging.error(str(e))
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
