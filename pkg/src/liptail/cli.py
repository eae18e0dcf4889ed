"""Command line entry point: ``run``, ``describe`` and ``estimate``."""

import argparse
import json
import sys

from . import evt
from . import io as lio
from . import runner
from .errors import (
    AccuracyError,
    CertificationError,
    DegenerateDataError,
    DomainError,
    ParameterError,
    ValidationError,
)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_VALIDATION = 3
EXIT_NUMERICAL = 4

_ESTIMATORS = {"hill": evt.HILL, "pickands": evt.PICKANDS, "moment": evt.MOMENT}


def build_parser():
    p = argparse.ArgumentParser(prog="liptail", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    r = sub.add_parser("run", help="execute an experiment config")
    r.add_argument("--config", required=True)
    r.add_argument("--out", required=True)
    r.add_argument("--threads", type=int, default=None,
                   help=f"worker threads (default: ${runner.THREADS_ENV} or 1)")
    r.add_argument("--seed", type=int, default=None, help="override master_seed")
    r.add_argument("--replica", type=int, action="append", default=None,
                   help="run only this replica index (repeatable)")

    d = sub.add_parser("describe", help="print the resolved plan of a config")
    d.add_argument("--config", required=True)

    e = sub.add_parser("estimate", help="tail-index estimate from a one-column CSV")
    e.add_argument("estimator", choices=sorted(_ESTIMATORS))
    e.add_argument("--input", required=True)
    e.add_argument("--k", type=int, required=True)
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        if args.command == "run":
            report = runner.run(args.config, args.out, args.threads, args.seed, args.replica)
            print(f"wrote {len(report['files'])} tables and report.json to {args.out}")
        elif args.command == "describe":
            print(runner.describe(args.config))
        else:
            values = lio.read_column(args.input)
            est = evt.estimate(values, _ESTIMATORS[args.estimator], args.k)
            print(json.dumps({"estimator": est.estimator, "k": est.k_order,
                              "xi_hat": est.xi_hat, "stderr": est.stderr}))
    except (OSError, json.JSONDecodeError) as exc:
        print(f"error: cannot read input: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValidationError as exc:
        print("error: invalid config:", file=sys.stderr)
        for f in exc.failures:
            print(f"  - {f}", file=sys.stderr)
        return EXIT_VALIDATION
    except ParameterError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except (AccuracyError, CertificationError, DomainError, DegenerateDataError) as exc:
        print(f"error: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
