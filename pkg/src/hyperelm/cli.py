"""Command-line front end.

Subcommands: ``algebra list|show|check``, ``lorenz``, ``cifar``, ``train``,
``predict``.  Machine output goes to files or stdout; progress to stderr.
Exit codes: 0 success, 1 usage error, 2 data/IO error, 3 numerical failure.
"""
from __future__ import annotations

import argparse
import dataclasses
import json
import os
import sys

import numpy as np

from . import catalog, cifar, elm, lorenz, reporting
from .errors import (
    ConvergenceFailureError,
    DegenerateVarianceError,
    FormatError,
    HyperelmError,
    NonFiniteError,
    NotTrainedError,
)
from .realify import HMatrix

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_NUMERICAL = 3

_NUMERICAL_ERRORS = (
    ConvergenceFailureError,
    NonFiniteError,
    DegenerateVarianceError,
    NotTrainedError,
)


class UsageError(HyperelmError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        # argparse defaults to exit code 2; usage problems are exit code 1 here.
        self.print_usage(sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _algebra_list(names):
    if names.strip().lower() == "all":
        return list(catalog.ALGEBRA_NAMES)
    return [catalog.resolve_name(n) for n in names.split(",") if n.strip()]


def build_parser():
    parser = _Parser(prog="hyperelm", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_alg = sub.add_parser("algebra", help="inspect catalog algebras")
    alg_sub = p_alg.add_subparsers(dest="algebra_command", required=True)
    alg_sub.add_parser("list", help="list catalog algebra names")
    p_show = alg_sub.add_parser("show", help="print a multiplication table")
    p_show.add_argument("name")
    p_check = alg_sub.add_parser("check", help="report algebraic properties")
    p_check.add_argument("name")

    p_lor = sub.add_parser("lorenz", help="time-series prediction benchmark")
    p_lor.add_argument("--algebras", default="all")
    p_lor.add_argument("--lmin", type=int, default=11)
    p_lor.add_argument("--lmax", type=int, default=35)
    p_lor.add_argument("--trials", type=int, default=100)
    p_lor.add_argument("--seed", type=int, default=42)
    p_lor.add_argument("--steps", type=int, default=4000)
    p_lor.add_argument("--dt", type=float, default=0.01)
    p_lor.add_argument("--train-points", type=int, default=300)
    p_lor.add_argument("--window", type=int, default=3)
    p_lor.add_argument("--normalize", action="store_true",
                       help="min-max scale coordinates to [-1,1] on the training prefix")
    p_lor.add_argument("--jobs", type=int, default=1)
    p_lor.add_argument("--out", required=True)
    p_lor.add_argument("--format", choices=("csv", "json"), default="csv")

    p_cif = sub.add_parser("cifar", help="color image auto-encoding benchmark")
    p_cif.add_argument("--data-dir", default=None,
                       help="directory with CIFAR-10 binary batches; omit to use "
                            "a deterministic synthetic corpus")
    p_cif.add_argument("--algebras", default="all")
    p_cif.add_argument("--l-real", type=int, default=600)
    p_cif.add_argument("--l-hyper", type=int, default=450)
    p_cif.add_argument("--seed", type=int, default=7)
    p_cif.add_argument("--subset", type=int, default=None)
    p_cif.add_argument("--trials", type=int, default=1)
    p_cif.add_argument("--jobs", type=int, default=1)
    p_cif.add_argument("--dump-images", default=None, metavar="DIR")
    p_cif.add_argument("--out", required=True)
    p_cif.add_argument("--format", choices=("csv", "json"), default="csv")

    p_train = sub.add_parser("train", help="fit a model on a JSON dataset")
    p_train.add_argument("--algebra", required=True)
    p_train.add_argument("--data", required=True)
    p_train.add_argument("--hidden", type=int, required=True)
    p_train.add_argument("--alpha", type=float, default=None)
    p_train.add_argument("--seed", type=int, default=0)
    p_train.add_argument("--out", required=True)

    p_pred = sub.add_parser("predict", help="run a saved model on JSON inputs")
    p_pred.add_argument("--model", required=True)
    p_pred.add_argument("--data", required=True)
    p_pred.add_argument("--out", required=True)

    return parser


def _cmd_algebra(args):
    if args.algebra_command == "list":
        for name in catalog.ALGEBRA_NAMES:
            spec = catalog.builtin(name)
            print(f"{name}  (dim {spec.dim})")
    elif args.algebra_command == "show":
        print(catalog.format_table(catalog.builtin(args.name)))
    else:
        spec = catalog.builtin(args.name)
        report = catalog.check_properties(spec)
        print(f"{spec.name}:")
        print(f"  commutative:        {report.commutative}")
        print(f"  associative:        {report.associative}")
        print(f"  units self-inverse: {report.units_self_inverse}")
    return EXIT_OK


def _emit(records, args, config):
    if args.format == "json":
        reporting.emit_json(records, args.out, config=config)
    else:
        reporting.emit_csv(records, args.out, config=config)
    print(f"wrote {len(records)} records to {args.out}", file=sys.stderr)


def _run_parallel(worker, cfgs, jobs):
    if jobs <= 1 or len(cfgs) <= 1:
        results = [worker(c) for c in cfgs]
    else:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(worker, cfgs))
    return [rec for batch in results for rec in batch]


def _cmd_lorenz(args):
    if args.lmin > args.lmax:
        raise UsageError(f"empty hidden-size range [{args.lmin}, {args.lmax}]")
    names = _algebra_list(args.algebras)
    base = lorenz.LorenzExperimentConfig(
        algebras=tuple(names),
        l_min=args.lmin,
        l_max=args.lmax,
        trials=args.trials,
        seed_base=args.seed,
        params=lorenz.LorenzParams(dt=args.dt, steps=args.steps),
        train_points=args.train_points,
        window=args.window,
        normalize=args.normalize,
    )
    # Per-trial seeds depend only on (seed, algebra, L, trial), so splitting
    # the grid by algebra across workers cannot change the results.
    cfgs = [dataclasses.replace(base, algebras=(name,)) for name in names]
    records = _run_parallel(lorenz.run_lorenz_experiment, cfgs, args.jobs)
    wins = lorenz.win_counts(records)
    for l_hyper in sorted(wins):
        tally = ", ".join(f"{k}={v}" for k, v in sorted(wins[l_hyper].items()))
        print(f"L_hyper={l_hyper}: wins {tally}", file=sys.stderr)
    _emit(records, args, {"command": "lorenz", **vars(args)})
    return EXIT_OK


def _load_image_sets(args):
    if args.data_dir is not None:
        train = cifar.load_cifar_batch(os.path.join(args.data_dir, "data_batch_1.bin"))
        test = cifar.load_cifar_batch(os.path.join(args.data_dir, "test_batch.bin"))
        return train, test
    count = args.subset or 1000
    print("no --data-dir given; using synthetic image corpus", file=sys.stderr)
    train = cifar.synthetic_images(count, seed=args.seed)
    test = cifar.synthetic_images(count, seed=args.seed + 1)
    return train, test


def _cmd_cifar(args):
    train, test = _load_image_sets(args)
    names = _algebra_list(args.algebras)
    base = cifar.AutoencoderExperimentConfig(
        algebras=tuple(names),
        l_real=args.l_real,
        l_hyper=args.l_hyper,
        trials=args.trials,
        seed_base=args.seed,
        subset=args.subset,
    )

    def worker(cfg):
        return cifar.run_autoencoder_experiment(
            train, test, cfg, dump_dir=args.dump_images
        )

    cfgs = [dataclasses.replace(base, algebras=(name,)) for name in names]
    if args.jobs > 1:
        # Worker closures do not pickle; fall back to serial above one job.
        print("cifar runs serially; --jobs ignored", file=sys.stderr)
    records = _run_parallel(worker, cfgs, 1)
    _emit(records, args, {"command": "cifar", **vars(args)})
    return EXIT_OK


def _load_hmatrix(doc, key, algebra):
    if key not in doc:
        raise FormatError(f"dataset is missing {key!r}")
    return HMatrix(algebra, np.asarray(doc[key], dtype=float))


def _read_json(path):
    with open(path) as fh:
        try:
            return json.load(fh)
        except json.JSONDecodeError as exc:
            raise FormatError(f"{path}: not valid JSON: {exc}") from exc


def _cmd_train(args):
    algebra = catalog.builtin(args.algebra)
    doc = _read_json(args.data)
    X = _load_hmatrix(doc, "inputs", algebra)
    T = _load_hmatrix(doc, "targets", algebra)
    model = elm.HyperELM(
        algebra, args.hidden, alpha=args.alpha, seed=args.seed
    ).fit(X, T)
    model.save(args.out)
    print(f"trained {args.algebra} model saved to {args.out}", file=sys.stderr)
    return EXIT_OK


def _cmd_predict(args):
    model = elm.HyperELM.load(args.model)
    doc = _read_json(args.data)
    X = _load_hmatrix(doc, "inputs", model.algebra)
    Y = model.predict(X)
    with open(args.out, "w") as fh:
        json.dump({"predictions": Y.coeffs.tolist()}, fh)
    print(f"predictions written to {args.out}", file=sys.stderr)
    return EXIT_OK


_COMMANDS = {
    "algebra": _cmd_algebra,
    "lorenz": _cmd_lorenz,
    "cifar": _cmd_cifar,
    "train": _cmd_train,
    "predict": _cmd_predict,
}


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except _NUMERICAL_ERRORS as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except (HyperelmError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
