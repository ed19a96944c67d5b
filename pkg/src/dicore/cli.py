"""Command-line interface.

Every subcommand is a thin wrapper over one library call. Results go to
stdout, diagnostics to stderr. Exit codes: 0 for success or a positive
verdict, 1 for a negative verdict (NOT CORE, NOT FOUND, NOT CONTAINED),
2 for budget-exhausted verdicts, usage errors, and malformed inputs.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import fields

from . import bounds, density, homomorphism, random_model
from .digraph import Digraph, DigraphParseError
from .experiments import (
    ExperimentSpec,
    exp_common_neighbors,
    exp_core_fraction,
    exp_max_acyclic,
    exp_neighbors,
    exp_pair_contraction,
    exp_subset_arcs,
    exp_tail_vs_bound,
    exp_threshold_sweep,
)
from .homomorphism import DEFAULT_BUDGET

EXPERIMENTS = {
    "neighbors": exp_neighbors,
    "common-neighbors": exp_common_neighbors,
    "max-acyclic": exp_max_acyclic,
    "subset-arcs": exp_subset_arcs,
    "pair-contraction": exp_pair_contraction,
    "threshold": exp_threshold_sweep,
    "core-fraction": exp_core_fraction,
    "tail-bound": exp_tail_vs_bound,
}


def _read_digraph(path: str) -> Digraph:
    with open(path, encoding="utf-8") as fh:
        return Digraph.from_text(fh.read())


def _write_output(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)


def _print_map(mapping: homomorphism.VertexMap) -> None:
    for v, t in enumerate(mapping.image):
        print(f"{v + 1} -> {t + 1}")


def _int_list(text: str) -> tuple[int, ...]:
    return tuple(int(part) for part in text.split(",") if part.strip())


def _float_list(text: str) -> tuple[float, ...]:
    return tuple(float(part) for part in text.split(",") if part.strip())


def _cmd_sample(args: argparse.Namespace) -> int:
    d = random_model.sample(args.n, args.p, random_model.Seed(args.seed, args.stream))
    _write_output(d.to_text(), args.out)
    return 0


def _cmd_is_core(args: argparse.Namespace) -> int:
    verdict = homomorphism.is_core(_read_digraph(args.infile), args.budget)
    if verdict.status is homomorphism.CoreStatus.CORE:
        print("CORE")
        return 0
    if verdict.status is homomorphism.CoreStatus.NOT_CORE:
        print("NOT CORE")
        assert verdict.witness is not None
        _print_map(verdict.witness)
        return 1
    print("UNKNOWN (budget)")
    return 2


def _cmd_find_hom(args: argparse.Namespace) -> int:
    source = _read_digraph(args.source)
    target = _read_digraph(args.target)
    result = homomorphism.find_acyclic_hom(source, target, args.budget)
    if result.found:
        print("FOUND")
        assert result.mapping is not None
        _print_map(result.mapping)
        return 0
    if result.exhausted:
        print("NOT FOUND")
        return 1
    print("UNKNOWN (budget)")
    return 2


def _cmd_contains(args: argparse.Namespace) -> int:
    host = _read_digraph(args.host)
    pattern = _read_digraph(args.pattern)
    result = homomorphism.subdigraph_contains(host, pattern, args.budget)
    if result.found:
        print("CONTAINS")
        assert result.mapping is not None
        _print_map(result.mapping)
        return 0
    if result.exhausted:
        print("NOT CONTAINED")
        return 1
    print("UNKNOWN (budget)")
    return 2


def _cmd_max_density(args: argparse.Namespace) -> int:
    d = _read_digraph(args.infile)
    solver = (
        density.max_density_bruteforce if args.method == "brute" else density.max_density_exact
    )
    result = solver(d)
    value = result.value
    print(f"m = {value.numerator}/{value.denominator} ({float(value)!r})")
    print("witness:", " ".join(str(v + 1) for v in result.witness))
    return 0


def _cmd_bound(args: argparse.Namespace) -> int:
    tail_mode = args.mean is not None or args.t is not None
    corollary_mode = args.eps is not None or args.expectation is not None
    if tail_mode == corollary_mode:
        raise ValueError("use either --lambda with --t, or --eps with --mean")
    if tail_mode:
        if args.mean is None or args.t is None:
            raise ValueError("tail bounds need both --lambda and --t")
        upper = bounds.chernoff_upper(args.mean, args.t)
        lower = bounds.chernoff_lower(args.mean, args.t)
        print(f"upper rate_bound = {upper.rate_bound!r}")
        print(f"upper quadratic = {upper.quadratic_upper!r}")
        print(f"lower rate_bound = {lower.rate_bound!r}")
        print(f"lower quadratic = {lower.quadratic_lower!r}")
    else:
        if args.eps is None or args.expectation is None:
            raise ValueError("the corollary bound needs both --eps and --mean")
        result = bounds.corollary_bound(args.eps, args.expectation)
        print(f"general = {result.general!r}")
        if result.simplified is not None:
            print(f"simplified = {result.simplified!r}")
    return 0


def _spec_from_args(args: argparse.Namespace) -> ExperimentSpec:
    data: dict = {}
    if args.config:
        with open(args.config, encoding="utf-8") as fh:
            data = json.load(fh)
    data.pop("experiment", None)
    overrides = {
        "ns": args.n,
        "ps": args.p,
        "trials": args.trials,
        "seed": args.seed,
        "k": args.k,
        "budget": args.budget,
        "pairs_per_trial": args.pairs_per_trial,
        "ratios": args.ratios,
        "binomial_n": args.binomial_n,
        "tail_points": args.tail_points,
    }
    for key, value in overrides.items():
        if value is not None:
            data[key] = value
    data.setdefault("ns", ())
    data.setdefault("ps", ())
    if "trials" not in data:
        raise ValueError("experiment needs --trials (or a config file setting it)")
    if "seed" not in data:
        raise ValueError("experiment needs --seed (or a config file setting it)")
    known = {f.name for f in fields(ExperimentSpec)} - {"experiment"}
    unknown = set(data) - known
    if unknown:
        raise ValueError(f"unknown experiment config keys: {sorted(unknown)}")
    return ExperimentSpec.from_dict({"experiment": args.experiment_id, **data})


def _cmd_experiment(args: argparse.Namespace) -> int:
    spec = _spec_from_args(args)
    workers = args.workers if args.workers is not None else (os.cpu_count() or 1)
    if args.experiment_id == "threshold":
        if not args.pattern:
            raise ValueError("threshold experiment needs --pattern FILE")
        table = exp_threshold_sweep(_read_digraph(args.pattern), spec, workers)
    else:
        table = EXPERIMENTS[args.experiment_id](spec, workers)
    _write_output(table.to_csv(), args.out)
    return 0


def _cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .service import create_app

    uvicorn.run(create_app(), host=args.host, port=args.port)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dicore",
        description="Random digraphs, acyclic homomorphisms, cores, and experiments.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_sample = sub.add_parser("sample", help="sample a digraph from D(n, p)")
    p_sample.add_argument("--n", type=int, required=True)
    p_sample.add_argument("--p", type=float, required=True)
    p_sample.add_argument("--seed", type=int, required=True)
    p_sample.add_argument("--stream", type=int, default=0)
    p_sample.add_argument("--out", default=None)
    p_sample.set_defaults(func=_cmd_sample)

    p_core = sub.add_parser("is-core", help="certify whether a digraph is a core")
    p_core.add_argument("--in", dest="infile", required=True)
    p_core.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p_core.set_defaults(func=_cmd_is_core)

    p_hom = sub.add_parser("find-hom", help="search for an acyclic homomorphism")
    p_hom.add_argument("--from", dest="source", required=True)
    p_hom.add_argument("--to", dest="target", required=True)
    p_hom.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p_hom.set_defaults(func=_cmd_find_hom)

    p_contains = sub.add_parser("contains", help="test subdigraph containment")
    p_contains.add_argument("--pattern", required=True)
    p_contains.add_argument("--host", required=True)
    p_contains.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p_contains.set_defaults(func=_cmd_contains)

    p_density = sub.add_parser("max-density", help="exact maximum density m(D)")
    p_density.add_argument("--in", dest="infile", required=True)
    p_density.add_argument("--method", choices=("brute", "exact"), default="exact")
    p_density.set_defaults(func=_cmd_max_density)

    p_bound = sub.add_parser("bound", help="Chernoff tail bounds")
    p_bound.add_argument("--lambda", dest="mean", type=float, default=None)
    p_bound.add_argument("--t", type=float, default=None)
    p_bound.add_argument("--eps", type=float, default=None)
    p_bound.add_argument("--mean", dest="expectation", type=float, default=None)
    p_bound.set_defaults(func=_cmd_bound)

    p_exp = sub.add_parser("experiment", help="run a Monte Carlo experiment")
    p_exp.add_argument("experiment_id", choices=sorted(EXPERIMENTS))
    p_exp.add_argument("--config", default=None, help="JSON config; flags override it")
    p_exp.add_argument("--n", type=_int_list, default=None, help="comma-separated n values")
    p_exp.add_argument("--p", type=_float_list, default=None, help="comma-separated p values")
    p_exp.add_argument("--trials", type=int, default=None)
    p_exp.add_argument("--seed", type=int, default=None)
    p_exp.add_argument("--k", type=int, default=None)
    p_exp.add_argument("--budget", type=int, default=None)
    p_exp.add_argument("--pairs-per-trial", type=int, default=None)
    p_exp.add_argument("--ratios", type=_float_list, default=None)
    p_exp.add_argument("--binomial-n", type=int, default=None)
    p_exp.add_argument("--tail-points", type=int, default=None)
    p_exp.add_argument("--pattern", default=None, help="pattern digraph file (threshold)")
    p_exp.add_argument("--workers", type=int, default=None)
    p_exp.add_argument("--out", default=None)
    p_exp.set_defaults(func=_cmd_experiment)

    p_serve = sub.add_parser("serve", help="run the HTTP service")
    p_serve.add_argument("--host", default="127.0.0.1")
    p_serve.add_argument("--port", type=int, default=8000)
    p_serve.set_defaults(func=_cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except DigraphParseError as exc:
        print(f"error: malformed digraph: {exc}", file=sys.stderr)
        return 2
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
