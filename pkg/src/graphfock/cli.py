"""Command-line surface: bounds, norm, moments, enumerate, generate,
khintchine, certify, and sweep.

All numeric output goes through one formatter (12 significant digits for
floats, full decimal for exact integers), so identical configurations
produce byte-identical JSON/CSV.
"""

from __future__ import annotations

import argparse
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from . import bounds as bounds_mod
from . import moments as moments_mod
from .errors import BasisTooLargeError, GraphFockError
from .estimators import (
    LowerBoundBudget,
    NormEstimate,
    best_lower,
    clique_vector_bound,
    truncated_norm,
)
from .fock import FockBasis, check_commutation
from .graphs import (
    FAMILY_NAMES,
    Graph,
    clique_number,
    from_display_vertices,
    generate_family,
    graph_json_text,
    load_graph,
    spectrum,
    structural_predicates,
    to_display_vertices,
)
from .moments import MomentCalculator, catalan, nth_root, sum_moments
from .traces import enumerate_traces, format_trace, in_reduced_index_set
from .tensorops import khintchine_check, load_coefficients

THREADS_ENV_VAR = "GRAPHFOCK_THREADS"

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_RESOURCE = 2
EXIT_CERTIFY_FAILED = 3


@dataclass
class RunConfig:
    command: str
    graph_path: str | None = None
    family: str | None = None
    params: tuple = ()
    seed: int | None = None
    depth: int = 8
    order: int = 8
    clique_n: int = 1000
    tol: float = 1e-10
    state_cap: int = 5_000_000
    fmt: str = "table"
    output: str | None = None
    method: str = "best"
    variant: str = "eigen"
    coefficients: str | None = None
    clique: tuple | None = None
    with_lower: bool = False
    list_states: bool = False
    start: int = 4
    stop: int = 8
    p: float = 0.5
    threads: int = 0
    extra: dict = field(default_factory=dict)


# ---------------------------------------------------------------------------
# Deterministic formatting

def fmt_float(x: float) -> str:
    return "%.12g" % float(x)


def _fmt_value(v) -> str:
    if v is None:
        return "null"
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, int):
        return str(v)
    if isinstance(v, float):
        return fmt_float(v)
    if isinstance(v, str):
        import json as _json

        return _json.dumps(v)
    if isinstance(v, (list, tuple)):
        return "[" + ", ".join(_fmt_value(x) for x in v) + "]"
    if isinstance(v, dict):
        return (
            "{"
            + ", ".join(f"{_fmt_value(str(k))}: {_fmt_value(val)}" for k, val in v.items())
            + "}"
        )
    raise TypeError(f"cannot serialize {type(v)}")


def to_json_text(obj) -> str:
    return _fmt_value(obj) + "\n"


def _csv_cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "1" if v else "0"
    if isinstance(v, int):
        return str(v)
    if isinstance(v, float):
        return fmt_float(v)
    return str(v)


def to_csv_text(header, rows) -> str:
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(_csv_cell(v) for v in row))
    return "\n".join(lines) + "\n"


def to_table_text(pairs) -> str:
    width = max(len(str(k)) for k, _ in pairs)
    lines = [f"{str(k).ljust(width)}  {_csv_cell(v) if not isinstance(v, str) else v}"
             for k, v in pairs]
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Graph source

def _resolve_graph(cfg: RunConfig) -> Graph:
    if (cfg.graph_path is None) == (cfg.family is None):
        raise GraphFockError("exactly one graph source: --graph FILE or --family NAME")
    if cfg.graph_path is not None:
        return load_graph(cfg.graph_path)
    return generate_family(cfg.family, cfg.params, seed=cfg.seed)


def _emit(cfg: RunConfig, text: str) -> None:
    if cfg.output:
        with open(cfg.output, "w") as f:
            f.write(text)
    else:
        sys.stdout.write(text)


def _thread_count(cfg: RunConfig) -> int:
    if cfg.threads > 0:
        return cfg.threads
    env = os.environ.get(THREADS_ENV_VAR, "")
    if env.isdigit() and int(env) > 0:
        return int(env)
    return os.cpu_count() or 1


# ---------------------------------------------------------------------------
# Commands

def _norm_estimate_dict(est: NormEstimate) -> dict:
    return {
        "value": est.value,
        "method": est.method,
        "depth_or_order": est.depth_or_order,
        "certified_lower": est.certified_lower,
        "residual": est.residual,
    }


_REPORT_COLUMNS = (
    "d",
    "lambda1",
    "lambda2",
    "omega",
    "upper_eigen",
    "upper_regular",
    "upper_clique_eigen",
    "lower_clique",
    "lower_free",
    "haar_upper",
)


def _report_row(rep: bounds_mod.BoundsReport):
    row = [getattr(rep, c) for c in _REPORT_COLUMNS]
    row.append(None if rep.numerical_lower is None else rep.numerical_lower.value)
    row.append(rep.all_passed)
    return row


def cmd_bounds(cfg: RunConfig) -> int:
    g = _resolve_graph(cfg)
    budget = None
    if cfg.with_lower:
        budget = LowerBoundBudget(
            max_depth=cfg.depth, max_order=cfg.order, max_N=cfg.clique_n
        )
    rep = bounds_mod.report(g, budget=budget)
    if cfg.fmt == "json":
        _emit(cfg, to_json_text(rep.to_dict()))
    elif cfg.fmt == "csv":
        header = list(_REPORT_COLUMNS) + ["numerical_lower", "flags_pass"]
        _emit(cfg, to_csv_text(header, [_report_row(rep)]))
    else:
        pairs = list(zip(_REPORT_COLUMNS, _report_row(rep)[: len(_REPORT_COLUMNS)]))
        pairs.append(
            (
                "numerical_lower",
                "n/a" if rep.numerical_lower is None else fmt_float(rep.numerical_lower.value),
            )
        )
        for f in rep.flags:
            pairs.append((f"check[{f.name}]", ("PASS" if f.passed else "FAIL") + "  " + f.detail))
        _emit(cfg, to_table_text(pairs))
    return EXIT_OK


def cmd_norm(cfg: RunConfig) -> int:
    g = _resolve_graph(cfg)
    if cfg.method == "lanczos":
        est = truncated_norm(g, cfg.depth, tol=cfg.tol, cap=cfg.state_cap)
    elif cfg.method == "moment_root":
        order = cfg.order - (cfg.order % 2)
        est = NormEstimate(
            value=moments_mod.moment_norm_lower(g, order, cap=cfg.state_cap),
            method="moment_root",
            depth_or_order=order,
            certified_lower=True,
            residual=0.0,
        )
    elif cfg.method == "clique_vector":
        if cfg.clique is not None:
            witness = from_display_vertices(cfg.clique, g.d)
        else:
            witness = clique_number(g).witness
        est = clique_vector_bound(g, witness, cfg.clique_n)
    else:
        est = best_lower(
            g,
            LowerBoundBudget(max_depth=cfg.depth, max_order=cfg.order, max_N=cfg.clique_n),
            tol=cfg.tol,
            cap=cfg.state_cap,
        )
    data = _norm_estimate_dict(est)
    if cfg.fmt == "json":
        _emit(cfg, to_json_text(data))
    elif cfg.fmt == "csv":
        _emit(cfg, to_csv_text(list(data), [list(data.values())]))
    else:
        _emit(cfg, to_table_text(list(data.items())))
    return EXIT_OK


def cmd_moments(cfg: RunConfig) -> int:
    g = _resolve_graph(cfg)
    order = cfg.order - (cfg.order % 2)
    seq = sum_moments(g, order, cap=cfg.state_cap)
    rows = []
    for k in range(2, order + 1, 2):
        m = seq.moment(k)
        rows.append([k, m, nth_root(m, k)])
    if cfg.fmt == "json":
        _emit(
            cfg,
            to_json_text(
                {
                    "graph_id": seq.graph_id,
                    "rows": [{"order": r[0], "moment": r[1], "root": r[2]} for r in rows],
                }
            ),
        )
    else:
        _emit(cfg, to_csv_text(["order", "moment", "root"], rows))
    return EXIT_OK


def cmd_enumerate(cfg: RunConfig) -> int:
    g = _resolve_graph(cfg)
    levels = enumerate_traces(g, cfg.depth, cap=cfg.state_cap)
    if cfg.fmt == "json":
        out = {"depth": cfg.depth, "counts": list(levels.counts), "total": levels.total}
        if cfg.list_states:
            out["states"] = [format_trace(t) for level in levels.levels for t in level]
        _emit(cfg, to_json_text(out))
    elif cfg.fmt == "csv":
        rows = [[n, c] for n, c in enumerate(levels.counts)]
        _emit(cfg, to_csv_text(["length", "count"], rows))
    else:
        pairs = [(f"length {n}", c) for n, c in enumerate(levels.counts)]
        pairs.append(("total", levels.total))
        text = to_table_text(pairs)
        if cfg.list_states:
            text += "".join(
                format_trace(t) + "\n" for level in levels.levels for t in level
            )
        _emit(cfg, text)
    return EXIT_OK


def cmd_generate(cfg: RunConfig) -> int:
    g = generate_family(cfg.family, cfg.params, seed=cfg.seed)
    _emit(cfg, graph_json_text(g))
    return EXIT_OK


def cmd_khintchine(cfg: RunConfig) -> int:
    g = _resolve_graph(cfg)
    if not cfg.coefficients:
        raise GraphFockError("khintchine needs --coefficients FILE")
    c = load_coefficients(cfg.coefficients)
    chk = khintchine_check(c, g, cfg.depth, variant=cfg.variant, tol=cfg.tol, cap=cfg.state_cap)
    if cfg.fmt == "json":
        _emit(cfg, to_json_text(chk.to_dict()))
    elif cfg.fmt == "csv":
        _emit(cfg, to_csv_text(list(chk.to_dict()), [list(chk.to_dict().values())]))
    else:
        _emit(cfg, to_table_text(list(chk.to_dict().items())))
    return EXIT_OK


def cmd_certify(cfg: RunConfig) -> int:
    g = _resolve_graph(cfg)
    lines = []
    failed = 0

    def check(name, passed, detail=""):
        nonlocal failed
        if not passed:
            failed += 1
        lines.append(f"{'PASS' if passed else 'FAIL'}  {name}  {detail}".rstrip())

    _run_certify_checks(g, cfg, check)
    lines.append(
        f"{'OK' if failed == 0 else 'FAILED'}: "
        f"{len(lines) - failed}/{len(lines)} checks passed"
    )
    _emit(cfg, "\n".join(lines) + "\n")
    return EXIT_OK if failed == 0 else EXIT_CERTIFY_FAILED


def _run_certify_checks(g: Graph, cfg: RunConfig, check) -> None:
    from .graphs import graph_from_dict, graph_to_dict

    spec = spectrum(g)
    shape = structural_predicates(g)
    tol = 1e-9

    check("json_round_trip", graph_from_dict(graph_to_dict(g)) == g)
    check(
        "spectrum_trace_zero",
        abs(sum(spec.eigenvalues)) <= spec.tolerance,
        f"sum={sum(spec.eigenvalues):.3e}",
    )
    check(
        "spectrum_range",
        spec.eigenvalues[0] <= g.d - 1 + spec.tolerance
        and spec.eigenvalues[-1] >= -(g.d - 1) - spec.tolerance,
    )
    if shape.is_regular:
        check(
            "regular_top_eigenvalue",
            abs(spec.lambda1 - shape.degree) <= spec.tolerance,
            f"lambda1={spec.lambda1:.12g} degree={shape.degree}",
        )

    comm_depth = max(2, min(3, cfg.depth))
    basis = FockBasis(g, comm_depth)
    worst = max(
        check_commutation(i, j, basis) for i in range(g.d) for j in range(g.d)
    )
    check("commutation_residual_zero", worst == 0, f"max residual {worst}")

    calc = MomentCalculator(g, depth=3)
    marginal_ok = all(
        calc.vacuum_moment((i,) * (2 * n)) == catalan(n)
        for i in (0, g.d - 1)
        for n in range(0, 3)
    )
    check("marginal_semicircle_moments", marginal_ok)

    # all index tuples of length <= 4 over the first few letters
    letters = range(min(3, g.d))
    tuples: list[tuple] = []
    level: list[tuple] = [()]
    for _ in range(4):
        level = [t + (a,) for t in level for a in letters]
        tuples += level
    vanish_ok = all(
        calc.vacuum_moment(t) == 0
        for t in tuples
        if in_reduced_index_set(t, g)
    )
    check("reduced_tuple_moments_vanish", vanish_ok)

    order = cfg.order - (cfg.order % 2)
    seq = sum_moments(g, order)
    check("second_moment_is_d", seq.moment(2) == g.d, f"m_2={seq.moment(2)}")
    roots = [nth_root(seq.moment(k), k) for k in range(2, order + 1, 2)]
    check(
        "moment_roots_nondecreasing",
        all(b >= a - 1e-12 for a, b in zip(roots, roots[1:])),
    )

    rep = bounds_mod.report(
        g,
        budget=LowerBoundBudget(
            max_depth=min(cfg.depth, 5), max_order=order, max_N=cfg.clique_n
        ),
    )
    for flagged in rep.flags:
        check(f"report_{flagged.name}", flagged.passed, flagged.detail)
    check(
        "moment_root_below_uppers",
        roots[-1] <= rep.min_upper() + tol,
        f"{roots[-1]:.12g} <= {rep.min_upper():.12g}",
    )


def cmd_sweep(cfg: RunConfig) -> int:
    if cfg.family is None:
        raise GraphFockError("sweep needs --family NAME")
    if cfg.family == "complete_multipartite":
        raise GraphFockError("sweep supports single-parameter families only")
    if cfg.stop < cfg.start:
        raise GraphFockError("--stop must be >= --start")
    budget = None
    if cfg.with_lower:
        budget = LowerBoundBudget(
            max_depth=cfg.depth, max_order=cfg.order, max_N=cfg.clique_n
        )

    def one(d):
        params = (d, cfg.p) if cfg.family == "erdos_renyi" else (d,)
        g = generate_family(cfg.family, params, seed=cfg.seed)
        return bounds_mod.report(g, budget=budget)

    values = list(range(cfg.start, cfg.stop + 1))
    with ThreadPoolExecutor(max_workers=_thread_count(cfg)) as pool:
        reports = list(pool.map(one, values))
    header = ["param"] + list(_REPORT_COLUMNS) + ["numerical_lower", "flags_pass"]
    rows = [[v] + _report_row(rep) for v, rep in zip(values, reports)]
    _emit(cfg, to_csv_text(header, rows))
    return EXIT_OK


# ---------------------------------------------------------------------------
# Argument parsing

class _Parser(argparse.ArgumentParser):
    def error(self, message):  # exit code 1 on bad usage, not argparse's 2
        raise GraphFockError(message)


def _build_parser() -> _Parser:
    parser = _Parser(prog="graphfock", description=__doc__)
    parser.add_argument("--threads", type=int, default=0,
                        help=f"worker threads (default: machine; env {THREADS_ENV_VAR})")
    sub = parser.add_subparsers(dest="command", required=True)

    src = argparse.ArgumentParser(add_help=False)
    src.add_argument("--graph", dest="graph_path", help="graph JSON file")
    src.add_argument("--family", choices=FAMILY_NAMES, help="named family")
    src.add_argument("--params", type=float, nargs="*", default=[],
                     help="family parameters")
    src.add_argument("--seed", type=int, default=None)

    out = argparse.ArgumentParser(add_help=False)
    out.add_argument("--format", dest="fmt", choices=("json", "csv", "table"),
                     default="table")
    out.add_argument("-o", "--output", default=None, help="write to file")

    nums = argparse.ArgumentParser(add_help=False)
    nums.add_argument("--depth", type=int, default=8, help="Fock truncation depth")
    nums.add_argument("--order", type=int, default=8, help="max moment order")
    nums.add_argument("--clique-N", dest="clique_n", type=int, default=1000,
                      help="clique test-vector size")
    nums.add_argument("--tol", type=float, default=1e-10)
    nums.add_argument("--state-cap", dest="state_cap", type=int, default=5_000_000,
                      help="hard limit on enumerated basis states")

    p = sub.add_parser("bounds", parents=[src, out, nums],
                       help="closed-form bounds report for one graph")
    p.add_argument("--with-lower", action="store_true",
                   help="attach the best numerical lower bound")

    p = sub.add_parser("norm", parents=[src, out, nums],
                       help="numerical lower bounds on the generator-sum norm")
    p.add_argument("--method", choices=("lanczos", "moment_root", "clique_vector", "best"),
                   default="best")
    p.add_argument("--clique", default=None,
                   help="comma-separated 1-based clique vertices for clique_vector")

    sub.add_parser("moments", parents=[src, out, nums],
                   help="exact moments of the generator sum (CSV by default)")

    p = sub.add_parser("enumerate", parents=[src, out, nums],
                       help="trace counts per word length")
    p.add_argument("--list", dest="list_states", action="store_true",
                   help="also print the canonical states")

    p = sub.add_parser("generate", parents=[out],
                       help="emit a named family graph as JSON")
    p.add_argument("family", choices=FAMILY_NAMES)
    p.add_argument("params", type=float, nargs="*")
    p.add_argument("--seed", type=int, default=None)

    p = sub.add_parser("khintchine", parents=[src, out, nums],
                       help="operator-coefficient bound check")
    p.add_argument("--coefficients", required=True, help="coefficient JSON file")
    p.add_argument("--variant", choices=("eigen", "regular"), default="eigen")

    p = sub.add_parser("certify", parents=[src, out, nums],
                       help="run the consistency suite on one graph")
    p.set_defaults(order=6, depth=4, clique_n=500)

    p = sub.add_parser("sweep", parents=[out, nums],
                       help="bounds CSV over a family parameter range")
    p.add_argument("--family", choices=FAMILY_NAMES, required=True)
    p.add_argument("--start", type=int, default=4)
    p.add_argument("--stop", type=int, default=8)
    p.add_argument("--p", type=float, default=0.5, help="edge probability (erdos_renyi)")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--with-lower", action="store_true")

    return parser


def _config_from_args(args) -> RunConfig:
    cfg = RunConfig(command=args.command)
    for name in vars(cfg):
        if hasattr(args, name):
            setattr(cfg, name, getattr(args, name))
    if getattr(args, "params", None) is not None:
        cfg.params = tuple(
            int(x) if float(x).is_integer() else float(x) for x in args.params
        )
    clique = getattr(args, "clique", None)
    if clique:
        cfg.clique = tuple(int(tok) for tok in str(clique).split(","))
    return cfg


_COMMANDS = {
    "bounds": cmd_bounds,
    "norm": cmd_norm,
    "moments": cmd_moments,
    "enumerate": cmd_enumerate,
    "generate": cmd_generate,
    "khintchine": cmd_khintchine,
    "certify": cmd_certify,
    "sweep": cmd_sweep,
}


def run(cfg: RunConfig) -> int:
    return _COMMANDS[cfg.command](cfg)


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        return run(_config_from_args(args))
    except BasisTooLargeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (GraphFockError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
