"""Command line interface.

Subcommands compute Betti numbers, delocalized reports, Witten sweeps,
Morse matching checks, closed 1-form tower checks, and the full corpus
battery.  Inputs are JSON documents validated against the bundled
schemas; reports are written as CSV or JSON.  The exit status is 0 when
every verdict passes, 1 on a failed verdict, and 2 on bad input.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import jsonschema
import numpy as np

from . import reports
from .complexes import (
    ComplexError,
    SimplicialComplex,
    betti_vector,
    builtin_complex,
    build_complex,
)
from .cover import CoverComplex, build_cover
from .delocalized import (
    beta_oracle,
    delocalized_report,
    gamma,
)
from .fixtures import fixture_path, normalized_index_function, voltage_from_json
from .groups import conjugacy_classes
from .hodge import spectral_betti
from .morse import (
    MorseMatching,
    lift_matching,
    matching_from_vertex_function,
    validate_matching,
    verify_delocalized_morse,
)
from .oneform import (
    ClosedOneCochain,
    fibration_trend_report,
    periods,
    verify_delahgar,
)
from .rng import DEFAULT_SEED
from .suite import (
    S_GRID,
    T_GRID,
    SuiteContext,
    run_corpus,
    write_corpus_reports,
    _mu_grid,
)
from .witten import verify_analytic_morse

_SCHEMAS = None


def _schemas() -> dict:
    global _SCHEMAS
    if _SCHEMAS is None:
        path = Path(__file__).parent / "schemas.json"
        _SCHEMAS = json.loads(path.read_text())
    return _SCHEMAS


class CliError(Exception):
    pass


def _load_json(path: str, schema: str) -> dict:
    p = Path(path)
    if not p.exists():
        candidate = fixture_path(path)
        if candidate.exists():
            p = candidate
        else:
            raise CliError(f"input file not found: {path}")
    try:
        data = json.loads(p.read_text())
    except json.JSONDecodeError as exc:
        raise CliError(f"{p}: not valid JSON: {exc}") from exc
    schemas = _schemas()
    validator = jsonschema.Draft202012Validator(
        {"$ref": f"#/$defs/{schema}", "$defs": schemas["$defs"]}
    )
    errors = sorted(validator.iter_errors(data), key=str)
    if errors:
        raise CliError(f"{p}: does not match the '{schema}' schema: "
                       f"{errors[0].message}")
    return data


def _load_complex(source: str) -> SimplicialComplex:
    """A builtin name (cycle(n), rp2, torus, klein_bottle, mapping_torus)
    or a path to a complex JSON document."""
    try:
        return builtin_complex(source)
    except ComplexError:
        pass
    data = _load_json(source, "complex")
    return build_complex(
        [tuple(f) for f in data["facets"]], name=data.get("name", source)
    )


def _load_cover(K: SimplicialComplex, source: str) -> CoverComplex:
    data = _load_json(source, "cover")
    G, volt = voltage_from_json(data)
    return build_cover(K, G, volt)


def _load_cochain(source: str) -> ClosedOneCochain:
    data = _load_json(source, "one_cochain")
    values = {}
    for item in data["omega"]:
        u, v = item["edge"]
        if u > v:
            u, v = v, u
            item = {"edge": [u, v], "value": -item["value"]}
        val = item["value"]
        values[(u, v)] = int(val) if float(val).is_integer() else val
    return ClosedOneCochain(values)


def _select_classes(C: CoverComplex, source: str):
    classes = conjugacy_classes(C.group)
    if source == "all":
        return classes
    try:
        idx = int(source)
    except ValueError:
        raise CliError(f"--class must be an index or 'all', got {source!r}")
    if not 0 <= idx < len(classes):
        raise CliError(
            f"class index {idx} out of range; the group has "
            f"{len(classes)} conjugacy classes"
        )
    return [classes[idx]]


def _grid(text: str):
    try:
        return tuple(float(x) for x in text.split(","))
    except ValueError:
        raise CliError(f"expected a comma-separated number list, got {text!r}")


def _write_rows(out: Path, stem: str, columns, rows, fmt: str) -> Path:
    if fmt == "json":
        path = out / f"{stem}.json"
        reports.write_json(path, reports.rows_to_payload(columns, rows))
    else:
        path = out / f"{stem}.csv"
        reports.write_csv(path, columns, rows)
    return path


def _repro(args) -> str:
    return "eqhodge " + " ".join(sys.argv[1:]) if sys.argv[1:] else "eqhodge"


def cmd_info(args) -> int:
    K = _load_complex(args.input)
    print(f"complex: {K.name or args.input}")
    print(f"vertices: {K.vertex_count}")
    for k in range(K.dimension + 1):
        print(f"simplices[{k}]: {K.n_simplices(k)}")
    print(f"euler characteristic: {K.euler_characteristic()}")
    return 0


def cmd_betti(args) -> int:
    K = _load_complex(args.input)
    exact_b = betti_vector(K)
    spectral_b = tuple(spectral_betti(K, k) for k in range(K.dimension + 1))
    print(f"betti (exact):    {exact_b}")
    print(f"betti (spectral): {spectral_b}")
    if exact_b != spectral_b:
        print(
            "FAIL: hodge.spectral_betti disagrees with the exact rank "
            f"computation; reproduce with: {_repro(args)}",
            file=sys.stderr,
        )
        return 1
    return 0


def cmd_delocalized(args) -> int:
    K = _load_complex(args.input)
    C = _load_cover(K, args.cover)
    classes = _select_classes(C, getattr(args, "cls"))
    rows = delocalized_report(C, classes)
    failed = False
    for c in classes:
        for k in range(C.dimension + 1):
            spectral = next(
                r["beta"] for r in rows
                if r["class"] == c.representative and r["k"] == k
            )
            oracle = float(beta_oracle(C, k, c))
            if abs(spectral - oracle) > args.tol:
                failed = True
                print(
                    f"FAIL: delocalized.beta_delocalized disagrees with the "
                    f"exact character oracle in degree {k}, class "
                    f"{c.representative} ({spectral:.12g} vs {oracle:.12g}); "
                    f"reproduce with: {_repro(args)}",
                    file=sys.stderr,
                )
    out = Path(args.out)
    path = _write_rows(
        out, "delocalized", reports.DELOCALIZED_COLUMNS, rows, args.format
    )
    print(f"wrote {path}")
    print("delocalized: " + ("FAIL" if failed else "PASS"))
    return 1 if failed else 0


def cmd_witten_sweep(args) -> int:
    K = _load_complex(args.input)
    C = _load_cover(K, args.cover)
    classes = _select_classes(C, getattr(args, "cls"))
    if args.f is not None:
        f = tuple(_load_json(args.f, "vertex_function")["f"])
        if len(f) != K.vertex_count:
            raise CliError(
                f"vertex function has {len(f)} entries, complex has "
                f"{K.vertex_count} vertices"
            )
    else:
        f = normalized_index_function(K)

    class _Fx:  # adapter for the suite cache helpers
        name = f"cli:{args.input}:{args.cover}"
        cover = C
        morse_f = f

    ctx = SuiteContext(fixtures=[_Fx()], seed=args.seed)
    fx = ctx.fixtures[0]
    n = C.dimension
    rows = []
    failed = False
    for s in args.s_grid:
        for t in args.t_grid:
            if t <= 0:
                raise CliError("every t in --t-grid must be positive")
            for c in classes:
                mus = _mu_grid(ctx, fx, c, s, t)
                gammas = ctx.gammas(fx, c)
                verdicts = verify_analytic_morse(mus, gammas, n, args.tol)
                for k in range(n + 1):
                    rows.append([
                        s, t, k, c.representative, mus[k], gammas[k],
                        verdicts[k].partial_sum, verdicts[k].passed,
                    ])
                    if not verdicts[k].passed:
                        failed = True
                        print(
                            f"FAIL: witten.verify_analytic_morse at s={s} "
                            f"t={t} k={k} class {c.representative}: partial "
                            f"sum {verdicts[k].partial_sum:.12g}; reproduce "
                            f"with: {_repro(args)}",
                            file=sys.stderr,
                        )
    out = Path(args.out)
    path = _write_rows(out, "witten", reports.WITTEN_COLUMNS, rows, args.format)
    print(f"wrote {path}")
    print("witten-sweep: " + ("FAIL" if failed else "PASS"))
    return 1 if failed else 0


def cmd_morse_check(args) -> int:
    K = _load_complex(args.input)
    if args.matching is not None:
        data = _load_json(args.matching, "matching")
        M = MorseMatching.from_pairs(
            [(tuple(s), tuple(t)) for s, t in data["pairs"]]
        )
    else:
        if args.f is not None:
            f = tuple(_load_json(args.f, "vertex_function")["f"])
        else:
            f = normalized_index_function(K)
        M = matching_from_vertex_function(K, f)
    verdict = validate_matching(K, M)
    print(f"critical counts: {verdict.counts}")
    if not verdict.valid:
        for err in verdict.errors:
            print(
                f"FAIL: morse.validate_matching: {err}; reproduce with: "
                f"{_repro(args)}",
                file=sys.stderr,
            )
        print("morse-check: FAIL")
        return 1
    failed = False
    if args.cover is not None:
        C = _load_cover(K, args.cover)
        lifted = lift_matching(C, M)
        lifted_verdict = validate_matching(C.total, lifted)
        if not lifted_verdict.valid:
            failed = True
            for err in lifted_verdict.errors:
                print(
                    f"FAIL: morse.lift_matching produced an invalid "
                    f"matching: {err}; reproduce with: {_repro(args)}",
                    file=sys.stderr,
                )
        else:
            print(f"lifted critical counts: {lifted_verdict.counts}")
            classes = conjugacy_classes(C.group)
            for c in classes:
                if c.representative == C.group.identity:
                    continue
                gammas = [
                    gamma(C, k, c) for k in range(C.dimension + 1)
                ]
                results = verify_delocalized_morse(
                    verdict.counts, gammas, C.dimension, args.tol
                )
                for r in results:
                    if not r.passed:
                        failed = True
                        print(
                            f"FAIL: morse.verify_delocalized_morse at k="
                            f"{r.k}, class {c.representative}: {r.lhs:.12g} "
                            f"< {r.rhs:.12g}; reproduce with: {_repro(args)}",
                            file=sys.stderr,
                        )
    print("morse-check: " + ("FAIL" if failed else "PASS"))
    return 1 if failed else 0


def cmd_oneform_check(args) -> int:
    K = _load_complex(args.input)
    omega = _load_cochain(args.omega)
    pdata = periods(K, omega)
    print(f"periods: {pdata.periods} (integer: {pdata.integer_valued})")
    if not omega.integer_valued:
        raise CliError(
            "oneform.cyclic_cover requires an integer-valued cochain"
        )
    m_list = [int(m) for m in args.m_list]
    res = verify_delahgar(K, omega, args.power, m_list)
    rows = []
    for row in res["rows"]:
        data = res["per_m"][row.m]
        rows.append([
            row.m, row.k, data["class_rep"], row.c_count,
            data["beta_e"][row.k], data["beta_g"][row.k], row.gamma,
            row.lhs, row.rhs, row.passed,
        ])
        if not row.passed:
            print(
                f"FAIL: oneform.verify_delahgar at m={row.m} k={row.k}: "
                f"{row.lhs:.12g} < {row.rhs:.12g}; reproduce with: "
                f"{_repro(args)}",
                file=sys.stderr,
            )
    trend = fibration_trend_report(K, omega, m_list)
    print(f"defect bound: {res['defect_bound']}")
    if res["note"]:
        print(f"note: {res['note']}")
    for s in trend["summary"]:
        print(
            f"k={s['k']}: bound constant {s['bound_constant']:.12g}, "
            f"decay exponent {s['decay_exponent']}"
        )
    print(f"note: {trend['caveat']}")
    out = Path(args.out)
    path = _write_rows(out, "oneform", reports.ONEFORM_COLUMNS, rows, args.format)
    print(f"wrote {path}")
    print("oneform-check: " + ("PASS" if res["passed"] else "FAIL"))
    return 0 if res["passed"] else 1


def cmd_corpus(args) -> int:
    out = Path(args.out)
    ctx = SuiteContext(seed=args.seed)
    results = run_corpus(ctx, outdir=out, positivity_trials=args.trials)

    # determinism: a second report run must be byte-identical
    second = out / "determinism_check"
    ctx2 = SuiteContext(seed=args.seed)
    paths2 = write_corpus_reports(second, ctx2)
    identical = all(
        (out / p.name).read_bytes() == p.read_bytes() for p in paths2
    )
    from .suite import CriterionResult

    results.append(CriterionResult(
        12, "determinism", identical,
        f"{len(paths2)} report files compared byte-for-byte",
    ))
    for r in results:
        print(r.line)
    if all(r.passed for r in results):
        print("corpus: PASS")
        return 0
    print(f"corpus: FAIL; reproduce with: {_repro(args)}", file=sys.stderr)
    return 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="eqhodge",
        description=(
            "Delocalized Hodge theory on finite covers of simplicial "
            "complexes: Betti numbers, delocalized traces, Witten "
            "deformations, and Morse-type inequality checks."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, cover=False, out=False):
        p.add_argument(
            "--input", required=True,
            help="builtin complex name or path to a complex JSON file",
        )
        if cover:
            p.add_argument(
                "--cover", required=(cover == "required"), default=None,
                help="path to a voltage cover JSON file",
            )
        if out:
            p.add_argument("--out", default=".", help="report directory")
            p.add_argument(
                "--format", choices=("csv", "json"), default="csv",
            )

    p = sub.add_parser("info", help="summarize a complex")
    add_common(p)
    p.set_defaults(func=cmd_info)

    p = sub.add_parser("betti", help="exact and spectral Betti numbers")
    add_common(p)
    p.set_defaults(func=cmd_betti)

    p = sub.add_parser(
        "delocalized",
        help="delocalized Betti report with exact oracle cross-check",
    )
    add_common(p, cover="required", out=True)
    p.add_argument("--class", dest="cls", default="all",
                   help="conjugacy class index or 'all'")
    p.add_argument("--tol", type=float, default=1e-8)
    p.set_defaults(func=cmd_delocalized)

    p = sub.add_parser(
        "witten-sweep",
        help="deformed heat-trace sweep and analytic inequality checks",
    )
    add_common(p, cover="required", out=True)
    p.add_argument("--class", dest="cls", default="all")
    p.add_argument("--f", default=None,
                   help="vertex function JSON (default: v / vertex_count)")
    p.add_argument("--s-grid", type=_grid, default=S_GRID)
    p.add_argument("--t-grid", type=_grid, default=T_GRID)
    p.add_argument("--tol", type=float, default=1e-8)
    p.add_argument("--seed", type=lambda x: int(x, 0), default=DEFAULT_SEED)
    p.set_defaults(func=cmd_witten_sweep)

    p = sub.add_parser(
        "morse-check",
        help="validate a discrete Morse matching and the count inequalities",
    )
    add_common(p, cover=True)
    p.add_argument("--f", default=None, help="vertex function JSON")
    p.add_argument("--matching", default=None, help="matching JSON")
    p.add_argument("--tol", type=float, default=1e-8)
    p.set_defaults(func=cmd_morse_check)

    p = sub.add_parser(
        "oneform-check",
        help="closed 1-form tower checks over cyclic covers",
    )
    add_common(p, out=True)
    p.add_argument("--omega", required=True, help="1-cochain JSON")
    p.add_argument("--m-list", type=lambda s: s.split(","),
                   default=["2", "3", "4", "5", "6"])
    p.add_argument("--power", type=int, default=1,
                   help="generator power selecting the conjugacy class")
    p.set_defaults(func=cmd_oneform_check)

    p = sub.add_parser(
        "corpus",
        help="run the full verification battery over the fixture corpus",
    )
    p.add_argument("--out", default="corpus_reports")
    p.add_argument("--seed", type=lambda x: int(x, 0), default=DEFAULT_SEED)
    p.add_argument("--trials", type=int, default=200,
                   help="positivity trials per fixture and class")
    p.set_defaults(func=cmd_corpus)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ComplexError, ValueError) as exc:
        print(f"error: {exc}; reproduce with: {_repro(args)}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
