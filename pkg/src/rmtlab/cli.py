"""Command line interface: ``rmtlab {eval,quad,verify,catalog}``.

Exit codes: 0 success, 1 verification failure or unconverged quadrature,
2 usage error.
"""
import argparse
import sys

from . import expr
from .harness import (
    Config,
    UsageError,
    default_campaign,
    emit_report,
    expand_grid,
    load_config,
    run_verification,
)
from .phi import (
    UnknownEntryError,
    catalog_lookup,
    catalog_names,
    catalog_parameters,
    phi_from_expression,
)
from .quad import DEFAULT_OSC_TOL, DEFAULT_TOL, mellin_quad
from .rmt import rmt_generalized


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def _params(items):
    """['a=2', ...] -> {'a': 2.0}"""
    out = {}
    for item in items or ():
        key, sep, value = item.partition("=")
        if not sep:
            raise UsageError(f"--param expects key=value, got {item!r}")
        try:
            out[key.strip()] = float(value)
        except ValueError:
            raise UsageError(f"--param {key} needs a number, got {value!r}") from None
    return out


def _num(v):
    return format(v, ".17g")


def cmd_eval(args):
    entry = catalog_lookup(args.entry, **_params(args.param)) if args.entry else None
    if args.phi is not None:
        phi = phi_from_expression(expr.parse(args.phi))
    elif entry is not None:
        phi = entry.phi
    else:
        raise UsageError("eval needs --phi or --entry")
    m = args.m if args.m is not None else (entry.m if entry else 1)
    strip = entry.nu_validity if entry else None
    res = rmt_generalized(phi, m, args.k, args.nu, strip=strip)
    print(f"phi: {phi.formula or phi.name}")
    print(f"nu: {_num(args.nu)}  m: {m}  k: {_num(args.k)}")
    print(f"s: {_num(res.s)}")
    print(f"status: {res.status}")
    if res.value is not None:
        print(f"value: {_num(res.value)}")
    print(f"detail: {res.detail}")
    if entry is not None and res.value is not None and entry.expected_closed_form is not None:
        print(f"expected ({entry.name}): {_num(entry.expected(args.nu + 1.0 - args.k))}")
    return 0


def cmd_quad(args):
    entry = catalog_lookup(args.entry, **_params(args.param))
    tol = args.tol if args.tol is not None else (DEFAULT_OSC_TOL if entry.oscillatory else DEFAULT_TOL)
    try:
        q = mellin_quad(entry.f_direct, args.nu, args.k, tol, entry.oscillatory, entry.period_hint)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    print(f"entry: {entry.name}  nu: {_num(args.nu)}  k: {_num(args.k)}")
    print(f"value: {_num(q.value)}")
    print(f"abs_error_estimate: {_num(q.abs_error_estimate)}")
    print(f"evaluations: {q.evaluations}")
    print(f"converged: {str(q.converged).lower()}")
    print(f"method: {q.method_trace}")
    return 0 if q.converged else 1


def cmd_verify(args):
    config = Config()
    if args.config:
        config = load_config(args.config, config)
    if args.workers is not None:
        config.workers = args.workers
    if args.k is not None:
        config.k_list = tuple(float(v) for v in _split(args.k))
    names = args.entry or list(catalog_names())
    given = _params(args.param)
    params = {n: given for n in names if given and catalog_parameters(n)}
    tol = args.tol if args.tol is not None else config.tol_for
    if args.nu_grid:
        if args.m is not None:
            m_list = [int(v) for v in _split(args.m)]
        else:
            m_list = sorted({catalog_lookup(n, **params.get(n, {})).m for n in names})
        cases = expand_grid(names, args.nu_grid, m_list, config.k_list, tol, params)
    else:
        if args.tol is not None:
            config.tol_smooth = config.tol_osc = args.tol
        cases = default_campaign(config, names, params)
    records = run_verification(cases, params, workers=config.workers, cutoffs=config.cutoffs)
    return emit_report(records, args.format, args.out)


def _split(text):
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise UsageError(f"expected a comma separated list, got {text!r}") from None


def cmd_catalog(args):
    rows = [("name", "m", "phi(n)", "parity", "strip", "oscillatory", "closed form (n = nu+1-k)")]
    for name in catalog_names():
        e = catalog_lookup(name)
        lo, hi = e.nu_validity
        rows.append(
            (
                e.name,
                str(e.m),
                e.phi.formula,
                e.parity,
                f"({lo:g}, {hi:g})",
                "yes" if e.oscillatory else "no",
                e.closed_form_text,
            )
        )
    widths = [max(len(r[i]) for r in rows) for i in range(len(rows[0]))]
    for r in rows:
        print("  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip())
    return 0


def build_parser():
    p = _Parser(prog="rmtlab", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    e = sub.add_parser("eval", help="closed-form value of int_0^inf x^(nu-k) f(x) dx")
    e.add_argument("--phi", help="coefficient function phi(n), e.g. 'gamma(n+1)'")
    e.add_argument("--entry", help="catalog entry supplying phi and m")
    e.add_argument("--nu", type=float, required=True)
    e.add_argument("--m", type=int, default=None, help="power of x in the series (default 1)")
    e.add_argument("--k", type=float, default=1.0)
    e.add_argument("--param", action="append", metavar="KEY=VALUE")
    e.set_defaults(func=cmd_eval)

    q = sub.add_parser("quad", help="quadrature of a catalog entry")
    q.add_argument("--entry", required=True)
    q.add_argument("--nu", type=float, required=True)
    q.add_argument("--k", type=float, default=1.0)
    q.add_argument("--tol", type=float, default=None)
    q.add_argument("--param", action="append", metavar="KEY=VALUE")
    q.set_defaults(func=cmd_quad)

    v = sub.add_parser("verify", help="closed form against quadrature over a grid")
    who = v.add_mutually_exclusive_group()
    who.add_argument("--entry", action="append", help="entry name (repeatable)")
    who.add_argument("--all", action="store_true", help="every catalog entry (default)")
    v.add_argument("--nu-grid", metavar="A:B:STEP")
    v.add_argument("--m", help="comma separated list")
    v.add_argument("--k", help="comma separated list")
    v.add_argument("--tol", type=float, default=None)
    v.add_argument("--out", default=None)
    v.add_argument("--format", choices=("csv", "table"), default="csv")
    v.add_argument("--config", default=None)
    v.add_argument("--workers", type=int, default=None)
    v.add_argument("--param", action="append", metavar="KEY=VALUE")
    v.set_defaults(func=cmd_verify)

    c = sub.add_parser("catalog", help="list built-in entries")
    c.set_defaults(func=cmd_catalog)
    return p


def main(argv=None):
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except (UsageError, UnknownEntryError, expr.ExprSyntaxError, ValueError) as exc:
        print(f"rmtlab: error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"rmtlab: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
