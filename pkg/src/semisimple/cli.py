"""Command-line surface.

Deterministic, scriptable access to the library: identical arguments
always produce byte-identical output.  Documents go to stdout as JSON
(default) or CSV; warnings go to stderr.  Exit codes: 0 success, 1
self-test mismatch, 2 usage error, 3 domain error, 4 size cap exceeded.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import random
import sys
from fractions import Fraction
from math import comb

from mpmath import mp

from . import brauer, growth, modrep, verlinde
from .brauer import BiObject, DiagramMorphism
from .modrep import JordanModule
from .scalars import WORKING_DPS, CapExceeded, DomainError, FpScalar

REAL_DIGITS = 30  # significant digits printed for any numeric value


class UsageError(Exception):
    pass


def _fmt_real(x) -> str:
    with mp.workdps(WORKING_DPS):
        return mp.nstr(x, REAL_DIGITS)


def _parse_blocks(text: str) -> tuple[int, ...]:
    try:
        blocks = tuple(int(x) for x in text.split(",") if x.strip() != "")
    except ValueError as exc:
        raise UsageError(f"cannot parse block list {text!r}") from exc
    if not blocks:
        raise UsageError("empty block list")
    return blocks


def _parse_t(text: str, mod: int | None):
    if text == "symbolic":
        if mod is not None:
            raise UsageError("--mod cannot be combined with a symbolic parameter")
        return "symbolic"
    try:
        value = Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"cannot parse parameter value {text!r}") from exc
    if mod is not None:
        num = FpScalar(value.numerator, mod)
        den = FpScalar(value.denominator, mod)
        if den.value == 0:
            raise DomainError(f"{text!r} has no meaning modulo {mod}")
        return num / den
    if value.denominator == 1:
        return int(value)
    return value


def _entry_str(x) -> str:
    if isinstance(x, FpScalar):
        return str(x.value)
    return str(x)


def _emit(doc, rows, fmt: str) -> None:
    if fmt == "json":
        sys.stdout.write(json.dumps(doc, indent=2) + "\n")
    else:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        for row in rows:
            writer.writerow(row)
        sys.stdout.write(buf.getvalue())


def _warn_cap(name: str, value: int) -> None:
    print(
        f"warning: overriding {name} to {value}; large values need memory and time",
        file=sys.stderr,
    )


# ---------------------------------------------------------------------------
# Subcommand handlers: each returns (json_document, csv_rows)
# ---------------------------------------------------------------------------


def cmd_fusion(args):
    p = args.p
    if args.table:
        table = verlinde.fusion_table(p)
        doc = {
            "p": p,
            "table": [
                {"i": i, "j": j, "m": list(x.multiplicities), "pretty": str(x)}
                for i, j, x in table
            ],
        }
        header = ["i", "j"] + [f"m{k}" for k in range(1, p)]
        rows = [header] + [[i, j, *x.multiplicities] for i, j, x in table]
        return doc, rows
    if args.i is None or args.j is None:
        raise UsageError("fusion needs either --table or both --i and --j")
    x = verlinde.fusion(p, args.i, args.j)
    doc = {"p": p, "i": args.i, "j": args.j, "m": list(x.multiplicities), "pretty": str(x)}
    rows = [["i", "j"] + [f"m{k}" for k in range(1, p)], [args.i, args.j, *x.multiplicities]]
    return doc, rows


def _module_from_args(args) -> JordanModule:
    return JordanModule(args.p, args.e, _parse_blocks(args.blocks))


def cmd_decompose(args):
    v = _module_from_args(args)
    if args.op == "tensor":
        if args.with_blocks is None:
            raise UsageError("--op tensor needs --with-blocks")
        w = JordanModule(args.p, args.e, _parse_blocks(args.with_blocks))
        result = modrep.jordan_tensor(v, w)
    elif args.op == "sym2":
        result = modrep.sym2(v)
    elif args.op == "ext2":
        result = modrep.ext2(v)
    else:  # wedge
        if args.k is None:
            raise UsageError("--op wedge needs --k")
        result = modrep.exterior_power(v, args.k)
    doc = result.to_json()
    rows = [["p", "e", "blocks"], [result.p, result.e, " ".join(map(str, result.blocks))]]
    return doc, rows


def _plancherel_doc(p: int, d: int, cap: int) -> dict:
    return {
        "square_sum": growth.plancherel_square_sum(p, d, cap),
        "bound": _fmt_real(growth.plancherel_bound(p, d, cap)),
    }


def _improved_doc(p: int, d: int, cap: int) -> dict:
    imp = growth.improved_bound(p, d, cap)
    return {
        "M": imp.max_schur_dim,
        "max_partition": list(imp.max_partition.parts),
        "ratio": str(imp.ratio),
        "row_sum": imp.row_sum,
        "box_sum": imp.box_sum,
        "bound": _fmt_real(imp.bound),
    }


def cmd_invariants(args):
    v = _module_from_args(args)
    report = growth.invariant_report(v)
    doc = {
        "p": report.p,
        "dim": report.dim,
        "blocks": list(report.blocks),
        "m": list(report.m),
        "b": report.rate.exact_form,
        "b_numeric": _fmt_real(report.rate.numeric),
        "checks": report.checks(),
    }
    d = report.dim % report.p
    doc["bounds"] = (
        {
            "plancherel": _plancherel_doc(report.p, d, args.cap_bounds_p),
            "improved": _improved_doc(report.p, d, args.cap_bounds_p),
        }
        if args.bounds and d != 0
        else None
    )
    header = ["p", "dim", "m", "b", "b_numeric", "ii", "iii", "iv"]
    rows = [
        header,
        [
            report.p,
            report.dim,
            " ".join(map(str, report.m)),
            report.rate.exact_form,
            _fmt_real(report.rate.numeric),
            report.divisibility_mod_p,
            report.dimension_match,
            report.growth_below_dim,
        ],
    ]
    return doc, rows


def cmd_padic(args):
    p = args.p
    if (args.blocks is None) == (args.binomial is None):
        raise UsageError("padic needs exactly one of --blocks or --binomial")
    if args.blocks is not None:
        v = JordanModule(p, args.e, _parse_blocks(args.blocks))
        dims = growth.exterior_dimension_sequence(v)
        source = {"blocks": list(v.blocks)}
    else:
        d_value = args.binomial
        if d_value < 0:
            raise UsageError("--binomial takes a nonnegative integer")
        length = args.length if args.length is not None else d_value + 1
        dims = [comb(d_value, n) % p for n in range(length)]
        source = {"binomial": d_value}
    digits = growth.padic_digits(p, dims)
    doc = {
        "p": p,
        **source,
        "dims": [x.value if isinstance(x, FpScalar) else x for x in dims],
        "digits": list(digits.digits),
        "value": digits.as_integer(),
    }
    rows = [["p", "digits", "value"], [p, " ".join(map(str, digits.digits)), digits.as_integer()]]
    return doc, rows


def _objects_from_args(args) -> tuple[BiObject, BiObject]:
    source = BiObject(args.r, args.s)
    target = BiObject(args.u if args.u is not None else args.r,
                      args.v if args.v is not None else args.s)
    return source, target


def cmd_brauer(args):
    cap = args.cap_brauer_degree
    if args.brauer_op == "homdim":
        source, target = _objects_from_args(args)
        dim = brauer.schur_weyl_homdim(args.n, source, target)
        doc = {
            "n": args.n,
            "source": [source.r, source.s],
            "target": [target.r, target.s],
            "dim": dim,
        }
        return doc, [["n", "source", "target", "dim"], [args.n, str(source), str(target), dim]]
    if args.brauer_op == "gram":
        source, target = _objects_from_args(args)
        t_value = _parse_t(args.t, args.mod)
        matrix = brauer.gram_matrix(source, target, t_value, cap=cap)
        entries = [[_entry_str(x) for x in row] for row in matrix]
        return entries, entries
    if args.brauer_op == "rank":
        source, target = _objects_from_args(args)
        t_value = _parse_t(args.t, args.mod)
        if t_value == "symbolic":
            raise UsageError("rank needs an exact --t value")
        rank, quotient = brauer.negligible_rank(source, target, t_value, cap=cap)
        doc = {
            "source": [source.r, source.s],
            "target": [target.r, target.s],
            "t": args.t if args.mod is None else f"{args.t} mod {args.mod}",
            "rank": rank,
            "quotient_dim": quotient,
        }
        return doc, [["source", "target", "t", "rank"], [str(source), str(target), doc["t"], rank]]
    # compose
    try:
        f = DiagramMorphism.from_json(json.loads(args.f))
        g = DiagramMorphism.from_json(json.loads(args.g))
    except (json.JSONDecodeError, KeyError, TypeError) as exc:
        raise UsageError(f"cannot parse morphism JSON: {exc}") from exc
    result = brauer.compose(f, g)
    doc = result.to_json()
    rows = [["pairs", "coeff"]] + [
        [json.dumps(term["pairs"]), term["coeff"]] for term in doc["terms"]
    ]
    return doc, rows


def cmd_bounds(args):
    if args.bound_kind == "plancherel":
        inner = _plancherel_doc(args.p, args.d, args.cap_bounds_p)
        doc = {"p": args.p, "d": args.d, **inner}
        rows = [["p", "d", "square_sum", "bound"], [args.p, args.d, inner["square_sum"], inner["bound"]]]
        return doc, rows
    inner = _improved_doc(args.p, args.d, args.cap_bounds_p)
    doc = {"p": args.p, "d": args.d, **inner}
    rows = [
        ["p", "d", "M", "ratio", "row_sum", "box_sum", "bound"],
        [args.p, args.d, inner["M"], inner["ratio"], inner["row_sum"], inner["box_sum"], inner["bound"]],
    ]
    return doc, rows


# ---------------------------------------------------------------------------
# Self-test: the oracle-equivalence suite
# ---------------------------------------------------------------------------


def _selftest_fusion_vs_blocks() -> bool:
    from .modrep import jordan_tensor, to_verlinde

    for p in (2, 3, 5, 7, 11, 13):
        singles = {k: JordanModule(p, 1, (k,)) for k in range(1, p + 1)}
        for m in range(1, p + 1):
            for n in range(m, p + 1):
                lhs = to_verlinde(jordan_tensor(singles[m], singles[n]))
                rhs = verlinde.product(to_verlinde(singles[m]), to_verlinde(singles[n]))
                if lhs != rhs:
                    return False
                if m < p and n < p and lhs != verlinde.fusion(p, m, n):
                    return False
    return True


def _selftest_gram_vs_characters() -> bool:
    for r in range(4):
        for s in range(4 - r):
            obj = BiObject(r, s)
            for n in range(1, 6):
                rank, _ = brauer.negligible_rank(obj, obj, n)
                if rank != brauer.schur_weyl_homdim(n, obj, obj):
                    return False
    return True


def _selftest_dimension_identity() -> bool:
    from .partitions import dim_schur, dim_sym_irrep, enumerate_in_box

    for d in range(1, 5):
        for n in range(1, 11):
            total = sum(
                dim_sym_irrep(lam) * dim_schur(lam, d)
                for lam in enumerate_in_box(n, d, n)
            )
            if total != d**n:
                return False
    return True


def _selftest_recovery(seed: int) -> bool:
    rng = random.Random(seed)
    for p in (5, 7, 11, 13):
        for _ in range(20):
            blocks = []
            remaining = p - 1
            while remaining > 0 and rng.random() < 0.9:
                b = rng.randint(1, remaining)
                blocks.append(b)
                remaining -= b
            if not blocks:
                blocks = [1]
            v = JordanModule(p, 1, tuple(blocks))
            m = modrep.to_verlinde(v).multiplicities
            recovered = growth.recover_multiplicities(
                p, m, growth.square_difference_vector(v)
            )
            if recovered != m:
                return False
    return True


def cmd_selftest(args) -> int:
    checks = [
        ("fusion rule vs prime-field block decomposition (p <= 13)", _selftest_fusion_vs_blocks),
        ("gram rank vs character hom dimension (degree <= 3, n <= 5)", _selftest_gram_vs_characters),
        ("weighted dimension identity (d <= 4, N <= 10)", _selftest_dimension_identity),
        ("multiplicity recovery round trip (seeded sample)", lambda: _selftest_recovery(args.seed)),
    ]
    failed = 0
    for name, check in checks:
        ok = check()
        print(("ok   " if ok else "FAIL ") + name)
        if not ok:
            failed += 1
    return 1 if failed else 0


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="semisimple",
        description="Exact computations in diagram categories, modular Jordan blocks, and fusion rings.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_format(p):
        p.add_argument("--format", choices=("json", "csv"), default="json")

    p_fusion = sub.add_parser("fusion", help="products of simple labels in the fusion ring")
    p_fusion.add_argument("--p", type=int, required=True)
    p_fusion.add_argument("--i", type=int)
    p_fusion.add_argument("--j", type=int)
    p_fusion.add_argument("--table", action="store_true")
    add_format(p_fusion)

    p_dec = sub.add_parser("decompose", help="tensor/symmetric/exterior decompositions of Jordan modules")
    p_dec.add_argument("--p", type=int, required=True)
    p_dec.add_argument("--e", type=int, default=1)
    p_dec.add_argument("--blocks", required=True)
    p_dec.add_argument("--op", choices=("tensor", "sym2", "ext2", "wedge"), default="tensor")
    p_dec.add_argument("--with-blocks", dest="with_blocks")
    p_dec.add_argument("--k", type=int)
    p_dec.add_argument("--cap-order", dest="cap_order", type=int)
    add_format(p_dec)

    p_inv = sub.add_parser("invariants", help="growth rate and dimension checks for a module")
    p_inv.add_argument("--p", type=int, required=True)
    p_inv.add_argument("--e", type=int, default=1)
    p_inv.add_argument("--blocks", required=True)
    p_inv.add_argument("--bounds", action="store_true", help="include partition lower bounds")
    p_inv.add_argument("--cap-order", dest="cap_order", type=int)
    p_inv.add_argument("--cap-bounds-p", dest="cap_bounds_p", type=int, default=growth.BOUNDS_PRIME_CAP)
    add_format(p_inv)

    p_pad = sub.add_parser("padic", help="p-adic dimension digits from exterior powers")
    p_pad.add_argument("--p", type=int, required=True)
    p_pad.add_argument("--e", type=int, default=1)
    p_pad.add_argument("--blocks")
    p_pad.add_argument("--binomial", type=int, help="use the binomial sequence of this integer")
    p_pad.add_argument("--length", type=int, help="series length for the binomial path")
    p_pad.add_argument("--cap-order", dest="cap_order", type=int)
    add_format(p_pad)

    p_br = sub.add_parser("brauer", help="walled diagram hom spaces, Gram matrices, ranks")
    br_sub = p_br.add_subparsers(dest="brauer_op", required=True)
    for name in ("homdim", "gram", "rank"):
        q = br_sub.add_parser(name)
        q.add_argument("--r", type=int, required=True)
        q.add_argument("--s", type=int, required=True)
        q.add_argument("--u", type=int)
        q.add_argument("--v", type=int)
        if name == "homdim":
            q.add_argument("--n", type=int, required=True)
        else:
            q.add_argument("--t", required=True, help='"symbolic", an integer, or a fraction like 7/2')
            q.add_argument("--mod", type=int, help="interpret --t in F_p for this prime")
        q.add_argument("--cap-brauer-degree", dest="cap_brauer_degree", type=int, default=brauer.DEGREE_CAP)
        add_format(q)
    q = br_sub.add_parser("compose")
    q.add_argument("--f", required=True, help="morphism JSON (applied second)")
    q.add_argument("--g", required=True, help="morphism JSON (applied first)")
    q.add_argument("--cap-brauer-degree", dest="cap_brauer_degree", type=int, default=brauer.DEGREE_CAP)
    add_format(q)

    p_bnd = sub.add_parser("bounds", help="partition-enumeration lower bounds for growth rates")
    bnd_sub = p_bnd.add_subparsers(dest="bound_kind", required=True)
    for name in ("plancherel", "improved"):
        q = bnd_sub.add_parser(name)
        q.add_argument("--p", type=int, required=True)
        q.add_argument("--d", type=int, required=True)
        q.add_argument("--cap-bounds-p", dest="cap_bounds_p", type=int, default=growth.BOUNDS_PRIME_CAP)
        add_format(q)

    p_self = sub.add_parser("selftest", help="run the oracle-equivalence suite")
    p_self.add_argument("--seed", type=int, default=0, help="sampling seed (affects test sampling only)")
    add_format(p_self)

    return parser


def _apply_caps(args) -> None:
    if getattr(args, "cap_order", None) is not None:
        _warn_cap("the group-order cap", args.cap_order)
        modrep.ORDER_CAP = args.cap_order
    if getattr(args, "cap_brauer_degree", None) not in (None, brauer.DEGREE_CAP):
        _warn_cap("the hom-space degree cap", args.cap_brauer_degree)
    if getattr(args, "cap_bounds_p", None) not in (None, growth.BOUNDS_PRIME_CAP):
        _warn_cap("the bounds enumeration cap", args.cap_bounds_p)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    handlers = {
        "fusion": cmd_fusion,
        "decompose": cmd_decompose,
        "invariants": cmd_invariants,
        "padic": cmd_padic,
        "brauer": cmd_brauer,
        "bounds": cmd_bounds,
    }
    try:
        _apply_caps(args)
        if args.command == "selftest":
            return cmd_selftest(args)
        doc, rows = handlers[args.command](args)
        _emit(doc, rows, args.format)
        return 0
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except DomainError as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        return 3
    except CapExceeded as exc:
        print(f"cap exceeded: {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
