"""Command-line interface: ``uhfbialg <subcommand> [options]``.

Exit codes: 0 on success or passing verification, 1 on a verification
failure, 2 on a usage or parse error.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from typing import Any, Sequence

import numpy as np

from .bialgebra import coproduct_phi, delta, tensor_to_json
from .matalg import matrix_from_json, matrix_to_json
from .repstate import (
    AtomClass,
    ProductState,
    atom_product,
    atom_equiv,
    atom_state,
    boxtimes_states,
    commutant_dimension,
    gns,
    gns_report,
    rep_tensor,
    state_tensor,
)
from .sequences import EvPeriodicSeq, FactorPair, SequencePrefix, enumerate_factorizations, seq_product
from .uhf import AlgebraElement, element_to_json, embed_level
from .verify import SUITES, RunConfig, run_suites, suite_coassoc

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class ParseError(UsageError):
    def __init__(self, text: str, pos: int, msg: str):
        super().__init__(f"{msg} at position {pos} in {text!r}\n  {text}\n  {' ' * pos}^")
        self.text, self.pos = text, pos


# element grammar

_INT_LIST = re.compile(r"\s*\d+(\s*,\s*\d+)*\s*")


def _int_list(text: str, start: int, end: int, full: str) -> tuple[int, ...]:
    chunk = full[start:end]
    if not _INT_LIST.fullmatch(chunk):
        raise ParseError(full, start, "expected comma-separated positive integers")
    return tuple(int(t) for t in chunk.split(","))


def parse_unit_spec(text: str, offset: int = 0, full: str | None = None) -> tuple[str, Any]:
    """Parse ``E:j,k``, ``E;J=..;K=..`` or ``I``.

    Returns ``("unit", (J, K))`` or ``("identity", None)``.
    """
    full = text if full is None else full
    s = text.strip()
    lead = offset + (len(text) - len(text.lstrip()))
    if s == "I":
        return "identity", None
    if s.startswith("E:"):
        digits = _int_list(s, lead + 2, lead + len(s), full)
        if len(digits) != 2:
            raise ParseError(full, lead + 2, "level-1 unit needs exactly two indices 'E:j,k'")
        return "unit", ((digits[0],), (digits[1],))
    m = re.fullmatch(r"E;\s*J=([^;]*);\s*K=(.*)", s)
    if m:
        J = _int_list(s, lead + m.start(1), lead + m.end(1), full)
        K = _int_list(s, lead + m.start(2), lead + m.end(2), full)
        if len(J) != len(K):
            raise ParseError(full, lead + m.start(2), f"J has length {len(J)} but K has length {len(K)}")
        return "unit", (J, K)
    raise ParseError(full, lead, "expected 'E:j,k', 'E;J=..;K=..' or 'I'")


def parse_complex(text: str, offset: int = 0, full: str | None = None) -> complex:
    full = text if full is None else full
    s = text.strip().replace(" ", "")
    if not s:
        raise ParseError(full, offset, "empty coefficient")
    try:
        return complex(s.replace("i", "j"))
    except ValueError:
        raise ParseError(full, offset, "bad complex coefficient (use 're+imi')") from None


def _realize(kind: str, payload, base: SequencePrefix, spec: str) -> AlgebraElement:
    if kind == "identity":
        return AlgebraElement.identity(base)
    J, K = payload
    if len(J) > len(base):
        raise UsageError(f"{spec!r} has level {len(J)} but base {base} only has {len(base)} entries")
    b = base.truncate(len(J))
    try:
        return AlgebraElement(b, {(J, K): 1.0})
    except (IndexError, ValueError) as exc:
        raise UsageError(f"{spec!r}: {exc}") from None


def parse_element(base: SequencePrefix, elem: str | None, terms: Sequence[str] = (),
                  level: int | None = None) -> AlgebraElement:
    """Build an element from ``--elem`` and repeatable ``--term COEF*SPEC`` flags.

    All pieces are raised to a common level: ``level`` if given, else the
    largest level among the pieces.
    """
    pieces: list[tuple[complex, str, Any, str]] = []
    if elem is not None:
        kind, payload = parse_unit_spec(elem)
        pieces.append((1.0, kind, payload, elem))
    for t in terms:
        if "*" not in t:
            raise ParseError(t, 0, "term must look like 'COEF*SPEC'")
        star = t.index("*")
        c = parse_complex(t[:star], 0, t)
        kind, payload = parse_unit_spec(t[star + 1:], star + 1, t)
        pieces.append((c, kind, payload, t))
    if not pieces:
        raise UsageError("give --elem or at least one --term")

    def piece_level(kind, payload):
        return len(payload[0]) if kind == "unit" else None

    levels = [piece_level(k, p) for _, k, p, _ in pieces if piece_level(k, p) is not None]
    target = level if level is not None else max(levels, default=len(base))
    if target > len(base):
        raise UsageError(f"level {target} exceeds base length {len(base)}")
    base_t = base.truncate(target)
    total = AlgebraElement.zero(base_t)
    for c, kind, payload, spec in pieces:
        if kind == "identity":
            x = AlgebraElement.identity(base_t)
        else:
            if len(payload[0]) > target:
                raise UsageError(f"{spec!r} has level {len(payload[0])} above requested level {target}")
            x = _realize(kind, payload, base, spec)
            while x.level < target:
                x = embed_level(x, base[x.level])
        total = total + c * x
    return total


def parse_base(text: str, mixed: bool = True) -> SequencePrefix:
    try:
        return SequencePrefix.parse(text, allow_mixed=mixed)
    except ValueError as exc:
        raise UsageError(f"bad base {text!r}: {exc}") from None


def parse_pair(text: str) -> FactorPair:
    if ":" not in text:
        raise ParseError(text, 0, "pair must look like 'B:C', e.g. '2:3' or '2,1:3,6'")
    left, right = text.split(":", 1)
    return FactorPair(parse_base(left), parse_base(right))


def parse_seq(text: str) -> EvPeriodicSeq:
    try:
        return EvPeriodicSeq.parse(text)
    except ValueError as exc:
        raise UsageError(f"bad sequence {text!r}: {exc}") from None


def parse_state(spec: str, level: int | None) -> ProductState:
    """State specs.

    ``tracial:2,3``, ``diag:0.5,0.5;1,0``, ``atom:N:J`` (needs a level),
    or ``file:PATH`` holding a JSON list of matrices.
    """
    kind, _, rest = spec.partition(":")
    try:
        if kind == "tracial":
            return ProductState([np.eye(n) / n for n in parse_base(rest)])
        if kind == "diag":
            return ProductState([np.diag([float(v) for v in site.split(",")]) for site in rest.split(";")])
        if kind == "atom":
            n, _, J = rest.partition(":")
            if level is None:
                raise UsageError("atom states need --level")
            return atom_state(AtomClass(int(n), parse_seq(J)), level)
        if kind == "file":
            with open(rest) as fh:
                return ProductState([matrix_from_json(m) for m in json.load(fh)])
    except (ValueError, KeyError, OSError) as exc:
        raise UsageError(f"bad state {spec!r}: {exc}") from None
    raise UsageError(f"unknown state kind {kind!r}; use tracial:, diag:, atom: or file:")


# output


def _jsonable(obj):
    if isinstance(obj, complex):
        return {"re": obj.real, "im": obj.imag}
    if isinstance(obj, np.ndarray):
        return matrix_to_json(obj)
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.floating,)):
        return float(obj)
    if isinstance(obj, (SequencePrefix, EvPeriodicSeq, AtomClass, FactorPair)):
        return str(obj)
    raise TypeError(f"not JSON serializable: {type(obj).__name__}")


def emit(args, payload: dict, text: str) -> None:
    out = json.dumps(payload, indent=2, default=_jsonable, sort_keys=True) if args.json else text
    print(out)
    if getattr(args, "out", None):
        with open(args.out, "w") as fh:
            fh.write(json.dumps(payload, indent=2, default=_jsonable, sort_keys=True) + "\n")


def _fmt_complex(z: complex) -> str:
    if abs(z.imag) < 1e-15:
        return f"{z.real:.12g}"
    return f"{z.real:.12g}{z.imag:+.12g}i"


# commands


def cmd_delta(args) -> int:
    base = parse_base(args.a)
    elem = args.elem if (args.elem or args.term) else "E:2,2"
    x = parse_element(base, elem, args.term or [], args.level)
    fam = delta(x)
    pairs = [parse_pair(p) for p in args.pair] if args.pair else fam.pairs(uniform=args.uniform)
    rows = []
    for p in pairs:
        if len(p.left) != x.level:
            p = FactorPair(p.left.truncate(x.level), p.right.truncate(x.level))
        try:
            comp = fam.component(p)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        rows.append((p, comp))
    width = max(len(str(p)) for p, _ in rows)
    lines = [f"Delta({x!r}) on base ({x.base}), {len(rows)} components:"]
    lines += [f"  {str(p):<{width}}  {comp.format()}" for p, comp in rows]
    payload = {"element": element_to_json(x), "components": [
        {"b": list(p.left), "c": list(p.right), "value": tensor_to_json(comp), "text": comp.format()}
        for p, comp in rows]}
    emit(args, payload, "\n".join(lines))
    return EXIT_OK


def cmd_coproduct(args) -> int:
    b, c = parse_base(args.b), parse_base(args.c)
    if len(b) != len(c):
        raise UsageError("--b and --c must have the same length")
    a = seq_product(b, c)
    x = parse_element(a, args.elem, args.term or [], args.level)
    t = coproduct_phi(b, c, x)
    emit(args, {"b": list(b), "c": list(c), "element": element_to_json(x), "value": tensor_to_json(t)},
         f"phi_{{({b.truncate(x.level)}),({c.truncate(x.level)})}}({x!r}) = {t.format()}")
    return EXIT_OK


def cmd_state_eval(args) -> int:
    omega = parse_state(args.state, args.level)
    if args.state2:
        R = parse_state(args.state2, args.level)
        left = state_tensor(omega, R)
        right = boxtimes_states(omega, R)
        x = parse_element(right.base, args.elem, args.term or [], args.level)
        v1, v2 = left(x), right(x)
        payload = {"tensor_state": v1, "boxtimes_state": v2, "difference": abs(v1 - v2)}
        text = (f"(omega_T (x) omega_R)(x) = {_fmt_complex(v1)}\n"
                f"omega_(T boxtimes R)(x)    = {_fmt_complex(v2)}\n"
                f"|difference|               = {abs(v1 - v2):.3e}")
    else:
        x = parse_element(omega.base, args.elem, args.term or [], args.level)
        v = omega(x)
        payload = {"value": v}
        text = f"omega({x!r}) = {_fmt_complex(v)}"
    emit(args, payload, text)
    return EXIT_OK


def cmd_gns(args, cfg: RunConfig) -> int:
    omega = parse_state(args.state, args.level)
    level = min(args.level or omega.level, cfg.level_cap)
    if omega.base.truncate(level).dim ** 2 > cfg.dim_cap:
        raise UsageError(f"algebra dimension {omega.base.truncate(level).dim ** 2} exceeds --dim-cap {cfg.dim_cap}")
    rep = gns_report(omega, level, cfg.tolerance)
    rep["level"] = level
    text = "\n".join(f"{k}: {v}" for k, v in rep.items())
    emit(args, rep, text)
    return EXIT_OK


def cmd_atom(args, cfg: RunConfig) -> int:
    A = AtomClass(args.n, parse_seq(args.J))
    if args.action == "info" or args.action is None:
        level = min(args.level or 1, cfg.level_cap)
        g = gns(atom_state(A, level), tol=cfg.tolerance)
        cd = commutant_dimension(g, cfg.tolerance)
        emit(args, {"class": str(A), "level": level, "gns_dim": g.dim, "commutant_dim": cd},
             f"{A}: GNS dim {g.dim} at level {level}, commutant dim {cd}")
        return EXIT_OK
    if args.K is None:
        raise UsageError(f"atom {args.action} needs --K")
    K = parse_seq(args.K)
    if args.action == "equiv":
        B = AtomClass(args.n, K) if args.m is None else AtomClass(args.m, K)
        verdict = atom_equiv(A, B)
        emit(args, {"left": str(A), "right": str(B), "equivalent": verdict}, "true" if verdict else "false")
        return EXIT_OK
    if args.m is None:
        raise UsageError("atom star needs --m")
    B = AtomClass(args.m, K)
    C = atom_product(A, B)
    payload: dict[str, Any] = {"left": str(A), "right": str(B), "product": str(C)}
    text = str(C)
    if args.check_irreducible:
        level = min(args.level or 1, cfg.level_cap, 2)
        pi = rep_tensor(gns(atom_state(A, level), tol=cfg.tolerance), gns(atom_state(B, level), tol=cfg.tolerance))
        cd = commutant_dimension(pi, cfg.tolerance)
        payload.update(level=level, commutant_dim=cd, irreducible=cd == 1)
        text += f"\ncommutant dim of the tensor representation at level {level}: {cd}"
    emit(args, payload, text)
    return EXIT_OK


def cmd_factorizations(args) -> int:
    a = parse_base(args.a, mixed=False)
    pairs = enumerate_factorizations(a, uniform=args.uniform)
    emit(args, {"a": list(a), "count": len(pairs), "pairs": [[list(p.left), list(p.right)] for p in pairs]},
         "\n".join([f"{len(pairs)} factorizations of ({a}):"] + [f"  {p}" for p in pairs]))
    return EXIT_OK


def cmd_verify(args, cfg: RunConfig) -> int:
    names = args.suite or ["all"]
    if any(v is not None for v in (args.a, args.b, args.c)):
        if names != ["coassoc"] or None in (args.a, args.b, args.c):
            raise UsageError("--a/--b/--c apply to 'verify coassoc' and need all three")
        reports = [suite_coassoc(cfg, parse_base(args.a), parse_base(args.b), parse_base(args.c), args.level)]
    else:
        try:
            reports = run_suites(names, cfg)
        except KeyError as exc:
            raise UsageError(f"{exc.args[0]}; choose from: all, {', '.join(sorted(SUITES))}") from None
    ok = all(r.passed for r in reports)
    payload = {"passed": ok, "suites": len(reports), "reports": [r.to_dict() for r in reports],
               "config": {"tolerance": cfg.tolerance, "level_cap": cfg.level_cap,
                          "dim_cap": cfg.dim_cap, "seed": cfg.seed}}
    lines = [r.summary() for r in reports]
    for r in reports:
        if r.check == "noncocommutative":
            d = r.details
            lines.append(f"  witness at {d['pair']}: {d['component']}  vs flipped  {d['flipped_partner']}")
        for f in r.failures:
            lines.append(f"  {r.check}: {f}")
    lines.append(f"{len(reports)} suites, {'all passed' if ok else 'FAILURES'}")
    emit(args, payload, "\n".join(lines))
    return EXIT_OK if ok else EXIT_FAIL


# parser


def _global_flags(p: argparse.ArgumentParser, suppress: bool) -> None:
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    p.add_argument("--tol", type=float, default=d(1e-10), help="numerical tolerance in (0, 1e-4)")
    p.add_argument("--level-cap", type=int, default=d(3))
    p.add_argument("--dim-cap", type=int, default=d(4096))
    p.add_argument("--json", action="store_true", default=d(False), help="emit JSON")
    p.add_argument("--seed", type=int, default=d(0))
    p.add_argument("--out", metavar="FILE", default=d(None), help="also write the JSON report to FILE")


def _elem_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--elem", help="'E:j,k', 'E;J=j1,j2;K=k1,k2' or 'I'")
    p.add_argument("--term", action="append", help="'COEF*SPEC' with COEF like 2, -1.5 or 1+2i; repeatable")
    p.add_argument("--level", type=int)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="uhfbialg", description="Kronecker-coproduct bialgebra toolkit for UHF algebras")
    _global_flags(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, **kw):
        p = sub.add_parser(name, **kw)
        _global_flags(p, suppress=True)
        return p

    p = add("delta", help="components of Delta(x) over factorizations of the base")
    p.add_argument("--a", default="6", help="base prefix, e.g. 6 or 2,3 (default 6; the element defaults to E:2,2)")
    _elem_flags(p)
    p.add_argument("--pair", action="append", help="only this factorization 'B:C'; repeatable")
    p.add_argument("--uniform", action="store_true", help="only factorizations with non-mixed parts")

    p = add("coproduct", help="phi_{b,c}(x) for x in A(b.c)")
    p.add_argument("--b", required=True)
    p.add_argument("--c", required=True)
    _elem_flags(p)

    p = add("state-eval", help="evaluate a product state, or compare the two state tensor routes")
    p.add_argument("--state", required=True, help="tracial:2,3 | diag:p1,..;q1,.. | atom:N:J | file:PATH")
    p.add_argument("--state2", help="second state; prints both sides of the tensor formula")
    _elem_flags(p)

    p = add("gns", help="GNS data of a product state")
    p.add_argument("--state", required=True)
    p.add_argument("--level", type=int)

    p = add("atom", help="atom classes P_n[J]: star products, equivalence, irreducibility")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--J", required=True, help="eventually periodic sequence 'pre|period'")
    p.add_argument("action", nargs="?", choices=("star", "equiv", "info"), default="info")
    p.add_argument("--m", type=int)
    p.add_argument("--K")
    p.add_argument("--level", type=int)
    p.add_argument("--check-irreducible", action="store_true")

    p = add("factorizations", help="list factorizations (b, c) with b.c = a")
    p.add_argument("--a", required=True)
    p.add_argument("--uniform", action="store_true")

    p = add("verify", help="run verification suites")
    p.add_argument("suite", nargs="*", help=f"all or any of: {', '.join(sorted(SUITES))}")
    p.add_argument("--a")
    p.add_argument("--b")
    p.add_argument("--c")
    p.add_argument("--level", type=int)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        cfg = RunConfig(tolerance=args.tol, level_cap=args.level_cap, dim_cap=args.dim_cap,
                        output="json" if args.json else "text", seed=args.seed)
        cmd = args.command
        if cmd == "delta":
            return cmd_delta(args)
        if cmd == "coproduct":
            return cmd_coproduct(args)
        if cmd == "state-eval":
            return cmd_state_eval(args)
        if cmd == "gns":
            return cmd_gns(args, cfg)
        if cmd == "atom":
            return cmd_atom(args, cfg)
        if cmd == "factorizations":
            return cmd_factorizations(args)
        return cmd_verify(args, cfg)
    except (UsageError, ValueError, IndexError, OverflowError) as exc:
        print(f"uhfbialg: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
