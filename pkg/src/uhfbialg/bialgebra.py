"""Kronecker coproducts, the comultiplication as a lazy component family, counit,
the coaction on the word algebra, and exhaustive axiom verifiers.

The coproduct ``phi_{b,c}: A_n(b.c) -> A_n(b) (x) A_n(c)`` splits every digit
``j`` of a matrix unit as ``j = c_i (j' - 1) + j''``. A factor over the all-ones
prefix is the scalar algebra, which makes ``phi_{1,a}(x) = 1 (x) x`` and
``phi_{a,1}(x) = x (x) 1`` special cases of the same formula.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import product
from typing import Callable, Iterator, Mapping, Sequence

import numpy as np

from .matalg import TOL_RANK, kron_all, span_rank
from .report import Report
from .sequences import FactorPair, SequencePrefix, enumerate_factorizations, seq_product
from .uhf import AlgebraElement, MultiIndex, Unit, all_units, format_unit, multiply, unit_elem

DEFAULT_UNIT_CAP = 250_000

TensorKey = tuple[Unit, ...]


def split_index(j: int, a_i: int, b_i: int) -> tuple[int, int]:
    """The unique ``(j', j'')`` in ``1..a_i x 1..b_i`` with ``j = b_i (j' - 1) + j''``."""
    if not 1 <= j <= a_i * b_i:
        raise IndexError(f"index {j} out of range 1..{a_i * b_i}")
    q, r = divmod(j - 1, b_i)
    return q + 1, r + 1


def join_index(jp: int, jpp: int, b_i: int) -> int:
    return b_i * (jp - 1) + jpp


def split_multi(J: MultiIndex, b: SequencePrefix, c: SequencePrefix) -> tuple[MultiIndex, MultiIndex]:
    left, right = [], []
    for j, bi, ci in zip(J, b, c):
        q, r = divmod(j - 1, ci)
        if q >= bi:
            raise IndexError(f"digit {j} out of range for {bi}*{ci}")
        left.append(q + 1)
        right.append(r + 1)
    return tuple(left), tuple(right)


class TensorElement:
    """Finite combination of elementary tensors ``E_{J1,K1} (x) ... (x) E_{Jr,Kr}``.

    ``bases[i]`` is the prefix of factor ``i``; factors may sit at different levels.
    Keys of ``terms`` are tuples of ``(J, K)`` pairs, one per factor.
    """

    __slots__ = ("bases", "terms")

    def __init__(self, bases: Sequence[SequencePrefix], terms: Mapping[TensorKey, complex] | None = None):
        self.bases = tuple(bases)
        clean: dict[TensorKey, complex] = {}
        for key, c in (terms or {}).items():
            if len(key) != len(self.bases):
                raise ValueError(f"term {key} does not have {len(self.bases)} factors")
            clean[key] = clean.get(key, 0) + complex(c)
        self.terms = {k: v for k, v in clean.items() if v != 0}

    @property
    def left_base(self) -> SequencePrefix:
        return self.bases[0]

    @property
    def right_base(self) -> SequencePrefix:
        return self.bases[-1]

    @classmethod
    def from_factors(cls, *xs: AlgebraElement) -> TensorElement:
        """The elementary tensor ``x_1 (x) ... (x) x_r`` expanded over units."""
        terms: dict[TensorKey, complex] = {}
        for combo in product(*(x.terms.items() for x in xs)):
            key = tuple(k for k, _ in combo)
            coef = math.prod(c for _, c in combo)
            terms[key] = terms.get(key, 0) + coef
        return cls([x.base for x in xs], terms)

    def __add__(self, other: TensorElement) -> TensorElement:
        self._same_space(other)
        terms = dict(self.terms)
        for k, c in other.terms.items():
            terms[k] = terms.get(k, 0) + c
        return TensorElement(self.bases, terms)

    def __mul__(self, s: complex) -> TensorElement:
        return TensorElement(self.bases, {k: s * c for k, c in self.terms.items()})

    __rmul__ = __mul__

    def __matmul__(self, other: TensorElement) -> TensorElement:
        """Factorwise product."""
        self._same_space(other)
        by_rows: dict[tuple[MultiIndex, ...], list[tuple[tuple[MultiIndex, ...], complex]]] = {}
        for key, c in other.terms.items():
            by_rows.setdefault(tuple(L for L, _ in key), []).append((tuple(M for _, M in key), c))
        out: dict[TensorKey, complex] = {}
        for key, a in self.terms.items():
            cols = tuple(K for _, K in key)
            for Ms, b in by_rows.get(cols, ()):
                new = tuple((J, M) for (J, _), M in zip(key, Ms))
                out[new] = out.get(new, 0) + a * b
        return TensorElement(self.bases, out)

    def adjoint(self) -> TensorElement:
        return TensorElement(
            self.bases, {tuple((K, J) for J, K in key): c.conjugate() for key, c in self.terms.items()}
        )

    def flip(self) -> TensorElement:
        """Reverse the order of the tensor factors."""
        return TensorElement(self.bases[::-1], {key[::-1]: c for key, c in self.terms.items()})

    def _same_space(self, other: TensorElement) -> None:
        if self.bases != other.bases:
            raise ValueError(f"tensor spaces differ: {self.bases} vs {other.bases}")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TensorElement):
            return NotImplemented
        return self.bases == other.bases and self.terms == other.terms

    __hash__ = None  # type: ignore[assignment]

    def max_abs_diff(self, other: TensorElement) -> float:
        self._same_space(other)
        keys = self.terms.keys() | other.terms.keys()
        return max((abs(self.terms.get(k, 0) - other.terms.get(k, 0)) for k in keys), default=0.0)

    def pad(self, factor: int, next_entry: int) -> TensorElement:
        """Apply ``x -> x (x) I`` to one factor, raising its level by one."""
        bases = list(self.bases)
        bases[factor] = bases[factor].extend(next_entry)
        terms: dict[TensorKey, complex] = {}
        for key, c in self.terms.items():
            J, K = key[factor]
            for d in range(1, next_entry + 1):
                new = key[:factor] + ((J + (d,), K + (d,)),) + key[factor + 1:]
                terms[new] = c
        return TensorElement(bases, terms)

    def to_dense(self) -> np.ndarray:
        """Dense matrix of the tensor product, factors in order."""
        sizes = [b.dim for b in self.bases]
        total = int(np.prod(sizes))
        M = np.zeros((total, total), dtype=np.complex128)
        for key, c in self.terms.items():
            M += c * kron_all(unit_elem(b, J, K).to_dense() for b, (J, K) in zip(self.bases, key))
        return M

    def format(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for key, c in sorted(self.terms.items()):
            factors = [
                format_factor(b, J, K) for b, (J, K) in zip(self.bases, key)
            ]
            coef = "" if c == 1 else f"({c.real:g}{c.imag:+g}i)*"
            parts.append(coef + " (x) ".join(factors))
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"TensorElement({self.format()})"


def format_factor(base: SequencePrefix, J: MultiIndex, K: MultiIndex) -> str:
    """``1`` for the scalar factor, ``E^(a)_{J,K}`` otherwise."""
    if base.is_unit:
        return "1"
    join = lambda t: ",".join(map(str, t))  # noqa: E731
    if len(base) == 1:
        return f"E^({base[0]})_{{{J[0]},{K[0]}}}"
    return f"E^({join(base)})_{{({join(J)}),({join(K)})}}"


def coproduct_phi(b: SequencePrefix, c: SequencePrefix, x: AlgebraElement) -> TensorElement:
    """The Kronecker coproduct ``phi_{b,c}(x)`` in ``A_n(b) (x) A_n(c)``."""
    n = x.level
    if len(b) > n:
        b = b.truncate(n)
    if len(c) > n:
        c = c.truncate(n)
    if seq_product(b, c) != x.base:
        raise ValueError(f"base mismatch: ({b}).({c}) != {x.base}")
    terms: dict[TensorKey, complex] = {}
    for (J, K), coef in x.terms.items():
        J1, J2 = split_multi(J, b, c)
        K1, K2 = split_multi(K, b, c)
        terms[((J1, K1), (J2, K2))] = coef
    return TensorElement((b, c), terms)


def apply_phi(t: TensorElement, factor: int, b: SequencePrefix, c: SequencePrefix) -> TensorElement:
    """``(id (x) ... (x) phi_{b,c} (x) ... (x) id)(t)`` acting on one factor."""
    if seq_product(b, c) != t.bases[factor]:
        raise ValueError(f"factor {factor} has base {t.bases[factor]}, not ({b}).({c})")
    bases = t.bases[:factor] + (b, c) + t.bases[factor + 1:]
    terms: dict[TensorKey, complex] = {}
    for key, coef in t.terms.items():
        J, K = key[factor]
        J1, J2 = split_multi(J, b, c)
        K1, K2 = split_multi(K, b, c)
        terms[key[:factor] + ((J1, K1), (J2, K2)) + key[factor + 1:]] = coef
    return TensorElement(bases, terms)


def contract_counit(t: TensorElement, factor: int) -> TensorElement | AlgebraElement:
    """Apply the counit to a scalar factor, i.e. drop it."""
    if not t.bases[factor].is_unit:
        raise ValueError(f"counit applies to the scalar factor, factor {factor} has base {t.bases[factor]}")
    bases = t.bases[:factor] + t.bases[factor + 1:]
    terms: dict[TensorKey, complex] = {}
    for key, c in t.terms.items():
        new = key[:factor] + key[factor + 1:]
        terms[new] = terms.get(new, 0) + c
    if len(bases) == 1:
        return AlgebraElement(bases[0], {k[0]: c for k, c in terms.items()}, check=False)
    return TensorElement(bases, terms)


def counit(x) -> complex:
    """Projection of a direct-sum element onto its scalar summand (0 if absent)."""
    from .uhf import DirectSumElement

    if isinstance(x, AlgebraElement):
        x = DirectSumElement({x.base: x})
    total = 0j
    for key, comp in x.components.items():
        if key.is_unit:
            total += sum(comp.terms.values())
    return total


@dataclass(frozen=True)
class ComponentFamily:
    """``Delta(x)`` as the lazily evaluated family ``(b, c) -> phi_{b,c}(x)``.

    Two families are equal when all their level-n components agree.
    """

    parent: SequencePrefix
    source: AlgebraElement
    resolver: Callable[[FactorPair], TensorElement]

    def component(self, pair: FactorPair) -> TensorElement:
        if pair.parent != self.parent:
            raise ValueError(f"{pair} does not factor {self.parent}")
        return self.resolver(pair)

    __getitem__ = component

    def pairs(self, uniform: bool = False) -> list[FactorPair]:
        return enumerate_factorizations(self.parent, uniform=uniform)

    def materialize(self, uniform: bool = False) -> dict[FactorPair, TensorElement]:
        return {p: self.resolver(p) for p in self.pairs(uniform)}

    def __iter__(self) -> Iterator[tuple[FactorPair, TensorElement]]:
        return iter(self.materialize().items())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ComponentFamily):
            return NotImplemented
        return self.parent == other.parent and self.materialize() == other.materialize()

    __hash__ = None  # type: ignore[assignment]


def delta(x: AlgebraElement) -> ComponentFamily:
    return ComponentFamily(x.base, x, lambda p: coproduct_phi(p.left, p.right, x))


@dataclass(frozen=True)
class InfMatrixUnit:
    """The word ``E^{(inf)}_{J,K} = s_J s_K^*`` with unbounded letters, times a coefficient."""

    J: tuple[int, ...]
    K: tuple[int, ...]
    coefficient: complex = 1.0

    def __post_init__(self) -> None:
        object.__setattr__(self, "J", tuple(int(j) for j in self.J))
        object.__setattr__(self, "K", tuple(int(k) for k in self.K))
        if len(self.J) != len(self.K):
            raise ValueError("J and K must have equal length")
        if any(j < 1 for j in self.J + self.K):
            raise ValueError("word letters must be positive")

    @property
    def n(self) -> int:
        return len(self.J)


def _split_unbounded(j: int, a_i: int) -> tuple[int, int]:
    q, r = divmod(j - 1, a_i)
    return q + 1, r + 1


def coaction_infty(u: InfMatrixUnit, a: SequencePrefix) -> tuple[InfMatrixUnit, AlgebraElement]:
    """``phi_{inf,a}(E_{J,K}) = E^{(inf)}_{J',K'} (x) E^{(a)}_{J'',K''}`` with ``j = a_i (j' - 1) + j''``.

    The coefficient rides on the word factor.
    """
    if len(a) < u.n:
        raise ValueError(f"base {a} shorter than word length {u.n}")
    a = a.truncate(u.n)
    Jp, Jpp = zip(*(_split_unbounded(j, ai) for j, ai in zip(u.J, a)))
    Kp, Kpp = zip(*(_split_unbounded(k, ai) for k, ai in zip(u.K, a)))
    return InfMatrixUnit(Jp, Kp, u.coefficient), AlgebraElement(a, {(Jpp, Kpp): 1.0}, check=False)


def _coaction_routes(J, K, a: SequencePrefix, b: SequencePrefix):
    u = InfMatrixUnit(J, K)
    # (phi_{inf,a} (x) id_b) o phi_{inf,b}
    w1, yb = coaction_infty(u, b)
    w2, ya = coaction_infty(w1, a)
    lhs = (w2, TensorElement.from_factors(ya, yb))
    # (id_inf (x) phi_{a,b}) o phi_{inf,a.b}
    n = u.n
    w, yab = coaction_infty(u, seq_product(a.truncate(n), b.truncate(n)))
    rhs = (w, coproduct_phi(a.truncate(n), b.truncate(n), yab))
    return lhs, rhs


def verify_coaction(J, K, a: SequencePrefix, b: SequencePrefix) -> Report:
    report = Report("coaction", instances=1)
    (wl, tl), (wr, tr) = _coaction_routes(J, K, a, b)
    if wl != wr or tl != tr:
        report.fail({"J": list(J), "K": list(K), "a": list(a), "b": list(b)})
    report.details = {"lhs": f"E^(inf)_{{{wl.J},{wl.K}}} (x) {tl.format()}",
                      "rhs": f"E^(inf)_{{{wr.J},{wr.K}}} (x) {tr.format()}"}
    return report


def verify_coaction_random(trials: int, rng: np.random.Generator, max_index: int = 50,
                           max_len: int = 3, max_entry: int = 4) -> Report:
    report = Report("coaction", details={"max_index": max_index, "max_len": max_len, "max_entry": max_entry})
    for _ in range(trials):
        n = int(rng.integers(1, max_len + 1))
        J = tuple(int(v) for v in rng.integers(1, max_index + 1, size=n))
        K = tuple(int(v) for v in rng.integers(1, max_index + 1, size=n))
        a = _random_base(rng, n, max_entry)
        b = _random_base(rng, n, max_entry)
        (wl, tl), (wr, tr) = _coaction_routes(J, K, a, b)
        report.instances += 1
        if wl != wr or tl != tr:
            report.fail({"J": list(J), "K": list(K), "a": list(a), "b": list(b)})
    return report


def _random_base(rng: np.random.Generator, n: int, max_entry: int) -> SequencePrefix:
    if rng.random() < 0.1:
        return SequencePrefix.ones(n)
    return SequencePrefix(tuple(int(v) for v in rng.integers(2, max_entry + 1, size=n)))


def _check_size(count: int, cap: int, what: str) -> None:
    if count > cap:
        raise ValueError(f"{what}: {count} matrix units exceeds cap {cap}; use a smaller level")


def verify_coassoc(a: SequencePrefix, b: SequencePrefix, c: SequencePrefix, level: int | None = None,
                   unit_cap: int = DEFAULT_UNIT_CAP) -> Report:
    """Check ``(id (x) phi_{b,c}) phi_{a,bc} = (phi_{a,b} (x) id) phi_{ab,c}`` on every unit."""
    if not len(a) == len(b) == len(c):
        raise ValueError("coassociativity needs prefixes of equal length")
    if level is not None:
        a, b, c = a.truncate(level), b.truncate(level), c.truncate(level)
    ab, bc = seq_product(a, b), seq_product(b, c)
    abc = seq_product(ab, c)
    _check_size(abc.dim ** 2, unit_cap, "verify_coassoc")
    report = Report("coassoc", details={"a": list(a), "b": list(b), "c": list(c), "level": len(a)})
    for J, K in all_units(abc):
        x = AlgebraElement(abc, {(J, K): 1.0}, check=False)
        lhs = apply_phi(coproduct_phi(a, bc, x), 1, b, c)
        rhs = apply_phi(coproduct_phi(ab, c, x), 0, a, b)
        report.instances += 1
        if lhs != rhs:
            report.fail(format_unit(abc, J, K))
    return report


def verify_counit(a: SequencePrefix, unit_cap: int = DEFAULT_UNIT_CAP) -> Report:
    """Check ``(eps (x) id) phi_{1,a} = id = (id (x) eps) phi_{a,1}`` on every unit."""
    one = SequencePrefix.ones(len(a))
    _check_size(a.dim ** 2, unit_cap, "verify_counit")
    report = Report("counit", details={"a": list(a)})
    for J, K in all_units(a):
        x = AlgebraElement(a, {(J, K): 1.0}, check=False)
        left = contract_counit(coproduct_phi(one, a, x), 0)
        right = contract_counit(coproduct_phi(a, one, x), 1)
        report.instances += 1
        if left != x or right != x:
            report.fail(format_unit(a, J, K))
    return report


def verify_star_isomorphism(b: SequencePrefix, c: SequencePrefix, pair_cap: int = 5000,
                            rng: np.random.Generator | None = None) -> Report:
    """``phi_{b,c}`` preserves products, adjoints and the unit, and is a bijection on units.

    Products are checked on all unit pairs when there are at most ``pair_cap`` of them,
    otherwise on ``pair_cap`` random pairs.
    """
    a = seq_product(b, c)
    report = Report("star_isomorphism", details={"b": list(b), "c": list(c)})
    units = list(all_units(a))
    images = {}
    for J, K in units:
        x = AlgebraElement(a, {(J, K): 1.0}, check=False)
        t = coproduct_phi(b, c, x)
        (key,) = t.terms
        images[(J, K)] = key
        report.instances += 1
        if coproduct_phi(b, c, x.adjoint()) != t.adjoint():
            report.fail(f"adjoint {format_unit(a, J, K)}")
    if len(set(images.values())) != len(units) or len(units) != (b.dim * c.dim) ** 2:
        report.fail("not a bijection on matrix units")
    ident = TensorElement.from_factors(AlgebraElement.identity(b), AlgebraElement.identity(c))
    if coproduct_phi(b, c, AlgebraElement.identity(a)) != ident:
        report.fail("not unital")
    if len(units) ** 2 <= pair_cap:
        pairs = ((u, v) for u in units for v in units)
    else:
        rng = rng or np.random.default_rng(0)
        idx = rng.integers(0, len(units), size=(pair_cap, 2))
        pairs = ((units[i], units[j]) for i, j in idx)
    for u, v in pairs:
        x = AlgebraElement(a, {u: 1.0}, check=False)
        y = AlgebraElement(a, {v: 1.0}, check=False)
        report.instances += 1
        if coproduct_phi(b, c, multiply(x, y)) != coproduct_phi(b, c, x) @ coproduct_phi(b, c, y):
            report.fail(f"product {format_unit(a, *u)} * {format_unit(a, *v)}")
    return report


def cancellation_spanning_set(a: SequencePrefix, b: SequencePrefix, side: str) -> list[TensorElement]:
    """``phi_{a,b}(E_{J,K}) (y (x) I)`` (side ``"X"``) or ``phi_{a,b}(E_{J,K}) (I (x) y)`` (``"Y"``)."""
    ab = seq_product(a, b)
    Ia, Ib = AlgebraElement.identity(a), AlgebraElement.identity(b)
    images = [coproduct_phi(a, b, AlgebraElement(ab, {u: 1.0}, check=False)) for u in all_units(ab)]
    if side == "X":
        multipliers = [TensorElement.from_factors(AlgebraElement(a, {u: 1.0}, check=False), Ib) for u in all_units(a)]
    elif side == "Y":
        multipliers = [TensorElement.from_factors(Ia, AlgebraElement(b, {u: 1.0}, check=False)) for u in all_units(b)]
    else:
        raise ValueError(f"side must be 'X' or 'Y', got {side!r}")
    return [img @ m for img in images for m in multipliers]


def verify_cancellation(a: SequencePrefix, b: SequencePrefix, level: int | None = None,
                        tol: float = TOL_RANK, unit_cap: int = 20_000) -> Report:
    """Finite-level cancellation law: both spanning sets have full rank ``(|a| |b|)^2``.

    At level ``>= 2`` the padding identity for levels ``(n, n - 1)`` is also checked.
    """
    if level is not None:
        a, b = a.truncate(level), b.truncate(level)
    full = (a.dim * b.dim) ** 2
    count = seq_product(a, b).dim ** 2 * max(a.dim, b.dim) ** 2
    _check_size(count, unit_cap, "verify_cancellation")
    report = Report("cancellation", full_dim=full, details={"a": list(a), "b": list(b), "level": len(a)})
    ranks = {}
    for side in ("X", "Y"):
        vectors = [t.to_dense() for t in cancellation_spanning_set(a, b, side)]
        ranks[side] = span_rank(vectors, tol)
        report.instances += len(vectors)
        if ranks[side] != full:
            report.fail(f"{side} side rank {ranks[side]} < {full}")
    report.rank = min(ranks.values())
    report.details["X_rank"], report.details["Y_rank"] = ranks["X"], ranks["Y"]
    if len(a) >= 2:
        pad = verify_padding(a, b, len(a), len(a) - 1)
        report.details["padding_instances"] = pad.instances
        for f in pad.failures:
            report.fail(f)
    return report


def verify_padding(a: SequencePrefix, b: SequencePrefix, n: int, m: int) -> Report:
    """``E^{(a)}_{J',K'} (x) E^{(b)}_{J'',K''} = sum_L E^{(a)}_{J',K'} (x) E^{(b)}_{J''L,K''L}``.

    The left side has factors at levels ``n`` and ``m``; the shorter one is
    raised to the longer level by ``x -> x (x) I`` and compared, key for key,
    with the explicit sum over the missing digits ``L``.
    """
    report = Report("padding", details={"a": list(a), "b": list(b), "n": n, "m": m})
    short = 1 if n >= m else 0
    base_a, base_b = a.truncate(n), b.truncate(m)
    full_short = (b if short == 1 else a).truncate(max(n, m))
    missing = full_short.entries[min(n, m):]
    for ua in all_units(base_a):
        for ub in all_units(base_b):
            t = TensorElement((base_a, base_b), {(ua, ub): 1.0})
            padded = t
            for e in missing:
                padded = padded.pad(short, e)
            J, K = (ub if short == 1 else ua)
            explicit = {}
            for L in product(*(range(1, e + 1) for e in missing)):
                f = (J + L, K + L)
                explicit[(ua, f) if short == 1 else (f, ub)] = 1.0
            bases = (base_a, full_short) if short == 1 else (full_short, base_b)
            report.instances += 1
            if padded != TensorElement(bases, explicit):
                report.fail(f"{ua} (x) {ub}")
    return report


@dataclass
class FlipWitness:
    pair: FactorPair
    component: TensorElement
    flipped_partner: TensorElement

    @property
    def equal(self) -> bool:
        return self.component == self.flipped_partner

    def to_dict(self) -> dict:
        return {
            "pair": [list(self.pair.left), list(self.pair.right)],
            "component": self.component.format(),
            "flipped_partner": self.flipped_partner.format(),
            "equal": self.equal,
        }


def cocommutativity_witness(x: AlgebraElement, pair: FactorPair) -> FlipWitness:
    """Compare ``Delta(x)_{(b,c)}`` with the flip of ``Delta(x)_{(c,b)}``."""
    if pair.parent != x.base:
        raise ValueError(f"{pair} does not factor {x.base}")
    comp = coproduct_phi(pair.left, pair.right, x)
    partner = coproduct_phi(pair.right, pair.left, x).flip()
    return FlipWitness(pair, comp, partner)


def verify_noncocommutative(x: AlgebraElement | None = None, pair: FactorPair | None = None) -> Report:
    """Passes when the flip of ``Delta(x)`` differs from ``Delta(x)`` at ``pair``.

    Defaults to ``x = E^{(6)}_{2,2}`` and the pair ``((2), (3))``.
    """
    if x is None:
        x = AlgebraElement(SequencePrefix((6,)), {((2,), (2,)): 1.0})
    if pair is None:
        pair = FactorPair(SequencePrefix((2,)), SequencePrefix((3,)))
    w = cocommutativity_witness(x, pair)
    report = Report("noncocommutative", instances=1, details=w.to_dict())
    if w.equal:
        report.fail("flip of the component equals the component")
    return report


def tensor_to_json(t: TensorElement) -> dict:
    return {
        "bases": [list(b) for b in t.bases],
        "terms": [
            {"factors": [{"J": list(J), "K": list(K)} for J, K in key], "re": c.real, "im": c.imag}
            for key, c in sorted(t.terms.items())
        ],
    }
