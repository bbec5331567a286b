"""Level-n truncations of UHF algebras as sparse combinations of matrix units.

An element of ``A_n(a) = M_{a_1} (x) ... (x) M_{a_n}`` is stored as a map
``(J, K) -> coefficient`` where ``J, K`` are digit tuples with ``1 <= j_i <= a_i``;
the pair stands for ``E^{(a)}_{J,K} = E_{j_1,k_1} (x) ... (x) E_{j_n,k_n}``.
Products and adjoints act on the index tuples directly, so basis-level
identities are exact; dense matrices appear only in :meth:`AlgebraElement.to_dense`.
"""

from __future__ import annotations

import re
from itertools import product
from typing import Iterator, Mapping

import numpy as np

from .matalg import MAX_DENSE_DIM, as_matrix
from .sequences import SequencePrefix

MultiIndex = tuple[int, ...]
Unit = tuple[MultiIndex, MultiIndex]


def check_multi_index(base: SequencePrefix, digits: MultiIndex) -> MultiIndex:
    digits = tuple(int(d) for d in digits)
    if len(digits) != len(base):
        raise ValueError(f"multi-index {digits} has length {len(digits)}, base {base} has {len(base)}")
    for d, a in zip(digits, base):
        if not 1 <= d <= a:
            raise IndexError(f"digit {d} out of range 1..{a} in {digits} for base {base}")
    return digits


def multi_indices(base: SequencePrefix) -> Iterator[MultiIndex]:
    """All of ``S_n(a)`` in big-endian (site 1 slowest) order."""
    return product(*(range(1, a + 1) for a in base))


def all_units(base: SequencePrefix) -> Iterator[Unit]:
    idx = list(multi_indices(base))
    return ((J, K) for J in idx for K in idx)


def encode(digits: MultiIndex, base: SequencePrefix) -> int:
    """0-based dense position ``sum_i (j_i - 1) prod_{l > i} a_l``."""
    pos = 0
    for d, a in zip(digits, base):
        pos = pos * a + (d - 1)
    return pos


def decode(pos: int, base: SequencePrefix) -> MultiIndex:
    digits = []
    for a in reversed(base.entries):
        pos, r = divmod(pos, a)
        digits.append(r + 1)
    return tuple(reversed(digits))


class AlgebraElement:
    """A finite combination ``sum c_{J,K} E^{(a)}_{J,K}`` at level ``len(base)``.

    Treat instances as immutable. Exact zero coefficients are dropped.
    """

    __slots__ = ("base", "terms")

    def __init__(self, base: SequencePrefix, terms: Mapping[Unit, complex] | None = None, check: bool = True):
        self.base = base
        clean: dict[Unit, complex] = {}
        for (J, K), c in (terms or {}).items():
            if check:
                J, K = check_multi_index(base, J), check_multi_index(base, K)
            c = complex(c)
            if c != 0:
                clean[(J, K)] = clean.get((J, K), 0) + c
        self.terms = {k: v for k, v in clean.items() if v != 0}

    @property
    def level(self) -> int:
        return len(self.base)

    # constructors

    @classmethod
    def zero(cls, base: SequencePrefix) -> AlgebraElement:
        return cls(base)

    @classmethod
    def identity(cls, base: SequencePrefix) -> AlgebraElement:
        return cls(base, {(J, J): 1.0 for J in multi_indices(base)}, check=False)

    @classmethod
    def scalar(cls, value: complex, level: int = 1) -> AlgebraElement:
        """An element of the one-dimensional algebra over the all-ones prefix."""
        one = (1,) * level
        return cls(SequencePrefix.ones(level), {(one, one): value}, check=False)

    # algebra

    def _same_algebra(self, other: AlgebraElement) -> None:
        if self.base != other.base:
            raise ValueError(f"base mismatch: {self.base} vs {other.base}")

    def __add__(self, other: AlgebraElement) -> AlgebraElement:
        self._same_algebra(other)
        terms = dict(self.terms)
        for k, c in other.terms.items():
            terms[k] = terms.get(k, 0) + c
        return AlgebraElement(self.base, terms, check=False)

    def __neg__(self) -> AlgebraElement:
        return AlgebraElement(self.base, {k: -c for k, c in self.terms.items()}, check=False)

    def __sub__(self, other: AlgebraElement) -> AlgebraElement:
        return self + (-other)

    def __mul__(self, s: complex) -> AlgebraElement:
        return AlgebraElement(self.base, {k: s * c for k, c in self.terms.items()}, check=False)

    __rmul__ = __mul__

    def __matmul__(self, other: AlgebraElement) -> AlgebraElement:
        return multiply(self, other)

    def adjoint(self) -> AlgebraElement:
        return AlgebraElement(
            self.base, {(K, J): c.conjugate() for (J, K), c in self.terms.items()}, check=False
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self.base == other.base and self.terms == other.terms

    __hash__ = None  # type: ignore[assignment]

    def max_abs_diff(self, other: AlgebraElement) -> float:
        self._same_algebra(other)
        keys = self.terms.keys() | other.terms.keys()
        return max((abs(self.terms.get(k, 0) - other.terms.get(k, 0)) for k in keys), default=0.0)

    def __repr__(self) -> str:
        if not self.terms:
            return f"AlgebraElement(base=({self.base}), 0)"
        parts = [f"{_fmt_coef(c)}{format_unit(self.base, J, K)}" for (J, K), c in sorted(self.terms.items())]
        return " + ".join(parts)

    # dense codec

    def to_dense(self) -> np.ndarray:
        N = self.base.dim
        if N > MAX_DENSE_DIM:
            raise OverflowError(f"dense size {N} exceeds cap")
        M = np.zeros((N, N), dtype=np.complex128)
        for (J, K), c in self.terms.items():
            M[encode(J, self.base), encode(K, self.base)] += c
        return M

    @classmethod
    def from_dense(cls, base: SequencePrefix, M, level: int | None = None) -> AlgebraElement:
        if level is not None:
            base = base.truncate(level)
        M = as_matrix(M)
        N = base.dim
        if M.shape != (N, N):
            raise ValueError(f"matrix of shape {M.shape} does not match base {base} (size {N})")
        rows, cols = np.nonzero(M)
        terms = {(decode(int(r), base), decode(int(c), base)): M[r, c] for r, c in zip(rows, cols)}
        return cls(base, terms, check=False)


def _fmt_coef(c: complex) -> str:
    if c == 1:
        return ""
    if c.imag == 0:
        return f"{c.real:g}*"
    return f"({c.real:g}{c.imag:+g}i)*"


def unit_elem(base: SequencePrefix, J: MultiIndex, K: MultiIndex) -> AlgebraElement:
    """The matrix unit ``E^{(a)}_{J,K}``; the base is truncated to ``len(J)``."""
    if len(J) != len(K):
        raise ValueError("J and K must have equal length")
    if len(base) != len(J):
        base = base.truncate(len(J))
    return AlgebraElement(base, {(tuple(J), tuple(K)): 1.0})


def multiply(x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
    """Bilinear extension of ``E_{J,K} E_{L,M} = delta_{K,L} E_{J,M}``."""
    x._same_algebra(y)
    by_row: dict[MultiIndex, list[tuple[MultiIndex, complex]]] = {}
    for (L, M), c in y.terms.items():
        by_row.setdefault(L, []).append((M, c))
    out: dict[Unit, complex] = {}
    for (J, K), a in x.terms.items():
        for M, b in by_row.get(K, ()):
            out[(J, M)] = out.get((J, M), 0) + a * b
    return AlgebraElement(x.base, out, check=False)


def embed_level(x: AlgebraElement, next_entry: int) -> AlgebraElement:
    """``x -> x (x) I`` into the level ``n + 1`` algebra with new site size ``next_entry``."""
    if next_entry is None or next_entry < 1:
        raise ValueError("embed_level needs the next base entry")
    base = x.base.extend(next_entry)
    terms = {
        (J + (d,), K + (d,)): c
        for (J, K), c in x.terms.items()
        for d in range(1, next_entry + 1)
    }
    return AlgebraElement(base, terms, check=False)


def site_operator(base: SequencePrefix, site: int, A) -> AlgebraElement:
    """``I (x) ... (x) A (x) ... (x) I`` with the dense matrix ``A`` at 0-based ``site``."""
    A = as_matrix(A)
    a = base[site]
    if A.shape != (a, a):
        raise ValueError(f"site {site} has size {a}, got matrix {A.shape}")
    rest = [range(1, e + 1) for e in base]
    terms: dict[Unit, complex] = {}
    rows, cols = np.nonzero(A)
    others = list(product(*(rest[:site] + rest[site + 1:])))
    for r, c in zip(rows, cols):
        for o in others:
            J = o[:site] + (int(r) + 1,) + o[site:]
            K = o[:site] + (int(c) + 1,) + o[site:]
            terms[(J, K)] = A[r, c]
    return AlgebraElement(base, terms, check=False)


class DirectSumElement:
    """Finitely supported element of the direct sum over all bases.

    Components are keyed by their base prefix; the all-ones key holds a scalar.
    """

    __slots__ = ("components",)

    def __init__(self, components: Mapping[SequencePrefix, AlgebraElement] | None = None):
        comps = {}
        for key, x in (components or {}).items():
            if x.base != key:
                raise ValueError(f"component keyed {key} has base {x.base}")
            if x.terms:
                comps[key] = x
        self.components = comps

    def __getitem__(self, key: SequencePrefix) -> AlgebraElement:
        return self.components.get(key, AlgebraElement.zero(key))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, DirectSumElement):
            return NotImplemented
        return self.components == other.components

    __hash__ = None  # type: ignore[assignment]


# text / json forms

_UNIT_RE = re.compile(r"^\s*E\[\s*a=([\d,\s]+);\s*J=([\d,\s]+);\s*K=([\d,\s]+)\]\s*$")


def format_unit(base: SequencePrefix, J: MultiIndex, K: MultiIndex) -> str:
    join = lambda t: ",".join(map(str, t))  # noqa: E731
    return f"E[a={join(base)}; J={join(J)}; K={join(K)}]"


def parse_unit(text: str) -> AlgebraElement:
    m = _UNIT_RE.match(text)
    if not m:
        raise ValueError(f"bad unit {text!r}; expected 'E[a=..; J=..; K=..]'")
    ints = lambda s: tuple(int(t) for t in s.replace(" ", "").split(","))  # noqa: E731
    base = SequencePrefix(ints(m.group(1)), allow_mixed=True)
    return unit_elem(base, ints(m.group(2)), ints(m.group(3)))


def element_to_json(x: AlgebraElement) -> dict:
    return {
        "base": list(x.base),
        "level": x.level,
        "terms": [
            {"J": list(J), "K": list(K), "re": c.real, "im": c.imag}
            for (J, K), c in sorted(x.terms.items())
        ],
    }


def element_from_json(obj: dict) -> AlgebraElement:
    base = SequencePrefix(tuple(obj["base"]), allow_mixed=True)
    level = int(obj.get("level", len(base)))
    if level != len(base):
        base = base.truncate(level)
    terms = {}
    for t in obj["terms"]:
        key = (tuple(t["J"]), tuple(t["K"]))
        terms[key] = terms.get(key, 0) + complex(t.get("re", 0.0), t.get("im", 0.0))
    return AlgebraElement(base, terms)
