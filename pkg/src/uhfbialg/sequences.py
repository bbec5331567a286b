"""Index semigroup: truncated base sequences and eventually periodic symbol sequences.

A :class:`SequencePrefix` is the first ``n`` entries of a base sequence
``a = (a_1, a_2, ...)`` with every entry ``>= 2``, or of the unit ``(1, 1, ...)``.
Under componentwise multiplication these form a commutative monoid.

An :class:`EvPeriodicSeq` is an infinite sequence ``pre + per + per + ...`` kept in
canonical form, so ``==`` decides equality of the infinite sequences.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import product
from typing import Sequence

UINT64_MAX = 2**64 - 1


def divisors(n: int) -> list[int]:
    """Ascending divisors of a positive integer."""
    if n < 1:
        raise ValueError(f"divisors: expected a positive integer, got {n}")
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
        d += 1
    return small + large[::-1]


@dataclass(frozen=True)
class SequencePrefix:
    """Truncation ``(a_1, ..., a_n)`` of a base sequence.

    Mixed prefixes such as ``(1, 2)`` are rejected unless ``allow_mixed`` is set;
    they only appear as components of factorization pairs, where a size-1 site
    is the scalar algebra.
    """

    entries: tuple[int, ...]
    allow_mixed: bool = field(default=False, compare=False, repr=False)

    def __post_init__(self) -> None:
        entries = tuple(int(e) for e in self.entries)
        object.__setattr__(self, "entries", entries)
        if not entries:
            raise ValueError("SequencePrefix needs at least one entry")
        if any(e < 1 for e in entries):
            raise ValueError(f"SequencePrefix entries must be positive: {entries}")
        if not self.allow_mixed and 1 in entries and any(e >= 2 for e in entries):
            raise ValueError(
                f"mixed prefix {entries}: a base is all-ones or has every entry >= 2"
            )
        if math.prod(entries) > UINT64_MAX:
            raise OverflowError(f"dimension of {entries} exceeds 64 bits")

    @classmethod
    def ones(cls, n: int) -> SequencePrefix:
        return cls((1,) * n)

    @classmethod
    def constant(cls, value: int, n: int) -> SequencePrefix:
        return cls((value,) * n)

    @classmethod
    def parse(cls, text: str, allow_mixed: bool = False) -> SequencePrefix:
        """Parse the text form ``"2,3,2"``."""
        try:
            entries = tuple(int(tok) for tok in text.split(","))
        except ValueError as exc:
            raise ValueError(f"bad prefix {text!r}: {exc}") from None
        return cls(entries, allow_mixed=allow_mixed)

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __getitem__(self, i: int) -> int:
        return self.entries[i]

    def __str__(self) -> str:
        return ",".join(map(str, self.entries))

    @property
    def level(self) -> int:
        return len(self.entries)

    @property
    def dim(self) -> int:
        """Matrix size ``a_1 * ... * a_n`` of the level-n algebra."""
        return math.prod(self.entries)

    @property
    def is_unit(self) -> bool:
        return all(e == 1 for e in self.entries)

    @property
    def is_mixed(self) -> bool:
        return 1 in self.entries and not self.is_unit

    def truncate(self, n: int) -> SequencePrefix:
        if not 1 <= n <= len(self.entries):
            raise ValueError(f"cannot truncate length-{len(self)} prefix to {n}")
        return SequencePrefix(self.entries[:n], allow_mixed=self.allow_mixed)

    def extend(self, entry: int) -> SequencePrefix:
        return SequencePrefix(self.entries + (entry,), allow_mixed=self.allow_mixed)


@dataclass(frozen=True)
class FactorPair:
    """A pair ``(b, c)`` of prefixes with ``b . c`` equal to some parent prefix."""

    left: SequencePrefix
    right: SequencePrefix

    def __post_init__(self) -> None:
        if len(self.left) != len(self.right):
            raise ValueError("FactorPair components must have equal length")

    @property
    def parent(self) -> SequencePrefix:
        return seq_product(self.left, self.right)

    def flipped(self) -> FactorPair:
        return FactorPair(self.right, self.left)

    def __str__(self) -> str:
        return f"({self.left})x({self.right})"


def seq_product(a: SequencePrefix, b: SequencePrefix) -> SequencePrefix:
    """Componentwise product ``(a_1 b_1, ..., a_n b_n)``."""
    if len(a) != len(b):
        raise ValueError(f"length mismatch: {len(a)} vs {len(b)}")
    entries = tuple(x * y for x, y in zip(a, b))
    return SequencePrefix(entries, allow_mixed=a.allow_mixed or b.allow_mixed)


def enumerate_factorizations(a: SequencePrefix, uniform: bool = False) -> list[FactorPair]:
    """All level-n pairs ``(b, c)`` with ``b_i c_i = a_i`` for every site.

    Sites are factored independently, so there are ``prod d(a_i)`` pairs, ordered
    lexicographically by the left component. Distinct infinite factorizations
    with the same first ``n`` entries collapse to one pair here.

    With ``uniform=True`` only pairs whose components are themselves bases
    (all-ones or every entry ``>= 2``) are kept.
    """
    per_site = [divisors(e) for e in a]
    pairs = []
    for left in product(*per_site):
        right = tuple(e // d for e, d in zip(a, left))
        b = SequencePrefix(left, allow_mixed=True)
        c = SequencePrefix(right, allow_mixed=True)
        if uniform and (b.is_mixed or c.is_mixed):
            continue
        pairs.append(FactorPair(b, c))
    return pairs


def _minimal_period(period: tuple[int, ...]) -> tuple[int, ...]:
    p = len(period)
    for q in divisors(p):
        if all(period[i] == period[i % q] for i in range(p)):
            return period[:q]
    return period


@dataclass(frozen=True)
class EvPeriodicSeq:
    """The infinite sequence ``preperiod + period + period + ...``.

    Stored canonically (shortest period, then shortest preperiod), so two
    instances compare equal iff they denote the same sequence.
    """

    preperiod: tuple[int, ...]
    period: tuple[int, ...]

    def __post_init__(self) -> None:
        pre = tuple(int(e) for e in self.preperiod)
        per = tuple(int(e) for e in self.period)
        if not per:
            raise ValueError("period must be nonempty")
        if any(e < 1 for e in pre + per):
            raise ValueError("sequence entries must be positive")
        per = _minimal_period(per)
        # Absorb preperiod entries that already continue the cycle.
        while pre and pre[-1] == per[-1]:
            pre = pre[:-1]
            per = (per[-1],) + per[:-1]
        object.__setattr__(self, "preperiod", pre)
        object.__setattr__(self, "period", per)

    @classmethod
    def constant(cls, value: int) -> EvPeriodicSeq:
        return cls((), (value,))

    @classmethod
    def parse(cls, text: str) -> EvPeriodicSeq:
        """Parse ``"p1,p2|q1,q2"``; the preperiod may be empty as in ``"|q1"``."""
        if "|" not in text:
            raise ValueError(f"bad sequence {text!r}: expected 'pre|period'")
        pre_text, per_text = text.split("|", 1)

        def ints(part: str) -> tuple[int, ...]:
            part = part.strip()
            return tuple(int(t) for t in part.split(",")) if part else ()

        try:
            return cls(ints(pre_text), ints(per_text))
        except ValueError as exc:
            raise ValueError(f"bad sequence {text!r}: {exc}") from None

    def __str__(self) -> str:
        return ",".join(map(str, self.preperiod)) + "|" + ",".join(map(str, self.period))

    def __getitem__(self, i: int) -> int:
        """Term ``i`` (0-based)."""
        if i < 0:
            raise IndexError("negative index into infinite sequence")
        if i < len(self.preperiod):
            return self.preperiod[i]
        return self.period[(i - len(self.preperiod)) % len(self.period)]

    def take(self, n: int) -> tuple[int, ...]:
        return tuple(self[i] for i in range(n))

    def max_entry(self) -> int:
        return max(self.preperiod + self.period)


def _common_window(sequences: Sequence[EvPeriodicSeq]) -> tuple[int, int]:
    start = max(len(s.preperiod) for s in sequences)
    length = math.lcm(*(len(s.period) for s in sequences))
    return start, length


def star(J: EvPeriodicSeq, K: EvPeriodicSeq, m: int) -> EvPeriodicSeq:
    """Componentwise ``m (j_i - 1) + k_i``, with ``K`` over the alphabet ``1..m``."""
    if m < 2:
        raise ValueError(f"alphabet size must be >= 2, got {m}")
    if K.max_entry() > m:
        raise ValueError(f"entry {K.max_entry()} of K exceeds alphabet size {m}")
    start, length = _common_window((J, K))
    terms = [m * (J[i] - 1) + K[i] for i in range(start + length)]
    return EvPeriodicSeq(tuple(terms[:start]), tuple(terms[start:]))


def tail_equiv(J: EvPeriodicSeq, K: EvPeriodicSeq) -> bool:
    """Whether ``J`` and ``K`` agree from some position on."""
    start, length = _common_window((J, K))
    return all(J[i] == K[i] for i in range(start, start + length))

