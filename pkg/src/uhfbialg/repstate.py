"""Product states, finite-level GNS representations and the tensor product along
the Kronecker coproduct.

Everything is done at a fixed truncation level ``n``: a state is restricted to
``A_n(a)``, its GNS space is the quotient of ``A_n(a)`` by the null space of the
Gram matrix, and representations are families of ``dim x dim`` matrices indexed
by matrix units.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Protocol, Sequence

import numpy as np

from .bialgebra import coproduct_phi
from .matalg import TOL_RANK, as_matrix, check_density, kron, matrix_unit, orth, rank
from .report import Report
from .sequences import EvPeriodicSeq, SequencePrefix, seq_product, star, tail_equiv
from .uhf import AlgebraElement, Unit, all_units, encode, multi_indices, site_operator

TOL_GNS = 1e-10


class StateFunctional(Protocol):
    base: SequencePrefix

    def __call__(self, x: AlgebraElement) -> complex: ...


def _check_evaluable(base: SequencePrefix, x: AlgebraElement) -> None:
    if x.level > len(base):
        raise ValueError(f"element at level {x.level} beyond state length {len(base)}")
    if x.base != base.truncate(x.level):
        raise ValueError(f"base mismatch: element over {x.base}, state over {base}")


class ProductState:
    """The product state ``omega_T`` given by one density matrix per site.

    ``omega_T(E_{j_1,k_1} (x) ... (x) E_{j_n,k_n}) = T1[k_1,j_1] ... Tn[k_n,j_n]``.
    """

    def __init__(self, sites: Sequence, tol: float = 1e-10):
        self.sites = tuple(check_density(T, tol) for T in sites)
        if not self.sites:
            raise ValueError("a product state needs at least one site")
        self.base = SequencePrefix(tuple(T.shape[0] for T in self.sites), allow_mixed=True)

    @classmethod
    def trivial(cls, length: int) -> ProductState:
        """The unique state over the all-ones prefix."""
        return cls([np.ones((1, 1))] * length)

    @property
    def level(self) -> int:
        return len(self.sites)

    def __call__(self, x: AlgebraElement) -> complex:
        return state_eval(self, x)

    def restrict(self, level: int) -> ProductState:
        return ProductState(self.sites[:level])

    def __repr__(self) -> str:
        return f"ProductState(base=({self.base}))"


def state_eval(omega: ProductState, x: AlgebraElement) -> complex:
    _check_evaluable(omega.base, x)
    total = 0j
    for (J, K), c in x.terms.items():
        v = c
        for T, j, k in zip(omega.sites, J, K):
            v *= T[k - 1, j - 1]
            if v == 0:
                break
        total += v
    return total


class TensorProductState:
    """``rho_1 (x)_phi rho_2 = (rho_1 (x) rho_2) o phi_{a,b}`` over ``a.b``."""

    def __init__(self, left: StateFunctional, right: StateFunctional):
        if len(left.base) != len(right.base):
            raise ValueError("state tensor needs states of equal length")
        self.left, self.right = left, right
        self.base = seq_product(left.base, right.base)

    def __call__(self, x: AlgebraElement) -> complex:
        _check_evaluable(self.base, x)
        t = coproduct_phi(self.left.base, self.right.base, x)
        b, c = t.bases
        total = 0j
        for ((J1, K1), (J2, K2)), coef in t.terms.items():
            lv = self.left(AlgebraElement(b, {(J1, K1): 1.0}, check=False))
            if lv == 0:
                continue
            total += coef * lv * self.right(AlgebraElement(c, {(J2, K2): 1.0}, check=False))
        return total


def state_tensor(omega1: StateFunctional, omega2: StateFunctional) -> TensorProductState:
    return TensorProductState(omega1, omega2)


def boxtimes_states(T: ProductState, R: ProductState) -> ProductState:
    """Sitewise Kronecker product ``(T1 kron R1, T2 kron R2, ...)``."""
    if T.level != R.level:
        raise ValueError(f"length mismatch: {T.level} vs {R.level}")
    return ProductState([kron(A, B) for A, B in zip(T.sites, R.sites)])


# representations


class Representation:
    """A representation of ``A_n(base)`` on ``C^dim``, given on matrix units."""

    def __init__(self, base: SequencePrefix, dim: int, unit_matrix: Callable[[Unit], np.ndarray]):
        self.base = base
        self.dim = dim
        self._unit_matrix = unit_matrix
        self._cache: dict[Unit, np.ndarray] = {}

    @property
    def level(self) -> int:
        return len(self.base)

    def unit(self, J, K) -> np.ndarray:
        key = (tuple(J), tuple(K))
        if key not in self._cache:
            self._cache[key] = self._unit_matrix(key)
        return self._cache[key]

    @property
    def rep_units(self) -> dict[Unit, np.ndarray]:
        return {u: self.unit(*u) for u in all_units(self.base)}

    def of(self, x: AlgebraElement) -> np.ndarray:
        if x.base != self.base:
            raise ValueError(f"element over {x.base}, representation over {self.base}")
        M = np.zeros((self.dim, self.dim), dtype=np.complex128)
        for (J, K), c in x.terms.items():
            M += c * self.unit(J, K)
        return M

    def generators(self) -> list[np.ndarray]:
        """Images of a generating set: per site, ``diag(1..a_i)`` and the cyclic shift."""
        gens = []
        for i, a in enumerate(self.base):
            if a == 1:
                continue
            D = np.diag(np.arange(1, a + 1)).astype(np.complex128)
            S = np.roll(np.eye(a, dtype=np.complex128), 1, axis=0)
            gens.append(self.of(site_operator(self.base, i, D)))
            gens.append(self.of(site_operator(self.base, i, S)))
        if not gens:
            gens.append(self.of(AlgebraElement.identity(self.base)))
        return gens


def defining_rep(base: SequencePrefix) -> Representation:
    """``A_n(a)`` acting on ``C^{a_1 ... a_n}`` by its dense matrices."""
    N = base.dim
    def unit(u):
        M = np.zeros((N, N), dtype=np.complex128)
        M[encode(u[0], base), encode(u[1], base)] = 1.0
        return M
    return Representation(base, N, unit)


def trivial_rep(level: int) -> Representation:
    return Representation(SequencePrefix.ones(level), 1, lambda u: np.ones((1, 1), dtype=np.complex128))


def direct_sum_rep(r1: Representation, r2: Representation) -> Representation:
    if r1.base != r2.base:
        raise ValueError("direct sum needs representations of the same algebra")
    d1, d2 = r1.dim, r2.dim
    def unit(u):
        M = np.zeros((d1 + d2, d1 + d2), dtype=np.complex128)
        M[:d1, :d1] = r1.unit(*u)
        M[d1:, d1:] = r2.unit(*u)
        return M
    return Representation(r1.base, d1 + d2, unit)


def rep_tensor(pi1: Representation, pi2: Representation) -> Representation:
    """``pi_1 (x)_phi pi_2 = (pi_1 (x) pi_2) o phi_{a,b}`` on ``C^{d1} (x) C^{d2}``."""
    if pi1.level != pi2.level:
        raise ValueError(f"level mismatch: {pi1.level} vs {pi2.level}")
    a, b = pi1.base, pi2.base
    ab = seq_product(a, b)

    def unit(u):
        t = coproduct_phi(a, b, AlgebraElement(ab, {u: 1.0}, check=False))
        ((u1, u2),) = t.terms
        return kron(pi1.unit(*u1), pi2.unit(*u2))

    return Representation(ab, pi1.dim * pi2.dim, unit)


class GNSError(ValueError):
    pass


class GNSRep(Representation):
    """GNS triple of a state restricted to ``A_n(base)``.

    ``gns_matrix`` maps coefficient vectors over matrix units (ordered as
    :func:`all_units`) to coordinates in an orthonormal basis of the GNS space;
    ``gns_pinv`` is its right inverse.
    """

    def __init__(self, base: SequencePrefix, gram: np.ndarray, gns_matrix: np.ndarray,
                 gns_pinv: np.ndarray, cyclic_vector: np.ndarray):
        N = base.dim
        dim = gns_matrix.shape[0]
        W3 = gns_matrix.reshape(dim, N, N)
        P3 = gns_pinv.reshape(N, N, dim)

        # pi(E_{J,K}) = W L_{J,K} W^+, and L_{J,K} sends the unit (K,M) to (J,M).
        def unit(u):
            return W3[:, encode(u[0], base), :] @ P3[encode(u[1], base), :, :]

        super().__init__(base, dim, unit)
        self.gram = gram
        self.gns_matrix = gns_matrix
        self.gns_pinv = gns_pinv
        self.cyclic_vector = cyclic_vector

    def gns_map(self, x: AlgebraElement) -> np.ndarray:
        """``Lambda(x) = pi(x) Omega`` as a coordinate vector."""
        if x.base != self.base:
            raise ValueError(f"element over {x.base}, GNS space over {self.base}")
        return self.gns_matrix @ coefficient_vector(x)

    def unit_vector(self, u: Unit) -> np.ndarray:
        N = self.base.dim
        return self.gns_matrix[:, encode(u[0], self.base) * N + encode(u[1], self.base)]


def coefficient_vector(x: AlgebraElement) -> np.ndarray:
    N = x.base.dim
    v = np.zeros(N * N, dtype=np.complex128)
    for (J, K), c in x.terms.items():
        v[encode(J, x.base) * N + encode(K, x.base)] += c
    return v


def reduced_matrix(omega: StateFunctional, base: SequencePrefix) -> np.ndarray:
    """``S[K, M] = omega(E_{K,M})`` over all multi-indices of ``base``."""
    idx = list(multi_indices(base))
    S = np.zeros((len(idx), len(idx)), dtype=np.complex128)
    for p, K in enumerate(idx):
        for q, M in enumerate(idx):
            S[p, q] = omega(AlgebraElement(base, {(K, M): 1.0}, check=False))
    return S


def gram_matrix(omega: StateFunctional, base: SequencePrefix) -> np.ndarray:
    """``G[(J,K),(L,M)] = omega(E_{J,K}^* E_{L,M}) = delta_{J,L} omega(E_{K,M})``."""
    S = reduced_matrix(omega, base)
    return np.kron(np.eye(base.dim), S)


def gns(omega: StateFunctional, level: int | None = None, tol: float = TOL_GNS,
        dim_cap: int = 4096) -> GNSRep:
    """GNS representation of ``omega`` restricted to level ``level``."""
    full = omega.base
    if level is None:
        level = len(full)
    if not 1 <= level <= len(full):
        raise ValueError(f"level {level} outside 1..{len(full)}")
    base = full.truncate(level)
    if base.dim ** 2 > dim_cap:
        raise ValueError(f"GNS of {base}: {base.dim ** 2} matrix units exceeds dim cap {dim_cap}")
    G = gram_matrix(omega, base)
    if np.max(np.abs(G - G.conj().T)) > tol:
        raise GNSError("Gram matrix is not self-adjoint")
    lam, V = np.linalg.eigh(G)
    top = lam.max()
    if top <= 0:
        raise GNSError("Gram matrix has no positive eigenvalue")
    if lam.min() < -tol * top:
        raise GNSError(f"Gram matrix not positive: eigenvalue {lam.min():.3e}")
    keep = lam > tol * top
    lam, V = lam[keep][::-1], V[:, keep][:, ::-1]
    W = np.sqrt(lam)[:, None] * V.conj().T
    W_pinv = V / np.sqrt(lam)[None, :]
    omega_vec = W @ coefficient_vector(AlgebraElement.identity(base))
    return GNSRep(base, G, W, W_pinv, omega_vec)


def state_residual(rep: GNSRep, omega: StateFunctional) -> float:
    """``max_u |<Omega, pi(u) Omega> - omega(u)|`` over matrix units."""
    Om = rep.cyclic_vector
    worst = 0.0
    for u in all_units(rep.base):
        val = np.vdot(Om, rep.unit(*u) @ Om)
        worst = max(worst, abs(val - omega(AlgebraElement(rep.base, {u: 1.0}, check=False))))
    return worst


# commutant and center


def _as_matrices(rep) -> list[np.ndarray]:
    if isinstance(rep, Representation):
        return rep.generators()
    return [as_matrix(M) for M in rep]


def commutant_basis(rep, tol: float = TOL_RANK) -> np.ndarray:
    """Orthonormal basis (columns, row-major vectorized) of the commutant.

    ``rep`` is a :class:`Representation` (its generating set is used) or a list
    of matrices. The kernels of ``X -> P X - X P`` are intersected one generator
    at a time; singular values below ``tol * 2 ||P||`` count as zero.
    """
    gens = _as_matrices(rep)
    d = gens[0].shape[0]
    Q = np.eye(d * d, dtype=np.complex128)
    for P in gens:
        if Q.shape[1] == 0:
            break
        Xs = Q.T.reshape(-1, d, d)
        R = (P @ Xs - Xs @ P).reshape(Q.shape[1], d * d).T
        cutoff = tol * 2 * max(np.linalg.norm(P, 2), 1e-300)
        _, s, vh = np.linalg.svd(R, full_matrices=True)
        r = int(np.sum(s > cutoff))
        Q = Q @ vh[r:].conj().T
    return Q


def commutant_dimension(rep, tol: float = TOL_RANK) -> int:
    return commutant_basis(rep, tol).shape[1]


def algebra_basis(rep, tol: float = TOL_RANK) -> np.ndarray:
    """Orthonormal basis (columns) of the span of the represented algebra.

    For a list of matrices, the algebra they generate (closure under products).
    """
    if isinstance(rep, Representation):
        mats = [rep.unit(*u) for u in all_units(rep.base)]
        return orth(np.stack([M.ravel() for M in mats], axis=1), tol)
    mats = [as_matrix(M) for M in rep]
    d = mats[0].shape[0]
    B = orth(np.stack([M.ravel() for M in mats], axis=1), tol)
    while True:
        elems = [B[:, i].reshape(d, d) for i in range(B.shape[1])]
        prods = [X @ Y for X in elems for Y in elems]
        B2 = orth(np.concatenate([B, np.stack([P.ravel() for P in prods], axis=1)], axis=1), tol)
        if B2.shape[1] == B.shape[1]:
            return B
        B = B2


def center_dimension(rep, tol: float = TOL_RANK) -> int:
    """``dim(span pi(A) intersect pi(A)')``; equal to 1 exactly for a factor."""
    B = algebra_basis(rep, tol)
    C = commutant_basis(rep, tol)
    return B.shape[1] + C.shape[1] - rank(np.concatenate([B, C], axis=1), tol)


def gns_report(omega: StateFunctional, level: int | None = None, tol: float = TOL_GNS) -> dict:
    rep = gns(omega, level, tol)
    return {
        "dim": rep.dim,
        "commutant_dim": commutant_dimension(rep, tol),
        "center_dim": center_dimension(rep, tol),
        "state_residual": state_residual(rep, omega),
    }


# the GNS intertwiner


def intertwiner_check(T: ProductState, R: ProductState, level: int | None = None,
                      tol: float = 1e-9) -> Report:
    """Build ``U Lambda_{TR}(x) = (Lambda_T (x) Lambda_R)(phi_{a,b}(x))`` and test it.

    ``U`` is solved from its values on all matrix units; the report records
    unitarity, the intertwining residual over all units, consistency of the
    defining relation, and the vector-state residual through ``U``.
    """
    if level is None:
        level = T.level
    TR = boxtimes_states(T, R)
    gT, gR, gTR = gns(T, level), gns(R, level), gns(TR, level)
    a, b = gT.base, gR.base
    units = list(all_units(gTR.base))
    Z = np.zeros((gT.dim * gR.dim, len(units)), dtype=np.complex128)
    for col, u in enumerate(units):
        t = coproduct_phi(a, b, AlgebraElement(gTR.base, {u: 1.0}, check=False))
        ((u1, u2),) = t.terms
        Z[:, col] = np.kron(gT.unit_vector(u1), gR.unit_vector(u2))
    report = Report("intertwiner", instances=len(units),
                    details={"a": list(a), "b": list(b), "level": level,
                             "dim_T": gT.dim, "dim_R": gR.dim, "dim_TR": gTR.dim})
    span = rank(Z, TOL_RANK)
    if span != gT.dim * gR.dim or gTR.dim != gT.dim * gR.dim:
        report.fail(f"GNS spanning set has rank {span}, need {gT.dim * gR.dim} (dim H_TR = {gTR.dim})")
        return report
    U = Z @ gTR.gns_pinv
    consistency = float(np.linalg.norm(U @ gTR.gns_matrix - Z, 2))
    unitarity = float(np.linalg.norm(U.conj().T @ U - np.eye(gTR.dim), 2))
    tensor = rep_tensor(gT, gR)
    inter = 0.0
    for u in units:
        lhs = U @ gTR.unit(*u) @ U.conj().T
        inter = max(inter, float(np.linalg.norm(lhs - tensor.unit(*u), 2)))
    Om = U @ gTR.cyclic_vector
    vec_state = max(
        abs(np.vdot(Om, tensor.unit(*u) @ Om) - TR(AlgebraElement(gTR.base, {u: 1.0}, check=False)))
        for u in units
    )
    report.details.update(consistency=consistency, unitarity=unitarity, intertwining=inter,
                          state_residual=float(vec_state))
    for name, val in (("consistency", consistency), ("unitarity", unitarity),
                      ("intertwining", inter), ("state_residual", vec_state)):
        if val > tol:
            report.fail(f"{name} residual {val:.3e} > {tol:g}")
    report.details["U"] = U
    return report


# atoms


@dataclass(frozen=True)
class AtomClass:
    """``P_n[J]``: the class of the GNS representation of the pure product state ``T(J)``."""

    n: int
    J: EvPeriodicSeq

    def __post_init__(self) -> None:
        if self.n < 2:
            raise ValueError(f"alphabet size must be >= 2, got {self.n}")
        if self.J.max_entry() > self.n:
            raise ValueError(f"sequence {self.J} leaves the alphabet 1..{self.n}")

    def __str__(self) -> str:
        return f"P{self.n}[{self.J}]"


def atom_state(A: AtomClass, level: int) -> ProductState:
    """``T(J)`` truncated: site ``i`` is the diagonal unit ``E_{j_i, j_i}``."""
    if level < 1:
        raise ValueError("level must be >= 1")
    return ProductState([matrix_unit(A.n, j, j) for j in A.J.take(level)])


def atom_product(A: AtomClass, B: AtomClass) -> AtomClass:
    return AtomClass(A.n * B.n, star(A.J, B.J, B.n))


def atom_equiv(A: AtomClass, B: AtomClass) -> bool:
    if A.n != B.n:
        return False
    return tail_equiv(A.J, B.J)


def first_agreement(J: EvPeriodicSeq, K: EvPeriodicSeq) -> int | None:
    """Smallest 1-based ``n0`` with ``j_r = k_r`` for all ``r >= n0``, or None."""
    if not tail_equiv(J, K):
        return None
    start = max(len(J.preperiod), len(K.preperiod))
    n0 = start
    while n0 > 0 and J[n0 - 1] == K[n0 - 1]:
        n0 -= 1
    return n0 + 1
