"""Verification suites over a built-in instance grid, shared by the CLI and the tests."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Callable

import numpy as np

from . import bialgebra as bi
from .matalg import kron, random_density, span_rank
from .report import MAX_LISTED_FAILURES, Report
from .repstate import (
    AtomClass,
    ProductState,
    atom_equiv,
    atom_product,
    atom_state,
    boxtimes_states,
    center_dimension,
    commutant_dimension,
    gns,
    intertwiner_check,
    rep_tensor,
    state_residual,
    state_tensor,
)
from .sequences import EvPeriodicSeq, FactorPair, SequencePrefix, enumerate_factorizations, star
from .uhf import AlgebraElement, all_units


@dataclass
class RunConfig:
    tolerance: float = 1e-10
    level_cap: int = 3
    dim_cap: int = 4096
    output: str = "text"
    seed: int = 0

    def __post_init__(self) -> None:
        if not 0 < self.tolerance < 1e-4:
            raise ValueError(f"tolerance must lie in (0, 1e-4), got {self.tolerance}")
        if self.level_cap < 1 or self.dim_cap < 1:
            raise ValueError("caps must be positive")
        if self.output not in ("json", "text"):
            raise ValueError(f"output must be 'json' or 'text', got {self.output!r}")

    def rng(self) -> np.random.Generator:
        return np.random.default_rng(self.seed)


P = SequencePrefix


def merge(check: str, reports: list[Report], **details) -> Report:
    out = Report(check, details=dict(details))
    out.details["instances"] = []
    for r in reports:
        out.instances += r.instances
        out.failure_count += r.failure_count
        out.failures += r.failures[: max(0, MAX_LISTED_FAILURES - len(out.failures))]
        key = {k: v for k, v in r.details.items() if k in ("a", "b", "c", "level", "n", "m")}
        entry = {"key": key, "instances": r.instances, "passed": r.passed}
        if r.rank is not None:
            entry.update(rank=r.rank, full_dim=r.full_dim)
            if r.rank != r.full_dim:
                out.failure_count += 1
        out.details["instances"].append(entry)
    return out


def suite_coassoc(cfg: RunConfig, a: P | None = None, b: P | None = None, c: P | None = None,
                  level: int | None = None) -> Report:
    if a is not None and b is not None and c is not None:
        return merge("coassoc", [bi.verify_coassoc(a, b, c, level)])
    reports = [bi.verify_coassoc(P((x,)), P((y,)), P((z,))) for x, y, z in product((1, 2, 3), repeat=3)]
    if cfg.level_cap >= 2:
        reports.append(bi.verify_coassoc(P((2, 2)), P((3, 2)), P((2, 3))))
    return merge("coassoc", reports)


def counit_grid(max_dim: int = 36) -> list[P]:
    bases = [P((1,)), P((1, 1))]
    bases += [P((n,)) for n in range(2, max_dim + 1)]
    bases += [P((x, y)) for x in range(2, max_dim + 1) for y in range(2, max_dim + 1) if x * y <= max_dim]
    return bases


def suite_counit(cfg: RunConfig) -> Report:
    bases = [b for b in counit_grid() if len(b) <= cfg.level_cap]
    return merge("counit", [bi.verify_counit(b) for b in bases])


def suite_cancellation(cfg: RunConfig, tol: float | None = None) -> Report:
    tol = cfg.tolerance if tol is None else tol
    grid = [(P((2,)), P((2,))), (P((2,)), P((3,))), (P((3,)), P((2,))), (P((2,)), P((1,)))]
    reports = [bi.verify_cancellation(a, b, tol=tol) for a, b in grid]
    if cfg.level_cap >= 2:
        reports.append(bi.verify_cancellation(P((2, 2)), P((2, 2)), tol=tol))
        reports.append(bi.verify_padding(P((2, 2)), P((3, 3)), 2, 1))
        reports.append(bi.verify_padding(P((2, 2)), P((3, 3)), 1, 2))
    return merge("cancellation", reports)


def suite_star_isomorphism(cfg: RunConfig) -> Report:
    pairs = enumerate_factorizations(P((6,))) + enumerate_factorizations(P((2, 3)))
    if cfg.level_cap >= 2:
        pairs += [FactorPair(P((2, 3)), P((3, 2)))]
    return merge("star_isomorphism", [bi.verify_star_isomorphism(p.left, p.right, rng=cfg.rng()) for p in pairs])


def suite_noncocommutative(cfg: RunConfig) -> Report:
    return bi.verify_noncocommutative()


def suite_coaction(cfg: RunConfig, trials: int = 1000) -> Report:
    worked = bi.verify_coaction((5,), (7,), P((2,)), P((3,)))
    rand = bi.verify_coaction_random(trials, cfg.rng())
    return merge("coaction", [worked, rand])


def suite_kron_duality(cfg: RunConfig, trials: int = 200, tol: float = 1e-12) -> Report:
    """``phi_{(2),(3)}(A kron B)`` equals the expansion of ``A (x) B``."""
    rng = cfg.rng()
    report = Report("kron_duality", details={"tol": tol})
    b, c = P((2,)), P((3,))
    worst = 0.0
    for _ in range(trials):
        A = rng.uniform(-1, 1, (2, 2)) + 1j * rng.uniform(-1, 1, (2, 2))
        B = rng.uniform(-1, 1, (3, 3)) + 1j * rng.uniform(-1, 1, (3, 3))
        lhs = bi.coproduct_phi(b, c, AlgebraElement.from_dense(P((6,)), kron(A, B)))
        rhs = bi.TensorElement.from_factors(AlgebraElement.from_dense(b, A), AlgebraElement.from_dense(c, B))
        err = lhs.max_abs_diff(rhs)
        worst = max(worst, err)
        report.instances += 1
        if err > tol:
            report.fail(f"max-norm error {err:.3e}")
    report.details["max_error"] = worst
    return report


def _random_state(base: tuple[int, ...], rng: np.random.Generator) -> ProductState:
    return ProductState([random_density(n, rng) for n in base])


def suite_state_tensor(cfg: RunConfig, trials: int = 50, tol: float = 1e-12) -> Report:
    """``omega_T (x)_phi omega_R = omega_{T boxtimes R}`` on all units, plus associativity."""
    rng = cfg.rng()
    report = Report("state_tensor", details={"tol": tol})
    worst = 0.0
    units = list(all_units(P((6, 6))))
    for _ in range(trials):
        T, R = _random_state((2, 2), rng), _random_state((3, 3), rng)
        lhs, rhs = state_tensor(T, R), boxtimes_states(T, R)
        for u in units:
            x = AlgebraElement(rhs.base, {u: 1.0}, check=False)
            err = abs(lhs(x) - rhs(x))
            worst = max(worst, err)
            report.instances += 1
            if err > tol:
                report.fail(f"{u}: {err:.3e}")
    assoc_worst = 0.0
    for _ in range(5):
        w1, w2, w3 = (_random_state((2, 2), rng) for _ in range(3))
        left = state_tensor(state_tensor(w1, w2), w3)
        right = state_tensor(w1, state_tensor(w2, w3))
        for u in all_units(left.base):
            x = AlgebraElement(left.base, {u: 1.0}, check=False)
            err = abs(left(x) - right(x))
            assoc_worst = max(assoc_worst, err)
            report.instances += 1
            if err > tol:
                report.fail(f"associativity {u}: {err:.3e}")
    report.details.update(max_error=worst, assoc_max_error=assoc_worst)
    return report


def suite_gns(cfg: RunConfig) -> Report:
    tol = cfg.tolerance
    report = Report("gns")
    checks = []
    pure = ProductState([np.diag([1.0, 0.0])])
    tracial = ProductState([np.eye(2) / 2])
    g_pure, g_tr = gns(pure, tol=tol), gns(tracial, tol=tol)
    checks += [("pure dim", g_pure.dim, 2), ("tracial dim", g_tr.dim, 4),
               ("tracial commutant", commutant_dimension(g_tr, tol), 4),
               ("tracial center", center_dimension(g_tr, tol), 1)]
    rng = cfg.rng()
    for base in ((2,), (2, 2), (3, 2)):
        if len(base) > cfg.level_cap:
            continue
        omega = _random_state(base, rng)
        g = gns(omega, tol=tol)
        res = state_residual(g, omega)
        orbit = span_rank([g.unit(*u) @ g.cyclic_vector for u in all_units(g.base)], tol)
        checks += [(f"{base} residual<=1e-10", res <= 1e-10, True), (f"{base} cyclic", orbit, g.dim),
                   (f"{base} norm", abs(np.linalg.norm(g.cyclic_vector) - 1) <= 1e-10, True)]
    for name, got, want in checks:
        report.instances += 1
        if got != want:
            report.fail(f"{name}: got {got}, want {want}")
    return report


def suite_intertwiner(cfg: RunConfig, tol: float = 1e-9) -> Report:
    rng = cfg.rng()
    tracial = ProductState([np.eye(2) / 2])
    cases = [(tracial, tracial, 1), (_random_state((2,), rng), _random_state((2,), rng), 1),
             (_random_state((2,), rng), ProductState.trivial(1), 1)]
    if cfg.level_cap >= 2:
        J, K = EvPeriodicSeq.parse("|1,2"), EvPeriodicSeq.parse("|2")
        cases.append((atom_state(AtomClass(2, J), 2), atom_state(AtomClass(2, K), 2), 2))
    reports = []
    for T, R, level in cases:
        r = intertwiner_check(T, R, level, tol)
        r.details.pop("U", None)
        reports.append(r)
    out = merge("intertwiner", reports)
    out.details["residuals"] = [
        {k: r.details.get(k) for k in ("unitarity", "intertwining", "state_residual")} for r in reports
    ]
    return out


def suite_atoms(cfg: RunConfig) -> Report:
    report = Report("atoms")
    one, two, three = (EvPeriodicSeq.constant(v) for v in (1, 2, 3))
    checks = [
        ("1*2=2", star(one, two, 2), two),
        ("2*1=3", star(two, one, 2), three),
        ("(1|2)*1=(1|3)", star(EvPeriodicSeq.parse("1|2"), one, 2), EvPeriodicSeq.parse("1|3")),
        ("P2[1]xP2[2]=P4[2]", atom_product(AtomClass(2, one), AtomClass(2, two)), AtomClass(4, two)),
        ("P2[2]xP2[1]=P4[3]", atom_product(AtomClass(2, two), AtomClass(2, one)), AtomClass(4, three)),
        ("P4[2]!=P4[3]", atom_equiv(AtomClass(4, two), AtomClass(4, three)), False),
        ("P2[1|2]=P2[2]", atom_equiv(AtomClass(2, EvPeriodicSeq.parse("1|2")), AtomClass(2, two)), True),
    ]
    for n in (2, 3):
        for level in range(1, min(3, cfg.level_cap) + 1):
            A = AtomClass(n, EvPeriodicSeq.parse("1|2" if n == 2 else "3|1,2"))
            g = gns(atom_state(A, level), tol=cfg.tolerance)
            checks.append((f"commutant P{n} level {level}", commutant_dimension(g, cfg.tolerance), 1))
    A, B = AtomClass(2, EvPeriodicSeq.parse("2|1")), AtomClass(3, EvPeriodicSeq.parse("|3,1"))
    level = min(3, cfg.level_cap)
    lhs = boxtimes_states(atom_state(A, level), atom_state(B, level))
    rhs = atom_state(atom_product(A, B), level)
    checks.append(("T(J) boxtimes T(K) = T(J*K)", all(np.array_equal(x, y) for x, y in zip(lhs.sites, rhs.sites)), True))
    # Non-symmetry of the state tensor product on E^{(4)}_{2,2}.
    w1, w2 = atom_state(AtomClass(2, one), 1), atom_state(AtomClass(2, two), 1)
    x = AlgebraElement(P((4,)), {((2,), (2,)): 1.0})
    checks.append(("non-symmetric state tensor", state_tensor(w1, w2)(x) != state_tensor(w2, w1)(x), True))
    for name, got, want in checks:
        report.instances += 1
        if got != want:
            report.fail(f"{name}: got {got}, want {want}")
    return report


def suite_irreducible(cfg: RunConfig) -> Report:
    report = Report("irreducible")
    cases = [(2, "|1", 2, "|2", 1), (2, "|2", 3, "1|3", 1), (3, "|2,3", 2, "|1", 1)]
    if cfg.level_cap >= 2:
        cases.append((2, "|1", 2, "2|1", 2))
    for n, J, m, K, level in cases:
        g1 = gns(atom_state(AtomClass(n, EvPeriodicSeq.parse(J)), level), tol=cfg.tolerance)
        g2 = gns(atom_state(AtomClass(m, EvPeriodicSeq.parse(K)), level), tol=cfg.tolerance)
        pi = rep_tensor(g1, g2)
        report.instances += 1
        cdim = commutant_dimension(pi, cfg.tolerance)
        if commutant_dimension(g1) != 1 or commutant_dimension(g2) != 1 or cdim != 1:
            report.fail(f"P{n}[{J}] x P{m}[{K}] level {level}: commutant {cdim}")
    tracial = gns(ProductState([np.eye(2) / 2]), tol=cfg.tolerance)
    report.instances += 1
    zdim = center_dimension(rep_tensor(tracial, tracial), cfg.tolerance)
    if zdim != 1:
        report.fail(f"tracial (x) tracial center {zdim}")
    return report


SUITES: dict[str, Callable[[RunConfig], Report]] = {
    "atoms": suite_atoms,
    "cancellation": suite_cancellation,
    "coaction": suite_coaction,
    "coassoc": suite_coassoc,
    "counit": suite_counit,
    "gns": suite_gns,
    "intertwiner": suite_intertwiner,
    "irreducible": suite_irreducible,
    "kron_duality": suite_kron_duality,
    "noncocommutative": suite_noncocommutative,
    "star_isomorphism": suite_star_isomorphism,
    "state_tensor": suite_state_tensor,
}


def run_suites(names: list[str], cfg: RunConfig) -> list[Report]:
    if names == ["all"]:
        names = sorted(SUITES)
    unknown = [n for n in names if n not in SUITES]
    if unknown:
        raise KeyError(f"unknown suite(s): {', '.join(unknown)}")
    return [SUITES[n](cfg) for n in sorted(names)]
