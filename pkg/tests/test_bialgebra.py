from itertools import product

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from strategies import prefix_triples, prefixes
from uhfbialg.bialgebra import (
    InfMatrixUnit,
    TensorElement,
    cancellation_spanning_set,
    coaction_infty,
    cocommutativity_witness,
    coproduct_phi,
    counit,
    delta,
    join_index,
    split_index,
    split_multi,
    tensor_to_json,
    verify_cancellation,
    verify_coaction,
    verify_coaction_random,
    verify_coassoc,
    verify_counit,
    verify_noncocommutative,
    verify_padding,
    verify_star_isomorphism,
)
from uhfbialg.matalg import kron, matrix_unit, span_rank
from uhfbialg.sequences import FactorPair, SequencePrefix, seq_product
from uhfbialg.uhf import AlgebraElement, DirectSumElement, all_units, unit_elem

P = SequencePrefix
E6_22 = unit_elem(P((6,)), (2,), (2,))


def tensor(*factors):
    """``factors`` is a sequence of (base, J, K) with 1-tuples or tuples."""
    return TensorElement.from_factors(*(unit_elem(b, J, K) for b, J, K in factors))


# index splitting


def test_split_index_examples():
    assert split_index(2, 2, 3) == (1, 2)
    assert split_index(1, 5, 7) == (1, 1)
    assert split_index(6, 2, 3) == (2, 3)
    with pytest.raises(IndexError):
        split_index(7, 2, 3)
    with pytest.raises(IndexError):
        split_index(0, 2, 3)


def test_split_join_inverse_exhaustive():
    for a, b in product(range(1, 9), repeat=2):
        for j in range(1, a * b + 1):
            jp, jpp = split_index(j, a, b)
            assert 1 <= jp <= a and 1 <= jpp <= b
            assert join_index(jp, jpp, b) == j
        for jp, jpp in product(range(1, a + 1), range(1, b + 1)):
            assert split_index(join_index(jp, jpp, b), a, b) == (jp, jpp)


def test_split_multi():
    assert split_multi((2, 5), P((2, 2)), P((3, 3))) == ((1, 2), (2, 2))


# coproduct


def test_coproduct_worked_rows():
    assert coproduct_phi(P((2,)), P((3,)), E6_22) == tensor((P((2,)), (1,), (1,)), (P((3,)), (2,), (2,)))
    assert coproduct_phi(P((1,)), P((6,)), E6_22) == tensor((P((1,)), (1,), (1,)), (P((6,)), (2,), (2,)))


def test_coproduct_base_mismatch():
    with pytest.raises(ValueError):
        coproduct_phi(P((2,)), P((2,)), E6_22)


def _kron_split_oracle(a, b, j, k):
    """Find (j', k', j'', k'') with E^(ab)_{j,k} = E^(a)_{j',k'} kron E^(b)_{j'',k''} by search."""
    target = matrix_unit(a * b, j, k)
    for jp, kp in product(range(1, a + 1), repeat=2):
        for jpp, kpp in product(range(1, b + 1), repeat=2):
            if np.array_equal(kron(matrix_unit(a, jp, kp), matrix_unit(b, jpp, kpp)), target):
                return jp, kp, jpp, kpp
    raise AssertionError("no Kronecker factorization")


def test_coproduct_level_two_against_kron_search():
    b, c = P((2, 2)), P((3, 3))
    oracle = {(a, bb, j, k): _kron_split_oracle(a, bb, j, k)
              for a, bb in ((2, 3),) for j in range(1, 7) for k in range(1, 7)}
    count = 0
    for J, K in all_units(P((6, 6))):
        t = coproduct_phi(b, c, AlgebraElement(P((6, 6)), {(J, K): 1.0}))
        parts = [oracle[(2, 3, j, k)] for j, k in zip(J, K)]
        want = ((tuple(p[0] for p in parts), tuple(p[1] for p in parts)),
                (tuple(p[2] for p in parts), tuple(p[3] for p in parts)))
        assert t.terms == {want: 1.0}
        # Undo the split sitewise with join_index and compare with the dense unit.
        back = tuple(join_index(p[0], p[2], 3) for p in parts), tuple(join_index(p[1], p[3], 3) for p in parts)
        assert back == (J, K)
        count += 1
    assert count == 36 ** 2


@pytest.mark.parametrize("b, c", [((2,), (3,)), ((3,), (2,)), ((2, 3), (3, 1)), ((1, 1), (2, 3)), ((2, 2), (1, 1))])
def test_coproduct_is_star_isomorphism(b, c):
    r = verify_star_isomorphism(P(b, allow_mixed=True), P(c, allow_mixed=True))
    assert r.passed, r.failures


@given(st.data())
def test_coproduct_multiplicative_on_random_elements(data):
    n = data.draw(st.integers(1, 2))
    b = data.draw(prefixes(length=n, entries=(1, 2, 3), mixed=True).filter(lambda p: p.dim <= 6))
    c = data.draw(prefixes(length=n, entries=(2, 3)).filter(lambda p: p.dim <= 6))
    a = seq_product(b, c)
    seed = data.draw(st.integers(0, 2**32 - 1))
    rng = np.random.default_rng(seed)
    units = list(all_units(a))

    def rand():
        picks = rng.choice(len(units), size=min(4, len(units)), replace=False)
        return AlgebraElement(a, {units[i]: complex(*rng.integers(-3, 4, 2)) for i in picks})

    x, y = rand(), rand()
    phi = lambda z: coproduct_phi(b, c, z)  # noqa: E731
    assert phi(x @ y) == phi(x) @ phi(y)
    assert phi(x.adjoint()) == phi(x).adjoint()
    assert phi(x + y) == phi(x) + phi(y)


def test_coproduct_of_identity_and_unit_conventions():
    a = P((6,))
    fam = delta(AlgebraElement.identity(a))
    for p, comp in fam:
        assert comp == TensorElement.from_factors(AlgebraElement.identity(p.left), AlgebraElement.identity(p.right))
    x = unit_elem(P((2, 3)), (1, 3), (2, 1))
    assert coproduct_phi(P((1, 1)), P((2, 3)), x).terms == {(((1, 1), (1, 1)), ((1, 3), (2, 1))): 1.0}


def test_tensor_dense_matches_kron_of_factors():
    t = coproduct_phi(P((2,)), P((3,)), unit_elem(P((6,)), (5,), (2,)))
    assert np.array_equal(t.to_dense(), matrix_unit(6, 5, 2))


def test_tensor_element_ops():
    t = tensor((P((2,)), (1,), (2,)), (P((3,)), (3,), (1,)))
    assert t.flip() == tensor((P((3,)), (3,), (1,)), (P((2,)), (1,), (2,)))
    assert t.adjoint() == tensor((P((2,)), (2,), (1,)), (P((3,)), (1,), (3,)))
    assert (t @ t.adjoint()) == tensor((P((2,)), (1,), (1,)), (P((3,)), (3,), (3,)))
    assert t.format() == "E^(2)_{1,2} (x) E^(3)_{3,1}"
    obj = tensor_to_json(t)
    assert obj["bases"] == [[2], [3]]
    assert obj["terms"][0]["factors"] == [{"J": [1], "K": [2]}, {"J": [3], "K": [1]}]


# delta


def test_delta_worked_example_table():
    comps = {(p.left.entries, p.right.entries): t for p, t in delta(E6_22)}
    assert comps == {
        ((1,), (6,)): tensor((P((1,)), (1,), (1,)), (P((6,)), (2,), (2,))),
        ((2,), (3,)): tensor((P((2,)), (1,), (1,)), (P((3,)), (2,), (2,))),
        ((3,), (2,)): tensor((P((3,)), (1,), (1,)), (P((2,)), (2,), (2,))),
        ((6,), (1,)): tensor((P((6,)), (2,), (2,)), (P((1,)), (1,), (1,))),
    }
    assert [t.format() for _, t in delta(E6_22)] == [
        "1 (x) E^(6)_{2,2}", "E^(2)_{1,1} (x) E^(3)_{2,2}", "E^(3)_{1,1} (x) E^(2)_{2,2}", "E^(6)_{2,2} (x) 1"]


def test_delta_over_base_two():
    fam = delta(unit_elem(P((2,)), (1,), (1,)))
    assert [t.format() for _, t in fam] == ["1 (x) E^(2)_{1,1}", "E^(2)_{1,1} (x) 1"]


def test_delta_level_two_has_sixteen_components():
    x = unit_elem(P((6, 6)), (2, 2), (2, 2))
    assert len(delta(x).materialize()) == 16
    assert len(delta(x).materialize(uniform=True)) == 6


def test_component_family_lookup_and_equality():
    fam = delta(E6_22)
    assert fam[FactorPair(P((2,)), P((3,)))] == coproduct_phi(P((2,)), P((3,)), E6_22)
    with pytest.raises(ValueError):
        fam[FactorPair(P((2,)), P((2,)))]
    assert fam == delta(unit_elem(P((6,)), (2,), (2,)))
    assert fam != delta(unit_elem(P((6,)), (1,), (1,)))


# counit


def test_counit_projection():
    assert counit(DirectSumElement({P((6,)): E6_22})) == 0
    assert counit(DirectSumElement({P((1,)): AlgebraElement.scalar(3 + 4j)})) == 3 + 4j
    assert counit(AlgebraElement.scalar(2.5)) == 2.5
    assert counit(E6_22) == 0


@pytest.mark.parametrize("a", [(1,), (2,), (6,), (2, 3), (3, 3), (1, 1)])
def test_counit_laws(a):
    assert verify_counit(P(a)).passed


# coassociativity


@pytest.mark.parametrize("a, b, c, units", [((2,), (2,), (2,), 64), ((2,), (3,), (2,), 144), ((1,), (3,), (2,), 36)])
def test_coassoc_examples(a, b, c, units):
    r = verify_coassoc(P(a), P(b), P(c))
    assert r.passed and r.instances == units


def test_coassoc_unit_counts_are_squares_of_dims():
    # |a b c|^2 units: (2*2*2)^2 = 64 because the units of A_1(8) are checked.
    assert verify_coassoc(P((2,)), P((2,)), P((2,))).instances == 8 ** 2


@given(prefix_triples())
def test_coassoc_on_random_prefixes(abc):
    a, b, c = abc
    if seq_product(seq_product(a, b), c).dim > 18:
        return
    r = verify_coassoc(a, b, c)
    assert r.passed, r.failures


def test_coassoc_cap_and_length_errors():
    with pytest.raises(ValueError):
        verify_coassoc(P((2,)), P((2, 2)), P((2,)))
    with pytest.raises(ValueError, match="cap"):
        verify_coassoc(P((3, 3)), P((3, 3)), P((3, 3)), unit_cap=1000)


# cancellation


@pytest.mark.parametrize("a, b", [((2,), (2,)), ((2,), (3,)), ((3,), (2,)), ((2,), (1,)), ((1,), (3,))])
def test_cancellation_level_one(a, b):
    r = verify_cancellation(P(a), P(b))
    full = (P(a).dim * P(b).dim) ** 2
    assert r.passed and r.rank == full == r.full_dim
    assert r.details["X_rank"] == r.details["Y_rank"] == full


def test_cancellation_spanning_set_size_and_rank():
    vecs = cancellation_spanning_set(P((2,)), P((3,)), "X")
    assert len(vecs) == 36 * 4
    assert span_rank([v.to_dense() for v in vecs]) == 36
    with pytest.raises(ValueError):
        cancellation_spanning_set(P((2,)), P((3,)), "Z")


def test_coproduct_images_span_and_are_independent():
    imgs = [coproduct_phi(P((2,)), P((3,)), AlgebraElement(P((6,)), {u: 1.0})).to_dense() for u in all_units(P((6,)))]
    assert span_rank(imgs) == 36
    assert span_rank(imgs[:10]) == 10


def test_cancellation_level_two_with_padding():
    r = verify_cancellation(P((2, 2)), P((2, 2)))
    assert r.passed and r.rank == 256
    assert r.details["padding_instances"] == 16 * 4


def test_padding_identity():
    r = verify_padding(P((2, 2)), P((3, 3)), 2, 1)
    assert r.passed and r.instances == 16 * 9
    r = verify_padding(P((2, 2)), P((3, 3)), 1, 2)
    assert r.passed and r.instances == 4 * 81


def test_padding_explicit_sum():
    # E^(a)_{J',K'} (x) E^(b)_{(2),(1)} = sum_L E^(a)_{J',K'} (x) E^(b)_{(2,L),(1,L)}
    t = tensor((P((2, 2)), (1, 2), (2, 2)), (P((3,)), (2,), (1,)))
    want = TensorElement((P((2, 2)), P((3, 3))), {(((1, 2), (2, 2)), ((2, L), (1, L))): 1.0 for L in (1, 2, 3)})
    assert t.pad(1, 3) == want


# cocommutativity


def test_noncocommutative_witness():
    pair = FactorPair(P((2,)), P((3,)))
    w = cocommutativity_witness(E6_22, pair)
    assert w.component == tensor((P((2,)), (1,), (1,)), (P((3,)), (2,), (2,)))
    assert w.flipped_partner == tensor((P((2,)), (2,), (2,)), (P((3,)), (1,), (1,)))
    assert not w.equal
    assert verify_noncocommutative().passed


def test_cocommutativity_symmetric_cases():
    assert cocommutativity_witness(AlgebraElement.identity(P((6,))), FactorPair(P((2,)), P((3,)))).equal
    assert cocommutativity_witness(unit_elem(P((4,)), (1,), (1,)), FactorPair(P((2,)), P((2,)))).equal
    assert not verify_noncocommutative(unit_elem(P((4,)), (1,), (1,)), FactorPair(P((2,)), P((2,)))).passed
    with pytest.raises(ValueError):
        cocommutativity_witness(E6_22, FactorPair(P((2,)), P((2,))))


# coaction


def test_coaction_infty_examples():
    w, y = coaction_infty(InfMatrixUnit((5,), (7,)), P((2,)))
    assert (w.J, w.K) == ((3,), (4,))
    assert y == unit_elem(P((2,)), (1,), (1,))
    w, y = coaction_infty(InfMatrixUnit((1, 1), (1, 1)), P((3, 2, 2)))
    assert (w.J, w.K) == ((1, 1), (1, 1))
    assert y == unit_elem(P((3, 2)), (1, 1), (1, 1))
    with pytest.raises(ValueError):
        coaction_infty(InfMatrixUnit((1, 1), (1, 1)), P((2,)))


def test_coaction_unital_cutoff():
    # sum over d <= a*M' of phi(E_{d,d}) = (sum over d' <= M' of E_{d',d'}) (x) I
    a, Mp = P((2,)), 3
    out = {}
    for d in range(1, 2 * Mp + 1):
        w, y = coaction_infty(InfMatrixUnit((d,), (d,)), a)
        ((key, c),) = y.terms.items()
        out[(w.J, w.K, key)] = out.get((w.J, w.K, key), 0) + c
    want = {((dp,), (dp,), ((e,), (e,))): 1.0 for dp in range(1, Mp + 1) for e in (1, 2)}
    assert out == want


def _digits_oracle(j, a, b):
    # j = a b (p - 1) + b (q - 1) + r with 1 <= q <= a, 1 <= r <= b
    for p in range(1, j + 1):
        for q in range(1, a + 1):
            for r in range(1, b + 1):
                if a * b * (p - 1) + b * (q - 1) + r == j:
                    return p, q, r
    raise AssertionError


def test_coaction_worked_example():
    r = verify_coaction((5,), (7,), P((2,)), P((3,)))
    assert r.passed
    # 5 = 6*0 + 3*1 + 2 and 7 = 6*1 + 3*0 + 1
    assert _digits_oracle(5, 2, 3) == (1, 2, 2)
    assert _digits_oracle(7, 2, 3) == (2, 1, 1)
    assert r.details["lhs"] == r.details["rhs"] == "E^(inf)_{(1,),(2,)} (x) E^(2)_{2,1} (x) E^(3)_{2,1}"


def test_coaction_all_ones():
    r = verify_coaction((1, 1, 1), (1, 1, 1), P((2, 3, 2)), P((3, 3, 2)))
    assert r.passed
    assert r.details["lhs"].startswith("E^(inf)_{(1, 1, 1),(1, 1, 1)}")


def test_coaction_randomized():
    r = verify_coaction_random(1000, np.random.default_rng(11))
    assert r.passed and r.instances == 1000


@given(st.lists(st.integers(1, 60), min_size=1, max_size=3), st.data())
def test_coaction_property(J, data):
    n = len(J)
    K = data.draw(st.lists(st.integers(1, 60), min_size=n, max_size=n))
    a = data.draw(prefixes(length=n, entries=(2, 3, 4)))
    b = data.draw(prefixes(length=n, entries=(2, 3, 4)))
    assert verify_coaction(tuple(J), tuple(K), a, b).passed
