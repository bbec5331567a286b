import pytest

from uhfbialg import bialgebra
from uhfbialg.verify import SUITES, RunConfig, run_suites, suite_coassoc, suite_kron_duality, suite_star_isomorphism
from uhfbialg.sequences import SequencePrefix

P = SequencePrefix


def test_run_config_validation():
    RunConfig()
    for bad in (dict(tolerance=0.0), dict(tolerance=1e-3), dict(level_cap=0), dict(dim_cap=0), dict(output="xml")):
        with pytest.raises(ValueError):
            RunConfig(**bad)


def test_run_suites_sorted_and_unknown():
    reports = run_suites(["gns", "coaction", "noncocommutative"], RunConfig())
    assert [r.check for r in reports] == ["coaction", "gns", "noncocommutative"]
    with pytest.raises(KeyError):
        run_suites(["nope"], RunConfig())


@pytest.mark.parametrize("name", sorted(set(SUITES) - {"state_tensor", "counit"}))
def test_each_suite_passes_at_level_cap_one(name):
    r = SUITES[name](RunConfig(level_cap=1, seed=2))
    assert r.passed, r.failures
    assert r.instances > 0


def test_single_coassoc_instance():
    r = suite_coassoc(RunConfig(), P((2,)), P((3,)), P((2,)))
    assert r.passed and r.instances == 144


def _little_endian_split(J, b, c):
    left, right = [], []
    for j, bi, ci in zip(J, b, c):
        q, r = divmod(j - 1, bi)
        left.append(r + 1)
        right.append(q + 1)
    return tuple(left), tuple(right)


def _collapsing_split(J, b, c):
    left, right = _little_endian_split(J, b, c)
    return tuple(1 for _ in left), right


def test_kron_duality_catches_wrong_index_convention(monkeypatch):
    # The opposite digit order is still an isomorphism but not the inverse of kron.
    monkeypatch.setattr(bialgebra, "split_multi", _little_endian_split)
    assert not suite_kron_duality(RunConfig(), trials=5).passed


def test_star_isomorphism_catches_non_bijective_split(monkeypatch):
    monkeypatch.setattr(bialgebra, "split_multi", _collapsing_split)
    assert not suite_star_isomorphism(RunConfig(level_cap=1)).passed
