import pytest

from sigmadim import numpoly, oracle
from sigmadim.errors import FitError, InputError, OracleInconclusive
from sigmadim.groebner import buchberger, hilbert_function
from sigmadim.monoid import count_shifts

from conftest import free_group, random_corpus


def test_examples(growth):
    g = growth.generators
    assert oracle.brute_slice_rank(g, 4) == 1
    assert oracle.brute_slice_rank(g, 3) == 0
    assert oracle.brute_slice_rank([], 6) == 0


def test_dim_poly(growth):
    assert oracle.brute_dim_poly(growth, (4, 9)).to_text() == "4t - 2"
    for n, s in [(1, 1), (2, 1), (2, 2)]:
        p = oracle.brute_dim_poly(free_group(n, s), (0, n + 2))
        assert p == numpoly.binomial_basis(n).scale(s)
    with pytest.raises(FitError, match="not eventually polynomial at this window"):
        oracle.brute_dim_poly(growth, (0, 5))
    # the true threshold is 2, so a window from 2 already fits
    assert oracle.brute_dim_poly(growth, (2, 5)).to_text() == "4t - 2"
    with pytest.raises(InputError):
        oracle.brute_dim_poly(growth, (4, 6))


def test_config():
    with pytest.raises(InputError):
        oracle.OracleConfig(window=1)


def test_ceiling(growth):
    with pytest.raises(OracleInconclusive, match="oracle inconclusive"):
        oracle.brute_slice_rank(growth.generators, 2, oracle.OracleConfig(window=50))


def test_escalation_monotone(growth):
    hist = []
    oracle.escalate(growth.generators, 6, oracle.OracleConfig(shift_bound_start=0), history=hist)
    for a, b in zip(hist, hist[1:]):
        assert all(x <= y for x, y in zip(a, b))


CORPUS = random_corpus()


@pytest.mark.parametrize("k", range(len(CORPUS)))
def test_oracle_equivalence(k):
    desc = CORPUS[k]
    gb = buchberger(desc.generators, n=desc.n)
    ranks = oracle.brute_slice_ranks(desc.generators, 8, n=desc.n)
    for i, r in enumerate(ranks):
        assert r <= desc.s * count_shifts(desc.n, i)
        assert r == hilbert_function(gb.staircase, desc.n, desc.s, i)
