import random
from math import comb

import pytest

from sigmadim import groups, numpoly
from sigmadim.diffterm import ADDITIVE, GroupDescriptor, SliceVector
from sigmadim.errors import AxiomViolation, FamilyViolation, InputError
from sigmadim.exactla import echelonize, restrict_to_order, subspace_equal
from sigmadim.groups import Delay, Explicit, GeneralizedGroupSpec

from conftest import free_group, random_corpus, random_explicit_spec, trivial_group

GROWTH_DIMS = [1, 3, 6, 10, 14, 18, 22, 26, 30]


def test_zariski_dims_examples(growth, trivial):
    assert groups.zariski_dims(growth, 6) == GROWTH_DIMS[:7]
    assert groups.zariski_dims(free_group(2, 1), 6) == [1, 3, 6, 10, 15, 21, 28]
    assert groups.zariski_dims(trivial, 6) == [0] * 7


def test_family_violation():
    bad = GroupDescriptor(ADDITIVE, 2, ["x"], [SliceVector.zero(2)])
    with pytest.raises(FamilyViolation):
        groups.zariski_dims(bad, 3)


def test_dimension_polynomial_examples(growth, trivial):
    p, thr = groups.dimension_polynomial(growth)
    assert p.to_text() == "4t - 2" and thr <= 4
    for n in (1, 2, 3):
        p, thr = groups.dimension_polynomial(free_group(n, 1))
        assert p == numpoly.binomial_basis(n) and thr == 0
    assert groups.dimension_polynomial(trivial)[0].is_zero


def test_invariants_examples(growth, trivial):
    assert groups.group_invariants(growth) == (1, 4, 0)
    for n in (1, 2, 3):
        assert groups.group_invariants(free_group(n, 1)) == (n, 1, 1)
    assert groups.group_invariants(trivial) == (0, 0, 0)


def test_stabilization_examples(growth, trivial):
    st = groups.stabilization_index(growth)
    assert (st.m, st.bound) == (4, 4) and st.verified
    assert groups.stabilization_index(trivial).m == 0
    assert groups.stabilization_index(free_group(2, 1)).m == 0


def test_certificate_examples(growth, trivial):
    cert = groups.finite_generation_certificate(growth)
    assert cert.level == 4 and cert.generators == tuple(growth.generators)
    assert [g.to_text(["x"]) for g in groups.finite_generation_certificate(trivial).generators] == ["x"]
    v = SliceVector({(0, (0, 1)): 1, (0, (1, 0)): -2}, n=2)
    redundant = GroupDescriptor(ADDITIVE, 2, ["x"], [v, v.shift((1, 0))])
    assert len(groups.finite_generation_certificate(redundant).generators) == 1


def test_extend_ideal_slice(growth):
    z4 = groups.zariski_slices(growth, 4)[4]
    assert groups.extend_ideal_slice(z4, 4) == z4
    assert groups.extend_ideal_slice(echelonize([], n=2), 3).dim == 0
    up = groups.extend_ideal_slice(z4, 5)
    assert up.ambient_level == 5
    assert restrict_to_order(up, 4).rows == z4.rows
    with pytest.raises(InputError):
        groups.extend_ideal_slice(z4, 3)


def test_generalized_examples(growth):
    dims, report = groups.generalized_dims(GeneralizedGroupSpec(growth, Delay(1)), 6)
    assert dims == [1, 3, 6, 10, 15, 20, 25] and report.ok
    assert groups.generalized_dims(GeneralizedGroupSpec(growth), 8)[0] == GROWTH_DIMS


def lagging_trivial_chain():
    desc = trivial_group()
    sched = Explicit(((), ((0, (1, 0)), (0, (0, 0)))), 1)
    return GeneralizedGroupSpec(desc, sched)


def test_lagging_chain():
    spec = lagging_trivial_chain()
    assert groups.generalized_dims(spec, 6)[0] == [1] * 7
    assert groups.zariski_indicators(spec, 6) == [i + 1 for i in range(7)]


def test_explicit_validation():
    desc = trivial_group()
    with pytest.raises(AxiomViolation) as e:
        groups.chain_slices(GeneralizedGroupSpec(desc, Explicit((((0, (0, 0)),), ()), 1)), 3)
    assert e.value.level == 1
    with pytest.raises(AxiomViolation):
        groups.chain_slices(GeneralizedGroupSpec(desc, Explicit((((0, (1, 0)),),), 0)), 3)
    with pytest.raises(InputError):
        Explicit(((), ()), 3)


def test_indicator_examples(growth, trivial):
    ind = groups.zariski_indicators(GeneralizedGroupSpec(growth, Delay(1)), 10)
    assert ind == [0, 1, 2, 3] + [i + 1 for i in range(4, 11)]
    assert groups.zariski_indicators(GeneralizedGroupSpec(growth), 8) == list(range(9))
    assert groups.zariski_indicators(GeneralizedGroupSpec(trivial, Delay(2)), 6) == [i + 2 for i in range(7)]


def test_indicator_unresolved_outcome():
    spec = lagging_trivial_chain()
    with pytest.warns(UserWarning, match="unresolved"):
        ind = groups.zariski_indicators(spec, 3, horizon=3)
    assert ind[3] is None
    with pytest.raises(Exception, match="unresolved"):
        groups.zariski_indicators(spec, 3, horizon=3, strict=True)


def test_projection_examples(growth):
    spec = GeneralizedGroupSpec(growth, Delay(1))
    pr = groups.projections(spec, 10)
    z = groups.zariski_slices(growth, 10)
    assert all(subspace_equal(a, b) for a, b in zip(pr.slices, z))
    assert list(pr.indicators) == list(range(11)) and pr.lemma_ok
    pz = groups.projections(GeneralizedGroupSpec(growth), 6)
    assert all(subspace_equal(a, b) for a, b in zip(pz.slices, z))
    # the projected chain is itself a valid explicit spec
    assert [b.dim for b in groups.chain_slices(pr.spec, 10)] == [b.dim for b in pr.slices]


def test_kernel_examples(growth, trivial):
    assert groups.kernels(GeneralizedGroupSpec(growth), 8).dims == (1, 2, 3, 4, 4, 4, 4, 4, 4)
    assert groups.kernels(GeneralizedGroupSpec(free_group(3, 1)), 5).dims == tuple(comb(i + 2, 2) for i in range(6))
    assert groups.kernels(GeneralizedGroupSpec(trivial), 5).dims == (0,) * 6


def test_twisted_examples(growth):
    tw = groups.twisted_kernels(GeneralizedGroupSpec(growth), 10)
    slices = groups.chain_slices(tw.spec, 10)
    x = lambda a: SliceVector({(0, (a,)): 1}, n=1)
    for i in range(4, 11):
        want = echelonize([x(a) for a in range(i - 3)], ambient_level=i)
        assert subspace_equal(slices[i], want)
    assert subspace_equal(slices[5], echelonize([x(0), x(1)]))
    assert tw.dims == tw.kernel_dims and tw.axioms.ok
    free = groups.twisted_kernels(GeneralizedGroupSpec(free_group(2, 1)), 6)
    assert free.dims == tuple(i + 1 for i in range(7))
    with pytest.raises(InputError):
        groups.twisted_kernels(GeneralizedGroupSpec(free_group(1, 1)), 4)


def test_closure_report(growth):
    r = groups.closure_report(growth, 8)
    assert r.dims == tuple(GROWTH_DIMS) and r.stabilization_index == 4 and r.guaranteed_bound == 4
    assert r.invariants == (1, 4, 0)


def test_kernel_polynomial(growth):
    p, start = groups.kernel_polynomial(growth)
    assert p == numpoly.NumericalPolynomial((4,))
    ker = groups.kernels(GeneralizedGroupSpec(growth), 10).dims
    assert all(numpoly.evaluate(p, i) == ker[i] for i in range(start, 11))


# corpus properties ---------------------------------------------------------

CORPUS = random_corpus(seed=99, count=30)
LEVELS = 8


@pytest.mark.parametrize("k", range(len(CORPUS)))
def test_corpus_properties(k):
    desc = CORPUS[k]
    n, s = desc.n, desc.s
    spec = GeneralizedGroupSpec(desc)
    dims = groups.zariski_dims(desc, LEVELS)
    assert groups.generalized_dims(spec, LEVELS)[0] == dims
    assert all(d <= s * comb(i + n, n) for i, d in enumerate(dims))
    ker = groups.kernels(spec, LEVELS).dims
    assert ker[0] == dims[0]
    assert all(dims[i] - dims[i - 1] == ker[i] for i in range(1, LEVELS + 1))
    p, thr = groups.dimension_polynomial(desc)
    assert p.degree <= n
    assert all(numpoly.evaluate(p, i) == dims[i] for i in range(thr, LEVELS + 1))
    kp, kstart = groups.kernel_polynomial(desc)
    assert kp.degree <= n - 1
    if n >= 2:
        tw = groups.twisted_kernels(spec, LEVELS)
        assert tw.dims == ker and tw.axioms.ok
    st = groups.stabilization_index(desc)
    slices = groups.zariski_slices(desc, st.bound + 4)
    for i in range(st.m, st.bound + 4):
        assert subspace_equal(groups.generated_next(slices[i]), slices[i + 1])
    groups.finite_generation_certificate(desc)


EXPLICIT = [random_explicit_spec(random.Random(1000 + k)) for k in range(40)]


@pytest.mark.parametrize("k", range(len(EXPLICIT)))
def test_random_explicit_chains(k):
    spec = EXPLICIT[k]
    dims, report = groups.generalized_dims(spec, 6)
    assert report.ok
    pr = groups.projections(spec, 6, strict=True)
    for i, (f, j) in enumerate(zip(pr.indicators, pr.base_indicators)):
        assert j >= i and f >= i
        if j > i:
            assert f <= j - 1
    assert pr.lemma_ok
    # once the indicator catches up at the stabilization index, the chain is the Zariski chain
    st = groups.generalized_stabilization(spec)
    j = groups.zariski_indicators(spec, st.m + 3, strict=True)
    if j[st.m] == st.m:
        z = groups.zariski_slices(groups.closure_descriptor(spec), st.m + 3)
        ch = groups.chain_slices(spec, st.m + 3)
        for i in range(st.m, st.m + 4):
            assert subspace_equal(z[i], ch[i])
    if spec.n >= 2:
        tw = groups.twisted_kernels(spec, 6)
        assert tw.dims == tw.kernel_dims


def test_delay_schedule_bound():
    for desc in CORPUS[:10]:
        for d in (0, 1, 2):
            ind = groups.zariski_indicators(GeneralizedGroupSpec(desc, Delay(d)), 5, strict=True)
            assert all(i <= j <= i + d for i, j in enumerate(ind))
