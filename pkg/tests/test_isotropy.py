import pytest
from hypothesis import given

import oracles as O
from strategies import as_dicts, inverse_semigroups
from tightiso import errors, isotropy
from tightiso.builders import build, bundled
from tightiso.spectrum import tight_filters

# S^iso sizes, frozen from the brute-force oracle
SISO = {"brandt2": 3, "swap": 8, "sym1": 2, "sym2": 4, "sym3": 8, "chain3": 3,
        "boolean2": 4, "z2": 3, "z3": 4}


@pytest.mark.parametrize("name", sorted(SISO))
def test_siso_sizes(name):
    S = build(name)
    mul, star, zero = O.table(S)
    assert len(O.s_iso(mul, star, zero)) == SISO[name]
    assert len(isotropy.s_iso(S)) == SISO[name]


def test_swap_monoid_values():
    S = build("swap")
    sigma = S.index("sigma")
    assert isotropy.w_set(S, sigma) == frozenset({S.index("Id1"), S.index("Id123")} | {
        S.index("Id12"), S.index("Id13")})
    assert not isotropy.is_zero_disjunctive(S)
    rep = isotropy.lemma_0dis_check(S)
    assert rep.centralizer_in_siso and not rep.centralizer_equals_siso


def test_group_with_zero_is_all_iso():
    for name in ("z2", "z3"):
        S = build(name)
        assert isotropy.s_iso(S) == isotropy.centralizer(S) == frozenset(range(len(S)))


def test_weakly_fixed_preconditions():
    S = build("brandt2")
    a = S.index("a")
    with pytest.raises(errors.PreconditionE):
        isotropy.is_weakly_fixed(S, a, a)
    with pytest.raises(errors.PreconditionE):
        isotropy.is_weakly_fixed(S, a, S.index("aa*"))


def test_brandt_w_sets():
    S = build("brandt2")
    a = S.index("a")
    assert isotropy.w_set(S, a) == frozenset()
    assert isotropy.z_region(S, a) == frozenset()


def test_condition_h_witnesses():
    for _, S in bundled():
        v = isotropy.condition_h(S)
        assert v
        for s, C in v.witness.items():
            J = isotropy.j_set(S, s)
            assert C <= J


def test_report_is_consistent():
    S = build("sym3")
    rep = isotropy.isotropy_report(S)
    assert rep.s_iso == isotropy.s_iso(S)
    js = rep.to_json()
    assert sorted(js["s_iso"]) == sorted(S.names(rep.s_iso))


@given(inverse_semigroups())
def test_siso_agrees_with_oracles(pair):
    S, maps = pair
    mul, star, zero = O.table(S)
    siso = isotropy.s_iso(S)
    assert siso == O.s_iso(mul, star, zero)
    # partial-map route: same set, computed on dicts
    dmaps = as_dicts(maps)
    by_maps = {tuple(sorted(f.items())) for f in O.pmap_s_iso(dmaps)}
    assert {tuple(sorted(dmaps[s].items())) for s in siso} == by_maps
    assert isotropy.centralizer(S) == O.centralizer(mul)


@given(inverse_semigroups())
def test_siso_is_inverse_subsemigroup_containing_E(pair):
    S, _ = pair
    siso = isotropy.s_iso(S)
    assert set(S.idempotents) <= siso
    assert isotropy.closure_witness(S, siso) is None


@given(inverse_semigroups())
def test_zero_disjunctive_dichotomy(pair):
    S, _ = pair
    Z, siso = isotropy.centralizer(S), isotropy.s_iso(S)
    assert Z <= siso
    if isotropy.is_zero_disjunctive(S):
        assert Z == siso


@given(inverse_semigroups())
def test_z_region_independent_of_cover(pair):
    S, _ = pair
    spec = tight_filters(S)
    for s in range(len(S)):
        W = isotropy.w_set(S, s)
        regions = {isotropy.union_of_basic(spec, C) for C in isotropy.covers_of(S, W)} if W else {frozenset()}
        assert regions == {isotropy.z_region(S, s, spec)}
