import pytest
from hypothesis import given

import oracles as O
from strategies import inverse_semigroups
from tightiso import errors
from tightiso.builders import build, bundled, chain
from tightiso.spectrum import (
    closure_in_power_set,
    filters,
    is_tight_by_covers,
    tight_filters,
    ultrafilters,
)

# tight filter counts, frozen from the brute-force oracle
TIGHT = {"brandt2": 2, "swap": 1, "sym1": 1, "sym2": 2, "sym3": 3, "chain3": 1,
         "boolean2": 2, "z2": 1, "z3": 1}


@pytest.mark.parametrize("name", sorted(TIGHT))
def test_tight_counts(name):
    S = build(name)
    mul, _, zero = O.table(S)
    assert len(O.tight_by_definition(mul, zero)) == TIGHT[name]
    assert len(tight_filters(S)) == TIGHT[name]


@pytest.mark.parametrize("name", sorted(TIGHT))
def test_generic_enumeration_matches_principal(name):
    S = build(name)
    assert {F.members for F in filters(S)} == {F.members for F in filters(S, generic=True)}
    assert {F.members for F in tight_filters(S, generic=True).tight} == {
        F.members for F in tight_filters(S).tight
    }


def test_filters_match_oracle():
    for _, S in bundled():
        mul, _, zero = O.table(S)
        assert {F.members for F in filters(S)} == set(O.all_filters(mul, zero))
        assert {U.members for U in ultrafilters(S)} == set(O.ultrafilters(mul, zero))


def test_chain_has_single_tight_filter():
    S = chain(4)
    spec = tight_filters(S)
    assert len(spec) == 1
    # the minimum nonzero idempotent generates it
    assert len(spec.tight[0]) == 3


def test_closure_in_power_set():
    pts = [frozenset({1}), frozenset({1, 2})]
    cands = [frozenset({1}), frozenset({2}), frozenset({1, 2})]
    assert closure_in_power_set(pts, cands, [1, 2]) == [frozenset({1}), frozenset({1, 2})]


def test_basic_sets():
    S = build("boolean2")
    spec = tight_filters(S)
    top = S.index("{12}")
    assert spec.basic(top) == frozenset(range(len(spec)))
    assert spec.basic(S.index("{1}")) | spec.basic(S.index("{2}")) == spec.basic(top)
    assert spec.basic2(top, [S.index("{1}")]) == spec.basic(S.index("{2}"))


def test_generic_size_limit():
    S = build("sym3")  # 8 nonzero idempotents fits
    filters(S, generic=True)
    with pytest.raises(errors.SizeLimit):
        filters(chain(14), generic=True)


@given(inverse_semigroups())
def test_tight_equals_ultra_on_finite(pair):
    S, _ = pair
    mul, _, zero = O.table(S)
    tight = {F.members for F in tight_filters(S).tight}
    assert tight == {U.members for U in ultrafilters(S)}
    assert tight == set(O.tight_by_definition(mul, zero))
    for F in filters(S):
        assert is_tight_by_covers(S, F) == (F.members in tight)
