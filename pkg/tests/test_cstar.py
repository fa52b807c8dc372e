import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from strategies import inverse_semigroups
from tightiso import cstar, errors, germs
from tightiso.builders import build, bundled


def brute_convolve(G, f, g):
    """(f * g)(k) = sum over i j = k of f(i) g(j), by a double loop."""
    out = [0j] * len(G)
    for i in range(len(G)):
        for j in range(len(G)):
            k = int(G.mul[i, j])
            if k >= 0:
                out[k] += f[i] * g[j]
    return np.array(out)


def expected_blocks(G):
    """Block dimensions of C*(G) for abelian isotropy: each orbit O with
    isotropy of order k gives k blocks M_|O|.
    """
    dims = []
    for orb in G.orbits:
        u = orb[0]
        k = sum(1 for g in G.arrows_from(u) if G.rng[g] == u)
        dims += [len(orb) ** 2] * k
    return sorted(dims)


def group_of(name):
    S = build(name)
    return S, germs.tight_groupoid(S)


def test_brandt_generators():
    S, G = group_of("brandt2")
    a = S.index("a")
    Ta, Tas = cstar.generator(G, a), cstar.generator(G, int(S.star[a]))
    assert np.array_equal(cstar.adjoint(G, Ta), Tas)
    assert np.array_equal(cstar.convolve(G, Ta, Tas), cstar.generator(G, S.index("aa*")))
    assert cstar.reduced_norm(G, Ta) == pytest.approx(1.0)


def test_z2_norm():
    S, G = group_of("z2")
    f = cstar.generator(G, S.index("s")) - cstar.generator(G, S.index("1"))
    assert cstar.reduced_norm(G, f) == pytest.approx(2.0)


@given(inverse_semigroups(), st.integers(0, 2**32 - 1))
def test_generators_form_a_representation(pair, seed):
    S, _ = pair
    G = germs.tight_groupoid(S)
    rng = np.random.default_rng(seed)
    s, t = (int(v) for v in rng.integers(len(S), size=2))
    if S.zero in (s, t) or S.m(s, t) == S.zero:
        return
    Ts, Tt = cstar.generator(G, s), cstar.generator(G, t)
    assert np.array_equal(cstar.convolve(G, Ts, Tt), cstar.generator(G, S.m(s, t)))
    assert np.array_equal(cstar.adjoint(G, Ts), cstar.generator(G, int(S.star[s])))


@given(inverse_semigroups(), st.integers(0, 2**32 - 1))
def test_convolution_against_brute_force(pair, seed):
    S, _ = pair
    G = germs.tight_groupoid(S)
    rng = np.random.default_rng(seed)
    f, g = cstar.random_function(G, rng), cstar.random_function(G, rng)
    assert np.allclose(cstar.convolve(G, f, g), brute_convolve(G, f, g))
    # the faithful representation is multiplicative and *-preserving
    pf, pg = cstar.full_rep(G, f), cstar.full_rep(G, g)
    assert np.allclose(cstar.full_rep(G, cstar.convolve(G, f, g)), pf @ pg)
    assert np.allclose(cstar.full_rep(G, cstar.adjoint(G, f)), pf.conj().T)


@pytest.mark.parametrize("name", [n for n, _ in bundled()])
def test_regular_reps(name):
    _, G = group_of(name)
    assert cstar.check_regular_reps(G, np.random.default_rng(0))


def test_expectation_is_restriction_and_idempotent():
    S, G = group_of("z3")
    d = germs.isotropy_decomposition(S, G)
    f = cstar.random_function(G, np.random.default_rng(1))
    Ef = cstar.expectation(G, d.siso_part, f)
    assert np.allclose(cstar.expectation(G, d.siso_part, Ef), Ef)
    # everything is isotropy in a group: E is the identity
    assert np.allclose(Ef, f)


def test_expectation_requires_subgroupoid():
    S, G = group_of("brandt2")
    non_unit = [g for g in range(len(G)) if g not in G.unit_set]
    with pytest.raises(errors.NotSubgroupoid):
        cstar.expectation(G, non_unit[:1], cstar.zeros(G))


@pytest.mark.parametrize("name", [n for n, _ in bundled()])
def test_expectation_formula_and_faithfulness(name):
    S, G = group_of(name)
    d = germs.isotropy_decomposition(S, G)
    assert cstar.expectation_formula(S, G, d.siso_part)
    assert cstar.faithfulness_check(G, d.siso_part, np.random.default_rng(3))
    assert cstar.expectation_properties(G, d.siso_part, np.random.default_rng(4))


def test_expectation_formula_detects_wrong_subalgebra():
    # restricting to the units instead of the S^iso part breaks the formula on Z/2
    S, G = group_of("z2")
    assert not cstar.expectation_formula(S, G, sorted(G.unit_set))


@pytest.mark.parametrize("name", [n for n, _ in bundled()])
def test_block_structure(name):
    S, G = group_of(name)
    rep = cstar.ideal_meets_subalgebra(G, S)
    assert [b["dimension"] for b in rep.blocks] == expected_blocks(G)
    assert len(cstar.center(G)) == len(rep.blocks)
    assert rep.ok


def test_block_values():
    rep = cstar.ideal_meets_subalgebra(group_of("brandt2")[1])
    assert rep.blocks == [{"dimension": 4, "subalgebra_intersection_dim": 2}]
    assert rep.subalgebra_dim == 2
    rep = cstar.ideal_meets_subalgebra(group_of("z3")[1])
    assert [b["subalgebra_intersection_dim"] for b in rep.blocks] == [1, 1, 1]


def test_central_projections_sum_to_identity():
    _, G = group_of("sym3")
    ps = cstar.minimal_central_projections(G)
    one = cstar.unit_indicator(G).astype(complex)
    assert np.allclose(sum(ps), one)
    for p in ps:
        assert np.allclose(cstar.convolve(G, p, p), p)


def test_join():
    p, q = np.diag([1.0, 0, 0]), np.diag([0, 1.0, 0])
    assert np.allclose(cstar.join([p, q], 3), np.diag([1.0, 1, 0]))
    assert np.allclose(cstar.join([], 3), 0)


@pytest.mark.parametrize("name", [n for n, _ in bundled()])
def test_canonical_representation_is_tight(name):
    S, G = group_of(name)
    assert cstar.check_tight_representation(S, cstar.canonical_representation(G))


def test_non_tight_representation_has_witness():
    S = build("boolean2")
    top = S.index("{12}")
    rho = [np.eye(1) if s == top else np.zeros((1, 1)) for s in range(len(S))]
    v = cstar.check_tight_representation(S, rho)
    assert not v
    e, C = v.witness
    assert e == top and set(C) == {S.index("{1}"), S.index("{2}")}


def test_not_a_representation():
    S = build("boolean2")
    rho = [np.eye(1)] * len(S)  # zero must go to zero
    rho[S.zero] = np.zeros((1, 1))
    with pytest.raises(errors.NotARepresentation):
        cstar.check_tight_representation(S, rho)
    with pytest.raises(errors.NotARepresentation):
        cstar.check_tight_representation(S, rho[:-1])


def test_ck_truncation_fails_with_witness():
    g = cstar.DirectedGraph(("v",), {"e1": ("v", "v"), "e2": ("v", "v")})
    Smat, P, paths = cstar.truncated_fock_family(g, 2)
    rep = cstar.check_ck_family(g, Smat, P)
    assert not rep.ok
    assert rep.relations["CK2"] == (False, ("v", 0))
    assert rep.relations["projections"][0] and rep.relations["orthogonal"][0]


def test_ck_longer_truncation_still_fails():
    g = cstar.DirectedGraph(("v",), {"e1": ("v", "v"), "e2": ("v", "v")})
    Smat, P, paths = cstar.truncated_fock_family(g, 7)
    assert len(paths) == 7 and paths[3] == ("e1", "e1")
    assert not cstar.check_ck_family(g, Smat, P).relations["CK2"][0]


def test_ck_orthogonality_failure():
    g = cstar.DirectedGraph(("v", "w"), {})
    rep = cstar.check_ck_family(g, {}, {"v": np.eye(1), "w": np.eye(1)})
    assert rep.relations["orthogonal"] == (False, ("v", "w"))


def test_ck_sources_skip_ck2():
    # no edges into v: only the projection relations apply
    g = cstar.DirectedGraph(("v",), {})
    assert cstar.check_ck_family(g, {}, {"v": np.eye(2)})


def test_trivial_semigroup_gives_zero_algebra():
    from tightiso.report import analysis_report
    from tightiso.semigroup import validate

    S = validate([[0]])
    G = germs.tight_groupoid(S)
    assert len(G) == 0 and cstar.full_rep(G, cstar.zeros(G)).shape == (0, 0)
    assert cstar.reduced_norm(G, cstar.zeros(G)) == 0.0
    rep = analysis_report(S, "trivial")
    assert rep["cstar"]["blocks"] == [] and rep["cstar"]["uniqueness"]
    assert all(r["status"] == "pass" for r in rep["suites"])
