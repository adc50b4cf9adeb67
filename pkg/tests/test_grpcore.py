"""Chains, orbits, stabilizers and residuals, cross-checked against sympy."""

import numpy as np
import pytest
from sympy.combinatorics import Permutation, PermutationGroup

from grpfact import gf, grpcore
from grpfact.constructors import classical_generators, stabilizer_subgroup
from grpfact.grpcore import (
    CertificationError,
    GroupSpec,
    StabChain,
    orbit,
    orbit_with_transporters,
    product_membership,
    shared_domain,
    solvable_residual,
    stabilizer_generators,
    t_compose,
    transporter,
)
from grpfact.actions import Action
from grpfact.linalg import (
    VECTOR,
    GroupElement,
    Mat,
    canonical_point,
)


@pytest.fixture(scope="module")
def sl32():
    return classical_generators("SL", 3, 2)


def test_chain_orders_match_formulas(sl32):
    assert sl32.order() == 168
    assert classical_generators("Sp", 4, 2).order() == 720


def test_a6_on_six_points_oracle():
    # an independent sympy cross-check of the chain order machinery:
    # the permutation images of our SL_2(9) generators on the 10 projective
    # points generate a group whose order sympy must agree on
    from grpfact.sporadic import psl2_9

    Z = psl2_9()
    chain = Z.chain()
    assert chain.order() == 360
    dom = chain.domain
    perms = [Permutation(dom.perm_of(g).tolist()) for g in Z.generators]
    assert PermutationGroup(perms).order() == 360


def test_chain_base_reorder_invariance(sl32):
    dom = shared_domain(VECTOR, sl32.spec, 3)
    c1 = StabChain.build(dom, sl32.generators, base_hint=[0, 1], known_order=168)
    c2 = StabChain.build(dom, sl32.generators, base_hint=[5, 2], known_order=168)
    assert c1.order() == c2.order() == 168


def test_contains_generators_and_identity(sl32):
    chain = sl32.chain()
    for g in sl32.generators:
        assert chain.contains(g)
    assert chain.contains(sl32.identity())


def test_contains_rejects_determinant_obstruction():
    g = classical_generators("SL", 2, 4)
    spec = g.spec
    lam = spec.primitive_elem
    diag = GroupElement(Mat(spec, [[lam, 0], [0, 1]]))
    assert not g.chain().contains(diag)


def test_orbit_stabilizer_invariant(sl32):
    pt = canonical_point(VECTOR, (1, 0, 0))
    orb = orbit(sl32, pt)
    stab = stabilizer_generators(sl32, pt)
    assert orb.size * stab.order() == sl32.order()
    assert orb.size == 7


def test_vector_stabilizer_fixes_its_point():
    K = stabilizer_subgroup("vector", 3, 2)
    pt = canonical_point(VECTOR, (1, 0, 0))
    orb = orbit(K, pt)
    assert orb.size == 1


def test_stabilizer_orders(sl32):
    # |stab| = |G| / |orbit| across several points
    for coords in [(1, 0, 0), (1, 1, 0), (1, 1, 1)]:
        stab = stabilizer_generators(sl32, canonical_point(VECTOR, coords))
        assert stab.order() == 24


def test_blown_sl24_stabilizer_structure():
    # inside SL_4(2) the blown SL_2(4) has vector stabilizer 2^2, elementary abelian
    from grpfact.constructors import ext_subgroup
    from grpfact.grpcore import element_order_perm

    H = ext_subgroup("SL", 2, 2, 2)
    stab = stabilizer_generators(H, canonical_point(VECTOR, (1, 0, 0, 0)))
    assert stab.order() == 4
    spectrum = {element_order_perm(t.perm) for t in stab.chain().elements()}
    assert spectrum == {1, 2}


def test_solvable_residual_perfect_group(sl32):
    res = solvable_residual(sl32)
    assert res.order() == 168


def test_solvable_residual_sigma_l24_vs_sympy():
    from grpfact.constructors import ext_subgroup

    H = ext_subgroup("SL", 2, 2, 2, "psi")
    assert H.order() == 120
    res = solvable_residual(H)
    assert res.order() == 60
    # oracle: the same derived series on the degree-15 permutation image
    dom = shared_domain(VECTOR, H.spec, 4)
    perms = [Permutation(dom.perm_of(g).tolist()) for g in H.generators]
    G = PermutationGroup(perms)
    series = G.derived_series()
    assert series[0].order() == 120
    assert series[-1].order() == 60
    assert series[-1].is_perfect


def test_solvable_residual_abelian_group():
    spec = gf.make_field(2, 1)
    t = GroupElement(Mat(spec, [[1, 1], [0, 1]]))
    G = GroupSpec("unitriangular", 2, spec, [t], claimed_order=2)
    assert solvable_residual(G).order() == 1


def test_residual_idempotent_and_inside_derived():
    from grpfact.constructors import ext_subgroup
    from grpfact.grpcore import derived_subgroup, same_subgroup

    H = ext_subgroup("SL", 2, 2, 2, "psi")
    der = derived_subgroup(H)
    res = solvable_residual(H)
    assert all(der.contains(g) for g in res.generators)
    assert same_subgroup(solvable_residual(res), res)


def test_product_membership_matches_brute_force():
    # SL_2(2) with H a subgroup and K = stabilizer: HK as an explicit set
    G = classical_generators("SL", 2, 2)
    spec = G.spec
    w = GroupElement(Mat(spec, [[0, 1], [1, 0]]))
    H = GroupSpec("swap", 2, spec, [w], claimed_order=2)
    omega = canonical_point(VECTOR, (1, 0))
    action = Action(VECTOR, spec, 2)
    h_orbit = orbit(H, omega)
    els = list(G.chain().elements())
    k_els = [t for t in els if action.point_key(action.apply_point(t.elem, omega)) == action.point_key(omega)]
    hk = set()
    h_els = list(H.chain().elements())
    for h in h_els:
        for k in k_els:
            hk.add(t_compose(h, k).perm.tobytes())
    for t in els:
        expected = t.perm.tobytes() in hk
        assert product_membership(h_orbit, action, t.elem, omega) == expected
    assert product_membership(h_orbit, action, G.identity(), omega)
    assert product_membership(h_orbit, action, w, omega)


def test_transporters_transport():
    G = classical_generators("SL", 3, 2)
    pt = canonical_point(VECTOR, (0, 1, 0))
    action = Action(VECTOR, G.spec, 3)
    orb = orbit_with_transporters(G.generators, pt, action)
    for key in map(int, orb.keys):
        u = transporter(orb, G.generators, key)
        assert action.point_key(action.apply_point(u, pt)) == key


def test_known_order_build_rejects_wrong_claims():
    G = classical_generators("SL", 2, 2)
    dom = shared_domain(VECTOR, G.spec, 2)
    with pytest.raises(CertificationError):
        StabChain.build(dom, G.generators, known_order=12, max_stall=50, name="bad")


def test_post_verify_rejects_supergroup_masquerade():
    # claiming a proper divisor of the true order slips past the orbit
    # product; the deterministic verification pass must catch it
    G = classical_generators("SL", 3, 2)  # true order 168
    dom = shared_domain(VECTOR, G.spec, 3)
    try:
        chain = StabChain.build(dom, G.generators, known_order=24,
                                max_stall=80, name="masquerade", post_verify=True)
    except CertificationError:
        return  # either failure mode is a correct rejection
    pytest.fail(f"order-24 claim accepted for a group of order {chain.order()}")


def test_orbit_budget_error():
    G = classical_generators("SL", 4, 2)
    with pytest.raises(grpcore.OrbitBudgetError):
        orbit(G, canonical_point(VECTOR, (1, 0, 0, 0)), max_points=4)


def test_random_elements_are_members():
    G = classical_generators("Sp", 4, 3)
    chain = G.chain()
    rng = np.random.default_rng(5)
    for _ in range(10):
        t = chain.random_element(rng)
        assert chain.contains_tracked(t)
        assert np.array_equal(chain.domain.perm_of(t.elem), t.perm)


def test_elements_enumeration_complete():
    G = classical_generators("SL", 2, 4)
    els = list(G.chain().elements())
    assert len(els) == 60
    assert len({t.perm.tobytes() for t in els}) == 60
