from fractions import Fraction

import pytest

from repident import catalog
from repident.exactnum import Cyc, cyc_root_of_unity
from repident.matrices import Mat
from repident.replab import (
    Rep,
    RepError,
    eig_maximal,
    eig_union,
    fixed_point_dimension,
    galois_conjugate_character,
    induced_rep,
    inner_product,
    molien_coefficients,
    restrict_rep,
    sigma_value,
    spectrum,
    spectrum_key,
    subgroup_group,
)


@pytest.fixture(scope="module")
def s4():
    return catalog.symmetric(4)


@pytest.fixture(scope="module")
def s3_std():
    return catalog.symmetric(3).rep("std")


def test_table_values(s4):
    """Frozen character table of the order-24 symmetric group."""
    group = s4.group
    cc = group.conjugacy_classes

    def rep_of(size, order):
        for i in range(len(cc)):
            if cc.sizes[i] == size and group.element_order(cc.representatives[i]) == order:
                return cc.representatives[i]
        raise AssertionError

    cols = [rep_of(1, 1), rep_of(3, 2), rep_of(6, 2), rep_of(8, 3), rep_of(6, 4)]
    expected = {
        "rho1": (1, 1, 1, 1, 1),
        "rho2": (1, 1, -1, 1, -1),
        "rho3": (2, 2, 0, -1, 0),
        "rho4": (3, -1, -1, 0, 1),
        "rho5": (3, -1, 1, 0, -1),
    }
    for name, values in expected.items():
        chi = s4.rep(name).character
        assert tuple(chi.value(g) for g in cols) == values
        assert chi.is_class_function()


def test_inner_products(s4, s3_std):
    triv = catalog.symmetric(3).rep("triv")
    assert inner_product(triv.character, triv.character) == 1
    assert inner_product(s3_std.character, s3_std.character) == 1
    assert inner_product(s4.rep("rho4").character, s4.rep("rho5").character).is_zero()


def test_predicates(s4, s3_std):
    # regular rep of Z2 is not irreducible
    z2 = catalog.cyclic(2).group
    one, zero = Cyc.one(), Cyc.zero()
    regular = Rep(z2, [Mat.identity(2), Mat(((zero, one), (one, zero)))], name="Z2:reg")
    assert not regular.is_irreducible()
    assert regular.is_unitary()
    a5_d4 = catalog.alternating(5).rep("dim4")
    assert a5_d4.is_irreducible() and a5_d4.is_faithful()
    assert s3_std.is_unitary()
    assert not s4.rep("rho3").is_faithful()


def test_adams_partition(s4):
    rho4 = s4.rep("rho4")
    blocks = rho4.adams_partition
    # the two classes sharing power traces merge: r < s
    assert sorted(len(b) for b in blocks) == [1, 6, 8, 9]
    triv = s4.rep("rho1")
    assert len(triv.adams_partition) == 1
    # abelian one-dim: blocks are level sets of the character powers
    z6 = catalog.cyclic(6).rep("chi1")
    assert len(z6.adams_partition) == 6


def test_sigma_values(s4, s3_std):
    group = s4.group
    rho5 = s4.rep("rho5")
    for g in range(group.order):
        assert sigma_value(rho5, g, 1) == rho5.character.value(g)
    # n = 2: sigma_2 = det via the half-difference formula
    for g in range(6):
        tr = s3_std.character.value(g)
        tr2 = s3_std.character.value(s3_std.group.power(g, 2))
        half = Cyc.from_rational(Fraction(1, 2))
        assert sigma_value(s3_std, g, 2) == (tr * tr - tr2) * half
        assert sigma_value(s3_std, g, 2) == s3_std.images[g].det()
    # permutation-derived rep: top invariant is the sign
    from repident.catalog import _perm_sign

    std4 = catalog.symmetric(5).rep("std4")
    for g in (1, 7, 31):
        assert sigma_value(std4, g, 4) == _perm_sign(catalog.symmetric(5).elements[g])


def test_sigma_multiplicative_on_commuting(s4):
    rho5 = s4.rep("rho5")
    group = s4.group
    n = rho5.dim
    for g in range(group.order):
        for h in group.centralizer(g):
            gh = group.table[g][h]
            assert sigma_value(rho5, gh, n) == sigma_value(rho5, g, n) * sigma_value(rho5, h, n)
    for g in range(group.order):
        v = sigma_value(rho5, g, n)
        assert abs(abs(v.to_complex()) - 1) < 1e-9


def test_spectrum(s4):
    rho5 = s4.rep("rho5")
    group = s4.group
    assert spectrum(rho5, 0) == [(1, 0, 3)]
    four_cycle = next(g for g in range(24) if group.element_order(g) == 4)
    # natural-model eigenvalues of a 4-cycle minus the trivial line: i, -1, -i
    assert sorted(spectrum(rho5, four_cycle)) == [(4, 1, 1), (4, 2, 1), (4, 3, 1)]
    # order-2, trace 0, dim 2 forces {1, -1}
    z2 = catalog.cyclic(2).group
    one, zero = Cyc.one(), Cyc.zero()
    swap = Rep(z2, [Mat.identity(2), Mat(((zero, one), (one, zero)))], name="swap")
    assert sorted(spectrum(swap, 1)) == [(2, 0, 1), (2, 1, 1)]
    # multiplicities sum to dim and recompose the trace
    for name in ("rho3", "rho4", "rho5"):
        rep = s4.rep(name)
        for g in range(24):
            sp = spectrum(rep, g)
            assert sum(mult for _, _, mult in sp) == rep.dim
            acc = None
            for d, k, mult in sp:
                term = cyc_root_of_unity(d, k) * Fraction(mult)
                acc = term if acc is None else acc + term
            assert acc == rep.character.value(g)


def test_spectrum_rejects_non_representation():
    z2 = catalog.cyclic(2).group
    one, zero = Cyc.one(), Cyc.zero()
    two = Cyc.from_rational(2)
    bogus = Rep(z2, [Mat.identity(1), Mat(((one,),))], name="bogus", validate=False)
    # images fine; now break the character by hand
    bogus.character.values[1] = two
    with pytest.raises(RepError):
        spectrum(bogus, 1)


def test_eig_sets(s4):
    triv = s4.rep("rho1")
    assert eig_union(triv) == (0,)
    tau = catalog.alternating(4).rep("tau")
    mx = eig_maximal(tau)
    kc = tau.key_conductor
    assert {tuple(sorted(s)) for s in mx} == {
        tuple(sorted((0, kc // 2))),
        tuple(sorted((0, kc // 3, 2 * kc // 3))),
    }
    rho4 = s4.rep("rho4")
    kc4 = rho4.key_conductor
    union = set(eig_union(rho4))
    assert {0, kc4 // 2, kc4 // 4, 3 * kc4 // 4} <= union


def test_induced_rep_z4():
    z4 = catalog.cyclic(4)
    group = z4.group
    sub_elems = [0, 2]
    sub, sub_map = subgroup_group(group, sub_elems)
    sign = Rep(sub, [Mat.identity(1), Mat(((Cyc.from_rational(-1),),))], name="sgn")
    ind = induced_rep(group, sub_elems, sign, sub_map)
    assert ind.dim == 2
    assert [ind.character.value(g) for g in range(4)] == [2, 0, -2, 0]


def test_induction_to_whole_group_is_identity_up_to_equivalence(s4):
    rho4 = s4.rep("rho4")
    sub, sub_map = subgroup_group(s4.group, range(24))
    ind = induced_rep(s4.group, range(24), rho4, sub_map)
    assert ind.character.values == rho4.character.values


def test_restriction_to_center_is_scalar():
    h3 = catalog.heisenberg(3)
    theta = h3.rep("theta1")
    center = sorted(h3.group.center())
    res = restrict_rep(theta, center)
    for mt in res.images:
        assert mt.is_scalar() is not None


def test_galois_conjugate_character():
    a5 = catalog.alternating(5)
    d3a, d3b = a5.rep("dim3a"), a5.rep("dim3b")
    chi = galois_conjugate_character(d3a.character, 7)
    assert chi.values == d3b.character.values
    assert galois_conjugate_character(d3a.character, 1).values == d3a.character.values
    with pytest.raises(RepError):
        galois_conjugate_character(d3a.character, 2)  # not coprime to the exponent 30
    # galois preserves the range as a set
    kc = 60
    r1 = {v.key(kc) for v in d3a.character.range_values(kc)}
    r2 = {v.key(kc) for v in chi.values}
    assert r1 == r2


def test_fixed_point_dimension(s4):
    rho4 = s4.rep("rho4")
    assert fixed_point_dimension(rho4, range(24)) == 0
    assert fixed_point_dimension(rho4, [0]) == 3
    # a transposition fixes a line in the sign-twisted standard model
    group = s4.group
    t = next(g for g in range(24)
             if group.element_order(g) == 2 and len(group.centralizer(g)) == 4)
    assert fixed_point_dimension(rho4, sorted(group.subgroup_generated([t]))) == 1


def test_molien_trivial_group_counts_monomials():
    z1 = catalog.cyclic(1).group
    for n in (2, 3):
        rep = Rep(z1, [Mat.identity(n)], name="triv")
        coeffs = molien_coefficients(rep, 5)
        from math import comb

        assert coeffs == [Fraction(comb(n + d - 1, d)) for d in range(6)]


def test_molien_minus_identity():
    # hand expansion oracle: invariants of +-I on two variables are the
    # even polynomials, so degree 2k has dimension 2k+1
    z2 = catalog.cyclic(2).group
    rep = Rep(z2, [Mat.identity(2), Mat.identity(2).scale(Cyc.from_rational(-1))],
              name="-I")
    assert molien_coefficients(rep, 6) == [
        Fraction(1), Fraction(0), Fraction(3), Fraction(0),
        Fraction(5), Fraction(0), Fraction(7),
    ]


def test_molien_gassmann_invariance():
    a5 = catalog.alternating(5)
    assert molien_coefficients(a5.rep("dim3a"), 8) == molien_coefficients(a5.rep("dim3b"), 8)
    gam = catalog.gamma_d(7, 9, 2)
    p11, p12 = gam.rep("pi(1,1)"), gam.rep("pi(1,2)")
    assert molien_coefficients(p11, 8) == molien_coefficients(p12, 8)
    assert fixed_point_dimension(p11, range(63)) == fixed_point_dimension(p12, range(63))


def test_column_orthogonality(s4):
    reps = [s4.rep(f"rho{i}") for i in range(1, 6)]
    group = s4.group
    cc = group.conjugacy_classes
    for i in range(len(cc)):
        for j in range(len(cc)):
            gi, gj = cc.representatives[i], cc.representatives[j]
            acc = None
            for rep in reps:
                term = rep.character.value(gi) * rep.character.value(gj).conjugate()
                acc = term if acc is None else acc + term
            if i == j:
                assert acc == Fraction(group.order, cc.sizes[i])
            else:
                assert acc.is_zero()


def test_rep_json_round_trip(s3_std):
    import json

    blob = json.loads(json.dumps(s3_std.to_json()))
    rep2 = Rep.from_json(blob)
    assert rep2.character.values == s3_std.character.values
