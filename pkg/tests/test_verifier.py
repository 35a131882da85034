from fractions import Fraction

import pytest

from repident import catalog, idfactory as idf, verifier as vf
from repident.exactnum import Cyc
from repident.freeexpr import Evaluator, const, inv, power, prod, sub, sum_, var


@pytest.fixture(scope="module")
def s3_std():
    return catalog.symmetric(3).rep("std")


@pytest.fixture(scope="module")
def z3_chi():
    return catalog.cyclic(3).rep("chi1")


def test_exhaustive_examples(z3_chi):
    z2 = catalog.cyclic(2).rep("chi1")
    v = vf.holds_exhaustive(idf.guard_C(3), z2, budget=10**4)
    assert v.holds and v.detail["assignments"] == 2**7
    doc = idf.disjunctive_identity([power(var("x"), 2)])
    v = vf.holds_exhaustive(doc, z3_chi, budget=10**4)
    assert not v.holds
    # constant-zero expression with no variables
    zero_doc = idf.IdentityDoc("test", const(0), {}, {}, "zero")
    assert vf.holds_exhaustive(zero_doc, z3_chi, budget=10).holds


def test_budget_enforced(s3_std):
    with pytest.raises(vf.BudgetExceeded):
        vf.holds_exhaustive(idf.character_identity(s3_std), s3_std, budget=100)


def test_guarded_requires_guards(s3_std):
    doc = idf.disjunctive_identity([power(var("x"), 6)])
    with pytest.raises(vf.VerifierError):
        vf.holds_guarded(doc, s3_std)


def test_sampled_seed_stability(s3_std):
    doc = idf.disjunctive_identity([power(var("x"), 3)])
    v1 = vf.holds_sampled(doc, s3_std, n=50, seed=42)
    v2 = vf.holds_sampled(doc, s3_std, n=50, seed=42)
    assert not v1.holds and not v2.holds
    assert v1.counterexample == v2.counterexample


def test_sampled_fails_quickly(z3_chi):
    z2 = catalog.cyclic(2).rep("chi1")
    doc = idf.disjunctive_identity([power(var("x"), 3)])
    v = vf.holds_sampled(doc, z2, n=50, seed=0)
    assert not v.holds


def test_witness_revalidates(s3_std):
    doc = idf.dimension_identity(6, 1)
    v = vf.holds_guarded(doc, s3_std, seed=0)
    assert not v.holds
    ev = Evaluator(s3_std)
    assert not ev.evaluate(doc.expr, v.counterexample).is_zero()


def test_agreement_across_modes():
    """All applicable modes agree on status for small cases."""
    z4 = catalog.cyclic(4).rep("chi1")
    z2 = catalog.cyclic(2).rep("chi1")
    cases = [
        (z4, idf.disjunctive_identity([power(var("x"), 4)]), True),
        (z4, idf.disjunctive_identity([power(var("x"), 2)]), False),
        (z4, idf.guard_C(3), False),
        (z2, idf.guard_C(3), True),
        (z2, idf.character_identity(z2), True),
    ]
    for rep, doc, expected in cases:
        ve = vf.holds_exhaustive(doc, rep, budget=10**7)
        vs = vf.holds_sampled(doc, rep, n=300, seed=1)
        assert ve.holds == expected
        assert vs.holds == expected
        groups = doc.guard_groups()
        if groups and all(len(v) == rep.group.order for v in groups.values()):
            vg = vf.holds_guarded(doc, rep, seed=1)
            assert vg.holds == expected


def test_check_dispatch(s3_std):
    doc = idf.character_identity(s3_std)
    v = vf.check(doc, s3_std, mode="auto", seed=0)
    assert v.holds and v.evidence == "guarded"
    doc2 = idf.class_identity(s3_std)
    v2 = vf.check(doc2, s3_std, mode="auto", seed=0)
    assert v2.holds and v2.evidence == "structured"
    small = idf.disjunctive_identity([power(var("x"), 6)])
    v3 = vf.check(small, s3_std, mode="auto", seed=0)
    assert v3.holds and v3.evidence == "exhaustive"


def test_scalar_check(s3_std):
    doc = idf.psi(6)
    assign = {f"y{i + 1}": i for i in range(6)}
    assign["x"] = 3
    lam = vf.scalar_check(doc.expr, s3_std, assign)
    assert lam == s3_std.character.value(3) * Cyc.from_rational(3)
    # non-central word on a higher-dim rep has non-scalar image
    g = next(g for g in range(6) if s3_std.group.element_order(g) == 3)
    assert vf.scalar_check(var("x"), s3_std, {"x": g}) is None


def test_expectation(s3_std):
    comm = prod([inv(var("x")), inv(var("y")), var("x"), var("y")])
    value = vf.expectation(comm, s3_std)
    assert value.is_scalar() == Fraction(1, 4)
    # expectation of a single variable on a nontrivial irrep vanishes
    assert vf.expectation(var("x"), s3_std).is_zero()


def test_expectation_characterizes_identities(s3_std):
    from repident.freeexpr import star

    # E(u u*) = 0 iff u is an identity: test both directions on small cases
    u_id = sub(power(var("x"), 6), const(1))  # holds in S3
    uu = prod([u_id, star(u_id)])
    assert vf.expectation(uu, s3_std).is_zero()
    u_non = sub(power(var("x"), 2), const(1))
    uu2 = prod([u_non, star(u_non)])
    assert not vf.expectation(uu2, s3_std).is_zero()


def test_relation_probability(s3_std):
    comm1 = sub(prod([inv(var("x")), inv(var("y")), var("x"), var("y")]), const(1))
    assert vf.relation_probability(comm1, s3_std) == Fraction(1, 2)
    z6 = catalog.cyclic(6).rep("chi1")
    comm_ab = sub(prod([inv(var("x")), inv(var("y")), var("x"), var("y")]), const(1))
    assert vf.relation_probability(comm_ab, z6) == 1
    # probability 1 iff the verifier says the relation holds exhaustively
    v = vf.holds_exhaustive(idf.disjunctive_identity([power(var("x"), 6)]), s3_std,
                            budget=10**4)
    p = vf.relation_probability(sub(power(var("x"), 6), const(1)), s3_std)
    assert v.holds and p == 1


def test_conditional_probability(s3_std):
    # Pr(x = 1 | x^2 = 1): among the four square roots of 1, one is trivial
    u = sub(var("x"), const(1))
    v = sub(power(var("x"), 2), const(1))
    assert vf.conditional_relation_probability(u, v, s3_std) == Fraction(1, 4)


def test_parallel_exhaustive(z3_chi):
    doc = idf.guard_C(3)
    v = vf.holds_exhaustive(doc, z3_chi, budget=10**7, jobs=2)
    assert not v.holds
    z2 = catalog.cyclic(2).rep("chi1")
    v2 = vf.holds_exhaustive(doc, z2, budget=10**7, jobs=2)
    assert v2.holds and v2.detail["jobs"] == 2


def test_sl2_checks():
    x, y = var("x"), var("y")
    s2 = sub(prod([sum_([y, inv(y)]), x]), prod([x, sum_([y, inv(y)])]))
    assert vf.sl2_sample_check(s2, trials=300, seed=3).holds
    from repident.freeexpr import smul

    bad = sub(prod([sum_([y, inv(y)]), x]), smul(2, x))
    v = vf.sl2_sample_check(bad, trials=50, seed=3)
    assert not v.holds and v.detail["trial"] < 50
    assert vf.sl2_trace_identity_check(trials=300, seed=3).holds


def test_vacuous_docs_hold(z3_chi):
    doc = idf.central_series_gassmann_identity(catalog.cyclic(6).rep("chi1"), 1, 1)
    assert doc.vacuous
    assert vf.check(doc, z3_chi).holds
