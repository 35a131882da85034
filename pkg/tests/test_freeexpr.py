import random
from fractions import Fraction

import pytest

from repident import catalog
from repident.exactnum import cyc_root_of_unity
from repident.freeexpr import (
    Evaluator,
    Expr,
    NonGroupSubtermError,
    const,
    expand_stream,
    free_vars,
    inv,
    power,
    prod,
    smul,
    star,
    stream_subsets,
    sub,
    sum_,
    var,
)
from repident.matrices import Mat


def naive_eval(e: Expr, assignment: dict, rep) -> Mat:
    """Independent oracle: materialize every node, no sharing, no shortcuts."""
    n = rep.dim
    if e.kind == "const":
        return Mat.scalar(n, e.value)
    if e.kind == "var":
        return rep.images[assignment[e.value]]
    if e.kind == "inv":
        return naive_eval(e.children[0], assignment, rep).inverse()
    if e.kind == "star":
        return naive_eval(star(e.children[0]), assignment, rep)
    if e.kind == "sum":
        acc = Mat.zeros(n)
        for c in e.children:
            acc = acc + naive_eval(c, assignment, rep)
        return acc
    if e.kind == "prod":
        acc = Mat.identity(n)
        for c in e.children:
            acc = acc * naive_eval(c, assignment, rep)
        return acc
    raise AssertionError(e.kind)


def random_expr(rng, names, depth=3) -> Expr:
    if depth == 0 or rng.random() < 0.3:
        choice = rng.random()
        if choice < 0.6:
            return var(rng.choice(names))
        return const(Fraction(rng.randint(-3, 3), rng.randint(1, 3)))
    kind = rng.choice(["sum", "prod", "inv_word"])
    if kind == "inv_word":
        return inv(var(rng.choice(names)))
    children = [random_expr(rng, names, depth - 1) for _ in range(rng.randint(2, 3))]
    return sum_(children) if kind == "sum" else prod(children)


@pytest.fixture(scope="module")
def s3_std():
    return catalog.symmetric(3).rep("std")


def test_word_times_inverse_is_identity(s3_std):
    e = prod([var("y"), inv(var("y"))])
    ev = Evaluator(s3_std)
    for g in range(6):
        assert ev.evaluate(e, {"y": g}).is_identity()


def test_x_minus_x_vanishes(s3_std):
    e = sum_([var("x"), smul(-1, var("x"))])
    ev = Evaluator(s3_std)
    for g in range(6):
        assert ev.evaluate(e, {"x": g}).is_zero()


def test_conjugation_word(s3_std):
    e = prod([var("y"), var("x"), inv(var("y"))])
    ev = Evaluator(s3_std)
    g, h = 2, 3
    expected = s3_std.images[g] * s3_std.images[h] * s3_std.images[g].inverse()
    assert ev.evaluate(e, {"y": g, "x": h}) == expected


def test_guard_vanishes_on_repeats(s3_std):
    # u0 (y1 - y2) u12 with equal values
    e = prod([var("u0"), sub(var("y1"), var("y2")), var("u12")])
    ev = Evaluator(s3_std)
    assert ev.evaluate(e, {"u0": 1, "u12": 2, "y1": 4, "y2": 4}).is_zero()
    assert not ev.evaluate(e, {"u0": 1, "u12": 2, "y1": 4, "y2": 5}).is_zero()


def test_free_vars():
    assert free_vars(const(5)) == frozenset()
    e = prod([var("a"), sum_([var("b"), inv(var("c"))])])
    assert free_vars(e) == {"a", "b", "c"}


def test_flattening():
    e = sum_([sum_([var("a"), var("b")]), var("c")])
    assert len(e.children) == 3
    p = prod([prod([var("a"), var("b")]), var("c")])
    assert len(p.children) == 3
    assert prod([]).kind == "const"
    assert sum_([]).value.is_zero()


def test_star_structure():
    # star of a scaled word inverts the word and conjugates the coefficient
    i = cyc_root_of_unity(4, 1)
    e = smul(i, prod([var("a"), var("b")]))
    s = star(e)
    # expect (conj i) * b^-1 a^-1 in some product arrangement
    flat = s.children
    assert any(c.kind == "const" and c.value == -i for c in flat)
    assert star(const(i)).value == -i


def test_star_involution_random(s3_std):
    rng = random.Random(7)
    ev = Evaluator(s3_std)
    names = ["a", "b", "c"]
    for _ in range(100):
        e = random_expr(rng, names)
        ss = star(star(e))
        for _ in range(3):
            assignment = {n: rng.randrange(6) for n in names}
            try:
                lhs = ev.evaluate(e, assignment)
            except NonGroupSubtermError:
                continue
            rhs = ev.evaluate(ss, assignment)
            assert lhs == rhs


def test_star_adjoint_on_unitary(s3_std):
    assert s3_std.is_unitary()
    rng = random.Random(11)
    ev = Evaluator(s3_std)
    names = ["a", "b"]
    for _ in range(40):
        e = random_expr(rng, names)
        assignment = {n: rng.randrange(6) for n in names}
        try:
            lhs = ev.evaluate(star(e), assignment)
        except NonGroupSubtermError:
            continue
        rhs = ev.evaluate(e, assignment).conj_transpose()
        assert lhs == rhs


def test_evaluate_matches_naive_oracle(s3_std):
    rng = random.Random(3)
    ev = Evaluator(s3_std)
    names = ["a", "b", "c"]
    for _ in range(60):
        e = random_expr(rng, names)
        assignment = {n: rng.randrange(6) for n in names}
        try:
            fast = ev.evaluate(e, assignment)
        except NonGroupSubtermError:
            continue
        slow = naive_eval(e, assignment, s3_std)
        assert fast == slow


def test_homomorphism_property(s3_std):
    rng = random.Random(5)
    ev = Evaluator(s3_std)
    names = ["a", "b"]
    for _ in range(30):
        e1 = random_expr(rng, names, depth=2)
        e2 = random_expr(rng, names, depth=2)
        assignment = {n: rng.randrange(6) for n in names}
        try:
            p = ev.evaluate(prod([e1, e2]), assignment)
            s = ev.evaluate(sum_([e1, e2]), assignment)
            v1, v2 = ev.evaluate(e1, assignment), ev.evaluate(e2, assignment)
        except NonGroupSubtermError:
            continue
        assert p == v1 * v2
        assert s == v1 + v2


def test_shortcircuit_regression(s3_std):
    rng = random.Random(9)
    names = ["a", "b", "c"]
    fast = Evaluator(s3_std, shortcircuit=True)
    slow = Evaluator(s3_std, shortcircuit=False)
    zero_guard = sub(var("a"), var("a"))
    for _ in range(30):
        e = prod([zero_guard, random_expr(rng, names, depth=2)])
        assignment = {n: rng.randrange(6) for n in names}
        try:
            v1 = fast.evaluate(e, assignment)
            v2 = slow.evaluate(e, assignment)
        except NonGroupSubtermError:
            continue
        assert v1.is_zero() and v2.is_zero()


def test_inv_of_noninvertible_signals(s3_std):
    e = inv(sub(var("a"), var("a")))
    ev = Evaluator(s3_std)
    with pytest.raises(NonGroupSubtermError):
        ev.evaluate(e, {"a": 1})


def test_power_helper(s3_std):
    ev = Evaluator(s3_std)
    g = 2
    assert ev.evaluate(power(var("x"), 0), {"x": g}).is_identity()
    assert ev.evaluate(power(var("x"), 3), {"x": g}) == s3_std.images[g].pow_int(3)
    assert ev.evaluate(power(var("x"), -2), {"x": g}) == s3_std.images[g].pow_int(-2)


def test_stream_subsets_zero_counting(s3_std):
    # bases: (x_i - x_i) always zero for two indices, nonzero otherwise
    bases = [sub(var("a"), var("a")), sub(var("a"), var("a")), sub(var("a"), var("b"))]
    node = stream_subsets(bases, 2, "v_S")
    ev = Evaluator(s3_std)
    val = ev.evaluate_value(node, {"a": 1, "b": 2})
    assert ev._is_zero(val)
    from repident.freeexpr import StreamNonvanishing

    node2 = stream_subsets(bases, 3, "v_S")
    with pytest.raises(StreamNonvanishing):
        ev.evaluate_value(node2, {"a": 1, "b": 2})


def test_expand_stream_matches_naming():
    bases = [var("a"), var("b"), var("c")]
    node = stream_subsets(bases, 2, "v_S")
    expanded = expand_stream(node)
    names = sorted(v for v in expanded.free_vars() if v.startswith("v_S"))
    assert names == ["v_S{1,2}", "v_S{1,3}", "v_S{2,3}"]


def test_serialization_round_trip():
    e = prod([var("x"), sum_([const(Fraction(1, 2)), inv(var("y"))])])
    blob = e.to_json()
    e2 = Expr.from_json(blob)
    assert e2.to_json() == blob
