"""Grading schemes, windows, and the shift/shear/regrade/periodize calculus.

The expected values here are all small enough to check by hand; the
randomized parts compare against direct-summation oracles written
independently of the implementation.
"""

import random

import pytest
from hypothesis import given, strategies as st

from homflyh.multigrade import (
    DimTable,
    GradingScheme,
    HHH_SCHEME,
    Regrade,
    Window,
    XC_SCHEME,
    XY_TO_TILDE,
    XYC_SCHEME,
    fmt_half,
    halve,
    hom_shear_check,
)


# ---------------------------------------------------------------------------
# schemes


def test_scheme_degree_and_zero():
    s = GradingScheme(("a", "X", "C"), "C")
    assert s.degree(X=2, C=1) == (0, 2, 1)
    assert s.degree() == s.zero() == (0, 0, 0)
    assert s.add((1, 2, 3), (0, -2, 1)) == (1, 0, 4)


def test_scheme_validation():
    with pytest.raises(ValueError):
        GradingScheme(("X", "X"), "X")
    with pytest.raises(ValueError):
        GradingScheme(("X", "C"), "t")
    with pytest.raises(ValueError):
        GradingScheme(("X", "C"), "C", frozenset({"q"}))
    with pytest.raises(ValueError):
        GradingScheme(("X", "C"), "C").degree(q=1)


def test_scheme_json_roundtrip():
    s = GradingScheme(("q", "a", "t"), "t", frozenset({"q", "t"}))
    assert GradingScheme.from_json(s.to_json()) == s


# ---------------------------------------------------------------------------
# windows


def test_window_contains_and_unbounded():
    w = Window({"X": (0, 4), "C": (None, 2)})
    assert w.contains(XC_SCHEME, (0, 2))
    assert w.contains(XC_SCHEME, (4, -17))
    assert not w.contains(XC_SCHEME, (6, 0))
    assert not w.contains(XC_SCHEME, (2, 3))
    assert w.is_unbounded("anything-else")
    assert not w.is_unbounded("X")


def test_window_intersect_shift_rename():
    w1 = Window({"X": (0, 4)})
    w2 = Window({"X": (2, None), "C": (0, 0)})
    inter = w1.intersect(w2)
    assert inter.interval("X") == (2, 4)
    assert inter.interval("C") == (0, 0)

    shifted = w1.shift(XC_SCHEME, (2, -1))
    assert shifted.interval("X") == (2, 6)

    renamed = w1.rename({"X": "Q"})
    assert renamed.interval("Q") == (0, 4)
    assert renamed.is_unbounded("X")


def test_window_equality_ignores_unbounded_axes():
    assert Window({"X": (None, None)}) == Window({})
    assert Window({"X": (0, 1)}) != Window({})


# ---------------------------------------------------------------------------
# dimension tables: construction and equality semantics


def test_dimtable_cleanup():
    t = DimTable(XC_SCHEME, [((0, 0), 1), ((0, 0), 2), ((2, 1), 0)])
    assert t.dims == {(0, 0): 3}
    assert t.total() == 3
    assert t.support() == [(0, 0)]
    with pytest.raises(ValueError):
        DimTable(XC_SCHEME, {(0, 0): -1})
    with pytest.raises(ValueError):
        DimTable(XC_SCHEME, {(0, 0, 0): 1})


def test_same_dims_respects_windows():
    a = DimTable(XC_SCHEME, {(0, 0): 1, (6, 0): 5}, {"X": (None, 4)})
    b = DimTable(XC_SCHEME, {(0, 0): 1, (6, 0): 7}, {"X": (None, 4)})
    # the disagreement at X=6 is outside both windows, hence invisible
    assert a.same_dims(b)
    assert a.diff(b) == []
    c = DimTable(XC_SCHEME, {(0, 0): 2}, {"X": (None, 4)})
    assert not a.same_dims(c)
    assert a.diff(c) == [((0, 0), 1, 2)]


def test_restrict():
    t = DimTable(XC_SCHEME, {(0, 0): 1, (2, 0): 1, (4, 0): 1})
    r = t.restrict({"X": (0, 2)})
    assert r.dims == {(0, 0): 1, (2, 0): 1}
    assert r.window.interval("X") == (0, 2)


# ---------------------------------------------------------------------------
# shifts


def test_bracket_shift_is_minus_k_on_cohomological():
    t = DimTable(XC_SCHEME, {(0, 0): 1})
    assert t.shift_bracket(1).dims == {(0, -1): 1}
    assert t.shift_bracket(-2).dims == {(0, 2): 1}


def test_angle_shift_is_plus_k_and_rejects_cohomological():
    t = DimTable(XC_SCHEME, {(0, 0): 1})
    assert t.shift_angle(3, "X").dims == {(3, 0): 1}
    with pytest.raises(ValueError):
        t.shift_angle(1, "C")


def test_shift_moves_window_with_the_entries():
    t = DimTable(XC_SCHEME, {(2, 1): 4}, {"X": (0, 4)})
    s = t.shift({"X": 2})
    assert s.dims == {(4, 1): 4}
    assert s.window.interval("X") == (2, 6)
    assert s.known((6, 100)) and not s.known((0, 0))


# ---------------------------------------------------------------------------
# shears


def test_shear_left_right_are_inverse_on_entries():
    t = DimTable(XYC_SCHEME, {(2, 1, 3): 1, (0, 2, -1): 2})
    left = t.shear_left("Y")
    assert left.dims == {(2, 1, 1): 1, (0, 2, -5): 2}
    assert left.shear_right("Y").dims == t.dims


def test_shear_rejects_cohomological_axis():
    t = DimTable(XC_SCHEME, {(0, 0): 1})
    with pytest.raises(ValueError):
        t.shear_left("C")


def test_shear_window_exact_when_c_unbounded():
    t = DimTable(XYC_SCHEME, {(0, 1, 0): 1}, {"X": (0, 4)})
    s = t.shear_left("Y")
    assert s.window.interval("X") == (0, 4)
    assert s.window.is_unbounded("C")


def test_shear_window_collapses_when_axis_unbounded():
    # with C bounded but the sheared axis unbounded, no output degree has a
    # fully known fiber, so the table must declare C unknown everywhere
    t = DimTable(XYC_SCHEME, {(0, 1, 0): 1}, {"C": (0, 4)})
    s = t.shear_left("Y")
    lo, hi = s.window.interval("C")
    assert lo is not None and hi is not None and lo > hi


@given(st.lists(st.tuples(st.integers(-6, 6), st.integers(0, 6),
                          st.integers(-6, 6), st.integers(1, 5)),
                max_size=12))
def test_shear_roundtrip_random(entries):
    dims = {}
    for X, Y, C, v in entries:
        dims[(X, Y, C)] = dims.get((X, Y, C), 0) + v
    t = DimTable(XYC_SCHEME, dims)
    back = t.shear_right("Y").shear_left("Y")
    assert back.dims == t.dims


# ---------------------------------------------------------------------------
# degrade and product


def test_degrade_sums_over_axis():
    t = DimTable(HHH_SCHEME, {(0, 2, 1): 1, (1, 2, 1): 2, (0, 4, 0): 3})
    d = t.degrade("a")
    assert d.scheme.axes == ("X", "C")
    assert d.dims == {(2, 1): 3, (4, 0): 3}


def test_degrade_refuses_bounded_axis():
    t = DimTable(HHH_SCHEME, {(0, 0, 0): 1}, {"a": (0, 1)})
    with pytest.raises(ValueError):
        t.degrade("a")
    with pytest.raises(ValueError):
        DimTable(XC_SCHEME, {(0, 0): 1}).degrade("C")


def test_product_is_convolution():
    a = DimTable(XC_SCHEME, {(0, 0): 1, (2, 0): 1})
    b = DimTable(XC_SCHEME, {(0, 0): 2, (2, 1): 3})
    p = a.product(b)
    assert p.dims == {(0, 0): 2, (2, 1): 3, (2, 0): 2, (4, 1): 3}


def test_product_window_shrinks_by_partner_floor():
    # knowing a up to X=4 and b's support starting at X=2 makes the product
    # known up to X=6 only if b is fully known; here both are truncated.
    a = DimTable(XC_SCHEME, {(0, 0): 1}, {"X": (None, 4)})
    b = DimTable(XC_SCHEME, {(2, 0): 1}, {"X": (None, 8)})
    p = a.product(b)
    lo, hi = p.window.interval("X")
    assert hi == min(4 + 2, 8 + 0)


@given(st.lists(st.tuples(st.integers(-4, 4), st.integers(-4, 4),
                          st.integers(1, 3)), max_size=8),
       st.lists(st.tuples(st.integers(-4, 4), st.integers(-4, 4),
                          st.integers(1, 3)), max_size=8))
def test_product_matches_polynomial_multiplication(e1, e2):
    """Dimension tables with full windows multiply exactly like the
    corresponding Poincare polynomials."""
    t1 = DimTable(XC_SCHEME, [((x, c), v) for x, c, v in e1])
    t2 = DimTable(XC_SCHEME, [((x, c), v) for x, c, v in e2])
    expected = {}
    for d1, v1 in t1.dims.items():
        for d2, v2 in t2.dims.items():
            key = (d1[0] + d2[0], d1[1] + d2[1])
            expected[key] = expected.get(key, 0) + v1 * v2
    assert t1.product(t2).dims == {k: v for k, v in expected.items() if v}


# ---------------------------------------------------------------------------
# regrades


def test_xy_to_tilde_generator_degrees():
    # the three generator degrees that pin the change of lattice:
    # an even variable, its Koszul dual, and the odd generator.
    assert XY_TO_TILDE.apply((2, 1, 0)) == (1, 0, 0)
    assert XY_TO_TILDE.apply((-2, 0, 0)) == (0, 2, 0)
    assert XY_TO_TILDE.apply((0, 1, 0)) == (1, 2, 0)


def test_regrade_inverse_roundtrip():
    inv = XY_TO_TILDE.inverse()
    for deg in [(2, 1, 0), (-2, 0, 0), (0, 1, 0), (4, -3, 7)]:
        assert inv.apply(XY_TO_TILDE.apply(deg)) == deg


def test_regrade_singular_matrix_rejected():
    rg = Regrade(XC_SCHEME, XC_SCHEME,
                 {"X": {"X": 1, "C": 1}, "C": {"X": 1, "C": 1}})
    with pytest.raises(ValueError):
        rg.inverse()


def test_regrade_table_and_window():
    t = DimTable(XYC_SCHEME, {(2, 1, 0): 1, (-2, 0, 0): 2}, {"C": (0, 0)})
    r = t.regrade(XY_TO_TILDE)
    assert r.scheme.axes == ("Xt", "Yt", "C")
    assert r.dims == {(1, 0, 0): 1, (0, 2, 0): 2}
    # C passes through untouched, Xt copies the (unbounded) Y axis, while
    # Yt mixes a bounded-with-unbounded pair only in the trivial way here.
    assert r.window.interval("C") == (0, 0)
    assert r.window.is_unbounded("Xt")


def test_regrade_requires_matching_source():
    t = DimTable(XC_SCHEME, {(0, 0): 1})
    with pytest.raises(ValueError):
        t.regrade(XY_TO_TILDE)


# ---------------------------------------------------------------------------
# periodize


def _orbit_sum_oracle(table, bdeg):
    """Direct summation over the translation orbit, written independently."""
    out = {}
    degs = set(table.dims)
    # every output degree inside the window reachable from a support degree
    candidates = set()
    for d in degs:
        for k in range(-64, 65):
            nd = tuple(x + k * b for x, b in zip(d, bdeg))
            if table.window.contains(table.scheme, nd):
                candidates.add(nd)
    for nd in candidates:
        s = 0
        for k in range(-64, 65):
            src = tuple(x - k * b for x, b in zip(nd, bdeg))
            s += table.dims.get(src, 0)
        if s:
            out[nd] = s
    return out


def test_periodize_against_orbit_oracle():
    rng = random.Random(7)
    for _ in range(50):
        dims = {}
        for _ in range(rng.randrange(1, 10)):
            d = (rng.randrange(-4, 5), rng.randrange(0, 4), rng.randrange(-6, 7))
            dims[d] = dims.get(d, 0) + rng.randrange(1, 4)
        t = DimTable(XYC_SCHEME, dims, {"C": (-6, 6)})
        p = t.periodize()
        assert p.dims == _orbit_sum_oracle(t, (0, 1, -2))


def test_periodize_needs_bounded_cohomological_axis():
    t = DimTable(XYC_SCHEME, {(0, 0, 0): 1})
    with pytest.raises(ValueError):
        t.periodize()


def test_periodize_direction_must_move_c():
    t = DimTable(XYC_SCHEME, {(0, 0, 0): 1}, {"C": (0, 4)})
    with pytest.raises(ValueError):
        t.periodize({"X": 2})


def test_hom_shear_orbit():
    # a single class at the origin, C known in [0, 5]: the shear endomorphism
    # has degree (Y, C) = (1, 2), so the orbit hits C = 0, 2, 4.
    t = DimTable(XYC_SCHEME, {(0, 0, 0): 1}, {"C": (0, 5)})
    h = hom_shear_check(t)
    assert h.dims == {(0, 0, 0): 1, (0, 1, 2): 1, (0, 2, 4): 1}


# ---------------------------------------------------------------------------
# halves and serialization


def test_half_axis_helpers():
    assert halve(3) == 1.5
    assert fmt_half(4) == "2"
    assert fmt_half(-3) == "-3/2"


def test_dimtable_json_roundtrip():
    t = DimTable(HHH_SCHEME, {(0, 2, 1): 1, (-1, 0, -2): 4},
                 {"X": (None, 8), "a": (-2, 2)})
    back = DimTable.from_json(t.to_json())
    assert back == t
    assert back.dumps() == t.dumps()
