"""Tests for the skew group algebra models and their Koszul transforms."""

import json
import random

import pytest

from homflyh.multigrade import XC_SCHEME, DimTable, Window
from homflyh.tracealg import (
    A,
    Abar,
    B,
    Btilde,
    SkewModule,
    btilde_dims,
    check_module,
    coinv_y_enh,
    free_abar,
    free_complex,
    free_module,
    gamma_a,
    induced_rep,
    inv_theta_enh,
    load_example,
    nilp_y_check,
    perm_compose,
    perm_cycle_type,
    perm_sign,
    perm_word,
    right_mult,
    sn_elements,
    triv_theta,
    triv_y,
    wedge_perm_rep,
    weight_heart_check,
)

WIN = {"X": (0, 8), "C": (None, 8)}


def _binom(n, k):
    from math import comb

    return comb(n, k)


# ---------------------------------------------------------------------------
# permutation helpers


def test_sn_elements():
    assert len(sn_elements(1)) == 1
    assert len(sn_elements(3)) == 6
    assert (0, 1, 2) in sn_elements(3)
    assert len(set(sn_elements(4))) == 24


def test_perm_compose_convention():
    # (p o q)(i) = p[q[i]]
    p, q = (1, 2, 0), (1, 0, 2)
    r = perm_compose(p, q)
    assert r == tuple(p[q[i]] for i in range(3))
    assert r == (2, 1, 0)


def test_perm_word_reconstructs():
    for p in sn_elements(4):
        acc = (0, 1, 2, 3)
        for letter in perm_word(p):
            s = list(range(4))
            s[letter - 1], s[letter] = s[letter], s[letter - 1]
            acc = perm_compose(acc, tuple(s))
        assert acc == p
        assert perm_sign(p) == (-1) ** len(perm_word(p))


def test_perm_cycle_type():
    assert perm_cycle_type((0, 1, 2)) == (1, 1, 1)
    assert perm_cycle_type((1, 0, 2)) == (2, 1)
    assert perm_cycle_type((1, 2, 0)) == (3,)
    assert perm_cycle_type((1, 0, 3, 2)) == (2, 2)


# ---------------------------------------------------------------------------
# module constructions


@pytest.mark.parametrize(
    "make",
    [
        lambda: free_module(A(2)),
        lambda: free_module(Abar(2)),
        lambda: free_module(B(2)),
        lambda: free_module(Btilde(2)),
        lambda: free_module(A(3)),
        lambda: triv_theta(2),
        lambda: triv_y(2),
        lambda: free_abar(2),
    ],
)
def test_standard_modules_check_clean(make):
    assert check_module(make()) == []


def test_free_module_shapes():
    F = free_module(A(2))
    # theta-subsets times group elements
    assert len(F.gens) == 4 * 2
    assert set(F.gens) == {(0, 0), (2, 1), (4, 2)}
    assert [g for g in F.gens].count((2, 1)) == 4
    G = free_module(B(2))
    assert len(G.gens) == 2
    assert G.y_mode == "ring"


def test_triv_modules_kill_the_odd_generators():
    T = triv_theta(2)
    assert all(t.is_zero() for t in T.theta_ops)
    assert all(t.offset == (2, 1) for t in T.theta_ops)
    Y = triv_y(2)
    assert Y.y_mode == "ops"
    assert all(y.is_zero() for y in Y.y_ops)
    assert all(y.offset == (-2, 0) for y in Y.y_ops)


def test_free_abar_diagonal_dims():
    M = free_abar(2)
    got = M.dims({"X": (0, 6), "C": (0, 6)}).dims
    assert dict(got) == {(0, 0): 2, (2, 2): 4, (4, 4): 6, (6, 6): 8}


# ---------------------------------------------------------------------------
# right multiplication operators


def test_right_mult_degrees():
    F = free_module(A(2))
    assert right_mult(F, 1, (1, 0), ()).offset == (2, 2)
    assert right_mult(F, 1, (0, 0), (1,)).offset == (2, 1)
    assert right_mult(F, 1, (1, 1), (1, 2)).offset == (8, 6)


def test_right_mult_rejects_theta_without_theta():
    G = free_module(B(2))
    with pytest.raises(ValueError):
        right_mult(G, 1, (0, 0), (1,))


def test_right_mult_theta_squares_to_zero():
    F = free_module(A(2))
    t1 = right_mult(F, 1, (0, 0), (1,))
    assert t1.compose(t1).is_zero()


def test_right_mult_thetas_anticommute():
    F = free_module(A(2))
    t1 = right_mult(F, 1, (0, 0), (1,))
    t2 = right_mult(F, 1, (0, 0), (2,))
    lhs = t1.compose(t2)
    rhs = t2.compose(t1)
    assert (lhs + rhs).is_zero()


def test_right_mult_supercommutes_with_left_theta():
    # right multiplication is a module map for the signed right action:
    # even elements commute with the left theta operators, odd ones
    # anticommute (the s operators carry a ring twist on top of their
    # matrix, so plain matrix composition cannot express them)
    F = free_module(A(2))
    even = right_mult(F, 1, (1, 0), ())
    odd = right_mult(F, 1, (1, 0), (2,))
    for th in F.theta_ops:
        assert even.compose(th).entries == th.compose(even).entries
        assert (odd.compose(th) + th.compose(odd)).is_zero()


# ---------------------------------------------------------------------------
# free complexes


def _theta_two_term(n=2):
    F = free_module(A(n))
    d = right_mult(F, 1, (0, 0), (1,)) + right_mult(F, -1, (0, 0), (2,))
    return free_complex(A(n), [(2, 0), (0, 0)], {(1, 0): d})


TWO_TERM_H = {
    (0, 0): 2,
    (2, 1): 2,
    (2, 2): 4,
    (4, 1): 2,
    (4, 3): 4,
    (4, 4): 6,
}


def test_free_complex_theta_differential():
    C = _theta_two_term()
    assert not C.zero_diff()
    assert check_module(C) == []
    got = C.homology_dims({"X": (0, 4), "C": (None, 4)}).dims
    assert dict(got) == TWO_TERM_H


def test_free_complex_rejects_inhomogeneous_maps():
    F = free_module(A(2))
    d = right_mult(F, 1, (1, 0), ())  # degree (2, 2)
    with pytest.raises(ValueError):
        free_complex(A(2), [(2, 0), (0, 0)], {(1, 0): d})


# ---------------------------------------------------------------------------
# Koszul transforms: anchors


@pytest.mark.parametrize("n", [1, 2])
def test_inv_of_trivial_theta_is_free(n):
    I = inv_theta_enh(triv_theta(n))
    assert I.dims(WIN).dims == free_module(B(n)).dims(WIN).dims


@pytest.mark.parametrize("n", [1, 2])
def test_twisted_inv_of_free_resolves_trivial_y(n):
    J = inv_theta_enh(free_module(A(n)), twisted=True)
    assert not weight_heart_check(J)  # it is a resolution, not a heart object
    assert J.homology_dims(WIN).dims == triv_y(n).dims(WIN).dims


@pytest.mark.parametrize("n", [1, 2])
def test_twisted_coinv_of_trivial_y_resolves_free(n):
    K = coinv_y_enh(triv_y(n), twisted=True)
    want = free_module(A(n)).dims({"X": (0, 8)}).dims
    assert K.homology_dims({"X": (0, 8)}).dims == want


@pytest.mark.parametrize("twisted", [False, True])
@pytest.mark.parametrize("n", [1, 2])
def test_round_trip_on_free_module(n, twisted):
    M = free_module(A(n))
    RT = coinv_y_enh(inv_theta_enh(M, twisted=twisted), twisted=twisted)
    win = {"X": (0, 6), "C": (None, 6)}
    assert RT.homology_dims(win).dims == M.dims(win).dims


@pytest.mark.parametrize("twisted", [False, True])
def test_round_trip_on_two_term_complex(twisted):
    C = _theta_two_term()
    win = {"X": (0, 6), "C": (None, 6)}
    RT = coinv_y_enh(inv_theta_enh(C, twisted=twisted), twisted=twisted)
    assert RT.homology_dims(win).dims == C.homology_dims(win).dims


def test_round_trip_on_random_complexes():
    rng = random.Random(11)
    F = free_module(A(2))
    thetas = [right_mult(F, 1, (0, 0), (1,)), right_mult(F, 1, (0, 0), (2,))]
    win = {"X": (0, 4), "C": (None, 4)}
    for _ in range(5):
        c1 = rng.choice([-2, -1, 1, 2])
        c2 = rng.randint(-2, 2)
        d = thetas[0].scale(c1) + thetas[1].scale(c2)
        C = free_complex(A(2), [(2, 0), (0, 0)], {(1, 0): d})
        assert check_module(C) == []
        RT = coinv_y_enh(inv_theta_enh(C, twisted=True), twisted=True)
        assert RT.homology_dims(win).dims == C.homology_dims(win).dims


@pytest.mark.parametrize("n", [1, 2])
@pytest.mark.parametrize("k", [-2, -1, 0, 1, 2])
def test_twisted_inv_matches_shifted_quotient_model(n, k):
    # homological shift by k paired with an internal shift by -k
    M = free_module(A(n)).shift(k, -k)
    win = {"X": (-6, 8), "C": (None, 8)}
    got = inv_theta_enh(M, twisted=True).homology_dims(win).dims
    assert got == free_abar(n).shift(k, -k).dims(win).dims


# ---------------------------------------------------------------------------
# heart and nilpotence checks


def test_weight_heart_check():
    assert weight_heart_check(triv_y(2))
    assert weight_heart_check(free_abar(2))
    assert not weight_heart_check(_theta_two_term())  # nonzero differential


def test_nilp_trivial_y():
    rep = nilp_y_check(triv_y(2), 3)
    assert rep.ok and rep
    assert rep.witness_power == 1


def test_nilp_free_b_fails():
    rep = nilp_y_check(free_module(B(2)), 4, {"X": (-8, 8), "C": (None, 6)})
    assert not rep.ok and not rep
    assert rep.failure is not None
    assert rep.failure[3] == "escaped window"


def test_nilp_ring_carried_requires_window():
    J = inv_theta_enh(free_module(A(2)), twisted=True)
    with pytest.raises(ValueError):
        nilp_y_check(J, 3)
    rep = nilp_y_check(J, 3, {"X": (-6, 4), "C": (None, 4)})
    assert rep.ok
    assert rep.witness_power == 1


# ---------------------------------------------------------------------------
# the gamma functors


@pytest.mark.parametrize("n", [1, 2, 3])
def test_gamma_zero_of_free_abar_is_polynomial_ring(n):
    G = gamma_a(free_abar(n), 0, {"X": (0, 8), "C": (0, 8)})
    want = {(2 * d, 2 * d): _binom(n - 1 + d, d) for d in range(5)}
    assert dict(G.dims) == want


def test_gamma_one_of_free_abar():
    G = gamma_a(free_abar(2), 1, {"X": (0, 6), "C": (0, 6)})
    assert dict(G.dims) == {(0, 0): 2, (2, 2): 4, (4, 4): 6, (6, 6): 8}


def test_gamma_out_of_range():
    with pytest.raises(ValueError):
        gamma_a(free_abar(2), 3, {"X": (0, 2), "C": (0, 2)})


def test_gamma_refuses_complexes_without_socle():
    F = free_module(Abar(2))
    d = right_mult(F, 1, (1, 0), ()) + right_mult(F, -1, (0, 1), ())
    C = free_complex(Abar(2), [(2, 1), (0, 0)], {(1, 0): d})
    with pytest.raises(ValueError):
        gamma_a(C, 0, {"X": (0, 4), "C": (0, 4)})


def test_gamma_of_free_a_matches_identity_braid_homology():
    # summing the a-graded pieces reproduces the rendered unknot table
    from homflyh.hochschild import assemble_hhh, render, render_gamma
    from homflyh.rouquier import rouquier_complex

    n, q_max = 1, 4
    R = render(assemble_hhh(rouquier_complex([], n), q_max=q_max), "QAT")
    F = free_module(A(n))
    total = {}
    for a in range(n + 1):
        G = gamma_a(F, a, {"X": (0, 2 * q_max), "C": (0, 2 * q_max + 2 * n)})
        for key, v in render_gamma(G, a).dims.items():
            if key[0] <= 2 * q_max:
                total[key] = total.get(key, 0) + v
    assert total == {k: v for k, v in R.dims.items() if k[0] <= 2 * q_max}


# ---------------------------------------------------------------------------
# permutation representations


def test_wedge_character_literals():
    assert wedge_perm_rep(1, 2).character() == {(1, 1): 2, (2,): 0}
    assert wedge_perm_rep(1, 3).character() == {(1, 1, 1): 3, (2, 1): 1, (3,): 0}


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_induced_equals_wedge_characters(n):
    for a in range(n + 1):
        w = wedge_perm_rep(a, n)
        i = induced_rep(a, n)
        assert w.dim == i.dim == _binom(n, a)
        assert w.check_relations() == []
        assert i.check_relations() == []
        assert w.character() == i.character()


def test_wedge_rejects_bad_degree():
    with pytest.raises(ValueError):
        wedge_perm_rep(3, 2)
    with pytest.raises(ValueError):
        induced_rep(-1, 2)


# ---------------------------------------------------------------------------
# the two-variable degree dictionary


def test_btilde_dims_mapping():
    t = DimTable(
        XC_SCHEME,
        {(0, 0): 1, (2, 1): 2, (2, 2): 3, (-2, 4): 4},
        Window({"X": (-2, 2), "C": (0, 4)}),
    )
    bt = btilde_dims(t)
    assert dict(bt.dims) == {
        (0, 0, 0): 1,
        (2, 0, 1): 2,
        (2, 1, 0): 3,
        (-2, 2, 0): 4,
    }
    assert bt.window.interval("Y") == (0, 2)
    assert bt.window.interval("C") == (0, 1)


def test_btilde_dims_rejects_wrong_scheme():
    t = DimTable(XC_SCHEME, {(0, 0): 1}, Window({}))
    bt = btilde_dims(t)
    with pytest.raises(ValueError):
        btilde_dims(bt)


# ---------------------------------------------------------------------------
# serialization and packaged examples


def test_skew_module_json_round_trip():
    M = triv_y(2)
    blob = M.to_json()
    assert blob["schema"] == "skew-module/1"
    M2 = SkewModule.from_json(json.loads(json.dumps(blob)))
    win = {"X": (-4, 4), "C": (None, 4)}
    assert M2.dims(win).dims == M.dims(win).dims
    assert check_module(M2) == []


@pytest.mark.parametrize(
    "name",
    ["free-a1", "free-a2", "free-b2", "triv-theta-2", "triv-y-2", "two-term-a2"],
)
def test_load_example_clean(name):
    M = load_example(name)
    assert check_module(M) == []


def test_two_term_example_homology():
    M = load_example("two-term-a2")
    got = M.homology_dims({"X": (0, 4), "C": (None, 4)}).dims
    assert dict(got) == TWO_TERM_H
