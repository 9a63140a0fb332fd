"""Crossing complexes, braid tensor products, and chain-level simplification."""

import itertools
import json
import random

import pytest

from homflyh.rouquier import (
    BimoduleComplex,
    Conventions,
    Summand,
    crossing_complex,
    complex_tensor,
    cycle_type,
    cycles_of_perm,
    perm_of_word,
    rouquier_complex,
    simplify,
    unit_complex,
    writhe,
)


# ---------------------------------------------------------------------------
# single crossings


def test_positive_crossing_shape():
    C = crossing_complex(1, 2)
    assert C.positions == [0, 1]
    assert C.terms[0] == [Summand((1,), 0)]
    assert C.terms[1] == [Summand((), -1)]
    d = C.blocks[0][(0, 0)]
    ring = C.ring
    # e |-> 1, f |-> x_1
    assert d.entry(0, 0) == ring.one()
    assert d.entry(0, 1) == ring.var(0)
    C.check()


def test_negative_crossing_shape():
    C = crossing_complex(-1, 2)
    assert C.positions == [-1, 0]
    assert C.terms[-1] == [Summand((), 1)]
    assert C.terms[0] == [Summand((1,), 0)]
    d = C.blocks[-1][(0, 0)]
    ring = C.ring
    # 1 |-> x_2 e - f
    assert d.entry(0, 0) == ring.var(1)
    assert d.entry(1, 0) == -ring.one()
    C.check()


def test_crossing_index_range():
    with pytest.raises(ValueError):
        crossing_complex(2, 2)
    with pytest.raises(ValueError):
        crossing_complex(0, 3)


def test_custom_shift_conventions_enter_the_complex():
    conv = Conventions(pos_shift=-1, neg_shift=1, normalization="none")
    assert crossing_complex(1, 2, conv).terms[1][0].shift == -1
    assert crossing_complex(-1, 2, conv).terms[-1][0].shift == 1


# ---------------------------------------------------------------------------
# braid words


def test_perm_of_word():
    assert perm_of_word([], 3) == (0, 1, 2)
    assert perm_of_word([1], 3) == (1, 0, 2)
    assert perm_of_word([1, 2], 3) == (1, 2, 0)
    assert perm_of_word([1, 1], 2) == (0, 1)
    with pytest.raises(ValueError):
        perm_of_word([3], 3)


def test_cycles_and_cycle_type():
    p = perm_of_word([1, 2], 3)
    assert sorted(len(c) for c in cycles_of_perm(p)) == [3]
    assert cycle_type(p) == (3,)
    assert cycle_type((0, 1, 2)) == (1, 1, 1)
    assert writhe([1, -2, 1, 1]) == 2
    assert writhe([]) == 0


# ---------------------------------------------------------------------------
# d^2 = 0 across a corpus, simplified or not


def _word_corpus(n, max_len, rng, count):
    letters = [i for i in range(1, n)] + [-i for i in range(1, n)]
    out = set()
    while len(out) < count:
        ln = rng.randrange(max_len + 1)
        out.add(tuple(rng.choice(letters) for _ in range(ln)))
    return sorted(out)


@pytest.mark.parametrize("n", [2, 3])
def test_dsquared_zero_on_corpus(n):
    rng = random.Random(n)
    for word in _word_corpus(n, 4, rng, 10):
        rouquier_complex(list(word), n).check()
        rouquier_complex(list(word), n, simplify_chain=False).check()


def test_tensor_mismatched_strands_rejected():
    with pytest.raises(ValueError):
        complex_tensor(unit_complex(2), unit_complex(3))


# ---------------------------------------------------------------------------
# simplification


def test_reidemeister_ii_collapses_to_unit():
    C = rouquier_complex([1, -1], 2)
    assert C.positions == [0]
    assert C.terms[0] == [Summand((), 0)]
    assert not C.blocks
    D = rouquier_complex([1, -1, 2, -2], 3)
    assert D.terms == {0: [Summand((), 0)]}


def test_simplify_is_idempotent_and_shrinks():
    raw = rouquier_complex([2, 1, -2], 3, simplify_chain=False)
    small = simplify(raw, check=True)
    assert small.total_rank() < raw.total_rank()
    again = simplify(small)
    assert again.total_rank() == small.total_rank()


def test_square_splitting_resolves_repeated_letters():
    # sigma_1 sigma_1 unsimplified contains the rank-4 square b1*b1; after
    # simplification only squarefree words survive as labels.
    raw = rouquier_complex([1, 1], 2, simplify_chain=False)
    assert any(s.word == (1, 1) for ss in raw.terms.values() for s in ss)
    C = simplify(raw, check=True)
    for ss in C.terms.values():
        for s in ss:
            assert all(a != b for a, b in zip(s.word, s.word[1:]))


def test_simplified_trefoil_ranks():
    C = rouquier_complex([1, 1, 1], 2)
    ranks = {t: sum(s.bimodule(2).rank for s in C.terms[t])
             for t in C.positions}
    assert ranks == {-2: 2, -1: 2, 0: 2, 1: 1}


# ---------------------------------------------------------------------------
# normalization


def test_identity_braids_get_no_shift():
    for n in (1, 2, 3):
        C = rouquier_complex([], n)
        assert C.meta["a_shift"] == 0
        assert C.terms == {0: [Summand((), 0)]}


@pytest.mark.parametrize("word,n,expect_shift,expect_writhe", [
    ([1], 2, 1, 1),          # positive stabilization of the unknot
    ([-1], 2, 0, -1),        # negative stabilization
    ([1, 1], 2, 1, 2),       # Hopf link
    ([1, 1, 1], 2, 2, 3),    # trefoil
    ([1, -2], 3, 1, 0),
])
def test_markov_shift_amounts(word, n, expect_shift, expect_writhe):
    C = rouquier_complex(word, n)
    assert C.meta["a_shift"] == expect_shift
    assert C.meta["writhe"] == expect_writhe
    # position and internal shifts really happened: compare against "none"
    raw = rouquier_complex(word, n, Conventions(normalization="none"))
    assert raw.meta["a_shift"] == 0
    s, w = expect_shift, expect_writhe
    assert sorted(C.terms) == sorted(t - s for t in raw.terms)
    for t in raw.positions:
        assert [x.shift for x in C.terms[t - s]] == \
            [x.shift - w for x in raw.terms[t]]


def test_unknown_normalization_rejected():
    with pytest.raises(ValueError):
        rouquier_complex([1], 2, Conventions(normalization="bogus"))


def test_meta_records_the_run():
    C = rouquier_complex([1, 1, 1], 2)
    assert C.meta["word"] == [1, 1, 1]
    assert C.meta["strands"] == 2
    assert C.meta["cycle_type"] == [2]
    assert C.meta["simplified"] is True
    assert C.meta["conventions"] == Conventions().key()


# ---------------------------------------------------------------------------
# structure


def test_total_rank_and_flat_diff():
    C = rouquier_complex([1], 2, Conventions(normalization="none"))
    assert C.total_rank() == 3
    d = C.flat_diff(0)
    assert d is not None and d.dst.rank == 1 and d.src.rank == 2


def test_shift_position_and_internal():
    C = rouquier_complex([1], 2, Conventions(normalization="none"))
    up = C.shift_position(5)
    assert sorted(up.terms) == [5, 6]
    inn = C.shift_internal(2)
    assert [s.shift for s in inn.terms[1]] == [1]
    inn.check()


def test_complex_json_roundtrip():
    C = rouquier_complex([1, -2, 1], 3)
    data = json.loads(json.dumps(C.to_json()))
    back = BimoduleComplex.from_json(data)
    assert back.n == C.n
    assert back.terms == C.terms
    assert back.meta == C.meta
    for t, bl in C.blocks.items():
        for key, m in bl.items():
            assert back.blocks[t][key] == m
    back.check()


def test_summand_labels():
    assert Summand((), 0).label() == "R"
    assert Summand((1, 2), -1).label() == "b1*b2<-1>"
