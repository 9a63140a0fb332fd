"""Tests for stratum ideals and nilpotence verdicts on assembled homology."""

import json

import pytest

from homflyh.polyalg import polynomial_ring
from homflyh.soergel import word_bimodule
from homflyh.supports import (
    GeneratorVerdict,
    SupportReport,
    control_class,
    e_ring,
    left_right_coincide,
    stratum_ideal,
    support_report,
)


# ---------------------------------------------------------------------------
# stratum ideals


def test_stratum_ideal_two_cycle():
    ideal = stratum_ideal((2,), 2)
    assert ideal.cycle_type == (2,)
    assert [repr(g) for g in ideal.gens] == ["-4*e2 + 1*e1^2"]
    xr = polynomial_ring(2, axes=("X",), degree=(2,))
    # e1^2 - 4 e2 = (x1 - x2)^2
    assert [repr(g) for g in ideal.in_x(xr)] == ["1*x2^2 + -2*x1*x2 + 1*x1^2"]
    assert ideal.verify_random()


def test_stratum_ideal_three_strand_classes():
    disc = stratum_ideal((2, 1), 3)
    assert len(disc.gens) == 1
    assert disc.verify_random()
    full = stratum_ideal((3,), 3)
    assert [repr(g) for g in full.gens] == [
        "-3*e2 + 1*e1^2",
        "-27*e3 + 1*e1^3",
    ]
    assert full.verify_random()


def test_stratum_ideal_open_class_is_empty():
    assert stratum_ideal((1, 1), 2).gens == ()
    assert stratum_ideal((1, 1, 1), 3).gens == ()


def test_stratum_ideal_validates_input():
    with pytest.raises(ValueError):
        stratum_ideal((2,), 3)
    with pytest.raises(ValueError):
        stratum_ideal((2, 2), 4)  # not precomputed, no generators given


def test_stratum_ideal_custom_generators_and_verify():
    # supplying generators is allowed for any n; verify_random catches junk
    good = stratum_ideal((2, 2), 4, generators=[])
    assert good.verify_random()
    bad = stratum_ideal((2,), 2, generators=[e_ring(2).var(0)])
    assert not bad.verify_random()


def test_control_class():
    assert control_class((1, 1)) == (2,)
    assert control_class((2, 1)) == (3,)
    assert control_class((3,)) is None
    assert control_class((2, 2)) == (4,)
    assert control_class((1, 1, 1)) == (2, 1)


# ---------------------------------------------------------------------------
# verdict bookkeeping (no homology needed)


def _report(verdicts):
    gens = [GeneratorVerdict(f"g{i}", v) for i, v in enumerate(verdicts)]
    return SupportReport([], 2, 0, (1, 1), 8, 6, gens)


def test_verdict_dominance_and_exit_codes():
    assert _report([]).verdict == "NILPOTENT"
    assert _report(["NILPOTENT", "NILPOTENT"]).exit_code == 0
    assert _report(["NILPOTENT", "INCONCLUSIVE"]).verdict == "INCONCLUSIVE"
    assert _report(["NILPOTENT", "INCONCLUSIVE"]).exit_code == 2
    assert _report(["INCONCLUSIVE", "NOT_NILPOTENT"]).verdict == "NOT_NILPOTENT"
    assert _report(["INCONCLUSIVE", "NOT_NILPOTENT"]).exit_code == 1


# ---------------------------------------------------------------------------
# full reports


def test_trefoil_report_nilpotent():
    rep = support_report([1, 1, 1], 2, x_max=16, power_bound=6)
    assert rep.cycle_type == (2,)
    assert rep.writhe == 3
    assert rep.verdict == "NILPOTENT"
    assert rep.exit_code == 0
    assert len(rep.generators) == 1
    g = rep.generators[0]
    assert g.generator == "1*x2^2 + -2*x1*x2 + 1*x1^2"
    assert g.min_power == 1
    assert rep.control is None  # (2,) is already a single cycle


def test_default_window_from_writhe():
    rep = support_report([1, 1, 1], 2)
    assert rep.x_max == 2 * (3 + 2 + 2)


@pytest.mark.parametrize("word", [[], [1, 1]])
def test_open_stratum_with_control(word):
    # closures of these words have full support: the stratum ideal of the
    # identity class is empty, so the verdict is vacuously NILPOTENT, and
    # the control stratum must come back NOT_NILPOTENT
    rep = support_report(word, 2, x_max=12)
    assert rep.cycle_type == (1, 1)
    assert rep.generators == []
    assert rep.verdict == "NILPOTENT"
    assert rep.control is not None
    assert rep.control["cycle_type"] == [2]
    ctl = rep.control["generators"]
    assert [g["verdict"] for g in ctl] == ["NOT_NILPOTENT"]
    assert ctl[0]["generator"] == "1*x2^2 + -2*x1*x2 + 1*x1^2"
    wc = ctl[0]["witness_class"]
    assert set(wc) == {"a", "X", "C", "index"}


def test_three_strand_full_cycle():
    rep = support_report([1, -2], 3, x_max=10)
    assert rep.cycle_type == (3,)
    assert rep.writhe == 0
    assert [(g.verdict, g.min_power) for g in rep.generators] == [
        ("NILPOTENT", 1),
        ("NILPOTENT", 1),
    ]
    assert rep.control is None
    assert rep.exit_code == 0


def test_conjugate_words_agree():
    a = support_report([1, -2], 3, x_max=8)
    b = support_report([-2, 1], 3, x_max=8)
    assert a.cycle_type == b.cycle_type
    assert [g.to_json() for g in a.generators] == [g.to_json() for g in b.generators]


def test_power_bound_zero_is_inconclusive():
    rep = support_report([1, 1, 1], 2, x_max=16, power_bound=0)
    assert rep.verdict == "INCONCLUSIVE"
    assert rep.exit_code == 2
    g = rep.generators[0]
    assert g.min_power is None
    assert g.witness_class is not None


def test_report_json_schema():
    blob = json.loads(support_report([1, 1, 1], 2, x_max=12).dumps())
    assert blob["schema"] == "support-report/1"
    assert blob["braid"] == [1, 1, 1]
    assert blob["strands"] == 2
    assert blob["writhe"] == 3
    assert blob["cycle_type"] == [2]
    assert blob["verdict"] == "NILPOTENT"
    assert "control" not in blob
    for g in blob["generators"]:
        assert set(g) <= {"generator", "verdict", "min_power", "witness_class"}


# ---------------------------------------------------------------------------
# the invariant the verdicts rely on


@pytest.mark.parametrize("word,n", [((1,), 2), ((1, 1), 2), ((1, 2), 3), ((2, 1, 2), 3)])
def test_left_right_multiplication_coincide(word, n):
    M = word_bimodule(word, n)
    assert all(left_right_coincide(M, k) for k in range(1, n + 1))
