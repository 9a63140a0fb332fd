"""Support strata and nilpotence of symmetric-function actions.

The closure of the stratum attached to a permutation conjugacy class (points
constant on the cycles of a class representative, up to reordering) is cut out
of the space of elementary symmetric values by explicit equations.  For a
braid whose underlying permutation lies in that class, the assembled link
homology is predicted to be supported there: every generator of the stratum
ideal should act nilpotently.

``support_report`` certifies this on a truncation.  PASS means every homology
class starting in the window is annihilated by some power of every generator
(slices above the window are computed lazily as the iterates climb).  A class
whose iterates cross the window edge still nonzero is counted as genuine
evidence of non-nilpotence: on the corpus these are exactly the free
polynomial towers, where multiplication is injective.  Exhausting the power
bound while the iterate is still strictly inside the window is reported as
INCONCLUSIVE and never as a pass.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .hochschild import HomologyModel, SymFunOperator
from .polyalg import Poly, PolyRing, elem_sym
from .rouquier import (Conventions, cycle_type, perm_of_word,
                       rouquier_complex, writhe)
from .soergel import symmetric_action_matrices

NILPOTENT = "NILPOTENT"
NOT_NILPOTENT = "NOT_NILPOTENT"
INCONCLUSIVE = "INCONCLUSIVE"


# ---------------------------------------------------------------------------
# stratum ideals


@lru_cache(maxsize=None)
def e_ring(n: int) -> PolyRing:
    """Q[e1..en] with deg e_k = 2k on the X axis."""
    return PolyRing(tuple(f"e{k}" for k in range(1, n + 1)), ("X",),
                    tuple((2 * k,) for k in range(1, n + 1)))


def _e(n: int, k: int) -> Poly:
    return e_ring(n).var(k - 1)


@dataclass(frozen=True)
class StratumIdeal:
    """Equations (in e1..en) cutting out the closed stratum of a conjugacy
    class inside the space of unordered point configurations."""

    n: int
    cycle_type: tuple[int, ...]
    gens: tuple[Poly, ...]

    def in_x(self, ring: PolyRing) -> list[Poly]:
        """The generators as symmetric polynomials in x1..xn of ``ring``."""
        images = [elem_sym(ring, k) for k in range(1, self.n + 1)]
        return [g.substitute(ring, images) for g in self.gens]

    def verify_random(self, trials: int = 25, seed: int = 0) -> bool:
        """Every generator vanishes at random points constant on the cycles
        of a class representative."""
        rng = random.Random(seed)
        from .polyalg import polynomial_ring
        xr = polynomial_ring(self.n, axes=("X",), degree=(2,))
        in_x = self.in_x(xr)
        for _ in range(trials):
            vals = []
            for ln in self.cycle_type:
                v = Fraction(rng.randint(-50, 50), rng.randint(1, 9))
                vals.extend([v] * ln)
            for g in in_x:
                total = Fraction(0)
                for mono, c in g.terms.items():
                    term = c
                    for i, e in enumerate(mono):
                        term *= vals[i] ** e
                    total += term
                if total:
                    return False
        return True


def stratum_ideal(ct: Sequence[int], n: int,
                  generators: Sequence[Poly] | None = None) -> StratumIdeal:
    """The stratum ideal of a cycle type: precomputed for n <= 3, otherwise
    ``generators`` (polynomials over ``e_ring(n)``) must be supplied."""
    ct = tuple(sorted(ct, reverse=True))
    if sum(ct) != n:
        raise ValueError(f"cycle type {ct} does not sum to {n}")
    if generators is not None:
        return StratumIdeal(n, ct, tuple(generators))
    if ct == tuple([1] * n):
        return StratumIdeal(n, ct, ())
    if n == 2 and ct == (2,):
        e1, e2 = _e(2, 1), _e(2, 2)
        return StratumIdeal(2, ct, (e1 * e1 - 4 * e2,))
    if n == 3 and ct == (2, 1):
        e1, e2, e3 = _e(3, 1), _e(3, 2), _e(3, 3)
        disc = (e1 * e1 * e2 * e2 - 4 * e2 * e2 * e2 - 4 * e1 * e1 * e1 * e3
                + 18 * e1 * e2 * e3 - 27 * e3 * e3)
        return StratumIdeal(3, ct, (disc,))
    if n == 3 and ct == (3,):
        e1, e2, e3 = _e(3, 1), _e(3, 2), _e(3, 3)
        return StratumIdeal(3, ct, (e1 * e1 - 3 * e2,
                                    e1 * e1 * e1 - 27 * e3))
    raise ValueError(f"no precomputed stratum ideal for n={n}, class {ct}; "
                     "supply generators")


def control_class(ct: Sequence[int]) -> tuple[int, ...] | None:
    """The immediate smaller stratum: merge the two smallest parts.  None if
    the class is a single cycle (nothing strictly smaller)."""
    ct = sorted(ct, reverse=True)
    if len(ct) < 2:
        return None
    merged = ct[:-2] + [ct[-2] + ct[-1]]
    return tuple(sorted(merged, reverse=True))


# ---------------------------------------------------------------------------
# nilpotence on assembled homology


@dataclass
class GeneratorVerdict:
    generator: str
    verdict: str
    min_power: int | None = None
    witness_class: dict | None = None

    def to_json(self) -> dict:
        out = {"generator": self.generator, "verdict": self.verdict}
        if self.min_power is not None:
            out["min_power"] = self.min_power
        if self.witness_class is not None:
            out["witness_class"] = self.witness_class
        return out


@dataclass
class SupportReport:
    word: list[int]
    strands: int
    writhe: int
    cycle_type: tuple[int, ...]
    x_max: int
    power_bound: int
    generators: list[GeneratorVerdict]
    control: dict | None = None

    @property
    def verdict(self) -> str:
        if any(g.verdict == NOT_NILPOTENT for g in self.generators):
            return NOT_NILPOTENT
        if any(g.verdict == INCONCLUSIVE for g in self.generators):
            return INCONCLUSIVE
        return NILPOTENT

    @property
    def exit_code(self) -> int:
        v = self.verdict
        if v == NILPOTENT:
            return 0
        if v == INCONCLUSIVE:
            return 2
        return 1

    def to_json(self) -> dict:
        out = {
            "schema": "support-report/1",
            "braid": list(self.word),
            "strands": self.strands,
            "writhe": self.writhe,
            "cycle_type": list(self.cycle_type),
            "x_max": self.x_max,
            "power_bound": self.power_bound,
            "generators": [g.to_json() for g in self.generators],
            "verdict": self.verdict,
        }
        if self.control is not None:
            out["control"] = self.control
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, indent=2)


def _nilpotence_of(model: HomologyModel, poly: Poly, x_max: int,
                   power_bound: int) -> GeneratorVerdict:
    """Iterate the induced operator on every homology class in the window."""
    op = SymFunOperator(model, poly)
    step = op.xdeg
    if step <= 0:
        raise ValueError("stratum generators must have positive degree")
    s = model.s
    mats: dict[tuple[int, int, int], list[list[Fraction]]] = {}

    def mat(a, X, t):
        key = (a, X, t)
        if key not in mats:
            mats[key] = op.matrix(a, X, t)
        return mats[key]

    worst = 0
    inconclusive: dict | None = None
    for (a, X, t, i) in model.classes(x_max):
        hb = model.basis(a, X)
        vec = [Fraction(k == i) for k in range(hb.dim(t))]
        Xc, k = X, 0
        while any(vec):
            if Xc > x_max:
                # survived across the whole computable band, still nonzero
                return GeneratorVerdict(_poly_str(poly), NOT_NILPOTENT,
                                        witness_class=_class_json(a, X, t, i, s))
            if k >= power_bound:
                # bound exhausted strictly inside the window
                if inconclusive is None:
                    inconclusive = _class_json(a, X, t, i, s)
                break
            m = mat(a, Xc, t)
            vec = [sum(row[c] * vec[c] for c in range(len(vec)))
                   for row in m] if m else []
            Xc += step
            k += 1
        else:
            worst = max(worst, k)
    if inconclusive is not None:
        return GeneratorVerdict(_poly_str(poly), INCONCLUSIVE,
                                witness_class=inconclusive)
    return GeneratorVerdict(_poly_str(poly), NILPOTENT, min_power=worst)


def _class_json(a_raw: int, X: int, t: int, i: int, s: int) -> dict:
    return {"a": a_raw - s, "X": X, "C": t + a_raw - s, "index": i}


def _poly_str(p: Poly) -> str:
    return repr(p)


def support_report(word: Sequence[int], n: int, x_max: int | None = None,
                   power_bound: int = 6,
                   conventions: Conventions | None = None,
                   with_control: bool = True) -> SupportReport:
    """Nilpotence verdicts for the stratum ideal of a braid's permutation
    class, on assembled homology restricted to internal degree <= x_max."""
    conv = conventions or Conventions()
    C = rouquier_complex(list(word), n, conv)
    w = writhe(list(word))
    ct = cycle_type(perm_of_word(list(word), n))
    if x_max is None:
        x_max = 2 * (abs(w) + n + 2)
    model = HomologyModel(C)
    ring = model.asm._bim[C.positions[0]].ring

    ideal = stratum_ideal(ct, n)
    gens = [_nilpotence_of(model, g, x_max, power_bound)
            for g in ideal.in_x(ring)]

    control = None
    if with_control:
        cc = control_class(ct)
        if cc is not None:
            cideal = stratum_ideal(cc, n)
            cgens = [_nilpotence_of(model, g, x_max, power_bound)
                     for g in cideal.in_x(ring)]
            control = {"cycle_type": list(cc),
                       "generators": [g.to_json() for g in cgens]}

    return SupportReport(list(word), n, w, ct, x_max, power_bound, gens,
                         control)


# ---------------------------------------------------------------------------
# left/right coincidence of the symmetric action


def left_right_coincide(M, k: int) -> bool:
    """The left and right multiplication by e_k are the same matrix on a
    tensor-product bimodule (the invariant the whole symmetric action relies
    on)."""
    left, right = symmetric_action_matrices(M, k)
    return left == right
