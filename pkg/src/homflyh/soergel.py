"""Bott-Samelson bimodules in the free-left-module model.

A bimodule here is a free graded left module over R = Q[x_1..x_n] together
with commuting right-multiplication operators rho_1..rho_n (one per variable,
each of X-degree 2).  The defining property of the class of bimodules this
engine works with is that *symmetric* polynomials act the same on both sides:
f(rho) = f(x) . Id for every symmetric f.  ``check_bimodule`` verifies exactly
that, plus commutativity.

The generator object ``bs_generator(i, n)`` has rank 2 with generators
e = 1(x)1 in degree <-1> and f = 1(x)x_i in degree <+1>; right multiplication
by x_i sends e -> f and f -> -x_i x_{i+1} e + (x_i + x_{i+1}) f, i.e. rho_i
satisfies its characteristic relation rho^2 - (x_i+x_{i+1}) rho + x_i x_{i+1}.

Tensor products are taken over R using the evaluation rule: the operators of
M (x) N are the operators of N with their polynomial entries evaluated at the
(commuting) operators of M; this is associative and keeps everything in the
free-left-module picture.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Mapping, Sequence

from .multigrade import DimTable, GradingScheme, Window
from .polyalg import (GradedFreeModule, Poly, PolyMatrix, PolyRing, elem_sym,
                      polynomial_ring)

X_SCHEME = GradingScheme(("X", "C"), "C")


def bimodule_ring(n: int) -> PolyRing:
    return polynomial_ring(n)


@dataclass(frozen=True)
class Bimodule:
    """Free left R-module plus right operators rho_k (k = 0..n-1, 0-based)."""

    ring: PolyRing
    module: GradedFreeModule
    rho: tuple[PolyMatrix, ...]

    def __post_init__(self) -> None:
        if len(self.rho) != self.ring.nvars:
            raise ValueError("need one right operator per variable")
        for k, r in enumerate(self.rho):
            if r.src.gens != self.module.gens or r.dst.gens != self.module.gens:
                raise ValueError(f"rho[{k}] has wrong shape")
            if r.offset != (2,):
                raise ValueError(f"rho[{k}] must have X-degree 2")

    @property
    def rank(self) -> int:
        return self.module.rank

    @property
    def gens(self) -> tuple[tuple[int, ...], ...]:
        return self.module.gens

    def shift(self, k: int) -> "Bimodule":
        """Formal shift <k> of the X-grading."""
        return Bimodule(self.ring, self.module.shift((k,)),
                        tuple(r.shift((k,)) for r in self.rho))

    def direct_sum(self, other: "Bimodule") -> "Bimodule":
        if self.ring != other.ring:
            raise ValueError("ring mismatch")
        mod = self.module.direct_sum(other.module)
        rho = []
        for r1, r2 in zip(self.rho, other.rho):
            entries = dict(r1.entries)
            off_r, off_c = self.rank, self.rank
            for (r, c), p in r2.entries.items():
                entries[(r + off_r, c + off_c)] = p
            rho.append(PolyMatrix(mod, mod, entries, (2,)))
        return Bimodule(self.ring, mod, tuple(rho))

    def eval_poly(self, p: Poly) -> PolyMatrix:
        """p(rho_1, ..., rho_n) as a matrix on this module."""
        return eval_at_operators(p, self.module, self.rho)

    def graded_left_rank(self) -> DimTable:
        """Dimension table of the generators (left rank), on the X axis."""
        dims: dict[tuple[int, int], int] = {}
        for (x,) in self.module.gens:
            dims[(x, 0)] = dims.get((x, 0), 0) + 1
        return DimTable(X_SCHEME, dims)

    def to_json(self) -> dict:
        return {"ring": self.ring.to_json(), "module": self.module.to_json(),
                "rho": [r.to_json() for r in self.rho]}

    @classmethod
    def from_json(cls, data: Mapping) -> "Bimodule":
        ring = PolyRing.from_json(data["ring"])
        module = GradedFreeModule(ring, tuple(tuple(g) for g in data["module"]["gens"]))
        rho = []
        for rj in data["rho"]:
            entries = {(e["row"], e["col"]): Poly.from_json(ring, e["poly"])
                       for e in rj["entries"]}
            rho.append(PolyMatrix(module, module, entries, tuple(rj["offset"])))
        return cls(ring, module, tuple(rho))


def eval_at_operators(p: Poly, module: GradedFreeModule,
                      ops: Sequence[PolyMatrix]) -> PolyMatrix:
    """Evaluate a polynomial at commuting operators on a free module.

    The result has offset equal to the degree of p (p must be homogeneous).
    """
    deg = p.homogeneous_degree()
    if deg is None:
        deg = (0,) * len(module.ring.axes)
    acc: dict[tuple[int, int], Poly] = {}
    # cache operator powers
    powers: dict[tuple[int, int], PolyMatrix] = {}

    def op_power(i: int, e: int) -> PolyMatrix:
        if e == 0:
            return PolyMatrix.identity(module)
        got = powers.get((i, e))
        if got is None:
            got = ops[i].compose(op_power(i, e - 1))
            powers[(i, e)] = got
        return got

    result: PolyMatrix | None = None
    for mono, coef in sorted(p.terms.items()):
        term: PolyMatrix | None = None
        for i, e in enumerate(mono):
            if not e:
                continue
            pw = op_power(i, e)
            term = pw if term is None else term.compose(pw)
        if term is None:
            term = PolyMatrix.identity(module)
        term = term.scale(coef)
        result = term if result is None else result + term
    if result is None:
        return PolyMatrix.zero(module, module, deg)
    return result


def unit_bimodule(n: int, ring: PolyRing | None = None) -> Bimodule:
    """R itself: one generator in degree 0, right = left multiplication."""
    ring = ring or bimodule_ring(n)
    mod = GradedFreeModule(ring, ((0,),))
    rho = tuple(PolyMatrix(mod, mod, {(0, 0): ring.var(i)}, (2,))
                for i in range(n))
    return Bimodule(ring, mod, rho)


def bs_generator(i: int, n: int, ring: PolyRing | None = None) -> Bimodule:
    """The generating bimodule for the i-th simple reflection (1-based i < n).

    Rank 2 over R with generators e <-1>, f <+1>.
    """
    if not (1 <= i < n):
        raise ValueError(f"reflection index {i} out of range for n={n}")
    ring = ring or bimodule_ring(n)
    mod = GradedFreeModule(ring, ((-1,), (1,)))
    xi, xj = ring.var(i - 1), ring.var(i)
    rho = []
    for k in range(n):
        if k == i - 1:
            rho.append(PolyMatrix(mod, mod, {
                (1, 0): ring.one(),           # e -> f
                (0, 1): -(xi * xj),           # f -> -x_i x_{i+1} e + ...
                (1, 1): xi + xj,
            }, (2,)))
        elif k == i:
            # rho_{i+1} = (x_i + x_{i+1}) Id - rho_i
            rho.append(PolyMatrix(mod, mod, {
                (0, 0): xi + xj,
                (1, 0): -ring.one(),
                (0, 1): xi * xj,
            }, (2,)))
        else:
            xk = ring.var(k)
            rho.append(PolyMatrix(mod, mod, {(0, 0): xk, (1, 1): xk}, (2,)))
    return Bimodule(ring, mod, tuple(rho))


def tensor(M: Bimodule, N: Bimodule) -> Bimodule:
    """M (x)_R N; generator (a, b) is flattened to index a * rank(N) + b."""
    if M.ring != N.ring:
        raise ValueError("ring mismatch in tensor")
    ring = M.ring
    gens = tuple(tuple(ga + gb for ga, gb in zip(da, db))
                 for da in M.gens for db in N.gens)
    mod = GradedFreeModule(ring, gens)
    rk_n = N.rank
    rho_out = []
    for k in range(ring.nvars):
        entries: dict[tuple[int, int], Poly] = {}
        for (bp, b), p in N.rho[k].entries.items():
            block = eval_at_operators(p, M.module, M.rho)
            for (ap, a), q in block.entries.items():
                entries[(ap * rk_n + bp, a * rk_n + b)] = q
        rho_out.append(PolyMatrix(mod, mod, entries, (2,)))
    return Bimodule(ring, mod, tuple(rho_out))


def tensor_map(f: PolyMatrix, g: PolyMatrix, srcM: Bimodule, srcN: Bimodule,
               dstM: Bimodule, dstN: Bimodule) -> PolyMatrix:
    """f (x) g as a map srcM (x) srcN -> dstM (x) dstN of bimodules.

    Block rule: the (b', b) entry of g is evaluated at the operators of dstM
    and composed with f.
    """
    src = GradedFreeModule(srcM.ring,
                           tuple(tuple(ga + gb for ga, gb in zip(da, db))
                                 for da in srcM.gens for db in srcN.gens))
    dst = GradedFreeModule(dstM.ring,
                           tuple(tuple(ga + gb for ga, gb in zip(da, db))
                                 for da in dstM.gens for db in dstN.gens))
    rk_sn = srcN.rank
    rk_dn = dstN.rank
    entries: dict[tuple[int, int], Poly] = {}
    for (bp, b), p in g.entries.items():
        block = eval_at_operators(p, dstM.module, dstM.rho).compose(f)
        for (ap, a), q in block.entries.items():
            entries[(ap * rk_dn + bp, a * rk_sn + b)] = q
    offset = tuple(a + b for a, b in zip(f.offset, g.offset))
    return PolyMatrix(src, dst, entries, offset)


@lru_cache(maxsize=None)
def word_bimodule(word: tuple[int, ...], n: int) -> Bimodule:
    """Tensor product of generators, left to right."""
    if not word:
        return unit_bimodule(n)
    if len(word) == 1:
        return bs_generator(word[0], n)
    left = word_bimodule(word[:-1], n)
    return tensor(left, bs_generator(word[-1], n))


def check_bimodule(M: Bimodule) -> list[str]:
    """Verify the defining identities; returns a list of violation messages
    (empty = all good).

    - the rho_k commute pairwise,
    - e_k(rho) = e_k(x) . Id for every elementary symmetric e_k.
    """
    failures: list[str] = []
    n = M.ring.nvars
    for a in range(n):
        for b in range(a + 1, n):
            lhs = M.rho[a].compose(M.rho[b])
            rhs = M.rho[b].compose(M.rho[a])
            if lhs != rhs:
                failures.append(f"rho_{a+1} and rho_{b+1} do not commute")
    for k in range(1, n + 1):
        ek = elem_sym(M.ring, k)
        left = M.eval_poly(ek)
        want = {(i, i): ek for i in range(M.rank)}
        scalar = PolyMatrix(M.module, M.module, want, left.offset)
        if left != scalar:
            failures.append(f"e_{k}(rho) differs from e_{k}(x) . Id")
    return failures


def symmetric_action_matrices(M: Bimodule, k: int) -> tuple[PolyMatrix, PolyMatrix]:
    """(left, right) chain-level action of e_k: scalar multiplication by
    e_k(x) versus e_k(rho).  These must be equal matrices."""
    ek = elem_sym(M.ring, k)
    right = M.eval_poly(ek)
    left = PolyMatrix(M.module, M.module,
                      {(i, i): ek for i in range(M.rank)}, right.offset)
    return left, right
