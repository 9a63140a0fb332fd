"""Skew polynomial algebra models for the trace side.

Four algebras, all finite data over exact rationals:

- ``A(n)``     Q[x, theta] x| S_n   x at (X, C) = (2, 2), theta at (2, 1)
- ``Abar(n)``  Q[x] x| S_n          x at (2, 2)
- ``B(n)``     Q[x, y] x| S_n       x at (2, 2), y at (-2, 0)
- ``Btilde(n)``same data as B(n) read through the (X, Y) degree dictionary
               (x at (2, 1, 0), y at (-2, 0, 0)); see ``btilde_dims``.

A module is a finite free complex over the even variables with explicit
operator matrices for everything else: theta operators (square zero, pairwise
anticommuting, anticommuting with the differential), y operators (commuting,
commuting with the differential) unless y is carried by the ring itself, and
one invertible matrix per simple transposition acting semilinearly (it
permutes the polynomial variables as it passes them).  ``check_module``
verifies every relation symbolically.

The Koszul-duality transforms:

- ``inv_theta_enh(M)``: M (x) Q[y] with differential d_M + sum theta_i y_i;
  kills theta in homology.  On the theta-trivial module it returns the free
  B(n) module on the nose; on the free A(n) module its homology is the
  y-trivial module.
- ``coinv_y_enh(M)``: M (x) Lambda(eta) with differential
  d(m (x) eta_S) = (-1)^{|S|} d_M m (x) eta_S + sum_i y_i m (x) eta_i ^ eta_S
  and theta_i := eta_i ^ -.  Inverse to the above on graded dimensions.

The twisted variants tensor by the sign character of S_n (flip the sign of
every transposition operator); degrees are untouched.  Both directions of the
equivalence, and its weight-exactness on diagonal shifts, are pinned by tests.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, permutations
from typing import Mapping, Sequence

from .multigrade import DimTable, Window, XC_SCHEME, XYC_SCHEME
from .polyalg import (GradedFreeModule, Poly, PolyMatrix, PolyRing,
                      SpanSolver, nullspace, polynomial_ring, rank_rows)

Degree = tuple[int, ...]


# ---------------------------------------------------------------------------
# permutations (tuples p with p[i] = image of i, 0-based)


def sn_elements(n: int) -> list[tuple[int, ...]]:
    return [tuple(p) for p in permutations(range(n))]


def perm_compose(p: tuple[int, ...], q: tuple[int, ...]) -> tuple[int, ...]:
    """(p o q)(i) = p(q(i))."""
    return tuple(p[q[i]] for i in range(len(p)))


def perm_word(p: tuple[int, ...]) -> list[int]:
    """p as a product of adjacent transpositions s_1..s_{n-1} (1-based),
    leftmost factor first: p = s_{w[0]} s_{w[1]} ... ."""
    cur = list(p)
    word: list[int] = []
    changed = True
    while changed:
        changed = False
        for i in range(len(cur) - 1):
            if cur[i] > cur[i + 1]:
                cur[i], cur[i + 1] = cur[i + 1], cur[i]
                word.append(i + 1)
                changed = True
    # bubble sort built cur = s_{w[-1]} ... s_{w[0]} p = id
    return word[::-1]


def perm_sign(p: tuple[int, ...]) -> int:
    return -1 if len(perm_word(p)) % 2 else 1


def perm_cycle_type(p: tuple[int, ...]) -> tuple[int, ...]:
    seen = [False] * len(p)
    out = []
    for s in range(len(p)):
        if seen[s]:
            continue
        ln, k = 0, s
        while not seen[k]:
            seen[k] = True
            ln += 1
            k = p[k]
        out.append(ln)
    return tuple(sorted(out, reverse=True))


def _adjacent(n: int, i: int) -> tuple[int, ...]:
    p = list(range(n))
    p[i - 1], p[i] = p[i], p[i - 1]
    return tuple(p)


def _partitions(n: int, most: int | None = None) -> list[tuple[int, ...]]:
    """Partitions of n in weakly decreasing order."""
    most = n if most is None else most
    if n == 0:
        return [()]
    out = []
    for head in range(min(n, most), 0, -1):
        for rest in _partitions(n - head, head):
            out.append((head,) + rest)
    return out


def _cycle_type_rep(ct: tuple[int, ...]) -> tuple[int, ...]:
    """A permutation with the given cycle type (consecutive cycles)."""
    n = sum(ct)
    p = list(range(n))
    start = 0
    for ln in ct:
        for k in range(ln):
            p[start + k] = start + (k + 1) % ln
        start += ln
    return tuple(p)


# ---------------------------------------------------------------------------
# algebras


@dataclass(frozen=True)
class SkewAlgebra:
    tag: str  # "A" | "Abar" | "B" | "Btilde"
    n: int

    def __post_init__(self):
        if self.tag not in ("A", "Abar", "B", "Btilde"):
            raise ValueError(f"unknown algebra tag {self.tag!r}")
        if self.n < 1:
            raise ValueError("need n >= 1")

    @property
    def has_theta(self) -> bool:
        return self.tag == "A"

    @property
    def has_y(self) -> bool:
        return self.tag in ("B", "Btilde")

    def degree_table(self) -> dict:
        t = {"x": (2, 2)}
        if self.has_theta:
            t["theta"] = (2, 1)
        if self.has_y:
            t["y"] = (-2, 0)
        if self.tag == "Btilde":
            t = {"x": (2, 1, 0), "y": (-2, 0, 0)}
        return t

    def ring(self) -> PolyRing:
        return x_ring(self.n) if not self.has_y else xy_ring(self.n)


def A(n: int) -> SkewAlgebra:
    return SkewAlgebra("A", n)


def Abar(n: int) -> SkewAlgebra:
    return SkewAlgebra("Abar", n)


def B(n: int) -> SkewAlgebra:
    return SkewAlgebra("B", n)


def Btilde(n: int) -> SkewAlgebra:
    return SkewAlgebra("Btilde", n)


@lru_cache(maxsize=None)
def x_ring(n: int) -> PolyRing:
    return polynomial_ring(n, prefix="x", axes=("X", "C"), degree=(2, 2))


@lru_cache(maxsize=None)
def xy_ring(n: int) -> PolyRing:
    names = tuple(f"x{i+1}" for i in range(n)) + tuple(f"y{i+1}" for i in range(n))
    degs = tuple((2, 2) for _ in range(n)) + tuple((-2, 0) for _ in range(n))
    return PolyRing(names, ("X", "C"), degs)


def ring_perm(ring: PolyRing, i: int, n: int) -> tuple[int, ...]:
    """Variable-index permutation of the adjacent transposition (i, i+1),
    acting on every n-block of variables (x-block, then y-block if present)."""
    nv = ring.nvars
    if nv % n:
        raise ValueError("ring variables not in n-blocks")
    out = list(range(nv))
    for b in range(0, nv, n):
        out[b + i - 1], out[b + i] = out[b + i], out[b + i - 1]
    return tuple(out)


# ---------------------------------------------------------------------------
# modules


def _mat_perm(m: PolyMatrix, perm: Sequence[int]) -> PolyMatrix:
    return PolyMatrix(m.src, m.dst,
                      {k: p.apply_perm(perm) for k, p in m.entries.items()},
                      m.offset)


class SkewModule:
    """A finite free complex over the even variables with the extra operator
    data of one of the skew algebras."""

    def __init__(self, algebra: SkewAlgebra, ring: PolyRing,
                 gens: Sequence[Degree],
                 diff: PolyMatrix | None = None,
                 theta_ops: Sequence[PolyMatrix] = (),
                 y_mode: str | None = None,
                 y_ops: Sequence[PolyMatrix] = (),
                 s_ops: Sequence[PolyMatrix] = (),
                 check: bool = True):
        self.algebra = algebra
        self.ring = ring
        self.gens = tuple(tuple(g) for g in gens)
        self.module = GradedFreeModule(ring, self.gens)
        self.diff = diff
        self.theta_ops = tuple(theta_ops)
        self.y_mode = y_mode  # None | "ring" | "ops"
        self.y_ops = tuple(y_ops)
        self.s_ops = tuple(s_ops)
        self._rank_cache: dict[tuple[int, int], int] = {}
        self._slice_cache: dict[tuple[int, int], list] = {}
        if check:
            errs = check_module(self)
            if errs:
                raise ValueError("module relations fail: " + "; ".join(errs))

    # -- basics -------------------------------------------------------------

    @property
    def n(self) -> int:
        return self.algebra.n

    @property
    def rank(self) -> int:
        return len(self.gens)

    def zero_diff(self) -> bool:
        return self.diff is None or self.diff.is_zero()

    def shift(self, dX: int = 0, dC: int = 0) -> "SkewModule":
        """Shift every generator by (dX, dC); operators carry over."""
        gens = tuple((g[0] + dX, g[1] + dC) for g in self.gens)
        mod = GradedFreeModule(self.ring, gens)

        def mv(m: PolyMatrix | None) -> PolyMatrix | None:
            if m is None:
                return None
            return PolyMatrix(mod, mod, m.entries, m.offset)

        return SkewModule(self.algebra, self.ring, gens, mv(self.diff),
                          [mv(t) for t in self.theta_ops], self.y_mode,
                          [mv(y) for y in self.y_ops],
                          [mv(s) for s in self.s_ops], check=False)

    def sign_twist(self) -> "SkewModule":
        """Tensor by the sign character: every transposition operator flips
        sign; everything else unchanged."""
        return SkewModule(self.algebra, self.ring, self.gens, self.diff,
                          self.theta_ops, self.y_mode, self.y_ops,
                          [-s for s in self.s_ops], check=False)

    def direct_sum(self, other: "SkewModule") -> "SkewModule":
        if (self.algebra, self.ring) != (other.algebra, other.ring):
            raise ValueError("direct sum over different algebras")
        gens = self.gens + other.gens
        mod = GradedFreeModule(self.ring, gens)
        r = self.rank

        def blk(a: PolyMatrix | None, b: PolyMatrix | None, off) -> PolyMatrix:
            entries = {}
            if a is not None:
                entries.update(a.entries)
            if b is not None:
                entries.update({(i + r, j + r): p
                                for (i, j), p in b.entries.items()})
            return PolyMatrix(mod, mod, entries, off)

        def off_of(a, b, default):
            return a.offset if a is not None else (b.offset if b is not None
                                                   else default)

        d = blk(self.diff, other.diff, off_of(self.diff, other.diff, (0, 1)))
        return SkewModule(
            self.algebra, self.ring, gens, d,
            [blk(a, b, (2, 1)) for a, b in zip(self.theta_ops, other.theta_ops)],
            self.y_mode,
            [blk(a, b, (-2, 0)) for a, b in zip(self.y_ops, other.y_ops)],
            [blk(a, b, (0, 0)) for a, b in zip(self.s_ops, other.s_ops)],
            check=False)

    # -- slices ---------------------------------------------------------------

    def slice_basis(self, X: int, C: int) -> list[tuple[int, Degree]]:
        key = (X, C)
        got = self._slice_cache.get(key)
        if got is not None:
            return got
        out: list[tuple[int, Degree]] = []
        for j, g in enumerate(self.gens):
            for m in _monos_exact(self.ring, (X - g[0], C - g[1])):
                out.append((j, m))
        out.sort()
        self._slice_cache[key] = out
        return out

    def slice_op(self, mat: PolyMatrix, X: int, C: int,
                 perm: Sequence[int] | None = None
                 ) -> tuple[list[dict[int, Fraction]], int]:
        """The operator on the (X, C) slice, rows per source basis element;
        ``perm`` applies the semilinear variable twist to the source monomial
        before multiplying.  Returns (rows, target dimension)."""
        src = self.slice_basis(X, C)
        oX, oC = mat.offset
        tgt = self.slice_basis(X + oX, C + oC)
        index = {bm: i for i, bm in enumerate(tgt)}
        by_col: dict[int, list[tuple[int, Poly]]] = {}
        for (r, c), p in mat.entries.items():
            by_col.setdefault(c, []).append((r, p))
        rows = []
        for (j, mono) in src:
            if perm is not None:
                nm = [0] * len(mono)
                for i, e in enumerate(mono):
                    nm[perm[i]] += e
                mono = tuple(nm)
            row: dict[int, Fraction] = {}
            for r, p in by_col.get(j, ()):
                for pm, coef in p.terms.items():
                    tm = tuple(a + b for a, b in zip(mono, pm))
                    idx = index.get((r, tm))
                    if idx is None:
                        continue
                    s = row.get(idx, 0) + coef
                    if s:
                        row[idx] = s
                    else:
                        row.pop(idx, None)
            rows.append(row)
        return rows, len(tgt)

    def _degrees_in(self, window: Window | Mapping) -> list[tuple[int, int]]:
        win = window if isinstance(window, Window) else Window(window)
        xlo, xhi = win.interval("X")
        clo, chi = win.interval("C")
        nx = sum(1 for d in self.ring.var_degrees if d == (2, 2))
        ny = self.ring.nvars - nx
        if chi is None and xhi is None:
            raise ValueError("window must bound X or C above")
        if ny and (chi is None or xlo is None):
            raise ValueError("y-variables need C bounded above and X below")
        found: set[tuple[int, int]] = set()
        for g in self.gens:
            ka = 0
            while True:
                X0, C0 = g[0] + 2 * ka, g[1] + 2 * ka
                if chi is not None and C0 > chi:
                    break
                if ny == 0 and xhi is not None and X0 > xhi:
                    break
                if ny == 0:
                    found.add((X0, C0))
                else:
                    kb = 0
                    while True:
                        X1 = X0 - 2 * kb
                        if xlo is not None and X1 < xlo:
                            break
                        found.add((X1, C0))
                        kb += 1
                ka += 1
        return sorted(d for d in found if win.contains(XC_SCHEME, d))

    def dims(self, window: Window | Mapping) -> DimTable:
        """Graded dimensions of the underlying free module."""
        entries = {}
        for (X, C) in self._degrees_in(window):
            d = len(self.slice_basis(X, C))
            if d:
                entries[(X, C)] = d
        return DimTable(XC_SCHEME, entries, window)

    def _rank_at(self, X: int, C: int) -> int:
        if self.diff is None:
            return 0
        key = (X, C)
        got = self._rank_cache.get(key)
        if got is None:
            rows, _ = self.slice_op(self.diff, X, C)
            got = rank_rows(rows)
            self._rank_cache[key] = got
        return got

    def homology_dims(self, window: Window | Mapping) -> DimTable:
        entries = {}
        for (X, C) in self._degrees_in(window):
            dim = len(self.slice_basis(X, C))
            if not dim:
                continue
            h = dim - self._rank_at(X, C) - self._rank_at(X, C - 1)
            if h:
                entries[(X, C)] = h
        return DimTable(XC_SCHEME, entries, window)

    def homology_reps(self, X: int, C: int
                      ) -> tuple[list[dict[int, Fraction]], SpanSolver, int]:
        """Representative cycles at (X, C), plus a solver over
        (boundary basis + reps) and the boundary-count offset."""
        dim = len(self.slice_basis(X, C))
        if self.diff is None:
            reps = [{i: Fraction(1)} for i in range(dim)]
            return reps, SpanSolver(reps), 0
        rows, ncols = self.slice_op(self.diff, X, C)
        eqs: list[dict[int, Fraction]] = [dict() for _ in range(ncols)]
        for i, row in enumerate(rows):
            for c, v in row.items():
                eqs[c][i] = v
        kernel = nullspace(eqs, dim)
        brows, _ = self.slice_op(self.diff, X, C - 1)
        bnd = [r for r in brows if r]
        solver_b = SpanSolver(bnd)
        bbasis = []
        seen = SpanSolver([])
        for v in bnd:
            if not _in_span(seen, v):
                bbasis.append(v)
                seen = SpanSolver(bbasis)
        reps = []
        cur = list(bbasis)
        solver = SpanSolver(cur)
        for z in kernel:
            if not _in_span(solver, z):
                reps.append(z)
                cur.append(z)
                solver = SpanSolver(cur)
        return reps, SpanSolver(bbasis + reps), len(bbasis)

    # -- serialization --------------------------------------------------------

    def to_json(self) -> dict:
        def mj(m: PolyMatrix | None):
            return None if m is None else {
                "offset": list(m.offset),
                "entries": [[r, c, [[list(mo), t.numerator, t.denominator]
                                    for mo, t in p.terms.items()]]
                            for (r, c), p in sorted(m.entries.items())],
            }

        return {
            "schema": "skew-module/1",
            "algebra": {"tag": self.algebra.tag, "n": self.algebra.n},
            "ring": self.ring.to_json(),
            "gens": [list(g) for g in self.gens],
            "diff": mj(self.diff),
            "theta_ops": [mj(t) for t in self.theta_ops],
            "y_mode": self.y_mode,
            "y_ops": [mj(y) for y in self.y_ops],
            "s_ops": [mj(s) for s in self.s_ops],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "SkewModule":
        alg = SkewAlgebra(data["algebra"]["tag"], data["algebra"]["n"])
        ring = PolyRing.from_json(data["ring"])
        gens = [tuple(g) for g in data["gens"]]
        mod = GradedFreeModule(ring, tuple(gens))

        def mm(d):
            if d is None:
                return None
            entries = {}
            for r, c, terms in d["entries"]:
                entries[(r, c)] = Poly(ring, {
                    tuple(mo): Fraction(num, den) for mo, num, den in terms})
            return PolyMatrix(mod, mod, entries, tuple(d["offset"]))

        return cls(alg, ring, gens, mm(data["diff"]),
                   [mm(t) for t in data["theta_ops"]], data["y_mode"],
                   [mm(y) for y in data["y_ops"]],
                   [mm(s) for s in data["s_ops"]])

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, separators=(",", ":"))


def _in_span(solver: SpanSolver, vec: Mapping[int, Fraction]) -> bool:
    return solver.solve(vec) is not None


@lru_cache(maxsize=None)
def _monos_exact(ring: PolyRing, need: Degree) -> tuple[Degree, ...]:
    """Monomials of exact degree ``need`` on (X, C), for rings whose variables
    have degrees (2, 2) (x-like) or (-2, 0) (y-like)."""
    nx = sum(1 for d in ring.var_degrees if d == (2, 2))
    ny = sum(1 for d in ring.var_degrees if d == (-2, 0))
    if nx + ny != ring.nvars:
        raise ValueError("unsupported variable degrees for slicing")
    X, C = need
    if C < 0 or C % 2:
        return ()
    ka = C // 2                    # total x-exponent
    rem = X - 2 * ka               # must be -2 * (total y-exponent)
    if rem > 0 or rem % 2:
        return ()
    kb = -rem // 2
    if kb and not ny:
        return ()
    out = []
    for am in _compositions(ka, nx):
        for bm in _compositions(kb, ny):
            out.append(am + bm)
    return tuple(out)


@lru_cache(maxsize=None)
def _compositions(total: int, parts: int) -> tuple[Degree, ...]:
    if parts == 0:
        return ((),) if total == 0 else ()
    if parts == 1:
        return ((total,),)
    out = []
    for e in range(total + 1):
        for rest in _compositions(total - e, parts - 1):
            out.append((e,) + rest)
    return tuple(out)


# ---------------------------------------------------------------------------
# relation checking


def check_module(M: SkewModule) -> list[str]:
    errs: list[str] = []

    def is_zero(m: PolyMatrix) -> bool:
        return m.is_zero()

    def tw(a: PolyMatrix, b: PolyMatrix, perm=None) -> PolyMatrix:
        return a.compose(b if perm is None else _mat_perm(b, perm))

    d = M.diff
    if d is not None:
        if d.offset != (0, 1):
            errs.append(f"differential offset {d.offset} != (0, 1)")
        if not is_zero(d.compose(d)):
            errs.append("d^2 != 0")
    for i, t in enumerate(M.theta_ops):
        if t.offset != (2, 1):
            errs.append(f"theta_{i+1} offset {t.offset}")
        if not is_zero(t.compose(t)):
            errs.append(f"theta_{i+1}^2 != 0")
        if d is not None and not is_zero(d.compose(t) + t.compose(d)):
            errs.append(f"theta_{i+1} does not anticommute with d")
        for j in range(i):
            u = M.theta_ops[j]
            if not is_zero(t.compose(u) + u.compose(t)):
                errs.append(f"theta_{i+1}, theta_{j+1} do not anticommute")
    if M.y_mode == "ops":
        for i, y in enumerate(M.y_ops):
            if y.offset != (-2, 0):
                errs.append(f"y_{i+1} offset {y.offset}")
            if d is not None and not is_zero(d.compose(y) + (-y.compose(d))):
                errs.append(f"y_{i+1} does not commute with d")
            for j in range(i):
                u = M.y_ops[j]
                if not is_zero(y.compose(u) + (-u.compose(y))):
                    errs.append(f"y_{i+1}, y_{j+1} do not commute")
    n = M.n
    for i, s in enumerate(M.s_ops, start=1):
        perm = ring_perm(M.ring, i, n)
        if s.offset != (0, 0):
            errs.append(f"s_{i} offset {s.offset}")
        if not _is_identity(tw(s, s, perm)):
            errs.append(f"s_{i}^2 != 1")
        if d is not None and not is_zero(tw(s, d, perm) + (-d.compose(s))):
            errs.append(f"s_{i} does not intertwine d")
        for k, t in enumerate(M.theta_ops):
            kk = i - 1 if k == i else (i if k == i - 1 else k)
            lhs = tw(s, t, perm)
            rhs = M.theta_ops[kk].compose(s)
            if not is_zero(lhs + (-rhs)):
                errs.append(f"s_{i} theta_{k+1} != theta_{kk+1} s_{i}")
        if M.y_mode == "ops":
            for k, y in enumerate(M.y_ops):
                kk = i - 1 if k == i else (i if k == i - 1 else k)
                lhs = tw(s, y, perm)
                rhs = M.y_ops[kk].compose(s)
                if not is_zero(lhs + (-rhs)):
                    errs.append(f"s_{i} y_{k+1} != y_{kk+1} s_{i}")
    for i in range(1, len(M.s_ops)):
        a, b = M.s_ops[i - 1], M.s_ops[i]
        pa, pb = ring_perm(M.ring, i, n), ring_perm(M.ring, i + 1, n)
        lhs = tw(a, tw(b, a, pb), pa)
        rhs = tw(b, tw(a, b, pa), pb)
        if not is_zero(lhs + (-rhs)):
            errs.append(f"braid relation fails at s_{i} s_{i+1}")
    return errs


def _is_identity(m: PolyMatrix) -> bool:
    r = m.src.rank
    for i in range(r):
        p = m.entries.get((i, i))
        if p is None or p.terms != {(0,) * m.src.ring.nvars: Fraction(1)}:
            return False
    return len(m.entries) == r


# ---------------------------------------------------------------------------
# standard modules


def _theta_subsets(n: int) -> list[tuple[int, ...]]:
    out = []
    for a in range(n + 1):
        out.extend(combinations(range(1, n + 1), a))
    return out


def _wedge_sign(i: int, S: tuple[int, ...]) -> int:
    return -1 if sum(1 for l in S if l < i) % 2 else 1


def _sorted_union(i: int, S: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(sorted(S + (i,)))


def free_module(alg: SkewAlgebra) -> SkewModule:
    """The rank-one free module (the algebra as a module over itself).

    Basis over the even variables: theta_S (x) w with S a subset and w in S_n
    (the theta / group factors present per algebra).
    """
    n = alg.n
    ring = alg.ring()
    perms = sn_elements(n)
    subsets = _theta_subsets(n) if alg.has_theta else [()]
    basis = [(S, w) for S in subsets for w in perms]
    index = {b: i for i, b in enumerate(basis)}
    gens = [(2 * len(S), len(S)) for (S, w) in basis]
    mod = GradedFreeModule(ring, tuple(gens))

    theta_ops = []
    if alg.has_theta:
        for i in range(1, n + 1):
            entries = {}
            for (S, w) in basis:
                if i in S:
                    continue
                col = index[(S, w)]
                row = index[(_sorted_union(i, S), w)]
                entries[(row, col)] = ring.const(_wedge_sign(i, S))
            theta_ops.append(PolyMatrix(mod, mod, entries, (2, 1)))

    s_ops = []
    for i in range(1, n):
        si = _adjacent(n, i)
        entries = {}
        for (S, w) in basis:
            col = index[(S, w)]
            S2 = tuple(sorted(si[l - 1] + 1 for l in S))
            sign = -1 if (i in S and (i + 1) in S) else 1
            row = index[(S2, perm_compose(si, w))]
            entries[(row, col)] = ring.const(sign)
        s_ops.append(PolyMatrix(mod, mod, entries, (0, 0)))

    return SkewModule(alg, ring, gens, None, theta_ops,
                      "ring" if alg.has_y else None, (), s_ops)


def triv_theta(n: int) -> SkewModule:
    """Q[x] (x) Q[S_n] with every theta acting by zero (an A(n)-module)."""
    alg = A(n)
    ring = x_ring(n)
    perms = sn_elements(n)
    gens = [(0, 0) for _ in perms]
    mod = GradedFreeModule(ring, tuple(gens))
    index = {w: i for i, w in enumerate(perms)}
    zero = PolyMatrix(mod, mod, {}, (2, 1))
    s_ops = []
    for i in range(1, n):
        si = _adjacent(n, i)
        entries = {(index[perm_compose(si, w)], index[w]): ring.one()
                   for w in perms}
        s_ops.append(PolyMatrix(mod, mod, entries, (0, 0)))
    return SkewModule(alg, ring, gens, None, [zero] * n, None, (), s_ops)


def triv_y(n: int) -> SkewModule:
    """Q[x] (x) Q[S_n] with every y acting by zero (a B(n)-module)."""
    alg = B(n)
    ring = x_ring(n)
    perms = sn_elements(n)
    gens = [(0, 0) for _ in perms]
    mod = GradedFreeModule(ring, tuple(gens))
    index = {w: i for i, w in enumerate(perms)}
    zero = PolyMatrix(mod, mod, {}, (-2, 0))
    s_ops = []
    for i in range(1, n):
        si = _adjacent(n, i)
        entries = {(index[perm_compose(si, w)], index[w]): ring.one()
                   for w in perms}
        s_ops.append(PolyMatrix(mod, mod, entries, (0, 0)))
    return SkewModule(alg, ring, gens, None, (), "ops", [zero] * n, s_ops)


def free_abar(n: int) -> SkewModule:
    """Q[x] (x) Q[S_n] as an Abar(n)-module."""
    t = triv_theta(n)
    return SkewModule(Abar(n), t.ring, t.gens, None, (), None, (), t.s_ops)


# -- right multiplication (for building maps between free A(n)-modules) -----


def right_mult(F: SkewModule, coef, xmono: Degree, T: tuple[int, ...],
               v: tuple[int, ...] | None = None) -> PolyMatrix:
    """Right multiplication by coef * x^xmono * theta_T * v on the free
    module: a module map for the left action.  T is a sorted 1-based subset;
    v a permutation (identity if None)."""
    alg, ring, n = F.algebra, F.ring, F.n
    if not alg.has_theta and T:
        raise ValueError("no theta variables in this algebra")
    v = tuple(range(n)) if v is None else v
    perms = sn_elements(n)
    subsets = _theta_subsets(n) if alg.has_theta else [()]
    basis = [(S, w) for S in subsets for w in perms]
    index = {b: i for i, b in enumerate(basis)}
    entries: dict[tuple[int, int], Poly] = {}
    deg = (2 * sum(xmono) + 2 * len(T), 2 * sum(xmono) + len(T))
    for (S, w) in basis:
        col = index[(S, w)]
        # w * x^mono = x^{w(mono)} * w ; w * theta_T = +- theta_{w(T)} * w
        wm = [0] * n
        for i, e in enumerate(xmono):
            wm[w[i]] += e
        wT = [w[t - 1] + 1 for t in T]
        sign = _sort_sign(wT)
        wT_sorted = tuple(sorted(wT))
        if set(S) & set(wT_sorted):
            continue
        merged = S
        for t in wT_sorted:
            sign *= _wedge_sign(t, merged)
            merged = _sorted_union(t, merged)
        row = index[(merged, perm_compose(w, v))]
        mono = tuple(wm) + (0,) * (ring.nvars - n)
        p = Poly(ring, {mono: Fraction(coef) * sign})
        cur = entries.get((row, col))
        entries[(row, col)] = p if cur is None else cur + p
    return PolyMatrix(F.module, F.module, entries, deg)


def _sort_sign(seq: list[int]) -> int:
    sign, arr = 1, list(seq)
    for i in range(len(arr)):
        for j in range(len(arr) - 1 - i):
            if arr[j] > arr[j + 1]:
                arr[j], arr[j + 1] = arr[j + 1], arr[j]
                sign = -sign
    return sign


def free_complex(alg: SkewAlgebra, shifts: Sequence[tuple[int, int]],
                 maps: Mapping[tuple[int, int], PolyMatrix]) -> SkewModule:
    """A complex of shifted free modules: ``shifts`` lists the (X, C) offset
    of each copy, ``maps[(i, j)]`` a right-multiplication operator from copy
    j into copy i (degree must come out (0, 1) after the shifts)."""
    F = free_module(alg)
    r = F.rank
    gens: list[Degree] = []
    for (dX, dC) in shifts:
        gens.extend((g[0] + dX, g[1] + dC) for g in F.gens)
    ring = F.ring
    mod = GradedFreeModule(ring, tuple(gens))

    dentries: dict[tuple[int, int], Poly] = {}
    for (i, j), op in maps.items():
        for (rr, cc), p in op.entries.items():
            dentries[(i * r + rr, j * r + cc)] = p
    diff = PolyMatrix(mod, mod, dentries, (0, 1)) if dentries else None

    def stack(op: PolyMatrix, off) -> PolyMatrix:
        entries = {}
        for k in range(len(shifts)):
            for (rr, cc), p in op.entries.items():
                entries[(k * r + rr, k * r + cc)] = p
        return PolyMatrix(mod, mod, entries, off)

    return SkewModule(alg, ring, gens, diff,
                      [stack(t, (2, 1)) for t in F.theta_ops],
                      F.y_mode, (), [stack(s, (0, 0)) for s in F.s_ops])


# ---------------------------------------------------------------------------
# Koszul transforms


def _extend_ring_with_y(ring: PolyRing, n: int) -> PolyRing:
    if ring.nvars != n:
        raise ValueError("expected an x-only ring")
    return xy_ring(n)


def inv_theta_enh(M: SkewModule, twisted: bool = False) -> SkewModule:
    """M (x) Q[y] with differential d_M + sum_i theta_i y_i, as a B(n)-module
    (S_n permutes the y variables diagonally).

    ``twisted`` tensors by the inverse of the one-dimensional character
    sitting in degree (2n, n) with the sign S_n-action; concretely it flips
    every transposition operator and shifts by (-2n, -n).  With that placement
    the twisted transform sends the free module to the y-trivial module in
    degree zero, and both composites with ``coinv_y_enh`` are the identity on
    graded dimensions (the raw Koszul composites each carry a +(2n, n) top
    class offset which the two normalizations absorb).
    """
    if not M.algebra.has_theta:
        raise ValueError("inv_theta_enh needs an A(n)-module")
    n = M.n
    ring = _extend_ring_with_y(M.ring, n)
    gens = M.gens
    mod = GradedFreeModule(ring, tuple(gens))

    def lift(m: PolyMatrix | None, off) -> PolyMatrix | None:
        if m is None:
            return None
        entries = {k: Poly(ring, {mo + (0,) * n: c for mo, c in p.terms.items()})
                   for k, p in m.entries.items()}
        return PolyMatrix(mod, mod, entries, off)

    d = lift(M.diff, (0, 1))
    dk = PolyMatrix(mod, mod, {}, (0, 1))
    for i, t in enumerate(M.theta_ops):
        ti = lift(t, (2, 1))
        y = Poly(ring, {tuple(int(k == n + i) for k in range(2 * n)): Fraction(1)})
        scaled = PolyMatrix(mod, mod, {k: p * y for k, p in ti.entries.items()},
                            (0, 1))
        dk = dk + scaled
    total = dk if d is None else d + dk
    s_ops = [lift(s, (0, 0)) for s in M.s_ops]
    out = SkewModule(B(n), ring, gens, total if not total.is_zero() else None,
                     (), "ring", (), s_ops)
    if twisted:
        out = out.shift(-2 * n, -n).sign_twist()
    return out


def coinv_y_enh(M: SkewModule, twisted: bool = False) -> SkewModule:
    """M (x) Lambda(eta_1..eta_n) with differential
    d(m (x) eta_S) = (-1)^{|S|} d_M m (x) eta_S + sum_i y_i m (x) eta_i ^ eta_S
    and theta_i := eta_i ^ -, as an A(n)-module.  The underlying ring keeps
    whatever even variables M had.

    The untwisted transform is normalized by a (-2n, -n) shift; the twisted
    one flips the transposition operators and keeps degrees (the degree part
    of the two twists cancels).  See ``inv_theta_enh`` for why this placement
    is the consistent one."""
    if not M.algebra.has_y:
        raise ValueError("coinv_y_enh needs a B(n)-module")
    n = M.n
    ring = M.ring
    subsets = _theta_subsets(n)
    gens: list[Degree] = []
    index: dict[tuple[tuple[int, ...], int], int] = {}
    for S in subsets:
        for j, g in enumerate(M.gens):
            index[(S, j)] = len(gens)
            gens.append((g[0] + 2 * len(S), g[1] + len(S)))
    mod = GradedFreeModule(ring, tuple(gens))

    def yop_entries(i: int) -> list[tuple[int, int, Poly]]:
        """Entries of y_i as (row, col, poly) on M's basis."""
        if M.y_mode == "ring":
            yv = Poly(ring, {tuple(int(k == ring.nvars - n + i)
                                   for k in range(ring.nvars)): Fraction(1)})
            return [(j, j, yv) for j in range(M.rank)]
        return [(r, c, p) for (r, c), p in M.y_ops[i].entries.items()]

    entries: dict[tuple[int, int], Poly] = {}
    for S in subsets:
        sgn = -1 if len(S) % 2 else 1
        if M.diff is not None:
            for (r, c), p in M.diff.entries.items():
                row, col = index[(S, r)], index[(S, c)]
                q = p * sgn
                cur = entries.get((row, col))
                entries[(row, col)] = q if cur is None else cur + q
        for i in range(1, n + 1):
            if i in S:
                continue
            wsign = _wedge_sign(i, S)
            S2 = _sorted_union(i, S)
            for (r, c, p) in yop_entries(i - 1):
                row, col = index[(S2, r)], index[(S, c)]
                q = p * wsign
                cur = entries.get((row, col))
                entries[(row, col)] = q if cur is None else cur + q
    diff = PolyMatrix(mod, mod, {k: p for k, p in entries.items()
                                 if not p.is_zero()}, (0, 1))

    theta_ops = []
    for i in range(1, n + 1):
        t_entries = {}
        for S in subsets:
            if i in S:
                continue
            S2 = _sorted_union(i, S)
            sgn = _wedge_sign(i, S)
            for j in range(M.rank):
                t_entries[(index[(S2, j)], index[(S, j)])] = ring.const(sgn)
        theta_ops.append(PolyMatrix(mod, mod, t_entries, (2, 1)))

    s_ops = []
    for i in range(1, n):
        si = _adjacent(n, i)
        s_entries: dict[tuple[int, int], Poly] = {}
        for S in subsets:
            S2 = tuple(sorted(si[l - 1] + 1 for l in S))
            ssign = -1 if (i in S and (i + 1) in S) else 1
            for (r, c), p in M.s_ops[i - 1].entries.items():
                row, col = index[(S2, r)], index[(S, c)]
                q = p * ssign
                cur = s_entries.get((row, col))
                s_entries[(row, col)] = q if cur is None else cur + q
        s_ops.append(PolyMatrix(mod, mod, s_entries, (0, 0)))

    out = SkewModule(A(n), ring, gens,
                     diff if not diff.is_zero() else None,
                     theta_ops, M.y_mode if M.y_mode == "ring" else None,
                     (), s_ops)
    return out.sign_twist() if twisted else out.shift(-2 * n, -n)


# ---------------------------------------------------------------------------
# predicates


def weight_heart_check(M: SkewModule) -> bool:
    """True iff M has zero differential and every generator sits on the
    diagonal (X, C) = (k, k)."""
    if not M.zero_diff():
        return False
    return all(g[0] == g[1] for g in M.gens)


@dataclass
class NilpReport:
    ok: bool
    witness_power: int | None = None
    failure: tuple | None = None  # (i, X, C, description)

    def __bool__(self) -> bool:
        return self.ok


def nilp_y_check(M: SkewModule, bound: int,
                 window: Window | Mapping | None = None) -> NilpReport:
    """Check that every y_i acts nilpotently.

    For matrix y-operators the check is symbolic: some power <= bound of the
    matrix is zero.  For ring-carried y the check runs on homology classes in
    the given window (required), reporting the first class that survives
    ``bound`` powers; classes whose iterates leave the window count as
    failures (the verdict is window-relative by design).
    """
    if M.y_mode == "ops":
        worst = 1
        for i, y in enumerate(M.y_ops):
            p = y
            k = 1
            while not p.is_zero() and k < bound:
                p = p.compose(y)
                k += 1
            if not p.is_zero():
                return NilpReport(False, None, (i + 1, None, None,
                                                f"y_{i+1}^{bound} != 0"))
            worst = max(worst, k)
        return NilpReport(True, worst)
    if M.y_mode != "ring":
        return NilpReport(True, 0)
    if window is None:
        raise ValueError("ring-carried y needs a window")
    win = window if isinstance(window, Window) else Window(window)
    xlo = win.interval("X")[0]
    n = M.n
    worst = 0
    reps_cache: dict[tuple[int, int], tuple] = {}

    def reps_at(X, C):
        key = (X, C)
        if key not in reps_cache:
            reps_cache[key] = M.homology_reps(X, C)
        return reps_cache[key]

    for (X, C) in M._degrees_in(win):
        reps, _, _ = reps_at(X, C)
        for i in range(n):
            yidx = M.ring.nvars - n + i
            for rep in reps:
                vec = dict(rep)
                Xc = X
                k = 0
                while vec and k < bound:
                    if xlo is not None and Xc - 2 < xlo:
                        return NilpReport(False, None,
                                          (i + 1, X, C, "escaped window"))
                    nv: dict[int, Fraction] = {}
                    src = M.slice_basis(Xc, C)
                    tgt = {bm: t for t, bm in
                           enumerate(M.slice_basis(Xc - 2, C))}
                    for bi, coef in vec.items():
                        j, mono = src[bi]
                        m2 = list(mono)
                        m2[yidx] += 1
                        idx = tgt.get((j, tuple(m2)))
                        if idx is None:
                            return NilpReport(False, None,
                                              (i + 1, X, C, "escaped window"))
                        nv[idx] = nv.get(idx, 0) + coef
                    Xc -= 2
                    k += 1
                    rr, solver, off = reps_at(Xc, C)
                    sol = solver.solve(nv)
                    if sol is None:
                        raise AssertionError("y image is not a cycle")
                    coords = {ri: sol.get(off + ri, Fraction(0))
                              for ri in range(len(rr))}
                    vec = _combine_sparse(rr, coords)
                if vec:
                    return NilpReport(False, None, (i + 1, X, C,
                                                    f"class survives power {bound}"))
                worst = max(worst, k)
    return NilpReport(True, worst)


def _combine_sparse(vecs: Sequence[Mapping[int, Fraction]],
                    coeffs: Mapping[int, Fraction]) -> dict[int, Fraction]:
    out: dict[int, Fraction] = {}
    for i, c in coeffs.items():
        if not c:
            continue
        for k, v in vecs[i].items():
            s = out.get(k, 0) + c * v
            if s:
                out[k] = s
            else:
                out.pop(k, None)
    return out


# ---------------------------------------------------------------------------
# permutation representations and the wedge comparison


@dataclass
class PermRep:
    """A rational S_n-representation given by its simple-transposition
    matrices (rows = target coordinates)."""

    n: int
    dim: int
    mats: tuple[tuple[tuple[Fraction, ...], ...], ...]

    def matrix_of(self, p: tuple[int, ...]) -> list[list[Fraction]]:
        m = [[Fraction(i == j) for j in range(self.dim)] for i in range(self.dim)]
        for letter in perm_word(p):
            m = _matmul(list(map(list, self.mats[letter - 1])), m)
        return m

    def character(self) -> dict[tuple[int, ...], Fraction]:
        """Character by conjugacy class (keyed by cycle type), evaluated on
        one representative per class."""
        out: dict[tuple[int, ...], Fraction] = {}
        for ct in _partitions(self.n):
            p = _cycle_type_rep(ct)
            out[ct] = sum(self.matrix_of(p)[i][i] for i in range(self.dim))
        return out

    def check_relations(self) -> list[str]:
        errs = []
        eye = [[Fraction(i == j) for j in range(self.dim)]
               for i in range(self.dim)]
        for i, m in enumerate(self.mats, start=1):
            mm = _matmul(list(map(list, m)), list(map(list, m)))
            if mm != eye:
                errs.append(f"s_{i}^2 != 1")
        for i in range(1, len(self.mats)):
            a = list(map(list, self.mats[i - 1]))
            b = list(map(list, self.mats[i]))
            lhs = _matmul(a, _matmul(b, a))
            rhs = _matmul(b, _matmul(a, b))
            if lhs != rhs:
                errs.append(f"braid relation fails at {i}")
        return errs


def _matmul(a, b):
    nr, nk, nc = len(a), len(b), len(b[0]) if b else 0
    out = [[Fraction(0)] * nc for _ in range(nr)]
    for i in range(nr):
        ai = a[i]
        for k in range(nk):
            v = ai[k]
            if v:
                bk = b[k]
                oi = out[i]
                for j in range(nc):
                    if bk[j]:
                        oi[j] += v * bk[j]
    return out


def wedge_perm_rep(a: int, n: int) -> PermRep:
    """Lambda^a of the n-dimensional permutation representation, in the basis
    e_T for sorted a-subsets T."""
    if not (0 <= a <= n):
        raise ValueError("need 0 <= a <= n")
    basis = list(combinations(range(1, n + 1), a))
    index = {T: i for i, T in enumerate(basis)}
    mats = []
    for i in range(1, n):
        si = _adjacent(n, i)
        m = [[Fraction(0)] * len(basis) for _ in basis]
        for T in basis:
            img = [si[t - 1] + 1 for t in T]
            sign = _sort_sign(img)
            m[index[tuple(sorted(img))]][index[T]] = Fraction(sign)
        mats.append(tuple(tuple(r) for r in m))
    return PermRep(n, len(basis), tuple(mats))


def induced_rep(a: int, n: int) -> PermRep:
    """Ind_{S_a x S_{n-a}}^{S_n} (sign (x) triv), by coset representatives.

    Representatives are the minimal-length permutations sending {1..a}
    order-preservingly onto an a-subset T; the matrix entry at (T', T) for a
    simple transposition s is the sign character of the S_a-part of the
    subgroup element h = w_{T'}^{-1} s w_T.
    """
    if not (0 <= a <= n):
        raise ValueError("need 0 <= a <= n")
    subsets = list(combinations(range(1, n + 1), a))
    index = {T: i for i, T in enumerate(subsets)}

    def coset_rep(T: tuple[int, ...]) -> tuple[int, ...]:
        rest = [i for i in range(1, n + 1) if i not in T]
        img = list(T) + rest
        return tuple(img[i] - 1 for i in range(n))

    def subgroup_sign(h: tuple[int, ...]) -> Fraction:
        # h must preserve {0..a-1}; sign of its restriction there
        head = [h[i] for i in range(a)]
        if sorted(head) != list(range(a)):
            raise AssertionError("not a subgroup element")
        return Fraction(_sort_sign([x + 1 for x in head]))

    mats = []
    for i in range(1, n):
        si = _adjacent(n, i)
        m = [[Fraction(0)] * len(subsets) for _ in subsets]
        for T in subsets:
            w = coset_rep(T)
            sw = perm_compose(si, w)
            T2 = tuple(sorted(si[t - 1] + 1 for t in T))
            w2 = coset_rep(T2)
            w2_inv = tuple(sorted(range(n), key=lambda k: w2[k]))
            h = perm_compose(w2_inv, sw)
            m[index[T2]][index[T]] = subgroup_sign(h)
        mats.append(tuple(tuple(r) for r in m))
    return PermRep(n, len(subsets), tuple(mats))


# ---------------------------------------------------------------------------
# the co-representing functors


def _slice_group_matrix(M: SkewModule, p: tuple[int, ...], X: int, C: int
                        ) -> list[dict[int, Fraction]]:
    """Slice matrix (rows per source index) of the group element p acting
    through the transposition operators."""
    word = perm_word(p)
    dim = len(M.slice_basis(X, C))
    rows = [{i: Fraction(1)} for i in range(dim)]
    for letter in reversed(word):
        op_rows, _ = M.slice_op(M.s_ops[letter - 1], X, C,
                                ring_perm(M.ring, letter, M.n))
        rows = [_apply_rows_sparse(op_rows, r) for r in rows]
    return rows


def _apply_rows_sparse(rows: list[dict[int, Fraction]],
                       vec: Mapping[int, Fraction]) -> dict[int, Fraction]:
    out: dict[int, Fraction] = {}
    for i, c in vec.items():
        for k, v in rows[i].items():
            s = out.get(k, 0) + c * v
            if s:
                out[k] = s
            else:
                out.pop(k, None)
    return out


def gamma_a(M: SkewModule, a: int, window: Window | Mapping) -> DimTable:
    """Graded dimensions of Hom(wedge^a P (x) Q[x], M) over the group algebra,
    computed degreewise.

    For Abar(n)-modules this is the multiplicity of wedge^a P in each degree
    slice.  For A(n)-modules the co-representing object carries the extra
    Sym^n(V[-1]) twist: the slice is replaced by the theta-socle at
    (X + 2n, C + n) tensored with sign.
    """
    n = M.n
    if not (0 <= a <= n):
        raise ValueError("need 0 <= a <= n")
    wedge_chi = wedge_perm_rep(a, n).character()
    win = window if isinstance(window, Window) else Window(window)
    use_socle = M.algebra.has_theta
    entries: dict[tuple[int, int], int] = {}
    fact = Fraction(1, len(sn_elements(n)))
    for (X, C) in M._degrees_in(win) if not use_socle else \
            _socle_degree_range(M, win):
        if use_socle:
            Xs, Cs = X + 2 * n, C + n
            soc = _theta_socle(M, Xs, Cs)
            if not soc:
                continue
            total = Fraction(0)
            for p in sn_elements(n):
                chi = wedge_chi[perm_cycle_type(p)]
                if not chi:
                    continue
                tr = _socle_trace(M, p, Xs, Cs, soc)
                total += chi * Fraction(perm_sign(p)) * tr
        else:
            if not M.zero_diff():
                raise ValueError("gamma of a complex: pass its homology "
                                 "representatives instead")
            if not M.slice_basis(X, C):
                continue
            total = Fraction(0)
            for p in sn_elements(n):
                chi = wedge_chi[perm_cycle_type(p)]
                if not chi:
                    continue
                rows = _slice_group_matrix(M, p, X, C)
                tr = sum(rows[i].get(i, Fraction(0)) for i in range(len(rows)))
                total += chi * tr
        val = total * fact
        if val.denominator != 1:
            raise AssertionError("non-integral multiplicity")
        if val:
            entries[(X, C)] = int(val)
    return DimTable(XC_SCHEME, entries, win)


def _socle_degree_range(M: SkewModule, win: Window) -> list[tuple[int, int]]:
    n = M.n
    shifted = win.shift(XC_SCHEME, (2 * n, n))
    return [(X - 2 * n, C - n) for (X, C) in M._degrees_in(shifted)]


def _theta_socle(M: SkewModule, X: int, C: int) -> list[dict[int, Fraction]]:
    """Basis of the joint kernel of the theta operators on the (X, C) slice."""
    dim = len(M.slice_basis(X, C))
    if not dim:
        return []
    eqs: list[dict[int, Fraction]] = []
    for t in M.theta_ops:
        rows, ncols = M.slice_op(t, X, C)
        cols: dict[int, dict[int, Fraction]] = {}
        for i, row in enumerate(rows):
            for c, v in row.items():
                cols.setdefault(c, {})[i] = v
        eqs.extend(cols.values())
    return nullspace(eqs, dim)


def _socle_trace(M: SkewModule, p: tuple[int, ...], X: int, C: int,
                 soc: list[dict[int, Fraction]]) -> Fraction:
    rows = _slice_group_matrix(M, p, X, C)
    solver = SpanSolver(soc)
    tr = Fraction(0)
    for k, v in enumerate(soc):
        img = _apply_rows_sparse(rows, v)
        sol = solver.solve(img)
        if sol is None:
            raise AssertionError("group action does not preserve the socle")
        tr += sol.get(k, Fraction(0))
    return tr


# ---------------------------------------------------------------------------
# the Hilbert-scheme degree dictionary


def btilde_dims(table: DimTable) -> DimTable:
    """Read an (X, C) table through the Btilde degree dictionary: x at
    (X, Y, C) = (2, 1, 0) and y at (-2, 0, 0), realized as Y := C div 2 with
    the parity of C kept on the C axis.  On even-C modules this is the exact
    (X, Y, 0) regrading."""
    if table.scheme.axes != ("X", "C"):
        raise ValueError("expected an (X, C) table")
    dims: dict[tuple, int] = {}
    for (X, C), d in table.dims.items():
        key = (X, C // 2, C % 2)
        dims[key] = dims.get(key, 0) + d
    xw = table.window.interval("X")
    cw = table.window.interval("C")
    win: dict = {}
    if xw != (None, None):
        win["X"] = xw
    if cw != (None, None):
        lo = None if cw[0] is None else cw[0] // 2
        hi = None if cw[1] is None else cw[1] // 2
        win["Y"] = (lo, hi)
        win["C"] = (0, 1)
    return DimTable(XYC_SCHEME, dims, win)


# ---------------------------------------------------------------------------
# packaged examples


def load_example(name: str) -> SkewModule:
    """Load a named module from the packaged data files."""
    from importlib import resources

    path = resources.files("homflyh").joinpath("data", f"{name}.json")
    with path.open() as fh:
        return SkewModule.from_json(json.load(fh))
