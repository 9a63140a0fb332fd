"""Exact graded polynomial linear algebra.

Everything downstream reduces to three ingredients implemented here:

- sparse multivariate polynomials over Q (dict of exponent tuples -> Fraction),
- graded free modules and eagerly-validated homogeneous matrices over them,
- finite complexes of such modules, with degreewise slicing into exact
  Q-linear algebra (sparse, division-controlled integer elimination for ranks;
  fraction RREF where actual bases are needed).

Grading conventions: a ring variable carries a multi-degree on the ring's
internal axes (never the cohomological axis; chain position supplies C).
A matrix may carry a constant internal degree ``offset``; entry (r, c) must be
homogeneous of degree src[c] + offset - dst[r], checked at construction.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Mapping, Sequence

from .multigrade import DimTable, GradingScheme, Window

Mono = tuple[int, ...]
Degree = tuple[int, ...]


# ---------------------------------------------------------------------------
# polynomials


@dataclass(frozen=True)
class PolyRing:
    """Q[names] with a multi-degree on each variable.

    ``axes`` are the internal grading axes; ``var_degrees[i]`` is the degree
    of ``names[i]`` on those axes.  The cohomological axis is deliberately not
    part of a ring: variables are even and chain positions carry C.
    """

    names: tuple[str, ...]
    axes: tuple[str, ...] = ("X",)
    var_degrees: tuple[Degree, ...] = ()

    def __post_init__(self) -> None:
        if not self.var_degrees:
            object.__setattr__(self, "var_degrees",
                               tuple((2,) + (0,) * (len(self.axes) - 1)
                                     for _ in self.names))
        if len(self.var_degrees) != len(self.names):
            raise ValueError("one degree per variable required")
        for d in self.var_degrees:
            if len(d) != len(self.axes):
                raise ValueError(f"degree {d} does not match axes {self.axes}")

    @property
    def nvars(self) -> int:
        return len(self.names)

    def zero_degree(self) -> Degree:
        return (0,) * len(self.axes)

    def mono_degree(self, mono: Mono) -> Degree:
        out = [0] * len(self.axes)
        for e, vd in zip(mono, self.var_degrees):
            if e:
                for i, c in enumerate(vd):
                    out[i] += e * c
        return tuple(out)

    def zero(self) -> "Poly":
        return Poly(self, {})

    def one(self) -> "Poly":
        return Poly(self, {(0,) * self.nvars: Fraction(1)})

    def var(self, i: int) -> "Poly":
        mono = tuple(int(j == i) for j in range(self.nvars))
        return Poly(self, {mono: Fraction(1)})

    def const(self, c) -> "Poly":
        c = Fraction(c)
        return Poly(self, {(0,) * self.nvars: c} if c else {})

    def from_terms(self, terms: Mapping[Mono, Fraction]) -> "Poly":
        return Poly(self, dict(terms))

    def to_json(self) -> dict:
        return {"names": list(self.names), "axes": list(self.axes),
                "var_degrees": [list(d) for d in self.var_degrees]}

    @classmethod
    def from_json(cls, data: Mapping) -> "PolyRing":
        return cls(tuple(data["names"]), tuple(data["axes"]),
                   tuple(tuple(d) for d in data["var_degrees"]))


def polynomial_ring(n: int, prefix: str = "x", axes: tuple[str, ...] = ("X",),
                    degree: Degree = (2,)) -> PolyRing:
    """Q[prefix1..prefixn], every variable of the same degree (default X=2)."""
    if len(degree) != len(axes):
        raise ValueError("degree length must match axes")
    return PolyRing(tuple(f"{prefix}{i+1}" for i in range(n)), axes,
                    tuple(degree for _ in range(n)))


class Poly:
    """Sparse polynomial; immutable by convention."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: PolyRing, terms: Mapping[Mono, Fraction]):
        self.ring = ring
        self.terms = {m: c for m, c in terms.items() if c}

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == self.ring.const(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.ring.names, tuple(sorted(self.terms.items()))))

    def __add__(self, other: "Poly") -> "Poly":
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return Poly(self.ring, out)

    def __neg__(self) -> "Poly":
        return Poly(self.ring, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other) -> "Poly":
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            if not c:
                return self.ring.zero()
            return Poly(self.ring, {m: c * v for m, v in self.terms.items()})
        out: dict[Mono, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                s = out.get(m, 0) + c1 * c2
                if s:
                    out[m] = s
                else:
                    out.pop(m, None)
        return Poly(self.ring, out)

    __rmul__ = __mul__

    def homogeneous_degree(self) -> Degree | None:
        """The common degree of all terms, or None (zero poly has any degree)."""
        deg = None
        for m in self.terms:
            d = self.ring.mono_degree(m)
            if deg is None:
                deg = d
            elif d != deg:
                raise ValueError(f"inhomogeneous polynomial: {self}")
        return deg

    def apply_perm(self, perm: Sequence[int]) -> "Poly":
        """Permute variables: x_i -> x_{perm[i]} (0-based)."""
        out: dict[Mono, Fraction] = {}
        for m, c in self.terms.items():
            nm = [0] * len(m)
            for i, e in enumerate(m):
                nm[perm[i]] += e
            nm = tuple(nm)
            s = out.get(nm, 0) + c
            if s:
                out[nm] = s
            else:
                out.pop(nm, None)
        return Poly(self.ring, out)

    def substitute(self, ring: PolyRing, images: Sequence["Poly"]) -> "Poly":
        """Ring map sending var i to images[i] (a polynomial in ``ring``)."""
        acc = ring.zero()
        for m, c in self.terms.items():
            term = ring.const(c)
            for i, e in enumerate(m):
                for _ in range(e):
                    term = term * images[i]
            acc = acc + term
        return acc

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        bits = []
        for m, c in sorted(self.terms.items()):
            vars_ = "*".join(f"{self.ring.names[i]}^{e}" if e > 1 else self.ring.names[i]
                             for i, e in enumerate(m) if e)
            bits.append(f"{c}" + (f"*{vars_}" if vars_ else ""))
        return " + ".join(bits)

    def to_json(self) -> list:
        out = []
        for m, c in sorted(self.terms.items()):
            out.append({"mono": list(m), "num": c.numerator, "den": c.denominator})
        return out

    @classmethod
    def from_json(cls, ring: PolyRing, data: Iterable[Mapping]) -> "Poly":
        return cls(ring, {tuple(t["mono"]): Fraction(t["num"], t["den"])
                          for t in data})


def elem_sym(ring: PolyRing, k: int, variables: Sequence[int] | None = None) -> Poly:
    """Elementary symmetric polynomial e_k in the given variables (default all).

    >>> R = polynomial_ring(3)
    >>> elem_sym(R, 2)
    1*x1*x2 + 1*x1*x3 + 1*x2*x3
    """
    idx = list(range(ring.nvars)) if variables is None else list(variables)
    if k < 0 or k > len(idx):
        return ring.zero()
    if k == 0:
        return ring.one()
    from itertools import combinations
    terms: dict[Mono, Fraction] = {}
    for comb in combinations(idx, k):
        m = [0] * ring.nvars
        for i in comb:
            m[i] = 1
        terms[tuple(m)] = Fraction(1)
    return Poly(ring, terms)


# ---------------------------------------------------------------------------
# graded free modules and homogeneous matrices


@dataclass(frozen=True)
class GradedFreeModule:
    """A free module with a finite list of generator degrees (internal axes)."""

    ring: PolyRing
    gens: tuple[Degree, ...]

    def __post_init__(self) -> None:
        for d in self.gens:
            if len(d) != len(self.ring.axes):
                raise ValueError(f"generator degree {d} does not match "
                                 f"axes {self.ring.axes}")

    @property
    def rank(self) -> int:
        return len(self.gens)

    def shift(self, by: Degree) -> "GradedFreeModule":
        return GradedFreeModule(
            self.ring, tuple(tuple(a + b for a, b in zip(g, by)) for g in self.gens))

    def direct_sum(self, other: "GradedFreeModule") -> "GradedFreeModule":
        return GradedFreeModule(self.ring, self.gens + other.gens)

    def to_json(self) -> dict:
        return {"gens": [list(g) for g in self.gens]}


class PolyMatrix:
    """A homogeneous matrix between graded free modules.

    Column c holds the image of the c-th source generator: image(g_c) =
    sum_r entry[r,c] * h_r.  Homogeneity deg(entry[r,c]) = src[c] + offset
    - dst[r] is validated eagerly; violations raise immediately.
    """

    __slots__ = ("src", "dst", "entries", "offset")

    def __init__(self, src: GradedFreeModule, dst: GradedFreeModule,
                 entries: Mapping[tuple[int, int], Poly],
                 offset: Degree | None = None):
        if src.ring != dst.ring:
            raise ValueError("source and target over different rings")
        self.src = src
        self.dst = dst
        self.offset = offset if offset is not None else src.ring.zero_degree()
        clean: dict[tuple[int, int], Poly] = {}
        for (r, c), p in entries.items():
            if p.is_zero():
                continue
            if not (0 <= r < dst.rank and 0 <= c < src.rank):
                raise ValueError(f"entry index {(r, c)} out of range")
            want = tuple(s + o - d for s, o, d in
                         zip(src.gens[c], self.offset, dst.gens[r]))
            got = p.homogeneous_degree()
            if got is not None and got != want:
                raise ValueError(
                    f"entry ({r},{c}) has degree {got}, expected {want}")
            clean[(r, c)] = p
        self.entries = clean

    @classmethod
    def zero(cls, src: GradedFreeModule, dst: GradedFreeModule,
             offset: Degree | None = None) -> "PolyMatrix":
        return cls(src, dst, {}, offset)

    @classmethod
    def identity(cls, mod: GradedFreeModule) -> "PolyMatrix":
        one = mod.ring.one()
        return cls(mod, mod, {(i, i): one for i in range(mod.rank)})

    def entry(self, r: int, c: int) -> Poly:
        return self.entries.get((r, c), self.src.ring.zero())

    def is_zero(self) -> bool:
        return not self.entries

    def __eq__(self, other) -> bool:
        if not isinstance(other, PolyMatrix):
            return NotImplemented
        return (self.src.gens == other.src.gens and self.dst.gens == other.dst.gens
                and self.entries == other.entries and self.offset == other.offset)

    def __add__(self, other: "PolyMatrix") -> "PolyMatrix":
        if self.offset != other.offset:
            raise ValueError("offset mismatch in matrix sum")
        out = dict(self.entries)
        for k, p in other.entries.items():
            s = out.get(k)
            out[k] = p if s is None else s + p
        return PolyMatrix(self.src, self.dst, out, self.offset)

    def __neg__(self) -> "PolyMatrix":
        return PolyMatrix(self.src, self.dst,
                          {k: -p for k, p in self.entries.items()}, self.offset)

    def scale(self, c) -> "PolyMatrix":
        return PolyMatrix(self.src, self.dst,
                          {k: p * c for k, p in self.entries.items()}, self.offset)

    def compose(self, first: "PolyMatrix") -> "PolyMatrix":
        """self o first (apply ``first``, then ``self``)."""
        if first.dst.gens != self.src.gens:
            raise ValueError("composition shape mismatch")
        by_col: dict[int, list[tuple[int, Poly]]] = {}
        for (r, c), p in first.entries.items():
            by_col.setdefault(c, []).append((r, p))
        out: dict[tuple[int, int], Poly] = {}
        # organize self by source column
        self_by_src: dict[int, list[tuple[int, Poly]]] = {}
        for (r, c), p in self.entries.items():
            self_by_src.setdefault(c, []).append((r, p))
        for c, col in by_col.items():
            acc: dict[int, Poly] = {}
            for mid, p1 in col:
                for r, p2 in self_by_src.get(mid, ()):
                    prod = p2 * p1
                    if prod.is_zero():
                        continue
                    cur = acc.get(r)
                    acc[r] = prod if cur is None else cur + prod
            for r, p in acc.items():
                if not p.is_zero():
                    out[(r, c)] = p
        offset = tuple(a + b for a, b in zip(self.offset, first.offset))
        return PolyMatrix(first.src, self.dst, out, offset)

    def __matmul__(self, other: "PolyMatrix") -> "PolyMatrix":
        return self.compose(other)

    def transpose_indices(self) -> dict[tuple[int, int], Poly]:
        return {(c, r): p for (r, c), p in self.entries.items()}

    def shift(self, by: Degree) -> "PolyMatrix":
        """The same matrix between shifted modules."""
        return PolyMatrix(self.src.shift(by), self.dst.shift(by),
                          self.entries, self.offset)

    def to_json(self) -> dict:
        ents = [{"row": r, "col": c, "poly": p.to_json()}
                for (r, c), p in sorted(self.entries.items())]
        return {"src": self.src.to_json(), "dst": self.dst.to_json(),
                "offset": list(self.offset), "entries": ents}

    def __repr__(self) -> str:
        return f"PolyMatrix({self.dst.rank}x{self.src.rank}, nnz={len(self.entries)})"


def block_diag(mats: Sequence[PolyMatrix]) -> PolyMatrix:
    if not mats:
        raise ValueError("block_diag of nothing")
    ring = mats[0].src.ring
    src = GradedFreeModule(ring, tuple(g for m in mats for g in m.src.gens))
    dst = GradedFreeModule(ring, tuple(g for m in mats for g in m.dst.gens))
    entries: dict[tuple[int, int], Poly] = {}
    ro = co = 0
    for m in mats:
        for (r, c), p in m.entries.items():
            entries[(ro + r, co + c)] = p
        ro += m.dst.rank
        co += m.src.rank
    return PolyMatrix(src, dst, entries, mats[0].offset)


# ---------------------------------------------------------------------------
# complexes


class FreeComplex:
    """A finite complex of graded free modules.

    ``objects`` maps chain position t to a module; ``diffs`` maps t to the
    matrix C_t -> C_{t+1}.  All differentials share one internal ``offset``
    degree; d o d = 0 is verified symbolically at construction.
    """

    def __init__(self, objects: Mapping[int, GradedFreeModule],
                 diffs: Mapping[int, PolyMatrix],
                 offset: Degree | None = None, check: bool = True):
        self.objects = dict(objects)
        self.diffs = {t: d for t, d in diffs.items() if not d.is_zero()}
        if not self.objects:
            raise ValueError("empty complex")
        some = next(iter(self.objects.values()))
        self.ring = some.ring
        self.offset = offset if offset is not None else self.ring.zero_degree()
        for t, d in self.diffs.items():
            if t not in self.objects or (t + 1) not in self.objects:
                raise ValueError(f"differential at {t} without objects")
            if d.src.gens != self.objects[t].gens:
                raise ValueError(f"differential at {t}: source mismatch")
            if d.dst.gens != self.objects[t + 1].gens:
                raise ValueError(f"differential at {t}: target mismatch")
            if d.offset != self.offset:
                raise ValueError(f"differential at {t}: offset mismatch")
        if check:
            for t, d in self.diffs.items():
                nxt = self.diffs.get(t + 1)
                if nxt is not None and not nxt.compose(d).is_zero():
                    raise ValueError(f"d^2 != 0 at position {t}")

    @property
    def positions(self) -> list[int]:
        return sorted(self.objects)

    def diff(self, t: int) -> PolyMatrix | None:
        return self.diffs.get(t)

    def shift_internal(self, by: Degree) -> "FreeComplex":
        objs = {t: m.shift(by) for t, m in self.objects.items()}
        diffs = {t: d.shift(by) for t, d in self.diffs.items()}
        return FreeComplex(objs, diffs, self.offset, check=False)

    def shift_position(self, by: int) -> "FreeComplex":
        objs = {t + by: m for t, m in self.objects.items()}
        diffs = {t + by: d for t, d in self.diffs.items()}
        return FreeComplex(objs, diffs, self.offset, check=False)

    # -- slicing -------------------------------------------------------------

    def _monomials_in_box(self, base: Degree, box: "Window") -> list[Mono]:
        """All monomials m with base + deg(m) inside the box (on ring axes)."""
        ring = self.ring
        axes = ring.axes
        results: list[Mono] = []
        nv = ring.nvars
        lo_hi = [box.interval(ax) for ax in axes]

        # Termination: every variable needs an axis on which raising its
        # exponent moves monotonically toward a window bound that no later
        # variable can undo.
        for v in range(nv):
            vd = ring.var_degrees[v]
            ok = False
            for i in range(len(axes)):
                lo, hi = lo_hi[i]
                if vd[i] > 0 and hi is not None \
                        and all(ring.var_degrees[j][i] >= 0 for j in range(v + 1, nv)):
                    ok = True
                    break
                if vd[i] < 0 and lo is not None \
                        and all(ring.var_degrees[j][i] <= 0 for j in range(v + 1, nv)):
                    ok = True
                    break
            if not ok:
                raise ValueError(
                    f"window does not bound variable {ring.names[v]!r}: "
                    "slice enumeration would not terminate")

        def reachable_ok(cur: list[int], v: int) -> bool:
            # prune: with remaining vars v..nv-1, can each axis reach its box?
            for i in range(len(axes)):
                lo, hi = lo_hi[i]
                val = cur[i]
                can_up = any(ring.var_degrees[j][i] > 0 for j in range(v, nv))
                can_dn = any(ring.var_degrees[j][i] < 0 for j in range(v, nv))
                if lo is not None and val < lo and not can_up:
                    return False
                if hi is not None and val > hi and not can_dn:
                    return False
            return True

        mono = [0] * nv

        def rec(v: int, cur: list[int]) -> None:
            if not reachable_ok(cur, v):
                return
            if v == nv:
                for i in range(len(axes)):
                    lo, hi = lo_hi[i]
                    if lo is not None and cur[i] < lo:
                        return
                    if hi is not None and cur[i] > hi:
                        return
                results.append(tuple(mono))
                return
            vd = ring.var_degrees[v]
            e = 0
            while True:
                nxt = [c + e * d for c, d in zip(cur, vd)]
                out_of_range = False
                for i in range(len(axes)):
                    lo, hi = lo_hi[i]
                    if vd[i] > 0 and hi is not None and nxt[i] > hi \
                            and all(ring.var_degrees[j][i] >= 0 for j in range(v + 1, nv)):
                        out_of_range = True
                    if vd[i] < 0 and lo is not None and nxt[i] < lo \
                            and all(ring.var_degrees[j][i] <= 0 for j in range(v + 1, nv)):
                        out_of_range = True
                if out_of_range:
                    break
                mono[v] = e
                rec(v + 1, nxt)
                e += 1
            mono[v] = 0

        rec(0, list(base))
        return results

    def slice_basis(self, t: int, degree: Degree,
                    window: "Window") -> list[tuple[int, Mono]]:
        """Basis ((gen index, monomial)) of the degree-slice of C_t, ordered
        lexicographically; ``degree`` lives on the ring axes."""
        mod = self.objects.get(t)
        if mod is None:
            return []
        out: list[tuple[int, Mono]] = []
        ring = self.ring
        for j, g in enumerate(mod.gens):
            need = tuple(a - b for a, b in zip(degree, g))
            # a single exact degree: box with lo == hi
            box = Window({ax: (need[i], need[i]) for i, ax in enumerate(ring.axes)})
            for m in self._monomials_in_box((0,) * len(ring.axes), box):
                out.append((j, m))
        out.sort()
        return out

    def slice_matrix(self, t: int, degree: Degree, window: "Window",
                     basis_src: list[tuple[int, Mono]] | None = None,
                     basis_dst: list[tuple[int, Mono]] | None = None,
                     ) -> tuple[list[dict[int, Fraction]], int]:
        """The differential C_t -> C_{t+1} on the degree slice, as rows
        indexed by the source basis (row = coordinates of the image).
        Returns (rows, ncols)."""
        if basis_src is None:
            basis_src = self.slice_basis(t, degree, window)
        ddeg = tuple(a + b for a, b in zip(degree, self.offset))
        if basis_dst is None:
            basis_dst = self.slice_basis(t + 1, ddeg, window)
        index = {bm: i for i, bm in enumerate(basis_dst)}
        d = self.diffs.get(t)
        rows: list[dict[int, Fraction]] = []
        if d is None:
            return [dict() for _ in basis_src], len(basis_dst)
        by_col: dict[int, list[tuple[int, Poly]]] = {}
        for (r, c), p in d.entries.items():
            by_col.setdefault(c, []).append((r, p))
        for (j, mono) in basis_src:
            row: dict[int, Fraction] = {}
            for r, p in by_col.get(j, ()):
                for pm, coef in p.terms.items():
                    tm = tuple(a + b for a, b in zip(mono, pm))
                    idx = index.get((r, tm))
                    if idx is None:
                        continue  # falls outside the window box
                    s = row.get(idx, 0) + coef
                    if s:
                        row[idx] = s
                    else:
                        row.pop(idx, None)
            rows.append(row)
        return rows, len(basis_dst)

    # -- homology --------------------------------------------------------------

    def homology_dims(self, window: Window | Mapping | None = None,
                      scheme: GradingScheme | None = None) -> DimTable:
        """Dimensions of homology, reported on (ring axes..., C).

        The window is a box on the ring axes (bounding whatever directions the
        variable degrees require) and optionally on C.  For complexes whose
        differential carries a nonzero internal offset, slices are taken along
        the lines d_t = d_0 + t * offset.
        """
        win = window if isinstance(window, Window) else Window(window or {})
        if scheme is None:
            scheme = GradingScheme(self.ring.axes + ("C",), "C")
        clo, chi = win.interval("C")
        positions = [t for t in self.positions
                     if (clo is None or t >= clo) and (chi is None or t <= chi)]
        if not positions:
            return DimTable(scheme, {}, win)
        # collect candidate internal degrees, normalized to position 0 lines
        lines: set[Degree] = set()
        ring_axes_win = Window({ax: win.interval(ax) for ax in self.ring.axes
                                if win.interval(ax) != (None, None)})
        for t in self.positions:
            mod = self.objects[t]
            for j, g in enumerate(mod.gens):
                for m in self._monomials_in_box(g, ring_axes_win):
                    d = tuple(a + b for a, b in zip(g, self.ring.mono_degree(m)))
                    base = tuple(x - t * o for x, o in zip(d, self.offset))
                    lines.add(base)
        dims: dict[Degree, int] = {}
        all_pos = self.positions
        for base in sorted(lines):
            bases = {}
            for t in all_pos:
                dt = tuple(x + t * o for x, o in zip(base, self.offset))
                bases[t] = (dt, self.slice_basis(t, dt, ring_axes_win))
            ranks = {}
            for t in all_pos:
                dt, bsrc = bases[t]
                if not bsrc:
                    ranks[t] = 0
                    continue
                nxt = bases.get(t + 1)
                rows, ncols = self.slice_matrix(
                    t, dt, ring_axes_win, bsrc, nxt[1] if nxt else [])
                ranks[t] = rank_rows(rows)
            for t in all_pos:
                if (clo is not None and t < clo) or (chi is not None and t > chi):
                    continue
                dt, bsrc = bases[t]
                h = len(bsrc) - ranks[t] - ranks.get(t - 1, 0)
                if h:
                    deg = dt + (t,)
                    dims[deg] = dims.get(deg, 0) + h
        return DimTable(scheme, dims, win)

    def euler_characteristic(self, window: Window | Mapping | None = None) -> dict[Degree, int]:
        """Signed sum of slice dimensions per internal degree line; an
        invariant shared with homology."""
        win = window if isinstance(window, Window) else Window(window or {})
        ring_axes_win = Window({ax: win.interval(ax) for ax in self.ring.axes
                                if win.interval(ax) != (None, None)})
        out: dict[Degree, int] = {}
        for t in self.positions:
            mod = self.objects[t]
            for j, g in enumerate(mod.gens):
                for m in self._monomials_in_box(g, ring_axes_win):
                    d = tuple(a + b for a, b in zip(g, self.ring.mono_degree(m)))
                    base = tuple(x - t * o for x, o in zip(d, self.offset))
                    out[base] = out.get(base, 0) + (-1) ** (t % 2)
        return {d: v for d, v in out.items() if v}

    def to_json(self) -> dict:
        return {
            "ring": self.ring.to_json(),
            "offset": list(self.offset),
            "objects": {str(t): m.to_json() for t, m in sorted(self.objects.items())},
            "diffs": {str(t): d.to_json() for t, d in sorted(self.diffs.items())},
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "FreeComplex":
        ring = PolyRing.from_json(data["ring"])
        objects = {}
        for ts, mj in data["objects"].items():
            objects[int(ts)] = GradedFreeModule(
                ring, tuple(tuple(g) for g in mj["gens"]))
        offset = tuple(data["offset"])
        diffs = {}
        for ts, dj in data["diffs"].items():
            t = int(ts)
            src, dst = objects[t], objects[t + 1]
            entries = {(e["row"], e["col"]): Poly.from_json(ring, e["poly"])
                       for e in dj["entries"]}
            diffs[t] = PolyMatrix(src, dst, entries, tuple(dj["offset"]))
        return cls(objects, diffs, offset)

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, separators=(",", ":"))


# ---------------------------------------------------------------------------
# exact sparse linear algebra
#
# Rows are dicts {column: value}.  Ranks use division-controlled integer
# elimination (cross-multiply, then strip the row gcd); bases use Fraction
# Gauss-Jordan.


def _strip_gcd(row: dict[int, int]) -> dict[int, int]:
    g = 0
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            return row
    if g > 1:
        return {c: v // g for c, v in row.items()}
    return row


def _to_int_row(row: Mapping[int, Fraction] | Mapping[int, int]) -> dict[int, int]:
    den = 1
    for v in row.values():
        d = v.denominator if isinstance(v, Fraction) else 1
        den = den * d // gcd(den, d)
    out = {c: int(v * den) for c, v in row.items() if v}
    return _strip_gcd(out)


def rank_rows(rows: Iterable[Mapping[int, Fraction] | Mapping[int, int]]) -> int:
    """Rank of a sparse matrix given by rows (values may mix Fraction and int)."""
    pivots: dict[int, dict[int, int]] = {}
    rank = 0
    for row in rows:
        if not row:
            continue
        cur = _to_int_row(row)
        while cur:
            lead = min(cur)
            piv = pivots.get(lead)
            if piv is None:
                pivots[lead] = _strip_gcd(cur)
                rank += 1
                break
            a = cur[lead]
            b = piv[lead]
            new: dict[int, int] = {}
            for c, v in cur.items():
                new[c] = v * b
            for c, v in piv.items():
                s = new.get(c, 0) - v * a
                if s:
                    new[c] = s
                else:
                    new.pop(c, None)
            cur = _strip_gcd(new)
    return rank


def frac_rref(rows: Sequence[Mapping[int, Fraction]],
              track: bool = False
              ) -> tuple[list[dict[int, Fraction]], list[int], list[dict[int, Fraction]]]:
    """Gauss-Jordan over Q.  Returns (reduced rows, pivot columns, transform):
    reduced[i] has leading 1 at pivot[i]; transform[i] expresses reduced[i]
    as a combination of the input rows (only if ``track``)."""
    red: list[dict[int, Fraction]] = []
    piv: list[int] = []
    tra: list[dict[int, Fraction]] = []
    for ri, row in enumerate(rows):
        cur = {c: Fraction(v) for c, v in row.items() if v}
        comb: dict[int, Fraction] = {ri: Fraction(1)} if track else {}
        # reduce against existing pivots
        for i, pc in enumerate(piv):
            v = cur.get(pc)
            if v:
                for c, w in red[i].items():
                    s = cur.get(c, 0) - v * w
                    if s:
                        cur[c] = s
                    else:
                        cur.pop(c, None)
                if track:
                    for c, w in tra[i].items():
                        s = comb.get(c, 0) - v * w
                        if s:
                            comb[c] = s
                        else:
                            comb.pop(c, None)
        if not cur:
            continue
        lead = min(cur)
        lv = cur[lead]
        cur = {c: v / lv for c, v in cur.items()}
        if track:
            comb = {c: v / lv for c, v in comb.items()}
        # back-substitute into existing rows
        for i in range(len(red)):
            v = red[i].get(lead)
            if v:
                for c, w in cur.items():
                    s = red[i].get(c, 0) - v * w
                    if s:
                        red[i][c] = s
                    else:
                        red[i].pop(c, None)
                if track:
                    for c, w in comb.items():
                        s = tra[i].get(c, 0) - v * w
                        if s:
                            tra[i][c] = s
                        else:
                            tra[i].pop(c, None)
        # keep rows sorted by pivot column
        pos = 0
        while pos < len(piv) and piv[pos] < lead:
            pos += 1
        red.insert(pos, cur)
        piv.insert(pos, lead)
        if track:
            tra.insert(pos, comb)
    return red, piv, tra


def nullspace(rows: Sequence[Mapping[int, Fraction]], ncols: int
              ) -> list[dict[int, Fraction]]:
    """Basis of {v : M v = 0} where M's *columns* are indexed 0..ncols-1 and
    ``rows`` are the rows of M."""
    red, piv, _ = frac_rref(rows)
    pivset = set(piv)
    basis = []
    for free in range(ncols):
        if free in pivset:
            continue
        vec = {free: Fraction(1)}
        for i, pc in enumerate(piv):
            v = red[i].get(free)
            if v:
                vec[pc] = -v
        basis.append(vec)
    return basis


class SpanSolver:
    """Coordinates of vectors in the span of a fixed list of vectors."""

    def __init__(self, vectors: Sequence[Mapping[int, Fraction]]):
        self.red, self.piv, self.tra = frac_rref(vectors, track=True)

    def solve(self, vec: Mapping[int, Fraction]) -> dict[int, Fraction] | None:
        """Coefficients c with sum c_i * vectors[i] = vec, or None."""
        cur = {c: Fraction(v) for c, v in vec.items() if v}
        coeffs: dict[int, Fraction] = {}
        for i, pc in enumerate(self.piv):
            v = cur.get(pc)
            if v:
                for c, w in self.red[i].items():
                    s = cur.get(c, 0) - v * w
                    if s:
                        cur[c] = s
                    else:
                        cur.pop(c, None)
                for c, w in self.tra[i].items():
                    s = coeffs.get(c, 0) + v * w
                    if s:
                        coeffs[c] = s
                    else:
                        coeffs.pop(c, None)
        if cur:
            return None
        return coeffs

    def contains(self, vec: Mapping[int, Fraction]) -> bool:
        return self.solve(vec) is not None

    @property
    def rank(self) -> int:
        return len(self.piv)
