"""Koszul-model Hochschild homology and assembly of the triply graded table.

For a bimodule M (free left module with right operators rho_i), the Hochschild
complex is M (x) Lambda(theta_1..theta_n) with differential
sum_i (x_i . Id - rho_i) (x) iota_i, where iota_i contracts theta_i with the
sign (-1)^{#{l in S : l < i}}.  theta_i carries X-degree 2 and Hochschild
weight 1.  Weight a sits in chain position -a, so differentials ascend.

For a braid complex the table is assembled termwise: in each Hochschild weight
and X-degree, first the Hochschild homology of every chain term, then the
homology of the induced complex in the chain direction.  Dimensions come from
ranks alone via

    dim H^t = h_t - r_t - r_{t-1},
    h_t = dim - rank K_t - rank K'_t,
    r_t = rank [[K_t, 0], [D_t, K'_{t+1}]] - rank K_t - rank K'_{t+1},

where K is the Koszul differential at the given weight, K' one weight up, and
D the chain differential.  A totalization (single complex along u = t - a) is
also provided; it resolves only the marginal over the weight and serves as an
independent cross-check.

Output degrees: (a, X, C) with a the Hochschild weight after normalization,
X the internal degree (theta included), and C = t + a.

Renders to formal variable conventions:

- "QAT":     exponents (Q, A, T)    = (X, -a, C - a)
- "QpApTp":  exponents (Q', A', T') = (X, X - a, C - a)
- "qat":     exponents (q, a, t)    = ((X + C - 3a)/2, a, (C - a)/2),
             stored with q and t doubled,
- "tilde":   (Xt, Yt, C) = ((X + C - 3a)/2, C - a, C), Xt doubled,
- "tilde-per": the tilde render restricted to C in [-1, 0] and summed over
             the degree-(+1, +2, -2) periodicity orbit.
"""

from __future__ import annotations

import json
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Mapping

from .multigrade import (DimTable, GradingScheme, QAT_SCHEME, QPAPTP_SCHEME,
                         TILDE_SCHEME, qat_SCHEME)
from .polyalg import (FreeComplex, GradedFreeModule, Poly, PolyMatrix,
                      PolyRing, SpanSolver, nullspace, rank_rows)
from .rouquier import BimoduleComplex
from .soergel import Bimodule

HHH_SCHEME = GradingScheme(("a", "X", "C"), "C")


@lru_cache(maxsize=None)
def monos_of_degree(nvars: int, total: int) -> tuple[tuple[int, ...], ...]:
    """All exponent tuples with given sum, lexicographically sorted."""
    if total < 0:
        return ()
    if nvars == 0:
        return ((),) if total == 0 else ()
    if nvars == 1:
        return ((total,),)
    out = []
    for e in range(total + 1):
        for rest in monos_of_degree(nvars - 1, total - e):
            out.append((e,) + rest)
    return tuple(out)


def koszul_hh(M: Bimodule) -> FreeComplex:
    """The Hochschild complex of M as a free complex over Q[x] with internal
    axes (X, a); weight a sits at chain position -a."""
    n = M.ring.nvars
    ring = PolyRing(M.ring.names, ("X", "a"),
                    tuple((2, 0) for _ in range(n)))
    subsets = {a: list(combinations(range(1, n + 1), a)) for a in range(n + 1)}
    objects: dict[int, GradedFreeModule] = {}
    gens_index: dict[int, dict[tuple, int]] = {}
    for a in range(n + 1):
        gens = []
        gidx = {}
        for S in subsets[a]:
            for j, gd in enumerate(M.gens):
                gidx[(S, j)] = len(gens)
                gens.append((gd[0] + 2 * a, a))
        objects[-a] = GradedFreeModule(ring, tuple(gens))
        gens_index[-a] = gidx
    diffs: dict[int, PolyMatrix] = {}

    def promote(p: Poly) -> Poly:
        return Poly(ring, dict(p.terms))

    for a in range(1, n + 1):
        src = objects[-a]
        dst = objects[-a + 1]
        entries: dict[tuple[int, int], Poly] = {}
        for S in subsets[a]:
            for j in range(M.rank):
                col = gens_index[-a][(S, j)]
                for pos, i in enumerate(S):
                    sign = -1 if (pos % 2) else 1  # (-1)^{#{l in S: l < i}}
                    T = tuple(l for l in S if l != i)
                    # + sign * x_i on generator j
                    r = gens_index[-a + 1][(T, j)]
                    add = promote(M.ring.var(i - 1)) * sign
                    cur = entries.get((r, col))
                    entries[(r, col)] = add if cur is None else cur + add
                    # - sign * rho_i column j
                    for (k, jj), p in M.rho[i - 1].entries.items():
                        if jj != j:
                            continue
                        r2 = gens_index[-a + 1][(T, k)]
                        add2 = promote(p) * (-sign)
                        cur2 = entries.get((r2, col))
                        entries[(r2, col)] = add2 if cur2 is None else cur2 + add2
        entries = {k: p for k, p in entries.items() if not p.is_zero()}
        diffs[-a] = PolyMatrix(src, dst, entries, (0, -1))
    return FreeComplex(objects, diffs, (0, -1))


def hh_dims(M: Bimodule, x_max: int) -> dict[tuple[int, int], int]:
    """{(a, X): dim HH_a(M)_X} for X <= x_max."""
    cx = koszul_hh(M)
    table = cx.homology_dims({"X": (None, x_max)})
    out: dict[tuple[int, int], int] = {}
    for (X, a, C), dim in table.dims.items():
        # weight a lives at position -a; C is redundant here
        out[(a, X)] = out.get((a, X), 0) + dim
    return out


# ---------------------------------------------------------------------------
# assembly


class Assembler:
    """Slice bases and rank caches for the Hochschild bicomplex of a braid
    complex."""

    def __init__(self, C: BimoduleComplex):
        self.C = C
        self.n = C.n
        self.positions = C.positions
        self._bim = {t: C.flat_bimodule(t) for t in self.positions}
        self._diff = {t: C.flat_diff(t) for t in self.positions}
        self._subsets = {a: list(combinations(range(1, self.n + 1), a))
                         for a in range(self.n + 1)}
        self._basis: dict[tuple[int, int, int], list] = {}
        self._index: dict[tuple[int, int, int], dict] = {}
        self._rank_k: dict[tuple[int, int, int], int] = {}
        self._rank_blk: dict[tuple[int, int, int], int] = {}

    def gen_degrees(self, t: int) -> list[int]:
        return [g[0] for g in self._bim[t].gens]

    def basis(self, t: int, a: int, X: int) -> list:
        """Ordered basis [(S, j, mono)] of the (weight a, degree X) slice of
        the Hochschild complex of term t."""
        key = (t, a, X)
        got = self._basis.get(key)
        if got is not None:
            return got
        out: list = []
        if t in self._bim and 0 <= a <= self.n:
            degs = self.gen_degrees(t)
            for S in self._subsets[a]:
                for j, gd in enumerate(degs):
                    rem = X - gd - 2 * a
                    if rem < 0 or rem % 2:
                        continue
                    for m in monos_of_degree(self.n, rem // 2):
                        out.append((S, j, m))
        self._basis[key] = out
        self._index[key] = {b: i for i, b in enumerate(out)}
        return out

    def index(self, t: int, a: int, X: int) -> dict:
        self.basis(t, a, X)
        return self._index[(t, a, X)]

    # -- slice matrices (rows indexed by source basis) ----------------------

    def k_rows(self, t: int, a: int, X: int) -> list[dict[int, Fraction]]:
        """Koszul differential: weight a -> a-1 at term t, degree X."""
        src = self.basis(t, a, X)
        tgt_index = self.index(t, a - 1, X)
        M = self._bim.get(t)
        rows = []
        rho = M.rho if M is not None else ()
        for (S, j, mono) in src:
            row: dict[int, Fraction] = {}
            for pos, i in enumerate(S):
                sign = -1 if (pos % 2) else 1
                T = tuple(l for l in S if l != i)
                # + x_i
                m2 = list(mono)
                m2[i - 1] += 1
                idx = tgt_index.get((T, j, tuple(m2)))
                if idx is not None:
                    s = row.get(idx, 0) + sign
                    if s:
                        row[idx] = s
                    else:
                        row.pop(idx, None)
                # - rho_i
                for (k, jj), p in rho[i - 1].entries.items():
                    if jj != j:
                        continue
                    for pm, coef in p.terms.items():
                        tm = tuple(x + y for x, y in zip(mono, pm))
                        idx = tgt_index.get((T, k, tm))
                        if idx is None:
                            continue
                        s = row.get(idx, 0) - sign * coef
                        if s:
                            row[idx] = s
                        else:
                            row.pop(idx, None)
            rows.append(row)
        return rows

    def d_rows(self, t: int, a: int, X: int) -> list[dict[int, Fraction]]:
        """Chain differential at weight a, degree X: term t -> t+1."""
        src = self.basis(t, a, X)
        tgt_index = self.index(t + 1, a, X)
        d = self._diff.get(t)
        rows = []
        if d is None:
            return [dict() for _ in src]
        by_col: dict[int, list[tuple[int, Poly]]] = {}
        for (r, c), p in d.entries.items():
            by_col.setdefault(c, []).append((r, p))
        for (S, j, mono) in src:
            row: dict[int, Fraction] = {}
            for k, p in by_col.get(j, ()):
                for pm, coef in p.terms.items():
                    tm = tuple(x + y for x, y in zip(mono, pm))
                    idx = tgt_index.get((S, k, tm))
                    if idx is None:
                        continue
                    s = row.get(idx, 0) + coef
                    if s:
                        row[idx] = s
                    else:
                        row.pop(idx, None)
            rows.append(row)
        return rows

    # -- ranks ----------------------------------------------------------------

    def rank_k(self, t: int, a: int, X: int) -> int:
        key = (t, a, X)
        got = self._rank_k.get(key)
        if got is None:
            if a <= 0 or a > self.n or t not in self._bim:
                got = 0
            else:
                got = rank_rows(self.k_rows(t, a, X))
            self._rank_k[key] = got
        return got

    def rank_block(self, t: int, a: int, X: int) -> int:
        """rank [[K_t, 0], [D_t, K'_{t+1}]] at weight a, degree X."""
        key = (t, a, X)
        got = self._rank_blk.get(key)
        if got is not None:
            return got
        off = len(self.basis(t, a - 1, X)) if a >= 1 else 0
        rows: list[dict[int, Fraction]] = []
        if t in self._bim:
            krows = self.k_rows(t, a, X) if a >= 1 else \
                [dict() for _ in self.basis(t, a, X)]
            drows = self.d_rows(t, a, X)
            for kr, dr in zip(krows, drows):
                row = dict(kr)
                for c, v in dr.items():
                    row[off + c] = v
                rows.append(row)
        if (t + 1) in self._bim and a + 1 <= self.n:
            for kr in self.k_rows(t + 1, a + 1, X):
                rows.append({off + c: v for c, v in kr.items()})
        got = rank_rows(rows)
        self._rank_blk[key] = got
        return got

    def hh_term_dim(self, t: int, a: int, X: int) -> int:
        dim = len(self.basis(t, a, X))
        if not dim:
            return 0
        return dim - self.rank_k(t, a, X) - self.rank_k(t, a + 1, X)

    def induced_rank(self, t: int, a: int, X: int) -> int:
        if t not in self._bim or (t + 1) not in self._bim:
            return 0
        return (self.rank_block(t, a, X) - self.rank_k(t, a, X)
                - self.rank_k(t + 1, a + 1, X))

    def homology_dim(self, t: int, a: int, X: int) -> int:
        h = self.hh_term_dim(t, a, X)
        if h == 0:
            return 0
        return h - self.induced_rank(t, a, X) - self.induced_rank(t - 1, a, X)

    def x_floor(self, a: int) -> int:
        degs = [g for t in self.positions for g in self.gen_degrees(t)]
        return (min(degs) if degs else 0) + 2 * a


class HHHTable:
    """The assembled triply graded table with completeness metadata."""

    def __init__(self, n: int, entries: Mapping[tuple[int, int, int], int],
                 meta: dict, q_max: int | None = None,
                 x_max: int | None = None):
        self.n = n
        self.entries = {k: v for k, v in entries.items() if v}
        self.meta = dict(meta)
        self.q_max = q_max
        self.x_max = x_max

    def dim(self, a: int, X: int, C: int) -> int:
        return self.entries.get((a, X, C), 0)

    def in_window(self, a: int, X: int, C: int) -> bool:
        ok = True
        if self.q_max is not None:
            ok = ok and (X + C - 3 * a) <= 2 * self.q_max
        if self.x_max is not None:
            ok = ok and X <= self.x_max
        return ok

    def same_dims(self, other: "HHHTable") -> bool:
        for key in set(self.entries) | set(other.entries):
            if not (self.in_window(*key) and other.in_window(*key)):
                continue
            if self.entries.get(key, 0) != other.entries.get(key, 0):
                return False
        return True

    def diff(self, other: "HHHTable") -> list:
        out = []
        for key in sorted(set(self.entries) | set(other.entries)):
            if not (self.in_window(*key) and other.in_window(*key)):
                continue
            a, b = self.entries.get(key, 0), other.entries.get(key, 0)
            if a != b:
                out.append((key, a, b))
        return out

    def as_dimtable(self) -> DimTable:
        win = {}
        if self.x_max is not None:
            win["X"] = (None, self.x_max)
        return DimTable(HHH_SCHEME, {k: v for k, v in self.entries.items()}, win)

    def to_json(self) -> dict:
        return {
            "schema": "hhh-table/1",
            "strands": self.n,
            "meta": self.meta,
            "window": {"q_max": self.q_max, "x_max": self.x_max},
            "entries": [[a, X, C, d] for (a, X, C), d
                        in sorted(self.entries.items())],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "HHHTable":
        entries = {(a, X, C): d for a, X, C, d in data["entries"]}
        win = data.get("window", {})
        return cls(data["strands"], entries, data.get("meta", {}),
                   win.get("q_max"), win.get("x_max"))

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, separators=(",", ":"))


def assemble_hhh(C: BimoduleComplex, q_max: int | None = None,
                 x_max: int | None = None) -> HHHTable:
    """Termwise assembly of the table of a (normalized) braid complex.

    The window is either a plain internal-degree cap ``x_max`` or a rendered
    cap ``q_max`` (q-exponent of the qat render), in which case the relevant
    X range is derived per weight and cohomological degree.
    """
    if q_max is None and x_max is None:
        raise ValueError("need q_max or x_max")
    asm = Assembler(C)
    n, s = C.n, C.meta.get("a_shift", 0)
    entries: dict[tuple[int, int, int], int] = {}
    for a in range(n + 1):
        a_out = a - s
        lo = asm.x_floor(a)
        for t in asm.positions:
            Cdeg = t + a_out
            hi_candidates = []
            if x_max is not None:
                hi_candidates.append(x_max)
            if q_max is not None:
                hi_candidates.append(2 * q_max + 3 * a_out - Cdeg)
            hi = max(hi_candidates) if len(hi_candidates) == 2 else hi_candidates[0]
            for X in range(lo, hi + 1):
                d = asm.homology_dim(t, a, X)
                if d:
                    entries[(a_out, X, Cdeg)] = d
    return HHHTable(n, entries, dict(C.meta), q_max=q_max, x_max=x_max)


def totalization_dims(C: BimoduleComplex, x_max: int) -> dict[tuple[int, int], int]:
    """Homology dims of the totalized complex (u = t - weight, X); the
    marginal over the Hochschild weight of the assembled table.

    Totalization mixes weights, so only this marginal is recoverable; entries
    are keyed by raw u (no normalization weight-shift applied: with shift s,
    u = C - 2 a_out - s in the table's terms)."""
    asm = Assembler(C)
    n = C.n
    tmin, tmax = min(asm.positions), max(asm.positions)
    out: dict[tuple[int, int], int] = {}
    xs = sorted({X for a in range(n + 1)
                 for X in range(asm.x_floor(a), x_max + 1)})
    for X in xs:
        # bases per u: list of (a, offset)
        layout: dict[int, list[tuple[int, int, int]]] = {}
        for u in range(tmin - n, tmax + 1):
            offs = []
            pos = 0
            for a in range(n + 1):
                t = u + a
                if t in asm._bim:
                    cnt = len(asm.basis(t, a, X))
                    offs.append((a, t, pos))
                    pos += cnt
            layout[u] = offs

        def total_rows(u: int) -> list[dict[int, Fraction]]:
            src = layout.get(u, [])
            tgt = {(a, t): off for (a, t, off) in layout.get(u + 1, [])}
            rows = []
            for (a, t, off) in src:
                drows = asm.d_rows(t, a, X)
                krows = asm.k_rows(t, a, X) if a >= 1 else None
                sign = -1 if (t % 2) else 1
                for ridx in range(len(asm.basis(t, a, X))):
                    row: dict[int, Fraction] = {}
                    o1 = tgt.get((a, t + 1))
                    if o1 is not None:
                        for c, v in drows[ridx].items():
                            row[o1 + c] = v
                    o2 = tgt.get((a - 1, t))
                    if o2 is not None and krows is not None:
                        for c, v in krows[ridx].items():
                            row[o2 + c] = row.get(o2 + c, 0) + sign * v
                    rows.append(row)
            return rows

        ranks: dict[int, int] = {}
        for u in range(tmin - n - 1, tmax + 1):
            ranks[u] = rank_rows(total_rows(u))
        for u in range(tmin - n, tmax + 1):
            dim = sum(len(asm.basis(t, a, X))
                      for (a, t, _) in layout.get(u, []))
            h = dim - ranks.get(u, 0) - ranks.get(u - 1, 0)
            if h:
                out[(u, X)] = h
    return out


# ---------------------------------------------------------------------------
# renders


def render(table: HHHTable, convention: str) -> DimTable:
    conv = convention.lower()
    if conv == "qat":
        if convention == "QAT":
            dims: dict[tuple, int] = {}
            for (a, X, C), d in table.entries.items():
                key = (X, -a, C - a)
                dims[key] = dims.get(key, 0) + d
            win = {}
            if table.x_max is not None:
                win["Q"] = (None, table.x_max)
            return DimTable(QAT_SCHEME, dims, win)
        # lowercase qat: half axes doubled
        dims = {}
        for (a, X, C), d in table.entries.items():
            key = (X + C - 3 * a, a, C - a)
            dims[key] = dims.get(key, 0) + d
        win = {}
        if table.q_max is not None:
            win["q"] = (None, 2 * table.q_max)
        return DimTable(qat_SCHEME, dims, win)
    if conv in ("qpaptp", "q'a't'"):
        dims = {}
        for (a, X, C), d in table.entries.items():
            key = (X, X - a, C - a)
            dims[key] = dims.get(key, 0) + d
        win = {}
        if table.x_max is not None:
            win["Qp"] = (None, table.x_max)
        return DimTable(QPAPTP_SCHEME, dims, win)
    if conv in ("tilde", "tilde-per"):
        dims = {}
        cs = []
        for (a, X, C), d in table.entries.items():
            key = (X + C - 3 * a, C - a, C)
            dims[key] = dims.get(key, 0) + d
            cs.append(C)
        win: dict = {}
        if table.q_max is not None:
            win["Xt"] = (None, 2 * table.q_max)
        t = DimTable(TILDE_SCHEME, dims, win)
        if conv == "tilde":
            return t
        # fold the full table into the fundamental domain C in [-1, 0] along
        # the degree-(+2, +2, -2) periodicity direction (Xt doubled)
        folded: dict[tuple, int] = {}
        for (xt, yt, c), d in dims.items():
            k = (c + 1) // 2  # c - 2k lands in [-1, 0]
            key = (xt + 2 * k, yt + 2 * k, c - 2 * k)
            folded[key] = folded.get(key, 0) + d
        fw = dict(win)
        fw["C"] = (-1, 0)
        return DimTable(TILDE_SCHEME, folded, fw)
    raise ValueError(f"unknown render convention {convention!r}")


def render_gamma(table: DimTable, a: int) -> DimTable:
    """Place a weight-a derived-invariants table into braid-side (Q, A, T)
    coordinates: (X, C) -> (X + 2a, -a, C - X)."""
    dims: dict[tuple, int] = {}
    for (X, C), d in table.dims.items():
        key = (X + 2 * a, -a, C - X)
        dims[key] = dims.get(key, 0) + d
    xw = table.window.interval("X")
    win = {}
    if xw[1] is not None:
        win["Q"] = (None, xw[1] + 2 * a)
    return DimTable(QAT_SCHEME, dims, win)


# ---------------------------------------------------------------------------
# homology classes and symmetric-function operators


class _IncrementalSpan:
    def __init__(self) -> None:
        self.red: list[dict[int, Fraction]] = []
        self.piv: list[int] = []

    def residual(self, vec: Mapping[int, Fraction]) -> dict[int, Fraction]:
        cur = {c: Fraction(v) for c, v in vec.items() if v}
        for i, pc in enumerate(self.piv):
            v = cur.get(pc)
            if v:
                for c, w in self.red[i].items():
                    s = cur.get(c, 0) - v * w
                    if s:
                        cur[c] = s
                    else:
                        cur.pop(c, None)
        return cur

    def add(self, vec: Mapping[int, Fraction]) -> bool:
        cur = self.residual(vec)
        if not cur:
            return False
        lead = min(cur)
        lv = cur[lead]
        self.red.append({c: v / lv for c, v in cur.items()})
        self.piv.append(lead)
        return True


class HomologyBasis:
    """Explicit homology classes of the assembled complex at fixed raw weight
    a and degree X: representatives per chain position plus projectors."""

    def __init__(self, asm: Assembler, a: int, X: int):
        self.asm = asm
        self.a = a
        self.X = X
        self.reps: dict[int, list[dict[int, Fraction]]] = {}
        self._solver: dict[int, tuple[SpanSolver, int]] = {}
        kernels: dict[int, list[dict[int, Fraction]]] = {}
        for t in asm.positions:
            dim = len(asm.basis(t, a, X))
            if dim == 0:
                kernels[t] = []
                continue
            if a >= 1:
                krows = asm.k_rows(t, a, X)
                ncols_t = len(asm.basis(t, a - 1, X))
                kernels[t] = nullspace(_transpose_square(krows, dim, ncols_t), dim)
            else:
                kernels[t] = [{i: Fraction(1)} for i in range(dim)]
        for t in asm.positions:
            ker = kernels[t]
            if not ker:
                self.reps[t] = []
                continue
            # Z = {v in ker K : D v in im K'_{t+1}}
            drows = asm.d_rows(t, a, X)
            imkp_next = _image_vectors(asm, t + 1, a + 1, X)
            span_next = _IncrementalSpan()
            for w in imkp_next:
                span_next.add(w)
            residues = []
            for u in ker:
                Du = _apply_rows(drows, u)
                residues.append(span_next.residual(Du))
            coeff_null = nullspace(_transpose_vecs(residues), len(ker))
            zbasis = [_combine(ker, c) for c in coeff_null]
            # B = im K'_t + D(ker at t-1)
            bvecs = _image_vectors(asm, t, a + 1, X)
            prev_ker = kernels.get(t - 1, [])
            if prev_ker:
                dprev = asm.d_rows(t - 1, a, X)
                for u in prev_ker:
                    v = _apply_rows(dprev, u)
                    if v:
                        bvecs.append(v)
            span = _IncrementalSpan()
            bspan = []
            for v in bvecs:
                if span.add(v):
                    bspan.append(v)
            reps = []
            for z in zbasis:
                if span.add(z):
                    reps.append(z)
            self.reps[t] = reps
            expected = asm.homology_dim(t, a, X)
            if len(reps) != expected:
                raise AssertionError(
                    f"homology basis size {len(reps)} != rank formula {expected}"
                    f" at (t={t}, a={a}, X={X})")
            self._solver[t] = (SpanSolver(bspan + reps), len(bspan))

    def dim(self, t: int) -> int:
        return len(self.reps.get(t, []))

    def project(self, t: int, vec: Mapping[int, Fraction]) -> list[Fraction]:
        reps = self.reps.get(t, [])
        if not reps:
            if any(vec.values()):
                raise ValueError("nonzero vector in zero homology slice")
            return []
        solver, off = self._solver[t]
        sol = solver.solve(vec)
        if sol is None:
            raise ValueError("vector is not a cycle of the induced complex")
        return [sol.get(off + r, Fraction(0)) for r in range(len(reps))]


def _transpose_square(rows: list[dict[int, Fraction]], nsrc: int, ntgt: int
                      ) -> list[dict[int, Fraction]]:
    """Rows of the standard matrix (target-indexed) from source-indexed rows."""
    out: list[dict[int, Fraction]] = [dict() for _ in range(ntgt)]
    for srci, row in enumerate(rows):
        for tgt, v in row.items():
            out[tgt][srci] = v
    return out


def _transpose_vecs(vecs: list[dict[int, Fraction]]) -> list[dict[int, Fraction]]:
    cols: dict[int, dict[int, Fraction]] = {}
    for i, v in enumerate(vecs):
        for c, val in v.items():
            cols.setdefault(c, {})[i] = val
    return [cols[c] for c in sorted(cols)]


def _apply_rows(rows: list[dict[int, Fraction]], vec: Mapping[int, Fraction]
                ) -> dict[int, Fraction]:
    out: dict[int, Fraction] = {}
    for i, coef in vec.items():
        for c, v in rows[i].items():
            s = out.get(c, 0) + coef * v
            if s:
                out[c] = s
            else:
                out.pop(c, None)
    return out


def _combine(vecs: list[dict[int, Fraction]], coeffs: Mapping[int, Fraction]
             ) -> dict[int, Fraction]:
    out: dict[int, Fraction] = {}
    for i, c in coeffs.items():
        for k, v in vecs[i].items():
            s = out.get(k, 0) + c * v
            if s:
                out[k] = s
            else:
                out.pop(k, None)
    return out


def _image_vectors(asm: Assembler, t: int, a: int, X: int
                   ) -> list[dict[int, Fraction]]:
    if a > asm.n or t not in asm._bim:
        return []
    if not asm.basis(t, a, X):
        return []
    return [r for r in asm.k_rows(t, a, X) if r]


class HomologyModel:
    """Lazy homology bases for a complex, across weights and degrees."""

    def __init__(self, C: BimoduleComplex):
        self.C = C
        self.asm = Assembler(C)
        self.s = C.meta.get("a_shift", 0)
        self._bases: dict[tuple[int, int], HomologyBasis] = {}

    def basis(self, a_raw: int, X: int) -> HomologyBasis:
        key = (a_raw, X)
        got = self._bases.get(key)
        if got is None:
            got = HomologyBasis(self.asm, a_raw, X)
            self._bases[key] = got
        return got

    def classes(self, x_max: int) -> Iterable[tuple[int, int, int, int]]:
        """Yield (a_raw, X, t, index) for every homology class with X <= x_max."""
        n = self.asm.n
        for a in range(n + 1):
            for X in range(self.asm.x_floor(a), x_max + 1):
                hb = self.basis(a, X)
                for t in self.asm.positions:
                    for i in range(hb.dim(t)):
                        yield (a, X, t, i)

    def multiply(self, poly: Poly, a_raw: int, X: int, t: int,
                 vec: Mapping[int, Fraction]) -> dict[int, Fraction]:
        """Left multiplication by a homogeneous symmetric polynomial on the
        slice at (a_raw, X, t), landing at X + deg."""
        deg = poly.homogeneous_degree()
        d = deg[0] if deg else 0
        src = self.asm.basis(t, a_raw, X)
        tgt_index = self.asm.index(t, a_raw, X + d)
        out: dict[int, Fraction] = {}
        for i, coef in vec.items():
            S, j, mono = src[i]
            for pm, pc in poly.terms.items():
                tm = tuple(x + y for x, y in zip(mono, pm))
                idx = tgt_index.get((S, j, tm))
                if idx is None:
                    raise ValueError("target slice does not contain image "
                                     "monomial; X window too small")
                s = out.get(idx, 0) + coef * pc
                if s:
                    out[idx] = s
                else:
                    out.pop(idx, None)
        return out


class SymFunOperator:
    """The operator induced on assembled homology by multiplication with a
    symmetric polynomial (left = right action; the chain-level equality is
    checked by ``soergel.symmetric_action_matrices``)."""

    def __init__(self, model: HomologyModel, poly: Poly):
        self.model = model
        self.poly = poly
        deg = poly.homogeneous_degree()
        self.xdeg = deg[0] if deg else 0

    def matrix(self, a_raw: int, X: int, t: int) -> list[list[Fraction]]:
        """Matrix (rows = target coords) of the induced map
        H(a, X, t) -> H(a, X + deg, t)."""
        hb_src = self.model.basis(a_raw, X)
        hb_tgt = self.model.basis(a_raw, X + self.xdeg)
        cols = []
        for rep in hb_src.reps.get(t, []):
            img = self.model.multiply(self.poly, a_raw, X, t, rep)
            cols.append(hb_tgt.project(t, img))
        rows = hb_tgt.dim(t)
        return [[cols[c][r] for c in range(len(cols))] for r in range(rows)]


def symfun_operator(C: BimoduleComplex, k: int) -> SymFunOperator:
    from .polyalg import elem_sym
    model = HomologyModel(C)
    return SymFunOperator(model, elem_sym(model.asm._bim[C.positions[0]].ring, k))
