"""Crossing complexes and their braid tensor products.

A braid word is a sequence of nonzero integers: letter +i is the positive
crossing of strands i, i+1, letter -i the negative one.  Each crossing maps to
a two-term complex of labeled Bott-Samelson summands:

    positive:  [ B_i  ->  R<-1> ]   with B_i in chain position 0,
               e |-> 1,  f |-> x_i
    negative:  [ R<+1> ->  B_i ]    with B_i in chain position 0,
               1 |-> x_{i+1} e - f

(the internal shifts <-1>/<+1> are the unique choices making the maps
degree-0 homogeneous).  Words tensor left to right with the usual sign
(-1)^{t} on the second differential.

``simplify`` contracts a complex to a homotopy-equivalent smaller one in two
alternating moves, both exactness-preserving:

- *square split*: a summand whose word contains an adjacent equal pair
  (.., i, i, ..) is replaced by the two summands with one i dropped and
  shifts +-1; in the generator basis this change of basis is a permutation
  (the rank-4 middle splits along the e/f generator of its first factor).
- *Gaussian cancellation*: a differential component between two summands with
  identical labels (word and shift) that is a nonzero constant multiple of the
  identity is contracted, correcting the neighbouring components.

The closure normalization: a braid of writhe w on n strands whose permutation
has c cycles is rescaled by the internal shift <-w> together with a shift of
-(w + n - c)/2 on chain positions and on the Hochschild weight readout (the
latter recorded as ``a_shift`` for the assembly stage).  These amounts are the
unique ones fixed by the identity braids and invariance under both
stabilization moves.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from .polyalg import GradedFreeModule, Poly, PolyMatrix
from .soergel import Bimodule, bimodule_ring, tensor_map, word_bimodule


@dataclass(frozen=True)
class Conventions:
    """Pinned sign/shift conventions; part of every cache key."""

    pos_shift: int = -1
    neg_shift: int = +1
    normalization: str = "markov"  # "markov" | "none"

    def key(self) -> dict:
        return {"pos_shift": self.pos_shift, "neg_shift": self.neg_shift,
                "normalization": self.normalization}


DEFAULT_CONVENTIONS = Conventions()


@dataclass(frozen=True)
class Summand:
    word: tuple[int, ...]
    shift: int = 0

    def bimodule(self, n: int) -> Bimodule:
        M = word_bimodule(self.word, n)
        return M.shift(self.shift) if self.shift else M

    def label(self) -> str:
        w = "*".join(f"b{i}" for i in self.word) if self.word else "R"
        return f"{w}<{self.shift}>" if self.shift else w


BlockKey = tuple[int, int]  # (dst summand index, src summand index)


class BimoduleComplex:
    """A finite complex of direct sums of labeled shifted word bimodules.

    ``terms[t]`` is the summand list at chain position t; ``blocks[t][(j,i)]``
    the component from summand i at t to summand j at t+1.
    """

    def __init__(self, n: int, terms: Mapping[int, list[Summand]],
                 blocks: Mapping[int, dict[BlockKey, PolyMatrix]],
                 meta: dict | None = None):
        self.n = n
        self.ring = bimodule_ring(n)
        self.terms = {t: list(ss) for t, ss in terms.items() if ss}
        self.blocks = {t: {k: b for k, b in bl.items() if not b.is_zero()}
                       for t, bl in blocks.items()}
        self.blocks = {t: bl for t, bl in self.blocks.items() if bl}
        self.meta = dict(meta or {})
        self._flat_cache: dict[int, Bimodule] = {}

    # -- inspection ---------------------------------------------------------

    @property
    def positions(self) -> list[int]:
        return sorted(self.terms)

    def summands(self, t: int) -> list[Summand]:
        return self.terms.get(t, [])

    def total_rank(self) -> int:
        return sum(s.bimodule(self.n).rank for ss in self.terms.values()
                   for s in ss)

    def flat_bimodule(self, t: int) -> Bimodule:
        got = self._flat_cache.get(t)
        if got is None:
            ss = self.terms[t]
            got = ss[0].bimodule(self.n)
            for s in ss[1:]:
                got = got.direct_sum(s.bimodule(self.n))
            self._flat_cache[t] = got
        return got

    def _offsets(self, t: int) -> list[int]:
        offs = [0]
        for s in self.terms.get(t, []):
            offs.append(offs[-1] + s.bimodule(self.n).rank)
        return offs

    def flat_diff(self, t: int) -> PolyMatrix | None:
        bl = self.blocks.get(t)
        if bl is None:
            return None
        src = self.flat_bimodule(t).module
        dst = self.flat_bimodule(t + 1).module
        so = self._offsets(t)
        do = self._offsets(t + 1)
        entries: dict[tuple[int, int], Poly] = {}
        for (j, i), m in bl.items():
            for (r, c), p in m.entries.items():
                entries[(do[j] + r, so[i] + c)] = p
        return PolyMatrix(src, dst, entries, (0,))

    def check(self) -> None:
        """Symbolic d^2 = 0 on the flattened differentials."""
        for t in self.positions:
            d1 = self.flat_diff(t)
            d2 = self.flat_diff(t + 1) if (t + 1) in self.terms else None
            if d1 is not None and d2 is not None:
                comp = d2.compose(d1)
                if not comp.is_zero():
                    raise ValueError(f"d^2 != 0 at position {t}")

    # -- global shifts -------------------------------------------------------

    def shift_internal(self, k: int) -> "BimoduleComplex":
        terms = {t: [Summand(s.word, s.shift + k) for s in ss]
                 for t, ss in self.terms.items()}
        blocks = {t: {key: m.shift((k,)) for key, m in bl.items()}
                  for t, bl in self.blocks.items()}
        return BimoduleComplex(self.n, terms, blocks, self.meta)

    def shift_position(self, k: int) -> "BimoduleComplex":
        terms = {t + k: ss for t, ss in self.terms.items()}
        blocks = {t + k: bl for t, bl in self.blocks.items()}
        return BimoduleComplex(self.n, terms, blocks, self.meta)

    # -- serialization --------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "meta": {k: v for k, v in sorted(self.meta.items())},
            "terms": {str(t): [{"word": list(s.word), "shift": s.shift}
                               for s in ss]
                      for t, ss in sorted(self.terms.items())},
            "blocks": {str(t): [{"dst": j, "src": i, "matrix": m.to_json()}
                                for (j, i), m in sorted(bl.items())]
                       for t, bl in sorted(self.blocks.items())},
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "BimoduleComplex":
        n = data["n"]
        terms = {int(t): [Summand(tuple(s["word"]), s["shift"]) for s in ss]
                 for t, ss in data["terms"].items()}
        out = cls(n, terms, {}, data.get("meta"))
        blocks: dict[int, dict[BlockKey, PolyMatrix]] = {}
        ring = out.ring
        for ts, bl in data["blocks"].items():
            t = int(ts)
            blocks[t] = {}
            for e in bl:
                mj = e["matrix"]
                src = GradedFreeModule(ring, tuple(tuple(g) for g in mj["src"]["gens"]))
                dst = GradedFreeModule(ring, tuple(tuple(g) for g in mj["dst"]["gens"]))
                entries = {(en["row"], en["col"]): Poly.from_json(ring, en["poly"])
                           for en in mj["entries"]}
                blocks[t][(e["dst"], e["src"])] = PolyMatrix(
                    src, dst, entries, tuple(mj["offset"]))
        out.blocks = blocks
        return out


# ---------------------------------------------------------------------------
# crossings


def crossing_complex(letter: int, n: int,
                     conv: Conventions = DEFAULT_CONVENTIONS) -> BimoduleComplex:
    """The two-term complex of a single crossing (letter = +-i, 1-based)."""
    i = abs(letter)
    if not (1 <= i < n):
        raise ValueError(f"crossing index {i} out of range for n={n}")
    ring = bimodule_ring(n)
    B = Summand((i,), 0)
    if letter > 0:
        R = Summand((), conv.pos_shift)
        src = B.bimodule(n).module
        dst = R.bimodule(n).module
        d = PolyMatrix(src, dst, {(0, 0): ring.one(), (0, 1): ring.var(i - 1)},
                       (0,))
        return BimoduleComplex(n, {0: [B], 1: [R]}, {0: {(0, 0): d}})
    R = Summand((), conv.neg_shift)
    src = R.bimodule(n).module
    dst = B.bimodule(n).module
    d = PolyMatrix(src, dst, {(0, 0): ring.var(i), (1, 0): -ring.one()}, (0,))
    return BimoduleComplex(n, {-1: [R], 0: [B]}, {-1: {(0, 0): d}})


def unit_complex(n: int) -> BimoduleComplex:
    return BimoduleComplex(n, {0: [Summand((), 0)]}, {})


# ---------------------------------------------------------------------------
# tensor product of complexes


def complex_tensor(C1: BimoduleComplex, C2: BimoduleComplex) -> BimoduleComplex:
    """Left-to-right tensor with the Koszul sign (-1)^{t1} on d2."""
    if C1.n != C2.n:
        raise ValueError("strand count mismatch")
    n = C1.n
    # index map: (t1, i1, t2, i2) -> (t, index), ordered by (t1, i1, i2)
    index: dict[tuple[int, int, int, int], int] = {}
    terms: dict[int, list[Summand]] = {}
    for t1 in C1.positions:
        for t2 in C2.positions:
            t = t1 + t2
            lst = terms.setdefault(t, [])
            for i1, s1 in enumerate(C1.summands(t1)):
                for i2, s2 in enumerate(C2.summands(t2)):
                    index[(t1, i1, t2, i2)] = len(lst)
                    lst.append(Summand(s1.word + s2.word, s1.shift + s2.shift))
    blocks: dict[int, dict[BlockKey, PolyMatrix]] = {}

    def put(t: int, dst: int, src: int, m: PolyMatrix) -> None:
        if m.is_zero():
            return
        bl = blocks.setdefault(t, {})
        key = (dst, src)
        old = bl.get(key)
        bl[key] = m if old is None else old + m

    for t1 in C1.positions:
        for t2 in C2.positions:
            t = t1 + t2
            for i1, s1 in enumerate(C1.summands(t1)):
                b1 = s1.bimodule(n)
                for i2, s2 in enumerate(C2.summands(t2)):
                    b2 = s2.bimodule(n)
                    src_idx = index[(t1, i1, t2, i2)]
                    # d1 (x) id
                    for (j1, i1b), m in C1.blocks.get(t1, {}).items():
                        if i1b != i1:
                            continue
                        s1d = C1.summands(t1 + 1)[j1]
                        dst_idx = index[(t1 + 1, j1, t2, i2)]
                        g = PolyMatrix.identity(b2.module)
                        tm = tensor_map(m, g, b1, b2, s1d.bimodule(n), b2)
                        put(t, dst_idx, src_idx, tm)
                    # (-1)^{t1} id (x) d2
                    sign = -1 if (t1 % 2) else 1
                    for (j2, i2b), m in C2.blocks.get(t2, {}).items():
                        if i2b != i2:
                            continue
                        s2d = C2.summands(t2 + 1)[j2]
                        dst_idx = index[(t1, i1, t2 + 1, j2)]
                        f = PolyMatrix.identity(b1.module)
                        tm = tensor_map(f, m, b1, b2, b1, s2d.bimodule(n))
                        if sign < 0:
                            tm = tm.scale(-1)
                        put(t, dst_idx, src_idx, tm)
    return BimoduleComplex(n, terms, blocks)


# ---------------------------------------------------------------------------
# simplification


def _is_scalar_identity(m: PolyMatrix) -> Fraction | None:
    """The lambda with m = lambda . Id (lambda a nonzero rational), or None."""
    rk = m.src.rank
    if m.dst.rank != rk or len(m.entries) != rk:
        return None
    lam: Fraction | None = None
    for (r, c), p in m.entries.items():
        if r != c:
            return None
        if len(p.terms) != 1:
            return None
        mono, coef = next(iter(p.terms.items()))
        if any(mono):
            return None
        if lam is None:
            lam = coef
        elif coef != lam:
            return None
    return lam


def _find_square(C: BimoduleComplex) -> tuple[int, int, int] | None:
    for t in C.positions:
        for idx, s in enumerate(C.terms[t]):
            for p in range(len(s.word) - 1):
                if s.word[p] == s.word[p + 1]:
                    return (t, idx, p)
    return None


def _split_square(C: BimoduleComplex, t: int, idx: int, p: int) -> BimoduleComplex:
    s = C.terms[t][idx]
    i = s.word[p]
    U, V = s.word[:p], s.word[p + 2:]
    rank_v = 2 ** len(V)
    rank_u = 2 ** len(U)
    hi = Summand(U + (i,) + V, s.shift + 1)
    lo = Summand(U + (i,) + V, s.shift - 1)

    # generator index arithmetic: old index = (((u*2 + b1)*2 + b2) * rank_v + v)
    # with b1 the first factor of the square.  b1 = 1 -> hi, b1 = 0 -> lo;
    # the new index is ((u*2 + b2) * rank_v + v).
    def classify(old: int) -> tuple[int, int]:
        v = old % rank_v
        rest = old // rank_v
        b2 = rest % 2
        rest //= 2
        b1 = rest % 2
        u = rest // 2
        return b1, (u * 2 + b2) * rank_v + v

    new_terms = {tt: list(ss) for tt, ss in C.terms.items()}
    new_terms[t] = C.terms[t][:idx] + [hi, lo] + C.terms[t][idx + 1:]

    def remap_src(key_idx: int) -> int:
        # summand indices after idx move up by one
        return key_idx if key_idx < idx else key_idx + 1

    n = C.n
    hi_mod = hi.bimodule(n).module
    lo_mod = lo.bimodule(n).module
    new_blocks: dict[int, dict[BlockKey, PolyMatrix]] = {}
    for tt, bl in C.blocks.items():
        nb: dict[BlockKey, PolyMatrix] = {}
        for (j, a), m in bl.items():
            if tt == t and a == idx:
                # split source columns by b1
                ents_hi: dict[tuple[int, int], Poly] = {}
                ents_lo: dict[tuple[int, int], Poly] = {}
                for (r, c), q in m.entries.items():
                    b1, nc = classify(c)
                    (ents_hi if b1 else ents_lo)[(r, nc)] = q
                dst_mod = m.dst
                nb[(j, idx)] = PolyMatrix(hi_mod, dst_mod, ents_hi, (0,))
                nb[(j, idx + 1)] = PolyMatrix(lo_mod, dst_mod, ents_lo, (0,))
            elif tt == t - 1 and j == idx:
                ents_hi = {}
                ents_lo = {}
                for (r, c), q in m.entries.items():
                    b1, nr = classify(r)
                    (ents_hi if b1 else ents_lo)[(nr, c)] = q
                src_mod = m.src
                nb[(idx, a)] = PolyMatrix(src_mod, hi_mod, ents_hi, (0,))
                nb[(idx + 1, a)] = PolyMatrix(src_mod, lo_mod, ents_lo, (0,))
            else:
                jj = remap_src(j) if tt == t - 1 else j
                aa = remap_src(a) if tt == t else a
                nb[(jj, aa)] = m
        new_blocks[tt] = nb
    return BimoduleComplex(C.n, new_terms, new_blocks, C.meta)


def _find_cancellation(C: BimoduleComplex) -> tuple[int, int, int, Fraction] | None:
    for t in C.positions:
        bl = C.blocks.get(t)
        if not bl:
            continue
        for (j, i) in sorted(bl):
            src = C.terms[t][i]
            dst = C.terms[t + 1][j]
            if src.word != dst.word or src.shift != dst.shift:
                continue
            lam = _is_scalar_identity(bl[(j, i)])
            if lam is not None:
                return (t, j, i, lam)
    return None


def _cancel(C: BimoduleComplex, t: int, j: int, i: int, lam: Fraction
            ) -> BimoduleComplex:
    bl = C.blocks.get(t, {})
    inv = Fraction(1) / lam
    # corrected inner blocks
    new_inner: dict[BlockKey, PolyMatrix] = {}
    col_i = {b: m for (b, a), m in bl.items() if a == i and b != j}
    row_j = {a: m for (b, a), m in bl.items() if b == j and a != i}
    for (b, a), m in bl.items():
        if a == i or b == j:
            continue
        corr = None
        if b in col_i and a in row_j:
            corr = col_i[b].compose(row_j[a]).scale(inv)
        new_inner[(b, a)] = m if corr is None else m + corr.scale(-1)
    # also: pairs (b, a) with no original block but nonzero correction
    for b, mb in col_i.items():
        for a, ma in row_j.items():
            if (b, a) in bl:
                continue
            corr = mb.compose(ma).scale(-inv)
            if not corr.is_zero():
                old = new_inner.get((b, a))
                new_inner[(b, a)] = corr if old is None else old + corr

    def drop_reindex(kidx: int, dropped: int) -> int:
        return kidx if kidx < dropped else kidx - 1

    new_terms = {tt: list(ss) for tt, ss in C.terms.items()}
    new_terms[t] = [s for k, s in enumerate(C.terms[t]) if k != i]
    new_terms[t + 1] = [s for k, s in enumerate(C.terms[t + 1]) if k != j]

    new_blocks: dict[int, dict[BlockKey, PolyMatrix]] = {}
    for tt, obl in C.blocks.items():
        nb: dict[BlockKey, PolyMatrix] = {}
        if tt == t:
            for (b, a), m in new_inner.items():
                nb[(drop_reindex(b, j), drop_reindex(a, i))] = m
        elif tt == t - 1:
            for (b, a), m in obl.items():
                if b == i:
                    continue
                nb[(drop_reindex(b, i), a)] = m
        elif tt == t + 1:
            for (b, a), m in obl.items():
                if a == j:
                    continue
                nb[(b, drop_reindex(a, j))] = m
        else:
            nb = dict(obl)
        if nb:
            new_blocks[tt] = nb
    return BimoduleComplex(C.n, new_terms, new_blocks, C.meta)


def simplify(C: BimoduleComplex, check: bool = False) -> BimoduleComplex:
    """Split all squares and cancel all identity components, repeatedly."""
    while True:
        cand = _find_cancellation(C)
        if cand is not None:
            C = _cancel(C, *cand)
            continue
        sq = _find_square(C)
        if sq is not None:
            C = _split_square(C, *sq)
            continue
        break
    if check:
        C.check()
    return C


# ---------------------------------------------------------------------------
# braid words


def perm_of_word(word: Iterable[int], n: int) -> tuple[int, ...]:
    """The underlying permutation (as the image tuple of 0..n-1)."""
    p = list(range(n))
    for letter in word:
        i = abs(letter) - 1
        if not (0 <= i < n - 1):
            raise ValueError(f"letter {letter} out of range for n={n}")
        p[i], p[i + 1] = p[i + 1], p[i]
    return tuple(p)


def cycles_of_perm(p: tuple[int, ...]) -> list[list[int]]:
    seen = [False] * len(p)
    out = []
    for s in range(len(p)):
        if seen[s]:
            continue
        cyc = []
        k = s
        while not seen[k]:
            seen[k] = True
            cyc.append(k)
            k = p[k]
        out.append(cyc)
    return out


def cycle_type(p: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(sorted((len(c) for c in cycles_of_perm(p)), reverse=True))


def writhe(word: Iterable[int]) -> int:
    return sum(1 if w > 0 else -1 for w in word)


def rouquier_complex(word: Iterable[int], n: int,
                     conv: Conventions = DEFAULT_CONVENTIONS,
                     simplify_chain: bool = True) -> BimoduleComplex:
    """The (optionally simplified) normalized complex of a braid word."""
    word = tuple(int(w) for w in word)
    C = unit_complex(n)
    for letter in word:
        C = complex_tensor(C, crossing_complex(letter, n, conv))
        if simplify_chain:
            C = simplify(C)
    perm = perm_of_word(word, n)
    cyc = cycles_of_perm(perm)
    w = writhe(word) if word else 0
    if conv.normalization == "markov":
        # Forced by invariance under both stabilizations and by the identity
        # braids: writhe shifts the internal degree, (w + n - c)/2 shifts the
        # chain position and the weight readout.  w = n - c (mod 2) always.
        s = (w + n - len(cyc)) // 2
        xs = w
    elif conv.normalization == "none":
        s = xs = 0
    else:
        raise ValueError(f"unknown normalization {conv.normalization!r}")
    if xs:
        C = C.shift_internal(-xs)
    if s:
        C = C.shift_position(-s)
    C.meta.update({
        "word": list(word),
        "strands": n,
        "writhe": w,
        "permutation_cycles": [len(c) for c in sorted(cyc)],
        "cycle_type": list(cycle_type(perm)),
        "a_shift": s,
        "conventions": conv.key(),
        "simplified": bool(simplify_chain),
    })
    return C
