"""Multi-degree bookkeeping: grading schemes, dimension tables, and the
shift/shear/regrade/periodize calculus.

Conventions pinned here and used by every other module:

- ``[k]`` (cohomological shift) adds ``-k`` to the cohomological axis.
- ``<k>`` (formal shift) adds ``+k`` to a named non-cohomological axis.
- a *left shear* moves an entry at (axis=i, C=c) to (i, c - 2i); the *right
  shear* is its inverse.
- axes marked "half" store doubled integers, so that all arithmetic stays in Z.

A ``DimTable`` records dimensions of the graded pieces of some object together
with a truncation *window*: a per-axis interval outside of which the table is
*unknown* (not zero).  Absent entries inside the window are genuine zeros.
Equality of tables is only meaningful on the intersection of their windows.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Mapping

Degree = tuple[int, ...]
Interval = tuple[int | None, int | None]


# ---------------------------------------------------------------------------
# grading schemes


@dataclass(frozen=True)
class GradingScheme:
    """An ordered tuple of named integer grading axes, exactly one of which is
    marked cohomological.

    >>> s = GradingScheme(("a", "X", "C"), "C")
    >>> s.degree(X=2, C=1)
    (0, 2, 1)
    """

    axes: tuple[str, ...]
    cohomological: str
    half: frozenset[str] = frozenset()

    def __post_init__(self) -> None:
        if len(set(self.axes)) != len(self.axes):
            raise ValueError(f"duplicate axis names: {self.axes}")
        if self.cohomological not in self.axes:
            raise ValueError(
                f"cohomological axis {self.cohomological!r} not among {self.axes}")
        if not self.half <= set(self.axes):
            raise ValueError(f"half-axes {self.half} not among {self.axes}")

    def index(self, axis: str) -> int:
        return self.axes.index(axis)

    def degree(self, **exps: int) -> Degree:
        unknown = set(exps) - set(self.axes)
        if unknown:
            raise ValueError(f"unknown axes {unknown} for scheme {self.axes}")
        return tuple(int(exps.get(ax, 0)) for ax in self.axes)

    def zero(self) -> Degree:
        return (0,) * len(self.axes)

    def add(self, d1: Degree, d2: Degree) -> Degree:
        return tuple(a + b for a, b in zip(d1, d2))

    def to_json(self) -> dict:
        return {
            "axes": list(self.axes),
            "cohomological": self.cohomological,
            "half": sorted(self.half),
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "GradingScheme":
        return cls(tuple(data["axes"]), data["cohomological"],
                   frozenset(data.get("half", ())))


# A couple of schemes used throughout.

HHH_SCHEME = GradingScheme(("a", "X", "C"), "C")          # assembled homology
XC_SCHEME = GradingScheme(("X", "C"), "C")                # one internal axis
XYC_SCHEME = GradingScheme(("X", "Y", "C"), "C")          # two internal axes
TILDE_SCHEME = GradingScheme(("Xt", "Yt", "C"), "C", frozenset({"Xt"}))
QAT_SCHEME = GradingScheme(("Q", "A", "T"), "T")
QPAPTP_SCHEME = GradingScheme(("Qp", "Ap", "Tp"), "Tp")
qat_SCHEME = GradingScheme(("q", "a", "t"), "t", frozenset({"q", "t"}))


# ---------------------------------------------------------------------------
# window helpers (per-axis intervals; None = unbounded)


def _iv_contains(iv: Interval, v: int) -> bool:
    lo, hi = iv
    if lo is not None and v < lo:
        return False
    if hi is not None and v > hi:
        return False
    return True


def _iv_intersect(a: Interval, b: Interval) -> Interval:
    lo = a[0] if b[0] is None else (b[0] if a[0] is None else max(a[0], b[0]))
    hi = a[1] if b[1] is None else (b[1] if a[1] is None else min(a[1], b[1]))
    return (lo, hi)


def _iv_shift(iv: Interval, by: int) -> Interval:
    lo, hi = iv
    return (None if lo is None else lo + by, None if hi is None else hi + by)


EMPTY_IV: Interval = (1, 0)  # lo > hi: nothing known on this axis


class Window:
    """A box window: mapping axis name -> interval.  Axes not mentioned are
    unbounded (fully known)."""

    __slots__ = ("ivs",)

    def __init__(self, ivs: Mapping[str, Interval] | None = None):
        self.ivs: dict[str, Interval] = {}
        for ax, iv in (ivs or {}).items():
            lo, hi = iv
            self.ivs[ax] = (None if lo is None else int(lo),
                            None if hi is None else int(hi))

    def contains(self, scheme: GradingScheme, deg: Degree) -> bool:
        for ax, iv in self.ivs.items():
            if not _iv_contains(iv, deg[scheme.index(ax)]):
                return False
        return True

    def interval(self, axis: str) -> Interval:
        return self.ivs.get(axis, (None, None))

    def intersect(self, other: "Window") -> "Window":
        out = dict(self.ivs)
        for ax, iv in other.ivs.items():
            out[ax] = _iv_intersect(out.get(ax, (None, None)), iv)
        return Window(out)

    def shift(self, scheme: GradingScheme, by: Degree) -> "Window":
        out = {}
        for ax, iv in self.ivs.items():
            out[ax] = _iv_shift(iv, by[scheme.index(ax)])
        return Window(out)

    def rename(self, mapping: Mapping[str, str]) -> "Window":
        return Window({mapping.get(ax, ax): iv for ax, iv in self.ivs.items()})

    def is_unbounded(self, axis: str) -> bool:
        return self.ivs.get(axis, (None, None)) == (None, None)

    def to_json(self) -> dict:
        return {ax: list(iv) for ax, iv in sorted(self.ivs.items())}

    @classmethod
    def from_json(cls, data: Mapping) -> "Window":
        return cls({ax: (iv[0], iv[1]) for ax, iv in data.items()})

    def __repr__(self) -> str:
        return f"Window({self.ivs})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, Window):
            return NotImplemented
        keys = set(self.ivs) | set(other.ivs)
        return all(self.interval(k) == other.interval(k) for k in keys)


# ---------------------------------------------------------------------------
# dimension tables


class DimTable:
    """Dimensions of graded pieces, with window semantics.

    Entries are strictly positive; a degree absent from ``dims`` but inside the
    window is zero, outside the window it is unknown.  Instances are treated as
    immutable; all operations return new tables.
    """

    __slots__ = ("scheme", "dims", "window")

    def __init__(self, scheme: GradingScheme,
                 dims: Mapping[Degree, int] | Iterable[tuple[Degree, int]],
                 window: Window | Mapping[str, Interval] | None = None):
        self.scheme = scheme
        items = dims.items() if isinstance(dims, Mapping) else dims
        clean: dict[Degree, int] = {}
        n = len(scheme.axes)
        for deg, dim in items:
            deg = tuple(int(x) for x in deg)
            if len(deg) != n:
                raise ValueError(f"degree {deg} has wrong length for {scheme.axes}")
            dim = int(dim)
            if dim < 0:
                raise ValueError(f"negative dimension {dim} at {deg}")
            if dim:
                clean[deg] = clean.get(deg, 0) + dim
        self.dims = clean
        self.window = window if isinstance(window, Window) else Window(window)

    # -- queries ----------------------------------------------------------

    def dim(self, **exps: int) -> int:
        return self.dims.get(self.scheme.degree(**exps), 0)

    def known(self, deg: Degree) -> bool:
        return self.window.contains(self.scheme, deg)

    def total(self) -> int:
        return sum(self.dims.values())

    def support(self) -> list[Degree]:
        return sorted(self.dims)

    def axis_values(self, axis: str) -> list[int]:
        i = self.scheme.index(axis)
        return sorted({d[i] for d in self.dims})

    def is_empty(self) -> bool:
        return not self.dims

    # -- structural equality ----------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, DimTable):
            return NotImplemented
        return (self.scheme == other.scheme and self.dims == other.dims
                and self.window == other.window)

    def same_dims(self, other: "DimTable",
                  region: Callable[[Degree], bool] | None = None) -> bool:
        """Equality of dimensions on the intersection of the two windows,
        optionally further restricted by a degree predicate."""
        if self.scheme.axes != other.scheme.axes:
            raise ValueError(
                f"scheme mismatch: {self.scheme.axes} vs {other.scheme.axes}")
        win = self.window.intersect(other.window)
        for deg in set(self.dims) | set(other.dims):
            if not win.contains(self.scheme, deg):
                continue
            if region is not None and not region(deg):
                continue
            if self.dims.get(deg, 0) != other.dims.get(deg, 0):
                return False
        return True

    def diff(self, other: "DimTable") -> list[tuple[Degree, int, int]]:
        """Degrees (inside both windows) where the two tables disagree."""
        win = self.window.intersect(other.window)
        out = []
        for deg in sorted(set(self.dims) | set(other.dims)):
            if not win.contains(self.scheme, deg):
                continue
            a, b = self.dims.get(deg, 0), other.dims.get(deg, 0)
            if a != b:
                out.append((deg, a, b))
        return out

    # -- constructors -----------------------------------------------------

    def _with(self, dims, window) -> "DimTable":
        return DimTable(self.scheme, dims, window)

    def restrict(self, window: Window | Mapping[str, Interval]) -> "DimTable":
        win = window if isinstance(window, Window) else Window(window)
        new_win = self.window.intersect(win)
        dims = {d: v for d, v in self.dims.items()
                if new_win.contains(self.scheme, d)}
        return self._with(dims, new_win)

    # -- shifts -----------------------------------------------------------

    def shift(self, by: Degree | Mapping[str, int]) -> "DimTable":
        if isinstance(by, Mapping):
            by = self.scheme.degree(**by)
        dims = {self.scheme.add(d, by): v for d, v in self.dims.items()}
        return self._with(dims, self.window.shift(self.scheme, by))

    def shift_bracket(self, k: int) -> "DimTable":
        """Cohomological shift [k]: adds -k to the cohomological axis."""
        return self.shift({self.scheme.cohomological: -k})

    def shift_angle(self, k: int, axis: str) -> "DimTable":
        """Formal shift <k> on a named axis: adds +k."""
        if axis == self.scheme.cohomological:
            raise ValueError("formal shift on the cohomological axis; use [k]")
        return self.shift({axis: k})

    # -- shears -----------------------------------------------------------

    def _shear(self, axis: str, sign: int) -> "DimTable":
        ia = self.scheme.index(axis)
        ic = self.scheme.index(self.scheme.cohomological)
        if ia == ic:
            raise ValueError("cannot shear along the cohomological axis")
        dims = {}
        for d, v in self.dims.items():
            nd = list(d)
            nd[ic] = d[ic] + sign * 2 * d[ia]
            dims[tuple(nd)] = v
        # window: (i, c') is known iff (i, c' - sign*2i) was; as a box this is
        # exact only when one of the two axes is unbounded.
        aw = self.window.interval(axis)
        cw = self.window.interval(self.scheme.cohomological)
        ivs = dict(self.window.ivs)
        if cw == (None, None):
            pass  # still fully known on C
        elif aw == (None, None):
            ivs[self.scheme.cohomological] = EMPTY_IV
        else:
            lo, hi = cw
            a0, a1 = aw
            # need c' + ... in [lo, hi] for *all* i in [a0, a1]
            cand_lo = [] if lo is None else [lo + sign * 2 * a0, lo + sign * 2 * a1]
            cand_hi = [] if hi is None else [hi + sign * 2 * a0, hi + sign * 2 * a1]
            nlo = max(cand_lo) if cand_lo else None
            nhi = min(cand_hi) if cand_hi else None
            ivs[self.scheme.cohomological] = (nlo, nhi)
        return self._with(dims, Window(ivs))

    def shear_left(self, axis: str) -> "DimTable":
        """(axis=i, C=c) -> (i, c - 2i)."""
        return self._shear(axis, -1)

    def shear_right(self, axis: str) -> "DimTable":
        """(axis=i, C=c) -> (i, c + 2i); inverse of shear_left."""
        return self._shear(axis, +1)

    # -- degrade / marginals -----------------------------------------------

    def degrade(self, axis: str) -> "DimTable":
        """Forget an axis (sum dimensions over it).  The axis must be fully
        known, else the marginal would be unknown everywhere."""
        if not self.window.is_unbounded(axis):
            raise ValueError(f"cannot degrade bounded axis {axis!r}")
        i = self.scheme.index(axis)
        axes = tuple(ax for ax in self.scheme.axes if ax != axis)
        coh = self.scheme.cohomological
        if coh == axis:
            raise ValueError("cannot degrade the cohomological axis")
        new_scheme = GradingScheme(axes, coh, self.scheme.half & set(axes))
        dims: dict[Degree, int] = {}
        for d, v in self.dims.items():
            nd = tuple(x for j, x in enumerate(d) if j != i)
            dims[nd] = dims.get(nd, 0) + v
        ivs = {ax: iv for ax, iv in self.window.ivs.items() if ax != axis}
        return DimTable(new_scheme, dims, Window(ivs))

    # -- products ----------------------------------------------------------

    def product(self, other: "DimTable") -> "DimTable":
        """Graded tensor product: convolution of dimension tables.

        The window of the product is the conservative box on each axis:
        an exponent v is complete when every decomposition v = v1 + v2 with
        both parts above the factors' support floors is inside the windows.
        """
        if self.scheme.axes != other.scheme.axes:
            raise ValueError("scheme mismatch in product")
        dims: dict[Degree, int] = {}
        for d1, v1 in self.dims.items():
            for d2, v2 in other.dims.items():
                nd = self.scheme.add(d1, d2)
                dims[nd] = dims.get(nd, 0) + v1 * v2
        ivs: dict[str, Interval] = {}
        for i, ax in enumerate(self.scheme.axes):
            iv1 = self.window.interval(ax)
            iv2 = other.window.interval(ax)
            if iv1 == (None, None) and iv2 == (None, None):
                continue
            floor1 = self._floor(i, iv1)
            floor2 = other._floor(i, iv2)
            ceil1 = self._ceil(i, iv1)
            ceil2 = other._ceil(i, iv2)
            his = []
            if iv1[1] is not None:
                his.append(None if floor2 is None else iv1[1] + floor2)
            if iv2[1] is not None:
                his.append(None if floor1 is None else iv2[1] + floor1)
            los = []
            if iv1[0] is not None:
                los.append(None if ceil2 is None else iv1[0] + ceil2)
            if iv2[0] is not None:
                los.append(None if ceil1 is None else iv2[0] + ceil1)
            hi = None
            for h in his:
                if h is None:
                    hi = EMPTY_IV[1]  # unknown floor: nothing certain
                    break
                hi = h if hi is None else min(hi, h)
            lo = None
            for l in los:
                if l is None:
                    lo = EMPTY_IV[0]
                    break
                lo = l if lo is None else max(lo, l)
            ivs[ax] = (lo, hi)
        return DimTable(self.scheme, dims, Window(ivs))

    def _floor(self, i: int, iv: Interval) -> int | None:
        """Smallest exponent that can occur on axis i (known lower bound)."""
        if iv[0] is not None:
            vals = [d[i] for d in self.dims]
            return min([iv[0]] + vals) if vals else iv[0]
        vals = [d[i] for d in self.dims]
        return min(vals) if vals else 0

    def _ceil(self, i: int, iv: Interval) -> int | None:
        if iv[1] is not None:
            vals = [d[i] for d in self.dims]
            return max([iv[1]] + vals) if vals else iv[1]
        vals = [d[i] for d in self.dims]
        return max(vals) if vals else 0

    # -- regrade ------------------------------------------------------------

    def regrade(self, rg: "Regrade") -> "DimTable":
        if rg.src.axes != self.scheme.axes:
            raise ValueError("regrade source scheme mismatch")
        dims: dict[Degree, int] = {}
        for d, v in self.dims.items():
            nd = rg.apply(d)
            dims[nd] = dims.get(nd, 0) + v
        ivs: dict[str, Interval] = {}
        for out_ax, row in rg.rows.items():
            nz = [(ax, c) for ax, c in row.items() if c != 0]
            if len(nz) == 1 and abs(nz[0][1]) == 1:
                src_ax, c = nz[0]
                iv = self.window.interval(src_ax)
                if c == 1:
                    ivs[out_ax] = iv
                else:
                    ivs[out_ax] = (None if iv[1] is None else -iv[1],
                                   None if iv[0] is None else -iv[0])
            else:
                # mixed axis: known only if every source axis involved was
                # unbounded
                if all(self.window.is_unbounded(ax) for ax, _ in nz):
                    continue
                ivs[out_ax] = EMPTY_IV
        return DimTable(rg.dst, dims, Window(ivs))

    # -- periodize -----------------------------------------------------------

    def periodize(self, beta: Mapping[str, int] | None = None) -> "DimTable":
        """Sum over the orbit of translation by deg(beta) inside the window.

        Entry at degree d in the output = sum over k in Z of entries at
        d - k*deg(beta).  Requires the window to make every orbit section
        finite, i.e. the cohomological axis (which beta moves) must be bounded
        on both sides.
        """
        if beta is None:
            if "Y" in self.scheme.axes:
                beta = {"C": -2, "Y": 1}
            elif "Xt" in self.scheme.axes:
                beta = {"C": -2, "Xt": 1, "Yt": 2}
            else:
                raise ValueError("no default periodization direction for "
                                 f"axes {self.scheme.axes}")
        bdeg = self.scheme.degree(**beta)
        coh = self.scheme.cohomological
        ic = self.scheme.index(coh)
        if bdeg[ic] == 0:
            raise ValueError("periodization direction must move the "
                             "cohomological axis")
        lo, hi = self.window.interval(coh)
        if lo is None or hi is None:
            raise ValueError("window too small to contain any full orbit "
                             "slice: cohomological axis must be bounded")
        span = (hi - lo) // abs(bdeg[ic]) + 1
        dims: dict[Degree, int] = {}
        for d, v in self.dims.items():
            for k in range(-span, span + 1):
                nd = tuple(x + k * b for x, b in zip(d, bdeg))
                if self.window.contains(self.scheme, nd):
                    dims[nd] = dims.get(nd, 0) + v
        return self._with(dims, self.window)

    # -- serialization -------------------------------------------------------

    def to_json(self) -> dict:
        entries = [{"degree": list(d), "dim": v} for d, v in sorted(self.dims.items())]
        return {"scheme": self.scheme.to_json(),
                "window": self.window.to_json(),
                "entries": entries}

    @classmethod
    def from_json(cls, data: Mapping) -> "DimTable":
        scheme = GradingScheme.from_json(data["scheme"])
        dims = {tuple(e["degree"]): e["dim"] for e in data["entries"]}
        return cls(scheme, dims, Window.from_json(data.get("window", {})))

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, separators=(",", ":"))

    def __repr__(self) -> str:
        body = ", ".join(f"{d}:{v}" for d, v in sorted(self.dims.items())[:8])
        more = "..." if len(self.dims) > 8 else ""
        return f"DimTable[{'/'.join(self.scheme.axes)}]({body}{more})"


# ---------------------------------------------------------------------------
# regrading maps


@dataclass(frozen=True)
class Regrade:
    """An integer-linear change of grading lattice.

    ``rows`` maps each destination axis to the integer row of the matrix:
    dst_exponent = sum over src axes of coeff * src_exponent.
    """

    src: GradingScheme
    dst: GradingScheme
    rows: Mapping[str, Mapping[str, int]] = field(default_factory=dict)

    def __post_init__(self) -> None:
        for ax in self.dst.axes:
            if ax not in self.rows:
                raise ValueError(f"no row for destination axis {ax!r}")
        for ax, row in self.rows.items():
            for src_ax in row:
                if src_ax not in self.src.axes:
                    raise ValueError(f"unknown source axis {src_ax!r}")

    def apply(self, deg: Degree) -> Degree:
        vals = dict(zip(self.src.axes, deg))
        return tuple(sum(c * vals[ax] for ax, c in self.rows[out].items())
                     for out in self.dst.axes)

    def matrix(self) -> list[list[int]]:
        return [[self.rows[out].get(ax, 0) for ax in self.src.axes]
                for out in self.dst.axes]

    def inverse(self) -> "Regrade":
        """Invert the matrix; errors unless it is invertible over Z."""
        m = self.matrix()
        n = len(m)
        if n != len(self.src.axes):
            raise ValueError("regrade matrix is not square")
        aug = [[Fraction(m[i][j]) for j in range(n)]
               + [Fraction(int(i == j)) for j in range(n)] for i in range(n)]
        for col in range(n):
            piv = next((r for r in range(col, n) if aug[r][col]), None)
            if piv is None:
                raise ValueError("regrade matrix is singular")
            aug[col], aug[piv] = aug[piv], aug[col]
            pv = aug[col][col]
            aug[col] = [x / pv for x in aug[col]]
            for r in range(n):
                if r != col and aug[r][col]:
                    f = aug[r][col]
                    aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
        inv_rows: dict[str, dict[str, int]] = {}
        for j, src_ax in enumerate(self.src.axes):
            row = {}
            for i, dst_ax in enumerate(self.dst.axes):
                q = aug[j][n + i]
                if q.denominator != 1:
                    raise ValueError("regrade matrix is not invertible over Z")
                if q:
                    row[dst_ax] = int(q)
            inv_rows[src_ax] = row
        return Regrade(self.dst, self.src, inv_rows)


# The regrading between the two natural presentations of a two-internal-axis
# lattice: (X, Y) with x at (2, 1), y at (-2, 0), and the sheared (Xt, Yt)
# with xt at (1, 0), yt at (0, 2).  On exponents: Xt = Y, Yt = 2Y - X; C is
# untouched.
XY_TO_TILDE = Regrade(
    XYC_SCHEME,
    GradingScheme(("Xt", "Yt", "C"), "C"),
    {"Xt": {"Y": 1}, "Yt": {"Y": 2, "X": -1}, "C": {"C": 1}},
)


def hom_shear_check(table: DimTable) -> DimTable:
    """Orbit sum under translation by the degree of the shearing endomorphism
    (Y=+1, C=+2): the predicted table of the hom-shear image of a Y-degree-0
    table.  Requires a two-sided cohomological window, like periodize."""
    return table.periodize({"C": 2, "Y": 1})


# ---------------------------------------------------------------------------
# doubled-axis helpers


def halve(v: int) -> Fraction:
    """Value of a doubled (half) axis as an exact rational."""
    return Fraction(v, 2)


def fmt_half(v: int) -> str:
    """Render a doubled axis value: integers plainly, halves as p/2."""
    return str(v // 2) if v % 2 == 0 else f"{v}/2"
