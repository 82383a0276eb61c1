"""Exact arithmetic kernels.

Weight enumerators are polynomials in ``x`` with nonnegative Python-int
coefficients (so nothing ever overflows), optionally truncated modulo
``x**(dmax+1)``.  Enumerator matrices are square matrices of those, and
``Gf2Matrix`` is a bit-packed binary matrix used for the block-code side.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Mapping, Optional, Sequence


def _min_trunc(a: Optional[int], b: Optional[int]) -> Optional[int]:
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


@dataclass(frozen=True)
class WeightEnumerator:
    """Polynomial ``sum_d A_d x^d`` with big-integer counts.

    ``coeffs[d]`` is the count of weight ``d``; trailing zeros are stripped.
    If ``dmax`` is set the polynomial is only known modulo ``x**(dmax+1)``.
    """

    coeffs: tuple[int, ...] = ()
    dmax: Optional[int] = None

    def __post_init__(self):
        c = list(self.coeffs)
        if self.dmax is not None:
            if self.dmax < 0:
                raise ValueError("dmax must be nonnegative")
            del c[self.dmax + 1:]
        while c and c[-1] == 0:
            c.pop()
        if any(v < 0 for v in c):
            raise ValueError("weight enumerator counts must be nonnegative")
        object.__setattr__(self, "coeffs", tuple(int(v) for v in c))

    # construction -------------------------------------------------------

    @classmethod
    def zero(cls, dmax: Optional[int] = None) -> "WeightEnumerator":
        return cls((), dmax)

    @classmethod
    def one(cls, dmax: Optional[int] = None) -> "WeightEnumerator":
        return cls((1,), dmax)

    @classmethod
    def monomial(cls, d: int, count: int = 1, dmax: Optional[int] = None) -> "WeightEnumerator":
        return cls((0,) * d + (count,), dmax)

    @classmethod
    def from_dict(cls, counts: Mapping[int, int], dmax: Optional[int] = None) -> "WeightEnumerator":
        if not counts:
            return cls((), dmax)
        top = max(int(d) for d in counts)
        c = [0] * (top + 1)
        for d, v in counts.items():
            c[int(d)] += int(v)
        return cls(tuple(c), dmax)

    @classmethod
    def from_weights(cls, weights: Iterable[int], dmax: Optional[int] = None) -> "WeightEnumerator":
        counts: dict[int, int] = {}
        for w in weights:
            counts[w] = counts.get(w, 0) + 1
        return cls.from_dict(counts, dmax)

    _TERM = re.compile(r"^(\d*)\s*\*?\s*(?:x(?:\^\s*(\d+))?)?$")

    @classmethod
    def parse(cls, text: str, dmax: Optional[int] = None) -> "WeightEnumerator":
        """Parse ``"1 + 2x^5 + x^6"``-style text (``**`` also accepted)."""
        s = text.replace("**", "^").replace(" ", "")
        if s in ("", "0"):
            return cls((), dmax)
        counts: dict[int, int] = {}
        for term in s.split("+"):
            m = cls._TERM.match(term)
            if not term or m is None or (not m.group(1) and "x" not in term):
                raise ValueError(f"cannot parse polynomial term {term!r}")
            count = int(m.group(1)) if m.group(1) else 1
            if "x" not in term:
                d = 0
            else:
                d = int(m.group(2)) if m.group(2) else 1
            counts[d] = counts.get(d, 0) + count
        return cls.from_dict(counts, dmax)

    # queries ------------------------------------------------------------

    @property
    def truncated(self) -> bool:
        return self.dmax is not None

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __getitem__(self, d: int) -> int:
        if 0 <= d < len(self.coeffs):
            return self.coeffs[d]
        return 0

    def items(self) -> list[tuple[int, int]]:
        """Nonzero ``(weight, count)`` pairs in ascending weight order."""
        return [(d, v) for d, v in enumerate(self.coeffs) if v]

    def as_dict(self) -> dict[int, int]:
        return dict(self.items())

    def at_one(self) -> int:
        return sum(self.coeffs)

    def min_positive_weight(self) -> Optional[int]:
        for d, v in enumerate(self.coeffs):
            if d > 0 and v:
                return d
        return None

    # arithmetic ---------------------------------------------------------

    def __add__(self, other: "WeightEnumerator") -> "WeightEnumerator":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        c = list(a)
        for i, v in enumerate(b):
            c[i] += v
        return WeightEnumerator(tuple(c), _min_trunc(self.dmax, other.dmax))

    def __mul__(self, other: "WeightEnumerator") -> "WeightEnumerator":
        return we_mul(self, other)

    def scale(self, k: int) -> "WeightEnumerator":
        return WeightEnumerator(tuple(k * v for v in self.coeffs), self.dmax)

    def truncate(self, dmax: Optional[int]) -> "WeightEnumerator":
        return WeightEnumerator(self.coeffs, _min_trunc(self.dmax, dmax))

    def exact_div(self, k: int) -> "WeightEnumerator":
        """Divide every coefficient by ``k``; raises if any division is inexact."""
        out = []
        for v in self.coeffs:
            q, r = divmod(v, k)
            if r:
                raise ValueError(f"coefficient {v} not divisible by {k}")
            out.append(q)
        return WeightEnumerator(tuple(out), self.dmax)

    def same_terms(self, other: "WeightEnumerator") -> bool:
        """Coefficient equality on the range both operands actually know."""
        t = _min_trunc(self.dmax, other.dmax)
        return self.truncate(t).coeffs == other.truncate(t).coeffs

    def __str__(self) -> str:
        terms = []
        for d, v in self.items():
            if d == 0:
                terms.append(str(v))
            else:
                mono = "x" if d == 1 else f"x^{d}"
                terms.append(mono if v == 1 else f"{v}{mono}")
        s = " + ".join(terms) if terms else "0"
        if self.dmax is not None:
            s += f" (mod x^{self.dmax + 1})"
        return s


def we_mul(a: WeightEnumerator, b: WeightEnumerator) -> WeightEnumerator:
    """Product in the counting semiring; truncation is the tighter of the two."""
    dmax = _min_trunc(a.dmax, b.dmax)
    if not a.coeffs or not b.coeffs:
        return WeightEnumerator((), dmax)
    size = len(a.coeffs) + len(b.coeffs) - 1
    if dmax is not None:
        size = min(size, dmax + 1)
    c = [0] * size
    bc = b.coeffs
    for i, av in enumerate(a.coeffs):
        if not av or i >= size:
            continue
        for j in range(min(len(bc), size - i)):
            bv = bc[j]
            if bv:
                c[i + j] += av * bv
    return WeightEnumerator(tuple(c), dmax)


@dataclass(frozen=True)
class EnumeratorMatrix:
    """Square matrix of weight enumerators indexed by encoder states.

    ``state_order[i]`` is the label of the state at row/column ``i``.
    """

    entries: tuple[tuple[WeightEnumerator, ...], ...]
    state_order: tuple[str, ...]

    def __post_init__(self):
        entries = tuple(tuple(row) for row in self.entries)
        n = len(entries)
        if any(len(row) != n for row in entries):
            raise ValueError("enumerator matrix must be square")
        if len(self.state_order) != n:
            raise ValueError("state_order length does not match matrix size")
        object.__setattr__(self, "entries", entries)
        object.__setattr__(self, "state_order", tuple(self.state_order))

    @classmethod
    def identity(cls, state_order: Sequence[str], dmax: Optional[int] = None) -> "EnumeratorMatrix":
        n = len(state_order)
        one, zero = WeightEnumerator.one(dmax), WeightEnumerator.zero(dmax)
        return cls(
            tuple(tuple(one if i == j else zero for j in range(n)) for i in range(n)),
            tuple(state_order),
        )

    @classmethod
    def parse(cls, rows: Sequence[Sequence[str]], state_order: Optional[Sequence[str]] = None,
              dmax: Optional[int] = None) -> "EnumeratorMatrix":
        order = tuple(state_order) if state_order is not None else tuple(str(i) for i in range(len(rows)))
        return cls(tuple(tuple(WeightEnumerator.parse(e, dmax) for e in row) for row in rows), order)

    @property
    def dim(self) -> int:
        return len(self.entries)

    def __getitem__(self, ij: tuple[int, int]) -> WeightEnumerator:
        i, j = ij
        return self.entries[i][j]

    def __matmul__(self, other: "EnumeratorMatrix") -> "EnumeratorMatrix":
        return em_mul(self, other)

    def transpose(self) -> "EnumeratorMatrix":
        n = self.dim
        return EnumeratorMatrix(
            tuple(tuple(self.entries[j][i] for j in range(n)) for i in range(n)), self.state_order
        )

    def permute(self, perm: Sequence[int]) -> "EnumeratorMatrix":
        """Relabel: new index ``i`` is old index ``perm[i]``."""
        return EnumeratorMatrix(
            tuple(tuple(self.entries[pi][pj] for pj in perm) for pi in perm),
            tuple(self.state_order[p] for p in perm),
        )

    def truncate(self, dmax: Optional[int]) -> "EnumeratorMatrix":
        return EnumeratorMatrix(
            tuple(tuple(e.truncate(dmax) for e in row) for row in self.entries), self.state_order
        )

    def trace(self) -> WeightEnumerator:
        return _sum(self.entries[i][i] for i in range(self.dim))

    def total(self) -> WeightEnumerator:
        return _sum(e for row in self.entries for e in row)

    def row_sum(self, i: int = 0) -> WeightEnumerator:
        return _sum(self.entries[i])

    def col_sum(self, j: int = 0) -> WeightEnumerator:
        return _sum(row[j] for row in self.entries)

    def at_one(self) -> list[list[int]]:
        return [[e.at_one() for e in row] for row in self.entries]

    def __str__(self) -> str:
        cells = [[str(e.truncate(None)) if e.dmax is None else _bare(e) for e in row] for row in self.entries]
        lab = max((len(s) for s in self.state_order), default=1)
        width = max([len(c) for row in cells for c in row] + [len(s) for s in self.state_order])
        head = " " * (lab + 3) + " | ".join(s.ljust(width) for s in self.state_order)
        lines = [head, "-" * len(head)]
        for s, row in zip(self.state_order, cells):
            lines.append(f"{s.ljust(lab)} | " + " | ".join(c.ljust(width) for c in row))
        return "\n".join(line.rstrip() for line in lines)


def _bare(e: WeightEnumerator) -> str:
    return str(WeightEnumerator(e.coeffs))


def _sum(items: Iterable[WeightEnumerator]) -> WeightEnumerator:
    total: Optional[WeightEnumerator] = None
    for e in items:
        total = e if total is None else total + e
    return total if total is not None else WeightEnumerator()


def em_mul(a: EnumeratorMatrix, b: EnumeratorMatrix) -> EnumeratorMatrix:
    if a.dim != b.dim:
        raise ValueError(f"dimension mismatch: {a.dim} vs {b.dim}")
    if a.state_order != b.state_order:
        raise ValueError("state orders differ")
    n = a.dim
    rows = []
    for i in range(n):
        arow = a.entries[i]
        out = []
        for j in range(n):
            acc = WeightEnumerator()
            for k in range(n):
                x, y = arow[k], b.entries[k][j]
                if x.coeffs and y.coeffs:
                    acc = acc + we_mul(x, y)
                elif x.dmax is not None or y.dmax is not None:
                    acc = acc.truncate(_min_trunc(x.dmax, y.dmax))
            out.append(acc)
        rows.append(tuple(out))
    return EnumeratorMatrix(tuple(rows), a.state_order)


def em_pow(a: EnumeratorMatrix, n: int, dmax: Optional[int] = None) -> EnumeratorMatrix:
    """``a**n`` by repeated squaring, truncating every product when ``dmax`` is given."""
    if n < 0:
        raise ValueError("exponent must be nonnegative")
    result = EnumeratorMatrix.identity(a.state_order, dmax)
    base = a.truncate(dmax)
    while n:
        if n & 1:
            result = em_mul(result, base)
        n >>= 1
        if n:
            base = em_mul(base, base)
    return result


# GF(2) -----------------------------------------------------------------


@dataclass(frozen=True)
class Gf2Matrix:
    """Binary matrix; row ``r`` is the int ``rows[r]`` with column ``j`` at bit ``j``."""

    rows: tuple[int, ...]
    cols: int

    def __post_init__(self):
        rows = tuple(int(r) for r in self.rows)
        limit = 1 << self.cols
        if any(r < 0 or r >= limit for r in rows):
            raise ValueError("row has bits outside the column range")
        object.__setattr__(self, "rows", rows)

    @classmethod
    def from_strings(cls, rows: Sequence[str], cols: Optional[int] = None) -> "Gf2Matrix":
        """Rows given as bit strings, leftmost character is column 0; spaces ignored."""
        clean = [r.replace(" ", "") for r in rows]
        if cols is None:
            if not clean:
                raise ValueError("column count needed for an empty matrix")
            cols = len(clean[0])
        out = []
        for r in clean:
            if len(r) != cols or set(r) - {"0", "1"}:
                raise ValueError(f"bad row {r!r}")
            out.append(sum(1 << j for j, ch in enumerate(r) if ch == "1"))
        return cls(tuple(out), cols)

    @classmethod
    def identity(cls, n: int) -> "Gf2Matrix":
        return cls(tuple(1 << i for i in range(n)), n)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    def to_strings(self) -> list[str]:
        return [bits_to_str(r, self.cols) for r in self.rows]

    def stack(self, other: "Gf2Matrix") -> "Gf2Matrix":
        if other.cols != self.cols:
            raise ValueError("column counts differ")
        return Gf2Matrix(self.rows + other.rows, self.cols)

    def times_transpose(self, other: "Gf2Matrix") -> list[list[int]]:
        """``self @ other.T`` over GF(2)."""
        return [[(a & b).bit_count() & 1 for b in other.rows] for a in self.rows]


def bits_to_str(word: int, length: int) -> str:
    return "".join("1" if word >> j & 1 else "0" for j in range(length))


def gf2_row_reduce(g: Gf2Matrix) -> tuple[list[int], list[int]]:
    """Reduced row echelon form; returns ``(nonzero rows, pivot columns)``."""
    work = [r for r in g.rows if r]
    pivots: list[int] = []
    rank = 0
    for col in range(g.cols):
        bit = 1 << col
        pivot = next((i for i in range(rank, len(work)) if work[i] & bit), None)
        if pivot is None:
            continue
        work[rank], work[pivot] = work[pivot], work[rank]
        prow = work[rank]
        for i in range(len(work)):
            if i != rank and work[i] & bit:
                work[i] ^= prow
        pivots.append(col)
        rank += 1
        if rank == len(work):
            break
    return work[:rank], pivots


def gf2_rank(g: Gf2Matrix) -> int:
    return len(gf2_row_reduce(g)[0])


def gf2_null_space(g: Gf2Matrix) -> Gf2Matrix:
    """Basis (as rows) of ``{v : g @ v.T = 0}``."""
    rref, pivots = gf2_row_reduce(g)
    pivot_set = set(pivots)
    basis = []
    for f in range(g.cols):
        if f in pivot_set:
            continue
        v = 1 << f
        for row, p in zip(rref, pivots):
            if row >> f & 1:
                v |= 1 << p
        basis.append(v)
    return Gf2Matrix(tuple(basis), g.cols)


def gf2_in_row_space(g: Gf2Matrix, v: int) -> bool:
    rref, pivots = gf2_row_reduce(g)
    for row, p in zip(rref, pivots):
        if v >> p & 1:
            v ^= row
    return v == 0
