"""Terminated block codes of a convolutional code.

Every termination length-``N`` block code has two descriptions here: a weight
generating function read off ``Lambda**N`` and an explicit generator matrix
built from shifted copies of the impulse response.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional

from .algebra import (
    EnumeratorMatrix,
    Gf2Matrix,
    WeightEnumerator,
    bits_to_str,
    em_pow,
    gf2_rank,
)
from .encoder import CodeSpec


class TerminationKind(enum.Enum):
    SUBCODE = "subcode"
    PROJECTION = "projection"
    TRUNCATED = "truncated"
    REVERSE_TRUNCATED = "reverse-truncated"
    TAILBITING = "tailbite"

    @classmethod
    def parse(cls, text: str) -> "TerminationKind":
        key = text.strip().lower().replace("_", "-")
        aliases = {
            "tail-biting": "tailbite",
            "tailbiting": "tailbite",
            "reverse": "reverse-truncated",
            "reversetruncated": "reverse-truncated",
        }
        key = aliases.get(key, key)
        for kind in cls:
            if kind.value == key:
                return kind
        raise ValueError(f"unknown termination kind {text!r}")


class ZeroDimensionalCodeError(ValueError):
    """Minimum distance requested for the code {0}."""


def apply_functional(power: EnumeratorMatrix, kind: TerminationKind) -> WeightEnumerator:
    if kind is TerminationKind.SUBCODE:
        return power[0, 0]
    if kind is TerminationKind.PROJECTION:
        return power.total()
    if kind is TerminationKind.TRUNCATED:
        return power.row_sum(0)
    if kind is TerminationKind.REVERSE_TRUNCATED:
        return power.col_sum(0)
    return power.trace()


def termination_enumerator(
    lam: EnumeratorMatrix,
    kind: TerminationKind,
    n_sections: int,
    dmax: Optional[int] = None,
    distinct: bool = False,
) -> WeightEnumerator:
    """Weight generating function of a terminated code from ``lam**N``.

    The raw functional counts trellis paths.  When several paths carry the same
    label (projections and reverse truncations at small ``N``) every codeword
    is hit equally often, namely by as many paths as there are zero-weight
    paths; ``distinct=True`` divides that multiplicity out.
    """
    if n_sections < 1:
        raise ValueError("N must be positive")
    w = apply_functional(em_pow(lam, n_sections, dmax), kind)
    if distinct:
        w = w.exact_div(w[0])
    return w


def path_multiplicity(lam: EnumeratorMatrix, kind: TerminationKind, n_sections: int) -> int:
    """Number of trellis paths per codeword for the given termination."""
    return termination_enumerator(lam, kind, n_sections, dmax=0)[0]


@dataclass(frozen=True)
class BlockCodeMatrix:
    """Generator matrix of a terminated code; rows may be dependent."""

    gens: Gf2Matrix
    n: int
    N: int
    kind: Optional[TerminationKind] = None
    source: str = ""

    @property
    def n_block(self) -> int:
        return self.gens.cols

    @property
    def rank(self) -> int:
        return gf2_rank(self.gens)

    dimension = rank

    def symbol_rows(self) -> list[str]:
        """Rows as space-separated ``n``-bit groups, e.g. ``11 01 11 00``."""
        out = []
        for r in self.gens.rows:
            s = bits_to_str(r, self.n_block)
            out.append(" ".join(s[i:i + self.n] for i in range(0, len(s), self.n)))
        return out

    def to_text(self) -> str:
        return "\n".join(self.symbol_rows())

    def to_dict(self) -> dict:
        return {
            "kind": self.kind.value if self.kind else None,
            "N": self.N,
            "n": self.n,
            "n_block": self.n_block,
            "rank": self.rank,
            "source": self.source,
            "rows": self.gens.to_strings(),
        }

    @classmethod
    def from_symbol_rows(cls, rows: list[str], n: int, **kw) -> "BlockCodeMatrix":
        g = Gf2Matrix.from_strings(rows)
        return cls(g, n, g.cols // n, **kw)


def _shift_row(impulse: list[int], shift: int, n: int, n_sections: int, wrap: bool) -> int:
    word = 0
    for t, sym in enumerate(impulse):
        pos = t + shift
        if wrap:
            pos %= n_sections
        elif not 0 <= pos < n_sections:
            continue
        word ^= sym << (pos * n)
    return word


def generator_matrix(spec: CodeSpec, kind: TerminationKind, n_sections: int) -> BlockCodeMatrix:
    """Generator matrix of the length-``N`` termination of ``spec``.

    Rows are the impulse response started at successive times:

    * subcode: starts ``0..N-nu-1`` (none if ``N <= nu``)
    * truncated: starts ``0..N-1``, tails clipped at ``N``
    * reverse-truncated: starts ``-nu..N-nu-1``, heads clipped at 0
    * projection: starts ``-nu..N-1``, clipped at both ends
    * tail-biting: starts ``0..N-1``, wrapped cyclically (folded when ``N < nu``)
    """
    if n_sections < 1:
        raise ValueError("N must be positive")
    nu, n = spec.memory, spec.n
    impulse = spec.impulse_response()
    wrap = False
    if kind is TerminationKind.SUBCODE:
        starts = range(0, max(n_sections - nu, 0))
    elif kind is TerminationKind.TRUNCATED:
        starts = range(0, n_sections)
    elif kind is TerminationKind.REVERSE_TRUNCATED:
        starts = range(-nu, n_sections - nu)
    elif kind is TerminationKind.PROJECTION:
        starts = range(-nu, n_sections)
    else:
        starts = range(0, n_sections)
        wrap = True
    rows = tuple(_shift_row(impulse, s, n, n_sections, wrap) for s in starts)
    return BlockCodeMatrix(Gf2Matrix(rows, n * n_sections), n, n_sections, kind, spec.octal())


def min_distance_terminated(spec: CodeSpec, kind: TerminationKind, n_sections: int,
                            check_limit: int = 16) -> int:
    """Minimum nonzero weight of a terminated code.

    Read from the trellis functional; when the code has at most
    ``2**check_limit`` words it is also enumerated directly and the two must agree.
    """
    from .brute_force import enumerate_weights
    from .encoder import build_trellis, hwam

    w = termination_enumerator(hwam(build_trellis(spec)), kind, n_sections)
    d = w.min_positive_weight()
    if d is None:
        raise ZeroDimensionalCodeError(f"{kind.value} termination of {spec} at N={n_sections} is {{0}}")
    g = generator_matrix(spec, kind, n_sections)
    if g.rank <= check_limit:
        brute = enumerate_weights(g).min_positive_weight()
        if brute != d:
            raise AssertionError(f"trellis gives d={d}, enumeration gives d={brute}")
    return d
