"""Exhaustive oracles.

Nothing here looks at a weight adjacency matrix: codewords come either from
row spaces of generator matrices or from walking trellis paths one by one.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

from .algebra import Gf2Matrix, WeightEnumerator, gf2_null_space, gf2_rank, gf2_row_reduce
from .encoder import TrellisSection
from .terminator import BlockCodeMatrix, TerminationKind

MAX_ENUM_RANK = 24
MAX_MATERIALIZE_RANK = 20


class EnumerationGuardError(ValueError):
    """Code too large for exhaustive enumeration."""


Generators = Union[BlockCodeMatrix, Gf2Matrix]


def _matrix(g: Generators) -> Gf2Matrix:
    return g.gens if isinstance(g, BlockCodeMatrix) else g


def _basis(g: Generators) -> tuple[list[int], int]:
    m = _matrix(g)
    rows, _ = gf2_row_reduce(m)
    if len(rows) > MAX_ENUM_RANK:
        raise EnumerationGuardError(f"rank {len(rows)} exceeds enumeration guard {MAX_ENUM_RANK}")
    return rows, m.cols


def enumerate_weights(g: Generators) -> WeightEnumerator:
    """Weight enumerator of the row space, visiting codewords in Gray-code order."""
    rows, cols = _basis(g)
    counts = [0] * (cols + 1)
    word = 0
    counts[0] = 1
    for i in range(1, 1 << len(rows)):
        word ^= rows[(i & -i).bit_length() - 1]
        counts[word.bit_count()] += 1
    return WeightEnumerator(tuple(counts))


@dataclass(frozen=True)
class CodewordSet:
    n_block: int
    words: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.words)

    def __contains__(self, w: int) -> bool:
        return w in set(self.words)


def codeword_set(g: Generators) -> CodewordSet:
    rows, cols = _basis(g)
    if len(rows) > MAX_MATERIALIZE_RANK:
        raise EnumerationGuardError(f"rank {len(rows)} too large to list codewords")
    words = [0]
    for r in rows:
        words += [w ^ r for w in words]
    return CodewordSet(cols, tuple(sorted(words)))


def dual_code(g: BlockCodeMatrix) -> BlockCodeMatrix:
    """Generator matrix of the orthogonal block code (null space of ``g``)."""
    return BlockCodeMatrix(gf2_null_space(g.gens), g.n, g.N, None, f"dual({g.source})")


def sets_equal(a: Generators, b: Generators) -> bool:
    """Row spaces coincide, decided by rank arithmetic."""
    ma, mb = _matrix(a), _matrix(b)
    if ma.cols != mb.cols:
        raise ValueError(f"length mismatch: {ma.cols} vs {mb.cols}")
    ra = gf2_rank(ma)
    return ra == gf2_rank(mb) == gf2_rank(ma.stack(mb))


def _boundary(kind: TerminationKind, num_states: int) -> tuple[range, Optional[set]]:
    """Allowed start states and allowed end states (``None`` means "same as start")."""
    everything = set(range(num_states))
    if kind is TerminationKind.SUBCODE:
        return range(1), {0}
    if kind is TerminationKind.PROJECTION:
        return range(num_states), everything
    if kind is TerminationKind.TRUNCATED:
        return range(1), everything
    if kind is TerminationKind.REVERSE_TRUNCATED:
        return range(num_states), {0}
    return range(num_states), None


def trellis_paths(trellis: TrellisSection, kind: TerminationKind, n_sections: int) -> list[int]:
    """Labels of every admissible length-``N`` path, with repetitions."""
    starts, ends = _boundary(kind, trellis.num_states)
    out_edges = [trellis.out_branches(s) for s in range(trellis.num_states)]
    n = trellis.n
    labels = []
    for s0 in starts:
        frontier = [(s0, 0)]
        for t in range(n_sections):
            shift = t * n
            frontier = [(b.end, word | (b.output << shift)) for s, word in frontier for b in out_edges[s]]
        for s, word in frontier:
            if (s == s0) if ends is None else (s in ends):
                labels.append(word)
    return labels


def trellis_weight_counts(trellis: TrellisSection, kind: TerminationKind, n_sections: int,
                          distinct: bool = True) -> WeightEnumerator:
    labels = trellis_paths(trellis, kind, n_sections)
    if distinct:
        labels = list(set(labels))
    return WeightEnumerator.from_weights(w.bit_count() for w in labels)


def trellis_generator_matrix(trellis: TrellisSection, kind: TerminationKind, n_sections: int) -> BlockCodeMatrix:
    """Basis of the terminated code read from explicit trellis paths.

    Valid for linear trellises, where the path labels form a vector space.
    """
    cols = trellis.n * n_sections
    labels = set(trellis_paths(trellis, kind, n_sections))
    rows, _ = gf2_row_reduce(Gf2Matrix(tuple(sorted(labels)), cols))
    basis = Gf2Matrix(tuple(rows), cols)
    if len(labels) != 1 << len(rows):
        raise ValueError("trellis path labels are not a linear space")
    return BlockCodeMatrix(basis, trellis.n, n_sections, kind, "trellis")


def first_return_weights(trellis: TrellisSection, dmax: int, max_sections: Optional[int] = None) -> WeightEnumerator:
    """Weights of paths leaving state 0 and first coming back to it, up to ``dmax``.

    Depth-first walk pruned on accumulated weight; ``max_sections`` caps the
    path length (default ``2 * dmax`` sections plus the state count).
    """
    if max_sections is None:
        max_sections = 2 * dmax + trellis.num_states
    out_edges = [trellis.out_branches(s) for s in range(trellis.num_states)]
    counts = [0] * (dmax + 1)
    stack = [(b.end, b.weight, 1) for b in out_edges[0] if b.end != 0 or b.weight]
    while stack:
        s, w, length = stack.pop()
        if w > dmax:
            continue
        if s == 0:
            counts[w] += 1
            continue
        if length >= max_sections:
            continue
        for b in out_edges[s]:
            stack.append((b.end, w + b.weight, length + 1))
    return WeightEnumerator(tuple(counts), dmax)
