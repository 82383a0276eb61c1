"""Rate-1/n binary convolutional encoders and their trellis sections.

Generator polynomials are stored as ints with bit ``i`` holding the
coefficient of ``D**i``.  States of a controller-canonical encoder are ints
whose bit ``i`` is delay cell ``i + 1`` (bit 0 is the most recent input), so
the natural integer order 0, 1, 2, 3 lists the labels 00, 10, 01, 11.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from typing import Any, Mapping, Optional, Sequence, Union

from .algebra import EnumeratorMatrix, WeightEnumerator, bits_to_str


class CodeSpecError(ValueError):
    """Malformed or unusable code description."""


class CatastrophicEncoderError(CodeSpecError):
    """Generators share a nontrivial common factor."""


class UnsupportedRateError(CodeSpecError):
    """Automatic dual construction only exists for rate-1/2 codes."""


class TrellisError(ValueError):
    """Inconsistent branch-list trellis description."""


def poly_degree(p: int) -> int:
    return p.bit_length() - 1


def poly_mod(a: int, b: int) -> int:
    db = poly_degree(b)
    while a and poly_degree(a) >= db:
        a ^= b << (poly_degree(a) - db)
    return a


def poly_gcd(a: int, b: int) -> int:
    while b:
        a, b = b, poly_mod(a, b)
    return a


def poly_reverse(p: int, degree: int) -> int:
    """``D**degree * p(1/D)``."""
    return sum(1 << (degree - i) for i in range(degree + 1) if p >> i & 1)


def poly_str(p: int) -> str:
    if p == 0:
        return "0"
    terms = []
    for i in range(p.bit_length()):
        if p >> i & 1:
            terms.append("1" if i == 0 else "D" if i == 1 else f"D^{i}")
    return " + ".join(terms)


@dataclass(frozen=True)
class CodeSpec:
    """Rate-1/n code given by ``n`` generator polynomials over GF(2)."""

    generators: tuple[int, ...]

    def __post_init__(self):
        gens = tuple(int(g) for g in self.generators)
        if len(gens) < 2:
            raise CodeSpecError("need at least 2 generators")
        if any(g < 0 for g in gens):
            raise CodeSpecError("generator polynomials must be nonnegative ints")
        if not any(g & 1 for g in gens):
            raise CodeSpecError("no generator has a nonzero constant term")
        object.__setattr__(self, "generators", gens)

    @property
    def n(self) -> int:
        return len(self.generators)

    @property
    def memory(self) -> int:
        return max(poly_degree(g) for g in self.generators)

    nu = memory

    def gcd(self) -> int:
        g = 0
        for p in self.generators:
            g = poly_gcd(g, p) if g else p
        return g

    def impulse_response(self) -> list[int]:
        """Output symbols at times ``0..nu``; bit ``j`` of a symbol is output ``j``."""
        return [
            sum(1 << j for j, g in enumerate(self.generators) if g >> t & 1)
            for t in range(self.memory + 1)
        ]

    def octal(self) -> str:
        return ",".join(format(g, "o") for g in self.generators)

    def binary(self) -> str:
        width = self.memory + 1
        return "binary:" + ",".join(bits_to_str(g, width) for g in self.generators)

    def describe(self) -> str:
        return "(" + ", ".join(poly_str(g) for g in self.generators) + ")"

    def __str__(self) -> str:
        return self.octal()


_OCTAL = re.compile(r"^[0-7]+$")
_BINARY = re.compile(r"^[01]+$")


def parse_code_spec(text: str) -> CodeSpec:
    """Parse ``"5,7"`` (octal) or ``"binary:101,111"``.

    Octal numerals are read as integers whose bit ``i`` is the coefficient of
    ``D**i``.  Binary strings list coefficients from ``D**0`` leftwards.
    """
    s = text.strip().replace(" ", "")
    binary = False
    if s.lower().startswith("binary:"):
        binary, s = True, s[len("binary:"):]
    elif s.lower().startswith("octal:"):
        s = s[len("octal:"):]
    parts = s.split(",") if s else []
    gens = []
    for part in parts:
        if binary:
            if not _BINARY.match(part):
                raise CodeSpecError(f"malformed binary generator {part!r}")
            gens.append(sum(1 << i for i, ch in enumerate(part) if ch == "1"))
        else:
            if not _OCTAL.match(part):
                raise CodeSpecError(f"malformed octal generator {part!r}")
            gens.append(int(part, 8))
    if len(gens) < 2:
        raise CodeSpecError(f"need at least 2 generators, got {len(gens)} in {text!r}")
    return CodeSpec(tuple(gens))


@dataclass(frozen=True, order=True)
class Branch:
    start: int
    output: int
    end: int
    weight: int
    inp: Optional[int] = None


@dataclass(frozen=True)
class TrellisSection:
    """One time unit of a time-invariant trellis.

    ``states`` holds the labels in matrix order; branch endpoints are indices
    into it.  ``n`` is the number of bits per output symbol.
    """

    n: int
    states: tuple[str, ...]
    branches: tuple[Branch, ...]
    spec: Optional[CodeSpec] = None

    @property
    def num_states(self) -> int:
        return len(self.states)

    @property
    def nu(self) -> int:
        return (self.num_states - 1).bit_length()

    def out_branches(self, s: int) -> list[Branch]:
        return [b for b in self.branches if b.start == s]

    def symbol(self, b: Branch) -> str:
        return bits_to_str(b.output, self.n)

    def next_state(self, s: int, u: int) -> tuple[int, int]:
        for b in self.branches:
            if b.start == s and b.inp == u:
                return b.output, b.end
        raise KeyError((s, u))


def state_label(s: int, nu: int) -> str:
    return bits_to_str(s, nu) if nu else "0"


def build_trellis(spec: CodeSpec) -> TrellisSection:
    """Controller-canonical trellis section of a noncatastrophic rate-1/n encoder."""
    g = spec.gcd()
    if g != 1:
        raise CatastrophicEncoderError(
            f"generators {spec.describe()} share the factor {poly_str(g)}; "
            "the encoder is catastrophic (not minimal)"
        )
    nu = spec.memory
    mask = (1 << nu) - 1
    branches = []
    for s in range(1 << nu):
        reg = s << 1  # bit 0: current input, bit i: delay cell i
        for u in (0, 1):
            r = reg | u
            out = 0
            for j, gen in enumerate(spec.generators):
                out |= ((r & gen).bit_count() & 1) << j
            branches.append(Branch(s, out, r & mask, out.bit_count(), u))
    return TrellisSection(
        n=spec.n,
        states=tuple(state_label(s, nu) for s in range(1 << nu)),
        branches=tuple(sorted(branches, key=lambda b: (b.start, b.inp))),
        spec=spec,
    )


def hwam(trellis: TrellisSection) -> EnumeratorMatrix:
    """Hamming weight adjacency matrix: entry ``(s, t)`` sums ``x**w`` over branches s->t."""
    m = trellis.num_states
    counts: list[list[dict[int, int]]] = [[{} for _ in range(m)] for _ in range(m)]
    for b in trellis.branches:
        cell = counts[b.start][b.end]
        cell[b.weight] = cell.get(b.weight, 0) + 1
    return EnumeratorMatrix(
        tuple(tuple(WeightEnumerator.from_dict(c) for c in row) for row in counts),
        trellis.states,
    )


def dual_spec(spec: CodeSpec) -> CodeSpec:
    """Orthogonal code of a rate-1/2 code: ``(g2~, g1~)`` with ``g~ = D^nu g(1/D)``.

    The result is checked by confirming that the tail-biting block codes of
    both at ``N = nu + 2`` are orthogonal with complementary dimensions.
    """
    if spec.n != 2:
        raise UnsupportedRateError(
            f"dual of a rate-1/{spec.n} code has rate {spec.n - 1}/{spec.n}; "
            "supply its trellis with --trellis instead"
        )
    nu = spec.memory
    g1, g2 = spec.generators
    dual = CodeSpec((poly_reverse(g2, nu), poly_reverse(g1, nu)))

    from .algebra import gf2_rank
    from .terminator import TerminationKind, generator_matrix

    big_n = nu + 2
    a = generator_matrix(spec, TerminationKind.TAILBITING, big_n).gens
    b = generator_matrix(dual, TerminationKind.TAILBITING, big_n).gens
    orthogonal = not any(v for row in a.times_transpose(b) for v in row)
    if not orthogonal or gf2_rank(a) + gf2_rank(b) != 2 * big_n:
        raise CodeSpecError(f"dual construction failed orthogonality check for {spec}")
    return dual


TrellisDescription = Union[str, Mapping[str, Any]]


def load_trellis(description: TrellisDescription) -> TrellisSection:
    """Build a trellis from an explicit branch list.

    Accepts JSON text or a mapping with ``states`` (labels, in matrix order)
    and ``branches``, each either ``[from, symbol, to]`` or a mapping with
    those keys.  Symbols are bit strings of a common length.
    """
    data = json.loads(description) if isinstance(description, str) else description
    try:
        states = [str(s) for s in data["states"]]
        raw = list(data["branches"])
    except (KeyError, TypeError) as exc:
        raise TrellisError("trellis needs 'states' and 'branches'") from exc
    if not states or len(set(states)) != len(states):
        raise TrellisError("state labels must be nonempty and distinct")
    index = {s: i for i, s in enumerate(states)}
    branches = []
    width = None
    for item in raw:
        if isinstance(item, Mapping):
            start, sym, end = item.get("from"), item.get("symbol"), item.get("to")
        else:
            try:
                start, sym, end = item
            except (TypeError, ValueError) as exc:
                raise TrellisError(f"bad branch {item!r}") from exc
        start, sym, end = str(start), str(sym), str(end)
        if start not in index or end not in index:
            raise TrellisError(f"branch {item!r} uses an unknown state")
        if not _BINARY.match(sym):
            raise TrellisError(f"branch symbol {sym!r} is not a bit string")
        if width is None:
            width = len(sym)
        elif len(sym) != width:
            raise TrellisError("branch symbols have different lengths")
        out = sum(1 << j for j, ch in enumerate(sym) if ch == "1")
        branches.append(Branch(index[start], out, index[end], out.bit_count()))
    if not branches:
        raise TrellisError("trellis has no branches")
    degrees = {i: 0 for i in range(len(states))}
    for b in branches:
        degrees[b.start] += 1
    if len(set(degrees.values())) != 1:
        raise TrellisError(f"unequal out-degrees: {sorted(degrees.values())}")
    return TrellisSection(n=width, states=tuple(states), branches=tuple(sorted(branches)))


def trellis_to_dict(trellis: TrellisSection) -> dict:
    return {
        "states": list(trellis.states),
        "branches": [
            [trellis.states[b.start], trellis.symbol(b), trellis.states[b.end]]
            for b in trellis.branches
        ],
    }


def is_permutation_similar(a: EnumeratorMatrix, b: EnumeratorMatrix) -> Optional[Sequence[int]]:
    """Return a state relabelling taking ``a`` to ``b`` if one exists (small dims only)."""
    from itertools import permutations

    if a.dim != b.dim:
        return None
    for perm in permutations(range(a.dim)):
        if all(a.entries[perm[i]][perm[j]] == b.entries[i][j] for i in range(a.dim) for j in range(a.dim)):
            return perm
    return None
