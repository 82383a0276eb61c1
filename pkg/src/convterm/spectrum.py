"""Free distance spectra, normalized terminated distributions and union bounds."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Optional, Sequence, Union

from .algebra import EnumeratorMatrix, WeightEnumerator, we_mul
from .terminator import TerminationKind, termination_enumerator


class DivergenceError(ValueError):
    """First-return series did not terminate: a zero-weight cycle avoids state 0."""


class Method(enum.Enum):
    FIRST_RETURN = "first-return"
    NORMALIZED_TAILBITING = "tailbite"
    NORMALIZED_SUBCODE = "subcode"
    NORMALIZED_TRUNCATED = "truncated"
    NORMALIZED_PROJECTION = "projection"
    NORMALIZED_REVERSE_TRUNCATED = "reverse-truncated"

    @classmethod
    def for_kind(cls, kind: TerminationKind) -> "Method":
        return cls(kind.value)


@dataclass(frozen=True)
class SpectrumReport:
    """Counts per weight with an exact divisor: the spectrum is ``counts[d] / divisor``."""

    counts: dict[int, int]
    divisor: int
    dmax: int
    method: Method
    N: Optional[int] = None

    @property
    def dfree(self) -> Optional[int]:
        return min(self.counts) if self.counts else None

    def normalized(self) -> dict[int, Fraction]:
        return {d: Fraction(v, self.divisor) for d, v in self.counts.items()}

    def to_dict(self) -> dict:
        return {
            "method": self.method.value,
            "N": self.N,
            "dmax": self.dmax,
            "dfree": self.dfree,
            "divisor": self.divisor,
            "counts": {str(d): v for d, v in sorted(self.counts.items())},
        }


def _positive_counts(w: WeightEnumerator) -> dict[int, int]:
    return {d: v for d, v in w.items() if d > 0}


def free_spectrum(lam: EnumeratorMatrix, dmax: int) -> SpectrumReport:
    """Weights of paths that leave state 0 and first return to it, up to ``dmax``.

    Sums ``b D^m c`` over ``m >= 0`` where ``b``/``c`` are row/column 0 of
    ``lam`` without the diagonal entry and ``D`` is ``lam`` with state 0
    deleted.  Each pass multiplies by ``D`` and truncates at ``dmax``; the
    loop ends once nothing of weight ``<= dmax`` is left.
    """
    if dmax < 1:
        raise ValueError("dmax must be at least 1")
    m = lam.dim
    trunc = [[e.truncate(dmax) for e in row] for row in lam.entries]
    # nonzero-weight parallel branches 0 -> 0 are first-return paths of length 1
    total = WeightEnumerator((0,) + trunc[0][0].coeffs[1:], dmax)
    inner = range(1, m)
    vec = [trunc[0][j] for j in inner]
    max_passes = (dmax + 2) * max(m - 1, 1)
    passes = 0
    while any(not v.is_zero() for v in vec):
        passes += 1
        if passes > max_passes:
            raise DivergenceError("first-return series does not converge; encoder is not minimal")
        for v, i in zip(vec, inner):
            total = total + we_mul(v, trunc[i][0])
        vec = [
            _sum_terms(we_mul(v, trunc[i][j]) for v, i in zip(vec, inner))
            for j in inner
        ]
    return SpectrumReport(_positive_counts(total), 1, dmax, Method.FIRST_RETURN)


def _sum_terms(terms) -> WeightEnumerator:
    acc = None
    for t in terms:
        acc = t if acc is None else acc + t
    return acc if acc is not None else WeightEnumerator()


def normalized_spectrum(lam: EnumeratorMatrix, kind: TerminationKind, n_sections: int,
                        dmax: int) -> SpectrumReport:
    """Terminated-code weight counts without the zero word, over divisor ``N``."""
    w = termination_enumerator(lam, kind, n_sections, dmax)
    return SpectrumReport(_positive_counts(w), n_sections, dmax, Method.for_kind(kind), n_sections)


@dataclass(frozen=True)
class ConvergenceReport:
    reference: SpectrumReport
    reports: tuple[SpectrumReport, ...]
    weights: tuple[int, ...]
    # weight -> first N from which counts[d] == N * N_d for every later N in the list
    stabilized_at: dict[int, Optional[int]] = field(default_factory=dict)

    @property
    def all_stabilized(self) -> bool:
        return all(v is not None for v in self.stabilized_at.values())

    def table(self) -> list[dict]:
        rows = []
        for r in self.reports:
            rows.append({
                "N": r.N,
                **{f"d={d}": f"{r.counts.get(d, 0)}/{r.divisor}" for d in self.weights},
            })
        return rows

    def to_dict(self) -> dict:
        return {
            "reference": self.reference.to_dict(),
            "weights": list(self.weights),
            "stabilized_at": {str(d): n for d, n in self.stabilized_at.items()},
            "reports": [r.to_dict() for r in self.reports],
        }


def convergence_report(lam: EnumeratorMatrix, kind: TerminationKind, n_list: Sequence[int],
                       dmax: int) -> ConvergenceReport:
    """Compare normalized terminated counts with the free spectrum for ``d < 2 dfree``."""
    ref = free_spectrum(lam, dmax)
    reports = tuple(normalized_spectrum(lam, kind, n, dmax) for n in sorted(n_list))
    dfree = ref.dfree
    weights = tuple(range(dfree, min(dmax, 2 * dfree - 1) + 1)) if dfree else ()
    stabilized: dict[int, Optional[int]] = {}
    for d in weights:
        target = ref.counts.get(d, 0)
        since = None
        for r in reports:
            if r.counts.get(d, 0) == target * r.divisor:
                if since is None:
                    since = r.N
            else:
                since = None
        stabilized[d] = since
    return ConvergenceReport(ref, reports, weights, stabilized)


Probability = Union[Fraction, int, float, str]


def as_fraction(p: Probability) -> Fraction:
    """Exact rational; floats go through their shortest decimal repr (0.01 -> 1/100)."""
    if isinstance(p, float):
        return Fraction(repr(p))
    return Fraction(p)


def pairwise_error_probability(d: int, p: Probability) -> Fraction:
    """BSC probability that a weight-``d`` error event beats the true path; ties count as errors."""
    p = as_fraction(p)
    q = 1 - p
    return sum((comb(d, e) * p ** e * q ** (d - e) for e in range((d + 1) // 2, d + 1)), Fraction(0))


@dataclass(frozen=True)
class PerformanceEstimate:
    p: Fraction
    per_unit_event_bound: Fraction
    horizon: Optional[int] = None
    horizon_bound: Optional[Fraction] = None
    tie_rule: str = "ties counted as errors"

    def to_dict(self) -> dict:
        return {
            "channel": "BSC",
            "p": str(self.p),
            "per_unit_event_bound": float(self.per_unit_event_bound),
            "per_unit_event_bound_exact": str(self.per_unit_event_bound),
            "horizon": self.horizon,
            "horizon_bound": None if self.horizon_bound is None else float(self.horizon_bound),
            "tie_rule": self.tie_rule,
        }


def union_bound(spectrum: SpectrumReport, p: Probability, horizon: Optional[int] = None) -> PerformanceEstimate:
    """``sum_d (counts[d] / divisor) * P2(d)`` over the reported weights."""
    pf = as_fraction(p)
    if not 0 <= pf <= Fraction(1, 2):
        raise ValueError(f"crossover probability {p} outside [0, 1/2]")
    total = Fraction(0)
    for d, v in spectrum.counts.items():
        total += Fraction(v, spectrum.divisor) * pairwise_error_probability(d, pf)
    return PerformanceEstimate(pf, total, horizon, None if horizon is None else horizon * total)
