"""Binary MacWilliams transform on exact weight enumerators."""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Optional

from .algebra import WeightEnumerator


class MacWilliamsError(ValueError):
    """Input is not the weight enumerator of a binary linear code."""


def _binomial_row(m: int, sign: int) -> list[int]:
    # coefficients of (1 + sign*x)^m
    return [comb(m, i) * (sign ** i) for i in range(m + 1)]


def macwilliams_transform(w: WeightEnumerator, n: int, k: int) -> WeightEnumerator:
    """Enumerator of the dual of an ``(n, k)`` code with enumerator ``w``.

    ``2**-k * sum_d A_d (1 - x)**d (1 + x)**(n - d)``, in integers.
    """
    if w.truncated:
        raise MacWilliamsError("transform needs the complete (untruncated) enumerator")
    if w.degree > n:
        raise MacWilliamsError(f"weight {w.degree} exceeds block length {n}")
    if w.at_one() != 1 << k:
        raise MacWilliamsError(f"enumerator counts {w.at_one()} words, expected 2^{k}")
    acc = [0] * (n + 1)
    for d, a in w.items():
        minus = _binomial_row(d, -1)
        plus = _binomial_row(n - d, 1)
        for i, mv in enumerate(minus):
            if not mv:
                continue
            for j, pv in enumerate(plus):
                acc[i + j] += a * mv * pv
    out = []
    for v in acc:
        q, r = divmod(v, 1 << k)
        if r or q < 0:
            raise MacWilliamsError("transform is not a valid enumerator (inexact or negative)")
        out.append(q)
    return WeightEnumerator(tuple(out))


@dataclass(frozen=True)
class IdentityReport:
    lhs: WeightEnumerator
    rhs: WeightEnumerator
    transformed_lhs: WeightEnumerator
    holds: bool
    first_discrepant_weight: Optional[int] = None

    def to_dict(self) -> dict:
        return {
            "lhs": self.lhs.as_dict(),
            "rhs": self.rhs.as_dict(),
            "transformed_lhs": self.transformed_lhs.as_dict(),
            "holds": self.holds,
            "first_discrepant_weight": self.first_discrepant_weight,
        }


def verify_identity(a: WeightEnumerator, b: WeightEnumerator, n: int, k_a: int) -> IdentityReport:
    """Check that ``b`` is the MacWilliams transform of the ``(n, k_a)`` enumerator ``a``."""
    t = macwilliams_transform(a, n, k_a)
    first = None
    for d in range(max(len(t.coeffs), len(b.coeffs))):
        if t[d] != b[d]:
            first = d
            break
    return IdentityReport(a, b, t, first is None, first)
