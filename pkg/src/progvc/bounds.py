"""Integer bound functions used in shatter-function estimates.

Everything here is exact integer arithmetic. Inequalities that are stated
with base-2 logarithms are decided in their equivalent power form, e.g.
``k*log2(m) < n`` becomes ``m**k < 2**n``, so no floating point enters any
verdict. Logarithms are base 2 throughout.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import DomainError, ResourceLimitError

# Scans below are over a condition that is eventually monotone in n, so a
# ceiling only guards against typos in arguments, not against wrong answers.
SCAN_CEILING = 10**6


def capital_c(d: int, n: int) -> int:
    """Sum of binomial coefficients C(n, 0) + ... + C(n, d).

    This is the Sauer-Shelah bound on the shatter function of a system of
    VC dimension d evaluated at n points.
    """
    if d < 0 or n < 0:
        raise DomainError(f"capital_c requires d >= 0 and n >= 0, got d={d}, n={n}")
    return sum(math.comb(n, i) for i in range(d + 1))


def f_bound(d: int, k: int, scan_ceiling: int = SCAN_CEILING) -> int:
    """Least n with capital_c(d, n)**k < 2**n.

    Controls how many points a k-fold intersection of systems of VC
    dimension d can shatter: the VC dimension of the intersection system
    is strictly below this value.
    """
    if d < 0 or k < 1:
        raise DomainError(f"f_bound requires d >= 0 and k >= 1, got d={d}, k={k}")
    for n in range(scan_ceiling + 1):
        if capital_c(d, n) ** k < 2**n:
            return n
    raise ResourceLimitError(f"f_bound scan exceeded ceiling {scan_ceiling} for d={d}, k={k}")


def g_bound(d: int, k: int, scan_ceiling: int = SCAN_CEILING) -> int:
    """k * (n0 - 1) where n0 is the least n with k * capital_c(d, n) < 2**n.

    Bounds the VC dimension of a union of k cosets, each carrying a trace
    system of VC dimension at most d.
    """
    if d < 0 or k < 1:
        raise DomainError(f"g_bound requires d >= 0 and k >= 1, got d={d}, k={k}")
    for n in range(scan_ceiling + 1):
        if k * capital_c(d, n) < 2**n:
            return k * (n - 1)
    raise ResourceLimitError(f"g_bound scan exceeded ceiling {scan_ceiling} for d={d}, k={k}")


def km_bound(d: int, l: int, s: int, n: int) -> int:
    """d * (2d-1)**(l-1) * sum_{i<=l} 2**i * C(s*n, i).

    Counts sign patterns of l integer polynomials of degree at most d in s
    parameter variables, evaluated over n parameter points.
    """
    if d < 1 or l < 1 or s < 1 or n < 0:
        raise DomainError(
            f"km_bound requires d, l, s >= 1 and n >= 0, got d={d}, l={l}, s={s}, n={n}"
        )
    return d * (2 * d - 1) ** (l - 1) * sum(2**i * math.comb(s * n, i) for i in range(l + 1))


@dataclass
class ThresholdReport:
    """Outcome of scanning an integer inequality around its flip point."""

    check: str
    holds_at: list[int] = field(default_factory=list)
    fails_at: list[int] = field(default_factory=list)
    bound: int = 0

    def to_json(self) -> dict:
        return {
            "check": self.check,
            "holds_at": list(self.holds_at),
            "fails_at": list(self.fails_at),
            "bound": self.bound,
        }


def _translate_pattern_count(n: int) -> int:
    # Pattern count for membership in arbitrary translates of arbitrary
    # two-sided progressions in the Heisenberg group: four sign cases, each
    # a Boolean combination of 14 quadratic polynomials in 5 parameters.
    return (648 * sum(2**i * math.comb(14 * n, i) for i in range(6))) ** 4


def verify_heisenberg_translate_threshold() -> ThresholdReport:
    """Locate the flip of (648 * sum_{i<=5} 2**i C(14n, i))**4 < 2**n.

    The inequality first holds at n = 268 and fails at n = 267, which caps
    the VC dimension of the translate system at 267.
    """
    report = ThresholdReport(check="heisenberg-translates")
    for n in (267, 268):
        if _translate_pattern_count(n) < 2**n:
            report.holds_at.append(n)
        else:
            report.fails_at.append(n)
    report.bound = 267
    return report


def _fixed_pattern_count(n: int) -> int:
    # Per-coset pattern count for translates of one fixed progression,
    # multiplied by the 4 cosets of (2Z x 2Z x Z).
    return 288 * sum(2**i * math.comb(14 * n, i) for i in range(4))


def verify_heisenberg_fixed_threshold() -> ThresholdReport:
    """Locate the flip of 2**n <= 288 * sum_{i<=3} 2**i C(14n, i).

    The inequality holds at n = 35 and fails at n = 36; with the four-coset
    split this caps the VC dimension of translates of any single fixed
    progression at 4 * 35 = 140.
    """
    report = ThresholdReport(check="heisenberg-fixed-progression")
    for n in (35, 36):
        if 2**n <= _fixed_pattern_count(n):
            report.holds_at.append(n)
        else:
            report.fails_at.append(n)
    report.bound = 4 * 35
    return report
