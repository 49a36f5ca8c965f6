"""Closed-form resource analytics for the fusion-based tree protocol.

The recursion tracks, per connection level, the fraction of accepted
segments whose connection qubit still carries a photon (the rest are
vacuum contaminated but indistinguishable until measured) and the
success probability of each postselected connection measurement. From
those, expected preparation time in source pulses follows as an exact
product, with a closed-form power-law approximation and the
direct-generation baseline for comparison.

All probabilities are exact rationals in the efficiencies; the exact
time product is evaluated in log space so large qubit counts cannot
overflow intermediate terms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

__all__ = [
    "ProtocolParams",
    "AnalyticRow",
    "a_recursion_step",
    "a_closed_form",
    "connection_success_prob",
    "base_success_prob",
    "total_time_exact",
    "total_time_exact_log10",
    "total_time_approx",
    "total_time_approx_log10",
    "naive_time_log10",
    "scaling_table",
    "csv_table",
]


def _check_efficiency(value: float, name: str) -> None:
    if not 0.0 < value <= 1.0:
        raise ValueError(f"{name} must be in (0, 1], got {value}")


@dataclass(frozen=True)
class ProtocolParams:
    """Protocol operating point: target size n = 2**m qubits, source
    efficiency eta_s, detector efficiency eta_d."""

    m: int
    eta_s: float
    eta_d: float

    def __post_init__(self) -> None:
        if self.m < 1:
            raise ValueError(f"m must be >= 1, got {self.m}")
        _check_efficiency(self.eta_s, "eta_s")
        _check_efficiency(self.eta_d, "eta_d")

    @property
    def n(self) -> int:
        return 1 << self.m


def a_recursion_step(a_prev: float, eta_d: float) -> float:
    """One connection level of the good-fraction recursion:
    a <- 2a / (4 - eta_d * a)."""
    _check_efficiency(eta_d, "eta_d")
    if not 0.0 < a_prev <= 1.0:
        raise ValueError(f"good fraction must be in (0, 1], got {a_prev}")
    return 2.0 * a_prev / (4.0 - eta_d * a_prev)


def a_closed_form(m: int, eta_d: float) -> float:
    """Closed form of the recursion after m levels, starting from 1:
    1 / (2**m * (1 - eta_d/2) + eta_d/2)."""
    _check_efficiency(eta_d, "eta_d")
    if m < 0:
        raise ValueError(f"m must be >= 0, got {m}")
    return 1.0 / ((1 << m) * (1.0 - eta_d / 2.0) + eta_d / 2.0)


def connection_success_prob(a_prev: float, eta_d: float) -> float:
    """Acceptance probability of one connection measurement when both
    input segments are good with probability a_prev.

    Three accepted event classes: both photons exit separate ports and
    the measured one is detected (a^2/2 * eta_d, the only good outcome),
    both photons exit the measured port and at least one is detected
    (a^2/4 * (1-(1-eta_d)^2) = a^2 (2-eta_d) eta_d / 4), or exactly one
    photon arrived and was detected (a(1-a) * eta_d, counting both
    sides).
    """
    _check_efficiency(eta_d, "eta_d")
    if not 0.0 < a_prev <= 1.0:
        raise ValueError(f"good fraction must be in (0, 1], got {a_prev}")
    a = a_prev
    return eta_d * (a * a / 2.0 + a * a * (2.0 - eta_d) / 4.0 + a * (1.0 - a))


def base_success_prob(eta_s: float, eta_d: float) -> float:
    """Per-pulse probability that a source fires and the immediately
    measured outer qubit is detected."""
    _check_efficiency(eta_s, "eta_s")
    _check_efficiency(eta_d, "eta_d")
    return eta_s * eta_d


def _level_probs(params: ProtocolParams) -> list[float]:
    """[p_0, p_1, ..., p_{m-1}]: base success then each connection level."""
    probs = [base_success_prob(params.eta_s, params.eta_d)]
    for i in range(1, params.m):
        probs.append(connection_success_prob(a_closed_form(i - 1, params.eta_d), params.eta_d))
    return probs


def total_time_exact_log10(params: ProtocolParams) -> float:
    """log10 of the expected pulses per confirmed n = 2**m qubit state:
    the product over level probabilities times the final-confirmation
    factor 1/(eta_d * a_{m-1}), all in log space."""
    log10 = -math.log10(params.eta_d) - math.log10(a_closed_form(params.m - 1, params.eta_d))
    for p in _level_probs(params):
        log10 -= math.log10(p)
    return log10


def total_time_exact(params: ProtocolParams) -> float:
    """Expected pulses per confirmed state (units of the pulse period).

    Raises OverflowError beyond float range; total_time_exact_log10
    always works.
    """
    log10 = total_time_exact_log10(params)
    if log10 > 308.0:
        raise OverflowError(
            f"exact time 1e{log10:.1f} exceeds float range; "
            "use total_time_exact_log10"
        )
    return 10.0**log10


def total_time_approx(n: int, eta_s: float, eta_d: float) -> float:
    """Power-law approximation of the pulse count:
    (eta_s eta_d)^-1 * n ** ((log2(n) - 1)/2 + log2(1/eta_d - 1/2))."""
    log10 = total_time_approx_log10(n, eta_s, eta_d)
    if log10 > 308.0:
        raise OverflowError(
            f"approximate time 1e{log10:.1f} exceeds float range; "
            "use total_time_approx_log10"
        )
    return 10.0**log10


def total_time_approx_log10(n: int, eta_s: float, eta_d: float) -> float:
    _check_efficiency(eta_s, "eta_s")
    _check_efficiency(eta_d, "eta_d")
    if n < 2 or n & (n - 1):
        raise ValueError(f"n must be a power of two >= 2, got {n}")
    exponent = (math.log2(n) - 1.0) / 2.0 + math.log2(1.0 / eta_d - 0.5)
    return -math.log10(eta_s * eta_d) + exponent * math.log10(n)


def naive_time_log10(n: int, eta_s: float, eta_d: float) -> float:
    """log10 pulses for direct single-shot generation: all n/2 sources
    fire (eta_s^(n/2)), all n detectors click (eta_d^n), and all n/2 - 1
    fusion gates succeed at once (2^-(n/2-1))."""
    _check_efficiency(eta_s, "eta_s")
    _check_efficiency(eta_d, "eta_d")
    if n < 2 or n % 2:
        raise ValueError(f"n must be even and >= 2, got {n}")
    half = n // 2
    return (
        half * math.log10(1.0 / eta_s)
        + n * math.log10(1.0 / eta_d)
        + (half - 1) * math.log10(2.0)
    )


@dataclass(frozen=True)
class AnalyticRow:
    """One scaling-table row; field names match the CSV columns."""

    m: int
    n: int
    a_m: float
    p_m: float
    t_exact_over_t0: float
    t_approx_over_t0: float
    naive_log10_t_over_t0: float


def scaling_table(m_max: int, eta_s: float, eta_d: float) -> list[AnalyticRow]:
    """Rows for m = 1..m_max at one operating point. Entries beyond
    float range come back as inf (their log10 columns stay finite)."""
    if m_max < 1:
        raise ValueError(f"m_max must be >= 1, got {m_max}")
    rows = []
    for m in range(1, m_max + 1):
        params = ProtocolParams(m, eta_s, eta_d)
        try:
            exact = total_time_exact(params)
        except OverflowError:
            exact = math.inf
        try:
            approx = total_time_approx(params.n, eta_s, eta_d)
        except OverflowError:
            approx = math.inf
        rows.append(AnalyticRow(
            m=m,
            n=params.n,
            a_m=a_closed_form(m, eta_d),
            p_m=connection_success_prob(a_closed_form(m - 1, eta_d), eta_d),
            t_exact_over_t0=exact,
            t_approx_over_t0=approx,
            naive_log10_t_over_t0=naive_time_log10(params.n, eta_s, eta_d),
        ))
    return rows


_CSV_HEADER = "m,n,a_m,p_m,T_exact_over_t0,T_approx_over_t0,naive_log10_T_over_t0"


def csv_table(rows: list[AnalyticRow]) -> str:
    """CSV with 15 significant digits, '.' radix, no thousands separators."""
    lines = [_CSV_HEADER]
    for r in rows:
        lines.append(
            f"{r.m},{r.n},{r.a_m:.15g},{r.p_m:.15g},"
            f"{r.t_exact_over_t0:.15g},{r.t_approx_over_t0:.15g},"
            f"{r.naive_log10_t_over_t0:.15g}"
        )
    return "\n".join(lines) + "\n"
