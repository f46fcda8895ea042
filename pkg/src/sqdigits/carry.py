"""Carry-propagation failure counts for truncated digital functions.

Adding ``m^2 (2nr + r^2)`` to ``m^2 n^2`` can ripple a carry into digit
positions beyond index ``lambda = 2 mu + nu + rho + rho~``; exactly then
does the low-window phase difference of f disagree with the full phase
difference.  The counting operations below enumerate those failures
exactly; the lemma's O(q**(nu - rho~)) ceiling becomes a fitted-constant
scaling test because its constant is never made explicit.

Phase comparisons are carried out on accumulated digit phases modulo 1
(exact integer arithmetic for rational phases), the form in which the
underlying additive statement lives.
"""

from __future__ import annotations

from dataclasses import dataclass

from .digits import checked_pow
from .qmult import Phase, StronglyQMultiplicative, phase_of

_FLOAT_PHASE_TOL = 1e-9


@dataclass(frozen=True)
class CarrySpec:
    """Parameter block for the carry counts.

    lambda = 2*mu + nu + rho + rho_tilde must stay below 2*mu + 2*nu and
    m must have exactly mu base-q digits.
    """

    q: int
    mu: int
    nu: int
    rho: int
    rho_tilde: int
    m: int
    r: int

    def __post_init__(self) -> None:
        if min(self.mu, self.nu, self.rho, self.rho_tilde) < 0:
            raise ValueError("mu, nu, rho, rho_tilde must be non-negative")
        if self.mu < 1 or self.nu < 1:
            raise ValueError("mu and nu must be >= 1 (m and n carry that many digits)")
        if self.lam >= 2 * self.mu + 2 * self.nu:
            raise ValueError(
                f"need lambda < 2*mu + 2*nu, got lambda={self.lam}"
            )
        if not checked_pow(self.q, self.mu) > self.m >= self.q ** (self.mu - 1):
            raise ValueError(
                f"m must lie in [q**(mu-1), q**mu), got m={self.m}"
            )
        checked_pow(self.q, self.lam)

    @property
    def lam(self) -> int:
        return 2 * self.mu + self.nu + self.rho + self.rho_tilde


def _phases_differ(x: Phase, y: Phase) -> bool:
    if isinstance(x, float) or isinstance(y, float):
        d = (float(x) - float(y)) % 1.0
        return min(d, 1.0 - d) > _FLOAT_PHASE_TOL
    return x != y


def _high_phase(f: StronglyQMultiplicative, value: int, lam_pow: int) -> Phase:
    """Phase of the digits of value with index >= lam (= phase of value // q**lam)."""
    return phase_of(f, value // lam_pow)


def count_mismatch(spec: CarrySpec, f: StronglyQMultiplicative) -> int:
    """Number of n in [q**(nu-1), q**nu) whose low-window phase difference
    of m^2(n+r)^2 vs m^2 n^2 disagrees with the full phase difference.

    The two differences agree exactly when the digits beyond index lambda
    carry the same phase, so the count reduces to comparing the phases of
    the high parts.
    """
    if f.q != spec.q:
        raise ValueError("f and spec must share the base q")
    if spec.r == 0:
        return 0
    q, lam_pow = spec.q, spec.q**spec.lam
    m2 = spec.m * spec.m
    count = 0
    for n in range(q ** (spec.nu - 1), q**spec.nu):
        low = _high_phase(f, m2 * n * n, lam_pow)
        high = _high_phase(f, m2 * (n + spec.r) * (n + spec.r), lam_pow)
        if _phases_differ(high, low):
            count += 1
    return count


def count_second_diff_mismatch(
    spec: CarrySpec, f: StronglyQMultiplicative, kappa: int, s: int
) -> int:
    """Mismatch count for the four-term second difference with shift s*q**kappa.

    Counts n where the alternating sum of window-(kappa, lambda) phases of
    (m + s q**kappa)^2 (n+r)^2, m^2 (n+r)^2, (m + s q**kappa)^2 n^2, m^2 n^2
    differs (mod 1) from the same alternating sum of full phases.  Since
    dropping digits below kappa changes low and full sides identically, the
    comparison again reduces to the phases of the digits at index >= lambda.
    """
    if not 0 <= kappa <= spec.nu - spec.rho:
        raise ValueError(f"need 0 <= kappa <= nu - rho, got {kappa}")
    if not 1 <= s < spec.q**spec.rho:
        raise ValueError(f"need 1 <= s < q**rho, got {s}")
    q, lam_pow = spec.q, spec.q**spec.lam
    m2 = spec.m * spec.m
    ms = spec.m + s * q**kappa
    ms2 = ms * ms
    r = spec.r
    count = 0
    for n in range(q ** (spec.nu - 1), q**spec.nu):
        np1 = n + r
        full = sum_mod_one(
            _high_phase(f, ms2 * np1 * np1, lam_pow),
            _high_phase(f, m2 * np1 * np1, lam_pow),
            _high_phase(f, ms2 * n * n, lam_pow),
            _high_phase(f, m2 * n * n, lam_pow),
        )
        if not _is_zero_phase(full):
            count += 1
    return count


def sum_mod_one(p1: Phase, p2: Phase, p3: Phase, p4: Phase) -> Phase:
    """(p1 - p2 - p3 + p4) mod 1 with the arithmetic of the phase kind."""
    if any(isinstance(p, float) for p in (p1, p2, p3, p4)):
        return (float(p1) - float(p2) - float(p3) + float(p4)) % 1.0
    return (p1 - p2 - p3 + p4) % 1


def _is_zero_phase(p: Phase) -> bool:
    if isinstance(p, float):
        return min(p, 1.0 - p) <= _FLOAT_PHASE_TOL
    return p == 0
