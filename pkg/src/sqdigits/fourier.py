"""Fourier transforms of strongly q-multiplicative functions.

For a window length ``lam`` the normalized transform is

    F_lam(t) = q**(-lam) * sum_{0 <= u < q**lam} f(u) e(-t*u / q**lam),

periodic in ``t`` with period ``q**lam``.  Because ``f`` is strongly
q-multiplicative, ``F_lam`` factors into single-digit transforms,

    F_lam(t) = prod_{l=0}^{lam-1} F_1(t / q**l),

which both the table builder and the continuous evaluator exploit; the
O(q**(2*lam)) defining sum is kept as a cross-validation oracle for small
windows.

Two spectral constants drive every estimate downstream:

* ``c``   from  max_t |F_1(t) F_1(q t)| = q**(-2c), the decay exponent of
  the sup norm of ``F_lam``;
* ``eta`` from  max_t Psi_q(t) = q**eta  with
  Psi_q(t) = sum_{r<q} |F_1(q t + r)|, the growth exponent of L1 sums.

Both maxima are located by a deterministic dense grid followed by
golden-section refinement, so results are reproducible bit for bit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .errors import CapacityError, DomainError, PreconditionError
from .qmult import StronglyQMultiplicative, is_proper, make_digit_exponential

TABLE_CAPACITY = 1 << 24
GRID_DENSITY = 4096
REFINE_TOL = 1e-10

_TWO_PI = 2.0 * math.pi


def _as_array(t) -> np.ndarray:
    return np.asarray(t, dtype=np.float64)


def eval_F1(f: StronglyQMultiplicative, t) -> np.ndarray | complex:
    """F_1(t) = (1/q) sum_u f(u) e(-t*u/q), vectorized over t."""
    arr = _as_array(t)
    w = np.exp(-2j * math.pi * arr / f.q)
    vals = f.digit_values
    acc = np.full(arr.shape, vals[f.q - 1], dtype=np.complex128)
    for u in range(f.q - 2, -1, -1):
        acc *= w
        acc += vals[u]
    acc /= f.q
    if np.isscalar(t) or arr.shape == ():
        return complex(acc)
    return acc


def eval_F(f: StronglyQMultiplicative, lam: int, t) -> np.ndarray | complex:
    """F_lam(t) by the single-digit product formula, vectorized over t."""
    if lam < 0:
        raise ValueError(f"window length must be >= 0, got {lam}")
    arr = _as_array(t)
    out = np.ones(arr.shape, dtype=np.complex128)
    for level in range(lam):
        out *= eval_F1(f, arr / f.q**level)
    if np.isscalar(t) or arr.shape == ():
        return complex(out)
    return out


def eval_F_direct(f: StronglyQMultiplicative, lam: int, t) -> complex:
    """The defining O(q**lam) sum; retained as an oracle for small windows."""
    qlam = f.q**lam
    if qlam > TABLE_CAPACITY:
        raise CapacityError(f"q**lam = {qlam} exceeds table capacity {TABLE_CAPACITY}")
    u = np.arange(qlam)
    fu = np.array([complex(v) for v in _digit_value_table(f, lam)])
    return complex(np.sum(fu * np.exp(-2j * math.pi * float(t) * u / qlam)) / qlam)


def _digit_value_table(f: StronglyQMultiplicative, lam: int) -> np.ndarray:
    """f(u) for u < q**lam, built digit by digit."""
    vals = np.ones(1, dtype=np.complex128)
    digit_vals = np.array(f.digit_values, dtype=np.complex128)
    for _ in range(lam):
        vals = (vals[None, :] * digit_vals[:, None]).reshape(-1)
        # index u = b * q**level + u_low, so the new digit is the slow axis
    return vals


@dataclass(frozen=True)
class FourierTable:
    """All values F_lam(h) for integer h in [0, q**lam)."""

    f: StronglyQMultiplicative
    lam: int
    values: np.ndarray

    def value_at(self, h: int) -> complex:
        return complex(self.values[h % len(self.values)])


def build_table(f: StronglyQMultiplicative, lam: int) -> FourierTable:
    """Table of F_lam at the q**lam integer points, by the product recursion.

    Level l multiplies the (periodically extended) level l-1 table by
    F_1(h / q**(l-1)); total work O(lam * q**lam).
    """
    if lam < 0:
        raise ValueError(f"window length must be >= 0, got {lam}")
    qlam = f.q**lam
    if qlam > TABLE_CAPACITY:
        raise CapacityError(f"q**lam = {qlam} exceeds table capacity {TABLE_CAPACITY}")
    values = np.ones(1, dtype=np.complex128)
    for level in range(1, lam + 1):
        h = np.arange(f.q**level, dtype=np.float64)
        values = np.tile(values, f.q) * eval_F1(f, h / f.q ** (level - 1))
    return FourierTable(f, lam, values)


try:
    from numba import njit as _njit

    _HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a soft dependency
    _HAVE_NUMBA = False

    def _njit(*args, **kwargs):
        def deco(fn):
            return fn

        return deco if not (args and callable(args[0])) else args[0]


@lru_cache(maxsize=12)
def _trig_tables(n: int) -> tuple[np.ndarray, np.ndarray]:
    """cos(pi a / n), sin(pi a / n) for a < n; big levels dominate, cache them."""
    ang = np.pi * np.arange(n, dtype=np.float64) / n
    return np.cos(ang), np.sin(ang)


@_njit(cache=True)
def _qmean_level_kernel(partial, num2, cos_tab, sin_tab, cos_c, sin_c, q):  # pragma: no cover - jit
    """One tile-and-multiply level of the quadratic-mean sweep.

    den = sin(pi (gamma - (t+a)/n)) comes from the cached tables by angle
    addition (sin computed first, then squared, so the relative error stays
    ~1 ulp right where the Dirichlet ratio amplifies it); num^2 is the
    q-fold tiled numerator pattern.  Kahan accumulation keeps the 10^7-term
    sum good to ~1 ulp.
    """
    n = cos_tab.shape[0]
    prev = partial.shape[0]
    m = num2.shape[0]
    out = np.empty(n, dtype=np.float64)
    inv_q2 = 1.0 / (q * q)
    total = 0.0
    comp = 0.0
    for a in range(n):
        den = sin_c * cos_tab[a] - cos_c * sin_tab[a]
        den2 = den * den
        if den2 < 1e-12:
            r2 = 1.0  # Dirichlet-kernel limit |F_1| -> 1 at integer argument
        else:
            r2 = num2[a % m] * inv_q2 / den2
        v = partial[a % prev] * r2
        out[a] = v
        y = v - comp
        s = total + y
        comp = (s - total) - y
        total = s
    return out, total


def _digit_exponential_gamma(f: StronglyQMultiplicative) -> float | None:
    """gamma when f is e(gamma * s_q) with exact rational phases, else None."""
    if not f.exact:
        return None
    gamma = f.phases[1] if f.q > 1 else None
    if gamma is None:
        return None
    for b in range(f.q):
        if f.phases[b] != (gamma * b) % 1:
            return None
    return float(gamma)


def _quadratic_mean_digit_exp(q: int, gamma: float, lam: int, t: float) -> list[float]:
    """Fast path: |F_1(s)|^2 = (sin(pi q y) / (q sin(pi y)))^2, y = gamma - s/q."""
    sums: list[float] = []
    partial = np.ones(1, dtype=np.float64)
    for level in range(lam):
        n = q ** (level + 1)
        cos_tab, sin_tab = _trig_tables(n)
        c_off = math.pi * ((gamma - t / n) % 2.0)
        # numerator pattern sin^2(pi(q gamma - (t+k)/q**level)), tiled q-fold
        m = q**level
        cos_prev, sin_prev = _trig_tables(m)
        d_off = math.pi * ((q * gamma - t / m) % 2.0)
        s_num = math.sin(d_off) * cos_prev - math.cos(d_off) * sin_prev
        num2 = s_num * s_num
        partial, total = _qmean_level_kernel(
            partial, num2, cos_tab, sin_tab, math.cos(c_off), math.sin(c_off), q
        )
        sums.append(float(total))
    return sums


def quadratic_mean(f: StronglyQMultiplicative, lam: int, t: float) -> list[float]:
    """[S_1, ..., S_lam] with S_l = sum_{0<=h<q**l} |F_l(t+h)|**2.

    Uses the tiled product structure: the factor |F_1((t+h)/q**j)|**2
    depends only on h mod q**(j+1), so each window length is one tile and
    multiply pass, and all S_l for l <= lam come out of a single sweep.
    Digit exponentials take a fused kernel through the closed Dirichlet
    form of |F_1|^2; everything else runs the generic product path.  The
    two paths agree to machine precision (cross-checked in the tests).
    """
    q = f.q
    if q**lam > TABLE_CAPACITY:
        raise CapacityError(f"q**lam = {q**lam} exceeds table capacity {TABLE_CAPACITY}")
    t = t % 1.0  # S_l has exact period 1; reduction keeps every phase small
    gamma = _digit_exponential_gamma(f) if _HAVE_NUMBA else None
    if gamma is not None:
        return _quadratic_mean_digit_exp(q, gamma, lam, t)
    sums: list[float] = []
    partial = np.ones(1, dtype=np.float64)
    for level in range(lam):
        size = q ** (level + 1)
        a = np.arange(size, dtype=np.float64)
        factor = np.abs(eval_F1(f, (t + a) / q**level)) ** 2
        partial = np.tile(partial, q) * factor
        sums.append(float(partial.sum()))
    return sums


@dataclass(frozen=True)
class SpectralConstants:
    """The decay exponent c and the L1-growth exponent eta of f."""

    c: float
    eta: float
    argmax_c: float
    argmax_eta: float
    grid_size: int
    refine_tol: float


def _golden_max(fun, lo: float, hi: float, tol: float) -> tuple[float, float]:
    """Golden-section maximum of a unimodal-enough fun on [lo, hi]."""
    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    a, b = lo, hi
    x1 = b - invphi * (b - a)
    x2 = a + invphi * (b - a)
    f1, f2 = fun(x1), fun(x2)
    while b - a > tol:
        if f1 < f2:
            a, x1, f1 = x1, x2, f2
            x2 = a + invphi * (b - a)
            f2 = fun(x2)
        else:
            b, x2, f2 = x2, x1, f1
            x1 = b - invphi * (b - a)
            f1 = fun(x1)
    xm = 0.5 * (a + b)
    return xm, fun(xm)


def _grid_refine_max(fun_vec, lo: float, hi: float, n: int) -> tuple[float, float]:
    """Dense-grid scan followed by golden-section refinement."""
    grid = np.linspace(lo, hi, n, endpoint=False)
    vals = fun_vec(grid)
    i = int(np.argmax(vals))
    step = (hi - lo) / n
    a = max(lo, grid[i] - step)
    b = min(hi, grid[i] + step)
    x, v = _golden_max(lambda s: float(fun_vec(np.array([s]))[0]), a, b, REFINE_TOL)
    if vals[i] > v:
        return float(grid[i]), float(vals[i])
    return x, v


def psi_q(f: StronglyQMultiplicative, t) -> np.ndarray:
    """Psi_q(t) = sum_{0<=r<q} |F_1(q t + r)|, vectorized over t."""
    arr = _as_array(t)
    total = np.zeros(arr.shape, dtype=np.float64)
    for r in range(f.q):
        total += np.abs(eval_F1(f, f.q * arr + r))
    return total


@lru_cache(maxsize=32)
def compute_constants(f: StronglyQMultiplicative) -> SpectralConstants:
    """c from max |F_1(t) F_1(qt)|, eta from max Psi_q; grid + refinement.

    Raises DomainError for improper f (there the maximum is 1 and c would
    degenerate to 0).
    """
    if not is_proper(f):
        raise DomainError("constants are only defined for proper functions")
    q = f.q
    n = GRID_DENSITY * q

    def g_vec(ts: np.ndarray) -> np.ndarray:
        return np.abs(eval_F1(f, ts)) * np.abs(eval_F1(f, q * ts))

    # the product is q-periodic in t; assert rather than assume
    probe = np.linspace(0.0, float(q), 17)
    if np.max(np.abs(g_vec(probe) - g_vec(probe + q))) > 1e-9:
        raise AssertionError("|F_1(t) F_1(qt)| failed the period-q check")

    t_c, g_max = _grid_refine_max(g_vec, 0.0, float(q), n)
    c = -math.log(g_max) / (2.0 * math.log(q))

    t_eta, psi_max = _grid_refine_max(lambda ts: psi_q(f, ts), 0.0, 1.0, n)
    eta = math.log(psi_max) / math.log(q)
    return SpectralConstants(
        c=c, eta=eta, argmax_c=t_c, argmax_eta=t_eta, grid_size=n, refine_tol=REFINE_TOL
    )


def c_lower_bound_digit_sum(q: int, gamma: Fraction | float) -> float:
    """pi^2 (q-1) / (12 (q+1) log q) * ||(q-1) gamma||^2."""
    dist = _nearest_int_distance((q - 1) * gamma)
    return math.pi**2 * (q - 1) / (12.0 * (q + 1) * math.log(q)) * dist**2


def eta_upper_bound_digit_sum(q: int) -> float:
    """(1/log q) (2 / (q sin(pi/2q)) + (2/pi) log(2q/pi))."""
    return (
        2.0 / (q * math.sin(math.pi / (2 * q))) + (2.0 / math.pi) * math.log(2 * q / math.pi)
    ) / math.log(q)


def _nearest_int_distance(x: Fraction | float) -> float:
    if isinstance(x, Fraction):
        frac = x - round(x)
        return abs(float(frac))
    return abs(x - round(x))


def l1_masked_sum(
    f: StronglyQMultiplicative, lam: int, delta: int, a: int, t: float
) -> tuple[float, float]:
    """L1 mass of F_lam on a residue class against its single-class bound.

    value = sum over 0 <= h < q**lam with h = a mod q**delta of |F_lam(t+h)|,
    bound = q**(eta*(lam-delta)) * |F_delta(t+a)|.
    """
    if not 0 <= delta <= lam:
        raise PreconditionError(f"need 0 <= delta <= lam, got ({delta}, {lam})")
    q = f.q
    if q**lam > TABLE_CAPACITY:
        raise CapacityError(f"q**lam = {q**lam} exceeds table capacity {TABLE_CAPACITY}")
    h = a % q**delta + q**delta * np.arange(q ** (lam - delta), dtype=np.float64)
    value = float(np.sum(np.abs(eval_F(f, lam, t + h))))
    eta = compute_constants(f).eta
    bound = q ** (eta * (lam - delta)) * abs(eval_F(f, delta, t + a))
    return value, float(bound)


def digit_sum_decay_bound(
    q: int, gamma: Fraction | float, kappa1: int, kappa2: int, t: float
) -> tuple[float, float]:
    """|F| of the digit exponential against its explicit exponential bound.

    value = |F_{kappa2-kappa1}(t)| for f = e(gamma * s_q),
    bound = exp(pi^2/48 - (kappa2-kappa1) * pi^2 (q-1)/(12(q+1)) * ||(q-1)gamma||^2).
    """
    f = make_digit_exponential(q, gamma)
    lam = kappa2 - kappa1
    value = abs(eval_F(f, lam, t))
    dist = _nearest_int_distance((q - 1) * gamma)
    bound = math.exp(
        math.pi**2 / 48.0 - lam * math.pi**2 * (q - 1) / (12.0 * (q + 1)) * dist**2
    )
    return float(value), float(bound)


def max_abs_F(f: StronglyQMultiplicative, lam: int) -> float:
    """max over real t of |F_lam(t)| by dense grid plus refinement."""
    if lam == 0:
        return 1.0
    period = float(f.q**lam)
    n = min(GRID_DENSITY * f.q * lam, 1 << 22)

    def fun_vec(ts: np.ndarray) -> np.ndarray:
        return np.abs(eval_F(f, lam, ts))

    _, v = _grid_refine_max(fun_vec, 0.0, period, n)
    return v


def almost_ap_l2_sum(
    f: StronglyQMultiplicative, kappa1: int, kappa2: int, A: float, B: float
) -> tuple[float, float]:
    """L2 mass of F along the almost arithmetic progression floor(k*A) + B.

    value = sum_{0 <= k < q**lam / A} |F_lam(floor(k A) + B)|^2  (lam the
    window length), bound = (3q-2)/(q-1) * max_t |F_alpha(t)|^2 where alpha
    is the integer with q**alpha <= A < q**(alpha+1).
    """
    q = f.q
    lam = kappa2 - kappa1
    if not 1.0 <= A < float(q**lam):
        raise DomainError(f"need 1 <= A < q**lam, got A={A}")
    alpha = 0
    while q ** (alpha + 1) <= A:
        alpha += 1
    if alpha >= lam:
        raise DomainError(f"need q**alpha <= A with alpha < window, got alpha={alpha}")
    qlam = q**lam
    if qlam > TABLE_CAPACITY:
        raise CapacityError(f"q**lam = {qlam} exceeds table capacity {TABLE_CAPACITY}")
    count = int(math.ceil(qlam / A))
    k = np.arange(count, dtype=np.float64)
    points = np.floor(k * A) + B
    value = float(np.sum(np.abs(eval_F(f, lam, points)) ** 2))
    bound = (3.0 * q - 2.0) / (q - 1.0) * max_abs_F(f, alpha) ** 2
    return value, bound


def large_sieve_sum(
    f: StronglyQMultiplicative,
    kappa1: int,
    kappa2: int,
    nodes: list[float],
    delta: float,
) -> tuple[float, float]:
    """L2 mass of F at delta well-spaced nodes against the large-sieve bound.

    value = sum_n |F_lam(q**lam * t_n)|^2, bound = 1 + 1/(delta * q**lam).
    Raises PreconditionError unless the nodes are pairwise delta-spaced
    modulo 1 and 0 < delta <= 1/2.
    """
    if not 0.0 < delta <= 0.5:
        raise PreconditionError(f"need 0 < delta <= 1/2, got {delta}")
    lam = kappa2 - kappa1
    pts = np.sort(np.mod(np.asarray(nodes, dtype=np.float64), 1.0))
    if len(pts) > 1:
        gaps = np.diff(pts)
        wrap = 1.0 - pts[-1] + pts[0]
        if min(gaps.min(), wrap) < delta - 1e-12:
            raise PreconditionError("nodes are not delta well-spaced modulo 1")
    qlam = float(f.q**lam)
    value = float(np.sum(np.abs(eval_F(f, lam, qlam * np.asarray(nodes, dtype=np.float64))) ** 2))
    bound = 1.0 + 1.0 / (delta * qlam)
    return value, bound
