"""Foundation special functions: the zeta family, log-gamma and polygamma,
the completed xi function, and prime machinery.

Everything is self-contained double precision.  zeta is an Euler-Maclaurin
sum whose truncation length grows with |Im s|; it is accurate to about 1e-12
for |Im s| <= 200, which is the supported window.  The entire function
(s-1)*zeta(s) is exposed separately because every closed form downstream
needs it in a shape that stays finite and positive through s = 1.
"""

from __future__ import annotations

import cmath
import math
from typing import NamedTuple

import numpy as np

from .errors import CapacityError, DomainError, PoleError, WindowExceededError

EULER_GAMMA = 0.5772156649015328606065
LN_PI = math.log(math.pi)
IM_WINDOW = 200.0

# Bernoulli numbers B_2..B_14; seven correction terms bound the
# Euler-Maclaurin remainder below 1e-12 everywhere in the window.
_BERN = (
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
)
_B_OVER_FACT = tuple(b / math.factorial(2 * (k + 1)) for k, b in enumerate(_BERN))
# Stirling series coefficients B_2k / (2k * (2k - 1))
_STIRLING = tuple(b / ((2 * (k + 1)) * (2 * (k + 1) - 1)) for k, b in enumerate(_BERN))

_MAX_N = max(30, math.ceil(1.3 * IM_WINDOW)) + 1
_LOGN = np.log(np.arange(1, _MAX_N + 1, dtype=np.float64))


def _as_complex(s) -> complex:
    z = complex(s)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise DomainError(f"non-finite argument {s!r}")
    return z


def _check_window(z: complex):
    if abs(z.imag) > IM_WINDOW:
        raise WindowExceededError(
            f"|Im s| = {abs(z.imag):g} exceeds the supported window {IM_WINDOW:g}"
        )


def _reg_em(s: complex, want_deriv: bool):
    """Euler-Maclaurin evaluation of reg(s) = (s-1)*zeta(s) and optionally
    its s-derivative.  reg is entire and equals 1 at s = 1 exactly."""
    n_trunc = max(30, math.ceil(1.3 * abs(s.imag)))
    logn = _LOGN[: n_trunc - 1]          # n = 1 .. N-1
    pw = np.exp(-s * logn)               # n^-s
    base = pw.sum()

    ln_big = _LOGN[n_trunc - 1]
    n_pow_ms = cmath.exp(-s * ln_big)    # N^-s

    # corrections: sum_k B_2k/(2k)! * (s)_(2k-1) * N^(1-2k-s), k = 1..7
    corr = 0j
    dcorr = 0j
    poch = s                             # (s)_(2k-1), grown two factors a round
    dpoch = 1.0 + 0j
    npow = n_pow_ms / n_trunc            # N^(-s-1)
    for k, coef in enumerate(_B_OVER_FACT):
        if k:
            for j in (2 * k - 1, 2 * k):
                f = s + j
                dpoch = dpoch * f + poch
                poch = poch * f
            npow /= n_trunc * n_trunc
        corr += coef * poch * npow
        if want_deriv:
            dcorr += coef * npow * (dpoch - poch * ln_big)

    inner = base + n_pow_ms / 2.0 + corr
    n_pow_1ms = cmath.exp((1.0 - s) * ln_big)
    reg = (s - 1.0) * inner + n_pow_1ms
    if not want_deriv:
        return reg, None

    dbase = -(logn * pw).sum()
    dinner = dbase - ln_big * n_pow_ms / 2.0 + dcorr
    dreg = inner + (s - 1.0) * dinner - ln_big * n_pow_1ms
    return reg, dreg


def zeta_reg(s) -> complex:
    """(s-1)*zeta(s), entire, equal to 1 at s = 1."""
    z = _as_complex(s)
    _check_window(z)
    reg, _ = _reg_em(z, False)
    return reg


def zeta(s) -> complex:
    z = _as_complex(s)
    if z == 1.0:
        raise PoleError("zeta has its pole at s = 1")
    _check_window(z)
    reg, _ = _reg_em(z, False)
    return reg / (z - 1.0)


def zeta_logderiv(s) -> complex:
    """zeta'(s)/zeta(s), via termwise differentiation of the summation
    (no finite differences)."""
    z = _as_complex(s)
    if z == 1.0:
        raise PoleError("zeta'/zeta has a pole at s = 1")
    _check_window(z)
    reg, dreg = _reg_em(z, True)
    return dreg / reg - 1.0 / (z - 1.0)


def reg_logderiv(s) -> complex:
    """d/ds ln((s-1)*zeta(s)); finite through s = 1, value gamma there."""
    z = _as_complex(s)
    _check_window(z)
    reg, dreg = _reg_em(z, True)
    return dreg / reg


def log_abs_zeta(s, floor: float = 1e-300) -> float:
    """ln|zeta(s)|.  A modulus below `floor` signals a zero hit and maps to
    -inf rather than raising; the quadrature layer treats that as a spike."""
    z = _as_complex(s)
    if z == 1.0:
        raise PoleError("zeta has its pole at s = 1")
    _check_window(z)
    reg, _ = _reg_em(z, False)
    az = abs(reg / (z - 1.0))
    if az < floor:
        return float("-inf")
    return math.log(az)


def _stirling_log_gamma(z: complex) -> complex:
    out = (z - 0.5) * cmath.log(z) - z + 0.5 * math.log(2.0 * math.pi)
    zpow = z
    z2 = z * z
    for coef in _STIRLING:
        out += coef / zpow
        zpow *= z2
    return out


def log_gamma(s) -> complex:
    """Log-gamma by Stirling series after an argument shift to Re >= 9.
    Real and finite on the positive real axis; continuous along vertical
    lines off the real axis; poles at the nonpositive integers raise."""
    z = _as_complex(s)
    if z.imag == 0.0 and z.real <= 0.0 and z.real == math.floor(z.real):
        raise PoleError(f"log_gamma pole at {z.real:g}")
    shift = 0j
    w = z
    while w.real < 9.0:
        shift += cmath.log(w)
        w += 1.0
    out = _stirling_log_gamma(w) - shift
    if z.imag == 0.0 and z.real > 0.0:
        return complex(out.real, 0.0)
    return out


def digamma(x: float) -> float:
    """psi(x) for real x > 0, asymptotic series after a shift to x >= 10."""
    x = float(x)
    if not math.isfinite(x) or x <= 0.0:
        raise DomainError(f"digamma needs x > 0, got {x!r}")
    acc = 0.0
    y = x
    while y < 10.0:
        acc -= 1.0 / y
        y += 1.0
    out = math.log(y) - 0.5 / y
    ypow = y * y
    y2 = y * y
    for k, b in enumerate(_BERN):
        out -= b / ((2 * (k + 1)) * ypow)
        ypow *= y2
    return out + acc


def hurwitz_zeta(s: float, a: float) -> float:
    """Hurwitz zeta for real s > 1, a > 0, same Euler-Maclaurin scheme as zeta."""
    s = float(s)
    a = float(a)
    if s <= 1.0:
        raise DomainError("hurwitz_zeta implemented for s > 1 only")
    if a <= 0.0:
        raise DomainError("hurwitz_zeta needs a > 0")
    shift = max(0, math.ceil(16.0 - a))
    base = math.fsum((a + j) ** (-s) for j in range(shift))
    t = a + shift
    out = base + t ** (1.0 - s) / (s - 1.0) + 0.5 * t ** (-s)
    poch = s
    tpow = t ** (-s - 1.0)
    for k, coef in enumerate(_B_OVER_FACT):
        if k:
            poch *= (s + 2 * k - 1) * (s + 2 * k)
            tpow /= t * t
        out += coef * poch * tpow
    return out


def polygamma(m: int, x: float) -> float:
    """psi^(m)(x) for x > 0; m >= 1 goes through the Hurwitz zeta identity
    psi^(m)(x) = (-1)^(m+1) m! zeta_H(m+1, x)."""
    if not isinstance(m, (int, np.integer)) or m < 0:
        raise DomainError(f"polygamma order must be an integer >= 0, got {m!r}")
    if x <= 0.0:
        raise DomainError(f"polygamma needs x > 0, got {x!r}")
    if m == 0:
        return digamma(x)
    sign = 1.0 if m % 2 == 1 else -1.0
    return sign * math.factorial(m) * hurwitz_zeta(m + 1.0, float(x))


def xi(s) -> complex:
    """Completed zeta pi^(-s/2) * s*(s-1) * Gamma(s/2) * zeta(s), in the
    normalization with xi(0) = xi(1) = 1.  Computed through the entire
    product 2 * pi^(-s/2) * Gamma(s/2 + 1) * (s-1)*zeta(s), so the removable
    points s = 0, 1 need no special casing.  The trivial-zero points
    s = -2, -4, ... hit the Gamma pole of this factorization and raise."""
    z = _as_complex(s)
    _check_window(z)
    reg = zeta_reg(z)
    lg = log_gamma(z / 2.0 + 1.0)
    return 2.0 * cmath.exp(-z / 2.0 * LN_PI + lg) * reg


class PrimeTable:
    """Immutable sieved prime list up to `limit` (inclusive)."""

    __slots__ = ("limit", "primes")

    def __init__(self, limit: int, primes: np.ndarray):
        self.limit = int(limit)
        primes = np.asarray(primes, dtype=np.int64)
        primes.setflags(write=False)
        self.primes = primes

    def __len__(self):
        return int(self.primes.size)

    def __repr__(self):
        return f"PrimeTable(limit={self.limit}, count={len(self)})"


def sieve_primes(limit: int, memory_budget: int = 2**30) -> PrimeTable:
    """Eratosthenes sieve.  The flag array costs about `limit` bytes; a
    request beyond `memory_budget` raises instead of thrashing."""
    if not isinstance(limit, (int, np.integer)) or limit < 2:
        raise DomainError(f"sieve limit must be an integer >= 2, got {limit!r}")
    if limit + 1 > memory_budget:
        raise CapacityError(
            f"sieve to {limit} needs ~{limit + 1} bytes, budget is {memory_budget}"
        )
    flags = np.ones(limit + 1, dtype=bool)
    flags[:2] = False
    for p in range(2, math.isqrt(int(limit)) + 1):
        if flags[p]:
            flags[p * p :: p] = False
    return PrimeTable(limit, np.flatnonzero(flags))


def exp_integral_e1(z: float) -> float:
    """E1(z) for z > 0: power series below 1, Lentz continued fraction above."""
    if z <= 0.0:
        raise DomainError("E1 needs z > 0")
    if z <= 1.0:
        total = -EULER_GAMMA - math.log(z)
        term = 1.0
        for k in range(1, 30):
            term *= -z / k
            total -= term / k
            if abs(term) < 1e-20:
                break
        return total
    tiny = 1e-300
    b = z + 1.0
    c = 1.0 / tiny
    d = 1.0 / b
    h = d
    for i in range(1, 120):
        a = -i * i
        b += 2.0
        d = 1.0 / (a * d + b)
        c = b + a / c
        delta = c * d
        h *= delta
        if abs(delta - 1.0) < 1e-16:
            break
    return h * math.exp(-z)


def upper_gamma_int(n: int, z: float) -> float:
    """Incomplete Gamma(n, z) for integer n >= 1, closed form."""
    if n < 1:
        raise DomainError("upper_gamma_int needs n >= 1")
    s = 0.0
    t = 1.0
    for j in range(n):
        if j:
            t *= z / j
        s += t
    return math.factorial(n - 1) * math.exp(-z) * s


def prime_tail_estimate(n: int, y: float, limit: float) -> float:
    """Integral-test estimate of sum over primes p > limit of (ln p)^n p^-y,
    using the logarithmic-integral prime density dt/ln t."""
    if y <= 1.0:
        raise DomainError("prime tail diverges for exponent <= 1")
    z = (y - 1.0) * math.log(limit)
    if n == 0:
        return exp_integral_e1(z)
    return upper_gamma_int(n, z) / (y - 1.0) ** n


class PrimeLogZeta(NamedTuple):
    value: float
    raw: float
    tail_estimate: float
    bound: float


# Relative slack on the integral-test tail estimate.  The estimate rides the
# smooth prime density; the residual it cannot see is the prime-count
# fluctuation, measured at a few 1e-4 of the tail across limits 1e6..1e7 in
# calibration runs, so 5e-4 covers it with margin.
TAIL_FLUCTUATION_REL = 5e-4


def log_zeta_primes_detailed(x: float, table: PrimeTable, k_max: int = 60) -> PrimeLogZeta:
    if not x > 1.0:
        raise DomainError(f"prime series for ln zeta diverges at x = {x!r}")
    if k_max < 1:
        raise DomainError("k_max must be >= 1")
    w = table.primes.astype(np.float64) ** (-x)
    wk = w
    parts = []
    for k in range(1, k_max + 1):
        if k > 1:
            wk = wk * w
        parts.append(float(wk.sum()) / k)
    raw = math.fsum(parts)
    # missing prime-power tail beyond the table, k = 1..3 (higher k is dust)
    tail = math.fsum(
        exp_integral_e1((k * x - 1.0) * math.log(table.limit)) / k for k in (1, 2, 3)
    )
    kcut = 3.0 * 2.0 ** (-(k_max + 1) * x) / (k_max + 1)
    bound = TAIL_FLUCTUATION_REL * tail + kcut
    return PrimeLogZeta(raw + tail, raw, tail, bound)


def log_zeta_primes(x: float, table: PrimeTable, k_max: int = 60) -> float:
    """ln zeta(x) from the prime-power series over `table`, truncated at
    k_max powers, with the smooth integral-test tail added back.  The
    uncertainty of that correction is available from the detailed variant."""
    return log_zeta_primes_detailed(x, table, k_max).value
