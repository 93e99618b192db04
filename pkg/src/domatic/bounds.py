"""Log-space evaluation of the inequalities behind the two-phase coloring,
the naive coloring and the random-graph witness.

Everything is a natural log. Quantities like ``k**r`` with ``k ~ 1e39`` are
never formed directly. Thresholds that must separate ``k - 1`` from ``k`` at
that scale are evaluated with mpmath at high precision.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import mpmath

from .errors import InvalidEpsilon, NoFeasibleT, NotFound, TooFewColors
from .lll import symmetric_lll_check_log
from .semirandom import SemirandomParams, compute_params, naive_color_count

SEARCH_CEILING = 10**12
_PRECISION_DPS = 120


def _log_comb(n: int, r: int) -> float:
    if r < 0 or r > n:
        return -math.inf
    return math.lgamma(n + 1) - math.lgamma(r + 1) - math.lgamma(n - r + 1)


@dataclass(frozen=True)
class BoundsReport:
    k: int
    epsilon: float
    C: float
    params: SemirandomParams
    claim1: float            # log of exp(-k q^2 / 2)
    claim2: float            # log of C(t,5) k^-(10 + 2.5 gamma)
    claim2_envelope: float   # log of k^-(5 + 2.5 gamma)
    claim3: float            # log of t^z (Ck)^z (1-p)^(kz)
    phase2: float            # log of (1 - 1/(4z))^(k gamma / (4(2+gamma)))
    dep_phase1: float        # 3 k^4 C^4
    dep_phase2: float        # 5 k^2 C^2
    dep_phase1_exact: float  # 3 (1 + kC + kC(kC-1) + kC(kC-1)^2 + kC(kC-1)^3)
    dep_phase2_exact: float  # 4 (1 + kC + kC(kC-1))
    claim1_ok: bool
    claim2_ok: bool
    claim3_ok: bool
    phase2_ok: bool
    lll_phase1_ok: bool
    lll_phase2_ok: bool

    @property
    def flags(self) -> dict[str, bool]:
        return {
            "claim1_ok": self.claim1_ok,
            "claim2_ok": self.claim2_ok,
            "claim3_ok": self.claim3_ok,
            "phase2_ok": self.phase2_ok,
            "lll_phase1_ok": self.lll_phase1_ok,
            "lll_phase2_ok": self.lll_phase2_ok,
        }

    @property
    def all_ok(self) -> bool:
        return all(self.flags.values())


def two_phase_bounds(k: int, epsilon: float, C: float) -> BoundsReport:
    """Evaluate every per-event bound and Local Lemma application of the
    two-phase argument at a concrete ``k``.

    Claim flags compare against ``1/k^5`` (phase 1) and ``1/k^3`` (phase 2)
    with strict inequality. The Local Lemma flags apply the symmetric
    condition to those envelopes and the envelope dependency degrees, and
    additionally require the per-event bounds they rest on.
    """
    if C < 1:
        raise ValueError(f"C must be at least 1, got {C}")
    prm = compute_params(k, epsilon)
    lnk = math.log(k)
    t, z, p, q, g = prm.t, prm.z, prm.p, prm.q, prm.gamma

    claim1 = -k * q * q / 2
    claim2 = _log_comb(t, 5) - (10 + 2.5 * g) * lnk
    claim2_env = -(5 + 2.5 * g) * lnk
    claim3 = z * math.log(t) + z * math.log(C * k) + k * z * math.log1p(-p)
    phase2 = (k * g / (4 * (2 + g))) * math.log1p(-1 / (4 * z))

    kc = k * C
    dep1 = 3 * kc**4
    dep2 = 5 * kc**2
    dep1_exact = 3 * (1 + kc + kc * (kc - 1) + kc * (kc - 1) ** 2 + kc * (kc - 1) ** 3)
    dep2_exact = 4 * (1 + kc + kc * (kc - 1))

    ok1 = claim1 < -5 * lnk
    ok2 = claim2 < -5 * lnk
    ok3 = claim3 < -5 * lnk
    okp2 = phase2 < -3 * lnk
    lll1 = ok1 and ok2 and ok3 and symmetric_lll_check_log(-5 * lnk, dep1)
    lll2 = okp2 and symmetric_lll_check_log(-3 * lnk, dep2)
    return BoundsReport(k, epsilon, C, prm, claim1, claim2, claim2_env, claim3, phase2,
                        dep1, dep2, dep1_exact, dep2_exact, ok1, ok2, ok3, okp2, lll1, lll2)


@dataclass(frozen=True)
class NaiveBounds:
    t: int
    event_bound: float  # log of (1 - 1/t)^k
    dep: float          # (kC + k^2 C^2) t
    lll_ok: bool


def naive_bounds(k: int, C: float) -> NaiveBounds:
    t = naive_color_count(k)
    if t < 2:
        raise TooFewColors(f"k = {k} gives t = {t} colors")
    bound = k * math.log1p(-1 / t)
    dep = (k * C + (k * C) ** 2) * t
    return NaiveBounds(t, bound, dep, symmetric_lll_check_log(bound, dep))


def _two_phase_ok(k: int, epsilon: float, C: float) -> bool:
    try:
        return two_phase_bounds(k, epsilon, C).all_ok
    except NoFeasibleT:
        return False


def min_k_two_phase(epsilon: float, C: float, ceiling: int = SEARCH_CEILING) -> int:
    """Smallest ``k`` from which every two-phase inequality holds.

    ``gamma`` moves in a sawtooth as ``t`` steps through the integers, so the
    predicate is not monotone right at its threshold. Doubling finds a
    passing ``k`` and bisection a fail-to-pass transition below it; the
    candidate is then pushed past any failure within a few sawtooth periods
    above it.
    """
    if epsilon <= 0:
        raise InvalidEpsilon(f"epsilon must be positive, got {epsilon}")
    if C < 1:
        raise ValueError(f"C must be at least 1, got {C}")
    hi = 4
    while not _two_phase_ok(hi, epsilon, C):
        hi *= 2
        if hi > ceiling:
            raise NotFound(f"no k <= {ceiling} satisfies all inequalities")
    lo = hi // 2
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if _two_phase_ok(mid, epsilon, C):
            hi = mid
        else:
            lo = mid
    k = hi
    while True:
        window = 8 * math.ceil((2 + epsilon) * math.log(k))
        bad = [x for x in range(k + 1, k + window) if not _two_phase_ok(x, epsilon, C)]
        if not bad:
            return k
        k = bad[-1] + 1
        if k > ceiling:
            raise NotFound(f"no k <= {ceiling} satisfies all inequalities")


def failing_flags(k: int, epsilon: float, C: float) -> list[str]:
    """Names of the inequalities that fail at ``k`` (``["NoFeasibleT"]`` if
    ``t`` does not exist there)."""
    try:
        report = two_phase_bounds(k, epsilon, C)
    except NoFeasibleT:
        return ["NoFeasibleT"]
    return [name for name, ok in report.flags.items() if not ok]


# ---- the random-graph witness ------------------------------------------


@dataclass(frozen=True)
class Theorem31Constraints:
    epsilon: float
    g: int
    r: int
    k_e32: int
    k_e33: int
    k_e34: int
    k_e35: int
    k0: int
    ln_k_e35: float


def _mp(x) -> mpmath.mpf:
    return mpmath.mpf(x)


def e34_holds(k: int, epsilon: float, g: int) -> bool:
    """``2 k^r exp(-k eps^2 / (1024 (1 + eps/8))) < 1/3``."""
    with mpmath.workdps(_PRECISION_DPS):
        r = 2 * g + 1
        eps = _mp(epsilon)
        lhs = mpmath.log(2) + r * mpmath.log(k) - k * eps**2 / (1024 * (1 + eps / 8))
        return bool(lhs < -mpmath.log(3))


def e35_holds(k: int, epsilon: float, g: int) -> bool:
    """``k^(eps/4) (1 - eps) - r (ln k)^2 > 1``."""
    with mpmath.workdps(_PRECISION_DPS):
        r = 2 * g + 1
        eps = _mp(epsilon)
        lk = mpmath.log(k)
        return bool(mpmath.exp(eps / 4 * lk) * (1 - eps) - r * lk**2 > 1)


def _threshold(holds: Callable[[int], bool]) -> int:
    """Least ``K`` with ``holds(K)`` and not ``holds(K - 1)``, found by doubling
    from 1 and integer bisection. ``holds(1)`` must be false."""
    if holds(1):
        return 1
    lo, hi = 1, 2
    while not holds(hi):
        lo, hi = hi, hi * 2
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if holds(mid):
            hi = mid
        else:
            lo = mid
    return hi


def theorem31_k0(epsilon: float, g: int) -> Theorem31Constraints:
    if not 0 < epsilon < 1:
        raise InvalidEpsilon(f"epsilon must lie in (0, 1), got {epsilon}")
    if g < 2:
        raise ValueError(f"g must be at least 2, got {g}")
    r = 2 * g + 1
    k32 = math.ceil(48 / mpmath.mpf(epsilon) ** 2)
    k33 = 6 * g * 8 ** (g * g)
    k34 = _threshold(lambda k: e34_holds(k, epsilon, g))
    k35 = _threshold(lambda k: e35_holds(k, epsilon, g))
    return Theorem31Constraints(epsilon, g, r, int(k32), k33, k34, k35,
                                max(int(k32), k33, k34, k35), math.log(k35))


@dataclass(frozen=True)
class EscapeBound:
    t: int
    alpha: float
    alpha_in_range: bool
    log_bound: float


def lemma32_escape_bound(k: int | float, epsilon: float, g: int) -> EscapeBound:
    """Log of ``C(n,t) (1 - (1-p)^t)^(n-t)`` using ``ln C(n,t) <= t ln n``.

    ``t = (1 - alpha) k^(r-1) ln k`` must be an integer for some ``alpha`` in
    ``(eps/2, eps)``; the integer nearest the middle of that range is used.
    ``t = 0`` returns ``-inf``: the empty set dominates no nonempty graph.
    Evaluated with mpmath since ``n = k^r`` leaves float range quickly.
    """
    if not 0 < epsilon < 1:
        raise InvalidEpsilon(f"epsilon must lie in (0, 1), got {epsilon}")
    r = 2 * g + 1
    with mpmath.workdps(40):
        lnk = mpmath.log(k)
        scale = mpmath.exp((r - 1) * lnk) * lnk      # k^(r-1) ln k
        t = int(mpmath.nint((1 - mpmath.mpf(0.75) * epsilon) * scale))
        alpha = float(1 - t / scale) if scale > 0 else math.nan
        in_range = epsilon / 2 < alpha < epsilon
        if t <= 0:
            return EscapeBound(0, alpha, in_range, -math.inf)
        ln_n = r * lnk
        p = (1 + mpmath.mpf(epsilon) / 8) * mpmath.exp(-(r - 1) * lnk)
        miss = mpmath.exp(t * mpmath.log1p(-p))        # (1-p)^t
        bound = t * ln_n + (mpmath.exp(ln_n) - t) * mpmath.log1p(-miss)
        return EscapeBound(t, alpha, in_range, float(bound))


@dataclass(frozen=True)
class ExpectationBound:
    log_bound: float
    ok: bool


def lemma33_expectation_bound(k: int | float, epsilon: float, g: int) -> ExpectationBound:
    """Log of ``2g 2^(2g^2) (1 + eps/8)^(2g^2) / k``; ok when below ``ln(1/3)``."""
    if g < 2:
        raise ValueError(f"g must be at least 2, got {g}")
    if not 0 < epsilon < 1:
        raise InvalidEpsilon(f"epsilon must lie in (0, 1), got {epsilon}")
    log_bound = (math.log(2 * g) + 2 * g * g * math.log(2)
                 + 2 * g * g * math.log1p(epsilon / 8) - math.log(k))
    return ExpectationBound(log_bound, log_bound < -math.log(3))
