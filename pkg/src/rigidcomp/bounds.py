"""Closed-form probability bounds for rigid-component emergence in G(n, c/n),
as evaluable functions, plus an exact binomial tail used as an internal
oracle.

Everything here is a pure function.  Probability-type bounds are evaluated in
log-space where direct products would overflow or underflow.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from decimal import Decimal, localcontext
from typing import Any

# Tolerances for the certification grid: the identities are exact algebra,
# slack covers only floating-point evaluation.
IDENTITY_RTOL = 1e-9
LIMIT_TOL = 1e-6


def _check_density_params(a: float, c: float) -> None:
    if not a > 1:
        raise ValueError(f"density ratio must satisfy a > 1, got a={a}")
    if not c > a:
        raise ValueError(f"mean-degree parameter must satisfy c > a, got c={c}, a={a}")


# Working precision for the identity checks; t(a, c) can be ~1e-10 near
# a = 1, where float64 cancellation would swamp a 1e-9 relative tolerance.
_DEC_PRECISION = 50


def t_threshold_exact(a: float, c: float) -> Decimal:
    """t(a, c) = (2a/c)^(a/(a-1)) * exp(-(a+1)/(a-1)) in extended precision."""
    _check_density_params(a, c)
    with localcontext() as ctx:
        ctx.prec = _DEC_PRECISION
        da, dc = Decimal(a), Decimal(c)
        return (2 * da / dc) ** (da / (da - 1)) * (-(da + 1) / (da - 1)).exp()


def t_threshold(a: float, c: float) -> float:
    """Fraction t(a, c) below which G(n, c/n) almost surely has no subgraph
    on at most t*n vertices with edge/vertex ratio >= a:

        t(a, c) = (2a/c)^(a/(a-1)) * exp(-(a+1)/(a-1))
    """
    return float(t_threshold_exact(a, c))


def chernoff_upper(N: float, p: float, delta: float) -> float:
    """Upper tail bound Pr[Bin(N, p) >= (1+delta)Np] <= (e^d / (1+d)^(1+d))^(Np)."""
    if delta < 0:
        raise ValueError(f"delta must be >= 0, got {delta}")
    if not (0 <= p <= 1):
        raise ValueError(f"p must be in [0, 1], got {p}")
    if N < 0:
        raise ValueError(f"N must be >= 0, got {N}")
    return math.exp(chernoff_upper_log(N, p, delta))


def chernoff_upper_log(N: float, p: float, delta: float) -> float:
    """Natural log of chernoff_upper."""
    if delta < 0:
        raise ValueError(f"delta must be >= 0, got {delta}")
    if delta == 0:
        return 0.0
    return N * p * (delta - (1 + delta) * math.log1p(delta))


def exact_binomial_tail(N: int, p: float, x: int) -> float:
    """Exact upper tail Pr[Bin(N, p) >= x], summed with incremental term
    ratios for stability."""
    if not (0 <= x <= N):
        raise ValueError(f"threshold must satisfy 0 <= x <= N, got x={x}, N={N}")
    if not (0 <= p <= 1):
        raise ValueError(f"p must be in [0, 1], got {p}")
    if x == 0:
        return 1.0
    if p == 0:
        return 0.0
    if p == 1:
        return 1.0
    # start at the mode-side term pmf(x) computed in log space, then walk up
    log_term = (
        math.lgamma(N + 1) - math.lgamma(x + 1) - math.lgamma(N - x + 1)
        + x * math.log(p) + (N - x) * math.log1p(-p)
    )
    term = math.exp(log_term)
    total = 0.0
    ratio_p = p / (1 - p)
    for j in range(x, N + 1):
        total += term
        term *= (N - j) / (j + 1) * ratio_p
        if term == 0.0 and total > 0.0:
            break
    return min(total, 1.0)


def exact_binomial_tail_log(N: int, p: float, x: int) -> float:
    """log Pr[Bin(N, p) >= x]; robust when the tail underflows a float."""
    if not (0 <= x <= N):
        raise ValueError(f"threshold must satisfy 0 <= x <= N, got x={x}, N={N}")
    if x == 0 or p == 1:
        return 0.0
    if p == 0:
        return -math.inf
    log_pmf = (
        math.lgamma(N + 1) - math.lgamma(x + 1) - math.lgamma(N - x + 1)
        + x * math.log(p) + (N - x) * math.log1p(-p)
    )
    # sum of relative terms r_j = pmf(j)/pmf(x), accumulated exactly as above
    ratio_p = p / (1 - p)
    rel = 1.0
    total = 0.0
    for j in range(x, N + 1):
        total += rel
        rel *= (N - j) / (j + 1) * ratio_p
        if rel < 1e-18 * total:
            break
    return min(log_pmf + math.log(total), 0.0)


def _check_component_params(n: int, k: int, c: float) -> None:
    if not 4 <= k <= n:
        raise ValueError(f"component size must satisfy 4 <= k <= n, got k={k}, n={n}")
    if not c < n:
        raise ValueError(f"mean degree must satisfy c < n, got c={c}, n={n}")


def _isolation_factor_log(n: int, k: int, c: float) -> float:
    # probability that one outside vertex has at most one neighbor among k
    p = c / n
    q_log = k * math.log1p(-p)
    one_log = math.log(k * p) + (k - 1) * math.log1p(-p)
    hi = max(q_log, one_log)
    return hi + math.log(math.exp(q_log - hi) + math.exp(one_log - hi))


def component_prob_bound(n: int, k: int, c: float, tail_threshold: int | None = None) -> float:
    """Upper bound on the probability that a fixed k-subset spans a rigid
    component of G(n, c/n): the k vertices must induce at least 2k-3 edges
    (binomial tail over k^2/2 potential edges, floor-rounded to an integer
    trial count) and no outside vertex may have two neighbors inside
    (isolation factor to the power n-k).

    tail_threshold overrides the 2k-3 edge threshold (the looser 2k variant
    is used in the rate-function analysis).
    """
    _check_component_params(n, k, c)
    thr = 2 * k - 3 if tail_threshold is None else tail_threshold
    N = (k * k) // 2
    tail = exact_binomial_tail(N, c / n, min(thr, N))
    return tail * math.exp((n - k) * _isolation_factor_log(n, k, c))


def expected_components_bound(n: int, k: int, c: float, tail_threshold: int | None = None) -> float:
    """C(n, k) times component_prob_bound, evaluated in log-space so the
    binomial coefficient cannot overflow.  Bounds E[number of components
    spanning exactly k vertices]."""
    _check_component_params(n, k, c)
    return math.exp(expected_components_bound_log(n, k, c, tail_threshold))


def expected_components_bound_log(n: int, k: int, c: float, tail_threshold: int | None = None) -> float:
    _check_component_params(n, k, c)
    thr = 2 * k - 3 if tail_threshold is None else tail_threshold
    N = (k * k) // 2
    lchoose = math.lgamma(n + 1) - math.lgamma(k + 1) - math.lgamma(n - k + 1)
    ltail = exact_binomial_tail_log(N, c / n, min(thr, N))
    return lchoose + ltail + (n - k) * _isolation_factor_log(n, k, c)


def per_vertex_rate(s: float) -> float:
    """Per-vertex exponential rate of the expected-component bound in the
    limit of mean degree 4 from above; negative means the bound decays:

        s + 2s^2[(1/s - 1) - (1/s) ln(1/s)] + s ln(1/s) + (1-s)(-4s + ln(1+4s))
    """
    if not (0 < s < 1):
        raise ValueError(f"fraction must satisfy 0 < s < 1, got {s}")
    inv = 1.0 / s
    log_inv = math.log(inv)
    return (
        s
        + 2 * s * s * ((inv - 1) - inv * log_inv)
        + s * log_inv
        + (1 - s) * (-4 * s + math.log1p(4 * s))
    )


def per_vertex_rate_eps(s: float, epsilon: float) -> float:
    """Per-vertex rate of the pre-limit bound at mean degree 4 + epsilon.

    Uses the Chernoff bound with delta = (4 - (4+epsilon)s) / (s(epsilon+4)),
    which must be positive, i.e. s < 4/(4+epsilon).
    """
    if not (0 < s < 1):
        raise ValueError(f"fraction must satisfy 0 < s < 1, got {s}")
    if epsilon <= 0:
        raise ValueError(f"epsilon must be > 0, got {epsilon}")
    ce = 4.0 + epsilon
    delta = (4.0 - ce * s) / (s * ce)
    if delta <= 0:
        raise ValueError(
            f"Chernoff hypothesis fails: delta={delta} <= 0 (need s < 4/(4+epsilon))"
        )
    log_inv = math.log(1.0 / s)
    count_term = 0.5 * s * s * ce * (delta - (1 + delta) * math.log1p(delta))
    return (
        s * (1 + log_inv)
        + count_term
        + (1 - s) * (-ce * s + math.log1p(ce * s))
    )


def simplified_rate_at_tenth() -> float:
    """Per-vertex log of 2^(-1/10) * 5^(-1) * 7^(9/10) * e^(-2/25), the
    closed-form value of per_vertex_rate at s = 1/10."""
    return -math.log(2) / 10 - math.log(5) + 9 * math.log(7) / 10 - 2 / 25


def appendix_log_expr(a: float, c: float, t: float | Decimal) -> float:
    """Per-vertex log of the expected count of dense small subgraphs:

        t * (a + 1 - c*t/2 - a*ln(2a/c) + (a-1)*ln(t))

    At t = t_threshold(a, c) this equals -c*t^2/2 exactly.  The bracket is a
    cancellation of O(1) terms down to O(t), so it is evaluated in extended
    precision; pass t as a Decimal (from t_threshold_exact) to keep the whole
    composition at full accuracy.
    """
    _check_density_params(a, c)
    if not t > 0:
        raise ValueError(f"t must be > 0, got {t}")
    with localcontext() as ctx:
        ctx.prec = _DEC_PRECISION
        da, dc = Decimal(a), Decimal(c)
        dt = t if isinstance(t, Decimal) else Decimal(t)
        val = dt * (da + 1 - dc * dt / 2 - da * (2 * da / dc).ln() + (da - 1) * dt.ln())
    return float(val)


def appendix_identity_gap(a: float, c: float) -> float:
    """Relative gap |appendix_log_expr(a, c, t(a,c)) - (-c t(a,c)^2 / 2)| /
    |c t^2 / 2|, with the whole pipeline in extended precision."""
    with localcontext() as ctx:
        ctx.prec = _DEC_PRECISION
        dt = t_threshold_exact(a, c)
        da, dc = Decimal(a), Decimal(c)
        lhs = dt * (da + 1 - dc * dt / 2 - da * (2 * da / dc).ln() + (da - 1) * dt.ln())
        rhs = -dc * dt * dt / 2
        return float(abs(lhs - rhs) / abs(rhs))


def prdense_bound(n: int, t: float, a: float, c: float) -> float:
    """Probability bound that a fixed set of t*n vertices induces at least
    a*t*n edges:

        (e^(2a/(ct)-1) * (2a/(ct))^(-2a/(ct)))^((1/2) c n t^2)

    This is the Chernoff bound at delta = 2a/(ct) - 1, which must be > 0.
    """
    if not t > 0:
        raise ValueError(f"t must be > 0, got {t}")
    delta = 2 * a / (c * t) - 1
    if delta < 0:
        raise ValueError(f"Chernoff hypothesis fails: delta={delta} < 0 (need t <= 2a/c)")
    exponent = 0.5 * c * n * t * t
    return math.exp(exponent * (delta - (1 + delta) * math.log1p(delta)))


@dataclass(frozen=True)
class BoundReport:
    """One evaluated formula, with inputs echoed for replay."""

    formula: str
    params: dict[str, Any]
    value: float

    def to_json_dict(self) -> dict:
        return {"formula": self.formula, "params": self.params, "value": self.value}


@dataclass(frozen=True)
class CheckResult:
    name: str
    ok: bool
    detail: str = ""


def _approx_equal(x: float, y: float, rtol: float) -> bool:
    return abs(x - y) <= rtol * max(abs(x), abs(y), 1e-300)


def certify(expected_grid_n: int = 120) -> list[CheckResult]:
    """Run the full identity / domination grid; every check must pass on a
    correct build."""
    results: list[CheckResult] = []

    # Chernoff dominates the exact tail; equality at delta = 0.
    bad = []
    for N in (10, 25, 50, 100, 200, 500):
        for p in (0.01, 0.05, 0.1, 0.2, 0.3, 0.5):
            for delta in (0.1, 0.25, 0.5, 1.0, 2.0, 3.0):
                bound = chernoff_upper(N, p, delta)
                x = math.ceil((1 + delta) * N * p)
                # a threshold beyond N makes the tail event empty
                tail = exact_binomial_tail(N, p, x) if x <= N else 0.0
                if bound < tail * (1 - 1e-12):
                    bad.append((N, p, delta, bound, tail))
            if chernoff_upper(N, p, 0.0) != 1.0:
                bad.append((N, p, 0.0))
    results.append(CheckResult("chernoff_domination", not bad, f"{len(bad)} violations"))

    # t(a, c) lies in (0, 1) and strictly decreases in c.
    bad = []
    for a in (1.1, 1.25, 1.5, 2.0, 3.0):
        prev = None
        c = a + 0.5
        while c <= 10.0 + 1e-9:
            t = t_threshold(a, c)
            if not (0 < t < 1) or (prev is not None and not t < prev):
                bad.append((a, c, t))
            prev = t
            c += 0.5
    results.append(CheckResult("t_threshold_range_monotone", not bad, f"{len(bad)} violations"))

    # Log-expression identity at t = t(a, c).
    bad = []
    for a in (1.1, 1.25, 1.5, 2.0, 3.0):
        c = a + 0.5
        while c <= 10.0 + 1e-9:
            gap = appendix_identity_gap(a, c)
            if gap > IDENTITY_RTOL:
                bad.append((a, c, gap))
            c += 0.5
    results.append(CheckResult("appendix_identity", not bad, f"{len(bad)} violations"))

    # Rate-function simplification at s = 1/10, and decay on (0, 0.1].
    r1 = per_vertex_rate(0.1)
    r2 = simplified_rate_at_tenth()
    ok = _approx_equal(r1, r2, 1e-10) and r1 < 0
    results.append(CheckResult("rate_tenth_simplification", ok, f"{r1} vs {r2}"))
    bad = [s / 1000 for s in range(1, 101) if per_vertex_rate(s / 1000) >= 0]
    results.append(CheckResult("rate_negative_small_s", not bad, f"{len(bad)} non-negative"))

    # The pre-limit rate converges to the limit rate.
    ok = abs(per_vertex_rate_eps(0.1, 1e-8) - per_vertex_rate(0.1)) < LIMIT_TOL
    results.append(CheckResult("rate_eps_limit", ok))

    # Dense-subgraph bound equals the Chernoff bound under its substitution.
    bad = []
    for a in (1.25, 2.0):
        for c in (4.5, 6.0, 9.0):
            for t in (0.001, 0.01, 0.1):
                if 2 * a / (c * t) <= 1:
                    continue
                direct = prdense_bound(1000, t, a, c)
                via = chernoff_upper(1000, c * t * t / 2, 2 * a / (c * t) - 1)
                if not _approx_equal(direct, via, 1e-12):
                    bad.append((a, c, t))
    results.append(CheckResult("prdense_chernoff_consistency", not bad, f"{len(bad)} violations"))

    # Log-space expectation bound matches the direct product where the
    # direct product is representable.
    bad = []
    for k in (4, 8, 12, 20):
        for c in (2.0, 4.5, 6.0):
            n = expected_grid_n
            direct = math.exp(
                math.lgamma(n + 1) - math.lgamma(k + 1) - math.lgamma(n - k + 1)
            ) * component_prob_bound(n, k, c)
            logspace = expected_components_bound(n, k, c)
            if direct > 0 and not _approx_equal(direct, logspace, 1e-9):
                bad.append((n, k, c, direct, logspace))
    results.append(CheckResult("expectation_log_vs_direct", not bad, f"{len(bad)} violations"))

    return results


_FORMULAS = {
    "t_threshold": (t_threshold, ("a", "c")),
    "chernoff": (chernoff_upper, ("N", "p", "delta")),
    "binomial_tail": (exact_binomial_tail, ("N", "p", "x")),
    "component_prob": (component_prob_bound, ("n", "k", "c")),
    "expected_components": (expected_components_bound, ("n", "k", "c")),
    "rate": (per_vertex_rate, ("s",)),
    "rate_eps": (per_vertex_rate_eps, ("s", "epsilon")),
    "rate_tenth": (simplified_rate_at_tenth, ()),
    "appendix_log": (appendix_log_expr, ("a", "c", "t")),
    "prdense": (prdense_bound, ("n", "t", "a", "c")),
}


def formula_names() -> list[str]:
    return sorted(_FORMULAS)


def evaluate_formula(name: str, params: dict[str, Any]) -> BoundReport:
    """Evaluate a named formula from a flat parameter dict (CLI entry)."""
    if name not in _FORMULAS:
        raise ValueError(f"unknown formula {name!r}; known: {', '.join(formula_names())}")
    fn, argnames = _FORMULAS[name]
    missing = [k for k in argnames if params.get(k) is None]
    if missing:
        raise ValueError(f"formula {name!r} requires parameters: {', '.join(missing)}")
    args = []
    for k in argnames:
        v = params[k]
        args.append(int(v) if k in ("N", "x", "n", "k") else float(v))
    value = fn(*args)
    return BoundReport(formula=name, params=dict(zip(argnames, args)), value=value)
