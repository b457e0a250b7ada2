"""Threshold solvers: hashing-bound brackets, Monte Carlo population
dynamics for the concatenated [[7,1,3]] code, entropy matching and
crash-probability estimates for the [[23,1,7]] code, and the small
closed-form estimates built on top of them.

All deterministic solvers are plain bisections; the Monte Carlo verdict
uses counter-based random streams keyed by (seed, level) so results are
reproducible and levels could be drawn independently.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from math import e, log2

import numpy as np

from .codes import (
    CrashPolynomial,
    combine_classes,
    crash_poly_2317,
    decompose_713,
    distance_classes_from_x,
    first_level_fidelity,
    golay_sector_entropy,
    postselect_classes,
    recover_713,
)
from .noise import Depolarizing, Forward, model_family
from .postselect import (
    NoConvergenceError,
    combined_noise,
    indep_fixed_point,
    model_teleport_output,
)


class BracketError(RuntimeError):
    """A bisection could not bracket the requested crossing."""


def shannon_entropy(dist) -> float:
    """Entropy in bits of a probability vector."""
    dist = np.asarray(dist, dtype=float)
    nz = dist[dist > 0]
    return float(-(nz * np.log2(nz)).sum())


def teleport_entropy(model) -> float:
    """Entropy of the teleported error distribution at the model's
    post-selection fixed point; infinite when the iteration breaks
    down (far above threshold)."""
    try:
        return shannon_entropy(model_teleport_output(model))
    except NoConvergenceError:
        return float("inf")


def _resolve_family(family):
    if isinstance(family, str):
        return model_family(family)
    return family


def hashing_threshold(
    family,
    lo: float = 1e-3,
    hi: float = 0.25,
    tol: float = 1e-6,
    extend: bool = True,
) -> float:
    """Error rate at which the teleported distribution's entropy reaches
    one bit, i.e. where the hashing rate 1 - H crosses zero.

    family is a model-family name or a callable p -> model.  The initial
    bracket [lo, hi] is widened automatically unless extend is False;
    BracketError is raised if no bracket exists below 0.5.
    """
    fam = _resolve_family(family)

    def above(p):
        return teleport_entropy(fam(p)) >= 1.0

    for _ in range(60):
        if above(lo):
            if not extend or lo < 1e-12:
                raise BracketError("entropy already exceeds one bit at lo=%g" % lo)
            lo /= 2.0
        else:
            break
    else:
        raise BracketError("no below-threshold point found")
    for _ in range(60):
        if not above(hi):
            if not extend or hi >= 0.4999:
                raise BracketError("entropy stays below one bit up to hi=%g" % hi)
            hi = min(1.5 * hi, 0.4999)
        else:
            break
    else:
        raise BracketError("no above-threshold point found")

    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if above(mid):
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)


def sweep_r(r_values=None, points: int = 11, **kwargs):
    """Depolarizing hashing threshold as a function of the measurement
    error fraction r; returns a list of (r, threshold) pairs, with NaN
    thresholds where the solve fails."""
    if r_values is None:
        r_values = [i / (points - 1) for i in range(points)]
    out = []
    for r in r_values:
        rr = float(r)
        try:
            thr = hashing_threshold(lambda p: Depolarizing(p, r=rr), **kwargs)
        except (BracketError, ValueError):
            thr = float("nan")
        out.append((rr, thr))
    return out


# ---------------------------------------------------------------------------
# hashing capacities of fixed one-parameter channels


def capacity_one_type(tol: float = 1e-9) -> float:
    """Flip rate p of a single-type channel (0, 0, p) at which its
    sector entropy h(p) reaches half a bit."""
    lo, hi = 0.0, 0.5

    def h(p):
        return shannon_entropy([1 - p, p])

    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if h(mid) < 0.5:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def capacity_three_type(tol: float = 1e-9) -> float:
    """Error rate p of the symmetric channel (p, p, p) at which the full
    distribution's entropy reaches one bit."""
    lo, hi = 0.0, 1.0 / 3.0

    def h(p):
        return shannon_entropy([1 - 3 * p, p, p, p])

    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if h(mid) < 1.0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


# ---------------------------------------------------------------------------
# Monte Carlo population dynamics on the concatenated [[7,1,3]] code


@dataclass(frozen=True)
class McConfig:
    """Settings for the population-dynamics verdict.

    population is the number of tracked conditional distributions; a
    level resamples each individual from seven parents.  Randomness is
    drawn from counter-based streams keyed by (seed, level).
    """

    population: int = 10_000
    levels: int = 12
    seed: int = 1
    target_infidelity: float = 1e-6
    chunk: int = 8192


def mc_verdict(dist0, config: McConfig = McConfig()):
    """Verdict ('below', 'above' or 'inconclusive', level) for the
    concatenation flow started from error distribution dist0.

    Below threshold: the population-mean infidelity drops under
    target_infidelity within the level budget.  Above: the mean
    infidelity exceeds its level-0 value at three consecutive levels
    after level 4.
    """
    dist0 = np.asarray(dist0, dtype=float)
    pop = config.population
    popn = np.tile(dist0, (pop, 1))
    inf0 = 1.0 - dist0[0]
    worse = 0
    for level in range(1, config.levels + 1):
        rng = np.random.default_rng((config.seed, level))
        idx = rng.integers(0, pop, size=(pop, 7))
        children = popn[idx]
        weights = np.empty((pop, 64))
        cond = np.empty((pop, 64, 4))
        for start in range(0, pop, config.chunk):
            stop = min(start + config.chunk, pop)
            joint = decompose_713(children[start:stop])
            weights[start:stop], cond[start:stop] = recover_713(joint)
        u = rng.random(pop)
        cum = np.cumsum(weights, axis=1)
        pick = np.minimum((cum < u[:, None]).sum(axis=1), 63)
        popn = cond[np.arange(pop), pick]
        infidelity = 1.0 - popn[:, 0].mean()
        if infidelity < config.target_infidelity:
            return "below", level
        if level > 4:
            worse = worse + 1 if infidelity > inf0 else 0
            if worse >= 3:
                return "above", level
    return "inconclusive", config.levels


def concat_threshold_mc(
    dist_fn,
    lo: float,
    hi: float,
    config: McConfig = McConfig(),
    tol: float = 2e-4,
    check_bracket: bool = True,
) -> float:
    """Bisect the population-dynamics verdict between lo (below) and hi
    (above).  dist_fn maps the error rate to the level-0 distribution.
    Inconclusive verdicts count as above, so the estimate errs low.
    """

    def is_below(p):
        verdict, _ = mc_verdict(dist_fn(p), config)
        return verdict == "below"

    if check_bracket:
        if not is_below(lo):
            raise BracketError("population does not converge at lo=%g" % lo)
        if is_below(hi):
            raise BracketError("population still converges at hi=%g" % hi)
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if is_below(mid):
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def mc_threshold_error_bar(
    dist_fn,
    lo: float,
    hi: float,
    config: McConfig = McConfig(),
    n_seeds: int = 10,
    tol: float = 2e-4,
):
    """Mean and sample standard deviation of the Monte Carlo threshold
    over n_seeds independent seeds (at least 10 for a meaningful bar),
    plus the individual estimates."""
    if n_seeds < 2:
        raise ValueError("need at least two seeds for an error bar")
    estimates = []
    for i in range(n_seeds):
        cfg = replace(config, seed=config.seed + i)
        estimates.append(
            concat_threshold_mc(dist_fn, lo, hi, cfg, tol=tol, check_bracket=False)
        )
    arr = np.asarray(estimates)
    return float(arr.mean()), float(arr.std(ddof=1)), estimates


def one_type_dist(p: float) -> np.ndarray:
    """Level-0 distribution of the single-type channel (0, 0, p)."""
    return np.array([1.0 - p, 0.0, 0.0, p])


def model_level0(family):
    """Level-0 distribution family: the teleported error distribution at
    the model's post-selection fixed point, as a function of rate."""
    fam = _resolve_family(family)

    def dist_fn(p):
        return model_teleport_output(fam(p))

    return dist_fn


# ---------------------------------------------------------------------------
# [[23,1,7]] entropy matching


def golay_pair_entropy(dist) -> float:
    """Sum of the two sector entropies of the [[23,1,7]] syndrome
    decoder for a teleported error distribution: bit flips occur at
    rate p_X + p_Y, phase flips at p_Z + p_Y."""
    dist = np.asarray(dist, dtype=float)
    return golay_sector_entropy(dist[1] + dist[2]) + golay_sector_entropy(
        dist[3] + dist[2]
    )


def model_pair_entropy(model) -> float:
    """golay_pair_entropy at the model's fixed point."""
    return golay_pair_entropy(model_teleport_output(model))


def entropy_match_threshold(
    family,
    target_entropy: float,
    lo: float,
    hi: float,
    tol: float = 1e-7,
) -> float:
    """Error rate at which the model family's sector-summed [[23,1,7]]
    entropy equals target_entropy (bisection; the entropy increases
    with the rate)."""
    fam = _resolve_family(family)

    def value(p):
        return model_pair_entropy(fam(p))

    if value(lo) > target_entropy or value(hi) < target_entropy:
        raise BracketError("entropy target not bracketed by [%g, %g]" % (lo, hi))
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if value(mid) < target_entropy:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


# ---------------------------------------------------------------------------
# crash probabilities


def forward_combined_diagonal(pf: float) -> float:
    """Sector diagonal of the teleported error for forward noise at rate
    pf, from the decoupled fixed point."""
    f = 1.0 - 2.0 * pf
    fp = indep_fixed_point(f, 1.0, 1.0)
    return combined_noise(fp.x_g, f, 1.0)


def crash_difference_threshold(
    poly: CrashPolynomial,
    delta: float,
    p_baseline: float,
    lo: float = 1e-4,
    tol: float = 1e-9,
) -> float:
    """Forward rate p at which the code's crash probability sits delta
    below its value at p_baseline, i.e. the rate whose crash margin
    equals the degeneracy correction delta."""
    base = poly(forward_combined_diagonal(p_baseline))

    def margin(p):
        return (poly(forward_combined_diagonal(p)) - base) / 2.0

    hi = p_baseline
    if margin(lo) < delta:
        raise BracketError("crash margin never reaches delta above lo=%g" % lo)
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if margin(mid) > delta:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


# ---------------------------------------------------------------------------
# fixed-fidelity points (where one level of encoding stops helping)


def _forward_class_state(pf: float, tol: float = 1e-15):
    """Fixed point of the class-level recursion for forward noise:
    good and bad ancilla class distributions and the gate class
    distribution."""
    gate = distance_classes_from_x(1.0 - 2.0 * pf)
    good = [1.0, 0.0, 0.0, 0.0]
    for _ in range(100_000):
        bad = combine_classes(combine_classes(good, good), gate)
        _, good2 = postselect_classes(bad, combine_classes(bad, gate))
        delta = max(abs(a - b) for a, b in zip(good, good2))
        good = good2
        if delta < tol:
            break
    bad = combine_classes(combine_classes(good, good), gate)
    return good, bad, gate


def _forward_class_level1(pf: float) -> float:
    """Probability that the teleported pattern lies in a correctable
    class (0 or 1) for the class-level forward recursion."""
    good, bad, gate = _forward_class_state(pf)
    teleported = combine_classes(good, combine_classes(bad, gate))
    return teleported[0] + teleported[1]


def fixed_fidelity_point(code: str, family: str, tol: float = 1e-9):
    """Error rate and fidelity at which one level of encoding leaves the
    fidelity unchanged, i.e. where first-level and unencoded fidelities
    cross.

    Supported: ('713', 'knill' | 'depolarizing' | 'forward') and
    ('2317', 'forward').  Returns (rate, fidelity).
    """
    if code == "713" and family in ("knill", "depolarizing"):
        fam = model_family(family)

        def gap(p):
            dist = model_teleport_output(fam(p))
            return first_level_fidelity(dist) - float(dist[0])

        lo, hi = 0.02, 0.065
        if gap(lo) <= 0 or gap(hi) >= 0:
            raise BracketError("no fixed-fidelity crossing in [%g, %g]" % (lo, hi))
        while hi - lo > tol:
            mid = 0.5 * (lo + hi)
            if gap(mid) > 0:
                lo = mid
            else:
                hi = mid
        p = 0.5 * (lo + hi)
        return p, float(model_teleport_output(fam(p))[0])

    if code == "713" and family == "forward":
        # per-sector class recursion; both sectors are identical, so the
        # joint fidelity is the square of the sector fidelity
        def gap(pf):
            return _forward_class_level1(pf) - (1.0 + forward_combined_diagonal(pf)) / 2.0

        lo, hi = 0.02, 0.04
        if gap(lo) <= 0 or gap(hi) >= 0:
            raise BracketError("no fixed-fidelity crossing in [%g, %g]" % (lo, hi))
        while hi - lo > tol:
            mid = 0.5 * (lo + hi)
            if gap(mid) > 0:
                lo = mid
            else:
                hi = mid
        pf = 0.5 * (lo + hi)
        return pf, ((1.0 + forward_combined_diagonal(pf)) / 2.0) ** 2

    if code == "2317" and family == "forward":
        poly = crash_poly_2317()
        # the sector diagonal is unchanged by one level exactly when
        # f23(c) = c; find that c, then the rate that produces it
        lo_c, hi_c = 0.5, 0.999999
        if poly(lo_c) >= lo_c or poly(hi_c) <= hi_c:
            raise BracketError("no nontrivial f23 fixed point bracketed")
        while hi_c - lo_c > tol:
            mid = 0.5 * (lo_c + hi_c)
            if poly(mid) < mid:
                lo_c = mid
            else:
                hi_c = mid
        c_star = 0.5 * (lo_c + hi_c)

        lo_p, hi_p = 1e-4, 0.2
        while hi_p - lo_p > tol:
            mid = 0.5 * (lo_p + hi_p)
            if forward_combined_diagonal(mid) > c_star:
                lo_p = mid
            else:
                hi_p = mid
        pf = 0.5 * (lo_p + hi_p)
        return pf, ((1.0 + c_star) / 2.0) ** 2

    raise ValueError("unsupported fixed-fidelity pair (%r, %r)" % (code, family))


# ---------------------------------------------------------------------------
# convergence and overhead estimates

#: level scaling exponent log2 log2 e of the double-exponential flow
ALPHA_CONVERGENCE = log2(log2(e))


def convergence_delta(t_c: float, t: float, d: int, level: int) -> float:
    """Margin (t_c - t) d**(level * alpha) / t_c that a rate t below the
    threshold t_c retains after `level` levels of distance-d encoding."""
    return (t_c - t) * d ** (level * ALPHA_CONVERGENCE) / t_c


def overhead_success(p: float, n: int) -> float:
    """Probability (1 - p)**n that n independently post-selected steps
    all succeed."""
    return (1.0 - p) ** n


def overhead_exponent(p: float, base: float) -> float:
    """Per-step decay exponent -log_base(1 - p) of the success
    probability."""
    return -np.log1p(-p) / np.log(base)
