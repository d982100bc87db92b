"""Factor frequency of the fixed point, computed without expanding it.

For a factor v of length L, each letter's level-M image is summarized by its
exact length, its exact v-count, and (when the image is long) just its
boundary windows of L-1 letters. One level step concatenates the summaries
of the image letters: counts add up, plus the occurrences straddling block
boundaries, which a sliding carry of the last L-1 letters makes exact. The
frequency-weighted ratio of counts to lengths over unbounded letters then
converges to the factor frequency, with a guaranteed deviation bound driven
by the smallest unbounded image length at the level.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import DegenerateAlpha, DegenerateSupport, EmptyFactor, guard_magnitude
from .intervals import Interval, isum, quotient
from .morphism import (
    LetterClassification,
    Morphism,
    classify_letters,
    iterate_length,
)
from .spectrum import BoundedMass, FrequencyVector, bounded_mass, letter_frequencies
from .stream import EmpiricalSeries, empirical_series, resolve_start
from .words import Word, count_occurrences, seam_count, window_prefix, window_suffix

DEFAULT_MAX_LEVEL = 64
_VACUOUS_SPREAD = Fraction(3)
_STABLE_LEVELS = 4
_DEGENERATE_EMPIRICAL_N = 10_000


@dataclass(frozen=True)
class LevelSummary:
    """Exact per-letter statistics of the level-M image for one factor.

    `full` holds the whole image word when it has at most 2(L-1) letters
    (short blocks must stay exact for seam counting); longer images keep
    only their L-1 letter boundary windows in `prefix`/`suffix`.
    """

    letter: str
    level: int
    length: int
    count: int
    full: Word | None
    prefix: Word
    suffix: Word


def _summarize(letter: str, level: int, wordlike, v: Word) -> LevelSummary:
    k = len(v) - 1
    w = tuple(wordlike)
    return LevelSummary(
        letter=letter,
        level=level,
        length=len(w),
        count=count_occurrences(w, v),
        full=w if len(w) <= 2 * k else None,
        prefix=window_prefix(w, k),
        suffix=window_suffix(w, k),
    )


def _validate_factor(phi: Morphism, v) -> Word:
    v = tuple(v)
    if not v:
        raise EmptyFactor("factor must have at least one letter")
    for c in v:
        phi.index(c)  # raises UnknownLetter
    return v


def initial_summaries(phi: Morphism, v) -> dict[str, LevelSummary]:
    """Level-1 summaries, by direct counting on the images."""
    v = _validate_factor(phi, v)
    return {a: _summarize(a, 1, phi.image(a), v) for a in phi.alphabet}


def advance_summaries(
    phi: Morphism, v, summaries: dict[str, LevelSummary]
) -> dict[str, LevelSummary]:
    """Summaries at the next level, via exact concatenation bookkeeping.

    Occurrences of v either lie inside one block (already counted in that
    block's summary) or end in some block having started earlier; the latter
    are counted at the boundary where they end, against a carry holding the
    last L-1 letters seen so far. The carry crosses short blocks unchanged,
    which is why short blocks are kept whole.
    """
    v = _validate_factor(phi, v)
    k = len(v) - 1
    level = next(iter(summaries.values())).level + 1
    out: dict[str, LevelSummary] = {}
    for a in phi.alphabet:
        blocks = [summaries[c] for c in phi.image(a)]
        length = 0
        count = 0
        carry: Word = ()
        for blk in blocks:
            length += blk.length
            count += blk.count
            if k > 0:
                if carry:
                    head = blk.full if blk.full is not None else blk.prefix
                    count += seam_count(carry, head, v)
                if blk.full is not None:
                    carry = window_suffix(carry + blk.full, k)
                else:
                    carry = blk.suffix
        guard_magnitude(length, "image length recurrence")
        if length <= 2 * k:
            # Every block is itself short, hence fully materialized.
            whole: tuple = ()
            for blk in blocks:
                whole += blk.full
            out[a] = LevelSummary(a, level, length, count, whole,
                                  window_prefix(whole, k), window_suffix(whole, k))
        else:
            pre: tuple = ()
            for blk in blocks:
                pre += blk.full if blk.full is not None else blk.prefix
                if len(pre) >= k:
                    break
            suf: tuple = ()
            for blk in reversed(blocks):
                piece = blk.full if blk.full is not None else blk.suffix
                suf = piece + suf
                if len(suf) >= k:
                    break
            out[a] = LevelSummary(a, level, length, count, None,
                                  window_prefix(pre, k), window_suffix(suf, k))
    return out


def level_summaries(phi: Morphism, v, level: int) -> dict[str, LevelSummary]:
    """Exact counts, lengths and windows of every letter's level-M image."""
    if level < 1:
        raise ValueError("level must be >= 1")
    summaries = initial_summaries(phi, v)
    for _ in range(level - 1):
        summaries = advance_summaries(phi, v, summaries)
    return summaries


@dataclass(frozen=True)
class LevelRatio:
    """Enclosure of the frequency-weighted count/length ratio at one level."""

    level: int
    interval: Interval


def level_ratio(
    summaries: dict[str, LevelSummary],
    freqs: FrequencyVector,
    cls: LetterClassification,
) -> LevelRatio:
    """Ratio of frequency-weighted v-counts to lengths over unbounded letters.

    Bounded letters are excluded: their contributions are absorbed by the
    error bound. Raises DegenerateSupport when the denominator interval
    touches zero, i.e. the unbounded letters may carry no frequency mass and
    the ratio is 0/0.
    """
    members = [a for a in freqs.alphabet if a in cls.unbounded]
    if not members:
        raise DegenerateSupport("no unbounded letters")
    level = summaries[members[0]].level
    num = isum(freqs.interval(a).scale(summaries[a].count) for a in members)
    den = isum(freqs.interval(a).scale(summaries[a].length) for a in members)
    if den.hi == 0 or den.lo == 0:
        raise DegenerateSupport(
            "unbounded letters may carry zero frequency mass (ratio is 0/0)"
        )
    box = quotient(num, den).clamp(0, 1)
    # The exact ratio is a frequency-weighted mediant of per-letter ratios,
    # so it also lies in their hull over possible contributors.
    hull = Interval.hull_of(
        Fraction(summaries[a].count, summaries[a].length)
        for a in members
        if freqs.interval(a).hi > 0
    )
    tightened = box.intersect(hull)
    return LevelRatio(level, tightened if tightened is not None else box)


@dataclass(frozen=True)
class ErrorBound:
    """Guaranteed deviation bound of the level ratio from the frequency.

    `spread_limit` is the smallest oscillation the level's minimum unbounded
    image length is consistent with; the true frequency lies within
    `deviation` = 2/3 * spread_limit of the level ratio. Bounds at or above
    a spread of 3 say nothing (frequencies live in [0, 1]) and are flagged
    vacuous rather than clamped.
    """

    level: int
    spread_limit: Fraction
    deviation: Fraction
    min_image_length: int
    vacuous: bool


def guaranteed_error_bound(
    cls: LetterClassification,
    mass: BoundedMass,
    factor_len: int,
    level: int,
    phi: Morphism,
) -> ErrorBound:
    """Invert the level-threshold inequality into a bound at this level.

    A level M supports oscillation spread D as soon as every unbounded image
    length g satisfies g >= max(6(L + a*k1)/((1-a)D), k1*a*(6-D)/((1-a)D))
    where a is the bounded mass; solving both parts for D at the observed
    minimum length g gives the smallest consistent spread
        D = max(6(L + a*k1)/((1-a)g), 6*k1*a/((1-a)g + k1*a)),
    evaluated at the upper end of the a-interval (both parts increase in a).
    """
    if not cls.unbounded:
        raise DegenerateSupport("no unbounded letters")
    if factor_len < 1:
        raise ValueError("factor length must be >= 1")
    if level < 1:
        raise ValueError("level must be >= 1")
    mass_hi = mass.interval.hi
    if mass_hi >= 1:
        raise DegenerateAlpha("bounded-letter mass reaches 1")
    g = min(iterate_length(phi, a, level) for a in cls.unbounded)
    k1 = cls.k1
    first = Fraction(6) * (factor_len + mass_hi * k1) / ((1 - mass_hi) * g)
    second = Fraction(6) * k1 * mass_hi / ((1 - mass_hi) * g + k1 * mass_hi)
    spread = max(first, second)
    return ErrorBound(
        level=level,
        spread_limit=spread,
        deviation=Fraction(2, 3) * spread,
        min_image_length=g,
        vacuous=spread >= _VACUOUS_SPREAD,
    )


@dataclass(frozen=True)
class LevelRecord:
    level: int
    ratio: Interval
    bound: ErrorBound | None


@dataclass(frozen=True, eq=False)
class FactorFrequencyReport:
    """Everything one factor-frequency analysis produced.

    `verdict` is "converged", "level-cap-reached" or "degenerate-support";
    `bound_based` tells whether convergence came from the guaranteed
    envelope (as opposed to the stabilization heuristic used when the bound
    is unavailable or vacuous)."""

    factor: Word
    start: str
    verdict: str
    estimate: Interval
    levels: tuple[LevelRecord, ...]
    bound_based: bool
    degenerate_alpha: bool
    freq_method: str
    freq_diagnostic: str
    empirical: EmpiricalSeries | None
    empirical_consistent: bool | None


def _stabilized(ratios: list[Interval], tol: Fraction) -> bool:
    if len(ratios) < _STABLE_LEVELS:
        return False
    window = ratios[-_STABLE_LEVELS:]
    if any(iv.width > tol for iv in window):
        return False
    return all(x.gap(y) <= tol for x, y in zip(window, window[1:]))


def _empirical_checkpoints(n: int) -> list[int]:
    cps = sorted({max(1, n // 100), max(1, n // 10), n})
    return cps


def estimate_frequency(
    phi: Morphism,
    b: str | None,
    v,
    tol,
    max_level: int = DEFAULT_MAX_LEVEL,
    empirical_check: int | None = None,
) -> FactorFrequencyReport:
    """Estimate the frequency of v in the fixed point at b.

    Advances the level recurrence one level at a time, enclosing the level
    ratio and its guaranteed envelope; stops when the envelope is narrower
    than tol, or when ratios stabilize for four levels (the fallback when
    the bound is unavailable or vacuous), or at max_level. A degenerate
    denominator switches to a purely empirical estimate, clearly labeled.
    """
    tol = Fraction(tol)
    if tol <= 0:
        raise ValueError("tolerance must be positive")
    if max_level < 1:
        raise ValueError("max_level must be >= 1")
    b = resolve_start(phi, b)
    v = _validate_factor(phi, v)
    cls = classify_letters(phi)
    freqs = letter_frequencies(phi, b, tol / 16)
    mass = bounded_mass(freqs, cls)

    levels: list[LevelRecord] = []
    ratios: list[Interval] = []
    running: Interval | None = None
    degenerate_alpha = False
    summaries = initial_summaries(phi, v)
    verdict = "level-cap-reached"
    bound_based = False
    estimate: Interval | None = None

    for level in range(1, max_level + 1):
        try:
            ratio = level_ratio(summaries, freqs, cls)
        except DegenerateSupport:
            n_emp = empirical_check or _DEGENERATE_EMPIRICAL_N
            series = empirical_series(
                phi, b, v, _empirical_checkpoints(n_emp), burn_in=max(0, n_emp // 100)
            )
            final_ratio = series.checkpoints[-1][2]
            return FactorFrequencyReport(
                factor=v,
                start=b,
                verdict="degenerate-support",
                estimate=Interval.point(final_ratio),
                levels=(),
                bound_based=False,
                degenerate_alpha=mass.interval.hi >= 1,
                freq_method=freqs.method,
                freq_diagnostic=freqs.diagnostic,
                empirical=series,
                empirical_consistent=None,
            )
        try:
            bound = guaranteed_error_bound(cls, mass, len(v), level, phi)
        except DegenerateAlpha:
            bound = None
            degenerate_alpha = True
        levels.append(LevelRecord(level, ratio.interval, bound))
        ratios.append(ratio.interval)

        if bound is not None and not bound.vacuous:
            envelope = ratio.interval.widen(bound.deviation).clamp(0, 1)
            merged = running.intersect(envelope) if running is not None else envelope
            running = merged if merged is not None else envelope
            if envelope.width <= tol:
                verdict = "converged"
                bound_based = True
                estimate = running
                break
        elif _stabilized(ratios, tol):
            verdict = "converged"
            bound_based = False
            stable = ratios[-_STABLE_LEVELS:]
            hull = stable[0]
            for iv in stable[1:]:
                hull = hull.hull(iv)
            estimate = hull if running is None else (running.intersect(hull) or hull)
            break
        if level < max_level:
            summaries = advance_summaries(phi, v, summaries)

    if estimate is None:
        estimate = running if running is not None else ratios[-1]

    series = None
    consistent = None
    if empirical_check:
        series = empirical_series(
            phi, b, v,
            _empirical_checkpoints(empirical_check),
            burn_in=max(0, empirical_check // 100),
        )
        emp_ratio = series.checkpoints[-1][2]
        last = levels[-1]
        if last.bound is not None:
            consistent = (
                abs(emp_ratio - last.ratio.midpoint) <= last.bound.deviation + tol
            )
        else:
            consistent = estimate.distance_to(emp_ratio) <= tol

    return FactorFrequencyReport(
        factor=v,
        start=b,
        verdict=verdict,
        estimate=estimate,
        levels=tuple(levels),
        bound_based=bound_based,
        degenerate_alpha=degenerate_alpha,
        freq_method=freqs.method,
        freq_diagnostic=freqs.diagnostic,
        empirical=series,
        empirical_consistent=consistent,
    )
