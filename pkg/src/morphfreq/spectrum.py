"""Letter-frequency interval enclosures and the bounded-letter mass.

Frequencies of letters are generally irrational, so they are reported as
exact rational intervals. For primitive morphisms the enclosure is rigorous:
the normalized dominant eigenvector lies in the cone spanned by the columns
of any positive power of the incidence matrix, and squaring that power
contracts the cone onto the eigenvector. Otherwise the normalized count
vectors of iterated images are followed directly (exact big integers), with
a trend-aware enclosure of their limit; that path is a labeled heuristic,
cross-checked against a streamed prefix.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import guard_magnitude, max_bigint_bits
from .intervals import Interval, isum
from .morphism import (
    LetterClassification,
    Morphism,
    incidence_matrix,
    primitivity_exponent,
)
from .stream import count_letters, resolve_start

_OUTWARD_BITS = 128          # endpoint grid for enclosure endpoints
_EIGEN_MAX_SQUARINGS = 64
_EIGEN_BIT_BUDGET = 200_000  # soft cap on matrix-entry size, in bits
_POWER_MAX_DOUBLINGS = 256   # cap on doublings of the iteration depth
_POWER_BIT_BUDGET = 200_000
_CROSSCHECK_PREFIX = 100_000


@dataclass(frozen=True, eq=False)
class FrequencyVector:
    """Per-letter interval enclosures of letter frequencies.

    `method` records how the enclosure was obtained ("eigenvector" is
    rigorous, "power-limit" follows iterated image statistics and is
    heuristic); `diagnostic` is "converged", "oscillating" or "inconclusive".
    """

    alphabet: tuple[str, ...]
    intervals: dict[str, Interval]
    method: str
    diagnostic: str
    iterations: int

    def interval(self, letter: str) -> Interval:
        return self.intervals[letter]

    def total(self) -> Interval:
        return isum(self.intervals[a] for a in self.alphabet)

    @property
    def max_width(self) -> Fraction:
        return max(self.intervals[a].width for a in self.alphabet)


@dataclass(frozen=True)
class BoundedMass:
    """Total frequency interval carried by bounded letters."""

    interval: Interval


def bounded_mass(freqs: FrequencyVector, cls: LetterClassification) -> BoundedMass:
    """Interval sum of letter frequencies over bounded letters (empty sum is
    [0, 0]); clamped to [0, 1]."""
    members = [a for a in freqs.alphabet if a in cls.bounded]
    return BoundedMass(isum(freqs.intervals[a] for a in members).clamp(0, 1))


def _validate_tol(tol) -> Fraction:
    tol = Fraction(tol)
    if tol <= 0:
        raise ValueError("tolerance must be positive")
    return tol


def _cone_box(P: list[list[int]], d: int) -> list[Interval]:
    """Enclosure of the normalized dominant eigenvector from one positive
    power P: the eigenvector is a non-negative combination of P's columns,
    so each ratio x_m/x_i lies between the extreme column ratios, and
    1/x_i = 1 + sum_m x_m/x_i sandwiches x_i."""
    box = []
    for i in range(d):
        hi_sum = Fraction(0)
        lo_sum = Fraction(0)
        for m in range(d):
            if m == i:
                continue
            ratios = [Fraction(P[m][j], P[i][j]) for j in range(d)]
            hi_sum += max(ratios)
            lo_sum += min(ratios)
        box.append(Interval(1 / (1 + hi_sum), 1 / (1 + lo_sum)).outward(_OUTWARD_BITS).clamp(0, 1))
    return box


def _eigen_enclosure(phi: Morphism, tol: Fraction) -> tuple[dict[str, Interval], str, int]:
    """Rigorous interval enclosure of the normalized dominant eigenvector.

    Starts from a strictly positive power of the incidence matrix and keeps
    squaring it; the cone spanned by the columns contracts onto the
    eigenvector direction at least geometrically, so the column-ratio box
    shrinks doubly exponentially in the number of squarings. A soft bit
    budget stops the squaring before exact integers become unwieldy.
    """
    p = primitivity_exponent(phi)
    assert p is not None
    d = phi.size
    base = [list(r) for r in incidence_matrix(phi)]

    def matmul(a, b):
        bt = list(zip(*b))
        out = [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]
        guard_magnitude(max(e for row in out for e in row), "eigenvector enclosure")
        return out

    P = [[1 if i == j else 0 for j in range(d)] for i in range(d)]
    e = p
    sq = base
    while e:
        if e & 1:
            P = matmul(P, sq)
        e >>= 1
        if e:
            sq = matmul(sq, sq)

    budget = min(_EIGEN_BIT_BUDGET, max_bigint_bits() // 2)
    box = _cone_box(P, d)
    it = 0
    for it in range(1, _EIGEN_MAX_SQUARINGS + 1):
        if max(iv.width for iv in box) < tol:
            return {a: box[i] for i, a in enumerate(phi.alphabet)}, "converged", it
        if max(e for row in P for e in row).bit_length() * 2 > budget:
            break
        P = matmul(P, P)
        refined = _cone_box(P, d)
        box = [
            (new.intersect(old) or new)
            for new, old in zip(refined, box)
        ]
    diagnostic = "converged" if max(iv.width for iv in box) < tol else "inconclusive"
    return {a: box[i] for i, a in enumerate(phi.alphabet)}, diagnostic, it


def _trend_interval(vals: list[Fraction]) -> Interval:
    """Enclose the limit suggested by the last observations.

    With the iteration depth doubling between observations, the error of a
    geometrically or harmonically converging sequence at most halves per
    step, so a monotone run overshoots its limit by at most twice the last
    difference. Non-monotone windows fall back to their hull.
    """
    last = vals[-1]
    if all(x == last for x in vals):
        return Interval(last, last)
    if all(x >= y for x, y in zip(vals, vals[1:])):
        step = vals[-2] - vals[-1]
        return Interval(last - 2 * step, last).clamp(0, 1)
    if all(x <= y for x, y in zip(vals, vals[1:])):
        step = vals[-1] - vals[-2]
        return Interval(last, last + 2 * step).clamp(0, 1)
    return Interval.hull_of(vals).clamp(0, 1)


def _power_limit(
    phi: Morphism, b: str, tol: Fraction
) -> tuple[dict[str, Interval], str, int]:
    """Follow normalized letter counts of iterated images of b.

    The count vector of the depth-n image is an exact incidence-matrix
    power column; depth doubles per step by squaring. Convergence is
    declared when the trend enclosure over the last four observations is
    narrower than tol for every letter, oscillation when that width stops
    shrinking over eight steps.
    """
    d = phi.size
    j = phi.index(b)

    def matmul(a, bm):
        bt = list(zip(*bm))
        out = [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]
        guard_magnitude(max(e for row in out for e in row), "image statistics iteration")
        return out

    cur = [list(r) for r in incidence_matrix(phi)]
    history: list[list[Fraction]] = []
    widths: list[Fraction] = []
    boxes: dict[str, Interval] = {
        a: Interval(Fraction(0), Fraction(1)) for a in phi.alphabet
    }
    diagnostic = "inconclusive"
    budget = min(_POWER_BIT_BUDGET, max_bigint_bits() // 2)
    it = 0
    for it in range(1, _POWER_MAX_DOUBLINGS + 1):
        col = [cur[i][j] for i in range(d)]
        total = sum(col)
        history.append([Fraction(c, total) for c in col])
        if len(history) >= 4:
            window = history[-4:]
            boxes = {
                a: _trend_interval([w[i] for w in window])
                for i, a in enumerate(phi.alphabet)
            }
            width = max(iv.width for iv in boxes.values())
            widths.append(width)
            if width < tol:
                diagnostic = "converged"
                break
            if len(widths) > 8 and width >= widths[-9]:
                diagnostic = "oscillating"
                break
        if max(e for row in cur for e in row).bit_length() * 2 > budget:
            break
        cur = matmul(cur, cur)
    return boxes, diagnostic, it


def letter_frequencies(phi: Morphism, b: str | None, tol) -> FrequencyVector:
    """Interval enclosures of all letter frequencies of the fixed point at b.

    Primitive morphisms take the rigorous eigenvector route (their letter
    frequencies always exist). Everything else takes the power-limit route,
    whose result is additionally cross-checked against exact counts on a
    streamed 10^5-letter prefix; a mismatch downgrades the diagnostic to
    "oscillating" since the full prefix sequence disagrees with the image
    subsequence.
    """
    tol = _validate_tol(tol)
    b = resolve_start(phi, b)
    if primitivity_exponent(phi) is not None:
        intervals, diagnostic, iters = _eigen_enclosure(phi, tol)
        return FrequencyVector(phi.alphabet, intervals, "eigenvector", diagnostic, iters)
    intervals, diagnostic, iters = _power_limit(phi, b, tol)
    if diagnostic == "converged":
        n = _CROSSCHECK_PREFIX
        counts = count_letters(phi, b, n)
        slack = 10 * tol + Fraction(32, 1000)  # ~10/sqrt(n) sampling slack
        for a in phi.alphabet:
            if abs(Fraction(counts[a], n) - intervals[a].midpoint) > slack:
                diagnostic = "oscillating"
                break
    return FrequencyVector(phi.alphabet, intervals, "power-limit", diagnostic, iters)
