"""Acceptance gate: one test per criterion, each printing a pass/fail line.

Run with `pytest tests/test_acceptance.py -v -s` to see the lines and
timings. Every tolerance is pinned here, not configurable.
"""

import json
import random
import time
from fractions import Fraction
from functools import lru_cache

import pytest

from helpers import codec_of, distinct_factors, encode, expand_str, find_count
from morphfreq import (
    advance_summaries,
    bounded_mass,
    classify_letters,
    corpus,
    empirical_factor_count,
    estimate_frequency,
    guaranteed_error_bound,
    initial_summaries,
    iterate_length,
    letter_frequencies,
    level_ratio,
    level_summaries,
)
from morphfreq.cli import main
from morphfreq.errors import DegenerateAlpha, DegenerateSupport

SEED = 20250810
GOLDEN = Fraction(6180339887, 10**10)


@lru_cache(maxsize=1)
def random_set():
    rng = random.Random(SEED)
    return [corpus.random_morphism(rng, max_letters=4, max_image_len=4)
            for _ in range(500)]


def report(number, label, started):
    print(f"ACCEPTANCE {number}: PASS - {label} ({time.time() - started:.1f}s)")


def test_criterion_1_recurrence_vs_expansion_oracle():
    started = time.time()
    pairs = 0
    for index, phi in enumerate(random_set()):
        codec = codec_of(phi)
        expansions = {
            a: [expand_str(phi, codec, a, m) for m in range(9)]
            for a in phi.alphabet
        }
        inventory = set()
        for a in phi.alphabet:
            inventory |= distinct_factors(expansions[a][8], 4)
        back = {codec[a]: a for a in phi.alphabet}
        factors = sorted(tuple(back[c] for c in f) for f in inventory)
        # a couple of absent factors keep the zero-count path honest
        rng = random.Random(SEED + index)
        for _ in range(2):
            cand = tuple(rng.choice(phi.alphabet) for _ in range(4))
            if encode(codec, cand) not in inventory:
                factors.append(cand)
        for v in factors:
            pairs += 1
            pat = encode(codec, v)
            s = initial_summaries(phi, v)
            for level in range(1, 9):
                for a in phi.alphabet:
                    full = expansions[a][level]
                    assert s[a].count == find_count(full, pat)
                    assert s[a].length == len(full)
                if level < 8:
                    s = advance_summaries(phi, v, s)
    report(1, f"recurrence equals expansion on 500 morphisms, {pairs} factor runs, "
              "levels 1..8, exact", started)


def test_criterion_2_classification_oracle():
    started = time.time()
    for phi in random_set():
        cls = classify_letters(phi)
        window = 2 * phi.size
        for a in phi.alphabet:
            if a in cls.bounded:
                tail = {iterate_length(phi, a, n) for n in range(64 - window, 65)}
                assert len(tail) == 1
            else:
                assert iterate_length(phi, a, 64) > iterate_length(phi, a, 32)
    report(2, "classification agrees with length-growth oracle on 500 morphisms",
           started)


def test_criterion_3_fibonacci_letter_frequency():
    started = time.time()
    phi = corpus.load("fibonacci")
    freqs = letter_frequencies(phi, "a", Fraction(1, 10**6))
    iv = freqs.interval("a")
    assert freqs.method == "eigenvector"
    assert iv.width <= Fraction(1, 10**6)
    assert iv.contains(GOLDEN)
    count, ratio = empirical_factor_count(phi, "a", ("a",), 10**6)
    assert abs(ratio - iv.midpoint) <= Fraction(1, 10**3)
    report(3, f"fibonacci letter frequency enclosed at width {float(iv.width):.2e}, "
              f"empirical at 10^6 within 1e-3", started)


def test_criterion_4_fibonacci_factor_frequency():
    started = time.time()
    phi = corpus.load("fibonacci")
    rep = estimate_frequency(phi, "a", ("a", "b"), Fraction(1, 10**3))
    assert rep.verdict == "converged"
    _, empirical = empirical_factor_count(phi, "a", ("a", "b"), 10**7)
    assert abs(rep.estimate.midpoint - empirical) <= Fraction(1, 10**3)
    report(4, f"fibonacci 'a b' converged to {float(rep.estimate.midpoint):.5f}, "
              f"empirical at 10^7 = {float(empirical):.5f}", started)


def test_criterion_5_stream_consistency(capsys):
    started = time.time()
    checked = 0
    for name in ("fibonacci", "thue_morse", "aba_b"):
        code = main(["verify", f"corpus/{name}.morph",
                     "--max-len", "3", "--prefix", "1000000"])
        out, _ = capsys.readouterr()
        assert code == 0, f"verify failed on {name}"
        doc = json.loads(out)
        assert all(entry["pass"] for entry in doc["factors"])
        checked += len(doc["factors"])
    with capsys.disabled():
        report(5, f"verify passed for all {checked} factors of length <= 3 "
                  "on fibonacci, thue_morse, aba_b at prefix 10^6", started)


def test_criterion_6_error_bound_formula():
    started = time.time()
    phi = corpus.load("fibonacci")
    cls = classify_letters(phi)
    mass = bounded_mass(letter_frequencies(phi, "a", Fraction(1, 10**6)), cls)
    assert guaranteed_error_bound(cls, mass, 2, 7, phi).spread_limit == Fraction(4, 7)
    assert guaranteed_error_bound(cls, mass, 2, 14, phi).spread_limit == Fraction(12, 610)
    spreads = [guaranteed_error_bound(cls, mass, 2, m, phi).spread_limit
               for m in range(1, 21)]
    assert all(x >= y for x, y in zip(spreads, spreads[1:]))
    report(6, "error-bound values exact at levels 7 and 14, non-increasing 1..20",
           started)


def test_criterion_7_degenerate_regime():
    started = time.time()
    phi = corpus.load("ab_b")
    cls = classify_letters(phi)
    freqs = letter_frequencies(phi, "a", Fraction(1, 10**4))
    mass = bounded_mass(freqs, cls)
    with pytest.raises(DegenerateSupport):
        level_ratio(level_summaries(phi, ("b",), 3), freqs, cls)
    with pytest.raises(DegenerateAlpha):
        guaranteed_error_bound(cls, mass, 2, 5, phi)
    rep = estimate_frequency(phi, "a", ("b",), Fraction(1, 100))
    assert rep.verdict == "degenerate-support"
    assert rep.degenerate_alpha
    count, ratio = empirical_factor_count(phi, "a", ("b",), 10**4)
    assert ratio >= Fraction(99, 100)
    assert rep.estimate.midpoint >= Fraction(99, 100)
    report(7, "degenerate regime flagged (support and bounded-mass), empirical "
              f"fallback ratio {float(ratio):.4f}", started)


def test_criterion_8_single_letter_coherence():
    started = time.time()
    for name in corpus.names():
        phi = corpus.load(name)
        freqs = letter_frequencies(phi, None, Fraction(1, 10**6))
        for x in phi.alphabet:
            rep = estimate_frequency(phi, None, (x,), Fraction(1, 10**3))
            iv = freqs.interval(x)
            gap = abs(rep.estimate.midpoint - iv.midpoint)
            allowance = rep.estimate.width + iv.width + Fraction(1, 10**3)
            assert gap <= allowance, (name, x, float(gap), float(allowance))
    report(8, "single-letter estimates coherent with letter spectrum on the "
              "whole corpus", started)
