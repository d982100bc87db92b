"""Shared test oracles, all independent of the library's counting paths.

Expansion works on transliterated single-character strings so brute-force
scans stay fast; counting uses str.find loops, a different mechanism from
both the tuple scan in words.py and the level recurrence.
"""

from __future__ import annotations

from morphfreq import Morphism


def codec_of(phi: Morphism) -> dict[str, str]:
    return {a: chr(0xE000 + i) for i, a in enumerate(phi.alphabet)}


def encode(codec: dict[str, str], w) -> str:
    return "".join(codec[c] for c in w)


def expand_str(phi: Morphism, codec: dict[str, str], letter: str, level: int) -> str:
    """phi^level(letter) by direct repeated substitution on strings."""
    images = {codec[a]: encode(codec, phi.image(a)) for a in phi.alphabet}
    s = codec[letter]
    for _ in range(level):
        s = "".join(images[c] for c in s)
    return s


def find_count(s: str, pat: str) -> int:
    """Overlapping occurrence count via str.find (independent oracle)."""
    count = 0
    i = s.find(pat)
    while i >= 0:
        count += 1
        i = s.find(pat, i + 1)
    return count


def scan_count(w, v) -> int:
    """Overlapping occurrence count by testing every start position."""
    n, m = len(w), len(v)
    total = 0
    for i in range(n):
        if i + m <= n and all(w[i + t] == v[t] for t in range(m)):
            total += 1
    return total


def distinct_factors(s: str, max_len: int) -> set[str]:
    out: set[str] = set()
    for ell in range(1, max_len + 1):
        out.update(s[i:i + ell] for i in range(len(s) - ell + 1))
    return out
