"""Finite-word primitives: overlapping occurrence counting and boundary windows.

Words are immutable sequences of letter tokens; the canonical form is a tuple
of strings, but every operation also works on plain strings (one character
per letter), which the streaming layer uses internally. Positions in the
documented semantics are 1-based.
"""

from __future__ import annotations

from .errors import EmptyFactor

Word = tuple[str, ...]


def word(text: str) -> Word:
    """Parse a word from whitespace-separated letter tokens."""
    return tuple(text.split())


def render(w: Word, sep: str = " ") -> str:
    return sep.join(w)


def count_occurrences(w, v) -> int:
    """Number of (possibly overlapping) occurrences of v in w.

    An occurrence at position i means w[i, i+|v|-1] = v; every starting
    position is counted, so "aa" occurs twice in "aaa".
    """
    if len(v) == 0:
        raise EmptyFactor("occurrence count of the empty word is undefined")
    n, m = len(w), len(v)
    return sum(1 for i in range(n - m + 1) if w[i:i + m] == v)


def window_prefix(w, k: int):
    """First min(k, |w|) letters of w."""
    if k < 0:
        raise ValueError("window size must be non-negative")
    return w[:k]


def window_suffix(w, k: int):
    """Last min(k, |w|) letters of w."""
    if k < 0:
        raise ValueError("window size must be non-negative")
    if k == 0:
        return w[:0]
    return w[-k:]


def seam_count(left, right, v) -> int:
    """Occurrences of v in left+right that start in left and end in right.

    Counted occurrences start at a position <= |left| and end at a position
    > |left|; they straddle the seam. Only the last |v|-1 letters of `left`
    and the first |v|-1 letters of `right` can matter, so callers may pass
    windows instead of full words.
    """
    m = len(v)
    if m == 0:
        raise EmptyFactor("occurrence count of the empty word is undefined")
    if m == 1:
        return 0
    ls = window_suffix(left, m - 1)
    rp = window_prefix(right, m - 1)
    s = ls + rp
    # After trimming, any occurrence starting inside ls (length <= m-1)
    # necessarily ends inside rp, so only the start side needs checking.
    cut = len(ls)
    count = 0
    for i in range(cut):
        if i + m > len(s):
            break
        if s[i:i + m] == v:
            count += 1
    return count
