"""Lazy generation of the one-sided fixed point and streaming factor counts.

For a start letter b with image b·v, the fixed point decomposes as
b · v · phi(v) · phi^2(v) · ... ; stages are expanded depth-first so memory
stays proportional to the expansion depth (O(log n) for growing morphisms)
instead of the prefix length. Internally letters are transliterated to
single characters so that occurrence counting can run on `str` at C speed;
the public surface always speaks letter tokens.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator

from .errors import EmptyFactor, NotProlongable, UnknownLetter
from .morphism import Morphism, classify_letters, is_prolongable
from .words import Word

_MEMO_MAX = 4096       # cache expanded words up to this many letters
_BUF_TARGET = 1 << 16  # emitted chunk size


def resolve_start(phi: Morphism, b: str | None = None) -> str:
    """Pick the start letter (explicit argument wins over the morphism's own)
    and check prolongability."""
    if b is None:
        b = phi.start
    if b is None:
        raise NotProlongable(
            "no start letter: pass one explicitly or add a 'start:' header"
        )
    if b not in phi.alphabet:
        raise UnknownLetter(b)
    if not is_prolongable(phi, b):
        raise NotProlongable(
            f"image of {b!r} must start with {b!r} and have length >= 2"
        )
    return b


class _Codec:
    """Bijection between letter tokens and single characters."""

    def __init__(self, alphabet: tuple[str, ...]):
        if len(alphabet) > 0x10FFFF:
            raise ValueError("alphabet too large to transliterate")
        self.char_of = {a: chr(i) for i, a in enumerate(alphabet)}
        self.letter_of = {chr(i): a for i, a in enumerate(alphabet)}

    def encode(self, w: Iterable[str]) -> str:
        try:
            return "".join(self.char_of[c] for c in w)
        except KeyError as exc:
            raise UnknownLetter(exc.args[0]) from None

    def decode(self, s: str) -> Word:
        return tuple(self.letter_of[c] for c in s)


class FixedPointStream:
    """Single-consumer generator of the fixed point starting at `start`.

    `chunks()` yields successive non-empty `str` pieces (transliterated);
    `__iter__` yields letter tokens one at a time. `max_stack_depth` records
    the deepest expansion recursion reached so far.
    """

    def __init__(self, phi: Morphism, start: str | None = None):
        self.phi = phi
        self.start = resolve_start(phi, start)
        self.codec = _Codec(phi.alphabet)
        cls = classify_letters(phi)
        self._bounded = {self.codec.char_of[a] for a in cls.bounded}
        self._image = {
            self.codec.char_of[a]: self.codec.encode(phi.image(a))
            for a in phi.alphabet
        }
        self._orbits: dict[str, tuple[list[str], int, int]] = {}
        self._lengths: dict[tuple[str, int], int] = {}
        self._words: dict[tuple[str, int], str] = {}
        self._depth = 0
        self.max_stack_depth = 0

    # -- expansion helpers ------------------------------------------------

    def _apply(self, s: str) -> str:
        img = self._image
        return "".join(img[c] for c in s)

    def _orbit(self, c: str) -> tuple[list[str], int, int]:
        """Eventually periodic word orbit of a bounded letter under iteration."""
        cached = self._orbits.get(c)
        if cached is not None:
            return cached
        seq = [c]
        seen = {c: 0}
        while True:
            nxt = self._apply(seq[-1])
            if nxt in seen:
                entry = (seq, seen[nxt], len(seq) - seen[nxt])
                self._orbits[c] = entry
                return entry
            seen[nxt] = len(seq)
            seq.append(nxt)

    def _orbit_word(self, c: str, depth: int) -> str:
        seq, pre, period = self._orbit(c)
        if depth < len(seq):
            return seq[depth]
        return seq[pre + (depth - pre) % period]

    def _length(self, c: str, depth: int) -> int:
        if depth == 0:
            return 1
        if c in self._bounded:
            return len(self._orbit_word(c, depth))
        key = (c, depth)
        n = self._lengths.get(key)
        if n is None:
            n = sum(self._length(ch, depth - 1) for ch in self._image[c])
            self._lengths[key] = n
        return n

    def _word(self, c: str, depth: int) -> str:
        """Fully expanded phi^depth(c); only used when the length is small."""
        if depth == 0:
            return c
        if c in self._bounded:
            return self._orbit_word(c, depth)
        key = (c, depth)
        w = self._words.get(key)
        if w is None:
            self._depth += 1
            self.max_stack_depth = max(self.max_stack_depth, self._depth)
            w = "".join(self._word(ch, depth - 1) for ch in self._image[c])
            self._depth -= 1
            self._words[key] = w
        return w

    def _emit(self, c: str, depth: int) -> Iterator[str]:
        if depth == 0:
            yield c
            return
        if c in self._bounded:
            yield self._orbit_word(c, depth)
            return
        if self._length(c, depth) <= _MEMO_MAX:
            yield self._word(c, depth)
            return
        self._depth += 1
        self.max_stack_depth = max(self.max_stack_depth, self._depth)
        for ch in self._image[c]:
            yield from self._emit(ch, depth - 1)
        self._depth -= 1

    # -- public iteration --------------------------------------------------

    def pieces(self) -> Iterator[str]:
        """Raw expansion pieces, unbounded; sizes vary."""
        start_c = self.codec.char_of[self.start]
        yield start_c
        tail = self._image[start_c][1:]
        depth = 0
        while True:
            for c in tail:
                yield from self._emit(c, depth)
            depth += 1

    def chunks(self) -> Iterator[str]:
        """The expansion re-packed into chunks of roughly uniform size."""
        buf: list[str] = []
        size = 0
        for piece in self.pieces():
            buf.append(piece)
            size += len(piece)
            if size >= _BUF_TARGET:
                yield "".join(buf)
                buf.clear()
                size = 0
        # unreachable: the stream is infinite

    def __iter__(self) -> Iterator[str]:
        letter_of = self.codec.letter_of
        for piece in self.pieces():
            for c in piece:
                yield letter_of[c]


def stream(phi: Morphism, b: str | None = None) -> FixedPointStream:
    """Unbounded iterator over the letters of the fixed point at b."""
    return FixedPointStream(phi, b)


def prefix(phi: Morphism, b: str | None, n: int) -> Word:
    """The first n letters of the fixed point."""
    if n < 1:
        raise ValueError("prefix length must be >= 1")
    st = FixedPointStream(phi, b)
    parts: list[str] = []
    got = 0
    for piece in st.pieces():
        parts.append(piece)
        got += len(piece)
        if got >= n:
            break
    return st.codec.decode("".join(parts)[:n])


def _count_all(buf: str, pat: str, lo: int) -> int:
    """Overlapping occurrences of pat in buf at start index >= lo."""
    count = 0
    i = buf.find(pat, lo)
    while i >= 0:
        count += 1
        i = buf.find(pat, i + 1)
    return count


def count_factors(
    phi: Morphism, b: str | None, factors: Iterable[Word], n: int
) -> dict[Word, int]:
    """Exact occurrence counts of several factors in the length-n prefix,
    in one streaming pass."""
    if n < 1:
        raise ValueError("prefix length must be >= 1")
    st = FixedPointStream(phi, b)
    pats: dict[Word, str] = {}
    for v in factors:
        if len(v) == 0:
            raise EmptyFactor("occurrence count of the empty word is undefined")
        pats[tuple(v)] = st.codec.encode(v)
    counts = {v: 0 for v in pats}
    if not pats:
        return counts
    max_len = max(len(p) for p in pats.values())
    carry = ""
    consumed = 0
    for chunk in st.chunks():
        if consumed + len(chunk) > n:
            chunk = chunk[: n - consumed]
        if not chunk:
            break
        buf = carry + chunk
        for v, p in pats.items():
            # Only count matches ending inside the new chunk; earlier ones
            # were counted when their chunk was processed.
            lo = max(0, len(carry) - (len(p) - 1))
            counts[v] += _count_all(buf, p, lo)
        consumed += len(chunk)
        if consumed >= n:
            break
        carry = buf[-(max_len - 1):] if max_len > 1 else ""
    return counts


def empirical_factor_count(
    phi: Morphism, b: str | None, v: Word, n: int
) -> tuple[int, Fraction]:
    """(count, count/n) for the factor v in the length-n prefix; the ratio is
    an exact rational. Memory stays bounded regardless of n."""
    v = tuple(v)
    count = count_factors(phi, b, [v], n)[v]
    return count, Fraction(count, n)


def count_letters(phi: Morphism, b: str | None, n: int) -> dict[str, int]:
    """Per-letter occurrence counts in the length-n prefix (one pass)."""
    counts = count_factors(phi, b, [(a,) for a in phi.alphabet], n)
    return {a: counts[(a,)] for a in phi.alphabet}


def factor_inventory(
    phi: Morphism, b: str | None, n: int, max_len: int
) -> set[Word]:
    """All distinct factors of length <= max_len of the length-n prefix."""
    if max_len < 1:
        raise ValueError("max_len must be >= 1")
    if n < 1:
        raise ValueError("prefix length must be >= 1")
    st = FixedPointStream(phi, b)
    seen: set[str] = set()
    carry = ""
    consumed = 0
    for chunk in st.chunks():
        if consumed + len(chunk) > n:
            chunk = chunk[: n - consumed]
        if not chunk:
            break
        buf = carry + chunk
        for ell in range(1, max_len + 1):
            lo = max(0, len(carry) - (ell - 1))
            seen.update(buf[i:i + ell] for i in range(lo, len(buf) - ell + 1))
        consumed += len(chunk)
        if consumed >= n:
            break
        carry = buf[-(max_len - 1):] if max_len > 1 else ""
    return {st.codec.decode(s) for s in seen}


@dataclass(frozen=True)
class EmpiricalSeries:
    """Counts and exact ratios of one factor at increasing prefix lengths,
    plus the min/max over the checkpoint ratios past the burn-in; their
    spread is a crude estimate of how far the ratio is from settling."""

    factor: Word
    burn_in: int
    checkpoints: tuple[tuple[int, int, Fraction], ...]
    min_ratio: Fraction | None
    max_ratio: Fraction | None

    @property
    def spread(self) -> Fraction | None:
        if self.min_ratio is None or self.max_ratio is None:
            return None
        return self.max_ratio - self.min_ratio


def empirical_series(
    phi: Morphism,
    b: str | None,
    v: Word,
    checkpoints: Iterable[int],
    burn_in: int,
) -> EmpiricalSeries:
    """Stream once to the last checkpoint, snapshotting (count, ratio) at
    each checkpoint; min/max are taken over checkpoints past the burn-in."""
    v = tuple(v)
    if len(v) == 0:
        raise EmptyFactor("occurrence count of the empty word is undefined")
    cps = list(checkpoints)
    if not cps or any(x < 1 for x in cps) or any(
        y <= x for x, y in zip(cps, cps[1:])
    ):
        raise ValueError("checkpoints must be strictly increasing and >= 1")
    if burn_in < 0:
        raise ValueError("burn_in must be non-negative")
    total = cps[-1]
    st = FixedPointStream(phi, b)
    pat = st.codec.encode(v)
    m = len(pat)
    pending = list(cps)
    snapshots: list[tuple[int, int, Fraction]] = []

    count = 0
    consumed = 0
    carry = ""
    for chunk in st.chunks():
        if consumed + len(chunk) > total:
            chunk = chunk[: total - consumed]
        buf = carry + chunk
        lo = max(0, len(carry) - (m - 1))
        i = buf.find(pat, lo)
        while i >= 0:
            end = consumed - len(carry) + i + m  # 1-based global end position
            while pending and pending[0] < end:
                cp = pending.pop(0)
                snapshots.append((cp, count, Fraction(count, cp)))
            count += 1
            i = buf.find(pat, i + 1)
        consumed += len(chunk)
        while pending and pending[0] <= consumed:
            cp = pending.pop(0)
            snapshots.append((cp, count, Fraction(count, cp)))
        if consumed >= total:
            break
        carry = buf[-(m - 1):] if m > 1 else ""
    observed = [r for n, _, r in snapshots if n > burn_in]
    return EmpiricalSeries(
        factor=v,
        burn_in=burn_in,
        checkpoints=tuple(snapshots),
        min_ratio=min(observed) if observed else None,
        max_ratio=max(observed) if observed else None,
    )
