"""Morphism representation, parsing, incidence matrix, growth classification.

A morphism maps every letter of a finite alphabet to a non-empty word over
the same alphabet and extends to words by concatenation. The incidence
matrix tracks letter counts in images; its powers give exact image lengths
without expanding words. Letters split into bounded ones (image length stays
under a uniform cap forever) and unbounded ones.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from .errors import (
    DuplicateRule,
    ErasingRule,
    MissingRule,
    ParseError,
    UnknownLetter,
    guard_magnitude,
)
from .words import Word

_RESERVED = {"->"}


def _check_token(tok: str, line: int | None = None) -> str:
    if not tok or any(c.isspace() for c in tok):
        raise ParseError(f"invalid letter token {tok!r}", line)
    if tok in _RESERVED or tok.endswith(":") or tok.startswith("#"):
        raise ParseError(f"reserved letter token {tok!r}", line)
    return tok


@dataclass(frozen=True)
class Morphism:
    """An ordered alphabet with one non-empty image per letter."""

    alphabet: tuple[str, ...]
    images: tuple[Word, ...]
    start: str | None = None
    _index: dict = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        if not self.alphabet:
            raise ParseError("empty alphabet")
        if len(set(self.alphabet)) != len(self.alphabet):
            raise ParseError("duplicate letters in alphabet")
        for tok in self.alphabet:
            _check_token(tok)
        if len(self.images) != len(self.alphabet):
            raise MissingRule("every letter needs exactly one rule")
        index = {a: i for i, a in enumerate(self.alphabet)}
        for a, img in zip(self.alphabet, self.images):
            if len(img) == 0:
                raise ErasingRule(f"rule for {a!r} is erasing")
            for c in img:
                if c not in index:
                    raise UnknownLetter(c)
        if self.start is not None and self.start not in index:
            raise UnknownLetter(self.start)
        object.__setattr__(self, "_index", index)

    def image(self, letter: str) -> Word:
        try:
            return self.images[self._index[letter]]
        except KeyError:
            raise UnknownLetter(letter) from None

    def index(self, letter: str) -> int:
        try:
            return self._index[letter]
        except KeyError:
            raise UnknownLetter(letter) from None

    def rules(self) -> dict[str, Word]:
        return dict(zip(self.alphabet, self.images))

    @property
    def size(self) -> int:
        return len(self.alphabet)

    def __str__(self) -> str:
        return serialize_morphism(self)


def morphism(rules: dict[str, str], start: str | None = None) -> Morphism:
    """Build a morphism from {letter: "tok tok ..."} in dict order."""
    alphabet = tuple(rules)
    images = tuple(tuple(img.split()) for img in rules.values())
    return Morphism(alphabet, images, start)


def parse_morphism(text: str) -> Morphism:
    """Parse the morphism file format.

    Format: optional '#' comment lines, one `alphabet: tok tok ...` header,
    an optional `start: tok` line, and one `tok -> tok tok ...` rule line per
    letter. An empty right-hand side is rejected as an erasing rule.
    """
    alphabet: tuple[str, ...] | None = None
    start: str | None = None
    rules: dict[str, Word] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("alphabet:"):
            if alphabet is not None:
                raise ParseError("duplicate alphabet header", lineno)
            toks = line[len("alphabet:"):].split()
            if not toks:
                raise ParseError("empty alphabet header", lineno)
            for t in toks:
                _check_token(t, lineno)
            if len(set(toks)) != len(toks):
                raise ParseError("duplicate letters in alphabet", lineno)
            alphabet = tuple(toks)
            continue
        if line.startswith("start:"):
            toks = line[len("start:"):].split()
            if len(toks) != 1:
                raise ParseError("start header takes exactly one letter", lineno)
            if alphabet is None:
                raise ParseError("start header before alphabet", lineno)
            if start is not None:
                raise ParseError("duplicate start header", lineno)
            if toks[0] not in alphabet:
                raise UnknownLetter(toks[0], lineno)
            start = toks[0]
            continue
        toks = line.split()
        if len(toks) >= 2 and toks[1] == "->":
            if alphabet is None:
                raise ParseError("rule before alphabet header", lineno)
            lhs, rhs = toks[0], toks[2:]
            if lhs not in alphabet:
                raise UnknownLetter(lhs, lineno)
            if lhs in rules:
                raise DuplicateRule(f"second rule for {lhs!r}", lineno)
            if not rhs:
                raise ErasingRule(f"rule for {lhs!r} has an empty image", lineno)
            for t in rhs:
                if t not in alphabet:
                    raise UnknownLetter(t, lineno)
            rules[lhs] = tuple(rhs)
            continue
        raise ParseError(f"unrecognized line {line!r}", lineno)
    if alphabet is None:
        raise ParseError("missing alphabet header")
    missing = [a for a in alphabet if a not in rules]
    if missing:
        raise MissingRule(f"no rule for {', '.join(repr(a) for a in missing)}")
    return Morphism(alphabet, tuple(rules[a] for a in alphabet), start)


def serialize_morphism(phi: Morphism) -> str:
    """Emit the file format back, rules in alphabet order (round-trip stable)."""
    lines = ["alphabet: " + " ".join(phi.alphabet)]
    if phi.start is not None:
        lines.append("start: " + phi.start)
    for a, img in zip(phi.alphabet, phi.images):
        lines.append(f"{a} -> " + " ".join(img))
    return "\n".join(lines) + "\n"


def apply(phi: Morphism, w) -> Word:
    """Image of a word: the concatenation of letter images, in order."""
    out: list[str] = []
    for c in w:
        out.extend(phi.image(c))
    return tuple(out)


def incidence_matrix(phi: Morphism) -> list[list[int]]:
    """entry[i][j] = number of occurrences of letter i in the image of letter j.

    Column j therefore describes the image of the j-th letter, and column
    sums equal image lengths.
    """
    d = phi.size
    mat = [[0] * d for _ in range(d)]
    for j, img in enumerate(phi.images):
        for c in img:
            mat[phi.index(c)][j] += 1
    return mat


def _mat_mul(a: list[list[int]], b: list[list[int]], context: str) -> list[list[int]]:
    d = len(a)
    bt = list(zip(*b))
    out = [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]
    guard_magnitude(max((e for row in out for e in row), default=0), context)
    return out


def _identity(d: int) -> list[list[int]]:
    return [[1 if i == j else 0 for j in range(d)] for i in range(d)]


@lru_cache(maxsize=4096)
def _matrix_power(phi: Morphism, n: int) -> tuple[tuple[int, ...], ...]:
    """n-th power of the incidence matrix, exact integers."""
    if n == 0:
        return tuple(map(tuple, _identity(phi.size)))
    if n == 1:
        return tuple(map(tuple, incidence_matrix(phi)))
    half = [list(r) for r in _matrix_power(phi, n // 2)]
    sq = _mat_mul(half, half, "incidence matrix power")
    if n % 2:
        sq = _mat_mul(sq, [list(r) for r in _matrix_power(phi, 1)], "incidence matrix power")
    return tuple(map(tuple, sq))


def iterate_length(phi: Morphism, a: str, n: int) -> int:
    """|phi^n(a)|, computed from incidence-matrix powers, never by expansion."""
    if n < 0:
        raise ValueError("iteration count must be non-negative")
    j = phi.index(a)
    power = _matrix_power(phi, n)
    return sum(row[j] for row in power)


def is_prolongable(phi: Morphism, b: str) -> bool:
    """True iff the image of b starts with b and is at least two letters long."""
    img = phi.image(b)
    return len(img) >= 2 and img[0] == b


def prolongable_letters(phi: Morphism) -> list[str]:
    return [a for a in phi.alphabet if is_prolongable(phi, a)]


def primitivity_exponent(phi: Morphism) -> int | None:
    """Smallest n <= 2*|A|^2 whose incidence-matrix power is entrywise
    positive, or None if no such n exists (the cap is sufficient: primitive
    non-negative matrices reach positivity by (d-1)^2 + 1)."""
    d = phi.size
    cap = 2 * d * d
    base = incidence_matrix(phi)
    # Work over booleans: only positivity matters and entries stay small.
    cur = [[e > 0 for e in row] for row in base]
    baseb = [[e > 0 for e in row] for row in base]
    for n in range(1, cap + 1):
        if all(all(row) for row in cur):
            return n
        cur = [
            [any(cur[i][k] and baseb[k][j] for k in range(d)) for j in range(d)]
            for i in range(d)
        ]
    return None


def is_primitive(phi: Morphism) -> bool:
    """True iff some power's image of every letter contains every letter."""
    return primitivity_exponent(phi) is not None


@dataclass(frozen=True, eq=False)
class LetterClassification:
    """Partition of the alphabet into bounded and unbounded letters.

    `k1` is a uniform strict upper bound on |phi^n(a)| over bounded letters a
    and all n >= 1 (1 by convention when no letter is bounded);
    `orbit_lengths` records the max image length seen in each bounded
    letter's orbit.
    """

    bounded: frozenset[str]
    unbounded: frozenset[str]
    k1: int
    orbit_lengths: dict[str, int]


def _strongly_connected_components(succ: dict[str, set[str]]) -> list[set[str]]:
    """Tarjan's algorithm, iterative (alphabets can be user-sized)."""
    index: dict[str, int] = {}
    low: dict[str, int] = {}
    on_stack: set[str] = set()
    stack: list[str] = []
    sccs: list[set[str]] = []
    counter = 0
    for root in succ:
        if root in index:
            continue
        work = [(root, iter(succ[root]))]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack.add(root)
        while work:
            node, it = work[-1]
            advanced = False
            for nxt in it:
                if nxt not in index:
                    index[nxt] = low[nxt] = counter
                    counter += 1
                    stack.append(nxt)
                    on_stack.add(nxt)
                    work.append((nxt, iter(succ[nxt])))
                    advanced = True
                    break
                if nxt in on_stack:
                    low[node] = min(low[node], index[nxt])
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[node])
            if low[node] == index[node]:
                comp = set()
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    comp.add(w)
                    if w == node:
                        break
                sccs.append(comp)
    return sccs


def classify_letters(phi: Morphism) -> LetterClassification:
    """Split the alphabet into bounded and unbounded letters and compute k1.

    A letter is unbounded iff it reaches (in the graph with an edge a -> c
    whenever c occurs in the image of a) a cycle containing a letter whose
    image has length >= 2: looping there pumps the image length. Otherwise
    every reachable cycle is a bare permutation cycle and lengths stabilize,
    so the letter's orbit of words is finite and k1 can be read off it.
    """
    succ = {a: set(phi.image(a)) for a in phi.alphabet}
    sccs = _strongly_connected_components(succ)
    scc_of = {a: i for i, comp in enumerate(sccs) for a in comp}
    pumping: set[int] = set()
    for i, comp in enumerate(sccs):
        cyclic = len(comp) > 1 or any(a in succ[a] for a in comp)
        if cyclic and any(len(phi.image(a)) >= 2 for a in comp):
            pumping.add(i)
    # Letters whose reachable set meets a pumping component are unbounded.
    unbounded: set[str] = set()
    for a in phi.alphabet:
        seen = {a}
        frontier = [a]
        while frontier:
            x = frontier.pop()
            if scc_of[x] in pumping:
                unbounded.add(a)
                break
            for y in succ[x]:
                if y not in seen:
                    seen.add(y)
                    frontier.append(y)
    bounded = set(phi.alphabet) - unbounded
    orbit_lengths: dict[str, int] = {}
    for a in sorted(bounded):
        seen_words: set[Word] = set()
        w: Word = (a,)
        longest = 0
        while True:
            w = apply(phi, w)
            if w in seen_words:
                break
            seen_words.add(w)
            longest = max(longest, len(w))
        orbit_lengths[a] = longest
    k1 = 1 + max(orbit_lengths.values(), default=0)
    return LetterClassification(
        bounded=frozenset(bounded),
        unbounded=frozenset(unbounded),
        k1=k1,
        orbit_lengths=orbit_lengths,
    )
