"""Bundled example morphisms and a seedable random-morphism generator.

The same definitions ship as plain files under corpus/ at the repository
root for CLI use; `load` builds them directly.
"""

from __future__ import annotations

import random
import string

from .morphism import Morphism, parse_morphism

CORPUS_TEXTS: dict[str, str] = {
    # golden-ratio letter frequencies, primitive
    "fibonacci": "alphabet: a b\nstart: a\na -> a b\nb -> a\n",
    # uniform letter frequencies, primitive
    "thue_morse": "alphabet: a b\nstart: a\na -> a b\nb -> b a\n",
    # bounded letter b with mass 1/2, non-primitive
    "aba_b": "alphabet: a b\nstart: a\na -> a b a\nb -> b\n",
    # degenerate regime: the fixed point is a b b b ..., bounded mass 1
    "ab_b": "alphabet: a b\nstart: a\na -> a b\nb -> b\n",
    # three letters, non-primitive, growing; frequencies (0, 0, 1)
    "abc_b_cc": "alphabet: a b c\nstart: a\na -> a b c\nb -> b\nc -> c c\n",
}


def names() -> list[str]:
    return sorted(CORPUS_TEXTS)


def load(name: str) -> Morphism:
    try:
        return parse_morphism(CORPUS_TEXTS[name])
    except KeyError:
        raise KeyError(f"unknown corpus morphism {name!r}; choose from {names()}") from None


def random_morphism(
    rng: random.Random,
    max_letters: int = 4,
    max_image_len: int = 4,
    prolongable: bool = False,
) -> Morphism:
    """A uniformly random non-erasing morphism for stress tests.

    With `prolongable`, the first letter's image is forced to start with
    that letter and have length >= 2, so the fixed point exists there.
    """
    size = rng.randint(1, max_letters)
    alphabet = tuple(string.ascii_lowercase[:size])
    images = []
    for i, a in enumerate(alphabet):
        length = rng.randint(1, max_image_len)
        img = [rng.choice(alphabet) for _ in range(length)]
        if prolongable and i == 0:
            length = max(2, length)
            img = [a] + [rng.choice(alphabet) for _ in range(length - 1)]
        images.append(tuple(img))
    start = alphabet[0] if prolongable else None
    return Morphism(alphabet, tuple(images), start)
