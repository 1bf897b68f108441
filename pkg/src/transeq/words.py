"""Reduced words in the free group F_n.

Letters are stored as nonzero integers: generator ``i`` (0-based) is
``i + 1`` and its inverse is ``-(i + 1)``.  The text form is the usual
compact notation where ``a..z`` are generators and ``A..Z`` their inverses.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence

MAX_RANK = 26


class ParseError(ValueError):
    """Raised for text that is not a word over the given alphabet."""

    def __init__(self, text: str, position: int, message: str):
        super().__init__(f"{message} at position {position} in {text!r}")
        self.text = text
        self.position = position


class AlphabetMismatch(ValueError):
    pass


@dataclass(frozen=True)
class Alphabet:
    rank: int

    def __post_init__(self):
        if not 2 <= self.rank <= MAX_RANK:
            raise ValueError(f"rank must be in [2, {MAX_RANK}], got {self.rank}")

    def generators(self) -> list[Word]:
        return [Word._trusted((i + 1,), self) for i in range(self.rank)]

    def identity(self) -> Word:
        return Word._trusted((), self)

    def word(self, text: str) -> Word:
        return parse(text, self)


class Letter(NamedTuple):
    generator: int
    sign: int

    @property
    def code(self) -> int:
        return self.sign * (self.generator + 1)

    @classmethod
    def from_code(cls, code: int) -> Letter:
        return cls(abs(code) - 1, 1 if code > 0 else -1)

    def __str__(self):
        return letter_char(self.code)


def letter_char(code: int) -> str:
    if code > 0:
        return chr(ord("a") + code - 1)
    return chr(ord("A") - code - 1)


def free_reduce(codes: Iterable[int]) -> tuple[int, ...]:
    """Stack-based free reduction of a raw letter sequence."""
    out: list[int] = []
    for x in codes:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def is_reduced(codes: Sequence[int]) -> bool:
    return all(codes[i] != -codes[i + 1] for i in range(len(codes) - 1))


@dataclass(frozen=True)
class Word:
    """An immutable freely reduced word.

    ``letters`` holds signed generator codes (see module docstring).
    Constructing a ``Word`` directly validates reducedness; use
    :func:`reduce` to build one from an arbitrary letter sequence.
    """

    letters: tuple[int, ...]
    alphabet: Alphabet

    def __post_init__(self):
        object.__setattr__(self, "letters", tuple(self.letters))
        for x in self.letters:
            if x == 0 or abs(x) > self.alphabet.rank:
                raise ValueError(f"letter code {x} outside alphabet of rank {self.alphabet.rank}")
        if not is_reduced(self.letters):
            raise ValueError(f"not freely reduced: {self.letters}")

    @classmethod
    def _trusted(cls, letters: tuple[int, ...], alphabet: Alphabet) -> Word:
        w = object.__new__(cls)
        object.__setattr__(w, "letters", letters)
        object.__setattr__(w, "alphabet", alphabet)
        return w

    @property
    def rank(self) -> int:
        return self.alphabet.rank

    def __len__(self):
        return len(self.letters)

    def length(self) -> int:
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __bool__(self):
        return bool(self.letters)

    def __str__(self):
        return "".join(letter_char(x) for x in self.letters)

    def __repr__(self):
        return f"Word({str(self)!r}, rank={self.rank})"

    def __mul__(self, other: Word) -> Word:
        return concat(self, other)

    def __invert__(self) -> Word:
        return invert(self)

    def __pow__(self, e: int) -> Word:
        return power(self, e)

    def as_letters(self) -> tuple[Letter, ...]:
        return tuple(Letter.from_code(x) for x in self.letters)


def parse(text: str, alphabet: Alphabet) -> Word:
    codes = []
    for pos, ch in enumerate(text):
        if ch.isspace():
            continue
        if "a" <= ch <= "z":
            code = ord(ch) - ord("a") + 1
        elif "A" <= ch <= "Z":
            code = -(ord(ch) - ord("A") + 1)
        else:
            raise ParseError(text, pos, f"invalid character {ch!r}")
        if abs(code) > alphabet.rank:
            raise ParseError(text, pos, f"character {ch!r} outside alphabet of rank {alphabet.rank}")
        codes.append(code)
    return Word._trusted(free_reduce(codes), alphabet)


def reduce(letters: Iterable[int | Letter], alphabet: Alphabet) -> Word:
    """Free reduction of any letter sequence (codes or :class:`Letter`)."""
    codes = []
    for x in letters:
        code = x.code if isinstance(x, Letter) else x
        if code == 0 or abs(code) > alphabet.rank:
            raise ValueError(f"letter {x!r} outside alphabet of rank {alphabet.rank}")
        codes.append(code)
    return Word._trusted(free_reduce(codes), alphabet)


def _check_same(u: Word, v: Word):
    if u.alphabet != v.alphabet:
        raise AlphabetMismatch(f"rank {u.rank} vs rank {v.rank}")


def concat(u: Word, v: Word) -> Word:
    _check_same(u, v)
    a, b = u.letters, v.letters
    # cancellation only happens at the junction
    i = 0
    n = min(len(a), len(b))
    while i < n and a[-1 - i] == -b[i]:
        i += 1
    return Word._trusted(a[: len(a) - i] + b[i:], u.alphabet)


def concat_all(words: Iterable[Word], alphabet: Alphabet) -> Word:
    out: list[int] = []
    for w in words:
        for x in w.letters:
            if out and out[-1] == -x:
                out.pop()
            else:
                out.append(x)
    return Word._trusted(tuple(out), alphabet)


def invert(v: Word) -> Word:
    return Word._trusted(tuple(-x for x in reversed(v.letters)), v.alphabet)


def power(v: Word, e: int) -> Word:
    base = v if e >= 0 else invert(v)
    return concat_all([base] * abs(e), v.alphabet)
