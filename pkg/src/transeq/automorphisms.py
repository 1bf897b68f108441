"""Automorphisms of F_n as sequences of elementary Nielsen moves.

A move acts on a word by substituting generator images.  An
:class:`Automorphism` applies its moves left to right, so ``moves[0]`` acts
first.  Because every move has an explicit elementary inverse, every
automorphism built here is invertible by construction.
"""

from __future__ import annotations

import hashlib
import random
from dataclasses import dataclass
from functools import cached_property
from typing import Union

from .words import Alphabet, AlphabetMismatch, Word, free_reduce, letter_char


def derive_seed(seed: int, *labels) -> int:
    """64-bit child seed: first 8 bytes of blake2b over ``seed`` and ``labels``."""
    text = ":".join(str(x) for x in (seed, *labels))
    return int.from_bytes(hashlib.blake2b(text.encode(), digest_size=8).digest(), "big")


def _gen_name(i: int) -> str:
    return chr(ord("a") + i)


def _gen_index(name: str, rank: int) -> int:
    if len(name) != 1 or not "a" <= name <= "z" or ord(name) - ord("a") >= rank:
        raise ValueError(f"bad generator name {name!r} for rank {rank}")
    return ord(name) - ord("a")


@dataclass(frozen=True)
class Permute:
    """``x_i -> x_{images[i]}``."""

    images: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "images", tuple(self.images))
        if sorted(self.images) != list(range(len(self.images))):
            raise ValueError(f"not a permutation: {self.images}")

    def image(self, gen: int) -> tuple[int, ...]:
        return (self.images[gen] + 1,)

    def inverse(self) -> Permute:
        inv = [0] * len(self.images)
        for i, j in enumerate(self.images):
            inv[j] = i
        return Permute(tuple(inv))

    def to_json(self) -> dict:
        return {"kind": "perm", "images": [_gen_name(i) for i in self.images]}


@dataclass(frozen=True)
class InvertGen:
    """``x_gen -> x_gen^-1``."""

    gen: int

    def image(self, gen: int) -> tuple[int, ...]:
        return (-(gen + 1),) if gen == self.gen else (gen + 1,)

    def inverse(self) -> InvertGen:
        return self

    def to_json(self) -> dict:
        return {"kind": "inv", "gen": _gen_name(self.gen)}


@dataclass(frozen=True)
class RightMultiply:
    """``x_target -> x_target * x_mult^sign``."""

    target: int
    mult: int
    sign: int

    def __post_init__(self):
        if self.target == self.mult:
            raise ValueError("target and multiplier must differ")
        if self.sign not in (1, -1):
            raise ValueError(f"sign must be +1 or -1, got {self.sign}")

    def image(self, gen: int) -> tuple[int, ...]:
        if gen == self.target:
            return (gen + 1, self.sign * (self.mult + 1))
        return (gen + 1,)

    def inverse(self) -> RightMultiply:
        return RightMultiply(self.target, self.mult, -self.sign)

    def to_json(self) -> dict:
        return {"kind": "rmul", "target": _gen_name(self.target), "mult": _gen_name(self.mult), "sign": self.sign}


ElementaryMove = Union[Permute, InvertGen, RightMultiply]


def _check_move(move: ElementaryMove, rank: int):
    if isinstance(move, Permute):
        ok = len(move.images) == rank
    elif isinstance(move, InvertGen):
        ok = 0 <= move.gen < rank
    else:
        ok = 0 <= move.target < rank and 0 <= move.mult < rank
    if not ok:
        raise ValueError(f"{move} is not a move of F_{rank}")


def _substitute(codes, images: list[tuple[int, ...]], inverse_images: list[tuple[int, ...]]) -> tuple[int, ...]:
    out: list[int] = []
    for x in codes:
        img = images[x - 1] if x > 0 else inverse_images[-x - 1]
        for y in img:
            if out and out[-1] == -y:
                out.pop()
            else:
                out.append(y)
    return tuple(out)


class Automorphism:
    """An automorphism of F_n given by elementary moves applied in order."""

    def __init__(self, moves, alphabet: Alphabet):
        self.moves: tuple[ElementaryMove, ...] = tuple(moves)
        self.alphabet = alphabet
        for mv in self.moves:
            _check_move(mv, alphabet.rank)

    @classmethod
    def identity(cls, alphabet: Alphabet) -> Automorphism:
        return cls((), alphabet)

    @cached_property
    def images(self) -> list[tuple[int, ...]]:
        """Reduced images of the generators, as letter codes."""
        rank = self.alphabet.rank
        imgs = [(i + 1,) for i in range(rank)]
        for mv in self.moves:
            move_imgs = [mv.image(i) for i in range(rank)]
            move_inv = [tuple(-y for y in reversed(img)) for img in move_imgs]
            imgs = [_substitute(img, move_imgs, move_inv) for img in imgs]
        return imgs

    @cached_property
    def _inverse_images(self) -> list[tuple[int, ...]]:
        return [tuple(-y for y in reversed(img)) for img in self.images]

    def __call__(self, w: Word) -> Word:
        return apply(self, w)

    def __len__(self):
        return len(self.moves)

    def __eq__(self, other):
        if not isinstance(other, Automorphism):
            return NotImplemented
        return self.moves == other.moves and self.alphabet == other.alphabet

    def __hash__(self):
        return hash((self.moves, self.alphabet))

    def __repr__(self):
        imgs = ", ".join(f"{_gen_name(i)}->{''.join(letter_char(y) for y in img)}" for i, img in enumerate(self.images))
        return f"Automorphism({imgs}; {len(self.moves)} moves)"

    def to_json(self) -> list[dict]:
        return [mv.to_json() for mv in self.moves]

    @classmethod
    def from_json(cls, data: list[dict], alphabet: Alphabet) -> Automorphism:
        return cls([move_from_json(d, alphabet.rank) for d in data], alphabet)


def move_from_json(d: dict, rank: int) -> ElementaryMove:
    kind = d.get("kind")
    if kind == "perm":
        return Permute(tuple(_gen_index(g, rank) for g in d["images"]))
    if kind == "inv":
        return InvertGen(_gen_index(d["gen"], rank))
    if kind == "rmul":
        return RightMultiply(_gen_index(d["target"], rank), _gen_index(d["mult"], rank), int(d["sign"]))
    raise ValueError(f"unknown move kind {kind!r}")


def apply(phi: Automorphism, w: Word) -> Word:
    if phi.alphabet != w.alphabet:
        raise AlphabetMismatch(f"automorphism of rank {phi.alphabet.rank} applied to word of rank {w.rank}")
    return Word._trusted(_substitute(w.letters, phi.images, phi._inverse_images), w.alphabet)


def apply_moves(phi: Automorphism, w: Word) -> Word:
    """Move-by-move application; slower reference path for :func:`apply`."""
    if phi.alphabet != w.alphabet:
        raise AlphabetMismatch(f"automorphism of rank {phi.alphabet.rank} applied to word of rank {w.rank}")
    rank = w.rank
    codes = w.letters
    for mv in phi.moves:
        imgs = [mv.image(i) for i in range(rank)]
        inv = [tuple(-y for y in reversed(img)) for img in imgs]
        codes = _substitute(codes, imgs, inv)
    return Word._trusted(free_reduce(codes), w.alphabet)


def invert_aut(phi: Automorphism) -> Automorphism:
    return Automorphism([mv.inverse() for mv in reversed(phi.moves)], phi.alphabet)


def compose(first: Automorphism, then: Automorphism) -> Automorphism:
    """The automorphism applying ``first`` and then ``then``."""
    if first.alphabet != then.alphabet:
        raise AlphabetMismatch("cannot compose automorphisms of different rank")
    return Automorphism(first.moves + then.moves, first.alphabet)


MOVE_KINDS = ("perm", "inv", "rmul")


def random_move(rng: random.Random, rank: int) -> ElementaryMove:
    kind = rng.choice(MOVE_KINDS)
    if kind == "perm":
        images = list(range(rank))
        rng.shuffle(images)
        return Permute(tuple(images))
    if kind == "inv":
        return InvertGen(rng.randrange(rank))
    target = rng.randrange(rank)
    mult = rng.randrange(rank - 1)
    if mult >= target:
        mult += 1
    return RightMultiply(target, mult, rng.choice((1, -1)))


def sample_aut(alphabet: Alphabet, depth: int, seed: int) -> Automorphism:
    """``depth`` uniformly drawn moves from a ``random.Random(seed)`` stream."""
    if depth < 0:
        raise ValueError("depth must be nonnegative")
    rng = random.Random(seed)
    return Automorphism([random_move(rng, alphabet.rank) for _ in range(depth)], alphabet)
