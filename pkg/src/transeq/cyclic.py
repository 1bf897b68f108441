"""Cyclic reduction, cyclic words, and rank-2 pattern bookkeeping."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .words import Alphabet, Word, concat_all, invert, letter_char

A, B = 1, 2  # generator codes of the rank-2 pattern alphabet
PATTERN_ALPHABET = Alphabet(2)


@dataclass(frozen=True)
class CyclicDecomposition:
    """``word = carrier * core * carrier^-1`` with ``core`` cyclically reduced."""

    carrier: Word
    core: Word

    def recompose(self) -> Word:
        return concat_all([self.carrier, self.core, invert(self.carrier)], self.core.alphabet)


def is_cyclically_reduced(w: Word) -> bool:
    x = w.letters
    return len(x) < 2 or x[0] != -x[-1]


def cyclic_decompose(v: Word) -> CyclicDecomposition:
    x = v.letters
    i, j = 0, len(x) - 1
    while i < j and x[i] == -x[j]:
        i += 1
        j -= 1
    return CyclicDecomposition(
        Word._trusted(x[:i], v.alphabet),
        Word._trusted(x[i : j + 1], v.alphabet),
    )


def cyclic_core(v: Word) -> Word:
    return cyclic_decompose(v).core


def cyclic_length(v: Word) -> int:
    x = v.letters
    i, j = 0, len(x) - 1
    while i < j and x[i] == -x[j]:
        i += 1
        j -= 1
    return j - i + 1


def _rotation_key(x: int) -> tuple[int, int]:
    # generator index first, then +1 before -1
    return (abs(x), 0 if x > 0 else 1)


def canonical_rotation(codes: tuple[int, ...]) -> tuple[int, ...]:
    if not codes:
        return codes
    keys = [_rotation_key(x) for x in codes]
    n = len(codes)
    best = min(range(n), key=lambda r: keys[r:] + keys[:r])
    return codes[best:] + codes[:best]


class CyclicWord:
    """The conjugacy class of a word, stored as its least rotation."""

    __slots__ = ("representative",)

    def __init__(self, v: Word):
        core = cyclic_core(v)
        self.representative = Word._trusted(canonical_rotation(core.letters), v.alphabet)

    def __len__(self):
        return len(self.representative)

    def __eq__(self, other):
        if not isinstance(other, CyclicWord):
            return NotImplemented
        return self.representative == other.representative

    def __hash__(self):
        return hash(self.representative)

    def __str__(self):
        return f"[{self.representative}]"

    def __repr__(self):
        return f"CyclicWord({str(self)!r})"


def cyclic_equals(u: Word, v: Word) -> bool:
    """True iff ``u`` and ``v`` are conjugate."""
    cu, cv = cyclic_core(u).letters, cyclic_core(v).letters
    if len(cu) != len(cv):
        return False
    if not cu:
        return True
    su = "".join(letter_char(x) for x in cu)
    sv = "".join(letter_char(x) for x in cv)
    return sv in su + su


def is_cyclic_permutation(u: Word, v: Word) -> bool:
    su, sv = str(u), str(v)
    return len(su) == len(sv) and sv in su + su


@dataclass(frozen=True)
class Pattern:
    """A cyclic word of F(a, b) in one of three shapes.

    ``kind`` is ``"trivial"``, ``"power"`` (``generator`` ** ``exponent``)
    or ``"blocks"`` with ``blocks = ((l_1, m_1), ..., (l_k, m_k))`` standing
    for ``a^l_1 b^m_1 ... a^l_k b^m_k``.
    """

    kind: str
    blocks: tuple[tuple[int, int], ...] = ()
    generator: Optional[int] = None
    exponent: int = 0

    @property
    def k(self) -> int:
        return len(self.blocks)

    @property
    def ell(self) -> int:
        return sum(abs(l) for l, _ in self.blocks)

    @property
    def m(self) -> int:
        return sum(abs(m) for _, m in self.blocks)

    def is_block_form(self) -> bool:
        return self.kind == "blocks"

    def word(self) -> Word:
        if self.kind == "trivial":
            return PATTERN_ALPHABET.identity()
        if self.kind == "power":
            code = self.generator + 1
            return Word._trusted((code if self.exponent > 0 else -code,) * abs(self.exponent), PATTERN_ALPHABET)
        letters: list[int] = []
        for l, m in self.blocks:
            letters.extend([A if l > 0 else -A] * abs(l))
            letters.extend([B if m > 0 else -B] * abs(m))
        return Word._trusted(tuple(letters), PATTERN_ALPHABET)

    def __str__(self):
        if self.kind == "trivial":
            return "[]"
        if self.kind == "power":
            return f"[{'ab'[self.generator]}^{self.exponent}]"
        return "[" + " ".join(f"a^{l} b^{m}" for l, m in self.blocks) + "]"


def block_decompose(w: Word) -> Pattern:
    if w.rank != 2:
        raise ValueError(f"patterns live in F(a, b); got rank {w.rank}")
    core = cyclic_core(w).letters
    if not core:
        return Pattern("trivial")
    gens = {abs(x) for x in core}
    if len(gens) == 1:
        g = core[0]
        return Pattern("power", generator=abs(g) - 1, exponent=len(core) if g > 0 else -len(core))
    n = len(core)
    # rotate to the first a-letter that follows a b-letter
    start = next(i for i in range(n) if abs(core[i]) == A and abs(core[i - 1]) == B)
    seq = core[start:] + core[:start]
    runs: list[int] = []
    prev = 0
    for x in seq:
        if prev and abs(x) == abs(prev):
            # same generator within a cyclically reduced word means same sign
            runs[-1] += 1 if x > 0 else -1
        else:
            runs.append(1 if x > 0 else -1)
        prev = x
    blocks = tuple((runs[i], runs[i + 1]) for i in range(0, len(runs), 2))
    return Pattern("blocks", blocks=blocks)


PAIR_NAMES = ("alpha1", "alpha2", "beta1", "beta2", "gamma1", "gamma2", "delta1", "delta2")

# (first letter, second letter) -> field name
PAIR_TYPES = {
    (A, B): "alpha1",
    (B, A): "alpha2",
    (-A, -B): "beta1",
    (-B, -A): "beta2",
    (A, -B): "gamma1",
    (B, -A): "gamma2",
    (-A, B): "delta1",
    (-B, A): "delta2",
}


@dataclass(frozen=True)
class PairCountTable:
    alpha1: int
    alpha2: int
    beta1: int
    beta2: int
    gamma1: int
    gamma2: int
    delta1: int
    delta2: int

    @property
    def kappa(self) -> int:
        return (self.gamma1 + self.delta1) - (self.gamma2 + self.delta2)

    def violations(self) -> list[str]:
        """Names of the pair-count identities that fail (empty when all hold)."""
        bad = []
        if self.alpha1 + self.beta1 + self.gamma1 + self.delta1 != self.alpha2 + self.beta2 + self.gamma2 + self.delta2:
            bad.append("total")
        if 2 * self.beta1 + self.gamma1 + self.delta1 != 2 * self.beta2 + self.gamma2 + self.delta2:
            bad.append("weighted")
        if self.kappa % 2:
            bad.append("kappa-even")
        else:
            if self.beta2 != self.beta1 + self.kappa // 2:
                bad.append("beta-shift")
            if self.alpha2 != self.alpha1 + self.kappa // 2:
                bad.append("alpha-shift")
        if self.alpha1 + self.beta2 != self.alpha2 + self.beta1:
            bad.append("alpha-beta")
        return bad

    def as_dict(self) -> dict:
        d = {name: getattr(self, name) for name in PAIR_NAMES}
        d["kappa"] = self.kappa
        return d


def pair_counts(pattern: Pattern) -> PairCountTable:
    """Count the mixed two-letter junctions of a block-form cyclic word.

    Every junction sits between an a-block and a b-block, so the counts are
    read off the block signs, including the wrap from the last b-block back
    to the first a-block.
    """
    if not pattern.is_block_form():
        raise ValueError(f"pair counts need both letters; got {pattern.kind} pattern")
    counts = dict.fromkeys(PAIR_NAMES, 0)
    blocks = pattern.blocks
    k = len(blocks)
    for i, (l, m) in enumerate(blocks):
        sa = A if l > 0 else -A
        sb = B if m > 0 else -B
        counts[PAIR_TYPES[sa, sb]] += 1
        next_l = blocks[(i + 1) % k][0]
        counts[PAIR_TYPES[sb, A if next_l > 0 else -A]] += 1
    return PairCountTable(**counts)
