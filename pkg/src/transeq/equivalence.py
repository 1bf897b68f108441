"""Translation equivalence by sampled automorphisms.

Two words are translation equivalent when every automorphism gives them the
same cyclic length.  Sampling can only refute that, so a verdict is either
``Falsified`` (with a replayable witness) or ``NoCounterexampleFound``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .automorphisms import Automorphism, apply, derive_seed, sample_aut
from .cyclic import PATTERN_ALPHABET, cyclic_length
from .words import Alphabet, AlphabetMismatch, Word, concat, concat_all, invert, parse, power

FALSIFIED = "Falsified"
NO_COUNTEREXAMPLE = "NoCounterexampleFound"

DEFAULT_TRIALS = 200
DEFAULT_DEPTH = 8


def substitute(pattern: Word, g: Word, h: Word) -> Word:
    """Image of ``pattern`` under ``a -> g, b -> h``."""
    if pattern.rank != 2:
        raise ValueError(f"pattern must be a word in F(a, b), got rank {pattern.rank}")
    if g.alphabet != h.alphabet:
        raise AlphabetMismatch("g and h must share an alphabet")
    pieces = {1: g, -1: invert(g), 2: h, -2: invert(h)}
    return concat_all((pieces[x] for x in pattern.letters), g.alphabet)


def reverse_word(w: Word) -> Word:
    """``w^R(a, b) = w(a^-1, b^-1)^-1``."""
    a_inv, b_inv = (invert(x) for x in PATTERN_ALPHABET.generators())
    return invert(substitute(w, a_inv, b_inv))


@dataclass(frozen=True)
class Budget:
    trials: int = DEFAULT_TRIALS
    depth: int = DEFAULT_DEPTH
    seed: int = 0


@dataclass(frozen=True)
class Witness:
    automorphism: Automorphism
    len_left: int
    len_right: int
    trial: int

    def to_json(self) -> dict:
        return {
            "automorphism": self.automorphism.to_json(),
            "lenLeft": self.len_left,
            "lenRight": self.len_right,
            "trial": self.trial,
        }


@dataclass(frozen=True)
class EquivalenceVerdict:
    status: str
    trials: int
    depth: int
    seed: int
    witness: Optional[Witness] = None

    @property
    def falsified(self) -> bool:
        return self.status == FALSIFIED

    def to_json(self) -> dict:
        d = {"status": self.status}
        if self.witness is not None:
            d["witness"] = self.witness.to_json()
        d.update(trials=self.trials, depth=self.depth, seed=self.seed)
        return d


def trial_automorphism(alphabet: Alphabet, trial: int, depth: int, seed: int) -> Automorphism:
    """Trial 0 is the identity; trial ``t`` cycles depth through ``1..depth``."""
    if trial == 0 or depth == 0:
        return Automorphism.identity(alphabet)
    d = 1 + (trial - 1) % depth
    return sample_aut(alphabet, d, derive_seed(seed, "trial", trial))


def recheck_witness(g: Word, h: Word, witness_json: dict) -> tuple[int, int]:
    phi = Automorphism.from_json(witness_json["automorphism"], g.alphabet)
    return cyclic_length(apply(phi, g)), cyclic_length(apply(phi, h))


def check_equivalence(g: Word, h: Word, trials: int = DEFAULT_TRIALS, depth: int = DEFAULT_DEPTH, seed: int = 0) -> EquivalenceVerdict:
    if trials < 1:
        raise ValueError("trials must be at least 1")
    if depth < 0:
        raise ValueError("depth must be nonnegative")
    if g.alphabet != h.alphabet:
        raise AlphabetMismatch("g and h must share an alphabet")
    for t in range(trials + 1):
        phi = trial_automorphism(g.alphabet, t, depth, seed)
        left = cyclic_length(apply(phi, g))
        right = cyclic_length(apply(phi, h))
        if left != right:
            return EquivalenceVerdict(FALSIFIED, trials, depth, seed, Witness(phi, left, right, t))
    return EquivalenceVerdict(NO_COUNTEREXAMPLE, trials, depth, seed)


SOURCE_KINDS = ("reverse", "power", "conjugate", "inverse", "user")


@dataclass(frozen=True)
class PairSource:
    """A recipe for a pair of translation equivalent words.

    ``reverse``: ``(w(g, h), w^R(g, h))``; params pattern, g, h.
    ``power``: ``(g^p h^q, g^i h^j)`` for an equivalent base pair; params g, h, p, q, i, j.
    ``conjugate``: ``(g, c g c^-1)``; params g, conjugator.
    ``inverse``: ``(g, c g^-1 c^-1)``; params g, conjugator (may be empty).
    ``user``: ``(g, h)`` taken on trust.
    """

    kind: str
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in SOURCE_KINDS:
            raise ValueError(f"unknown pair source {self.kind!r}")
        if self.kind == "power":
            p, q, i, j = (self.params[x] for x in "pqij")
            check_power_exponents(p, q, i, j)
            if self.params["g"] == invert(self.params["h"]):
                raise ValueError("power pair needs g != h^-1")

    def pair(self) -> tuple[Word, Word]:
        P = self.params
        if self.kind == "reverse":
            return substitute(P["pattern"], P["g"], P["h"]), substitute(reverse_word(P["pattern"]), P["g"], P["h"])
        if self.kind == "power":
            g, h = P["g"], P["h"]
            return concat(power(g, P["p"]), power(h, P["q"])), concat(power(g, P["i"]), power(h, P["j"]))
        if self.kind == "conjugate":
            c = P["conjugator"]
            return P["g"], concat_all([c, P["g"], invert(c)], c.alphabet)
        if self.kind == "inverse":
            g = P["g"]
            c = P.get("conjugator") or g.alphabet.identity()
            return g, concat_all([c, invert(g), invert(c)], g.alphabet)
        return P["g"], P["h"]

    def to_json(self) -> dict:
        d = {"kind": self.kind}
        for key, val in self.params.items():
            d[key] = str(val) if isinstance(val, Word) else val
        return d

    @classmethod
    def from_json(cls, d: dict, alphabet: Alphabet) -> PairSource:
        kind = d.get("kind")
        if kind not in SOURCE_KINDS:
            raise ValueError(f"unknown pair source {kind!r}")
        params = {}
        for key, val in d.items():
            if key == "kind":
                continue
            if key == "pattern":
                params[key] = parse(val, PATTERN_ALPHABET)
            elif key in ("g", "h", "conjugator"):
                params[key] = parse(val, alphabet)
            elif key in ("p", "q", "i", "j"):
                params[key] = int(val)
            else:
                raise ValueError(f"unexpected field {key!r} in {kind} source")
        required = {
            "reverse": ("pattern", "g", "h"),
            "power": ("g", "h", "p", "q", "i", "j"),
            "conjugate": ("g", "conjugator"),
            "inverse": ("g",),
            "user": ("g", "h"),
        }[kind]
        missing = [k for k in required if k not in params]
        if missing:
            raise ValueError(f"{kind} source is missing {', '.join(missing)}")
        return cls(kind, params)


def check_power_exponents(p: int, q: int, i: int, j: int):
    if min(p, q, i, j) < 1:
        raise ValueError(f"exponents must be positive, got {(p, q, i, j)}")
    if p + q != i + j:
        raise ValueError(f"p + q = {p + q} but i + j = {i + j}")


def verify_theorem12(pattern: Word, g: Word, h: Word, budget: Budget = Budget()) -> EquivalenceVerdict:
    left = substitute(pattern, g, h)
    right = substitute(reverse_word(pattern), g, h)
    return check_equivalence(left, right, budget.trials, budget.depth, budget.seed)


def verify_theorem13(g: Word, h: Word, p: int, q: int, i: int, j: int, budget: Budget = Budget()) -> EquivalenceVerdict:
    check_power_exponents(p, q, i, j)
    if g == invert(h):
        raise ValueError("theorem needs g != h^-1")
    left = concat(power(g, p), power(h, q))
    right = concat(power(g, i), power(h, j))
    return check_equivalence(left, right, budget.trials, budget.depth, budget.seed)


def verify_theorem14(pattern: Word, source: PairSource, budget: Budget = Budget()) -> EquivalenceVerdict:
    g, h = source.pair()
    return check_equivalence(substitute(pattern, g, h), substitute(pattern, h, g), budget.trials, budget.depth, budget.seed)
