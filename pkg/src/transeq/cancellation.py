"""Cancellation bookkeeping for products of conjugates in F_n.

Given ``X = A Xc A^-1`` and ``Y = B Yc B^-1`` (cyclic decompositions), the
cyclic length of ``w(X, Y)`` for a block-form pattern ``w`` has a closed
form that depends on how ``A^-1 B`` cancels.  This module computes those
closed forms together with the ingredients they need, so each one can be
compared against direct reduction.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Optional, Sequence

from .automorphisms import Automorphism, apply
from .cyclic import (
    Pattern,
    cyclic_decompose,
    is_cyclically_reduced,
    pair_counts,
)
from .words import Word, concat, invert, power


class CaseMismatch(ValueError):
    """A closed form was asked for outside the case it covers."""


class PremiseError(ValueError):
    """Inputs violate the hypotheses of a lab operation."""


def reduce_with_provenance(factors: Sequence[Sequence[int]]) -> list[tuple[int, int]]:
    """Stack reduction of a product, keeping ``(letter, factor index)`` pairs.

    Left-to-right stack reduction fixes which occurrences cancel; for a
    product of two reduced factors this is the only possible choice.
    """
    out: list[tuple[int, int]] = []
    for idx, factor in enumerate(factors):
        for x in factor:
            if out and out[-1][0] == -x:
                out.pop()
            else:
                out.append((x, idx))
    return out


def consumed(factors: Sequence[Sequence[int]], index: int) -> int:
    """How many letters of ``factors[index]`` are deleted by the reduction."""
    survivors = sum(1 for _, i in reduce_with_provenance(factors) if i == index)
    return len(factors[index]) - survivors


def completely_cancelled(factors: Sequence[Sequence[int]], index: int) -> bool:
    return consumed(factors, index) == len(factors[index])


@dataclass(frozen=True)
class CaseClass:
    """How ``A^-1 B`` cancels.

    For ``case3``, ``direction`` is ``"A"`` when ``A^-1`` is the factor that
    vanishes (so ``B = A C``) and ``"B"`` when ``B`` vanishes (``A = B C``).
    """

    tag: str
    direction: Optional[str] = None
    C: Optional[Word] = None
    carrier_x: Optional[Word] = None
    carrier_y: Optional[Word] = None
    core_x: Optional[Word] = None
    core_y: Optional[Word] = None


def classify_carriers(A: Word, B: Word) -> CaseClass:
    Ainv = invert(A)
    factors = (Ainv.letters, B.letters)
    a_gone = completely_cancelled(factors, 0)
    b_gone = completely_cancelled(factors, 1)
    if a_gone and b_gone:
        return CaseClass("case2", carrier_x=A, carrier_y=B)
    if a_gone:
        return CaseClass("case3", "A", concat(Ainv, B), carrier_x=A, carrier_y=B)
    if b_gone:
        return CaseClass("case3", "B", concat(invert(B), A), carrier_x=A, carrier_y=B)
    return CaseClass("case1", carrier_x=A, carrier_y=B)


def classify_words(X: Word, Y: Word) -> CaseClass:
    dx, dy = cyclic_decompose(X), cyclic_decompose(Y)
    if not dx.core or not dy.core:
        raise PremiseError("case analysis needs nontrivial cyclic cores")
    c = classify_carriers(dx.carrier, dy.carrier)
    return CaseClass(c.tag, c.direction, c.C, dx.carrier, dy.carrier, dx.core, dy.core)


def classify_case(g: Word, h: Word, phi: Automorphism) -> CaseClass:
    return classify_words(apply(phi, g), apply(phi, h))


def cancellation_length(u: Word, v: Word) -> int:
    return len(u) + len(v) - len(concat(u, v))


@dataclass(frozen=True)
class CancellationTable:
    p1: int
    p2: int
    q1: int
    q2: int
    r1: int
    r2: int
    s1: int
    s2: int
    ell: int
    m: int


def cancellation_table(xc: Word, yc: Word, pattern: Pattern) -> CancellationTable:
    if not xc or not yc:
        raise PremiseError("cancellation table needs nonempty words")
    xi, yi = invert(xc), invert(yc)
    return CancellationTable(
        p1=cancellation_length(xc, yc),
        p2=cancellation_length(yc, xc),
        q1=cancellation_length(xi, yi),
        q2=cancellation_length(yi, xi),
        r1=cancellation_length(xc, yi),
        r2=cancellation_length(yc, xi),
        s1=cancellation_length(xi, yc),
        s2=cancellation_length(yi, xc),
        ell=pattern.ell,
        m=pattern.m,
    )


def _require_block_form(pattern: Pattern):
    if not pattern.is_block_form():
        raise PremiseError(f"closed forms need a block-form pattern, got {pattern.kind}")


def _require_core(w: Word, name: str):
    if not w:
        raise PremiseError(f"{name} must be nonempty")
    if not is_cyclically_reduced(w):
        raise PremiseError(f"{name} = {w} is not cyclically reduced")


def _require_conjugate_form(carrier: Word, core: Word, name: str):
    # carrier * core * carrier^-1 must be reduced as written
    d = cyclic_decompose(concat(concat(carrier, core), invert(carrier)))
    if d.carrier != carrier or d.core != core:
        raise PremiseError(f"{name}: {carrier} {core} {carrier}^-1 is not reduced as written")


def case1_length(xc: Word, yc: Word, A: Word, B: Word, pattern: Pattern) -> int:
    _require_block_form(pattern)
    _require_core(xc, "core of X")
    _require_core(yc, "core of Y")
    _require_conjugate_form(A, xc, "X")
    _require_conjugate_form(B, yc, "Y")
    tag = classify_carriers(A, B).tag
    if tag != "case1":
        raise CaseMismatch(f"carriers {A}, {B} fall in {tag}")
    k = pattern.k
    ab = concat(invert(A), B)
    return pattern.ell * len(xc) + pattern.m * len(yc) + k * len(ab) + k * len(invert(ab))


def _check_distinct(xc: Word, yc: Word):
    if xc == yc or xc == invert(yc):
        raise PremiseError(f"{xc} equals {yc} or its inverse")


def junction_length(xc: Word, yc: Word, pattern: Pattern) -> int:
    """Cyclic length of ``[xc^l1 yc^m1 ... xc^lk yc^mk]`` from junction data.

    Valid when no factor is completely cancelled by its neighbours; callers
    establish that (see :func:`claim_holds`).
    """
    t = cancellation_table(xc, yc, pattern)
    n = pair_counts(pattern)
    return (
        t.ell * len(xc)
        + t.m * len(yc)
        - (t.p1 * n.alpha1 + t.p2 * n.alpha2)
        - (t.q1 * n.beta1 + t.q2 * n.beta2)
        - (t.r1 * n.gamma1 + t.r2 * n.gamma2)
        - (t.s1 * n.delta1 + t.s2 * n.delta2)
    )


def swapped_junction_length(xc: Word, yc: Word, pattern: Pattern) -> int:
    """Same as :func:`junction_length` for ``w(h, g)``, written with the
    index-swapped coefficients instead of by swapping the arguments."""
    t = cancellation_table(xc, yc, pattern)
    n = pair_counts(pattern)
    return (
        t.ell * len(yc)
        + t.m * len(xc)
        - (t.p2 * n.alpha1 + t.p1 * n.alpha2)
        - (t.q2 * n.beta1 + t.q1 * n.beta2)
        - (t.r2 * n.gamma1 + t.r1 * n.gamma2)
        - (t.s2 * n.delta1 + t.s1 * n.delta2)
    )


def _case2_premises(xc: Word, yc: Word, pattern: Pattern):
    _require_block_form(pattern)
    _require_core(xc, "core of X")
    _require_core(yc, "core of Y")
    if len(xc) != len(yc):
        raise PremiseError(f"core lengths differ: {len(xc)} vs {len(yc)}")
    _check_distinct(xc, yc)


def case2_length(xc: Word, yc: Word, pattern: Pattern) -> int:
    _case2_premises(xc, yc, pattern)
    return junction_length(xc, yc, pattern)


def middle_consumed(left: Word, middle: Word, right: Word) -> int:
    return consumed((left.letters, middle.letters, right.letters), 1)


def _claim_premises(xc: Word, yc: Word):
    _require_core(xc, "first word")
    _require_core(yc, "second word")
    if len(xc) != len(yc):
        raise PremiseError(f"lengths differ: {len(xc)} vs {len(yc)}")
    _check_distinct(xc, yc)


def claim_counterexample(xc: Word, yc: Word) -> Optional[tuple[str, tuple[int, int, int]]]:
    """First sign pattern whose middle factor vanishes, or None."""
    _claim_premises(xc, yc)
    for outer, inner, label in ((xc, yc, "XYX"), (yc, xc, "YXY")):
        for signs in product((1, -1), repeat=3):
            left, mid, right = (power(w, e) for w, e in zip((outer, inner, outer), signs))
            if middle_consumed(left, mid, right) >= len(mid):
                return label, signs
    return None


def claim_holds(xc: Word, yc: Word) -> bool:
    return claim_counterexample(xc, yc) is None


@dataclass(frozen=True)
class Case3Split:
    """``C = D E`` where conjugating by ``D`` only rotates the core."""

    D: Word
    E: Word
    Z: Word


def case3_split(xc: Word, C: Word) -> Case3Split:
    if not C:
        raise PremiseError("C must be nonempty")
    if not xc:
        raise PremiseError("core must be nonempty")
    x = xc.letters
    c0 = C.letters[0]
    left = c0 == x[0]  # C^-1 ends in c0^-1, meeting the first letter
    right = x[-1] == -c0  # last letter meets the start of C
    if left and right:
        raise PremiseError(f"cancellation on both sides of {C}^-1 {xc} {C}")
    if not is_cyclically_reduced(xc):
        raise PremiseError(f"{xc} is not cyclically reduced")
    z = list(x)
    i = 0
    for c in C.letters:
        if z[0] == c:
            z = z[1:] + z[:1]
        elif z[-1] == -c:
            z = z[-1:] + z[:-1]
        else:
            break
        i += 1
    alphabet = xc.alphabet
    return Case3Split(
        Word._trusted(C.letters[:i], alphabet),
        Word._trusted(C.letters[i:], alphabet),
        Word._trusted(tuple(z), alphabet),
    )


def case3_length(xc: Word, yc: Word, A: Word, B: Word, pattern: Pattern) -> int:
    """Closed form when exactly one of ``A^-1``, ``B`` vanishes in ``A^-1 B``."""
    _require_block_form(pattern)
    _require_core(xc, "core of X")
    _require_core(yc, "core of Y")
    _require_conjugate_form(A, xc, "X")
    _require_conjugate_form(B, yc, "Y")
    case = classify_carriers(A, B)
    if case.tag != "case3":
        raise CaseMismatch(f"carriers {A}, {B} fall in {case.tag}")
    if case.direction == "A":
        split = case3_split(xc, case.C)
        xs, ys = split.Z, yc
    else:
        split = case3_split(yc, case.C)
        xs, ys = xc, split.Z
    if split.E:
        return pattern.ell * len(xs) + pattern.m * len(ys) + 2 * pattern.k * len(split.E)
    _case2_premises(xs, ys, pattern)
    return junction_length(xs, ys, pattern)


def formula_length(X: Word, Y: Word, pattern: Pattern) -> int:
    """Closed-form ``||w(X, Y)||`` dispatched on the cancellation case."""
    c = classify_words(X, Y)
    if c.tag == "case1":
        return case1_length(c.core_x, c.core_y, c.carrier_x, c.carrier_y, pattern)
    if c.tag == "case2":
        return case2_length(c.core_x, c.core_y, pattern)
    return case3_length(c.core_x, c.core_y, c.carrier_x, c.carrier_y, pattern)


def table_cross_identities(t: CancellationTable) -> bool:
    return t.p1 == t.q2 and t.q1 == t.p2 and t.r1 == t.r2 and t.s1 == t.s2

