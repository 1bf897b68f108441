"""Seeded randomized campaigns behind ``transeq verify`` and ``transeq lab``.

Instance ``i`` of a campaign draws from ``random.Random(derive_seed(seed,
"instance", i))`` and samples its automorphisms from ``derive_seed(seed,
"aut", i)``, so any single instance can be replayed in isolation.  Reports
are plain dicts ordered by instance index; they contain no timestamps, so
the same config always yields the same JSON.
"""

from __future__ import annotations

import random
from dataclasses import asdict, dataclass
from typing import Callable, Optional

from .automorphisms import derive_seed
from .cancellation import (
    PremiseError,
    cancellation_table,
    case1_length,
    case2_length,
    case3_length,
    claim_counterexample,
    classify_carriers,
    swapped_junction_length,
    table_cross_identities,
)
from .cyclic import PATTERN_ALPHABET, Pattern, block_decompose, cyclic_decompose, cyclic_length, pair_counts
from .equivalence import (
    Budget,
    PairSource,
    check_power_exponents,
    reverse_word,
    substitute,
    verify_theorem12,
    verify_theorem13,
    verify_theorem14,
)
from .words import Alphabet, Word, concat, concat_all, invert, parse, power

SCHEMA = 1
SEED_DERIVATION = "blake2b-64 of '<seed>:instance:<i>' (instance data) and '<seed>:aut:<i>' (automorphism sampling)"


@dataclass
class RunConfig:
    rank: Optional[int] = None
    trials: int = 200
    depth: int = 8
    seed: int = 0
    instances: int = 100

    def __post_init__(self):
        if self.rank is not None:
            Alphabet(self.rank)
        if self.trials < 1:
            raise ValueError("trials must be at least 1")
        if self.depth < 0:
            raise ValueError("depth must be nonnegative")
        if self.instances < 0:
            raise ValueError("instances must be nonnegative")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be a 64-bit unsigned integer")

    def rank_for(self, index: int) -> int:
        return self.rank if self.rank is not None else (2, 3)[index % 2]

    def budget(self, index: int) -> Budget:
        return Budget(self.trials, self.depth, derive_seed(self.seed, "aut", index))


def instance_rng(seed: int, index: int) -> random.Random:
    return random.Random(derive_seed(seed, "instance", index))


# random words ---------------------------------------------------------------


def random_reduced_word(rng: random.Random, alphabet: Alphabet, length: int) -> Word:
    letters = list(range(1, alphabet.rank + 1)) + list(range(-alphabet.rank, 0))
    out: list[int] = []
    while len(out) < length:
        x = rng.choice(letters)
        if out and out[-1] == -x:
            continue
        out.append(x)
    return Word._trusted(tuple(out), alphabet)


def random_word(rng: random.Random, alphabet: Alphabet, max_length: int, min_length: int = 0) -> Word:
    return random_reduced_word(rng, alphabet, rng.randint(min_length, max_length))


def random_cyclically_reduced(rng: random.Random, alphabet: Alphabet, length: int) -> Word:
    while True:
        w = random_reduced_word(rng, alphabet, length)
        if length < 2 or w.letters[0] != -w.letters[-1]:
            return w


def random_block_pattern(rng: random.Random, min_length: int = 2, max_length: int = 12) -> Pattern:
    """A block-form pattern from a uniform cyclically reduced word with both letters."""
    while True:
        w = random_cyclically_reduced(rng, PATTERN_ALPHABET, rng.randint(min_length, max_length))
        if {abs(x) for x in w.letters} == {1, 2}:
            return block_decompose(w)


def random_carrier(rng: random.Random, core: Word, max_length: int, min_length: int = 0) -> Word:
    """A word ``A`` with ``A core A^-1`` reduced as written."""
    while True:
        A = random_word(rng, core.alphabet, max_length, min_length)
        if not A or (A.letters[-1] != -core.letters[0] and A.letters[-1] != core.letters[-1]):
            return A


def random_distinct_cores(rng: random.Random, alphabet: Alphabet, length: int) -> tuple[Word, Word]:
    """Cyclically reduced ``xc, yc`` of equal length with ``xc != yc^(+-1)``."""
    while True:
        xc = random_cyclically_reduced(rng, alphabet, length)
        yc = random_cyclically_reduced(rng, alphabet, length)
        if xc != yc and xc != invert(yc):
            return xc, yc


def conjugate_by(c: Word, w: Word) -> Word:
    return concat_all([c, w, invert(c)], w.alphabet)


# pair sources ---------------------------------------------------------------


def random_base_pair(rng: random.Random, alphabet: Alphabet, kind: str, max_length: int = 6) -> PairSource:
    """A pair source of the given kind built from short random words."""
    if kind == "reverse":
        return PairSource(
            "reverse",
            {
                "pattern": random_word(rng, PATTERN_ALPHABET, 6, 1),
                "g": random_word(rng, alphabet, max_length // 2 + 1, 1),
                "h": random_word(rng, alphabet, max_length // 2 + 1, 1),
            },
        )
    if kind == "conjugate":
        return PairSource("conjugate", {"g": random_word(rng, alphabet, max_length, 1), "conjugator": random_word(rng, alphabet, max_length, 1)})
    if kind == "inverse":
        return PairSource("inverse", {"g": random_word(rng, alphabet, max_length, 1), "conjugator": random_word(rng, alphabet, max_length)})
    raise ValueError(f"no random base pair of kind {kind!r}")


def random_power_exponents(rng: random.Random, max_exp: int = 5) -> tuple[int, int, int, int]:
    p, q = rng.randint(1, max_exp), rng.randint(1, max_exp)
    lo, hi = max(1, p + q - max_exp), min(max_exp, p + q - 1)
    i = rng.randint(lo, hi)
    return p, q, i, p + q - i


def random_pair_source(rng: random.Random, alphabet: Alphabet, kind: str) -> PairSource:
    if kind in ("reverse", "conjugate", "inverse"):
        return random_base_pair(rng, alphabet, kind)
    if kind == "power":
        while True:
            base = random_base_pair(rng, alphabet, rng.choice(("conjugate", "inverse", "reverse")), 4)
            g, h = base.pair()
            if g != invert(h):
                break
        p, q, i, j = random_power_exponents(rng, 3)
        return PairSource("power", {"g": g, "h": h, "p": p, "q": q, "i": i, "j": j})
    if kind == "user":
        inner = random_base_pair(rng, alphabet, rng.choice(("conjugate", "inverse", "reverse")))
        g, h = inner.pair()
        return PairSource("user", {"g": g, "h": h})
    raise ValueError(f"unknown pair source {kind!r}")


# verify campaigns -----------------------------------------------------------


def _tally(records: list[dict]) -> dict:
    falsified = sum(1 for r in records if r["verdict"]["status"] == "Falsified")
    return {"instances": len(records), "falsified": falsified, "passed": len(records) - falsified}


def _report(command: str, config: RunConfig, records: list[dict], **extra) -> dict:
    tally = _tally(records)
    report = {
        "schema": SCHEMA,
        "command": command,
        "config": asdict(config),
        "seed_derivation": SEED_DERIVATION,
        **tally,
        **extra,
        "failures": [r for r in records if r["verdict"]["status"] == "Falsified"],
    }
    report["ok"] = tally["falsified"] == 0
    return report


def _record(index: int, rank: int, left: Word, right: Word, verdict, **fields) -> dict:
    return {"instance": index, "rank": rank, **fields, "left": str(left), "right": str(right), "verdict": verdict.to_json()}


def theorem12_instance(config: RunConfig, index: int) -> dict:
    rng = instance_rng(config.seed, index)
    rank = config.rank_for(index)
    alphabet = Alphabet(rank)
    pattern = random_word(rng, PATTERN_ALPHABET, 12)
    g = random_word(rng, alphabet, 10)
    h = random_word(rng, alphabet, 10)
    return theorem12_record(index, pattern, g, h, config.budget(index))


def theorem12_record(index, pattern, g, h, budget) -> dict:
    verdict = verify_theorem12(pattern, g, h, budget)
    return _record(
        index,
        g.rank,
        substitute(pattern, g, h),
        substitute(reverse_word(pattern), g, h),
        verdict,
        pattern=str(pattern),
        g=str(g),
        h=str(h),
    )


THEOREM13_KINDS = ("conjugate", "inverse", "reverse")


def theorem13_instance(config: RunConfig, index: int) -> dict:
    rng = instance_rng(config.seed, index)
    alphabet = Alphabet(config.rank_for(index))
    kind = THEOREM13_KINDS[index % len(THEOREM13_KINDS)]
    while True:
        source = random_base_pair(rng, alphabet, kind)
        g, h = source.pair()
        if g != invert(h):
            break
    p, q, i, j = random_power_exponents(rng)
    return theorem13_record(index, source, g, h, (p, q, i, j), config.budget(index))


def theorem13_record(index, source, g, h, exps, budget) -> dict:
    p, q, i, j = exps
    verdict = verify_theorem13(g, h, p, q, i, j, budget)
    return _record(
        index,
        g.rank,
        concat(power(g, p), power(h, q)),
        concat(power(g, i), power(h, j)),
        verdict,
        source=source.to_json(),
        exponents=[p, q, i, j],
    )


def theorem14_instance(config: RunConfig, index: int) -> dict:
    rng = instance_rng(config.seed, index)
    alphabet = Alphabet(config.rank_for(index))
    kind = ("reverse", "power", "conjugate", "inverse", "user")[index % 5]
    source = random_pair_source(rng, alphabet, kind)
    pattern = random_word(rng, PATTERN_ALPHABET, 12)
    return theorem14_record(index, pattern, source, config.budget(index))


def theorem14_record(index, pattern, source, budget) -> dict:
    verdict = verify_theorem14(pattern, source, budget)
    g, h = source.pair()
    return _record(
        index,
        g.rank,
        substitute(pattern, g, h),
        substitute(pattern, h, g),
        verdict,
        pattern=str(pattern),
        source=source.to_json(),
    )


INSTANCE_BUILDERS: dict[str, Callable[[RunConfig, int], dict]] = {
    "12": theorem12_instance,
    "13": theorem13_instance,
    "14": theorem14_instance,
}


def run_verify(theorem: str, config: RunConfig, progress=None) -> dict:
    build = INSTANCE_BUILDERS[theorem]
    records = []
    for i in range(config.instances):
        records.append(build(config, i))
        if progress:
            progress(i)
    by_kind: dict[str, int] = {}
    for r in records:
        if "source" in r:
            by_kind[r["source"]["kind"]] = by_kind.get(r["source"]["kind"], 0) + 1
    extra = {"theorem": theorem}
    if by_kind:
        extra["sources"] = dict(sorted(by_kind.items()))
    return _report("verify", config, records, **extra)


def parse_spec_entry(theorem: str, entry: dict, index: int, config: RunConfig) -> dict:
    """Run one user-specified instance.  Raises ``ValueError``/``KeyError`` on bad specs."""
    rank = int(entry.get("rank", config.rank or 2))
    alphabet = Alphabet(rank)
    budget = config.budget(index)
    if theorem == "12":
        pattern = parse(entry["pattern"], PATTERN_ALPHABET)
        return theorem12_record(index, pattern, parse(entry["g"], alphabet), parse(entry["h"], alphabet), budget)
    if theorem == "13":
        exps = tuple(int(entry[k]) for k in "pqij")
        check_power_exponents(*exps)
        source = PairSource.from_json(entry["source"], alphabet)
        g, h = source.pair()
        if g == invert(h):
            raise ValueError(f"instance {index}: pair has g = h^-1")
        return theorem13_record(index, source, g, h, exps, budget)
    if theorem == "14":
        pattern = parse(entry["pattern"], PATTERN_ALPHABET)
        return theorem14_record(index, pattern, PairSource.from_json(entry["source"], alphabet), budget)
    raise ValueError(f"unknown theorem {theorem!r}")


def run_verify_spec(theorem: str, config: RunConfig, entries: list[dict]) -> dict:
    # validate everything before running anything
    for entry in entries:
        if not isinstance(entry, dict):
            raise ValueError("each spec entry must be a JSON object")
        if theorem == "13":
            check_power_exponents(*(int(entry[k]) for k in "pqij"))
    records = [parse_spec_entry(theorem, e, i, config) for i, e in enumerate(entries)]
    return _report("verify", config, records, theorem=theorem, spec_instances=len(entries))


# lab campaigns --------------------------------------------------------------


def _lab_report(check: str, config: RunConfig, tallies: dict, failures: list[dict]) -> dict:
    return {
        "schema": SCHEMA,
        "command": "lab",
        "check": check,
        "config": asdict(config),
        "seed_derivation": SEED_DERIVATION,
        "tallies": tallies,
        "failures": failures,
        "ok": not failures,
    }


def identities_instance(seed: int, index: int) -> Word:
    rng = instance_rng(seed, index)
    while True:
        w = random_cyclically_reduced(rng, PATTERN_ALPHABET, rng.randint(2, 40))
        if {abs(x) for x in w.letters} == {1, 2}:
            return w


def run_lab_identities(config: RunConfig) -> dict:
    failures = []
    for i in range(config.instances):
        w = identities_instance(config.seed, i)
        table = pair_counts(block_decompose(w))
        bad = table.violations()
        if bad:
            failures.append({"instance": i, "word": str(w), "counts": table.as_dict(), "violated": bad})
    tallies = {"checked": config.instances, "passed": config.instances - len(failures), "failed": len(failures)}
    return _lab_report("identities", config, tallies, failures)


def claim_instance(seed: int, index: int, rank: int) -> tuple[Word, Word]:
    rng = instance_rng(seed, index)
    alphabet = Alphabet(rank)
    n = rng.randint(1, 20)
    return random_cyclically_reduced(rng, alphabet, n), random_cyclically_reduced(rng, alphabet, n)


def run_lab_claim(config: RunConfig) -> dict:
    failures = []
    skipped = 0
    for i in range(config.instances):
        xc, yc = claim_instance(config.seed, i, config.rank or 2)
        try:
            bad = claim_counterexample(xc, yc)
        except PremiseError:
            skipped += 1
            continue
        if bad:
            failures.append({"instance": i, "x": str(xc), "y": str(yc), "product": bad[0], "signs": list(bad[1])})
    checked = config.instances - skipped
    tallies = {"checked": checked, "passed": checked - len(failures), "failed": len(failures), "skipped": skipped}
    return _lab_report("claim", config, tallies, failures)


def case1_config(rng: random.Random, alphabet: Alphabet):
    """Random ``(xc, yc, A, B, pattern)`` whose carriers fall in case 1."""
    n = rng.randint(1, 8)
    xc = random_cyclically_reduced(rng, alphabet, n)
    yc = random_cyclically_reduced(rng, alphabet, n)
    while True:
        A = random_carrier(rng, xc, 6, 1)
        B = random_carrier(rng, yc, 6, 1)
        if classify_carriers(A, B).tag == "case1":
            return xc, yc, A, B, random_block_pattern(rng)


def case2_config(rng: random.Random, alphabet: Alphabet):
    """Random ``(xc, yc, A, pattern)`` meeting the case 2 premises; ``A`` is shared."""
    n = rng.randint(1, 8)
    xc, yc = random_distinct_cores(rng, alphabet, n)
    while True:
        A = random_carrier(rng, xc, 4)
        if not A or (A.letters[-1] != -yc.letters[0] and A.letters[-1] != yc.letters[-1]):
            return xc, yc, A, random_block_pattern(rng)


def case3_config(rng: random.Random, alphabet: Alphabet):
    """Random ``(xc, yc, A, B, pattern)`` whose carriers fall in case 3."""
    n = rng.randint(1, 8)
    xc, yc = random_distinct_cores(rng, alphabet, n)
    if rng.random() < 0.5:
        xc, yc = yc, xc
    while True:
        A = random_carrier(rng, xc, 4)
        C = random_word(rng, alphabet, 5, 1)
        B = concat(A, C)
        if len(B) != len(A) + len(C):
            continue
        if B and B.letters[-1] in (-yc.letters[0], yc.letters[-1]):
            continue
        if rng.random() < 0.5:
            xc, yc, A, B = yc, xc, B, A
        return xc, yc, A, B, random_block_pattern(rng)


def run_lab_case_formulas(config: RunConfig, include_case3: bool = True) -> dict:
    failures = []
    tallies = {"case1": {"checked": 0, "mismatched": 0}, "case2": {"checked": 0, "mismatched": 0}}
    if include_case3:
        tallies["case3"] = {"checked": 0, "mismatched": 0, "skipped": 0}

    def fail(case, i, **info):
        tallies[case]["mismatched"] += 1
        failures.append({"case": case, "instance": i, **{k: str(v) if isinstance(v, (Word, Pattern)) else v for k, v in info.items()}})

    for i in range(config.instances):
        alphabet = Alphabet(config.rank_for(i))
        rng = random.Random(derive_seed(config.seed, "case1", i))
        xc, yc, A, B, pattern = case1_config(rng, alphabet)
        X, Y = conjugate_by(A, xc), conjugate_by(B, yc)
        oracle = cyclic_length(substitute(pattern.word(), X, Y))
        got = case1_length(xc, yc, A, B, pattern)
        tallies["case1"]["checked"] += 1
        if got != oracle:
            fail("case1", i, X=X, Y=Y, pattern=pattern, formula=got, oracle=oracle)

        rng = random.Random(derive_seed(config.seed, "case2", i))
        xc, yc, A, pattern = case2_config(rng, alphabet)
        X, Y = conjugate_by(A, xc), conjugate_by(A, yc)
        oracle = cyclic_length(substitute(pattern.word(), X, Y))
        oracle_swapped = cyclic_length(substitute(pattern.word(), Y, X))
        got = case2_length(xc, yc, pattern)
        got_swapped = case2_length(yc, xc, pattern)
        tallies["case2"]["checked"] += 1
        if (
            got != oracle
            or got_swapped != oracle_swapped
            or got != got_swapped
            or swapped_junction_length(xc, yc, pattern) != got_swapped
            or not table_cross_identities(cancellation_table(xc, yc, pattern))
        ):
            fail("case2", i, X=X, Y=Y, pattern=pattern, formula=got, oracle=oracle, formula_swapped=got_swapped)

        if include_case3:
            rng = random.Random(derive_seed(config.seed, "case3", i))
            xc, yc, A, B, pattern = case3_config(rng, alphabet)
            X, Y = conjugate_by(A, xc), conjugate_by(B, yc)
            try:
                got = case3_length(xc, yc, A, B, pattern)
            except PremiseError:
                # the rotated core equals the other core up to inversion
                tallies["case3"]["skipped"] += 1
                continue
            oracle = cyclic_length(substitute(pattern.word(), X, Y))
            tallies["case3"]["checked"] += 1
            if got != oracle:
                fail("case3", i, X=X, Y=Y, pattern=pattern, formula=got, oracle=oracle)
    return _lab_report("case-formulas", config, tallies, failures)


LAB_CHECKS = {
    "identities": run_lab_identities,
    "claim": run_lab_claim,
    "case-formulas": run_lab_case_formulas,
}


def decomposition_record(w: Word) -> dict:
    d = cyclic_decompose(w)
    return {"reduced": str(w), "length": len(w), "cyclic_length": len(d.core), "carrier": str(d.carrier), "core": str(d.core)}
