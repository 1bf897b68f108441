"""Command line entry point.

Exit codes: 0 when every check passes, 1 when a falsification or mismatch
is found, 2 for usage, config, and parse errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .automorphisms import sample_aut
from .campaigns import LAB_CHECKS, SCHEMA, RunConfig, decomposition_record, run_verify, run_verify_spec
from .words import Alphabet, ParseError, letter_char, parse

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class ConfigError(Exception):
    pass


def _add_common(p: argparse.ArgumentParser, rank_default=None):
    p.add_argument("--rank", type=int, default=rank_default, help="rank of F_n (default: alternate 2 and 3 where applicable)")
    p.add_argument("--seed", type=int, default=0, help="64-bit campaign seed")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--out", type=Path, help="write the report here instead of stdout")


def _add_budget(p: argparse.ArgumentParser, instances: int):
    p.add_argument("--trials", type=int, default=200, help="sampled automorphisms per instance")
    p.add_argument("--depth", type=int, default=8, help="maximum number of moves per automorphism")
    p.add_argument("--instances", type=int, default=instances, help="random instances to run")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="transeq", description="Free group cyclic lengths and translation equivalence checks.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("reduce", help="reduce words and report their cyclic decompositions")
    p.add_argument("words_file", type=Path)
    _add_common(p, rank_default=2)

    p = sub.add_parser("verify", help="randomized falsification campaign for a theorem")
    p.add_argument("theorem", choices=("12", "13", "14"))
    p.add_argument("--spec", type=Path, help="JSON file with explicit instances instead of a random campaign")
    _add_common(p)
    _add_budget(p, instances=100)

    p = sub.add_parser("lab", help="check the cancellation-lab identities and closed forms")
    p.add_argument("check", choices=sorted(LAB_CHECKS))
    _add_common(p)
    _add_budget(p, instances=1000)

    p = sub.add_parser("sample-aut", help="print a sampled automorphism")
    p.add_argument("--depth", type=int, default=8)
    _add_common(p, rank_default=2)
    return parser


def _emit(text: str, out: Path | None):
    if out is None:
        sys.stdout.write(text)
    else:
        out.write_text(text, encoding="utf-8")


def _dump(report: dict) -> str:
    return json.dumps(report, indent=2) + "\n"


def _config(args) -> RunConfig:
    try:
        return RunConfig(rank=args.rank, trials=args.trials, depth=args.depth, seed=args.seed, instances=args.instances)
    except ValueError as e:
        raise ConfigError(str(e)) from e


def cmd_reduce(args) -> int:
    try:
        alphabet = Alphabet(args.rank)
        lines = args.words_file.read_text(encoding="utf-8").splitlines()
    except (ValueError, OSError) as e:
        raise ConfigError(str(e)) from e
    records, errors = [], []
    for lineno, line in enumerate(lines, 1):
        text = line.strip()
        if not text or text.startswith("#"):
            continue
        try:
            w = parse(text, alphabet)
        except ParseError as e:
            errors.append({"line": lineno, "message": str(e)})
            continue
        records.append({"line": lineno, "input": text, **decomposition_record(w)})
    if args.format == "json":
        _emit(_dump({"schema": SCHEMA, "command": "reduce", "rank": args.rank, "words": records, "errors": errors}), args.out)
    else:
        out = []
        for r in records:
            out.append(
                f"{r['input']}: reduced={r['reduced'] or '1'} |v|={r['length']} ||v||={r['cyclic_length']} "
                f"carrier={r['carrier'] or '1'} core={r['core'] or '1'}"
            )
        _emit("".join(s + "\n" for s in out), args.out)
    for e in errors:
        print(f"{args.words_file}:{e['line']}: {e['message']}", file=sys.stderr)
    return EXIT_USAGE if errors else EXIT_OK


def _verify_text(report: dict) -> str:
    lines = [f"theorem {report['theorem']}", f"instances: {report['instances']}", f"falsified: {report['falsified']}"]
    for kind, n in report.get("sources", {}).items():
        lines.append(f"  source {kind}: {n}")
    for f in report["failures"]:
        w = f["verdict"]["witness"]
        lines.append(f"FALSIFIED instance {f['instance']}: {f['left']} vs {f['right']} lengths {w['lenLeft']} != {w['lenRight']}")
        lines.append(f"  witness: {json.dumps(w['automorphism'])}")
    return "\n".join(lines) + "\n"


def cmd_verify(args) -> int:
    config = _config(args)
    if args.spec is not None:
        try:
            data = json.loads(args.spec.read_text(encoding="utf-8"))
            entries = data if isinstance(data, list) else [data]
            report = run_verify_spec(args.theorem, config, entries)
        except (OSError, ValueError, KeyError, TypeError) as e:
            raise ConfigError(f"bad spec {args.spec}: {e}") from e
    else:
        report = run_verify(args.theorem, config)
    _emit(_dump(report) if args.format == "json" else _verify_text(report), args.out)
    return EXIT_OK if report["ok"] else EXIT_FAIL


def _lab_text(report: dict) -> str:
    lines = [f"lab {report['check']}"]
    tallies = report["tallies"]
    if all(isinstance(v, dict) for v in tallies.values()):
        for case, t in tallies.items():
            lines.append(f"{case}: " + " ".join(f"{k}={v}" for k, v in t.items()))
    else:
        lines.append(" ".join(f"{k}={v}" for k, v in tallies.items()))
    for f in report["failures"]:
        lines.append("FAILED " + json.dumps(f))
    return "\n".join(lines) + "\n"


def cmd_lab(args) -> int:
    report = LAB_CHECKS[args.check](_config(args))
    _emit(_dump(report) if args.format == "json" else _lab_text(report), args.out)
    return EXIT_OK if report["ok"] else EXIT_FAIL


def cmd_sample_aut(args) -> int:
    try:
        phi = sample_aut(Alphabet(args.rank), args.depth, args.seed)
    except ValueError as e:
        raise ConfigError(str(e)) from e
    images = {chr(ord("a") + i): "".join(letter_char(x) for x in img) for i, img in enumerate(phi.images)}
    if args.format == "json":
        report = {"schema": SCHEMA, "command": "sample-aut", "rank": args.rank, "depth": args.depth, "seed": args.seed, "automorphism": phi.to_json(), "images": images}
        _emit(_dump(report), args.out)
    else:
        lines = [json.dumps(mv.to_json()) for mv in phi.moves]
        lines += [f"{g} -> {img or '1'}" for g, img in images.items()]
        _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK


COMMANDS = {"reduce": cmd_reduce, "verify": cmd_verify, "lab": cmd_lab, "sample-aut": cmd_sample_aut}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except ConfigError as e:
        print(f"transeq: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
