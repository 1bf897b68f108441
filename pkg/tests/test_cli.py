import json

import pytest

from transeq.cli import main


@pytest.fixture
def words_file(tmp_path):
    p = tmp_path / "words.txt"
    p.write_text("# comment\nabA\n\naA\nabaBA\n", encoding="utf-8")
    return p


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_reduce_text(capsys, words_file):
    code, out, _ = run(capsys, "reduce", str(words_file))
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "abA: reduced=abA |v|=3 ||v||=1 carrier=a core=b"
    assert lines[1] == "aA: reduced=1 |v|=0 ||v||=0 carrier=1 core=1"
    assert lines[2] == "abaBA: reduced=abaBA |v|=5 ||v||=1 carrier=ab core=a"


def test_reduce_json(capsys, words_file):
    code, out, _ = run(capsys, "reduce", str(words_file), "--format", "json")
    report = json.loads(out)
    assert code == 0
    assert report["schema"] == 1
    assert report["words"][1] == {"line": 4, "input": "aA", "reduced": "", "length": 0, "cyclic_length": 0, "carrier": "", "core": ""}


def test_reduce_parse_error_exit_code(capsys, tmp_path):
    p = tmp_path / "bad.txt"
    p.write_text("ab\nxy\n", encoding="utf-8")
    code, out, err = run(capsys, "reduce", str(p), "--rank", "2")
    assert code == 2
    assert ":2:" in err and "'x'" in err
    assert out.startswith("ab:")


def test_reduce_missing_file(capsys, tmp_path):
    code, _, err = run(capsys, "reduce", str(tmp_path / "nope.txt"))
    assert code == 2


def test_verify_campaign_json(capsys, tmp_path):
    out = tmp_path / "r.json"
    code, _, _ = run(capsys, "verify", "14", "--instances", "10", "--trials", "20", "--format", "json", "--out", str(out))
    report = json.loads(out.read_text())
    assert code == 0
    assert report["falsified"] == 0
    assert report["instances"] == 10
    assert report["schema"] == 1
    assert set(report["sources"]) == {"reverse", "power", "conjugate", "inverse", "user"}


def test_verify_text_summary(capsys):
    code, out, _ = run(capsys, "verify", "12", "--instances", "6", "--trials", "10")
    assert code == 0
    assert "falsified: 0" in out


def test_verify13_sum_mismatch_is_config_error(capsys, tmp_path):
    spec = tmp_path / "s.json"
    spec.write_text(json.dumps({"p": 1, "q": 1, "i": 2, "j": 1, "source": {"kind": "conjugate", "g": "ab", "conjugator": "b"}}))
    code, _, err = run(capsys, "verify", "13", "--spec", str(spec))
    assert code == 2
    assert "p + q" in err


def test_verify_spec_falsification_exit_code(capsys, tmp_path):
    spec = tmp_path / "s.json"
    # a and b are not translation equivalent, so swapping them in a pattern can fail
    spec.write_text(json.dumps([{"rank": 2, "pattern": "a", "source": {"kind": "user", "g": "ab", "h": "aB"}}]))
    code, out, _ = run(capsys, "verify", "14", "--spec", str(spec), "--format", "json")
    report = json.loads(out)
    assert code == 1
    assert report["falsified"] == 1
    assert report["failures"][0]["verdict"]["witness"]["lenLeft"] != report["failures"][0]["verdict"]["witness"]["lenRight"]


def test_verify_spec_good_instances(capsys, tmp_path):
    spec = tmp_path / "s.json"
    spec.write_text(
        json.dumps(
            [
                {"rank": 2, "pattern": "aBaaab", "source": {"kind": "conjugate", "g": "ab", "conjugator": "ba"}},
                {"rank": 3, "pattern": "abAB", "source": {"kind": "reverse", "pattern": "aab", "g": "c", "h": "ab"}},
            ]
        )
    )
    code, out, _ = run(capsys, "verify", "14", "--spec", str(spec), "--trials", "50")
    assert code == 0
    spec.write_text(json.dumps({"pattern": "abaB", "g": "ab", "h": "bA"}))
    assert run(capsys, "verify", "12", "--spec", str(spec), "--trials", "50")[0] == 0


@pytest.mark.parametrize("content", ["not json", "[1, 2]", '{"pattern": "ab"}', '{"pattern": "ab", "source": {"kind": "what"}}'])
def test_verify_malformed_spec(capsys, tmp_path, content):
    spec = tmp_path / "s.json"
    spec.write_text(content)
    assert run(capsys, "verify", "14", "--spec", str(spec))[0] == 2


def test_lab_checks(capsys):
    for check in ("identities", "claim", "case-formulas"):
        code, out, _ = run(capsys, "lab", check, "--instances", "100")
        assert code == 0, out
        assert out.startswith(f"lab {check}")


def test_lab_claim_counts_skips(capsys):
    code, out, _ = run(capsys, "lab", "claim", "--instances", "300", "--format", "json")
    t = json.loads(out)["tallies"]
    assert code == 0
    assert t["failed"] == 0
    assert t["skipped"] > 0
    assert t["checked"] + t["skipped"] == 300


def test_unknown_lab_check_is_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["lab", "nonsense"])
    assert exc.value.code == 2


def test_bad_config_values(capsys):
    assert run(capsys, "verify", "12", "--rank", "1")[0] == 2
    assert run(capsys, "verify", "12", "--trials", "0")[0] == 2
    assert run(capsys, "lab", "claim", "--seed", "-1")[0] == 2


def test_sample_aut(capsys):
    code, out, _ = run(capsys, "sample-aut", "--depth", "3", "--seed", "7", "--format", "json")
    report = json.loads(out)
    assert code == 0
    assert report["images"] == {"a": "b", "b": "a"}
    assert len(report["automorphism"]) == 3
