import json

import pytest

from slowgrowth.config import load_json, parse_algebra, parse_json, parse_recode, parse_source, parse_system
from slowgrowth.errors import ConfigError
from slowgrowth.rotation import code
from slowgrowth.words import fibonacci_word

GOLDEN = {"a": -1, "b": 1, "c": 2, "d": 5}
STURMIAN = {
    "alpha": GOLDEN,
    "x0": {"p": 0, "q": 1},
    "charSets": [
        {"symbol": "a", "arcs": [{"left": {"p": 0, "q": 0}, "right": {"p": 0, "q": 1}}]},
        {"symbol": "b", "arcs": [{"left": {"p": 0, "q": 1}, "right": {"p": 1, "q": 0}}]},
    ],
}


def test_system_config_codes_fibonacci():
    assert code(parse_system(STURMIAN), 50) == fibonacci_word().prefix(50)


def test_full_circle_and_rational_strings():
    sys_ = parse_system({"alpha": GOLDEN, "x0": {"p": "1/3"}, "charSets": [{"symbol": "z", "full": True}]})
    assert code(sys_, 4) == "zzzz"


def test_syntax_error_reports_line():
    with pytest.raises(ConfigError, match="line 2"):
        parse_json('{"kind": "fibonacci",\n}')


def test_field_paths_in_errors():
    bad = json.loads(json.dumps(STURMIAN))
    bad["charSets"][1]["arcs"][0]["left"]["p"] = 0.5
    with pytest.raises(ConfigError, match=r"charSets\[1\]\.arcs\[0\]\.left\.p"):
        parse_system(bad)
    with pytest.raises(ConfigError, match="alpha.d"):
        parse_system({**STURMIAN, "alpha": {"a": 0, "b": 1, "c": 1}})
    with pytest.raises(ConfigError, match="rational"):
        parse_system({**STURMIAN, "alpha": {"a": 1, "b": 0, "c": 2, "d": 5}})


def test_partition_error_is_config_error():
    bad = {**STURMIAN, "charSets": STURMIAN["charSets"][:1]}
    with pytest.raises(ConfigError, match="cover"):
        parse_system(bad)


def test_source_kinds(tmp_path):
    assert parse_source({"kind": "fibonacci"}).prefix(10) == "abaababaab"
    sub = parse_source({"kind": "substitution", "rules": {"a": "ab", "b": "a"}, "seed": "a"})
    assert sub.prefix(30) == fibonacci_word().prefix(30)
    assert parse_source({"kind": "explicit", "symbols": "ba", "period": "ab"}).prefix(6) == "baabab"
    two = parse_source({"kind": "two-sided-periodic", "left_period": "a", "center": "b", "right_period": "a"})
    assert two.text(11).count("b") == 1
    (tmp_path / "sys.json").write_text(json.dumps(STURMIAN))
    ref = parse_source({"kind": "rotation-ref", "system": "sys.json"}, base_dir=tmp_path)
    assert ref.prefix(20) == fibonacci_word().prefix(20)
    with pytest.raises(ConfigError, match="unknown source kind"):
        parse_source({"kind": "nope"})


def test_recode_config():
    sys_ = parse_recode({"base": STURMIAN, "n": 2, "grouping": {"aa": "x", "ab": "y", "ba": "z"}})
    assert set(sys_.alphabet) == {"x", "y", "z"}
    with pytest.raises(ConfigError, match="grouping"):
        parse_recode({"base": STURMIAN, "n": 2, "grouping": {"aa": "x"}})


def test_algebra_configs():
    alg = parse_algebra({"alphabet": "ab", "obstructions": ["aa", "bb"]})
    assert alg.normal_words(3) == {"aba", "bab"}
    fib = parse_algebra({"alphabet": "ab", "obstructions": {"kind": "from-word-source",
                                                             "source": {"kind": "fibonacci"},
                                                             "truncationDepth": 6}})
    assert fib.obstructions == {"bb", "aaa", "babab"}
    with pytest.raises(ConfigError, match=r"obstructions\[1\]"):
        parse_algebra({"alphabet": "ab", "obstructions": ["aa", 3]})
    with pytest.raises(ConfigError, match="truncationDepth"):
        parse_algebra({"obstructions": {"kind": "from-word-source", "source": {"kind": "fibonacci"},
                                        "truncationDepth": "deep"}})


def test_missing_file(tmp_path):
    with pytest.raises(ConfigError, match="cannot read"):
        load_json(tmp_path / "absent.json")
