import itertools

import pytest
from hypothesis import given, settings, strategies as st

from slowgrowth.errors import HorizonError
from slowgrowth.words import (Alphabet, ExplicitWord, SubstitutionWord, complexity,
                              factors, fibonacci_word, is_balanced, balance_of_text,
                              minimal_forbidden_words, periodic_word, periodicity_scan,
                              recurrence_report, return_words, smallest_period, solve_sw_eq_wt,
                              special_factors, two_sided_periodic, unfold, windows)


def fib_by_recursion(n):
    # independent oracle: f_{k+1} = f_k f_{k-1}
    a, b = "a", "ab"
    while len(b) < n:
        a, b = b, b + a
    return b[:n]


def brute_factors(text, n):
    return {text[i:i + n] for i in range(len(text) - n + 1)}


# --- alphabet and sources --------------------------------------------------

def test_alphabet_rejects_duplicates():
    with pytest.raises(ValueError):
        Alphabet(("a", "a"))


def test_alphabet_order_and_deglex():
    alph = Alphabet(("b", "a"))
    assert alph.sorted(["a", "b", "ab", "ba"]) == ["b", "ba", "a", "ab"]
    assert sorted(["ab", "b", "aaa"], key=alph.deglex_key) == ["b", "ab", "aaa"]


def test_validate_rejects_foreign_symbol():
    with pytest.raises(ValueError):
        Alphabet.of("ab").validate("abc")


def test_fibonacci_matches_recursive_construction():
    assert fibonacci_word().prefix(1000) == fib_by_recursion(1000)


def test_prefix_consistency():
    src = fibonacci_word()
    long = src.prefix(500)
    for n in (0, 1, 7, 100, 499):
        assert src.prefix(n) == long[:n]
        assert len(src.prefix(n)) == n


def test_finite_explicit_word_too_short():
    with pytest.raises(HorizonError):
        ExplicitWord("abc").prefix(10)


def test_substitution_word_validates_seed():
    with pytest.raises(ValueError):
        SubstitutionWord({"a": "ab", "b": "a"}, "b")


def test_two_sided_fold_roundtrip():
    w = two_sided_periodic("a", "b", "a")
    text = w.text(21)
    assert text.count("b") == 1
    assert unfold(w.prefix(21)) == text
    assert w.kind == "two-sided-folded"


# --- factors and complexity --------------------------------------------------

def test_factors_constant_word():
    assert factors(periodic_word("a"), 5, 10).factors == {"aaaaa"}


def test_factors_periodic():
    assert factors(periodic_word("ab"), 2, 10).factors == {"ab", "ba"}


def test_factors_fibonacci_length_three():
    assert factors(fibonacci_word(), 3, 30).factors == {"aab", "aba", "baa", "bab"}


def test_factors_horizon_guard():
    with pytest.raises(HorizonError, match="horizon too small"):
        factors(fibonacci_word(), 10, 5)


def test_complexity_examples():
    assert complexity(periodic_word("ab"), 4, 100).values == (1, 2, 2, 2, 2)
    assert complexity(fibonacci_word(), 5, 100).values == (1, 2, 3, 4, 5, 6)
    assert complexity(periodic_word("a"), 3, 100).values == (1, 1, 1, 1)


def test_complexity_cumulative():
    prof = complexity(fibonacci_word(), 6, 100)
    assert prof.cumulative == tuple(itertools.accumulate(prof.values))
    assert prof.rows()[3] == (3, 4, 10)


def test_complexity_guard():
    with pytest.raises(HorizonError, match="horizon insufficient for requested maxN"):
        complexity(fibonacci_word(), 60, 100)


def test_factorial_closure_and_bounds():
    text = fibonacci_word().text(2000)
    for n in range(1, 15):
        cur, prev = windows(text, n), windows(text, n - 1)
        assert all(w[1:] in prev and w[:-1] in prev for w in cur)
        assert 1 <= len(cur) <= 2 * len(prev)


# --- balance and periodicity ---------------------------------------------------

def test_fibonacci_balanced():
    assert is_balanced(fibonacci_word(), 20, 2000).balanced


def test_unbalanced_witness():
    verdict = is_balanced(periodic_word("ab", head="aabb"), 4, 100)
    assert not verdict.balanced
    assert set(verdict.witness) == {"aa", "bb"}


def test_periodic_word_balanced():
    assert is_balanced(periodic_word("ab"), 10, 200).balanced


def brute_balanced(text, max_len):
    for n in range(1, max_len + 1):
        counts = {w.count("a") for w in brute_factors(text, n)}
        if counts and max(counts) - min(counts) > 1:
            return False
    return True


@settings(max_examples=60, deadline=None)
@given(st.text(alphabet="ab", min_size=1, max_size=40))
def test_balance_agrees_with_brute_force(text):
    assert balance_of_text(text, 8, Alphabet.of("ab")).balanced == brute_balanced(text, 8)


def test_smallest_period():
    assert smallest_period("abcabcab", 5) == 3
    assert smallest_period("abaab", 2) is None


def test_periodicity_scan():
    assert periodicity_scan(periodic_word("abb", head="ba"), 10, 200).period == 3
    assert periodicity_scan(fibonacci_word(), 50, 1000).period is None


# --- return words ---------------------------------------------------------------

def test_return_words_examples():
    assert return_words(fibonacci_word(), "a", 100).returns == {"", "b"}
    assert return_words(fibonacci_word(), "ab", 200).returns == {"", "a"}
    assert return_words(periodic_word("ab"), "ab", 50).returns == {""}


def test_return_words_absent_base():
    with pytest.raises(ValueError, match="base word not a factor"):
        return_words(fibonacci_word(), "bb", 100)


def test_return_words_literal_definition_by_brute_force():
    text = fibonacci_word().text(300)
    for v in ("a", "b", "aba", "abaab"):
        expected = set()
        for i in range(len(text)):
            for j in range(i, len(text)):
                u = text[i:j]
                if v in u:
                    break
                if text.find(v + u + v) != -1:
                    expected.add(u)
        assert return_words(fibonacci_word(), v, 300).returns == expected


def test_first_returns_of_fibonacci_are_two():
    src = fibonacci_word()
    for n in range(1, 8):
        for v in factors(src, n, 2000).factors:
            assert len(return_words(src, v, 2000).first_returns) == 2


# --- special factors and recurrence ------------------------------------------------

def test_special_factors_examples():
    fib = special_factors(fibonacci_word(), 1, 50)
    right = [s for s in fib if s.is_right_special]
    assert [s.factor for s in right] == ["a"]
    assert right[0].right_extensions == ("a", "b")
    assert not any(s.is_left_special or s.is_right_special for s in special_factors(periodic_word("ab"), 2, 50))
    const = special_factors(periodic_word("a"), 3, 50)
    assert all(s.left_valence == s.right_valence == 1 for s in const)


def test_sturmian_has_one_special_each_side():
    for n in range(1, 12):
        specials = special_factors(fibonacci_word(), n, 3000)
        assert sum(s.is_left_special for s in specials) == 1
        assert sum(s.is_right_special for s in specials) == 1


def test_recurrence_examples():
    rep = recurrence_report(periodic_word("ab"), 4, 100)
    assert rep.uniformly_recurrent and rep.max_gaps[2] == 2
    lonely = recurrence_report(periodic_word("a", head="ab"), 1, 100)
    assert not lonely.every_factor_recurs_twice and "b" in lonely.non_recurring
    assert recurrence_report(fibonacci_word(), 5, 500).uniformly_recurrent


def test_recurrence_guard():
    with pytest.raises(HorizonError):
        recurrence_report(fibonacci_word(), 10, 50)


# --- minimal forbidden words ----------------------------------------------------------

def lang_of(text, n):
    return {k: windows(text, k) for k in range(1, n + 1)}


def test_mfw_examples():
    assert minimal_forbidden_words(lang_of("ab" * 20, 3)) == {"aa", "bb"}
    free = {k: {"".join(p) for p in itertools.product("ab", repeat=k)} for k in range(1, 4)}
    assert minimal_forbidden_words(free) == set()
    assert minimal_forbidden_words(lang_of(fibonacci_word().text(200), 4)) == {"bb", "aaa"}


def test_mfw_rejects_non_factorial():
    with pytest.raises(ValueError, match="not factor-closed"):
        minimal_forbidden_words({1: {"a"}, 2: {"ab"}})


def test_mfw_brute_force_and_disjointness():
    text = fibonacci_word().text(3000)
    lang = lang_of(text, 9)
    mfw = minimal_forbidden_words(lang)
    brute = set()
    for n in range(1, 10):
        for p in itertools.product("ab", repeat=n):
            w = "".join(p)
            inside = lambda x: x == "" or x in lang[len(x)]
            if not inside(w) and inside(w[1:]) and inside(w[:-1]):
                brute.add(w)
    assert mfw == brute
    for w in mfw:
        assert w not in lang[len(w)]
        assert len(w) == 1 or w[:-1] in lang[len(w) - 1]


# --- SW = WT ------------------------------------------------------------------------------

def test_sw_examples():
    dec = solve_sw_eq_wt("ab", "ba", "a")
    assert (dec.s, dec.k, dec.s1) == ("ab", 0, "a")
    dec = solve_sw_eq_wt("ab", "ab", "")
    assert (dec.k, dec.s1) == (0, "")
    assert solve_sw_eq_wt("ab", "ab", "ba") is None


def test_sw_length_mismatch():
    with pytest.raises(ValueError, match="length mismatch"):
        solve_sw_eq_wt("ab", "a", "a")


@given(st.text("ab", min_size=1, max_size=4), st.text("ab", max_size=10))
def test_sw_property(S, W):
    # T is forced by SW = WT when |T| = |S|
    T = (S + W)[len(W):]
    dec = solve_sw_eq_wt(S, T, W)
    if S + W == W + T:
        assert dec is not None and dec.word() == W
    else:
        assert dec is None
