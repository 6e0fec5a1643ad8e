import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from slowgrowth.errors import OrbitCollisionError
from slowgrowth.quadratic import ExactNumber, QuadraticIrrational
from slowgrowth.rotation import (Arc, ArcSet, RotationSystem, RotationWord, code, coding_factors,
                                 endpoint_lattice, factor_interval, lattice_point, rotate,
                                 single_symbol_system, sturmian_recode, sturmian_system)
from slowgrowth.words import (complexity, complexity_of_text, fibonacci_word, is_balanced, occurrences,
                              periodicity_scan, recurrence_of_text, windows)

GOLDEN = QuadraticIrrational.golden()
SQRT2 = QuadraticIrrational.sqrt2_minus_1()


def num(p, q, alpha=GOLDEN):
    return ExactNumber(p, q, alpha)


# --- quadratic irrationals ----------------------------------------------------

def test_alpha_validation():
    with pytest.raises(ValueError, match="rational"):
        QuadraticIrrational(1, 0, 2, 5)
    with pytest.raises(ValueError):
        QuadraticIrrational(0, 1, 1, 4)
    assert QuadraticIrrational(1, -1, -2, 5) == GOLDEN


def test_golden_value():
    assert abs(float(GOLDEN) - (math.sqrt(5) - 1) / 2) < 1e-15


def test_exact_order_near_ties():
    # 0.618033988... against nearby rationals
    a = num(0, 1)
    assert a > Fraction(618033988, 10 ** 9)
    assert a < Fraction(618033989, 10 ** 9)
    # alpha^2 = 1 - alpha, so alpha = 1/(1 + alpha): 2*alpha - 1 < alpha
    assert num(-1, 2) < a


@given(st.integers(-10 ** 6, 10 ** 6), st.integers(-10 ** 6, 10 ** 6), st.integers(1, 50))
def test_floor_matches_high_precision(p, q, den):
    from decimal import Decimal, getcontext
    getcontext().prec = 80
    x = num(Fraction(p, den), q)
    value = Decimal(p) / Decimal(den) + Decimal(q) * (Decimal(5).sqrt() - 1) / 2
    assert x.floor() == math.floor(value)


@given(st.integers(-500, 500), st.integers(-500, 500))
def test_order_matches_float_when_far_apart(q1, q2):
    x, y = num(0, q1).mod1(), num(0, q2).mod1()
    if abs(float(x) - float(y)) > 1e-9:
        assert (x < y) == (float(x) < float(y))
    assert (x == y) == (q1 == q2)


def test_mod1_in_unit_interval():
    for q in range(-50, 50):
        x = num(0, q).mod1()
        assert 0 <= x < 1


# --- rotation -------------------------------------------------------------------

def test_rotate_examples():
    zero = num(0, 0)
    assert rotate(zero, GOLDEN, 0) == zero
    assert rotate(rotate(zero, GOLDEN, 1), GOLDEN, -1) == zero
    assert rotate(zero, GOLDEN, 2) == num(-1, 2)


@given(st.integers(-100, 100), st.integers(-100, 100))
def test_rotate_composes(m, n):
    x = num(Fraction(1, 3), 0)
    assert rotate(rotate(x, GOLDEN, m), GOLDEN, n) == rotate(x, GOLDEN, m + n)


def test_code_is_fibonacci():
    assert code(sturmian_system(GOLDEN), 20) == fibonacci_word().prefix(20)
    assert code(sturmian_system(GOLDEN), 5000) == fibonacci_word().prefix(5000)


def test_code_matches_floor_formula():
    # letter i is a when floor(x0 + (i+1) alpha) - floor(x0 + i alpha) = 1
    for alpha, x0 in [(GOLDEN, num(0, 1)), (SQRT2, ExactNumber(Fraction(1, 7), 0, SQRT2))]:
        word = code(sturmian_system(alpha, x0), 2000)
        for i, c in enumerate(word):
            jump = (x0 + ExactNumber(0, i + 1, alpha)).floor() - (x0 + ExactNumber(0, i, alpha)).floor()
            assert c == ("a" if jump == 1 else "b")


def test_whole_circle():
    assert code(single_symbol_system(GOLDEN), 5) == "aaaaa"


def test_rational_alpha_rejected():
    with pytest.raises(ValueError):
        sturmian_system(Fraction(1, 2))


def test_orbit_collision():
    system = sturmian_system(GOLDEN, num(0, -3))
    with pytest.raises(OrbitCollisionError) as info:
        code(system, 10)
    assert info.value.iterate == 3


def test_partition_checks():
    a = num(0, 1)
    zero, half = num(0, 0), num(Fraction(1, 2), 0)
    with pytest.raises(ValueError, match="overlap"):
        RotationSystem(GOLDEN, a, {"a": ArcSet(GOLDEN, [(zero, a)]), "b": ArcSet(GOLDEN, [(half, num(1, 0))])})
    with pytest.raises(ValueError, match="cover"):
        RotationSystem(GOLDEN, a, {"a": ArcSet(GOLDEN, [(zero, half)])})


def test_arc_wrapping():
    arc = Arc(num(Fraction(3, 4), 0), num(Fraction(1, 4), 0))
    assert arc.wraps and arc.length() == Fraction(1, 2)
    assert arc.contains(num(0, 0)) and not arc.contains(num(Fraction(1, 2), 0))
    s = ArcSet.from_arcs(GOLDEN, [arc])
    assert s.length() == Fraction(1, 2) and len(s.arcs()) == 1


def test_sqrt2_coding_balanced_aperiodic():
    src = RotationWord(sturmian_system(SQRT2))
    assert is_balanced(src, 20, 5000).balanced
    assert periodicity_scan(src, 100, 5000).period is None
    assert complexity(src, 30, 5000).values[1:] == tuple(range(2, 32))


def test_recurrent_coding():
    assert recurrence_of_text(code(sturmian_system(GOLDEN), 3000), 8).uniformly_recurrent


# --- factor intervals -------------------------------------------------------------

def test_factor_interval_examples():
    s = sturmian_system(GOLDEN)
    assert factor_interval(s, "a") == s.char_sets["a"]
    assert factor_interval(s, "bb").is_empty()
    assert not factor_interval(s, "ab").is_empty()


def test_factor_intervals_partition_circle():
    s = sturmian_system(GOLDEN)
    for n in range(1, 8):
        facs = coding_factors(s, n)
        total = sum((factor_interval(s, w).length() for w in facs), num(0, 0))
        assert total == 1
        assert set(facs) == windows(code(s, 3000), n)


def test_factor_interval_frequency():
    s = sturmian_system(GOLDEN)
    text = code(s, 10 ** 4)
    f = len(occurrences(text, "ab")) / (len(text) - 1)
    length = float(factor_interval(s, "ab").length())
    assert abs(length - f) <= 0.02 * length


def test_factor_interval_is_a_single_arc_with_lattice_endpoints():
    s = sturmian_system(GOLDEN)
    for n in range(1, 10):
        for w in coding_factors(s, n):
            iv = factor_interval(s, w)
            assert len(iv.arcs()) == 1
            assert all(e.lattice_index() is not None and abs(e.lattice_index()) <= n for e in iv.endpoints())


# --- recoding -------------------------------------------------------------------------

def test_identity_recode():
    base = sturmian_system(GOLDEN)
    assert sturmian_recode(base, 1, {"a": "a", "b": "b"}) == base


def test_recode_three_letters():
    base = sturmian_system(GOLDEN)
    s = sturmian_recode(base, 2, {"aa": "x", "ab": "y", "ba": "z"})
    word = code(s, 500)
    assert complexity_of_text(word, 20)[1:] == tuple(k + 2 for k in range(1, 21))


def test_recode_is_sliding_block_code():
    base = sturmian_system(GOLDEN)
    grouping = {"aa": "x", "ab": "y", "ba": "z"}
    s = sturmian_recode(base, 2, grouping)
    fib = code(base, 1001)
    assert code(s, 1000) == "".join(grouping[fib[i:i + 2]] for i in range(1000))


def test_recode_errors():
    base = sturmian_system(GOLDEN)
    with pytest.raises(ValueError, match="misses"):
        sturmian_recode(base, 2, {"aa": "x", "ab": "y"})
    with pytest.raises(ValueError, match="non-factors"):
        sturmian_recode(base, 2, {"aa": "x", "ab": "y", "ba": "z", "bb": "w"})


def test_endpoint_lattice():
    base = sturmian_system(GOLDEN)
    assert sorted(e.n for e in endpoint_lattice(base, 5)) == [0, 0, 1, 1]
    s = sturmian_recode(base, 2, {"aa": "x", "ab": "y", "ba": "z"})
    assert all(e.n is not None and abs(e.n) <= 3 for e in endpoint_lattice(s, 3))
    third = num(Fraction(1, 3), 0)
    odd = RotationSystem(GOLDEN, num(0, 1), {"a": ArcSet(GOLDEN, [(num(0, 0), third)]),
                                             "b": ArcSet(GOLDEN, [(third, num(1, 0))])})
    assert [e.n for e in endpoint_lattice(odd, 50) if e.endpoint == third] == [None, None]


def test_lattice_point():
    assert lattice_point(GOLDEN, 2) == num(-1, 2)
    assert lattice_point(GOLDEN, 2).lattice_index() == 2
