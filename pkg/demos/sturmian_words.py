# coding: utf-8

# # Sturmian words
#
# The Fibonacci word is the fixed point of a -> ab, b -> a.  It has exactly
# n + 1 factors of each length n, which is the smallest complexity an
# aperiodic word can have.

from slowgrowth import (complexity, fibonacci_word, is_balanced, periodic_word, periodicity_scan,
                        recurrence_report, return_words, special_factors)

fib = fibonacci_word()
print(fib.prefix(40))

# Complexity table.  The horizon is how much of the word we look at; it has
# to be at least twice the largest factor length.

T = complexity(fib, 12, 2000)
print(list(T.values))

# Each length has a single right special factor (and a single left one).

for sf in special_factors(fib, 5, 2000):
    if sf.is_right_special or sf.is_left_special:
        print(sf.factor, sf.left_extensions, sf.right_extensions)

# Balance: the number of a's in two factors of equal length differs by at most 1.

print(is_balanced(fib, 20, 5000))
print(is_balanced(periodic_word("ab", head="aabb"), 20, 500))

# No period up to 200 in the first ten thousand letters.

print(periodicity_scan(fib, 200, 10000))

# Return words of a factor: the pieces between consecutive occurrences.
# There are always two of them here.

for v in ("a", "ab", "aba", "abaab"):
    print(v, sorted(return_words(fib, v, 5000).first_returns))

rec = recurrence_report(fib, 8, 5000)
print(rec.uniformly_recurrent, rec.window_bounds)
