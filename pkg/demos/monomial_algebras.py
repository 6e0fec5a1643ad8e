# coding: utf-8

# # Monomial algebras of slow growth
#
# A monomial algebra is given by forbidden words.  The words that avoid all of
# them are a basis, and T(n) counts those of length n.

from slowgrowth import (MonomialAlgebra, boundary_verdict, classify, corollary_check,
                        fibonacci_word, good_word_delta, growth_profile, obstruction_bound_check,
                        two_sided_periodic)

alg = MonomialAlgebra("ab", ["aa", "bb"])
print(sorted(alg.normal_words(4)))
prof = growth_profile(alg, 12, 3)
print(prof.T, boundary_verdict(prof))

# The algebra whose normal words are the factors of the Fibonacci word.
# T(n) = n + 1, right on the boundary between bounded and faster growth.

fib = MonomialAlgebra.from_word_source(fibonacci_word(), depth=14)
print(sorted(fib.obstructions_up_to(14), key=lambda w: (len(w), w)))
prof = growth_profile(fib, 12, 3)
print(prof.T, boundary_verdict(prof))
print([d.delta for d in good_word_delta(prof)])
print(classify(fib, 12).verdict)

# Normal words of a^oo b a^oo: all of them are a^i b a^j or powers of a.

case1 = MonomialAlgebra.from_word_source(two_sided_periodic("a", "b", "a"))
rep = classify(case1, 24)
print(rep.verdict, rep.families[0].params)
print(obstruction_bound_check(case1, 24, 6).bound)

# The free algebra grows exponentially.

print(boundary_verdict(growth_profile(MonomialAlgebra("ab"), 10, 1)))

# A combinatorial lemma: v1 u v2 with |v1| = |v2| >= m has few factors of
# length m, or u splits into a power of a short word.

print(corollary_check("ab", "ababa", "ba", 2))
