# coding: utf-8

# # Codings of circle rotations
#
# Rotate by alpha = (sqrt 5 - 1)/2 and write down which arc each point lands
# in.  Arithmetic is exact: points are p + q*alpha with rational p, q.

from slowgrowth import (QuadraticIrrational, RotationWord, code, coding_factors, complexity,
                        endpoint_lattice, factor_interval, fibonacci_word, sturmian_recode,
                        sturmian_system)

alpha = QuadraticIrrational.golden()
sys2 = sturmian_system(alpha)
print(code(sys2, 30))
print(fibonacci_word().prefix(30))

# Every factor of the coding corresponds to an arc of starting points.
# Arc lengths are the factor frequencies.

for w in coding_factors(sys2, 3):
    print(w, factor_interval(sys2, w), float(factor_interval(sys2, w).length()))

# Recoding by blocks of length 2: aa -> x, ab -> y, ba -> z.  The new word
# has complexity k + 2 and all arc endpoints are multiples of alpha mod 1.

sys3 = sturmian_recode(sys2, 2, {"aa": "x", "ab": "y", "ba": "z"})
print(code(sys3, 30))
print(list(complexity(RotationWord(sys3), 15, 2000).values))
for e in endpoint_lattice(sys3, 5):
    print(e.symbol, e.endpoint, e.n)
