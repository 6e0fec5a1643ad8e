# coding: utf-8

# # Rauzy graphs
#
# The k-graph of a word has the length-k factors as vertices and the
# length-(k+1) factors as arcs.  For Sturmian words each graph is two cycles
# glued along a path, and its shape is summarised by a triple (l, r, s).

from slowgrowth import (build_rauzy, classify_shape, evolution_trace, fibonacci_word, follower,
                        follower_profile, predecessor_profile, strong_components, to_dot)
from slowgrowth.rauzy import same_graph

fib = fibonacci_word()
g = build_rauzy(fib, 3, 1000)
print(to_dot(g))

p = classify_shape(g)
print(p.shape, p.triple, strong_components(g).strongly_connected)

# The follower construction (the line graph, then merge) gives the next level.
# When l = 0 it gives one arc too many: an arc that the word itself never uses.

for k in range(1, 8):
    gk, nxt = build_rauzy(fib, k, 2000), build_rauzy(fib, k + 1, 2000)
    print(k, classify_shape(gk).triple, len(follower(gk).arcs), len(nxt.arcs), same_graph(follower(gk), nxt))

# How the triple moves from level to level.

trace = evolution_trace(fib, 1, 15, 5000)
for e in trace:
    print(e.k, e.profile.triple)
print("violations:", trace.violations)

# Candidates for the next triple, and going back one step.

prev = trace.entries[4].profile
print(prev.triple, [c.triple for c in follower_profile(prev)])
nxt = trace.entries[5].profile
print(nxt.triple, predecessor_profile(nxt).triple)
