"""
Rauzy graphs of factor languages and the evolution of their fork shapes.

The k-graph of a word has the length-k factors as vertices and one edge per
length-(k+1) factor ``w``, from ``w[:-1]`` to ``w[1:]``; the edge is labelled
by its witness ``w``.  For words with ``T(k+1) - T(k) = 1`` the graph has a
single incoming fork and a single outgoing fork and, when strongly connected,
is described by three numbers ``(l, r, s)``:

* ``l`` -- length of the barrier, the path from the incoming fork to the
  outgoing fork (0 when the two coincide, i.e. at a bispecial factor);
* ``r``, ``s`` -- lengths of the two arcs leading from the outgoing fork back
  to the incoming fork, listed in lexicographic order of their first edge.

:func:`follower_profile` and :func:`predecessor_profile` implement the
transition rules between consecutive levels.
"""

from __future__ import annotations

import enum
from collections import defaultdict
from dataclasses import dataclass

from .errors import HorizonError
from .words import Alphabet, WordSource, windows


@dataclass(frozen=True)
class DiGraph:
    """Directed multigraph with labelled arcs ``(tail, head, label)``."""

    vertices: tuple
    arcs: tuple

    def out_arcs(self, v):
        return [a for a in self.arcs if a[0] == v]

    def in_arcs(self, v):
        return [a for a in self.arcs if a[1] == v]

    def degrees(self):
        """``{vertex: (in_degree, out_degree)}``."""
        deg = {v: [0, 0] for v in self.vertices}
        for t, h, _ in self.arcs:
            deg[t][1] += 1
            deg[h][0] += 1
        return {v: tuple(d) for v, d in deg.items()}

    def successors(self):
        succ = defaultdict(list)
        for t, h, _ in self.arcs:
            succ[t].append(h)
        return succ

    def arc_pairs(self):
        return frozenset((t, h) for t, h, _ in self.arcs)


@dataclass(frozen=True)
class RauzyGraph(DiGraph):
    k: int = 0
    horizon: int | None = None

    @property
    def edges(self):
        """Witness words of length ``k + 1``."""
        return tuple(a[2] for a in self.arcs)


def rauzy_from_language(vertices, edges, k, alphabet=None, horizon=None) -> RauzyGraph:
    """Rauzy graph from explicit factor sets of lengths ``k`` and ``k + 1``."""
    alphabet = Alphabet.of(alphabet) if alphabet else Alphabet.from_words(list(vertices) + list(edges))
    verts = tuple(alphabet.sorted(vertices))
    vset = set(verts)
    arcs = []
    for w in alphabet.sorted(edges):
        if len(w) != k + 1:
            raise ValueError(f"edge witness {w!r} does not have length {k + 1}")
        if w[:-1] not in vset or w[1:] not in vset:
            raise ValueError(f"edge witness {w!r} has an endpoint outside the vertex set")
        arcs.append((w[:-1], w[1:], w))
    return RauzyGraph(verts, tuple(arcs), k, horizon)


def build_rauzy(source: WordSource, k: int, horizon: int) -> RauzyGraph:
    if horizon < k + 1:
        raise HorizonError(f"horizon too small: {horizon} < {k + 1}")
    text = source.text(horizon)
    return rauzy_from_language(windows(text, k), windows(text, k + 1), k, source.alphabet, horizon)


def _merge_label(a, b):
    if isinstance(a, str) and isinstance(b, str) and a[1:] == b[:-1]:
        return a + b[-1:]
    return (a, b)


def follower(g: DiGraph) -> DiGraph:
    """Line graph: one vertex per arc of ``g``, ``A -> B`` iff head(A) == tail(B).

    When the labels are Rauzy witnesses the new arc is labelled with the
    merged word, so the result compares directly with the next Rauzy graph.
    """
    by_tail = defaultdict(list)
    for arc in g.arcs:
        by_tail[arc[0]].append(arc)
    arcs = []
    for a in g.arcs:
        for b in by_tail.get(a[1], ()):
            arcs.append((a[2], b[2], _merge_label(a[2], b[2])))
    return DiGraph(tuple(a[2] for a in g.arcs), tuple(arcs))


def same_graph(g: DiGraph, h: DiGraph) -> bool:
    """Equality under the edge <-> witness identification (same vertex and arc sets)."""
    return set(g.vertices) == set(h.vertices) and g.arc_pairs() == h.arc_pairs() and \
        len(g.arcs) == len(h.arcs)


# ---------------------------------------------------------------------------
# Strong connectivity
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Components:
    """Strongly connected components in topological order of the condensation."""

    components: tuple
    condensation: tuple  # arcs (i, j) between component indices

    @property
    def strongly_connected(self):
        return len(self.components) == 1

    def index(self):
        return {v: i for i, comp in enumerate(self.components) for v in comp}


def strong_components(g: DiGraph) -> Components:
    """Tarjan's algorithm (iterative)."""
    succ = g.successors()
    index, low, on_stack = {}, {}, set()
    stack, comps = [], []
    counter = 0
    for root in g.vertices:
        if root in index:
            continue
        work = [(root, iter(succ.get(root, ())))]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack.add(root)
        while work:
            v, it = work[-1]
            advanced = False
            for w in it:
                if w not in index:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack.add(w)
                    work.append((w, iter(succ.get(w, ()))))
                    advanced = True
                    break
                if w in on_stack:
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    comp.append(w)
                    if w == v:
                        break
                comps.append(tuple(sorted(comp, key=str)))
    comps.reverse()  # Tarjan emits sinks first
    where = {v: i for i, comp in enumerate(comps) for v in comp}
    cond = sorted({(where[t], where[h]) for t, h, _ in g.arcs if where[t] != where[h]})
    return Components(tuple(comps), tuple(cond))


# ---------------------------------------------------------------------------
# Fork profiles
# ---------------------------------------------------------------------------


class Shape(enum.Enum):
    STRONGLY_CONNECTED_FORK = "STRONGLY_CONNECTED_FORK"
    TWO_CYCLES_WITH_BRIDGE = "TWO_CYCLES_WITH_BRIDGE"
    NO_FORK_CYCLE = "NO_FORK_CYCLE"
    OTHER = "OTHER"


@dataclass(frozen=True)
class ForkProfile:
    shape: Shape
    l: int | None = None
    r: int | None = None
    s: int | None = None
    p: int | None = None  # two-cycle shape: source cycle, bridge, sink cycle
    t: int | None = None
    q: int | None = None

    @classmethod
    def fork(cls, l, r, s):
        return cls(Shape.STRONGLY_CONNECTED_FORK, l, r, s)

    @property
    def is_fork(self):
        return self.shape is Shape.STRONGLY_CONNECTED_FORK

    @property
    def triple(self):
        return (self.l, self.r, self.s)

    @property
    def cycle_lengths(self):
        """Lengths of the two simple cycles through the forks."""
        if self.is_fork:
            return (self.l + self.r, self.l + self.s)
        if self.shape is Shape.TWO_CYCLES_WITH_BRIDGE:
            return (self.p, self.q)
        return None

    def same_up_to_arcs(self, other) -> bool:
        """Equal barrier and equal arcs as a multiset."""
        return (self.is_fork and other.is_fork and self.l == other.l
                and sorted((self.r, self.s)) == sorted((other.r, other.s)))

    def __str__(self):
        if self.is_fork:
            return f"({self.l}, {self.r}, {self.s})"
        if self.shape is Shape.TWO_CYCLES_WITH_BRIDGE:
            return f"cycles {self.p}, {self.q} bridged by {self.t}"
        return self.shape.value


def _label_key(label):
    return label if isinstance(label, str) else str(label)


def classify_shape(g: DiGraph) -> ForkProfile:
    deg = g.degrees()
    if not g.vertices:
        return ForkProfile(Shape.OTHER)
    if any(i not in (1, 2) or o not in (1, 2) for i, o in deg.values()):
        return ForkProfile(Shape.OTHER)
    outs = [v for v, (_, o) in deg.items() if o == 2]
    ins = [v for v, (i, _) in deg.items() if i == 2]
    comps = strong_components(g)
    if not outs and not ins:
        return ForkProfile(Shape.NO_FORK_CYCLE) if comps.strongly_connected else ForkProfile(Shape.OTHER)
    if len(outs) != 1 or len(ins) != 1 or len(g.arcs) != len(g.vertices) + 1:
        return ForkProfile(Shape.OTHER)
    out_fork, in_fork = outs[0], ins[0]
    next_arc = {a[0]: a for a in g.arcs if a[0] != out_fork}

    def walk(arc, stop):
        length = 1
        while arc[1] != stop:
            arc = next_arc[arc[1]]
            length += 1
        return length

    if comps.strongly_connected:
        l = 0
        v = in_fork
        while v != out_fork:
            v = next_arc[v][1]
            l += 1
        first = sorted(g.out_arcs(out_fork), key=lambda a: _label_key(a[2]))
        r, s = (walk(a, in_fork) for a in first)
        return ForkProfile.fork(l, r, s)
    return _two_cycles(g, comps, out_fork, in_fork, next_arc)


def _two_cycles(g, comps, out_fork, in_fork, next_arc):
    where = comps.index()
    cycles = [c for c in comps.components if len(c) > 1 or any(a[0] == a[1] == c[0] for a in g.arcs)]
    if len(cycles) != 2:
        return ForkProfile(Shape.OTHER)
    src, dst = where[out_fork], where[in_fork]
    if {comps.components[src], comps.components[dst]} != set(cycles) or src == dst:
        return ForkProfile(Shape.OTHER)
    # the bridge leaves the source cycle at the out-fork and enters the sink at the in-fork
    bridge = [a for a in g.out_arcs(out_fork) if where[a[1]] != src]
    if len(bridge) != 1:
        return ForkProfile(Shape.OTHER)
    t, arc = 1, bridge[0]
    while arc[1] != in_fork:
        arc = next_arc.get(arc[1])
        if arc is None:
            return ForkProfile(Shape.OTHER)
        t += 1
    p, q = len(comps.components[src]), len(comps.components[dst])
    if t + p + q - 1 != len(g.vertices):
        return ForkProfile(Shape.OTHER)
    return ForkProfile(Shape.TWO_CYCLES_WITH_BRIDGE, p=p, t=t, q=q)


def _require_fork(p):
    if not isinstance(p, ForkProfile) or not p.is_fork:
        raise ValueError(f"profile {p} is not a strongly connected fork profile")
    if p.r == 1 and p.s == 1:
        raise ValueError("impossible profile: arcs r = s = 1 cannot occur")


def follower_profile(p: ForkProfile) -> list:
    """Profiles the next level can take.

    A barrier of length ``l >= 1`` shrinks by one while both arcs grow; a
    degenerate barrier leaves two candidates and the word decides.
    """
    _require_fork(p)
    l, r, s = p.triple
    if l >= 1:
        return [ForkProfile.fork(l - 1, r + 1, s + 1)]
    return [ForkProfile.fork(s - 1, 1, r + 1), ForkProfile.fork(r - 1, 1, s + 1)]


def predecessor_profile(p: ForkProfile, strict_paper: bool = False) -> ForkProfile:
    """The unique profile whose follower can be ``p``.

    ``strict_paper`` switches the ``(l, r, 1)`` case to the rule as printed
    in the source text, ``(0, s + 1, l - 1)``, which does not invert
    :func:`follower_profile`.
    """
    _require_fork(p)
    l, r, s = p.triple
    if r > 1 and s > 1:
        return ForkProfile.fork(l + 1, r - 1, s - 1)
    if r == 1:
        out = (0, l + 1, s - 1)
    elif strict_paper:
        out = (0, s + 1, l - 1)
    else:
        out = (0, r - 1, l + 1)
    if min(out[1:]) < 1 or out[1:] == (1, 1):
        raise ValueError(f"profile {p} has no admissible predecessor (root of the evolution)")
    return ForkProfile.fork(*out)


# ---------------------------------------------------------------------------
# Evolution traces
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TraceEntry:
    k: int
    profile: ForkProfile | None
    strongly_connected: bool | None
    saturated: bool


@dataclass(frozen=True)
class EvolutionTrace:
    entries: tuple
    violations: tuple  # (k, expected profiles, realized profile)

    def __iter__(self):
        return iter(self.entries)

    def rows(self):
        out = []
        for e in self.entries:
            p = e.profile
            shape = p.shape.value if p else ""
            l, r, s = p.triple if p and p.is_fork else ("", "", "")
            sc = "" if e.strongly_connected is None else int(e.strongly_connected)
            out.append((e.k, shape, l, r, s, sc, int(e.saturated)))
        return out


def transition_ok(prev: ForkProfile, nxt: ForkProfile) -> bool:
    """Whether ``nxt`` is an admissible follower of ``prev``."""
    cands = follower_profile(prev)
    if prev.l >= 1:
        return nxt == cands[0]
    return any(nxt.same_up_to_arcs(c) for c in cands)


def evolution_trace(source: WordSource, k_from: int, k_to: int, horizon: int,
                    on_unsaturated: str = "error") -> EvolutionTrace:
    """Profiles of the k-graphs for ``k_from <= k <= k_to``.

    A level is saturated when ``horizon >= 10 k``.  With
    ``on_unsaturated="flag"`` unsaturated levels are kept but not classified.
    """
    if k_from > k_to:
        raise ValueError("k_from must not exceed k_to")
    if horizon < 10 * k_to and on_unsaturated == "error":
        raise HorizonError(f"horizon too small: evolution up to k={k_to} needs >= {10 * k_to}")
    entries = []
    for k in range(k_from, k_to + 1):
        if horizon < 10 * k or horizon < k + 1:
            entries.append(TraceEntry(k, None, None, False))
            continue
        g = build_rauzy(source, k, horizon)
        entries.append(TraceEntry(k, classify_shape(g), strong_components(g).strongly_connected, True))
    return EvolutionTrace(tuple(entries), tuple(_violations(entries)))


def _violations(entries):
    out = []
    for a, b in zip(entries, entries[1:]):
        if not (a.profile and b.profile and a.profile.is_fork and b.profile.is_fork):
            continue
        if a.profile.r == 1 and a.profile.s == 1:
            continue
        if not transition_ok(a.profile, b.profile):
            out.append((b.k, tuple(follower_profile(a.profile)), b.profile))
    return out


# ---------------------------------------------------------------------------
# Export
# ---------------------------------------------------------------------------


def _dot_quote(s):
    return '"' + str(s).replace("\\", "\\\\").replace('"', '\\"') + '"'


def to_dot(g: DiGraph, name: str = "rauzy") -> str:
    """DOT text with factor labels on vertices and witness labels on edges."""
    lines = [f"digraph {name} {{"]
    for v in g.vertices:
        lines.append(f"  {_dot_quote(v)};")
    for t, h, label in sorted(g.arcs, key=lambda a: _label_key(a[2])):
        lines.append(f"  {_dot_quote(t)} -> {_dot_quote(h)} [label={_dot_quote(label)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


TRACE_COLUMNS = ("k", "shape", "l", "r", "s", "strongly_connected", "saturated")
