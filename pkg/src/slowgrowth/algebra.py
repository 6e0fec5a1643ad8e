"""
Monomial algebras given by an alphabet and a set of obstructions.

The normal words of a monomial algebra are the words containing no
obstruction as a factor; they form a basis of the algebra, so
``T(n)`` (normal words of length ``n``) and ``V(n) = T(0) + ... + T(n)`` are
its growth functions.  A normal word is *good at margin M* if it sits in the
middle of a normal word with ``M`` extra symbols on each side; ``T_RL(n)``
counts good words.

Obstruction sets may be infinite.  They are then given by a generator
``length -> obstructions of that length`` and every analysis states the
depth it reached.  All verdicts here are evidence at a finite horizon.
"""

from __future__ import annotations

import enum
import threading
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Iterable

from .errors import check_memory
from .rauzy import Shape, classify_shape, rauzy_from_language
from .words import Alphabet, WordSource, minimal_forbidden_words, smallest_period, solve_sw_eq_wt, windows


def minimize(words: Iterable[str]) -> frozenset:
    """Drop every word that has another word of the set as a proper factor."""
    out = []
    for w in sorted(set(words), key=len):
        if not any(o in w for o in out):
            out.append(w)
    return frozenset(out)


class MonomialAlgebra:
    """Alphabet plus obstructions (a finite antichain or a length-indexed generator).

    ``depth`` truncates a generator: obstructions longer than ``depth`` are
    never produced, which turns the algebra into a finitely presented one.
    """

    def __init__(self, alphabet, obstructions: Iterable[str] = (),
                 generator: Callable[[int], Iterable[str]] | None = None,
                 depth: int | None = None, name: str = ""):
        self.alphabet = Alphabet.of(alphabet)
        self.generator = generator
        self.depth = depth
        self.name = name
        self._lock = threading.RLock()
        self._base = minimize(self.alphabet.validate(w) for w in obstructions)
        if "" in self._base:
            raise ValueError("the empty word cannot be an obstruction")
        self._levels = {}
        self._generated_to = 0
        self._normal = {0: frozenset([""])}

    @classmethod
    def from_word_source(cls, source: WordSource, depth: int | None = None,
                         horizon: Callable[[int], int] | None = None) -> "MonomialAlgebra":
        """Algebra whose obstructions are the minimal forbidden words of ``source``.

        Obstructions of length ``L`` are read off the factors of the prefix at
        ``horizon(L)`` (default ``max(2000, 40 L)``).  With ``depth`` set, the
        obstructions are materialised up to that length and the algebra is finite.
        """
        horizon = horizon or (lambda L: max(2000, 40 * L))

        def generator(L):
            H = horizon(L)
            text = source.text(H)
            lang = {n: windows(text, n) for n in range(1, L + 1)}
            return [w for w in minimal_forbidden_words(lang, source.alphabet) if len(w) == L]

        if depth is not None:
            text = source.text(horizon(depth))
            lang = {n: windows(text, n) for n in range(1, depth + 1)}
            obs = minimal_forbidden_words(lang, source.alphabet)
            return cls(source.alphabet, obs, name=f"minimal forbidden words of {source!r} up to {depth}")
        return cls(source.alphabet, generator=generator, name=f"minimal forbidden words of {source!r}")

    # obstruction access ---------------------------------------------------

    @property
    def is_finite(self) -> bool:
        return self.generator is None or self.depth is not None

    def obstructions_up_to(self, L: int) -> frozenset:
        with self._lock:
            if self.generator is not None:
                top = L if self.depth is None else min(L, self.depth)
                while self._generated_to < top:
                    n = self._generated_to + 1
                    known = self._known()
                    new = [self.alphabet.validate(w) for w in self.generator(n)]
                    for w in new:
                        if len(w) != n:
                            raise ValueError(f"generator returned {w!r} for length {n}")
                    self._levels[n] = frozenset(w for w in new if not any(o in w for o in known))
                    self._generated_to = n
            return frozenset(w for w in self._known() if len(w) <= L)

    def _known(self):
        out = set(self._base)
        for ws in self._levels.values():
            out |= ws
        return minimize(out)

    def max_obstruction_length(self, L: int) -> int:
        return max((len(w) for w in self.obstructions_up_to(L)), default=0)

    @property
    def obstructions(self) -> frozenset:
        """All obstructions of a finite algebra."""
        if not self.is_finite:
            raise ValueError("infinite obstruction family: use obstructions_up_to(L)")
        if self.generator is not None:
            return self.obstructions_up_to(self.depth)
        return self._base

    def is_normal(self, word: str) -> bool:
        return not any(o in word for o in self.obstructions_up_to(len(word)))

    def _by_length(self, L):
        by = {}
        for o in self.obstructions_up_to(L):
            by.setdefault(len(o), set()).add(o)
        return by

    # normal words ---------------------------------------------------------

    def normal_words(self, n: int) -> frozenset:
        """Normal words of length ``n``, built by extending shorter ones."""
        with self._lock:
            top = max(self._normal)
            if n <= top:
                return self._normal[n]
            by = self._by_length(n)
            layer = self._normal[top]
            for m in range(top + 1, n + 1):
                lengths = [L for L in by if L <= m]
                check_memory(len(layer) * len(self.alphabet), m, "normal-word enumeration")
                nxt = set()
                for w in layer:
                    for a in self.alphabet:
                        x = w + a
                        if not any(x[-L:] in by[L] for L in lengths):
                            nxt.add(x)
                layer = frozenset(nxt)
                self._normal[m] = layer
            return layer

    # one-sided extension searches ------------------------------------------

    def right_extendable(self, w: str, m: int) -> bool:
        """Some ``z`` with ``|z| = m`` makes ``w z`` normal (``w`` assumed normal)."""
        return self._extendable(w, m, right=True)

    def left_extendable(self, w: str, m: int) -> bool:
        return self._extendable(w, m, right=False)

    def _extendable(self, w, m, right):
        by = self._by_length(len(w) + m)
        L = max(by, default=1)
        lengths = sorted(by)
        ctx_len = max(L - 1, 0)

        @lru_cache(maxsize=None)
        def ok(ctx, rest):
            if rest == 0:
                return True
            for a in self.alphabet:
                x = ctx + a if right else a + ctx
                if right and any(x[-k:] in by[k] for k in lengths if k <= len(x)):
                    continue
                if not right and any(x[:k] in by[k] for k in lengths if k <= len(x)):
                    continue
                nxt = x[len(x) - ctx_len:] if right else x[:ctx_len]
                if ok(nxt if ctx_len else "", rest - 1):
                    return True
            return False

        ctx = (w[len(w) - ctx_len:] if right else w[:ctx_len]) if ctx_len else ""
        if len(w) < ctx_len:
            ctx = w
        return ok(ctx, m)


def normal_words(alg: MonomialAlgebra, n: int) -> frozenset:
    return alg.normal_words(n)


def good_words(alg: MonomialAlgebra, n: int, margin: int) -> frozenset:
    """Normal words ``v`` of length ``n`` with ``w1 v w2`` normal for some ``|w1| = |w2| = margin``.

    When every relevant obstruction fits inside ``v`` plus one symbol, the two
    sides are independent and are searched separately with memoisation on
    the boundary context; otherwise middle windows of longer normal words are
    collected directly.
    """
    L = alg.max_obstruction_length(n + 2 * margin)
    if L <= n + 1:
        return frozenset(v for v in alg.normal_words(n)
                         if alg.left_extendable(v, margin) and alg.right_extendable(v, margin))
    return frozenset(x[margin:margin + n] for x in alg.normal_words(n + 2 * margin))


# ---------------------------------------------------------------------------
# Growth profile and verdicts
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GrowthProfile:
    T: tuple
    V: tuple
    T_RL: tuple
    horizon: int
    margin: int

    @property
    def max_n(self):
        return len(self.T) - 1

    def rows(self):
        return [(n, self.T[n], self.V[n], self.T_RL[n], self.T[n] - n) for n in range(len(self.T))]


PROFILE_COLUMNS = ("n", "T", "V", "T_RL", "T_minus_n")


def growth_profile(alg: MonomialAlgebra, max_n: int, margin: int) -> GrowthProfile:
    T = tuple(len(alg.normal_words(n)) for n in range(max_n + 1))
    V = []
    total = 0
    for t in T:
        total += t
        V.append(total)
    T_RL = tuple(len(good_words(alg, n, margin)) for n in range(max_n + 1))
    return GrowthProfile(T, tuple(V), T_RL, max_n, margin)


class Growth(enum.Enum):
    BOUNDARY_AT_HORIZON = "BOUNDARY_AT_HORIZON"
    SLOW_GROWTH = "SLOW_GROWTH"
    FINITE_DIM_EVIDENCE = "FINITE_DIM_EVIDENCE"
    SUPERLINEAR_EVIDENCE = "SUPERLINEAR_EVIDENCE"
    INCONCLUSIVE = "INCONCLUSIVE"


@dataclass(frozen=True)
class BoundaryVerdict:
    tag: Growth
    K: int | None = None

    def __str__(self):
        return f"{self.tag.value}({self.K})" if self.K is not None else self.tag.value


def boundary_verdict(profile: GrowthProfile) -> BoundaryVerdict:
    """Read the tail of ``T`` (the final third of the table).

    INCONCLUSIVE covers tails that match none of the four patterns.
    """
    if profile.max_n < 8:
        raise ValueError("boundary verdict needs a profile tabulated to max_n >= 8")
    T = profile.T
    if any(t == 0 for t in T[1:]):
        return BoundaryVerdict(Growth.FINITE_DIM_EVIDENCE)
    size = -(-len(T) // 3)
    start = len(T) - size
    tail = [(n, T[n]) for n in range(start, len(T))]
    if len({t for _, t in tail}) == 1:
        return BoundaryVerdict(Growth.SLOW_GROWTH)
    offsets = [t - n for n, t in tail]
    if len(set(offsets)) == 1:
        return BoundaryVerdict(Growth.BOUNDARY_AT_HORIZON, offsets[0])
    if all(b > a for a, b in zip(offsets, offsets[1:])):
        return BoundaryVerdict(Growth.SUPERLINEAR_EVIDENCE)
    return BoundaryVerdict(Growth.INCONCLUSIVE)


@dataclass(frozen=True)
class DeltaRow:
    n: int
    delta: int  # T_RL(n + 1) - T_RL(n)

    @property
    def zero(self):
        return self.delta == 0

    @property
    def one(self):
        return self.delta == 1


def good_word_delta(profile: GrowthProfile) -> list:
    """Increments of ``T_RL`` for ``1 <= n < max_n``."""
    return [DeltaRow(n, profile.T_RL[n + 1] - profile.T_RL[n]) for n in range(1, profile.max_n)]


def slow_growth_triggered(deltas) -> bool:
    """A zero increment of ``T_RL`` signals slow growth."""
    return any(d.zero for d in deltas)


# ---------------------------------------------------------------------------
# Structure detection
# ---------------------------------------------------------------------------


class Verdict(enum.Enum):
    CASE_1_EVIDENCE = "CASE_1_EVIDENCE"
    CASE_2_EVIDENCE = "CASE_2_EVIDENCE"
    NOT_BOUNDARY = "NOT_BOUNDARY"
    INCONCLUSIVE = "INCONCLUSIVE"


def _run_length(x, p, from_left=True):
    """Length of the longest prefix (or suffix) of ``x`` with period ``p``."""
    if not from_left:
        x = x[::-1]
    j = 0
    while p + j < len(x) and x[j] == x[p + j]:
        j += 1
    return min(p + j, len(x))


def _best_run(x, from_left):
    best = (0, 0)
    for p in range(1, max(1, len(x) // 3) + 1):
        run = _run_length(x, p, from_left)
        if run >= 2 * p and run > best[0]:
            best = (run, p)
    return best


def periodic_split(x: str):
    """Split ``x`` as ``(left run, c, right run)`` around its longest periodic ends.

    Returns ``(u, c, v, left_len, right_len)`` with ``u`` the last period of
    the left run and ``v`` the first period of the right run, or None when the
    runs overlap (``x`` is periodic) or either run is missing.
    """
    left, pu = _best_run(x, True)
    right, pv = _best_run(x, False)
    if not pu or not pv or left + right > len(x):
        return None
    start = len(x) - right
    return x[left - pu:left], x[left:start], x[start:start + pv], left, right


def _power_word(u, c, v, n):
    return u * n + c + v * n


def core_factors(u: str, c: str, v: str, n: int) -> frozenset:
    """Length-``n`` factors of ``u^(oo/2) c v^(oo/2)``."""
    reps = n // min(len(u), len(v)) + 2
    return windows(_power_word(u, c, v, reps), n)


def find_series(word: str):
    """Write ``word`` as ``e R^k f`` around its longest internal periodic run (``k >= 2``)."""
    best = None
    n = len(word)
    for p in range(1, n // 2 + 1):
        i = 0
        while i + p < n:
            j = i
            while j + p < n and word[j] == word[j + p]:
                j += 1
            run = j - i + p
            if run >= 2 * p and (best is None or run > best[0] or (run == best[0] and p < best[2])):
                best = (run, i, p)
            i = j + 1
    if best is None:
        return None
    run, i, p = best
    k = run // p
    return word[:i], word[i:i + p], k, word[i + k * p:]


@dataclass
class Family:
    item: str
    params: dict
    witnesses: list = field(default_factory=list)

    def as_dict(self):
        return {"item": self.item, **self.params, "witnesses": list(self.witnesses)}


@dataclass
class ClassificationReport:
    verdict: Verdict
    families: list
    diagnostics: dict
    reason: str = ""

    def as_dict(self):
        return {
            "verdict": self.verdict.value,
            "reason": self.reason,
            "families": [f.as_dict() for f in self.families],
            "diagnostics": self.diagnostics,
        }


@dataclass
class _Core:
    kind: str  # "periodic" or "recurrent"
    factors: Callable[[int], frozenset]
    params: dict
    witnesses: list


def uniform_recurrence_bound(long_words, short_words) -> bool:
    """Every word of ``long_words`` contains every word of ``short_words``."""
    return all(all(s in w for s in short_words) for w in long_words)


def _shape_signals(entries):
    """Signals read off the good-word Rauzy graphs across the window."""
    profiles = [p for _, p in entries]
    signals = {}
    if profiles and all(p.shape is Shape.TWO_CYCLES_WITH_BRIDGE for p in profiles):
        const = len({(p.p, p.q) for p in profiles}) == 1
        grows = all(b.t == a.t + 1 for a, b in zip(profiles, profiles[1:]))
        signals["bridge"] = const and grows
    if profiles and all(p.is_fork for p in profiles):
        lo = [min(p.cycle_lengths) for p in profiles]
        hi = [max(p.cycle_lengths) for p in profiles]
        signals["periodic_cycle"] = len(set(lo)) == 1 and all(b == a + 1 for a, b in zip(hi, hi[1:]))
        signals["both_cycles_grow"] = len(set(lo)) > 1
    return signals


def _detect_core(alg, horizon, margin):
    goods = {n: good_words(alg, n, margin) for n in range(horizon + 1)}
    entries = []
    for k in range(max(1, horizon // 2), horizon):
        if not goods[k] or not goods[k + 1]:
            break
        g = rauzy_from_language(goods[k], goods[k + 1], k, alg.alphabet)
        entries.append((k, classify_shape(g)))
    signals = _shape_signals(entries)
    m0 = max(1, horizon // 6)
    recurrent = all(uniform_recurrence_bound(goods[horizon], goods[m]) for m in range(1, m0 + 1))
    diagnostics = {
        "good_word_shapes": [{"k": k, "profile": str(p), "shape": p.shape.value} for k, p in entries],
        "shape_signals": signals,
        "recurrence_checked_up_to": m0,
        "good_words_uniformly_recurrent": recurrent,
    }
    aperiodic = all(smallest_period(x, horizon // 4) is None for x in goods[horizon])
    if recurrent and aperiodic and entries and all(p.is_fork for _, p in entries):
        witness = alg.alphabet.sorted(goods[horizon])[:1]
        core = _Core("recurrent", lambda n: good_words(alg, n, margin),
                     {"complexity_offset": len(goods[horizon]) - horizon}, witness)
        return core, diagnostics
    splits = []
    for x in goods[horizon]:
        sp = periodic_split(x)
        if sp is not None:
            u, c, v, left, right = sp
            splits.append((-min(left, right), alg.alphabet.deglex_key(c), alg.alphabet.key(x), (u, c, v)))
    if recurrent or not splits:
        return None, diagnostics
    u, c, v = min(splits)[3]
    witnesses = []
    reps = 1
    while True:
        w = _power_word(u, c, v, reps)
        if not alg.is_normal(w):
            diagnostics["case1_failed_at"] = w
            return None, diagnostics
        witnesses.append(w)
        if len(w) >= 2 * horizon:
            break
        reps *= 2
    core = _Core("periodic", lambda n: core_factors(u, c, v, n), {"u": u, "c": c, "v": v}, witnesses)
    return core, diagnostics


@dataclass(frozen=True)
class ObstructionBoundReport:
    K: int
    short: tuple
    killed: tuple
    non_core_counts: dict
    bound: int | None
    bounded: bool
    degenerate: bool
    horizon: int
    margin: int

    def as_dict(self):
        return {
            "K": self.K, "short": list(self.short), "killed": list(self.killed),
            "non_core_counts": {str(n): c for n, c in self.non_core_counts.items()},
            "bound": self.bound, "bounded": self.bounded, "degenerate": self.degenerate,
            "horizon": self.horizon, "margin": self.margin,
        }


def _margin_killed(alg, o, margin):
    if len(o) < 2:
        return False
    return not (alg.left_extendable(o[:-1], margin) and alg.right_extendable(o[1:], margin))


def obstruction_bound_check(alg: MonomialAlgebra, horizon: int, margin: int, _core=None) -> ObstructionBoundReport:
    """Split obstructions into short and margin-killed; count normal words off the core.

    An obstruction is margin-killed when one of its two maximal proper
    factors cannot be extended by ``margin`` symbols on the outer side.  The
    empirical ``K`` is the longest obstruction that is not killed.
    """
    obs = alg.alphabet.sorted(alg.obstructions_up_to(horizon))
    obs.sort(key=len)
    killed = [o for o in obs if _margin_killed(alg, o, margin)]
    short = [o for o in obs if o not in set(killed)]
    K = max((len(o) for o in short), default=0)
    degenerate = any(not alg.normal_words(n) for n in range(1, horizon + 1))
    counts, bound, bounded = {}, None, False
    if not degenerate:
        core = _core if _core is not None else _detect_core(alg, horizon, margin)[0]
        if core is not None:
            for n in range(1, horizon + 1):
                counts[n] = len(alg.normal_words(n) - core.factors(n))
            vals = list(counts.values())
            half = len(vals) // 2
            bound = max(vals)
            bounded = max(vals[half:]) <= max(vals[:half] or [0])
    return ObstructionBoundReport(K, tuple(short), tuple(killed), counts, bound, bounded, degenerate,
                                  horizon, margin)


def classify(alg: MonomialAlgebra, horizon: int, margin: int | None = None) -> ClassificationReport:
    """Match the normal words up to ``horizon`` against the two boundary-algebra pictures.

    CASE_1_EVIDENCE: the long good words are not uniformly recurrent and
    one of them splits as ``u^p c v^q`` with ``u^p c v^p`` normal for growing
    ``p``.  CASE_2_EVIDENCE: the good words are uniformly recurrent and
    aperiodic at the horizon and their Rauzy graphs keep a single strongly
    connected fork.  Extra families (series ``e R^k f`` and leftover words)
    are collected from the normal words outside the core.
    """
    margin = max(1, horizon // 4) if margin is None else margin
    profile = growth_profile(alg, horizon, margin)
    verdict = boundary_verdict(profile)
    diagnostics = {
        "horizon": horizon,
        "margin": margin,
        "obstruction_depth": horizon + 2 * margin,
        "growth": [dict(zip(PROFILE_COLUMNS, row)) for row in profile.rows()],
        "boundary_verdict": str(verdict),
    }
    if verdict.tag is not Growth.BOUNDARY_AT_HORIZON:
        reason = "not boundary: " + verdict.tag.value
        return ClassificationReport(Verdict.INCONCLUSIVE, [], diagnostics, reason)
    core, core_diag = _detect_core(alg, horizon, margin)
    diagnostics.update(core_diag)
    if core is None:
        return ClassificationReport(Verdict.INCONCLUSIVE, [], diagnostics, "no core structure detected")

    families = []
    if core.kind == "periodic":
        families.append(Family("case1.core", core.params, core.witnesses))
        result = Verdict.CASE_1_EVIDENCE
    else:
        families.append(Family("case2.core", {**core.params, "K": verdict.K}, core.witnesses))
        result = Verdict.CASE_2_EVIDENCE

    bounds = obstruction_bound_check(alg, horizon, margin, core)
    diagnostics["obstruction_bound"] = bounds.as_dict()
    families.append(Family("bounded_obstructions", {"K": bounds.K, "killed": len(bounds.killed)},
                           list(bounds.short[:20])))

    series, leftovers = {}, []
    for n in range(1, horizon + 1):
        for x in alg.alphabet.sorted(alg.normal_words(n) - core.factors(n)):
            found = find_series(x)
            if found is None:
                leftovers.append(x)
                continue
            e, R, k, f = found
            series.setdefault((e, R, f), set()).add(k)
    for (e, R, f), ks in sorted(series.items()):
        families.append(Family("series", {"e": e, "R": R, "f": f, "exponents": sorted(ks)},
                               [e + R * k + f for k in sorted(ks)]))
    if leftovers:
        families.append(Family("finite", {"count": len(leftovers)}, leftovers))
    return ClassificationReport(result, families, diagnostics)


# ---------------------------------------------------------------------------
# Word-combinatorial corollary
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CorollaryResult:
    factor_count: int
    decomposition: tuple | None  # (s, j, s1) with u == s * j + s1

    def satisfied(self, m):
        return self.factor_count >= m + 1 or self.decomposition is not None


def corollary_check(v1: str, u: str, v2: str, m: int) -> CorollaryResult:
    """For ``w = v1 u v2``: count factors of length ``|u| + m`` or find a period ``<= m`` of ``u``.

    The period is found by solving ``S W = W T`` with ``S = u[:p]``,
    ``T = u[-p:]`` and ``W = u[p:]``, which reads ``u = S^(j+1) s1``.
    """
    if not 1 <= m <= len(u):
        raise ValueError("need 1 <= m <= |u|")
    if len(v1) != len(v2) or len(v1) < m:
        raise ValueError("need |v1| == |v2| >= m")
    count = len(windows(v1 + u + v2, len(u) + m))
    dec = None
    for p in range(1, min(m, len(u)) + 1):
        sol = solve_sw_eq_wt(u[:p], u[-p:], u[p:])
        if sol is not None:
            dec = (sol.s, sol.k + 1, sol.s1)
            break
    return CorollaryResult(count, dec)
