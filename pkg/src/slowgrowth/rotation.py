"""
Circle rotations by a quadratic irrational and their symbolic codings.

The circle is [0, 1).  A :class:`RotationSystem` assigns to every symbol a
finite union of half-open arcs (its characteristic set); the sets partition
the circle.  The coding of a start point ``x0`` is the word whose i-th symbol
(i = 1, 2, ...) names the set containing ``x0 + i*alpha mod 1``.  All
arithmetic is exact, so codings are reproducible bit for bit.

EXAMPLES::

    >>> system = sturmian_system(QuadraticIrrational.golden())
    >>> code(system, 10)
    'abaababaab'
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass
from typing import Mapping

from .errors import OrbitCollisionError
from .quadratic import ExactNumber, QuadraticIrrational
from .words import Alphabet, WordSource


def rotate(x: ExactNumber, alpha: QuadraticIrrational, steps: int) -> ExactNumber:
    """``x + steps*alpha mod 1``."""
    return ExactNumber(x.p, x.q + steps, alpha).mod1()


def lattice_point(alpha: QuadraticIrrational, n: int) -> ExactNumber:
    """``n*alpha mod 1``."""
    return ExactNumber(0, n, alpha).mod1()


@dataclass(frozen=True)
class Arc:
    """Half-open arc ``[left, right)`` of the circle; wraps through 0 when ``left > right``."""

    left: ExactNumber
    right: ExactNumber

    def __post_init__(self):
        for end in (self.left, self.right):
            if not 0 <= end < 1:
                raise ValueError(f"arc endpoint {end} is not in [0, 1)")
        if self.left == self.right:
            raise ValueError("arc endpoints coincide; use ArcSet.full() for the whole circle")

    @property
    def wraps(self):
        return self.right < self.left

    def length(self) -> ExactNumber:
        return (self.right - self.left).mod1()

    def contains(self, x: ExactNumber) -> bool:
        if self.wraps:
            return x >= self.left or x < self.right
        return self.left <= x < self.right


class ArcSet:
    """Finite union of half-open arcs, kept as sorted disjoint intervals of [0, 1)."""

    __slots__ = ("alpha", "intervals")

    def __init__(self, alpha: QuadraticIrrational, intervals=()):
        self.alpha = alpha
        self.intervals = _normalize(sorted(intervals, key=lambda iv: iv[0]))

    @classmethod
    def from_arcs(cls, alpha, arcs):
        one = ExactNumber(1, 0, alpha)
        zero = ExactNumber(0, 0, alpha)
        ivs = []
        for arc in arcs:
            if arc.wraps:
                ivs.append((arc.left, one))
                if arc.right != zero:
                    ivs.append((zero, arc.right))
            else:
                ivs.append((arc.left, arc.right))
        return cls(alpha, ivs)

    @classmethod
    def full(cls, alpha):
        return cls(alpha, [(ExactNumber(0, 0, alpha), ExactNumber(1, 0, alpha))])

    @classmethod
    def empty(cls, alpha):
        return cls(alpha, [])

    def is_empty(self):
        return not self.intervals

    def is_full(self):
        return len(self.intervals) == 1 and self.intervals[0][0] == 0 and self.intervals[0][1] == 1

    def contains(self, x: ExactNumber) -> bool:
        return any(lo <= x < hi for lo, hi in self.intervals)

    def length(self) -> ExactNumber:
        total = ExactNumber(0, 0, self.alpha)
        for lo, hi in self.intervals:
            total = total + (hi - lo)
        return total

    def shift(self, steps: int) -> "ArcSet":
        """Image under ``x -> x + steps*alpha``."""
        one = ExactNumber(1, 0, self.alpha)
        zero = ExactNumber(0, 0, self.alpha)
        out = []
        for lo, hi in self.intervals:
            lo2 = ExactNumber(lo.p, lo.q + steps, self.alpha)
            f = lo2.floor()
            lo2 = ExactNumber(lo2.p - f, lo2.q, self.alpha)
            hi2 = ExactNumber(hi.p - f, hi.q + steps, self.alpha)
            if hi2 <= one:
                out.append((lo2, hi2))
            else:
                out.append((lo2, one))
                out.append((zero, hi2 - 1))
        return ArcSet(self.alpha, out)

    def intersection(self, other: "ArcSet") -> "ArcSet":
        out = []
        a, b = self.intervals, other.intervals
        i = j = 0
        while i < len(a) and j < len(b):
            lo = max(a[i][0], b[j][0])
            hi = min(a[i][1], b[j][1])
            if lo < hi:
                out.append((lo, hi))
            if a[i][1] < b[j][1]:
                i += 1
            else:
                j += 1
        return ArcSet(self.alpha, out)

    __and__ = intersection

    def union(self, other: "ArcSet") -> "ArcSet":
        return ArcSet(self.alpha, list(self.intervals) + list(other.intervals))

    __or__ = union

    def arcs(self) -> list:
        """Maximal arcs, merging the pieces that meet at 0."""
        ivs = list(self.intervals)
        if not ivs or self.is_full():
            return []
        wrap = None
        if len(ivs) > 1 and ivs[0][0] == 0 and ivs[-1][1] == 1:
            wrap = Arc(ivs[-1][0], ivs[0][1])
            ivs = ivs[1:-1]
        out = [Arc(lo, hi.mod1()) for lo, hi in ivs]
        if wrap is not None:
            out.append(wrap)
        return out

    def endpoints(self) -> list:
        pts = []
        for arc in self.arcs():
            pts.extend([arc.left, arc.right])
        return sorted(set(pts))

    def __eq__(self, other):
        return isinstance(other, ArcSet) and self.alpha == other.alpha and self.intervals == other.intervals

    def __hash__(self):
        return hash(tuple(self.intervals))

    def __repr__(self):
        body = ", ".join(f"[{float(lo):.6f}, {float(hi):.6f})" for lo, hi in self.intervals)
        return f"ArcSet({body})"


def _normalize(ivs):
    out = []
    for lo, hi in ivs:
        if not lo < hi:
            continue
        if out and lo <= out[-1][1]:
            if hi > out[-1][1]:
                out[-1] = (out[-1][0], hi)
        else:
            out.append((lo, hi))
    return tuple(out)


class RotationSystem:
    """``(S^1, T_alpha, {I_a}, x0)``; characteristic sets must partition the circle."""

    def __init__(self, alpha: QuadraticIrrational, x0: ExactNumber, char_sets: Mapping[str, ArcSet],
                 alphabet=None):
        self.alpha = alpha
        self.alphabet = Alphabet.of(alphabet) if alphabet else Alphabet(tuple(char_sets))
        if set(self.alphabet) != set(char_sets):
            raise ValueError("alphabet and characteristic sets name different symbols")
        self.char_sets = {a: char_sets[a] for a in self.alphabet}
        if x0.alpha != alpha:
            raise ValueError("x0 is expressed over a different alpha")
        self.x0 = x0.mod1()
        self._check_partition()
        self._segments = self._build_segments()

    def _check_partition(self):
        syms = list(self.alphabet)
        for i, a in enumerate(syms):
            if self.char_sets[a].alpha != self.alpha:
                raise ValueError(f"characteristic set of {a!r} uses a different alpha")
            for b in syms[i + 1:]:
                if not (self.char_sets[a] & self.char_sets[b]).is_empty():
                    raise ValueError(f"characteristic sets of {a!r} and {b!r} overlap")
        total = ExactNumber(0, 0, self.alpha)
        for a in syms:
            total = total + self.char_sets[a].length()
        if total != 1:
            raise ValueError("characteristic sets do not cover the circle")

    def _build_segments(self):
        segs = sorted((lo, a) for a in self.alphabet for lo, _ in self.char_sets[a].intervals)
        return [lo for lo, _ in segs], [a for _, a in segs]

    def symbol_at(self, x: ExactNumber) -> str:
        starts, syms = self._segments
        return syms[bisect.bisect_right(starts, x) - 1]

    def endpoints(self) -> set:
        pts = set()
        for s in self.char_sets.values():
            pts.update(s.endpoints())
        return pts

    def with_x0(self, x0) -> "RotationSystem":
        return RotationSystem(self.alpha, x0, self.char_sets, self.alphabet)

    def __eq__(self, other):
        return (isinstance(other, RotationSystem) and self.alpha == other.alpha and self.x0 == other.x0
                and self.alphabet == other.alphabet and self.char_sets == other.char_sets)

    def __repr__(self):
        return f"RotationSystem(alpha={self.alpha}, x0={self.x0}, symbols={''.join(self.alphabet)})"


def code(system: RotationSystem, n: int) -> str:
    """Symbols of ``T^1(x0), ..., T^n(x0)``; raises if an iterate hits an endpoint."""
    ends = system.endpoints()
    alpha = system.alpha
    one = ExactNumber(1, 0, alpha)
    x = system.x0
    out = []
    for i in range(1, n + 1):
        x = ExactNumber(x.p, x.q + 1, alpha)
        if not x < one:
            x = ExactNumber(x.p - 1, x.q, alpha)
        if x in ends:
            raise OrbitCollisionError(i, x)
        out.append(system.symbol_at(x))
    return "".join(out)


def sturmian_system(alpha: QuadraticIrrational, x0: ExactNumber | None = None,
                    symbols: str = "ab") -> RotationSystem:
    """Two-interval system: ``[0, alpha)`` codes the first symbol, ``[alpha, 1)`` the second."""
    if not isinstance(alpha, QuadraticIrrational):
        raise ValueError("alpha must be a QuadraticIrrational (rational alpha is rejected)")
    zero, a, one = ExactNumber(0, 0, alpha), ExactNumber(0, 1, alpha), ExactNumber(1, 0, alpha)
    if not zero < a < one:
        raise ValueError(f"alpha = {float(alpha)} is not in (0, 1)")
    sets = {symbols[0]: ArcSet(alpha, [(zero, a)]), symbols[1]: ArcSet(alpha, [(a, one)])}
    return RotationSystem(alpha, a if x0 is None else x0, sets, Alphabet(tuple(symbols)))


def single_symbol_system(alpha: QuadraticIrrational, symbol: str = "a", x0=None) -> RotationSystem:
    """The whole circle as the characteristic set of one symbol."""
    x0 = ExactNumber(0, 1, alpha) if x0 is None else x0
    return RotationSystem(alpha, x0, {symbol: ArcSet.full(alpha)})


def factor_interval(system: RotationSystem, w: str) -> ArcSet:
    """Points whose next ``|w|`` coding symbols spell ``w``.

    This is the intersection of ``T^{-i}(I_{w_{i+1}})`` over ``i``, computed by
    backward refinement.
    """
    if not w:
        raise ValueError("word must be nonempty")
    system.alphabet.validate(w)
    acc = system.char_sets[w[-1]]
    for sym in reversed(w[:-1]):
        acc = system.char_sets[sym] & acc.shift(-1)
        if acc.is_empty():
            break
    return acc


def coding_factors(system: RotationSystem, n: int) -> list:
    """Words of length ``n`` with a nonempty factor interval, in lexicographic order."""
    level = [(a, system.char_sets[a]) for a in system.alphabet]
    for _ in range(n - 1):
        nxt = []
        for w, iv in level:
            for a in system.alphabet:
                nxt.append((w + a, iv & system.char_sets[a].shift(-len(w))))
        level = [(w, iv) for w, iv in nxt if not iv.is_empty()]
    return [w for w, _ in sorted(level, key=lambda t: system.alphabet.key(t[0]))]


def sturmian_recode(base: RotationSystem, n: int, grouping: Mapping[str, str],
                    alphabet=None) -> RotationSystem:
    """Multi-letter system whose symbol ``c`` owns the union of ``I_w`` over ``w -> c``."""
    facs = coding_factors(base, n)
    keys = set(grouping)
    if set(facs) - keys:
        raise ValueError(f"grouping misses factors {sorted(set(facs) - keys)}")
    if keys - set(facs):
        raise ValueError(f"grouping maps non-factors {sorted(keys - set(facs))}")
    targets = alphabet or Alphabet(tuple(dict.fromkeys(grouping[w] for w in facs)))
    targets = Alphabet.of(targets)
    if set(targets) != set(grouping.values()):
        raise ValueError("grouping is not surjective onto the new alphabet")
    sets = {c: ArcSet.empty(base.alpha) for c in targets}
    for w in facs:
        sets[grouping[w]] = sets[grouping[w]] | factor_interval(base, w)
    return RotationSystem(base.alpha, base.x0, sets, targets)


@dataclass(frozen=True)
class LatticeEntry:
    symbol: str
    endpoint: ExactNumber
    n: int | None  # None: not n*alpha mod 1 for any |n| <= bound


def endpoint_lattice(system: RotationSystem, bound: int) -> list:
    """Integer ``n`` with ``endpoint == n*alpha mod 1`` for every arc endpoint."""
    out = []
    for sym in system.alphabet:
        for e in system.char_sets[sym].endpoints():
            n = e.lattice_index()
            out.append(LatticeEntry(sym, e, n if n is not None and abs(n) <= bound else None))
    return out


class RotationWord(WordSource):
    """The coding of a rotation system as a word source."""

    kind = "one-sided"

    def __init__(self, system: RotationSystem):
        super().__init__(system.alphabet)
        self.system = system

    def _compute_prefix(self, n):
        return code(self.system, n)

    def __repr__(self):
        return f"RotationWord({self.system!r})"
