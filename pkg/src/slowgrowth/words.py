"""
Finite and infinite words over finite alphabets.

Finite words are plain ``str`` objects whose characters are the symbols of an
:class:`Alphabet`; the empty string is the empty word.  Infinite words are
*sources*: deterministic prefix oracles.  Every predicate about an infinite
word is evaluated over a finite prefix (the *horizon*) and is only a verdict
"at that horizon".

Two-sided words are stored folded, ``w_0, w_-1, w_1, w_-2, ...``, so that they
fit the same prefix interface; :meth:`WordSource.text` undoes the fold and
every factor computation works on the unfolded, contiguous segment.

EXAMPLES::

    >>> fib = fibonacci_word()
    >>> fib.prefix(10)
    'abaababaab'
    >>> complexity(fib, 5, 100).values
    (1, 2, 3, 4, 5, 6)
    >>> sorted(return_words(fib, "a", 100).returns)
    ['', 'b']
"""

from __future__ import annotations

import itertools
import threading
from collections import defaultdict
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Iterable, Mapping

from .errors import HorizonError

ONE_SIDED = "one-sided"
TWO_SIDED_FOLDED = "two-sided-folded"


@dataclass(frozen=True)
class Alphabet:
    """Totally ordered finite alphabet of single-character symbols."""

    symbols: tuple

    def __post_init__(self):
        symbols = tuple(self.symbols)
        object.__setattr__(self, "symbols", symbols)
        if not symbols:
            raise ValueError("alphabet must contain at least one symbol")
        for s in symbols:
            if not isinstance(s, str) or len(s) != 1:
                raise ValueError(f"symbols must be single characters, got {s!r}")
        if len(set(symbols)) != len(symbols):
            raise ValueError("alphabet has duplicate symbols")

    @classmethod
    def of(cls, symbols: Iterable[str]) -> "Alphabet":
        return symbols if isinstance(symbols, Alphabet) else cls(tuple(symbols))

    @classmethod
    def from_words(cls, words: Iterable[str]) -> "Alphabet":
        """Alphabet of all symbols occurring in ``words``, in code-point order."""
        return cls(tuple(sorted(set("".join(words)))))

    @cached_property
    def rank(self) -> dict:
        return {s: i for i, s in enumerate(self.symbols)}

    def __len__(self):
        return len(self.symbols)

    def __iter__(self):
        return iter(self.symbols)

    def __contains__(self, symbol):
        return symbol in self.rank

    def key(self, word: str) -> tuple:
        """Lexicographic sort key respecting the alphabet order."""
        rank = self.rank
        return tuple(rank[c] for c in word)

    def deglex_key(self, word: str) -> tuple:
        """Sort key: first by length, then lexicographically."""
        return (len(word), self.key(word))

    def sorted(self, words: Iterable[str]) -> list:
        return sorted(words, key=self.key)

    def words(self, n: int):
        """All words of length ``n`` in lexicographic order."""
        for letters in itertools.product(self.symbols, repeat=n):
            yield "".join(letters)

    def validate(self, word: str) -> str:
        for c in word:
            if c not in self.rank:
                raise ValueError(f"symbol {c!r} of {word!r} is not in the alphabet {''.join(self.symbols)!r}")
        return word


# ---------------------------------------------------------------------------
# Word sources
# ---------------------------------------------------------------------------


class WordSource:
    """Prefix oracle for an infinite word.

    Subclasses implement :meth:`_compute_prefix`; prefixes are cached, so a
    source may be shared between threads.
    """

    kind = ONE_SIDED

    def __init__(self, alphabet):
        self.alphabet = Alphabet.of(alphabet)
        self._cache = ""
        self._lock = threading.Lock()

    def _compute_prefix(self, n: int) -> str:
        raise NotImplementedError

    def prefix(self, n: int) -> str:
        """The first ``n`` symbols (folded order for two-sided sources)."""
        if n < 0:
            raise ValueError("prefix length must be non-negative")
        with self._lock:
            if len(self._cache) < n:
                self._cache = self._compute_prefix(max(n, 2 * len(self._cache)))
            return self._cache[:n]

    def text(self, horizon: int) -> str:
        """The contiguous segment examined at ``horizon``."""
        return self.prefix(horizon)


class ExplicitWord(WordSource):
    """``head`` followed by ``period`` repeated forever (or nothing, if finite).

    A finite explicit word refuses prefixes longer than itself.
    """

    def __init__(self, head: str, period: str = "", alphabet=None):
        super().__init__(alphabet or Alphabet.from_words([head, period]))
        self.head = self.alphabet.validate(head)
        self.period = self.alphabet.validate(period)

    def _compute_prefix(self, n):
        if len(self.head) >= n:
            return self.head[:n]
        if not self.period:
            raise HorizonError(f"horizon too small: finite word has length {len(self.head)} < {n}")
        reps = (n - len(self.head)) // len(self.period) + 1
        return (self.head + self.period * reps)[:n]

    def __repr__(self):
        return f"ExplicitWord({self.head!r}, {self.period!r})"


def periodic_word(period: str, head: str = "") -> ExplicitWord:
    """``head`` followed by ``period`` forever, e.g. ``periodic_word("ab")`` is (ab)^oo."""
    if not period:
        raise ValueError("period must be nonempty")
    return ExplicitWord(head, period)


class SubstitutionWord(WordSource):
    """Fixed point of a substitution iterated from a seed symbol."""

    def __init__(self, rules: Mapping[str, str], seed: str, alphabet=None):
        super().__init__(alphabet or Alphabet(tuple(rules)))
        self.rules = {a: self.alphabet.validate(img) for a, img in rules.items()}
        missing = [a for a in self.alphabet if a not in self.rules]
        if missing:
            raise ValueError(f"substitution has no image for {missing}")
        if not seed or seed not in self.alphabet:
            raise ValueError(f"seed {seed!r} is not a symbol of the alphabet")
        if not self.rules[seed].startswith(seed) or len(self.rules[seed]) < 2:
            raise ValueError("the seed image must start with the seed and be longer than it")
        self.seed = seed

    def _compute_prefix(self, n):
        w = self.seed
        while len(w) < n:
            w = "".join(self.rules[c] for c in w)
        return w[:n]

    def __repr__(self):
        return f"SubstitutionWord({self.rules!r}, {self.seed!r})"


def fibonacci_word() -> SubstitutionWord:
    """The Fibonacci word, fixed point of a -> ab, b -> a."""
    return SubstitutionWord({"a": "ab", "b": "a"}, "a")


class FunctionWord(WordSource):
    """One-sided word given by ``symbol_at(i)`` for ``i = 0, 1, ...``."""

    def __init__(self, symbol_at: Callable[[int], str], alphabet):
        super().__init__(alphabet)
        self.symbol_at = symbol_at

    def _compute_prefix(self, n):
        return "".join(self.symbol_at(i) for i in range(n))


class TwoSidedWord(WordSource):
    """Two-sided word ``(w_i)`` for ``i`` in Z, exposed through the fold."""

    kind = TWO_SIDED_FOLDED

    def __init__(self, symbol_at: Callable[[int], str], alphabet):
        super().__init__(alphabet)
        self.symbol_at = symbol_at

    def _compute_prefix(self, n):
        out = []
        for j in range(n):
            i = j // 2 if j % 2 == 0 else -(j // 2 + 1)
            out.append(self.symbol_at(i))
        return "".join(out)

    def text(self, horizon):
        return unfold(self.prefix(horizon))


def unfold(folded: str) -> str:
    """Turn ``w_0 w_-1 w_1 w_-2 ...`` into the contiguous ``... w_-1 w_0 w_1 ...``."""
    return folded[1::2][::-1] + folded[0::2]


def two_sided_periodic(u: str, c: str, v: str, alphabet=None) -> TwoSidedWord:
    """The two-sided word ``...uuu c vvv...``; position 0 is the start of ``c v``."""
    if not u or not v:
        raise ValueError("periodic tails must be nonempty")
    alphabet = alphabet or Alphabet.from_words([u, c, v])
    right = c

    def symbol_at(i):
        if i < 0:
            return u[i % len(u)]
        if i < len(right):
            return right[i]
        return v[(i - len(right)) % len(v)]

    word = TwoSidedWord(symbol_at, alphabet)
    word.tails = (u, c, v)
    return word


# ---------------------------------------------------------------------------
# Factor sets and complexity
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FactorSet:
    length: int
    factors: frozenset
    horizon: int

    def __len__(self):
        return len(self.factors)

    def __contains__(self, word):
        return word in self.factors

    def __iter__(self):
        return iter(sorted(self.factors))


@dataclass(frozen=True)
class ComplexityProfile:
    """``values[n] = T(n)``, ``cumulative[n] = V(n)``, for n = 0..max_n."""

    values: tuple
    cumulative: tuple
    horizon: int

    @property
    def max_n(self):
        return len(self.values) - 1

    def rows(self):
        return [(n, t, v) for n, (t, v) in enumerate(zip(self.values, self.cumulative))]


def windows(text: str, n: int) -> frozenset:
    """Distinct length-``n`` windows of ``text``."""
    if n == 0:
        return frozenset([""])
    return frozenset(text[i:i + n] for i in range(len(text) - n + 1))


def factors(source: WordSource, n: int, horizon: int) -> FactorSet:
    if n < 0:
        raise ValueError("factor length must be non-negative")
    if horizon < n:
        raise HorizonError(f"horizon too small: {horizon} < {n}")
    return FactorSet(n, windows(source.text(horizon), n), horizon)


def complexity(source: WordSource, max_n: int, horizon: int) -> ComplexityProfile:
    """Tabulate T(n) and V(n) = T(0) + ... + T(n) over ``prefix(horizon)``."""
    if horizon < 2 * max_n:
        raise HorizonError(
            f"horizon insufficient for requested maxN: need >= {2 * max_n}, got {horizon}"
        )
    text = source.text(horizon)
    values = tuple(len(windows(text, n)) for n in range(max_n + 1))
    return ComplexityProfile(values, tuple(itertools.accumulate(values)), horizon)


def complexity_of_text(text: str, max_n: int) -> tuple:
    return tuple(len(windows(text, n)) for n in range(max_n + 1))


# ---------------------------------------------------------------------------
# Balance and periodicity
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BalanceVerdict:
    balanced: bool
    witness: tuple | None = None  # (u, v) with |u|_a - |v|_a >= 2
    symbol: str | None = None
    horizon: int = 0

    def __bool__(self):
        return self.balanced


def is_balanced(source: WordSource, max_len: int, horizon: int) -> BalanceVerdict:
    """Check ``||u|_a - |v|_a| <= 1`` for equal-length factors up to ``max_len``.

    The inequality is applied to every symbol ``a`` of the alphabet.  On
    failure the witness ``(u, v)`` has the larger count of ``a`` first.
    """
    if horizon < max_len:
        raise HorizonError(f"horizon too small: {horizon} < {max_len}")
    text = source.text(horizon)
    return balance_of_text(text, max_len, source.alphabet, horizon)


def balance_of_text(text, max_len, alphabet=None, horizon=None):
    alphabet = Alphabet.of(alphabet) if alphabet else Alphabet.from_words([text])
    for n in range(1, max_len + 1):
        facs = sorted(windows(text, n))
        if not facs:
            break
        for a in alphabet:
            counts = [(w.count(a), w) for w in facs]
            lo, hi = min(counts), max(counts)
            if hi[0] - lo[0] > 1:
                return BalanceVerdict(False, (hi[1], lo[1]), a, horizon or len(text))
    return BalanceVerdict(True, None, None, horizon or len(text))


@dataclass(frozen=True)
class PeriodicityResult:
    period: int | None
    preperiod: int | None
    horizon: int

    @property
    def periodic(self):
        return self.period is not None


def smallest_period(text: str, max_period: int) -> int | None:
    """Smallest ``p <= max_period`` with ``text[i] == text[i + p]`` throughout."""
    for p in range(1, min(max_period, max(len(text) - 1, 0)) + 1):
        if text[p:] == text[:-p]:
            return p
    return None


def periodicity_scan(source: WordSource, max_period: int, horizon: int) -> PeriodicityResult:
    """Look for a period ``p <= max_period`` of the second half of the prefix.

    A hit means the prefix looks eventually periodic at this horizon; the
    preperiod is the earliest position from which ``p`` holds.
    """
    if horizon < 4 * max_period:
        raise HorizonError(f"horizon too small: periodicity scan needs >= {4 * max_period}")
    text = source.text(horizon)
    tail = text[horizon // 2:]
    p = smallest_period(tail, max_period)
    if p is None:
        return PeriodicityResult(None, None, horizon)
    start = horizon // 2
    while start > 0 and text[start - 1] == text[start - 1 + p]:
        start -= 1
    return PeriodicityResult(p, start, horizon)


# ---------------------------------------------------------------------------
# Return words, special factors, recurrence
# ---------------------------------------------------------------------------


def occurrences(text: str, v: str) -> list:
    """Start positions of (possibly overlapping) occurrences of ``v``."""
    out = []
    i = text.find(v)
    while i != -1:
        out.append(i)
        i = text.find(v, i + 1)
    return out


@dataclass(frozen=True)
class ReturnSet:
    """Return words of ``base``.

    ``returns`` follows the literal definition: every ``u`` such that ``v u v``
    is a factor and ``v`` is not a factor of ``u`` (so the empty word appears
    when ``vv`` is a factor).  ``first_returns`` holds the segments
    ``text[i:j]`` between consecutive occurrences ``i < j``, which is the
    classical notion and is never affected by overlapping occurrences.
    """

    base: str
    returns: frozenset
    horizon: int
    first_returns: frozenset = field(default=frozenset())


def return_words(source: WordSource, v: str, horizon: int) -> ReturnSet:
    text = source.text(horizon)
    return return_words_of_text(text, v, horizon)


def return_words_of_text(text, v, horizon=None):
    if not v:
        raise ValueError("base word must be nonempty")
    occ = occurrences(text, v)
    if not occ:
        raise ValueError(f"base word not a factor: {v!r}")
    m = len(v)
    returns = set()
    for idx, i in enumerate(occ):
        # candidates j run up to the first occurrence fully inside the gap
        for j in occ[idx + 1:]:
            if j < i + m:
                continue
            u = text[i + m:j]
            if v in u:
                break
            returns.add(u)
    first = frozenset(text[i:j] for i, j in zip(occ, occ[1:]))
    return ReturnSet(v, frozenset(returns), horizon or len(text), first)


@dataclass(frozen=True)
class SpecialFactor:
    factor: str
    left_extensions: tuple
    right_extensions: tuple

    @property
    def left_valence(self):
        return len(self.left_extensions)

    @property
    def right_valence(self):
        return len(self.right_extensions)

    @property
    def is_left_special(self):
        return self.left_valence >= 2

    @property
    def is_right_special(self):
        return self.right_valence >= 2

    @property
    def is_bispecial(self):
        return self.is_left_special and self.is_right_special


def special_factors(source: WordSource, n: int, horizon: int) -> list:
    """Extensions and valences of every length-``n`` factor.

    Returns one :class:`SpecialFactor` record per factor (special or not) in
    lexicographic order; filter on ``is_left_special`` etc. as needed.
    """
    if horizon < n + 1:
        raise HorizonError(f"horizon too small: {horizon} < {n + 1}")
    text = source.text(horizon)
    alphabet = source.alphabet
    left, right = defaultdict(set), defaultdict(set)
    for w in windows(text, n + 1):
        left[w[1:]].add(w[0])
        right[w[:-1]].add(w[-1])
    out = []
    for f in alphabet.sorted(windows(text, n)):
        out.append(SpecialFactor(
            f,
            tuple(alphabet.sorted(left.get(f, ()))),
            tuple(alphabet.sorted(right.get(f, ()))),
        ))
    return out


@dataclass(frozen=True)
class RecurrenceReport:
    """Recurrence data at a horizon.

    ``max_gaps[l]`` is the largest distance between consecutive occurrences
    of a length-``l`` factor (``None`` if some factor occurs only once);
    ``window_bounds[l]`` is the observed N(v) maximised over those factors:
    the shortest window length such that every window of the prefix contains
    every length-``l`` factor.
    """

    every_factor_recurs_twice: bool
    max_gaps: dict
    window_bounds: dict
    uniformly_recurrent: bool
    horizon: int
    non_recurring: tuple = ()


def recurrence_report(source: WordSource, max_len: int, horizon: int) -> RecurrenceReport:
    if horizon < 10 * max_len:
        raise HorizonError(f"horizon too small: recurrence needs >= {10 * max_len}, got {horizon}")
    return recurrence_of_text(source.text(horizon), max_len)


def recurrence_of_text(text: str, max_len: int) -> RecurrenceReport:
    H = len(text)
    twice = True
    uniform = True
    max_gaps, bounds, lonely = {}, {}, []
    for n in range(1, max_len + 1):
        gap_n, bound_n = 0, 0
        for v in sorted(windows(text, n)):
            occ = occurrences(text, v)
            if len(occ) < 2:
                twice = False
                lonely.append(v)
                gap_n = None
            gaps = [j - i for i, j in zip(occ, occ[1:])]
            if gap_n is not None and gaps:
                gap_n = max(gap_n, max(gaps))
            bound = max([occ[0] + n, H - occ[-1]] + [g + n - 1 for g in gaps])
            bound_n = max(bound_n, bound)
        max_gaps[n] = gap_n
        bounds[n] = bound_n
        if gap_n is None or bound_n > H // 2:
            uniform = False
    return RecurrenceReport(twice, max_gaps, bounds, uniform and twice, H, tuple(lonely))


# ---------------------------------------------------------------------------
# Minimal forbidden words and the word equation SW = WT
# ---------------------------------------------------------------------------


def _language_levels(language) -> dict:
    if isinstance(language, Mapping):
        items = language.items()
    else:
        items = ((fs.length, fs.factors) for fs in language)
    levels = {}
    for n, words in items:
        words = frozenset(words)
        for w in words:
            if len(w) != n:
                raise ValueError(f"word {w!r} listed under length {n}")
        levels[n] = words
    levels[0] = frozenset([""])
    return levels


def minimal_forbidden_words(language, alphabet=None) -> frozenset:
    """Words absent from a factorial language whose proper factors are all present.

    ``language`` maps each length ``1..n`` to the words of that length (or is
    an iterable of :class:`FactorSet`).  Returns the obstructions of length
    ``<= n``.
    """
    levels = _language_levels(language)
    top = max(levels)
    missing = [n for n in range(1, top + 1) if n not in levels]
    if missing:
        raise ValueError(f"not factor-closed: no words given for lengths {missing}")
    for n in range(2, top + 1):
        for w in levels[n]:
            if w[1:] not in levels[n - 1] or w[:-1] not in levels[n - 1]:
                raise ValueError(f"not factor-closed: a factor of {w!r} is missing")
    symbols = Alphabet.of(alphabet) if alphabet else Alphabet.from_words(levels[1])
    out = set()
    for n in range(1, top + 1):
        for w in levels[n - 1]:
            for x in symbols:
                cand = w + x
                if cand not in levels[n] and cand[1:] in levels[n - 1]:
                    out.add(cand)
    return frozenset(out)


@dataclass(frozen=True)
class SWDecomposition:
    """``W == s * k + s1`` with ``s1`` a proper prefix of ``s``."""

    s: str
    k: int
    s1: str

    def word(self):
        return self.s * self.k + self.s1


def solve_sw_eq_wt(S: str, T: str, W: str) -> SWDecomposition | None:
    """Decompose ``W`` when ``S + W == W + T``; return None if the equation fails."""
    if not S or not T:
        raise ValueError("S and T must be nonempty")
    if len(S) != len(T):
        raise ValueError(f"length mismatch: |S| = {len(S)}, |T| = {len(T)}")
    if S + W != W + T:
        return None
    k, r = divmod(len(W), len(S))
    dec = SWDecomposition(S, k, W[len(W) - r:])
    assert dec.word() == W and S.startswith(dec.s1) and len(dec.s1) < len(S)
    return dec
