"""
JSON configuration for word sources, rotation systems and algebras.

Every problem is reported as a ConfigError naming the JSON line (for syntax
errors) or the field path (for content errors), e.g.
``charSets[1].arcs[0].left.p: expected a rational``.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

from .algebra import MonomialAlgebra
from .errors import ConfigError
from .quadratic import ExactNumber, QuadraticIrrational
from .rotation import Arc, ArcSet, RotationSystem, RotationWord, sturmian_recode
from .words import Alphabet, ExplicitWord, SubstitutionWord, fibonacci_word, two_sided_periodic


def load_json(path) -> dict:
    """Parse a JSON file, turning syntax errors into line/column diagnostics."""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"{path}: cannot read ({exc.strerror})") from None
    return parse_json(text, str(path))


def parse_json(text: str, origin: str = "<config>") -> dict:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{origin}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    if not isinstance(data, dict):
        raise ConfigError(f"{origin}: top level must be a JSON object")
    return data


def _field(obj, key, path, kind=None, default=...):
    if not isinstance(obj, dict):
        raise ConfigError(f"{path or '<root>'}: expected an object")
    if key not in obj:
        if default is not ...:
            return default
        raise ConfigError(f"{_join(path, key)}: missing field")
    value = obj[key]
    if kind is not None and not isinstance(value, kind):
        names = kind.__name__ if isinstance(kind, type) else "/".join(k.__name__ for k in kind)
        raise ConfigError(f"{_join(path, key)}: expected {names}, got {type(value).__name__}")
    return value


def _join(path, key):
    if isinstance(key, int):
        return f"{path}[{key}]"
    return f"{path}.{key}" if path else key


def _rational(value, path) -> Fraction:
    if isinstance(value, bool) or not isinstance(value, (int, str)):
        raise ConfigError(f"{path}: expected a rational (integer or \"p/q\" string)")
    try:
        return Fraction(value)
    except (ValueError, ZeroDivisionError):
        raise ConfigError(f"{path}: cannot parse {value!r} as a rational") from None


def _int(value, path, minimum=None):
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigError(f"{path}: expected an integer")
    if minimum is not None and value < minimum:
        raise ConfigError(f"{path}: must be >= {minimum}")
    return value


# ---------------------------------------------------------------------------
# Rotation systems
# ---------------------------------------------------------------------------


def parse_alpha(obj, path="alpha") -> QuadraticIrrational:
    vals = {k: _int(_field(obj, k, path), _join(path, k)) for k in ("a", "b", "c", "d")}
    try:
        return QuadraticIrrational(**vals)
    except (ValueError, TypeError) as exc:
        raise ConfigError(f"{path}: {exc}") from None


def parse_point(obj, alpha, path) -> ExactNumber:
    p = _rational(_field(obj, "p", path, default=0), _join(path, "p"))
    q = _rational(_field(obj, "q", path, default=0), _join(path, "q"))
    return ExactNumber(p, q, alpha)


def parse_system(obj, path="") -> RotationSystem:
    """``{alpha, x0?, charSets: [{symbol, arcs: [{left, right}]} | {symbol, full: true}]}``."""
    alpha = parse_alpha(_field(obj, "alpha", path, dict), _join(path, "alpha"))
    x0_obj = _field(obj, "x0", path, dict, default=None)
    x0 = ExactNumber(0, 1, alpha) if x0_obj is None else parse_point(x0_obj, alpha, _join(path, "x0"))
    sets_path = _join(path, "charSets")
    entries = _field(obj, "charSets", path, list)
    if not entries:
        raise ConfigError(f"{sets_path}: at least one characteristic set is required")
    sets, order = {}, []
    for i, entry in enumerate(entries):
        epath = _join(sets_path, i)
        sym = _field(entry, "symbol", epath, str)
        if len(sym) != 1:
            raise ConfigError(f"{_join(epath, 'symbol')}: symbols are single characters")
        if sym in sets:
            raise ConfigError(f"{_join(epath, 'symbol')}: duplicate symbol {sym!r}")
        if _field(entry, "full", epath, bool, default=False):
            sets[sym] = ArcSet.full(alpha)
        else:
            arcs_path = _join(epath, "arcs")
            pieces = []
            for j, arc in enumerate(_field(entry, "arcs", epath, list)):
                apath = _join(arcs_path, j)
                left = parse_point(_field(arc, "left", apath, dict), alpha, _join(apath, "left"))
                right = parse_point(_field(arc, "right", apath, dict), alpha, _join(apath, "right"))
                if right == 1:  # [x, 1) and [x, 0) are the same arc
                    right = ExactNumber(0, 0, alpha)
                pieces.append((left, right))
            try:
                sets[sym] = ArcSet.from_arcs(alpha, [Arc(l, r) for l, r in pieces])
            except ValueError as exc:
                raise ConfigError(f"{arcs_path}: {exc}") from None
        order.append(sym)
    try:
        return RotationSystem(alpha, x0, sets, Alphabet(tuple(order)))
    except ValueError as exc:
        raise ConfigError(f"{sets_path}: {exc}") from None


def parse_recode(obj, path=""):
    """``{base: system, n, grouping: {factor: symbol}}``."""
    base = parse_system(_field(obj, "base", path, dict), _join(path, "base"))
    n = _int(_field(obj, "n", path), _join(path, "n"), 1)
    grouping = _field(obj, "grouping", path, dict)
    try:
        return sturmian_recode(base, n, grouping)
    except ValueError as exc:
        raise ConfigError(f"{_join(path, 'grouping')}: {exc}") from None


# ---------------------------------------------------------------------------
# Word sources
# ---------------------------------------------------------------------------


def parse_source(obj, path="", base_dir=None):
    """Build a WordSource from a config object.

    Kinds: ``fibonacci``, ``substitution {rules, seed}``, ``explicit
    {symbols, period?}``, ``two-sided-periodic {left_period, center,
    right_period}``, ``rotation {system}`` and ``rotation-ref {system: path}``.
    An object with an ``alpha`` field is read as a rotation system directly.
    """
    if isinstance(obj, dict) and "alpha" in obj and "kind" not in obj:
        return RotationWord(parse_system(obj, path))
    kind = _field(obj, "kind", path, str)
    try:
        if kind == "fibonacci":
            return fibonacci_word()
        if kind == "substitution":
            rules = _field(obj, "rules", path, dict)
            seed = _field(obj, "seed", path, str)
            return SubstitutionWord(rules, seed)
        if kind == "explicit":
            return ExplicitWord(_field(obj, "symbols", path, str), _field(obj, "period", path, str, default=""))
        if kind == "two-sided-periodic":
            return two_sided_periodic(_field(obj, "left_period", path, str),
                                      _field(obj, "center", path, str, default=""),
                                      _field(obj, "right_period", path, str))
        if kind == "rotation":
            return RotationWord(parse_system(_field(obj, "system", path, dict), _join(path, "system")))
        if kind == "recode":
            return RotationWord(parse_recode(obj, path))
        if kind == "rotation-ref":
            ref = _field(obj, "system", path, str)
            target = Path(base_dir or ".") / ref
            return RotationWord(parse_system(load_json(target), str(target)))
    except ConfigError:
        raise
    except ValueError as exc:
        raise ConfigError(f"{path or '<root>'}: {exc}") from None
    raise ConfigError(f"{_join(path, 'kind')}: unknown source kind {kind!r}")


def parse_algebra(obj, path="", base_dir=None) -> MonomialAlgebra:
    """``{alphabet, obstructions: [words] | {kind: "from-word-source", source, truncationDepth}}``."""
    spec = _field(obj, "obstructions", path)
    opath = _join(path, "obstructions")
    if isinstance(spec, list):
        alphabet = _field(obj, "alphabet", path, str)
        for i, w in enumerate(spec):
            if not isinstance(w, str):
                raise ConfigError(f"{_join(opath, i)}: expected a word")
        try:
            return MonomialAlgebra(alphabet, spec)
        except ValueError as exc:
            raise ConfigError(f"{opath}: {exc}") from None
    if isinstance(spec, dict):
        kind = _field(spec, "kind", opath, str)
        if kind != "from-word-source":
            raise ConfigError(f"{_join(opath, 'kind')}: unknown obstruction kind {kind!r}")
        source = parse_source(_field(spec, "source", opath, dict), _join(opath, "source"), base_dir)
        depth = _field(spec, "truncationDepth", opath, default=None)
        if depth is not None:
            depth = _int(depth, _join(opath, "truncationDepth"), 1)
        alg = MonomialAlgebra.from_word_source(source, depth)
        declared = _field(obj, "alphabet", path, str, default=None)
        if declared is not None and set(declared) != set(alg.alphabet):
            raise ConfigError(f"{_join(path, 'alphabet')}: does not match the source alphabet")
        return alg
    raise ConfigError(f"{opath}: expected a list of words or an object")
