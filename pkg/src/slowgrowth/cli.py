"""
Command-line front end.

Every subcommand reads a JSON config, prints its primary output (or writes
it under ``--out DIR`` together with ``manifest.json``) and exits with

    0 success, 2 configuration error, 3 horizon/guard error,
    4 internal invariant violation.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import sys
from pathlib import Path

from . import __version__
from .algebra import (PROFILE_COLUMNS, boundary_verdict, classify, good_word_delta, growth_profile,
                      slow_growth_triggered)
from .config import load_json, parse_algebra, parse_recode, parse_source, parse_system
from .errors import ConfigError, HorizonError, OrbitCollisionError
from .rauzy import (TRACE_COLUMNS, build_rauzy, evolution_trace, predecessor_profile, to_dot,
                    transition_ok)
from .rotation import RotationWord, code, endpoint_lattice
from .words import (complexity, factors, is_balanced, minimal_forbidden_words, periodicity_scan,
                    return_words, special_factors, windows)

SCHEMA_VERSION = 1
EXIT_OK, EXIT_CONFIG, EXIT_GUARD, EXIT_INVARIANT = 0, 2, 3, 4


class InvariantViolation(RuntimeError):
    pass


def _csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _json(obj) -> str:
    return json.dumps({"schema_version": SCHEMA_VERSION, **obj}, indent=2, sort_keys=True) + "\n"


def _table(header, rows, fmt):
    if fmt == "json":
        return "json", _json({"columns": list(header), "rows": [list(r) for r in rows]})
    if fmt == "text":
        lines = ["\t".join(header)] + ["\t".join(str(x) for x in r) for r in rows]
        return "txt", "\n".join(lines) + "\n"
    return "csv", _csv(header, rows)


def _k_range(text):
    try:
        if ".." in text:
            lo, hi = (int(x) for x in text.split("..", 1))
        else:
            lo = hi = int(text)
    except ValueError:
        raise ConfigError(f"--k: expected K or LO..HI, got {text!r}") from None
    if lo < 1 or lo > hi:
        raise ConfigError(f"--k: need 1 <= LO <= HI, got {text!r}")
    return lo, hi


def _source(args):
    cfg = load_json(args.config)
    return parse_source(cfg, "", Path(args.config).parent)


# ---------------------------------------------------------------------------
# Commands: each returns a list of (file stem, extension, content)
# ---------------------------------------------------------------------------


def cmd_generate(args):
    cfg = load_json(args.config)
    if "alpha" in cfg and "kind" not in cfg:
        word = code(parse_system(cfg), args.n)
    else:
        word = parse_source(cfg, "", Path(args.config).parent).text(args.n)[:args.n]
    return [("word", "txt", word + "\n")]


def cmd_complexity(args):
    prof = complexity(_source(args), args.max_n, args.horizon)
    ext, body = _table(("n", "T", "V"), prof.rows(), args.format)
    return [("complexity", ext, body)]


def cmd_balance(args):
    src = _source(args)
    bal = is_balanced(src, args.max_n, args.horizon)
    per = periodicity_scan(src, args.max_period, args.horizon)
    report = {
        "balanced": bal.balanced,
        "witness": list(bal.witness) if bal.witness else None,
        "symbol": bal.symbol,
        "max_len": args.max_n,
        "period": per.period,
        "preperiod": per.preperiod,
        "max_period": args.max_period,
        "horizon": args.horizon,
    }
    if args.format == "text":
        return [("balance", "txt", "".join(f"{k}\t{v}\n" for k, v in report.items()))]
    return [("balance", "json", _json(report))]


def cmd_returns(args):
    src = _source(args)
    bases = [args.word] if args.word else []
    if not bases:
        for n in range(1, args.max_n + 1):
            bases.extend(src.alphabet.sorted(factors(src, n, args.horizon).factors))
    rows = []
    for v in bases:
        rs = return_words(src, v, args.horizon)
        rows.extend((v, "literal", u) for u in src.alphabet.sorted(rs.returns))
        rows.extend((v, "consecutive", u) for u in src.alphabet.sorted(rs.first_returns))
    ext, body = _table(("base", "definition", "return_word"), rows, args.format)
    return [("returns", ext, body)]


def cmd_specials(args):
    src = _source(args)
    rows = []
    for n in range(1, args.max_n + 1):
        for sf in special_factors(src, n, args.horizon):
            rows.append((n, sf.factor, "".join(sorted(sf.left_extensions)), "".join(sorted(sf.right_extensions)),
                         int(sf.is_left_special), int(sf.is_right_special), int(sf.is_bispecial)))
    header = ("n", "factor", "left", "right", "left_special", "right_special", "bispecial")
    ext, body = _table(header, rows, args.format)
    return [("specials", ext, body)]


def cmd_obstructions(args):
    src = _source(args)
    if args.horizon < 2 * args.max_n:
        raise HorizonError(f"horizon insufficient for requested maxN: need >= {2 * args.max_n}")
    text = src.text(args.horizon)
    lang = {n: windows(text, n) for n in range(1, args.max_n + 1)}
    mfw = sorted(minimal_forbidden_words(lang, src.alphabet), key=src.alphabet.deglex_key)
    ext, body = _table(("length", "obstruction"), [(len(w), w) for w in mfw], args.format)
    return [("obstructions", ext, body)]


def cmd_rauzy(args):
    src = _source(args)
    lo, hi = _k_range(args.k)
    if lo == hi:
        g = build_rauzy(src, lo, args.horizon)
        if args.format == "dot":
            return [(f"rauzy_k{lo}", "dot", to_dot(g, f"rauzy_k{lo}"))]
        rows = [(t, h, label) for t, h, label in sorted(g.arcs, key=lambda a: src.alphabet.key(a[2]))]
        ext, body = _table(("tail", "head", "edge"), rows, args.format)
        return [(f"rauzy_k{lo}", ext, body)]
    if args.format == "dot":
        out = []
        for k in range(lo, hi + 1):
            out.append((f"rauzy_k{k}", "dot", to_dot(build_rauzy(src, k, args.horizon), f"rauzy_k{k}")))
        return out
    trace = evolution_trace(src, lo, hi, args.horizon, on_unsaturated="flag")
    ext, body = _table(TRACE_COLUMNS, trace.rows(), args.format)
    return [("evolution", ext, body)]


def cmd_evolve(args):
    src = _source(args)
    lo, hi = _k_range(args.k)
    trace = evolution_trace(src, lo, hi, args.horizon, on_unsaturated="flag")
    rows = []
    entries = list(trace.entries)
    base_rows = trace.rows()
    for i, e in enumerate(entries):
        row = list(base_rows[i])
        nxt = entries[i + 1].profile if i + 1 < len(entries) else None
        pred, ok = "", ""
        if e.profile is not None and e.profile.is_fork:
            try:
                pred = str(predecessor_profile(e.profile, strict_paper=args.strict_paper).triple)
            except ValueError as exc:
                pred = f"none: {exc}"
            if nxt is not None and nxt.is_fork and not (e.profile.r == 1 and e.profile.s == 1):
                ok = int(transition_ok(e.profile, nxt))
        rows.append(row + [pred, ok])
    ext, body = _table(TRACE_COLUMNS + ("predecessor", "transition_ok"), rows, args.format)
    return [("evolution", ext, body)]


def _lattice_rows(system, bound):
    return [(e.symbol, str(e.endpoint), "" if e.n is None else e.n, int(e.n is not None))
            for e in endpoint_lattice(system, bound)]


def cmd_rotation_build(args):
    system = parse_system(load_json(args.config))
    code(system, args.horizon)
    ext, body = _table(("symbol", "endpoint", "n", "in_lattice"), _lattice_rows(system, args.bound), args.format)
    return [("lattice", ext, body)]


def cmd_recode(args):
    system = parse_recode(load_json(args.config))
    src = RotationWord(system)
    out = [("word", "txt", code(system, args.n) + "\n")]
    ext, body = _table(("symbol", "endpoint", "n", "in_lattice"), _lattice_rows(system, args.bound), args.format)
    out.append(("lattice", ext, body))
    if args.max_n:
        ext, body = _table(("n", "T", "V"), complexity(src, args.max_n, args.horizon).rows(), args.format)
        out.append(("complexity", ext, body))
    return out


def _algebra(args):
    return parse_algebra(load_json(args.config), "", Path(args.config).parent)


def cmd_algebra(args):
    alg = _algebra(args)
    margin = args.margin if args.margin is not None else max(1, args.max_n // 4)
    prof = growth_profile(alg, args.max_n, margin)
    for n in range(len(prof.T)):
        if prof.T_RL[n] > prof.T[n]:
            raise InvariantViolation(f"T_RL({n}) > T({n})")
    verdict = boundary_verdict(prof)
    deltas = good_word_delta(prof)
    if slow_growth_triggered(deltas) and verdict.tag.value != "SLOW_GROWTH":
        note = "good-word delta is zero but the tail verdict is not SLOW_GROWTH"
    else:
        note = ""
    report = {
        "boundary_verdict": verdict.tag.value,
        "K": verdict.K,
        "slow_growth_trigger": slow_growth_triggered(deltas),
        "deltas": [{"n": d.n, "delta": d.delta, "zero": d.zero, "one": d.one} for d in deltas],
        "max_n": args.max_n,
        "margin": margin,
        "note": note,
    }
    out = [("growth", "csv", _csv(PROFILE_COLUMNS, prof.rows())), ("verdict", "json", _json(report))]
    if args.classify:
        rep = classify(alg, args.horizon or args.max_n, args.margin)
        out.append(("classification", "json", _json(rep.as_dict())))
    return out


def cmd_classify(args):
    rep = classify(_algebra(args), args.horizon, args.margin)
    return [("classification", "json", _json(rep.as_dict()))]


# ---------------------------------------------------------------------------
# Parser and driver
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="slowgrowth", description="Sturmian words, Rauzy graphs, "
                                     "rotation codings and monomial algebras of slow growth.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help, fmt="csv", horizon=None, max_n=None):
        p = sub.add_parser(name, help=help)
        p.add_argument("config", help="JSON configuration file")
        p.add_argument("--horizon", type=int, default=horizon)
        p.add_argument("--max-n", type=int, default=max_n)
        p.add_argument("--margin", type=int, default=None)
        p.add_argument("--format", choices=("csv", "json", "dot", "text"), default=fmt)
        p.add_argument("--out", type=Path, default=None, help="write outputs and manifest.json here")
        p.add_argument("--strict-paper", action="store_true",
                       help="use the printed predecessor rule for (l, r, 1) profiles")
        p.set_defaults(func=func)
        return p

    add("generate", cmd_generate, "emit a prefix of the word", "text").add_argument("-n", type=int, required=True)
    add("complexity", cmd_complexity, "tabulate T(n) and V(n)", horizon=10000, max_n=20)
    add("balance", cmd_balance, "balance and periodicity verdicts", "json", 10000, 30).add_argument(
        "--max-period", type=int, default=200)
    p = add("returns", cmd_returns, "return words of factors", horizon=10000, max_n=5)
    p.add_argument("--word", default=None)
    add("specials", cmd_specials, "left/right special factors", horizon=10000, max_n=8)
    add("obstructions", cmd_obstructions, "minimal forbidden words", horizon=10000, max_n=12)
    add("rauzy", cmd_rauzy, "Rauzy graph export", "dot", 10000).add_argument("-k", "--k", default="1")
    add("evolve", cmd_evolve, "fork-profile evolution trace", horizon=10000).add_argument(
        "-k", "--k", default="1..12")
    add("rotation-build", cmd_rotation_build, "validate a rotation system", horizon=1000).add_argument(
        "--bound", type=int, default=50)
    p = add("recode", cmd_recode, "recode a Sturmian system by factors", horizon=2000, max_n=0)
    p.add_argument("-n", type=int, default=100)
    p.add_argument("--bound", type=int, default=50)
    p = add("algebra", cmd_algebra, "growth profile and boundary verdict", max_n=12)
    p.add_argument("--classify", action="store_true")
    add("classify", cmd_classify, "structural classification", "json", 12)
    return parser


def _sha256(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()


def _write(args, outputs):
    out_dir = args.out
    out_dir.mkdir(parents=True, exist_ok=True)
    written = []
    for stem, ext, content in outputs:
        path = out_dir / f"{stem}.{ext}"
        path.write_text(content, encoding="utf-8", newline="\n")
        written.append({"file": path.name, "sha256": _sha256(content.encode())})
    resolved = {k: (str(v) if isinstance(v, Path) else v) for k, v in vars(args).items()
                if k not in ("func", "out")}
    inputs = {}
    cfg = Path(args.config)
    if cfg.is_file():
        inputs[cfg.name] = _sha256(cfg.read_bytes())
    manifest = {"command": args.command, "config": resolved, "inputs": inputs,
                "version": __version__, "outputs": written}
    (out_dir / "manifest.json").write_text(_json(manifest), encoding="utf-8", newline="\n")


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_CONFIG if exc.code else EXIT_OK
    try:
        for name in ("horizon", "max_n", "margin"):
            value = getattr(args, name, None)
            if value is not None and value < 0:
                raise ConfigError(f"--{name.replace('_', '-')} must be non-negative")
        outputs = args.func(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (HorizonError, OrbitCollisionError) as exc:
        print(f"guard error: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except InvariantViolation as exc:
        print(f"invariant violation: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    except ValueError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    if args.out is not None:
        _write(args, outputs)
    else:
        for _, _, content in outputs:
            sys.stdout.write(content)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
