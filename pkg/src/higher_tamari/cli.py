"""Command-line entry point.

Exit codes: 0 success, 1 verification failure, 2 input error (including
enumerations that run past the requested limits).
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from . import export
from .crosssection import g, g_bar, g_bar_with_audit, g_with_audit
from .errors import EnumerationLimitError, HigherTamariError, InvalidObjectError
from .ground import Subset
from .posets import FinitePoset
from .simplicial import (
    Triangulation,
    apply_flip,
    enumerate_hst,
    flip_between,
    increasing_flips,
    internal_label,
    internal_simplex_masks,
    total_volume,
    validate,
)
from .verification import DEFAULT_GRID, EXTENDED_GRID, verify_cell
from .witness import U_of, build_Q_T, fullness_witness, odd_preimage
from .zonotopal import (
    Cubillage,
    bruhat_enumeration,
    exchange_flips,
    inversion_set_of,
    validate_cubillage,
)

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


@dataclass
class RunConfig:
    command: str
    n: Optional[int] = None
    delta: Optional[int] = None
    cache_dir: Optional[Path] = None
    format: str = "json"
    max_elements: Optional[int] = None
    max_seconds: Optional[float] = None


class InputError(HigherTamariError, ValueError):
    pass


def resolve_cache_dir(flag: Optional[str]) -> Path:
    """Explicit flag, then TAMARI_CACHE, then ~/.cache/higher_tamari."""
    if flag:
        return Path(flag)
    env = os.environ.get("TAMARI_CACHE")
    if env:
        return Path(env)
    return Path.home() / ".cache" / "higher_tamari"


def cache_path(cache_dir: Path, kind: str, n: int, delta: int) -> Path:
    return cache_dir / f"{kind}_n{n}_d{delta}_v{export.FORMAT_VERSION}.json"


def _check_dims(n, delta):
    if n is None or delta is None:
        raise InputError("--n and --delta are required")
    if delta < 0 or n < delta + 1 or n > 16:
        raise InputError(f"need 0 <= delta < n <= 16, got n={n}, delta={delta}")


def _check_object_dims(cfg: RunConfig, n: int, delta: int):
    """Optional --n/--delta on object commands must agree with the object itself."""
    if cfg.n is not None and cfg.n != n:
        raise InputError(f"--n {cfg.n} does not match the input object (n={n})")
    if cfg.delta is not None and cfg.delta != delta:
        raise InputError(f"--delta {cfg.delta} does not match the input object (delta={delta})")


def _check_limits(cfg: RunConfig):
    for name in ("max_elements", "max_seconds"):
        v = getattr(cfg, name)
        if v is not None and v <= 0:
            raise InputError(f"--{name.replace('_', '-')} must be positive")


def load_or_enumerate(cfg: RunConfig, kind: str) -> tuple[FinitePoset, Path, bool]:
    """Poset for (kind, n, delta) from the cache, enumerating and storing it on a miss."""
    path = cache_path(cfg.cache_dir, kind, cfg.n, cfg.delta)
    if path.exists():
        return export.poset_from_json(json.loads(path.read_text())), path, True
    if kind == "bruhat":
        poset = bruhat_enumeration(cfg.n, cfg.delta, cfg.max_elements, cfg.max_seconds).poset
    else:
        poset = enumerate_hst(cfg.n, cfg.delta, cfg.max_elements, cfg.max_seconds)
    text = export.dumps(export.poset_to_json(poset, kind, cfg.n, cfg.delta))
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_suffix(".tmp")
    tmp.write_text(text)
    os.replace(tmp, path)
    return poset, path, False


def _read_json(name: str) -> dict:
    try:
        text = sys.stdin.read() if name == "-" else Path(name).read_text()
        return json.loads(text)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read JSON from {name}: {exc}") from exc


def _read_triangulation(name: str) -> Triangulation:
    x = export.load_object(_read_json(name))
    if not isinstance(x, Triangulation):
        raise InputError(f"{name} does not hold a triangulation")
    return x


def _read_cubillage(name: str) -> Cubillage:
    x = export.load_object(_read_json(name))
    if not isinstance(x, Cubillage):
        raise InputError(f"{name} does not hold a cubillage")
    return x


def _emit(obj, fmt: str, text: Optional[str] = None, output: Optional[str] = None):
    body = export.dumps(obj) if fmt == "json" or text is None else text
    if output:
        Path(output).write_text(body)
    else:
        sys.stdout.write(body)


# ---------------------------------------------------------------- commands


def cmd_enumerate(cfg: RunConfig, args) -> int:
    _check_dims(cfg.n, cfg.delta)
    kinds = ["bruhat", "hst"] if args.kind == "both" else [args.kind]
    records = []
    for kind in kinds:
        if kind == "hst" and cfg.delta < 1:
            raise InputError("triangulations need delta >= 1")
        poset, path, hit = load_or_enumerate(cfg, kind)
        records.append({"kind": kind, "n": cfg.n, "delta": cfg.delta, "size": len(poset),
                        "covers": len(poset.covers), "path": str(path), "cached": hit})
    text = "".join(f"{r['kind']} n={r['n']} delta={r['delta']}: {r['size']} elements, "
                   f"{r['covers']} covers -> {r['path']}{' (cached)' if r['cached'] else ''}\n"
                   for r in records)
    _emit({"results": records}, cfg.format, text)
    return EXIT_OK


def cmd_map(cfg: RunConfig, args) -> int:
    q = _read_cubillage(args.input)
    _check_object_dims(cfg, q.n, q.delta)
    if q.delta < 1:
        raise InputError("the cross-section needs a cubillage of Z(n, d) with d >= 2")
    res = g_with_audit(q) if args.direction == "g" else g_bar_with_audit(q)
    t = res.triangulation
    out = {
        "direction": args.direction,
        "source": export.cubillage_to_json(q),
        "triangulation": export.triangulation_to_json(t),
        "internal_simplices": sorted(Subset(t.n, m).to_list() for m in internal_simplex_masks(t)),
        "audit": {
            "cubes": export.triangulation_to_json(t),
            "internal_spectrum": sorted(Subset(t.n, m).to_list() for m in res.source_internal),
            "visibility": sorted(Subset(t.n, m).to_list() for m in res.visible),
            "agree": True,
        },
    }
    _emit(out, cfg.format, f"{args.direction}({q.label()}) = {t} with internal simplices {internal_label(t)}\n",
          args.output)
    return EXIT_OK


def cmd_verify(cfg: RunConfig, args) -> int:
    if args.n is not None or args.delta is not None:
        _check_dims(cfg.n, cfg.delta)
        cells = [(cfg.delta, cfg.n)]
    else:
        cells = list(EXTENDED_GRID if args.extend else DEFAULT_GRID)
    for d, n in cells:
        if d < 1:
            raise InputError("verification needs delta >= 1")
    jobs = [(n, d, cfg.max_elements, cfg.max_seconds) for d, n in cells]
    if args.threads > 1:
        with ProcessPoolExecutor(max_workers=args.threads) as pool:
            reports = list(pool.map(_verify_job, jobs))
    else:
        reports = [_verify_job(j) for j in jobs]
    passed = all(r.passed for r in reports)
    out = {"passed": passed, "cells": [r.to_json() for r in reports]}
    lines = []
    for r in reports:
        status = "EXCLUDED" if r.excluded else ("PASS" if r.passed else "FAIL")
        lines.append(f"{status} delta={r.delta} n={r.n} sizes={r.sizes}"
                     + (f" counterexample={r.counterexample}" if r.counterexample else ""))
    _emit(out, cfg.format, "\n".join(lines) + "\n")
    return EXIT_OK if passed else EXIT_FAIL


def _verify_job(job):
    return verify_cell(*job)


def cmd_witness(cfg: RunConfig, args) -> int:
    if args.mode == "surject":
        if not args.tri:
            raise InputError("witness surject needs --tri")
        t = _read_triangulation(args.tri)
        _check_object_dims(cfg, t.n, t.delta)
        q = build_Q_T(t) if t.delta % 2 == 0 else odd_preimage(t)
        if g(q) != t:
            raise InvalidObjectError("internal error: g(Q) differs from T")
        out = {"triangulation": export.triangulation_to_json(t), "cubillage": export.cubillage_to_json(q)}
        if t.delta % 2 == 0:
            out["U"] = sorted(s.to_list() for s in U_of(t))
        _emit(out, cfg.format, f"Q with g(Q) = {t}: internal spectrum {q.label()}\n", args.output)
        return EXIT_OK

    if not args.tri and not args.from_:
        raise InputError("witness full needs --from/--to or --tri/--flip")
    if args.tri:
        t = _read_triangulation(args.tri)
        if not args.flip:
            raise InputError("--tri needs --flip")
        t2 = apply_flip(t, Subset.parse(t.n, args.flip))
    else:
        if not args.to:
            raise InputError("--from needs --to")
        t, t2 = _read_triangulation(args.from_), _read_triangulation(args.to)
    if (t.n, t.delta) != (t2.n, t2.delta):
        raise InputError("the two triangulations live in different polytopes")
    _check_object_dims(cfg, t.n, t.delta)
    if flip_between(t, t2) is None:
        raise InputError("the second triangulation is not an increasing flip of the first")
    sched, method = fullness_witness(t, t2)
    sched.replay()
    out = export.schedule_to_json(sched)
    out["method"] = method
    text = "".join(f"{k + 1}. {a} -> {b}\n" for k, (a, b) in enumerate(sched.steps))
    _emit(out, cfg.format, text, args.output)
    return EXIT_OK


def cmd_inspect(cfg: RunConfig, args) -> int:
    if args.input:
        data = _read_json(args.input)
        if "simplices" in data:
            t = export.triangulation_from_json(data, check=False)
            rep = validate(t)
            out = {"type": "triangulation", "valid": rep.valid, "reason": rep.reason, "detail": rep.detail,
                   "object": export.triangulation_to_json(t)}
            if rep.valid:
                out["internal_simplices"] = sorted(Subset(t.n, m).to_list() for m in internal_simplex_masks(t))
                out["volume"] = total_volume(t.masks)
                out["increasing_flips"] = sorted(f.s.to_list() for f, _ in increasing_flips(t))
            text = f"triangulation {t}: " + ("valid, internal " + internal_label(t) if rep.valid
                                             else f"invalid ({rep.reason}: {rep.detail})") + "\n"
        elif "spectrum" in data:
            q = export.cubillage_from_json(data, check=False)
            rep = validate_cubillage(q)
            out = {"type": "cubillage", "valid": rep.valid, "reason": rep.reason, "detail": rep.detail,
                   "object": export.cubillage_to_json(q, with_inversions=False)}
            if rep.valid:
                out["internal_spectrum"] = [s.to_list() for s in q.internal_spectrum]
                if q.delta >= 0:
                    out["inversion_set"] = [s.to_list() for s in inversion_set_of(q).members]
                    out["increasing_flips"] = [[a.to_list(), b.to_list()] for a, b, _ in exchange_flips(q)]
                if q.delta >= 1:
                    out["g"] = export.triangulation_to_json(g(q))
                    out["g_bar"] = export.triangulation_to_json(g_bar(q))
            text = f"cubillage {q}: " + ("valid" if rep.valid else f"invalid ({rep.reason}: {rep.detail})") + "\n"
        else:
            raise InputError("JSON object is neither a triangulation nor a cubillage")
        _emit(out, cfg.format, text)
        return EXIT_OK if rep.valid else EXIT_INPUT

    _check_dims(cfg.n, cfg.delta)
    poset, path, hit = load_or_enumerate(cfg, args.kind)
    ranks = poset.ranks()
    out = {"kind": args.kind, "n": cfg.n, "delta": cfg.delta, "size": len(poset),
           "covers": len(poset.covers), "height": max(ranks), "cache": str(path),
           "minimum": export.default_label(poset.elements[poset.minimal()[0]]),
           "maximum": export.default_label(poset.elements[poset.maximal()[0]])}
    text = "".join(f"{k}: {v}\n" for k, v in out.items())
    _emit(out, cfg.format, text)
    return EXIT_OK


def cmd_export(cfg: RunConfig, args) -> int:
    _check_dims(cfg.n, cfg.delta)
    if args.kind == "hst" and cfg.delta < 1:
        raise InputError("triangulations need delta >= 1")
    poset, _, _ = load_or_enumerate(cfg, args.kind)
    name = f"{'B' if args.kind == 'bruhat' else 'S'}({cfg.n},{cfg.delta + (args.kind == 'bruhat')})"
    if cfg.format == "dot":
        body = export.hasse_dot(poset, name)
    elif cfg.format == "text":
        body = export.poset_text(poset)
    else:
        body = export.dumps(export.poset_to_json(poset, args.kind, cfg.n, cfg.delta))
    if args.output:
        Path(args.output).write_text(body)
    else:
        sys.stdout.write(body)
    return EXIT_OK


# ---------------------------------------------------------------- parser


def _positive_int(s):
    v = int(s)
    if v <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def _positive_float(s):
    v = float(s)
    if v <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="higher-tamari", description="Higher Bruhat and Stasheff-Tamari orders.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, fmt=("json", "text")):
        sp.add_argument("--n", type=int)
        sp.add_argument("--delta", type=int)
        sp.add_argument("--cache-dir")
        sp.add_argument("--format", choices=fmt, default=fmt[0])
        sp.add_argument("--max-elements", type=_positive_int)
        sp.add_argument("--max-seconds", type=_positive_float)

    sp = sub.add_parser("enumerate", help="enumerate B(n, delta+1) and/or S(n, delta) into the cache")
    common(sp)
    sp.add_argument("--kind", choices=["bruhat", "hst", "both"], default="both")

    sp = sub.add_parser("map", help="apply g or g_bar to a cubillage JSON file")
    common(sp)
    sp.add_argument("--direction", choices=["g", "gbar"], default="g")
    sp.add_argument("--g", dest="direction", action="store_const", const="g")
    sp.add_argument("--gbar", dest="direction", action="store_const", const="gbar")
    sp.add_argument("--input", required=True)
    sp.add_argument("--output")

    sp = sub.add_parser("verify", help="check that g is a quotient map of posets")
    common(sp)
    sp.add_argument("--extend", action="store_true", help="use the extended grid")
    sp.add_argument("--threads", type=_positive_int, default=1)

    sp = sub.add_parser("witness", help="constructive pre-images and flip schedules")
    common(sp)
    sp.add_argument("mode", choices=["surject", "full"])
    sp.add_argument("--tri")
    sp.add_argument("--flip")
    sp.add_argument("--from", dest="from_")
    sp.add_argument("--to")
    sp.add_argument("--output")

    sp = sub.add_parser("inspect", help="validate and describe an object, or summarise a poset")
    common(sp)
    sp.add_argument("--input")
    sp.add_argument("--kind", choices=["bruhat", "hst"], default="hst")

    sp = sub.add_parser("export", help="render a poset as DOT, JSON or text")
    common(sp, fmt=("json", "dot", "text"))
    sp.add_argument("--kind", choices=["bruhat", "hst"], default="hst")
    sp.add_argument("--dot", dest="format", action="store_const", const="dot")
    sp.add_argument("--output")
    return p


COMMANDS = {
    "enumerate": cmd_enumerate,
    "map": cmd_map,
    "verify": cmd_verify,
    "witness": cmd_witness,
    "inspect": cmd_inspect,
    "export": cmd_export,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    cfg = RunConfig(
        command=args.command,
        n=getattr(args, "n", None),
        delta=getattr(args, "delta", None),
        cache_dir=resolve_cache_dir(args.cache_dir),
        format=args.format,
        max_elements=args.max_elements,
        max_seconds=args.max_seconds,
    )
    try:
        _check_limits(cfg)
        return COMMANDS[args.command](cfg, args)
    except EnumerationLimitError as exc:
        _error("limit", str(exc), {"kind": exc.kind, "n": exc.n, "delta": exc.delta,
                                   "reached": exc.reached, "limit": str(exc.limit)})
        return EXIT_INPUT
    except (InvalidObjectError, InputError, ValueError) as exc:
        _error("input", str(exc))
        return EXIT_INPUT


def _error(kind: str, message: str, extra: Optional[dict] = None):
    body = {"error": kind, "message": message}
    body.update(extra or {})
    sys.stderr.write(export.dumps(body))


if __name__ == "__main__":
    sys.exit(main())
