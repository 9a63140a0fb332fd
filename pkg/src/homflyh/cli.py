"""Command-line entry point.

Parses a braid word, runs the pipeline (Rouquier complex, optional
simplification, homology assembly, renders, optional support report), writes
JSON artifacts, and returns a meaningful exit code:

    0   success (support verdict NILPOTENT or no support check requested)
    1   error (bad input, internal failure) or support evidence against the
        predicted stratum
    2   support check INCONCLUSIVE (window or power bound exhausted)

Artifacts are deterministic: identical configuration produces byte-identical
JSON (sorted keys, fixed entry order).  Intermediate complexes are cached
under --cache-dir keyed by (word, strands, conventions, schema version,
simplification flag).
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

from . import SCHEMA_VERSION, __version__
from .hochschild import assemble_hhh, render
from .rouquier import (BimoduleComplex, Conventions, cycle_type, perm_of_word,
                       rouquier_complex, writhe)
from .supports import support_report

RENDER_CHOICES = ("qat", "QAT", "QpApTp", "tilde", "tilde-per")


class BraidParseError(ValueError):
    """Braid grammar violation; carries the 1-based token position."""

    def __init__(self, message: str, position: int):
        super().__init__(message)
        self.position = position


@dataclass(frozen=True)
class BraidWord:
    word: tuple[int, ...]
    strands: int

    @property
    def writhe(self) -> int:
        return writhe(self.word)

    @property
    def cycle_type(self) -> tuple[int, ...]:
        return cycle_type(perm_of_word(self.word, self.strands))


def parse_braid(text: str, n: int) -> BraidWord:
    """Whitespace-separated nonzero signed integers with |i| < n.

    >>> parse_braid("1 1 1", 2).writhe
    3
    >>> parse_braid("1 -1", 2).cycle_type
    (1, 1)
    """
    if n < 1:
        raise BraidParseError("strands must be >= 1", 0)
    out = []
    for pos, tok in enumerate(text.split(), start=1):
        try:
            v = int(tok)
        except ValueError:
            raise BraidParseError(
                f"token {pos}: {tok!r} is not an integer", pos) from None
        if v == 0:
            raise BraidParseError(f"token {pos}: crossing index may not be 0",
                                  pos)
        if abs(v) >= n:
            raise BraidParseError(
                f"token {pos}: generator {v} out of range for {n} strands "
                f"(need |i| <= {n - 1})", pos)
        out.append(v)
    return BraidWord(tuple(out), n)


@dataclass
class Config:
    strands: int
    braid: str
    cutoffs: dict[str, int] = field(default_factory=dict)
    renders: tuple[str, ...] = ("qat",)
    simplify: bool = True
    support: bool = False
    power_bound: int = 6
    jobs: int = 1
    cache_dir: str | None = None
    out_dir: str = "."
    fmt: str = "json"
    normalization: str = "markov"

    def __post_init__(self):
        if self.strands < 1:
            raise ValueError("strands must be >= 1")
        for ax, v in self.cutoffs.items():
            if v <= 0:
                raise ValueError(f"cutoff {ax}={v} must be positive")

    def conventions(self) -> Conventions:
        return Conventions(normalization=self.normalization)


def _cache_key(word: Sequence[int], n: int, conv: Conventions,
               simplified: bool) -> str:
    blob = json.dumps({
        "word": list(word), "strands": n, "conventions": conv.key(),
        "schema": SCHEMA_VERSION, "simplified": simplified,
    }, sort_keys=True)
    return hashlib.sha256(blob.encode()).hexdigest()


def _load_complex(cfg: Config, word: BraidWord) -> BimoduleComplex:
    conv = cfg.conventions()
    if cfg.cache_dir is None:
        return rouquier_complex(word.word, word.strands, conv,
                                simplify_chain=cfg.simplify)
    cdir = Path(cfg.cache_dir)
    cdir.mkdir(parents=True, exist_ok=True)
    path = cdir / (_cache_key(word.word, word.strands, conv, cfg.simplify)
                   + ".complex.json")
    if path.exists():
        return BimoduleComplex.from_json(json.loads(path.read_text()))
    C = rouquier_complex(word.word, word.strands, conv,
                         simplify_chain=cfg.simplify)
    path.write_text(json.dumps(C.to_json(), sort_keys=True,
                               separators=(",", ":")))
    return C


def _artifact(cfg: Config, word: BraidWord, C: BimoduleComplex) -> dict:
    q_max = cfg.cutoffs.get("q")
    x_max = cfg.cutoffs.get("X")
    if q_max is None and x_max is None:
        q_max = 8
    table = assemble_hhh(C, q_max=q_max, x_max=x_max)
    renders = {}
    for name in cfg.renders:
        t = render(table, name)
        renders[name] = {
            "axes": list(t.scheme.axes),
            "entries": [[*deg, d] for deg, d in sorted(t.dims.items())],
        }
    return {
        "schema": "hhh-run/1",
        "version": __version__,
        "braid": list(word.word),
        "strands": word.strands,
        "writhe": word.writhe,
        "cycle_type": list(word.cycle_type),
        "window": {"q_max": q_max, "x_max": x_max},
        "simplified": cfg.simplify,
        "entries": [[a, X, Cdeg, d] for (a, X, Cdeg), d
                    in sorted(table.entries.items())],
        "renders": renders,
    }


def _table_text(artifact: dict) -> str:
    lines = [f"braid {' '.join(map(str, artifact['braid'])) or '(empty)'}  "
             f"strands {artifact['strands']}  writhe {artifact['writhe']}  "
             f"cycle type {tuple(artifact['cycle_type'])}"]
    lines.append(f"{'a':>4} {'X':>4} {'C':>4} {'dim':>5}")
    for a, X, C, d in artifact["entries"]:
        lines.append(f"{a:>4} {X:>4} {C:>4} {d:>5}")
    for name, r in artifact["renders"].items():
        lines.append(f"render {name} ({', '.join(r['axes'])}):")
        for row in r["entries"]:
            *deg, d = row
            lines.append("  " + " ".join(f"{v:>4}" for v in deg)
                         + f"  {d:>5}")
    return "\n".join(lines) + "\n"


def _run_support(cfg: Config, word: BraidWord) -> tuple[dict, int]:
    x_max = cfg.cutoffs.get("X")
    rep = support_report(list(word.word), word.strands, x_max=x_max,
                         power_bound=cfg.power_bound,
                         conventions=cfg.conventions())
    return rep.to_json(), rep.exit_code


def run(cfg: Config) -> int:
    """Execute the pipeline; write artifacts; return the exit code."""
    try:
        word = parse_braid(cfg.braid, cfg.strands)
    except BraidParseError as e:
        _emit_error("parse-error", str(e), position=e.position)
        return 1
    try:
        C = _load_complex(cfg, word)
        artifact = _artifact(cfg, word, C)
    except Exception as e:  # pragma: no cover - defensive
        _emit_error("compute-error", f"{type(e).__name__}: {e}")
        return 1

    out_dir = Path(cfg.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    stem = _cache_key(word.word, word.strands, cfg.conventions(),
                      cfg.simplify)[:16]
    hhh_path = out_dir / f"{stem}.hhh.json"
    hhh_path.write_text(json.dumps(artifact, sort_keys=True, indent=2) + "\n")

    code = 0
    if cfg.support:
        try:
            sup, code = _run_support(cfg, word)
        except Exception as e:  # pragma: no cover - defensive
            _emit_error("support-error", f"{type(e).__name__}: {e}")
            return 1
        (out_dir / f"{stem}.support.json").write_text(
            json.dumps(sup, sort_keys=True, indent=2) + "\n")
        artifact = dict(artifact)
        artifact["support"] = sup

    if cfg.fmt == "json":
        sys.stdout.write(json.dumps(artifact, sort_keys=True, indent=2) + "\n")
    else:
        sys.stdout.write(_table_text(artifact))
        if cfg.support:
            sys.stdout.write(f"support verdict: {artifact['support']['verdict']}\n")
    return code


def _emit_error(code: str, message: str, **extra) -> None:
    payload = {"error": code, "message": message}
    payload.update(extra)
    sys.stderr.write(json.dumps(payload, sort_keys=True) + "\n")


class _Parser(argparse.ArgumentParser):
    """argparse exits with 2 on usage errors; reserve 2 for INCONCLUSIVE."""

    def error(self, message):
        self.print_usage(sys.stderr)
        _emit_error("usage-error", message)
        raise SystemExit(1)


def _parse_cutoff(value: str) -> tuple[str, int]:
    if "=" not in value:
        raise argparse.ArgumentTypeError(
            f"cutoff {value!r} must look like axis=value (e.g. q=8)")
    ax, _, v = value.partition("=")
    ax = ax.strip()
    if ax not in ("q", "X"):
        raise argparse.ArgumentTypeError(f"unknown cutoff axis {ax!r}")
    try:
        return ax, int(v)
    except ValueError:
        raise argparse.ArgumentTypeError(f"cutoff value {v!r} not an integer")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="homflyh",
                description="Triply graded link homology of braid closures.")
    p.add_argument("--strands", type=int, required=True)
    p.add_argument("--braid", type=str, default="",
                   help="whitespace-separated signed crossing indices")
    p.add_argument("--cutoff", type=_parse_cutoff, action="append",
                   default=[], metavar="AXIS=N",
                   help="window cutoff, axis q or X (repeatable; default q=8)")
    p.add_argument("--render", action="append", choices=RENDER_CHOICES,
                   default=[], help="rendered gradings to emit (repeatable)")
    p.add_argument("--no-simplify", action="store_true",
                   help="skip Gaussian simplification of the complex")
    p.add_argument("--support", action="store_true",
                   help="run the stratum-ideal nilpotence report")
    p.add_argument("--power-bound", type=int, default=6)
    p.add_argument("--jobs", type=int, default=1,
                   help="worker bound for independent checks")
    p.add_argument("--cache-dir", type=str, default=None)
    p.add_argument("--out-dir", type=str, default=".")
    p.add_argument("--format", dest="fmt", choices=("json", "table"),
                   default="json")
    p.add_argument("--normalization", choices=("markov", "none"),
                   default="markov")
    p.add_argument("--version", action="version",
                   version=f"%(prog)s {__version__}")
    return p


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = Config(
            strands=args.strands,
            braid=args.braid,
            cutoffs=dict(args.cutoff),
            renders=tuple(args.render) or ("qat",),
            simplify=not args.no_simplify,
            support=args.support,
            power_bound=args.power_bound,
            jobs=args.jobs,
            cache_dir=args.cache_dir,
            out_dir=args.out_dir,
            fmt=args.fmt,
            normalization=args.normalization,
        )
    except ValueError as e:
        _emit_error("config-error", str(e))
        return 1
    return run(cfg)


if __name__ == "__main__":  # pragma: no cover
    raise SystemExit(main())
