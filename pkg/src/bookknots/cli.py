"""Command-line entry point: ``bookknots {embed,identify,census,verify}``.

Output formats
--------------
* DT codes print as comma-separated signed integers, e.g. ``4,6,2``.
* PD codes print one crossing per line as four comma-separated edge
  labels, counterclockwise from the incoming under-strand.
* Census CSV has columns ``n,knot_name,count``; each n also gets an
  ``f_n`` row (knotted Hamiltonian cycles) and a ``total_knotted`` row
  (knotted cycles of any length).  The JSON form adds fingerprints.

Exit codes: 0 success, 1 verification failure (including unidentified
fingerprints in strict mode), 2 usage error, 3 capacity error.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

from . import census as census_mod
from .diagram import diagram_of_cycle, dt_code, parse_cycle, pd_code, simplify
from .embedding import BookEmbedding
from .errors import BookKnotsError, CapacityError, DomainError, ParseError
from .invariants import BRACKET_THRESHOLD, fingerprint, identify
from .verify import DEFAULT_SEED, SUITES, check_extension

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2
EXIT_CAPACITY = 3


@dataclass
class RunConfig:
    command: str
    n: int | None = None
    cycle: str | None = None
    workers: int = 1
    output: str = "text"
    strict: bool = True
    bracket_threshold: int = BRACKET_THRESHOLD
    checkpoint: str | None = None
    seed: int = DEFAULT_SEED
    theorem: str | None = None

    @classmethod
    def from_args(cls, ns: argparse.Namespace) -> "RunConfig":
        return cls(**{k: v for k, v in vars(ns).items() if k in cls.__dataclass_fields__})


class UsageError(BookKnotsError):
    pass


def _emit(text: str):
    sys.stdout.write(text if text.endswith("\n") else text + "\n")


# --------------------------------------------------------------------------
# commands


def cmd_embed(cfg: RunConfig) -> int:
    if cfg.n is None:
        raise UsageError("embed needs --n")
    emb = BookEmbedding(cfg.n)
    sheets = [(s, emb.edges_in_sheet(s)) for s in range(1, emb.sheet_count + 1)]
    if cfg.output == "json":
        _emit(json.dumps({"n": cfg.n, "sheets": [
            {"sheet": s, "edges": [list(e) for e in edges]} for s, edges in sheets]}, indent=2))
    elif cfg.output == "csv":
        lines = ["sheet,a,b"] + [f"{s},{e.a},{e.b}" for s, edges in sheets for e in edges]
        _emit("\n".join(lines))
    else:
        lines = [f"K{cfg.n}: {len(sheets)} sheets"]
        for s, edges in sheets:
            lines.append(f"S{s} ({len(edges)} edges): " + " ".join(str(e) for e in edges))
        _emit("\n".join(lines))
    return EXIT_OK


def cmd_identify(cfg: RunConfig) -> int:
    if cfg.cycle is None:
        raise UsageError("identify needs --cycle")
    c = parse_cycle(cfg.cycle, cfg.n)
    d = simplify(diagram_of_cycle(c.n, c))
    name = identify(d, cfg.bracket_threshold)
    fp = fingerprint(d, cfg.bracket_threshold, reduced=True)
    dt = dt_code(d) if d.component_count == 1 else ()
    pd = pd_code(d)
    if cfg.output == "json":
        _emit(json.dumps({"n": c.n, "cycle": str(c), "knot": str(name),
                          "crossings": d.crossing_count, "fingerprint": fp.to_text(),
                          "dt": list(dt), "pd": [list(x) for x in pd]}, indent=2))
    elif cfg.output == "csv":
        _emit("n,cycle,knot,fingerprint\n" + f'{c.n},"{c}",{name},{fp.to_text()}')
    else:
        lines = [f"knot: {name}", f"cycle: {c} in K{c.n}",
                 f"crossings: {d.crossing_count}", f"fingerprint: {fp.to_text()}",
                 "dt: " + ",".join(str(x) for x in dt), "pd:"]
        lines += [",".join(str(x) for x in crossing) for crossing in pd]
        _emit("\n".join(lines))
    if cfg.strict and not name.identified:
        return EXIT_FAILED
    return EXIT_OK


def cmd_census(cfg: RunConfig) -> int:
    if cfg.n is None:
        raise UsageError("census needs --n")
    if cfg.workers < 1:
        raise UsageError("--workers must be at least 1")
    kwargs = dict(strict=cfg.strict, threshold=cfg.bracket_threshold,
                  checkpoint_path=cfg.checkpoint)
    try:
        if cfg.n < 7:
            rec = census_mod.run_census(cfg.n, cfg.workers, **kwargs)
            rec.total_knotted = 0
            records = [rec]
        else:
            records = census_mod.census_series(cfg.n, cfg.workers, **kwargs)
    except census_mod.UnidentifiedKnotError as exc:
        records = [exc.record]
        sys.stderr.write(f"error: {exc}\n")
        _emit(census_mod.to_csv(records))
        return EXIT_FAILED
    if cfg.output == "json":
        _emit(census_mod.to_json(records))
    elif cfg.output == "csv":
        _emit(census_mod.to_csv(records))
    else:
        lines = []
        for r in records:
            parts = ", ".join(f"{name} {count}" for _, name, count in r.rows()
                              if name != "unknot" and not name.startswith("unidentified"))
            lines.append(f"n={r.n}: {parts or 'no knots'}; f={r.f_n}; total={r.total_knotted}")
            for fp, count in sorted(r.unidentified.items()):
                lines.append(f"  unidentified {count}: {fp}")
        _emit("\n".join(lines))
    return EXIT_OK


def cmd_verify(cfg: RunConfig) -> int:
    if cfg.theorem not in SUITES:
        raise UsageError(f"--theorem must be one of {', '.join(SUITES)}")
    if cfg.theorem == "extension":
        results = check_extension(seed=cfg.seed)
    else:
        results = SUITES[cfg.theorem]()
    ok = all(r.ok for r in results)
    if cfg.output == "json":
        _emit(json.dumps({"theorem": cfg.theorem, "passed": ok, "checks": [
            {"label": r.label, "ok": r.ok, "detail": r.detail} for r in results]}, indent=2))
    else:
        lines = [r.line() for r in results]
        lines.append(f"{cfg.theorem}: {'all passed' if ok else 'FAILED'} ({len(results)} checks)")
        _emit("\n".join(lines))
    return EXIT_OK if ok else EXIT_FAILED


COMMANDS = {"embed": cmd_embed, "identify": cmd_identify, "census": cmd_census, "verify": cmd_verify}


# --------------------------------------------------------------------------
# argument parsing


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="bookknots",
                                     description="Knotted cycles in the canonical book representation of K_n.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, output_choices=("text", "json", "csv")):
        p.add_argument("--output", choices=output_choices, default="text")
        p.add_argument("--bracket-threshold", type=int, default=BRACKET_THRESHOLD,
                       help="largest reduced crossing count for the Kauffman bracket")
        strict = p.add_mutually_exclusive_group()
        strict.add_argument("--strict", dest="strict", action="store_true", default=True,
                            help="fail on unidentified fingerprints (default)")
        strict.add_argument("--no-strict", dest="strict", action="store_false")

    p = sub.add_parser("embed", help="list the sheets of the book representation")
    p.add_argument("--n", type=int, required=True)
    common(p)

    p = sub.add_parser("identify", help="identify the knot type of one cycle")
    p.add_argument("--n", type=int, help="ambient K_n (defaults to the largest label)")
    p.add_argument("--cycle", required=True, help='e.g. "(1,3,5,7,2,4,6)"')
    common(p)

    p = sub.add_parser("census", help="count Hamiltonian cycles by knot type")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--checkpoint", help="JSON checkpoint file for resumable runs")
    common(p)

    p = sub.add_parser("verify", help="run a property suite")
    p.add_argument("--theorem", required=True, choices=sorted(SUITES))
    p.add_argument("--seed", type=int, default=DEFAULT_SEED,
                   help=f"seed for randomized suites (default {DEFAULT_SEED})")
    common(p, ("text", "json"))
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    cfg = RunConfig.from_args(ns)
    try:
        return COMMANDS[cfg.command](cfg)
    except CapacityError as exc:
        sys.stderr.write(f"capacity error: {exc}\n")
        return EXIT_CAPACITY
    except (UsageError, ParseError, DomainError, ValueError) as exc:
        sys.stderr.write(f"usage error: {exc}\n")
        return EXIT_USAGE
    except BookKnotsError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_FAILED


if __name__ == "__main__":
    sys.exit(main())
