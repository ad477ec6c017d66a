"""``discspace`` command-line driver.

Each subcommand reads a JSON config (``--config``), runs one experiment and
writes its rows as JSON or CSV (``--out``/``--format``).  Output is
deterministic: identical config and seed give byte-identical files.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from dataclasses import fields
from pathlib import Path
from typing import Any

from . import __version__
from .checks import SUITES, run_all
from .corpus import GENERATOR, dirichlet_norm_poly, random_polynomials, scaled
from .errors import DiscSpaceError, SpecParseError
from .functions import build_function, parse_complex
from .operators import (
    ThinConfig,
    default_witness_grid,
    dirichlet_deficiency,
    estimate_Sg,
    estimate_Tg,
    extremal_bloch,
    extremal_bmoa,
    opnorm_exact_Sg,
)
from .quadrature import disc_rule, log_disc_rule
from .search import SearchConfig
from .spaces import bergman_norm, bloch_norm, bmoa_norm, dirichlet_norm, h2_norm

SPACES = ("bloch", "dirichlet", "bergman", "h2", "bmoa")
DEFAULT_SCHEDULE = [1, 2, 4, 8, 16, 20]


def _load_config(path: str | None) -> dict:
    if path is None:
        return {}
    try:
        doc = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise SpecParseError("$", f"invalid JSON in {path}: {exc}") from exc
    if not isinstance(doc, dict):
        raise SpecParseError("$", "config must be a JSON object")
    return doc


def _dataclass_from(cls, doc: Any, path: str):
    if doc is None:
        return cls()
    if not isinstance(doc, dict):
        raise SpecParseError(path, "expected an object")
    names = {f.name: f.type for f in fields(cls)}
    for key in doc:
        if key not in names:
            raise SpecParseError(f"{path}.{key}", "unknown key")
    return cls(**doc)


def _rule_sizes(cfg: dict) -> tuple[int | None, int | None]:
    q = cfg.get("quadrature") or {}
    if not isinstance(q, dict):
        raise SpecParseError("$.quadrature", "expected an object")
    n_r, n_t = q.get("n_r"), q.get("n_t")
    # environment overrides the config file
    n_r = int(os.environ.get("DISCSPACE_NR", n_r or 0)) or None
    n_t = int(os.environ.get("DISCSPACE_NT", n_t or 0)) or None
    return n_r, n_t


def _require(cfg: dict, key: str):
    if key not in cfg:
        raise SpecParseError(f"$.{key}", "missing required key")
    return cfg[key]




# --- commands ----------------------------------------------------------------

def cmd_norm(cfg: dict, seed: int) -> tuple[list[dict], dict]:
    space = _require(cfg, "space")
    if space not in SPACES:
        raise SpecParseError("$.space", f"must be one of {SPACES}")
    docs = cfg.get("functions")
    if docs is None:
        docs = [_require(cfg, "f")]
    if not isinstance(docs, list) or not docs:
        raise SpecParseError("$.functions", "expected a non-empty list")
    search = _dataclass_from(SearchConfig, cfg.get("search"), "$.search")
    n_r, n_t = _rule_sizes(cfg)
    rows = []
    for i, doc in enumerate(docs):
        f = build_function(doc, f"$.functions[{i}]")
        if space == "bloch":
            rep = bloch_norm(f, search)
        elif space == "dirichlet":
            rep = dirichlet_norm(f, disc_rule(n_r, n_t))
        elif space == "bergman":
            rep = bergman_norm(f, disc_rule(n_r, n_t))
        elif space == "h2":
            rep = h2_norm(f, log_disc_rule(n_r, n_t))
        else:
            rep = bmoa_norm(f, rule=log_disc_rule(n_r, n_t), search=search)
        d = rep.as_dict()
        rows.append({
            "index": i,
            "input": json.dumps(doc, sort_keys=True),
            "space": space,
            "value": d["value"],
            "seminorm": d["seminorm"],
            "method": d["method"],
            "witness": d.get("witness"),
            "est_error": d["est_error"],
            "at_truncation": d.get("at_truncation"),
            "cross_check": d.get("cross_check"),
        })
    return rows, {}


def _a_grid(cfg: dict) -> list[complex] | None:
    grid = cfg.get("a_grid")
    if grid is None:
        return None
    if isinstance(grid, dict):
        return default_witness_grid(**grid)
    if isinstance(grid, list):
        return [parse_complex(a, f"$.a_grid[{i}]") for i, a in enumerate(grid)]
    raise SpecParseError("$.a_grid", "expected a list of points or {truncation, n_r, n_t}")


def cmd_opnorm(cfg: dict, seed: int) -> tuple[list[dict], dict]:
    op = _require(cfg, "op")
    g = build_function(_require(cfg, "g"), "$.g")
    search = _dataclass_from(SearchConfig, cfg.get("search"), "$.search")
    n_r, n_t = _rule_sizes(cfg)
    if op == "Sg":
        space = cfg.get("space", "dirichlet")
        est = estimate_Sg(g, space, _a_grid(cfg), disc_rule(n_r, n_t), search)
    elif op == "Tg":
        space = "A2->dirichlet"
        est = estimate_Tg(g, _a_grid(cfg), disc_rule(n_r, n_t), search)
    else:
        raise SpecParseError("$.op", "must be 'Sg' or 'Tg'")
    d = est.as_dict()
    row = {"op": op, "space": space, "input": json.dumps(cfg["g"], sort_keys=True),
           "exact": d["exact"], "exact_method": "closed-form", "lower": d["lower"],
           "gap": d["gap"], "witness": d["witness"], "method": d["method"]}
    return [row], {}


def cmd_extremal(cfg: dict, seed: int) -> tuple[list[dict], dict]:
    space = _require(cfg, "space")
    g = build_function(_require(cfg, "g"), "$.g")
    search = _dataclass_from(SearchConfig, cfg.get("search"), "$.search")
    if space == "dirichlet":
        corpus_cfg = cfg.get("corpus") or {}
        size = int(corpus_cfg.get("size", 200))
        max_degree = int(corpus_cfg.get("max_degree", 10))
        n_r, n_t = _rule_sizes(cfg)
        rule = disc_rule(n_r, n_t)
        s = opnorm_exact_Sg(g, search)
        rows = []
        for i, p in enumerate(random_polynomials(seed, size, max_degree)):
            f = scaled(p, dirichlet_norm_poly(p))
            rows.append({"index": i, "degree": f.degree,
                         "deficiency": dirichlet_deficiency(g, f, rule, opnorm=s),
                         "method": "quadrature"})
        summary = {"min_deficiency": min(r["deficiency"] for r in rows), "opnorm": s,
                   "corpus_size": size, "generator": GENERATOR}
        return rows, summary
    if space not in ("bloch", "bmoa"):
        raise SpecParseError("$.space", "must be 'bloch', 'bmoa' or 'dirichlet'")
    thin = _dataclass_from(ThinConfig, cfg.get("thin"), "$.thin")
    schedule = cfg.get("schedule", DEFAULT_SCHEDULE)
    if not isinstance(schedule, list) or not all(isinstance(n, int) and n >= 1 for n in schedule):
        raise SpecParseError("$.schedule", "expected a list of positive integers")
    rows = []
    for n in schedule:
        rec = extremal_bloch(g, n, thin, search) if space == "bloch" else extremal_bmoa(g, n, thin, search=search)
        rows.append({"N": n, "n_zeros": len(rec.zeros), "lower_bound": rec.lower_bound,
                     "exact": rec.exact, "gap": rec.gap, "norm_of_h": rec.norm_of_h,
                     "exhausted": rec.exhausted,
                     "min_defect": min(d for d, _ in rec.diagnostics),
                     "method": "grid-search" if space == "bloch" else "closed-form/grid-search"})
    return rows, {"final_lower_bound": rows[-1]["lower_bound"], "exact": rows[-1]["exact"]}


def cmd_check(cfg: dict, seed: int) -> tuple[list[dict], dict]:
    names = cfg.get("suites")
    if names is not None:
        bad = [n for n in names if n not in SUITES]
        if bad:
            raise SpecParseError("$.suites", f"unknown suites {bad}")
    rows = [r.as_dict() for r in run_all(seed, names)]
    return rows, {"all_passed": all(r["passed"] for r in rows)}


COMMANDS = {"norm": cmd_norm, "opnorm": cmd_opnorm, "extremal": cmd_extremal, "check": cmd_check}


# --- output --------------------------------------------------------------------

def _check_finite(obj, path="$"):
    if isinstance(obj, float) and not math.isfinite(obj):
        raise DiscSpaceError(f"non-finite value at {path}")
    if isinstance(obj, dict):
        for k, v in obj.items():
            _check_finite(v, f"{path}.{k}")
    elif isinstance(obj, list):
        for i, v in enumerate(obj):
            _check_finite(v, f"{path}[{i}]")


def render(command: str, rows: list[dict], summary: dict, fmt: str, seed: int) -> str:
    _check_finite(rows)
    _check_finite(summary)
    if fmt == "json":
        payload = {"command": command, "seed": seed, "version": __version__, "rows": rows, "summary": summary}
        return json.dumps(payload, indent=2, sort_keys=True) + "\n"
    buf = io.StringIO()
    header = list(rows[0].keys()) if rows else []
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for r in rows:
        writer.writerow([json.dumps(v) if isinstance(v, (list, dict, bool)) or v is None else v
                         for v in (r.get(h) for h in header)])
    return buf.getvalue()


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="discspace",
                                     description="Norms and integral operators on spaces of analytic functions on the disc.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    helps = {
        "norm": "norm of one or more functions in a chosen space",
        "opnorm": "exact operator norm of S_g or T_g against witness lower bounds",
        "extremal": "thin-Blaschke convergence table (bloch/bmoa) or deficiency scan (dirichlet)",
        "check": "identity and inequality suites; exit status 0 iff all pass",
    }
    for name, text in helps.items():
        p = sub.add_parser(name, help=text)
        p.add_argument("--config", metavar="JSON", required=name != "check")
        p.add_argument("--out", metavar="PATH", default=None)
        p.add_argument("--format", choices=["csv", "json"], default=None)
        p.add_argument("--seed", type=int, default=None)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = _load_config(args.config)
        seed = args.seed if args.seed is not None else int(cfg.get("seed", 0))
        if not 0 <= seed < 2 ** 64:
            raise SpecParseError("$.seed", "seed must be an unsigned 64-bit integer")
        fmt = args.format or ("csv" if args.out and args.out.endswith(".csv") else "json")
        rows, summary = COMMANDS[args.command](cfg, seed)
        text = render(args.command, rows, summary, fmt, seed)
    except (DiscSpaceError, ValueError, TypeError) as exc:
        print(f"discspace {args.command}: error: {exc}", file=sys.stderr)
        return 2
    if args.out:
        out = Path(args.out)
        out.parent.mkdir(parents=True, exist_ok=True)
        out.write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    if args.command == "check" and not summary["all_passed"]:
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
