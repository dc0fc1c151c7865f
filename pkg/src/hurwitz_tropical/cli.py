"""Command line entry point.

Exit codes: 0 success (and agreement), 1 invalid input, 2 methods disagree or a
check failed.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .exactcore import Poly, format_rational
from .fock import VARIANTS, DescendantQuery, HurwitzQuery, gw_fock, hurwitz_fock
from .partitions import Partition, aut_order, partitions
from .permutations import count_factorizations
from .tropical import (
    catalog_to_dot,
    catalog_to_json,
    concentration_check,
    covers,
    gw_tropical,
    hurwitz_tropical,
)

WORKERS_ENV = "HURWITZ_TROPICAL_WORKERS"
FORMATS = ("text", "json", "csv", "dot")


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    variant: str = "monotone"
    genus: int = 0
    mu: Partition | None = None
    nu: Partition | None = None
    descendants: tuple[int, ...] | None = None
    method: str = "all"
    connected: bool = True
    output_format: str = "text"
    output: str | None = None
    max_size: int = 3
    max_m: int = 3


def parse_partition(text: str, flag: str = "partition") -> Partition:
    """Comma separated positive integers in any order."""
    tokens = [t.strip() for t in text.split(",") if t.strip()]
    if not tokens:
        raise UsageError(f"{flag}: empty partition")
    parts = []
    for t in tokens:
        try:
            v = int(t)
        except ValueError:
            raise UsageError(f"{flag}: {t!r} is not an integer") from None
        if v <= 0:
            raise UsageError(f"{flag}: parts must be positive, got {v}")
        parts.append(v)
    return Partition(parts)


def parse_descendants(text: str) -> tuple[int, ...]:
    tokens = [t.strip() for t in text.split(",") if t.strip()]
    out = []
    for t in tokens:
        try:
            v = int(t)
        except ValueError:
            raise UsageError(f"--descendants: {t!r} is not an integer") from None
        if v < 0:
            raise UsageError(f"--descendants: indices must be >= 0, got {v}")
        out.append(v)
    return tuple(out)


def _jsonable(value):
    if isinstance(value, (Fraction, int)) and not isinstance(value, bool):
        return format_rational(value)
    if isinstance(value, Poly):
        return value.to_json()
    if isinstance(value, dict):
        return {k: _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    return value


def emit(result, fmt: str) -> str:
    """Render a result document.

    Scalars become ``{"value":"p/q"}``; CSV has one row per (query, method, value);
    DOT is only available for cover catalogs.
    """
    if isinstance(result, (Fraction, int)):
        result = {"value": result}
    is_catalog = result.get("kind") == "covers"
    if fmt == "dot":
        if not is_catalog:
            raise UsageError("--format: dot output is only available for covers")
        return catalog_to_dot(result["catalog"])
    if fmt == "json":
        if is_catalog:
            doc = catalog_to_json(result["query"], result["catalog"])
        else:
            doc = _jsonable({k: v for k, v in result.items() if k not in ("text", "rows")})
        return json.dumps(doc, separators=(",", ":")) + "\n"
    if fmt == "csv":
        rows = result.get("rows") or [{"query": "", "method": "", "value": result.get("value")}]
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["query", "method", "value"])
        for r in rows:
            writer.writerow([r["query"], r["method"], _jsonable(r["value"])])
        return buf.getvalue()
    if "text" in result:
        return result["text"]
    return f"{_jsonable(result.get('value'))}\n"


def _describe_h(q: HurwitzQuery) -> str:
    kind = "connected" if q.connected else "disconnected"
    return f"{q.variant} g={q.genus} mu={list(q.mu)} nu={list(q.nu)} {kind}"


def _hurwitz_methods(q: HurwitzQuery, method: str) -> dict[str, Fraction]:
    names = ("fock", "bruteforce", "tropical") if method == "all" else (method,)
    out = {}
    for name in names:
        if name == "fock":
            out[name] = hurwitz_fock(q)
        elif name == "bruteforce":
            out[name] = count_factorizations(q.genus, q.mu, q.nu, q.variant, q.connected).normalized
        elif name == "tropical":
            out[name] = hurwitz_tropical(q)
    return out


def _run_hurwitz(cfg: RunConfig):
    q = HurwitzQuery(cfg.variant, cfg.genus, cfg.mu, cfg.nu, cfg.connected)
    values = _hurwitz_methods(q, cfg.method)
    agree = len(set(values.values())) <= 1
    desc = _describe_h(q)
    rows = [{"query": desc, "method": k, "value": v} for k, v in values.items()]
    if len(values) == 1:
        (value,) = values.values()
        doc = {"value": value, "text": f"{format_rational(value)}\n", "rows": rows}
    else:
        text = "".join(f"{k}: {format_rational(v)}\n" for k, v in values.items())
        text += "AGREE\n" if agree else "DIFFER\n"
        doc = {"query": desc, "values": values, "agree": agree, "text": text, "rows": rows}
    return doc, 0 if agree else 2


def _gw_query(cfg: RunConfig) -> DescendantQuery:
    q = DescendantQuery(cfg.mu, cfg.nu, cfg.descendants or (), cfg.connected)
    if not q.parity_ok:
        raise UsageError("--descendants: sum k_i - l(mu) - l(nu) must be even")
    return q


def _run_gw(cfg: RunConfig):
    q = _gw_query(cfg)
    names = ("fock", "tropical") if cfg.method == "all" else (cfg.method,)
    if "bruteforce" in names:
        raise UsageError("--method: bruteforce is not available for gw")
    aut = aut_order(q.mu) * aut_order(q.nu)
    values = {}
    for name in names:
        normalized = gw_fock(q) if name == "fock" else gw_tropical(q)
        values[name] = normalized
    agree = len(set(values.values())) <= 1
    first = next(iter(values.values()))
    invariant = first / aut
    desc = f"mu={list(q.mu)} nu={list(q.nu)} k={list(q.descendants)} {'connected' if q.connected else 'disconnected'}"
    text = f"invariant: {format_rational(invariant)}\n"
    text += f"|Aut(mu)||Aut(nu)| = {aut}; |Aut(mu)||Aut(nu)| * invariant:\n"
    text += "".join(f"  {k}: {format_rational(v)}\n" for k, v in values.items())
    if len(values) > 1:
        text += "AGREE\n" if agree else "DIFFER\n"
    doc = {
        "query": desc,
        "value": invariant,
        "aut": aut,
        "normalized": values,
        "normalization": "normalized = |Aut(mu)| |Aut(nu)| * value",
        "agree": agree,
        "text": text,
        "rows": [{"query": desc, "method": k, "value": v / aut} for k, v in values.items()],
    }
    return doc, 0 if agree else 2


def _run_covers(cfg: RunConfig):
    if cfg.descendants is not None:
        q = _gw_query(cfg)
    else:
        q = HurwitzQuery(cfg.variant, cfg.genus, cfg.mu, cfg.nu, cfg.connected)
    catalog = covers(q)
    total = sum((c.weight for c in catalog), Fraction(0))
    lines = [f"{len(catalog)} covers, total weight {format_rational(total)}"]
    for n, c in enumerate(catalog):
        lines.append(
            f"cover {n}: weight={format_rational(c.weight)} aut={c.aut} lambda={list(c.lambda_parts)} "
            f"genera={[list(g) for g in c.genera]} edges={[list(e) for e in c.edges]} "
            f"left={[list(e) for e in c.left_ends]} right={[list(e) for e in c.right_ends]}"
        )
    rows = [{"query": f"cover {n}", "method": "tropical", "value": c.weight} for n, c in enumerate(catalog)]
    return {"kind": "covers", "query": q, "catalog": catalog, "text": "\n".join(lines) + "\n", "rows": rows}, 0


def _run_concentration(cfg: RunConfig):
    q = _gw_query(cfg)
    r = concentration_check(q)
    status = "PASS" if r.passed else "FAIL"
    text = (
        f"K0 = {format_rational(r.k0)}\n"
        f"polynomial: {r.polynomial}\n"
        f"summands: {r.summands}, violations: {len(r.violations)}\n{status}\n"
    )
    doc = {
        "k0": r.k0,
        "polynomial": r.polynomial,
        "summands": r.summands,
        "violations": len(r.violations),
        "passed": r.passed,
        "text": text,
        "rows": [{"query": f"[u^{k}]", "method": "tropical", "value": r.polynomial.coefficient(k)}
                 for k in r.polynomial.degrees()],
    }
    return doc, 0 if r.passed else 2


def _grid(max_size: int, max_m: int, variants: Sequence[str]) -> list[HurwitzQuery]:
    out = []
    for d in range(1, max_size + 1):
        for mu in partitions(d):
            for nu in partitions(d):
                g = 0
                while 2 * g - 2 + len(mu) + len(nu) <= max_m:
                    if 2 * g - 2 + len(mu) + len(nu) >= 0:
                        for v in variants:
                            for connected in (True, False):
                                out.append(HurwitzQuery(v, g, mu, nu, connected))
                    g += 1
    return out


def _compare_row(q: HurwitzQuery) -> tuple[HurwitzQuery, dict[str, Fraction]]:
    return q, _hurwitz_methods(q, "all")


def _workers() -> int:
    raw = os.environ.get(WORKERS_ENV, "1")
    try:
        n = int(raw)
    except ValueError:
        raise UsageError(f"{WORKERS_ENV}: {raw!r} is not an integer") from None
    return max(1, n)


def _run_compare(cfg: RunConfig):
    variants = VARIANTS if cfg.variant == "both" else (cfg.variant,)
    grid = _grid(cfg.max_size, cfg.max_m, variants)
    workers = _workers()
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_compare_row, grid, chunksize=4))
    else:
        results = [_compare_row(q) for q in grid]
    lines, rows, all_agree = [], [], True
    for q, values in results:
        agree = len(set(values.values())) == 1
        all_agree &= agree
        vals = " ".join(f"{k}={format_rational(v)}" for k, v in values.items())
        lines.append(f"{_describe_h(q)}: {vals} {'AGREE' if agree else 'DIFFER'}")
        rows.extend({"query": _describe_h(q), "method": k, "value": v} for k, v in values.items())
    lines.append(f"{len(results)} rows, {'all agree' if all_agree else 'DISAGREEMENT'}")
    doc = {
        "rows": rows,
        "agree": all_agree,
        "count": len(results),
        "text": "\n".join(lines) + "\n",
    }
    return doc, 0 if all_agree else 2


COMMANDS = {
    "hurwitz": _run_hurwitz,
    "gw": _run_gw,
    "covers": _run_covers,
    "compare": _run_compare,
    "concentration": _run_concentration,
}


def run(cfg: RunConfig) -> tuple[str, int]:
    """Execute a configuration; returns (document, exit status)."""
    if cfg.command != "compare" and (cfg.mu is None or cfg.nu is None):
        raise UsageError("--mu and --nu are required")
    if cfg.mu is not None and cfg.nu is not None and cfg.mu.size != cfg.nu.size:
        raise UsageError(f"--nu: |mu| = {cfg.mu.size} but |nu| = {cfg.nu.size}")
    if cfg.descendants is not None and cfg.command not in ("gw", "concentration", "covers"):
        raise UsageError("--descendants: only valid for gw, concentration and covers")
    if cfg.command in ("gw", "concentration") and cfg.descendants is None:
        cfg.descendants = ()
    if cfg.output_format == "dot" and cfg.command != "covers":
        raise UsageError("--format: dot output is only available for covers")
    doc, status = COMMANDS[cfg.command](cfg)
    return emit(doc, cfg.output_format), status


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="hurwitz-tropical", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p, descendants=False, method_choices=("fock", "bruteforce", "tropical", "all")):
        p.add_argument("--mu", required=True, help="left profile, e.g. 3,1")
        p.add_argument("--nu", required=True, help="right profile, e.g. 3,1")
        p.add_argument("--connected", dest="connected", action="store_true", default=True)
        p.add_argument("--disconnected", dest="connected", action="store_false")
        p.add_argument("--format", dest="output_format", choices=FORMATS, default="text")
        p.add_argument("--output", "-o", help="write the document here instead of stdout")
        if descendants:
            p.add_argument("--descendants", "-k", default=None, help="descendant indices, e.g. 0,2")
        if method_choices:
            p.add_argument("--method", choices=method_choices, default="all")

    for name in ("hurwitz", "covers"):
        p = sub.add_parser(name)
        p.add_argument("--variant", choices=VARIANTS, default="monotone")
        p.add_argument("-g", "--genus", type=int, default=0)
        common(p, descendants=name == "covers", method_choices=None if name == "covers" else
               ("fock", "bruteforce", "tropical", "all"))
    p = sub.add_parser("gw")
    common(p, descendants=True, method_choices=("fock", "tropical", "all"))
    p = sub.add_parser("concentration")
    common(p, descendants=True, method_choices=None)
    p = sub.add_parser("compare")
    p.add_argument("--max-size", type=int, default=3)
    p.add_argument("--max-m", type=int, default=3)
    p.add_argument("--variant", choices=VARIANTS + ("both",), default="both")
    p.add_argument("--format", dest="output_format", choices=("text", "json", "csv"), default="text")
    p.add_argument("--output", "-o")
    return parser


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    cfg = RunConfig(command=ns.command, output_format=ns.output_format, output=ns.output)
    if ns.command == "compare":
        if ns.max_size < 1:
            raise UsageError("--max-size: must be >= 1")
        if ns.max_m < 0:
            raise UsageError("--max-m: must be >= 0")
        cfg.max_size, cfg.max_m, cfg.variant = ns.max_size, ns.max_m, ns.variant
        return cfg
    cfg.mu = parse_partition(ns.mu, "--mu")
    cfg.nu = parse_partition(ns.nu, "--nu")
    cfg.connected = ns.connected
    if getattr(ns, "variant", None):
        cfg.variant = ns.variant
    if getattr(ns, "genus", None) is not None:
        if ns.genus < 0:
            raise UsageError("--genus: must be >= 0")
        cfg.genus = ns.genus
    if getattr(ns, "method", None):
        cfg.method = ns.method
    if getattr(ns, "descendants", None) is not None:
        cfg.descendants = parse_descendants(ns.descendants)
    return cfg


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    try:
        cfg = config_from_args(ns)
        document, status = run(cfg)
    except (UsageError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    if cfg.output:
        with open(cfg.output, "w", encoding="utf-8") as fh:
            fh.write(document)
    else:
        sys.stdout.write(document)
    return status


if __name__ == "__main__":
    sys.exit(main())
