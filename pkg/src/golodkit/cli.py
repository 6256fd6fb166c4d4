"""Command-line front end: `golodkit <command> --input FILE [options]`."""
from __future__ import annotations

import argparse
import csv
import io
import json
import random
import sys
from dataclasses import dataclass, field as dc_field

from .ainf import AInfStructure, MerkulovTransfer, is_minimal_map, positive_critical, render_table
from .complexes import BasedComplex, betti_csv, betti_table, taylor, tor_ranks
from .core import (
    F2,
    QQ,
    Field,
    GolodkitError,
    IdealParseError,
    MonomialIdeal,
    ResourceCapError,
    load_ideal,
    parse_ideal,
    render_cell,
)
from .golod import DecisionConfig, gcd_condition, golod_decision, is_generic, is_strongly_generic
from .invariants import check_ideal, check_strands, random_complex, random_ideal, InvariantReport
from .morse import (
    Matching,
    MorseReduction,
    build_graph,
    critical_ranks,
    export_dot,
    greedy_maximal_matching,
    jollenbeck_matching,
    reduce_to_minimal,
    validate_matching,
)
from .simplicial import lcm_lattice_covers

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_INCONCLUSIVE = 2
EXIT_CAP = 3
EXIT_VIOLATION = 4


@dataclass
class RunConfig:
    command: str
    source: str | None = None
    inline: str | None = None
    field: Field = QQ
    sort: str | None = None
    strategies: list[str] = dc_field(default_factory=lambda: ["lex"])
    construction: str = "greedy"
    matching_path: str | None = None
    max_arity: int = 4
    order: int = 8
    fmt: str = "text"
    seed: int = 0
    check: bool = True
    extra: dict = dc_field(default_factory=dict)

    @property
    def rng(self) -> random.Random:
        return random.Random(self.seed)

    def ideal(self) -> MonomialIdeal:
        if self.inline is not None:
            return parse_ideal(self.inline, sort=self.sort)
        if self.source is None:
            raise GolodkitError("no input: pass --input FILE or --ideal TEXT")
        if self.source == "-":
            return parse_ideal(sys.stdin.read(), sort=self.sort)
        try:
            return load_ideal(self.source, sort=self.sort)
        except OSError as exc:
            raise GolodkitError(f"cannot read {self.source}: {exc.strerror}") from None

    def matching(self) -> Matching | None:
        if self.matching_path is None:
            return None
        try:
            with open(self.matching_path, encoding="utf-8") as fh:
                return Matching.from_json(json.load(fh))
        except OSError as exc:
            raise GolodkitError(f"cannot read {self.matching_path}: {exc.strerror}") from None
        except (ValueError, KeyError) as exc:
            raise GolodkitError(f"malformed matching file {self.matching_path}: {exc}") from None


# ---------------------------------------------------------------------------
# helpers


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False, ensure_ascii=False) + "\n"


def _csv(rows) -> str:
    buf = io.StringIO()
    csv.writer(buf, lineterminator="\n").writerows(rows)
    return buf.getvalue()


def _grid_text(rows) -> str:
    widths = [max(len(str(r[i])) for r in rows) for i in range(len(rows[0]))]
    return "\n".join("  ".join(str(c).ljust(w) for c, w in zip(r, widths)).rstrip() for r in rows) + "\n"


def _reduction(cfg: RunConfig, ideal: MonomialIdeal, T=None):
    """The reduction selected by --matching, --construction and the first --strategy."""
    T = T if T is not None else taylor(ideal, cfg.field, check=cfg.check)
    given = cfg.matching()
    if given is not None:
        return MorseReduction(T, given, check=cfg.check)
    if cfg.construction == "jollenbeck":
        return jollenbeck_matching(ideal, cfg.field, check=cfg.check).reduction
    return reduce_to_minimal(T, cfg.strategies[0], check=cfg.check)


def _cells(cells, r) -> list[str]:
    return [render_cell(c, r) for c in cells]


# ---------------------------------------------------------------------------
# commands


def cmd_resolve(cfg: RunConfig, out) -> int:
    ideal = cfg.ideal()
    T = taylor(ideal, cfg.field, check=cfg.check)
    F: BasedComplex = T if cfg.extra.get("taylor") else _reduction(cfg, ideal, T).target
    if cfg.fmt == "json":
        data = F.to_json()
        data["seed"] = cfg.seed
        out.write(_dump(data))
    elif cfg.fmt == "csv":
        out.write(betti_csv(F))
    else:
        names = ideal.variables
        out.write(f"# {F.name or 'complex'} over {cfg.field.name}, ranks {' '.join(map(str, F.ranks()))}\n")
        for c in F.cells:
            d = F.d_cell(c)
            out.write(f"d({F.render_cell(c)}) = {d.render(names, ideal.r) if d else '0'}\n")
    return EXIT_OK


def cmd_betti(cfg: RunConfig, out) -> int:
    ideal = cfg.ideal()
    T = taylor(ideal, cfg.field, check=cfg.check)
    ranks = tor_ranks(T)
    if cfg.fmt == "json":
        table = betti_table(T)
        out.write(_dump({
            "ideal": ideal.render(),
            "field": cfg.field.name,
            "tor_ranks": list(ranks),
            "graded": [{"i": i, "j": j, "beta": b} for (i, j), b in sorted(table.items())],
        }))
    elif cfg.fmt == "csv":
        out.write(betti_csv(T))
    else:
        out.write("(" + ",".join(map(str, ranks)) + ")\n")
    return EXIT_OK


def cmd_tor_table(cfg: RunConfig, out) -> int:
    """Multiplication on Tor: ν₂ ⊗ k on the positive critical cells."""
    ideal = cfg.ideal()
    R = _reduction(cfg, ideal)
    tr = MerkulovTransfer(R)
    cells = positive_critical(tr)
    r = ideal.r
    rows = [[""] + _cells(cells, r)]
    entries = []
    for i, a in enumerate(cells):
        row = [render_cell(a, r)]
        for j, b in enumerate(cells):
            units = tr.nu_n((a, b)).reduce_mod_maximal()
            text = tr.K.render(units) if units else "0"
            row.append(text if j >= i else "")
            if units and j >= i:
                entries.append({"left": render_cell(a, r), "right": render_cell(b, r), "value": text})
        rows.append(row)
    if cfg.fmt == "json":
        out.write(_dump({"ideal": ideal.render(), "field": cfg.field.name, "seed": cfg.seed, "nonzero": entries}))
    elif cfg.fmt == "csv":
        out.write(_csv(rows))
    else:
        out.write(_grid_text(rows))
    return EXIT_OK


def cmd_match(cfg: RunConfig, out) -> int:
    ideal = cfg.ideal()
    T = taylor(ideal, cfg.field, check=cfg.check)
    G = build_graph(T)
    if cfg.construction == "jollenbeck":
        staged = jollenbeck_matching(ideal, cfg.field, check=cfg.check)
        M = staged.matching
        data = M.to_json(ideal)
        crit = staged.reduction.target
        data.update({
            "construction": "jollenbeck",
            "critical": [[i + 1 for i in range(ideal.r) if c >> i & 1] for c in crit.cells],
            "critical_ranks": list(crit.ranks()),
            "minimal": staged.minimal,
            "union_is_morse_matching": staged.union_is_morse_matching,
            "substages": staged.substages,
        })
        if staged.note:
            data["note"] = staged.note
    else:
        strategy = cfg.strategies[0]
        M = greedy_maximal_matching(G, strategy)
        data = M.to_json(ideal, T.cells)
        R = reduce_to_minimal(T, strategy, check=cfg.check)
        rounds = R.matchings
        data.update({
            "construction": "greedy",
            "strategy": strategy,
            "rounds": len(rounds),
            "final_critical_ranks": list(R.target.ranks()),
        })
        if len(rounds) > 1:
            data["later_rounds"] = [m.to_json()["arrows"] for m in rounds[1:]]
    data["seed"] = cfg.seed
    if cfg.fmt == "dot":
        out.write(export_dot(G, M))
    else:
        out.write(_dump(data))
    return EXIT_OK


def _entries(transfer: MerkulovTransfer, n: int, cells) -> list[dict]:
    r = transfer.T.ideal.r
    table = AInfStructure(transfer, max_arity=n).table(n, cells)
    return [
        {"inputs": _cells(tup, r), "value": transfer.T.render(val)}
        for tup, val in table.items()
        if val
    ]


def cmd_ainf(cfg: RunConfig, out) -> int:
    ideal = cfg.ideal()
    tr = MerkulovTransfer(_reduction(cfg, ideal))
    cells = positive_critical(tr)
    grid = render_table(tr, cells, upper=True)
    report = {}
    higher = {}
    for n in range(2, cfg.max_arity + 1):
        v = is_minimal_map(tr, n)
        report[n] = {
            "minimal": v.minimal,
            "witness": None if v.minimal else {"inputs": _cells(v.offender, ideal.r), "value": tr.K.render(v.value), "unit_cell": render_cell(v.unit_cell, ideal.r)},
            "tuples_checked": v.tuples_checked,
        }
        if n >= 3:
            higher[n] = _entries(tr, n, cells)
    if cfg.fmt == "json":
        out.write(_dump({
            "ideal": ideal.render(),
            "field": cfg.field.name,
            "seed": cfg.seed,
            "critical": _cells(cells, ideal.r),
            "mu_2": grid,
            "mu_n_nonzero": {str(n): e for n, e in higher.items()},
            "minimality": {str(n): v for n, v in report.items()},
        }))
        return EXIT_OK
    writer = _csv if cfg.fmt == "csv" else _grid_text
    out.write("# mu_2\n")
    out.write(writer(grid))
    for n, rows in higher.items():
        out.write(f"# mu_{n} (nonzero entries)\n")
        out.write(writer([["inputs", "value"]] + [[" ".join(e["inputs"]), e["value"]] for e in rows]) if rows else "")
    out.write("# minimality\n")
    lines = [["arity", "minimal", "witness"]]
    for n, v in report.items():
        w = v["witness"]
        lines.append([n, "yes" if v["minimal"] else "no", "" if w is None else f"{' '.join(w['inputs'])} -> {w['value']}"])
    out.write(writer(lines))
    return EXIT_OK


def cmd_golod(cfg: RunConfig, out) -> int:
    ideal = cfg.ideal()
    dc = DecisionConfig(
        field=cfg.field,
        strategies=cfg.extra.get("strategies_explicit"),
        jollenbeck=not cfg.extra.get("no_jollenbeck", False),
        max_arity=cfg.max_arity,
        seed=cfg.seed,
        matching=cfg.matching(),
        decide_by_higher_products=cfg.extra.get("decide_by_higher_products", False),
        check=cfg.check,
    )
    rep = golod_decision(ideal, dc)
    tr = MerkulovTransfer(_primary_reduction(rep, cfg, ideal))
    grid = render_table(tr, positive_critical(tr), upper=True)
    if cfg.fmt == "json":
        data = rep.to_json()
        data["product_table"] = grid
        out.write(_dump(data))
    else:
        out.write(rep.render_text())
        out.write(f"\nproduct table (mu_2 on critical cells of {rep.primary}):\n")
        out.write(_grid_text(grid))
    return rep.exit_code


def _primary_reduction(rep, cfg: RunConfig, ideal: MonomialIdeal):
    T = taylor(ideal, cfg.field, check=cfg.check)
    if rep.primary == "given matching":
        return MorseReduction(T, cfg.matching(), check=cfg.check)
    if rep.primary == "jollenbeck":
        return jollenbeck_matching(ideal, cfg.field, check=cfg.check).reduction
    return reduce_to_minimal(T, rep.primary, check=cfg.check)


def cmd_check(cfg: RunConfig, out) -> int:
    ideal = cfg.ideal()
    wanted = [k for k in ("gcd", "generic", "strongly_generic") if cfg.extra.get(k)] or ["gcd", "generic", "strongly_generic"]
    results = {}
    for k in wanted:
        if k == "gcd":
            v = gcd_condition(ideal)
            w = None if v.holds else [ideal.generators[i].render(ideal.variables) for i in v.witness]
        elif k == "generic":
            v = is_generic(ideal)
            w = v.detail or None
        else:
            v = is_strongly_generic(ideal)
            w = v.detail or None
        results[k] = {"holds": v.holds, "witness": w}
    if cfg.fmt == "json":
        out.write(_dump({"ideal": ideal.render(), **results}))
    else:
        for k, v in results.items():
            out.write(f"{k}: {'yes' if v['holds'] else 'no'}" + ("" if v["holds"] else f" (witness {v['witness']})") + "\n")
    return EXIT_OK


def cmd_lcm_lattice(cfg: RunConfig, out) -> int:
    ideal = cfg.ideal()
    covers = lcm_lattice_covers(ideal)
    names = ideal.variables
    data = {m.render(names): [c.render(names) for c in cs] for m, cs in covers.items()}
    if cfg.fmt == "text":
        for k, v in data.items():
            out.write(f"{k}: {', '.join(v) if v else '-'}\n")
    else:
        out.write(_dump({"ideal": ideal.render(), "covers": data}))
    return EXIT_OK


def cmd_export_dot(cfg: RunConfig, out) -> int:
    ideal = cfg.ideal()
    T = taylor(ideal, cfg.field, check=cfg.check)
    G = build_graph(T)
    if cfg.extra.get("empty"):
        M = None
    elif cfg.matching_path is not None:
        M = cfg.matching()
        verdict = validate_matching(G, M)
        if not verdict.ok:
            raise GolodkitError(f"invalid matching: {verdict.reason} {verdict.detail}")
    elif cfg.construction == "jollenbeck":
        M = jollenbeck_matching(ideal, cfg.field, check=cfg.check).matching
    else:
        M = greedy_maximal_matching(G, cfg.strategies[0])
    out.write(export_dot(G, M))
    return EXIT_OK


def cmd_verify(cfg: RunConfig, out) -> int:
    count = cfg.extra.get("count", 200)
    strand_count = cfg.extra.get("strands", 25)
    reports: list[tuple[str, MonomialIdeal, InvariantReport]] = []
    if cfg.source is not None or cfg.inline is not None:
        ideal = cfg.ideal()
        reports.append(("input", ideal, check_ideal(ideal, cfg.field, seed=cfg.seed)))
    rng = cfg.rng
    checked = 0
    for i in range(count):
        if reports and not reports[-1][2].ok:
            break
        ideal = random_ideal(rng)
        reports.append((f"random #{i}", ideal, check_ideal(ideal, cfg.field, seed=cfg.seed)))
        checked += 1
    for i in range(strand_count):
        if reports and not reports[-1][2].ok:
            break
        ideal = random_ideal(rng)
        rep = InvariantReport()
        check_strands(random_complex(rng, ideal.r), ideal, rep, cfg.field)
        reports.append((f"strand #{i}", ideal, rep))
    failed = [t for t in reports if not t[2].ok]
    if failed:
        label, ideal, rep = failed[0]
        out.write(f"FAIL {label}: {rep.violations[0]}\n")
        out.write(f"reproduce: golodkit verify --seed {cfg.seed} --count {count}  # ideal: {ideal.render()}\n")
        return EXIT_VIOLATION
    out.write(f"ok: {checked} random ideals, {strand_count} strand checks, seed {cfg.seed}\n")
    return EXIT_OK


COMMANDS = {
    "resolve": cmd_resolve,
    "betti": cmd_betti,
    "tor-table": cmd_tor_table,
    "match": cmd_match,
    "ainf": cmd_ainf,
    "golod": cmd_golod,
    "check": cmd_check,
    "lcm-lattice": cmd_lcm_lattice,
    "export-dot": cmd_export_dot,
    "verify": cmd_verify,
}


# ---------------------------------------------------------------------------
# argument parsing


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", "-i", help="ideal file (text grammar or JSON); '-' reads stdin")
    common.add_argument("--ideal", help="inline ideal source, e.g. 'ring x y; ideal x*y, y^2;'")
    common.add_argument("--field", default="q", help="q (default), f2 or fp:<p>")
    common.add_argument("--char2", action="store_true", help="work over the field with two elements")
    common.add_argument("--sort", choices=["lex"], help="re-sort generators before indexing")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--unchecked", action="store_true", help="skip the d^2 = 0 check at construction")
    common.add_argument("--output", "-o", help="write to this file instead of stdout")

    def reduction_opts(p):
        p.add_argument("--strategy", action="append", help="lex, revlex or random:<seed> (repeatable)")
        p.add_argument("--construction", choices=["greedy", "jollenbeck"], default="greedy")
        p.add_argument("--matching", help="matching JSON file to use instead of a constructed one")

    parser = argparse.ArgumentParser(prog="golodkit", description="Resolutions, A-infinity structures and the Golod property of monomial rings.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("resolve", parents=[common], help="minimal (or Taylor) resolution")
    reduction_opts(p)
    p.add_argument("--taylor", action="store_true", help="emit the Taylor resolution itself")
    p.add_argument("--format", choices=["json", "csv", "text"], default="json")

    p = sub.add_parser("betti", parents=[common], help="Tor ranks and graded Betti numbers")
    p.add_argument("--format", choices=["json", "csv", "text"], default="text")

    p = sub.add_parser("tor-table", parents=[common], help="multiplication on Tor")
    reduction_opts(p)
    p.add_argument("--format", choices=["json", "csv", "text"], default="text")

    p = sub.add_parser("match", parents=[common], help="Morse matching on the Taylor graph")
    reduction_opts(p)
    p.add_argument("--format", choices=["json", "dot"], default="json")

    p = sub.add_parser("ainf", parents=[common], help="transferred A-infinity operations")
    reduction_opts(p)
    p.add_argument("--max-arity", type=int, default=3)
    p.add_argument("--format", choices=["json", "csv", "text"], default="text")

    p = sub.add_parser("golod", parents=[common], help="decide the Golod property")
    reduction_opts(p)
    p.add_argument("--max-arity", type=int, default=4)
    p.add_argument("--no-jollenbeck", action="store_true", help="skip the staged construction")
    p.add_argument("--decide-by-higher-products", action="store_true",
                   help="accept a defined triple product with empty indeterminacy as proof of non-Golodness")
    p.add_argument("--format", choices=["json", "text"], default="text")

    p = sub.add_parser("check", parents=[common], help="gcd / genericity classifiers")
    p.add_argument("--gcd", action="store_true")
    p.add_argument("--generic", action="store_true")
    p.add_argument("--strongly-generic", action="store_true")
    p.add_argument("--format", choices=["json", "text"], default="text")

    p = sub.add_parser("lcm-lattice", parents=[common], help="lcm lattice with cover relations")
    p.add_argument("--format", choices=["json", "text"], default="json")

    p = sub.add_parser("export-dot", parents=[common], help="Graphviz DOT of the Taylor graph")
    reduction_opts(p)
    p.add_argument("--empty", action="store_true", help="no matching, plain graph")

    p = sub.add_parser("verify", parents=[common], help="run the invariant suite")
    p.add_argument("--count", type=int, default=200, help="random ideals to check")
    p.add_argument("--strands", type=int, default=25, help="random (complex, ideal) strand checks")
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    field = F2 if args.char2 else Field.parse(args.field)
    strategies = getattr(args, "strategy", None)
    extra = {
        "strategies_explicit": strategies,
        "taylor": getattr(args, "taylor", False),
        "no_jollenbeck": getattr(args, "no_jollenbeck", False),
        "decide_by_higher_products": getattr(args, "decide_by_higher_products", False),
        "gcd": getattr(args, "gcd", False),
        "generic": getattr(args, "generic", False),
        "strongly_generic": getattr(args, "strongly_generic", False),
        "empty": getattr(args, "empty", False),
        "count": getattr(args, "count", 200),
        "strands": getattr(args, "strands", 25),
    }
    return RunConfig(
        command=args.command,
        source=args.input,
        inline=args.ideal,
        field=field,
        sort=args.sort,
        strategies=strategies or ["lex"],
        construction=getattr(args, "construction", "greedy"),
        matching_path=getattr(args, "matching", None),
        max_arity=getattr(args, "max_arity", 4),
        fmt=getattr(args, "format", "text"),
        seed=args.seed,
        check=not args.unchecked,
        extra=extra,
    )


def _error(kind: str, message: str, **extra) -> None:
    sys.stderr.write(json.dumps({"error": kind, "message": message, **extra}) + "\n")


def run(cfg: RunConfig, out) -> int:
    try:
        return COMMANDS[cfg.command](cfg, out)
    except IdealParseError as exc:
        _error("parse", str(exc), line=getattr(exc, "line", None), column=getattr(exc, "column", None))
        return EXIT_INPUT
    except ResourceCapError as exc:
        _error("resource-cap", str(exc))
        return EXIT_CAP
    except (GolodkitError, ValueError) as exc:
        _error("input", str(exc))
        return EXIT_INPUT


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = config_from_args(args)
    except (GolodkitError, ValueError) as exc:
        _error("input", str(exc))
        return EXIT_INPUT
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            return run(cfg, fh)
    return run(cfg, sys.stdout)


if __name__ == "__main__":
    sys.exit(main())
