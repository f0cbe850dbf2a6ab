"""Command-line frontend.

Exit status is 0 on success, 1 on bad input, 2 when a generic initial ideal
cannot be certified or a ``--verify`` cross-check finds a discrepancy.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
import warnings
from dataclasses import dataclass

from .asymptotics import DEFAULT_N_MAX, InvariantSelector, fit_eventual_linear, fit_report, power_sequence
from .gin import GinResult, gin_rev
from .groebner import buchberger, ideal_power
from .invariants import AnnihilatorTable, InvariantReport, NotAlmostRegular, annihilator_table, equivalence_report
from .monideal import INF, BettiTable, canonical_key, ek_betti, is_strongly_stable
from .oracle import Verification, default_t_max, macaulay_initial_ideal, hilbert_by_linear_algebra, truncate_ideal, verify_gin
from .poly import GREVLEX, Ideal, ParseError, format_polynomial, parse_ideal

log = logging.getLogger("axialreg")

COMMANDS = ("gb", "gin", "invariants", "annihilators", "betti", "powers")
EXIT_OK, EXIT_INPUT, EXIT_CERT = 0, 1, 2


@dataclass(frozen=True)
class RunConfig:
    command: str
    path: str
    seed: int = 0
    trials: int = 2
    output: str = "text"
    verify: bool = False
    n_max: int = DEFAULT_N_MAX
    invariant: str = "sreg:1"
    t_max: int | None = None


class InputError(Exception):
    pass


# --- rendering ---------------------------------------------------------------


def fmt_ext(v) -> str:
    return "inf" if v == INF else str(v)


def render_grid(cells: dict, columns: range, rows: range) -> str:
    """Rows are twists ``j``, columns are indices ``i``; empty cells print as ``.``."""
    header = [""] + [str(i) for i in columns]
    body = [[f"{j}:"] + [cells.get((i, j), ".") for i in columns] for j in rows]
    widths = [max(len(r[k]) for r in [header] + body) for k in range(len(header))]
    lines = []
    for r in [header] + body:
        lines.append("  ".join(c.rjust(w) for c, w in zip(r, widths)).rstrip())
    return "\n".join(lines)


MARKS = {"both": "[ec]", "extremal": "[e]", "coextremal": "[c]", None: ""}


def render_alpha_table(table: AnnihilatorTable, mode: str = "text"):
    if mode == "json":
        return table.to_json()
    if not table.entries:
        return "no entries"
    cells = {(i, j): f"{v}{MARKS[table.flag(i, j)]}" for (i, j), v in table.entries.items()}
    return render_grid(cells, range(table.nvars), range(table.max_twist + 1))


def render_betti_table(betti: BettiTable, mode: str = "text"):
    if mode == "json":
        return [[i, j, v] for (i, j), v in sorted(betti.table.items())]
    if not betti.table:
        return "no entries"
    cells = {k: str(v) for k, v in betti.table.items()}
    return render_grid(cells, range(betti.nvars + 1), range(betti.max_twist + 1))


def _names(ideal: Ideal) -> tuple[str, ...]:
    return ideal.ring.variables


def _gin_lines(ideal: Ideal, gin: GinResult) -> list[str]:
    names = _names(ideal)
    status = "certified" if gin.certified else "NOT certified"
    stable = "strongly stable" if gin.strongly_stable else "Borel-fixed" if gin.borel_fixed else "not Borel-fixed"
    return [
        f"gin ({status}, {stable}, {len(gin.trials)} draws, bound {gin.bound}):",
        "  " + gin.ideal.format(names),
    ]


def _report_text(ideal: Ideal, rep: InvariantReport) -> str:
    d = rep.nvars
    lines = [f"field {rep.field}, {d} variables"]
    lines += _gin_lines(ideal, rep.gin)
    lines.append(f"height {rep.height}, regularity {rep.regularity}")
    head = ["i", "axial", "sreg", "omega", "section"]
    rows = []
    for i in range(1, d + 1):
        sec = "-" if rep.sreg_sections is None else str(rep.sreg_sections[i - 1])
        rows.append([str(i), fmt_ext(rep.axial[i - 1]), str(rep.sreg[i - 1]), str(rep.omega[i - 1]), sec])
    widths = [max(len(r[k]) for r in [head] + rows) for k in range(len(head))]
    for r in [head] + rows:
        lines.append("  " + "  ".join(c.rjust(w) for c, w in zip(r, widths)))
    lines.append("reduction numbers: " + " ".join(f"r{s}={fmt_ext(v)}" for s, v in sorted(rep.reduction.items())))
    lines.append("annihilator numbers (rows j, columns i):")
    lines.append(render_alpha_table(rep.table))
    lines.append("verdicts:")
    width = max(len(k) for k in rep.verdicts)
    for name, v in rep.verdicts.items():
        state = {True: "holds", False: "FAILS", None: "n/a"}[v.holds]
        extra = ""
        if v.holds is False and "failures" in v.detail:
            extra = f" at i={v.detail['failures']}"
        lines.append(f"  {name.ljust(width)}  {state}{extra}")
    return "\n".join(lines)


def _flat(x) -> bool:
    return not isinstance(x, (dict, list)) or (isinstance(x, list) and all(not isinstance(y, (dict, list)) for y in x))


def _dump(obj, depth: int = 0) -> str:
    """JSON with objects indented and short lists kept on one line."""
    pad = "  " * (depth + 1)
    if isinstance(obj, dict) and obj:
        items = [f"{pad}{json.dumps(str(k))}: {_dump(v, depth + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + "  " * depth + "}"
    if isinstance(obj, list) and obj and not all(_flat(x) for x in obj):
        items = [f"{pad}{_dump(v, depth + 1)}" for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + "  " * depth + "]"
    return json.dumps(obj)


# --- commands ----------------------------------------------------------------


def _load(path: str) -> Ideal:
    try:
        text = sys.stdin.read() if path == "-" else open(path, encoding="utf-8").read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    try:
        return parse_ideal(text)
    except ParseError as exc:
        raise InputError(f"{path}: {exc}") from None


def _require_nonzero(ideal: Ideal, what: str) -> None:
    if not ideal.gens:
        raise InputError(f"{what} needs a nonzero ideal")


def _verify_gb(ideal: Ideal, gb, t_max: int) -> Verification:
    out = Verification()
    gens = list(ideal.gens)
    d, F = ideal.nvars, ideal.field
    out.expect("initial_ideal", {}, truncate_ideal(gb.initial, t_max), macaulay_initial_ideal(gens, t_max, d, F))
    engine = gb.initial.hilbert_series().values(t_max)
    out.expect("hilbert", {}, engine, hilbert_by_linear_algebra(gens, t_max, d, F))
    return out


def cmd_gb(ideal: Ideal, cfg: RunConfig) -> tuple[str, int, list[Verification]]:
    gb = buchberger(ideal)
    checks = []
    if cfg.verify:
        checks.append(_verify_gb(ideal, gb, cfg.t_max or default_t_max(ideal.gens)))
    basis = sorted(gb.basis, key=lambda f: canonical_key(f.leading_term(GREVLEX)[1]))
    if cfg.output == "json":
        doc = {
            "field": str(ideal.field),
            "vars": list(_names(ideal)),
            "order": "grevlex",
            "basis": [format_polynomial(f) for f in basis],
            "initial": [list(m) for m in gb.initial.gens],
        }
        return _dump(doc), EXIT_OK, checks
    lines = [f"reduced Groebner basis (grevlex, {len(basis)} elements):"]
    lines += ["  " + format_polynomial(f) for f in basis]
    lines.append("initial ideal: " + gb.initial.format(_names(ideal)))
    return "\n".join(lines), EXIT_OK, checks


def _gin(ideal: Ideal, cfg: RunConfig) -> GinResult:
    _require_nonzero(ideal, cfg.command)
    return gin_rev(ideal, seed=cfg.seed, trials=cfg.trials)


def _gin_checks(ideal: Ideal, gin: GinResult, cfg: RunConfig, colon: bool) -> list[Verification]:
    if not cfg.verify:
        return []
    return [verify_gin(ideal, gin, cfg.t_max, colon=colon)]


def _status(gin: GinResult) -> int:
    return EXIT_OK if gin.certified else EXIT_CERT


def cmd_gin(ideal: Ideal, cfg: RunConfig):
    gin = _gin(ideal, cfg)
    checks = _gin_checks(ideal, gin, cfg, colon=False)
    if cfg.output == "json":
        return _dump(gin.to_json()), _status(gin), checks
    return "\n".join(_gin_lines(ideal, gin)), _status(gin), checks


def cmd_invariants(ideal: Ideal, cfg: RunConfig):
    gin = _gin(ideal, cfg)
    rep = equivalence_report(ideal, seed=cfg.seed, trials=cfg.trials, gin=gin)
    checks = _gin_checks(ideal, gin, cfg, colon=True)
    if cfg.output == "json":
        return _dump(rep.to_json()), _status(gin), checks
    return _report_text(ideal, rep), _status(gin), checks


def cmd_annihilators(ideal: Ideal, cfg: RunConfig):
    gin = _gin(ideal, cfg)
    table = annihilator_table(gin.ideal)
    checks = _gin_checks(ideal, gin, cfg, colon=True)
    if cfg.output == "json":
        doc = {"nvars": ideal.nvars, "certified": gin.certified, "alpha": render_alpha_table(table, "json")}
        return _dump(doc), _status(gin), checks
    return render_alpha_table(table), _status(gin), checks


def cmd_betti(ideal: Ideal, cfg: RunConfig):
    gin = _gin(ideal, cfg)
    if not is_strongly_stable(gin.ideal):
        raise InputError("Betti numbers are only available when the gin is strongly stable")
    betti = ek_betti(gin.ideal)
    checks = _gin_checks(ideal, gin, cfg, colon=False)
    if cfg.output == "json":
        doc = {"nvars": ideal.nvars, "certified": gin.certified, "betti": render_betti_table(betti, "json")}
        return _dump(doc), _status(gin), checks
    return render_betti_table(betti), _status(gin), checks


def cmd_powers(ideal: Ideal, cfg: RunConfig):
    _require_nonzero(ideal, "powers")
    try:
        selector = InvariantSelector.parse(cfg.invariant)
        seq = power_sequence(ideal, selector, cfg.n_max, seed=cfg.seed, trials=cfg.trials)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    fit = None
    if len(seq.points) >= 2 and all(v != INF for _, v in seq.points):
        fit = fit_eventual_linear(seq.points)
    checks = []
    if cfg.verify:
        for (n, _), gin in zip(seq.points, seq.gins):
            power = Ideal(ideal.ring, tuple(ideal_power(ideal.gens, n)))
            checks.append(verify_gin(power, gin, cfg.t_max, colon=False))
    status = EXIT_CERT if seq.uncertified else EXIT_OK
    doc = fit_report(seq, fit)
    if cfg.output == "json":
        return _dump(doc), status, checks
    lines = [f"{selector} along powers:"]
    lines += [f"  n={n}: {fmt_ext(v)}" for n, v in seq.points]
    if fit is None:
        lines.append("no linear fit (too few finite values)")
    else:
        lines.append(
            f"fit: {doc['slope']}*n + {doc['intercept']} from n={fit.stable_from} ({fit.status})"
        )
    return "\n".join(lines), status, checks


HANDLERS = {
    "gb": cmd_gb,
    "gin": cmd_gin,
    "invariants": cmd_invariants,
    "annihilators": cmd_annihilators,
    "betti": cmd_betti,
    "powers": cmd_powers,
}


def run(cfg: RunConfig, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        ideal = _load(cfg.path)
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            text, status, checks = HANDLERS[cfg.command](ideal, cfg)
        for w in caught:
            print(f"warning: {w.message}", file=err)
    except InputError as exc:
        print(f"error: {exc}", file=err)
        return EXIT_INPUT
    except NotAlmostRegular as exc:
        print(f"error: {exc}", file=err)
        return EXIT_CERT
    print(text, file=out)
    if status == EXIT_CERT:
        print("error: generic initial ideal could not be certified", file=err)
    for v in checks:
        if not v.ok:
            print("verification failed:", file=err)
            print(_dump(v.to_json()), file=err)
            status = EXIT_CERT
        else:
            print(f"verified: {v.checks} checks against linear algebra", file=err)
    return status


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("path", help="ideal file, or - for standard input")
    common.add_argument("--seed", type=int, default=0, help="seed for every random draw (default 0)")
    common.add_argument("--trials", type=int, default=2, help="independent draws per gin (default 2)")
    common.add_argument("--json", action="store_true", help="emit JSON instead of text")
    common.add_argument("--verify", action="store_true", help="cross-check against exact linear algebra")
    common.add_argument("--t-max", type=int, default=None, help="degree bound for --verify")
    common.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")

    parser = argparse.ArgumentParser(
        prog="axialreg",
        description="Generic initial ideals, axial constants and sectional regularity.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("gb", parents=[common], help="reduced grevlex Groebner basis")
    sub.add_parser("gin", parents=[common], help="certified revlex generic initial ideal")
    sub.add_parser("invariants", parents=[common], help="all invariants and the identities between them")
    sub.add_parser("annihilators", parents=[common], help="generic annihilator numbers")
    sub.add_parser("betti", parents=[common], help="graded Betti numbers of the gin")
    powers = sub.add_parser("powers", parents=[common], help="an invariant along the powers I^n")
    powers.add_argument("--n-max", type=int, default=DEFAULT_N_MAX, help=f"largest power (default {DEFAULT_N_MAX})")
    powers.add_argument(
        "--invariant", default="sreg:1", help="axial:i, sreg:i, reduction:s or regularity (default sreg:1)"
    )
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(name)s: %(message)s")
    if args.trials < 2:
        print("error: --trials must be at least 2", file=sys.stderr)
        return EXIT_INPUT
    cfg = RunConfig(
        command=args.command,
        path=args.path,
        seed=args.seed,
        trials=args.trials,
        output="json" if args.json else "text",
        verify=args.verify,
        n_max=getattr(args, "n_max", DEFAULT_N_MAX),
        invariant=getattr(args, "invariant", "sreg:1"),
        t_max=args.t_max,
    )
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
