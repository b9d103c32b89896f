"""Command-line front end.

Exit codes: 0 success; 1 ``bayes`` ran but the quantum-like Bayes rule does
not hold (reporting, not an error); 2 formula or usage error; 3 dimension
mismatch; 4 invalid state or space file.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Sequence

from .bayes import (
    TOL_CLASSIFY,
    BayesCase,
    ProbabilitySpace,
    SpaceError,
    alpha_implication,
    probability_bounds,
    quantum_bayes_check,
)
from .born import born_mean, decompose, format_probability, probability_bundle
from .formula import ParseError, VariableOrder, parse, to_text, truth_table
from .operators import MAX_DENSE_VARIABLES, compile_formula, dense_to_pairs, elementary, to_dense
from .states import StateError, from_amplitudes, load_state, named_state

EXIT_OK = 0
EXIT_BAYES_FAILS = 1
EXIT_USAGE = 2
EXIT_DIMENSION = 3
EXIT_INPUT = 4


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


# ---------------------------------------------------------------------------
# formatting
# ---------------------------------------------------------------------------


def fmt(x: float) -> str:
    """12 significant digits, no trailing zeros."""
    return f"{format_probability(x):.12g}"


def exact(x: float, max_denominator: int = 16, tol: float = 1e-12) -> str:
    """Render ``x`` as a small fraction when it is one, else as :func:`fmt`."""
    fr = Fraction(x).limit_denominator(max_denominator)
    if abs(float(fr) - x) <= tol:
        return str(fr)
    return fmt(x)


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


# ---------------------------------------------------------------------------
# reference tables
# ---------------------------------------------------------------------------

TABLE1_COLUMNS = (
    ("A", "A"),
    ("B", "B"),
    ("A∧B", "A & B"),
    ("A∨B", "A | B"),
    ("A→B", "A -> B"),
    ("B→A", "B -> A"),
    ("¬A", "!A"),
    ("¬B", "!B"),
    ("¬A∨B", "!A | B"),
    ("A∨¬B", "A | !B"),
)

PROBABILITY_COLUMNS = (
    "P(A)",
    "P(B)",
    "P(A→B)",
    "P(B→A)",
    "P(A)P(A→B)",
    "P(B)P(B→A)",
    "P(A∩B)",
)

STATE_TABLES = (
    ("table2", "Computational basis states", ("00", "01", "10", "11")),
    ("table3", "Uniform superpositions and the cluster state", ("++", "+-", "-+", "--", "cluster")),
    ("table4", "Mixed-basis product states", ("0+", "+0", "1+", "+1")),
    ("table5", "Bell states", ("phi+", "phi-", "psi+", "psi-")),
)


def build_tables() -> dict:
    order = VariableOrder("A,B")
    columns = [truth_table(parse(src), order).bits for _, src in TABLE1_COLUMNS]
    tables = {
        "table1": {
            "title": "Truth tables",
            "columns": [label for label, _ in TABLE1_COLUMNS],
            "rows": [list(row) for row in zip(*columns)],
        }
    }
    a, b = elementary(0, 2), elementary(1, 2)
    for key, title, names in STATE_TABLES:
        rows = []
        for name in names:
            bundle = probability_bundle(named_state(name), a, b)
            rows.append([name] + [exact(v) for v in bundle.table_row()])
        tables[key] = {"title": title, "columns": ["state", *PROBABILITY_COLUMNS], "rows": rows}
    return tables


def render_tables_text(tables: dict) -> str:
    out = []
    for key, table in tables.items():
        out.append(f"{key}: {table['title']}")
        header = [str(c) for c in table["columns"]]
        rows = [[str(v) for v in row] for row in table["rows"]]
        widths = [max(len(r[i]) for r in [header, *rows]) for i in range(len(header))]
        for line in [header, *rows]:
            out.append("  ".join(cell.ljust(w) for cell, w in zip(line, widths)).rstrip())
        out.append("")
    return "\n".join(out)


# ---------------------------------------------------------------------------
# input resolution
# ---------------------------------------------------------------------------


def _parse_formulas(texts: Sequence[str]):
    formulas = []
    for text in texts:
        try:
            formulas.append(parse(text))
        except ParseError as exc:
            caret = " " * len(text.encode()[: exc.offset].decode(errors="ignore")) + "^"
            raise CliError(f"parse error in {text!r}: {exc}\n  {text}\n  {caret}", EXIT_USAGE)
    return formulas


def _resolve_order(order_text, formulas) -> VariableOrder:
    try:
        order = VariableOrder(order_text) if order_text else VariableOrder.of(*formulas)
        for f in formulas:
            order.check_covers(f)
    except ValueError as exc:
        raise CliError(str(exc), EXIT_USAGE)
    if not order:
        raise CliError("no variables; pass --order", EXIT_USAGE)
    return order


def _parse_complex_list(text: str):
    try:
        return [complex(tok.strip().replace(" ", "")) for tok in text.split(",")]
    except ValueError as exc:
        raise CliError(f"bad amplitude list {text!r}: {exc}", EXIT_INPUT)


def _resolve_state(args):
    sources = [s for s in (args.state, args.amplitudes) if s is not None]
    if len(sources) != 1:
        raise CliError("give exactly one of --state or --amplitudes", EXIT_USAGE)
    try:
        if args.amplitudes is not None:
            return args.amplitudes, from_amplitudes(_parse_complex_list(args.amplitudes), normalize=True)
        if args.state.startswith("@"):
            return args.state, load_state(args.state[1:])
        return args.state, named_state(args.state)
    except StateError as exc:
        raise CliError(str(exc), EXIT_INPUT)


def _check_dim(state, order):
    if state.n != len(order):
        raise CliError(
            f"state has {state.n} qubits but the variable order {list(order)} has "
            f"{len(order)} variables (use --order)",
            EXIT_DIMENSION,
        )


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------


def cmd_truthtable(args, out) -> int:
    formulas = _parse_formulas(args.formulas)
    order = _resolve_order(args.order, formulas)
    tables = [truth_table(f, order) for f in formulas]
    flags = []
    if len(tables) > 1 and all(t == tables[0] for t in tables[1:]):
        flags.append("EQUIVALENT")
    for f, t in zip(formulas, tables):
        if t.is_tautology:
            flags.append(f"TAUTOLOGY: {to_text(f)}")
        elif t.is_contradiction:
            flags.append(f"CONTRADICTION: {to_text(f)}")
    if args.json:
        out.write(_dump({
            "order": list(order),
            "formulas": [to_text(f) for f in formulas],
            "columns": [list(t.bits) for t in tables],
            "flags": flags,
        }))
        return EXIT_OK
    header = list(order) + [to_text(f) for f in formulas]
    rows = []
    for r, (bits, _) in enumerate(tables[0].rows()):
        rows.append([str(b) for b in bits] + [str(int(t.column[r])) for t in tables])
    widths = [max(len(h), 1) for h in header]
    out.write("  ".join(h.ljust(w) for h, w in zip(header, widths)).rstrip() + "\n")
    for row in rows:
        out.write("  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip() + "\n")
    for flag in flags:
        out.write(flag + "\n")
    return EXIT_OK


def cmd_compile(args, out) -> int:
    formulas = _parse_formulas(args.formulas)
    order = _resolve_order(args.order, formulas)
    projectors = [compile_formula(f, order) for f in formulas]
    if args.json:
        items = []
        for f, p in zip(formulas, projectors):
            item = {"formula": to_text(f), "projector": p.serialize()}
            if len(order) <= MAX_DENSE_VARIABLES:
                item["dense"] = dense_to_pairs(to_dense(p))
            items.append(item)
        out.write(_dump({"order": list(order), "operators": items}))
        return EXIT_OK
    for f, p in zip(formulas, projectors):
        out.write(f"{to_text(f)}\t{p.serialize()}\n")
    return EXIT_OK


def _pair_projectors(args, order):
    if args.pair:
        pair = _parse_formulas(args.pair)
        for f in pair:
            try:
                order.check_covers(f)
            except ValueError as exc:
                raise CliError(str(exc), EXIT_USAGE)
        return [to_text(f) for f in pair], [compile_formula(f, order) for f in pair]
    if len(order) < 2:
        return None, None
    return [order[0], order[1]], [elementary(0, len(order)), elementary(1, len(order))]


def cmd_measure(args, out) -> int:
    label, state = _resolve_state(args)
    formulas = _parse_formulas(args.formulas)
    order = _resolve_order(args.order, formulas)
    _check_dim(state, order)
    means = [(to_text(f), born_mean(state, compile_formula(f, order))) for f in formulas]
    names, pair = _pair_projectors(args, order)
    bundle = weights = None
    if pair:
        bundle = probability_bundle(state, *pair)
        _, weights = decompose(state, *pair)
    if args.json:
        report = {
            "state": label,
            "order": list(order),
            "means": {text: format_probability(v) for text, v in means},
        }
        if bundle is not None:
            report["pair"] = names
            report.update({k: format_probability(v) for k, v in vars(bundle).items()})
            report["weights"] = [format_probability(v) for v in weights.as_tuple()]
        out.write(_dump(report))
        return EXIT_OK
    for text, value in means:
        out.write(f"P({text}) = {fmt(value)}\n")
    if bundle is not None:
        out.write(f"bundle for A = {names[0]}, B = {names[1]}:\n")
        for key, value in vars(bundle).items():
            out.write(f"  {key} = {fmt(value)}\n")
        out.write("  weights = " + ", ".join(fmt(v) for v in weights.as_tuple()) + "\n")
    return EXIT_OK


def cmd_bayes(args, out) -> int:
    label, state = _resolve_state(args)
    fa, fb = _parse_formulas([args.a, args.b])
    order = _resolve_order(args.order, [fa, fb])
    _check_dim(state, order)
    report = quantum_bayes_check(state, compile_formula(fa, order), compile_formula(fb, order), args.tol)
    data = report.to_json(state=label)
    if args.alpha is not None:
        try:
            value = alpha_implication(report.bundle.pA, report.bundle.pAnd, args.alpha)
            data["alpha"] = args.alpha
            data["alphaImplication"] = format_probability(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise CliError(f"alpha interpolation: {exc}", EXIT_USAGE)
    if args.json:
        out.write(_dump(data))
    else:
        for key, value in data.items():
            if isinstance(value, float):
                value = fmt(value)
            elif value is None:
                value = "undefined"
            out.write(f"{key}={value}\n")
    return EXIT_OK if report.case in BayesCase.SATISFIED else EXIT_BAYES_FAILS


def cmd_tables(args, out) -> int:
    tables = build_tables()
    out.write(_dump(tables) if args.json else render_tables_text(tables))
    return EXIT_OK


def cmd_bounds(args, out) -> int:
    source = args.space[1:] if args.space.startswith("@") else args.space
    try:
        space = ProbabilitySpace.load(source)
    except SpaceError as exc:
        raise CliError(str(exc), EXIT_INPUT)
    events = _parse_formulas(args.events)
    for f in events:
        try:
            space.order.check_covers(f)
        except ValueError as exc:
            raise CliError(str(exc), EXIT_USAGE)
    try:
        bounds = probability_bounds(space, events)
    except ValueError as exc:
        raise CliError(str(exc), EXIT_USAGE)
    if args.json:
        data = bounds.to_json()
        data["events"] = [to_text(f) for f in events]
        out.write(_dump(data))
        return EXIT_OK
    out.write(f"union = {exact(bounds.union)}\n")
    out.write(f"boole_upper = {exact(bounds.boole_upper)}\n")
    out.write(f"bonferroni_lower = {exact(bounds.bonferroni_lower)}\n")
    for p in bounds.pairs:
        a, b = to_text(events[p.antecedent]), to_text(events[p.consequent])
        out.write(
            f"P({b}) = {exact(p.pB)} <= P(({a}) -> ({b})) = {exact(p.pImp)}"
            f" <= 1 - P({a}) + P({b}) = {exact(p.upper)}\n"
        )
    return EXIT_OK


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------


def _add_state_args(p):
    p.add_argument("--state", help="named state (e.g. ++, phi+, cluster, 10) or @file.json")
    p.add_argument("--amplitudes", help="comma-separated complex amplitudes, normalized on load")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="eigenlogic",
        description="Eigenlogic projectors, Born-rule probabilities and Bayes-like inference checks.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("truthtable", help="print truth tables of one or more formulas")
    p.add_argument("formulas", nargs="+")
    p.add_argument("--order", help="comma-separated variable order (default: sorted)")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_truthtable)

    p = sub.add_parser("compile", help="compile formulas to diagonal projectors")
    p.add_argument("formulas", nargs="+")
    p.add_argument("--order")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_compile)

    p = sub.add_parser("measure", help="Born-rule probabilities of formulas in a state")
    p.add_argument("formulas", nargs="+")
    _add_state_args(p)
    p.add_argument("--order")
    p.add_argument("--pair", nargs=2, metavar=("A", "B"), help="formulas for the bundle pair")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_measure)

    p = sub.add_parser("bayes", help="check the quantum-like Bayes rule for a pair of propositions")
    p.add_argument("a", metavar="A")
    p.add_argument("b", metavar="B")
    _add_state_args(p)
    p.add_argument("--order")
    p.add_argument("--tol", type=float, default=TOL_CLASSIFY)
    p.add_argument("--alpha", type=float, help="also report the alpha-interpolated implication")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_bayes)

    p = sub.add_parser("tables", help="regenerate the truth table and the four state tables")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_tables)

    p = sub.add_parser("bounds", help="union probability bounds over a probability space")
    p.add_argument("events", nargs="+")
    p.add_argument("--space", required=True, help="@file.json with order and weights")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_bounds)
    return parser


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except CliError as exc:
        print(f"eigenlogic: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
