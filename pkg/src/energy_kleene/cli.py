"""Command-line front end: ``energy-kleene <command> FILE [options]``.

Exit codes: 0 yes/success, 3 no, 2 error or invalid input.  Output is
assembled completely before anything is printed, so failing commands emit
only a diagnostic on stderr.
"""

from __future__ import annotations

import argparse
import sys
import time
import warnings
from dataclasses import dataclass, field
from typing import Optional

from . import efun, oracle, vsem
from .automaton import (
    AutomatonError,
    EnergyAutomaton,
    buchi_behavior,
    decide_buchi,
    decide_reach,
    finite_behavior,
    loads,
    to_dot,
)
from .matrix import FunctionMatrix, mat_equals, mat_star_block, mat_star_elim, render_matrix

EXIT_YES, EXIT_ERROR, EXIT_NO = 0, 2, 3
EXIT_CONFLICT = 1


@dataclass
class QueryResult:
    command: str
    answer: str
    witness: Optional[str] = None
    lines: list = field(default_factory=list)
    exit_code: int = EXIT_YES
    elapsed: float = 0.0

    def render(self) -> str:
        # elapsed is deliberately not rendered: output must be byte-stable
        out = list(self.lines) or [self.answer]
        if self.witness:
            out.append(self.witness)
        return "\n".join(out) + "\n"


class CliError(Exception):
    pass


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as e:
        raise CliError(f"cannot read {path}: {e.strerror}") from None


def _energy(text: str):
    try:
        x = efun.parse_rational(text)
    except ValueError as e:
        raise CliError(str(e)) from None
    if x < 0:
        raise CliError("initial energy must be nonnegative")
    return x


def _user_order(a: EnergyAutomaton, m: FunctionMatrix) -> FunctionMatrix:
    user = sorted(range(a.n), key=a.user_index)
    return FunctionMatrix.of([[m[i, j] for j in user] for i in user], a.n)


def cmd_validate(a: EnergyAutomaton, args) -> QueryResult:
    return QueryResult(
        "validate",
        f"valid: {a.n} states, {len(a.transitions)} transitions, {a.k} accepting",
    )


def cmd_closure(a: EnergyAutomaton, args) -> QueryResult:
    block, elim = mat_star_block(a.matrix), mat_star_elim(a.matrix)
    if not mat_equals(block, elim):
        raise CliError("star algorithms disagree (block formula vs elimination)")
    return QueryResult("closure", render_matrix(_user_order(a, elim)))


def cmd_behavior(a: EnergyAutomaton, args) -> QueryResult:
    lines = [f"finite: {efun.render(finite_behavior(a))}"]
    if a.k == 0:
        lines.append("buchi: never")
        lines.append("warning: no accepting state; Büchi behaviour is never")
    else:
        lines.append(f"buchi: {vsem.render(buchi_behavior(a))}")
    return QueryResult("behavior", "", lines=lines)


def _decision(name: str, yes: bool, witness) -> QueryResult:
    return QueryResult(name, "yes" if yes else "no", witness, exit_code=EXIT_YES if yes else EXIT_NO)


def cmd_reach(a: EnergyAutomaton, args) -> QueryResult:
    x0 = _energy(args.energy)
    yes = decide_reach(a, x0)
    text = None
    if args.witness and yes:
        w = oracle.reach_bfs(a, x0, args.depth)
        text = oracle.render_witness(a, w) if w else f"no witness within depth {args.depth}"
    return _decision("reach", yes, text)


def cmd_buchi(a: EnergyAutomaton, args) -> QueryResult:
    x0 = _energy(args.energy)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        yes = decide_buchi(a, x0)
    text = None
    if args.witness and yes:
        w = oracle.buchi_lasso(a, x0, args.depth, args.cycle)
        text = (
            oracle.render_witness(a, w)
            if w
            else f"no lasso within stem {args.depth} and cycle {args.cycle}"
        )
    return _decision("buchi", yes, text)


def _compare(problem: str, algebra: bool, witness) -> tuple:
    found = witness is not None
    if found and not algebra:
        verdict = "CONFLICT"
    elif found:
        verdict = "agree-yes"
    elif not algebra:
        verdict = "agree-no"
    else:
        verdict = "inconclusive"
    line = (
        f"{problem}: algebra={'yes' if algebra else 'no'} "
        f"oracle={'witness' if found else 'none'} -> {verdict}"
    )
    return line, verdict


def cmd_oracle_check(a: EnergyAutomaton, args) -> QueryResult:
    x0 = _energy(args.energy)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        r, b = decide_reach(a, x0), decide_buchi(a, x0)
    wr = oracle.reach_bfs(a, x0, args.depth)
    wb = oracle.buchi_lasso(a, x0, args.depth, args.cycle)
    lines, verdicts = [], []
    for problem, alg, w in (("reach", r, wr), ("buchi", b, wb)):
        line, verdict = _compare(problem, alg, w)
        if w is not None and not oracle.replay(a, w):
            verdict = "CONFLICT"
            line += " (witness failed replay)"
        lines.append(line)
        verdicts.append(verdict)
    ok = "CONFLICT" not in verdicts
    lines.append("consistent" if ok else "inconsistent")
    return QueryResult("oracle-check", "", lines=lines, exit_code=EXIT_YES if ok else EXIT_CONFLICT)


def cmd_export_dot(a: EnergyAutomaton, args) -> QueryResult:
    if args.format == "dot":
        return QueryResult("export-dot", to_dot(a).rstrip("\n"))
    lines = []
    for t in a.transitions:
        if not t.label.is_bottom:
            lines.append(
                f"{a.state_names[t.source]} -> {a.state_names[t.target]} : {efun.render(t.label)}"
            )
    return QueryResult("export-dot", "", lines=lines or ["(no transitions)"])


COMMANDS = {
    "validate": cmd_validate,
    "closure": cmd_closure,
    "behavior": cmd_behavior,
    "reach": cmd_reach,
    "buchi": cmd_buchi,
    "oracle-check": cmd_oracle_check,
    "export-dot": cmd_export_dot,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="energy-kleene", description="Decide energy problems on energy automata."
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("file", help="automaton JSON document, or - for stdin")
        if name in ("reach", "buchi", "oracle-check"):
            p.add_argument("--energy", required=True, help="initial energy as p or p/q")
            p.add_argument("--depth", type=int, default=8, help="oracle stem/path bound")
            p.add_argument("--cycle", type=int, default=4, help="oracle cycle-length bound")
        if name in ("reach", "buchi"):
            p.add_argument("--witness", action="store_true", help="attach an oracle witness")
        if name == "export-dot":
            p.add_argument("--format", choices=("text", "dot"), default="dot")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    start = time.perf_counter()
    try:
        automaton = loads(_read(args.file))
        result = COMMANDS[args.command](automaton, args)
    except (AutomatonError, CliError) as e:
        label = "invalid" if isinstance(e, AutomatonError) else "error"
        print(f"{label}: {e}", file=sys.stderr)
        return EXIT_ERROR
    result.elapsed = time.perf_counter() - start
    sys.stdout.write(result.render())
    return result.exit_code


if __name__ == "__main__":
    sys.exit(main())
