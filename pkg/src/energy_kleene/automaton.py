"""Energy automata, their finite and Büchi behaviours, and the two decision procedures."""

from __future__ import annotations

import json
import warnings
from dataclasses import dataclass
from typing import Optional, Sequence

from . import efun, vsem
from .efun import EnergyFunction, as_energy
from .matrix import FunctionMatrix, mat_act, mat_join, mat_mul, mat_omega, mat_star, row_act
from .vsem import ThresholdTest

__all__ = [
    "AutomatonError",
    "NoAcceptingState",
    "Transition",
    "EnergyAutomaton",
    "load",
    "loads",
    "load_path",
    "parse_function",
    "function_document",
    "to_document",
    "to_dot",
    "finite_behavior",
    "buchi_vector",
    "buchi_behavior",
    "decide_reach",
    "decide_buchi",
]


class AutomatonError(ValueError):
    """The automaton document is malformed or inconsistent."""


class NoAcceptingState(UserWarning):
    pass


@dataclass(frozen=True)
class Transition:
    source: int
    target: int
    label: EnergyFunction


@dataclass(frozen=True)
class EnergyAutomaton:
    """Automaton with states reordered so the ``k`` accepting states come first.

    ``order[i]`` is the position in the user's state list of internal state
    ``i``.  ``transitions`` keeps the individual edges (internal indices);
    ``matrix`` holds their joins.
    """

    state_names: tuple
    k: int
    alpha: tuple
    matrix: FunctionMatrix
    transitions: tuple
    order: tuple

    @property
    def n(self) -> int:
        return len(self.state_names)

    @property
    def kappa(self) -> tuple:
        return tuple(i < self.k for i in range(self.n))

    @classmethod
    def build(
        cls,
        states: Sequence[str],
        initial: Sequence[str],
        accepting: Sequence[str],
        transitions: Sequence[tuple],
    ) -> "EnergyAutomaton":
        """Assemble from user-ordered states and ``(src, dst, label)`` edges."""
        states = list(states)
        if len(set(states)) != len(states):
            raise AutomatonError("duplicate state names")
        pos = {s: i for i, s in enumerate(states)}
        for s in list(initial) + list(accepting):
            if s not in pos:
                raise AutomatonError(f"unknown state {s!r}")
        if not initial:
            raise AutomatonError("at least one initial state is required")
        acc = set(accepting)
        order = tuple(
            [i for i, s in enumerate(states) if s in acc]
            + [i for i, s in enumerate(states) if s not in acc]
        )
        internal = {user: i for i, user in enumerate(order)}
        names = tuple(states[i] for i in order)
        init = set(initial)
        alpha = tuple(s in init for s in names)

        edges = []
        n = len(states)
        cells = [[efun.bottom_function() for _ in range(n)] for _ in range(n)]
        for src, dst, label in transitions:
            for s in (src, dst):
                if s not in pos:
                    raise AutomatonError(f"transition references unknown state {s!r}")
            i, j = internal[pos[src]], internal[pos[dst]]
            edges.append(Transition(i, j, label))
            cells[i][j] = efun.join(cells[i][j], label)
        return cls(names, len(acc), alpha, FunctionMatrix.of(cells, n), tuple(edges), order)

    def user_index(self, i: int) -> int:
        return self.order[i]


# -- documents ----------------------------------------------------------------


def _number(raw, where: str):
    if isinstance(raw, bool) or not isinstance(raw, (str, int)):
        raise AutomatonError(f"{where}: numbers must be strings 'p' or 'p/q'")
    try:
        return as_energy(raw)
    except ValueError as e:
        raise AutomatonError(f"{where}: {e}") from None


def _flag(raw, where: str) -> bool:
    if not isinstance(raw, bool):
        raise AutomatonError(f"{where}: expected true or false")
    return raw


def parse_function(doc, where: str = "function") -> EnergyFunction:
    """Decode ``"bottom"`` or ``{pieces: [...], top_start?: {...}}``."""
    if doc == "bottom":
        return efun.bottom_function()
    if not isinstance(doc, dict) or "pieces" not in doc:
        raise AutomatonError(f"{where}: expected 'bottom' or an object with 'pieces'")
    pieces = []
    for i, p in enumerate(doc["pieces"]):
        try:
            pieces.append(
                (
                    _number(p["start"], f"{where} piece {i} start"),
                    _flag(p["start_included"], f"{where} piece {i} start_included"),
                    _number(p["value"], f"{where} piece {i} value"),
                    _number(p["slope"], f"{where} piece {i} slope"),
                )
            )
        except (KeyError, TypeError):
            raise AutomatonError(
                f"{where} piece {i}: needs start, start_included, value, slope"
            ) from None
    top = None
    if doc.get("top_start") is not None:
        t = doc["top_start"]
        try:
            top = (_number(t["start"], f"{where} top_start"), _flag(t["included"], f"{where} top_start included"))
        except (KeyError, TypeError):
            raise AutomatonError(f"{where}: top_start needs start and included") from None
    try:
        return efun.validate(pieces, top)
    except efun.ValidationError as e:
        raise AutomatonError(f"{where}: {e}") from e


def function_document(f: EnergyFunction):
    if f.is_bottom:
        return "bottom"
    doc = {
        "pieces": [
            {
                "start": efun.render_rational(p.start),
                "start_included": p.start_included,
                "value": efun.render_rational(p.value),
                "slope": efun.render_rational(p.slope),
            }
            for p in f.pieces
        ]
    }
    if f.top is not None:
        doc["top_start"] = {"start": efun.render_rational(f.top[0]), "included": f.top[1]}
    return doc


def load(doc: dict) -> EnergyAutomaton:
    if not isinstance(doc, dict):
        raise AutomatonError("automaton document must be an object")
    for field in ("states", "initial", "accepting", "transitions"):
        if field not in doc:
            raise AutomatonError(f"missing field {field!r}")
    for field in ("states", "initial", "accepting"):
        if not isinstance(doc[field], list) or not all(isinstance(s, str) for s in doc[field]):
            raise AutomatonError(f"{field!r} must be a list of strings")
    edges = []
    for i, t in enumerate(doc["transitions"]):
        if not isinstance(t, dict) or not {"from", "to", "function"} <= set(t):
            raise AutomatonError(f"transition {i}: needs from, to, function")
        where = f"transition {i} ({t['from']} -> {t['to']})"
        edges.append((t["from"], t["to"], parse_function(t["function"], where)))
    return EnergyAutomaton.build(doc["states"], doc["initial"], doc["accepting"], edges)


def loads(text: str) -> EnergyAutomaton:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise AutomatonError(f"not valid JSON: {e}") from None
    return load(doc)


def load_path(path: str) -> EnergyAutomaton:
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read())


def to_document(a: EnergyAutomaton) -> dict:
    """Inverse of :func:`load`, states listed in the user's original order."""
    user = sorted(range(a.n), key=a.user_index)
    return {
        "states": [a.state_names[i] for i in user],
        "initial": [a.state_names[i] for i in user if a.alpha[i]],
        "accepting": [a.state_names[i] for i in user if i < a.k],
        "transitions": [
            {
                "from": a.state_names[t.source],
                "to": a.state_names[t.target],
                "function": function_document(t.label),
            }
            for t in a.transitions
        ],
    }


def to_dot(a: EnergyAutomaton) -> str:
    user = sorted(range(a.n), key=a.user_index)
    lines = ["digraph energy_automaton {", "  rankdir=LR;"]
    for i in user:
        shape = "doublecircle" if i < a.k else "circle"
        lines.append(f'  "{a.state_names[i]}" [shape={shape}];')
    for i in user:
        if a.alpha[i]:
            lines.append(f'  "__start_{a.state_names[i]}" [shape=point, label=""];')
            lines.append(f'  "__start_{a.state_names[i]}" -> "{a.state_names[i]}";')
    for t in a.transitions:
        if t.label.is_bottom:
            continue
        label = efun.render(t.label).replace('"', '\\"')
        lines.append(
            f'  "{a.state_names[t.source]}" -> "{a.state_names[t.target]}" [label="{label}"];'
        )
    lines.append("}")
    return "\n".join(lines) + "\n"


# -- behaviours and decisions -----------------------------------------------


def finite_behavior(a: EnergyAutomaton) -> EnergyFunction:
    """alpha M* kappa: join of closure entries from initial to accepting states."""
    closure = mat_star(a.matrix)
    return efun.join_all(
        closure[i, j] for i in range(a.n) if a.alpha[i] for j in range(a.k)
    )


def _blocks(m: FunctionMatrix, k: int):
    n = m.n
    head, rest = range(0, k), range(k, n)
    return m.block(head, head), m.block(head, rest), m.block(rest, head), m.block(rest, rest)


def buchi_vector(a: EnergyAutomaton) -> tuple:
    """Per-state infinite behaviour visiting the accepting block infinitely often."""
    if a.k == 0:
        return tuple(vsem.NEVER for _ in range(a.n))
    aa, b, c, d = _blocks(a.matrix, a.k)
    d_star = mat_star(d)
    returns = mat_omega(mat_join(aa, mat_mul(mat_mul(b, d_star), c)))
    return returns + mat_act(mat_mul(d_star, c), returns)


def buchi_behavior(a: EnergyAutomaton) -> ThresholdTest:
    if a.k == 0:
        warnings.warn("automaton has no accepting state; Büchi behaviour is never", NoAcceptingState)
        return vsem.NEVER
    return row_act(a.alpha, buchi_vector(a))


def decide_reach(a: EnergyAutomaton, x0, behavior: Optional[EnergyFunction] = None) -> bool:
    """Is there a finite run from an initial state with energy x0 ending in an accepting state?"""
    f = finite_behavior(a) if behavior is None else behavior
    return efun.evaluate(f, as_energy(x0)) > efun.BOTTOM


def decide_buchi(a: EnergyAutomaton, x0, behavior: Optional[ThresholdTest] = None) -> bool:
    """Is there an infinite run from energy x0 visiting accepting states infinitely often?"""
    if behavior is None:
        if a.k == 0:
            return False
        behavior = buchi_behavior(a)
    return vsem.apply(behavior, as_energy(x0))
