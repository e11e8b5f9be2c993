"""Brute-force simulation over global states (state, energy).

Everything here uses only ``efun.evaluate`` on individual transition labels;
no joins, compositions, stars or matrix formulas.  The searches are one-sided:
a witness certifies a positive answer, its absence proves nothing.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Optional, Sequence

from . import efun
from .automaton import EnergyAutomaton
from .efun import BOTTOM, TOP, as_energy
from .matrix import FunctionMatrix

__all__ = [
    "Step",
    "Witness",
    "reach_bfs",
    "buchi_lasso",
    "replay",
    "render_witness",
    "closure_row",
]


@dataclass(frozen=True)
class Step:
    transition: int
    source: int
    target: int
    energy: object  # energy after firing


@dataclass(frozen=True)
class Witness:
    kind: str  # "FinitePath" or "Lasso"
    start_state: int
    start_energy: object
    path: tuple
    cycle: tuple = ()
    cycle_entry_energy: object = None

    @property
    def end_state(self) -> int:
        return self.path[-1].target if self.path else self.start_state

    @property
    def end_energy(self):
        return self.path[-1].energy if self.path else self.start_energy


def _outgoing(a: EnergyAutomaton) -> list:
    out = [[] for _ in range(a.n)]
    for idx, t in enumerate(a.transitions):
        out[t.source].append(idx)
    return out


def _stems(a: EnergyAutomaton, x0, max_len: int) -> Iterator[tuple]:
    """Yield ``(state, energy, path)`` in discovery order, skipping dominated ones.

    A global state is dominated when the same automaton state was already seen
    with at least as much energy: by monotonicity it can do no more.
    """
    out = _outgoing(a)
    best = {}
    frontier = []
    for s in range(a.n):
        if a.alpha[s] and x0 is not BOTTOM:
            best[s] = x0
            frontier.append((s, x0, ()))
            yield (s, x0, ())
    for _ in range(max_len):
        nxt = []
        for s, e, path in frontier:
            for idx in out[s]:
                t = a.transitions[idx]
                e2 = efun.evaluate(t.label, e)
                if e2 is BOTTOM:
                    continue
                if t.target in best and e2 <= best[t.target]:
                    continue
                best[t.target] = e2
                p2 = path + (Step(idx, s, t.target, e2),)
                nxt.append((t.target, e2, p2))
                yield (t.target, e2, p2)
        frontier = nxt
        if not frontier:
            return


def reach_bfs(a: EnergyAutomaton, x0, max_len: int) -> Optional[Witness]:
    """Finite run of at most ``max_len`` transitions ending in an accepting state."""
    x0 = as_energy(x0)
    for s, e, path in _stems(a, x0, max_len):
        if s < a.k:
            start = path[0].source if path else s
            return Witness("FinitePath", start, x0, path)
    return None


def _cycle_from(a: EnergyAutomaton, out, q: int, y, max_cycle: int) -> Optional[tuple]:
    """Shortest closed walk at ``q`` through an accepting state ending with energy >= y.

    Level-wise search keyed on (state, accepting seen); a key already reached
    with at least as much energy in fewer steps dominates.
    """
    best = {}
    frontier = [(q, q < a.k, y, ())]
    for _ in range(max_cycle):
        nxt = []
        for s, seen, e, steps in frontier:
            for idx in out[s]:
                t = a.transitions[idx]
                e2 = efun.evaluate(t.label, e)
                if e2 is BOTTOM:
                    continue
                seen2 = seen or t.target < a.k
                steps2 = steps + (Step(idx, s, t.target, e2),)
                if t.target == q and seen2 and e2 >= y:
                    return steps2
                key = (t.target, seen2)
                if key in best and e2 <= best[key]:
                    continue
                best[key] = e2
                nxt.append((t.target, seen2, e2, steps2))
        frontier = nxt
        if not frontier:
            break
    return None


def buchi_lasso(a: EnergyAutomaton, x0, max_stem: int, max_cycle: int) -> Optional[Witness]:
    """Stem plus a cycle through an accepting state that does not lose energy."""
    x0 = as_energy(x0)
    if a.k == 0:
        return None
    out = _outgoing(a)
    for q, y, path in _stems(a, x0, max_stem):
        steps = _cycle_from(a, out, q, y, max_cycle)
        if steps is not None:
            start = path[0].source if path else q
            return Witness("Lasso", start, x0, path, steps, y)
    return None


def replay(a: EnergyAutomaton, w: Witness) -> bool:
    """Re-validate a witness step by step against the transition labels."""
    if not a.alpha[w.start_state]:
        return False

    def run(state, energy, steps) -> Optional[tuple]:
        for st in steps:
            t = a.transitions[st.transition]
            if t.source != state or st.source != state or st.target != t.target:
                return None
            energy = efun.evaluate(t.label, energy)
            if energy is BOTTOM or energy != st.energy:
                return None
            state = t.target
        return state, energy

    end = run(w.start_state, as_energy(w.start_energy), w.path)
    if end is None:
        return False
    if w.kind == "FinitePath":
        return end[0] < a.k and not w.cycle
    if w.kind != "Lasso" or not w.cycle or w.cycle_entry_energy != end[1]:
        return False
    back = run(end[0], end[1], w.cycle)
    if back is None or back[0] != end[0]:
        return False
    visits = end[0] < a.k or any(st.target < a.k for st in w.cycle)
    return visits and back[1] >= end[1]


def render_witness(a: EnergyAutomaton, w: Witness) -> str:
    names = a.state_names
    lines = [f"start {names[w.start_state]} @ {efun.render_energy(w.start_energy)}"]

    def step_line(st: Step) -> str:
        label = efun.render(a.transitions[st.transition].label)
        return f"{names[st.source]} --{label}--> {names[st.target]} @ {efun.render_energy(st.energy)}"

    lines += [step_line(st) for st in w.path]
    if w.kind == "Lasso":
        lines.append(f"cycle: entry {names[w.end_state]} @ {efun.render_energy(w.cycle_entry_energy)}")
        lines += ["cycle: " + step_line(st) for st in w.cycle]
    return "\n".join(lines)


def closure_row(m: FunctionMatrix, i: int, x) -> tuple:
    """Supremum over all paths from ``i`` of the energy reached at each state.

    Longest-path relaxation: after ``n`` rounds every value reachable without
    a strictly gaining cycle has settled, so any state still improving during
    rounds ``n+1 .. 2n`` sits downstream of a pumpable cycle and is TOP, as is
    everything reachable from it.
    """
    n = m.n
    x = as_energy(x)
    val = [BOTTOM] * n
    val[i] = x
    pumped = set()
    for rnd in range(1, 2 * n + 1):
        new = list(val)
        for p in range(n):
            if val[p] is BOTTOM:
                continue
            for q in range(n):
                e = efun.evaluate(m[p, q], val[p])
                if e > new[q]:
                    new[q] = e
        if rnd > n:
            pumped |= {q for q in range(n) if new[q] != val[q]}
        val = new
    todo = list(pumped)
    while todo:
        p = todo.pop()
        for q in range(n):
            if q not in pumped and not m[p, q].is_bottom:
                pumped.add(q)
                todo.append(q)
    if x is BOTTOM:
        return tuple(val)
    return tuple(TOP if q in pumped else val[q] for q in range(n))
