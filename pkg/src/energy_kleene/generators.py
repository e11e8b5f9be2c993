"""Seeded random energy functions, matrices and automata for sweeps and tests."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from . import efun
from .automaton import EnergyAutomaton
from .efun import EnergyFunction
from .matrix import FunctionMatrix


@dataclass
class FunctionConfig:
    max_pieces: int = 3
    max_constant: int = 6
    denominators: tuple = (1, 1, 1, 2, 3)
    slopes: tuple = (Fraction(1), Fraction(1), Fraction(1), Fraction(3, 2), Fraction(2), Fraction(3))
    p_bottom: float = 0.1
    p_top: float = 0.2
    p_jump: float = 0.3
    p_point_piece: float = 0.1
    p_open_start: float = 0.5


@dataclass
class AutomatonConfig:
    min_states: int = 1
    max_states: int = 3
    max_transitions: int = 6
    p_accepting: float = 0.5
    p_initial: float = 0.4
    functions: FunctionConfig = field(
        default_factory=lambda: FunctionConfig(max_pieces=2, p_bottom=0.0, p_top=0.0)
    )


def random_rational(rng: random.Random, cfg: FunctionConfig, lo=0, hi=None) -> Fraction:
    hi = cfg.max_constant if hi is None else hi
    d = rng.choice(cfg.denominators)
    return Fraction(rng.randint(int(lo * d), int(hi * d)), d)


def _positive(rng: random.Random, cfg: FunctionConfig) -> Fraction:
    d = rng.choice(cfg.denominators)
    return Fraction(rng.randint(1, 3 * d), d)


def random_function(rng: random.Random, cfg: FunctionConfig = None) -> EnergyFunction:
    """A valid energy function; shapes include jumps, point pieces and top regions."""
    cfg = cfg or FunctionConfig()
    if rng.random() < cfg.p_bottom:
        return efun.bottom_function()
    start = random_rational(rng, cfg, 0, cfg.max_constant // 2)
    included = rng.random() >= cfg.p_open_start
    value = random_rational(rng, cfg)
    pieces = []
    for i in range(rng.randint(1, cfg.max_pieces)):
        slope = rng.choice(cfg.slopes)
        pieces.append(efun.Piece(start, included, value, slope))
        if rng.random() < cfg.p_point_piece and included:
            # a point piece: the next piece restarts just above the same point
            nxt_start, nxt_inc = start, False
            limit = value
        else:
            nxt_start, nxt_inc = start + _positive(rng, cfg), rng.random() < 0.5
            limit = value + slope * (nxt_start - start)
        jump = _positive(rng, cfg) if rng.random() < cfg.p_jump else Fraction(0)
        start, included, value = nxt_start, nxt_inc, limit + jump
    top = None
    if rng.random() < cfg.p_top:
        last = pieces[-1].start
        top = (last + random_rational(rng, cfg, 0, 3), rng.random() < 0.5)
    return efun.validate(pieces, top)


def random_matrix(rng: random.Random, n: int, cfg: FunctionConfig = None) -> FunctionMatrix:
    return FunctionMatrix.of([[random_function(rng, cfg) for _ in range(n)] for _ in range(n)])


def random_automaton(rng: random.Random, cfg: AutomatonConfig = None) -> EnergyAutomaton:
    cfg = cfg or AutomatonConfig()
    n = rng.randint(cfg.min_states, cfg.max_states)
    states = [f"q{i}" for i in range(n)]
    accepting = [s for s in states if rng.random() < cfg.p_accepting]
    initial = [s for s in states if rng.random() < cfg.p_initial] or [rng.choice(states)]
    edges = [
        (rng.choice(states), rng.choice(states), random_function(rng, cfg.functions))
        for _ in range(rng.randint(0, cfg.max_transitions))
    ]
    return EnergyAutomaton.build(states, initial, accepting, edges)
