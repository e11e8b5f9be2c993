"""Cross-check the algebraic decisions against the simulation oracle on random automata.

Every oracle witness must be confirmed by the algebra (soundness); a yes from
the algebra without a witness inside the bounds is counted as inconclusive.
The relaxation oracle additionally checks reachability exactly.

    python3 scripts/oracle_sweep.py --trials 300 --max-states 4 --seed 7
"""

import argparse
import random
import time
import warnings
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction

from energy_kleene import oracle
from energy_kleene.automaton import buchi_behavior, decide_buchi, decide_reach, finite_behavior
from energy_kleene.generators import AutomatonConfig, FunctionConfig, random_automaton


@dataclass
class SweepConfig:
    trials: int = 200
    seed: int = 0
    max_stem: int = 6
    max_cycle: int = 4
    energies: tuple = tuple(Fraction(i, 2) for i in range(0, 11))
    automata: AutomatonConfig = field(default_factory=AutomatonConfig)


def sweep(cfg: SweepConfig) -> Counter:
    rng = random.Random(cfg.seed)
    tally = Counter()
    for _ in range(cfg.trials):
        a = random_automaton(rng, cfg.automata)
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            fb, bb = finite_behavior(a), buchi_behavior(a)
        for x in cfg.energies:
            r, b = decide_reach(a, x, fb), decide_buchi(a, x, bb)
            exact = any(
                any(v > oracle.BOTTOM for v in oracle.closure_row(a.matrix, i, x)[: a.k])
                for i in range(a.n)
                if a.alpha[i]
            )
            tally["reach relaxation " + ("agrees" if exact == r else "DISAGREES")] += 1
            for name, alg, w in (
                ("reach", r, oracle.reach_bfs(a, x, cfg.max_stem)),
                ("buchi", b, oracle.buchi_lasso(a, x, cfg.max_stem, cfg.max_cycle)),
            ):
                if w is not None and not (alg and oracle.replay(a, w)):
                    tally[f"{name} UNSOUND"] += 1
                elif w is not None:
                    tally[f"{name} agree-yes"] += 1
                elif alg:
                    tally[f"{name} inconclusive"] += 1
                else:
                    tally[f"{name} agree-no"] += 1
    return tally


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--trials", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-states", type=int, default=3)
    p.add_argument("--max-transitions", type=int, default=6)
    p.add_argument("--pieces", type=int, default=2, help="max pieces per label")
    p.add_argument("--top", type=float, default=0.0, help="probability of a top region per label")
    args = p.parse_args()
    cfg = SweepConfig(
        trials=args.trials,
        seed=args.seed,
        automata=AutomatonConfig(
            max_states=args.max_states,
            max_transitions=args.max_transitions,
            functions=FunctionConfig(max_pieces=args.pieces, p_bottom=0.0, p_top=args.top),
        ),
    )
    start = time.perf_counter()
    tally = sweep(cfg)
    for key in sorted(tally):
        print(f"{key:28} {tally[key]}")
    print(f"{cfg.trials} automata x {len(cfg.energies)} energies in {time.perf_counter() - start:.1f} s")


if __name__ == "__main__":
    main()
