"""Print the closure, both behaviours and the decision table for an automaton.

    python3 scripts/walkthrough.py [data/automata/running.json]
"""

import sys
from fractions import Fraction
from pathlib import Path

from energy_kleene import efun, oracle, vsem
from energy_kleene.automaton import buchi_behavior, decide_buchi, decide_reach, finite_behavior, load_path
from energy_kleene.matrix import mat_star, render_matrix

DEFAULT = Path(__file__).resolve().parent.parent / "data" / "automata" / "running.json"
ENERGIES = ["0", "1", "9/8", "3/2", "2", "5"]


def main(path: str) -> None:
    a = load_path(path)
    print(f"states (accepting first): {', '.join(a.state_names)}")
    print("closure:")
    print(render_matrix(mat_star(a.matrix)))
    fb, bb = finite_behavior(a), buchi_behavior(a)
    print(f"finite behaviour: {efun.render(fb)}")
    print(f"buchi behaviour:  {vsem.render(bb)}")
    print(f"{'x0':>5}  reach  buchi  lasso")
    for text in ENERGIES:
        x = Fraction(text)
        lasso = oracle.buchi_lasso(a, x, 6, 4)
        cert = "-" if lasso is None else f"cycle of {len(lasso.cycle)} at {efun.render_energy(lasso.cycle_entry_energy)}"
        print(f"{text:>5}  {'yes' if decide_reach(a, x, fb) else 'no':5}  {'yes' if decide_buchi(a, x, bb) else 'no':5}  {cert}")


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else str(DEFAULT))
