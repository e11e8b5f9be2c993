"""Energy problems on energy automata, solved in the *-continuous Kleene
omega-algebra of extended energy functions.

Modules: ``efun`` (functions), ``vsem`` (threshold tests), ``matrix``,
``automaton`` (behaviours and decisions), ``oracle`` (brute-force
simulation), ``generators`` and ``cli``.
"""

from .automaton import (
    EnergyAutomaton,
    buchi_behavior,
    decide_buchi,
    decide_reach,
    finite_behavior,
    load,
    load_path,
    loads,
)
from .efun import BOTTOM, TOP, EnergyFunction, affine, bottom_function, identity, validate
from .vsem import NEVER, ThresholdTest

__version__ = "0.1.0"
