"""A small shelf of named machines used across tests, demos and the CLI.

All six are standard fixtures: TRIV is the one-state one-letter machine,
ALESHIN and BABY are the Aleshin and Baby-Aleshin three-state automata,
SIX is a bireversible six-state two-letter machine generating an infinite
group, SWAP and CYC are two-state two-letter toys.
"""

from .machine import MealyMachine

# one state, one letter, loop a|a
TRIV = MealyMachine(("x",), ("a",), [[0]], [[0]])

# Aleshin automaton: states x y z, letters a b; x and y swap the letters,
# z copies them; generates a free group of rank 3.
ALESHIN = MealyMachine(
    ("x", "y", "z"), ("a", "b"),
    [[2, 1, 0],   # delta on a: x->z, y->y, z->x
     [1, 2, 0]],  # delta on b: x->y, y->z, z->x
    [[1, 0],      # rho_x: swap
     [1, 0],      # rho_y: swap
     [0, 1]],     # rho_z: id
)

# Baby-Aleshin automaton: same shape, only x swaps the letters;
# generates the free product Z/2 * Z/2 * Z/2.
BABY = MealyMachine(
    ("x", "y", "z"), ("a", "b"),
    [[2, 0, 1],   # delta on a: x->z, y->x, z->y
     [2, 1, 0]],  # delta on b: x->z, y->y, z->x
    [[1, 0],
     [0, 1],
     [0, 1]],
)

# Bireversible six-state machine on letters i j whose group is infinite;
# its dual is two-state and not md-trivial.
SIX = MealyMachine(
    ("1", "2", "3", "4", "5", "6"), ("i", "j"),
    [[2, 3, 4, 1, 5, 0],   # delta on i: 1->3, 2->4, 3->5, 4->2, 5->6, 6->1
     [1, 3, 4, 5, 2, 0]],  # delta on j: 1->2, 2->4, 3->5, 4->6, 5->3, 6->1
    [[1, 0],
     [1, 0],
     [0, 1],
     [1, 0],
     [1, 0],
     [0, 1]],
)

# Both letters exchange the two states, productions are the identity;
# the generated semigroup is trivial but the connection degree is 1.
SWAP = MealyMachine(
    ("x", "y"), ("a", "b"),
    [[1, 0],
     [1, 0]],
    [[0, 1],
     [0, 1]],
)

# Letter a exchanges the states, letter b fixes them; state x swaps the
# letters, state y copies them.
CYC = MealyMachine(
    ("x", "y"), ("a", "b"),
    [[1, 0],
     [0, 1]],
    [[1, 0],
     [0, 1]],
)

BY_NAME = {
    "TRIV": TRIV,
    "ALESHIN": ALESHIN,
    "BABY": BABY,
    "SIX": SIX,
    "SWAP": SWAP,
    "CYC": CYC,
}
