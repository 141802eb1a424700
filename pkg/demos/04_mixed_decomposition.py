"""
Decomposing a conditional mixed strategy
========================================

A conditional mixed strategy that takes finitely many values is a mixture of
pure conditional strategies. The mixture is the product of the per-cell
distributions.
"""

from fractions import Fraction

from condeq.mixed import PartitionSpec, SimpleConditionalMixedStrategy, decompose, phi_evaluate


def show(vec):
    return "(" + ", ".join(str(x) for x in vec) + ")"


# Play heads and tails evenly when the opponent is unlikely to play heads,
# and heads for sure otherwise.
half = Fraction(1, 2)
partition = PartitionSpec(("low", "high"), membership=lambda q: "low" if q[0][0] < half else "high")
sigma = SimpleConditionalMixedStrategy(0, ("H", "T"), partition, ((half, half), (1, 0)))

print(show(sigma(((Fraction(1, 3), Fraction(2, 3)),))))

mu = decompose(sigma)
for atom, weight in mu.items():
    print("/".join(sigma.actions[a] for a in atom), weight)

# Mixing the pure tables gives back the original strategy, cell by cell.
for cell in partition.labels:
    print(cell, show(phi_evaluate(mu, cell)), show(sigma.at_cell(cell)))
