"""Simple conditional mixed strategies and their pure decomposition.

A simple conditional mixed strategy takes finitely many values, so it is a
distribution ``mu_l`` over the owner's actions on each cell ``l`` of a finite
partition of the opponents' mixed profiles. The product of the ``mu_l`` is a
measure over pure tables ``cell -> action`` whose per-cell marginals give back
the strategy.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Hashable, Sequence

from .deviation import default_budget
from .errors import ArityMismatch, BudgetExceeded, ParseError, UnknownCell
from .game import as_rational

DECOMPOSE_BUDGET = 10**6


@dataclass(frozen=True)
class PartitionSpec:
    """Finitely many labelled cells.

    ``membership`` maps an opponent mixed profile (one probability vector per
    opponent) to a cell label; it is optional because everything here works
    at the level of cells.
    """

    labels: tuple[Hashable, ...]
    membership: Callable[[Sequence[Sequence[Fraction]]], Hashable] | None = None

    def __post_init__(self):
        object.__setattr__(self, "labels", tuple(self.labels))
        if not self.labels:
            raise ArityMismatch("a partition needs at least one cell")
        if len(set(self.labels)) != len(self.labels):
            raise ArityMismatch("duplicate cell labels")

    def position(self, label) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise UnknownCell(label) from None

    def cell_of(self, q) -> Hashable:
        if self.membership is None:
            raise ValueError("partition has no membership function")
        label = self.membership(q)
        self.position(label)
        return label


def _distribution(values, size: int) -> tuple[Fraction, ...]:
    dist = tuple(as_rational(x) for x in values)
    if len(dist) != size:
        raise ArityMismatch(f"distribution of length {len(dist)} over {size} actions")
    if any(x < 0 for x in dist) or sum(dist) != 1:
        raise ParseError(f"not a probability distribution: {[str(x) for x in dist]}")
    return dist


@dataclass(frozen=True)
class SimpleConditionalMixedStrategy:
    owner: int
    actions: tuple[str, ...]
    partition: PartitionSpec
    distributions: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "actions", tuple(self.actions))
        if len(self.distributions) != len(self.partition.labels):
            raise ArityMismatch("one distribution per cell required")
        dists = tuple(_distribution(d, len(self.actions)) for d in self.distributions)
        object.__setattr__(self, "distributions", dists)

    @property
    def cells(self) -> int:
        return len(self.partition.labels)

    def at_cell(self, label) -> tuple[Fraction, ...]:
        return self.distributions[self.partition.position(label)]

    def __call__(self, q) -> tuple[Fraction, ...]:
        return self.at_cell(self.partition.cell_of(q))


@dataclass(frozen=True)
class FiniteSupportMeasure:
    """Weights on pure tables; ``atoms[t][l]`` is the action of table ``t`` on cell ``l``."""

    actions: tuple[str, ...]
    partition: PartitionSpec
    atoms: tuple[tuple[int, ...], ...]
    weights: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.atoms) != len(self.weights):
            raise ArityMismatch("one weight per atom required")
        if any(w < 0 for w in self.weights) or sum(self.weights) != 1:
            raise ParseError("weights must be nonnegative and sum to 1")
        for atom in self.atoms:
            if len(atom) != len(self.partition.labels):
                raise ArityMismatch("atom length must equal the number of cells")

    def items(self):
        return zip(self.atoms, self.weights)


def decompose(
    sigma: SimpleConditionalMixedStrategy, prune: bool = False, budget: int | None = None
) -> FiniteSupportMeasure:
    """Product measure over tables: weight of ``(a_1..a_L)`` is ``prod_l mu_l(a_l)``.

    Zero-weight atoms are kept unless ``prune`` is set, so the support is the
    whole product ``A_i^L``.
    """
    budget = default_budget(DECOMPOSE_BUDGET) if budget is None else budget
    size = len(sigma.actions) ** sigma.cells
    if size > budget:
        raise BudgetExceeded(size, budget)
    atoms, weights = [], []
    for atom in itertools.product(range(len(sigma.actions)), repeat=sigma.cells):
        w = math.prod((sigma.distributions[l][a] for l, a in enumerate(atom)), start=Fraction(1))
        if prune and w == 0:
            continue
        atoms.append(atom)
        weights.append(w)
    return FiniteSupportMeasure(sigma.actions, sigma.partition, tuple(atoms), tuple(weights))


def phi_evaluate(mu: FiniteSupportMeasure, cell) -> tuple[Fraction, ...]:
    """Mixture of the atoms' point masses at ``cell``."""
    l = mu.partition.position(cell)
    out = [Fraction(0)] * len(mu.actions)
    for atom, w in mu.items():
        out[atom[l]] += w
    return tuple(out)


def phi(mu: FiniteSupportMeasure, owner: int = 0) -> SimpleConditionalMixedStrategy:
    """The conditional mixed strategy induced by ``mu``."""
    return SimpleConditionalMixedStrategy(
        owner, mu.actions, mu.partition,
        tuple(phi_evaluate(mu, label) for label in mu.partition.labels),
    )


def verify_roundtrip(sigma: SimpleConditionalMixedStrategy) -> bool:
    mu = decompose(sigma)
    return all(
        phi_evaluate(mu, label) == sigma.at_cell(label) for label in sigma.partition.labels
    )
