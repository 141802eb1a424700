"""Backtracking over table entries subject to point-exclusion clauses.

A variable is one table entry ``(player, a_minus_player)``. A clause lists
``(variable, forbidden)`` literals, one per player who could break a given
action profile; a literal is *killing* once its variable holds any other
value. A clause is satisfied when at least ``need`` literals kill, or when a
single killing literal sits at a position listed in ``solo``.
"""

from __future__ import annotations

from typing import Hashable, NamedTuple


class Clause(NamedTuple):
    literals: tuple[tuple[Hashable, int], ...]
    need: int = 1
    solo: frozenset = frozenset()


class NodeLimit(Exception):
    pass


def _status(clause: Clause, assignment):
    killers, open_pos = [], []
    for pos, (var, forbidden) in enumerate(clause.literals):
        value = assignment.get(var)
        if value is None:
            open_pos.append(pos)
        elif value != forbidden:
            killers.append(pos)
    k = len(killers)
    if k >= clause.need or (k == 1 and killers[0] in clause.solo):
        return True, open_pos
    possible = (
        k + len(open_pos) >= clause.need
        or (k == 1 and killers[0] in clause.solo)
        or (k == 0 and any(p in clause.solo for p in open_pos))
    )
    return (None if possible else False), open_pos


def solve(clauses, assignment: dict, domains: dict, node_limit: int | None = None) -> dict | None:
    """Extend ``assignment`` until every clause holds; ``None`` if impossible.

    Branches on the open clause with the fewest unassigned literals, trying
    values in ascending order. Raises :class:`NodeLimit` past ``node_limit``
    visited nodes.
    """
    nodes = [0]

    def recurse():
        nodes[0] += 1
        if node_limit is not None and nodes[0] > node_limit:
            raise NodeLimit(nodes[0])
        pick, pick_open = None, None
        for clause in clauses:
            ok, open_pos = _status(clause, assignment)
            if ok:
                continue
            if ok is False:
                return False
            if pick is None or len(open_pos) < len(pick_open):
                pick, pick_open = clause, open_pos
        if pick is None:
            return True
        for pos in pick_open:
            var, forbidden = pick.literals[pos]
            for value in range(domains[var]):
                if value == forbidden:
                    continue
                assignment[var] = value
                if recurse():
                    return True
                del assignment[var]
        return False

    return assignment if recurse() else None
