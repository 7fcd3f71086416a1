"""Fault-resilient safety synthesis.

Faults let the environment overrule a move of Player 0: at one of her
vertices the play may be diverted along a fault pair instead of her
choice.  Per vertex, ``val`` is the least number of faults the opponent
needs to force the play out of the safe set; ranking vertices by
``|V| - val`` turns maximizing fault tolerance into minimizing a
vertex-ranked sup cost (or limsup cost, for tolerance after a start-up
phase) over the fault-free arena.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Tuple

from .arena import Arena, Vertex, attractor
from .errors import InputError
from .extnat import INF, ExtNat, is_finite
from .memory import FiniteStateStrategy
from .objectives import Safety
from .qualsolve import solve_safety
from .ranked import RankedGame, optimize as optimize_ranked


@dataclass(frozen=True)
class FaultArena:
    """Arena with a safe set and fault pairs rooted at Player 0 vertices.

    Fault targets need not be edges of the arena; the regular game is
    always played on the fault-free graph.
    """

    arena: Arena
    faults: frozenset
    safe: frozenset

    def __post_init__(self):
        object.__setattr__(self, "faults", frozenset(self.faults))
        object.__setattr__(self, "safe", frozenset(self.safe))
        vs = set(self.arena.vertices)
        if not self.safe <= vs:
            raise InputError("safe set mentions unknown vertices")
        for u, v in self.faults:
            if u not in vs or v not in vs:
                raise InputError(f"fault ({u!r}, {v!r}) mentions an unknown vertex")
            if self.arena.owner[u] != 0:
                raise InputError(f"fault source {u!r} must be owned by Player 0")

    def fault_targets(self, v: Vertex) -> Tuple[Vertex, ...]:
        return tuple(sorted(w for (u, w) in self.faults if u == v))


def compute_val(fa: FaultArena) -> Dict[Vertex, ExtNat]:
    """Minimal number of faults the opponent needs, per vertex.

    Level 0 is his plain attractor to the unsafe set; each further level
    adds the vertices whose fault pairs reach the previous level and
    attracts again.  The fixpoint settles within |V| rounds.  Correctness
    is pinned to the budget-game oracle below, which the test suite holds
    this function to.
    """
    arena = fa.arena
    unsafe = frozenset(arena.vertices) - fa.safe
    level, _ = attractor(arena, 1, unsafe)
    val = {v: (0 if v in level else INF) for v in arena.vertices}
    for k in range(1, len(arena) + 1):
        fault_pre = {u for (u, w) in fa.faults if w in level}
        nxt, _ = attractor(arena, 1, level | fault_pre)
        if nxt == level:
            break
        for v in nxt - level:
            val[v] = k
        level = nxt
    return val


def resilience_rank(fa: FaultArena) -> Dict[Vertex, int]:
    """Rank encoding of ``val``: |V| - val on vertices with finite value,
    zero elsewhere."""
    n = len(fa.arena)
    val = compute_val(fa)
    return {v: (n - val[v] if is_finite(val[v]) else 0) for v in fa.arena.vertices}


@dataclass(frozen=True)
class ResilienceResult:
    val: dict
    bound: ExtNat
    resilience: ExtNat
    strategy: FiniteStateStrategy

    @property
    def player1_wins(self) -> bool:
        return not is_finite(self.bound)


def max_resilience(fa: FaultArena, mode: str = "sup") -> ResilienceResult:
    """Most faults a single strategy can tolerate from the initial vertex.

    Optimizes the rank-encoded game on the fault-free arena.  A strategy
    that tolerates m faults keeps every play with fewer than m faults
    safe; with the optimal bound b this gives tolerance |V| - b, and
    bound 0 means the play never leaves the region the opponent cannot
    crack with any number of faults, so tolerance is unbounded.  In lim
    mode the tolerance applies after a finite start-up phase.
    """
    game = RankedGame(fa.arena, Safety(fa.safe), resilience_rank(fa), mode)
    res = optimize_ranked(game)
    val = compute_val(fa)
    if not is_finite(res.cost):
        return ResilienceResult(val, INF, 0, res.strategy)
    if res.cost == 0:
        return ResilienceResult(val, 0, INF, res.strategy)
    return ResilienceResult(val, res.cost, len(fa.arena) - res.cost, res.strategy)


def budget_expansion(fa: FaultArena, budget: int) -> Arena:
    """Safety game in which faults are explicit moves.

    States carry the remaining fault budget.  Before Player 0 moves, the
    opponent may fire any fault pair from the current vertex, paying one
    budget unit; a gate vertex owned by Player 1 models that choice.
    """
    arena = fa.arena
    owner = {}
    edges = []
    for v in arena.vertices:
        fts = fa.fault_targets(v)
        for r in range(budget + 1):
            gate = ("chk", v, r)
            move = ("mov", v, r)
            owner[gate] = 1
            owner[move] = arena.owner[v]
            edges.append((gate, move))
            if r > 0:
                for w in fts:
                    edges.append((gate, ("chk", w, r - 1)))
            for w in arena.succ[v]:
                edges.append((move, ("chk", w, r)))
    return Arena(tuple(owner.keys()), owner, frozenset(edges),
                 ("chk", arena.initial, budget))


def budget_oracle(fa: FaultArena, vertex: Vertex, budget: int) -> bool:
    """Can the opponent force the play unsafe from ``vertex`` using at
    most ``budget`` faults?  Solved on the explicit budget expansion,
    independently of the fixpoint in :func:`compute_val`."""
    if vertex not in set(fa.arena.vertices):
        raise InputError(f"unknown vertex {vertex!r}")
    exp = budget_expansion(fa, budget)
    safe = frozenset(pv for pv in exp.vertices if pv[1] in fa.safe)
    res = solve_safety(exp, safe)
    return ("chk", vertex, budget) in res.region_1
