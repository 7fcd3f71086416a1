"""Request-response games with costs.

Plays are charged the worst summed edge cost between opening a request
and its earliest answer; Player 0 minimizes that worst cost.  Solving
goes through a single quantitative reduction: a per-pair cost counter
memory turns the game into a vertex-ranked sup game over request-response
pairs, which bounded solving and binary-search optimization then probe
without ever rebuilding the reduction.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Dict, Optional, Tuple

from .arena import Arena, Edge, Vertex
from .errors import InputError
from .extnat import INF, ExtNat
from .memory import MemoryStructure, FiniteStateStrategy
from .objectives import CostRRSpec, RequestResponse, cost_rr_lasso, validate_objective
from .quantred import Cap, QuantReduction, lift_strategy
from .ranked import OptimizeResult, RankedGame, solve_sup_with_bound

IDLE = ("idle",)

# Strategy tables beyond this many state pairs are tabulated only on the
# moves the strategy itself allows; below it the full product is kept.
_TRIM_THRESHOLD = 100_000


@dataclass(frozen=True)
class CostRRGame:
    """Arena plus request-response pairs with per-pair edge costs."""

    arena: Arena
    spec: CostRRSpec

    def __post_init__(self):
        validate_objective(self.spec.rr_objective(), self.arena)
        for (_c, e) in self.spec.edge_costs:
            if e not in self.arena.edges:
                raise InputError(f"cost assigned to missing edge {e!r}")

    def lasso_cost(self, lasso) -> ExtNat:
        return cost_rr_lasso(self.spec, lasso)

    def relabeled(self, fn) -> "CostRRGame":
        from .arena import relabel

        pairs = tuple((frozenset(fn(v) for v in q), frozenset(fn(v) for v in p))
                      for q, p in self.spec.pairs)
        costs = {(c, (fn(e[0]), fn(e[1]))): w
                 for (c, e), w in self.spec.edge_costs.items()}
        return CostRRGame(relabel(self.arena, fn), CostRRSpec(pairs, costs))


def cap_bound(game: CostRRGame) -> int:
    """Upper bound on the optimum whenever it is finite:
    pairs * 2^pairs * vertices * largest edge cost."""
    d = game.spec.d
    if d > 62:
        raise InputError(f"{d} request-response pairs is beyond this solver's range")
    return d * (2 ** d) * len(game.arena) * game.spec.max_cost


def counter_seed(spec: CostRRSpec, vertex: Vertex) -> tuple:
    """Counter vector after the play's first visit, to ``vertex``."""
    out = []
    for q, p in spec.pairs:
        if vertex in q:
            out.append(("ans", 0) if vertex in p else ("act", 0))
        else:
            out.append(IDLE)
    return tuple(out)


def counter_step(spec: CostRRSpec, cap: int, state: tuple, edge: Edge) -> tuple:
    """Advance the counter vector along one edge.

    Per pair: last step's answer marker ages out, an accumulating counter
    adds the edge's cost (saturating at ``cap``), an answered counter
    freezes its peak in an answer marker, and a request arrival starts an
    idle counter at zero.  A vertex that requests and answers at once
    yields an immediately answered zero counter; a pending counter absorbs
    new requests, since the older request always costs at least as much.
    """
    entered = edge[1]
    out = []
    for c, (q, p) in enumerate(spec.pairs):
        st = state[c]
        if st[0] == "ans":
            st = IDLE
        if st[0] == "act":
            st = ("act", min(st[1] + spec.cost(c, edge), cap))
        if entered in p and st[0] == "act":
            st = ("ans", st[1])
        if entered in q and st == IDLE:
            st = ("ans", 0) if entered in p else ("act", 0)
        out.append(st)
    return tuple(out)


def counter_value(status: tuple) -> int:
    return 0 if status == IDLE else status[1]


def counter_pending(status: tuple) -> bool:
    return status[0] == "act"


def build_reduction(game: CostRRGame, b: int) -> QuantReduction:
    """Reduce to a vertex-ranked sup request-response game at parameter b+1.

    The memory tracks, per pair, the cost accumulated by the oldest open
    request, saturating at b+1; the rank of a product vertex is the largest
    tracked value.  Plays costing at most b keep their exact cost as the
    target's sup rank; plays costing more are pushed to at least b+1.
    Memory and product are built together over the reachable part.
    """
    if b < 0:
        raise InputError("reduction bound must be non-negative")
    spec, arena = game.spec, game.arena
    cap = b + 1
    start = (arena.initial, counter_seed(spec, arena.initial))
    frontier = deque([start])
    seen = {start}
    states = {start[1]}
    update: Dict[Tuple[tuple, Edge], tuple] = {}
    edges = []
    while frontier:
        v, s = frontier.popleft()
        for w in arena.succ[v]:
            e = (v, w)
            key = (s, e)
            t = update.get(key)
            if t is None:
                t = counter_step(spec, cap, s, e)
                update[key] = t
                states.add(t)
            node = (w, t)
            edges.append(((v, s), node))
            if node not in seen:
                seen.add(node)
                frontier.append(node)
    memory = MemoryStructure(tuple(sorted(states)), start[1], update)
    owner = {pv: arena.owner[pv[0]] for pv in seen}
    product = Arena(tuple(sorted(seen)), owner, frozenset(edges), start)
    ranks = {pv: max(counter_value(st) for st in pv[1]) for pv in product.vertices}
    lifted = tuple(
        (frozenset(pv for pv in product.vertices if pv[0] in q),
         frozenset(pv for pv in product.vertices if pv[0] in p))
        for q, p in spec.pairs)
    target = RankedGame(product, RequestResponse(lifted), ranks, "sup")
    return QuantReduction(memory, Cap(b + 1), b + 1, game, target)


def _lift(r: QuantReduction, strat: FiniteStateStrategy) -> FiniteStateStrategy:
    big = len(r.memory) * len(strat.memory) > _TRIM_THRESHOLD
    return lift_strategy(r, strat, trim=big)


def solve_with_bound(game: CostRRGame, b: int,
                     reduction: Optional[QuantReduction] = None
                     ) -> Tuple[int, FiniteStateStrategy]:
    """Winner at bound b and a strategy witnessing the verdict.

    The reduction is built once at the cap, so repeated calls (and the
    optimizer) share it; bounds beyond the cap are clamped, which is sound
    because a finitely winnable game is winnable within the cap.
    """
    if b < 0:
        raise InputError("bound must be non-negative")
    cap = cap_bound(game)
    r = reduction if reduction is not None else build_reduction(game, cap)
    res = solve_sup_with_bound(r.target, min(b, cap))
    if r.target.arena.initial in res.region_0:
        return 0, _lift(r, res.strategy_0)
    return 1, _lift(r, res.strategy_1)


def optimize(game: CostRRGame) -> OptimizeResult:
    """Least worst-case response cost Player 0 can guarantee.

    One reduction build at the cap, then binary search on the bound; the
    per-bound question is monotone.  Cost ``INF`` (Player 1 wins) comes
    with his witnessing strategy instead.
    """
    cap = cap_bound(game)
    r = build_reduction(game, cap)
    pv0 = r.target.arena.initial

    def probe(bound: int):
        return solve_sup_with_bound(r.target, bound)

    top = probe(cap)
    if pv0 not in top.region_0:
        return OptimizeResult(INF, _lift(r, top.strategy_1))
    lo, hi = 0, cap
    best = top
    while lo < hi:
        mid = (lo + hi) // 2
        res = probe(mid)
        if pv0 in res.region_0:
            hi = mid
            best = res
        else:
            lo = mid + 1
    return OptimizeResult(hi, _lift(r, best.strategy_0))
