"""Winning conditions and their exact evaluation on ultimately periodic plays.

Qualitative objectives decide win/lose; the quantitative evaluators assign
an extended natural.  All evaluators work on lassos and are independent of
how the lasso is written (unrolling or rotating the loop never changes the
result), because they only ever inspect the infinite play the lasso denotes.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Mapping, Union

from .arena import Arena, Edge, Lasso, Vertex
from .errors import InputError
from .extnat import INF, ExtNat


@dataclass(frozen=True)
class Safety:
    """Every visited vertex must lie in ``safe``."""
    safe: frozenset

    def __post_init__(self):
        object.__setattr__(self, "safe", frozenset(self.safe))


@dataclass(frozen=True)
class Buchi:
    """Some vertex of ``accept`` must be visited infinitely often."""
    accept: frozenset

    def __post_init__(self):
        object.__setattr__(self, "accept", frozenset(self.accept))


@dataclass(frozen=True)
class CoBuchi:
    """Vertices of ``avoid`` may be visited only finitely often."""
    avoid: frozenset

    def __post_init__(self):
        object.__setattr__(self, "avoid", frozenset(self.avoid))


@dataclass(frozen=True)
class RequestResponse:
    """Every visit to a request set must be followed (or accompanied) by a
    visit to the matching response set."""
    pairs: tuple  # of (request: frozenset, response: frozenset)

    def __post_init__(self):
        pairs = tuple((frozenset(q), frozenset(p)) for q, p in self.pairs)
        if not pairs:
            raise InputError("request-response needs at least one pair")
        object.__setattr__(self, "pairs", pairs)

    @property
    def d(self) -> int:
        return len(self.pairs)


@dataclass(frozen=True)
class SafetyAndCoBuchi:
    """Stay inside ``safe`` forever and visit ``avoid`` only finitely often."""
    safe: frozenset
    avoid: frozenset

    def __post_init__(self):
        object.__setattr__(self, "safe", frozenset(self.safe))
        object.__setattr__(self, "avoid", frozenset(self.avoid))


Objective = Union[Safety, Buchi, CoBuchi, RequestResponse, SafetyAndCoBuchi]

RankFunction = Dict[Vertex, int]


def validate_objective(obj: Objective, arena: Arena) -> None:
    vs = set(arena.vertices)

    def chk(s, what):
        extra = frozenset(s) - vs
        if extra:
            raise InputError(f"{what} mentions unknown vertices: {sorted(extra)!r}")

    if isinstance(obj, Safety):
        chk(obj.safe, "safe set")
    elif isinstance(obj, Buchi):
        chk(obj.accept, "accepting set")
    elif isinstance(obj, CoBuchi):
        chk(obj.avoid, "avoid set")
    elif isinstance(obj, RequestResponse):
        for c, (q, p) in enumerate(obj.pairs):
            chk(q, f"request set {c}")
            chk(p, f"response set {c}")
    elif isinstance(obj, SafetyAndCoBuchi):
        chk(obj.safe, "safe set")
        chk(obj.avoid, "avoid set")
    else:
        raise InputError(f"unknown objective {obj!r}")


def restrict_objective(obj: Objective, keep) -> Objective:
    """The same condition over a sub-arena's vertex set."""
    k = frozenset(keep)
    if isinstance(obj, Safety):
        return Safety(obj.safe & k)
    if isinstance(obj, Buchi):
        return Buchi(obj.accept & k)
    if isinstance(obj, CoBuchi):
        return CoBuchi(obj.avoid & k)
    if isinstance(obj, RequestResponse):
        return RequestResponse(tuple((q & k, p & k) for q, p in obj.pairs))
    if isinstance(obj, SafetyAndCoBuchi):
        return SafetyAndCoBuchi(obj.safe & k, obj.avoid & k)
    raise InputError(f"unknown objective {obj!r}")


def relabel_objective(obj: Objective, fn) -> Objective:
    """The same condition with every vertex renamed through ``fn``."""
    if isinstance(obj, Safety):
        return Safety(frozenset(fn(v) for v in obj.safe))
    if isinstance(obj, Buchi):
        return Buchi(frozenset(fn(v) for v in obj.accept))
    if isinstance(obj, CoBuchi):
        return CoBuchi(frozenset(fn(v) for v in obj.avoid))
    if isinstance(obj, RequestResponse):
        return RequestResponse(tuple(
            (frozenset(fn(v) for v in q), frozenset(fn(v) for v in p))
            for q, p in obj.pairs))
    if isinstance(obj, SafetyAndCoBuchi):
        return SafetyAndCoBuchi(frozenset(fn(v) for v in obj.safe),
                                frozenset(fn(v) for v in obj.avoid))
    raise InputError(f"unknown objective {obj!r}")


def validate_rank(rk: Mapping[Vertex, int], arena: Arena) -> None:
    for v in arena.vertices:
        r = rk.get(v)
        if not isinstance(r, int) or isinstance(r, bool) or r < 0:
            raise InputError(f"rank of {v!r} must be a non-negative integer, got {r!r}")


@dataclass(frozen=True)
class CostRRSpec:
    """Request-response pairs plus per-pair edge costs.

    ``edge_costs`` maps (pair index, edge) to a natural; unlisted entries
    cost zero, which makes the map total over pairs and edges.  ``max_cost``
    is the largest cost assigned to any edge (0 when all costs vanish).
    """

    pairs: tuple
    edge_costs: dict
    max_cost: int = field(init=False, compare=False)

    def __post_init__(self):
        pairs = tuple((frozenset(q), frozenset(p)) for q, p in self.pairs)
        if not pairs:
            raise InputError("cost spec needs at least one request-response pair")
        costs = {}
        for (c, e), w in self.edge_costs.items():
            if not (0 <= c < len(pairs)):
                raise InputError(f"cost entry for unknown pair index {c}")
            if not isinstance(w, int) or isinstance(w, bool) or w < 0:
                raise InputError(f"edge cost must be a natural number, got {w!r}")
            if w:
                costs[(c, e)] = w
        object.__setattr__(self, "pairs", pairs)
        object.__setattr__(self, "edge_costs", costs)
        object.__setattr__(self, "max_cost", max(costs.values(), default=0))

    @property
    def d(self) -> int:
        return len(self.pairs)

    def cost(self, c: int, edge: Edge) -> int:
        return self.edge_costs.get((c, edge), 0)

    def rr_objective(self) -> RequestResponse:
        return RequestResponse(self.pairs)


def eval_qualitative(obj: Objective, lasso: Lasso) -> bool:
    """Does the infinite play denoted by the lasso satisfy the objective?"""
    everything = lasso.vertices()
    loop_set = frozenset(lasso.loop)
    if isinstance(obj, Safety):
        return everything <= obj.safe
    if isinstance(obj, Buchi):
        return bool(loop_set & obj.accept)
    if isinstance(obj, CoBuchi):
        return not (loop_set & obj.avoid)
    if isinstance(obj, SafetyAndCoBuchi):
        return everything <= obj.safe and not (loop_set & obj.avoid)
    if isinstance(obj, RequestResponse):
        # Positions in prefix plus one loop copy are representative; an
        # answer, if any, shows up within one further loop unrolling.
        window = lasso.prefix + lasso.loop + lasso.loop
        horizon = len(lasso.prefix) + len(lasso.loop)
        for q, p in obj.pairs:
            for j in range(horizon):
                if window[j] in q and not any(window[i] in p for i in range(j, len(window))):
                    return False
        return True
    raise InputError(f"unknown objective {obj!r}")


def cost_of_response(spec: CostRRSpec, lasso: Lasso, position: int, pair: int) -> ExtNat:
    """Cost charged to the request of ``pair`` opened at ``position``.

    Zero at non-request positions.  Otherwise the summed edge costs up to
    the earliest answering position; an answer at the request position
    itself costs zero (empty sum).  Unanswerable requests cost ``INF``,
    detected within the prefix plus two loop unrollings, which is where an
    answer must appear if it ever does.
    """
    if not (0 <= position < len(lasso.prefix) + len(lasso.loop)):
        raise InputError("position must index the prefix or the first loop copy")
    q, p = spec.pairs[pair]
    if lasso.vertex_at(position) not in q:
        return 0
    window = lasso.prefix + lasso.loop + lasso.loop
    total = 0
    for j in range(position, len(window)):
        if window[j] in p:
            return total
        if j + 1 < len(window):
            total += spec.cost(pair, (window[j], window[j + 1]))
    return INF


def cost_rr_lasso(spec: CostRRSpec, lasso: Lasso) -> ExtNat:
    """Largest cost any request of the play incurs.

    Positions beyond the first loop copy repeat an earlier loop position
    with an identical suffix, hence identical cost of response, so the
    supremum is a maximum over the prefix plus one loop period.
    """
    worst: ExtNat = 0
    for j in range(len(lasso.prefix) + len(lasso.loop)):
        for c in range(spec.d):
            worst = max(worst, cost_of_response(spec, lasso, j, c))
    return worst


def rank_cost_lasso(rk: Mapping[Vertex, int], obj: Objective, mode: str,
                    lasso: Lasso) -> ExtNat:
    """Cost of a play in a vertex-ranked game: highest rank ever visited
    (``sup``) or visited infinitely often (``lim``), infinite on plays that
    miss the qualitative objective."""
    if mode not in ("sup", "lim"):
        raise InputError(f"mode must be 'sup' or 'lim', got {mode!r}")
    if not eval_qualitative(obj, lasso):
        return INF
    if mode == "sup":
        return max(rk[v] for v in lasso.spine())
    return max(rk[v] for v in lasso.loop)
