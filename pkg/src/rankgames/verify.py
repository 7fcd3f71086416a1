"""Strategy certification, brute-force solving oracles, fault simulation.

Everything here decides universal path properties exactly, by cycle
analysis over strongly connected components of strategy-restricted
product graphs.  Certification answers "does every play consistent with
this strategy meet the claim"; refutations come with a concrete
ultimately periodic counterexample play, consistent with the strategy up
to and including the violating visit.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from typing import Callable, Dict, Iterable, List, Optional, Tuple

from .arena import Arena, Lasso, Vertex
from .errors import CapabilityError, CapacityError, InputError
from .extnat import INF, ExtNat
from .memory import FiniteStateStrategy, MemoryStructure, expand
from .objectives import (Buchi, CoBuchi, CostRRSpec, Objective,
                         RequestResponse, Safety, SafetyAndCoBuchi)
from .qualsolve import SolveResult, rr_open_update
from .ranked import RankedCondition
from .resilience import FaultArena
from .rrcost import (CostRRGame, counter_pending, counter_seed, counter_step,
                     counter_value)


@dataclass(frozen=True)
class Verdict:
    certified: bool
    witness: Optional[Lasso] = None
    message: str = ""

    def __bool__(self) -> bool:
        return self.certified


# ---------------------------------------------------------------------------
# graph analyses; nodes are opaque, succ maps node -> tuple of nodes

def _sccs(nodes, succ):
    """Strongly connected components, iterative Tarjan."""
    index: Dict = {}
    low: Dict = {}
    onstack = set()
    stack: List = []
    comps: List[List] = []
    counter = 0
    for root in nodes:
        if root in index:
            continue
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        onstack.add(root)
        work = [(root, iter(succ.get(root, ())))]
        while work:
            node, it = work[-1]
            advanced = False
            for w in it:
                if w not in index:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    onstack.add(w)
                    work.append((w, iter(succ.get(w, ()))))
                    advanced = True
                    break
                if w in onstack:
                    low[node] = min(low[node], index[w])
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[node])
            if low[node] == index[node]:
                comp = []
                while True:
                    w = stack.pop()
                    onstack.discard(w)
                    comp.append(w)
                    if w == node:
                        break
                comps.append(comp)
    return comps


def _subgraph(succ, keep) -> Dict:
    return {n: tuple(w for w in ws if w in keep)
            for n, ws in succ.items() if n in keep}


def _loop_comps(succ, region) -> List[set]:
    """SCCs inside the region that carry at least one edge."""
    sub = _subgraph(succ, region)
    out = []
    for comp in _sccs(sorted(sub), sub):
        if len(comp) > 1 or comp[0] in sub.get(comp[0], ()):
            out.append(set(comp))
    return out


def _backward_closure(succ, cores: set, allowed: Optional[set] = None) -> set:
    """Nodes from which some path, staying in ``allowed`` if given, reaches
    the cores.  Cores are assumed to lie inside ``allowed``."""
    pred: Dict = {}
    for n, ws in succ.items():
        if allowed is not None and n not in allowed:
            continue
        for w in ws:
            pred.setdefault(w, []).append(n)
    out = set(cores)
    queue = deque(out)
    while queue:
        n = queue.popleft()
        for p in pred.get(n, ()):
            if p not in out:
                out.add(p)
                queue.append(p)
    return out


def _bfs_path(succ, start, targets: set, allowed: Optional[set] = None) -> Optional[List]:
    """Shortest node path from start into ``targets``, start included."""
    if allowed is not None and start not in allowed and start not in targets:
        return None
    if start in targets:
        return [start]
    parent = {start: None}
    queue = deque([start])
    while queue:
        n = queue.popleft()
        for w in succ.get(n, ()):
            if w in parent:
                continue
            if w in targets:
                parent[w] = n
                path = [w]
                while parent[path[-1]] is not None:
                    path.append(parent[path[-1]])
                return list(reversed(path))
            if allowed is not None and w not in allowed:
                continue
            parent[w] = n
            queue.append(w)
    return None


def _walk_within(succ, region: set, source, target) -> List:
    """A nonempty path source -> target inside ``region``; with source equal
    to target this is a cycle."""
    if source == target:
        if target in succ.get(source, ()):
            return [source, target]
    parent = {source: None}
    queue = deque([source])
    while queue:
        n = queue.popleft()
        for w in succ.get(n, ()):
            if w not in region:
                continue
            if w == target:
                path = [w, n]
                while parent[path[-1]] is not None:
                    path.append(parent[path[-1]])
                return list(reversed(path))
            if w not in parent:
                parent[w] = n
                queue.append(w)
    raise InputError("internal error: strongly connected component is not connected")


def _closed_walk(succ, comp: set, entry, anchors: Iterable = ()) -> List:
    """Closed walk entry -> entry inside the component, visiting every
    anchor; returned without the final repetition of the entry."""
    walk = [entry]
    cur = entry
    for a in anchors:
        if a == cur:
            continue
        seg = _walk_within(succ, comp, cur, a)
        walk.extend(seg[1:])
        cur = a
    seg = _walk_within(succ, comp, cur, entry)
    walk.extend(seg[1:])
    return walk[:-1]


# ---------------------------------------------------------------------------
# the strategy-restricted product

def _product_graph(arena: Arena, strategy: FiniteStateStrategy, start: Vertex,
                   start_state, tracker, halt: Callable) -> Tuple[tuple, Dict]:
    kind, data = tracker
    if kind == "open":
        pairs = data
        t0 = rr_open_update(pairs, (), start)

        def step_t(t, e):
            return rr_open_update(pairs, t, e[1])
    elif kind == "counters":
        spec, cap = data
        t0 = counter_seed(spec, start)

        def step_t(t, e):
            return counter_step(spec, cap, t, e)
    else:
        t0 = None

        def step_t(t, e):
            return None

    root = (start, start_state, t0)
    succ: Dict = {}
    frontier = deque([root])
    seen = {root}
    while frontier:
        node = frontier.popleft()
        v, s, t = node
        if halt(node):
            succ[node] = ()
            continue
        if arena.owner[v] == strategy.owner:
            moves = (strategy.move(v, s),)
        else:
            moves = arena.succ[v]
        outs = []
        for w in moves:
            e = (v, w)
            child = (w, strategy.memory.step(s, e), step_t(t, e))
            outs.append(child)
            if child not in seen:
                seen.add(child)
                frontier.append(child)
        succ[node] = tuple(outs)
    return root, succ


def _reach_witness(arena: Arena, path_nodes: List) -> Lasso:
    """Path to a violating node, continued along first successors until a
    vertex repeats."""
    verts = [n[0] for n in path_nodes]
    walk = [verts[-1]]
    pos = {verts[-1]: 0}
    while True:
        nxt = arena.succ[walk[-1]][0]
        if nxt in pos:
            i = pos[nxt]
            return Lasso(tuple(verts[:-1] + walk[:i]), tuple(walk[i:]))
        pos[nxt] = len(walk)
        walk.append(nxt)


def _lasso_witness(path_nodes: List, loop_nodes: List) -> Lasso:
    return Lasso(tuple(n[0] for n in path_nodes[:-1]),
                 tuple(n[0] for n in loop_nodes))


# ---------------------------------------------------------------------------
# violation queries
#
# A query describes how a claim can fail on a restricted product:
#   - bad:    nodes whose mere visit sinks the claim (reach-style),
#   - loops:  families of (region, anchors_fn) whose internal cycles,
#             visiting one anchor batch, sink the claim (cycle-style),
#   - allowed: path constraint for reaching either, None when free.

@dataclass
class _Query:
    bad: set
    loops: List[Tuple[set, Callable]]
    allowed: Optional[set]


def _no_anchors(comp):
    return ()


def _one_of(marked: set):
    def pick(comp):
        hits = sorted(marked & comp)
        return (hits[0],) if hits else None  # no marked node: component unusable
    return pick


def _rr_closers(pending_of, d: int):
    def pick(comp):
        anchors = []
        for c in range(d):
            closed = sorted(n for n in comp if c not in pending_of(n))
            if not closed:
                return None  # component cannot answer pair c
            anchors.append(closed[0])
        return tuple(anchors)
    return pick


def _satisfaction_query(succ, nodes, obj: Objective, pending_of,
                        region: set, path_allowed: Optional[set]) -> _Query:
    """Where does a play exist that satisfies ``obj`` with its recurring
    part inside ``region`` and its prefix inside ``path_allowed``?"""
    if isinstance(obj, Safety):
        return _Query(set(), [(region, _no_anchors)], path_allowed)
    if isinstance(obj, Buchi):
        marked = {n for n in region if n[0] in obj.accept}
        return _Query(set(), [(region, _one_of(marked))], path_allowed)
    if isinstance(obj, CoBuchi):
        sub = {n for n in region if n[0] not in obj.avoid}
        return _Query(set(), [(sub, _no_anchors)], path_allowed)
    if isinstance(obj, SafetyAndCoBuchi):
        sub = {n for n in region if n[0] not in obj.avoid}
        return _Query(set(), [(sub, _no_anchors)], path_allowed)
    if isinstance(obj, RequestResponse):
        return _Query(set(), [(region, _rr_closers(pending_of, len(obj.pairs)))],
                      path_allowed)
    raise InputError(f"unknown objective {obj!r}")


def _violation_query(succ, nodes, obj: Objective, pending_of) -> _Query:
    """Where does a play exist that violates ``obj``?  (Player 0 claims.)"""
    all_nodes = set(nodes)
    if isinstance(obj, Safety):
        return _Query({n for n in nodes if n[0] not in obj.safe}, [], None)
    if isinstance(obj, Buchi):
        region = {n for n in nodes if n[0] not in obj.accept}
        return _Query(set(), [(region, _no_anchors)], None)
    if isinstance(obj, CoBuchi):
        marked = {n for n in nodes if n[0] in obj.avoid}
        return _Query(set(), [(all_nodes, _one_of(marked))], None)
    if isinstance(obj, SafetyAndCoBuchi):
        bad = {n for n in nodes if n[0] not in obj.safe}
        marked = {n for n in nodes if n[0] in obj.avoid}
        return _Query(bad, [(all_nodes, _one_of(marked))], None)
    if isinstance(obj, RequestResponse):
        loops = []
        for c in range(len(obj.pairs)):
            loops.append(({n for n in nodes if c in pending_of(n)}, _no_anchors))
        return _Query(set(), loops, None)
    raise InputError(f"unknown objective {obj!r}")


def _claim_failure_query(succ, nodes, cond, bnd, pending_of, rank_of,
                         player: int) -> _Query:
    """How the claim "every consistent play is good for ``player``" fails."""
    all_nodes = set(nodes)
    if isinstance(cond, RankedCondition):
        high = {n for n in nodes if rank_of(n) > bnd}
        low = all_nodes - high
        if player == 0:
            q = _violation_query(succ, nodes, cond.objective, pending_of)
            if cond.mode == "sup":
                return _Query(q.bad | high, q.loops, q.allowed)
            return _Query(q.bad, q.loops + [(all_nodes, _one_of(high))], q.allowed)
        # Player 1 claims cost above the bound; failing plays satisfy the
        # objective with low ranks: everywhere (sup) or eventually (lim).
        base = _path_constraint(nodes, cond.objective)
        if cond.mode == "sup":
            region = (base if base is not None else all_nodes) & low
            return _satisfaction_query(succ, nodes, cond.objective, pending_of,
                                       region, region)
        region = (base if base is not None else all_nodes) & low
        return _satisfaction_query(succ, nodes, cond.objective, pending_of,
                                   region, base)
    if player == 0:
        return _violation_query(succ, nodes, cond, pending_of)
    base = _path_constraint(nodes, cond)
    region = base if base is not None else all_nodes
    return _satisfaction_query(succ, nodes, cond, pending_of, region, base)


def _path_constraint(nodes, obj: Objective) -> Optional[set]:
    """Prefix constraint a satisfying play must obey (safety parts)."""
    if isinstance(obj, (Safety, SafetyAndCoBuchi)):
        return {n for n in nodes if n[0] in obj.safe}
    return None


def _query_failures(succ, query: _Query) -> set:
    """All start nodes from which the query finds a failing play."""
    cores = set(query.bad)
    for region, anchors_fn in query.loops:
        for comp in _loop_comps(succ, region):
            if anchors_fn(comp) is not None:
                cores |= comp
    return _backward_closure(succ, cores, query.allowed)


def _query_witness(arena, succ, root, query: _Query) -> Optional[Lasso]:
    path = _bfs_path(succ, root, query.bad, query.allowed)
    if path is not None:
        return _reach_witness(arena, path)
    for region, anchors_fn in query.loops:
        comps = [c for c in _loop_comps(succ, region) if anchors_fn(c) is not None]
        cores = set().union(*comps) if comps else set()
        path = _bfs_path(succ, root, cores, query.allowed)
        if path is None:
            continue
        entry = path[-1]
        comp = next(c for c in comps if entry in c)
        loop = _closed_walk(succ, comp, entry, anchors_fn(comp))
        return _lasso_witness(path, loop)
    return None


# ---------------------------------------------------------------------------
# claim normalization and the public checker

def _normalize_condition(condition, bound):
    if isinstance(condition, (Safety, Buchi, CoBuchi, RequestResponse, SafetyAndCoBuchi)):
        if bound is not None:
            raise InputError("qualitative objectives take no bound")
        return condition, None
    if isinstance(condition, RankedCondition):
        if not isinstance(bound, int) or isinstance(bound, bool) or bound < 0:
            raise InputError("rank-cost claims need a non-negative integer bound")
        return condition, bound
    if isinstance(condition, CostRRSpec):
        if not isinstance(bound, int) or isinstance(bound, bool) or bound < 0:
            raise InputError("response-cost claims need a non-negative integer bound")
        return condition, bound
    raise InputError(f"cannot verify condition {condition!r}")


def _decided(obj: Objective, bnd: Optional[int], rank_of, mode: Optional[str]):
    """Nodes where the play's verdict is settled and exploration may stop:
    safety breaches always; rank breaches only when the whole play's
    maximum matters (sup mode)."""
    safe = obj.safe if isinstance(obj, (Safety, SafetyAndCoBuchi)) else None

    def halt(node):
        if safe is not None and node[0] not in safe:
            return True
        if mode == "sup" and rank_of is not None and rank_of(node) > bnd:
            return True
        return False

    return halt


def verify_strategy(arena: Arena, condition, strategy: FiniteStateStrategy,
                    bound: Optional[int] = None, start: Optional[Vertex] = None,
                    start_state=None) -> Verdict:
    """Certify or refute a strategy against a claim.

    For Player 0 strategies the claim is that every consistent play
    satisfies the condition (at cost at most ``bound`` for quantitative
    ones); for Player 1 strategies, that every consistent play violates
    it (costs more than ``bound``).  Decided on the restricted product of
    arena, strategy memory, and whatever bookkeeping the condition needs:
    open requests for request-response claims, saturating cost counters
    for response-cost claims, nothing extra otherwise.
    """
    cond, bnd = _normalize_condition(condition, bound)
    start = arena.initial if start is None else start
    if start not in set(arena.vertices):
        raise InputError(f"unknown start vertex {start!r}")
    state = strategy.memory.initial if start_state is None else start_state

    if isinstance(cond, CostRRSpec):
        return _verify_cost_rr(arena, cond, strategy, bnd, start, state)

    if isinstance(cond, RankedCondition):
        obj, mode = cond.objective, cond.mode
        rk = cond.rk

        def rank_of(n):
            return rk[n[0]]
    else:
        obj, mode, rank_of = cond, None, None

    tracker = ("open", obj.pairs) if isinstance(obj, RequestResponse) else ("none", None)
    halt = _decided(obj, bnd, rank_of, mode)
    root, succ = _product_graph(arena, strategy, start, state, tracker, halt)
    nodes = sorted(succ)
    pending_of = (lambda n: n[2]) if tracker[0] == "open" else (lambda n: ())
    query = _claim_failure_query(succ, nodes, cond, bnd, pending_of, rank_of,
                                 strategy.owner)
    failures = _query_failures(succ, query)
    if root not in failures:
        return Verdict(True, message="certified")
    witness = _query_witness(arena, succ, root, query)
    if witness is None:
        raise InputError("internal error: failure detected but no witness found")
    return Verdict(False, witness=witness, message="refuted")


def _verify_cost_rr(arena, spec: CostRRSpec, strategy, bound: int, start,
                    state) -> Verdict:
    cap = bound + 1
    tracker = ("counters", (spec, cap))

    def over(n):
        return any(counter_value(st) > bound for st in n[2])

    def pending_of(n):
        return frozenset(c for c, st in enumerate(n[2]) if counter_pending(st))

    root, succ = _product_graph(arena, strategy, start, state, tracker, over)
    nodes = sorted(succ)
    if strategy.owner == 0:
        loops = [({n for n in nodes if c in pending_of(n)}, _no_anchors)
                 for c in range(spec.d)]
        query = _Query({n for n in nodes if over(n)}, loops, None)
    else:
        low = {n for n in nodes if not over(n)}
        query = _satisfaction_query(succ, nodes, RequestResponse(spec.pairs),
                                    pending_of, low, low)
    failures = _query_failures(succ, query)
    if root not in failures:
        return Verdict(True, message="certified")
    witness = _query_witness(arena, succ, root, query)
    if witness is None:
        raise InputError("internal error: failure detected but no witness found")
    return Verdict(False, witness=witness, message="refuted")


# ---------------------------------------------------------------------------
# brute-force solving oracle

def _seed_nodes(arena: Arena, template: MemoryStructure, seeds):
    if seeds is None:
        return {v: (v, template.initial) for v in arena.vertices}
    seed_map = dict(seeds)
    missing = [v for v in arena.vertices if v not in seed_map]
    if missing:
        raise InputError(f"seed states missing for vertices {missing!r}")
    return {v: (v, seed_map[v]) for v in arena.vertices}


def _default_pending(node) -> frozenset:
    state = node[1]
    if isinstance(state, tuple) and state and isinstance(state[0], tuple):
        return frozenset(state[0])
    return frozenset()


def _candidate_graphs(product: Arena, owner: int, guard: int):
    """Successor maps of every positional restriction of ``owner``'s moves,
    in deterministic order.  Guarded by the candidate count."""
    choice = [pv for pv in product.vertices if product.owner[pv] == owner]
    total = 1
    for pv in choice:
        total *= len(product.succ[pv])
        if total > guard:
            raise CapacityError(
                f"strategy enumeration needs more than {guard} candidates")
    fixed = {pv: product.succ[pv] for pv in product.vertices
             if product.owner[pv] != owner}
    options = [product.succ[pv] for pv in choice]
    for assignment in itertools.product(*options):
        succ = dict(fixed)
        for pv, w in zip(choice, assignment):
            succ[pv] = (w,)
        yield succ


def _oracle_failures(succ, cond, bnd, pending_of, rank_of, player: int) -> set:
    nodes = sorted(succ)
    query = _claim_failure_query(succ, nodes, cond, bnd, pending_of, rank_of, player)
    return _query_failures(succ, query)


def enumerate_regions(arena: Arena, condition, template: MemoryStructure,
                      seeds=None, bound: Optional[int] = None,
                      pending_of_state: Optional[Callable] = None,
                      guard: int = 10 ** 6) -> Tuple[frozenset, frozenset]:
    """Winning regions by exhaustive strategy enumeration.

    Every positional Player 0 strategy over the template expansion is
    certified per start vertex; a vertex is in region 0 iff some candidate
    is certified from it.  Region 1 is the complement, all shipped
    conditions being determined.  The template must be known sufficient
    for the condition (trivial memory for safety, Buchi, coBuchi and
    rank-cost claims over those; the open-request memory for
    request-response).
    """
    cond, bnd = _normalize_condition(condition, bound)
    if isinstance(cond, CostRRSpec):
        raise CapabilityError("response-cost values have a dedicated oracle")
    starts = _seed_nodes(arena, template, seeds)
    product = expand(arena, template, seeds=starts.values())
    pending_of = pending_of_state or _default_pending
    rank_of = (lambda n: cond.rk[n[0]]) if isinstance(cond, RankedCondition) else None
    undecided = set(arena.vertices)
    region_0 = set()
    for succ in _candidate_graphs(product, 0, guard):
        failures = _oracle_failures(succ, cond, bnd, pending_of, rank_of, 0)
        for v in list(undecided):
            if starts[v] not in failures:
                region_0.add(v)
                undecided.discard(v)
        if not undecided:
            break
    return frozenset(region_0), frozenset(arena.vertices) - frozenset(region_0)


def enumerate_solve(arena: Arena, condition, template: MemoryStructure,
                    seeds=None, bound: Optional[int] = None,
                    pending_of_state: Optional[Callable] = None,
                    guard: int = 10 ** 6) -> SolveResult:
    """Brute-force solver: regions by enumeration plus uniform witness
    strategies for both players, found by further enumeration passes."""
    cond, bnd = _normalize_condition(condition, bound)
    starts = _seed_nodes(arena, template, seeds)
    product = expand(arena, template, seeds=starts.values())
    pending_of = pending_of_state or _default_pending
    rank_of = (lambda n: cond.rk[n[0]]) if isinstance(cond, RankedCondition) else None
    region_0, region_1 = enumerate_regions(
        arena, condition, template, seeds=seeds, bound=bound,
        pending_of_state=pending_of_state, guard=guard)

    def uniform(owner: int, region: frozenset) -> FiniteStateStrategy:
        want = {starts[v] for v in region}
        for succ in _candidate_graphs(product, owner, guard):
            failures = _oracle_failures(succ, cond, bnd, pending_of, rank_of, owner)
            if not (want & failures):
                moves = {}
                for pv, ws in succ.items():
                    if product.owner[pv] == owner:
                        moves[(pv[0], pv[1])] = ws[0][0]
                return FiniteStateStrategy(owner, template, moves)
        raise InputError(f"no uniform winning strategy for player {owner} "
                         "among positional candidates")

    strat_0 = uniform(0, region_0) if region_0 else FiniteStateStrategy(0, template, {})
    strat_1 = uniform(1, region_1) if region_1 else FiniteStateStrategy(1, template, {})
    return SolveResult(region_0, region_1, strat_0, strat_1)


def max_response_cost(game: CostRRGame, strategy: FiniteStateStrategy,
                      cap: int) -> ExtNat:
    """Worst response cost the strategy concedes, exact up to ``cap``.

    Infinity stands for an unanswered request or any cost beyond the cap;
    otherwise the value is the largest answered accumulation occurring in
    the strategy-restricted counter product.
    """
    spec = game.spec
    tracker = ("counters", (spec, cap + 1))

    def over(n):
        return any(counter_value(st) > cap for st in n[2])

    root, succ = _product_graph(game.arena, strategy, game.arena.initial,
                                strategy.memory.initial, tracker, over)
    nodes = sorted(succ)
    if any(over(n) for n in nodes):
        return INF

    def pending_of(n):
        return frozenset(c for c, st in enumerate(n[2]) if counter_pending(st))

    for c in range(spec.d):
        if _loop_comps(succ, {n for n in nodes if c in pending_of(n)}):
            return INF
    worst = 0
    for n in nodes:
        for st in n[2]:
            if st[0] == "ans":
                worst = max(worst, st[1])
    return worst


# ---------------------------------------------------------------------------
# fault-injection simulation

@dataclass(frozen=True)
class FaultSimVerdict:
    safe: bool
    witness: Optional[tuple] = None  # vertex path ending at the breach


def simulate_faults(fa: FaultArena, strategy: FiniteStateStrategy, budget: int,
                    depth: int) -> FaultSimVerdict:
    """Exhaustively play the strategy against up to ``budget`` faults.

    The opponent controls his vertices and may additionally divert
    Player 0 along any fault pair, spending one budget unit per fault.
    Explores every play of at most ``depth`` moves breadth first and
    reports the first unsafe visit.  Fault steps are usually not arena
    edges; a strategy memory that has no entry for such a step keeps its
    state across it (positional strategies are unaffected).
    """
    arena = fa.arena
    if arena.initial not in fa.safe:
        return FaultSimVerdict(False, (arena.initial,))
    start = (arena.initial, strategy.memory.initial, budget)
    seen = {start}
    queue = deque([(start, 0, (arena.initial,))])
    while queue:
        (v, s, rem), d, path = queue.popleft()
        if d >= depth:
            continue
        moves = []
        if arena.owner[v] == 0:
            moves.append((strategy.move(v, s), rem))
            if rem > 0:
                for w in fa.fault_targets(v):
                    moves.append((w, rem - 1))
        else:
            moves.extend((w, rem) for w in arena.succ[v])
        for w, rem2 in moves:
            s2 = strategy.memory.update.get((s, (v, w)), s)
            child = (w, s2, rem2)
            if child in seen:
                continue
            seen.add(child)
            if w not in fa.safe:
                return FaultSimVerdict(False, path + (w,))
            queue.append((child, d + 1, path + (w,)))
    return FaultSimVerdict(True)
