"""Memory structures, product arenas, and finite-state strategies.

A memory structure is a deterministic transducer whose update function
reads edges of a fixed arena, so memories can react to which edge was
taken, not only to the vertex reached.  Vertex-driven updates are the
special case that ignores the edge source.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Any, Iterable, Mapping, Optional, Tuple

from .arena import Arena, Edge, Lasso, Vertex
from .errors import InputError

State = Any


@dataclass(frozen=True)
class MemoryStructure:
    """Finite deterministic transducer over an arena's edges.

    ``update`` maps (state, edge) pairs to states.  It must cover every
    pair that can occur along a play of the associated arena; builders in
    this package tabulate generated memories exactly on those reachable
    pairs, while small hand-built memories are simply total.
    """

    states: tuple
    initial: State
    update: dict

    def __post_init__(self):
        states = tuple(self.states)
        object.__setattr__(self, "states", states)
        sset = set(states)
        if self.initial not in sset:
            raise InputError(f"initial memory state {self.initial!r} is not a state")
        for (s, _e), t in self.update.items():
            if s not in sset or t not in sset:
                raise InputError("memory update mentions an unknown state")

    def __len__(self) -> int:
        return len(self.states)

    def step(self, state: State, edge: Edge) -> State:
        try:
            return self.update[(state, edge)]
        except KeyError:
            raise InputError(
                f"memory update undefined for state {state!r} on edge {edge!r}") from None

    def covers_edge(self, state: State, edge: Edge) -> bool:
        return (state, edge) in self.update


def trivial_memory(arena: Arena) -> MemoryStructure:
    """One-state memory over the given arena's edges."""
    return MemoryStructure((0,), 0, {(0, e): 0 for e in arena.edges})


def update_plus(mem: MemoryStructure, prefix: Iterable[Vertex]) -> State:
    """Fold the update function along a nonempty play prefix.

    A single-vertex prefix yields the initial state.  Steps that are not
    covered by the memory (in particular non-edges) raise ``InputError``.
    """
    seq = tuple(prefix)
    if not seq:
        raise InputError("update_plus needs a nonempty prefix")
    state = mem.initial
    for i in range(len(seq) - 1):
        state = mem.step(state, (seq[i], seq[i + 1]))
    return state


def expand(arena: Arena, mem: MemoryStructure,
           seeds: Optional[Iterable[Tuple[Vertex, State]]] = None) -> Arena:
    """Product of an arena with a memory structure, reachable part only.

    Product vertices are (vertex, state) pairs, so the correspondence to
    the factors is the pair structure itself.  Ownership is inherited
    from the vertex component; the initial product vertex pairs the
    arena's initial vertex with the memory's initial state.  Extra seed
    pairs widen the forward closure (used for per-vertex region solving).
    """
    start = (arena.initial, mem.initial)
    frontier = deque([start])
    if seeds is not None:
        for pv in seeds:
            frontier.append((pv[0], pv[1]))
    seen = set(frontier)
    edges = []
    while frontier:
        v, s = frontier.popleft()
        for w in arena.succ[v]:
            t = mem.step(s, (v, w))
            target = (w, t)
            edges.append(((v, s), target))
            if target not in seen:
                seen.add(target)
                frontier.append(target)
    owner = {pv: arena.owner[pv[0]] for pv in seen}
    return Arena(tuple(sorted(seen)), owner, frozenset(edges), start)


def extend_lasso(mem: MemoryStructure, lasso: Lasso) -> Lasso:
    """The unique extended play of a lasso, again as a lasso.

    States are threaded along the prefix, then the loop is unrolled until
    a (loop offset, state) pair repeats; the extended loop length always
    divides loop length times memory size.
    """
    states = [mem.initial]
    sp = lasso.spine()
    for i in range(len(sp) - 1):
        states.append(mem.step(states[-1], (sp[i], sp[i + 1])))
    # states[i] is the memory state at position i of prefix+loop
    n_pre, n_loop = len(lasso.prefix), len(lasso.loop)
    pairs = list(zip(sp, states))
    pos = n_pre  # current absolute position in the play
    vertex = lasso.loop[0] if n_loop else None
    state = states[n_pre]
    seen = {}
    tail = []  # (vertex, state) pairs from the start of the loop portion
    offset = 0
    while True:
        key = (offset, state)
        if key in seen:
            start = seen[key]
            prefix = tuple(pairs[:n_pre]) + tuple(tail[:start])
            loop = tuple(tail[start:])
            return Lasso(prefix, loop)
        seen[key] = len(tail)
        vertex = lasso.loop[offset]
        tail.append((vertex, state))
        nxt = lasso.loop[(offset + 1) % n_loop]
        state = mem.step(state, (vertex, nxt))
        offset = (offset + 1) % n_loop


def product_memory(m1: MemoryStructure, m2: MemoryStructure) -> MemoryStructure:
    """Memory over the original arena combining ``m1`` with a memory ``m2``
    that reads edges of the ``m1``-expanded arena.

    The state set is the full cartesian product.  Update entries are
    tabulated for every edge ``m1`` covers; where ``m2`` lacks an entry
    (possible only on pairs no play can reach) the second component is
    left unchanged.
    """
    for (_s, e) in m2.update:
        u, w = e
        if not (isinstance(u, tuple) and len(u) == 2 and isinstance(w, tuple) and len(w) == 2):
            raise InputError("second memory must read edges of the expanded arena")
        break
    states = tuple((s1, s2) for s1 in m1.states for s2 in m2.states)
    update = {}
    for (s1, e), t1 in m1.update.items():
        lifted = ((e[0], s1), (e[1], t1))
        for s2 in m2.states:
            update[((s1, s2), e)] = (t1, m2.update.get((s2, lifted), s2))
    return MemoryStructure(states, (m1.initial, m2.initial), update)


@dataclass(frozen=True)
class FiniteStateStrategy:
    """A player's strategy given by a memory structure and a move table.

    ``next_move`` maps (vertex, memory state) pairs of the owner's
    vertices to successor vertices.  The reported size of the strategy is
    the size of its memory.
    """

    owner: int
    memory: MemoryStructure
    next_move: dict

    def __post_init__(self):
        if self.owner not in (0, 1):
            raise InputError("strategy owner must be 0 or 1")

    def size(self) -> int:
        return len(self.memory)

    def move(self, vertex: Vertex, state: State) -> Vertex:
        try:
            return self.next_move[(vertex, state)]
        except KeyError:
            raise InputError(
                f"strategy has no move at vertex {vertex!r} in state {state!r}") from None


def positional_strategy(arena: Arena, owner: int, moves: Mapping[Vertex, Vertex],
                        fill: bool = False) -> FiniteStateStrategy:
    """Wrap a vertex-to-vertex move map as a one-state strategy.

    With ``fill``, owner vertices missing from ``moves`` get their first
    successor, which keeps strategies total without affecting the region
    they are claimed to win on.
    """
    mem = trivial_memory(arena)
    table = dict(moves)
    if fill:
        for v in arena.owned_by(owner):
            table.setdefault(v, arena.succ[v][0])
    next_move = {}
    for v, w in table.items():
        if arena.owner.get(v) != owner:
            raise InputError(f"move given for vertex {v!r} not owned by player {owner}")
        if not arena.has_edge(v, w):
            raise InputError(f"move ({v!r} -> {w!r}) is not an edge")
        next_move[(v, 0)] = w
    return FiniteStateStrategy(owner, mem, next_move)


def compose_strategy(m1: MemoryStructure, strat: FiniteStateStrategy,
                     trim_arena: Optional[Arena] = None) -> FiniteStateStrategy:
    """Pull a strategy on the ``m1``-expanded arena back to the original.

    The result runs ``product_memory(m1, strat.memory)`` and moves to the
    vertex component of what ``strat`` would play.  Plays consistent with
    the result extend, through ``m1``, to plays consistent with ``strat``.

    With ``trim_arena`` the memory is tabulated only on state pairs
    reachable when the owner follows the strategy; used where the full
    product table would be prohibitively large.  The cartesian state
    count, and hence the reported size, is preserved in either mode.
    """
    if trim_arena is None:
        mem = product_memory(m1, strat.memory)
    else:
        mem = _trimmed_product_memory(m1, strat, trim_arena)
    next_move = {}
    for ((v, s1), s2), target in strat.next_move.items():
        next_move[(v, (s1, s2))] = target[0]
    return FiniteStateStrategy(strat.owner, mem, next_move)


def _trimmed_product_memory(m1: MemoryStructure, strat: FiniteStateStrategy,
                            arena: Arena) -> MemoryStructure:
    m2 = strat.memory
    start = (m1.initial, m2.initial)
    frontier = deque([(arena.initial, start)])
    seen_nodes = {(arena.initial, start)}
    states = {start}
    update = {}
    while frontier:
        v, (s1, s2) = frontier.popleft()
        if arena.owner[v] == strat.owner:
            targets = (strat.next_move[((v, s1), s2)][0],)
        else:
            targets = arena.succ[v]
        for w in targets:
            e = (v, w)
            t1 = m1.step(s1, e)
            lifted = ((v, s1), (w, t1))
            t2 = m2.update.get((s2, lifted), s2)
            update[((s1, s2), e)] = (t1, t2)
            states.add((t1, t2))
            node = (w, (t1, t2))
            if node not in seen_nodes:
                seen_nodes.add(node)
                frontier.append(node)
    all_states = tuple((s1, s2) for s1 in m1.states for s2 in m2.states)
    return MemoryStructure(all_states, start, update)
