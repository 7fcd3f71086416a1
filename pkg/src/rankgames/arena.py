"""Game graphs: arenas, sub-arenas, lassos, and attractor computation.

An arena is a finite directed graph whose vertices are split between
Player 0 and Player 1, with a designated initial vertex and no terminal
vertices.  Vertex identifiers are opaque but must be totally ordered
within one arena; every iteration in this package follows that order, so
identical inputs always produce identical outputs.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Any, Dict, Iterable, Mapping, Tuple

from .errors import InputError

Vertex = Any
Edge = Tuple[Vertex, Vertex]
VertexSet = frozenset


@dataclass(frozen=True)
class Arena:
    """Finite game graph with an ownership partition and initial vertex.

    Invariants enforced at construction: the owner map is total with
    values in {0, 1}, every edge endpoint is a known vertex, the initial
    vertex is known, and every vertex has at least one outgoing edge.
    """

    vertices: tuple
    owner: dict
    edges: frozenset
    initial: Vertex
    succ: dict = field(init=False, repr=False, compare=False)
    pred: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        verts = tuple(sorted(set(self.vertices)))
        if not verts:
            raise InputError("an arena needs at least one vertex")
        vset = set(verts)
        owner = {}
        for v in verts:
            if v not in self.owner:
                raise InputError(f"vertex {v!r} has no owner")
            pl = self.owner[v]
            if pl not in (0, 1):
                raise InputError(f"owner of {v!r} must be 0 or 1, got {pl!r}")
            owner[v] = pl
        if self.initial not in vset:
            raise InputError(f"initial vertex {self.initial!r} is not a vertex")
        edges = frozenset(self.edges)
        succ = {v: [] for v in verts}
        pred = {v: [] for v in verts}
        for u, w in sorted(edges):
            if u not in vset or w not in vset:
                raise InputError(f"edge ({u!r}, {w!r}) mentions an unknown vertex")
            succ[u].append(w)
            pred[w].append(u)
        for v in verts:
            if not succ[v]:
                raise InputError(f"vertex {v!r} has no outgoing edge")
        object.__setattr__(self, "vertices", verts)
        object.__setattr__(self, "owner", owner)
        object.__setattr__(self, "edges", edges)
        object.__setattr__(self, "succ", {v: tuple(s) for v, s in succ.items()})
        object.__setattr__(self, "pred", {v: tuple(p) for v, p in pred.items()})

    @classmethod
    def of(cls, owner: Mapping[Vertex, int], edges: Iterable[Edge], initial: Vertex) -> "Arena":
        """Build an arena from an owner map; vertices are the map's keys."""
        return cls(tuple(owner.keys()), dict(owner), frozenset(edges), initial)

    def __len__(self) -> int:
        return len(self.vertices)

    def vertex_set(self) -> VertexSet:
        return frozenset(self.vertices)

    def owned_by(self, player: int) -> tuple:
        return tuple(v for v in self.vertices if self.owner[v] == player)

    def has_edge(self, u: Vertex, v: Vertex) -> bool:
        return (u, v) in self.edges

    def with_initial(self, v: Vertex) -> "Arena":
        if v == self.initial:
            return self
        return Arena(self.vertices, self.owner, self.edges, v)

    def swap_owners(self) -> "Arena":
        """The same graph with the two players' vertices exchanged."""
        return Arena(self.vertices, {v: 1 - p for v, p in self.owner.items()},
                     self.edges, self.initial)


def attractor(arena: Arena, player: int, target: Iterable[Vertex]):
    """Vertices from which ``player`` can force a visit to ``target``.

    Returns the attractor set together with a positional strategy for
    ``player``, defined on attractor vertices of that player outside the
    target; every prescribed move decreases the distance to the target
    by one.  Backward worklist with per-vertex outdegree counters; runs
    in time linear in the number of edges.
    """
    tgt = frozenset(target)
    unknown = tgt - set(arena.vertices)
    if unknown:
        raise InputError(f"target contains unknown vertices: {sorted(unknown)!r}")
    inside = set(tgt)
    counters = {v: len(arena.succ[v]) for v in arena.vertices if arena.owner[v] != player}
    strategy: Dict[Vertex, Vertex] = {}
    queue = deque(sorted(tgt))
    while queue:
        v = queue.popleft()
        for u in arena.pred[v]:
            if u in inside:
                continue
            if arena.owner[u] == player:
                inside.add(u)
                strategy[u] = v
                queue.append(u)
            else:
                counters[u] -= 1
                if counters[u] == 0:
                    inside.add(u)
                    queue.append(u)
    return frozenset(inside), strategy


def _induced(arena: Arena, keep: frozenset, initial: Vertex) -> Arena:
    edges = [(u, v) for (u, v) in arena.edges if u in keep and v in keep]
    with_out = {u for u, _ in edges}
    for v in sorted(keep):
        if v not in with_out:
            raise InputError(f"not a valid sub-arena: vertex {v!r} would become terminal")
    return Arena(tuple(sorted(keep)), {v: arena.owner[v] for v in keep},
                 frozenset(edges), initial)


def restrict(arena: Arena, keep: Iterable[Vertex]) -> Arena:
    """Sub-arena induced by ``keep``; errors if the initial vertex is dropped
    or a kept vertex loses all its successors."""
    kset = frozenset(keep)
    unknown = kset - set(arena.vertices)
    if unknown:
        raise InputError(f"keep contains unknown vertices: {sorted(unknown)!r}")
    if arena.initial not in kset:
        raise InputError(f"initial vertex {arena.initial!r} not in the kept set")
    return _induced(arena, kset, arena.initial)


def restrict_any(arena: Arena, keep: Iterable[Vertex]) -> Arena:
    """Like :func:`restrict` but re-anchors the initial vertex if it was
    dropped.  For region computations, which ignore the anchor."""
    kset = frozenset(keep)
    if not kset:
        raise InputError("cannot restrict to an empty vertex set")
    initial = arena.initial if arena.initial in kset else min(kset)
    return _induced(arena, kset, initial)


def relabel(arena: Arena, fn) -> Arena:
    """Rename every vertex through an injective function."""
    owner = {fn(v): p for v, p in arena.owner.items()}
    if len(owner) != len(arena.vertices):
        raise InputError("relabeling is not injective")
    edges = frozenset((fn(u), fn(w)) for u, w in arena.edges)
    return Arena(tuple(owner.keys()), owner, edges, fn(arena.initial))


def is_subarena(candidate: Arena, whole: Arena) -> bool:
    """Componentwise containment of vertices, ownership, and edges."""
    wset = set(whole.vertices)
    for v in candidate.vertices:
        if v not in wset or candidate.owner[v] != whole.owner[v]:
            return False
    return candidate.edges <= whole.edges


@dataclass(frozen=True)
class Lasso:
    """Ultimately periodic play: ``prefix``, then ``loop`` forever."""

    prefix: tuple
    loop: tuple

    def __post_init__(self):
        object.__setattr__(self, "prefix", tuple(self.prefix))
        object.__setattr__(self, "loop", tuple(self.loop))
        if not self.loop:
            raise InputError("a lasso needs a nonempty loop")

    def first(self) -> Vertex:
        return self.prefix[0] if self.prefix else self.loop[0]

    def vertex_at(self, i: int) -> Vertex:
        """Vertex at position ``i`` of the infinite play."""
        if i < len(self.prefix):
            return self.prefix[i]
        return self.loop[(i - len(self.prefix)) % len(self.loop)]

    def spine(self) -> tuple:
        return self.prefix + self.loop

    def vertices(self) -> frozenset:
        return frozenset(self.spine())

    def steps(self):
        """All edges the play ever takes (prefix edges plus loop edges,
        including the closing loop edge)."""
        sp = self.spine()
        back = (self.loop[-1], self.loop[0])
        return [(sp[i], sp[i + 1]) for i in range(len(sp) - 1)] + [back]

    def check_in(self, arena: Arena, anchored: bool = True) -> "Lasso":
        unknown = self.vertices() - set(arena.vertices)
        if unknown:
            raise InputError(f"lasso mentions unknown vertices: {sorted(unknown)!r}")
        if anchored and self.first() != arena.initial:
            raise InputError(
                f"lasso starts at {self.first()!r}, not the initial vertex {arena.initial!r}")
        for u, v in self.steps():
            if not arena.has_edge(u, v):
                raise InputError(f"lasso uses missing edge ({u!r}, {v!r})")
        return self

    def with_loop_repeated(self, k: int) -> "Lasso":
        """Same play, loop written out ``k`` times."""
        if k < 1:
            raise InputError("loop repetition count must be >= 1")
        return Lasso(self.prefix, self.loop * k)

    def rotated(self, k: int) -> "Lasso":
        """Same play, with ``k`` loop steps moved into the prefix."""
        if k < 0:
            raise InputError("rotation count must be >= 0")
        n = len(self.loop)
        shift = k % n
        extra = tuple(self.loop[i % n] for i in range(k))
        return Lasso(self.prefix + extra, self.loop[shift:] + self.loop[:shift])

    def project(self, fn) -> "Lasso":
        return Lasso(tuple(fn(v) for v in self.prefix), tuple(fn(v) for v in self.loop))
