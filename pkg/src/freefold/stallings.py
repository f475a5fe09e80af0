"""Stallings core graphs of finitely generated subgroups of free groups.

A graph is stored as a transition table: ``delta[v][slot]`` is the
vertex reached from ``v`` along the letter with that slot
(``2 * generator + inverted``), or ``None``.  An ``a``-edge ``u -> v``
therefore occupies slot 0 at ``u`` and slot 1 at ``v``.
"""

from __future__ import annotations

import random
from collections import Counter, deque
from dataclasses import dataclass, field
from typing import Iterator, Optional, Sequence

from .unionfind import UnionFind
from .words import Alphabet, Letter, Word, concat_reduce, invert

__all__ = [
    "PreGraph",
    "StallingsGraph",
    "VertexCensus",
    "build_bouquet",
    "fold",
    "core",
    "subgroup_graph",
    "rank",
    "chi0",
    "membership",
    "tree_paths",
    "basis",
    "census",
    "canonical_form",
    "to_dot",
    "SLOT_NAMES",
]

# rank-2 slot names, in slot order
SLOT_NAMES = ("a-out", "a-in", "b-out", "b-in")


@dataclass
class PreGraph:
    """Possibly unfolded labeled multigraph.

    Edges are ``(source, generator, target)`` with positive labels.
    """

    alphabet: Alphabet
    num_vertices: int = 1
    base: int = 0
    edges: list[tuple[int, int, int]] = field(default_factory=list)


@dataclass(frozen=True)
class StallingsGraph:
    alphabet: Alphabet
    base: int
    delta: tuple[tuple[Optional[int], ...], ...]

    def __post_init__(self):
        nslots = 2 * self.alphabet.rank
        n = len(self.delta)
        if not 0 <= self.base < n:
            raise ValueError("base vertex missing")
        for v, row in enumerate(self.delta):
            if len(row) != nslots:
                raise ValueError(f"vertex {v} has {len(row)} slots, expected {nslots}")
            for s, w in enumerate(row):
                if w is not None and self.delta[w][s ^ 1] != v:
                    raise ValueError(f"transition table not involutive at vertex {v}, slot {s}")

    @property
    def num_vertices(self) -> int:
        return len(self.delta)

    @property
    def num_edges(self) -> int:
        return sum(1 for row in self.delta for w in row[0::2] if w is not None)

    def edges(self) -> Iterator[tuple[int, int, int]]:
        """Positively labeled edges ``(u, generator, v)``, sorted by ``(u, generator)``."""
        for u, row in enumerate(self.delta):
            for g in range(self.alphabet.rank):
                v = row[2 * g]
                if v is not None:
                    yield u, g, v

    def step(self, v: int, letter: Letter) -> Optional[int]:
        return self.delta[v][letter.slot]

    def valence(self, v: int) -> int:
        return sum(1 for w in self.delta[v] if w is not None)

    def in_out(self, v: int) -> tuple[int, int]:
        row = self.delta[v]
        out = sum(1 for w in row[0::2] if w is not None)
        inc = sum(1 for w in row[1::2] if w is not None)
        return inc, out

    @classmethod
    def trivial(cls, alphabet: Alphabet) -> "StallingsGraph":
        return cls(alphabet, 0, ((None,) * (2 * alphabet.rank),))


def build_bouquet(generators: Sequence[Word], alphabet: Alphabet) -> PreGraph:
    """Wedge of subdivided loops at the base, one spelling each generator."""
    g = PreGraph(alphabet)
    for w in generators:
        if not w:
            raise ValueError("generators must be nonempty words")
        if w.max_generator() >= alphabet.rank:
            raise ValueError(f"generator {w!r} outside rank-{alphabet.rank} alphabet")
        prev = g.base
        for i, (gen, inv) in enumerate(w.letters):
            if i == len(w) - 1:
                nxt = g.base
            else:
                nxt = g.num_vertices
                g.num_vertices += 1
            g.edges.append((nxt, gen, prev) if inv else (prev, gen, nxt))
            prev = nxt
    return g


def fold(pre: PreGraph, rng: Optional[random.Random] = None) -> StallingsGraph:
    """Fold ``pre`` until deterministic.

    Passes over the edge list identify endpoints of equally labeled edges
    at a common vertex; a pass without merges ends the loop.  ``rng``
    shuffles the scan order of each pass (the result is unchanged up to
    vertex numbering).
    """
    uf = UnionFind(pre.num_vertices)
    edges = list(pre.edges)
    changed = True
    while changed:
        changed = False
        if rng is not None:
            rng.shuffle(edges)
        seen: dict[tuple[int, int], int] = {}
        for u, gen, v in edges:
            ru, rv = uf.find(u), uf.find(v)
            w = seen.setdefault((ru, 2 * gen), rv)
            if w != rv and uf.find(w) != rv:
                uf.union(w, rv)
                changed = True
                continue
            w = seen.setdefault((rv, 2 * gen + 1), ru)
            if w != ru and uf.find(w) != ru:
                uf.union(w, ru)
                changed = True

    # renumber representatives, base first, then by smallest member
    order = [uf.find(pre.base)]
    ids = {order[0]: 0}
    for v in range(pre.num_vertices):
        r = uf.find(v)
        if r not in ids:
            ids[r] = len(order)
            order.append(r)
    nslots = 2 * pre.alphabet.rank
    delta = [[None] * nslots for _ in order]
    for u, gen, v in edges:
        iu, iv = ids[uf.find(u)], ids[uf.find(v)]
        for x, s, y in ((iu, 2 * gen, iv), (iv, 2 * gen + 1, iu)):
            assert delta[x][s] in (None, y), "fold left a nondeterministic vertex"
            delta[x][s] = y
    return StallingsGraph(pre.alphabet, 0, tuple(tuple(row) for row in delta))


def _restrict(g: StallingsGraph, keep: list[int], base: int) -> StallingsGraph:
    keep = [base] + sorted(v for v in keep if v != base)
    ids = {v: i for i, v in enumerate(keep)}
    delta = tuple(
        tuple(ids.get(w) if w is not None else None for w in g.delta[v]) for v in keep
    )
    return StallingsGraph(g.alphabet, 0, delta)


def core(g: StallingsGraph, keep_base: bool = True) -> StallingsGraph:
    """Prune valence-1 vertices repeatedly.

    With ``keep_base`` the base is never pruned.  Without it the result
    is the cyclically reduced core, based at the core vertex nearest the
    old base.  Graphs without cycles core to a single vertex.
    """
    n = g.num_vertices
    if g.num_edges - n + 1 == 0:
        return StallingsGraph.trivial(g.alphabet)
    val = [g.valence(v) for v in range(n)]
    alive = [True] * n
    stack = [v for v in range(n) if val[v] == 1 and not (keep_base and v == g.base)]
    while stack:
        v = stack.pop()
        if not alive[v] or val[v] != 1:
            continue
        alive[v] = False
        for w in g.delta[v]:
            if w is not None and alive[w]:
                val[w] -= 1
                if val[w] == 1 and not (keep_base and w == g.base):
                    stack.append(w)
    base = g.base
    if not alive[base]:
        # walk along the hair; removed vertices form trees hanging off the core
        seen = {base}
        queue = deque([base])
        while not alive[base]:
            v = queue.popleft()
            for w in g.delta[v]:
                if w is not None and w not in seen:
                    seen.add(w)
                    queue.append(w)
                    if alive[w]:
                        base = w
                        break
    keep = [v for v in range(n) if alive[v]]
    if len(keep) == n and base == g.base == 0:
        return g
    return _restrict(g, keep, base)


def subgroup_graph(generators: Sequence[Word], alphabet: Alphabet) -> StallingsGraph:
    """Basepointed core graph of the subgroup generated by ``generators``."""
    return core(fold(build_bouquet(generators, alphabet)), keep_base=True)


def rank(g: StallingsGraph) -> int:
    return g.num_edges - g.num_vertices + 1


def chi0(g: StallingsGraph) -> int:
    """Reduced rank ``max(0, rank - 1)``."""
    return max(0, g.num_edges - g.num_vertices)


def membership(g: StallingsGraph, w: Word) -> bool:
    v = g.base
    delta = g.delta
    for gen, inv in w.letters:
        if gen >= g.alphabet.rank:
            return False
        v = delta[v][2 * gen + inv]
        if v is None:
            return False
    return v == g.base


def tree_paths(g: StallingsGraph) -> tuple[dict[int, Word], set[tuple[int, int]]]:
    """Breadth-first spanning tree from the base.

    Vertices are dequeued in discovery order and letters tried in slot
    order.  Returns the tree path word to every vertex and the set of
    tree edges as ``(vertex, slot)`` pairs, recorded at both ends.
    """
    paths = {g.base: Word()}
    tree: set[tuple[int, int]] = set()
    queue = deque([g.base])
    letters = g.alphabet.letters()
    while queue:
        v = queue.popleft()
        for ell in letters:
            w = g.delta[v][ell.slot]
            if w is not None and w not in paths:
                paths[w] = concat_reduce(paths[v], Word._trusted((ell,)))
                tree.add((v, ell.slot))
                tree.add((w, ell.slot ^ 1))
                queue.append(w)
    return paths, tree


def basis(g: StallingsGraph) -> list[Word]:
    """Free basis of the subgroup: one word per edge off the spanning tree."""
    paths, tree = tree_paths(g)
    out = []
    for u, gen, v in g.edges():
        if (u, 2 * gen) in tree:
            continue
        w = concat_reduce(
            concat_reduce(paths[u], Word._trusted((Letter(gen, False),))), invert(paths[v])
        )
        out.append(w)
    return out


@dataclass(frozen=True)
class VertexCensus:
    """Valence-3 vertex counts of a rank-2 graph.

    ``slots[v]`` lists which of a-out, a-in, b-out, b-in are present at
    ``v``.  ``by_missing`` and ``by_signature`` count valence-3 vertices by
    their missing slot and by ``(incoming, outgoing)`` valence.
    ``spectrum`` counts every vertex by signature.
    """

    slots: tuple[tuple[bool, bool, bool, bool], ...]
    by_missing: dict[str, int]
    by_signature: dict[tuple[int, int], int]
    spectrum: dict[tuple[int, int], int]
    total: int

    def to_dict(self) -> dict:
        return {
            "total": self.total,
            "by_missing": dict(self.by_missing),
            "by_signature": {f"({i},{o})": c for (i, o), c in sorted(self.by_signature.items())},
            "spectrum": {f"({i},{o})": c for (i, o), c in sorted(self.spectrum.items())},
        }


def census(g: StallingsGraph) -> VertexCensus:
    """Classify valence-3 vertices; meant for the cyclically reduced core."""
    if g.alphabet.rank != 2:
        raise ValueError(f"census needs a rank-2 alphabet, got rank {g.alphabet.rank}")
    slots = tuple(tuple(w is not None for w in row) for row in g.delta)
    by_missing = {name: 0 for name in SLOT_NAMES}
    by_signature = {(2, 1): 0, (1, 2): 0}
    spectrum: Counter = Counter()
    total = 0
    for present in slots:
        sig = (present[1] + present[3], present[0] + present[2])
        spectrum[sig] += 1
        if sum(present) == 3:
            total += 1
            by_missing[SLOT_NAMES[present.index(False)]] += 1
            by_signature[sig] += 1
    return VertexCensus(slots, by_missing, by_signature, dict(spectrum), total)


def canonical_form(g: StallingsGraph) -> StallingsGraph:
    """Renumber vertices in breadth-first order from the base.

    Vertices unreachable from the base are dropped.
    """
    order = [g.base]
    ids = {g.base: 0}
    i = 0
    while i < len(order):
        for w in g.delta[order[i]]:
            if w is not None and w not in ids:
                ids[w] = len(order)
                order.append(w)
        i += 1
    delta = tuple(
        tuple(None if w is None else ids[w] for w in g.delta[v]) for v in order
    )
    return StallingsGraph(g.alphabet, 0, delta)


def to_dot(g: StallingsGraph, name: str = "G") -> str:
    lines = [f"digraph {name} {{", "  node [shape=circle];"]
    for v in range(g.num_vertices):
        shape = ' [shape=doublecircle]' if v == g.base else ""
        lines.append(f"  {v}{shape};")
    for u, gen, v in g.edges():
        lines.append(f'  {u} -> {v} [label="{Letter(gen)}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
