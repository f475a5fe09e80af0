"""Fiber products of core graphs and the Strengthened Hanna Neumann sum.

Components of the product of G(U) and G(V) correspond to the double
cosets ``V x U``; the component through ``(p, q)``, based there,
recognizes a conjugate of one intersection ``U ∩ x⁻¹ V x``.  Summing the
reduced ranks of all components gives the left-hand side of the
inequality.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .stallings import StallingsGraph, basis, chi0, membership, subgroup_graph, tree_paths
from .unionfind import UnionFind
from .words import Alphabet, Word, concat_reduce, invert

__all__ = [
    "Component",
    "PullbackReport",
    "ShncVerdict",
    "WitnessError",
    "product",
    "component_graph",
    "base_component",
    "shnc_check",
    "witness",
    "verify_witness",
]


class WitnessError(AssertionError):
    """A double-coset witness failed its membership contract."""


@dataclass(frozen=True)
class Component:
    vertices: tuple[tuple[int, int], ...]  # sorted vertex pairs
    num_edges: int

    @property
    def num_vertices(self) -> int:
        return len(self.vertices)

    @property
    def chi0(self) -> int:
        return max(0, self.num_edges - len(self.vertices))

    def to_dict(self) -> dict:
        return {
            "vertices": len(self.vertices),
            "edges": self.num_edges,
            "chi0": self.chi0,
            "least_pair": list(self.vertices[0]),
        }


@dataclass(frozen=True)
class PullbackReport:
    left: StallingsGraph
    right: StallingsGraph
    components: tuple[Component, ...]

    @property
    def lhs_sum(self) -> int:
        return sum(c.chi0 for c in self.components)


@dataclass(frozen=True)
class ShncVerdict:
    lhs: int
    rhs: int

    @property
    def holds(self) -> bool:
        return self.lhs <= self.rhs

    @property
    def margin(self) -> int:
        return self.rhs - self.lhs

    def to_dict(self) -> dict:
        return {"lhs": self.lhs, "rhs": self.rhs, "holds": self.holds, "margin": self.margin}


def product(
    gU: StallingsGraph, gV: StallingsGraph, include_isolated: bool = False
) -> PullbackReport:
    """Connected components of the fiber product.

    Pairs with no incident product edge are dropped unless
    ``include_isolated``; they would contribute nothing to the sum.
    """
    if gU.alphabet != gV.alphabet:
        raise ValueError("graphs are over different alphabets")
    nV = gV.num_vertices
    npairs = gU.num_vertices * nV
    uf = UnionFind(npairs)
    touched = bytearray(npairs)
    edge_heads = []
    for g in range(gU.alphabet.rank):
        s = 2 * g
        eu = [(u, row[s]) for u, row in enumerate(gU.delta) if row[s] is not None]
        ev = [(v, row[s]) for v, row in enumerate(gV.delta) if row[s] is not None]
        for u, u2 in eu:
            for v, v2 in ev:
                p, q = u * nV + v, u2 * nV + v2
                touched[p] = touched[q] = 1
                uf.union(p, q)
                edge_heads.append(p)
    members: dict[int, list[int]] = {}
    for p in range(npairs):
        if touched[p] or include_isolated:
            members.setdefault(uf.find(p), []).append(p)
    edge_count = dict.fromkeys(members, 0)
    for p in edge_heads:
        edge_count[uf.find(p)] += 1
    comps = [
        Component(tuple(divmod(p, nV) for p in ps), edge_count[r])
        for r, ps in members.items()
    ]
    comps.sort(key=lambda c: c.vertices[0])
    return PullbackReport(gU, gV, tuple(comps))


def base_component(report: PullbackReport) -> Optional[Component]:
    """Component through ``(base_U, base_V)``, or None if that pair is isolated."""
    bb = (report.left.base, report.right.base)
    for c in report.components:
        if bb in c.vertices:
            return c
    return None


def component_graph(
    c: Component,
    gU: StallingsGraph,
    gV: StallingsGraph,
    base_pair: Optional[tuple[int, int]] = None,
) -> StallingsGraph:
    """The component as a folded graph based at ``base_pair`` (least pair by default)."""
    ids = {pq: i for i, pq in enumerate(c.vertices)}
    delta = []
    for u, v in c.vertices:
        ru, rv = gU.delta[u], gV.delta[v]
        delta.append(
            tuple(
                None if ru[s] is None or rv[s] is None else ids[(ru[s], rv[s])]
                for s in range(len(ru))
            )
        )
    base = ids[base_pair if base_pair is not None else c.vertices[0]]
    return StallingsGraph(gU.alphabet, base, tuple(delta))


def verify_witness(
    x: Word, generators: Sequence[Word], gU: StallingsGraph, gV: StallingsGraph
) -> bool:
    """Check ``g ∈ U`` and ``x g x⁻¹ ∈ V`` for every generator."""
    xi = invert(x)
    return all(
        membership(gU, g) and membership(gV, concat_reduce(x, concat_reduce(g, xi)))
        for g in generators
    )


def witness(
    c: Component, gU: StallingsGraph, gV: StallingsGraph, check: bool = False
) -> tuple[Word, list[Word]]:
    """Double-coset representative ``x`` and generators of ``U ∩ x⁻¹ V x``.

    With ``alpha``, ``beta`` the tree paths from the bases to the least
    pair ``(p, q)``, returns ``x = beta alpha⁻¹`` and the component basis
    at ``(p, q)`` conjugated by ``alpha``.
    """
    p, q = c.vertices[0]
    alpha = tree_paths(gU)[0][p]
    beta = tree_paths(gV)[0][q]
    x = concat_reduce(beta, invert(alpha))
    alpha_inv = invert(alpha)
    gens = [
        concat_reduce(alpha, concat_reduce(w, alpha_inv))
        for w in basis(component_graph(c, gU, gV))
    ]
    if check and not verify_witness(x, gens, gU, gV):
        raise WitnessError(f"witness for component at {(p, q)} failed membership")
    return x, gens


def shnc_check(
    gens_u: Sequence[Word],
    gens_v: Sequence[Word],
    alphabet: Alphabet = Alphabet(2),
) -> tuple[ShncVerdict, PullbackReport]:
    gU = subgroup_graph(gens_u, alphabet)
    gV = subgroup_graph(gens_v, alphabet)
    report = product(gU, gV)
    return ShncVerdict(report.lhs_sum, chi0(gU) * chi0(gV)), report
