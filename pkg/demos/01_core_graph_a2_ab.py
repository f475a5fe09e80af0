"""
The core graph of <a^2, ab>
===========================

Fold the two-loop bouquet of a^2 and ab, read off rank and reduced rank,
and classify its valence-3 vertices.
"""

from freefold import Alphabet, basis, build_bouquet, census, chi0, core, fold, parse_words, rank, to_dot

F2 = Alphabet(2)
gens = parse_words("aa, ab", F2)

# Before folding: the base plus one interior vertex per loop.
pre = build_bouquet(gens, F2)
print("bouquet:", pre.num_vertices, "vertices,", len(pre.edges), "edges")

# Both loops start with an a-edge out of the base, so those two edges fold.
g = fold(pre)
print("folded:", g.num_vertices, "vertices,", g.num_edges, "edges")
print("rank", rank(g), "reduced rank", chi0(g))
print("free basis from the spanning tree:", [str(w) for w in basis(g)])

# Each vertex misses exactly one of its four slots.
c = census(core(g, keep_base=False))
print("missing slots:", c.by_missing)
print("(in, out) signatures:", c.by_signature)

print(to_dot(g))
