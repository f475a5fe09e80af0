"""
Fiber products and the strengthened inequality
==============================================

Take U = V = <a^2, b>.  Here the inequality is an equality, and each
component of the product gives one double coset.
"""

from freefold import Alphabet, parse_words, shnc_check, witness

F2 = Alphabet(2)
U = parse_words("aa, b", F2)
verdict, report = shnc_check(U, U)

for comp in report.components:
    x, gens = witness(comp, report.left, report.right, check=True)
    print(f"pairs={list(comp.vertices)} E={comp.num_edges} chi0={comp.chi0} "
          f"x={str(x) or '1'} generators={[str(w) for w in gens]}")

print(f"sum of chi0 = {verdict.lhs}, chi0(U) chi0(V) = {verdict.rhs}, holds: {verdict.holds}")

# Conjugating V leaves both sides unchanged.
V = parse_words("Baab, b", F2)
print("with V conjugated by b:", shnc_check(U, V)[0])
