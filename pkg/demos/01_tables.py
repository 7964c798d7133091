"""Double Eisenstein integrals in low weight are multiple zeta values.

We compute the 3x3 table Lambda(G4, G4; i, j), spot the rational entries
automatically, and then ask the relation finder for the rest in terms of
zeta(3)^2/pi^6, zeta(3)/pi^3 and zeta(5)/pi^5.
"""

from mmvkit.mmv import mmv_table
from mmvkit.modforms import G
from mmvkit.numerics import PrecisionContext
from mmvkit.periods import period_basis
from mmvkit.relfind import find_relation, identify_rational

ctx = PrecisionContext(60)
table = mmv_table(G(4), G(4), ctx)
even = period_basis(("1", "z(3)^2/pi^6"), ctx)

print("Lambda(G4, G4; i, j) at 60 digits\n")
for (i, j), entry in sorted(table.entries.items()):
    value = entry.value.real
    q = identify_rational(value, ctx)
    if q is not None:
        print(f"  ({i},{j})  {ctx.nstr(value, 25)}  = {q} exactly")
        continue
    rel = find_relation(value, even, ctx, target_name=f"({i},{j})", max_height=10**9)
    if not rel.found:
        odd = period_basis(("z(3)/pi^3", "z(5)/pi^5"), ctx)
        rel = find_relation(value, odd, ctx, target_name=f"({i},{j})", max_height=10**9)
    print(f"  ({i},{j})  {ctx.nstr(value, 25)}  {rel.expression().split(' = ', 1)[1]}")

print("\nThe symmetry Lambda_{i,j} = Lambda_{4-j,4-i} is visible in the output, and so is")
print("the shuffle relation Lambda_{i,j} + Lambda_{j,i} = Lambda(G4;i) Lambda(G4;j).")
