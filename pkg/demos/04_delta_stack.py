"""Decomposing P_{G4,G10} layer by layer.

The generating polynomial of the 3 x 9 table of Lambda(G4, G10; n1, n2) is
split by the delta^k maps into a degree 10, 8 and 6 piece.  Each coefficient
is then expressed in MZVs and the two modular periods.  Layer 0 carries
c(Delta;12) and Lambda(Delta;12)/pi times the period polynomials of Delta;
layer 2 carries zeta_{3,7}.  Finally the combination
9 P_{G4,G10} + 14 P_{G6,G8} in layer 0 turns out to be free of modular periods.
"""

from mmvkit.modforms import G
from mmvkit.numerics import PrecisionContext
from mmvkit.perpoly import cancellation_check, decompose, delta_layer, generating_function

ctx = PrecisionContext(50)
dec = decompose(G(4), G(10), ctx)
for (k, name), mult in dec.components.items():
    print(f"layer {k}: {name:22s} x {mult}")
print("unresolved coefficients:", list(dec.unresolved) or "none")

P = generating_function(G(4), G(10), ctx)
top = max(abs(c) for c in delta_layer(P, 2).coeffs)
past = max(abs(c) for c in delta_layer(P, 3).coeffs)
print(f"\n|delta^2 P| = {ctx.nstr(top, 5)}  (top layer, nonzero)")
print(f"|delta^3 P| = {ctx.nstr(past, 5)}  (past the top, vanishes)")

print("\n9 delta^0 P_{G4,G10} + 14 delta^0 P_{G6,G8}:")
rep = cancellation_check(ctx)
for line in rep.lines():
    print("  " + line)
print("free of modular periods:", rep.modular_free, "| single term needs them:", rep.individual_needs_modular)
