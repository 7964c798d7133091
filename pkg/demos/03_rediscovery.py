"""Finding the f93 identity without being told the coefficients.

Give the relation finder Lambda(G4, G10; 1, 1) and the basis
{1, c(Delta;12), zeta_{3,9}/pi^12}.  It should come back with 36/691 and
-315/64 and no rational part.  A second, unrelated engine (PSLQ) must agree,
and the relation is then re-evaluated at doubled precision.
"""

from mmvkit.mmv import mmv
from mmvkit.numerics import PrecisionContext
from mmvkit.periods import period_basis
from mmvkit.relfind import find_relation, required_digits

height = 10**6
digits = required_digits(4, height) + 20
ctx = PrecisionContext(digits)
print(f"height bound {height}, needs >= {required_digits(4, height)} digits; working at {digits}")

basis = period_basis(("1", "c(Delta;12)", "zeta_{3,9}/pi^12"), ctx)
target = mmv("G4,G10", (1, 1), ctx)
rel = find_relation(target, basis, ctx, target_name="Lambda(G4,G10;1,1)", max_height=height,
                    cross_check=True, confirm=lambda c: mmv("G4,G10", (1, 1), c))
print(rel.expression())
print(f"integer vector {rel.integer_vector}, residual {rel.residual:.2e}, "
      f"confirmed to {rel.confirmed_digits} digits at doubled precision")

print("\nA negative control: Lambda(G4,G10;1,1) against {1, zeta(3)/pi^3} only.")
bad = find_relation(target, period_basis(("1", "z(3)/pi^3"), ctx), ctx, max_height=height)
print(bad.expression(), f"(certificate margin {bad.margin:.2e})")
