"""The periods of Delta, and a sign the text gets wrong.

omega_+ and omega_- come out of the period polynomial; the Legendre relation
with the printed quasi-periods holds to the 15 digits they were printed with.
The odd critical values Lambda(Delta; 3, 5, 7, 9) are positive and in ratio
14:9:9:14.  Multiplying by i^k cannot turn that into 14:-9:-9:14.
"""

from mmvkit.identities import verify
from mmvkit.lvalues import completed_l_value
from mmvkit.modforms import DELTA
from mmvkit.numerics import PrecisionContext
from mmvkit.perpoly import manin_split, period_polynomial

ctx = PrecisionContext(40)
wp, wm = manin_split(period_polynomial(DELTA, ctx), ctx)
print(f"omega+ = {ctx.nstr(wp, 20)}\nomega- = {ctx.nstr(wm, 20)}")
print(verify("legendre-delta", ctx).text())

vals = {k: completed_l_value(DELTA, k, ctx).value for k in (3, 5, 7, 9)}
unit = vals[3] / 14
print("\nLambda(Delta;k) / (Lambda(Delta;3)/14):", {k: ctx.nstr(v / unit, 12) for k, v in vals.items()})
i = ctx.mp.mpc(0, 1)
twisted = {k: (i**k * v) / (i**3 * unit) for k, v in vals.items()}
print("i^k Lambda(Delta;k), same scaling:     ", {k: ctx.nstr(ctx.mp.re(v), 12) for k, v in twisted.items()})
