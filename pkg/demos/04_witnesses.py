# # Every point of the band is attained
#
# For (t, y) inside the band there is a Pickands function with the
# prescribed measure passing through it. Tents cover the lower part of the
# band, the constant-value P family the upper part.

# %%
import numpy as np

from evcbounds import Region, calibrate, envelopes as env, measures as m, witness
from evcbounds.verification import random_pickands

# %%
w = witness("rho", 0.5, 0.5, 5 / 7)
print("on the lower bound:", w.function.family, w.function.knots)

y = env.upper_envelope_rho(0.5, 0.5)
w = witness("rho", 0.5, 0.5, y)
print("on the envelope:   ", w.function.family, "rho =", w.achieved_value)

# %% [markdown]
# Random interior points, each re-measured.

# %%
rng = np.random.default_rng(0)
R = Region("tau", 0.3)
worst = 0.0
count = 0
while count < 200:
    t, y = rng.uniform(), rng.uniform(0.5, 1)
    if not R.lower(t) < y < R.upper(t):
        continue
    A = witness("tau", 0.3, t, y).function
    worst = max(worst, abs(m.tau(A) - 0.3), abs(A(t) - y))
    count += 1
print(f"200 witnesses for tau=0.3, worst residual {worst:.1e}")

# %% [markdown]
# The converse direction: push random Pickands functions onto the level set
# along a straight path and check they stay inside the band.

# %%
t = np.linspace(0, 1, 401)
lo, hi = env.lower_bound("rho", 0.6, t), env.upper_bound("rho", 0.6, t)
excess = 0.0
for _ in range(100):
    A = calibrate(random_pickands(rng), "rho", 0.6)
    excess = max(excess, np.max(lo - A(t)), np.max(A(t) - hi))
print(f"100 calibrated members of rho=0.6, largest excursion outside the band: {excess:.1e}")
