# # Sharp bounds on A for a fixed rho or tau
#
# Fix a target value v. Every Pickands function with that rho (or tau) lies
# between a lower bound L_{phi^{-1}(v)} and an upper envelope U_v. Run with
# --plot to draw the bands (needs matplotlib).

# %%
import sys

import numpy as np

from evcbounds import boundary_curves, envelopes as env
from evcbounds.verification import sweep_envelope

# %%
t = np.linspace(0, 1, 11)
for v in (0.25, 0.5, 0.9):
    rows = boundary_curves("rho", v, 11)
    print(f"rho={v}: lower={np.round(rows[:, 1], 4)}")
    print(f"        upper={np.round(rows[:, 2], 4)}")

# %% [markdown]
# For rho the envelope has a curved middle piece between two breakpoints.
# Compare the closed form against a brute-force maximum over the family.

# %%
grid = np.linspace(0, 1, 201)
for v in (0.25, 0.5, 0.9):
    gap = np.max(np.abs(env.upper_envelope_rho(v, grid) - sweep_envelope("rho", v, grid, 10_000)))
    print(f"rho={v}: breakpoints={np.round(env.rho_breakpoints(v), 4)}, max gap to sweep={gap:.2e}")
print("U_{3/4}(1/2) =", env.upper_envelope_rho(0.75, 0.5), " 5/7 =", 5 / 7)

# %% [markdown]
# For tau the envelope is the tent through (1/2, 1 - tau/2).

# %%
print("tau=0.5 upper:", np.round(env.upper_envelope_tau(0.5, t), 4))

# %%
if "--plot" in sys.argv:
    import matplotlib.pyplot as plt

    fig, axes = plt.subplots(1, 2, figsize=(10, 4), sharey=True)
    for ax, kind in zip(axes, ("rho", "tau")):
        for v in (0.1, 0.25, 0.5, 0.75, 0.9):
            rows = boundary_curves(kind, v, 401)
            ax.fill_between(rows[:, 0], rows[:, 1], rows[:, 2], alpha=0.25, label=f"{kind}={v}")
        ax.plot(grid, np.maximum(grid, 1 - grid), "k", lw=0.8)
        ax.set_title(kind)
        ax.set_xlabel("t")
        ax.legend()
    plt.tight_layout()
    plt.show()
