# # Pickands functions and the five parametric families
#
# A bivariate extreme-value copula is fixed by its Pickands function A, a
# convex map on [0, 1] with max(t, 1-t) <= A(t) <= 1. Here every A is
# piecewise linear and stored as a list of knots.

# %%
import numpy as np

from evcbounds import (
    FamilySpec,
    copula_eval,
    dominates,
    from_knots,
    independence,
    is_valid,
    make_family,
)

# %% [markdown]
# The two extremes: A = 1 (independence) and A = max(t, 1-t) (comonotone).

# %%
Pi = independence()
M = make_family(FamilySpec("T", 0.5, 0.5))
print(Pi)
print(M)

# %% [markdown]
# The families T (tents), L (flat middle), P (two kinks), Z and W.

# %%
specs = [
    FamilySpec("T", 0.3, 0.8),
    FamilySpec("L", None, 0.75),
    FamilySpec("P", 0.2, 0.8),
    FamilySpec("Z", 0.3, 0.85),
    FamilySpec("W", 0.2, 0.6),
]
t = np.linspace(0, 1, 6)
for spec in specs:
    A = make_family(spec)
    print(f"{spec.tag}: knots={A.knots}")
    print("   A(t) =", np.round(A(t), 4))

# %% [markdown]
# L_y and P_{1-y, y} are the same function; equality is on canonical knots.

# %%
print(make_family(FamilySpec("L", None, 0.75)) == make_family(FamilySpec("P", 0.25, 0.75)))

# %% [markdown]
# Validation returns a diagnostic naming the offending knot.

# %%
print(is_valid([[0, 1], [0.3, 0.9], [0.6, 0.7], [1, 1]]))
print(is_valid([[0, 1], [0.5, 0.45], [1, 1]]))
print(from_knots([[0, 1], [0.25, 0.875], [0.5, 0.75], [1, 1]]).knots)  # collinear knot dropped

# %% [markdown]
# The copula itself, C_A(u, v) = (uv)^{A(ln u / ln uv)}, and the pointwise order.

# %%
A = make_family(FamilySpec("P", 0.2, 0.8))
print("C_A(0.3, 0.6) =", copula_eval(A, 0.3, 0.6), " independence:", 0.3 * 0.6)
print("A vs M:", dominates(A, M).value, " Pi vs A:", dominates(Pi, A).value)
T1, T2 = make_family(FamilySpec("T", 0.5, 0.55)), make_family(FamilySpec("L", None, 0.6))
print("T_{0.5,0.55} vs L_0.6:", dominates(T1, T2).value)
