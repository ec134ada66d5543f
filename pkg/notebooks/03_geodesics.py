# %% [markdown]
# # Geodesics, Exp and Log
#
# The simplest case is lines in the plane: rank-one projections on C^2.
# Moving with velocity `θ(E12 + E21)` from `E11` turns the line by `θ t`.

# %%
import numpy as np

from jbgrassmann import geodesy as geo
from jbgrassmann import manifold as mf
from jbgrassmann.oracle import commutator_flow

np.set_printoptions(precision=5, suppress=True)

a = mf.make_projection(np.diag([1.0, 0.0]))
swap = np.array([[0.0, 1.0], [1.0, 0.0]])
u = mf.make_tangent(a, np.pi / 4 * swap)
for t in (0.0, 0.5, 1.0):
    print(t, geo.geodesic_point(a, u, t).matrix.real.ravel())

# %% [markdown]
# The closed form agrees with conjugating `a` by `exp(tΩ)`, `Ω = ua - au`,
# on a larger random example.

# %%
rng = np.random.default_rng(1)
a = mf.random_projection(10, 4, rng)
u = mf.random_tangent(a, rng)
gap = max(np.linalg.norm(geo.geodesic_point(a, u, t).matrix - commutator_flow(a, u, t).matrix, 2)
          for t in np.linspace(-2, 2, 9))
print(f"largest gap to the exponential flow: {gap:.2e}")

# %% [markdown]
# Log inverts Exp, and its length is the distance.

# %%
b = mf.random_projection(10, 4, rng)
v = geo.log_map(a, b)
print("exp(log b) - b:", np.linalg.norm(geo.exp_map(a, v).matrix - b.matrix, 2))
print("|log b|, d(a,b):", mf.tangent_norm(v), geo.distance(a, b))

# %% [markdown]
# When `b` contains a direction orthogonal to all of `a`, there are many
# shortest paths and Log refuses.

# %%
from jbgrassmann.errors import NotInNormalNeighbourhoodError

e11, e22 = mf.make_projection(np.diag([1.0, 0.0])), mf.make_projection(np.diag([0.0, 1.0]))
try:
    geo.log_map(e11, e22)
except NotInNormalNeighbourhoodError as exc:
    print("refused:", exc)
print("distance still defined:", geo.distance(e11, e22))
