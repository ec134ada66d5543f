# %% [markdown]
# # Symmetries and transport
#
# Flipping the sign of the off-diagonal blocks of `c` is an involution.
# With `c` the midpoint of `a` and `b`, it swaps the two endpoints.

# %%
import numpy as np

from jbgrassmann import geodesy as geo
from jbgrassmann import manifold as mf
from jbgrassmann import triple_core as tc

rng = np.random.default_rng(7)
a, b = mf.random_projection(6, 2, rng), mf.random_projection(6, 2, rng)
c = geo.midpoint(a, b)
print("d(a,c), d(c,b):", geo.distance(a, c), geo.distance(c, b))
print("|σ_c(a) - b|:", np.linalg.norm(geo.peirce_symmetry(c, a).matrix - b.matrix, 2))

# %% [markdown]
# Any two points of the same rank are related by a unitary conjugation,
# which preserves the triple product.

# %%
w = geo.transport_automorphism(a, b)
x, y, z = (rng.normal(size=(6, 6)) + 1j * rng.normal(size=(6, 6)) for _ in range(3))
lhs = geo.apply_automorphism(w, tc.triple_product(x, y, z))
rhs = tc.triple_product(*(geo.apply_automorphism(w, m) for m in (x, y, z)))
print("|w a w* - b|:", np.linalg.norm(geo.apply_automorphism(w, a) - b.matrix, 2))
print("triple product defect:", np.linalg.norm(lhs - rhs, 2))

# %% [markdown]
# Distances are unchanged by the same conjugation.

# %%
u = np.linalg.qr(rng.normal(size=(6, 6)) + 1j * rng.normal(size=(6, 6)))[0]
ua = mf.make_projection(u @ a.matrix @ u.conj().T)
ub = mf.make_projection(u @ b.matrix @ u.conj().T)
print(geo.distance(a, b), geo.distance(ua, ub))
