# %% [markdown]
# # Tangent vectors and their spectral data
#
# Points are rank-r orthogonal projections.  A tangent vector at `a` is a
# Hermitian matrix living entirely in the off-diagonal blocks of `a`.

# %%
import numpy as np

from jbgrassmann import manifold as mf

np.set_printoptions(precision=3, suppress=True)

a = mf.make_projection(np.diag([1.0, 1.0, 0.0, 0.0]))
u13 = np.zeros((4, 4)); u13[0, 2] = u13[2, 0] = 1
u24 = np.zeros((4, 4)); u24[1, 3] = u24[3, 1] = 1
u = mf.make_tangent(a, 0.7 * u13 + 0.2 * u24)

# %% [markdown]
# The tangent vector decomposes as a sum of orthogonal rank-one pieces,
# ordered by their weights.

# %%
sd = mf.spectral_decompose(u)
print("weights:", sd.singular_values)
for x in sd.tripotents:
    print(x.real)

# %% [markdown]
# Those pieces pick out a frame of `a`: rank-one projections summing to `a`.

# %%
frame = mf.associated_frame(u, sd)
for atom in frame.atoms:
    print(np.diag(atom.matrix).real)

# %% [markdown]
# The metric averages Levi forms over a frame.  It does not care which
# frame is used.

# %%
rng = np.random.default_rng(3)
b = mf.random_projection(7, 3, rng)
v, w = mf.random_tangent(b, rng), mf.random_tangent(b, rng)
for _ in range(3):
    print(mf.metric(b, v, w, mf.random_frame(b, rng)))
