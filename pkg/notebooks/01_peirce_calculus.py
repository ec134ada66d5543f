# %% [markdown]
# # Peirce calculus on square matrices
#
# The triple product on complex matrices is `{x y z} = (x y* z + z y* x)/2`.
# Every partial isometry `e` splits the whole matrix space into three
# eigenspaces of `z -> {e e z}`, with eigenvalues 1, 1/2 and 0.

# %%
import numpy as np

from jbgrassmann import triple_core as tc
from jbgrassmann.oracle import eigenspace_peirce
from jbgrassmann.sampling import random_matrix, random_tripotent

np.set_printoptions(precision=4, suppress=True)

# %% [markdown]
# For a diagonal projection the three pieces are just blocks.

# %%
e = np.diag([1.0, 0.0])
z = np.array([[1.0, 2.0], [3.0, 4.0]])
for k, part in zip(tc.PEIRCE_INDICES, tc.peirce_decompose(e, z)):
    print(f"P_{k}(e) z =\n{part.real}")

# %% [markdown]
# A random partial isometry of rank 2 in C^5 works the same way.  The
# projections agree with a brute-force eigendecomposition of `e□e` written
# as a 25 x 25 matrix.

# %%
rng = np.random.default_rng(0)
e = random_tripotent(5, 2, rng)
z = random_matrix(5, rng)
for k in tc.PEIRCE_INDICES:
    gap = np.linalg.norm(tc.peirce_project(e, k, z) - eigenspace_peirce(e, k, z), 2)
    print(f"k={k}: distance to eigenspace oracle {gap:.2e}")

# %% [markdown]
# The multiplication rule `{Z_i Z_j Z_k} ⊂ Z_{i-j+k}` in one instance:
# a product landing outside {0, 1/2, 1} vanishes.

# %%
x = tc.peirce_project(e, 1, random_matrix(5, rng))
y = tc.peirce_project(e, 0, random_matrix(5, rng))
w = tc.peirce_project(e, 1, random_matrix(5, rng))
print("|{Z1 Z0 Z1}| =", np.linalg.norm(tc.triple_product(x, y, w), 2))

# %% [markdown]
# At a rank-one `e` the triple product `{e u v}` of two Peirce-1/2 elements
# is a multiple of `e`; that scalar is the Levi form, and it is positive.

# %%
e1 = random_tripotent(5, 1, rng)
u = tc.peirce_project(e1, 0.5, random_matrix(5, rng))
print("<u, u>_e =", tc.levi_form(e1, u, u).real, " |u|^2 =", np.linalg.norm(u, 2) ** 2)
