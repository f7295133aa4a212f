"""
Laguerre polynomials and the displacement operator
==================================================

The displacement operator D(x) = exp(x a^dag - x* a) has closed-form
matrix elements in the number basis built from generalized Laguerre
polynomials. This script compares them with a brute-force matrix
exponential of the truncated generator.
"""

import numpy as np

from squidwave import fock
from squidwave.special import laguerre

# %%
# A few Laguerre values, including a negative superscript
for n, alpha, x in [(2, 0, 1.0), (1, 3, 1.5), (4, 0, 1.0), (4, -3, 1.0)]:
    print(f"L_{n}^{alpha}({x}) = {laguerre(n, alpha, x):+.6f}")

# %%
# Closed form vs scipy expm on the top-left half of a 40-level space.
# The exponential of the truncated generator is wrong near the cutoff,
# so only the interior block is compared.
dim = 40
for x in [0.5, 1 + 1j, 2j, -1.3 + 1.5j]:
    exact = fock.displacement_exact(x, dim)
    brute = fock.displacement_expm(x, dim)
    block = slice(0, dim // 2)
    err = np.max(np.abs(exact[block, block] - brute[block, block]))
    print(f"x = {x!s:>12}: max interior difference {err:.2e}")

# %%
# The first column of D(x) is the coherent state |x>
x = 1.2 - 0.4j
print("D(x)|0> == |x> :", np.allclose(fock.displacement_exact(x, dim)[:, 0], fock.coherent_vector(x, dim)))
