"""How the spectrum of a doubly pure element changes with the level.

Up to the sedenions every doubly pure element has 1 in its spectrum and
a 4-dimensional eigenspace for it.  From A_5 on, random elements lose the
value 1 and the kernel of a^2 I - L_a^2 shrinks to H_a.

Run with ``python demos/spectrum_beyond_sedenions.py``.
"""
import warnings

import numpy as np

from cdzero import CDElement, spectrum
from cdzero.sampling import random_doubly_pure
from cdzero.spectrum import kernel_dimension_bound_check

warnings.simplefilter("ignore", RuntimeWarning)
rng = np.random.default_rng(2024)

# %%
print(f"{'level':>5}  {'has 1':>6}  {'kernel dims':>12}  sample spectrum")
for n in (3, 4, 5, 6):
    has_one, dims, sample = 0, set(), None
    for i in range(20):
        a = random_doubly_pure(rng, n)
        rep = spectrum(a)
        has_one += rep.contains_one
        dims.add(kernel_dimension_bound_check(a))
        sample = sample or rep.lambdas
    shown = ", ".join(f"{v:.3f}" for v in sample[:6]) + (" ..." if len(sample) > 6 else "")
    print(f"{n:>5}  {has_one:>3}/20  {str(sorted(dims)):>12}  {shown}")

# %% basis elements stay alternative at every level: all values are 1
for n in (4, 5, 6):
    values = {round(float(v), 9) for v in spectrum(CDElement.basis(n, 3)).lambdas}
    print(f"e3 in A_{n}: values {sorted(values)}")
