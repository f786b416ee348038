"""A walk through the smallest zero divisors: the pair (e1, e2) in the sedenions.

Run with ``python demos/sedenion_zero_divisors.py``.
"""
import numpy as np

from cdzero import (
    annihilator, construct_orthogonal, construct_spectral, eigenspace, multiply, norm_sq, parse_element,
    spectrum, tilde,
)

# %% the pair (e1, e2) flattens to e1 + e10 in A_4
a = parse_element("e1 + e10", 4)
x = parse_element("-e4 + e15", 4)
print("a =", a, "  x =", x)
print("a x =", multiply(a, x))
print("|a|^2 |x|^2 =", norm_sq(a) * norm_sq(x), " but |a x|^2 =", norm_sq(multiply(a, x)))

# %% the annihilator is a 4-dimensional space
ann = annihilator(a)
print("\nannihilator of a, dim", ann.dim)
for v in ann.basis:
    print("   ", v)

# %% spectrum of -L_u^2 on the complement of H_a
rep = spectrum(a)
for c in rep.clusters:
    print(f"value {c.value:.6f}  multiplicity {c.multiplicity}")

# the mirror vector: (x1, x2) kills a, so (x2, x1) sits in the eigenspace of 2
mirror = parse_element("e7 - e12", 4)
print("\na(a m) =", multiply(a, multiply(a, mirror)), "  = -4 m, so value 2 for unit a")
print("in eigenspace of 2:", eigenspace(a, 2.0).contains(mirror))

# %% each eigenspace of -L_u^2 is closed under tilde
v = eigenspace(a, 1.0).vectors[0]
u = a.to_float() / np.sqrt(2)
print("tilde keeps the value:", np.allclose(multiply(u, multiply(u, tilde(v))).to_numpy(), -tilde(v).to_numpy()))

# %% constructions one level up
pair = construct_orthogonal(parse_element("e1", 3), parse_element("e2", 3))
print("\n(a, b) with b in the complement:", pair.alpha, " killed by", pair.chi)

# a nonzero spectral value k gives (a, sqrt(k)|a| e~0)
pair, alt = construct_spectral(a, 2.0)
print("spectral value 2:", pair.alpha, " killed by", pair.chi)
print("annihilator dimension in A_5:", annihilator(pair.alpha).dim)
