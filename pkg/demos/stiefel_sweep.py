"""Which Stiefel pairs (a, b) give zero divisors (a, b) one level up?

Tabulates the sweep for each sampler at the octonion, sedenion and
32-dimensional levels.  The same tables come from
``cdzero sweep -n LEVEL --count N --seed S --kind KIND``.

Run with ``python demos/stiefel_sweep.py``.
"""
from cdzero import sweep_stiefel_zero_divisors
from cdzero.stiefel import SWEEP_KINDS

COUNT = 20

# %%
print(f"{'kind':<11}{'level':>6}{'zero divisors':>15}  annihilator dims")
for n in (3, 4, 5):
    for kind in SWEEP_KINDS[:-1]:
        rep = sweep_stiefel_zero_divisors(n, COUNT, seed=1, kind=kind)
        print(f"{kind:<11}{n:>6}{rep['zero_divisors']:>9}/{COUNT:<5}  {rep['annihilator_dims']}")

# %% generic Stiefel pairs in A_4 x A_4 are zero divisors but fit none of the known families
rep = sweep_stiefel_zero_divisors(4, 5, seed=3, kind="stiefel")
print("\ncase tags at level 4:", rep["by_case"])
print("first one:", rep["unclassified_zero_divisors"][0]["alpha"][:80], "...")
