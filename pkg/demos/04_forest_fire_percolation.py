"""Forest fire: a cellular automaton with a percolation phase transition.

Trees fill a 100x100 grid at a given density; fire starts along the left
edge and spreads to orthogonally adjacent trees.  Sweeping the density
shows the sharp transition in the fraction of trees burnt.
"""

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from agentsim import step
from agentsim.models.forestfire import (burnt_tree_fraction, done,
                                        forestfire_model_step, make_forestfire)

densities = [0.30, 0.40, 0.50, 0.55, 0.60, 0.65, 0.70, 0.80, 0.90]
seeds = range(10)
means = []
for p in densities:
    fractions = []
    for seed in seeds:
        model = make_forestfire({"dims": (100, 100), "density": p}, seed)
        step(model, None, forestfire_model_step, done)
        fractions.append(burnt_tree_fraction(model))
    means.append(sum(fractions) / len(fractions))
    print(f"density {p:.2f}: mean burnt-tree fraction {means[-1]:.3f}")

fig, ax = plt.subplots(figsize=(6, 4.5))
ax.plot(densities, means, "o-")
ax.set_xlabel("tree density")
ax.set_ylabel("mean burnt fraction of trees")
ax.set_title("percolation transition, 100x100, 10 seeds")
fig.savefig("forestfire_transition.png", dpi=120)
print("wrote forestfire_transition.png")
