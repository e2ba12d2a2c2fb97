"""Wolf-sheep-grass: predator-prey cycles on a periodic grid.

Sheep graze (grass regrows on a countdown), wolves hunt sheep, both pay
energy to move and reproduce probabilistically.  Population counts and the
grown-grass fraction are collected with model-level collectors.
"""

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from agentsim import run
from agentsim.models.wolfsheep import (grass_fraction, make_wolfsheep, sheep_count,
                                       wolf_count, wolfsheep_model_step,
                                       wolfsheep_step)

model = make_wolfsheep({}, seed=42)
_, table = run(model, wolfsheep_step, wolfsheep_model_step, 500,
               mdata=[sheep_count, wolf_count, grass_fraction])

steps = table.column("step")
fig, ax = plt.subplots(figsize=(9, 5))
ax.plot(steps, table.column("sheep_count"), label="sheep", color="tab:gray")
ax.plot(steps, table.column("wolf_count"), label="wolves", color="tab:red")
ax2 = ax.twinx()
ax2.plot(steps, table.column("grass_fraction"), label="grass", color="tab:green",
         alpha=0.6)
ax.set_xlabel("step")
ax.set_ylabel("population")
ax2.set_ylabel("grown grass fraction")
ax.legend(loc="upper left")
fig.savefig("wolfsheep.png", dpi=120)
print(f"final: {table.row(table.nrows - 1)}")
print("wrote wolfsheep.png")
