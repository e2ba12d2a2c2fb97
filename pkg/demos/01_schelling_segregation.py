"""Schelling segregation: build a model, step it, collect a run table.

Two groups live on a 20x20 grid.  An agent is happy once at least
`min_to_be_happy` of its eight neighbors share its group; unhappy agents
move to random empty cells.  Local preferences produce global segregation.
"""

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from agentsim import maximum, run, write_csv
from agentsim.models.schelling import make_schelling, schelling_step, x

model = make_schelling({"dims": (20, 20), "density": 0.8, "min_to_be_happy": 3}, seed=42)
print(model.summary())

# Collect the number of happy agents and the largest occupied x coordinate,
# at step 0 and after each of 5 steps.
adata = [("mood", sum), (x, maximum)]
table, _ = run(model, schelling_step, None, 5, adata=adata)
for row in table.rows():
    print(row)
write_csv(table, "schelling_run.csv")
print("wrote schelling_run.csv")

# Run on to steady state and draw the final arrangement.
run(model, schelling_step, None, 95)
fig, ax = plt.subplots(figsize=(5, 5))
for group, color, marker in ((0, "tab:orange", "s"), (1, "tab:blue", "o")):
    pts = [a.pos for a in model.agents.values() if a.group == group]
    ax.scatter([p[0] for p in pts], [p[1] for p in pts],
               c=color, marker=marker, s=28)
ax.set_title(f"step {model.step_count}: "
             f"{sum(a.mood for a in model.agents.values())}/{model.n_agents} happy")
ax.set_aspect("equal")
fig.savefig("schelling_final.png", dpi=120)
print("wrote schelling_final.png")
