"""Black-box parameter tuning with differential evolution.

Any function of model parameters can be a cost.  Here: (1) a sanity check
on the 3-D sphere function, then (2) tuning the Schelling threshold to
minimize the number of steps until 90% of agents are happy, averaging
each evaluation over replicate seeds because the model is stochastic.
"""

from agentsim import OptimizeSpec, optimize
from agentsim.models.schelling import steps_to_90pct_happy

spec = OptimizeSpec(bounds={"x": (-5, 5), "y": (-5, 5), "z": (-5, 5)},
                    cost=lambda p, s: sum(v * v for v in p.values()),
                    budget=4000, population=20, seed=0)
best, cost, log = optimize(spec)
print(f"sphere: best cost {cost:.2e} at "
      + ", ".join(f"{k}={v:.4f}" for k, v in best.items()))

replicates = [11, 22, 33]
cache = {}


def tuning_cost(params, seed):
    k = int(params["min_to_be_happy"])
    if k not in cache:
        p = {"min_to_be_happy": k, "dims": (10, 10), "density": 0.7}
        cache[k] = sum(steps_to_90pct_happy(p, s) for s in replicates) / len(replicates)
    return cache[k]


spec = OptimizeSpec(bounds={"min_to_be_happy": (0.0, 8.999)}, cost=tuning_cost,
                    budget=120, population=10, seed=1)
best, cost, log = optimize(spec)
print(f"schelling: threshold {int(best['min_to_be_happy'])} reaches 90% happy "
      f"in {cost:.1f} steps (averaged over {len(replicates)} seeds)")
print("generations logged:", log.nrows)
