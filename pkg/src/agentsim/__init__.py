"""agentsim: a deterministic agent-based modelling engine.

Core pieces: a model container with pluggable spaces (grid, continuous,
graph, or anything implementing the five-operation space contract),
activation schedulers, declarative data collection into tables, bundled
reference models, fixed-step and adaptive ODE integrators for hybrid
models, parameter scans and evolutionary optimization, checkpointing, and
an interactive exploration server.
"""

__version__ = "0.1.0"

from .collect import (AGGREGATORS, CollectorResolution, DataTable, count,
                      csv_bytes, maximum, mean, minimum, read_csv, run, std,
                      write_csv)
from .core import (Agent, DegenerateWeights, Model, UnknownAgent, agent_props,
                   create_model, prop_fields, step)
from .ensemble import OptimizeSpec, ScanSpec, optimize, paramscan
from .ode import (Integrator, IntegratorConfig, NumericalBlowup, OdeProblem,
                  StepBudgetExceeded, Trajectory, integrate_adaptive,
                  integrate_euler)
from .persist import (CorruptCheckpoint, UnsupportedVersion, load_checkpoint,
                      save_checkpoint)
from .rng import Rng, mix_seed, seed_rng, splitmix64
from .schedule import ByProperty, ByType, Custom, Fastest, Filtered, Random, schedule
from .space import (ContinuousSpace, GraphSpace, GridSpace, NoEmptyPosition,
                    OccupiedNode, Space)

__all__ = [
    "__version__",
    "AGGREGATORS", "CollectorResolution", "DataTable", "count", "csv_bytes",
    "maximum", "mean", "minimum", "read_csv", "run", "std", "write_csv",
    "Agent", "DegenerateWeights", "Model", "UnknownAgent", "agent_props",
    "create_model", "prop_fields", "step",
    "OptimizeSpec", "ScanSpec", "optimize", "paramscan",
    "Integrator", "IntegratorConfig", "NumericalBlowup", "OdeProblem",
    "StepBudgetExceeded", "Trajectory", "integrate_adaptive", "integrate_euler",
    "CorruptCheckpoint", "UnsupportedVersion", "load_checkpoint", "save_checkpoint",
    "Rng", "mix_seed", "seed_rng", "splitmix64",
    "ByProperty", "ByType", "Custom", "Fastest", "Filtered", "Random", "schedule",
    "ContinuousSpace", "GraphSpace", "GridSpace", "NoEmptyPosition",
    "OccupiedNode", "Space",
]
