"""Checkpoints: save a mid-run model, restore it, and get the same future.

The checkpoint stores agents, properties (including grid arrays), space
configuration, and the rng state, so a restored model's evolution is
bit-identical to the original's.
"""

import io

from agentsim import load_checkpoint, save_checkpoint, step
from agentsim.models import get_model

spec = get_model("wolfsheep")
model = spec.build(seed=3)
step(model, spec.agent_step, spec.model_step, 50)

save_checkpoint(model, "wolfsheep_50.abmck")
print(f"saved at step {model.step_count} with {model.n_agents} agents")

restored = load_checkpoint("wolfsheep_50.abmck")
step(model, spec.agent_step, spec.model_step, 100)
step(restored, spec.agent_step, spec.model_step, 100)

same_ids = list(model.agents) == list(restored.agents)
same_pos = all(a.pos == b.pos for a, b in
               zip(model.agents.values(), restored.agents.values()))
print(f"after 100 more steps: identical ids={same_ids}, identical positions={same_pos}")

# Canonical serialization: saving the restored model reproduces the file.
buf_a, buf_b = io.StringIO(), io.StringIO()
save_checkpoint(load_checkpoint("wolfsheep_50.abmck"), buf_a)
save_checkpoint(load_checkpoint("wolfsheep_50.abmck"), buf_b)
print("byte-identical resave:", buf_a.getvalue() == buf_b.getvalue())
