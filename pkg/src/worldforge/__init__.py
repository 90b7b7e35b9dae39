"""World-model training on procedurally generated toy platformer environments.

Pipeline: collect interaction data, train a discrete video tokenizer and an
action-conditioned masked-token dynamics model, train an uncertainty-driven
exploration agent on top of the frozen model, and fine-tune on the explored
data. An evaluation suite and an interactive play service round it out.
"""

__version__ = "0.1.0"
