"""Risk-driven assurance workbench for human-robot collaboration cells.

The package ties together four stages: a small risk modeling language with
validation and assurance-case scaffolding (`riskbench.riskml`), a
deterministic simulator of a collaborative conveyor cell (`riskbench.sim`),
falsification search over a model's feature space (`riskbench.search`), and
decision-tree explanation of campaign archives (`riskbench.explain`). The
`riskbench` command line drives the full loop.
"""

__version__ = "0.1.0"
