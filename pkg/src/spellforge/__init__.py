"""Natural-language game mechanics toolkit.

Two constrained JSON DSLs (compositional spells and cellular-automata
materials), the deterministic runtimes that execute them, a prompt
pipeline with offline mock providers, similarity metrics, an automated
judge, and the experiment harness that ties them together.
"""

__version__ = "0.1.0"
