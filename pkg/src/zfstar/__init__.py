"""ZF* workbench: formulas, finite models, parthood classification and a Fock-space bridge."""

__version__ = "0.1.0"

__all__ = ["cli", "config", "finder", "fock", "formula", "mereology", "model", "semantics"]
