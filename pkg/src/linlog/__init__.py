"""Sequent proofs for intuitionistic linear logic, cut elimination, and
an exact symbolic vector-space denotation engine."""

__version__ = "0.1.0"
