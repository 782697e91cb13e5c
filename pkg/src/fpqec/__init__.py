"""fpqec: spacetime toolkit for dynamic topological codes."""

__version__ = "0.1.0"
