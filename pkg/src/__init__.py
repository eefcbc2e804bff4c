"""RIO-QED: remote implementation of two-qubit operations, ideal and in cavity QED."""

__version__ = "0.1.0"
