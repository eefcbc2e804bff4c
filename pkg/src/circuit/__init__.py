"""Qubit-register circuit layer."""

from .engine import Branch, MeasurementRecord, apply_gate, enumerate_branches, measure
from .gates import CNOT, H, I, PAULI, PROTOCOL_REGISTER, X, Y, Z, GateConst, GateName, QubitId, Register

__all__ = [
    "CNOT",
    "H",
    "I",
    "PAULI",
    "PROTOCOL_REGISTER",
    "X",
    "Y",
    "Z",
    "Branch",
    "GateConst",
    "GateName",
    "MeasurementRecord",
    "QubitId",
    "Register",
    "apply_gate",
    "enumerate_branches",
    "measure",
]
