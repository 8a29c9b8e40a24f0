"""Python front end for the flying-ancilla FPQA compiler.

Schedules, configs and metrics are plain dicts in the same JSON layout the
``qpilot`` command line tool reads and writes.
"""

import json

from . import _qpilot
from ._qpilot import QpilotError, random_circuit_qasm, random_regular_edges

__all__ = [
    "QpilotError",
    "compile_edges",
    "compile_pauli",
    "compile_qasm",
    "config_for_qubits",
    "equivalence",
    "error_rate",
    "evaluate",
    "movement_csv",
    "random_circuit_qasm",
    "random_regular_edges",
    "validate",
]


def _enc(obj):
    return "" if obj is None else json.dumps(obj)


def config_for_qubits(n, width=0):
    return json.loads(_qpilot.config_for_qubits(n, width))


def compile_qasm(text, config=None, width=0):
    return json.loads(_qpilot.compile_qasm(text, _enc(config), width))


def compile_pauli(text, angle=0.1, config=None, width=0):
    return json.loads(_qpilot.compile_pauli(text, angle, _enc(config), width))


def compile_edges(n, edges, gamma=0.1, config=None, width=0):
    return json.loads(_qpilot.compile_edges(n, list(edges), gamma, _enc(config), width))


def validate(schedule):
    return _qpilot.validate(json.dumps(schedule))


def evaluate(schedule):
    return json.loads(_qpilot.evaluate(json.dumps(schedule)))


def error_rate(metrics, f1=0.999, f2=0.999, t2=1.5, t0=300e-6, gate_count=False):
    return _qpilot.error_rate(json.dumps(metrics), f1, f2, t2, t0, gate_count)


def equivalence(qasm, schedule, n_random=20):
    return _qpilot.equivalence_qasm(qasm, json.dumps(schedule), n_random)


def movement_csv(schedule):
    return _qpilot.movement_csv(json.dumps(schedule))
