"""Reference codes, graphs and logical states shipped with the package."""
from __future__ import annotations

import json
from importlib import resources

from .graph import Graph, load_graph
from .pauli import GeneratorSet, parse_generator_set
from .statevector import StateVector

_CODES = {"5_1": "code_5_1.txt", "4_1": "code_4_1.txt"}


def _text(name: str) -> str:
    return resources.files("clustercode").joinpath("data", name).read_text(encoding="utf-8")


def data_path(name: str):
    return resources.files("clustercode").joinpath("data", name)


def load_code(name: str) -> GeneratorSet:
    """``"5_1"`` or ``"4_1"``."""
    return parse_generator_set(_text(_CODES[name]))


def pentagon_hub() -> Graph:
    return load_graph(_text("pentagon_hub.json"))


def five_vertex_cluster() -> Graph:
    return load_graph(_text("five_vertex_cluster.txt"))


def logical_states(name: str) -> tuple[StateVector, StateVector]:
    """(|0_L>, |1_L>) from the stored expansions; ``"5_1"`` or ``"4_1"``."""
    data = json.loads(_text(f"logical_{name}.json"))
    return (
        StateVector.from_json(data["zero_L"]["amplitudes"]),
        StateVector.from_json(data["one_L"]["amplitudes"]),
    )
