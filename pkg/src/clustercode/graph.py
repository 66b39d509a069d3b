"""Graphs, cluster-state stabilizers and the CZ preparation circuit."""
from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .errors import ValidationError
from .pauli import GeneratorSet, PauliOperator


@dataclass(frozen=True, eq=False)
class Graph:
    """Simple undirected graph stored as a dense 0/1 adjacency matrix."""

    adjacency: np.ndarray

    def __post_init__(self):
        a = np.array(self.adjacency, dtype=np.uint8)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ValidationError(f"adjacency must be square, got shape {a.shape}")
        if np.any(a > 1):
            raise ValidationError("adjacency entries must be 0 or 1")
        if np.any(a != a.T):
            raise ValidationError("adjacency is not symmetric")
        if np.any(np.diag(a)):
            raise ValidationError("adjacency has a nonzero diagonal (self-loop)")
        a.setflags(write=False)
        object.__setattr__(self, "adjacency", a)

    @property
    def n(self) -> int:
        return self.adjacency.shape[0]

    def neighbors(self, v: int) -> list[int]:
        """1-based neighbours of 1-based vertex ``v``."""
        return [int(u) + 1 for u in np.flatnonzero(self.adjacency[v - 1])]

    def edges(self) -> list[tuple[int, int]]:
        """Edges as 1-based ``(i, j)`` with ``i < j``, lexicographically sorted."""
        i, j = np.nonzero(np.triu(self.adjacency))
        return [(int(a) + 1, int(b) + 1) for a, b in zip(i, j)]

    def is_connected(self) -> bool:
        if self.n == 0:
            return True
        seen = {1}
        stack = [1]
        while stack:
            for u in self.neighbors(stack.pop()):
                if u not in seen:
                    seen.add(u)
                    stack.append(u)
        return len(seen) == self.n

    def relabel(self, perm: list[int]) -> Graph:
        """Graph where old vertex ``v`` becomes ``perm[v - 1]`` (1-based)."""
        p = np.asarray(perm) - 1
        out = np.zeros_like(self.adjacency)
        out[np.ix_(p, p)] = self.adjacency
        return Graph(out)

    def __eq__(self, other) -> bool:
        return isinstance(other, Graph) and np.array_equal(self.adjacency, other.adjacency)

    def __hash__(self) -> int:
        return hash(self.adjacency.tobytes())

    def to_json(self) -> dict:
        return {"n": self.n, "adjacency": self.adjacency.astype(int).tolist()}

    @classmethod
    def from_json(cls, data: dict) -> Graph:
        try:
            n = int(data["n"])
            adj = data["adjacency"]
        except (KeyError, TypeError, ValueError) as exc:
            raise ValidationError(f"adjacency JSON needs 'n' and 'adjacency': {exc}") from None
        a = np.array(adj, dtype=np.int64) if n else np.zeros((0, 0), dtype=np.int64)
        if a.shape != (n, n):
            raise ValidationError(f"adjacency shape {a.shape} does not match n={n}")
        return cls(a)


@dataclass(frozen=True)
class ClusterCode:
    """A cluster graph together with the vertex that carries the message."""

    graph: Graph
    message_index: int

    def __post_init__(self):
        if not 1 <= self.message_index <= self.graph.n:
            raise ValidationError(f"message index {self.message_index} outside 1..{self.graph.n}")


def graph_from_edges(n: int, edges: Iterable[tuple[int, int]]) -> Graph:
    a = np.zeros((n, n), dtype=np.uint8)
    for i, j in edges:
        if not (1 <= i <= n and 1 <= j <= n):
            raise ValidationError(f"edge ({i}, {j}) has a vertex outside 1..{n}")
        if i == j:
            raise ValidationError(f"edge ({i}, {j}) is a self-loop")
        a[i - 1, j - 1] = a[j - 1, i - 1] = 1
    return Graph(a)


def parse_edge_list(text: str, n: int | None = None) -> Graph:
    """One ``i j`` pair per line. ``#`` comments allowed.

    A line holding a single integer fixes the vertex count (useful for
    isolated vertices); otherwise ``n`` defaults to the largest label seen.
    """
    edges = []
    declared = n
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        try:
            nums = [int(p) for p in parts]
        except ValueError:
            raise ValidationError(f"line {lineno}: expected integers, got {line!r}") from None
        if len(nums) == 1 and declared is None:
            declared = nums[0]
        elif len(nums) == 2:
            edges.append((nums[0], nums[1]))
        else:
            raise ValidationError(f"line {lineno}: expected 'i j', got {line!r}")
    if declared is None:
        declared = max((max(e) for e in edges), default=0)
    return graph_from_edges(declared, edges)


def load_graph(text: str) -> Graph:
    """Accept adjacency JSON or an edge list, sniffed from the first character."""
    stripped = text.lstrip()
    if stripped.startswith("{"):
        try:
            data = json.loads(stripped)
        except json.JSONDecodeError as exc:
            raise ValidationError(f"malformed adjacency JSON: {exc}") from None
        return Graph.from_json(data)
    return parse_edge_list(text)


def cluster_stabilizers(g: Graph) -> GeneratorSet:
    """Generator ``j`` is X on ``j`` and Z on each neighbour of ``j``."""
    gens = []
    for j in range(g.n):
        z = sum(1 << int(k) for k in np.flatnonzero(g.adjacency[j]))
        gens.append(PauliOperator(g.n, 1 << j, z))
    return GeneratorSet(g.n, tuple(gens))


@dataclass(frozen=True)
class Gate:
    name: str
    qubits: tuple[int, ...]


@dataclass(frozen=True)
class CircuitDescription:
    n: int
    gates: tuple[Gate, ...]

    def count(self, name: str) -> int:
        return sum(1 for g in self.gates if g.name == name)


def cz_circuit(g: Graph) -> CircuitDescription:
    """|+> preparation on every qubit followed by one CZ per edge."""
    gates = [Gate("prep_plus", (q,)) for q in range(1, g.n + 1)]
    gates += [Gate("cz", e) for e in g.edges()]
    return CircuitDescription(g.n, tuple(gates))


def to_qasm(g: Graph, message_index: int | None = None) -> str:
    """OpenQASM 2 text for the cluster, optionally measuring the message in X.

    Qubit ``v`` is register index ``v - 1``. Every qubit, the message
    included, starts in |+>; swap the message's ``h`` for any state
    preparation. The X-basis readout is H followed by ``measure``.
    """
    lines = ["OPENQASM 2.0;", 'include "qelib1.inc";', f"qreg q[{g.n}];"]
    if message_index is not None:
        ClusterCode(g, message_index)
        lines.append("creg c[1];")
    for gate in cz_circuit(g).gates:
        if gate.name == "prep_plus":
            (v,) = gate.qubits
            lines.append(f"h q[{v - 1}];")
        else:
            i, j = gate.qubits
            lines.append(f"cz q[{i - 1}],q[{j - 1}];")
    if message_index is not None:
        m = message_index - 1
        lines.append(f"h q[{m}];")
        lines.append(f"measure q[{m}] -> c[0];")
    return "\n".join(lines) + "\n"
