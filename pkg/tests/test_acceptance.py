"""Acceptance suite: one test per criterion, each with its time budget.

A PASS/FAIL line per criterion is printed in the terminal summary.
"""
import time

import numpy as np
import pytest

from clustercode.analysis import distance_brute_force, distance_by_columns, hamming_bound, single_error_report
from clustercode.fixtures import five_vertex_cluster, load_code, logical_states, pentagon_hub
from clustercode.graph import ClusterCode, Graph, cluster_stabilizers, graph_from_edges
from clustercode.measurement import MeasurementSpec, conjugate, correction_frame, discard_qubit, measure
from clustercode.pauli import GeneratorSet, PauliOperator, group_equal, multiply, parse_pauli
from clustercode.statevector import (
    StateVector,
    apply_pauli,
    drop_measured,
    equivalence_check,
    measure_pauli,
    outcome_probabilities,
    prepare_cluster,
)
from clustercode.synthesis import parity_check_from_stabilizers, run_cluster_measurement, synthesize


class Budget:
    def __init__(self, seconds):
        self.seconds = seconds

    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.t0
        if exc[0] is None:
            assert self.elapsed < self.seconds, f"took {self.elapsed:.2f}s, budget {self.seconds}s"


CHAIN3 = graph_from_edges(3, [(1, 2), (2, 3)])


def gens(*strings):
    return GeneratorSet.from_strings(strings)


def _measure_and_drop(qubit, basis, s):
    start = cluster_stabilizers(CHAIN3)
    after, rec = measure(start, MeasurementSpec(qubit, basis, s))
    reduced, _ = discard_qubit(after, qubit)
    sv, s_sv, _ = measure_pauli(prepare_cluster(CHAIN3), basis, qubit, forced=s)
    return reduced, rec, drop_measured(sv, qubit, basis, s_sv)


@pytest.mark.parametrize("s", [0, 1])
def test_criterion_01_three_qubit_x(s):
    with Budget(1.0):
        reduced, rec, sv = _measure_and_drop(2, "X", s)
        sign = "-" if s else "+"
        expected = gens(sign + "ZZ", "+XX")
        assert rec.outcome_s == s
        assert group_equal(reduced, expected)
        assert equivalence_check(expected, sv)


@pytest.mark.parametrize("s", [0, 1])
def test_criterion_02_three_qubit_z(s):
    with Budget(1.0):
        reduced, rec, sv = _measure_and_drop(1, "Z", s)
        sign = "-" if s else "+"
        expected = gens(sign + "XZ", "+ZX")
        assert group_equal(reduced, expected)
        assert equivalence_check(expected, sv)


def test_criterion_03_five_one_synthesis():
    pentagon = np.array(
        [
            [0, 1, 0, 0, 1],
            [1, 0, 1, 0, 0],
            [0, 1, 0, 1, 0],
            [0, 0, 1, 0, 1],
            [1, 0, 0, 1, 0],
        ]
    )
    with Budget(5.0):
        target = load_code("5_1")
        for s in (0, 1):
            res = synthesize(target, forced_outcome=s)
            assert np.array_equal(res.adjacency.adjacency, pentagon)
            assert res.cluster.graph == pentagon_hub()
            assert res.cluster.message_index == 6
            assert res.records[0].outcome_s == s
            assert group_equal(res.corrected, target)


def test_criterion_04_four_one_construction():
    with Budget(5.0):
        target = load_code("4_1")
        cluster = ClusterCode(five_vertex_cluster(), 3)
        for s in (0, 1):
            achieved, rec = run_cluster_measurement(cluster, forced_outcome=s)
            assert rec.outcome_s == s
            corrected = conjugate(achieved, correction_frame(achieved, target))
            assert group_equal(corrected, target)


def test_criterion_05_statevector_fixtures():
    rng = np.random.default_rng(5)
    with Budget(10.0):
        zero, one = logical_states("5_1")
        plus = (zero.amplitudes + one.amplitudes) / np.sqrt(2)
        minus = (zero.amplitudes - one.amplitudes) / np.sqrt(2)
        # hub is qubit 6, the least significant index bit
        halves = prepare_cluster(pentagon_hub()).amplitudes.reshape(32, 2) * np.sqrt(2)
        assert np.abs(halves[:, 0] - minus).max() < 1e-9
        assert np.abs(halves[:, 1] - plus).max() < 1e-9

        xbar = parse_pauli("XXXXX")
        for _ in range(10):
            v = rng.normal(size=2) + 1j * rng.normal(size=2)
            alpha, beta = v / np.linalg.norm(v)
            for s in (0, 1):
                sv = prepare_cluster(pentagon_hub(), message=(6, alpha, beta))
                sv, _, prob = measure_pauli(sv, "X", 6, forced=s)
                assert abs(prob - 0.5) < 1e-9
                out = drop_measured(sv, 6, "X", s)
                logical = StateVector(5, alpha * minus + beta * plus)
                if s:
                    logical = apply_pauli(logical, xbar)
                # equal up to the global phase (-1 or 1)
                assert out.equal_up_to_phase(logical)
                ratio = out.overlap(logical)
                assert min(abs(ratio - 1), abs(ratio + 1)) < 1e-9


def test_criterion_06_distances():
    with Budget(30.0):
        c4, c5 = load_code("4_1"), load_code("5_1")
        assert distance_brute_force(c4) == 2
        assert distance_brute_force(c5) == 3
        _, dx4, dz4 = distance_by_columns(parity_check_from_stabilizers(c4))
        _, dx5, dz5 = distance_by_columns(parity_check_from_stabilizers(c5))
        assert (dx4, dz4) == (2, 4)
        assert (dx5, dz5) == (5, 5)


def test_criterion_07_hamming_bound():
    with Budget(1.0):
        assert not any(hamming_bound(n, 1, 1) for n in range(1, 5))
        assert hamming_bound(5, 1, 1)


def test_criterion_08_correctability():
    with Budget(1.0):
        r4 = single_error_report(load_code("4_1"))
        assert not r4.correctable["X"]
        assert any(c["type"] == "X" for c in r4.collisions)
        assert r4.correctable["Y"] and r4.correctable["Z"]
        r5 = single_error_report(load_code("5_1"))
        assert r5.all_single_qubit
        assert all(r5.correctable[l] for l in "XYZ")


def random_connected_graph(rng, n):
    # random spanning tree plus extra edges
    edges = set()
    order = rng.permutation(n) + 1
    for k in range(1, n):
        a, b = int(order[k]), int(order[rng.integers(k)])
        edges.add((min(a, b), max(a, b)))
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            if rng.random() < 0.3:
                edges.add((i, j))
    return graph_from_edges(n, sorted(edges))


def oracle_compare(rng, n):
    g = random_connected_graph(rng, n)
    assert g.is_connected()
    tab = cluster_stabilizers(g)
    sv = prepare_cluster(g)
    qubits = rng.permutation(n)[: rng.integers(1, n + 1)] + 1
    for q in qubits:
        q = int(q)
        basis = "XYZ"[rng.integers(3)]
        p0, p1 = outcome_probabilities(sv, basis, q)
        sv_det = min(p0, p1) < 1e-9
        s = int(rng.integers(2)) if not sv_det else (0 if p0 > 0.5 else 1)
        tab, rec = measure(tab, MeasurementSpec(q, basis, None if sv_det else s), rng)
        if rec.deterministic != sv_det:
            return f"determinism differs on {g.edges()} at {basis}{q}"
        if rec.outcome_s != s:
            return f"deterministic outcome differs on {g.edges()} at {basis}{q}"
        if not sv_det and abs(p0 - 0.5) > 1e-9:
            return f"random outcome with p={p0}"
        sv, _, _ = measure_pauli(sv, basis, q, forced=s)
        if not equivalence_check(tab, sv):
            return f"post-state not stabilized on {g.edges()} after {basis}{q}"
    return None


def test_criterion_09_oracle_equivalence():
    rng = np.random.default_rng(9)
    failures = []
    with Budget(300.0):
        for k in range(240):
            n = int(rng.integers(2, 9))
            err = oracle_compare(rng, n)
            if err:
                failures.append(err)
    assert failures == []


def scrambled(rng, s: GeneratorSet) -> GeneratorSet:
    ops = list(s.generators)
    for _ in range(3 * len(ops)):
        i, j = rng.choice(len(ops), size=2, replace=False)
        ops[i] = multiply(ops[i], ops[j])
    return GeneratorSet(s.n, tuple(ops))


def test_criterion_10_pivot_independence():
    rng = np.random.default_rng(10)
    done = 0
    with Budget(60.0):
        while done < 120:
            n = int(rng.integers(2, 8))
            s = scrambled(rng, cluster_stabilizers(random_connected_graph(rng, n)))
            spec = MeasurementSpec(int(rng.integers(1, n + 1)), "XYZ"[rng.integers(3)], int(rng.integers(2)))
            first, rec = measure(s, spec)
            if len(rec.anticommuting) < 2:
                continue
            for pivot in rec.anticommuting[1:]:
                other, _ = measure(s, spec, pivot=pivot)
                assert group_equal(first, other), (s.to_strings(), spec, pivot)
            done += 1
