import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from clustercode.errors import ContradictionError, CorrectionError, StateError, ValidationError
from clustercode.graph import cluster_stabilizers, graph_from_edges
from clustercode.measurement import (
    MeasurementSpec,
    conjugate,
    correction_frame,
    discard_qubit,
    evolve_sequence,
    measure,
)
from clustercode.pauli import (
    GeneratorSet,
    commutes,
    format_pauli,
    group_equal,
    in_group,
    parse_pauli,
    symplectic_rank,
    unsigned_group_equal,
)

CHAIN3 = cluster_stabilizers(graph_from_edges(3, [(1, 2), (2, 3)]))


def chain(n):
    return cluster_stabilizers(graph_from_edges(n, [(i, i + 1) for i in range(1, n)]))


def gs(*strings):
    return GeneratorSet.from_strings(strings)


@pytest.mark.parametrize("s", [0, 1])
def test_x_on_chain_middle(s):
    after, rec = measure(CHAIN3, MeasurementSpec(2, "X", s))
    sign = "-" if s else "+"
    assert not rec.deterministic and rec.outcome_s == s
    assert rec.anticommuting == (0, 2)
    assert group_equal(after, gs(sign + "ZIZ", "+XIX", sign + "IXI"))
    reduced, relabel = discard_qubit(after, 2)
    assert relabel == {1: 1, 3: 2}
    assert group_equal(reduced, gs(sign + "ZZ", "+XX"))


@pytest.mark.parametrize("s", [0, 1])
def test_z_on_chain_end(s):
    after, rec = measure(CHAIN3, MeasurementSpec(1, "Z", s))
    sign = "-" if s else "+"
    assert group_equal(after, gs(sign + "IXZ", "+IZX", sign + "ZII"))
    reduced, relabel = discard_qubit(after, 1)
    assert relabel == {2: 1, 3: 2}
    assert group_equal(reduced, gs(sign + "XZ", "+ZX"))


def test_deterministic_remeasure():
    s = gs("+Z")
    after, rec = measure(s, MeasurementSpec(1, "Z"))
    assert rec.deterministic and rec.outcome_s == 0
    assert after == s


def test_deterministic_sign():
    _, rec = measure(gs("-ZZ", "+XX"), MeasurementSpec(1, "Y"), np.random.default_rng(0))
    assert not rec.deterministic
    after, _ = measure(gs("-Z"), MeasurementSpec(1, "Z"))
    _, rec = measure(after, MeasurementSpec(1, "Z"))
    assert rec.outcome_s == 1 and rec.deterministic


def test_contradiction():
    with pytest.raises(ContradictionError):
        measure(gs("+Z"), MeasurementSpec(1, "Z", 1))


def test_bad_specs():
    with pytest.raises(ValidationError):
        MeasurementSpec(1, "W")
    with pytest.raises(ValidationError):
        MeasurementSpec(1, "X", 2)
    with pytest.raises(ValidationError):
        measure(CHAIN3, MeasurementSpec(4, "X"))


def test_bad_pivot():
    with pytest.raises(ValidationError):
        measure(CHAIN3, MeasurementSpec(2, "X", 0), pivot=1)


def test_partial_set_appends_observable():
    after, rec = measure(gs("+ZZ"), MeasurementSpec(1, "Z", 1))
    assert not rec.deterministic
    assert len(after) == 2
    assert in_group(parse_pauli("-ZI"), after)


def test_seeded_outcomes_reproducible():
    def run(seed):
        rng = np.random.default_rng(seed)
        return [measure(CHAIN3, MeasurementSpec(2, "X"), rng)[1].outcome_s for _ in range(20)]

    assert run(3) == run(3)
    assert set(run(3)) == {0, 1}


class TestDiscard:
    def test_single_qubit(self):
        out, relabel = discard_qubit(gs("+X"), 1)
        assert out.n == 0 and len(out) == 0 and relabel == {}

    def test_entangled(self):
        with pytest.raises(StateError):
            discard_qubit(CHAIN3, 2)

    def test_bell_pair(self):
        with pytest.raises(StateError):
            discard_qubit(gs("+ZZ", "+XX"), 1)

    def test_other_letter_still_attached(self):
        # qubit 1 in +Z but another generator carries X there
        with pytest.raises(ValidationError):
            gs("+ZI", "+XX")


class TestCorrection:
    def test_identity(self):
        assert correction_frame(CHAIN3, CHAIN3) == parse_pauli("III")

    def test_flip_zz(self):
        p = correction_frame(gs("-ZZ", "+XX"), gs("+ZZ", "+XX"))
        assert format_pauli(p) in ("+XI", "+IX")
        assert group_equal(conjugate(gs("-ZZ", "+XX"), p), gs("+ZZ", "+XX"))

    def test_different_groups(self):
        with pytest.raises(CorrectionError):
            correction_frame(gs("+ZZ"), gs("+XX"))


class TestSequence:
    def test_empty(self):
        out, recs = evolve_sequence(CHAIN3, [])
        assert out == CHAIN3 and recs == []

    def test_repeated_qubit(self):
        with pytest.raises(ValidationError):
            evolve_sequence(CHAIN3, [MeasurementSpec(2, "X"), MeasurementSpec(2, "Z")])

    # frozen from the statevector oracle
    @pytest.mark.parametrize(
        "outcomes, expected",
        [((0, 0), ("+XZ", "+ZX")), ((0, 1), ("-XZ", "+ZX")), ((1, 0), ("+XZ", "-ZX")), ((1, 1), ("-XZ", "-ZX"))],
    )
    def test_four_chain_xx(self, outcomes, expected):
        specs = [MeasurementSpec(2, "X", outcomes[0]), MeasurementSpec(3, "X", outcomes[1])]
        out, _ = evolve_sequence(chain(4), specs)
        out, _ = discard_qubit(out, 3)
        out, _ = discard_qubit(out, 2)
        assert group_equal(out, gs(*expected))

    @pytest.mark.parametrize("s1, s3, expected", [(0, 0, "+X"), (0, 1, "-X"), (1, 0, "-X"), (1, 1, "+X")])
    def test_three_chain_zz(self, s1, s3, expected):
        out, recs = evolve_sequence(CHAIN3, [MeasurementSpec(1, "Z", s1), MeasurementSpec(3, "Z", s3)])
        out, _ = discard_qubit(out, 3)
        out, _ = discard_qubit(out, 1)
        assert out.to_strings() == [expected]


@st.composite
def measured_sets(draw):
    n = draw(st.integers(2, 7))
    pairs = [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
    edges = draw(st.lists(st.sampled_from(pairs), unique=True))
    spec = MeasurementSpec(draw(st.integers(1, n)), draw(st.sampled_from("XYZ")), draw(st.integers(0, 1)))
    return cluster_stabilizers(graph_from_edges(n, edges)), spec


@settings(max_examples=80, deadline=None)
@given(measured_sets())
def test_measure_invariants(case):
    s, spec = case
    _, probe = measure(s, MeasurementSpec(spec.qubit, spec.basis))
    if probe.deterministic:
        spec = MeasurementSpec(spec.qubit, spec.basis)
    m = parse_pauli("I" * (spec.qubit - 1) + spec.basis + "I" * (s.n - spec.qubit))
    after, rec = measure(s, spec)
    assert len(after) == len(s)
    assert symplectic_rank(after.generators) == len(s)
    assert all(commutes(g, m) for g in after)
    signed = m if rec.outcome_s == 0 else m.negate()
    assert in_group(signed, after)
    if rec.deterministic:
        assert group_equal(after, s)
    else:
        other, _ = measure(s, MeasurementSpec(spec.qubit, spec.basis, 1 - rec.outcome_s))
        assert not group_equal(after, other)


def _hadamard_on_first(s: GeneratorSet) -> GeneratorSet:
    swap = {"X": "Z", "Z": "X", "Y": "Y", "I": "I"}
    out = []
    for g in s.to_strings():
        out.append(g[0] + swap[g[1]] + g[2:])
    return gs(*out)


@pytest.mark.parametrize("n", range(3, 9))
@pytest.mark.parametrize("s", [0, 1])
def test_interior_fusion(n, s):
    # X on qubit 2 of a chain fuses 1 and 3: the rest is the shorter chain up to H on qubit 1
    after, _ = measure(chain(n), MeasurementSpec(2, "X", s))
    reduced, _ = discard_qubit(after, 2)
    fused = _hadamard_on_first(chain(n - 1))
    assert unsigned_group_equal(reduced, fused)
    assert in_group(parse_pauli(("-" if s else "+") + "ZZ" + "I" * (n - 3)), reduced)


def test_random_outcomes_balanced():
    rng = np.random.default_rng(21)
    ones = sum(measure(CHAIN3, MeasurementSpec(2, "X"), rng)[1].outcome_s for _ in range(2000))
    # 4 sigma binomial window
    assert abs(ones - 1000) < 4 * np.sqrt(2000 * 0.25)


@settings(max_examples=40, deadline=None)
@given(st.integers(9, 10), st.data())
def test_single_measurement_matches_oracle_large(n, data):
    from clustercode.statevector import equivalence_check, measure_pauli, outcome_probabilities, prepare_cluster

    pairs = [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
    g = graph_from_edges(n, data.draw(st.lists(st.sampled_from(pairs), unique=True, max_size=20)))
    q, basis = data.draw(st.integers(1, n)), data.draw(st.sampled_from("XYZ"))
    p0, p1 = outcome_probabilities(prepare_cluster(g), basis, q)
    after, rec = measure(cluster_stabilizers(g), MeasurementSpec(q, basis), np.random.default_rng(0))
    if rec.deterministic:
        assert (p0, p1)[rec.outcome_s] == pytest.approx(1)
    else:
        assert p0 == pytest.approx(0.5)
    sv, _, _ = measure_pauli(prepare_cluster(g), basis, q, forced=rec.outcome_s)
    assert equivalence_check(after, sv)
