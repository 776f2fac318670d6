import itertools
import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings

from helpers import circuits, random_circuit
from zxarith.arithgen import MultiplierLayout, decompose_toffolis, multiplier
from zxarith.circuit import CNOT, Circuit, GateKind, Toffoli, ZPhase, count_resources, t_count
from zxarith.extract import ExtractionStuck, decompose_phases, extract_circuit, gauss_gf2, phase_gates
from zxarith.rewrite import full_simplify
from zxarith.verify import equal_on_basis, equal_unitary, global_phase_match, unitary
from zxarith.zxdiag import EdgeType, VertexType, ZxDiagram, from_circuit

ALLOWED = {GateKind.H, GateKind.Z, GateKind.S, GateKind.Sdg, GateKind.T, GateKind.Tdg,
           GateKind.CNOT, GateKind.CZ, GateKind.SWAP}


def _pipeline(c):
    d = full_simplify(from_circuit(c))
    return d, extract_circuit(d)


def test_empty_circuit():
    _, out = _pipeline(Circuit(3))
    assert out == Circuit(3)


def test_three_cnots_extract_to_swap():
    _, out = _pipeline(Circuit(2, [CNOT(0, 1), CNOT(1, 0), CNOT(0, 1)]))
    assert global_phase_match(unitary(out), np.eye(4)[[0, 2, 1, 3]])


def test_round_trip_200():
    rng = random.Random(8)
    for _ in range(200):
        c = random_circuit(rng, 5, rng.randint(0, 40))
        _, out = _pipeline(c)
        assert equal_unitary(c, out)


@settings(max_examples=200, deadline=None)
@given(circuits(max_qubits=6, max_gates=40))
def test_round_trip_property(c):
    d, out = _pipeline(c)
    assert equal_unitary(c, out)
    assert {g.kind for g in out.gates} <= ALLOWED
    assert t_count(out) == d.t_like_count()


def test_toffoli_round_trip():
    rng = random.Random(4)
    for _ in range(30):
        c = random_circuit(rng, 4, rng.randint(1, 12), toffoli=True)
        _, out = _pipeline(decompose_toffolis(c))
        assert equal_unitary(c, out)


def test_undecomposed_phases():
    c = Circuit(2, [ZPhase(0, Fraction(3, 4)), CNOT(0, 1), ZPhase(1, Fraction(1, 8))])
    out = extract_circuit(full_simplify(from_circuit(c)), decompose=False)
    assert equal_unitary(c, out)
    assert any(g.kind is GateKind.ZPhase for g in out.gates)


@pytest.mark.parametrize("n", [2, 3])
def test_optimized_multiplier_on_basis(n):
    c = multiplier(n)
    _, out = _pipeline(c)
    assert t_count(out) < t_count(c)
    lay = MultiplierLayout(n)
    inputs = [lay.encode(a, b) for a, b in itertools.product(range(1 << n), repeat=2)]
    assert equal_on_basis(c, out, inputs)


@pytest.mark.parametrize("p,kinds", [
    (Fraction(1, 4), [GateKind.T]),
    (Fraction(3, 2), [GateKind.Sdg]),
    (Fraction(7, 4), [GateKind.Tdg]),
    (Fraction(0), []),
    (Fraction(1), [GateKind.Z]),
])
def test_phase_words(p, kinds):
    out = decompose_phases(Circuit(1, [ZPhase(0, p)]))
    assert [g.kind for g in out.gates] == kinds


def test_phase_words_short_and_exact():
    for k in range(8):
        p = Fraction(k, 4)
        word = phase_gates(0, p)
        assert len(word) <= 2
        assert equal_unitary(Circuit(1, word), Circuit(1, [ZPhase(0, p)]))
        assert t_count(Circuit(1, word)) == k % 2
    assert count_resources(decompose_phases(Circuit(1, [ZPhase(0, Fraction(7, 4))]))).t_count == 1


def test_phase_words_reject_fine_angles():
    with pytest.raises(ValueError):
        decompose_phases(Circuit(1, [ZPhase(0, Fraction(1, 8))]))


def test_gauss_gf2_example():
    m = [[0, 1, 1], [1, 1, 0], [1, 0, 1]]
    start = [row[:] for row in m]
    ops = gauss_gf2(m)
    assert m == [[1, 0, 1], [0, 1, 1], [0, 0, 0]]
    replay = [row[:] for row in start]
    for src, dst in ops:
        replay[dst] = [a ^ b for a, b in zip(replay[dst], replay[src])]
    assert replay == m


def test_gauss_gf2_random_rank():
    rng = np.random.default_rng(0)
    for _ in range(100):
        a = rng.integers(0, 2, size=(rng.integers(1, 7), rng.integers(1, 7)))
        m = a.tolist()
        gauss_gf2(m)
        r = np.array(m)
        nonzero = [row for row in r if row.any()]
        # rank is preserved: the row space has 2^rank elements
        span = {tuple(np.bitwise_xor.reduce(a[list(s)], axis=0)) if s else (0,) * a.shape[1]
                for k in range(len(a) + 1) for s in itertools.combinations(range(len(a)), k)}
        assert len(span) == 2 ** len(nonzero)
        # every pivot column is a unit vector
        leads = [int(np.argmax(row)) for row in nonzero]
        assert leads == sorted(set(leads))
        for i, c in enumerate(leads):
            assert r[:, c].sum() == 1 and r[i, c] == 1


def _stuck_diagram():
    d = ZxDiagram()
    i = d.add_vertex(VertexType.BOUNDARY, qubit=0)
    o = d.add_vertex(VertexType.BOUNDARY, qubit=0)
    u, a, b, v = (d.add_vertex(VertexType.Z) for _ in range(4))
    d.add_edge(i, u)
    d.add_edge(v, o)
    for x in (a, b):
        d.add_edge(u, x, EdgeType.HADAMARD)
        d.add_edge(x, v, EdgeType.HADAMARD)
    d.add_edge(a, b, EdgeType.HADAMARD)
    d.set_inputs([i])
    d.set_outputs([o])
    return d, v


def test_extraction_stuck_reports_frontier():
    d, v = _stuck_diagram()
    with pytest.raises(ExtractionStuck) as e:
        extract_circuit(d)
    assert e.value.frontier == [v]


def test_extraction_leaves_input_alone():
    d = full_simplify(from_circuit(decompose_toffolis(Circuit(3, [Toffoli(0, 1, 2)]))))
    before = d.structure()
    extract_circuit(d)
    assert d.structure() == before
