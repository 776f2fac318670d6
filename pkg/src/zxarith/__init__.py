"""ZX-calculus T-count optimisation of Clifford+T arithmetic circuits.

Typical use::

    from zxarith import multiplier, from_circuit, full_simplify, extract_circuit

    c = multiplier(6)
    opt = extract_circuit(full_simplify(from_circuit(c)))
"""

from .arithgen import (
    MultiplierLayout,
    conditional_adder,
    decompose_toffolis,
    multiplier,
    toffoli_clifford_t,
)
from .circuit import (
    CNOT,
    CZ,
    SWAP,
    Circuit,
    Gate,
    GateKind,
    H,
    ResourceReport,
    S,
    Sdg,
    T,
    Tdg,
    Toffoli,
    X,
    Z,
    ZPhase,
    adjoint,
    compose,
    count_resources,
    t_count,
)
from .extract import ExtractionStuck, decompose_phases, extract_circuit
from .qasm import QasmError, emit_qasm, parse_qasm
from .rewrite import RewriteError, RewriteRule, RewriteSite, Trace, apply_rule, full_simplify
from .verify import (
    Verdict,
    WidthError,
    adjoint_reduce_check,
    equal_on_basis,
    equal_unitary,
    simulate,
    unitary,
)
from .zxdiag import EdgeType, VertexType, ZxDiagram, from_circuit, tensor, to_graph_like

__version__ = "0.1.0"
