"""Three alternating CNOTs are a SWAP; watch the ZX rewrites find that out.

    python demos/three_cnots.py
"""

from collections import Counter

import numpy as np

from zxarith import CNOT, Circuit
from zxarith.extract import extract_circuit
from zxarith.rewrite import RewriteRule, RewriteSite, Trace, apply_rule, full_simplify
from zxarith.verify import global_phase_match, unitary
from zxarith.zxdiag import from_circuit


def kinds(d):
    return dict(Counter(d.type(v).name for v in d.spiders()))


c = Circuit(2, [CNOT(0, 1), CNOT(1, 0), CNOT(0, 1)])
d = from_circuit(c)
print("diagram of the circuit:", kinds(d), f"{d.edge_count()} edges")

# one bialgebra step on the middle X-Z pair, done by hand
b = apply_rule(d, RewriteSite(RewriteRule.Bialgebra, (3, 4)))
print("after bialgebra:       ", kinds(b), f"{b.edge_count()} edges")

trace = Trace()
s = full_simplify(d, trace)
print(f"full_simplify: {len(trace)} rewrites, {s.internal_spider_count()} internal spiders left")
print(trace.to_text(), end="")

out = extract_circuit(s)
print("extracted:", list(out.gates))
swap = np.eye(4)[[0, 2, 1, 3]]
print("equals SWAP:", global_phase_match(unitary(out), swap))
