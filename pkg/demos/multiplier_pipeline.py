"""Generate the 6-bit multiplier, T-optimise it with ZX rewriting, and check it.

    python demos/multiplier_pipeline.py [bits]

Takes around ten seconds for 6 bits.
"""

import itertools
import sys
import time

import numpy as np

from zxarith.arithgen import MultiplierLayout, multiplier
from zxarith.circuit import count_resources
from zxarith.cli import RunReport, optimize
from zxarith.verify import Verdict, adjoint_reduce_check, simulate

n = int(sys.argv[1]) if len(sys.argv) > 1 else 6
c = multiplier(n)
lay = MultiplierLayout(n)
print(f"multiplier({n}): {c.qubit_count} qubits, {len(lay.ancilla)} ancillas")

t0 = time.perf_counter()
out = optimize(c)
ms = (time.perf_counter() - t0) * 1000

verdict = adjoint_reduce_check(c, out)
print(RunReport(count_resources(c), count_resources(out), ms, verdict.value).table())

# a few products by simulation; a 25-qubit statevector is too slow to be worth it
if n <= 4:
    for a, b in itertools.islice(itertools.product([0, 3, (1 << n) - 1], [1, 5 % (1 << n), (1 << n) - 1]), 6):
        k = int(np.argmax(np.abs(simulate(out, lay.encode(a, b)))))
        print(f"{a:>3} * {b:>3} = {lay.decode(k)[2]}")

sys.exit(0 if verdict is Verdict.EQUIVALENT else 1)
