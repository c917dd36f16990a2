"""B2 truncation lists, a chain of truncations, canonical classes and an XXZ fit."""

from qaffine.cartan import cartan_data
from qaffine.qgroth import canonical_class, standard_in_canonical
from qaffine.truncation import TruncationParam, conjecture_enumerate, shortest_chains
from qaffine.xxz import ChainSpec, fit_spectrum

b2 = cartan_data("B2")
for roots in ([[], [0]], [[0], []]):
    Z = TruncationParam.from_roots(roots)
    print(f"Z = {Z}:")
    for e in conjecture_enumerate(b2, Z):
        print(f"   {e.psi}   mu = {e.mu}")

Z = TruncationParam.from_roots([[-6], [0, -2, -6]])
target = TruncationParam.from_roots([[-6, -4, 0], []])
for c in shortest_chains(b2, Z, target):
    print("chain:", " -> ".join(str(p) for p in c.params), "certificates", c.certificates)

for S in ([0, 2], [0, 4], [0, 2, 4]):
    print(f"L{S} =", canonical_class(S), "  M in L:", standard_in_canonical(S))

for N in (2, 4, 6):
    res = fit_spectrum(ChainSpec(N=N)).max_residuals()
    print(f"XXZ N={N}:", {k: (f"{v:.1e}" if isinstance(v, float) else v) for k, v in res.items()})
