"""Fundamental q-characters by the FM algorithm, and the sl2 T-system."""

from qaffine.cartan import cartan_data
from qaffine.qchar import fm_fundamental, t_system_check_sl2

for label in ("A1", "A2", "B2", "G2", "D4"):
    cd = cartan_data(label)
    dims = [fm_fundamental(cd, i, 0).dimension() for i in cd.nodes]
    print(f"{label}: fundamental dimensions {dims}")

print("sl2 fundamental:", fm_fundamental(cartan_data("A1"), 1, 0).polynomial)
print("B2 node 2:", fm_fundamental(cartan_data("B2"), 2, 0).polynomial)

ok = all(t_system_check_sl2(r, k)[0] for k in range(1, 6) for r in range(-4, 5))
print("T-system holds for k <= 5:", ok)
