"""Finite-type Cartan data.

Nodes are numbered from 1 as in Bourbaki.  ``C[i][j]`` is the pairing of the
coroot of node i with the root of node j, so that ``B = D C`` is symmetric
with ``d_i`` the half squared length of the i-th simple root.
"""

from __future__ import annotations

import hashlib
import json
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache, reduce
from math import gcd


class UnknownCartanType(ValueError):
    pass


def _chain(n: int) -> list[list[int]]:
    C = [[0] * n for _ in range(n)]
    for i in range(n):
        C[i][i] = 2
        if i + 1 < n:
            C[i][i + 1] = C[i + 1][i] = -1
    return C


def _cartan_matrix(series: str, n: int) -> list[list[int]]:
    if series == "A" and n >= 1:
        return _chain(n)
    if series == "B" and n >= 2:
        C = _chain(n)
        C[n - 1][n - 2] = -2
        return C
    if series == "C" and n >= 2:
        C = _chain(n)
        C[n - 2][n - 1] = -2
        return C
    if series == "D" and n >= 4:
        C = _chain(n)
        C[n - 2][n - 1] = C[n - 1][n - 2] = 0
        C[n - 3][n - 1] = C[n - 1][n - 3] = -1
        return C
    if series == "E" and n in (6, 7, 8):
        # Bourbaki: 1-3-4-5-...-n with 2 attached to 4
        C = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
        edges = [(1, 3), (3, 4), (4, 5), (2, 4)] + [(k, k + 1) for k in range(5, n)]
        for a, b in edges:
            C[a - 1][b - 1] = C[b - 1][a - 1] = -1
        return C
    if series == "F" and n == 4:
        return [[2, -1, 0, 0], [-1, 2, -1, 0], [0, -2, 2, -1], [0, 0, -1, 2]]
    if series == "G" and n == 2:
        return [[2, -3], [-1, 2]]
    raise UnknownCartanType(f"no finite type {series}{n}")


def _symmetrizer(C: list[list[int]]) -> list[int]:
    n = len(C)
    d: list[Fraction | None] = [None] * n
    for start in range(n):
        if d[start] is not None:
            continue
        d[start] = Fraction(1)
        stack = [start]
        while stack:
            i = stack.pop()
            for j in range(n):
                if j != i and C[i][j] != 0 and d[j] is None:
                    # d_i C_ij = d_j C_ji
                    d[j] = d[i] * C[i][j] / C[j][i]
                    stack.append(j)
    denom = reduce(lambda a, b: a * b // gcd(a, b), (x.denominator for x in d), 1)
    ints = [int(x * denom) for x in d]
    g = reduce(gcd, ints)
    return [x // g for x in ints]


def _det(M: list[list[int]]) -> Fraction:
    A = [[Fraction(x) for x in row] for row in M]
    n = len(A)
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if A[r][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            A[col], A[piv] = A[piv], A[col]
            det = -det
        det *= A[col][col]
        for r in range(col + 1, n):
            f = A[r][col] / A[col][col]
            if f:
                A[r] = [a - f * b for a, b in zip(A[r], A[col])]
    return det


@dataclass(frozen=True)
class CartanData:
    type_label: str
    rank: int
    C: tuple[tuple[int, ...], ...]
    D: tuple[int, ...]

    def __post_init__(self):
        n = self.rank
        if len(self.C) != n or any(len(row) != n for row in self.C) or len(self.D) != n:
            raise ValueError("inconsistent Cartan data dimensions")
        for i in range(n):
            if self.C[i][i] != 2:
                raise ValueError("diagonal entries must be 2")
            for j in range(n):
                if i != j and self.C[i][j] > 0:
                    raise ValueError("off-diagonal entries must be <= 0")
                if self.D[i] * self.C[i][j] != self.D[j] * self.C[j][i]:
                    raise ValueError("DC is not symmetric")
        if any(d <= 0 for d in self.D) or reduce(gcd, self.D) != 1:
            raise ValueError("symmetrizer must be positive and coprime")
        if _det([list(r) for r in self.C]) == 0:
            raise ValueError("Cartan matrix is singular")

    @property
    def nodes(self) -> range:
        return range(1, self.rank + 1)

    def c(self, i: int, j: int) -> int:
        return self.C[i - 1][j - 1]

    def d(self, i: int) -> int:
        return self.D[i - 1]

    def b(self, i: int, j: int) -> int:
        return self.D[i - 1] * self.C[i - 1][j - 1]

    @property
    def B(self) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(self.D[i] * self.C[i][j] for j in range(self.rank)) for i in range(self.rank))

    def q_exponent(self, i: int) -> int:
        """Exponent e with q_i = q**e."""
        return self.d(i)

    @property
    def simply_laced(self) -> bool:
        return all(d == 1 for d in self.D)

    def check_node(self, i: int) -> None:
        if not (isinstance(i, int) and 1 <= i <= self.rank):
            raise ValueError(f"node {i!r} out of range 1..{self.rank}")

    def neighbors(self, i: int) -> list[int]:
        """Nodes j with C_ij < 0."""
        return [j for j in self.nodes if j != i and self.c(i, j) < 0]

    def alpha(self, i: int) -> tuple[int, ...]:
        """Simple root alpha_i in the fundamental-weight basis."""
        return tuple(self.c(j, i) for j in self.nodes)

    def coroot(self, i: int) -> tuple[int, ...]:
        """Simple coroot in the fundamental-coweight basis."""
        return tuple(self.c(i, j) for j in self.nodes)

    def omega(self, i: int) -> tuple[int, ...]:
        return tuple(int(j == i) for j in self.nodes)

    def v_twist(self, u) -> list:
        """v_i = prod_j u_j**C_ij for a sequence of numeric twists."""
        out = []
        for i in self.nodes:
            v = 1
            for j in self.nodes:
                v = v * u[j - 1] ** self.c(i, j)
            out.append(v)
        return out

    def to_json(self) -> dict:
        return {"type": self.type_label, "C": [list(r) for r in self.C], "D": list(self.D)}

    def content_hash(self) -> str:
        blob = json.dumps(self.to_json(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(blob.encode()).hexdigest()


_LABEL = re.compile(r"^\s*([A-Ga-g])_?(\d+)\s*$")


@lru_cache(maxsize=None)
def cartan_data(type_label: str) -> CartanData:
    """Cartan data for a label such as ``"A2"``, ``"B_2"`` or ``"E8"``.

    ``sl2``/``sl3`` style aliases are accepted for type A.
    """
    label = type_label.strip()
    m = re.match(r"^sl_?(\d+)$", label, re.IGNORECASE)
    if m:
        label = f"A{int(m.group(1)) - 1}"
    m = _LABEL.match(label)
    if not m:
        raise UnknownCartanType(f"unknown Cartan type label {type_label!r}")
    series, n = m.group(1).upper(), int(m.group(2))
    if n < 1:
        raise UnknownCartanType(f"rank must be >= 1 in {type_label!r}")
    C = _cartan_matrix(series, n)
    D = _symmetrizer(C)
    return CartanData(f"{series}{n}", n, tuple(tuple(r) for r in C), tuple(D))
