"""q-characters: sl2 strings, the Frenkel-Mukhin expansion, T-system checks."""

from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .cartan import CartanData, cartan_data
from .laurent import Laurent, Monomial, YMonomial, is_dominant, monomial_weight, root_monomial

DEFAULT_BUDGET = 10**6


class NonGeneralPosition(ValueError):
    """Two strings of a decomposition neither nest nor stay apart."""


class NonTermination(RuntimeError):
    """The monomial budget was exhausted."""


class FMFailure(RuntimeError):
    """The module is not special, so the expansion is inconsistent."""


@dataclass(frozen=True)
class StringSpec:
    node: int
    start: int
    length: int

    def __post_init__(self):
        if self.length < 0:
            raise ValueError("string length must be >= 0")

    def points(self, d: int = 1) -> list[int]:
        return [self.start + 2 * d * j for j in range(self.length)]


@dataclass(frozen=True)
class QCharResult:
    cd: CartanData
    polynomial: Laurent
    dominant: tuple = ()
    witness: dict = field(default_factory=dict, compare=False)

    @classmethod
    def build(cls, cd: CartanData, poly: Laurent, witness: dict | None = None) -> "QCharResult":
        return cls(cd, poly, tuple(poly.dominant_monomials()), witness or {})

    def dimension(self) -> int:
        return self.polynomial.total()

    def __len__(self) -> int:
        return len(self.polynomial)

    def to_json(self) -> dict:
        return {
            "type": self.cd.type_label,
            "polynomial": self.polynomial.to_json(),
            "dominant": [m.to_json() for m in self.dominant],
            "dimension": self.dimension(),
        }


# sl2 strings

def string_terms(cd: CartanData, s: StringSpec, mono: type = YMonomial) -> list[tuple[Monomial, int]]:
    """Ratios m_j / m_0 of a string character, with their depth j.

    The ratios are products of full root monomials, so they also carry the
    other nodes' variables when used inside a higher rank expansion.
    """
    d = cd.d(s.node)
    k = s.length
    out = [(mono.one(), 0)]
    cur = mono.one()
    for j in range(1, k + 1):
        cur = cur / root_monomial(cd, s.node, s.start + 2 * d * (k - j) + d, mono)
        out.append((cur, j))
    return out


def string_character(cd: CartanData, s: StringSpec, mono: type = YMonomial) -> Laurent:
    d = cd.d(s.node)
    top = mono(((s.node, r), 1) for r in s.points(d))
    return Laurent(((top * t, 1) for t, _ in string_terms(cd, s, mono)), mono)


def sl2_string_character(r: int, k: int) -> QCharResult:
    """Kirillov-Reshetikhin character of sl2 with k points starting at r."""
    if k < 0:
        raise ValueError("string length must be >= 0")
    cd = cartan_data("A1")
    s = StringSpec(1, r, k)
    return QCharResult.build(cd, string_character(cd, s), {1: [s]})


def decompose_strings(points, d: int = 1, node: int = 1) -> list[StringSpec]:
    """Greedy split of a multiset of points into maximal 2d-spaced strings."""
    left = Counter(points)
    out = []
    while left:
        s = min(left)
        k = 0
        while left.get(s + 2 * d * k, 0) > 0:
            left[s + 2 * d * k] -= 1
            if not left[s + 2 * d * k]:
                del left[s + 2 * d * k]
            k += 1
        out.append(StringSpec(node, s, k))
    check_general_position(out, d)
    return out


def check_general_position(strings: list[StringSpec], d: int = 1) -> None:
    for a in range(len(strings)):
        for b in range(a + 1, len(strings)):
            s1, s2 = set(strings[a].points(d)), set(strings[b].points(d))
            if s1 <= s2 or s2 <= s1:
                continue
            u = sorted(s1 | s2)
            if all(y - x == 2 * d for x, y in zip(u, u[1:])):
                raise NonGeneralPosition(f"strings {strings[a]} and {strings[b]} are not in general position")


def sl2_simple_character(points) -> Laurent:
    """sl2 simple character for a dominant monomial given by its points."""
    cd = cartan_data("A1")
    out = Laurent.constant(1)
    for s in decompose_strings(points):
        out = out * string_character(cd, s)
    return out


def _node_points(m: Monomial, j: int) -> list[int]:
    pts = []
    for (i, r), e in m.items():
        if i == j:
            pts.extend([r] * e)
    return pts


def _is_j_dominant(m: Monomial, j: int) -> bool:
    return all(e >= 0 for (i, _), e in m.items() if i == j)


def _j_expansion(cd: CartanData, m: Monomial, j: int, mono: type) -> tuple[list, list]:
    """Ratios (t, depth, coef) of the sl2 simple character of m's j-part."""
    strings = decompose_strings(_node_points(m, j), cd.d(j), j)
    acc: dict = {mono.one(): (0, 1)}
    for s in strings:
        nxt: dict = {}
        for t, (dep, c) in acc.items():
            for u, du in string_terms(cd, s, mono):
                key = t * u
                old = nxt.get(key, (dep + du, 0))
                nxt[key] = (dep + du, old[1] + c)
        acc = nxt
    return [(t, dep, c) for t, (dep, c) in acc.items()], strings


# Frenkel-Mukhin

def fm_character(cd: CartanData, top: Monomial, budget: int = DEFAULT_BUDGET, order: str = "ascending") -> QCharResult:
    """Frenkel-Mukhin expansion from the dominant monomial ``top``.

    Monomials are processed by depth (number of inverse root factors); the
    multiplicity of a monomial is final once every shallower monomial has
    been expanded.  ``order`` only changes the processing order inside a
    depth level.
    """
    if not is_dominant(top):
        raise ValueError("starting monomial must be dominant")
    mono = type(top)
    mult: dict = {top: 1}
    col: dict = defaultdict(lambda: defaultdict(int))
    depth_of = {top: 0}
    levels: dict = defaultdict(set)
    levels[0].add(top)
    witness: dict = defaultdict(list)
    depth = 0
    while levels.get(depth):
        batch = sorted(levels.pop(depth), reverse=(order == "descending"))
        for m in batch:
            if m != top:
                mult[m] = max(col[m].values())
            for j in cd.nodes:
                have = col[m][j]
                if not _is_j_dominant(m, j):
                    if have != mult[m]:
                        raise FMFailure(f"monomial {m} not covered in direction {j}")
                    continue
                L = mult[m] - have
                if L < 0:
                    raise FMFailure(f"negative residual at {m} in direction {j}")
                if L == 0:
                    continue
                terms, strings = _j_expansion(cd, m, j, mono)
                witness[j].append((m, L, strings))
                for t, dep, c in terms:
                    if dep == 0:
                        continue
                    m2 = m * t
                    dm = depth + dep
                    if m2 in depth_of and depth_of[m2] != dm:
                        raise FMFailure(f"inconsistent depth for {m2}")
                    if m2 not in depth_of:
                        depth_of[m2] = dm
                        levels[dm].add(m2)
                        if len(depth_of) > budget:
                            raise NonTermination(f"more than {budget} monomials")
                    col[m2][j] += L * c
        depth += 1
    poly = Laurent(mult, mono)
    return QCharResult.build(cd, poly, dict(witness))


def fm_fundamental(cd: CartanData, i: int, r: int, budget: int = DEFAULT_BUDGET, order: str = "ascending") -> QCharResult:
    cd.check_node(i)
    return fm_character(cd, YMonomial.var_power(i, r), budget, order)


def fm_kirillov_reshetikhin(cd: CartanData, i: int, r: int, k: int, budget: int = DEFAULT_BUDGET) -> QCharResult:
    cd.check_node(i)
    top = YMonomial(((i, p), 1) for p in StringSpec(i, r, k).points(cd.d(i)))
    return fm_character(cd, top, budget)


@lru_cache(maxsize=256)
def cached_fundamental(type_label: str, i: int, r: int) -> QCharResult:
    return fm_fundamental(cartan_data(type_label), i, r)


# checks

def t_system_check_sl2(r: int, k: int) -> tuple[bool, Laurent]:
    """chi(r,k) chi(r+2,k) = chi(r,k+1) chi(r+2,k-1) + 1 as an exact identity."""
    if k < 1:
        raise ValueError("T-system check needs k >= 1")
    chi = lambda a, b: sl2_string_character(a, b).polynomial
    diff = chi(r, k) * chi(r + 2, k) - chi(r, k + 1) * chi(r + 2, k - 1) - 1
    return diff.is_zero(), diff


def multiply(a: QCharResult, b: QCharResult) -> QCharResult:
    if a.cd != b.cd:
        raise ValueError("q-characters of different Cartan types")
    return QCharResult.build(a.cd, a.polynomial * b.polynomial)


def height(cd: CartanData, weight) -> Fraction:
    """Pairing with rho-check: linear, and equal to 1 on each simple root."""
    n = cd.rank
    # solve C c = weight, then sum c
    A = [[Fraction(cd.C[r][s]) for s in range(n)] + [Fraction(weight[r])] for r in range(n)]
    for col in range(n):
        piv = next(r for r in range(col, n) if A[r][col] != 0)
        A[col], A[piv] = A[piv], A[col]
        A[col] = [x / A[col][col] for x in A[col]]
        for r in range(n):
            if r != col and A[r][col] != 0:
                f = A[r][col]
                A[r] = [x - f * y for x, y in zip(A[r], A[col])]
    return sum(A[r][n] for r in range(n))


def string_extraction(cd: CartanData, poly: Laurent, j: int) -> list | None:
    """Write poly as a nonnegative sum of sl2 characters in direction j.

    Returns the extracted (head, multiplicity) pairs, or None if a head is
    not j-dominant or a coefficient turns negative.
    """
    mono = poly.mono
    rest = dict(poly.terms())
    heads = []
    while rest:
        m = max(rest, key=lambda x: (height(cd, monomial_weight(cd, x)), x))
        c = rest[m]
        if c < 0 or not _is_j_dominant(m, j):
            return None
        terms, _ = _j_expansion(cd, m, j, mono)
        for t, _, k in terms:
            key = m * t
            v = rest.get(key, 0) - c * k
            if v:
                rest[key] = v
            else:
                rest.pop(key, None)
        heads.append((m, c))
    return heads


def forget_spectral(poly: Laurent, rank: int) -> Counter:
    """Weight multiset obtained by sending Y_{i,r} to y_i."""
    out: Counter = Counter()
    for m, c in poly.terms():
        w = tuple(m.degree(i) for i in range(1, rank + 1))
        out[w] += c
    return out
