"""Truncation parameters, the Lambda-order on l-weights and chi(Z) products.

A truncation parameter is a tuple of polynomials Z_i(z) = prod (1 - z q^s);
it is stored as the per-node multisets of exponents s, equivalently as the
polynomial l-weight prod Psi_{i,s}.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .cartan import CartanData
from .laurent import Laurent, PsiWeight, ZMonomial, is_dominant
from .qchar import cached_fundamental
from .relations import psi_tilde


class UnsupportedType(ValueError):
    pass


@dataclass(frozen=True)
class TruncationParam:
    roots: tuple  # per node, sorted tuple of exponents s

    @classmethod
    def from_roots(cls, roots) -> "TruncationParam":
        return cls(tuple(tuple(sorted(int(s) for s in node)) for node in roots))

    @classmethod
    def from_psi(cls, psi: PsiWeight, rank: int) -> "TruncationParam":
        if not psi.is_polynomial():
            raise ValueError(f"{psi} is not polynomial")
        return cls.from_roots(psi.node_roots(rank))

    @property
    def rank(self) -> int:
        return len(self.roots)

    @property
    def psi(self) -> PsiWeight:
        return PsiWeight([((i, s), 1) for i, node in enumerate(self.roots, start=1) for s in node])

    def degrees(self) -> tuple:
        return tuple(len(node) for node in self.roots)

    def is_trivial(self) -> bool:
        return not any(self.roots)

    def to_json(self) -> list:
        return [list(node) for node in self.roots]

    def __str__(self) -> str:
        def poly(node):
            return "".join("(1-z)" if s == 0 else f"(1-zq^{s})" for s in sorted(node, reverse=True)) or "1"
        return "(" + ", ".join(poly(n) for n in self.roots) + ")"


def _as_psi(x) -> PsiWeight:
    return x.psi if isinstance(x, TruncationParam) else x


def lambda_monomial(cd: CartanData, i: int, r: int) -> PsiWeight:
    """Lambda_{i,q^r} = Psi_{i,r+d_i} / Psi~_{i,r-d_i}."""
    d = cd.d(i)
    return PsiWeight.psi(i, r + d) / psi_tilde(cd, i, r - d)


def coweight(psi: PsiWeight, rank: int) -> tuple:
    return psi.coweight(rank)


@lru_cache(maxsize=None)
def _order_offsets(cd: CartanData) -> tuple:
    """Per-node offsets c making Psi_{i,r+d_i} the strict maximum of Lambda_{i,r}.

    Entries are ranked by s + c_node; the c solve difference constraints
    by Bellman-Ford.
    """
    n = cd.rank
    edges = []
    for i in cd.nodes:
        lam = lambda_monomial(cd, i, 0)
        for (j, s), _ in lam.items():
            if (j, s) == (i, cd.d(i)):
                continue
            edges.append((i, j, Fraction(cd.d(i) - s) - Fraction(1, 2)))
    c = {i: Fraction(0) for i in cd.nodes}
    for _ in range(n + 1):
        changed = False
        for a, b, w in edges:
            if c[a] + w < c[b]:
                c[b] = c[a] + w
                changed = True
        if not changed:
            return tuple(c[i] for i in cd.nodes)
    raise RuntimeError("no triangular order for the Lambda monomials")


def _lambda_count(cd: CartanData, delta: tuple) -> list | None:
    """Number of Lambda_i factors forced by the coweight difference delta."""
    n = cd.rank
    # sum_i n_i C_ij = delta_j
    A = [[Fraction(cd.C[i][j]) for i in range(n)] + [Fraction(delta[j])] for j in range(n)]
    for col in range(n):
        piv = next(r for r in range(col, n) if A[r][col] != 0)
        A[col], A[piv] = A[piv], A[col]
        A[col] = [x / A[col][col] for x in A[col]]
        for r in range(n):
            if r != col and A[r][col] != 0:
                f = A[r][col]
                A[r] = [x - f * y for x, y in zip(A[r], A[col])]
    out = [A[r][n] for r in range(n)]
    if any(x.denominator != 1 or x < 0 for x in out):
        return None
    return [int(x) for x in out]


def preceq(cd: CartanData, psi, z) -> dict | None:
    """Certificate {(i, r): c >= 0} with z / psi = prod Lambda_{i,r}^c, else None."""
    psi, z = _as_psi(psi), _as_psi(z)
    rest = (z / psi).as_dict()
    counts = _lambda_count(cd, (z / psi).coweight(cd.rank))
    if counts is None:
        return None
    budget = sum(counts)
    off = _order_offsets(cd)
    cert: dict = {}
    used = 0
    while rest:
        (i, s) = max(rest, key=lambda k: (k[1] + off[k[0] - 1], k))
        e = rest[(i, s)]
        if e < 0:
            return None
        used += e
        if used > budget:
            return None
        r = s - cd.d(i)
        cert[(i, r)] = cert.get((i, r), 0) + e
        for k, x in lambda_monomial(cd, i, r).items():
            v = rest.get(k, 0) - e * x
            if v:
                rest[k] = v
            else:
                rest.pop(k, None)
    return cert


def apply_certificate(cd: CartanData, z, cert: dict) -> PsiWeight:
    out = _as_psi(z)
    for (i, r), c in cert.items():
        out = out / lambda_monomial(cd, i, r) ** c
    return out


# chi tables

_B2_TABLES = {
    1: [[(1, 0, 1)], [(1, 4, -1), (2, 2, 1)], [(2, 4, -1), (1, 2, 1)], [(1, 6, -1)]],
    2: [[(2, 0, 1)], [(2, 2, -1), (1, 0, 1), (1, 2, 1)],
        [(1, 0, 1), (1, 6, -1), (2, 2, -1), (2, 4, 1)], [(1, 2, 1), (1, 4, -1)],
        [(1, 6, -1), (1, 4, -1), (2, 4, 1)], [(2, 6, -1)]],
}


def _table_poly(rows, r: int) -> Laurent:
    return Laurent(((ZMonomial(((i, s + r), e) for i, s, e in row), 1) for row in rows), ZMonomial)


def chi_table(cd: CartanData, i: int, r: int, tables: dict | None = None) -> Laurent:
    """chi_{i,q^r} in the Z variables.

    ``tables`` maps a node to its terms at shift 0 as lists of [node,
    offset, exponent] triples; it is required for non-simply-laced types
    other than B2.
    """
    cd.check_node(i)
    if tables is not None and (i in tables or str(i) in tables):
        return _table_poly(tables.get(i, tables.get(str(i))), r)
    if cd.simply_laced:
        return cached_fundamental(cd.type_label, i, r).polynomial.relabel(ZMonomial)
    if cd.type_label == "B2":
        return _table_poly(_B2_TABLES[i], r)
    raise UnsupportedType(f"no chi table for type {cd.type_label}; supply one")


def chi_Z(cd: CartanData, Z: TruncationParam, tables: dict | None = None) -> Laurent:
    out = Laurent.constant(1, ZMonomial)
    for i, node in enumerate(Z.roots, start=1):
        for s in node:
            out = out * chi_table(cd, i, -s, tables)
    return out


def psi_of_monomial(M) -> PsiWeight:
    """Z_{i,q^r}^e contributes Psi_{i,q^{-r}}^e."""
    return PsiWeight([((i, -r), e) for (i, r), e in M.items()])


@dataclass(frozen=True)
class Enumerated:
    psi: PsiWeight
    multiplicity: int
    mu: tuple
    monomial: ZMonomial

    def to_json(self) -> dict:
        return {"psi": self.psi.to_json()["psi"], "multiplicity": self.multiplicity,
                "mu": list(self.mu), "monomial": self.monomial.to_json()}


def conjecture_enumerate(cd: CartanData, Z: TruncationParam, tables: dict | None = None) -> list[Enumerated]:
    out = []
    for M, c in chi_Z(cd, Z, tables).terms():
        p = psi_of_monomial(M)
        out.append(Enumerated(p, c, p.coweight(cd.rank), M))
    return out


def comes_from(cd: CartanData, psi, Z: TruncationParam, tables: dict | None = None) -> bool:
    psi = _as_psi(psi)
    return any(e.psi == psi for e in conjecture_enumerate(cd, Z, tables))


def dominant_successors(cd: CartanData, Z: TruncationParam, tables: dict | None = None) -> list[TruncationParam]:
    out = []
    for M in chi_Z(cd, Z, tables).monomials():
        if is_dominant(M):
            out.append(TruncationParam.from_psi(psi_of_monomial(M), cd.rank))
    return sorted(set(out), key=lambda t: t.roots)


@dataclass(frozen=True)
class Chain:
    params: tuple
    target: PsiWeight
    certificates: tuple

    @property
    def steps(self) -> int:
        """Number of hops between truncation parameters (N)."""
        return len(self.params) - 1

    @property
    def length(self) -> int:
        """Number of truncation parameters in the chain."""
        return len(self.params)

    def to_json(self) -> dict:
        return {
            "params": [p.to_json() for p in self.params],
            "target": self.target.to_json()["psi"],
            "steps": self.steps,
            "length": self.length,
            "certificates": [[[i, r, c] for (i, r), c in sorted(cert.items())] for cert in self.certificates],
        }


def shortest_chains(cd: CartanData, Z: TruncationParam, target, max_depth: int = 4,
                    tables: dict | None = None) -> list[Chain]:
    """All shortest chains Z = Z_0, ..., Z_N with target coming from chi(Z_N).

    Each Z_{k+1} is a dominant monomial image in chi(Z_k).  Parameters not
    above the target in the Lambda-order are pruned.
    """
    if max_depth < 0:
        raise ValueError("max_depth must be >= 0")
    target = _as_psi(target)
    if preceq(cd, target, Z) is None:
        return []
    frontier = [(Z,)]
    seen = {Z}
    for depth in range(max_depth + 1):
        hits = [p for p in frontier if comes_from(cd, target, p[-1], tables)]
        if hits:
            return [Chain(p, target, tuple(preceq(cd, b, a) for a, b in zip(p, p[1:]))) for p in hits]
        if depth == max_depth:
            break
        nxt_frontier, level = [], set()
        for path in frontier:
            for nxt in dominant_successors(cd, path[-1], tables):
                if nxt in seen or preceq(cd, target, nxt) is None:
                    continue
                level.add(nxt)
                nxt_frontier.append(path + (nxt,))
        seen |= level
        frontier = nxt_frontier
        if not frontier:
            break
    return []


def chain_search(cd: CartanData, Z: TruncationParam, target, max_depth: int = 4,
                 tables: dict | None = None) -> Chain | None:
    """First shortest chain in canonical order, or None within max_depth."""
    chains = shortest_chains(cd, Z, target, max_depth, tables)
    return chains[0] if chains else None


def brute_force_preceq(cd: CartanData, psi, z, window: range, max_total: int) -> dict | None:
    """Exhaustive search over Lambda products; an oracle for tests."""
    psi, z = _as_psi(psi), _as_psi(z)
    goal = z / psi
    gens = [(i, r) for i in cd.nodes for r in window]
    lam = {g: lambda_monomial(cd, *g) for g in gens}

    def rec(idx, left, cur, cert):
        if cur == goal:
            return dict(cert)
        if idx == len(gens) or left == 0:
            return None
        g = gens[idx]
        for c in range(left + 1):
            if c:
                cert[g] = c
            res = rec(idx + 1, left - c, cur * lam[g] ** c, cert)
            if res is not None:
                return res
        cert.pop(g, None)
        return None

    return rec(0, max_total, PsiWeight(), {})


def mu_bookkeeping(cd: CartanData, Z: TruncationParam, cert: dict) -> tuple:
    """Coweight of Z divided by the certified Lambda product."""
    mu = list(Z.psi.coweight(cd.rank))
    for (i, _), c in cert.items():
        for j, x in enumerate(cd.coroot(i)):
            mu[j] -= c * x
    return tuple(mu)


def multiset_key(entries: list[Enumerated]) -> Counter:
    return Counter({e.psi: e.multiplicity for e in entries})
