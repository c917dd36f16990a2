"""Quiver mutation with exact rational cluster variables.

Cluster variables are elements of the fraction field ZZ(X1, ..., Xn) of
the initial cluster, one generator per vertex in vertex order.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from sympy import ZZ, sympify
from sympy.polys.fields import FracField

from .laurent import PsiWeight


class SeedError(ValueError):
    pass


def _field(n: int) -> FracField:
    return FracField([f"X{k}" for k in range(1, n + 1)], ZZ)


@dataclass(frozen=True)
class Seed:
    vertices: tuple
    frozen: frozenset
    # exchange matrix entries b[(a, b)] = #(a -> b) - #(b -> a), a < b in vertex order stored both ways
    arrows: tuple
    variables: tuple
    labels: dict = field(default_factory=dict, compare=False, hash=False)
    psi: dict = field(default_factory=dict, compare=False, hash=False)

    @classmethod
    def from_quiver(cls, vertices, arrows, frozen=(), labels=None, psi=None) -> "Seed":
        vertices = tuple(vertices)
        if len(set(vertices)) != len(vertices):
            raise SeedError("duplicate vertex ids")
        vset = set(vertices)
        B: dict = {}
        for a, b in arrows:
            if a not in vset or b not in vset:
                raise SeedError(f"arrow {a}->{b} uses an unknown vertex")
            if a == b:
                raise SeedError("loops are not allowed")
            B[(a, b)] = B.get((a, b), 0) + 1
            B[(b, a)] = B.get((b, a), 0) - 1
        F = _field(len(vertices))
        gens = tuple(F.gens)
        return cls(vertices, frozenset(frozen), _pack(B), gens, dict(labels or {}), dict(psi or {}))

    @property
    def field(self) -> FracField:
        return self.variables[0].field if self.variables else _field(0)

    def index(self, v) -> int:
        try:
            return self.vertices.index(v)
        except ValueError:
            raise SeedError(f"unknown vertex {v!r}") from None

    def b(self, a, c) -> int:
        return dict(self.arrows).get((a, c), 0)

    def exchange_matrix(self) -> dict:
        return dict(self.arrows)

    def arrow_list(self) -> list:
        """Arrows with multiplicity, in vertex order."""
        out = []
        for (a, c), m in self.arrows:
            if m > 0:
                out.extend([[a, c]] * m)
        return out

    def mutable(self) -> list:
        return [v for v in self.vertices if v not in self.frozen]

    def variable(self, v):
        return self.variables[self.index(v)]

    def cluster(self) -> dict:
        return dict(zip(self.vertices, self.variables))

    def key(self) -> frozenset:
        """Cluster identity: the set of mutable variables."""
        return frozenset(_canon(self.variable(v)) for v in self.mutable())

    def to_json(self) -> dict:
        return {
            "vertices": [{"id": v, "frozen": v in self.frozen} for v in self.vertices],
            "arrows": self.arrow_list(),
            "variables": {v: _canon(x) for v, x in zip(self.vertices, self.variables)},
            "labels": {v: self.labels[v] for v in self.vertices if v in self.labels},
        }

    @classmethod
    def from_json(cls, data: dict) -> "Seed":
        verts = [v["id"] for v in data["vertices"]]
        frozen = [v["id"] for v in data["vertices"] if v.get("frozen")]
        s = cls.from_quiver(verts, [tuple(a) for a in data["arrows"]], frozen, data.get("labels"))
        if data.get("variables"):
            F = s.field
            ns = {str(g): g.as_expr() for g in F.gens}
            vals = tuple(F.from_expr(sympify(data["variables"][v], locals=ns)) for v in verts)
            s = Seed(s.vertices, s.frozen, s.arrows, vals, s.labels, s.psi)
        return s


def _pack(B: dict) -> tuple:
    return tuple(sorted((k, v) for k, v in B.items() if v))


def _canon(x) -> str:
    return f"({x.numer.as_expr()})/({x.denom.as_expr()})" if x.denom != 1 else str(x.numer.as_expr())


def mutate(s: Seed, k) -> Seed:
    if k not in s.vertices:
        raise SeedError(f"unknown vertex {k!r}")
    if k in s.frozen:
        raise SeedError(f"vertex {k!r} is frozen")
    B = s.exchange_matrix()
    cl = s.cluster()
    F = s.field
    into, out = F.one, F.one
    for j in s.vertices:
        m = B.get((j, k), 0)
        if m > 0:
            into *= cl[j] ** m
        elif m < 0:
            out *= cl[j] ** (-m)
    new_var = (into + out) / cl[k]
    nb: dict = {}
    for (a, c), m in B.items():
        if a == k or c == k:
            nb[(a, c)] = -m
        else:
            bak, bkc = B.get((a, k), 0), B.get((k, c), 0)
            nb[(a, c)] = m + (bak * bkc if bak > 0 and bkc > 0 else 0) - (
                (-bak) * (-bkc) if bak < 0 and bkc < 0 else 0)
    # composite paths a -> k -> c where no a/c entry existed yet
    for a in s.vertices:
        for c in s.vertices:
            if a == c or a == k or c == k or (a, c) in nb:
                continue
            bak, bkc = B.get((a, k), 0), B.get((k, c), 0)
            if bak > 0 and bkc > 0:
                nb[(a, c)] = bak * bkc
                nb[(c, a)] = -bak * bkc
    vals = tuple(new_var if v == k else x for v, x in zip(s.vertices, s.variables))
    return Seed(s.vertices, s.frozen, _pack(nb), vals, s.labels, s.psi)


def exchange_holds(s: Seed, k) -> bool:
    """X_k X_k' equals the sum of the two arrow products at k."""
    t = mutate(s, k)
    B = s.exchange_matrix()
    F = s.field
    into, out = F.one, F.one
    for j in s.vertices:
        m = B.get((j, k), 0)
        if m > 0:
            into *= s.variable(j) ** m
        elif m < 0:
            out *= s.variable(j) ** (-m)
    return s.variable(k) * t.variable(k) == into + out


def laurent_check(s: Seed, v) -> bool:
    """True iff v has a monomial denominator in the initial variables of s."""
    if v.field != s.field:
        raise SeedError("variable lives over a different initial cluster")
    return len(v.denom.terms()) == 1


@dataclass
class Enumeration:
    variables: list
    frozen_variables: list
    clusters: list
    finite: bool
    seeds_visited: int

    @property
    def total_variables(self) -> int:
        return len(self.variables) + len(self.frozen_variables)

    def to_json(self) -> dict:
        return {
            "finite": self.finite,
            "cluster_variables": sorted(_canon(v) for v in self.variables),
            "frozen_variables": sorted(_canon(v) for v in self.frozen_variables),
            "clusters": sorted(sorted(c) for c in self.clusters),
            "total_variables": self.total_variables,
        }


def enumerate_seeds(s: Seed, budget: int = 10000) -> Enumeration:
    """Breadth-first closure of the mutation graph, at most ``budget`` seeds."""
    if budget < 1:
        raise ValueError("budget must be >= 1")
    seen = {s.key(): s}
    queue = deque([s])
    variables: dict = {}
    finite = True
    visited = 0
    while queue:
        if visited >= budget:
            finite = False
            break
        cur = queue.popleft()
        visited += 1
        for v in cur.mutable():
            x = cur.variable(v)
            variables.setdefault(_canon(x), x)
        for k in cur.mutable():
            nxt = mutate(cur, k)
            key = nxt.key()
            if key not in seen:
                seen[key] = nxt
                queue.append(nxt)
    for seed in queue:
        for v in seed.mutable():
            variables.setdefault(_canon(seed.variable(v)), seed.variable(v))
    frozen_vars = [s.variable(v) for v in s.vertices if v in s.frozen]
    vs = [variables[k] for k in sorted(variables)]
    return Enumeration(vs, frozen_vars, sorted(sorted(k) for k in seen), finite, visited)


# seed library

def _drinfeld_label(roots) -> str:
    parts = []
    for r in roots:
        parts.append("(1 - z)" if r == 0 else f"(1 - zq^{{{r}}})")
    return "[" + "".join(parts) + "]"


def _psi_label(p: PsiWeight) -> str:
    return f"[L({p})]"


def _drinfeld_psi(roots, node: int = 1) -> PsiWeight:
    return PsiWeight([((node, r), 1) for r in roots])


def _path_seed(labels, psis, arrows, frozen):
    ids = [f"v{k}" for k in range(1, len(labels) + 1)]
    return Seed.from_quiver(ids, [(ids[a], ids[b]) for a, b in arrows], [ids[k] for k in frozen],
                            dict(zip(ids, labels)), dict(zip(ids, psis)))


def paper_seed(name: str, length: int = 3) -> Seed:
    """Initial seeds of the monoidal categorifications, truncated to ``length``."""
    if name == "a2":
        return Seed.from_quiver(["1", "2"], [("1", "2")])
    if name == "a3":
        return Seed.from_quiver(["1", "2", "3"], [("1", "2"), ("2", "3")])
    if name == "sl3_CM":
        ids = ["W1", "V1", "V2", "W2"]
        labels = {"W1": "[W_1]", "V1": "[V_1(1)]", "V2": "[V_2(q)]", "W2": "[W_2]"}
        return Seed.from_quiver(ids, [("W1", "V1"), ("V1", "V2"), ("V2", "W1"), ("W2", "V2")],
                                ["W1", "W2"], labels)
    if length < 1:
        raise SeedError("truncation length must be >= 1")
    L = length
    if name == "sl2_CZminus":
        roots = [[-2 * j for j in range(k)] for k in range(1, L + 1)]
        arrows = [(k + 1, k) for k in range(L - 1)]
        return _path_seed([_drinfeld_label(r) for r in roots], [_drinfeld_psi(r) for r in roots], arrows, [L - 1])
    if name == "sl2_CZ":
        roots = []
        for k in range(1, L + 1):
            lo, hi = (-(k - 1), k - 1) if k % 2 else (-k, k - 2)
            roots.append(list(range(hi, lo - 1, -2)))
        # even positions (1-based) are sources
        arrows = []
        for k in range(L - 1):
            arrows.append((k + 1, k) if (k + 2) % 2 == 0 else (k, k + 1))
        return _path_seed([_drinfeld_label(r) for r in roots], [_drinfeld_psi(r) for r in roots], arrows, [L - 1])
    if name == "sl2_Ohat_plus":
        psis = [PsiWeight([((1, 2 * r), 1), ((1, 0), -1)], weight=(-r,)) for r in range(1, L + 1)]
        labels = [f"[L(q^{{{-r}}} (1 - zq^{{{2 * r}}})/(1 - z))]" for r in range(1, L + 1)]
        arrows = [(k + 1, k) for k in range(L - 1)]
        return _path_seed(labels, psis, arrows, [L - 1])
    if name == "Gamma_inf_sl2":
        ks = list(range(-(L // 2), L - L // 2))
        psis = [PsiWeight.psi(1, 2 * k) for k in ks]
        arrows = [(a, a + 1) for a in range(L - 1)]
        frozen = sorted({0, L - 1})
        return _path_seed([_psi_label(p) for p in psis], psis, arrows, frozen)
    if name == "Gamma_inf_prime_sl2":
        left, right = (L + 1) // 2, L // 2
        psis = [PsiWeight.psi(1, 2 * k) for k in range(left - 1, -1, -1)]
        psis += [PsiWeight.psi(1, -2 * s, -1) for s in range(1, right + 1)]
        arrows = [(a, a + 1) for a in range(left - 1)]
        if right:
            arrows.append((left, left - 1))
            arrows += [(a, a + 1) for a in range(left, L - 1)]
        frozen = sorted({0, L - 1})
        return _path_seed([_psi_label(p) for p in psis], psis, arrows, frozen)
    if name == "sl3_CZminus":
        ids, labels, psis, frozen = [], {}, {}, []
        for r in range(1, L + 1):
            for row in (1, 2):
                v = f"W{r}_{row}"
                ids.append(v)
                if row == 1:
                    roots = [-2 * j for j in range(r)]
                    p = _drinfeld_psi(roots, 1)
                    labels[v] = f"[({''.join(_drinfeld_label(roots)[1:-1])}, 1)]"
                else:
                    roots = [-(2 * j + 1) for j in range(r)]
                    p = _drinfeld_psi(roots, 2)
                    labels[v] = f"[(1, {''.join(_drinfeld_label(roots)[1:-1])})]"
                psis[v] = p
                if r == L:
                    frozen.append(v)
        arrows = []
        for r in range(1, L + 1):
            arrows.append((f"W{r}_1", f"W{r}_2"))
            if r < L:
                arrows.append((f"W{r}_2", f"W{r + 1}_1"))
                arrows.append((f"W{r + 1}_2", f"W{r}_2"))
                arrows.append((f"W{r + 1}_1", f"W{r}_1"))
        return Seed.from_quiver(ids, arrows, frozen, labels, psis)
    if name == "Gamma_inf_sl3":
        rs = list(range(-(L // 2), L - L // 2))
        ids, labels, psis, frozen = [], {}, {}, []
        for r in rs:
            for v, p in ((f"P1_{2 * r}", PsiWeight.psi(1, 2 * r)), (f"P2_{2 * r - 1}", PsiWeight.psi(2, 2 * r - 1))):
                ids.append(v)
                psis[v] = p
                labels[v] = _psi_label(p)
                if r in (rs[0], rs[-1]):
                    frozen.append(v)
        arrows = []
        for r in rs:
            a1, a2 = f"P1_{2 * r}", f"P2_{2 * r - 1}"
            arrows.append((a1, a2))
            if r + 1 in rs:
                b1, b2 = f"P1_{2 * r + 2}", f"P2_{2 * r + 1}"
                arrows += [(a1, b1), (a2, b2), (b2, a1)]
        return Seed.from_quiver(ids, arrows, frozen, labels, psis)
    raise SeedError(f"unknown seed name {name!r}")


SEED_NAMES = ("a2", "a3", "sl2_CZminus", "sl2_CZ", "sl3_CZminus", "sl3_CM", "sl2_Ohat_plus",
              "Gamma_inf_sl2", "Gamma_inf_sl3", "Gamma_inf_prime_sl2")
