"""Sparse Laurent monomials and polynomials with exact integer coefficients.

Variables are keyed by ``(node, spectral_exponent)``; the spectral parameter
``a = q**r`` is stored as the integer ``r``.  All values are immutable.
"""

from __future__ import annotations

from collections import defaultdict
from typing import Callable, Iterable, Iterator, Mapping

from .cartan import CartanData


class Monomial:
    """Finite exponent map, canonically sorted, zero entries dropped."""

    __slots__ = ("_items", "_hash")
    var = "Y"

    def __init__(self, exps: Mapping | Iterable = ()):
        acc: dict = defaultdict(int)
        pairs = exps.items() if isinstance(exps, Mapping) else exps
        for key, e in pairs:
            acc[key] += e
        self._items = tuple(sorted((k, e) for k, e in acc.items() if e))
        self._hash = hash((self.var, self._items))

    @classmethod
    def _from_sorted(cls, items: tuple):
        obj = cls.__new__(cls)
        obj._items = items
        obj._hash = hash((cls.var, items))
        return obj

    @classmethod
    def one(cls):
        return cls._from_sorted(())

    @classmethod
    def var_power(cls, i: int, r: int, e: int = 1):
        return cls._from_sorted((((i, r), e),)) if e else cls.one()

    def items(self) -> tuple:
        return self._items

    def as_dict(self) -> dict:
        return dict(self._items)

    def __iter__(self) -> Iterator:
        return iter(self._items)

    def __len__(self) -> int:
        return len(self._items)

    def __bool__(self) -> bool:
        return True

    def is_one(self) -> bool:
        return not self._items

    def exponent(self, key) -> int:
        for k, e in self._items:
            if k == key:
                return e
        return 0

    def __eq__(self, other) -> bool:
        return type(other) is type(self) and other._items == self._items

    def __hash__(self) -> int:
        return self._hash

    def __lt__(self, other) -> bool:
        return self._items < other._items

    def __mul__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        acc = dict(self._items)
        for k, e in other._items:
            acc[k] = acc.get(k, 0) + e
        return type(self)._from_sorted(tuple(sorted((k, e) for k, e in acc.items() if e)))

    def inverse(self):
        return type(self)._from_sorted(tuple((k, -e) for k, e in self._items))

    def __truediv__(self, other):
        return self * other.inverse()

    def __pow__(self, n: int):
        if n == 0:
            return type(self).one()
        return type(self)._from_sorted(tuple((k, e * n) for k, e in self._items))

    def restrict(self, pred: Callable) -> "Monomial":
        return type(self)._from_sorted(tuple((k, e) for k, e in self._items if pred(k)))

    def node_part(self, i: int):
        return self.restrict(lambda k: k[0] == i)

    def nodes(self) -> set:
        return {k[0] for k, _ in self._items}

    def shifts(self) -> list[int]:
        return [k[1] for k, _ in self._items]

    def degree(self, i: int) -> int:
        return sum(e for k, e in self._items if k[0] == i)

    def relabel(self, cls):
        return cls._from_sorted(self._items)

    def shift(self, s: int):
        return type(self)._from_sorted(tuple(((k[0], k[1] + s), e) for k, e in self._items))

    def __str__(self) -> str:
        if not self._items:
            return "1"
        parts = []
        for (i, r), e in self._items:
            p = f"{self.var}_{{{i},{r}}}"
            if e != 1:
                p += f"^{{{e}}}"
            parts.append(p)
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self})"

    def to_json(self) -> list:
        return [[k[0], k[1], e] for k, e in self._items]

    @classmethod
    def from_json(cls, data) -> "Monomial":
        return cls(((int(i), int(r)), int(e)) for i, r, e in data)


class YMonomial(Monomial):
    __slots__ = ()
    var = "Y"


class ZMonomial(Monomial):
    __slots__ = ()
    var = "Z"


def is_dominant(m: Monomial) -> bool:
    return all(e >= 0 for _, e in m.items())


class Laurent:
    """Finite integer combination of monomials of a single family."""

    __slots__ = ("_terms", "mono")

    def __init__(self, terms: Mapping | Iterable = (), mono: type = YMonomial):
        acc: dict = defaultdict(int)
        pairs = terms.items() if isinstance(terms, Mapping) else terms
        for m, c in pairs:
            acc[m] += c
        self._terms = {m: c for m, c in acc.items() if c}
        self.mono = mono

    @classmethod
    def from_monomial(cls, m: Monomial, coef: int = 1) -> "Laurent":
        return cls({m: coef}, mono=type(m))

    @classmethod
    def constant(cls, c: int, mono: type = YMonomial) -> "Laurent":
        return cls({mono.one(): c}, mono=mono)

    def terms(self) -> list[tuple[Monomial, int]]:
        return sorted(self._terms.items(), key=lambda t: t[0])

    def monomials(self) -> list[Monomial]:
        return sorted(self._terms)

    def coefficient(self, m: Monomial) -> int:
        return self._terms.get(m, 0)

    def __len__(self) -> int:
        return len(self._terms)

    def __iter__(self):
        return iter(self.terms())

    def __contains__(self, m) -> bool:
        return m in self._terms

    def is_zero(self) -> bool:
        return not self._terms

    def total(self) -> int:
        """Sum of coefficients (the dimension for a character)."""
        return sum(self._terms.values())

    def _coerce(self, other) -> "Laurent":
        if isinstance(other, Laurent):
            return other
        if isinstance(other, int):
            return Laurent.constant(other, self.mono)
        if isinstance(other, Monomial):
            return Laurent.from_monomial(other)
        raise TypeError(f"cannot combine Laurent with {type(other).__name__}")

    def __add__(self, other):
        other = self._coerce(other)
        acc = dict(self._terms)
        for m, c in other._terms.items():
            acc[m] = acc.get(m, 0) + c
        return Laurent(acc, self.mono)

    __radd__ = __add__

    def __neg__(self):
        return Laurent({m: -c for m, c in self._terms.items()}, self.mono)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        acc: dict = defaultdict(int)
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                acc[m1 * m2] += c1 * c2
        return Laurent(acc, self.mono)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        out = Laurent.constant(1, self.mono)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def map_monomials(self, fn: Callable[[Monomial], Monomial], mono: type | None = None) -> "Laurent":
        return Laurent(((fn(m), c) for m, c in self._terms.items()), mono or self.mono)

    def relabel(self, cls) -> "Laurent":
        return self.map_monomials(lambda m: m.relabel(cls), cls)

    def shift(self, s: int) -> "Laurent":
        return self.map_monomials(lambda m: m.shift(s))

    def dominant_monomials(self) -> list[Monomial]:
        return [m for m in self.monomials() if is_dominant(m)]

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        out = []
        for m, c in self.terms():
            body = "" if m.is_one() else str(m)
            if not body:
                out.append(str(c))
            elif c == 1:
                out.append(body)
            elif c == -1:
                out.append("-" + body)
            else:
                out.append(f"{c} {body}")
        return " + ".join(out).replace("+ -", "- ")

    def __repr__(self) -> str:
        return f"Laurent({self})"

    def to_json(self) -> list:
        return [{"coef": c, "monomial": m.to_json()} for m, c in self.terms()]

    @classmethod
    def from_json(cls, data, mono: type = YMonomial) -> "Laurent":
        return cls(((mono.from_json(t["monomial"]), int(t["coef"])) for t in data), mono)


def Y(i: int, r: int, e: int = 1) -> YMonomial:
    return YMonomial.var_power(i, r, e)


def root_monomial(cd: CartanData, i: int, r: int, mono: type = YMonomial) -> Monomial:
    """The affinized simple root A_{i,q^r}."""
    cd.check_node(i)
    d = cd.d(i)
    exps = [((i, r - d), 1), ((i, r + d), 1)]
    for j in cd.nodes:
        if j == i:
            continue
        cji = cd.c(j, i)
        if cji == -1:
            offs = (0,)
        elif cji == -2:
            offs = (-1, 1)
        elif cji == -3:
            offs = (-2, 0, 2)
        else:
            continue
        exps += [((j, r + o), -1) for o in offs]
    return mono(exps)


def monomial_weight(cd: CartanData, m: Monomial) -> tuple[int, ...]:
    """Weight in the fundamental-weight basis."""
    return tuple(m.degree(i) for i in cd.nodes)


def nakajima_leq(cd: CartanData, m1: Monomial, m2: Monomial) -> dict | None:
    """Certificate ``{(j, b): c}`` with ``m1 = m2 * prod A_{j,b}^{-c}``, c >= 0.

    Returns None when ``m1`` is not below ``m2``.  The top spectral variable
    of ``A_{j,b}`` is ``Y_{j,b+d_j}`` and no other root monomial reaches it
    from above, so the system is triangular and is solved by peeling off the
    highest spectral exponent.
    """
    mono = type(m1)
    rest = (m2 / m1).as_dict()
    if not rest:
        return {}
    lo = min(k[1] for k in rest)
    cert: dict = {}
    while rest:
        top = max(k[1] for k in rest)
        for (j, s), e in sorted(((k, e) for k, e in rest.items() if k[1] == top)):
            if e < 0:
                return None
            b = s - cd.d(j)
            if b - cd.d(j) < lo:
                return None
            cert[(j, b)] = cert.get((j, b), 0) + e
            for k, x in root_monomial(cd, j, b, mono).items():
                v = rest.get(k, 0) - e * x
                if v:
                    rest[k] = v
                else:
                    rest.pop(k, None)
    return cert


class PsiWeight:
    """Product of symbols Psi_{i,r} (Psi_{i,a} = 1 - z a in slot i).

    ``weight`` is the constant prefactor in the fundamental-weight basis, or
    None when it is omitted.
    """

    __slots__ = ("_mono", "weight")

    def __init__(self, exps: Mapping | Iterable = (), weight: tuple[int, ...] | None = None):
        self._mono = exps if isinstance(exps, Monomial) else _PsiMono(exps)
        self.weight = tuple(weight) if weight is not None else None

    @classmethod
    def psi(cls, i: int, r: int, e: int = 1) -> "PsiWeight":
        return cls({(i, r): e})

    def items(self) -> tuple:
        return self._mono.items()

    def as_dict(self) -> dict:
        return self._mono.as_dict()

    def exponent(self, i: int, r: int) -> int:
        return self._mono.exponent((i, r))

    def __mul__(self, other: "PsiWeight") -> "PsiWeight":
        w = None
        if self.weight is not None and other.weight is not None:
            w = tuple(a + b for a, b in zip(self.weight, other.weight))
        return PsiWeight(self._mono * other._mono, w)

    def inverse(self) -> "PsiWeight":
        w = None if self.weight is None else tuple(-a for a in self.weight)
        return PsiWeight(self._mono.inverse(), w)

    def __truediv__(self, other):
        return self * other.inverse()

    def __pow__(self, n: int):
        w = None if self.weight is None else tuple(a * n for a in self.weight)
        return PsiWeight(self._mono ** n, w)

    def __eq__(self, other) -> bool:
        return isinstance(other, PsiWeight) and self._mono == other._mono

    def __hash__(self) -> int:
        return hash(self._mono)

    def __lt__(self, other) -> bool:
        return self._mono < other._mono

    def omit_weight(self) -> "PsiWeight":
        return PsiWeight(self._mono, None)

    def is_polynomial(self) -> bool:
        return all(e >= 0 for _, e in self.items())

    def degree(self, i: int) -> int:
        return self._mono.degree(i)

    def coweight(self, rank: int) -> tuple[int, ...]:
        """mu in the fundamental-coweight basis: alpha_i(mu) = deg psi_i."""
        return tuple(self.degree(i) for i in range(1, rank + 1))

    def node_roots(self, rank: int) -> list[list[int]]:
        """Per-node factor exponents with multiplicity (polynomial case)."""
        out = [[] for _ in range(rank)]
        for (i, r), e in self.items():
            out[i - 1].extend([r] * e)
        return out

    def __str__(self) -> str:
        if not self.items():
            body = "1"
        else:
            parts = []
            for (i, r), e in self.items():
                p = f"Psi_{{{i},{r}}}"
                if e != 1:
                    p += f"^{{{e}}}"
                parts.append(p)
            body = " ".join(parts)
        if self.weight is not None and any(self.weight):
            body = f"[{','.join(map(str, self.weight))}] " + body
        return body

    def __repr__(self) -> str:
        return f"PsiWeight({self})"

    def to_json(self) -> dict:
        return {"psi": self._mono.to_json(), "weight": list(self.weight) if self.weight is not None else None}

    @classmethod
    def from_json(cls, data) -> "PsiWeight":
        if isinstance(data, list):
            return cls(((int(i), int(r)), int(e)) for i, r, e in data)
        return cls((((int(i), int(r)), int(e)) for i, r, e in data["psi"]), data.get("weight"))


class _PsiMono(Monomial):
    __slots__ = ()
    var = "Psi"
