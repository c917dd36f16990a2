"""Symbolic TQ, QQ and QQ* relations and numeric Bethe residuals.

Relations live in a Laurent ring whose variables are class symbols:
prefundamental classes, finite-dimensional classes, the constant K and
the invertible weight classes [omega_j].
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass, field
from typing import Callable, NamedTuple

from .cartan import CartanData
from .laurent import Laurent, Monomial, PsiWeight
from .qchar import QCharResult

KINDS = ("omega", "Lplus", "Lstar", "Ltilde", "V", "K")


class ClassSymbol(NamedTuple):
    kind: str
    node: int = 0
    shift: int = 0
    tag: str = ""

    def latex(self) -> str:
        a = _qpow(self.shift)
        if self.kind == "Lplus":
            return f"[L^+_{{{self.node},{a}}}]"
        if self.kind == "Lstar":
            return f"[L^*_{{{self.node},{a}}}]"
        if self.kind == "Ltilde":
            return f"[\\tilde{{L}}_{{{self.node},{a}}}]"
        if self.kind == "V":
            return f"[V_{{{self.node}}}({a})]"
        if self.kind == "K":
            return "K"
        return f"[\\omega_{{{self.node}}}]"

    def text(self) -> str:
        if self.kind in ("Lplus", "Lstar", "Ltilde", "V"):
            return f"{self.kind}({self.node},{self.shift})"
        if self.kind == "K":
            return "K"
        return f"w{self.node}"


def _qpow(r: int) -> str:
    if r == 0:
        return "1"
    if r == 1:
        return "q"
    return f"q^{{{r}}}"


class ClassMonomial(Monomial):
    __slots__ = ()
    var = "C"

    def weight(self, rank: int) -> tuple:
        w = [0] * rank
        for k, e in self.items():
            if k.kind == "omega":
                w[k.node - 1] += e
        return tuple(w)

    def without_weight(self) -> "ClassMonomial":
        return self.restrict(lambda k: k.kind != "omega")

    def __str__(self) -> str:
        if self.is_one():
            return "1"
        return " ".join(k.text() + (f"^{e}" if e != 1 else "") for k, e in self.items())


def sym(kind: str, node: int = 0, shift: int = 0, e: int = 1) -> ClassMonomial:
    if kind not in KINDS:
        raise ValueError(f"unknown class kind {kind!r}")
    return ClassMonomial([(ClassSymbol(kind, node, shift), e)])


def weight(lam) -> ClassMonomial:
    """The invertible class [lambda], lambda in the fundamental-weight basis."""
    return ClassMonomial([(ClassSymbol("omega", j + 1), e) for j, e in enumerate(lam)])


def neg_root(cd: CartanData, i: int) -> ClassMonomial:
    return weight([-x for x in cd.alpha(i)])


def lplus(i: int, r: int, e: int = 1) -> ClassMonomial:
    return sym("Lplus", i, r, e)


def _poly(*pairs) -> Laurent:
    return Laurent(pairs, ClassMonomial)


@dataclass(frozen=True)
class RelationExpr:
    lhs: Laurent
    rhs: Laurent
    rank: int
    note: str = ""

    def difference(self) -> Laurent:
        return self.lhs - self.rhs

    def holds_trivially(self) -> bool:
        return self.difference().is_zero()

    def is_polynomial(self) -> bool:
        """No symbol other than weights appears with a negative power."""
        for side in (self.lhs, self.rhs):
            for m, _ in side.terms():
                if any(e < 0 for k, e in m.items() if k.kind != "omega"):
                    return False
        return True

    def specialize(self, fn: Callable[[ClassSymbol], int]) -> tuple[int, int]:
        def ev(p: Laurent) -> int:
            tot = 0
            for m, c in p.terms():
                v = 1
                for k, e in m.items():
                    x = fn(k)
                    if e < 0 and x not in (1, -1):
                        raise ValueError(f"cannot invert {k} -> {x}")
                    v *= x ** e if e >= 0 else x ** (-e)
                tot += c * v
            return tot
        return ev(self.lhs), ev(self.rhs)

    def map_symbols(self, fn: Callable[[ClassMonomial], ClassMonomial]) -> "RelationExpr":
        return RelationExpr(self.lhs.map_monomials(fn), self.rhs.map_monomials(fn), self.rank, self.note)

    def omit_weights(self) -> "RelationExpr":
        return self.map_symbols(lambda m: m.without_weight())

    def to_json(self) -> dict:
        side = lambda p: [{"coef": c, "symbols": [[k.kind, k.node, k.shift, e] for k, e in m.items()]}
                          for m, c in p.terms()]
        out = {"lhs": side(self.lhs), "rhs": side(self.rhs)}
        if self.note:
            out["note"] = self.note
        return out

    def to_latex(self, omit_weights: bool = False) -> str:
        return f"{_latex_side(self.lhs, self.rank, omit_weights)} = {_latex_side(self.rhs, self.rank, omit_weights)}"

    def __str__(self) -> str:
        return f"{self.lhs} = {self.rhs}"


def _latex_weight(w: tuple) -> str:
    parts = []
    for j, e in enumerate(w, start=1):
        if not e:
            continue
        coef = "" if abs(e) == 1 else str(abs(e))
        sign = "-" if e < 0 else ("+" if parts else "")
        parts.append(f"{sign}{coef}\\omega" + (f"_{{{j}}}" if len(w) > 1 else ""))
    return "[" + "".join(parts) + "]"


def _latex_side(p: Laurent, rank: int, omit_weights: bool) -> str:
    if p.is_zero():
        return "0"
    out = []
    for m, c in sorted(p.terms(), key=lambda t: _term_order(t[0])):
        pieces = []
        w = m.weight(rank)
        if any(w) and not omit_weights:
            pieces.append(_latex_weight(w))
        for k, e in sorted(m.items(), key=lambda t: (_KIND_ORDER[t[0].kind], t[0])):
            if k.kind == "omega":
                continue
            pieces.append(k.latex() + (f"^{{{e}}}" if e != 1 else ""))
        body = "".join(pieces) or "1"
        if c == 1:
            term = body
        elif c == -1:
            term = "-" + body
        else:
            term = f"{c}" + ("" if body == "1" else body)
        out.append(term)
    return " + ".join(out).replace("+ -", "- ")


_KIND_ORDER = {"K": 0, "V": 1, "Lstar": 2, "Lplus": 3, "Ltilde": 4, "omega": 5}


def _term_order(m: ClassMonomial):
    # positive weights first, then by symbol content
    w = sum(m.weight(max([k.node for k, _ in m.items()] + [1])))
    return (-w, str(m))


# TQ

def tq_relation(cd: CartanData, qc: QCharResult, i0: int | None = None, r0: int | None = None) -> RelationExpr:
    """Baxter relation from a q-character with a unique dominant monomial."""
    poly = qc.polynomial
    if len(qc.dominant) != 1:
        raise ValueError("q-character must have a unique dominant monomial")
    top = qc.dominant[0]
    if top.is_one():
        lhs_sym = ClassMonomial.one()
    else:
        if i0 is None or r0 is None:
            (i0, r0), _ = top.items()[0]
        lhs_sym = sym("V", i0, r0)
    terms = []
    for m, c in poly.terms():
        img = ClassMonomial.one()
        for (i, r), e in m.items():
            img = img * sym("omega", i, 0, e) * lplus(i, r - cd.d(i), e) * lplus(i, r + cd.d(i), -e)
        terms.append((img, c))
    need: dict = {}
    for img, _ in terms:
        for k, e in img.items():
            if k.kind == "Lplus" and e < 0:
                need[k] = max(need.get(k, 0), -e)
    clear = ClassMonomial(need.items())
    rhs = Laurent(((img * clear, c) for img, c in terms), ClassMonomial)
    lhs = Laurent({lhs_sym * clear: 1}, ClassMonomial)
    rel = RelationExpr(lhs, rhs, cd.rank)
    if not rel.is_polynomial():
        raise ValueError("substitution left an uncleared denominator")
    return rel


# QQ

def psi_tilde(cd: CartanData, i: int, r: int) -> PsiWeight:
    cd.check_node(i)
    out = PsiWeight.psi(i, r, -1)
    for j in cd.neighbors(i):
        cij = cd.c(i, j)
        offs = {-1: (cd.d(i),), -2: (0, 2), -3: (-1, 1, 3)}[cij]
        for o in offs:
            out = out * PsiWeight.psi(j, r + o)
    return out


def qq_system(cd: CartanData, i: int, r: int) -> RelationExpr:
    cd.check_node(i)
    d = cd.d(i)
    lhs = _poly((lplus(i, r - d) * sym("Ltilde", i, r + d), 1), (lplus(i, r + d) * sym("Ltilde", i, r - d), -1))
    prod = sym("K")
    for j in cd.neighbors(i):
        cij = cd.c(i, j)
        for m in range(-cij):
            prod = prod * lplus(j, r + cij + 1 + 2 * m)
    return RelationExpr(lhs, _poly((prod, 1)), cd.rank, note="K is an unspecified constant")


def swap_q_qtilde(rel: RelationExpr) -> RelationExpr:
    def sw(m: ClassMonomial) -> ClassMonomial:
        out = []
        for k, e in m.items():
            kind = {"Lplus": "Ltilde", "Ltilde": "Lplus"}.get(k.kind, k.kind)
            out.append((k._replace(kind=kind), e))
        return ClassMonomial(out)
    return rel.map_symbols(sw)


def lstar_psi(cd: CartanData, i: int, r: int) -> PsiWeight:
    out = PsiWeight.psi(i, r, -1)
    for j in cd.neighbors(i):
        out = out * PsiWeight.psi(j, r - cd.b(j, i))
    return out


def qq_star_relation(cd: CartanData, i: int, r: int) -> RelationExpr:
    cd.check_node(i)
    lhs = _poly((sym("Lstar", i, r) * lplus(i, r), 1))
    first, second = ClassMonomial.one(), neg_root(cd, i)
    for j in cd.neighbors(i):
        first = first * lplus(j, r - cd.b(j, i))
        second = second * lplus(j, r + cd.b(i, j))
    return RelationExpr(lhs, _poly((first, 1), (second, 1)), cd.rank)


def sl2_qqstar_tq_match(cd: CartanData, r: int) -> tuple[RelationExpr, RelationExpr, bool]:
    """Compare the sl2 QQ* relation at q^{r+1} with the TQ relation at q^r.

    The TQ relation is divided by [omega] L+(r-1); then L*(r+1) is read as
    [-omega] [V(r)] / L+(r-1) and the one-dimensional ratio
    L+(r+3) / L+(r-1) is set to 1.
    """
    from .qchar import sl2_string_character

    if cd.rank != 1:
        raise ValueError("the dictionary is specific to sl2")
    tq = tq_relation(cd, sl2_string_character(r, 1), 1, r)
    norm = (sym("omega", 1) * lplus(1, r - 1)).inverse()
    ratio = lplus(1, r + 3) / lplus(1, r - 1)

    def tq_map(m: ClassMonomial) -> ClassMonomial:
        m = m * norm
        e = m.exponent(ClassSymbol("Lplus", 1, r + 3))
        return m / ratio ** e

    def star_map(m: ClassMonomial) -> ClassMonomial:
        e = m.exponent(ClassSymbol("Lstar", 1, r + 1))
        img = sym("omega", 1, 0, -1) * sym("V", 1, r) * lplus(1, r - 1, -1)
        return m / sym("Lstar", 1, r + 1, e) * img ** e

    a = tq.map_symbols(tq_map)
    b = qq_star_relation(cd, 1, r + 1).map_symbols(star_map)
    return a, b, (a.lhs == b.lhs and a.rhs == b.rhs)


# Bethe

class BethePole(ZeroDivisionError):
    pass


@dataclass
class BetheContext:
    cd: CartanData
    roots: dict
    u: list
    q: complex
    drive: Callable | None = None
    pole_tol: float = 1e-12
    _checked: bool = field(default=False, repr=False)

    def __post_init__(self):
        for i, ws in self.roots.items():
            self.cd.check_node(i)
            if any(abs(w) == 0 for w in ws):
                raise ValueError("Baxter roots must be nonzero")
        if len(self.u) != self.cd.rank or any(x == 0 for x in self.u):
            raise ValueError("twist must be a nonzero vector of length rank")

    @property
    def v(self) -> list:
        return self.cd.v_twist(self.u)

    def Q(self, j: int, z: complex) -> complex:
        out = 1.0 + 0j
        for w in self.roots.get(j, []):
            out *= 1 - z / w
        return out


def bethe_residual(ctx: BetheContext, i: int, w: complex) -> complex:
    """v_i^{-1} rho_i(w) prod_j Q_j(w q^{B_ij}) / Q_j(w q^{-B_ij}) + 1."""
    cd = ctx.cd
    if not any(cmath.isclose(w, x, rel_tol=1e-9) for x in ctx.roots.get(i, [])):
        raise ValueError("w is not a root of Q_i")
    val = 1 / ctx.v[i - 1]
    if ctx.drive is not None:
        val *= ctx.drive(i, w)
    for j in cd.nodes:
        b = cd.b(i, j)
        if b == 0 or not ctx.roots.get(j):
            continue
        num = ctx.Q(j, w * ctx.q ** b)
        den = ctx.Q(j, w * ctx.q ** (-b))
        if abs(den) <= ctx.pole_tol * max(1.0, abs(num)):
            raise BethePole(f"Q_{j} vanishes at w q^{-b}")
        val *= num / den
    return val + 1


def bethe_residuals(ctx: BetheContext) -> dict:
    return {i: [bethe_residual(ctx, i, w) for w in ws] for i, ws in ctx.roots.items()}
