"""The sl2 quantum Grothendieck ring: normal ordering, bar involution, canonical basis.

Generators g_r stand for the t-deformed classes [V(q^r)]_t.  Elements are
combinations of ascending words with coefficients in Z[t^{1/2}, t^{-1/2}];
a coefficient is a dict from half-exponent k (meaning t^{k/2}) to an int.
"""

from __future__ import annotations

from collections import defaultdict
from functools import lru_cache
from typing import Iterable

from .laurent import Laurent
from .qchar import sl2_simple_character, sl2_string_character


def twist_exponent(d: int) -> int:
    """N(d): 2(-1)^k when d = 2k > 0, else 0."""
    if d > 0 and d % 2 == 0:
        return 2 * (-1) ** (d // 2)
    return 0


# coefficient helpers, keys are half-exponents

def _cadd(a: dict, b: dict, s: int = 1) -> dict:
    out = dict(a)
    for k, v in b.items():
        out[k] = out.get(k, 0) + s * v
        if not out[k]:
            del out[k]
    return out


def _cmul(a: dict, b: dict) -> dict:
    out: dict = defaultdict(int)
    for k1, v1 in a.items():
        for k2, v2 in b.items():
            out[k1 + k2] += v1 * v2
    return {k: v for k, v in out.items() if v}


def _cbar(a: dict) -> dict:
    return {-k: v for k, v in a.items()}


def _tpow(n: int) -> dict:
    """t^n as a coefficient (n an integer)."""
    return {2 * n: 1}


def coef_str(a: dict) -> str:
    if not a:
        return "0"
    parts = []
    for k in sorted(a, reverse=True):
        v = a[k]
        p = "" if k == 0 else ("t" if k == 2 else (f"t^{{{k // 2}}}" if k % 2 == 0 else f"t^{{{k}/2}}"))
        if not p:
            parts.append(str(v))
        elif v == 1:
            parts.append(p)
        elif v == -1:
            parts.append("-" + p)
        else:
            parts.append(f"{v}{p}")
    return " + ".join(parts).replace("+ -", "- ")


@lru_cache(maxsize=None)
def _normal(word: tuple) -> tuple:
    """Normal form of a word as sorted ((ascending word, coefficient items)) pairs."""
    for p in range(len(word) - 1):
        hi, lo = word[p], word[p + 1]
        if hi > lo:
            d = hi - lo
            f = _tpow(-twist_exponent(d))
            acc: dict = {}
            swapped = word[:p] + (lo, hi) + word[p + 2:]
            for w, c in _normal(swapped):
                acc[w] = _cadd(acc.get(w, {}), _cmul(f, dict(c)))
            if d == 2:
                # - t^{-N} (1 - t^{-2}) times the word with the pair removed
                g = _cmul(f, {0: -1, -4: 1})
                for w, c in _normal(word[:p] + word[p + 2:]):
                    acc[w] = _cadd(acc.get(w, {}), _cmul(g, dict(c)))
            return tuple(sorted((w, tuple(sorted(c.items()))) for w, c in acc.items() if c))
    return ((word, ((0, 1),)),)


class KtElement:
    __slots__ = ("_terms",)

    def __init__(self, terms=()):
        acc: dict = {}
        items = terms.items() if isinstance(terms, dict) else terms
        for w, c in items:
            w = tuple(w)
            if list(w) != sorted(w):
                for nw, nc in _normal(w):
                    acc[nw] = _cadd(acc.get(nw, {}), _cmul(dict(c), dict(nc)))
            else:
                acc[w] = _cadd(acc.get(w, {}), dict(c))
        self._terms = {w: c for w, c in acc.items() if c}

    @classmethod
    def gen(cls, r: int) -> "KtElement":
        return cls({(r,): {0: 1}})

    @classmethod
    def scalar(cls, c: dict | int) -> "KtElement":
        return cls({(): c if isinstance(c, dict) else {0: c}})

    @classmethod
    def word(cls, letters: Iterable[int], coef: dict | None = None) -> "KtElement":
        return cls([(tuple(letters), coef or {0: 1})])

    def terms(self) -> list:
        return sorted(self._terms.items())

    def coefficient(self, w) -> dict:
        return dict(self._terms.get(tuple(w), {}))

    def words(self) -> list:
        return sorted(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __eq__(self, other) -> bool:
        return isinstance(other, KtElement) and self._terms == other._terms

    def __hash__(self):
        return hash(tuple((w, tuple(sorted(c.items()))) for w, c in self.terms()))

    def __add__(self, other: "KtElement") -> "KtElement":
        acc = dict(self._terms)
        for w, c in other._terms.items():
            acc[w] = _cadd(acc.get(w, {}), c)
        return KtElement(acc)

    def __neg__(self):
        return KtElement({w: {k: -v for k, v in c.items()} for w, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c: dict) -> "KtElement":
        return KtElement({w: _cmul(c, v) for w, v in self._terms.items()})

    def __mul__(self, other: "KtElement") -> "KtElement":
        return star(self, other)

    def eval_t1(self) -> dict:
        return {w: sum(c.values()) for w, c in self._terms.items() if sum(c.values())}

    def to_json(self) -> list:
        return [{"word": list(w), "coef": [[k, v] for k, v in sorted(c.items())]} for w, c in self.terms()]

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for w, c in self.terms():
            word = "*".join(f"g{r}" for r in w) or "1"
            parts.append(f"({coef_str(c)}) {word}" if w else f"({coef_str(c)})")
        return " + ".join(parts)

    __repr__ = __str__


def star(x: KtElement, y: KtElement) -> KtElement:
    pairs = []
    for w1, c1 in x._terms.items():
        for w2, c2 in y._terms.items():
            pairs.append((w1 + w2, _cmul(c1, c2)))
    return KtElement(pairs)


def bar(x: KtElement) -> KtElement:
    """t^{1/2} -> t^{-1/2} on coefficients, words reversed and re-ordered."""
    return KtElement([(tuple(reversed(w)), _cbar(c)) for w, c in x._terms.items()])


def product(shifts: Iterable[int]) -> KtElement:
    out = KtElement.scalar(1)
    for r in shifts:
        out = out * KtElement.gen(r)
    return out


def standard_twist(shifts) -> int:
    """Sum of N over ordered pairs, halved: the power normalizing a standard class."""
    s = sorted(shifts)
    tot = sum(twist_exponent(s[b] - s[a]) for a in range(len(s)) for b in range(a + 1, len(s)))
    return tot // 2


def standard_class(shifts) -> KtElement:
    """t^{S/2} times the descending product; bar-invariant up to lower terms."""
    s = sorted(shifts, reverse=True)
    return product(s).scale(_tpow(standard_twist(shifts)))


def leading_coefficient(shifts) -> dict:
    return standard_class(shifts).coefficient(sorted(shifts))


class FiltrationError(RuntimeError):
    pass


@lru_cache(maxsize=None)
def _canonical(key: tuple) -> tuple:
    M = standard_class(key)
    d = bar(M) - M
    if any(len(w) >= len(key) for w in d.words()):
        raise FiltrationError(f"bar(M) - M is not strictly lower for {key}")
    coeffs = _expand_in_canonical(d)
    L = M
    corr = {}
    for sub, b in coeffs.items():
        c = {k: v for k, v in b.items() if k < 0}
        if {k: v for k, v in b.items() if k > 0} != {-k: -v for k, v in c.items()} or b.get(0):
            raise FiltrationError(f"bar(M) - M is not antisymmetric at {sub}")
        if c:
            L = L + canonical_class(sub).scale(c)
            corr[sub] = c
    return L, tuple(sorted((s, tuple(sorted(c.items()))) for s, c in corr.items()))


def _expand_in_canonical(x: KtElement, limit: int = 10000) -> dict:
    """Coefficients of x in the canonical basis, by stripping longest words."""
    out: dict = {}
    rest = x
    steps = 0
    while not rest.is_zero():
        steps += 1
        if steps > limit:
            raise FiltrationError("lower-term expansion did not terminate")
        w = max(rest.words(), key=lambda u: (len(u), u))
        a = rest.coefficient(w)
        lead = leading_coefficient(w)
        (k0, v0), = lead.items()
        if abs(v0) != 1:
            raise FiltrationError("non-unit leading coefficient")
        b = {k - k0: v * v0 for k, v in a.items()}
        out[w] = _cadd(out.get(w, {}), b)
        rest = rest - canonical_class(w).scale(b)
    return {w: c for w, c in out.items() if c}


def canonical_class(shifts) -> KtElement:
    """Bar-invariant element equal to the standard class plus t^{-1}Z[t^{-1}] lower terms."""
    key = tuple(sorted(shifts))
    if not key:
        return KtElement.scalar(1)
    return _canonical(key)[0]


def canonical_corrections(shifts) -> dict:
    """c_{S'} with L(S) = M(S) + sum c_{S'} L(S')."""
    key = tuple(sorted(shifts))
    if not key:
        return {}
    return {s: dict(c) for s, c in _canonical(key)[1]}


def standard_in_canonical(shifts) -> dict:
    """p_{S'} with M(S) = L(S) + sum p_{S'} L(S'), the KL-type coefficients."""
    return {s: {k: -v for k, v in c.items()} for s, c in canonical_corrections(shifts).items()}


def evaluate_t1(x: KtElement) -> Laurent:
    """pi: t -> 1 and g_r -> the fundamental sl2 q-character at q^r."""
    out = Laurent()
    for w, c in x.eval_t1().items():
        term = Laurent.constant(c)
        for r in w:
            term = term * sl2_string_character(r, 1).polynomial
        out = out + term
    return out


def simple_character(shifts) -> Laurent:
    return sl2_simple_character(sorted(shifts))
