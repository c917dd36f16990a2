"""Numeric bench for the twisted XXZ chain.

The R-matrix on C^2 x C^2, basis (up,up), (up,down), (down,up), (down,down):

    R(z) = [[a, 0,  0,  0],
            [0, b,  c1, 0],
            [0, c2, b,  0],
            [0, 0,  0,  a]]

with a = 1 - z q^2, b = q (1 - z), c1 = 1 - q^2, c2 = (1 - q^2) z.  Site k
carries the evaluation module at b_k and uses R(z b_k).  The auxiliary
trace is twisted by diag(u^{1/2}, u^{-1/2}).
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass, field

import numpy as np

from .cartan import cartan_data
from .relations import BetheContext, BethePole, bethe_residual

MAX_SITES = 12
STRING_TOL = 1e-4  # relative distance below which w q^{+-2} is taken to hit another root


class DegenerateParameter(ValueError):
    pass


class FitError(RuntimeError):
    pass


def r_matrix(z: complex, q: complex) -> np.ndarray:
    a = 1 - z * q * q
    b = q * (1 - z)
    c1 = 1 - q * q
    c2 = (1 - q * q) * z
    return np.array([[a, 0, 0, 0], [0, b, c1, 0], [0, c2, b, 0], [0, 0, 0, a]], dtype=complex)


def yang_baxter_residual(z1: complex, z2: complex, q: complex) -> float:
    """|| R12(z1/z2) R13(z1) R23(z2) - R23(z2) R13(z1) R12(z1/z2) ||."""
    I2 = np.eye(2)
    P = np.array([[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]])
    R12 = np.kron(r_matrix(z1 / z2, q), I2)
    R23 = np.kron(I2, r_matrix(z2, q))
    P23 = np.kron(I2, P)
    R13 = P23 @ np.kron(r_matrix(z1, q), I2) @ P23
    return float(np.linalg.norm(R12 @ R13 @ R23 - R23 @ R13 @ R12))


@dataclass(frozen=True)
class ChainSpec:
    N: int
    q: complex = 0.7 + 0.1j
    u: complex = 0.5
    sites: tuple = ()

    def __post_init__(self):
        if self.N < 1:
            raise ValueError("need at least one site")
        if self.N > MAX_SITES:
            raise MemoryError(f"N > {MAX_SITES} is refused")
        if self.u == 0:
            raise ValueError("twist must be nonzero")
        for m in range(1, 2 * self.N + 5):
            if abs(self.q ** m - 1) < 1e-9:
                raise DegenerateParameter(f"q is a root of unity of order {m}")
        if self.sites and len(self.sites) != self.N:
            raise ValueError("one spectral parameter per site")

    @property
    def b(self) -> list:
        return list(self.sites) if self.sites else [1.0] * self.N

    @property
    def alpha(self) -> complex:
        return cmath.sqrt(self.u)

    @property
    def beta(self) -> complex:
        return 1 / cmath.sqrt(self.u)

    def phi_minus(self, z) -> complex:
        return self.alpha * np.prod([1 - z * self.q ** 2 * bk for bk in self.b])

    def phi_plus(self, z) -> complex:
        return self.beta * np.prod([self.q * (1 - z * bk) for bk in self.b])

    def phi_minus_coeffs(self) -> np.ndarray:
        c = np.array([1.0 + 0j])
        for bk in self.b:
            c = np.convolve(c, [1, -self.q ** 2 * bk])
        return self.alpha * c

    def phi_plus_coeffs(self) -> np.ndarray:
        c = np.array([1.0 + 0j])
        for bk in self.b:
            c = np.convolve(c, [self.q, -self.q * bk])
        return self.beta * c


def _site_op(op: np.ndarray, k: int, N: int) -> np.ndarray:
    return np.kron(np.kron(np.eye(2 ** k), op), np.eye(2 ** (N - k - 1)))


def transfer_matrix(spec: ChainSpec, z: complex) -> np.ndarray:
    N = spec.N
    dim = 2 ** N
    M = [[np.eye(dim, dtype=complex), np.zeros((dim, dim), complex)],
         [np.zeros((dim, dim), complex), np.eye(dim, dtype=complex)]]
    for k in range(N):
        R = r_matrix(z * spec.b[k], spec.q).reshape(2, 2, 2, 2)  # [a, s, a', s']
        ops = [[_site_op(R[a, :, c, :], k, N) for c in range(2)] for a in range(2)]
        M = [[ops[a][0] @ M[0][c] + ops[a][1] @ M[1][c] for c in range(2)] for a in range(2)]
    return spec.alpha * M[0][0] + spec.beta * M[1][1]


def build_transfer(spec: ChainSpec, z_samples) -> list:
    if len(z_samples) < spec.N + 2:
        raise ValueError("need at least N + 2 sample points")
    return [transfer_matrix(spec, z) for z in z_samples]


def commutator_residual(A: np.ndarray, B: np.ndarray) -> float:
    return float(np.linalg.norm(A @ B - B @ A) / (np.linalg.norm(A) * np.linalg.norm(B)))


# fitting

def _poly_eval(c, z):
    return np.polyval(np.asarray(c)[::-1], z)


def _scaled(c, s):
    return np.asarray(c) * s ** np.arange(len(c))


def _tq_matrix(spec: ChainSpec, lam, y, M):
    q = spec.q
    pm, pp = spec.phi_minus_coeffs(), spec.phi_plus_coeffs()
    rows = spec.N + M + 1
    A = np.zeros((rows, M + 1), complex)
    for m in range(M + 1):
        col = np.zeros(rows, complex)
        col[m:m + len(lam)] += np.asarray(lam) * q ** m
        col[m:m + len(pm)] -= y * pm * q ** (-m)
        col[m:m + len(pp)] -= pp * q ** (3 * m) / y
        A[:, m] = col
    return A


def tq_residual(spec: ChainSpec, lam, y, Q, zs) -> float:
    q = spec.q
    worst = 0.0
    for z in zs:
        l = _poly_eval(lam, z) * _poly_eval(Q, z * q)
        r1 = y * spec.phi_minus(z) * _poly_eval(Q, z / q)
        r2 = spec.phi_plus(z) * _poly_eval(Q, z * q ** 3) / y
        scale = abs(l) + abs(r1) + abs(r2)
        worst = max(worst, abs(l - r1 - r2) / scale if scale else 0.0)
    return worst


def _null_poly(A: np.ndarray):
    scale = np.linalg.norm(A, axis=0)
    scale[scale == 0] = 1
    _, s, vh = np.linalg.svd(A / scale)
    v = vh[-1].conj() / scale
    return v, s[-1] / s[0] if s[0] else 0.0


def fit_baxter(spec: ChainSpec, lam, zs, tol: float = 1e-8):
    """Return (y, Q coefficients, residual) with Q of least degree."""
    a, b = spec.alpha, spec.beta * spec.q ** spec.N
    disc = cmath.sqrt(lam[0] ** 2 - 4 * a * b)
    ys = [(lam[0] + disc) / (2 * a), (lam[0] - disc) / (2 * a)]
    best = None
    for M in range(spec.N + 1):
        for y in ys:
            v, _ = _null_poly(_tq_matrix(spec, lam, y, M))
            if abs(v[0]) < 1e-14 * np.max(np.abs(v)):
                continue
            Q = v / v[0]
            res = tq_residual(spec, lam, y, Q, zs)
            if res < tol and (best is None or res < best[2]):
                best = (y, Q, res)
        if best is not None:
            return best
    raise FitError("no Baxter polynomial of degree <= N fits this eigenvalue")


@dataclass
class EigenFit:
    lam: np.ndarray
    y: complex
    Q: np.ndarray
    roots: np.ndarray
    tq_residual: float
    interp_residual: float
    bethe: list = field(default_factory=list)
    generic: list = field(default_factory=list)

    @property
    def degree(self) -> int:
        return len(self.Q) - 1

    def generic_bethe(self) -> list:
        return [abs(r) for r, g in zip(self.bethe, self.generic) if g and r is not None]

    def to_json(self) -> dict:
        c = lambda x: [float(np.real(x)), float(np.imag(x))]
        return {
            "eigenvalue_coeffs": [c(x) for x in self.lam],
            "y": c(self.y),
            "Q_coeffs": [c(x) for x in self.Q],
            "Q_roots": [c(x) for x in sorted(self.roots, key=lambda w: (round(w.real, 9), round(w.imag, 9)))],
            "tq_residual": self.tq_residual,
            "interp_residual": self.interp_residual,
            "bethe_residuals": [None if r is None else abs(r) for r in self.bethe],
            "generic_roots": list(self.generic),
        }


@dataclass
class SpectrumFit:
    spec: ChainSpec
    eigen: list
    commutativity: float
    diag_residual: float

    def max_residuals(self) -> dict:
        return {
            "commutativity": self.commutativity,
            "diagonalization": self.diag_residual,
            "interpolation": float(max(e.interp_residual for e in self.eigen)),
            "tq": float(max(e.tq_residual for e in self.eigen)),
            "bethe": float(max([r for e in self.eigen for r in e.generic_bethe()] + [0.0])),
            "nongeneric_roots": sum(1 for e in self.eigen for g in e.generic if not g),
        }

    def to_json(self) -> dict:
        s = self.spec
        return {
            "N": s.N, "q": [s.q.real, s.q.imag] if isinstance(s.q, complex) else [float(s.q), 0.0],
            "u": [complex(s.u).real, complex(s.u).imag],
            "residuals": self.max_residuals(),
            "eigen": [e.to_json() for e in self.eigen],
        }


def sample_points(spec: ChainSpec, count: int, seed: int = 0) -> list:
    rng = np.random.default_rng(seed)
    r = rng.uniform(0.3, 0.9, count)
    t = rng.uniform(0, 2 * np.pi, count)
    return list(r * np.exp(1j * t))


def string_distance(q, w, roots) -> float:
    """min |w q^{+-2} - w'| / |w| over roots w'; small means a near-exact string."""
    return min(abs(w * q ** k - x) / abs(w) for x in roots for k in (2, -2))


def _bethe_context(spec: ChainSpec, y, roots) -> BetheContext:
    v = y * y * spec.alpha / spec.beta
    q, N, bs = spec.q, spec.N, spec.b

    def rho(i, w):
        num = np.prod([1 - w * bk / q for bk in bs])
        den = np.prod([1 - w * q * bk for bk in bs])
        return q ** N * num / den

    return BetheContext(cartan_data("A1"), {1: list(roots)}, [cmath.sqrt(v)], q, drive=rho)


def fit_spectrum(spec: ChainSpec, matrices=None, zs=None, seed: int = 0, tol: float = 1e-8) -> SpectrumFit:
    N = spec.N
    if zs is None:
        zs = sample_points(spec, N + 6, seed)
    if matrices is None:
        matrices = build_transfer(spec, zs)
    comm = max(commutator_residual(matrices[a], matrices[b])
               for a in range(len(matrices)) for b in range(a + 1, min(len(matrices), a + 3)))
    rng = np.random.default_rng(seed + 1)
    w = rng.normal(size=len(matrices)) + 1j * rng.normal(size=len(matrices))
    G = sum(c * T for c, T in zip(w, matrices))
    _, V = np.linalg.eig(G)
    Vinv = np.linalg.inv(V)
    diag_res = 0.0
    vals = []
    for T in matrices:
        D = Vinv @ T @ V
        off = D - np.diag(np.diag(D))
        diag_res = max(diag_res, float(np.linalg.norm(off) / np.linalg.norm(T)))
        vals.append(np.diag(D))
    vals = np.array(vals)  # samples x eigenvectors
    fit_pts, check_pts = zs[: N + 2], zs[N + 2:]
    Vand = np.vander(np.array(fit_pts), N + 1, increasing=True)
    eigen = []
    for k in range(vals.shape[1]):
        lam, *_ = np.linalg.lstsq(Vand, vals[: N + 2, k], rcond=None)
        interp = 0.0
        for z, val in zip(check_pts, vals[N + 2:, k]):
            interp = max(interp, abs(_poly_eval(lam, z) - val) / max(1.0, abs(val)))
        y, Q, res = fit_baxter(spec, lam, check_pts or fit_pts, tol)
        roots = np.roots(Q[::-1]) if len(Q) > 1 else np.array([])
        ef = EigenFit(lam, y, Q, roots, res, interp)
        if len(roots):
            ctx = _bethe_context(spec, y, roots)
            for w in roots:
                ok = string_distance(spec.q, w, roots) >= STRING_TOL
                try:
                    ef.bethe.append(bethe_residual(ctx, 1, w))
                except BethePole:
                    ef.bethe.append(None)
                    ok = False
                ef.generic.append(bool(ok))
        eigen.append(ef)
    eigen.sort(key=lambda e: (e.degree, round(float(np.real(e.lam[0])), 8), round(float(np.imag(e.lam[0])), 8)))
    return SpectrumFit(spec, eigen, comm, diag_res)


# QQ

def effective_twist(spec: ChainSpec, y) -> complex:
    """kappa = y^2 alpha / (beta q^N); kappa^{-1} multiplies the shifted product."""
    return y * y * spec.alpha / (spec.beta * spec.q ** spec.N)


def wronskian_coeffs(Qp, Qm, q, kappa) -> np.ndarray:
    """Q+(x)Q-(x) - kappa^{-1} Q+(x q^2) Q-(x q^{-2})."""
    return np.convolve(Qp, Qm) - np.convolve(_scaled(Qp, q ** 2), _scaled(Qm, q ** -2)) / kappa


def balanced_wronskian(A, B, q, u) -> np.ndarray:
    """u^{1/2} A(xq^{-1}) B(xq) - u^{-1/2} A(xq) B(xq^{-1})."""
    s = cmath.sqrt(u)
    return s * np.convolve(_scaled(A, 1 / q), _scaled(B, q)) - np.convolve(_scaled(A, q), _scaled(B, 1 / q)) / s


@dataclass
class QQReport:
    Qplus: np.ndarray
    Qminus: np.ndarray
    kappa: complex
    constant: complex
    residual: float
    tq_partner_residual: float

    def to_json(self) -> dict:
        c = lambda x: [float(np.real(x)), float(np.imag(x))]
        return {"Q_plus": [c(x) for x in self.Qplus], "Q_minus": [c(x) for x in self.Qminus],
                "kappa": c(self.kappa), "constant": c(self.constant), "residual": self.residual,
                "tq_partner_residual": self.tq_partner_residual}


def verify_qq_polynomial(spec: ChainSpec, fit: SpectrumFit) -> list:
    """Solve the q-Wronskian for Q- given Q+ and compare with prod (1 - x q b_k)."""
    q, N = spec.q, spec.N
    target = np.array([1.0 + 0j])
    for bk in spec.b:
        target = np.convolve(target, [1, -q * bk])
    out = []
    for e in fit.eigen:
        kappa = effective_twist(spec, e.y)
        Qp = e.Q
        dm = N - e.degree
        rows = N + 1
        A = np.zeros((rows, dm + 2), complex)
        for m in range(dm + 1):
            basis = np.zeros(dm + 1, complex)
            basis[m] = 1
            col = wronskian_coeffs(Qp, basis, q, kappa)
            A[: len(col), m] = col
        A[:, dm + 1] = -target
        v, cond = _null_poly(A)
        if abs(v[0]) < 1e-14 * np.max(np.abs(v)):
            raise FitError("singular Wronskian system")
        Qm = v[: dm + 1] / v[0]
        const = v[dm + 1] / v[0]
        W = wronskian_coeffs(Qp, Qm, q, kappa)
        W = np.pad(W, (0, max(0, rows - len(W))))
        res = float(np.linalg.norm(W[:rows] - const * target) / max(np.linalg.norm(W), 1e-300))
        res = max(res, float(np.linalg.norm(W[rows:])) if len(W) > rows else 0.0)
        # Q-(z q^{-2}) is a Baxter polynomial for the partner root of the z = 0 quadratic
        y2 = spec.beta * q ** N / (spec.alpha * e.y)
        partner = tq_residual(spec, e.lam, y2, _scaled(Qm, q ** -2), sample_points(spec, 4, 7))
        out.append(QQReport(Qp, Qm, kappa, const, res, partner))
    return out
