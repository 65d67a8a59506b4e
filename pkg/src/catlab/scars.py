"""
The scarred-eigenfunction pipeline.

From a hyperbolic, symmetric, positive-entry B in SL(2,Z) and an
admissible index k, builds the tensor eigenfunction

    u = P^{-1/2} sum_t v_t (x) w_t,
    v_t = e^{-i phi t / P} M^t G_N,   w_t = v_{t + P/2},

in factored form (P states of length N, never an N^2 vector unless
explicitly materialized), together with Gaussian overlap closed forms,
lattice overlap sums, matrix elements, and semiclassical-measure scans.
"""

from dataclasses import dataclass
import math

import numpy as np

from . import hilbert
from .hilbert import LatticeTranslation, QuantumState, StateSpace
from .metaplectic import metaplectic_sl2, period_phase
from .symplectic import SymplecticMatrix, admissible_N, quantum_period


def leading_eigenvalue(B):
    tr = float(B.trace())
    return (tr + math.sqrt(tr * tr - 4)) / 2


def gaussian_autocorrelation(lam, t):
    """sqrt(2 / (lambda^t + lambda^-t)); even in t."""
    if lam <= 1:
        raise ValueError("lambda must exceed 1")
    return math.sqrt(2.0 / (lam ** t + lam ** (-t)))


def S1(lam):
    """sum over integer t of 2 / (lambda^t + lambda^-t), to 1e-16."""
    total = 1.0  # t = 0 term: 2/2
    t = 1
    while True:
        term = 2.0 / (lam ** t + lam ** (-t))
        total += 2 * term
        if term < 1e-16:
            return total
        t += 1


def _check_overlap_matrix(B):
    if not isinstance(B, SymplecticMatrix):
        B = SymplecticMatrix(B)
    ((a, b), (c, d)) = B.entries
    if b != c or b <= 0:
        raise ValueError("overlap closed form requires a symmetric "
                         "positive-entry matrix")
    if a + d <= 2:
        raise ValueError("overlap closed form requires trace > 2")
    return B


def overlap_closed_form(B, omega, h):
    """
    <U_omega G_h, M_B G_h> in L2(R):
    sqrt(2/Tr B) exp(-<B^{-1} w, w> / (2 h Tr B))
                 exp( i <B R w, w> / (2 h Tr B)),  R = [[0, 1], [-1, 0]].
    """
    B = _check_overlap_matrix(B)
    tr = float(B.trace())
    Binv = np.array(B.inverse().entries, dtype=float)
    Barr = np.array(B.entries, dtype=float)
    R = np.array([[0.0, 1.0], [-1.0, 0.0]])
    w = np.asarray(omega, dtype=float)
    quad = float(w @ Binv @ w)
    phase = float(w @ (Barr @ R) @ w)
    return (math.sqrt(2.0 / tr)
            * math.exp(-quad / (2 * h * tr))
            * np.exp(1j * phase / (2 * h * tr)))


def overlap_quadrature(B, omega, h, rtol=1e-10):
    """
    Independent trapezoid evaluation of <U_omega G_h, M_B G_h> in L2(R),
    refining the grid until the value stabilizes to rtol (absolute floor
    1e-12).  Used as the oracle for overlap_closed_form.
    """
    B = _check_overlap_matrix(B)
    ((a, b), (c, d)) = B.entries
    y, eta = float(omega[0]), float(omega[1])
    s = math.sqrt(h)
    half = 10.0 * s
    lo = min(0.0, y) - half
    hi = max(0.0, y) + half

    def g(x):
        return (math.pi * h) ** (-0.25) * np.exp(-x * x / (2 * h))

    prev = None
    npts = 800
    while True:
        x = np.linspace(lo, hi, npts)
        yy = np.linspace(-half, half, npts)
        # M_B G_h on the x grid, inner integral over yy
        kernel = np.exp(1j * (d * x[:, None] ** 2
                              - 2 * x[:, None] * yy[None, :]
                              + a * yy[None, :] ** 2) / (2 * h * b))
        MG = (np.exp(-1j * np.pi / 4) / math.sqrt(2 * np.pi * h * b)
              * np.trapezoid(kernel * g(yy)[None, :], yy, axis=1))
        UG = np.exp(1j / h * (eta * x - y * eta / 2)) * g(x - y)
        val = complex(np.trapezoid(UG * np.conj(MG), x))
        if prev is not None and abs(val - prev) < max(rtol * abs(val), 1e-12):
            return val
        prev = val
        npts *= 2
        if npts > 60000:
            raise RuntimeError("overlap quadrature failed to converge")


def lattice_overlap_sum(B, q, c, h):
    """
    sum over l in Z^2 of |<M_B^q G_h, U_{l+c} G_h>| via the closed form,
    truncated when a whole ring contributes below 1e-16 of the running
    total.  Returns (total, l0_term, rest).  Requires q >= 0.
    """
    B = _check_overlap_matrix(B)
    if q < 0:
        raise ValueError("lattice_overlap_sum supports q >= 0 only")
    if q == 0:
        Aq = np.eye(2)
        Aq_inv = np.eye(2)
        tr = 2.0
    else:
        Bq = B.power(q)
        Aq_inv = np.array(Bq.inverse().entries, dtype=float)
        tr = float(Bq.trace())
    amp = math.sqrt(2.0 / tr)
    cvec = np.asarray(c, dtype=float)

    def term(l1, l2):
        w = cvec + np.array([l1, l2], dtype=float)
        quad = float(w @ Aq_inv @ w)
        return amp * math.exp(-quad / (2 * h * tr))

    total = term(0, 0)
    l0 = total
    ring = 1
    while True:
        contrib = 0.0
        for l1 in range(-ring, ring + 1):
            for l2 in range(-ring, ring + 1):
                if max(abs(l1), abs(l2)) == ring:
                    contrib += term(l1, l2)
        total += contrib
        if contrib < 1e-16 * total or ring > 64:
            return total, l0, total - l0
        ring += 1


@dataclass(frozen=True)
class ScarConfig:
    B: SymplecticMatrix
    k: int
    N: int
    P: int
    phi: float
    lam: float


def make_scar_config(B, k):
    """Validates admissibility and measures the period phase."""
    if not isinstance(B, SymplecticMatrix):
        B = SymplecticMatrix(B)
    ((a, b), (c, d)) = B.entries
    if b != c or min(a, b, c, d) <= 0 or a + d <= 2:
        raise ValueError("scar construction requires a hyperbolic, "
                         "symmetric, positive-entry matrix")
    nk = admissible_N(B, k)
    if not nk.admissible:
        raise ValueError("index k = %d is not admissible for trace %d"
                         % (k, B.trace()))
    if not nk.even:
        raise ValueError("N_k must be even")
    N = nk.value
    P = quantum_period(B, N)
    space = StateSpace(1, N)
    M = metaplectic_sl2(space, B)
    G = hilbert.project_gaussian(space)
    pp = period_phase(M, P, probes=[G.coeffs])
    return ScarConfig(B=B, k=k, N=N, P=P, phi=pp.phi,
                      lam=leading_eigenvalue(B))


class ScarEnsemble:
    """Factored representation of u = P^{-1/2} sum_t v_t (x) w_t."""

    def __init__(self, config):
        self.config = config
        N, P, phi = config.N, config.P, config.phi
        self.space = StateSpace(1, N)
        M = metaplectic_sl2(self.space, config.B)
        g = np.empty((P, N), dtype=np.complex128)
        g[0] = hilbert.project_gaussian(self.space).coeffs
        for s in range(1, P):
            g[s] = M.apply_array(g[s - 1])
        # V[i] = v_{i - P/2} for i = 0..P-1; negative times use
        # M^t = e^{-i phi} M^{t+P}.
        V = np.empty_like(g)
        for i in range(P):
            t = i - P // 2
            if t >= 0:
                V[i] = np.exp(-1j * phi * t / P) * g[t]
            else:
                V[i] = np.exp(-1j * phi * t / P - 1j * phi) * g[t + P]
        self.V = V
        # w_{i - P/2} = v at index (i + P/2) mod P
        self.wperm = (np.arange(P) + P // 2) % P
        self._dmats = {}

    @property
    def P(self):
        return self.config.P

    @property
    def N(self):
        return self.config.N

    def materialize(self):
        """Dense N^2 tensor state; only for small N."""
        if self.N ** 2 > 16_000_000:
            raise ValueError("refusing to materialize an N^2 vector this large")
        u = np.zeros(self.N * self.N, dtype=np.complex128)
        W = self.V[self.wperm]
        for t in range(self.P):
            u += np.outer(self.V[t], W[t]).ravel()
        space2 = StateSpace(2, self.N)
        return QuantumState(space2, u / math.sqrt(self.P))

    def _dmat(self, j):
        """D[t, s] = <U_{j/N} v_t, v_s> for a 2-vector lattice j."""
        j = (int(j[0]), int(j[1]))
        if j not in self._dmats:
            U = LatticeTranslation(self.space, j)
            UV = np.stack([U.apply_array(v) for v in self.V])
            self._dmats[j] = UV @ self.V.conj().T
        return self._dmats[j]

    def matrix_element(self, j, k):
        """<(U_{j/N} (x) U_{k/N}) u, u> without forming the N^2 tensor."""
        Dj = self._dmat(j)
        Dk = self._dmat(k)
        Dkw = Dk[self.wperm][:, self.wperm]
        return complex(np.sum(Dj * Dkw) / self.P)

    def norm_squared(self):
        return self.matrix_element((0, 0), (0, 0)).real

    def eigen_residual(self, propagator):
        """
        ||T u - e^{2 i phi / P} u|| / ||u|| for a tensor-space propagator
        T, evaluated on the materialized state.
        """
        u = self.materialize()
        Tu = propagator.apply_array(u.coeffs)
        ev = np.exp(2j * self.config.phi / self.P)
        return float(np.linalg.norm(Tu - ev * u.coeffs)
                     / np.linalg.norm(u.coeffs))

    def partial_norm_squared(self, window):
        """
        ||u_I||^2 for I the contiguous index block of the given length
        starting at t = -P/2 (u_I = P^{-1/2} sum_{t in I} v_t (x) w_t).
        """
        idx = np.arange(window)
        D0 = self._dmat((0, 0))
        D0w = D0[self.wperm][:, self.wperm]
        block = D0[np.ix_(idx, idx)] * D0w[np.ix_(idx, idx)]
        return float(np.sum(block).real / self.P)


def build_scar(config):
    return ScarEnsemble(config)


def measure_target(j, k):
    """The four-case semiclassical limit table."""
    jz = j[0] == 0 and j[1] == 0
    kz = k[0] == 0 and k[1] == 0
    if jz and kz:
        return 1.0
    if jz or kz:
        return 0.5
    return 0.0


def semiclassical_scan(scar, window):
    """
    Rows (j1, j2, k1, k2, ratio, target, error) over all lattice pairs
    with |j|_inf, |k|_inf <= window; ratio = matrix_element / ||u||^2.
    """
    norm2 = scar.norm_squared()
    rng = range(-window, window + 1)
    lattice = [(j1, j2) for j1 in rng for j2 in rng]
    rows = []
    for j in lattice:
        for k in lattice:
            ratio = scar.matrix_element(j, k) / norm2
            target = measure_target(j, k)
            rows.append((j[0], j[1], k[0], k[1], ratio, target,
                         abs(ratio - target)))
    return rows
