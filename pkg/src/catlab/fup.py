"""
Uncertainty-principle numerics on discrete grids.

The semiclassical Fourier transform is modeled by the size-M unitary
DFT with h = 1/M; sets X in [0,1)^d live on the Z_M^d grid.  Porosity
is checked by a sampled quantifier sweep (sound for rejection), and the
norm-decay experiments fit log-log slopes across grid sizes.
"""

from dataclasses import dataclass
import math

import numpy as np
from scipy import ndimage


@dataclass(frozen=True)
class DiscreteSet:
    M: int
    dims: int
    cells: frozenset

    def __post_init__(self):
        cells = frozenset(tuple(int(v) for v in c) if self.dims > 1
                          else (int(c) if np.isscalar(c) else int(c[0]),)
                          for c in self.cells)
        for c in cells:
            if len(c) != self.dims or any(v < 0 or v >= self.M for v in c):
                raise ValueError("cells must lie in [0, M)^d")
        object.__setattr__(self, "cells", cells)

    def mask(self):
        m = np.zeros((self.M,) * self.dims, dtype=bool)
        for c in self.cells:
            m[c] = True
        return m

    def indices(self):
        """Sorted flat cell indices (d = 1)."""
        if self.dims != 1:
            raise ValueError("indices() is for d = 1 sets")
        return np.array(sorted(c[0] for c in self.cells), dtype=int)


def full_set(M, dims=1):
    if dims == 1:
        return DiscreteSet(M, 1, frozenset((j,) for j in range(M)))
    import itertools
    return DiscreteSet(M, dims,
                       frozenset(itertools.product(range(M), repeat=dims)))


def cantor_set(depth):
    """Mid-third Cantor iterate: M = 3^depth, cells with no digit 1."""
    M = 3 ** depth
    cells = []
    for j in range(M):
        v = j
        ok = True
        while v:
            if v % 3 == 1:
                ok = False
                break
            v //= 3
        if ok:
            cells.append((j,))
    return DiscreteSet(M, 1, frozenset(cells))


def product_set(X, Y):
    """Cartesian product of two d = 1 sets on the same grid."""
    if X.M != Y.M or X.dims != 1 or Y.dims != 1:
        raise ValueError("product_set needs d = 1 sets on one grid")
    cells = frozenset((a[0], b[0]) for a in X.cells for b in Y.cells)
    return DiscreteSet(X.M, 2, cells)


def neighborhood(X, delta):
    """Minkowski dilation by a Euclidean ball of radius delta."""
    if delta < 0:
        raise ValueError("delta must be nonnegative")
    r = math.ceil(delta * X.M)
    if r == 0 or not X.cells:
        return X
    grids = np.indices((2 * r + 1,) * X.dims) - r
    ball = (np.sum(grids.astype(float) ** 2, axis=0) <= r * r)
    dil = ndimage.binary_dilation(X.mask(), structure=ball)
    cells = [tuple(idx) for idx in np.argwhere(dil)]
    return DiscreteSet(X.M, X.dims, frozenset(cells))


def _distance_to_set(X):
    """Per-cell Euclidean distance (in cells) to the nearest X cell."""
    mask = X.mask()
    if not mask.any():
        return np.full(mask.shape, np.inf)
    return ndimage.distance_transform_edt(~mask)


def _line_points(M, center, direction, half_len):
    t = np.linspace(-half_len, half_len, max(3, int(2 * half_len) + 1))
    pts = np.round(center[None, :] + t[:, None] * direction[None, :]).astype(int)
    keep = np.all((pts >= 0) & (pts < M), axis=1)
    return pts[keep]


def porosity_check(X, nu, alpha0, alpha1, mode="balls"):
    """
    Sampled check of nu-porosity on scales R in {alpha0 * 2^i} up to
    alpha1.  Balls mode: every ball of radius R must contain a point x
    with B_{nu R}(x) disjoint from X.  Lines mode (d = 2): the same over
    segments of length 2R in a 16-direction grid.  Returns (True, None)
    or (False, counterexample); rejection is sound, acceptance holds at
    the sampled resolution.
    """
    if not (0 < nu < 1 and 0 < alpha0 <= alpha1 <= 1):
        raise ValueError("need 0 < nu < 1 and 0 < alpha0 <= alpha1 <= 1")
    if not X.cells:
        return True, None
    M, d = X.M, X.dims
    dist = _distance_to_set(X)
    scales = []
    R = alpha0
    while R <= alpha1 * (1 + 1e-12):
        scales.append(R)
        R *= 2
    if mode == "lines":
        if d != 2:
            raise ValueError("lines mode requires d = 2")
        angles = np.pi * np.arange(16) / 16
        dirs = np.stack([np.cos(angles), np.sin(angles)], axis=1)
    for R in scales:
        r = max(1, int(round(R * M)))
        need = nu * R * M
        step = max(1, r // 2)
        lo, hi = r, max(r + 1, M - r)
        centers = range(lo, hi, step) if hi > lo else [M // 2]
        if mode == "balls":
            if d == 1:
                for c in centers:
                    window = dist[max(0, c - r): c + r + 1]
                    if window.max() < need:
                        return False, {"R": R, "center": (c / M,)}
            else:
                grids = np.indices((2 * r + 1,) * d) - r
                ball = np.sum(grids.astype(float) ** 2, axis=0) <= r * r
                for c1 in centers:
                    for c2 in centers:
                        window = dist[c1 - r: c1 + r + 1, c2 - r: c2 + r + 1]
                        if window[ball[:window.shape[0], :window.shape[1]]
                                  ].max() < need:
                            return False, {"R": R, "center": (c1 / M, c2 / M)}
        elif mode == "lines":
            for c1 in centers:
                for c2 in centers:
                    center = np.array([c1, c2], dtype=float)
                    for direction in dirs:
                        pts = _line_points(M, center, direction, r)
                        if pts.size == 0:
                            continue
                        if dist[pts[:, 0], pts[:, 1]].max() < need:
                            return False, {"R": R,
                                           "segment_center": (c1 / M, c2 / M),
                                           "direction": tuple(direction)}
        else:
            raise ValueError("mode must be 'balls' or 'lines'")
    return True, None


def dft_matrix(M):
    j = np.arange(M)
    return np.exp(-2j * np.pi * np.outer(j, j) / M) / math.sqrt(M)


def fup_norm(X_minus, X_plus):
    """
    Largest singular value of the DFT submatrix with rows X- and
    columns X+ (the discrete model of 1_{X-} F_h 1_{X+}, h = 1/M).
    """
    if X_minus.M != X_plus.M:
        raise ValueError("sets must share a grid size")
    if not X_minus.cells or not X_plus.cells:
        return 0.0
    M = X_minus.M
    rows = X_minus.indices()
    cols = X_plus.indices()
    sub = np.exp(-2j * np.pi * np.outer(rows, cols) / M) / math.sqrt(M)
    return float(np.linalg.svd(sub, compute_uv=False)[0])


def smooth_bump(t):
    """C-infinity bump exp(-1/(1-(t/3)^2)) supported on |t| < 3."""
    t = np.asarray(t, dtype=float)
    out = np.zeros_like(t)
    inside = np.abs(t) < 3
    s = (t[inside] / 3) ** 2
    out[inside] = np.exp(-1.0 / (1.0 - s))
    return out


@dataclass(frozen=True)
class ScalingRun:
    kind: str
    sizes: tuple
    hs: tuple
    norms: tuple
    fitted_slope: float
    theory_slope: float


def _fit_slope(hs, norms):
    if len(hs) < 4:
        raise ValueError("regression needs at least 4 sizes")
    return float(np.polyfit(np.log(hs), np.log(norms), 1)[0])


def basic_uncertainty_norm(M, delta):
    """
    Norm of chi(x / h^delta) F^{-1} chi(xi / h^delta) F at h = 1/M,
    evaluated as the SVD of the support-restricted submatrix of
    diag(chi_x) F^dagger diag(chi_xi).
    """
    h = 1.0 / M
    x = np.fft.fftfreq(M)
    xi = 2 * np.pi * np.fft.fftfreq(M)
    cx = smooth_bump(x / h ** delta)
    cxi = smooth_bump(xi / h ** delta)
    rows = np.nonzero(cx)[0]
    cols = np.nonzero(cxi)[0]
    if rows.size == 0 or cols.size == 0:
        return 0.0
    sub = (cx[rows, None]
           * np.exp(2j * np.pi * np.outer(rows, cols) / M) / math.sqrt(M)
           * cxi[None, :][:, cols])
    return float(np.linalg.svd(sub, compute_uv=False)[0])


def scaling_experiment(kind, delta=None, sizes=None, depths=None, d=1):
    """
    kind="basic": norms of the bump operator across M in 2^8..2^14,
    fitted slope vs the theory slope d (2 delta - 1) / 2.
    kind="fup": Cantor-pair DFT submatrix norms across depths, fitted
    decay exponent beta (theory slope unknown; reported as nan).
    """
    if kind == "basic":
        if d != 1:
            raise ValueError("only d = 1 is implemented")
        if not 0.5 <= delta < 1:
            raise ValueError("delta must lie in [1/2, 1)")
        sizes = sizes or [2 ** e for e in range(8, 15)]
        hs = [1.0 / M for M in sizes]
        norms = [basic_uncertainty_norm(M, delta) for M in sizes]
        return ScalingRun(kind, tuple(sizes), tuple(hs), tuple(norms),
                          _fit_slope(hs, norms), d * (2 * delta - 1) / 2)
    if kind == "fup":
        depths = depths or list(range(4, 10))
        sizes = [3 ** r for r in depths]
        hs = [1.0 / M for M in sizes]
        norms = []
        for r in depths:
            X = cantor_set(r)
            norms.append(fup_norm(X, X))
        return ScalingRun(kind, tuple(sizes), tuple(hs), tuple(norms),
                          _fit_slope(hs, norms), float("nan"))
    raise ValueError("kind must be 'basic' or 'fup'")
