"""Foundation numerics: structured complex matrices, operator 2-norm estimation
with an independent SVD oracle, quadrature on the unit circle, and bracketed
root finding.

Everything here is a pure function on immutable inputs; all randomness
(power-iteration restarts) is seeded by the restart index so results are
reproducible bit-for-bit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

DENSE = "dense"
LOWER_TRIANGULAR = "lower_triangular"
LOWER_TRIANGULAR_TOEPLITZ = "lower_triangular_toeplitz"

_STRUCTURES = (DENSE, LOWER_TRIANGULAR, LOWER_TRIANGULAR_TOEPLITZ)

_EPS = float(np.finfo(np.float64).eps)

# Guard for the dense Jacobi oracle; one-sided sweeps are O(N^3) per sweep.
SVD_ORACLE_MAX_DIM = 512

# Restart cap for power iteration.
POWER_ITERATION_CAP = 100_000


class ConvergenceError(RuntimeError):
    """An iterative kernel hit its iteration cap.

    Carries the last iterate value so callers can report how far the
    computation got.
    """

    def __init__(self, message: str, last_value: float):
        super().__init__(f"{message} (last iterate {last_value!r})")
        self.last_value = last_value


def as_array(a) -> np.ndarray:
    """Unwrap a ComplexMatrix (or anything array-like) to an ndarray."""
    return np.asarray(getattr(a, "entries", a))


@dataclass(frozen=True)
class ComplexMatrix:
    """A square matrix together with a structural claim.

    The claim is validated on construction: ``lower_triangular`` demands exact
    zeros above the main diagonal, ``lower_triangular_toeplitz`` additionally
    demands constant sub-diagonal bands.
    """

    entries: np.ndarray
    structure: str = DENSE

    def __post_init__(self):
        e = np.asarray(self.entries)
        if e.ndim != 2 or e.shape[0] != e.shape[1]:
            raise ValueError(f"expected a square matrix, got shape {e.shape}")
        if self.structure not in _STRUCTURES:
            raise ValueError(f"unknown structure tag {self.structure!r}")
        if self.structure in (LOWER_TRIANGULAR, LOWER_TRIANGULAR_TOEPLITZ):
            if np.any(np.triu(e, k=1) != 0):
                raise ValueError("entries above the diagonal are not exactly zero")
        if self.structure == LOWER_TRIANGULAR_TOEPLITZ:
            n = e.shape[0]
            first = e[:, 0]
            idx = np.arange(n)[:, None] - np.arange(n)[None, :]
            expect = np.where(idx >= 0, first[np.clip(idx, 0, n - 1)], 0)
            if np.any(e != expect):
                raise ValueError("sub-diagonal bands are not constant")
        object.__setattr__(self, "entries", e)

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    def __array__(self, dtype=None, copy=None):
        if dtype is None:
            return self.entries
        return self.entries.astype(dtype)


@dataclass(frozen=True)
class CircleGrid:
    """The M-th roots of unity, the quadrature nodes for circle integrals."""

    node_count: int

    def __post_init__(self):
        if self.node_count < 1:
            raise ValueError("node_count must be positive")

    @property
    def nodes(self) -> np.ndarray:
        m = self.node_count
        return np.exp(2j * np.pi * np.arange(m) / m)


@dataclass(frozen=True)
class RootSolve:
    """Result of a bracketed root solve."""

    lo: float
    hi: float
    tolerance: float
    root: float
    residual: float
    iterations: int


def _validate_finite(a: np.ndarray):
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix contains NaN or Inf entries")


def _power_iterate(matvec, rmatvec, n, complex_start, tol, restarts, max_iter, label):
    """Shared power-iteration core on A*A with seeded restarts.

    The iterates s_k = ||A v_k|| increase monotonically towards the norm; a
    run terminates once the relative iterate change stays below tol for three
    consecutive steps.  Every estimate is of the form ||Av|| for a unit v,
    hence a certified lower bound on the norm.
    """
    best = 0.0
    for restart in range(1, restarts + 1):
        rng = np.random.default_rng(restart)
        v = rng.standard_normal(n)
        if complex_start:
            v = v + 1j * rng.standard_normal(n)
        v = v / np.linalg.norm(v)
        sigma = 0.0
        settled = 0
        for _ in range(max_iter):
            w = matvec(v)
            s = float(np.linalg.norm(w))
            if s == 0.0:
                sigma = 0.0
                break
            z = rmatvec(w)
            nz = float(np.linalg.norm(z))
            if nz == 0.0:
                sigma = s
                break
            v = z / nz
            if abs(s - sigma) <= tol * s:
                settled += 1
            else:
                settled = 0
            sigma = s
            if settled >= 3:
                break
        else:
            raise ConvergenceError(
                f"{label} did not settle within {max_iter} iterations", sigma)
        best = max(best, sigma)
    return best


def operator_norm(a, tol: float | None = None, restarts: int = 3,
                  max_iter: int = POWER_ITERATION_CAP) -> float:
    """Largest singular value by power iteration on A*A.

    Runs `restarts` independent iterations seeded 1, 2, ..., restarts and
    returns the maximum estimate.  The default tolerance is 1e-13, raised to
    4*eps*N for large matrices.
    """
    a = as_array(a)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    _validate_finite(a)
    n = a.shape[0]
    if tol is None:
        tol = max(1e-13, 4.0 * _EPS * n)
    if tol < _EPS * n:
        raise ValueError(f"tol={tol} below machine resolution eps*N={_EPS * n}")
    if restarts < 1:
        raise ValueError("restarts must be positive")
    adj = a.conj().T.copy()
    return _power_iterate(
        lambda v: a @ v, lambda w: adj @ w, n, np.iscomplexobj(a),
        tol, restarts, max_iter, "power iteration")


def jacobi_svd(a, tol: float = 1e-14, max_sweeps: int = 60):
    """One-sided Jacobi SVD of a (possibly rectangular) matrix.

    Returns (singular values in decreasing order, right singular vectors as
    columns).  Column pairs are orthogonalised by unitary plane rotations; at
    convergence the singular values are the column norms.  This path shares no
    code with `operator_norm` and serves as its independent oracle.
    """
    a = np.array(as_array(a), dtype=complex)
    if a.ndim != 2:
        raise ValueError("expected a matrix")
    _validate_finite(a)
    m, n = a.shape
    # cost guard: a sweep costs ~ n^2 m / 2, capped at the square 512 budget
    if n > SVD_ORACLE_MAX_DIM or m * n * n > SVD_ORACLE_MAX_DIM**3:
        raise ValueError(
            f"shape {a.shape} exceeds the Jacobi oracle cost guard "
            f"({SVD_ORACLE_MAX_DIM} square equivalent)")
    v = np.eye(n, dtype=complex)
    if n == 1:
        return np.array([float(np.linalg.norm(a[:, 0]))]), v
    sq = np.real(np.einsum("ij,ij->j", a.conj(), a)).copy()
    for _ in range(max_sweeps):
        off = 0.0
        for p in range(n - 1):
            for q in range(p + 1, n):
                app, aqq = sq[p], sq[q]
                scale = math.sqrt(app * aqq)
                if scale == 0.0:
                    continue
                apq = complex(np.vdot(a[:, p], a[:, q]))
                g = abs(apq)
                if g <= tol * scale:
                    continue
                off = max(off, g / scale)
                phase = apq / g
                tau = (aqq - app) / (2.0 * g)
                if tau >= 0.0:
                    t = 1.0 / (tau + math.sqrt(1.0 + tau * tau))
                else:
                    t = -1.0 / (-tau + math.sqrt(1.0 + tau * tau))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c
                rot = np.array([[c, s], [-s * np.conj(phase), c * np.conj(phase)]])
                a[:, [p, q]] = a[:, [p, q]] @ rot
                v[:, [p, q]] = v[:, [p, q]] @ rot
                sq[p] = max(app - t * g, 0.0)
                sq[q] = max(aqq + t * g, 0.0)
        if off <= tol:
            break
    else:
        raise ConvergenceError(
            f"Jacobi sweeps did not converge within {max_sweeps} sweeps", math.sqrt(max(sq)))
    sigmas = np.linalg.norm(a, axis=0)
    order = np.argsort(sigmas)[::-1]
    return sigmas[order], v[:, order]


def svd_oracle(a) -> float:
    """Largest singular value via the dense Jacobi SVD (test/cross-check path)."""
    sigmas, _ = jacobi_svd(a)
    return float(sigmas[0])


def circle_integral(samples, k: int) -> np.ndarray:
    """(1/M) * sum_m value_m * lambda_m^(-k) over full-circle samples.

    Exact (up to rounding) whenever the lambda-dependence of the samples is a
    trigonometric polynomial of degree below M in each entry.
    """
    nodes = np.asarray([lam for lam, _ in samples], dtype=complex)
    values = [as_array(val) for _, val in samples]
    if not values:
        raise ValueError("no samples")
    shape = values[0].shape
    if any(v.shape != shape for v in values):
        raise ValueError("sample matrices have mismatched dimensions")
    if np.any(np.abs(np.abs(nodes) - 1.0) > 1e-12):
        raise ValueError("sample nodes are not on the unit circle")
    stack = np.stack(values).astype(complex)
    weights = nodes ** (-k)
    return np.tensordot(weights, stack, axes=(0, 0)) / len(nodes)


def find_root(f, bracket, tol: float) -> RootSolve:
    """Bisection on a sign-changing bracket.

    Bisects until the interval width is at most `tol`, then keeps bisecting
    (down to machine resolution of the bracket) while the residual still
    exceeds `tol`.  Reports the final midpoint and its residual.
    """
    lo, hi = float(bracket[0]), float(bracket[1])
    if not lo < hi:
        raise ValueError("bracket must satisfy lo < hi")
    resolution = _EPS * max(1.0, abs(lo), abs(hi))
    if tol < resolution:
        raise ValueError(f"tol={tol} below machine resolution {resolution}")
    flo = f(lo)
    fhi = f(hi)
    if flo == 0.0:
        return RootSolve(lo, hi, tol, lo, 0.0, 0)
    if fhi == 0.0:
        return RootSolve(lo, hi, tol, hi, 0.0, 0)
    if not (flo < 0.0 < fhi or fhi < 0.0 < flo):
        raise ValueError("f does not change sign over the bracket")
    orig_lo, orig_hi = lo, hi
    iterations = 0
    fmid = math.inf
    while True:
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        fmid = f(mid)
        iterations += 1
        if fmid == 0.0:
            return RootSolve(orig_lo, orig_hi, tol, mid, 0.0, iterations)
        if (fmid < 0.0) == (flo < 0.0):
            lo, flo = mid, fmid
        else:
            hi = mid
        if hi - lo <= tol and abs(fmid) <= tol:
            break
        if hi - lo <= 4.0 * resolution:
            break
    root = 0.5 * (lo + hi)
    residual = float(f(root))
    return RootSolve(orig_lo, orig_hi, tol, root, residual, iterations)


def toeplitz_operator_norm(first_column, tol: float = 1e-10, restarts: int = 2,
                           max_iter: int = POWER_ITERATION_CAP) -> float:
    """Largest singular value of the lower-triangular Toeplitz matrix with the
    given first column, without materialising it.

    Matrix-vector products are causal convolutions evaluated by FFT, so the
    cost per iteration is O(N log N); this is the norm kernel for huge
    discretizations.
    """
    col = np.asarray(first_column, dtype=complex)
    if col.ndim != 1 or col.size == 0:
        raise ValueError("first_column must be a nonempty vector")
    _validate_finite(col)
    n = col.size
    if tol < _EPS * n:
        raise ValueError(f"tol={tol} below machine resolution eps*N={_EPS * n}")
    length = 1
    while length < 2 * n:
        length *= 2
    chat = np.fft.fft(col, length)

    def matvec(v):
        return np.fft.ifft(chat * np.fft.fft(v, length))[:n]

    def rmatvec(v):
        return np.fft.ifft(np.conj(chat) * np.fft.fft(v, length))[:n]

    return _power_iterate(matvec, rmatvec, n, True, tol, restarts, max_iter,
                          "Toeplitz power iteration")
