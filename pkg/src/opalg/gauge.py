"""Gauge-action machinery for basis-graded operators.

For an operator S built from powers of a graded generator T, conjugation by
the diagonal phase unitary D_lam = diag(lam^0, ..., lam^(N-1)) multiplies the
k-th sub-diagonal band by lam^k.  Averaging those conjugates against lam^(-k)
over the circle isolates the coefficient of T^k; the arithmetic-mean weighted
partial sums reconstruct S.  The module also provides two computable
certificates that an algebra generated by a single operator cannot carry an
isometric circle action sending T to lam*T: a linear dependence among nonzero
powers, and a norm asymmetry under the phase scan.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .numkit import CircleGrid, as_array, jacobi_svd, operator_norm

# Unit-circle membership tolerance for phases.
_CIRCLE_TOL = 1e-14


@dataclass(frozen=True)
class FourierSeries:
    """Map k -> coefficient of T^k, with a zero-threshold for index queries."""

    coefficients: dict
    truncation_dim: int
    threshold: float

    def coefficient(self, k: int) -> complex:
        return self.coefficients.get(k, 0.0 + 0.0j)

    def nonzero_indices(self):
        return sorted(k for k, c in self.coefficients.items() if abs(c) > self.threshold)

    def lowest_index(self):
        idx = self.nonzero_indices()
        return idx[0] if idx else None


@dataclass(frozen=True)
class GaugeWitness:
    """Evidence that no isometric circle action can send T to lam*T.

    kind == "linear_dependence": coefficients a_1..a_m with
        ||a_1 T + ... + a_m T^m|| tiny while ||T^m|| is not.
    kind == "norm_asymmetry": a phase where the scanned norm ratio differs
        from 1 beyond the declared margin.
    """

    kind: str
    coefficients: np.ndarray | None = None
    top_index: int | None = None
    dependence_norm: float = 0.0
    top_power_norm: float = 0.0
    phase: complex | None = None
    ratio: float = 1.0
    base_norm: float = 0.0
    margin: float = 0.0


def default_threshold(a) -> float:
    """Coefficient threshold: 1e-10 times the scale of S (Frobenius norm)."""
    return 1e-10 * float(np.linalg.norm(as_array(a)))


def gauge_conjugate(a, lam: complex) -> np.ndarray:
    """Conjugate by diag(lam^0, ..., lam^(N-1)): entry (i,j) -> lam^(i-j) * a[i,j].

    For a weighted-shift truncation T this equals lam * T exactly.
    """
    a = as_array(a)
    lam = complex(lam)
    if abs(abs(lam) - 1.0) > _CIRCLE_TOL:
        raise ValueError(f"|lambda| = {abs(lam)} is off the unit circle")
    d = lam ** np.arange(a.shape[0])
    return (d[:, None] * a) * d.conj()[None, :]


def fourier_coefficients(a, grid: CircleGrid, powers, threshold: float | None = None) -> FourierSeries:
    """Extract the coefficients of T^1..T^d from S by circle quadrature.

    Computes (1/M) sum_m gauge_conjugate(S, lam_m) * lam_m^(-k) -- which equals
    coeff(k) * T^k whenever M >= 2N -- then divides on the largest-magnitude
    entry of the supplied T^k.
    """
    a = as_array(a)
    n = a.shape[0]
    m = grid.node_count
    if m < 2 * n:
        raise ValueError(f"grid must have at least 2N = {2 * n} nodes, got {m}")
    nodes = grid.nodes
    conjugates = np.stack([gauge_conjugate(a, lam) for lam in nodes])
    ks = np.arange(1, len(powers) + 1)
    # all quadratures at once: weights[k, m] = lam_m^(-k)
    weights = nodes[None, :] ** (-ks[:, None])
    integrals = np.tensordot(weights, conjugates, axes=(1, 0)) / m
    tau = default_threshold(a) if threshold is None else float(threshold)
    coeffs = {}
    for k, tk in zip(ks, powers):
        tk = as_array(tk)
        flat = np.abs(tk).ravel()
        idx = int(np.argmax(flat))
        if flat[idx] == 0.0:
            raise ValueError(f"T^{k} vanishes at truncation dim {n}; cannot divide it out")
        coeffs[int(k)] = complex(integrals[k - 1].ravel()[idx] / tk.ravel()[idx])
    return FourierSeries(coeffs, n, tau)


def fejer_sum(series: FourierSeries, n: int, powers) -> np.ndarray:
    """Weighted partial sum sum_{j=1}^{n} ((n-j)/n) * coeff(j) * T^j.

    The weights are the arithmetic-mean (Cesaro) weights (n-j)/n; note the
    j = n term carries weight zero.
    """
    if n < 1:
        raise ValueError("n must be positive")
    if len(powers) < n:
        raise ValueError(f"need powers T^1..T^{n}, got {len(powers)}")
    mats = [as_array(p) for p in powers[:n]]
    out = np.zeros_like(mats[0], dtype=complex)
    for j in range(1, n + 1):
        c = series.coefficient(j)
        if c == 0:
            continue
        out += ((n - j) / n) * c * mats[j - 1]
    return out


def certify_no_gauge_linear_dependence(powers, rel_tol: float = 1e-10,
                                       norm_floor: float = 1e-10) -> GaugeWitness | None:
    """Search T^1..T^n for a minimal linear dependence with nonzero top power.

    Vectorizes the powers, scans prefixes for numerical rank deficiency
    (smallest singular value below rel_tol times the largest, decided by the
    Jacobi oracle), and -- if the top power of the minimal dependence is
    itself nonzero -- returns the dependence as a witness.  A dependence whose
    top power already vanishes proves nothing and yields None.
    """
    if len(powers) < 2:
        raise ValueError("need at least the powers T^1, T^2")
    vecs = [as_array(p).ravel() for p in powers]
    for m in range(2, len(powers) + 1):
        stacked = np.column_stack(vecs[:m])
        sigmas, v = jacobi_svd(stacked)
        if sigmas[0] == 0.0 or sigmas[-1] >= rel_tol * sigmas[0]:
            continue
        top_norm = operator_norm(powers[m - 1])
        if top_norm <= norm_floor:
            return None
        coeffs = v[:, -1]
        combo = sum(c * as_array(p) for c, p in zip(coeffs, powers[:m]))
        dep_norm = operator_norm(combo)
        return GaugeWitness(
            kind="linear_dependence",
            coefficients=coeffs,
            top_index=m,
            dependence_norm=dep_norm,
            top_power_norm=top_norm,
        )
    return None


def certify_no_gauge_norm_scan(coeffs, powers, grid: CircleGrid, margin: float,
                               norm_tol: float = 1e-14) -> GaugeWitness | None:
    """Scan r(lam) = ||sum_j lam^j a_j T^j|| over the grid.

    An isometric circle action sending T to lam*T would force r to be
    constant; any ratio r(lam)/r(1) off 1 beyond the margin is a witness
    against it.  Returns the maximizing phase, or None if the scan is flat.
    """
    coeffs = np.asarray(coeffs, dtype=complex)
    if coeffs.ndim != 1 or len(coeffs) != len(powers):
        raise ValueError("need one coefficient per power")
    if not np.any(coeffs != 0):
        raise ValueError("all coefficients vanish")
    mats = [as_array(p) for p in powers]
    n = mats[0].shape[0]
    tol = max(norm_tol, 2.0 * np.finfo(float).eps * n)
    js = np.arange(1, len(coeffs) + 1)
    norms = []
    for lam in grid.nodes:
        s = sum((lam**j * c) * t for j, c, t in zip(js, coeffs, mats))
        norms.append(operator_norm(s, tol=tol))
    norms = np.asarray(norms)
    base = norms[0]  # node 0 is lam = 1
    if base == 0.0:
        raise ValueError("reference norm at lambda = 1 vanishes")
    ratios = norms / base
    idx = int(np.argmax(np.abs(ratios - 1.0)))
    if abs(ratios[idx] - 1.0) <= margin:
        return None
    return GaugeWitness(
        kind="norm_asymmetry",
        phase=complex(grid.nodes[idx]),
        ratio=float(ratios[idx]),
        base_norm=float(base),
        margin=float(margin),
    )
