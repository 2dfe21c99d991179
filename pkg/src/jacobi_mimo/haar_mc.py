"""Monte Carlo oracle: sample the channel directly from the Haar measure.

Draws m x m Haar unitaries, cuts the m_r x m_t corner block, and
averages log2 det(I + rho H^dag H) over samples.  This route knows
nothing about Jacobi polynomials, kernels, or quadrature, so agreement
with the analytic routes is a real cross-check rather than a tautology.

Reproducibility contract: sample i is generated from a Philox stream at
counter block i regardless of chunking, so estimates depend only on
(seed, n_samples), and a run with more samples extends a shorter one.
"""

import math
from dataclasses import dataclass

import numpy as np

from .capacity import LN2, ChannelConfig
from .jacobi_poly import cd_kernel_sum

__all__ = [
    "DensityCheck",
    "MonteCarloEstimate",
    "eigenvalue_density_check",
    "mc_capacity",
    "mc_capacity_grid",
    "sample_haar_unitary",
    "sample_rng",
]

_CHUNK = 2048
_DIAG_FLOOR = 1e-300
_MAX_SEED = 2**64


@dataclass(frozen=True)
class MonteCarloEstimate:
    mean: float
    std_error: float
    n_samples: int
    seed: int


@dataclass(frozen=True)
class DensityCheck:
    """Histogram of sampled eigenvalues against the model one-point density.

    empirical and expected both hold per-bin probability mass.
    max_sigma_deviation rescales the worst bin by its multinomial
    standard error sqrt(p(1-p)/N), which is the unit the agreement
    criterion is stated in.  normalization is the numerically integrated
    total model mass and should sit within quadrature error of 1.
    """

    bin_edges: np.ndarray
    empirical: np.ndarray
    expected: np.ndarray
    max_abs_deviation: float
    max_sigma_deviation: float
    n_eigenvalues: int
    normalization: float


def sample_rng(seed: int, index: int) -> np.random.Generator:
    """Generator for sample `index` of the stream identified by `seed`.

    Each sample owns a disjoint 2^128 counter block, so streams never
    collide and per-sample draws are independent of batch layout.
    """
    if not (0 <= seed < _MAX_SEED):
        raise ValueError(f"seed must lie in [0, 2**64), got {seed}")
    if index < 0:
        raise ValueError(f"sample index must be >= 0, got {index}")
    return np.random.Generator(np.random.Philox(key=seed, counter=index << 128))


def _ginibre(rng: np.random.Generator, m: int) -> np.ndarray:
    re = rng.standard_normal((m, m))
    im = rng.standard_normal((m, m))
    return (re + 1j * im) / math.sqrt(2.0)


def _haar_batch(m: int, rngs: list[np.random.Generator]) -> np.ndarray:
    """Stack of Haar unitaries, one per generator, shape (len(rngs), m, m)."""
    z = np.stack([_ginibre(rng, m) for rng in rngs])
    q, r_mat = np.linalg.qr(z)
    d = np.diagonal(r_mat, axis1=-2, axis2=-1).copy()
    bad = np.abs(d) < _DIAG_FLOOR
    if bad.any():
        # A zero R diagonal entry has probability zero but would leave the
        # phase correction undefined; redraw those samples from their own
        # streams so the rest of the batch is unaffected.
        for i in np.where(bad.any(axis=1))[0]:
            while True:
                qi, ri = np.linalg.qr(_ginibre(rngs[i], m))
                di = np.diagonal(ri).copy()
                if not (np.abs(di) < _DIAG_FLOOR).any():
                    q[i], d[i] = qi, di
                    break
    # Without this phase fix the QR convention biases the distribution;
    # multiplying column j by r_jj/|r_jj| restores exact Haar measure.
    q *= (d / np.abs(d))[:, None, :]
    return q


def sample_haar_unitary(m: int, rng: np.random.Generator) -> np.ndarray:
    """One m x m Haar-distributed unitary matrix."""
    if m < 1:
        raise ValueError(f"matrix size must be >= 1, got m={m}")
    return _haar_batch(m, [rng])[0]


def _gram_eigenvalues(u: np.ndarray, m_t: int, m_r: int) -> np.ndarray:
    """Eigenvalues of H^dag H for the m_r x m_t corner blocks of a stack.

    Works on the smaller of the two Gram matrices; the result has
    min(m_t, m_r) columns either way because the nonzero spectra agree.
    """
    h = u[:, :m_r, :m_t]
    if m_t <= m_r:
        g = np.einsum("sij,sik->sjk", h.conj(), h)
    else:
        g = np.einsum("sji,ski->sjk", h, h.conj())
    lam = np.linalg.eigvalsh(g)
    return np.clip(lam, 0.0, None)


def _eigenvalue_batches(config: ChannelConfig, n_samples: int, seed: int):
    for start in range(0, n_samples, _CHUNK):
        count = min(_CHUNK, n_samples - start)
        rngs = [sample_rng(seed, start + j) for j in range(count)]
        u = _haar_batch(config.m, rngs)
        yield _gram_eigenvalues(u, config.m_t, config.m_r)


def mc_capacity_grid(
    config: ChannelConfig,
    rhos: list[float],
    n_samples: int = 100_000,
    seed: int = 0,
) -> list[MonteCarloEstimate]:
    """Estimate capacity at several SNRs from one shared set of samples.

    Sharing the Haar draws across the grid is what makes SNR sweeps
    affordable; it also correlates the estimates across rho, which is
    harmless for per-point error bars.
    """
    if n_samples < 1:
        raise ValueError(f"need at least one sample, got n_samples={n_samples}")
    for rho in rhos:
        if not (rho >= 0.0):
            raise ValueError(f"linear SNR must be >= 0, got rho={rho}")
    values = np.empty((len(rhos), n_samples))
    filled = 0
    for lam in _eigenvalue_batches(config, n_samples, seed):
        count = lam.shape[0]
        for k, rho in enumerate(rhos):
            values[k, filled : filled + count] = (
                np.log1p(rho * lam).sum(axis=1) / LN2
            )
        filled += count
    out = []
    for k in range(len(rhos)):
        mean = float(values[k].mean())
        if n_samples > 1:
            se = float(values[k].std(ddof=1) / math.sqrt(n_samples))
        else:
            se = 0.0
        out.append(
            MonteCarloEstimate(
                mean=mean, std_error=se, n_samples=n_samples, seed=seed
            )
        )
    return out


def mc_capacity(
    config: ChannelConfig,
    rho: float,
    n_samples: int = 100_000,
    seed: int = 0,
) -> MonteCarloEstimate:
    return mc_capacity_grid(config, [rho], n_samples=n_samples, seed=seed)[0]


def eigenvalue_density_check(
    config: ChannelConfig,
    n_samples: int = 20_000,
    seed: int = 0,
    n_bins: int = 20,
) -> DensityCheck:
    """Compare sampled corner-block eigenvalues with the one-point density.

    The model density on [0, 1] is
        f(lam) = (2**(a+b+1) / r) * lam**a (1-lam)**b * K(1 - 2 lam)
    with K the diagonal kernel of the matching Jacobi parameters.
    Expected bin masses come from per-bin Gauss-Legendre integration of
    f, rescaled by the numerically computed total mass so the comparison
    is purely about shape.  Requires m_t + m_r <= m; reflected configs
    pin part of the spectrum at exactly 1 and need no histogram test.
    """
    params = config.jacobi_params()
    if n_bins < 1:
        raise ValueError(f"need at least one bin, got n_bins={n_bins}")
    edges = np.linspace(0.0, 1.0, n_bins + 1)
    counts = np.zeros(n_bins)
    total = 0
    support_tol = 1.0 + 1e-12
    for lam in _eigenvalue_batches(config, n_samples, seed):
        flat = lam.ravel()
        high = float(flat.max(initial=0.0))
        if high > support_tol:
            raise RuntimeError(
                f"sampled eigenvalue {high} outside [0, 1]; "
                "the unitary sampler is broken"
            )
        counts += np.histogram(np.clip(flat, 0.0, 1.0), bins=edges)[0]
        total += flat.size

    a, b, r = params.a, params.b, params.r
    scale = 2.0 ** (a + b + 1) / r
    gl_x, gl_w = np.polynomial.legendre.leggauss(48)
    expected = np.empty(n_bins)
    for i in range(n_bins):
        lo, hi = edges[i], edges[i + 1]
        mid, half = 0.5 * (hi + lo), 0.5 * (hi - lo)
        lam = mid + half * gl_x
        f = scale * lam**a * (1.0 - lam) ** b * cd_kernel_sum(params, 1.0 - 2.0 * lam)
        expected[i] = half * float(gl_w @ f)
    normalization = float(expected.sum())
    expected /= normalization
    empirical = counts / total
    deviation = np.abs(empirical - expected)
    sigma = np.sqrt(np.maximum(expected * (1.0 - expected), 1e-300) / total)
    return DensityCheck(
        bin_edges=edges,
        empirical=empirical,
        expected=expected,
        max_abs_deviation=float(deviation.max()),
        max_sigma_deviation=float((deviation / sigma).max()),
        n_eigenvalues=total,
        normalization=normalization,
    )
