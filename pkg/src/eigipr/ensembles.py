r"""Samplers for rotation-invariant (and related) random matrix ensembles.

================= ================================================= ==========
kind              construction                                      entries
================= ================================================= ==========
elliptic_real     ``(sqrt(1+tau) H + sqrt(1-tau) A) / sqrt(2N)``    real
ginibre_real      iid ``N(0, 1/N)``                                 real
ginibre_complex   iid complex ``N(0, 1/N)``                         complex
induced_ginibre   ``U sqrt(X X^T)``, ``X`` of shape ``N x (N+nu)``  real
orthogonal_sum    sum of ``d`` independent Haar orthogonals         real
permutation_sum   sum of ``d`` independent permutation matrices     0/1 sums
================= ================================================= ==========

``H`` is symmetric Gaussian (off-diagonal variance 1, diagonal variance 2)
and ``A`` antisymmetric Gaussian (off-diagonal variance 1), independent, so
the elliptic family interpolates between the real Ginibre law (``tau = 0``)
and the symmetric GOE (``tau = 1``).  Every sampler is a pure function of
``(parameters, rng)``: the same generator state yields bitwise-identical
matrices.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "KINDS",
    "EnsembleSpec",
    "ewens_permutation",
    "normalize_spectrum",
    "sample",
    "sample_elliptic",
    "sample_ginibre_complex",
    "sample_ginibre_real",
    "sample_haar_orthogonal",
    "sample_induced_ginibre",
    "sample_orthogonal_sum",
    "sample_permutation_sum",
]

KINDS = (
    "elliptic_real",
    "ginibre_real",
    "ginibre_complex",
    "induced_ginibre",
    "orthogonal_sum",
    "permutation_sum",
)

NORMALIZATIONS = ("none", "bulk", "empirical")


@dataclass(frozen=True)
class EnsembleSpec:
    """Which ensemble to sample and with which parameters.

    ``tau`` applies to the elliptic kind, ``nu`` to the induced kind, ``d``,
    ``perm_mode`` and ``theta`` to the sum kinds; ``normalization`` selects
    how `normalize_spectrum` rescales eigenvalues downstream.
    """

    kind: str
    N: int
    tau: float = 0.0
    nu: int = 0
    d: int = 1
    perm_mode: str = "uniform"
    theta: float = 1.0
    normalization: str = "none"

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown ensemble kind {self.kind!r}")
        if self.N < 2:
            raise ValueError(f"matrix dimension must be >= 2, got {self.N}")
        if not 0.0 <= self.tau <= 1.0:
            raise ValueError(f"tau must be in [0, 1], got {self.tau}")
        if self.nu < 0:
            raise ValueError(f"charge parameter nu must be >= 0, got {self.nu}")
        if self.d < 1:
            raise ValueError(f"summand count d must be >= 1, got {self.d}")
        if self.perm_mode not in ("uniform", "ewens"):
            raise ValueError(f"perm_mode must be 'uniform' or 'ewens', got {self.perm_mode!r}")
        if self.theta <= 0.0:
            raise ValueError(f"Ewens parameter theta must be > 0, got {self.theta}")
        if self.normalization not in NORMALIZATIONS:
            raise ValueError(f"normalization must be one of {NORMALIZATIONS}")


def sample_elliptic(n, tau, rng):
    """Real elliptic Gaussian matrix ``(sqrt(1+tau) H + sqrt(1-tau) A) / sqrt(2N)``.

    Parameters
    ----------
    n : int
        Dimension, ``n >= 2``.
    tau : float
        Symmetry parameter in ``[0, 1]``; 0 is real Ginibre, 1 is GOE.
    rng : numpy.random.Generator
    """
    if n < 2:
        raise ValueError(f"matrix dimension must be >= 2, got {n}")
    if not 0.0 <= tau <= 1.0:
        raise ValueError(f"tau must be in [0, 1], got {tau}")
    m1 = rng.standard_normal((n, n))
    m2 = rng.standard_normal((n, n))
    h = (m1 + m1.T) / math.sqrt(2.0)
    a = (m2 - m2.T) / math.sqrt(2.0)
    return (math.sqrt(1.0 + tau) * h + math.sqrt(1.0 - tau) * a) / math.sqrt(2.0 * n)


def sample_ginibre_real(n, rng):
    """Real Gaussian matrix with iid ``N(0, 1/N)`` entries."""
    if n < 2:
        raise ValueError(f"matrix dimension must be >= 2, got {n}")
    return rng.standard_normal((n, n)) / math.sqrt(n)


def sample_ginibre_complex(n, rng):
    """Complex Gaussian matrix with iid symmetric ``N_C(0, 1/N)`` entries."""
    if n < 2:
        raise ValueError(f"matrix dimension must be >= 2, got {n}")
    z = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return z / math.sqrt(2.0 * n)


def sample_haar_orthogonal(n, rng, size=None):
    """Haar-distributed orthogonal matrix via QR of a Gaussian matrix.

    The QR factorization is made unique (hence unbiased) by flipping signs so
    the triangular factor has positive diagonal.

    Parameters
    ----------
    n : int
        Dimension, ``n >= 1``.
    rng : numpy.random.Generator
    size : int, optional
        When given, return a stack of ``size`` independent matrices with
        shape ``(size, n, n)``.
    """
    if n < 1:
        raise ValueError(f"matrix dimension must be >= 1, got {n}")
    shape = (n, n) if size is None else (int(size), n, n)
    q, r = np.linalg.qr(rng.standard_normal(shape))
    d = np.sign(np.diagonal(r, axis1=-2, axis2=-1))
    d[d == 0.0] = 1.0
    return q * d[..., None, :]


def sample_induced_ginibre(n, nu, rng):
    """Induced real Gaussian matrix ``U sqrt(X X^T)`` with charge ``nu >= 0``.

    ``X`` is ``n x (n + nu)`` with iid standard Gaussian entries (drawn
    first), ``U`` an independent Haar orthogonal (drawn second); the square
    root is taken by symmetric eigendecomposition.
    """
    if n < 2:
        raise ValueError(f"matrix dimension must be >= 2, got {n}")
    nu = int(nu)
    if nu < 0:
        raise ValueError(f"charge parameter nu must be >= 0, got {nu}")
    x = rng.standard_normal((n, n + nu))
    w, v = np.linalg.eigh(x @ x.T)
    root = (v * np.sqrt(np.maximum(w, 0.0))) @ v.T
    return sample_haar_orthogonal(n, rng) @ root


def sample_orthogonal_sum(n, d, rng):
    """Sum of ``d`` independent Haar orthogonal matrices."""
    if d < 1:
        raise ValueError(f"summand count d must be >= 1, got {d}")
    return sample_haar_orthogonal(n, rng, size=d).sum(axis=0)


def ewens_permutation(n, theta, rng):
    """Random permutation of ``{0, ..., n-1}`` with cycle-count weight ``theta``.

    Cycle lengths are generated by the Chinese-restaurant process (a new
    cycle opens with probability ``theta / (theta + i)`` at step ``i``), and
    the cycles are then filled with uniformly shuffled labels.  ``theta = 1``
    is the uniform law.
    """
    n = int(n)
    if theta <= 0.0:
        raise ValueError(f"Ewens parameter theta must be > 0, got {theta}")
    table = np.empty(n, dtype=np.int64)
    n_tables = 0
    for i in range(n):
        if rng.random() * (theta + i) < theta:
            table[i] = n_tables
            n_tables += 1
        else:
            table[i] = table[rng.integers(i)]
    sizes = np.bincount(table, minlength=n_tables)
    labels = rng.permutation(n)
    perm = np.empty(n, dtype=np.int64)
    pos = 0
    for length in sizes:
        cyc = labels[pos : pos + length]
        perm[cyc] = np.roll(cyc, -1)
        pos += length
    return perm


def sample_permutation_sum(n, d, rng, mode="uniform", theta=1.0):
    """Sum of ``d`` independent permutation matrices.

    ``mode='uniform'`` draws uniform permutations (unbiased shuffle);
    ``mode='ewens'`` draws from the cycle-weighted law with parameter
    ``theta``.  Every row and column of the result sums to ``d``.
    """
    if d < 1:
        raise ValueError(f"summand count d must be >= 1, got {d}")
    if mode not in ("uniform", "ewens"):
        raise ValueError(f"mode must be 'uniform' or 'ewens', got {mode!r}")
    out = np.zeros((n, n))
    rows = np.arange(n)
    for _ in range(d):
        perm = rng.permutation(n) if mode == "uniform" else ewens_permutation(n, theta, rng)
        out[rows, perm] += 1.0
    return out


def sample(spec, rng):
    """Draw one matrix according to an `EnsembleSpec`."""
    if spec.kind == "elliptic_real":
        return sample_elliptic(spec.N, spec.tau, rng)
    if spec.kind == "ginibre_real":
        return sample_ginibre_real(spec.N, rng)
    if spec.kind == "ginibre_complex":
        return sample_ginibre_complex(spec.N, rng)
    if spec.kind == "induced_ginibre":
        return sample_induced_ginibre(spec.N, spec.nu, rng)
    if spec.kind == "orthogonal_sum":
        return sample_orthogonal_sum(spec.N, spec.d, rng)
    if spec.kind == "permutation_sum":
        return sample_permutation_sum(spec.N, spec.d, rng, mode=spec.perm_mode, theta=spec.theta)
    raise ValueError(f"unknown ensemble kind {spec.kind!r}")


def normalize_spectrum(eigs, mode, kind=None, d=None):
    """Rescale a batch of eigenvalues for display in the unit disk.

    ``mode='none'`` returns the input unchanged.  ``mode='bulk'`` divides by
    a fixed constant: ``sqrt(d - 1)`` for permutation sums (``d >= 2``) and
    ``sqrt(d)`` for orthogonal sums; these constants are display conventions,
    not asymptotic claims.  ``mode='empirical'`` divides by the 0.999
    quantile of ``|lam|`` pooled over the whole batch.
    """
    eigs = np.asarray(eigs)
    if eigs.size == 0:
        raise ValueError("cannot normalize an empty spectrum")
    if mode == "none":
        return eigs
    if mode == "empirical":
        return eigs / np.quantile(np.abs(eigs), 0.999)
    if mode == "bulk":
        if kind == "permutation_sum":
            if d is None or d < 2:
                raise ValueError("bulk normalization of a permutation sum needs d >= 2")
            return eigs / math.sqrt(d - 1)
        if kind == "orthogonal_sum":
            if d is None or d < 1:
                raise ValueError("bulk normalization of an orthogonal sum needs d >= 1")
            return eigs / math.sqrt(d)
        raise ValueError(
            "bulk normalization is defined for the sum ensembles only; "
            "use mode='empirical' for other kinds"
        )
    raise ValueError(f"mode must be one of {NORMALIZATIONS}, got {mode!r}")
