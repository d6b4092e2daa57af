"""Inverse participation ratios and uniform-sphere reference sampling.

The inverse participation ratio of order ``q`` of a nonzero vector ``x`` with
``N`` entries is ``N**(q-1) * ||x||_{2q}^{2q} / ||x||_2^{2q}``.  It is 1 for
the flat vector ``(1, ..., 1)`` (pure delocalization) and ``N**(q-1)`` for a
coordinate vector (pure localization); ``q = 2`` gives the rescaled kurtosis.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "EigRecord",
    "double_factorial_odd",
    "factorial",
    "ipr",
    "uniform_sphere_sample",
]


@dataclass
class EigRecord:
    """One eigenvalue of one sampled matrix, with its eigenvector statistics.

    ``ipr`` maps each requested order ``q`` to the eigenvector's IPR value;
    ``residual`` is the relative eigenpair residual ``||G v - lam v||_2 /
    ||G||_F``.  ``is_real_eig`` implies ``im_lambda == 0.0`` exactly.
    """

    trial_id: int
    idx: int
    re_lambda: float
    im_lambda: float
    is_real_eig: bool
    ipr: dict[int, float] = field(default_factory=dict)
    residual: float = 0.0

    @property
    def lam(self) -> complex:
        return complex(self.re_lambda, self.im_lambda)


def ipr(x, q):
    """Inverse participation ratio of order `q`.

    Parameters
    ----------
    x : array_like
        Nonzero real or complex vector with finite entries.
    q : int
        Order, ``q >= 1``.  The ``q = 1`` functional is identically 1.

    Returns
    -------
    float
        ``N**(q-1) * sum(|x_i|**(2q)) / (sum(|x_i|**2))**q``, invariant under
        scaling, entry permutation and global phase; lies in
        ``[1, N**(q-1)]``.
    """
    q = int(q)
    if q < 1:
        raise ValueError(f"ipr order must be >= 1, got {q}")
    x = np.ravel(np.asarray(x))
    n = x.size
    if n == 0:
        raise ValueError("ipr of an empty vector")
    a = np.abs(x)
    amax = float(np.max(a)) if n else 0.0
    if not np.isfinite(amax):
        raise ValueError("ipr of a vector with non-finite entries")
    if amax == 0.0:
        raise ValueError("ipr of the zero vector")
    # Scale by the largest magnitude, then normalize, before raising to the
    # 2q-th power: extreme vectors neither overflow nor underflow.
    u = np.square(a / amax)
    u /= np.sum(u)
    return float(n) ** (q - 1) * float(np.sum(u**q))


def uniform_sphere_sample(n, field, rng):
    """Uniform random unit vector on the real or complex sphere.

    Parameters
    ----------
    n : int
        Dimension, ``n >= 1``.
    field : {'real', 'complex'}
        Scalar field of the sphere.
    rng : numpy.random.Generator

    Returns
    -------
    ndarray
        Unit 2-norm vector; an iid standard Gaussian vector over the given
        field, normalized.
    """
    n = int(n)
    if n < 1:
        raise ValueError(f"sphere dimension must be >= 1, got {n}")
    if field == "real":
        v = rng.standard_normal(n)
    elif field == "complex":
        v = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    else:
        raise ValueError(f"field must be 'real' or 'complex', got {field!r}")
    return v / np.linalg.norm(v)


def factorial(q):
    """Exact integer ``q!`` for ``q >= 0``."""
    q = int(q)
    if q < 0:
        raise ValueError(f"factorial of negative order {q}")
    return math.factorial(q)


def double_factorial_odd(q):
    """Exact integer ``(2q - 1)!! = 1 * 3 * ... * (2q - 1)``, with value 1 at ``q = 0``.

    This is the ``2q``-th moment of a standard real Gaussian and the
    real-sphere IPR limit of order ``q``.
    """
    q = int(q)
    if q < 0:
        raise ValueError(f"double factorial of negative order {q}")
    return math.prod(range(1, 2 * q, 2))
