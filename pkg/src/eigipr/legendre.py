r"""Legendre polynomials and the monotone map from scale parameter to IPR level.

For integer order ``q >= 2`` the map ``g(q, x) = q! * x**(-q) * L_q(x)`` is
strictly increasing on ``[1, oo)`` and maps it onto ``[q!, (2q-1)!!)``:
``g(q, 1) = q!`` and ``g -> (2q-1)!!`` as ``x -> oo`` because the leading
coefficient of ``L_q`` is ``binom(2q, q) / 2**q``.  `g_inverse` inverts the
map numerically and `phi` is its derivative.
"""

from __future__ import annotations

import numpy as np

from .core import double_factorial_odd, factorial

__all__ = ["MAX_ORDER", "g", "g_inverse", "legendre_eval", "phi"]

# Largest order for which q! and the recurrence coefficients stay well inside
# exact double-precision range.
MAX_ORDER = 30

# Bracket-expansion ceiling for g_inverse: beyond this the target is closer
# to (2q-1)!! than double precision can resolve.
_X_SEARCH_CAP = 1e8


def legendre_eval(q, x):
    """Legendre polynomial ``L_q(x)`` via the three-term recurrence.

    Parameters
    ----------
    q : int
        Order, ``q >= 0``.
    x : float or ndarray
        Evaluation point(s); any real value.

    Returns
    -------
    float or ndarray
        ``L_q(x)``, satisfying the generating-function identity
        ``sum_q L_q(x) z**q = (1 - 2 x z + z**2)**(-1/2)``.
    """
    q = int(q)
    if q < 0:
        raise ValueError(f"Legendre order must be >= 0, got {q}")
    scalar = np.ndim(x) == 0
    x = np.asarray(x, dtype=float)
    prev = np.ones_like(x)
    if q == 0:
        return float(prev) if scalar else prev
    cur = x.copy()
    for n in range(1, q):
        prev, cur = cur, ((2 * n + 1) * x * cur - n * prev) / (n + 1)
    return float(cur) if scalar else cur


def _check_order(q):
    q = int(q)
    if not 2 <= q <= MAX_ORDER:
        raise ValueError(f"order must be in [2, {MAX_ORDER}], got {q}")
    return q


def _scaled_pair(q, x):
    # M_n(x) = L_n(x) / x**n, carried through the same three-term recurrence:
    # (n+1) M_{n+1} = (2n+1) M_n - (n / x**2) M_{n-1}.  Working on M_n keeps
    # every intermediate O(1) for arbitrarily large x.  Accepts floats or
    # arrays; plain-float input never touches numpy.
    inv2 = 1.0 / (x * x)
    prev = cur = inv2**0  # 1 with the shape of x
    for n in range(1, q):
        prev, cur = cur, ((2 * n + 1) * cur - n * inv2 * prev) / (n + 1)
    return prev, cur


def _deficit(q, x):
    # W_n = (2n-1)!!/n! - M_n obeys (n+1) W_{n+1} = (2n+1) W_n + (n/x**2) M_{n-1}
    # with W_0 = W_1 = 0.  All terms are positive, so q! * W_q evaluates the
    # gap (2q-1)!! - g(q, x) to full relative precision even where g is flat.
    inv2 = 1.0 / (x * x)
    mprev = mcur = inv2**0
    w = 0.0 * inv2
    for n in range(1, q):
        mprev, mcur, w = (
            mcur,
            ((2 * n + 1) * mcur - n * inv2 * mprev) / (n + 1),
            ((2 * n + 1) * w + n * inv2 * mprev) / (n + 1),
        )
    return factorial(q) * w


def _g_scalar(q, x):
    if x < 2.0:
        return factorial(q) * _scaled_pair(q, x)[1]
    return double_factorial_odd(q) - _deficit(q, x)


def _phi_scalar(q, x):
    mprev, mq = _scaled_pair(q, x)
    return q * factorial(q) * (mprev - mq) / (x * (1.0 - x * x))


def g(q, x):
    """The increasing map ``x -> q! * x**(-q) * L_q(x)`` on ``x >= 1``.

    Returns values in ``[q!, (2q-1)!!)``; accepts scalar or ndarray ``x``.
    Away from 1 the value crowds the ceiling ``(2q-1)!!``, so there it is
    computed by subtracting the cancellation-free deficit, keeping the
    forward error at half an ulp.
    """
    q = _check_order(q)
    if np.ndim(x) == 0:
        x = float(x)
        if x < 1.0:
            raise ValueError("g is defined on x >= 1")
        return _g_scalar(q, x)
    x = np.asarray(x, dtype=float)
    if np.any(x < 1.0):
        raise ValueError("g is defined on x >= 1")
    _, mq = _scaled_pair(q, x)
    return np.where(x < 2.0, factorial(q) * mq, double_factorial_odd(q) - _deficit(q, x))


def phi(q, x):
    """Derivative of ``g(q, .)``: ``q*q!/(x**(q+1)(1-x**2)) * (x L_{q-1}(x) - L_q(x))``.

    Defined for ``x > 1``; the removable singularity at ``x = 1`` is left to
    the caller.
    """
    q = _check_order(q)
    if np.ndim(x) == 0:
        x = float(x)
        if x <= 1.0:
            raise ValueError("phi is defined on x > 1")
        return _phi_scalar(q, x)
    x = np.asarray(x, dtype=float)
    if np.any(x <= 1.0):
        raise ValueError("phi is defined on x > 1")
    mprev, mq = _scaled_pair(q, x)
    # x L_{q-1} - L_q = x**q (M_{q-1} - M_q)
    return q * factorial(q) * (mprev - mq) / (x * (1.0 - np.square(x)))


def g_inverse(q, ell):
    """The unique ``x >= 1`` with ``g(q, x) = ell``.

    Parameters
    ----------
    q : int
        Order in ``[2, MAX_ORDER]``.
    ell : float
        Target level, strictly inside ``(q!, (2q-1)!!)``.

    Returns
    -------
    float
        Root found by Newton iteration safeguarded with bisection, to
        relative accuracy near machine precision.  The root is located on
        the deficit ``(2q-1)!! - g(q, x)``, which is strictly decreasing to 0
        and whose target is an exact subtraction near the upper limit.
    """
    q = _check_order(q)
    ell = float(ell)
    lo_val = factorial(q)
    hi_val = double_factorial_odd(q)
    if not lo_val < ell < hi_val:
        raise ValueError(f"level must lie in ({lo_val}, {hi_val}), got {ell}")

    r = hi_val - ell
    lo, hi = 1.0, 2.0
    while _deficit(q, hi) > r:
        hi *= 2.0
        if hi > _X_SEARCH_CAP:
            raise ValueError(
                f"level {ell} is too close to the upper limit {hi_val}; "
                f"the preimage exceeds {_X_SEARCH_CAP:g}"
            )
    x = 0.5 * (lo + hi)
    for _ in range(200):
        fx = _deficit(q, x) - r
        if fx > 0.0:
            lo = x
        else:
            hi = x
        xn = None
        if x > 1.0:
            deriv = _phi_scalar(q, x)
            if deriv > 0.0 and np.isfinite(deriv):
                xn = x + fx / deriv
        if xn is None or not lo < xn < hi:
            xn = 0.5 * (lo + hi)
        if abs(xn - x) <= 4e-16 * xn:
            return xn
        x = xn
    return x
