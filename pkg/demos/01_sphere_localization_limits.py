#!/usr/bin/env python3
"""How localized is a random unit vector?

The inverse participation ratio IPR_q of a uniform unit vector converges, as
the dimension grows, to the 2q-th absolute moment of a standard Gaussian:
(2q-1)!! over the reals, q! over the complexes.  The rescaled kurtosis
(q = 2) therefore tends to 3 for real vectors and 2 for complex ones: real
directions are intrinsically more "spiky".
"""

import numpy as np

from eigipr import double_factorial_odd, factorial, ipr, uniform_sphere_sample

rng = np.random.default_rng(2024)
draws = 1000

print(f"{'field':>8} {'q':>3} {'N':>6} {'mean IPR_q':>12} {'limit':>8}")
for field, limit_fn in (("real", double_factorial_odd), ("complex", factorial)):
    for q in (2, 3, 4):
        for n in (64, 512, 4096):
            mean = np.mean([ipr(uniform_sphere_sample(n, field, rng), q) for _ in range(draws)])
            print(f"{field:>8} {q:>3} {n:>6} {mean:>12.4f} {limit_fn(q):>8}")
