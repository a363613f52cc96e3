"""Spec generators shared by the test modules."""

import numpy as np

from detboot import DiscreteDistribution, MixtureSpec, from_sample


def random_real_spec(rng, n_max=6, m_max=5, n_min=2, m_min=1):
    """Mixed-sign mixture of real-valued components, some shared, some distinct."""
    m = int(rng.integers(m_min, m_max + 1))
    coeffs = rng.choice([-1.0, 1.0], size=m) * rng.uniform(0.3, 2.0, size=m)
    if rng.random() < 0.5:
        n = int(rng.integers(n_min, n_max + 1))
        shared = from_sample(rng.uniform(-5.0, 10.0, size=n))
        comps = [(a, shared) for a in coeffs]
    else:
        comps = []
        for a in coeffs:
            n = int(rng.integers(n_min, n_max + 1))
            comps.append((a, from_sample(rng.uniform(-5.0, 10.0, size=n))))
    return MixtureSpec(tuple(comps), float(rng.uniform(-3, 3)))


def integer_spec(rng, n, m):
    """Integer atoms and integer coefficients, so every outcome is an integer."""
    coeffs = rng.choice([-2, -1, 1, 2], size=m).astype(float)
    comps = []
    for a in coeffs:
        vals = rng.choice(np.arange(0, 12), size=n, replace=False).astype(float)
        comps.append((a, from_sample(vals)))
    return MixtureSpec(tuple(comps))


# criterion id -> (passed, detail); filled by test_acceptance, printed by conftest
ACCEPTANCE_RESULTS = {}


def record(criterion, passed, detail):
    ACCEPTANCE_RESULTS[criterion] = (bool(passed), detail)
    return passed
