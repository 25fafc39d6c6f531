"""Shared fixtures: the standard parameter systems used across the suite."""

import random

import pytest

from subshift_lab import SadicParams, Substitution, constant_params, identity

# pi with |pi(0)| < |pi(1)| < 2|pi(0)|, distinct first letters, pi(0) a suffix
# of pi(1); the smallest convenient shape for the full-tier fixtures
PI_FULL = Substitution((bytes([1, 0]), bytes([0, 1, 0])))


def fibonacci(levels=30):
    return constant_params(identity(2), 1, 2, levels)


def two_three(levels=24, pi=None):
    return constant_params(pi or identity(2), 2, 3, levels)


def two_four(levels=24, pi=None):
    return constant_params(pi or identity(2), 2, 4, levels)


def random_full_tier_pairs(rng, levels):
    """(m, n) stream satisfying every shape constraint.

    Levels draw from small, medium, and large m; an (m, n) = (1, 3) step is
    only emitted after a step with n = m + 1, and never first.
    """
    pairs = []
    for _ in range(levels):
        while True:
            m = rng.choice([1, 1, 2, 2, 3, 4, 5, 7, 12, 25])
            if m == 1:
                n = rng.choice([2, 3])
                if n == 3 and (not pairs or pairs[-1][1] != pairs[-1][0] + 1):
                    continue
            elif m <= 4:
                n = rng.randint(m + 1, 2 * m)
            else:
                n = rng.randint(m + 1, (19 * m - 1) // 10)
            break
        pairs.append((m, n))
    return pairs


def mixed_full_tier(seed, levels=30, pi=None):
    rng = random.Random(seed)
    pairs = random_full_tier_pairs(rng, levels)
    return SadicParams(pi=pi or PI_FULL,
                       mk=tuple(m for m, _ in pairs),
                       nk=tuple(n for _, n in pairs))


@pytest.fixture(scope="session")
def fib_params():
    return fibonacci()


@pytest.fixture(scope="session")
def t23_params():
    return two_three()


@pytest.fixture(scope="session")
def t24_params():
    return two_four()


@pytest.fixture(scope="session")
def t24_full_params():
    return two_four(pi=PI_FULL)


@pytest.fixture(scope="session")
def mixed_params():
    return mixed_full_tier(seed=20260809)
