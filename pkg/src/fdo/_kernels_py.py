"""Pure NumPy twin of the compiled ``_kernels`` extension."""

import numpy as np

SCALED_RANDOM = 0
TOWARD_BEST = 1
AWAY_FROM_BEST = 2


def pace_vector(x, xstar, fw, r, fitness):
    x = np.asarray(x, dtype=float)
    r = np.asarray(r, dtype=float)
    n = x.shape[0]
    if fw <= 0.0 or fw >= 1.0 or fitness == 0.0:
        return x * r, np.full(n, SCALED_RANDOM, dtype=np.int8)
    diff = (x - np.asarray(xstar, dtype=float)) * fw
    negative = r < 0.0
    pace = np.where(negative, diff * -1.0, diff)
    branch = np.where(negative, TOWARD_BEST, AWAY_FROM_BEST).astype(np.int8)
    return pace, branch


def move(x, pace, lower, upper, clamp):
    out = np.asarray(x, dtype=float) + np.asarray(pace, dtype=float)
    if clamp:
        out = np.minimum(np.maximum(out, lower), upper)
    return out


def sphere(x):
    x = np.asarray(x, dtype=float)
    return float(np.dot(x, x))


def rastrigin(x):
    x = np.asarray(x, dtype=float)
    return float(10.0 * x.size + np.sum(x**2 - 10.0 * np.cos(2.0 * np.pi * x)))


def rosenbrock(x):
    x = np.asarray(x, dtype=float)
    return float(np.sum(100.0 * (x[1:] - x[:-1] ** 2) ** 2 + (1.0 - x[:-1]) ** 2))


def ackley(x):
    x = np.asarray(x, dtype=float)
    n = x.size
    return float(
        -20.0 * np.exp(-0.2 * np.sqrt(np.sum(x**2) / n))
        - np.exp(np.sum(np.cos(2.0 * np.pi * x)) / n)
        + 20.0
        + np.e
    )
