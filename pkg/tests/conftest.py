import math

import numpy as np
import pytest

import ksblowup as ks

EIGHT_PI = 8.0 * math.pi


def analytic_families(mass):
    """One datum per analytic family, all carrying the given mass."""
    return {
        "gaussian": ks.Gaussian(mass, 1.0),
        "disk": ks.DiskIndicator(mass / math.pi, 1.0),
        "annulus": ks.Annulus(mass / (3.0 * math.pi), 1.0, 2.0),
        "polygaussian": ks.PolyGaussian(mass / math.pi, 1, 1.0),
        "diffgaussians": ks.DiffGaussians(2.0 * mass / math.pi, 1.0, 2.0),
    }


def disk_grid(n, height=16.0, radius=1.0, window=1.25, shift=(0.0, 0.0)):
    """Cell-center samples of a disk indicator on an n x n grid."""
    h = 2.0 * window / n
    xs = -window + h * (np.arange(n) + 0.5)
    X, Y = np.meshgrid(xs, xs)
    vals = np.where(np.hypot(X - shift[0], Y - shift[1]) <= radius,
                    height, 0.0)
    return ks.CartesianGrid(vals, h, (-window + 0.5 * h, -window + 0.5 * h))


@pytest.fixture(scope="session")
def families_16pi():
    return analytic_families(16.0 * math.pi)


@pytest.fixture(scope="session")
def gaussian_16pi():
    return ks.Gaussian(16.0 * math.pi, 1.0)


@pytest.fixture(scope="session")
def disk_16pi():
    return ks.DiskIndicator(16.0, 1.0)


@pytest.fixture(scope="session")
def small_disk_grid():
    return disk_grid(128)
