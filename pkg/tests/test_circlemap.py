import math

import numpy as np
import pytest

from fracsum import circlemap
from fracsum.errors import DomainError


def test_step_examples():
    assert circlemap.f_t_step(0.0, 0.3) == 0.6
    for t in (0.1, 0.4, 0.9):
        assert circlemap.f_t_step(t, t / 4) == t
    assert circlemap.f_t_step(0.5, 0.6) == pytest.approx(0.2)
    assert circlemap.f_t_step(0.5, 0.5) == 0.0
    assert circlemap.f_t_step(0.5, 0.8) == 0.5  # upper flat piece


@pytest.mark.parametrize("t, x", [(-0.1, 0.2), (1.0, 0.2), (0.2, 1.0), (0.2, -1e-9)])
def test_step_domain(t, x):
    with pytest.raises(DomainError):
        circlemap.f_t_step(t, x)


def test_scalar_and_vector_steps_agree():
    rng = np.random.default_rng(0)
    t, x = rng.random(2000), rng.random(2000)
    out, _ = circlemap.step_array(t, x)
    assert np.array_equal(out, [circlemap.f_t_step(a, b) for a, b in zip(t, x)])


def test_range_invariant():
    rng = np.random.default_rng(1)
    t, x = rng.random(10**5), rng.random(10**5)
    for _ in range(10):
        x, _ = circlemap.step_array(t, x)
        assert np.all((x >= 0) & (x < 1))


def test_flat_spot_absorption():
    rng = np.random.default_rng(2)
    t = rng.random(5000) * 0.98 + 0.01
    low = rng.random(5000) * t / 2
    high = (1 + t) / 2 + rng.random(5000) * (1 - t) / 2
    high = np.minimum(high, np.nextafter(1.0, 0))
    assert np.array_equal(circlemap.step_array(t, low)[0], t)
    assert np.array_equal(circlemap.step_array(t, high)[0], t)


def test_orbit():
    o = circlemap.orbit(0.3, 0.1, 5)
    xs, x = [], 0.1
    for _ in range(5):
        xs.append(x)
        x = circlemap.f_t_step(0.3, x)
    assert o.partial_sum == pytest.approx(sum(xs)) and o.final == x


def test_rotation_number():
    assert circlemap.rotation_number(0.0, 1000) == 0.0
    with pytest.raises(ValueError):
        circlemap.rotation_number(0.2, 999)
    grid = np.arange(1, 100) / 100
    n = 4000
    rho = circlemap.rotation_numbers(grid, n)
    assert np.all(np.diff(rho) >= -2 / n)
    assert rho[-1] > rho[0]


def test_locking_half():
    n = 2000
    t = circlemap.find_locking_parameter(0.5, n)
    assert abs(circlemap.rotation_number(t, n) - 0.5) <= 1 / n
    x = [t]
    for _ in range(4):
        x.append(circlemap.f_t_step(t, x[-1]))
    assert x[2] == pytest.approx(t, abs=1e-12)


def test_fluctuation_determinism_and_histogram():
    h1 = circlemap.circle_fluctuations(200, 1000, seed=5, bins=64)
    h2 = circlemap.circle_fluctuations(200, 1000, seed=5, bins=64)
    assert np.array_equal(h1.counts, h2.counts) and h1.to_csv() == h2.to_csv()
    assert h1.counts.sum() == 1000 and len(h1.edges) == 65
    assert np.sum(h1.density) * (1 / 64) == pytest.approx(1.0)
    one = circlemap.circle_fluctuation_values(50, 1, seed=3)
    assert np.array_equal(one, circlemap.circle_fluctuation_values(50, 1, seed=3))


def test_fluctuation_values_match_orbit():
    rng = np.random.default_rng(4)
    t, x = rng.random(2)
    v = circlemap.circle_fluctuation_values(300, 1, seed=4)[0]
    o = circlemap.orbit(t, x, 300)
    assert v == pytest.approx((o.partial_sum - 150) / 300, abs=1e-12)


def test_symmetric_pair_fraction():
    edges = np.linspace(-0.5, 0.5, 5)
    h = circlemap.CircleHistogram(1, 40, 0, edges, np.array([10, 10, 10, 10]), 0, 0.0, 0.1)
    assert circlemap.symmetric_pair_fraction(h) == 1.0
    h = circlemap.CircleHistogram(1, 40, 0, edges, np.array([100, 0, 0, 0]), 0, 0.0, 0.1)
    assert circlemap.symmetric_pair_fraction(h) == 0.5
