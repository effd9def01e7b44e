from fractions import Fraction
import random

import pytest

from berkline import PAdicField, TAdicField, Val, disc, norm


@pytest.fixture(scope="session")
def q3():
    return PAdicField(3)


@pytest.fixture(scope="session")
def qt():
    return TAdicField()


@pytest.fixture(scope="session")
def f5t():
    return TAdicField(5)


@pytest.fixture
def rng():
    return random.Random(0xBE12)


def rand_fraction(rng, height=1000, allow_zero=True):
    num = rng.randint(-height, height)
    if not allow_zero:
        while num == 0:
            num = rng.randint(-height, height)
    return Fraction(num, rng.randint(1, height))


def sampled_slope_changes(field, p):
    """Breakpoints read off |P| at balls around zero, no hull geometry.

    Measures the slope of xi -> exp |P| at ball(0; exponent xi) strictly
    inside each span between candidate crossings, then records where
    consecutive slopes drop.  Shared by the unit and acceptance suites
    as the independent check on newton_breakpoints.
    """
    coeffs = p.dense_coeffs()
    pts = [(i, field.abs(c).exponent) for i, c in enumerate(coeffs) if not field.abs(c).is_zero]
    if len(pts) < 2:
        return []
    crossings = sorted(
        {
            Fraction(eb - ea, a - b)
            for i, (a, ea) in enumerate(pts)
            for b, eb in pts[i + 1 :]
            if a != b
        }
    )
    spans = [(crossings[0] - 2, crossings[0] - 1)]
    for left, right in zip(crossings, crossings[1:]):
        third = (right - left) / 3
        spans.append((left + third, right - third))
    spans.append((crossings[-1] + 1, crossings[-1] + 2))

    def phi(xi):
        return norm(disc(field, field.zero(), Val.of(xi)), p).exponent

    slopes = [(phi(b) - phi(a)) / (b - a) for a, b in spans]
    out = []
    for xi, s0, s1 in zip(crossings, slopes, slopes[1:]):
        drop = s0 - s1
        if drop:
            assert drop.denominator == 1 and drop > 0
            out.append((xi, int(drop)))
    out.sort(key=lambda t: t[0], reverse=True)
    return out
