"""Shared generators for the property and acceptance suites."""

import cmath
import math

import numpy as np
import pytest

from qahd.logform import AngularPart, LogForm
from qahd.pairing import TestFunction

# keep pytest from trying to collect the bump class by its name
TestFunction.__test__ = False


def random_form(rng, n=None, k=None, lam=None, max_alpha=4):
    """Random canonical form with the requested dimension, order and degree.

    Angular parts are 1..3 Laurent atoms with |alpha| <= max_alpha and
    coefficient magnitude in [0.5, 2]; retries until the syzygy-reduced
    order equals k.
    """
    if n is None:
        n = int(rng.integers(1, 4))
    if k is None:
        k = int(rng.integers(0, 5))
    if lam is None:
        lam = complex(rng.uniform(-3, 3), rng.uniform(-2, 2))
    while True:
        parts = []
        for _ in range(k + 1):
            atoms = {}
            for _ in range(int(rng.integers(1, 4))):
                weight = int(rng.integers(0, max_alpha + 1))
                alpha = tuple(int(v) for v in rng.multinomial(weight, [1.0 / n] * n))
                mag = rng.uniform(0.5, 2.0)
                phase = rng.uniform(0.0, 2.0 * math.pi)
                atoms[alpha] = atoms.get(alpha, 0) + mag * cmath.exp(1j * phase)
            parts.append(AngularPart(n, atoms))
        form = LogForm.make(n, lam, parts)
        if not form.is_zero and form.order == k:
            return form


def random_points(rng, n, count, r_min=0.5, r_max=2.0):
    points = []
    for _ in range(count):
        v = rng.normal(size=n)
        norm = float(np.linalg.norm(v))
        while norm < 1e-6:
            v = rng.normal(size=n)
            norm = float(np.linalg.norm(v))
        radius = float(rng.uniform(r_min, r_max))
        points.append(tuple(radius * c / norm for c in v))
    return points


class ExprGen:
    """Random grammar-conforming source strings."""

    def __init__(self, rng, n, max_num=10):
        self.rng = rng
        self.n = n
        self.max_num = max_num

    def number(self):
        if self.rng.random() < 0.5:
            return str(int(self.rng.integers(0, self.max_num)))
        return f"{self.rng.uniform(0, self.max_num):.3f}"

    def exponent(self):
        roll = self.rng.random()
        if roll < 0.4:
            return self.number()
        if roll < 0.7:
            return f"(-{self.number()})"
        sign = "-" if self.rng.random() < 0.5 else "+"
        lead = "-" if self.rng.random() < 0.3 else ""
        return f"({lead}{self.number()}{sign}{self.number()}i)"

    def base(self, depth):
        roll = self.rng.random()
        if roll < 0.2:
            return self.number()
        if roll < 0.45:
            return "r"
        if roll < 0.6:
            return "log(r)"
        if roll < 0.85 or depth > 3:
            return f"x{int(self.rng.integers(1, self.n + 1))}"
        return f"({self.expr(depth + 1)})"

    def factor(self, depth):
        s = self.base(depth)
        if self.rng.random() < 0.5:
            s = f"{s}^{self.exponent()}"
        if self.rng.random() < 0.2:
            s = f"-{s}"
        return s

    def term(self, depth):
        count = int(self.rng.integers(1, 4))
        parts = [self.factor(depth)]
        for _ in range(count - 1):
            # division only by monomial factors, per the grammar contract
            if self.rng.random() < 0.25:
                divisor = ["r", f"x{int(self.rng.integers(1, self.n + 1))}"][
                    int(self.rng.integers(0, 2))
                ]
                if self.rng.random() < 0.5:
                    divisor = f"{divisor}^{int(self.rng.integers(1, 4))}"
                parts.append(f"/ {divisor}")
            else:
                parts.append(f"* {self.factor(depth)}")
        return " ".join(parts)

    def expr(self, depth=0):
        count = int(self.rng.integers(1, 4))
        parts = [self.term(depth)]
        for _ in range(count - 1):
            op = "+" if self.rng.random() < 0.5 else "-"
            parts.append(f"{op} {self.term(depth)}")
        return " ".join(parts)


@pytest.fixture(scope="session")
def form_corpus():
    """200 random canonical forms spanning n in 1..3, k in 0..4."""
    rng = np.random.default_rng(20260826)
    forms = []
    for i in range(200):
        n = 1 + i % 3
        k = i % 5
        forms.append(random_form(rng, n=n, k=k))
    return forms
