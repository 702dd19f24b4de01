"""Canonical log-power normal form r^lam * sum_j h_j(omega) log^j r.

Angular parts are finite combinations of the degree-0 atoms x^alpha / r^|alpha|.
The zero test reduces modulo the single sphere relation sum_i x_i^2/r^2 = 1
by eliminating alpha_1 >= 2 (graded-lex leading term), which makes order and
equality well defined.
"""

from __future__ import annotations

import cmath
import math
from typing import Dict, Iterable, Tuple

from . import expr as ex
from .errors import (
    NotInClassError,
    OriginError,
    UndefinedDegreeError,
    ZeroInputError,
)

COEFF_ZERO_THRESHOLD = 1e-12
DEGREE_TOLERANCE = 1e-10

Alpha = Tuple[int, ...]


class AngularPart:
    """Finite linear combination of angular atoms, keyed by multi-index."""

    __slots__ = ("n", "atoms")

    def __init__(self, n: int, atoms: Dict[Alpha, complex] | None = None):
        self.n = n
        pruned: Dict[Alpha, complex] = {}
        if atoms:
            for alpha, c in atoms.items():
                if abs(c) > COEFF_ZERO_THRESHOLD:
                    pruned[tuple(alpha)] = complex(c)
        self.atoms = pruned

    @classmethod
    def from_terms(cls, n: int, terms: Iterable[Tuple[Alpha, complex]]):
        acc: Dict[Alpha, complex] = {}
        for alpha, c in terms:
            alpha = tuple(alpha)
            acc[alpha] = acc.get(alpha, complex(0)) + c
        return cls(n, acc)

    def add(self, other: "AngularPart") -> "AngularPart":
        acc = dict(self.atoms)
        for alpha, c in other.atoms.items():
            acc[alpha] = acc.get(alpha, complex(0)) + c
        return AngularPart(self.n, acc)

    def scale(self, c: complex) -> "AngularPart":
        if c == 0:
            return AngularPart(self.n)
        return AngularPart(self.n, {a: v * c for a, v in self.atoms.items()})

    def sub(self, other: "AngularPart") -> "AngularPart":
        return self.add(other.scale(complex(-1)))

    def is_empty(self) -> bool:
        return not self.atoms

    def max_abs(self) -> float:
        return max((abs(c) for c in self.atoms.values()), default=0.0)

    def reduced(self) -> "AngularPart":
        """Normal form modulo x1^2/r^2 -> 1 - sum_{i>=2} x_i^2/r^2."""
        work = dict(self.atoms)
        out: Dict[Alpha, complex] = {}
        while work:
            alpha, c = work.popitem()
            if abs(c) == 0.0:
                continue
            if alpha[0] >= 2:
                base = (alpha[0] - 2,) + alpha[1:]
                work[base] = work.get(base, complex(0)) + c
                for i in range(1, self.n):
                    up = base[:i] + (base[i] + 2,) + base[i + 1:]
                    work[up] = work.get(up, complex(0)) - c
            else:
                out[alpha] = out.get(alpha, complex(0)) + c
        return AngularPart(self.n, out)

    def eval_direction(self, omega) -> complex:
        """Value at a unit vector omega (atoms are x^alpha / r^|alpha|)."""
        acc = complex(0)
        for alpha, c in self.atoms.items():
            term = 1.0
            for i, a in enumerate(alpha):
                if a:
                    term *= float(omega[i]) ** a
            acc += c * term
        return acc

    def eval(self, x) -> complex:
        r = ex.radius(x)
        if r == 0.0:
            raise OriginError("angular part undefined at the origin")
        return self.eval_direction([float(c) / r for c in x])

    def __repr__(self):
        return f"AngularPart(n={self.n}, atoms={self.atoms!r})"


def angular_is_zero(h: AngularPart) -> bool:
    """True iff h vanishes identically on the sphere (syzygy-aware)."""
    return h.reduced().max_abs() <= COEFF_ZERO_THRESHOLD


class LogForm:
    """Canonical value: dimension n, degree lam, log-power coefficients."""

    __slots__ = ("n", "_lam", "coeffs", "is_zero")

    def __init__(self, n, lam, coeffs, is_zero):
        self.n = n
        self._lam = complex(lam)
        self.coeffs = tuple(coeffs)
        self.is_zero = is_zero

    @classmethod
    def make(cls, n: int, lam: complex, coeffs: Iterable[AngularPart]) -> "LogForm":
        parts = list(coeffs)
        while parts and angular_is_zero(parts[-1]):
            parts.pop()
        if not parts:
            return cls.zero(n)
        return cls(n, lam, parts, False)

    @classmethod
    def zero(cls, n: int) -> "LogForm":
        return cls(n, complex(0), (AngularPart(n),), True)

    @property
    def degree(self) -> complex:
        if self.is_zero:
            raise UndefinedDegreeError("the zero form has no degree")
        return self._lam

    @property
    def order(self) -> int:
        if self.is_zero:
            raise UndefinedDegreeError("the zero form has no order")
        return len(self.coeffs) - 1

    def scale(self, c: complex) -> "LogForm":
        if self.is_zero or c == 0:
            return LogForm.zero(self.n)
        return LogForm.make(self.n, self._lam, [h.scale(c) for h in self.coeffs])

    def add(self, other: "LogForm") -> "LogForm":
        """Sum of two forms of the same degree (zero forms are neutral)."""
        if self.is_zero:
            return other
        if other.is_zero:
            return self
        if abs(self._lam - other._lam) > DEGREE_TOLERANCE:
            raise ValueError("cannot add forms of distinct degrees")
        k = max(len(self.coeffs), len(other.coeffs))
        parts = []
        for j in range(k):
            a = self.coeffs[j] if j < len(self.coeffs) else AngularPart(self.n)
            b = other.coeffs[j] if j < len(other.coeffs) else AngularPart(self.n)
            parts.append(a.add(b))
        return LogForm.make(self.n, self._lam, parts)

    def sub(self, other: "LogForm") -> "LogForm":
        return self.add(other.scale(complex(-1)))

    def coeff_norm(self) -> float:
        """Max syzygy-reduced coefficient magnitude across log powers."""
        if self.is_zero:
            return 0.0
        return max(h.reduced().max_abs() for h in self.coeffs)

    def raw_norm(self) -> float:
        if self.is_zero:
            return 0.0
        return max(h.max_abs() for h in self.coeffs)

    def to_dict(self) -> dict:
        out = {"n": self.n}
        if self.is_zero:
            out["zero"] = True
            out["coeffs"] = [[]]
            return out
        out["degree"] = {"re": self._lam.real, "im": self._lam.imag}
        coeffs = []
        for h in self.coeffs:
            entries = []
            for alpha in sorted(h.atoms):
                c = h.atoms[alpha]
                entries.append({"alpha": list(alpha), "re": c.real, "im": c.imag})
            coeffs.append(entries)
        out["coeffs"] = coeffs
        return out

    def __repr__(self):
        if self.is_zero:
            return f"LogForm.zero(n={self.n})"
        return f"LogForm(n={self.n}, lam={self._lam}, k={self.order})"


def eval_form(form: LogForm, x) -> complex:
    """Pointwise value exp(lam ln r) * sum_j h_j(x/r) (ln r)^j."""
    r = ex.radius(x)
    if r == 0.0:
        raise OriginError("evaluation at the origin")
    if form.is_zero:
        return complex(0)
    ln_r = math.log(r)
    omega = [float(c) / r for c in x]
    acc = complex(0)
    log_pow = 1.0
    for h in form.coeffs:
        acc += h.eval_direction(omega) * log_pow
        log_pow *= ln_r
    return cmath.exp(form._lam * ln_r) * acc


def forms_equal(f: LogForm, g: LogForm) -> bool:
    """Equality up to the degree tolerance and the sphere relation."""
    if f.n != g.n:
        return False
    if f.is_zero or g.is_zero:
        return f.is_zero and g.is_zero
    if abs(f._lam - g._lam) > DEGREE_TOLERANCE:
        return False
    k = max(len(f.coeffs), len(g.coeffs))
    for j in range(k):
        a = f.coeffs[j] if j < len(f.coeffs) else AngularPart(f.n)
        b = g.coeffs[j] if j < len(g.coeffs) else AngularPart(g.n)
        if not angular_is_zero(a.sub(b)):
            return False
    return True


class MultiForm:
    """Finite sum of LogForms with pairwise distinct degrees."""

    __slots__ = ("n", "forms")

    def __init__(self, n: int, forms: Iterable[LogForm] = ()):
        kept = [f for f in forms if not f.is_zero]
        kept.sort(key=lambda f: (f._lam.real, f._lam.imag))
        self.n = n
        self.forms = tuple(kept)

    @property
    def is_zero(self) -> bool:
        return not self.forms

    def components(self) -> Tuple[LogForm, ...]:
        return self.forms

    def add(self, other: "MultiForm") -> "MultiForm":
        groups = list(self.forms)
        out = []
        for g in other.forms:
            merged = False
            for i, f in enumerate(groups):
                if f is not None and abs(f._lam - g._lam) <= DEGREE_TOLERANCE:
                    out.append(f.add(g))
                    groups[i] = None
                    merged = True
                    break
            if not merged:
                out.append(g)
        out.extend(f for f in groups if f is not None)
        return MultiForm(self.n, out)

    def scale(self, c: complex) -> "MultiForm":
        return MultiForm(self.n, [f.scale(c) for f in self.forms])

    def eval(self, x) -> complex:
        return sum((eval_form(f, x) for f in self.forms), complex(0))

    def to_dict(self) -> list:
        if self.is_zero:
            return [LogForm.zero(self.n).to_dict()]
        return [f.to_dict() for f in self.forms]

    def __repr__(self):
        return f"MultiForm(n={self.n}, degrees={[f._lam for f in self.forms]})"


# ---------------------------------------------------------------------------
# Rewriting parsed expressions into MultiForm.

_INT_EPS = 1e-9


def _as_int(c: complex, what: str) -> int:
    if c.imag != 0 or abs(c.real - round(c.real)) > _INT_EPS:
        raise NotInClassError(f"{what} requires an integer exponent, got {c}")
    return int(round(c.real))


def _mono_mul(m1, m2):
    c1, a1, mu1, j1 = m1
    c2, a2, mu2, j2 = m2
    return (c1 * c2, tuple(x + y for x, y in zip(a1, a2)), mu1 + mu2, j1 + j2)


def _expand(e, n):
    """Expression -> list of monomials (coef, alpha, r-power mu, log-power j)."""
    zero_alpha = (0,) * n
    if isinstance(e, ex.Constant):
        return [(e.value, zero_alpha, complex(0), 0)]
    if isinstance(e, ex.Variable):
        alpha = tuple(1 if i == e.index - 1 else 0 for i in range(n))
        return [(complex(1), alpha, complex(0), 0)]
    if isinstance(e, ex.Radius):
        return [(complex(1), zero_alpha, complex(1), 0)]
    if isinstance(e, ex.LogRadius):
        return [(complex(1), zero_alpha, complex(0), 1)]
    if isinstance(e, ex.Negate):
        return [(-c, a, mu, j) for c, a, mu, j in _expand(e.child, n)]
    if isinstance(e, ex.Sum):
        out = []
        for t in e.terms:
            out.extend(_expand(t, n))
        return out
    if isinstance(e, ex.Product):
        acc = [(complex(1), zero_alpha, complex(0), 0)]
        for f in e.factors:
            rhs = _expand(f, n)
            acc = [_mono_mul(m1, m2) for m1 in acc for m2 in rhs]
        return acc
    if isinstance(e, ex.Power):
        c = e.exponent
        base = e.base
        if isinstance(base, ex.Radius):
            return [(complex(1), zero_alpha, c, 0)]
        if isinstance(base, ex.Variable):
            m = _as_int(c, "a variable power")
            if m < 0:
                raise NotInClassError(
                    f"negative variable power x{base.index}^{m} is outside the class"
                )
            alpha = tuple(m if i == base.index - 1 else 0 for i in range(n))
            return [(complex(1), alpha, complex(0), 0)]
        if isinstance(base, ex.LogRadius):
            m = _as_int(c, "a log power")
            if m < 0:
                raise NotInClassError("negative log power is outside the class")
            return [(complex(1), zero_alpha, complex(0), m)]
        if isinstance(base, ex.Constant):
            if c.imag == 0 and c.real == int(c.real):
                m = int(c.real)
                if base.value == 0 and m < 0:
                    raise NotInClassError("zero base with negative exponent")
                return [(base.value ** m, zero_alpha, complex(0), 0)]
            if base.value == 0:
                return []
            return [(cmath.exp(c * cmath.log(base.value)), zero_alpha, complex(0), 0)]
        m = _as_int(c, "a compound-base power")
        if m < 0:
            raise NotInClassError("negative power of a compound base")
        acc = [(complex(1), zero_alpha, complex(0), 0)]
        inner = _expand(base, n)
        for _ in range(m):
            acc = [_mono_mul(m1, m2) for m1 in acc for m2 in inner]
        return acc
    raise TypeError(f"not an expression node: {e!r}")


def canonicalize(e: ex.Expression, n: int) -> MultiForm:
    """Rewrite an expression into grouped log-power normal forms.

    Each monomial x^alpha r^mu log^j r becomes atom(alpha) r^(mu+|alpha|)
    log^j r; terms are grouped by total degree, then by log power.
    """
    monomials = _expand(e, n)
    groups = []  # (lam, {j: {alpha: coef}})
    for c, alpha, mu, j in monomials:
        lam = mu + sum(alpha)
        for key, table in groups:
            if abs(lam - key) <= DEGREE_TOLERANCE:
                tab = table
                break
        else:
            tab = {}
            groups.append((lam, tab))
        row = tab.setdefault(j, {})
        row[alpha] = row.get(alpha, complex(0)) + c
    forms = []
    for lam, table in groups:
        top = max(table) if table else 0
        parts = [AngularPart(n, table.get(j, {})) for j in range(top + 1)]
        forms.append(LogForm.make(n, lam, parts))
    return MultiForm(n, forms)


def require_nonzero(m: MultiForm) -> MultiForm:
    if m.is_zero:
        raise ZeroInputError("operation undefined on the zero form")
    return m
