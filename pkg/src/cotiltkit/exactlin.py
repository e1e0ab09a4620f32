"""Exact dense linear algebra over the rationals and prime fields.

Matrices are plain 2-D numpy arrays. Over ``QQ`` they hold ``Fraction``
objects (dtype=object); over ``GF(p)`` they hold int64 residues in ``[0, p)``.
A :class:`Field` instance owns every operation, so mixing two fields in one
computation surfaces as a :class:`FieldMismatchError` instead of a silent
coercion.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np


class FieldMismatchError(TypeError):
    pass


class Field:
    """Base class for the two supported ground fields."""

    name: str
    characteristic: int
    dtype: object

    # --- construction -----------------------------------------------------
    def __call__(self, value):
        raise NotImplementedError

    def array(self, data, shape: tuple[int, int] | None = None) -> np.ndarray:
        """Convert nested sequences (or an array) into a canonical matrix."""
        if isinstance(data, np.ndarray) and data.dtype == self.dtype:
            arr = data.copy()
        else:
            src = np.asarray(data, dtype=object)
            arr = np.empty(src.shape, dtype=self.dtype)
            flat_src = src.reshape(-1)
            flat = arr.reshape(-1)
            for k in range(flat_src.size):
                flat[k] = self(flat_src[k])
        if shape is not None:
            arr = arr.reshape(shape)
        return arr

    def vector(self, data) -> np.ndarray:
        return self.array(data).reshape(-1)

    def zeros(self, rows: int, cols: int | None = None) -> np.ndarray:
        raise NotImplementedError

    def eye(self, n: int) -> np.ndarray:
        m = self.zeros(n, n)
        for i in range(n):
            m[i, i] = self.one
        return m

    def check(self, a: np.ndarray) -> np.ndarray:
        if not isinstance(a, np.ndarray) or a.dtype != self.dtype:
            raise FieldMismatchError(f"matrix does not live over {self.name}")
        return a

    # --- scalar helpers ---------------------------------------------------
    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    def inv(self, x):
        raise NotImplementedError

    def reduce(self, a: np.ndarray) -> np.ndarray:
        return a

    def to_int_repr(self, x) -> str:
        """Serialize a scalar as an integer or ``p/q`` string."""
        raise NotImplementedError

    def random(self, rng: np.random.Generator, size: int, small: bool = True) -> np.ndarray:
        raise NotImplementedError

    # --- matrix arithmetic ------------------------------------------------
    def matmul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        if a.shape[1] != b.shape[0]:
            raise ValueError(f"shape mismatch {a.shape} @ {b.shape}")
        if a.shape[1] == 0:
            return self.zeros(a.shape[0], b.shape[1])
        return self.reduce(a @ b)

    def add(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return self.reduce(a + b)

    def sub(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return self.reduce(a - b)

    def scale(self, c, a: np.ndarray) -> np.ndarray:
        return self.reduce(a * c)

    def neg(self, a: np.ndarray) -> np.ndarray:
        return self.reduce(-a)

    def is_zero(self, a: np.ndarray) -> bool:
        return not np.any(a != 0)

    def kron(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        ra, ca = a.shape
        rb, cb = b.shape
        out = self.zeros(ra * rb, ca * cb)
        for i in range(ra):
            for j in range(ca):
                if a[i, j] != 0:
                    out[i * rb:(i + 1) * rb, j * cb:(j + 1) * cb] = self.reduce(b * a[i, j])
        return out

    # --- elimination ------------------------------------------------------
    def rref(self, a: np.ndarray) -> tuple[np.ndarray, list[int]]:
        """Reduced row echelon form and the (strictly increasing) pivot columns."""
        m = self.check(a).copy()
        rows, cols = m.shape
        pivots: list[int] = []
        r = 0
        for c in range(cols):
            if r == rows:
                break
            nz = np.nonzero(m[r:, c] != 0)[0]
            if nz.size == 0:
                continue
            p = r + int(nz[0])
            if p != r:
                m[[r, p]] = m[[p, r]]
            m[r] = self.reduce(m[r] * self.inv(m[r, c]))
            others = np.nonzero(m[:, c] != 0)[0]
            others = others[others != r]
            if others.size:
                m[others] = self.reduce(m[others] - np.outer(m[others, c], m[r]))
            pivots.append(c)
            r += 1
        return m, pivots

    def rank(self, a: np.ndarray) -> int:
        if a.size == 0:
            return 0
        return len(self.rref(a)[1])

    def kernel_basis(self, a: np.ndarray) -> np.ndarray:
        """Columns form a basis of the right null space of ``a``."""
        rows, cols = a.shape
        r, pivots = self.rref(a)
        free = [c for c in range(cols) if c not in set(pivots)]
        k = self.zeros(cols, len(free))
        for j, f in enumerate(free):
            k[f, j] = self.one
            for i, p in enumerate(pivots):
                k[p, j] = self.reduce(-r[i, f])
        return k

    def solve(self, a: np.ndarray, b: np.ndarray) -> np.ndarray | None:
        """A particular solution of ``a @ x = b`` or None when inconsistent."""
        if a.shape[0] != b.shape[0]:
            raise ValueError(f"solve: {a.shape[0]} rows vs {b.shape[0]} rows")
        n = a.shape[1]
        aug = np.concatenate([self.check(a), self.check(b)], axis=1)
        r, pivots = self.rref(aug)
        x = self.zeros(n, b.shape[1])
        for i, p in enumerate(pivots):
            if p >= n:
                return None
            x[p] = r[i, n:]
        return x

    def inverse(self, a: np.ndarray) -> np.ndarray:
        n = a.shape[0]
        if a.shape != (n, n):
            raise ValueError("inverse of a non-square matrix")
        x = self.solve(a, self.eye(n))
        if x is None or self.rank(a) < n:
            raise ZeroDivisionError("singular matrix")
        return x

    def column_basis(self, a: np.ndarray) -> np.ndarray:
        """Independent columns of ``a`` spanning its column space."""
        _, pivots = self.rref(a)
        return a[:, pivots]

    def extend_to_basis(self, a: np.ndarray) -> np.ndarray:
        """Standard basis columns completing the column space of ``a``."""
        n = a.shape[0]
        aug = np.concatenate([self.check(a), self.eye(n)], axis=1)
        _, pivots = self.rref(aug)
        return self.eye(n)[:, [p - a.shape[1] for p in pivots if p >= a.shape[1]]]

    def det(self, a: np.ndarray) -> object:
        m = self.check(a).copy()
        n = m.shape[0]
        d = self.one
        for c in range(n):
            nz = np.nonzero(m[c:, c] != 0)[0]
            if nz.size == 0:
                return self.zero
            p = c + int(nz[0])
            if p != c:
                m[[c, p]] = m[[p, c]]
                d = self.reduce(np.array([-d], dtype=self.dtype))[0]
            piv = m[c, c]
            d = self.reduce(np.array([d * piv], dtype=self.dtype))[0]
            inv = self.inv(piv)
            below = np.arange(c + 1, n)
            if below.size:
                factors = self.reduce(m[below, c] * inv)
                m[below] = self.reduce(m[below] - np.outer(factors, m[c]))
        return d

    def charpoly(self, a: np.ndarray) -> list:
        """Coefficients (constant term first) of det(t*I - a), by interpolation."""
        n = a.shape[0]
        pts = [self(k) for k in range(n + 1)]
        vals = [self.det(self.sub(self.scale(t, self.eye(n)), a)) for t in pts]
        # Newton divided differences, then expand to monomial basis.
        coef = list(vals)
        for j in range(1, n + 1):
            for i in range(n, j - 1, -1):
                num = self._s(coef[i] - coef[i - 1])
                den = self._s(pts[i] - pts[i - j])
                coef[i] = self._s(num * self.inv(den))
        poly = [self.zero] * (n + 1)
        poly[0] = coef[n]
        deg = 0
        for i in range(n - 1, -1, -1):
            # poly = poly * (t - pts[i]) + coef[i]
            new = [self.zero] * (n + 1)
            for k in range(deg + 1):
                new[k + 1] = self._s(new[k + 1] + poly[k])
                new[k] = self._s(new[k] - poly[k] * pts[i])
            new[0] = self._s(new[0] + coef[i])
            poly = new
            deg += 1
        return poly

    def _s(self, x):
        return self(x)

    def roots(self, poly: Sequence) -> list:
        raise NotImplementedError

    def __repr__(self) -> str:
        return self.name


class RationalField(Field):
    name = "QQ"
    characteristic = 0
    dtype = np.dtype(object)

    def __call__(self, value):
        if isinstance(value, Fraction):
            return value
        if isinstance(value, str):
            return Fraction(value.strip())
        if isinstance(value, (int, np.integer)):
            return Fraction(int(value))
        if isinstance(value, float):
            raise TypeError("floating point values are not accepted")
        return Fraction(value)

    def zeros(self, rows: int, cols: int | None = None) -> np.ndarray:
        shape = (rows,) if cols is None else (rows, cols)
        return np.full(shape, Fraction(0), dtype=object)

    def inv(self, x):
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / Fraction(x)

    def reduce(self, a):
        return a

    def check(self, a):
        a = super().check(a)
        return a

    def to_int_repr(self, x) -> str:
        x = Fraction(x)
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"

    def random(self, rng, size, small=True):
        out = self.zeros(size)
        vals = rng.integers(-3, 4, size=size)
        for i, v in enumerate(vals):
            out[i] = Fraction(int(v))
        return out

    def roots(self, poly):
        """Rational roots of a polynomial given constant-term-first."""
        coeffs = [Fraction(c) for c in poly]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        found = []
        while len(coeffs) > 1 and coeffs[0] == 0:
            if Fraction(0) not in found:
                found.append(Fraction(0))
            coeffs = coeffs[1:]
        if len(coeffs) <= 1:
            return found
        lcm = 1
        for c in coeffs:
            lcm = lcm * c.denominator // _gcd(lcm, c.denominator)
        ints = [int(c * lcm) for c in coeffs]
        a0, an = abs(ints[0]), abs(ints[-1])
        for p in _divisors(a0):
            for q in _divisors(an):
                for cand in (Fraction(p, q), Fraction(-p, q)):
                    if cand in found:
                        continue
                    if _horner(coeffs, cand) == 0:
                        found.append(cand)
        return found


class PrimeField(Field):
    characteristic: int

    def __init__(self, p: int):
        if p < 2 or any(p % d == 0 for d in range(2, int(p ** 0.5) + 1)):
            raise ValueError(f"{p} is not prime")
        if p > 3_000_000:
            raise ValueError("prime too large for int64 elimination")
        self.p = p
        self.characteristic = p
        self.name = f"GF({p})"
        self.dtype = np.dtype(np.int64)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))

    def __call__(self, value):
        if isinstance(value, str):
            value = Fraction(value.strip())
        if isinstance(value, Fraction):
            if value.denominator % self.p == 0:
                raise ZeroDivisionError(f"denominator divisible by {self.p}")
            return (value.numerator * pow(value.denominator, -1, self.p)) % self.p
        if isinstance(value, float):
            raise TypeError("floating point values are not accepted")
        return int(value) % self.p

    def zeros(self, rows: int, cols: int | None = None) -> np.ndarray:
        shape = (rows,) if cols is None else (rows, cols)
        return np.zeros(shape, dtype=np.int64)

    def inv(self, x):
        x = int(x) % self.p
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(x, -1, self.p)

    def reduce(self, a):
        return np.mod(a, self.p)

    def _s(self, x):
        return int(x) % self.p

    def to_int_repr(self, x) -> str:
        x = int(x) % self.p
        return str(x - self.p if x > self.p // 2 else x)

    def random(self, rng, size, small=True):
        return rng.integers(0, self.p, size=size).astype(np.int64)

    def roots(self, poly):
        coeffs = [int(c) % self.p for c in poly]
        found = []
        for t in range(self.p):
            acc = 0
            for c in reversed(coeffs):
                acc = (acc * t + c) % self.p
            if acc == 0:
                found.append(t)
        return found


QQ = RationalField()
_PRIME_FIELDS: dict[int, PrimeField] = {}


def GF(p: int) -> PrimeField:
    if p not in _PRIME_FIELDS:
        _PRIME_FIELDS[p] = PrimeField(p)
    return _PRIME_FIELDS[p]


def parse_field(spec: str) -> Field:
    """``"q"`` / ``"QQ"`` for the rationals, ``"p=1009"`` or ``"GF(1009)"`` for F_p."""
    s = spec.strip().lower()
    if s in ("q", "qq", "rational", "rationals"):
        return QQ
    for prefix in ("p=", "gf(", "f_"):
        if s.startswith(prefix):
            return GF(int(s[len(prefix):].rstrip(")")))
    if s.isdigit():
        return GF(int(s))
    raise ValueError(f"unknown field {spec!r}")


def same_field(a: Field, b: Field) -> Field:
    if a is not b and a != b:
        raise FieldMismatchError(f"cannot mix {a} and {b}")
    return a


# Convenience module-level wrappers used by tests and callers that carry a field.

def rref(m: np.ndarray, field: Field) -> tuple[np.ndarray, list[int]]:
    return field.rref(m)


def kernel_basis(m: np.ndarray, field: Field) -> np.ndarray:
    return field.kernel_basis(m)


def solve(a: np.ndarray, b: np.ndarray, field: Field) -> np.ndarray | None:
    return field.solve(a, b)


def rank(m: np.ndarray, field: Field) -> int:
    return field.rank(m)


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)


def _divisors(n: int, cap: int = 10 ** 12) -> Iterable[int]:
    if n == 0:
        return [0]
    if n > cap:
        return [1]
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def _horner(coeffs: Sequence[Fraction], x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc
