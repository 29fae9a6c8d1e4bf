"""Windowed formal characters of the circle and polynomials in t over them.

A character ``sum_m c_m q^m`` (``q = e^{i theta}``) is stored as a run of
coefficients starting at weight ``lo``.  Coefficients are exact on
``[lo, valid_hi]``, identically zero below ``lo`` and unknown above
``valid_hi``.  Finite characters carry ``valid_hi = inf``.

Series whose support is bounded *above* (the reversed-action side) are kept as
the weight-negated ascending series with ``mirrored=True``.  All arithmetic
runs on the stored ascending data, so negation of weights commutes with every
operation.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

INF = math.inf
EXACT = "exact"
FLOAT = "float"
DEFAULT_ORDER = 64
DEFAULT_TOL = 1e-9


class WindowError(ValueError):
    """Raised when a requested coefficient lies outside the valid window."""


class ModeError(ValueError):
    """Raised when exact and float characters are mixed."""


def _convert(mode):
    return Fraction if mode == EXACT else float


@dataclass(frozen=True)
class Character:
    lo: int = 0
    coeffs: tuple = ()
    valid_hi: float = INF
    mode: str = EXACT
    mirrored: bool = False

    def __post_init__(self):
        if self.mode not in (EXACT, FLOAT):
            raise ValueError(f"unknown mode {self.mode!r}")
        conv = _convert(self.mode)
        coeffs = [conv(c) for c in self.coeffs]
        lo = int(self.lo)
        vh = self.valid_hi
        if vh != INF:
            vh = int(vh)
            if vh < lo - 1:
                raise WindowError(f"valid_hi={vh} below lo-1={lo - 1}")
            if len(coeffs) > vh - lo + 1:
                raise WindowError("coefficient stored above valid_hi")
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        k = 0
        while k < len(coeffs) and coeffs[k] == 0:
            k += 1
        if k == len(coeffs):
            coeffs = []
            # all-zero: zero is known everywhere up to valid_hi
            lo = 0 if vh == INF else vh + 1
        else:
            coeffs = coeffs[k:]
            lo += k
        mirrored = bool(self.mirrored)
        if vh == INF and mirrored:
            if coeffs:
                lo = -(lo + len(coeffs) - 1)
                coeffs = coeffs[::-1]
            mirrored = False
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "coeffs", tuple(coeffs))
        object.__setattr__(self, "valid_hi", vh)
        object.__setattr__(self, "mirrored", mirrored)

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, mode=EXACT):
        return cls(0, (), INF, mode)

    @classmethod
    def one(cls, mode=EXACT):
        return cls.monomial(0, 1, mode)

    @classmethod
    def monomial(cls, weight, coeff=1, mode=EXACT):
        return cls(weight, (coeff,), INF, mode)

    @classmethod
    def from_terms(cls, terms, mode=EXACT):
        """Finite character from ``{weight: coeff}`` or ``[(weight, coeff), ...]``."""
        items = terms.items() if isinstance(terms, dict) else terms
        acc = {}
        for w, c in items:
            acc[int(w)] = acc.get(int(w), 0) + c
        if not acc:
            return cls.zero(mode)
        lo, hi = min(acc), max(acc)
        return cls(lo, [acc.get(m, 0) for m in range(lo, hi + 1)], INF, mode)

    # -- inspection ---------------------------------------------------------

    @property
    def is_finite(self):
        return self.valid_hi == INF

    @property
    def is_zero(self):
        return not self.coeffs

    @property
    def hi(self):
        """Largest stored weight (stored orientation); ``lo - 1`` if empty."""
        return self.lo + len(self.coeffs) - 1

    @property
    def window(self):
        """Actual-weight interval on which coefficients are known."""
        if self.mirrored:
            return (-self.valid_hi, INF)
        return (-INF, self.valid_hi)

    def _stored(self, m):
        if m > self.valid_hi:
            raise WindowError(f"weight {m} above valid window ({self.valid_hi})")
        if self.lo <= m <= self.hi:
            return self.coeffs[m - self.lo]
        return _convert(self.mode)(0)

    def __getitem__(self, weight):
        return self._stored(-weight if self.mirrored else weight)

    def terms(self):
        """Nonzero ``(weight, coeff)`` pairs sorted by actual weight."""
        sign = -1 if self.mirrored else 1
        out = [(sign * (self.lo + j), c) for j, c in enumerate(self.coeffs) if c != 0]
        return sorted(out)

    def evaluate(self, theta):
        if not self.is_finite:
            raise WindowError("cannot evaluate a truncated series")
        return sum(complex(c) * complex(math.cos(w * theta), math.sin(w * theta))
                   for w, c in self.terms())

    def dimension(self):
        """Sum of multiplicities (value at theta=0) of a finite character."""
        if not self.is_finite:
            raise WindowError("dimension of a truncated series")
        return sum(self.coeffs)

    # -- unary transforms ---------------------------------------------------

    def mirror(self):
        """Negate every weight (theta -> -theta)."""
        if self.is_finite:
            return Character(-self.hi, self.coeffs[::-1], INF, self.mode) if self.coeffs else self
        return Character(self.lo, self.coeffs, self.valid_hi, self.mode, not self.mirrored)

    def truncate(self, order):
        """Forget stored coefficients above ``order`` (stored orientation)."""
        vh = min(self.valid_hi, order)
        keep = max(0, min(len(self.coeffs), vh - self.lo + 1))
        return Character(min(self.lo, vh + 1), self.coeffs[:keep], vh, self.mode,
                         self.mirrored)

    def to_float(self):
        return Character(self.lo, [float(c) for c in self.coeffs], self.valid_hi,
                         FLOAT, self.mirrored)

    def shift(self, weight):
        return char_mul(self, Character.monomial(weight, 1, self.mode))

    def max_abs(self):
        return max((abs(c) for c in self.coeffs), default=0)

    # -- operators ----------------------------------------------------------

    def __add__(self, other):
        return char_add(self, other)

    def __neg__(self):
        return Character(self.lo, [-c for c in self.coeffs], self.valid_hi, self.mode,
                         self.mirrored)

    def __sub__(self, other):
        return char_add(self, -other)

    def __mul__(self, other):
        if isinstance(other, Character):
            return char_mul(self, other)
        return Character(self.lo, [c * other for c in self.coeffs], self.valid_hi,
                         self.mode, self.mirrored)

    __rmul__ = __mul__

    def __repr__(self):
        vh = "inf" if self.is_finite else self.valid_hi
        tag = ", mirrored" if self.mirrored else ""
        body = " + ".join(f"{c}*q^{w}" for w, c in self.terms()) or "0"
        return f"Character({body}; valid<={vh}{tag}, {self.mode})"


def _common_mode(a, b):
    if a.mode != b.mode:
        raise ModeError(f"mode mismatch: {a.mode} vs {b.mode}")
    return a.mode


def _orientation(a, b):
    if a.is_finite:
        return b.mirrored
    if b.is_finite or a.mirrored == b.mirrored:
        return a.mirrored
    raise WindowError("cannot combine ascending and descending truncated series")


def _raw(c, mirrored):
    """(lo, coeffs, valid_hi) of ``c`` in the requested stored orientation."""
    if c.mirrored == mirrored:
        return c.lo, c.coeffs, c.valid_hi
    # only finite characters reach here, and those are stored unmirrored
    if not c.coeffs:
        return 0, (), INF
    return -c.hi, c.coeffs[::-1], INF


def char_add(a, b):
    mode = _common_mode(a, b)
    mir = _orientation(a, b)
    la, ca, va = _raw(a, mir)
    lb, cb, vb = _raw(b, mir)
    vh = min(va, vb)
    if not ca and not cb:
        return Character(0, (), vh, mode, mir) if vh == INF else Character(vh + 1, (), vh, mode, mir)
    lo = min(la if ca else lb, lb if cb else la)
    if vh != INF:
        lo = min(lo, vh + 1)
    top = max(la + len(ca) - 1, lb + len(cb) - 1)
    if vh != INF:
        top = min(top, vh)
    zero = _convert(mode)(0)
    out = []
    for m in range(lo, top + 1):
        x = ca[m - la] if la <= m < la + len(ca) else zero
        y = cb[m - lb] if lb <= m < lb + len(cb) else zero
        out.append(x + y)
    return Character(lo, out, vh, mode, mir)


def char_mul(a, b):
    mode = _common_mode(a, b)
    mir = _orientation(a, b)
    if (a.is_finite and a.is_zero) or (b.is_finite and b.is_zero):
        return Character.zero(mode)
    la, ca, va = _raw(a, mir)
    lb, cb, vb = _raw(b, mir)
    lo = la + lb
    vh = min(va + lb, vb + la)
    if not ca or not cb:
        return Character(lo, (), vh, mode, mir)
    if mode == FLOAT:
        prod = np.convolve(np.asarray(ca, dtype=float), np.asarray(cb, dtype=float)).tolist()
    else:
        prod = [Fraction(0)] * (len(ca) + len(cb) - 1)
        for i, x in enumerate(ca):
            if x == 0:
                continue
            for j, y in enumerate(cb):
                prod[i + j] += x * y
    if vh != INF:
        prod = prod[: max(0, vh - lo + 1)]
    return Character(lo, prod, vh, mode, mir)


def geometric_factor(lam, side="minus", order=DEFAULT_ORDER, mode=EXACT):
    """Expansion of one isotropy-weight denominator.

    On the minus side a positive weight gives ``q^lam/(1-q^lam)`` and a negative
    weight gives ``1/(1-q^|lam|)``, both expanded upward to weight ``order``.
    The plus side is the weight-negated minus series.
    """
    lam = int(lam)
    if lam == 0:
        raise ValueError("isotropy weights must be nonzero")
    if order < 0:
        raise ValueError("order must be >= 0")
    if side not in ("plus", "minus"):
        raise ValueError(f"side must be 'plus' or 'minus', got {side!r}")
    step = abs(lam)
    start = lam if lam > 0 else 0
    conv = _convert(mode)
    if start > order:
        series = Character(order + 1, (), order, mode)
    else:
        coeffs = [conv(1) if (m - start) % step == 0 else conv(0)
                  for m in range(start, order + 1)]
        series = Character(start, coeffs, order, mode)
    return series.mirror() if side == "plus" else series


@dataclass(frozen=True)
class Check:
    """Outcome of an order test; ``witness`` locates the first violation."""
    ok: bool
    witness: tuple | None = None

    def __bool__(self):
        return self.ok


def char_leq(a, b, tol=DEFAULT_TOL):
    """Coefficientwise ``a <= b`` on the common window.

    Witness is ``(weight, a_m, b_m)`` at the first failing weight, scanning in
    increasing stored order.
    """
    mode = _common_mode(a, b)
    mir = _orientation(a, b)
    la, ca, va = _raw(a, mir)
    lb, cb, vb = _raw(b, mir)
    # below lo both are known zero, so same-orientation windows always overlap;
    # opposite orientations were rejected by _orientation
    vh = min(va, vb)
    lo = min(la, lb)
    eps = 0 if mode == EXACT else tol
    top = max(la + len(ca) - 1, lb + len(cb) - 1)
    if vh != INF:
        top = min(top, vh)
    zero = _convert(mode)(0)
    for m in range(lo, top + 1):
        x = ca[m - la] if la <= m < la + len(ca) else zero
        y = cb[m - lb] if lb <= m < lb + len(cb) else zero
        if y - x < -eps:
            return Check(False, (-m if mir else m, x, y))
    return Check(True)


@dataclass(frozen=True)
class TPoly:
    """Polynomial ``sum_k coeffs[k] t^k`` with Character coefficients."""
    coeffs: tuple

    def __post_init__(self):
        coeffs = tuple(self.coeffs)
        if not coeffs:
            raise ValueError("TPoly needs at least one coefficient")
        modes = {c.mode for c in coeffs}
        if len(modes) > 1:
            raise ModeError("TPoly coefficients must share one mode")
        object.__setattr__(self, "coeffs", coeffs)

    @classmethod
    def zero(cls, n, mode=EXACT):
        return cls((Character.zero(mode),) * (n + 1))

    @property
    def n(self):
        return len(self.coeffs) - 1

    @property
    def mode(self):
        return self.coeffs[0].mode

    def __getitem__(self, k):
        return self.coeffs[k]

    def _padded(self, n):
        z = Character.zero(self.mode)
        return self.coeffs + (z,) * (n - self.n)

    def __add__(self, other):
        n = max(self.n, other.n)
        return TPoly(tuple(a + b for a, b in zip(self._padded(n), other._padded(n))))

    def __neg__(self):
        return TPoly(tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, TPoly):
            return TPoly(tuple(c * other for c in self.coeffs))
        out = [Character.zero(self.mode)] * (self.n + other.n + 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return TPoly(tuple(out))

    def at(self, t):
        """Evaluate at an integer (or rational) value of t."""
        acc = Character.zero(self.mode)
        for k, c in enumerate(self.coeffs):
            acc = acc + c * (t ** k)
        return acc

    def mirror(self):
        return TPoly(tuple(c.mirror() for c in self.coeffs))

    def truncate(self, order):
        return TPoly(tuple(c.truncate(order) for c in self.coeffs))

    def to_float(self):
        return TPoly(tuple(c.to_float() for c in self.coeffs))

    def max_abs(self):
        return max(c.max_abs() for c in self.coeffs)


def tpoly_div_1_plus_t(P):
    """Split ``P = (1 + t) Q + r`` with ``r`` free of t.

    ``Q`` is returned with the same length as ``P`` (its top coefficient is 0).
    """
    n = P.n
    Q = [Character.zero(P.mode)] * (n + 1)
    if n >= 1:
        Q[n - 1] = P[n]
        for k in range(n - 1, 0, -1):
            Q[k - 1] = P[k] - Q[k]
    remainder = P[0] - Q[0] if n >= 1 else P[0]
    return TPoly(tuple(Q)), remainder


def tpoly_is_nonneg(P, tol=DEFAULT_TOL):
    """True iff every t-coefficient is coefficientwise >= 0; witness ``(k, m, value)``."""
    for k, c in enumerate(P.coeffs):
        res = char_leq(Character.zero(c.mode), c, tol)
        if not res:
            m, _, value = res.witness
            return Check(False, (k, m, value))
    return Check(True)


def is_zero_char(c, tol=DEFAULT_TOL):
    if c.mode == EXACT:
        return c.is_zero
    return all(abs(x) <= tol for x in c.coeffs)
