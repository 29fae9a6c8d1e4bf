"""Equivariant traces of the flat harmonic-oscillator model at a fixed point.

Closed forms come from Mehler's kernel; the independent checks are the
Landau-level spectral sum and a polar quadrature of the kernel diagonal.
"""
from __future__ import annotations

import cmath
import itertools
import math
from dataclasses import dataclass

import numpy as np

from . import fiber_algebra as fa
from .character import DEFAULT_ORDER, geometric_factor

SPECTRAL_TOL = 1e-13


@dataclass(frozen=True)
class TraceValue:
    value: complex
    tail_bound: float = 0.0

    def __post_init__(self):
        if self.tail_bound < 0:
            raise ValueError("tail_bound must be nonnegative")


def _level_tail(r, cutoff):
    """Sum_{N > cutoff} (N+1) r^N."""
    return r ** (cutoff + 1) * ((cutoff + 2) - (cutoff + 1) * r) / (1 - r) ** 2


def default_cutoff(lam, T, tol=SPECTRAL_TOL):
    """Smallest level bound whose geometric tail (times e^{-T|lam|}) is below tol."""
    r = math.exp(-T * abs(lam))
    cutoff = max(1, math.ceil(math.log(tol) / math.log(r)))
    while r * _level_tail(r, cutoff) >= tol:
        cutoff += 1
    return cutoff


@dataclass(frozen=True)
class OscillatorSpec:
    lam: int
    T: float
    theta: float
    cutoff: int | None = None
    form_degree: int = 0

    def __post_init__(self):
        if self.lam == 0:
            raise ValueError("lam must be nonzero")
        if not self.T > 0:
            raise ValueError("T must be positive")
        if self.form_degree not in (0, 1):
            raise ValueError("form_degree must be 0 or 1")
        if self.cutoff is None:
            object.__setattr__(self, "cutoff", default_cutoff(self.lam, self.T))
        elif math.exp(-self.T * abs(self.lam) * self.cutoff) >= SPECTRAL_TOL:
            raise ValueError(f"cutoff {self.cutoff} leaves e^(-T|lam| cutoff) >= {SPECTRAL_TOL}")


def _denominator(lam, T, theta):
    a = abs(lam)
    return (1 - cmath.exp(-(T - 1j * theta) * a)) * (1 - cmath.exp(-(T + 1j * theta) * a))


def _zeroth_order_factor(lam, T, theta, degree):
    # 0-forms are shifted by T*lam; dzbar carries the phase e^{i lam theta}
    return cmath.exp(-T * lam) if degree == 0 else cmath.exp(1j * lam * theta)


def mehler_trace_factor(spec):
    """Tr over Omega^{0,degree}(C) of R(theta) exp(-C^2) for one weight."""
    lam, T, theta = spec.lam, spec.T, spec.theta
    val = math.exp(-T * abs(lam)) * _zeroth_order_factor(lam, T, theta, spec.form_degree)
    return TraceValue(val / _denominator(lam, T, theta), 0.0)


def _landau_sum(lam, T, theta, cutoff):
    """Sum over (a, b), a+b <= cutoff, of e^{-T|lam|(a+b+1)} e^{i|lam|(a-b)theta}."""
    a = abs(lam)
    idx = np.arange(cutoff + 1)
    A, B = np.meshgrid(idx, idx, indexing="ij")
    keep = (A + B) <= cutoff
    energy = np.exp(-T * a * (A + B + 1))[keep]
    phase = (a * (A - B) * theta)[keep]
    re = math.fsum((energy * np.cos(phase)).tolist())
    im = math.fsum((energy * np.sin(phase)).tolist())
    tail = math.exp(-T * a) * _level_tail(math.exp(-T * a), cutoff)
    return complex(re, im), tail


def spectral_trace_factor(spec):
    """Same trace as :func:`mehler_trace_factor`, summed level by level."""
    val, tail = _landau_sum(spec.lam, spec.T, spec.theta, spec.cutoff)
    z = _zeroth_order_factor(spec.lam, spec.T, spec.theta, spec.form_degree)
    return TraceValue(val * z, tail * abs(z))


def mehler_kernel(z, zp, T, lam):
    """Heat kernel of exp(-(Delta/2 + T^2 lam^2 |z|^2 / 2)) on C."""
    if lam == 0 or not T > 0:
        raise ValueError("need lam != 0 and T > 0")
    w = T * abs(lam)
    s, t = math.sinh(w), math.tanh(w)
    z, zp = complex(z), complex(zp)
    expo = -w * ((abs(z) ** 2 + abs(zp) ** 2) / (2 * t) - (z.conjugate() * zp).real / s)
    return w / (2 * math.pi * s) * math.exp(expo)


def scalar_trace(lam, T, theta):
    """Closed form of Tr[R(theta) exp(-H)] for the bare 2D oscillator."""
    return math.exp(-T * abs(lam)) / _denominator(lam, T, theta)


def kernel_trace_quadrature(lam, T, theta, radius=None, nodes=64):
    """Polar-grid integral of K(e^{-i lam theta} z, z) over C.

    Radial Gauss-Legendre nodes on [0, radius], uniform angular nodes.  The
    tail_bound is the analytic Gaussian mass outside the disc.
    """
    if nodes < 2:
        raise ValueError("need at least 2 nodes per dimension")
    w = T * abs(lam)
    # diagonal exponent is -c |z|^2
    c = w * (math.cosh(w) - math.cos(lam * theta)) / math.sinh(w)
    amp = w / (2 * math.pi * math.sinh(w))
    if radius is None:
        radius = math.sqrt(-math.log(1e-16) / c)
    x, wx = np.polynomial.legendre.leggauss(nodes)
    r = 0.5 * radius * (x + 1)
    wr = 0.5 * radius * wx
    phi = 2 * math.pi * np.arange(nodes) / nodes
    rot = cmath.exp(-1j * lam * theta)
    total = 0.0
    for ri, wi in zip(r, wr):
        zs = ri * np.exp(1j * phi)
        vals = [mehler_kernel(rot * zz, zz, T, lam) for zz in zs]
        total += wi * ri * (2 * math.pi / nodes) * math.fsum(vals)
    tail = math.pi * amp / c * math.exp(-c * radius ** 2)
    return TraceValue(complex(total), tail)


def _trace_terms(weights, T, theta, k):
    """Closed form of the degree-k trace; theta may be complex."""
    n = len(weights)
    denom = 1
    for lam in weights:
        a = abs(lam)
        denom *= (1 - cmath.exp(-(T - 1j * theta) * a)) * (1 - cmath.exp(-(T + 1j * theta) * a))
    total = 0
    for I in itertools.combinations(range(n), k):
        expo = (-T * sum(abs(l) for l in weights)
                - T * sum(l for j, l in enumerate(weights) if j not in I)
                + 1j * theta * sum(weights[j] for j in I))
        total += cmath.exp(expo)
    return total / denom


def model_trace(point, T, theta, k):
    """Tr over Omega^{0,k}(T_pM) of R_p(theta) exp(-C^2) for all n weights."""
    weights = point.weights if hasattr(point, "weights") else tuple(point)
    if not 0 <= k <= len(weights):
        raise ValueError("degree out of range")
    return TraceValue(_trace_terms(weights, T, theta, k), 0.0)


def model_trace_factored(point, T, theta, k):
    """Same trace as a sum over I of products of single-weight factors."""
    weights = point.weights if hasattr(point, "weights") else tuple(point)
    total = 0
    for I in itertools.combinations(range(len(weights)), k):
        prod = 1
        for j, lam in enumerate(weights):
            prod *= mehler_trace_factor(OscillatorSpec(lam, T, theta, form_degree=int(j in I))).value
        total += prod
    return TraceValue(total, 0.0)


def deformed_term(point, T, theta, k):
    """Degree-k finite-T summand of one fixed point evaluated at real theta.

    This is the degree-k trace with theta shifted to theta - iT, times E_p(theta):
    ``sum_{|I|=k} E_p e^{-T sum|lam| - T sum_{not I} lam + (T + i theta) sum_I lam}
    / prod[(1 - e^{i|lam|theta})(1 - e^{-|lam|(2T + i theta)})]``.
    """
    return point.fiber.evaluate(theta) * _trace_terms(point.weights, T, theta - 1j * T, k)


def strong_limit_term(point, order=DEFAULT_ORDER):
    """Surviving (p, I) pair as T -> inf: I* = positive weights (0-based), t-exponent |I*|.

    The term is E_p q^{sum_{lam>0} lam} / prod(1 - q^|lam|) expanded to ``order``.
    """
    I_star = frozenset(j for j, l in enumerate(point.weights) if l > 0)
    fiber = point.fiber.shift(sum(l for l in point.weights if l > 0))
    term = fiber
    depth = max(order - fiber.lo, 0)
    for lam in point.weights:
        term = term * geometric_factor(-abs(lam), "minus", depth)
    return I_star, (term.truncate(order), len(I_star))


def strong_limit_value(point, theta):
    """Closed-form value of the surviving term at real theta (off the poles)."""
    num = point.fiber.evaluate(theta) * cmath.exp(1j * theta * sum(l for l in point.weights if l > 0))
    den = 1
    for lam in point.weights:
        den *= 1 - cmath.exp(1j * abs(lam) * theta)
    return num / den


def _deformed_summand(point, T, theta, I):
    """One (p, I) summand of the finite-T series at real theta, without E_p."""
    w = point.weights
    pref = math.exp(-T * sum(abs(l) - (l if j in I else -l) for j, l in enumerate(w)))
    den = 1
    for lam in w:
        a = abs(lam)
        den *= (1 - cmath.exp(1j * a * theta)) * (1 - cmath.exp(-a * (2 * T + 1j * theta)))
    return pref * cmath.exp(1j * theta * sum(w[j] for j in I)) / den


def _cexpm1(z):
    """exp(z) - 1 accurate for small complex z."""
    y = z.imag
    return complex(math.expm1(z.real) * math.cos(y) - 2 * math.sin(y / 2) ** 2,
                   math.exp(z.real) * math.sin(y))


def _neg_log1m(x):
    """-log(1 - x), by its power series when |x| is small."""
    if abs(x) >= 0.5:
        return -cmath.log(1 - x)
    total, term, j = 0j, x, 1
    while abs(term) > 1e-18 * max(abs(total), 1e-300):
        total += term / j
        j += 1
        term *= x
    return total


def limit_gap(point, T, theta):
    """Max over t-degrees of |finite-T summand - T->inf limit| at real theta.

    The surviving pair is written as limit * (1/prod(1 - x_k) - 1) with
    x_k = e^{-|lam_k|(2T + i theta)}, so the small difference is not formed by
    cancellation.
    """
    w = point.weights
    star = frozenset(j for j, l in enumerate(w) if l > 0)
    E = point.fiber.evaluate(theta)
    worst = 0.0
    for k in range(len(w) + 1):
        gap = 0
        for I in itertools.combinations(range(len(w)), k):
            if frozenset(I) == star:
                log_inv = sum(_neg_log1m(cmath.exp(-abs(l) * (2 * T + 1j * theta))) for l in w)
                gap += strong_limit_value(point, theta) * _cexpm1(log_inv)
            else:
                gap += E * _deformed_summand(point, T, theta, I)
        worst = max(worst, abs(gap))
    return worst


def _bosonic_trace(weights, T, theta, cutoff):
    val, tail = 1.0, 0.0
    for lam in weights:
        c = cutoff if cutoff is not None else default_cutoff(lam, T)
        v, t = _landau_sum(lam, T, theta, c)
        tail = abs(val) * t + abs(v) * tail + t * tail
        val *= v
    return val, tail


def conjugation_trace_check(n, weights, T, theta, cutoff=None, tail_tol=1e-10):
    """Full equivariant traces over Omega^{*,*}(C^n) of exp(-B^2) and exp(-C^2).

    The bosonic part is the shared Landau sum; the fermionic zeroth-order parts
    are exponentiated as 4^n matrices and traced against the form rotation.
    """
    weights = tuple(weights)
    if len(weights) != n:
        raise ValueError("need exactly n weights")
    if n not in (1, 2):
        raise ValueError("conjugation check supports n = 1 or 2")
    bos, tail = _bosonic_trace(weights, T, theta, cutoff)
    if tail > tail_tol:
        raise ValueError(f"cutoff too small: tail bound {tail:.3e}")
    ops = fa.build_fermion_ops(n)
    rot = fa.rotation(weights, theta)
    out = []
    for fermionic in (fa.b2_fermionic, fa.c2_fermionic):
        heat = fa.expm(-fermionic(weights, T, ops))
        # |tr(R M)| <= dim * ||M||_2 bounds how the bosonic tail propagates
        scale = ops.dim * np.linalg.norm(heat, 2)
        out.append(TraceValue(complex(bos * np.trace(rot @ heat)), tail * scale))
    return tuple(out)


def antiholomorphic_trace(weights, T, theta, k, cutoff=None):
    """Degree-k (0,k)-form block of the full C^2 trace, built from matrices."""
    n = len(weights)
    ops = fa.build_fermion_ops(n)
    block = fa.antiholomorphic_block(n, k)
    mat = fa.rotation(weights, theta) @ fa.expm(-fa.c2_fermionic(weights, T, ops))
    bos, tail = _bosonic_trace(weights, T, theta, cutoff)
    return TraceValue(complex(bos * sum(mat[j, j] for j in block)), tail)
