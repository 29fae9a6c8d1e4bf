"""Fixed-point data of a circle action and the Morse-side series built from it.

The minus side (ascending q-series) is the canonical representation; every
plus-side quantity is obtained by reversing the action, building the minus
series, and negating weights.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

from .character import (
    DEFAULT_ORDER,
    DEFAULT_TOL,
    EXACT,
    FLOAT,
    Character,
    TPoly,
    WindowError,
    char_leq,
    geometric_factor,
    is_zero_char,
    tpoly_div_1_plus_t,
    tpoly_is_nonneg,
)

SIDES = ("plus", "minus")


class ModelError(ValueError):
    """Malformed fixed-point data."""


@dataclass(frozen=True)
class FixedPoint:
    name: str
    weights: tuple
    fiber: Character = field(default_factory=Character.one)

    def __post_init__(self):
        weights = tuple(int(w) for w in self.weights)
        if any(w == 0 for w in weights):
            raise ModelError(f"fixed point {self.name!r}: zero isotropy weight")
        fiber = self.fiber
        if not isinstance(fiber, Character):
            fiber = Character.from_terms(fiber)
        if not fiber.is_finite or fiber.mode != EXACT:
            raise ModelError(f"fixed point {self.name!r}: fiber must be a finite exact character")
        if any(c < 0 or c.denominator != 1 for c in fiber.coeffs):
            raise ModelError(f"fixed point {self.name!r}: fiber multiplicities must be integers >= 0")
        if fiber.is_zero:
            raise ModelError(f"fixed point {self.name!r}: fiber is zero")
        object.__setattr__(self, "weights", weights)
        object.__setattr__(self, "fiber", fiber)

    @property
    def n_neg(self):
        return orientation_index(self.weights)


@dataclass(frozen=True)
class ManifoldModel:
    n: int
    fixed_points: tuple

    def __post_init__(self):
        pts = tuple(self.fixed_points)
        if not pts:
            raise ModelError("fixed-point set must be non-empty")
        for p in pts:
            if len(p.weights) != self.n:
                raise ModelError(f"fixed point {p.name!r} has {len(p.weights)} weights, expected {self.n}")
        dims = {p.fiber.dimension() for p in pts}
        if len(dims) > 1:
            raise ModelError(f"fiber dimensions differ across fixed points: {sorted(dims)}")
        object.__setattr__(self, "fixed_points", pts)


@dataclass(frozen=True)
class CohomologyData:
    by_degree: tuple

    def __post_init__(self):
        chars = []
        for k, c in enumerate(self.by_degree):
            if not isinstance(c, Character):
                c = Character.from_terms(c)
            if not c.is_finite or c.mode != EXACT:
                raise ModelError(f"H^{k} must be a finite exact character")
            if any(x < 0 or x.denominator != 1 for x in c.coeffs):
                raise ModelError(f"H^{k} multiplicities must be integers >= 0")
            chars.append(c)
        object.__setattr__(self, "by_degree", tuple(chars))

    @property
    def n(self):
        return len(self.by_degree) - 1

    def as_tpoly(self):
        return TPoly(self.by_degree)

    def euler_character(self):
        return self.as_tpoly().at(-1)


@dataclass(frozen=True)
class Verdict:
    kind: str
    side: str
    Q: TPoly | None
    remainder: Character | None
    divisible: bool
    nonneg: bool
    witness: tuple | None = None
    degree: int | None = None

    @property
    def passed(self):
        return self.divisible and self.nonneg


def orientation_index(weights):
    """Number of negative isotropy weights."""
    if any(w == 0 for w in weights):
        raise ModelError("zero isotropy weight")
    return sum(1 for w in weights if w < 0)


def _check_side(side):
    if side not in SIDES:
        raise ValueError(f"side must be one of {SIDES}, got {side!r}")


def _series_product(finite, weights, order, mode):
    """``prod(finite) * prod_k 1/(1-q^|lam_k|)``-type product, exact up to ``order``.

    ``weights`` are fed to :func:`geometric_factor` on the minus side; their
    series start at weight >= 0, so expanding each to ``order - sum(lo(finite))``
    keeps the product valid through ``order``.
    """
    acc = Character.one(mode)
    for f in finite:
        acc = acc * f
    if acc.is_zero:
        return Character(order + 1, (), order, mode)
    depth = max(order - acc.lo, 0)
    for lam in weights:
        acc = acc * geometric_factor(lam, "minus", depth, mode)
    if acc.valid_hi < order:
        raise WindowError(f"product valid only to {acc.valid_hi} < {order}")
    return acc.truncate(order)


def point_series(point, order=DEFAULT_ORDER, mode=EXACT):
    """Minus-side contribution of one fixed point (without the power of t)."""
    fiber = point.fiber if mode == EXACT else point.fiber.to_float()
    return _series_product([fiber], point.weights, order, mode)


def _zero_upto(order, mode):
    return Character.zero(mode).truncate(order)


def strong_series(model, side="minus", order=DEFAULT_ORDER, _points=None):
    """Morse-side generating series ``sum_p t^{deg p} E_p prod(...)``.

    On the minus side fixed point p sits in t-degree ``n - n_p``; on the plus
    side in degree ``n_p``.
    """
    _check_side(side)
    if side == "plus":
        return strong_series(reverse_action(model), "minus", order, _points).mirror()
    coeffs = [_zero_upto(order, EXACT) for _ in range(model.n + 1)]
    for p in model.fixed_points:
        k = model.n - p.n_neg
        if _points is not None and k not in _points:
            continue
        coeffs[k] = coeffs[k] + point_series(p, order)
    return TPoly(tuple(coeffs))


def weak_bound(model, k, side="minus", order=DEFAULT_ORDER):
    """The t^k coefficient of :func:`strong_series`, bounding H^k."""
    if not 0 <= k <= model.n:
        raise ValueError(f"degree {k} out of range 0..{model.n}")
    return strong_series(model, side, order, _points={k})[k]


def atiyah_bott_series(model, order=DEFAULT_ORDER):
    """Alternating fixed-point sum: the minus series evaluated at t = -1."""
    return strong_series(model, "minus", order).at(-1)


def reverse_action(model):
    """Negate all isotropy and fiber weights."""
    pts = tuple(FixedPoint(p.name, tuple(-w for w in p.weights), p.fiber.mirror())
                for p in model.fixed_points)
    return ManifoldModel(model.n, pts)


def product_model(a, b):
    """Kunneth product: fixed points are pairs, weights concatenate, fibers multiply."""
    pts = tuple(FixedPoint(f"{p.name}*{r.name}", p.weights + r.weights, p.fiber * r.fiber)
                for p in a.fixed_points for r in b.fixed_points)
    return ManifoldModel(a.n + b.n, pts)


def product_cohomology(a, b):
    return CohomologyData((a.as_tpoly() * b.as_tpoly()).coeffs)


def point_model(fiber=None):
    fiber = Character.one() if fiber is None else fiber
    return ManifoldModel(0, (FixedPoint("p", (), fiber),))


def cp1_sections(k, lam0=1):
    """Cech enumeration of H^*(CP^1, O(k)) as characters.

    Laurent monomials z^j in the chart at the fixed point of weight +lam0 carry
    weight -j*lam0.  H^0 keeps 0 <= j <= k, H^1 keeps k < j < 0.
    """
    h0 = {-j * lam0: 1 for j in range(0, k + 1)}
    h1 = {-j * lam0: 1 for j in range(k + 1, 0)}
    return CohomologyData((Character.from_terms(h0), Character.from_terms(h1)))


def cp1_lift_weight(k, lam0=1):
    """Weight of the lifted fiber at the second fixed point (first normalized to 1).

    Locked against the Atiyah-Bott identity by brute-force search in the tests.
    """
    return -k * lam0


def cp1_model(k, lam0=1):
    """CP^1 with weights +lam0 / -lam0 and the line bundle O(k); returns (model, cohomology)."""
    if lam0 < 1:
        raise ValueError("lam0 must be a positive integer")
    model = ManifoldModel(1, (
        FixedPoint("p0", (lam0,), Character.one()),
        FixedPoint("p1", (-lam0,), Character.monomial(cp1_lift_weight(k, lam0))),
    ))
    return model, cp1_sections(k, lam0)


def _check_window(cohomology, side, order):
    for k, h in enumerate(cohomology.by_degree):
        if h.is_zero:
            continue
        weights = [w for w, _ in h.terms()]
        if side == "minus" and max(weights) > order:
            raise WindowError(f"H^{k} has weight {max(weights)} above order {order}")
        if side == "plus" and min(weights) < -order:
            raise WindowError(f"H^{k} has weight {min(weights)} below -order {-order}")


def certify(P, cohomology, kind, side, tol=DEFAULT_TOL):
    """Divide ``P - sum t^k H^k`` by (1+t) and test the quotient for positivity."""
    if cohomology.n != P.n:
        raise ModelError(f"cohomology has degrees 0..{cohomology.n}, model has n={P.n}")
    H = cohomology.as_tpoly()
    if P.mode == FLOAT:
        H = H.to_float()
    Q, r = tpoly_div_1_plus_t(P - H)
    nonneg = tpoly_is_nonneg(Q, tol)
    return Verdict(kind, side, Q, r, is_zero_char(r, tol), nonneg.ok, nonneg.witness)


def verify_strong(model, cohomology, side="minus", order=DEFAULT_ORDER):
    _check_side(side)
    _check_window(cohomology, side, order)
    return certify(strong_series(model, side, order), cohomology, "strong", side)


def verify_weak(model, cohomology, k, side="minus", order=DEFAULT_ORDER):
    _check_side(side)
    if cohomology.n != model.n:
        raise ModelError(f"cohomology has degrees 0..{cohomology.n}, model has n={model.n}")
    _check_window(cohomology, side, order)
    res = char_leq(cohomology.by_degree[k], weak_bound(model, k, side, order))
    return Verdict("weak", side, None, None, True, res.ok, res.witness, degree=k)


# -- finite-T deformation --------------------------------------------------

def _descending_tail(a, T, tail_eps):
    """``1/(1 - e^{-2Ta} q^{-a}) - 1`` truncated where the weight drops below tail_eps."""
    eps = math.exp(-2.0 * T * a)
    terms = {}
    j = 1
    while eps ** j >= tail_eps:
        terms[-j * a] = eps ** j
        j += 1
    return Character.from_terms(terms, FLOAT)


def _plus_one_product(tails):
    """``prod(1 + Y_k) - 1`` expanded without cancellation."""
    acc = Character.zero(FLOAT)
    for y in tails:
        acc = acc + y + acc * y
    return acc


def finite_T_prefactor(weights, I, T):
    """Real prefactor ``exp(-T sum|lam| - T sum_{k not in I} lam + T sum_{k in I} lam)``."""
    s = sum(abs(l) - (l if k in I else -l) for k, l in enumerate(weights))
    return math.exp(-T * s)


def surviving_set(weights):
    """Index set (0-based) of the positive weights: the term that survives T -> inf."""
    return frozenset(k for k, l in enumerate(weights) if l > 0)


def finite_T_excess(model, T, order=DEFAULT_ORDER, tail_eps=1e-12, points=None):
    """``finite_T_series - strong_series`` built from nonnegative pieces only.

    Every piece is a product of nonnegative series, so the difference is
    computed without cancellation and stays accurate when it is ~e^{-2T}.
    """
    if not T > 0:
        raise ValueError("T must be positive")
    if not tail_eps > 0:
        raise ValueError("tail_eps must be positive")
    n = model.n
    coeffs = [_zero_upto(order, FLOAT) for _ in range(n + 1)]
    for p in (model.fixed_points if points is None else points):
        fiber = p.fiber.to_float()
        tails = [_descending_tail(abs(l), T, tail_eps) for l in p.weights]
        full = Character.one(FLOAT) + _plus_one_product(tails)
        star = surviving_set(p.weights)
        for r in range(n + 1):
            for I in itertools.combinations(range(n), r):
                I = frozenset(I)
                shift = Character.monomial(sum(p.weights[k] for k in I), 1.0, FLOAT)
                asc = [-abs(l) for l in p.weights]
                if I == star:
                    extra = _plus_one_product(tails)
                    term = _series_product([fiber, shift, extra], asc, order, FLOAT)
                else:
                    pref = finite_T_prefactor(p.weights, I, T)
                    term = pref * _series_product([fiber, shift, full], asc, order, FLOAT)
                coeffs[r] = coeffs[r] + term
    return TPoly(tuple(coeffs))


def finite_T_series(model, T, order=DEFAULT_ORDER, tail_eps=1e-12):
    """Deformed fixed-point series at finite T (float mode).

    Sum over fixed points p and index sets I of
    ``t^|I| E_p exp(...) q^{sum_I lam} / prod[(1-q^|lam|)(1-e^{-2T|lam|} q^{-|lam|})]``.
    """
    return strong_series(model, "minus", order).to_float() + finite_T_excess(
        model, T, order, tail_eps)


def verify_finite_T(model, cohomology, T, order=DEFAULT_ORDER, tail_eps=1e-12, tol=DEFAULT_TOL):
    _check_window(cohomology, "minus", order)
    return certify(finite_T_series(model, T, order, tail_eps), cohomology, "finite-T", "minus", tol)


def distance_to_limit(model, T, order=DEFAULT_ORDER, rel_eps=1e-12):
    """Max-norm of finite_T_series - strong_series over all t-coefficients.

    The distance itself is ~e^{-2T lam_min}, so the tails are cut relative to
    that scale; an absolute cut would drop whole leading terms at large T.
    """
    scale = math.exp(-2.0 * T * min_weight_magnitude(model)) if model.n else 1.0
    return finite_T_excess(model, T, order, max(rel_eps * scale, 1e-300)).max_abs()


def min_weight_magnitude(model):
    return min(abs(l) for p in model.fixed_points for l in p.weights)
