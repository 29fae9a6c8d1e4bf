"""Independent brute-force oracles shared by the tests.

Nothing here calls the series machinery of the package; coefficients are
counted by enumerating exponent vectors directly.
"""
import itertools
import math
import random

from eqmorse.character import Character
from eqmorse.geometry import FixedPoint, ManifoldModel


def _exponent_vectors(steps, budget):
    """All j >= 0 with sum_k j_k * steps[k] <= budget."""
    if not steps:
        yield ()
        return
    head, rest = steps[0], steps[1:]
    for j in range(budget // head + 1):
        for tail in _exponent_vectors(rest, budget - j * head):
            yield (j,) + tail


def brute_minus(model, order):
    """{degree: {weight: count}} for weights <= order, by monomial counting.

    Minus side: weight lam > 0 contributes q^lam + q^2lam + ..., weight lam < 0
    contributes 1 + q^|lam| + ...; the point sits in degree n - #negative.
    """
    out = {k: {} for k in range(model.n + 1)}
    for p in model.fixed_points:
        deg = model.n - sum(1 for l in p.weights if l < 0)
        base = sum(l for l in p.weights if l > 0)
        steps = [abs(l) for l in p.weights]
        for e, mult in p.fiber.terms():
            start = e + base
            if start > order:
                continue
            for js in _exponent_vectors(steps, order - start):
                m = start + sum(j * s for j, s in zip(js, steps))
                out[deg][m] = out[deg].get(m, 0) + mult
    return out


def brute_plus(model, order):
    """Plus side, counted directly: lam > 0 gives 1 + q^-lam + ..., lam < 0 gives q^lam + q^2lam + ...

    The point sits in degree #negative; weights >= -order are kept.
    """
    out = {k: {} for k in range(model.n + 1)}
    for p in model.fixed_points:
        deg = sum(1 for l in p.weights if l < 0)
        base = sum(l for l in p.weights if l < 0)
        steps = [abs(l) for l in p.weights]
        for e, mult in p.fiber.terms():
            start = e + base
            if start < -order:
                continue
            for js in _exponent_vectors(steps, start + order):
                m = start - sum(j * s for j, s in zip(js, steps))
                out[deg][m] = out[deg].get(m, 0) + mult
    return out


def monomial_sections(k, lam0):
    """H^0 and H^1 of O(k) on CP^1 as weight -> multiplicity dicts.

    Sections in the affine chart are z^j, 0 <= j <= k; H^1 is spanned by the
    Laurent monomials z^j with k < j < 0.  z carries weight -lam0.
    """
    h0, h1 = {}, {}
    for j in range(min(k, -1) - 1, max(k, 0) + 1):
        if 0 <= j <= k:
            h0[-j * lam0] = h0.get(-j * lam0, 0) + 1
        if k < j < 0:
            h1[-j * lam0] = h1.get(-j * lam0, 0) + 1
    return h0, h1


def random_model(rng, n_max=3, weight_max=4, points_max=3):
    n = rng.randint(1, n_max)
    dim = rng.randint(1, 2)
    pts = []
    for i in range(rng.randint(1, points_max)):
        weights = tuple(rng.choice([-1, 1]) * rng.randint(1, weight_max) for _ in range(n))
        fiber = {}
        while sum(fiber.values()) < dim:
            w = rng.randint(-3, 3)
            fiber[w] = fiber.get(w, 0) + 1
        pts.append(FixedPoint(f"p{i}", weights, Character.from_terms(fiber)))
    return ManifoldModel(n, tuple(pts))


def random_models(count, seed=0, **kw):
    rng = random.Random(seed)
    return [random_model(rng, **kw) for _ in range(count)]


def finite_T_oracle(model, T, order, b_max=None):
    """Finite-T coefficients summed term by term over (p, I, a, b).

    Expands each 1/((1-q^|lam|)(1-eps q^-|lam|)) as a double sum and adds every
    (a, b) monomial with weight <= order; b is cut where eps^b < 1e-17.
    """
    out = {k: {} for k in range(model.n + 1)}
    for p in model.fixed_points:
        w = p.weights
        n = len(w)
        eps = [math.exp(-2 * T * abs(l)) for l in w]
        bmax = [b_max or max(1, math.ceil(math.log(1e-17) / math.log(e))) for e in eps]
        for r in range(n + 1):
            for I in itertools.combinations(range(n), r):
                pref = math.exp(-T * sum(abs(l) - (l if j in I else -l) for j, l in enumerate(w)))
                shift = sum(w[j] for j in I)
                for e, mult in p.fiber.terms():
                    for bs in itertools.product(*(range(b + 1) for b in bmax)):
                        start = e + shift - sum(b * abs(l) for b, l in zip(bs, w))
                        if start > order:
                            continue
                        weight_b = math.prod(x ** b for x, b in zip(eps, bs))
                        for js in _exponent_vectors([abs(l) for l in w], order - start):
                            m = start + sum(j * abs(l) for j, l in zip(js, w))
                            out[r][m] = out[r].get(m, 0.0) + mult * pref * weight_b
    return out
