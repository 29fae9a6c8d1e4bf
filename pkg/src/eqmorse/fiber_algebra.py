"""Exterior-algebra operators on the forms at one point of a Kahler manifold.

The fiber is Lambda^{*,*}(C^n), dimension 4^n.  Basis vectors are monomials
``dz^P ^ dzbar^Q`` with P, Q increasing index sets; basis index is
``(holmask << n) | antimask`` where bit k of a mask marks index k.  Fermionic
signs follow the mode order dz^1..dz^n, dzbar^1..dzbar^n.

The metric at the point is the identity.  Contractions are the adjoints of the
multiplications (``i_k = e_k^dagger``) and raised indices read
``i^k = i_{kbar}``, ``i^{kbar} = i_k``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np
from scipy.linalg import expm

MAX_N = 4


@dataclass(frozen=True)
class FermionOps:
    n: int
    e: tuple       # multiplication by dz^k
    ebar: tuple    # multiplication by dzbar^k
    i: tuple       # contraction with d/dz^k
    ibar: tuple    # contraction with d/dzbar^k

    @property
    def dim(self):
        return 4 ** self.n


@dataclass(frozen=True)
class LambdaOps:
    plus: np.ndarray
    minus: np.ndarray
    one: np.ndarray
    two: np.ndarray
    three: np.ndarray

    def triple(self):
        return (self.one, self.two, self.three)


def _check_n(n):
    if not 1 <= n <= MAX_N:
        raise ValueError(f"fiber dimension n must be in 1..{MAX_N}, got {n}")


def basis_bidegrees(n):
    """(p, q) bidegree of every basis monomial, in basis order."""
    mask = (1 << n) - 1
    return [(bin(idx >> n).count("1"), bin(idx & mask).count("1")) for idx in range(4 ** n)]


def _occupation(idx, n):
    hol, anti = idx >> n, idx & ((1 << n) - 1)
    return hol | (anti << n)


def _index(occ, n):
    hol, anti = occ & ((1 << n) - 1), occ >> n
    return (hol << n) | anti


def build_fermion_ops(n):
    _check_n(n)
    dim = 4 ** n
    creators = []
    for mode in range(2 * n):
        m = np.zeros((dim, dim))
        bit = 1 << mode
        for idx in range(dim):
            occ = _occupation(idx, n)
            if occ & bit:
                continue
            sign = -1.0 if bin(occ & (bit - 1)).count("1") % 2 else 1.0
            m[_index(occ | bit, n), idx] = sign
        creators.append(m)
    e, ebar = tuple(creators[:n]), tuple(creators[n:])
    return FermionOps(n, e, ebar, tuple(x.T.copy() for x in e), tuple(x.T.copy() for x in ebar))


def anticommutator_defect(ops):
    """Max deviation from {e^k, i_l} = delta, {ebar^k, ibar_l} = delta, others 0."""
    n = ops.n
    creators = ops.e + ops.ebar
    annihilators = ops.i + ops.ibar
    eye = np.eye(ops.dim)
    worst = 0.0
    for a, b in itertools.product(range(2 * n), repeat=2):
        x, y = creators[a], annihilators[b]
        worst = max(worst, np.abs(x @ y + y @ x - (eye if a == b else 0)).max())
        worst = max(worst, np.abs(creators[a] @ creators[b] + creators[b] @ creators[a]).max())
        worst = max(worst, np.abs(annihilators[a] @ annihilators[b]
                                  + annihilators[b] @ annihilators[a]).max())
    return worst


def standard_sigma(n):
    """Coefficients sigma_{k lbar} of the flat Kahler form (i * identity)."""
    return 1j * np.eye(n)


def random_sigma(n, rng):
    """A random real (1,1)-form: i*sigma is a random Hermitian matrix."""
    h = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    return -1j * (h + h.conj().T) / 2


def check_sigma(sigma):
    sigma = np.asarray(sigma, dtype=complex)
    if sigma.ndim != 2 or sigma.shape[0] != sigma.shape[1]:
        raise ValueError("sigma must be a square matrix")
    herm = 1j * sigma
    if not np.allclose(herm, herm.conj().T, atol=1e-12):
        raise ValueError("i*sigma must be Hermitian (real-valued (1,1)-form)")
    return sigma


def _comm(a, b):
    return a @ b - b @ a


def lambda_ops(sigma, ops=None):
    """Lambda_+, Lambda_-, Lambda_1..3 of a real (1,1)-form."""
    sigma = check_sigma(sigma)
    n = sigma.shape[0]
    ops = build_fermion_ops(n) if ops is None else ops
    if ops.n != n:
        raise ValueError(f"sigma is {n}x{n} but operators are for n={ops.n}")
    pairs = list(itertools.product(range(n), repeat=2))
    plus = sum(sigma[k, l] * ops.e[k] @ ops.ebar[l] for k, l in pairs)
    minus = -sum(sigma[k, l] * ops.ibar[k] @ ops.i[l] for k, l in pairs)
    three = -0.25j * sum(sigma[k, l] * (_comm(ops.e[k], ops.i[l]) + _comm(ops.ebar[l], ops.ibar[k]))
                         for k, l in pairs)
    return LambdaOps(plus, minus, (plus + minus) / 2, -0.5j * (plus - minus), three)


_EPS = np.zeros((3, 3, 3))
for _p in itertools.permutations(range(3)):
    _EPS[_p] = np.linalg.det(np.eye(3)[list(_p)])


def _triplet_defect(left, right):
    worst = 0.0
    for a, b in itertools.product(range(3), repeat=2):
        target = 1j * sum(_EPS[a, b, c] * right[c] for c in range(3))
        worst = max(worst, np.linalg.norm(_comm(left[a], right[b]) - target, 2))
    return worst


def su2_commutator_defect(n, seed=0, sigma=None):
    """Largest spectral-norm violation of [L_a, L_b] = i eps L_c and [L_a, L_b(sigma)] = i eps L_c(sigma)."""
    _check_n(n)
    ops = build_fermion_ops(n)
    std = lambda_ops(standard_sigma(n), ops).triple()
    if sigma is None:
        sigma = random_sigma(n, np.random.default_rng(seed))
    gen = lambda_ops(sigma, ops).triple()
    return max(_triplet_defect(std, std), _triplet_defect(std, gen))


def lambda3_grading_check(n, tol=1e-12):
    """Lambda_3 is diag((p+q-n)/2) on the bigraded basis and [L_3, L_pm] = +-L_pm."""
    _check_n(n)
    lam = lambda_ops(standard_sigma(n))
    expected = np.diag([(p + q - n) / 2 for p, q in basis_bidegrees(n)])
    if not np.array_equal(lam.three, expected):
        return False
    return (np.abs(_comm(lam.three, lam.plus) - lam.plus).max() < tol
            and np.abs(_comm(lam.three, lam.minus) + lam.minus).max() < tol)


def su2_element(a, alpha, n):
    """S_a(alpha) = exp(i alpha Lambda_a) for the flat Kahler form; a in {1, 2, 3}."""
    lam = lambda_ops(standard_sigma(n)).triple()[a - 1]
    return expm(1j * alpha * lam)


def weight_sigma(weights):
    """(1,1)-form with coefficients i*lam_k on the diagonal."""
    return 1j * np.diag(np.asarray(weights, dtype=float))


def b2_fermionic(weights, T, ops=None):
    """Zeroth-order part of B^2: T sum_k i lam_k (e^k ebar^k - i^k i^kbar)."""
    ops = build_fermion_ops(len(weights)) if ops is None else ops
    return T * sum(1j * lam * (ops.e[k] @ ops.ebar[k] - ops.ibar[k] @ ops.i[k])
                   for k, lam in enumerate(weights))


def c2_fermionic(weights, T, ops=None):
    """Zeroth-order part of C^2: -T/2 sum_k lam_k ([e^k, i_k] + [ebar^k, ibar_k])."""
    ops = build_fermion_ops(len(weights)) if ops is None else ops
    return -0.5 * T * sum(lam * (_comm(ops.e[k], ops.i[k]) + _comm(ops.ebar[k], ops.ibar[k]))
                          for k, lam in enumerate(weights))


def rotation(weights, theta):
    """Circle action on forms: dzbar^k picks up e^{i lam_k theta}, dz^k the inverse phase."""
    n = len(weights)
    lam = np.asarray(weights, dtype=float)
    phases = []
    for idx in range(4 ** n):
        hol, anti = idx >> n, idx & ((1 << n) - 1)
        w = sum(lam[k] * (((anti >> k) & 1) - ((hol >> k) & 1)) for k in range(n))
        phases.append(np.exp(1j * w * theta))
    return np.diag(phases)


def antiholomorphic_block(n, degree=None):
    """Basis indices of (0, q) forms, optionally restricted to q = degree."""
    return [idx for idx, (p, q) in enumerate(basis_bidegrees(n))
            if p == 0 and (degree is None or q == degree)]
