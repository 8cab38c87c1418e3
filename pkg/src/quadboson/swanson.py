"""Closed forms for the generalized Swanson oscillator and its coupled twin.

One mode: H = (a^dag a + a a^dag)/2 + alpha a^2 + beta a^dag^2 at unit
base frequency. Two modes: two identical copies coupled by
gamma (a_1 a_2^dag + a_1^dag a_2). Both admit closed-form eigenvalues,
ladder operators, and (for one mode) an algebraic Bogoliubov-type map
that rotates the operator into a plain number-operator form, together
with the generator of the similarity transformation.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg as sla

from .algebra import (
    BosonBasis,
    CanonicalMap,
    QuadraticForm,
    build_quadratic,
    commutator_linear,
    commutator_matrix,
)
from .spectral import (
    LOWERING,
    RAISING,
    ExceptionalPointError,
    LadderOperator,
    decompose,
)

_GENERATOR_SYMMETRY_TOL = 1e-9


@dataclass(frozen=True)
class OneModeParams:
    alpha: complex
    beta: complex

    def __post_init__(self):
        object.__setattr__(self, "alpha", complex(self.alpha))
        object.__setattr__(self, "beta", complex(self.beta))


@dataclass(frozen=True)
class TwoModeParams:
    alpha: complex
    beta: complex
    gamma: float

    def __post_init__(self):
        object.__setattr__(self, "alpha", complex(self.alpha))
        object.__setattr__(self, "beta", complex(self.beta))
        g = complex(self.gamma)
        if g.imag != 0.0:
            raise ValueError(f"coupling gamma must be real, got {self.gamma!r}")
        object.__setattr__(self, "gamma", g.real)


def one_mode(params: OneModeParams) -> QuadraticForm:
    """Coefficient form of the one-mode oscillator; offset normalizes to zero."""
    return build_quadratic(
        BosonBasis(1),
        [(2, 1, 1.0), (1, 1, params.alpha), (2, 2, params.beta)],
        offset=0.5,
    )


def one_mode_lambdas(params: OneModeParams) -> tuple[complex, complex]:
    """Adjoint eigenvalues -/+ sqrt(1 - 4 alpha beta), principal branch."""
    root = np.sqrt(complex(1.0 - 4.0 * params.alpha * params.beta))
    return -root, root


def _unit(vec: np.ndarray) -> np.ndarray:
    return vec / np.linalg.norm(vec)


def one_mode_ladders(params: OneModeParams) -> tuple[LadderOperator, LadderOperator]:
    """Closed-form lowering/raising pair, normalized to [Z1, Z2] = 1.

    The lowering vector is proportional to (1, (1 - sqrt(1-4ab))/(2a)) and
    keeps unit norm; the raising member absorbs the normalization scale.
    alpha = 0 falls back to the generic eigen-decomposition (the closed
    form divides by alpha), and the coalescent case raises.
    """
    alpha, beta = params.alpha, params.beta
    if alpha == 0:
        dec = decompose(one_mode(params))
        return dec.pairs[0]
    disc = complex(1.0 - 4.0 * alpha * beta)
    if disc == 0:
        raise ExceptionalPointError(
            "ladder operators coalesce at alpha*beta = 1/4 (exceptional point)"
        )
    root = np.sqrt(disc)
    u = commutator_matrix(BosonBasis(1))
    low = _unit(np.array([1.0, (1.0 - root) / (2.0 * alpha)], dtype=complex))
    high = np.array([1.0, (1.0 + root) / (2.0 * alpha)], dtype=complex)
    high = high / commutator_linear(low, high, u)
    return (LadderOperator(-root, low, LOWERING), LadderOperator(root, high, RAISING))


def bogoliubov_map(params: OneModeParams, s11: float) -> CanonicalMap:
    """Closed-form canonical map sending the oscillator to number-operator form.

    The map solves the unit-determinant condition together with the two
    requirements that the transformed operator commute twice with a and
    with a^dag; s11 > 0 real fixes the leftover gauge. Undefined at the
    exceptional point alpha*beta = 1/4 and for beta = 0 (the closed form
    divides by beta; build the map from the ladder eigenvectors instead).
    """
    s = complex(s11)
    if s.imag != 0.0 or s.real <= 0.0:
        raise ValueError(f"s11 must be a positive real number, got {s11!r}")
    s11 = s.real
    alpha, beta = params.alpha, params.beta
    if beta == 0:
        raise ValueError(
            "beta = 0 degenerates the closed-form map coefficients; "
            "assemble a canonical map from one_mode_ladders instead"
        )
    disc = complex(1.0 - 4.0 * alpha * beta)
    if disc == 0:
        raise ExceptionalPointError(
            "canonical transform undefined at alpha*beta = 1/4 (exceptional point)"
        )
    if disc.imag == 0.0 and disc.real < 0.0:
        raise ValueError(
            "1 - 4*alpha*beta lies on the negative real axis; the principal "
            "square root branch does not yield a real-gauge map here"
        )
    root = np.sqrt(disc)
    s12 = -beta / (s11 * root)
    s21 = (s11 * root - s11) / (2.0 * beta)
    s22 = 1.0 / (2.0 * s11 * root) + 1.0 / (2.0 * s11)
    return CanonicalMap(np.array([[s11, s12], [s21, s22]], dtype=complex))


def generator_from_map(cmap: CanonicalMap) -> np.ndarray:
    """Adjoint representation of the map generator, log(S^t) principal branch.

    The generator of S = exp(Q) satisfies S^t = exp(Q_rep) for the adjoint
    representation Q_rep of the quadratic operator Q; its coefficient
    matrix is recovered as -Q_rep u / 2 and must come out symmetric.
    """
    st = cmap.matrix.T
    eig = np.linalg.eigvals(st)
    on_cut = (np.abs(eig.imag) < 1e-14 * np.maximum(1.0, np.abs(eig))) & (eig.real <= 0.0)
    if np.any(on_cut):
        raise ValueError(
            "map matrix has an eigenvalue on the closed negative real axis; "
            "the principal logarithm is undefined -- rebuild the map with a "
            "different s11 gauge"
        )
    q_rep = np.asarray(sla.logm(st), dtype=complex)
    u = commutator_matrix(cmap.basis)
    gq = -0.5 * q_rep @ u
    asym = np.max(np.abs(gq - gq.T))
    if asym > _GENERATOR_SYMMETRY_TOL:
        raise ValueError(
            f"recovered generator coefficients are not symmetric (defect {asym:.3e}); "
            "the map is not canonical to working precision"
        )
    return q_rep


def generator_coeffs(cmap: CanonicalMap) -> QuadraticForm:
    """Quadratic form of the map generator (coefficients -log(S^t) u / 2)."""
    q_rep = generator_from_map(cmap)
    u = commutator_matrix(cmap.basis)
    gq = -0.5 * q_rep @ u
    return QuadraticForm(cmap.basis, 0.5 * (gq + gq.T), 0.0)


def two_mode(params: TwoModeParams) -> QuadraticForm:
    """Coefficient form of the coupled pair; the +1 constant is absorbed."""
    alpha, beta, gamma = params.alpha, params.beta, params.gamma
    return build_quadratic(
        BosonBasis(2),
        [
            (3, 1, 1.0), (4, 2, 1.0),
            (1, 1, alpha), (2, 2, alpha),
            (3, 3, beta), (4, 4, beta),
            (1, 4, gamma), (3, 2, gamma),
        ],
        offset=1.0,
    )


def two_mode_lambdas(params: TwoModeParams) -> tuple[complex, complex, complex, complex]:
    """Adjoint eigenvalues -w+, -w-, +w-, +w+ with w^2 = (gamma +/- 1)^2 - 4 alpha beta."""
    ab4 = 4.0 * params.alpha * params.beta
    wp = np.sqrt(complex((params.gamma + 1.0) ** 2 - ab4))
    wm = np.sqrt(complex((params.gamma - 1.0) ** 2 - ab4))
    return -wp, -wm, wm, wp


def two_mode_ladders(params: TwoModeParams):
    """Closed-form ladder quadruple (Z1, Z2, Z3, Z4), pairwise normalized.

    Z1/Z4 live in the symmetric mode combination at frequency w+, Z2/Z3 in
    the antisymmetric one at w-; [Z1, Z4] = [Z2, Z3] = 1 with the lowering
    members unit-normalized. alpha = 0 falls back to the generic solver; a
    vanishing frequency raises.
    """
    alpha, beta, gamma = params.alpha, params.beta, params.gamma
    if alpha == 0:
        dec = decompose(two_mode(params))
        (z1, z4), (z2, z3) = dec.pairs
        return z1, z2, z3, z4
    ab4 = 4.0 * alpha * beta
    disc_p = complex((gamma + 1.0) ** 2 - ab4)
    disc_m = complex((gamma - 1.0) ** 2 - ab4)
    if disc_p == 0 or disc_m == 0:
        raise ExceptionalPointError(
            "a ladder frequency vanishes: alpha*beta hits (gamma +/- 1)^2 / 4 "
            "(exceptional point)"
        )
    wp, wm = np.sqrt(disc_p), np.sqrt(disc_m)
    u = commutator_matrix(BosonBasis(2))

    t1 = (gamma + 1.0 - wp) / (2.0 * alpha)
    t4 = (gamma + 1.0 + wp) / (2.0 * alpha)
    v2 = (1.0 - gamma - wm) / (2.0 * alpha)
    v3 = (1.0 - gamma + wm) / (2.0 * alpha)

    z1 = _unit(np.array([1.0, 1.0, t1, t1], dtype=complex))
    z2 = _unit(np.array([1.0, -1.0, v2, -v2], dtype=complex))
    z3 = np.array([1.0, -1.0, v3, -v3], dtype=complex)
    z4 = np.array([1.0, 1.0, t4, t4], dtype=complex)
    z3 = z3 / commutator_linear(z2, z3, u)
    z4 = z4 / commutator_linear(z1, z4, u)
    return (
        LadderOperator(-wp, z1, LOWERING),
        LadderOperator(-wm, z2, LOWERING),
        LadderOperator(wm, z3, RAISING),
        LadderOperator(wp, z4, RAISING),
    )


def two_mode_ep_locus(gamma: float) -> tuple[float, float]:
    """Products alpha*beta where each two-mode frequency vanishes."""
    return ((gamma + 1.0) ** 2 / 4.0, (gamma - 1.0) ** 2 / 4.0)


def pt_conjugate(form: QuadraticForm) -> QuadraticForm:
    """Form with conjugated coefficients; parity-time flips (alpha, beta) to conjugates."""
    return QuadraticForm(form.basis, np.conj(form.coeffs), np.conj(form.offset))


def is_pt_symmetric(form: QuadraticForm) -> bool:
    """True when the form is a fixed point of pt_conjugate (real coefficients)."""
    mate = pt_conjugate(form)
    return bool(
        np.array_equal(form.coeffs, mate.coeffs) and form.offset == mate.offset
    )
