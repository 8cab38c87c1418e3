"""Diagonalization of the adjoint representation into ladder operators.

The adjoint matrix of a quadratic boson form has eigenvalues in exact
+/- pairs. Each eigenvector supplies the coefficients of a ladder
operator Z with [H, Z] = lambda Z; conjugate pairs are normalized to
[Z_low, Z_high] = 1, which fixes the diagonal form of the operator and
its spectrum. Parameter points where the adjoint matrix is defective
(eigenvalue coalescence without enough eigenvectors) are exceptional
points, reported rather than diagonalized.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .algebra import QuadraticForm, adjoint_rep, commutator_linear, commutator_matrix

PAIR_TOL = 1e-8
CLUSTER_TOL = 1e-8
RANK_TOL = 1e-10
REALITY_TOL = 1e-9
COMMUTATOR_FLOOR = 1e-12

LOWERING = "lowering"
RAISING = "raising"


class Reality(enum.Enum):
    """Classification of an adjoint-representation spectrum."""

    ALL_REAL = "AllReal"
    COMPLEX = "Complex"
    EXCEPTIONAL_POINT = "ExceptionalPoint"


@dataclass(frozen=True, eq=False)
class LadderOperator:
    """Linear combination Z = sum_i coeffs[i] O_i with [H, Z] = eigenvalue * Z."""

    eigenvalue: complex
    coeffs: np.ndarray
    role: str

    def __post_init__(self):
        if self.role not in (LOWERING, RAISING):
            raise ValueError(f"role must be '{LOWERING}' or '{RAISING}', got {self.role!r}")
        vec = np.asarray(self.coeffs, dtype=complex)
        if vec.ndim != 1 or not np.any(vec):
            raise ValueError("coefficient vector must be 1-d and nonzero")
        object.__setattr__(self, "coeffs", vec)
        object.__setattr__(self, "eigenvalue", complex(self.eigenvalue))

    def residual(self, rep: np.ndarray) -> float:
        """Max-norm of (h - lambda I) c, the eigenpair defect."""
        return float(np.max(np.abs(rep @ self.coeffs - self.eigenvalue * self.coeffs)))


@dataclass(frozen=True, eq=False)
class EigenvalueCluster:
    value: complex
    algebraic: int
    geometric: int

    @property
    def defective(self) -> bool:
        return self.geometric < self.algebraic


@dataclass(frozen=True, eq=False)
class EPReport:
    """Degeneracy diagnostics for an adjoint matrix."""

    clusters: tuple
    defective: bool

    def _first_defective(self):
        for c in self.clusters:
            if c.defective:
                return c
        return None

    @property
    def degenerate_lambda(self):
        c = self._first_defective()
        return None if c is None else c.value

    @property
    def algebraic_mult(self):
        c = self._first_defective()
        return None if c is None else c.algebraic

    @property
    def geometric_mult(self):
        c = self._first_defective()
        return None if c is None else c.geometric


class ExceptionalPointError(RuntimeError):
    """Ladder construction impossible: the adjoint matrix is (nearly) defective."""

    def __init__(self, message: str, report: EPReport | None = None):
        super().__init__(message)
        self.report = report


@dataclass(frozen=True, eq=False)
class SpectralDecomposition:
    """Normalized ladder pairs and the resulting diagonal-form data.

    pairs[i] holds (lowering, raising) operators with eigenvalues
    -frequencies[i], +frequencies[i]; frequencies are sorted descending
    by real part. ground_energy is half the frequency sum plus the form
    offset.
    """

    pairs: tuple
    frequencies: np.ndarray
    ground_energy: complex
    reality: Reality
    defective: bool
    offset: complex

    def spectrum(self, occupation) -> complex:
        return spectrum(self, occupation)


def _cluster_indices(values: np.ndarray, tol: float) -> list[list[int]]:
    # Union-find on |v_i - v_j| < tol; spectra here have at most ~16 entries.
    n = len(values)
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(n):
        for j in range(i + 1, n):
            if abs(values[i] - values[j]) < tol:
                ri, rj = find(i), find(j)
                if ri != rj:
                    parent[ri] = rj
    groups: dict[int, list[int]] = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    return list(groups.values())


def _degeneracy_clusters(rep: np.ndarray, values: np.ndarray,
                         cluster_tol: float | None, rank_tol: float):
    scale = max(1.0, float(np.linalg.norm(rep, np.inf)))
    tol = (CLUSTER_TOL if cluster_tol is None else cluster_tol) * scale
    clusters = []
    any_defective = False
    for group in _cluster_indices(values, tol):
        center = complex(np.mean(values[group]))
        algebraic = len(group)
        if algebraic == 1:
            geometric = 1
        else:
            sv = np.linalg.svd(rep - center * np.eye(rep.shape[0]), compute_uv=False)
            rank = int(np.sum(sv > rank_tol * max(sv[0], np.finfo(float).tiny)))
            geometric = rep.shape[0] - rank
        clusters.append(EigenvalueCluster(center, algebraic, geometric))
        any_defective = any_defective or geometric < algebraic
    clusters.sort(key=lambda c: (c.value.real, c.value.imag))
    return tuple(clusters), any_defective


def detect_ep(rep: np.ndarray, cluster_tol: float | None = None,
              rank_tol: float = RANK_TOL) -> EPReport:
    """Cluster the spectrum and compare algebraic vs geometric multiplicities.

    Eigenvalues are grouped within cluster_tol * |rep|_inf (default 1e-8
    relative); the geometric multiplicity of a cluster is the dimension
    minus the numerical rank of (rep - lambda I), with singular values
    below rank_tol * sigma_max treated as zero.
    """
    rep = np.asarray(rep, dtype=complex)
    values = np.linalg.eigvals(rep)
    clusters, defective = _degeneracy_clusters(rep, values, cluster_tol, rank_tol)
    return EPReport(clusters=clusters, defective=defective)


def classify_reality(rep: np.ndarray, tol: float = REALITY_TOL) -> Reality:
    """AllReal, Complex, or ExceptionalPoint for an adjoint matrix.

    The spectrum counts as real when every |Im lambda| < tol * max(1, |lambda|).
    A defective matrix is classified as an exceptional point regardless of
    where its eigenvalues lie.
    """
    rep = np.asarray(rep, dtype=complex)
    values = np.linalg.eigvals(rep)
    _, defective = _degeneracy_clusters(rep, values, None, RANK_TOL)
    if defective:
        return Reality.EXCEPTIONAL_POINT
    if np.all(np.abs(values.imag) < tol * np.maximum(1.0, np.abs(values))):
        return Reality.ALL_REAL
    return Reality.COMPLEX


def _pair_indices(values: np.ndarray, tol: float) -> list[tuple[int, int]]:
    # Greedy +/- matching: repeatedly take the largest unpaired |value| and
    # match it with the unpaired value minimizing |v_i + v_j|.
    remaining = sorted(range(len(values)), key=lambda i: -abs(values[i]))
    pairs = []
    while remaining:
        i = remaining.pop(0)
        best = min(range(len(remaining)), key=lambda m: abs(values[i] + values[remaining[m]]))
        j = remaining.pop(best)
        mismatch = abs(values[i] + values[j])
        if mismatch > tol:
            raise ValueError(
                f"eigenvalues do not split into +/- pairs: residual {mismatch:.3e} "
                f"for {values[i]:.6g} from pairing tolerance {tol:.1e}"
            )
        pairs.append((i, j))
    return pairs


def eigenpairs(rep: np.ndarray, pair_tol: float = PAIR_TOL,
               cluster_tol: float | None = None,
               rank_tol: float = RANK_TOL) -> list[LadderOperator]:
    """Eigenvalue/eigenvector pairs of the adjoint matrix, +/- ordered.

    Returns 2K ladder operators with unit-norm coefficient vectors,
    arranged so entry i and entry 2K-1-i carry opposite eigenvalues;
    the first K entries are the lowering members (negative real part,
    lexicographic tie-break on the imaginary part), sorted ascending.

    Raises ExceptionalPointError, carrying the degeneracy report, when
    the matrix is defective and no eigenvector basis exists.
    """
    rep = np.asarray(rep, dtype=complex)
    n = rep.shape[0]
    if rep.ndim != 2 or rep.shape != (n, n) or n % 2:
        raise ValueError(f"adjoint matrix must be square of even size, got {rep.shape}")
    values, vectors = np.linalg.eig(rep)

    clusters, defective = _degeneracy_clusters(rep, values, cluster_tol, rank_tol)
    if defective:
        report = EPReport(clusters=clusters, defective=True)
        bad = report._first_defective()
        raise ExceptionalPointError(
            f"adjoint matrix is defective at lambda={bad.value:.6g} "
            f"(algebraic {bad.algebraic}, geometric {bad.geometric}); "
            "no complete ladder basis exists at an exceptional point",
            report=report,
        )

    scale = max(1.0, float(np.linalg.norm(rep, np.inf)))
    raw_pairs = _pair_indices(values, pair_tol * scale)

    oriented = []
    for i, j in raw_pairs:
        a, b = values[i], values[j]
        if (a.real, a.imag) > (b.real, b.imag):
            i, j = j, i
        oriented.append((i, j))
    oriented.sort(key=lambda p: (values[p[0]].real, values[p[0]].imag))

    lowers, raisers = [], []
    for i, j in oriented:
        vi = vectors[:, i] / np.linalg.norm(vectors[:, i])
        vj = vectors[:, j] / np.linalg.norm(vectors[:, j])
        lowers.append(LadderOperator(values[i], vi, LOWERING))
        raisers.append(LadderOperator(values[j], vj, RAISING))
    return lowers + raisers[::-1]


def _symplectic_pairs_at_zero(vectors, u, floor):
    # Null-eigenvalue cluster: grab mutually commuting pairs greedily and
    # u-orthogonalize the rest against each chosen pair.
    remaining = [np.array(v, dtype=complex) for v in vectors]
    pairs = []
    while remaining:
        x = remaining.pop(0)
        xn = np.linalg.norm(x)
        if xn < floor:
            raise ExceptionalPointError(
                "null-space pairing collapsed; adjoint matrix is effectively defective"
            )
        x = x / xn
        overlaps = [abs(commutator_linear(x, y, u)) for y in remaining]
        if not overlaps or max(overlaps) < floor:
            raise ExceptionalPointError(
                "vanishing pair commutator in the zero-eigenvalue cluster; "
                "parameters sit at (or numerically near) an exceptional point"
            )
        k = int(np.argmax(overlaps))
        y = remaining.pop(k)
        c = commutator_linear(x, y, u)
        y = y / c
        cleaned = []
        for v in remaining:
            v = v - commutator_linear(v, y, u) * x + commutator_linear(v, x, u) * y
            cleaned.append(v)
        remaining = cleaned
        pairs.append((x, y))
    return pairs


def normalize_pairs(ladders, u: np.ndarray, offset: complex = 0.0,
                    commutator_floor: float = COMMUTATOR_FLOOR,
                    cluster_tol: float | None = None,
                    reality_tol: float = REALITY_TOL) -> SpectralDecomposition:
    """Rescale +/- eigenpairs so each conjugate pair commutes to exactly 1.

    The lowering member keeps its unit-norm vector; the raising member
    absorbs the whole scale factor. Degenerate eigenvalue groups are
    normalized jointly (the raising block is recombined against the
    pair-commutator Gram matrix) so that cross commutators inside a
    group vanish and the diagonal form reproduces the original operator.

    A pair commutator (or Gram matrix) smaller than commutator_floor
    signals proximity to an exceptional point and raises
    ExceptionalPointError.
    """
    ladders = list(ladders)
    n = len(ladders)
    if n % 2 or n != u.shape[0]:
        raise ValueError(f"expected 2K ladder operators matching u of size {u.shape[0]}")
    k = n // 2

    lam = np.array([op.eigenvalue for op in ladders])
    scale = max(1.0, float(np.max(np.abs(lam))))
    tol = (CLUSTER_TOL if cluster_tol is None else cluster_tol) * scale

    pair_ids = [(i, n - 1 - i) for i in range(k)]
    low_vals = np.array([lam[i] for i, _ in pair_ids])

    out: list[tuple[LadderOperator, LadderOperator] | None] = [None] * k
    for group in _cluster_indices(low_vals, tol):
        center = complex(np.mean(low_vals[group]))
        if abs(center) < tol:
            # both members of each pair sit in the same (zero) cluster
            vecs = []
            for g in group:
                i, j = pair_ids[g]
                vecs.extend([ladders[i].coeffs, ladders[j].coeffs])
            sympairs = _symplectic_pairs_at_zero(vecs, u, commutator_floor)
            for g, (x, y) in zip(group, sympairs):
                freq = 0.5 * (lam[pair_ids[g][1]] - lam[pair_ids[g][0]])
                out[g] = (LadderOperator(-freq, x, LOWERING),
                          LadderOperator(freq, y, RAISING))
            continue
        low_block = np.column_stack([ladders[pair_ids[g][0]].coeffs for g in group])
        high_block = np.column_stack([ladders[pair_ids[g][1]].coeffs for g in group])
        gram = low_block.T @ u @ high_block
        if np.min(np.abs(np.linalg.svd(gram, compute_uv=False))) < commutator_floor:
            raise ExceptionalPointError(
                f"pair commutator matrix is singular near lambda={center:.6g}; "
                "ladder normalization impossible (exceptional-point proximity)"
            )
        high_block = high_block @ np.linalg.inv(gram)
        for col, g in enumerate(group):
            i, j = pair_ids[g]
            freq = 0.5 * (lam[j] - lam[i])
            out[g] = (LadderOperator(-freq, low_block[:, col], LOWERING),
                      LadderOperator(freq, high_block[:, col], RAISING))

    pairs = tuple(out)  # type: ignore[arg-type]
    freqs = np.array([p[1].eigenvalue for p in pairs])
    order = np.lexsort((freqs.imag, -freqs.real))
    pairs = tuple(pairs[i] for i in order)
    freqs = freqs[order]

    all_real = bool(np.all(np.abs(freqs.imag) < reality_tol * np.maximum(1.0, np.abs(freqs))))
    reality = Reality.ALL_REAL if all_real else Reality.COMPLEX
    ground = 0.5 * complex(np.sum(freqs)) + complex(offset)
    return SpectralDecomposition(
        pairs=pairs,
        frequencies=freqs,
        ground_energy=ground,
        reality=reality,
        defective=False,
        offset=complex(offset),
    )


def decompose(form: QuadraticForm, pair_tol: float = PAIR_TOL,
              cluster_tol: float | None = None) -> SpectralDecomposition:
    """Full pipeline: adjoint matrix -> eigenpairs -> normalized ladder pairs."""
    rep = adjoint_rep(form)
    ladders = eigenpairs(rep, pair_tol=pair_tol, cluster_tol=cluster_tol)
    u = commutator_matrix(form.basis)
    return normalize_pairs(ladders, u, offset=form.offset, cluster_tol=cluster_tol)


def spectrum(decomp: SpectralDecomposition, occupation) -> complex:
    """Energy sum_i frequencies[i] * (n_i + 1/2) + offset for occupation numbers n."""
    n = np.asarray(occupation)
    if n.shape != decomp.frequencies.shape:
        raise ValueError(
            f"occupation must supply {decomp.frequencies.size} numbers, got shape {n.shape}"
        )
    if np.any(n < 0) or not np.issubdtype(n.dtype, np.integer):
        raise ValueError("occupation numbers must be non-negative integers")
    return complex(np.sum(decomp.frequencies * (n + 0.5)) + decomp.offset)
