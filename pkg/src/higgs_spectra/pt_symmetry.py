"""Partial PT conjugations on homogeneous polynomial spaces.

A conjugation flipping the modes in ``S`` acts on ``psi(z)`` as
``conj(psi(conj(z'))`` with ``z'_j = -z_j`` for ``j`` in ``S``.  On monomial
coefficients this is ``c_a -> (-1)^(sum_{j in S} a_j) conj(c_a)``: an
antilinear, involutive, isometric map.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from math import factorial
from typing import Mapping, Sequence

import numpy as np

from .bargmann import MonomialBasis, OperatorMatrix, SpectralReport, h1_matrix
from .operator_zoo import DeformationParams

STATE_TOL = 1e-8
SYMMETRY_TOL = 1e-10

STRICT = "symmetric_strict"
PROJECTIVE = "symmetric_projective"
BREAKING = "breaking"


@dataclass(frozen=True, order=True)
class ConjugationSpec:
    flipped_modes: frozenset

    def __post_init__(self) -> None:
        modes = frozenset(int(j) for j in self.flipped_modes)
        if not modes:
            raise ValueError("a conjugation must flip at least one mode")
        if not modes <= {1, 2, 3}:
            raise ValueError(f"modes must lie in 1..3, got {sorted(modes)}")
        object.__setattr__(self, "flipped_modes", modes)

    @classmethod
    def parse(cls, text: str) -> "ConjugationSpec":
        """``"13"`` or ``"C3(13)"`` -> modes {1, 3}."""
        digits = text.strip()
        if digits.upper().startswith("C3(") and digits.endswith(")"):
            digits = digits[3:-1]
        if not digits or not digits.isdigit():
            raise ValueError(f"bad conjugation label {text!r}")
        if len(set(digits)) != len(digits):
            raise ValueError(f"repeated mode in {text!r}")
        return cls(frozenset(int(ch) for ch in digits))

    @property
    def label(self) -> str:
        return "C3(" + "".join(str(j) for j in sorted(self.flipped_modes)) + ")"

    @property
    def key(self) -> str:
        return "".join(str(j) for j in sorted(self.flipped_modes))

    @property
    def is_global(self) -> bool:
        return self.flipped_modes == {1, 2, 3}


ALL_SPECS = tuple(
    ConjugationSpec(frozenset(c)) for k in (1, 2, 3) for c in combinations((1, 2, 3), k)
)


def conjugation_signs(spec: ConjugationSpec, basis: MonomialBasis) -> np.ndarray:
    return np.array(
        [(-1) ** sum(m[j - 1] for j in spec.flipped_modes) for m in basis.elements], dtype=float
    )


def apply_conjugation(spec: ConjugationSpec, state: np.ndarray, basis: MonomialBasis) -> np.ndarray:
    state = np.asarray(state, dtype=complex)
    if state.shape != (len(basis),):
        raise ValueError(f"state length {state.shape} does not match basis size {len(basis)}")
    return conjugation_signs(spec, basis) * state.conj()


def conjugate_operator(spec: ConjugationSpec, mat: OperatorMatrix) -> OperatorMatrix:
    """``C A C`` as a (linear) matrix: ``(-1)^(s(a)+s(b)) conj(A_ab)``."""
    sg = conjugation_signs(spec, mat.basis)
    return OperatorMatrix(mat.basis, np.outer(sg, sg) * mat.entries.conj())


def operator_symmetry_residual(spec: ConjugationSpec, mat: OperatorMatrix) -> float:
    return float(np.abs(conjugate_operator(spec, mat).entries - mat.entries).max())


def fock_gram(basis: MonomialBasis) -> np.ndarray:
    """Diagonal of the Fock Gram matrix: squared norm of ``z^a`` is ``a!``."""
    return np.array([float(np.prod([factorial(e) for e in m])) for m in basis.elements])


def fock_adjoint(mat: OperatorMatrix) -> OperatorMatrix:
    g = fock_gram(mat.basis)
    return OperatorMatrix(mat.basis, (mat.entries.conj().T * g[None, :]) / g[:, None])


def fock_inner(basis: MonomialBasis, x: np.ndarray, y: np.ndarray) -> complex:
    """``<x, y>`` antilinear in ``x``."""
    return complex(np.sum(x.conj() * fock_gram(basis) * y))


# -- state classification -------------------------------------------------


@dataclass(frozen=True)
class StateClassification:
    state_id: str
    spec: str
    verdict: str
    strict: bool
    projective: bool
    factor: complex
    strict_residual: float
    projective_residual: float
    adopting: bool = False
    eigenvalue: complex | None = None
    source: str = "computed"

    def to_dict(self) -> dict:
        out = {
            "id": self.state_id,
            "verdict": self.verdict,
            "strict": self.strict,
            "projective": self.projective,
            "lambda": {"re": self.factor.real, "im": self.factor.imag},
            "residual": self.strict_residual,
            "projective_residual": self.projective_residual,
            "adopting": self.adopting,
            "source": self.source,
        }
        if self.eigenvalue is not None:
            out["eigenvalue"] = {"re": self.eigenvalue.real, "im": self.eigenvalue.imag}
        return out


def classify_state(
    spec: ConjugationSpec,
    state: np.ndarray,
    basis: MonomialBasis,
    state_id: str = "",
    tol: float = STATE_TOL,
    operator_is_symmetry: bool = True,
    eigenvalue: complex | None = None,
    source: str = "computed",
) -> StateClassification:
    """Strict (``C psi = psi``) and projective (``C psi = lambda psi``) verdicts."""
    v = np.asarray(state, dtype=complex)
    norm = np.linalg.norm(v)
    if norm == 0:
        raise ValueError("cannot classify the zero vector")
    cv = apply_conjugation(spec, v, basis)
    strict_res = float(np.linalg.norm(cv - v) / norm)
    lam = complex(np.vdot(v, cv) / np.vdot(v, v))
    proj_res = float(np.linalg.norm(cv - lam * v) / norm)
    strict = strict_res < tol
    projective = proj_res < tol
    verdict = STRICT if strict else PROJECTIVE if projective else BREAKING
    return StateClassification(
        state_id=state_id,
        spec=spec.label,
        verdict=verdict,
        strict=strict,
        projective=projective,
        factor=lam if projective else complex("nan"),
        strict_residual=strict_res,
        projective_residual=proj_res,
        adopting=strict and not operator_is_symmetry,
        eigenvalue=eigenvalue,
        source=source,
    )


@dataclass(frozen=True)
class ClusterVerdict:
    """C-invariance of a degenerate eigenspace (individual vectors are arbitrary there)."""

    state_ids: tuple[str, ...]
    eigenvalue: complex
    invariant: bool
    residual: float

    def to_dict(self) -> dict:
        return {
            "ids": list(self.state_ids),
            "eigenvalue": {"re": self.eigenvalue.real, "im": self.eigenvalue.imag},
            "invariant": self.invariant,
            "residual": self.residual,
        }


def cluster_invariance(spec: ConjugationSpec, vectors: np.ndarray, basis: MonomialBasis) -> float:
    """Distance of ``C(span)`` from ``span`` (0 iff the span is C-invariant)."""
    q, _ = np.linalg.qr(vectors)
    images = np.column_stack([apply_conjugation(spec, vectors[:, k], basis) for k in range(vectors.shape[1])])
    leftover = images - q @ (q.conj().T @ images)
    return float(np.linalg.norm(leftover) / max(np.linalg.norm(images), 1e-300))


@dataclass
class SpecResult:
    spec: ConjugationSpec
    operator_residual: float
    states: list[StateClassification]
    clusters: list[ClusterVerdict]
    reality_violations: list[str]

    @property
    def is_symmetry(self) -> bool:
        return self.operator_residual < SYMMETRY_TOL

    def to_dict(self) -> dict:
        return {
            "spec": self.spec.label,
            "operator_residual": self.operator_residual,
            "is_symmetry": self.is_symmetry,
            "note": "" if self.is_symmetry else "not a symmetry operator",
            "states": [s.to_dict() for s in self.states],
            "clusters": [c.to_dict() for c in self.clusters],
            "reality_violations": list(self.reality_violations),
        }


@dataclass
class SymmetryReport:
    params: DeformationParams | None
    degree: int
    results: list[SpecResult]
    adjoint_residuals: Mapping[str, float]
    representatives: list[SpecResult] = field(default_factory=list)
    paper_discrepancies: list[dict] = field(default_factory=list)

    def result(self, key: str) -> SpecResult:
        for r in self.results:
            if r.spec.key == key or r.spec.label == key:
                return r
        raise KeyError(key)

    def representative_result(self, key: str) -> SpecResult:
        for r in self.representatives:
            if r.spec.key == key or r.spec.label == key:
                return r
        raise KeyError(key)

    def to_dict(self) -> dict:
        return {
            "params": self.params.to_dict() if self.params else None,
            "degree": self.degree,
            "adjoint_residuals": dict(self.adjoint_residuals),
            "specs": [r.to_dict() for r in self.results],
            "representatives": [r.to_dict() for r in self.representatives],
            "paper_discrepancies": list(self.paper_discrepancies),
        }


def adjoint_residuals(mat: OperatorMatrix) -> dict[str, float]:
    """Non-hermiticity ``|H* - H|`` and global-conjugation self-adjointness ``|C H* C - H|``."""
    adj = fock_adjoint(mat)
    glob = ConjugationSpec(frozenset({1, 2, 3}))
    return {
        "fock_adjoint_minus_h": float(np.abs(adj.entries - mat.entries).max()),
        "global_conjugated_adjoint_minus_h": float(
            np.abs(conjugate_operator(glob, adj).entries - mat.entries).max()
        ),
    }


def classify_states(
    report: SpectralReport,
    specs: Sequence[ConjugationSpec],
    representatives: Mapping[str, np.ndarray] | None = None,
    operator: OperatorMatrix | None = None,
    tol: float = STATE_TOL,
) -> SymmetryReport:
    """Classify computed eigenstates (and optional printed representatives).

    Computed eigenvectors are first scaled so their largest entry is 1, which
    makes the strict verdict reproducible; degenerate clusters are judged by
    C-invariance of their span.
    """
    if operator is None:
        if report.params is None:
            raise ValueError("need an operator matrix or params to rebuild H1")
        operator = h1_matrix(report.degree, report.params)
    basis = operator.basis
    clusters = report.clusters()
    in_cluster = {i for cl in clusters if len(cl) > 1 for i in cl}
    results, rep_results = [], []
    for spec in specs:
        op_res = operator_symmetry_residual(spec, operator)
        is_sym = op_res < SYMMETRY_TOL
        states, reality = [], []
        for k, lam in enumerate(report.eigenvalues):
            cls = classify_state(
                spec,
                report.right_eigenvectors[:, k],
                basis,
                state_id=f"e{k}",
                tol=tol,
                operator_is_symmetry=is_sym,
                eigenvalue=complex(lam),
            )
            if k in in_cluster:
                cls = StateClassification(**{**cls.__dict__, "adopting": False})
            states.append(cls)
            if cls.strict and is_sym and abs(lam.imag) > 1e-9:
                reality.append(cls.state_id)
        cverdicts = []
        for cl in clusters:
            if len(cl) > 1:
                r = cluster_invariance(spec, report.right_eigenvectors[:, cl], basis)
                cverdicts.append(
                    ClusterVerdict(tuple(f"e{k}" for k in cl), complex(report.eigenvalues[cl[0]]), r < tol, r)
                )
        results.append(SpecResult(spec, op_res, states, cverdicts, reality))
        if representatives:
            reps = [
                classify_state(spec, vec, basis, state_id=sid, tol=tol, operator_is_symmetry=is_sym, source="representative")
                for sid, vec in representatives.items()
            ]
            rep_results.append(SpecResult(spec, op_res, reps, [], []))
    return SymmetryReport(
        params=report.params,
        degree=report.degree,
        results=results,
        adjoint_residuals=adjoint_residuals(operator),
        representatives=rep_results,
    )


@dataclass(frozen=True)
class BiorthogonalityResult:
    pairing: np.ndarray
    residual: float
    degenerate_clusters: list[list[int]]

    def to_dict(self) -> dict:
        return {
            "residual": self.residual,
            "degenerate_clusters": [list(c) for c in self.degenerate_clusters],
        }


def biorthogonality_check(report: SpectralReport) -> BiorthogonalityResult:
    """Fock pairing ``<l_i, r_j>`` of left and right eigenvectors.

    Left eigenvectors with respect to the Fock product are ``G^-1 l`` for the
    Euclidean left vectors ``l``.  Entries inside a degenerate cluster are
    excluded from the residual: only cluster-level pairing is meaningful.
    """
    basis = report.basis
    g = fock_gram(basis)
    left_fock = report.left_eigenvectors / g[:, None]
    pairing = left_fock.conj().T @ (g[:, None] * report.right_eigenvectors)
    clusters = report.clusters()
    off = pairing.copy()
    for cl in clusters:
        off[np.ix_(cl, cl)] = 0
    return BiorthogonalityResult(
        pairing=pairing,
        residual=float(np.abs(off).max()) if off.size else 0.0,
        degenerate_clusters=[cl for cl in clusters if len(cl) > 1],
    )
