"""Matrices of degree-preserving boson polynomials on homogeneous polynomial spaces.

``a_j^dagger`` acts as multiplication by ``z_j`` and ``a_j`` as ``d/dz_j`` on the
monomials ``z1^n1 z2^n2 z3^n3`` with ``n1 + n2 + n3 = n``.  Monomials are
ordered by descending ``n3``, then descending ``n1``, so the ``n3``-blocks of
any operator that leaves ``n3`` unchanged are contiguous.
"""
from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from math import factorial

import numpy as np
import scipy.linalg

from .boson_algebra import BosonPolynomial
from .operator_zoo import DeformationParams, build_h1_algebraic

Monomial = tuple[int, int, int]

BLOCK_TOL = 1e-13
CLUSTER_RTOL = 1e-8

SHIFTS = ((0, 0, 0), (2, -2, 0), (-2, 2, 0), (1, -1, 0), (-1, 1, 0))


class NonInvariantError(ValueError):
    pass


class BlockViolationError(ValueError):
    def __init__(self, row: int, col: int, value: complex):
        super().__init__(f"cross-block entry ({row}, {col}) = {value!r}")
        self.row, self.col, self.value = row, col, value


@dataclass(frozen=True)
class MonomialBasis:
    degree: int
    elements: tuple[Monomial, ...]
    index: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "index", {m: i for i, m in enumerate(self.elements)})

    def __len__(self) -> int:
        return len(self.elements)

    def block_slices(self) -> list[tuple[int, slice]]:
        """``(n3, slice)`` for each contiguous block, in basis order."""
        out, start = [], 0
        for n3 in range(self.degree, -1, -1):
            size = self.degree - n3 + 1
            out.append((n3, slice(start, start + size)))
            start += size
        return out

    def label(self, i: int) -> str:
        return "|{},{},{}>".format(*self.elements[i])


def monomial_basis(n: int) -> MonomialBasis:
    if n < 0:
        raise ValueError("degree must be non-negative")
    elems = [
        (n1, n - n3 - n1, n3) for n3 in range(n, -1, -1) for n1 in range(n - n3, -1, -1)
    ]
    return MonomialBasis(n, tuple(elems))


@dataclass(frozen=True)
class OperatorMatrix:
    basis: MonomialBasis
    entries: np.ndarray

    def __post_init__(self) -> None:
        d = len(self.basis)
        if self.entries.shape != (d, d):
            raise ValueError(f"matrix shape {self.entries.shape} does not match basis size {d}")


def _falling(n: int, k: int) -> int:
    return factorial(n) // factorial(n - k)


def to_matrix(op: BosonPolynomial, basis: MonomialBasis) -> OperatorMatrix:
    """Column ``j`` holds the image of the ``j``-th monomial."""
    if op.n_modes != 3:
        raise ValueError("homogeneous bases are built for three modes")
    if not op.preserves_degree():
        raise NonInvariantError("operator changes total degree; homogeneous space is not invariant")
    d = len(basis)
    mat = np.zeros((d, d), dtype=complex)
    for (cre, ann), coeff in op:
        for col, mono in enumerate(basis.elements):
            if any(m < a for m, a in zip(mono, ann)):
                continue
            weight = 1
            for m, a in zip(mono, ann):
                weight *= _falling(m, a)
            target = tuple(m - a + c for m, a, c in zip(mono, ann, cre))
            mat[basis.index[target], col] += coeff * weight
    return OperatorMatrix(basis, mat)


def action_coefficients(m: Monomial, params: DeformationParams, literal: bool = False) -> dict[Monomial, complex]:
    """Closed-form matrix elements of H1 on ``|n1,n2,n3>`` keyed by exponent shift.

    Values still carry the overall ``1/omega0**2`` factor of the action.  The
    ``(+-2, -+2, 0)`` shifts include the falling factorials ``n2(n2-1)`` and
    ``n1(n1-1)`` produced by the second derivatives; ``literal=True`` drops
    them to reproduce the printed constants ``-gamma^2/4``.
    """
    n1, n2, n3 = m
    g, w0, c = params.gamma, params.omega0, params.c
    mixed = 2 * w0 * (c - n3)
    quad = -(g**2) / 4
    return {
        (0, 0, 0): (0.5 * (n1 - n2) + w0 * (c - n3)) ** 2 - g**2 / 4 * (n1 + n2 + 2 * n1 * n2),
        (2, -2, 0): quad if literal else quad * n2 * (n2 - 1),
        (-2, 2, 0): quad if literal else quad * n1 * (n1 - 1),
        (1, -1, 0): 0.5j * g * n2 * (n1 - n2 + 1 + mixed),
        (-1, 1, 0): 0.5j * g * n1 * (n1 - n2 - 1 + mixed),
    }


def assemble_action_matrix(basis: MonomialBasis, params: DeformationParams, literal: bool = False) -> OperatorMatrix:
    """H1 matrix built from :func:`action_coefficients` (scaled by ``beta / omega0**2``)."""
    d = len(basis)
    mat = np.zeros((d, d), dtype=complex)
    scale = params.beta / params.omega0**2
    for col, mono in enumerate(basis.elements):
        for shift, coeff in action_coefficients(mono, params, literal).items():
            target = tuple(a + b for a, b in zip(mono, shift))
            if min(target) < 0:
                continue
            mat[basis.index[target], col] += scale * coeff
    return OperatorMatrix(basis, mat)


def h1_matrix(n: int, params: DeformationParams, form: str = "tabulated") -> OperatorMatrix:
    return to_matrix(build_h1_algebraic(params, form=form), monomial_basis(n))


@dataclass(frozen=True)
class Block:
    n3: int
    indices: slice
    matrix: np.ndarray


def block_decompose(mat: OperatorMatrix, tol: float = BLOCK_TOL) -> list[Block]:
    """Split into ``n3`` blocks, rejecting any cross-block entry above ``tol``."""
    a = mat.entries
    slices = mat.basis.block_slices()
    mask = np.ones(a.shape, dtype=bool)
    for _, sl in slices:
        mask[sl, sl] = False
    bad = np.argwhere(mask & (np.abs(a) > tol))
    if len(bad):
        r, c = bad[0]
        raise BlockViolationError(int(r), int(c), complex(a[r, c]))
    return [Block(n3, sl, a[sl, sl]) for n3, sl in slices]


def cross_block_max(mat: OperatorMatrix) -> float:
    a = mat.entries
    mask = np.ones(a.shape, dtype=bool)
    for _, sl in mat.basis.block_slices():
        mask[sl, sl] = False
    return float(np.abs(a[mask]).max()) if mask.any() else 0.0


def normalize_vector(v: np.ndarray) -> np.ndarray:
    """Scale so the largest-magnitude entry equals 1 (first one wins ties)."""
    k = int(np.argmax(np.abs(v).round(12)))
    return v / v[k]


def cluster_eigenvalues(values, rtol: float = CLUSTER_RTOL) -> list[list[int]]:
    """Group indices whose eigenvalues agree within ``rtol`` (relative, floor 1)."""
    vals = np.asarray(values)
    order = sorted(range(len(vals)), key=lambda i: (vals[i].real, vals[i].imag))
    clusters: list[list[int]] = []
    for i in order:
        if clusters:
            ref = vals[clusters[-1][0]]
            if abs(vals[i] - ref) <= rtol * max(1.0, abs(ref)):
                clusters[-1].append(i)
                continue
        clusters.append([i])
    return clusters


@dataclass
class SpectralReport:
    """Per-block eigen-decomposition of an operator matrix.

    ``block_sizes`` is listed by ascending ``n3`` (largest block first) while
    eigenvalues follow basis order; ``block_of[k]`` is the ``n3`` of the
    block holding eigenvalue ``k``.
    """

    params: DeformationParams | None
    degree: int
    block_sizes: list[int]
    eigenvalues: np.ndarray
    right_eigenvectors: np.ndarray
    left_eigenvectors: np.ndarray
    block_of: list[int]
    max_imag: float
    degeneracies: list[tuple[complex, int]]
    biorthogonality_residual: float
    cross_block_max: float = 0.0
    basis: MonomialBasis | None = None
    diagnostics: list[str] = field(default_factory=list)

    def clusters(self, rtol: float = CLUSTER_RTOL) -> list[list[int]]:
        return cluster_eigenvalues(self.eigenvalues, rtol)

    def to_dict(self) -> dict:
        return {
            "params": self.params.to_dict() if self.params else None,
            "degree": self.degree,
            "block_sizes": list(self.block_sizes),
            "eigenvalues": [{"re": float(z.real), "im": float(z.imag)} for z in self.eigenvalues],
            "block_n3": list(self.block_of),
            "degeneracies": [
                {"value": {"re": float(z.real), "im": float(z.imag)}, "multiplicity": m}
                for z, m in self.degeneracies
            ],
            "residuals": {
                "max_imag": self.max_imag,
                "biorthogonality": self.biorthogonality_residual,
                "cross_block_max": self.cross_block_max,
            },
            "right_eigenvectors": _matrix_to_json(self.right_eigenvectors),
            "left_eigenvectors": _matrix_to_json(self.left_eigenvectors),
            "diagnostics": list(self.diagnostics),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "SpectralReport":
        prm = data["params"]
        params = (
            DeformationParams.from_gamma(prm["gamma"], c=prm["c"], p=prm["p"], beta=prm["beta"], phi=prm["phi"])
            if prm
            else None
        )
        return cls(
            params=params,
            degree=data["degree"],
            block_sizes=list(data["block_sizes"]),
            eigenvalues=np.array([complex(z["re"], z["im"]) for z in data["eigenvalues"]]),
            right_eigenvectors=_matrix_from_json(data["right_eigenvectors"]),
            left_eigenvectors=_matrix_from_json(data["left_eigenvectors"]),
            block_of=list(data["block_n3"]),
            max_imag=data["residuals"]["max_imag"],
            degeneracies=[
                (complex(d["value"]["re"], d["value"]["im"]), d["multiplicity"]) for d in data["degeneracies"]
            ],
            biorthogonality_residual=data["residuals"]["biorthogonality"],
            cross_block_max=data["residuals"]["cross_block_max"],
            basis=monomial_basis(data["degree"]),
            diagnostics=list(data["diagnostics"]),
        )


def _matrix_to_json(m: np.ndarray) -> list:
    return [[[float(z.real), float(z.imag)] for z in row] for row in m]


def _matrix_from_json(rows: list) -> np.ndarray:
    return np.array([[complex(re, im) for re, im in row] for row in rows], dtype=complex).reshape(
        len(rows), -1
    )


def _solve_block(block: Block) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    vals, left, right = scipy.linalg.eig(block.matrix, left=True, right=True)
    order = np.lexsort((vals.imag.round(10), vals.real.round(10)))
    return vals[order], left[:, order], right[:, order]


def spectrum(mat: OperatorMatrix, params: DeformationParams | None = None, rtol: float = CLUSTER_RTOL) -> SpectralReport:
    """Per-block dense eigen-solve with left and right eigenvectors.

    Right vectors are scaled so the largest entry is 1; left vectors are then
    scaled so that ``l^H r = 1`` for each pair.  Eigenvectors live in the full
    basis (zero outside their block).
    """
    blocks = block_decompose(mat)
    d = len(mat.basis)
    vals = np.zeros(d, dtype=complex)
    right = np.zeros((d, d), dtype=complex)
    left = np.zeros((d, d), dtype=complex)
    block_of: list[int] = []
    diagnostics: list[str] = []
    col = 0
    for blk in blocks:
        try:
            bv, bl, br = _solve_block(blk)
        except (np.linalg.LinAlgError, ValueError) as exc:
            raise RuntimeError(f"eigen-solver failed on block n3={blk.n3}: {exc}") from exc
        for k in range(len(bv)):
            r = normalize_vector(br[:, k])
            l = bl[:, k]
            pair = np.vdot(l, r)
            if abs(pair) < 1e-10:
                diagnostics.append(f"near-defective eigenvalue {bv[k]:.6g} in block n3={blk.n3}")
            else:
                l = l / pair.conjugate()
            vals[col] = bv[k]
            right[blk.indices, col] = r
            left[blk.indices, col] = l
            block_of.append(blk.n3)
            col += 1
    pairing = left.conj().T @ right
    clusters = cluster_eigenvalues(vals, rtol)
    off = pairing.copy()
    for cl in clusters:
        off[np.ix_(cl, cl)] = 0
    degeneracies = [(complex(vals[cl[0]]), len(cl)) for cl in clusters]
    return SpectralReport(
        params=params,
        degree=mat.basis.degree,
        block_sizes=[blk.matrix.shape[0] for blk in reversed(blocks)],
        eigenvalues=vals,
        right_eigenvectors=right,
        left_eigenvectors=left,
        block_of=block_of,
        max_imag=float(np.abs(vals.imag).max()) if d else 0.0,
        degeneracies=degeneracies,
        biorthogonality_residual=float(np.abs(off).max()) if d else 0.0,
        cross_block_max=cross_block_max(mat),
        basis=mat.basis,
        diagnostics=diagnostics,
    )


def h1_spectrum(n: int, params: DeformationParams) -> SpectralReport:
    return spectrum(h1_matrix(n, params), params)


# -- degeneracy scans -----------------------------------------------------


@dataclass(frozen=True)
class ScanRow:
    c: float
    eigenvalue: complex
    multiplicity: int
    jump: bool


def _thread_cap() -> int:
    try:
        return max(1, int(os.environ.get("HIGGS_SPECTRA_THREADS", "1")))
    except ValueError:
        return 1


def scan_grid(c_min: float, c_max: float, step: float) -> list[float]:
    """Inclusive grid; values are rounded to kill accumulated drift."""
    if step <= 0:
        raise ValueError("step must be positive")
    if c_max < c_min:
        return []
    count = int(np.floor((c_max - c_min) / step + 1e-9)) + 1
    return [round(c_min + k * step, 12) for k in range(count)]


def degeneracy_scan(
    n: int,
    params: DeformationParams,
    c_values,
    rtol: float = CLUSTER_RTOL,
    eigenvalue_source=None,
) -> list[ScanRow]:
    """Clustered multiplicities of H1 at each ``c`` with jump flags.

    A cluster at ``c_k`` is a jump when its multiplicity exceeds the
    multiplicity of the same value at the neighbouring grid points (at least
    1), so c-independent degeneracies are not flagged but crossings are.
    ``eigenvalue_source(n, params)`` may replace the operator spectrum, e.g.
    with tabulated formulas.
    """
    cs = list(c_values)
    if eigenvalue_source is None:
        def eigenvalue_source(n_, prm):
            return h1_spectrum(n_, prm).eigenvalues

    def clustered(c: float) -> list[tuple[complex, int]]:
        vals = np.asarray(eigenvalue_source(n, params.replace(c=c)), dtype=complex)
        return [(complex(vals[cl[0]]), len(cl)) for cl in cluster_eigenvalues(vals, rtol)]

    with ThreadPoolExecutor(max_workers=_thread_cap()) as pool:
        per_c = list(pool.map(clustered, cs))

    def mult_near(clusters, value) -> int:
        for v, m in clusters:
            if abs(v - value) <= rtol * max(1.0, abs(value)):
                return m
        return 0

    rows = []
    for k, (c, clusters) in enumerate(zip(cs, per_c)):
        neighbours = [per_c[j] for j in (k - 1, k + 1) if 0 <= j < len(cs)]
        for value, mult in clusters:
            base = max([1] + [mult_near(nb, value) for nb in neighbours])
            rows.append(ScanRow(c, value, mult, mult > base))
    return rows


def multiplicity_at(rows: list[ScanRow], c: float, value: float, tol: float = 1e-8) -> int:
    for r in rows:
        if abs(r.c - c) < 1e-12 and abs(r.eigenvalue - value) <= tol * max(1.0, abs(value)):
            return r.multiplicity
    return 0
