"""Published eigen-tables and PT classification tables for degrees 2 and 3.

Each row keeps the printed formula text next to a callable evaluating it, so
comparisons work at any ``(gamma, c)``.  Printed eigenvectors are stored with
denominators cleared (a positive real rescaling, which changes neither the ray
nor any strict conjugation verdict) so they stay finite at ``gamma = 0``.
Rows known to carry typos are resolved by :func:`derive_representative`
rather than corrected by hand.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import sqrt
from typing import Callable, Mapping

import numpy as np

from .bargmann import Monomial, h1_matrix, monomial_basis
from .operator_zoo import DeformationParams
from .pt_symmetry import SymmetryReport

EIGEN_TOL = 1e-9
VECTOR_TOL = 1e-8

Terms = list[tuple[Monomial, complex]]


@dataclass(frozen=True)
class TableRow:
    label: str
    eigenvalue_text: str
    eigenvalue: Callable[[float, float], float]
    vector_text: str
    cleared: Callable[[float, float], Terms]
    denominator: Callable[[float, float], float]
    anchors: Mapping[Monomial, complex]
    n3: int
    typo: str = ""

    def eigenvalue_at(self, params: DeformationParams) -> float:
        return float(self.eigenvalue(params.c, params.omega0))

    def cleared_vector(self, params: DeformationParams, degree: int) -> np.ndarray:
        """Printed vector times ``denominator`` (duplicate kets are summed)."""
        basis = monomial_basis(degree)
        v = np.zeros(len(basis), dtype=complex)
        for ket, coeff in self.cleared(params.gamma, params.omega0):
            v[basis.index[ket]] += coeff
        return v

    def printed_vector(self, params: DeformationParams, degree: int) -> np.ndarray | None:
        den = self.denominator(params.gamma, params.omega0)
        if abs(den) < 1e-14:
            return None
        return self.cleared_vector(params, degree) / den


def _one(g: float, w: float) -> float:
    return 1.0


def _sp(w: float) -> float:
    return sqrt(1 + w)


def _sm(w: float) -> float:
    return sqrt(max(1 - w, 0.0))


N2_ROWS = (
    TableRow("psi1", "(c-2)^2", lambda c, w: (c - 2) ** 2, "|0,0,2>",
             lambda g, w: [((0, 0, 2), 1)], _one, {(0, 0, 2): 1}, 2),
    TableRow("psi2", "(c-1/2)^2", lambda c, w: (c - 0.5) ** 2,
             "|0,1,1> - i((1+w0)/(1-w0))^(1/2)|1,0,1>",
             lambda g, w: [((0, 1, 1), _sm(w)), ((1, 0, 1), -1j * _sp(w))],
             lambda g, w: _sm(w), {(0, 1, 1): 1}, 1),
    TableRow("psi3", "(c-3/2)^2", lambda c, w: (c - 1.5) ** 2,
             "|0,1,1> - i((1-w0)/(1+w0))^(1/2)|1,0,1>",
             lambda g, w: [((0, 1, 1), _sp(w)), ((1, 0, 1), -1j * _sm(w))],
             lambda g, w: _sp(w), {(0, 1, 1): 1}, 1),
    TableRow("psi4", "0", lambda c, w: 0.0, "|2,0,0> - |0,2,0> + (2i/gamma)|1,1,0>",
             lambda g, w: [((2, 0, 0), g), ((0, 2, 0), -g), ((1, 1, 0), 2j)],
             lambda g, w: g, {(2, 0, 0): 1, (0, 2, 0): -1}, 0),
    TableRow("psi5", "1", lambda c, w: 1.0, "|2,0,0> + |0,2,0>",
             lambda g, w: [((2, 0, 0), 1), ((0, 2, 0), 1)], _one, {(2, 0, 0): 1, (0, 2, 0): 1}, 0),
    TableRow("psi6", "1", lambda c, w: 1.0, "|2,0,0> - |0,2,0> + {2i}{gamma}|1,1,0>",
             lambda g, w: [((2, 0, 0), 1), ((0, 2, 0), -1), ((1, 1, 0), 2j * g)],
             _one, {(2, 0, 0): 1, (0, 2, 0): -1}, 0,
             typo="ambiguous braces: 2i*gamma or 2i/gamma"),
)

# Alternative reading of the psi6 brace, kept for the reading comparison.
PSI6_ALT = TableRow("psi6_alt", "1", lambda c, w: 1.0, "|2,0,0> - |0,2,0> + (2i/gamma)|1,1,0>",
                    lambda g, w: [((2, 0, 0), g), ((0, 2, 0), -g), ((1, 1, 0), 2j)],
                    lambda g, w: g, {(2, 0, 0): 1, (0, 2, 0): -1}, 0)

N3_ROWS = (
    TableRow("chi1", "(c-3)^2", lambda c, w: (c - 3) ** 2, "|0,0,3>",
             lambda g, w: [((0, 0, 3), 1)], _one, {(0, 0, 3): 1}, 3),
    TableRow("chi2", "(c-3/2)^2", lambda c, w: (c - 1.5) ** 2,
             "|1,0,2> + i((1-w0)/(1+w0))^(1/2)|0,1,2>",
             lambda g, w: [((1, 0, 2), _sp(w)), ((0, 1, 2), 1j * _sm(w))],
             lambda g, w: _sp(w), {(1, 0, 2): 1}, 2),
    TableRow("chi3", "(c-5/2)^2", lambda c, w: (c - 2.5) ** 2,
             "|1,0,2> + i((1+w0)/(1-w0))^(1/2)|0,1,2>",
             lambda g, w: [((1, 0, 2), _sm(w)), ((0, 1, 2), 1j * _sp(w))],
             lambda g, w: _sm(w), {(1, 0, 2): 1}, 2),
    TableRow("chi4", "(c-1)^2", lambda c, w: (c - 1) ** 2,
             "-i(1-w0^2)^(1/2)/2|2,0,1> + i(1-w0^2)^(1/2)/2|0,2,1> + |1,1,1>",
             lambda g, w: [((2, 0, 1), -0.5j * g), ((0, 2, 1), 0.5j * g), ((1, 1, 1), 1)],
             _one, {(1, 1, 1): 1}, 1),
    TableRow("chi5", "c^2", lambda c, w: c**2,
             "-(i/2)((1+w0)/(1-w0))^(1/2)|2,0,1> + (i/2)((1-w0)/(1+w0))^(1/2)|0,2,1> + |1,1,1>",
             lambda g, w: [((2, 0, 1), -0.5j * (1 + w)), ((0, 2, 1), 0.5j * (1 - w)), ((1, 1, 1), g)],
             lambda g, w: g, {(1, 1, 1): 1}, 1),
    TableRow("chi6", "(c-2)^2", lambda c, w: (c - 2) ** 2,
             "-(i/2)((1-w0)/(1+w0))^(1/2)|2,0,1> + (i/2)((1+w0)/(1-w0))^(1/2)|0,2,1> + |1,1,1>",
             lambda g, w: [((2, 0, 1), -0.5j * (1 - w)), ((0, 2, 1), 0.5j * (1 + w)), ((1, 1, 1), g)],
             lambda g, w: g, {(1, 1, 1): 1}, 1),
    TableRow("chi7", "1/4", lambda c, w: 0.25,
             "(3-3w0^2)/(3+w0^2)|3,0,0> + i6(1-w0^2)^(1/2)/(3+w0^2)|3,0,0> + |1,2,0>",
             lambda g, w: [((3, 0, 0), (3 - 3 * w**2) / (3 + w**2)),
                           ((3, 0, 0), 6j * g / (3 + w**2)), ((1, 2, 0), 1)],
             _one, {(1, 2, 0): 1, (2, 1, 0): 0}, 0,
             typo="|3,0,0> printed twice; |3,0,0>/|0,3,0> coefficients suspect"),
    TableRow("chi8", "1/4", lambda c, w: 0.25,
             "-i6(1-w0^2)^(1/2)/(3+w0^2)|3,0,0> + (3-3w0^2)/(3+w0^2)|0,3,0> + |2,1,0>",
             lambda g, w: [((3, 0, 0), -6j * g / (3 + w**2)),
                           ((0, 3, 0), (3 - 3 * w**2) / (3 + w**2)), ((2, 1, 0), 1)],
             _one, {(2, 1, 0): 1, (1, 2, 0): 0}, 0,
             typo="|3,0,0>/|0,3,0> coefficients suspect"),
    TableRow("chi9", "9/4", lambda c, w: 2.25,
             "|3,0,0> + 2i(1-w0^2)^(-1/2)|0,3,0> + |1,2,0>",
             lambda g, w: [((3, 0, 0), g), ((0, 3, 0), 2j), ((1, 2, 0), g)],
             lambda g, w: g, {(1, 2, 0): 1, (2, 1, 0): 0}, 0,
             typo="|3,0,0>/|0,3,0> coefficients suspect"),
    TableRow("chi10", "9/4", lambda c, w: 2.25,
             "-2i(1-w0^2)^(-1/2)|3,0,0> + |0,3,0> + |2,1,0>",
             lambda g, w: [((3, 0, 0), -2j), ((0, 3, 0), g), ((2, 1, 0), g)],
             lambda g, w: g, {(2, 1, 0): 1, (1, 2, 0): 0}, 0,
             typo="|3,0,0>/|0,3,0> coefficients suspect"),
)

TABLES: dict[int, tuple[TableRow, ...]] = {2: N2_ROWS, 3: N3_ROWS}


def table_rows(n: int) -> tuple[TableRow, ...]:
    try:
        return TABLES[n]
    except KeyError:
        raise ValueError(f"no published table for degree {n}; available: {sorted(TABLES)}") from None


def table_eigenvalues(n: int, params: DeformationParams) -> np.ndarray:
    return np.array([row.eigenvalue_at(params) for row in table_rows(n)], dtype=complex)


# -- PT tables (state numbers are the row indices 1..) --------------------

PT_TABLES: dict[int, dict[str, tuple[frozenset, frozenset]]] = {
    2: {
        "1": (frozenset({1, 2, 3, 4, 5, 6}), frozenset()),
        "2": (frozenset({1, 4, 5, 6}), frozenset({2, 3})),
        "3": (frozenset({1, 4, 5, 6}), frozenset({2, 3})),
        "13": (frozenset({1, 4, 5, 6}), frozenset({2, 3})),
        "23": (frozenset({1, 2, 3, 4, 5, 6}), frozenset()),
    },
    3: {
        "1": (frozenset({1, 8, 10}), frozenset({2, 3, 4, 5, 6, 7, 9})),
        "2": (frozenset({1, 2, 3, 7, 9}), frozenset({4, 5, 6, 8, 10})),
        "3": (frozenset({7, 8, 9, 10}), frozenset({1, 2, 3, 4, 5, 6})),
        "13": (frozenset({4, 5, 6, 8, 10}), frozenset({1, 2, 3, 7, 9})),
        "23": (frozenset({2, 3, 4, 5, 6, 7, 9}), frozenset({1, 8, 10})),
    },
}

# Conjugations the text says are not symmetries of H1, with the states it
# calls symmetric under them anyway (``None``: no state list given).
NON_SYMMETRY_CLAIMS: dict[int, dict[str, frozenset | None]] = {
    2: {"12": frozenset({1, 5}), "123": frozenset({1, 5})},
    3: {"12": None, "123": None},
}

# Conjugations the text claims are operator symmetries of H1.
CLAIMED_SYMMETRIES = ("1", "2", "3", "13", "23")


# -- special points of the degeneracy remarks -----------------------------


@dataclass(frozen=True)
class SpecialPoint:
    degree: int
    eigenvalue: float
    multiplicity: int
    c: float


def _points(n: int, value: float, mult: int, cs) -> list[SpecialPoint]:
    return [SpecialPoint(n, value, mult, float(c)) for c in cs]


SPECIAL_POINTS: tuple[SpecialPoint, ...] = tuple(
    _points(2, 0.0, 2, (0.5, 1.5, 2))
    + _points(2, 1.0, 3, (1, 0.5, -0.5, 3, 1.5, 2.5))
    + _points(2, 9 / 16, 2, (1.25,))
    + _points(2, 1 / 16, 2, (1.75,))
    + _points(2, 0.25, 2, (1,))
    + _points(3, 2.25, 3, (-1.5, 0.5, -0.5, 0, 1, 2.5, 3, 3.5, 4, 4.5))
    + _points(3, 0.25, 3, (-0.5, 1, 3, 3.5))
    + _points(3, 2.25, 4, (1.5,))
    + _points(3, 0.25, 4, (0.5, 1.5, 2, 2.5))
)


def special_points(n: int) -> list[SpecialPoint]:
    return [p for p in SPECIAL_POINTS if p.degree == n]


# -- derivation of representatives ----------------------------------------


@dataclass(frozen=True)
class Derivation:
    label: str
    vector: np.ndarray
    c_used: float
    eigenspace_dim: int
    anchor_residual: float

    @property
    def ok(self) -> bool:
        return self.eigenspace_dim > 0 and self.anchor_residual < VECTOR_TOL


def _eigenspace(block: np.ndarray, value: float) -> np.ndarray:
    _, s, vh = np.linalg.svd(block - value * np.eye(block.shape[0]))
    scale = max(1.0, float(np.abs(block).max()))
    null = vh[s < 1e-8 * scale].conj().T
    return null


def derive_representative(row: TableRow, degree: int, params: DeformationParams) -> Derivation:
    """Eigenvector of H1 for the row's eigenvalue pinned by the row's anchor kets.

    The search runs in the row's ``n3`` block.  When the tabulated eigenvalue
    is absent at the requested ``c`` (or its eigenspace cannot meet the
    anchors) the block is re-solved at ``c = 0``, the only value where the
    ``n3 = 0`` rows are reproduced.
    """
    basis = monomial_basis(degree)
    sl = dict(basis.block_slices())[row.n3]
    local = {basis.elements[i]: i - sl.start for i in range(sl.start, sl.stop)}
    rows_idx = [local[k] for k in row.anchors]
    target = np.array([row.anchors[k] for k in row.anchors], dtype=complex)
    best = None
    for c_try in dict.fromkeys((params.c, 0.0)):
        prm = params.replace(c=c_try)
        block = h1_matrix(degree, prm).entries[sl, sl]
        null = _eigenspace(block, row.eigenvalue_at(prm))
        full = np.zeros(len(basis), dtype=complex)
        if not null.shape[1]:
            der = Derivation(row.label, full, c_try, 0, float("inf"))
        else:
            coef, *_ = np.linalg.lstsq(null[rows_idx], target, rcond=None)
            vec = null @ coef
            full[sl] = vec
            der = Derivation(row.label, full, c_try, null.shape[1], float(np.linalg.norm(vec[rows_idx] - target)))
        if der.ok:
            return der
        best = best or der
    return best


def representatives(n: int, params: DeformationParams) -> tuple[dict[str, np.ndarray], list[dict]]:
    """Vectors to classify for each table row, plus notes on substitutions.

    Rows without a typo use the printed vector (denominators cleared); typo
    rows use the derived resolution when it exists.
    """
    reps, notes = {}, []
    for row in table_rows(n):
        if row.typo:
            der = derive_representative(row, n, params)
            if der.ok:
                reps[row.label] = der.vector
                notes.append({"kind": "representative_resolved", "row": row.label, "reason": row.typo,
                              "c_used": der.c_used})
                continue
            notes.append({"kind": "representative_unresolved", "row": row.label, "reason": row.typo,
                          "anchor_residual": der.anchor_residual})
        reps[row.label] = row.cleared_vector(params, n)
    return reps, notes


# -- comparisons ------------------------------------------------------------


def _cplx(z: complex) -> dict:
    return {"re": float(z.real), "im": float(z.imag)}


def _vec_json(v: np.ndarray, n: int) -> dict:
    basis = monomial_basis(n)
    return {basis.label(i): _cplx(z) for i, z in enumerate(v) if abs(z) > 1e-14}


def compare_eigenvalues(n: int, params: DeformationParams, eigenvalues, block_of) -> list[dict]:
    """Match each tabulated eigenvalue to an unused computed one in the same block."""
    out = []
    used: set[int] = set()
    for row in table_rows(n):
        claimed = row.eigenvalue_at(params)
        cands = [k for k, b in enumerate(block_of) if b == row.n3 and k not in used]
        best = min(cands, key=lambda k: abs(eigenvalues[k] - claimed), default=None)
        if best is not None and abs(eigenvalues[best] - claimed) <= EIGEN_TOL * max(1.0, abs(claimed)):
            used.add(best)
            continue
        out.append({
            "kind": "eigenvalue",
            "row": row.label,
            "formula": row.eigenvalue_text,
            "claimed": claimed,
            "computed_block": sorted(float(eigenvalues[k].real) for k, b in enumerate(block_of) if b == row.n3),
            "n3": row.n3,
        })
    return out


def eigen_residual(row: TableRow, n: int, params: DeformationParams, vector: np.ndarray) -> float:
    h = h1_matrix(n, params).entries
    lam = row.eigenvalue_at(params)
    norm = np.linalg.norm(vector)
    return float(np.linalg.norm(h @ vector - lam * vector) / norm) if norm else float("inf")


def compare_eigenvectors(n: int, params: DeformationParams) -> list[dict]:
    out = []
    for row in table_rows(n):
        printed = row.cleared_vector(params, n)
        res = eigen_residual(row, n, params, printed)
        if res < VECTOR_TOL and not row.typo:
            continue
        der = derive_representative(row, n, params)
        entry = {
            "kind": "eigenvector",
            "row": row.label,
            "printed": row.vector_text,
            "printed_residual": res,
            "derived": _vec_json(der.vector, n) if der.ok else None,
            "derived_at_c": der.c_used,
            "anchor_residual": der.anchor_residual,
        }
        if row.typo:
            entry["suspected_typo"] = row.typo
        if der.ok:
            pv = row.printed_vector(params, n)
            if pv is not None:
                basis = monomial_basis(n)
                entry["coefficient_ratio_printed_over_derived"] = {
                    basis.label(i): _cplx(pv[i] / der.vector[i])
                    for i in range(len(basis))
                    if abs(der.vector[i]) > 1e-12 and abs(pv[i]) > 1e-12
                }
        out.append(entry)
    if n == 2 and params.gamma > 0:
        out.append(psi6_reading(params))
    return out


def psi6_reading(params: DeformationParams) -> dict:
    """Which reading of the psi6 brace is an eigenvector (checked where the row holds, c = 0)."""
    prm = params.replace(c=0.0)
    psi6 = N2_ROWS[5]
    res = {
        "2i*gamma": eigen_residual(psi6, 2, prm, psi6.cleared_vector(prm, 2)),
        "2i/gamma": eigen_residual(PSI6_ALT, 2, prm, PSI6_ALT.cleared_vector(prm, 2)),
    }
    return {"kind": "reading", "row": "psi6", "residuals_at_c0": res, "adopted": min(res, key=res.get)}


def check_spectrum(n: int, params: DeformationParams, report) -> list[dict]:
    return compare_eigenvalues(n, params, report.eigenvalues, report.block_of) + compare_eigenvectors(n, params)


def compare_pt(n: int, sym: SymmetryReport) -> list[dict]:
    """Strict verdicts on representatives against the published PT tables."""
    out = []
    table = PT_TABLES.get(n, {})
    claims = NON_SYMMETRY_CLAIMS.get(n, {})
    prefix = "psi" if n == 2 else "chi"
    for res in sym.representatives:
        key = res.spec.key
        by_id = {s.state_id: s for s in res.states}
        if key in CLAIMED_SYMMETRIES and not res.is_symmetry:
            out.append({"kind": "pt_operator", "spec": res.spec.label, "published": "symmetry",
                        "computed": "not a symmetry", "operator_residual": res.operator_residual})
        if key in claims and res.is_symmetry:
            out.append({"kind": "pt_operator", "spec": res.spec.label, "published": "not a symmetry",
                        "computed": "symmetry", "operator_residual": res.operator_residual})
        if key in table:
            sym_set, brk_set = table[key]
            for k in sorted(sym_set | brk_set):
                st = by_id.get(f"{prefix}{k}")
                if st is None:
                    continue
                claimed = k in sym_set
                if claimed != st.strict:
                    out.append(_state_conflict(res.spec.label, st, claimed))
        elif claims.get(key):
            for k in range(1, len(table_rows(n)) + 1):
                st = by_id.get(f"{prefix}{k}")
                if st is None:
                    continue
                claimed = k in claims[key]
                if claimed != st.strict or (claimed and not st.adopting):
                    out.append(_state_conflict(res.spec.label, st, claimed, adopting=True))
    return out


def _state_conflict(spec: str, st, claimed: bool, adopting: bool = False) -> dict:
    entry = {
        "kind": "pt_state",
        "spec": spec,
        "state": st.state_id,
        "published": "symmetric" if claimed else "breaking",
        "computed_strict": st.strict,
        "computed_projective": st.projective,
        "strict_residual": st.strict_residual,
    }
    if st.projective:
        entry["lambda"] = _cplx(st.factor)
    if adopting:
        entry["published_adopting"] = claimed
        entry["computed_adopting"] = st.adopting
    return entry
