import numpy as np
import pytest

from higgs_spectra.bargmann import degeneracy_scan, h1_matrix, h1_spectrum, monomial_basis, multiplicity_at, scan_grid
from higgs_spectra.operator_zoo import DeformationParams
from higgs_spectra.pt_symmetry import ALL_SPECS, classify_states
from higgs_spectra.published_tables import (
    N2_ROWS,
    N3_ROWS,
    PT_TABLES,
    check_spectrum,
    compare_pt,
    derive_representative,
    eigen_residual,
    psi6_reading,
    representatives,
    special_points,
    table_eigenvalues,
    table_rows,
)

from conftest import ci_params

P06 = DeformationParams.from_gamma(0.6, c=3)
ROWS = {r.label: r for r in N2_ROWS + N3_ROWS}


def block_eigs(n, params, n3):
    rep = h1_spectrum(n, params)
    return np.sort(rep.eigenvalues[np.array(rep.block_of) == n3].real)


def test_unknown_degree():
    with pytest.raises(ValueError):
        table_rows(4)


@pytest.mark.parametrize("n", [2, 3])
def test_rows_with_n3_positive_match_everywhere(n):
    for p in ci_params():
        for n3 in range(1, n + 1):
            claimed = sorted(r.eigenvalue_at(p) for r in table_rows(n) if r.n3 == n3)
            assert block_eigs(n, p, n3) == pytest.approx(claimed, abs=1e-9)


@pytest.mark.parametrize("n", [2, 3])
def test_n3_zero_rows_match_only_at_c_zero(n):
    for g in (0.0, 0.3, 0.6, 0.8):
        p = DeformationParams.from_gamma(g, c=0.0)
        claimed = sorted(r.eigenvalue_at(p) for r in table_rows(n) if r.n3 == 0)
        assert block_eigs(n, p, 0) == pytest.approx(claimed, abs=1e-9)
    # at other c the block holds (j0 + c)^2
    p = P06
    j0 = np.arange(n + 1) - n / 2
    assert block_eigs(n, p, 0) == pytest.approx(np.sort((j0 + p.c) ** 2), abs=1e-9)


@pytest.mark.parametrize("label", [r.label for r in N2_ROWS + N3_ROWS if r.n3 > 0])
def test_printed_vectors_with_n3_positive_are_eigenvectors(label):
    row = ROWS[label]
    n = 2 if label.startswith("psi") else 3
    for p in ci_params():
        if p.gamma == 0:
            continue
        assert eigen_residual(row, n, p, row.cleared_vector(p, n)) < 1e-8


def test_psi6_reading():
    r = psi6_reading(P06)
    assert r["adopted"] == "2i*gamma"
    assert r["residuals_at_c0"]["2i*gamma"] < 1e-12
    assert r["residuals_at_c0"]["2i/gamma"] > 0.1


@pytest.mark.parametrize("gamma", [0.3, 0.6, 0.8])
def test_chi7_to_chi10_resolution(gamma):
    p = DeformationParams.from_gamma(gamma, c=3)
    w2 = p.omega0**2
    b = monomial_basis(3)
    expected = {
        "chi7": {(3, 0, 0): (1 - w2) / (3 + w2), (0, 3, 0): 2j * gamma / (3 + w2), (1, 2, 0): 1},
        "chi8": {(3, 0, 0): -2j * gamma / (3 + w2), (0, 3, 0): (1 - w2) / (3 + w2), (2, 1, 0): 1},
        "chi9": {(3, 0, 0): 1 / 3, (0, 3, 0): 2j / (3 * gamma), (1, 2, 0): 1},
        "chi10": {(3, 0, 0): -2j / (3 * gamma), (0, 3, 0): 1 / 3, (2, 1, 0): 1},
    }
    for label, coeffs in expected.items():
        der = derive_representative(ROWS[label], 3, p)
        assert der.ok and der.c_used == 0.0
        vec = np.zeros(len(b), dtype=complex)
        for ket, v in coeffs.items():
            vec[b.index[ket]] = v
        assert np.allclose(der.vector, vec, atol=1e-10)


def test_chi8_printed_is_three_times_derived():
    p = P06
    row = ROWS["chi8"]
    der = derive_representative(row, 3, p)
    printed = row.printed_vector(p, 3)
    b = monomial_basis(3)
    for ket in ((3, 0, 0), (0, 3, 0)):
        assert printed[b.index[ket]] / der.vector[b.index[ket]] == pytest.approx(3)


def test_representatives_use_resolutions_only_for_typo_rows():
    reps, notes = representatives(3, P06)
    assert set(reps) == {r.label for r in N3_ROWS}
    assert {n["row"] for n in notes} == {"chi7", "chi8", "chi9", "chi10"}
    assert all(n["kind"] == "representative_resolved" for n in notes)


def strict_table(n, params):
    reps, _ = representatives(n, params)
    sym = classify_states(h1_spectrum(n, params), ALL_SPECS, representatives=reps)
    return sym


@pytest.mark.parametrize("gamma", [0.3, 0.6, 0.8])
@pytest.mark.parametrize("n", [2, 3])
def test_pt_tables_reproduced_except_c3_3_row(n, gamma):
    sym = strict_table(n, DeformationParams.from_gamma(gamma, c=3))
    conflicts = compare_pt(n, sym)
    specs_in_conflict = {d["spec"] for d in conflicts}
    assert specs_in_conflict == {"C3(3)"}
    expected = {"psi4", "psi6"} if n == 2 else {"chi7", "chi8", "chi9", "chi10"}
    assert {d["state"] for d in conflicts if d["kind"] == "pt_state"} == expected


def test_n3_rows_are_listed_completely():
    for n, table in PT_TABLES.items():
        for sym_set, brk_set in table.values():
            assert sym_set | brk_set == set(range(1, len(table_rows(n)) + 1))
            assert not sym_set & brk_set


def test_check_spectrum_flags_only_n3_zero_rows():
    rep = h1_spectrum(2, P06)
    ledger = check_spectrum(2, P06, rep)
    eig = {d["row"] for d in ledger if d["kind"] == "eigenvalue"}
    assert eig == {"psi4", "psi5", "psi6"}
    at_zero = DeformationParams.from_gamma(0.6, c=0.0)
    assert not [d for d in check_spectrum(2, at_zero, h1_spectrum(2, at_zero)) if d["kind"] == "eigenvalue"]


def test_table_eigenvalues_formula_strings():
    assert [r.eigenvalue_text for r in N2_ROWS] == ["(c-2)^2", "(c-1/2)^2", "(c-3/2)^2", "0", "1", "1"]
    assert table_eigenvalues(2, P06).real == pytest.approx([1, 6.25, 2.25, 0, 1, 1])


@pytest.mark.parametrize("n", [2, 3])
def test_remarks_consistent_with_table_formulas(n):
    """The degeneracy remarks follow from the tabulated eigenvalue formulas."""
    grid = scan_grid(-2, 5, 0.25)
    rows = degeneracy_scan(n, P06, grid, eigenvalue_source=lambda n_, prm: table_eigenvalues(n_, prm))
    for pt in special_points(n):
        assert multiplicity_at(rows, pt.c, pt.eigenvalue) >= pt.multiplicity - 1
    four = [pt for pt in special_points(3) if pt.multiplicity == 4 and pt.eigenvalue == 2.25]
    if n == 3:
        assert multiplicity_at(rows, four[0].c, 2.25) == 4


def test_gamma_zero_cleared_vectors_finite():
    p = DeformationParams.from_gamma(0.0, c=3)
    for row in N2_ROWS + N3_ROWS:
        n = 2 if row.label.startswith("psi") else 3
        assert np.all(np.isfinite(row.cleared_vector(p, n)))
    assert ROWS["psi4"].printed_vector(p, 2) is None
