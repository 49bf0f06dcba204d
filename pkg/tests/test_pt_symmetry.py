import hypothesis.strategies as st
import numpy as np
import pytest
from hypothesis import given, settings

from higgs_spectra.bargmann import h1_matrix, h1_spectrum, monomial_basis, to_matrix
from higgs_spectra.boson_algebra import hop
from higgs_spectra.operator_zoo import DeformationParams
from higgs_spectra.pt_symmetry import (
    ALL_SPECS,
    BREAKING,
    PROJECTIVE,
    STRICT,
    ConjugationSpec,
    adjoint_residuals,
    apply_conjugation,
    biorthogonality_check,
    classify_state,
    classify_states,
    cluster_invariance,
    fock_adjoint,
    fock_inner,
    operator_symmetry_residual,
)

P06 = DeformationParams.from_gamma(0.6, c=3)
SAMPLES = [DeformationParams.from_gamma(g, c=c) for g in (0.1, 0.3, 0.6, 0.8, 0.95) for c in (-1.0, 3.0)]

specs = st.sampled_from(ALL_SPECS)
finite = st.floats(-5, 5, allow_nan=False)
cplx = st.builds(complex, finite, finite)


@st.composite
def vectors(draw, n):
    d = len(monomial_basis(n))
    return np.array(draw(st.lists(cplx, min_size=d, max_size=d)))


def test_parse_and_label():
    s = ConjugationSpec.parse("31")
    assert s.flipped_modes == {1, 3}
    assert s.label == "C3(13)"
    assert ConjugationSpec.parse("C3(2)").key == "2"
    for bad in ("", "4", "11", "x"):
        with pytest.raises(ValueError):
            ConjugationSpec.parse(bad)
    assert ConjugationSpec.parse("123").is_global


def test_signs_on_monomials():
    b = monomial_basis(2)
    v = np.zeros(len(b), dtype=complex)
    v[b.index[(1, 0, 1)]] = 1j
    out = apply_conjugation(ConjugationSpec.parse("1"), v, b)
    assert out[b.index[(1, 0, 1)]] == 1j  # conj gives -i, odd power of z1 flips it back


@settings(max_examples=200, deadline=None)
@given(specs, st.integers(0, 4).flatmap(lambda n: st.tuples(st.just(n), vectors(n))))
def test_conjugation_involution(spec, data):
    n, v = data
    b = monomial_basis(n)
    assert np.array_equal(apply_conjugation(spec, apply_conjugation(spec, v, b), b), v)


@settings(max_examples=200, deadline=None)
@given(specs, cplx, cplx, st.integers(0, 3).flatmap(lambda n: st.tuples(st.just(n), vectors(n), vectors(n))))
def test_conjugation_antilinear(spec, a, c, data):
    n, u, v = data
    b = monomial_basis(n)
    lhs = apply_conjugation(spec, a * u + c * v, b)
    rhs = np.conj(a) * apply_conjugation(spec, u, b) + np.conj(c) * apply_conjugation(spec, v, b)
    assert np.allclose(lhs, rhs, rtol=0, atol=1e-12)


@settings(max_examples=100, deadline=None)
@given(specs, st.integers(0, 3).flatmap(lambda n: st.tuples(st.just(n), vectors(n), vectors(n))))
def test_conjugation_isometric(spec, data):
    n, u, v = data
    b = monomial_basis(n)
    cu, cv = apply_conjugation(spec, u, b), apply_conjugation(spec, v, b)
    # antiunitary: <Cu, Cv> = conj(<u, v>)
    assert fock_inner(b, cu, cv) == pytest.approx(np.conj(fock_inner(b, u, v)), abs=1e-9)


def test_fock_adjoint_of_hop():
    b = monomial_basis(3)
    adj = fock_adjoint(to_matrix(hop(1, 2), b)).entries
    assert np.allclose(adj, to_matrix(hop(2, 1), b).entries)


@pytest.mark.parametrize("params", SAMPLES, ids=lambda p: f"g{p.gamma}-c{p.c}")
@pytest.mark.parametrize("n", [2, 3])
def test_operator_symmetries(params, n):
    mat = h1_matrix(n, params)
    for key in ("1", "2", "13", "23"):
        assert operator_symmetry_residual(ConjugationSpec.parse(key), mat) < 1e-12
    for key in ("12", "123", "3"):
        assert operator_symmetry_residual(ConjugationSpec.parse(key), mat) > 1e-3
    adj = adjoint_residuals(mat)
    assert adj["global_conjugated_adjoint_minus_h"] < 1e-12
    assert adj["fock_adjoint_minus_h"] > 1e-3


def test_hermitian_limit():
    mat = h1_matrix(2, DeformationParams.from_gamma(0.0, c=3))
    assert adjoint_residuals(mat)["fock_adjoint_minus_h"] == 0
    for spec in ALL_SPECS:
        assert operator_symmetry_residual(spec, mat) == 0


def test_state_verdicts():
    b = monomial_basis(2)
    v = np.zeros(len(b), dtype=complex)
    v[b.index[(0, 1, 1)]] = 1
    v[b.index[(1, 0, 1)]] = -3j
    s2 = ConjugationSpec.parse("2")
    res = classify_state(s2, v, b)
    # C psi = -psi: breaking strictly, symmetric projectively
    assert res.verdict == PROJECTIVE and not res.strict
    assert res.factor == pytest.approx(-1)
    assert classify_state(ConjugationSpec.parse("1"), v, b).verdict == STRICT
    w = v.copy()
    w[b.index[(1, 0, 1)]] = 1
    assert classify_state(s2, w, b).verdict == BREAKING


def test_adopting_flag():
    b = monomial_basis(2)
    v = np.zeros(len(b), dtype=complex)
    v[b.index[(0, 0, 2)]] = 1
    spec = ConjugationSpec.parse("12")
    assert classify_state(spec, v, b, operator_is_symmetry=False).adopting
    assert not classify_state(spec, v, b, operator_is_symmetry=True).adopting


def test_classify_states_report():
    rep = h1_spectrum(2, P06)
    sym = classify_states(rep, ALL_SPECS)
    assert sym.result("1").is_symmetry
    assert not sym.result("12").is_symmetry
    for res in sym.results:
        assert len(res.states) == 6
        assert res.reality_violations == []
    d = sym.to_dict()
    assert d["specs"][0]["spec"] == "C3(1)"
    assert {"id", "strict", "projective", "lambda", "residual"} <= set(d["specs"][0]["states"][0])


def test_cluster_verdicts_at_degenerate_point():
    # c = 1: eigenvalue 1 is shared by the n3=1 and n3=0 blocks
    rep = h1_spectrum(2, P06.replace(c=1.0))
    sym = classify_states(rep, [ConjugationSpec.parse("1")])
    clusters = sym.results[0].clusters
    assert clusters and all(c.invariant for c in clusters)


def test_cluster_invariance_detects_non_invariant_span():
    b = monomial_basis(1)
    v = np.array([[0], [1.0], [1j]], dtype=complex)  # |1,0,0> + i|0,1,0>
    assert cluster_invariance(ConjugationSpec.parse("3"), v, b) > 0.1


def test_biorthogonality_simple_spectrum():
    res = biorthogonality_check(h1_spectrum(2, P06.replace(c=10.0)))
    assert res.residual < 1e-8
    assert res.degenerate_clusters == []


def test_biorthogonality_hermitian_limit_is_orthogonality():
    rep = h1_spectrum(2, DeformationParams.from_gamma(0.0, c=10.0))
    res = biorthogonality_check(rep)
    assert res.residual < 1e-12
    # right eigenvectors are Fock-orthogonal
    b = rep.basis
    r = rep.right_eigenvectors
    gram = np.array([[fock_inner(b, r[:, i], r[:, j]) for j in range(6)] for i in range(6)])
    assert np.abs(gram - np.diag(np.diag(gram))).max() < 1e-12


def test_biorthogonality_degenerate_cluster():
    # at c=1, (c-2)^2 from the n3=2 block meets (j0+c)^2 with j0=0
    res = biorthogonality_check(h1_spectrum(2, P06.replace(c=1.0)))
    assert res.degenerate_clusters
    assert res.residual < 1e-8
