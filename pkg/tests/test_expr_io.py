import csv
import io
import json

import hypothesis.strategies as st
import numpy as np
import pytest
from hypothesis import given, settings

from higgs_spectra.bargmann import SpectralReport, degeneracy_scan, h1_spectrum
from higgs_spectra.boson_algebra import BosonPolynomial, annihilator, creator, hop, max_difference, to_text
from higgs_spectra.expr_io import (
    Atom,
    ParseError,
    Power,
    Product,
    UnboundParameter,
    eigenvalues_csv,
    emit_report,
    load_report,
    parse,
    parse_polynomial,
    scan_csv,
    to_jsonable,
)
from higgs_spectra.operator_zoo import DeformationParams

from conftest import polynomials

P06 = DeformationParams.from_gamma(0.6, c=3)

MALFORMED = [
    ("", 1, 1),
    ("a(1", 1, 4),
    ("a(1)*", 1, 6),
    ("ad(0)", 1, 4),
    ("ad(4)", 1, 4),
    ("a(1)^-1", 1, 6),
    ("a(1)^1.5", 1, 6),
    ("foo(1)", 1, 1),
    ("a(1) a(2)", 1, 6),
    ("3 $ 4", 1, 3),
    ("(a(1)+a(2)", 1, 11),
    ("a(1)+\n  *a(2)", 2, 3),
    ("a(1))", 1, 5),
    ("gamma(1)", 1, 6),
    ("a", 1, 2),
    ("ad()", 1, 4),
    ("++a(1)", 1, 1),
]


def test_product_of_atoms():
    ast = parse("ad(1)*a(2)")
    assert ast == Product((Atom(True, 1), Atom(False, 2)))


def test_scalar_power_product():
    ast = parse("i*gamma*ad(3)^2*a(3)^2")
    assert isinstance(ast, Product) and len(ast.factors) == 4
    assert ast.factors[2] == Power(Atom(True, 3), 2)
    p = parse_polynomial("i*gamma*ad(3)^2*a(3)^2", P06)
    assert p.coefficient((0, 0, 2), (0, 0, 2)) == pytest.approx(0.6j)


def test_lowering_distributes():
    p = parse_polynomial("ad(1)*(a(2)+a(3))")
    assert len(p) == 2
    assert p == hop(1, 2) + hop(1, 3)


def test_reordering_on_lowering():
    assert parse_polynomial("a(1)*ad(1)") == hop(1, 1) + 1


def test_m0_example():
    p = parse_polynomial("omega0*(c - ad(3)*a(3))", P06)
    expected = 0.8 * (3 - hop(3, 3))
    assert max_difference(p, expected) < 1e-15


def test_complex_literals_and_bare_i():
    p = parse_polynomial("2+3i + i*ad(1)*a(1)")
    assert p.constant() == 2 + 3j
    assert p.coefficient((1, 0, 0), (1, 0, 0)) == 1j


def test_unicode_alias():
    assert parse_polynomial("a†(2)*a(1)") == parse_polynomial("ad(2)*a(1)")


def test_unbound_parameter():
    ast = parse("beta*ad(1)*a(1)")
    with pytest.raises(UnboundParameter):
        parse_polynomial("beta*ad(1)*a(1)")
    assert ast is not None


@pytest.mark.parametrize("text,line,col", MALFORMED)
def test_malformed_corpus(text, line, col):
    with pytest.raises(ParseError) as err:
        parse(text)
    assert (err.value.line, err.value.column) == (line, col)
    assert f"line {line}, column {col}" in str(err.value)


def test_mode_range_follows_n_modes():
    parse("a(5)", n_modes=5)
    with pytest.raises(ParseError):
        parse("a(5)", n_modes=3)


# -- round trip ---------------------------------------------------------------

finite = st.floats(-1e6, 1e6, allow_nan=False).filter(lambda x: x == 0 or abs(x) > 1e-12)


@st.composite
def float_polynomials(draw):
    m = draw(st.integers(1, 3))
    exps = st.tuples(*[st.integers(0, 3)] * m)
    coeff = st.builds(complex, finite, finite)
    return BosonPolynomial(draw(st.dictionaries(st.tuples(exps, exps), coeff, max_size=5)), m)


@settings(max_examples=200, deadline=None)
@given(st.one_of(polynomials(), float_polynomials()))
def test_canonical_text_round_trip(p):
    back = parse_polynomial(to_text(p), n_modes=p.n_modes)
    keys = {k for k, _ in p} | {k for k, _ in back}
    for key in keys:
        a, b = p.coefficient(*key), back.coefficient(*key)
        assert abs(a - b) <= 1e-15 * max(1.0, abs(a))


@st.composite
def expressions(draw, depth=3):
    """Random expression text paired with its value built directly from the algebra."""
    if depth == 0 or draw(st.booleans()):
        kind = draw(st.sampled_from(["num", "inum", "atom", "param"]))
        if kind == "num":
            k = draw(st.integers(0, 5))
            return str(k), BosonPolynomial.scalar(k)
        if kind == "inum":
            k = draw(st.integers(1, 5))
            return f"{k}i", BosonPolynomial.scalar(1j * k)
        if kind == "param":
            name = draw(st.sampled_from(["gamma", "omega0", "c", "beta"]))
            return name, BosonPolynomial.scalar(getattr(P06, name))
        j = draw(st.integers(1, 3))
        if draw(st.booleans()):
            return f"ad({j})", creator(j)
        return f"a({j})", annihilator(j)
    op = draw(st.sampled_from(["+", "-", "*", "^", "neg"]))
    lt, lp = draw(expressions(depth=depth - 1))
    if op == "^":
        e = draw(st.integers(0, 2))
        out = BosonPolynomial.scalar(1)
        for _ in range(e):
            out = out * lp
        return f"({lt})^{e}", out
    if op == "neg":
        return f"-({lt})", -lp
    rt, rp = draw(expressions(depth=depth - 1))
    value = {"+": lp + rp, "-": lp - rp, "*": lp * rp}[op]
    return f"({lt}) {op} ({rt})", value


@settings(max_examples=200, deadline=None)
@given(expressions())
def test_random_expressions_lower_and_reparse(pair):
    text, expected = pair
    p = parse_polynomial(text, P06)
    assert max_difference(p, expected) < 1e-12
    again = parse_polynomial(to_text(p), P06)
    assert max_difference(again, p) <= 1e-15 * max(1.0, p.max_abs())


# -- reports ------------------------------------------------------------------


def test_block_sizes_in_json():
    data = json.loads(emit_report(h1_spectrum(2, P06)))
    assert data["block_sizes"] == [3, 2, 1]
    assert data["schema_version"] == 1


def test_empty_ledger_serialises_as_empty_list():
    blob = emit_report({"paper_discrepancies": []})
    assert b'"paper_discrepancies": []' in blob


def test_non_finite_becomes_null():
    assert to_jsonable({"x": float("nan"), "z": complex(1, float("inf"))}) == {"x": None, "z": {"re": 1.0, "im": None}}


def test_load_report_checks_version():
    with pytest.raises(ValueError):
        load_report(b'{"schema_version": 99}')


@settings(max_examples=200, deadline=None)
@given(
    st.integers(0, 3),
    st.floats(0, 0.95),
    st.floats(-5, 12, allow_nan=False),
)
def test_json_determinism_and_round_trip(n, gamma, c):
    rep = h1_spectrum(n, DeformationParams.from_gamma(gamma, c=c))
    blob = emit_report(rep)
    assert blob == emit_report(rep)
    assert blob == emit_report(SpectralReport.from_dict(load_report(blob)))
    back = SpectralReport.from_dict(load_report(blob))
    assert np.array_equal(back.eigenvalues, rep.eigenvalues)
    assert np.array_equal(back.right_eigenvectors, rep.right_eigenvectors)


def test_eigenvalues_csv():
    rows = list(csv.reader(io.StringIO(eigenvalues_csv(h1_spectrum(2, P06)))))
    assert rows[0] == ["index", "n3", "re", "im"]
    assert len(rows) == 7
    assert sorted(int(r[1]) for r in rows[1:]) == [0, 0, 0, 1, 1, 2]


def test_scan_csv_marks_special_points():
    rows = degeneracy_scan(2, P06, [1.25])
    text = scan_csv(rows, {(1.25, 0.5625)})
    parsed = list(csv.DictReader(io.StringIO(text)))
    hit = [r for r in parsed if r["published_special"] == "1"]
    assert len(hit) == 1 and float(hit[0]["eigenvalue_re"]) == pytest.approx(0.5625)
    assert scan_csv([]) == "c,eigenvalue_re,eigenvalue_im,multiplicity,jump,published_special\n"
