import itertools

import hypothesis.strategies as st
import pytest

from higgs_spectra.boson_algebra import BosonPolynomial
from higgs_spectra.operator_zoo import DeformationParams

CI_GAMMAS = (0.0, 0.3, 0.6, 0.8)
CI_CS = (-1.0, 0.5, 2.0, 3.0, 10.0)
CI_SAMPLES = tuple(itertools.product(CI_GAMMAS, CI_CS))

ACCEPTANCE_LINES: list[str] = []


def ci_params():
    return [DeformationParams.from_gamma(g, c=c) for g, c in CI_SAMPLES]


@pytest.fixture
def acceptance_line():
    """Record and print one PASS/FAIL line, then assert."""

    def record(number: int, ok: bool, detail: str) -> None:
        line = f"criterion {number:>2}: {'PASS' if ok else 'FAIL'}  {detail}"
        ACCEPTANCE_LINES.append(line)
        print(line)
        assert ok, line

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


# -- strategies -------------------------------------------------------------

small_ints = st.integers(min_value=-3, max_value=3)
gaussian_ints = st.builds(complex, small_ints, small_ints)


@st.composite
def polynomials(draw, n_modes=None, max_terms=4, max_exp=2):
    """Random polynomial with Gaussian-integer coefficients (exact float arithmetic)."""
    m = n_modes or draw(st.integers(min_value=1, max_value=3))
    exps = st.tuples(*[st.integers(0, max_exp)] * m)
    terms = draw(st.dictionaries(st.tuples(exps, exps), gaussian_ints, max_size=max_terms))
    return BosonPolynomial(terms, m)
