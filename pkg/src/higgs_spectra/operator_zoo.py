"""Operator families of the deformed su(2) / Higgs construction.

Everything is built numerically from a :class:`DeformationParams` value:

* the bi-orthogonal two-level frame and the deformed spin matrices,
* the deformed Jordan-Schwinger generators ``J0, J+, J-`` (modes 1, 2),
* the deformed Dyson-Maleev generators ``M0, M+, M-`` (mode 3),
* the fused Higgs generators ``H0, H+, H-, L0`` and the three-boson
  Hamiltonian ``H1``.

Each family carries ``verify()`` returning :class:`IdentityCheck` records so
that residuals of the defining relations can be reported rather than assumed.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Mapping

import numpy as np

from .boson_algebra import (
    BosonPolynomial,
    annihilator,
    commutator,
    creator,
    formal_adjoint,
    hop,
    max_difference,
    number_operator,
    term_text,
)

N_MODES = 3
RESIDUAL_TOL = 1e-10


class InvalidParams(ValueError):
    pass


class DegenerateFrameError(ValueError):
    pass


@dataclass(frozen=True)
class DeformationParams:
    """Scalar parameters of the construction.

    ``gamma = sin(theta)``, ``omega0 = cos(theta)`` and ``s**2 = -beta``
    are checked on construction; use :meth:`from_gamma` in practice.
    """

    theta: float
    gamma: float
    omega0: float
    phi: float = math.pi
    p: float = 1.0
    c: float = 0.0
    beta: float = 1.0
    s: complex = 1j

    def __post_init__(self) -> None:
        if abs(self.gamma**2 + self.omega0**2 - 1) > 1e-12:
            raise InvalidParams("gamma^2 + omega0^2 must equal 1")
        if abs(math.sin(self.theta) - self.gamma) > 1e-12 or abs(math.cos(self.theta) - self.omega0) > 1e-12:
            raise InvalidParams("gamma, omega0 inconsistent with theta")
        if abs(self.omega0) < 1e-12:
            raise InvalidParams("omega0 must be nonzero (theta != pi/2)")
        if abs(self.s**2 + self.beta) > 1e-12:
            raise InvalidParams("s^2 + beta must vanish")

    @classmethod
    def from_gamma(
        cls, gamma: float, c: float = 0.0, p: float = 1.0, beta: float = 1.0, phi: float = math.pi
    ) -> "DeformationParams":
        if not -1 < gamma < 1:
            raise InvalidParams(f"gamma must lie in (-1, 1), got {gamma}")
        if beta < 0:
            raise InvalidParams("beta must be non-negative")
        theta = math.asin(gamma)
        return cls(
            theta=theta,
            gamma=math.sin(theta),
            omega0=math.cos(theta),
            phi=phi,
            p=p,
            c=c,
            beta=beta,
            s=1j * math.sqrt(beta),
        )

    def replace(self, **changes) -> "DeformationParams":
        kw = dict(gamma=self.gamma, c=self.c, p=self.p, beta=self.beta, phi=self.phi)
        kw.update(changes)
        return DeformationParams.from_gamma(**kw)

    def to_dict(self) -> dict:
        return {
            "gamma": self.gamma,
            "omega0": self.omega0,
            "theta": self.theta,
            "phi": self.phi,
            "p": self.p,
            "c": self.c,
            "beta": self.beta,
            "s": {"re": self.s.real, "im": self.s.imag},
        }


@dataclass(frozen=True)
class IdentityCheck:
    """Outcome of one residual check; ``hard`` checks gate exit codes."""

    name: str
    residual: float
    tolerance: float = RESIDUAL_TOL
    hard: bool = True
    detail: str = ""
    first_failing_term: str | None = None

    @property
    def passed(self) -> bool:
        return self.residual < self.tolerance

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "residual": self.residual,
            "tolerance": self.tolerance,
            "hard": self.hard,
            "passed": self.passed,
            "detail": self.detail,
            "first_failing_term": self.first_failing_term,
        }


def first_failing_term(residual: BosonPolynomial, tol: float = RESIDUAL_TOL) -> str | None:
    """Canonical-order first term of ``residual`` above ``tol``, as text."""
    for (cre, ann), v in residual:
        if abs(v) >= tol:
            ops = term_text(cre, ann) or "1"
            return f"({v.real:.6g}{v.imag:+.6g}i) * {ops}"
    return None


def poly_check(name: str, residual: BosonPolynomial, tol: float = RESIDUAL_TOL, hard: bool = True, detail: str = "") -> IdentityCheck:
    return IdentityCheck(
        name=name,
        residual=residual.max_abs(),
        tolerance=tol,
        hard=hard,
        detail=detail,
        first_failing_term=first_failing_term(residual, tol),
    )


# -- two-level frame ------------------------------------------------------

# c^(1)_jk = (-1)^j delta_jk, c^(3)_jk = 1 - (-1)^j c^(1)_jk, c^(2)_jk = (-1)^j c^(3)_jk
C_COEFFS = {
    1: np.array([[-1, 0], [0, 1]], dtype=complex),
    2: np.array([[0, -1], [1, 0]], dtype=complex),
    3: np.array([[0, 1], [1, 0]], dtype=complex),
}


def _levi_civita(l: int, m: int, n: int) -> int:
    if len({l, m, n}) < 3:
        return 0
    return 1 if (l, m, n) in {(1, 2, 3), (2, 3, 1), (3, 1, 2)} else -1


@dataclass(frozen=True)
class TwoLevelFrame:
    u: tuple[np.ndarray, np.ndarray]
    T: np.ndarray
    phi_vecs: tuple[np.ndarray, np.ndarray]
    chi_vecs: tuple[np.ndarray, np.ndarray]
    sigma: tuple[np.ndarray, np.ndarray, np.ndarray]
    sigma_gamma: tuple[np.ndarray, np.ndarray, np.ndarray]
    params: DeformationParams

    def pairing(self) -> np.ndarray:
        """Matrix of <phi_j|chi_k>; equals omega0 * identity."""
        return np.array([[np.vdot(f, x) for x in self.chi_vecs] for f in self.phi_vecs])

    def verify(self) -> list[IdentityCheck]:
        g = self.params.gamma
        checks = [
            IdentityCheck(
                "frame: <u_j|u_k> = delta_jk",
                float(np.abs(np.array([[np.vdot(a, b) for b in self.u] for a in self.u]) - np.eye(2)).max()),
                1e-12,
            ),
            IdentityCheck(
                "frame: <phi_j|chi_k> = omega0 delta_jk",
                float(np.abs(self.pairing() - self.params.omega0 * np.eye(2)).max()),
                1e-12,
            ),
        ]
        worst, worst_g = 0.0, 0.0
        for l in (1, 2, 3):
            for m in (1, 2, 3):
                rhs = sum(1j * _levi_civita(l, m, n) * self.sigma[n - 1] for n in (1, 2, 3))
                lhs = self.sigma[l - 1] @ self.sigma[m - 1] - self.sigma[m - 1] @ self.sigma[l - 1]
                worst = max(worst, float(np.abs(lhs - rhs).max()))
                sg = self.sigma_gamma
                rhs_g = sum(
                    1j * _levi_civita(l, m, n) * (1 - g**2 * (n == 2)) * sg[n - 1] for n in (1, 2, 3)
                )
                lhs_g = sg[l - 1] @ sg[m - 1] - sg[m - 1] @ sg[l - 1]
                worst_g = max(worst_g, float(np.abs(lhs_g - rhs_g).max()))
        checks.append(IdentityCheck("su2: [s_l,s_m] = i eps s_n", worst, 1e-12))
        checks.append(IdentityCheck("su2_gamma: [s_l,s_m] = i eps (1 - g^2 d_n2) s_n", worst_g, 1e-12))
        return checks


def make_biorthogonal_frame(params: DeformationParams) -> TwoLevelFrame:
    th, ph, w0 = params.theta, params.phi, params.omega0
    u = (np.array([1, 1], dtype=complex) / math.sqrt(2), np.array([1, -1], dtype=complex) / math.sqrt(2))

    def spin(m: int, left, right, scale: float = 1.0) -> np.ndarray:
        out = np.zeros((2, 2), dtype=complex)
        for j in range(2):
            for k in range(2):
                out += C_COEFFS[m][j, k] / scale * np.outer(left[j], right[k].conj())
        return (1j ** (m + 1)) / 2 * out

    sigma = tuple(spin(m, u, u) for m in (1, 2, 3))
    T = (
        math.cos(th / 2) * np.eye(2)
        + 2 * math.cos(ph / 2) * math.sin(th / 2) * sigma[0]
        - 2 * math.sin(ph / 2) * math.sin(th / 2) * sigma[1]
    )
    if abs(np.linalg.det(T)) < 1e-12:
        raise DegenerateFrameError("transformation T is singular")
    T_inv_dag = np.linalg.inv(T).conj().T
    phi_vecs = tuple(w0 * T @ v for v in u)
    chi_vecs = tuple(T_inv_dag @ v for v in u)
    sigma_gamma = tuple(
        spin(m, phi_vecs, chi_vecs, w0 if m == 2 else 1.0) for m in (1, 2, 3)
    )
    return TwoLevelFrame(u, T, phi_vecs, chi_vecs, sigma, sigma_gamma, params)


# -- boson families -------------------------------------------------------


@dataclass(frozen=True)
class AlgebraFamily:
    name: str
    generators: Mapping[str, object]
    params: DeformationParams
    casimir: BosonPolynomial | None = None
    verifier: Callable[["AlgebraFamily"], list[IdentityCheck]] | None = field(default=None, repr=False)

    def __getitem__(self, key: str):
        return self.generators[key]

    def verify(self) -> list[IdentityCheck]:
        return self.verifier(self) if self.verifier else []


def js_bilinear(m: int, gamma: float) -> BosonPolynomial:
    """Deformed Jordan-Schwinger generator ``J_m`` on modes 1, 2."""
    coeffs = C_COEFFS[4 - m] + (1j**m) * (0 if m == 2 else 1) * gamma * C_COEFFS[m]
    out = BosonPolynomial.zero(N_MODES)
    for j in range(2):
        for k in range(2):
            if coeffs[j, k] != 0:
                out = out + ((1j ** (m - 1)) / 2 * coeffs[j, k]) * hop(j + 1, k + 1, N_MODES)
    return out


def _verify_spin_family(fam: AlgebraFamily, label: str, raise_exp: float) -> list[IdentityCheck]:
    w0 = fam.params.omega0
    z, up, dn = fam["J0"], fam["J+"], fam["J-"]
    checks = [
        poly_check(f"{label}: [J0,J+] - w0 J+", commutator(z, up) - w0 * up),
        poly_check(f"{label}: [J0,J-] + w0 J-", commutator(z, dn) + w0 * dn),
        poly_check(
            f"{label}: [J+,J-] - 2 w0^(1-2p) J0", commutator(up, dn) - 2 * w0**raise_exp * z
        ),
    ]
    cas = fam.casimir
    for key in ("J0", "J+", "J-"):
        checks.append(poly_check(f"{label}: [C_J,{key}]", commutator(cas, fam[key])))
    checks.append(
        poly_check(f"{label}: C_J upper - C_J lower", cas - fam["casimir_lower"])
    )
    return checks


def make_js_family(params: DeformationParams) -> AlgebraFamily:
    """Deformed JS generators, ladders with exponent ``p`` and the Casimir."""
    g, w0, p = params.gamma, params.omega0, params.p
    j1, j2, j3 = (js_bilinear(m, g) for m in (1, 2, 3))
    up = w0 ** (-p) * j1 + 1j * w0 ** (1 - p) * j2
    dn = w0 ** (-p) * j1 - 1j * w0 ** (1 - p) * j2
    upper = w0**-2 * (j3 * (j3 + w0)) + w0 ** (2 * p - 2) * (dn * up)
    lower = w0**-2 * (j3 * (j3 - w0)) + w0 ** (2 * p - 2) * (up * dn)
    return AlgebraFamily(
        name="js_gamma",
        generators={"J1": j1, "J2": j2, "J0": j3, "J+": up, "J-": dn, "casimir_lower": lower},
        params=params,
        casimir=upper,
        verifier=lambda fam: _verify_spin_family(fam, "js_gamma", 1 - 2 * p),
    )


def _verify_dm(fam: AlgebraFamily) -> list[IdentityCheck]:
    w0 = fam.params.omega0
    z, up, dn = fam["M0"], fam["M+"], fam["M-"]
    plus = commutator(up, dn) - (2 / w0) * z
    minus = commutator(up, dn) + (2 / w0) * z
    sign = "+" if plus.max_abs() <= minus.max_abs() else "-"
    checks = [
        poly_check("dyson_maleev: [M0,M+] - w0 M+", commutator(z, up) - w0 * up),
        poly_check("dyson_maleev: [M0,M-] + w0 M-", commutator(z, dn) + w0 * dn),
        poly_check(
            "dyson_maleev: [M+,M-] - (2/w0) M0",
            plus,
            detail=f"sign resolved by expansion: [M+,M-] = {sign}(2/w0) M0",
        ),
    ]
    for key in ("M0", "M+", "M-"):
        checks.append(poly_check(f"dyson_maleev: [C_M,{key}]", commutator(fam.casimir, fam[key])))
    checks.append(poly_check("dyson_maleev: C_M upper - C_M lower", fam.casimir - fam["casimir_lower"]))
    return checks


def make_dyson_maleev(params: DeformationParams) -> AlgebraFamily:
    """``M0 = w0 (c - n3)``, ``M+ = a3``, ``M- = a3+ (2c - n3)`` and ``C_M``."""
    w0, c = params.omega0, params.c
    n3 = hop(3, 3, N_MODES)
    m0 = w0 * (c - n3)
    up = annihilator(3, N_MODES)
    dn = creator(3, N_MODES) * (2 * c - n3)
    upper = w0**-2 * (m0 * (m0 + w0)) + dn * up
    lower = w0**-2 * (m0 * (m0 - w0)) + up * dn
    return AlgebraFamily(
        name="dyson_maleev",
        generators={"M0": m0, "M+": up, "M-": dn, "casimir_lower": lower},
        params=params,
        casimir=upper,
        verifier=_verify_dm,
    )


def dyson_maleev_sign(params: DeformationParams) -> int:
    """Sign ``e`` in ``[M+,M-] = e (2/w0) M0`` obtained by direct expansion."""
    fam = make_dyson_maleev(params)
    comm = commutator(fam["M+"], fam["M-"])
    z = (2 / params.omega0) * fam["M0"]
    return 1 if max_difference(comm, z) <= max_difference(comm, -z) else -1


def _require_p1(params: DeformationParams) -> None:
    if params.p != 1:
        raise InvalidParams("the Higgs fusion requires ladder exponent p = 1")


def make_higgs_family(params: DeformationParams) -> AlgebraFamily:
    """Fuse the JS and Dyson-Maleev families into ``H0, H+-, L0`` and ``H1``."""
    _require_p1(params)
    js, dm = make_js_family(params), make_dyson_maleev(params)
    h0 = 0.5 * (js["J0"] - dm["M0"])
    l0 = 0.5 * (js["J0"] + dm["M0"])
    up = params.s * (js["J+"] * dm["M-"])
    dn = params.s * (js["J-"] * dm["M+"])
    return AlgebraFamily(
        name="higgs_gamma",
        generators={
            "H0": h0,
            "H+": up,
            "H-": dn,
            "L0": l0,
            "H1": build_h1_algebraic(params),
            "H1_literal": build_h1_algebraic(params, form="literal"),
            "C_J": js.casimir,
            "C_M": dm.casimir,
        },
        params=params,
        casimir=None,
        verifier=_verify_higgs,
    )


def derived_higgs_closure(params: DeformationParams) -> BosonPolynomial:
    """Exact value of ``[H+, H-]`` in terms of ``H0``, ``L0`` and both Casimirs.

    With ``h = H0/w0`` and ``l = L0/w0`` the su(2)-like structure of both
    factors gives ``2 s^2 [l (C_M - C_J) + h (C_M + C_J) + 2 h l^2 - 2 h^3]``.
    """
    fam_js, fam_dm = make_js_family(params), make_dyson_maleev(params)
    w0 = params.omega0
    h = 0.5 * (fam_js["J0"] - fam_dm["M0"]) / w0
    l = 0.5 * (fam_js["J0"] + fam_dm["M0"]) / w0
    cj, cm = fam_js.casimir, fam_dm.casimir
    inner = l * (cm - cj) + h * (cm + cj) + 2 * (h * (l * l)) - 2 * (h * (h * h))
    return (2 * params.s**2) * inner


def cubic_closure_residual(params: DeformationParams, h1: BosonPolynomial | None = None) -> BosonPolynomial:
    """``[H+,H-] - 4[alpha w0 H0 + (beta/w0) H0^3]`` with ``alpha = beta/8 - H1``.

    ``h1`` defaults to the printed closed form including its ``beta/8``
    constant, which is the reading under which ``alpha`` was stated.
    """
    _require_p1(params)
    fam = make_higgs_family(params)
    if h1 is None:
        h1 = fam["H1_literal"] + h1_additive_constant(params)
    alpha = params.beta / 8 - h1
    h0, w0, b = fam["H0"], params.omega0, params.beta
    rhs = 4 * (alpha * (w0 * h0) + (b / w0) * (h0 * (h0 * h0)))
    return commutator(fam["H+"], fam["H-"]) - rhs


def _verify_higgs(fam: AlgebraFamily) -> list[IdentityCheck]:
    prm = fam.params
    w0 = prm.omega0
    h0, up, dn, h1 = fam["H0"], fam["H+"], fam["H-"], fam["H1"]
    checks = [
        poly_check("higgs: [H0,H+] - w0 H+", commutator(h0, up) - w0 * up),
        poly_check("higgs: [H0,H-] + w0 H-", commutator(h0, dn) + w0 * dn),
        poly_check(
            "higgs: [H+,H-] derived closure",
            commutator(up, dn) - derived_higgs_closure(prm),
            detail="[H+,H-] = 2 s^2 [l(C_M - C_J) + h(C_M + C_J) + 2 h l^2 - 2 h^3]",
        ),
    ]
    for key in ("H0", "H+", "H-"):
        checks.append(poly_check(f"higgs: [H1,{key}]", commutator(h1, fam[key])))
        checks.append(poly_check(f"higgs: [H1_literal,{key}]", commutator(fam["H1_literal"], fam[key])))
    checks.append(poly_check("higgs: [H1,N]", commutator(h1, number_operator(N_MODES))))
    for label, h1_variant in (
        ("printed H1", fam["H1_literal"] + h1_additive_constant(prm)),
        ("tabulated H1", h1),
    ):
        residual = cubic_closure_residual(prm, h1_variant)
        checks.append(
            poly_check(
                f"higgs: cubic closure residual ({label})",
                residual,
                hard=False,
                detail="[H+,H-] - 4[alpha w0 H0 + (beta/w0) H0^3], alpha = beta/8 - H1",
            )
        )
    return checks


def build_h1_algebraic(
    params: DeformationParams, form: str = "tabulated", casimir: str = "J"
) -> BosonPolynomial:
    """Three-boson Hamiltonian, normal ordered.

    ``form="tabulated"`` (default) is ``beta (J0 + M0)^2 / w0^2``, i.e.
    ``4 beta L0^2 / w0^2``: the operator whose action the coefficient table
    and closed-form matrix elements describe.  ``form="literal"`` is the
    closed form ``beta (C / w0^4 + L0^2 / w0^2)`` with ``C`` the Casimir of
    the JS (``casimir="J"``) or Dyson-Maleev (``"M"``) family; its additive
    ``beta/8`` is returned by :func:`h1_additive_constant` instead.
    """
    _require_p1(params)
    js, dm = make_js_family(params), make_dyson_maleev(params)
    w0, b = params.omega0, params.beta
    l0 = 0.5 * (js["J0"] + dm["M0"])
    if form == "tabulated":
        return (4 * b / w0**2) * (l0 * l0)
    if form == "literal":
        cas = {"J": js.casimir, "M": dm.casimir}[casimir]
        return b * (cas / w0**4 + (l0 * l0) / w0**2)
    raise ValueError(f"unknown H1 form {form!r}")


def h1_additive_constant(params: DeformationParams) -> float:
    return params.beta / 8


# -- printed coefficient table --------------------------------------------

B_READINGS = ("b33", "override_b11", "ignore")


def h1_table_entries(params: DeformationParams, duplicate_b11: str = "b33", v1221_split: bool = False):
    """Printed ``B_ij`` and ``V_ijkl`` entries (at ``beta = 1``).

    The table assigns ``B11`` twice; ``duplicate_b11`` selects how the second
    assignment ``-2 w0^2 c`` is read.  ``v1221_split`` spreads the printed
    ``V1221`` evenly over ``V1221`` and ``V2112`` (reconciliation candidate).
    """
    g, w0, c = params.gamma, params.omega0, params.c
    B = {(1, 1): c * w0, (2, 2): -c * w0, (1, 2): 1j * c * g * w0, (2, 1): 1j * c * g * w0}
    if duplicate_b11 == "b33":
        B[(3, 3)] = -2 * w0**2 * c
    elif duplicate_b11 == "override_b11":
        B[(1, 1)] = -2 * w0**2 * c
    elif duplicate_b11 != "ignore":
        raise ValueError(f"unknown reading {duplicate_b11!r}")
    V = {
        (1, 1, 1, 1): 0.25,
        (2, 2, 2, 2): 0.25,
        (1, 1, 2, 2): -0.5,
        (1, 2, 1, 2): -(g**2) / 4,
        (2, 1, 2, 1): -(g**2) / 4,
        (1, 2, 2, 1): -(g**2) / 2,
        (3, 3, 3, 3): w0**2,
        (1, 1, 3, 3): -w0,
        (2, 2, 3, 3): w0,
        (1, 2, 3, 3): -1j * g * w0,
        (2, 1, 3, 3): -1j * g * w0,
    }
    if v1221_split:
        V[(1, 2, 2, 1)] = V[(2, 1, 1, 2)] = -(g**2) / 4
    quarter = 1j * g / 4
    for key, sign in (
        ((1, 1, 1, 2), 1),
        ((1, 1, 2, 1), 1),
        ((2, 2, 1, 2), -1),
        ((2, 2, 2, 1), -1),
        ((1, 2, 1, 1), 1),
        ((1, 2, 2, 2), -1),
        ((2, 1, 1, 1), 1),
        ((2, 1, 2, 2), -1),
    ):
        V[key] = sign * quarter
    return B, V


def build_h1_table(
    params: DeformationParams, duplicate_b11: str = "b33", v1221_split: bool = False
) -> BosonPolynomial:
    """``w0^-2 (sum B_ij a_i+ a_j + sum V_ijkl a_i+ a_j a_k+ a_l)``, constant omitted."""
    _require_p1(params)
    B, V = h1_table_entries(params, duplicate_b11, v1221_split)
    out = BosonPolynomial.zero(N_MODES)
    for (i, j), v in B.items():
        out = out + v * hop(i, j, N_MODES)
    for (i, j, k, l), v in V.items():
        out = out + v * (hop(i, j, N_MODES) * hop(k, l, N_MODES))
    return out / params.omega0**2


@dataclass(frozen=True)
class TableDiff:
    """Comparison of the printed coefficient table with the algebraic operator."""

    reading: str
    constant_offset: complex
    residual: BosonPolynomial
    candidates: Mapping[str, float]
    v1221_split_residual: float

    @property
    def max_residual(self) -> float:
        return self.residual.max_abs()

    def to_dict(self) -> dict:
        return {
            "reconciling_reading": self.reading,
            "candidate_residuals": dict(self.candidates),
            "constant_offset": {"re": self.constant_offset.real, "im": self.constant_offset.imag},
            "max_residual": self.max_residual,
            "first_failing_term": first_failing_term(self.residual),
            "residual_terms": [
                {"term": term_text(cre, ann), "re": v.real, "im": v.imag} for (cre, ann), v in self.residual
            ],
            "v1221_split_residual": self.v1221_split_residual,
        }


def diff_h1_table(params: DeformationParams) -> TableDiff:
    """Compare every reading of the duplicated ``B11`` with the algebraic H1.

    Both sides are taken at ``beta = 1`` (the table's stated value) and the
    comparison ignores the constant term, which the table omits.
    """
    prm = params.replace(beta=1.0)
    ref = build_h1_algebraic(prm)
    candidates = {}
    for reading in B_READINGS:
        candidates[reading] = (build_h1_table(prm, reading) - ref).without_constant().max_abs()
    best = min(B_READINGS, key=lambda r: candidates[r])
    residual = build_h1_table(prm, best) - ref
    split = (build_h1_table(prm, best, v1221_split=True) - ref).without_constant().max_abs()
    return TableDiff(
        reading=best,
        constant_offset=-residual.constant(),
        residual=residual.without_constant(),
        candidates=candidates,
        v1221_split_residual=split,
    )


# -- aggregate ------------------------------------------------------------


def non_hermiticity_witnesses(params: DeformationParams) -> dict[str, float]:
    js = make_js_family(params)
    return {
        "adjoint(J0) - J0": max_difference(formal_adjoint(js["J0"]), js["J0"]),
        "adjoint(J+) - J-": max_difference(formal_adjoint(js["J+"]), js["J-"]),
    }


def verify_algebra(params: DeformationParams) -> list[IdentityCheck]:
    """Run every family verifier; Higgs checks only when ``p == 1``."""
    checks = make_biorthogonal_frame(params).verify()
    checks += make_js_family(params).verify()
    checks += make_dyson_maleev(params).verify()
    if params.p == 1:
        checks += make_higgs_family(params).verify()
    return checks
