"""Normal-ordered multi-mode boson polynomials.

A :class:`BosonPolynomial` is a finite sum of terms

    coeff * ad(1)^p1 ... ad(m)^pm  a(1)^q1 ... a(m)^qm

stored as a map ``(creation, annihilation) -> coeff`` where ``creation`` and
``annihilation`` are exponent tuples of length ``n_modes``.  Every value is kept
in normal order (all creators to the left), so two polynomials are equal as
operators iff their term maps agree.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import comb, factorial
from typing import Iterable, Iterator, Mapping

MultiIndex = tuple[int, ...]
TermKey = tuple[MultiIndex, MultiIndex]

ZERO_THRESHOLD = 1e-14
DEFAULT_TERM_CAP = 100_000


class ModeMismatchError(ValueError):
    pass


class TermCapExceeded(RuntimeError):
    pass


def _prune(terms: Mapping[TermKey, complex], threshold: float) -> dict[TermKey, complex]:
    return {k: complex(v) for k, v in terms.items() if v != 0 and abs(v) >= threshold}


@dataclass(frozen=True)
class BosonPolynomial:
    """Immutable normal-ordered polynomial in ``n_modes`` boson modes."""

    terms: Mapping[TermKey, complex]
    n_modes: int = 3
    _frozen_items: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if self.n_modes < 1:
            raise ValueError("n_modes must be positive")
        clean = {}
        for (cre, ann), coeff in self.terms.items():
            cre, ann = tuple(int(e) for e in cre), tuple(int(e) for e in ann)
            if len(cre) != self.n_modes or len(ann) != self.n_modes:
                raise ModeMismatchError(
                    f"multi-index length differs from n_modes={self.n_modes}: {cre}, {ann}"
                )
            if min(cre + ann) < 0:
                raise ValueError(f"negative exponent in term {cre}, {ann}")
            if coeff != 0:
                clean[(cre, ann)] = complex(coeff)
        ordered = dict(sorted(clean.items()))
        object.__setattr__(self, "terms", ordered)
        object.__setattr__(self, "_frozen_items", tuple(ordered.items()))

    # -- constructors -----------------------------------------------------

    @classmethod
    def zero(cls, n_modes: int = 3) -> "BosonPolynomial":
        return cls({}, n_modes)

    @classmethod
    def scalar(cls, value: complex, n_modes: int = 3) -> "BosonPolynomial":
        z = (0,) * n_modes
        return cls({(z, z): value}, n_modes)

    @classmethod
    def monomial(
        cls, creation: Iterable[int], annihilation: Iterable[int], coeff: complex = 1.0
    ) -> "BosonPolynomial":
        cre, ann = tuple(creation), tuple(annihilation)
        return cls({(cre, ann): coeff}, len(cre))

    # -- basic queries ----------------------------------------------------

    def __iter__(self) -> Iterator[tuple[TermKey, complex]]:
        return iter(self._frozen_items)

    def __len__(self) -> int:
        return len(self._frozen_items)

    def __hash__(self) -> int:
        return hash((self.n_modes, self._frozen_items))

    def is_zero(self) -> bool:
        return not self._frozen_items

    def coefficient(self, creation: MultiIndex, annihilation: MultiIndex) -> complex:
        return self.terms.get((tuple(creation), tuple(annihilation)), 0j)

    def constant(self) -> complex:
        z = (0,) * self.n_modes
        return self.coefficient(z, z)

    def max_abs(self) -> float:
        """Largest coefficient magnitude; 0 for the zero polynomial."""
        return max((abs(c) for _, c in self._frozen_items), default=0.0)

    def preserves_degree(self) -> bool:
        return all(sum(cre) == sum(ann) for (cre, ann), _ in self._frozen_items)

    def without_constant(self) -> "BosonPolynomial":
        z = (0,) * self.n_modes
        return BosonPolynomial({k: v for k, v in self.terms.items() if k != (z, z)}, self.n_modes)

    def embed(self, n_modes: int, offset: int = 0) -> "BosonPolynomial":
        """Place the modes of ``self`` at positions ``offset..`` of a larger mode set."""
        if offset + self.n_modes > n_modes:
            raise ModeMismatchError("embedding does not fit")
        pad_l, pad_r = (0,) * offset, (0,) * (n_modes - offset - self.n_modes)
        return BosonPolynomial(
            {(pad_l + c + pad_r, pad_l + a + pad_r): v for (c, a), v in self}, n_modes
        )

    # -- arithmetic -------------------------------------------------------

    def _check(self, other: "BosonPolynomial") -> None:
        if self.n_modes != other.n_modes:
            raise ModeMismatchError(f"mode count mismatch: {self.n_modes} vs {other.n_modes}")

    def _coerce(self, other) -> "BosonPolynomial":
        if isinstance(other, BosonPolynomial):
            self._check(other)
            return other
        if isinstance(other, (int, float, complex)):
            return BosonPolynomial.scalar(other, self.n_modes)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return add(self, other)

    __radd__ = __add__

    def __neg__(self) -> "BosonPolynomial":
        return self.scale(-1)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return add(self, -other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return add(other, -self)

    def __mul__(self, other):
        if isinstance(other, (int, float, complex)):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return normal_multiply(self, other)

    def __rmul__(self, other):
        if isinstance(other, (int, float, complex)):
            return self.scale(other)
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, (int, float, complex)):
            return self.scale(1 / other)
        return NotImplemented

    def __pow__(self, k: int) -> "BosonPolynomial":
        if not isinstance(k, int) or k < 0:
            raise ValueError("only non-negative integer powers are supported")
        out = BosonPolynomial.scalar(1, self.n_modes)
        for _ in range(k):
            out = normal_multiply(out, self)
        return out

    def scale(self, factor: complex) -> "BosonPolynomial":
        return BosonPolynomial(
            _prune({k: v * factor for k, v in self.terms.items()}, ZERO_THRESHOLD), self.n_modes
        )

    def __str__(self) -> str:
        return to_text(self)


def add(p: BosonPolynomial, q: BosonPolynomial, threshold: float = ZERO_THRESHOLD) -> BosonPolynomial:
    p._check(q)
    out = dict(p.terms)
    for k, v in q:
        out[k] = out.get(k, 0j) + v
    return BosonPolynomial(_prune(out, threshold), p.n_modes)


def _reorder_mode(k: int, l: int) -> list[tuple[int, int, int]]:
    """Normal order a^k (a+)^l as sum of weight * (a+)^(l-r) a^(k-r)."""
    return [(comb(k, r) * comb(l, r) * factorial(r), l - r, k - r) for r in range(min(k, l) + 1)]


def _multiply_terms(
    left: TermKey, right: TermKey
) -> list[tuple[MultiIndex, MultiIndex, int]]:
    (c1, a1), (c2, a2) = left, right
    # Modes are independent, so the reordering factorises per mode.
    partial: list[tuple[list[int], list[int], int]] = [([], [], 1)]
    for j in range(len(c1)):
        options = _reorder_mode(a1[j], c2[j])
        partial = [
            (cre + [c1[j] + dc], ann + [da + a2[j]], w * ww)
            for cre, ann, w in partial
            for ww, dc, da in options
        ]
    return [(tuple(c), tuple(a), w) for c, a, w in partial]


def normal_multiply(
    p: BosonPolynomial,
    q: BosonPolynomial,
    term_cap: int = DEFAULT_TERM_CAP,
    threshold: float = ZERO_THRESHOLD,
) -> BosonPolynomial:
    """Operator product ``p*q`` rewritten in normal order.

    Per mode, ``a^k (a+)^l = sum_r C(k,r) C(l,r) r! (a+)^(l-r) a^(k-r)``, the
    closed form of repeatedly applying ``a a+ = a+ a + 1``.
    """
    p._check(q)
    out: dict[TermKey, complex] = {}
    for kp, vp in p:
        for kq, vq in q:
            for cre, ann, w in _multiply_terms(kp, kq):
                key = (cre, ann)
                out[key] = out.get(key, 0j) + vp * vq * w
                if len(out) > term_cap:
                    raise TermCapExceeded(f"product exceeded {term_cap} terms")
    return BosonPolynomial(_prune(out, threshold), p.n_modes)


def commutator(p: BosonPolynomial, q: BosonPolynomial, term_cap: int = DEFAULT_TERM_CAP) -> BosonPolynomial:
    return add(normal_multiply(p, q, term_cap), -normal_multiply(q, p, term_cap))


def formal_adjoint(p: BosonPolynomial) -> BosonPolynomial:
    """Dagger of ``p``.

    The adjoint of ``c (a+)^A a^B`` is ``conj(c) (a+)^B a^A``, already normal
    ordered, so no reordering pass is needed.
    """
    return BosonPolynomial({(a, c): v.conjugate() for (c, a), v in p}, p.n_modes)


def max_difference(p: BosonPolynomial, q: BosonPolynomial) -> float:
    return add(p, -q, threshold=0.0).max_abs()


# -- atoms ----------------------------------------------------------------


def _unit(j: int, n_modes: int) -> MultiIndex:
    if not 1 <= j <= n_modes:
        raise ValueError(f"mode index {j} outside 1..{n_modes}")
    return tuple(1 if i == j - 1 else 0 for i in range(n_modes))


def annihilator(j: int, n_modes: int = 3) -> BosonPolynomial:
    """``a_j`` (modes are 1-based)."""
    return BosonPolynomial({((0,) * n_modes, _unit(j, n_modes)): 1}, n_modes)


def creator(j: int, n_modes: int = 3) -> BosonPolynomial:
    """``a_j^dagger`` (modes are 1-based)."""
    return BosonPolynomial({(_unit(j, n_modes), (0,) * n_modes): 1}, n_modes)


def hop(i: int, j: int, n_modes: int = 3) -> BosonPolynomial:
    """Normal-ordered bilinear ``a_i^dagger a_j``."""
    return BosonPolynomial({(_unit(i, n_modes), _unit(j, n_modes)): 1}, n_modes)


def number_operator(n_modes: int = 3) -> BosonPolynomial:
    out = BosonPolynomial.zero(n_modes)
    for j in range(1, n_modes + 1):
        out = out + hop(j, j, n_modes)
    return out


# -- canonical text -------------------------------------------------------


def format_complex(z: complex) -> str:
    """``re+imi`` with 17 significant digits, e.g. ``1.0000000000000000+0i``."""
    re_s = _fmt_real(z.real)
    im_s = _fmt_real(z.imag)
    if not im_s.startswith("-"):
        im_s = "+" + im_s
    return f"{re_s}{im_s}i"


def _fmt_real(x: float) -> str:
    if x == 0:
        return "0"
    return format(x, ".17g")


def term_text(creation: MultiIndex, annihilation: MultiIndex) -> str:
    parts = []
    for j, e in enumerate(creation, start=1):
        if e:
            parts.append(f"ad({j})^{e}")
    for j, e in enumerate(annihilation, start=1):
        if e:
            parts.append(f"a({j})^{e}")
    return " ".join(parts)


def to_text(p: BosonPolynomial) -> str:
    """Canonical textual form, one term per ``+``-joined chunk.

    Each term reads ``(coeff) * ad(1)^p1 ... a(3)^q3`` with zero exponents
    omitted; the zero polynomial prints as ``0``.
    """
    if p.is_zero():
        return "0"
    chunks = []
    for (cre, ann), v in p:
        ops = term_text(cre, ann)
        chunk = f"({format_complex(v)})"
        if ops:
            chunk += " * " + ops.replace(" ", " * ")
        chunks.append(chunk)
    return " + ".join(chunks)
