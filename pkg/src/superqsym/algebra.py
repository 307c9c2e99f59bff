"""Formal linear combinations over exact rationals, indexed by dotted
compositions and tagged with a basis (M, L or Lbar)."""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Iterable, Mapping

from .composition import (
    EMPTY,
    DottedComposition,
    strong_refinements,
    weak_refinements,
)

BASES = ("M", "L", "Lbar")


class BasisMismatchError(ValueError):
    """Binary operation on expressions tagged with different bases."""


def _check_basis(basis: str) -> str:
    if basis not in BASES:
        raise ValueError(f"unknown basis {basis!r}; expected one of {BASES}")
    return basis


class Expr:
    """A finite rational linear combination of basis elements.

    Zero coefficients are never stored.  Scalar arithmetic goes through the
    operators; products live in the hopf module because they depend on the
    basis semantics.
    """

    __slots__ = ("basis", "terms")

    def __init__(self, basis: str, terms: Mapping[DottedComposition, object] | None = None):
        object.__setattr__(self, "basis", _check_basis(basis))
        clean: dict[DottedComposition, Fraction] = {}
        if terms:
            for key, coeff in terms.items():
                if not isinstance(key, DottedComposition):
                    key = DottedComposition(key)
                c = Fraction(coeff)
                if c:
                    clean[key] = clean.get(key, Fraction(0)) + c
                    if not clean[key]:
                        del clean[key]
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("Expr is immutable")

    @classmethod
    def basis_element(cls, basis: str, alpha: DottedComposition, coeff=1) -> "Expr":
        return cls(basis, {alpha: coeff})

    @classmethod
    def zero(cls, basis: str) -> "Expr":
        return cls(basis)

    # -- queries --------------------------------------------------------------

    def coefficient(self, alpha: DottedComposition) -> Fraction:
        return self.terms.get(alpha, Fraction(0))

    def support(self) -> list[DottedComposition]:
        return sorted(self.terms, key=DottedComposition.sort_key)

    def is_zero(self) -> bool:
        return not self.terms

    def bidegrees(self) -> set[tuple[int, int]]:
        return {alpha.degrees() for alpha in self.terms}

    # -- arithmetic -----------------------------------------------------------

    def _require_same_basis(self, other: "Expr"):
        if not isinstance(other, Expr):
            raise TypeError(f"expected Expr, got {type(other).__name__}")
        if self.basis != other.basis:
            raise BasisMismatchError(f"cannot combine {self.basis} with {other.basis}")

    def __add__(self, other: "Expr") -> "Expr":
        self._require_same_basis(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, Fraction(0)) + v
        return Expr(self.basis, out)

    def __sub__(self, other: "Expr") -> "Expr":
        return self + (-other)

    def __neg__(self) -> "Expr":
        return self.scale(-1)

    def scale(self, c) -> "Expr":
        c = Fraction(c)
        return Expr(self.basis, {k: v * c for k, v in self.terms.items()})

    def __mul__(self, c):
        return self.scale(c)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Expr)
            and self.basis == other.basis
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.basis, frozenset(self.terms.items())))

    def __repr__(self) -> str:
        return render_expr(self)

    def map_terms(self, f: Callable[[DottedComposition, Fraction], "Expr"], basis: str) -> "Expr":
        """Linear extension of a map on basis elements."""
        out = Expr.zero(basis)
        for alpha, c in self.terms.items():
            out = out + f(alpha, c)
        return out


def add(a: Expr, b: Expr) -> Expr:
    return a + b


def scale(a: Expr, c) -> Expr:
    return a.scale(c)


def unit(basis: str = "M") -> Expr:
    return Expr.basis_element(basis, EMPTY)


def counit(e: Expr) -> Fraction:
    return e.coefficient(EMPTY)


# ---------------------------------------------------------------------------
# basis conversions


def L_to_M(e: Expr) -> Expr:
    """L_alpha = sum of M_beta over strong refinements beta of alpha."""
    if e.basis != "L":
        raise BasisMismatchError(f"L_to_M needs basis L, got {e.basis}")
    out: dict[DottedComposition, Fraction] = {}
    for alpha, c in e.terms.items():
        for beta in strong_refinements(alpha):
            out[beta] = out.get(beta, Fraction(0)) + c
    return Expr("M", out)


def M_to_L(e: Expr) -> Expr:
    """Moebius inversion of L_to_M: the interval below alpha is Boolean, so
    M_alpha = sum over refinements beta of (-1)^(len(beta)-len(alpha)) L_beta."""
    if e.basis != "M":
        raise BasisMismatchError(f"M_to_L needs basis M, got {e.basis}")
    out: dict[DottedComposition, Fraction] = {}
    for alpha, c in e.terms.items():
        la = alpha.length
        for beta in strong_refinements(alpha):
            sign = -1 if (beta.length - la) % 2 else 1
            out[beta] = out.get(beta, Fraction(0)) + c * sign
    return Expr("L", out)


def cofundamental_to_M(arg) -> Expr:
    """Lbar_alpha = sum of M_beta over weak refinements beta of alpha."""
    if isinstance(arg, DottedComposition):
        e = Expr.basis_element("Lbar", arg)
    else:
        e = arg
        if e.basis != "Lbar":
            raise BasisMismatchError(f"cofundamental_to_M needs basis Lbar, got {e.basis}")
    out: dict[DottedComposition, Fraction] = {}
    for alpha, c in e.terms.items():
        for beta in weak_refinements(alpha):
            out[beta] = out.get(beta, Fraction(0)) + c
    return Expr("M", out)


def to_M(e: Expr) -> Expr:
    if e.basis == "M":
        return e
    if e.basis == "L":
        return L_to_M(e)
    return cofundamental_to_M(e)


# ---------------------------------------------------------------------------
# tensor squares


class TensorExpr:
    """Finite rational combination of pairs of dotted compositions."""

    __slots__ = ("bases", "terms")

    def __init__(self, bases: tuple[str, str], terms=None):
        bases = (_check_basis(bases[0]), _check_basis(bases[1]))
        object.__setattr__(self, "bases", bases)
        clean: dict[tuple[DottedComposition, DottedComposition], Fraction] = {}
        if terms:
            for key, coeff in terms.items():
                c = Fraction(coeff)
                if c:
                    clean[key] = clean.get(key, Fraction(0)) + c
                    if not clean[key]:
                        del clean[key]
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("TensorExpr is immutable")

    @classmethod
    def zero(cls, bases: tuple[str, str]) -> "TensorExpr":
        return cls(bases)

    def coefficient(self, left: DottedComposition, right: DottedComposition) -> Fraction:
        return self.terms.get((left, right), Fraction(0))

    def support(self):
        return sorted(
            self.terms,
            key=lambda pair: (pair[0].sort_key(), pair[1].sort_key()),
        )

    def is_zero(self) -> bool:
        return not self.terms

    def _require_same_bases(self, other: "TensorExpr"):
        if not isinstance(other, TensorExpr):
            raise TypeError(f"expected TensorExpr, got {type(other).__name__}")
        if self.bases != other.bases:
            raise BasisMismatchError(f"cannot combine {self.bases} with {other.bases}")

    def __add__(self, other: "TensorExpr") -> "TensorExpr":
        self._require_same_bases(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, Fraction(0)) + v
        return TensorExpr(self.bases, out)

    def __sub__(self, other: "TensorExpr") -> "TensorExpr":
        return self + other.scale(-1)

    def scale(self, c) -> "TensorExpr":
        c = Fraction(c)
        return TensorExpr(self.bases, {k: v * c for k, v in self.terms.items()})

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, TensorExpr)
            and self.bases == other.bases
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.bases, frozenset(self.terms.items())))

    def __repr__(self) -> str:
        return render_tensor(self)

    def map_slots(self, f_left, f_right, bases: tuple[str, str]) -> "TensorExpr":
        """Apply Expr-valued maps to the two slots (no sign; maps are even)."""
        out: dict[tuple[DottedComposition, DottedComposition], Fraction] = {}
        for (a, b), c in self.terms.items():
            ea = f_left(Expr.basis_element(self.bases[0], a))
            eb = f_right(Expr.basis_element(self.bases[1], b))
            for ka, va in ea.terms.items():
                for kb, vb in eb.terms.items():
                    key = (ka, kb)
                    out[key] = out.get(key, Fraction(0)) + c * va * vb
        return TensorExpr(bases, out)


def tensor(a: Expr, b: Expr) -> TensorExpr:
    out: dict[tuple[DottedComposition, DottedComposition], Fraction] = {}
    for ka, va in a.terms.items():
        for kb, vb in b.terms.items():
            out[(ka, kb)] = out.get((ka, kb), Fraction(0)) + va * vb
    return TensorExpr((a.basis, b.basis), out)


def koszul_mul(
    t1: TensorExpr,
    t2: TensorExpr,
    mul: Callable[[Expr, Expr], Expr],
) -> TensorExpr:
    """(a(x)b)(c(x)d) = (-1)^(m_b m_c) (ac)(x)(bd), extended bilinearly."""
    if t1.bases != t2.bases:
        raise BasisMismatchError(f"cannot multiply {t1.bases} with {t2.bases}")
    bases = t1.bases
    acc: dict[tuple[DottedComposition, DottedComposition], Fraction] = {}
    for (a, b), c1 in t1.terms.items():
        for (cc, d), c2 in t2.terms.items():
            sign = -1 if (b.fermionic_degree * cc.fermionic_degree) % 2 else 1
            left = mul(
                Expr.basis_element(bases[0], a), Expr.basis_element(bases[0], cc)
            )
            right = mul(
                Expr.basis_element(bases[1], b), Expr.basis_element(bases[1], d)
            )
            coeff = c1 * c2 * sign
            for ka, va in left.terms.items():
                for kb, vb in right.terms.items():
                    key = (ka, kb)
                    acc[key] = acc.get(key, Fraction(0)) + coeff * va * vb
    return TensorExpr(bases, acc)


# ---------------------------------------------------------------------------
# rendering and JSON


def _coeff_prefix(c: Fraction, name: str, latex: bool) -> str:
    if c == 1:
        return name
    if c == -1:
        return f"-{name}"
    if latex and c.denominator != 1:
        num = f"\\frac{{{abs(c.numerator)}}}{{{c.denominator}}}"
        return f"-{num}{name}" if c < 0 else f"{num}{name}"
    return f"{c}*{name}"


def _join_terms(rendered: list[str]) -> str:
    if not rendered:
        return "0"
    out = rendered[0]
    for r in rendered[1:]:
        if r.startswith("-"):
            out += " - " + r[1:]
        else:
            out += " + " + r
    return out


def render_expr(e: Expr, fmt: str = "plain") -> str:
    if fmt == "json":
        import json

        return json.dumps(expr_to_json(e))
    latex = fmt == "latex"
    pieces = []
    for alpha in e.support():
        if latex:
            head = "\\bar L" if e.basis == "Lbar" else e.basis
            name = f"{head}_{{{alpha.latex()}}}"
        else:
            name = f"{e.basis}{alpha}"
        pieces.append(_coeff_prefix(e.terms[alpha], name, latex))
    return _join_terms(pieces)


def render_tensor(t: TensorExpr, fmt: str = "plain") -> str:
    if fmt == "json":
        import json

        return json.dumps(tensor_to_json(t))
    latex = fmt == "latex"
    sep = " \\otimes " if latex else " @ "
    pieces = []
    for a, b in t.support():
        if latex:
            name = (
                f"{t.bases[0]}_{{{a.latex()}}}" + sep + f"{t.bases[1]}_{{{b.latex()}}}"
            )
        else:
            name = f"{t.bases[0]}{a}{sep}{t.bases[1]}{b}"
        pieces.append(_coeff_prefix(t.terms[(a, b)], name, latex))
    return _join_terms(pieces)


def expr_to_json(e: Expr) -> dict:
    return {
        "basis": e.basis,
        "terms": [
            {
                "comp": alpha.to_json(),
                "num": str(e.terms[alpha].numerator),
                "den": str(e.terms[alpha].denominator),
            }
            for alpha in e.support()
        ],
    }


def expr_from_json(data: dict) -> Expr:
    terms = {
        DottedComposition.from_json(t["comp"]): Fraction(int(t["num"]), int(t["den"]))
        for t in data["terms"]
    }
    return Expr(data["basis"], terms)


def tensor_to_json(t: TensorExpr) -> dict:
    return {
        "bases": list(t.bases),
        "terms": [
            {
                "left": a.to_json(),
                "right": b.to_json(),
                "num": str(t.terms[(a, b)].numerator),
                "den": str(t.terms[(a, b)].denominator),
            }
            for a, b in t.support()
        ],
    }


def tensor_from_json(data: dict) -> TensorExpr:
    terms = {
        (
            DottedComposition.from_json(t["left"]),
            DottedComposition.from_json(t["right"]),
        ): Fraction(int(t["num"]), int(t["den"]))
        for t in data["terms"]
    }
    return TensorExpr(tuple(data["bases"]), terms)
