"""Brute-force oracle: exact polynomials in N commuting variables x[1..N]
and N anticommuting variables theta[1..N].

Monomials are kept in canonical form (theta indices strictly increasing,
x exponents positive); constructing from an unsorted theta list multiplies
the coefficient by the sort sign and kills repeated indices.  Every identity
in the package is checkable against this representation at desk scale.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Iterable, Mapping

from .algebra import Expr, to_M
from .composition import DottedComposition, DottedPart, def_sets

Theta = tuple[int, ...]
XPows = tuple[tuple[int, int], ...]
Monomial = tuple[Theta, XPows]


class NotQuasisymmetricError(ValueError):
    pass


class FaithfulnessError(ValueError):
    """A term's degree exceeds what N variables can represent faithfully."""


def _sort_sign(indices: Iterable[int]) -> tuple[int, Theta]:
    """Sign of the permutation sorting `indices`; 0 on repeats."""
    lst = list(indices)
    seen = set()
    for i in lst:
        if i in seen:
            return 0, ()
        seen.add(i)
    sign = 1
    # insertion sort; grids are tiny
    for i in range(1, len(lst)):
        j = i
        while j > 0 and lst[j - 1] > lst[j]:
            lst[j - 1], lst[j] = lst[j], lst[j - 1]
            sign = -sign
            j -= 1
    return sign, tuple(lst)


def monomial(theta: Iterable[int], xpows: Mapping[int, int]) -> tuple[int, Monomial]:
    sign, t = _sort_sign(theta)
    xs = tuple(sorted((i, e) for i, e in xpows.items() if e))
    if any(e < 0 for _, e in xs):
        raise ValueError("negative exponent")
    return sign, (t, xs)


class SuperPolynomial:
    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Mapping[Monomial, object] | None = None):
        object.__setattr__(self, "nvars", nvars)
        clean: dict[Monomial, Fraction] = {}
        if terms:
            for key, coeff in terms.items():
                c = Fraction(coeff)
                if c:
                    clean[key] = clean.get(key, Fraction(0)) + c
                    if not clean[key]:
                        del clean[key]
        for t, xs in clean:
            if any(i > nvars or i < 1 for i in t) or any(
                i > nvars or i < 1 for i, _ in xs
            ):
                raise ValueError("variable index out of range")
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("SuperPolynomial is immutable")

    @classmethod
    def zero(cls, nvars: int) -> "SuperPolynomial":
        return cls(nvars)

    @classmethod
    def one(cls, nvars: int) -> "SuperPolynomial":
        return cls(nvars, {((), ()): 1})

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, mono: Monomial) -> Fraction:
        return self.terms.get(mono, Fraction(0))

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, SuperPolynomial)
            and self.nvars == other.nvars
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def _require_same_ring(self, other: "SuperPolynomial"):
        if not isinstance(other, SuperPolynomial):
            raise TypeError(f"expected SuperPolynomial, got {type(other).__name__}")
        if self.nvars != other.nvars:
            raise ValueError(f"nvars mismatch: {self.nvars} vs {other.nvars}")

    def __add__(self, other: "SuperPolynomial") -> "SuperPolynomial":
        self._require_same_ring(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, Fraction(0)) + v
        return SuperPolynomial(self.nvars, out)

    def __sub__(self, other: "SuperPolynomial") -> "SuperPolynomial":
        return self + other.scale(-1)

    def scale(self, c) -> "SuperPolynomial":
        c = Fraction(c)
        return SuperPolynomial(self.nvars, {k: v * c for k, v in self.terms.items()})

    def __repr__(self) -> str:
        return render_poly(self)

    def to_json(self) -> list[dict]:
        out = []
        for (t, xs), c in sorted(self.terms.items()):
            out.append(
                {
                    "theta": list(t),
                    "x": [[i, e] for i, e in xs],
                    "num": str(c.numerator),
                    "den": str(c.denominator),
                }
            )
        return out


def poly_mul(p: SuperPolynomial, q: SuperPolynomial) -> SuperPolynomial:
    p._require_same_ring(q)
    out: dict[Monomial, Fraction] = {}
    for (t1, xs1), c1 in p.terms.items():
        for (t2, xs2), c2 in q.terms.items():
            sign, t = _sort_sign(t1 + t2)
            if sign == 0:
                continue
            xp = dict(xs1)
            for i, e in xs2:
                xp[i] = xp.get(i, 0) + e
            key = (t, tuple(sorted(xp.items())))
            out[key] = out.get(key, Fraction(0)) + c1 * c2 * sign
    return SuperPolynomial(p.nvars, out)


def shift_indices(p: SuperPolynomial, offset: int, nvars: int) -> SuperPolynomial:
    """Reindex every variable by +offset into a ring with `nvars` variables."""
    out = {}
    for (t, xs), c in p.terms.items():
        key = (
            tuple(i + offset for i in t),
            tuple((i + offset, e) for i, e in xs),
        )
        out[key] = c
    return SuperPolynomial(nvars, out)


# ---------------------------------------------------------------------------
# realizations of the bases


@lru_cache(maxsize=None)
def realize_M(alpha: DottedComposition, nvars: int) -> SuperPolynomial:
    """Defining sum of the monomial basis over strictly increasing indices."""
    l = alpha.length
    out: dict[Monomial, Fraction] = {}
    for idx in itertools.combinations(range(1, nvars + 1), l):
        theta = tuple(i for i, p in zip(idx, alpha.parts) if p.dotted)
        xpows: dict[int, int] = {}
        for i, p in zip(idx, alpha.parts):
            if p.value:
                xpows[i] = xpows.get(i, 0) + p.value
        key = (theta, tuple(sorted(xpows.items())))
        out[key] = out.get(key, Fraction(0)) + 1
    return SuperPolynomial(nvars, out)


def _defsets_sum(
    alpha: DottedComposition,
    nvars: int,
    strict: frozenset[int],
    equal: frozenset[int],
) -> SuperPolynomial:
    """Sum over i_1 <= ... <= i_{n+m} <= nvars with forced strict/equal steps,
    with theta/x factors read off F(alpha)."""
    n, m = alpha.degrees()
    total = n + m
    F = def_sets(alpha).F
    out: dict[Monomial, Fraction] = {}
    if total == 0:
        return SuperPolynomial.one(nvars)

    seq = [0] * (total + 1)  # 1-based positions

    def go(k: int):
        if k > total:
            theta = []
            xpows: dict[int, int] = {}
            for j in range(1, total + 1):
                if j in F:
                    theta.append(seq[j])
                else:
                    xpows[seq[j]] = xpows.get(seq[j], 0) + 1
            sign, t = _sort_sign(theta)
            if sign == 0:
                return
            key = (t, tuple(sorted((i, e) for i, e in xpows.items() if e)))
            out[key] = out.get(key, Fraction(0)) + sign
            return
        lo = 1 if k == 1 else seq[k - 1]
        if k > 1 and (k - 1) in strict:
            lo = seq[k - 1] + 1
        if k > 1 and (k - 1) in equal:
            choices = [seq[k - 1]]
        else:
            choices = range(lo, nvars + 1)
        for v in choices:
            seq[k] = v
            go(k + 1)

    go(1)
    return SuperPolynomial(nvars, out)


def realize_M_defsets(alpha: DottedComposition, nvars: int) -> SuperPolynomial:
    """The D/E/F rewrite of M: strict exactly at D, equal elsewhere."""
    n, m = alpha.degrees()
    total = n + m
    D = def_sets(alpha).D
    equal = frozenset(range(1, total)) - D
    return _defsets_sum(alpha, nvars, D, equal)


@lru_cache(maxsize=None)
def realize_L(alpha: DottedComposition, nvars: int) -> SuperPolynomial:
    """The D/E/F sum for the fundamental basis: strict at D, equal at E,
    free elsewhere."""
    sets = def_sets(alpha)
    return _defsets_sum(alpha, nvars, sets.D, sets.E)


def realize_expr(e: Expr, nvars: int) -> SuperPolynomial:
    """Realize any expression; L terms go through the direct D/E/F sum."""
    if e.basis == "L":
        pieces = [(realize_L(alpha, nvars), c) for alpha, c in e.terms.items()]
    else:
        m_expr = to_M(e)
        pieces = [(realize_M(alpha, nvars), c) for alpha, c in m_expr.terms.items()]
    acc: dict[Monomial, Fraction] = {}
    for poly, c in pieces:
        for mono, v in poly.terms.items():
            acc[mono] = acc.get(mono, Fraction(0)) + c * v
    return SuperPolynomial(nvars, acc)


# ---------------------------------------------------------------------------
# quasisymmetry and extraction


def _monomial_type(mono: Monomial) -> tuple[DottedComposition, tuple[int, ...]]:
    """The dotted composition a monomial instantiates, plus its index tuple."""
    t, xs = mono
    support = sorted(set(t) | {i for i, _ in xs})
    xmap = dict(xs)
    tset = set(t)
    parts = [DottedPart(xmap.get(i, 0), i in tset) for i in support]
    return DottedComposition(parts), tuple(support)


def is_quasisymmetric(p: SuperPolynomial) -> bool:
    groups: dict[DottedComposition, dict[tuple[int, ...], Fraction]] = {}
    for mono, c in p.terms.items():
        alpha, idx = _monomial_type(mono)
        groups.setdefault(alpha, {})[idx] = c
    for alpha, found in groups.items():
        expected = comb(p.nvars, alpha.length)
        if len(found) != expected:
            return False
        coeffs = set(found.values())
        if len(coeffs) != 1:
            return False
    return True


def extract_M(p: SuperPolynomial, require_faithful: bool = False) -> Expr:
    """Read off the M-expansion of a quasisymmetric polynomial.

    The result realizes back to p exactly over the same variables.  That
    expansion equals the abstract one only when every bidegree present has
    n + m <= nvars (a longer composition would be invisible); pass
    require_faithful=True to insist on that.
    """
    if not is_quasisymmetric(p):
        raise NotQuasisymmetricError("polynomial is not quasisymmetric")
    terms: dict[DottedComposition, Fraction] = {}
    for mono, c in p.terms.items():
        t, xs = mono
        if require_faithful:
            n = sum(e for _, e in xs)
            m = len(t)
            if n + m > p.nvars:
                raise FaithfulnessError(
                    f"bidegree ({n},{m}) needs more than {p.nvars} variables"
                )
        alpha, idx = _monomial_type(mono)
        if idx == tuple(range(1, alpha.length + 1)):
            terms[alpha] = c
    return Expr("M", terms)


def render_poly(p: SuperPolynomial) -> str:
    if not p.terms:
        return "0"
    pieces = []
    for (t, xs), c in sorted(p.terms.items()):
        factors = [f"theta[{i}]" for i in t]
        for i, e in xs:
            factors.append(f"x[{i}]" if e == 1 else f"x[{i}]^{e}")
        body = "*".join(factors) if factors else "1"
        if c == 1:
            pieces.append(body)
        elif c == -1:
            pieces.append(f"-{body}")
        else:
            pieces.append(f"{c}*{body}")
    out = pieces[0]
    for s in pieces[1:]:
        out += " - " + s[1:] if s.startswith("-") else " + " + s
    return out
