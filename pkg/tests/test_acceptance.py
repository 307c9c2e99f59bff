"""Acceptance gate: every criterion runs at exact (bit-for-bit) tolerance and
prints one pass/fail line with its elapsed time.

Run as `pytest tests/test_acceptance.py -s` to see the lines live.
"""

import time
from fractions import Fraction

import classical_oracle as co
from superqsym.algebra import Expr, L_to_M, M_to_L, TensorExpr, koszul_mul, tensor, unit
from superqsym.composition import (
    EMPTY,
    column_decomposition,
    comp,
    compositions_of,
    def_sets,
    near_concat,
    near_concat_list,
    universe,
)
from superqsym.hopf import (
    antipode_L,
    antipode_M,
    bullet,
    coproduct_L,
    coproduct_M,
    odot,
    product_L,
    product_M,
    verify_hopf,
)
from superqsym.hopf import _odot_L_via_M
from superqsym.realize import (
    SuperPolynomial,
    _monomial_type,
    monomial,
    poly_mul,
    realize_expr,
    realize_L,
    realize_M,
    shift_indices,
)
from superqsym.shuffles import comp_of_word, path_word, word
from superqsym.superschur import (
    EMPTY_SHAPE,
    Superpartition,
    enumerate_s_tableaux,
    comp_of_tableau,
    realize_s,
    schur_to_L,
    superpartitions,
)


def criterion(number, name):
    def decorate(fn):
        def wrapped():
            start = time.time()
            try:
                fn()
            except BaseException:
                print(f"ACCEPTANCE {number} ({name}): FAIL")
                raise
            print(f"ACCEPTANCE {number} ({name}): PASS [{time.time() - start:.1f}s]")

        wrapped.__name__ = fn.__name__
        return wrapped

    return decorate


def M(*parts):
    return Expr.basis_element("M", comp(*parts))


def L(*parts):
    return Expr.basis_element("L", comp(*parts))


def _poly(nvars, *terms):
    acc = {}
    for coeff, theta, xp in terms:
        sign, key = monomial(theta, xp)
        acc[key] = acc.get(key, Fraction(0)) + coeff * sign
    return SuperPolynomial(nvars, acc)


@criterion(1, "example regression")
def test_criterion_1_examples():
    # monomial realizations in four variables
    assert realize_M(comp("d3", 1, 2), 4) == _poly(
        4,
        (1, (1,), {1: 3, 2: 1, 3: 2}),
        (1, (1,), {1: 3, 2: 1, 4: 2}),
        (1, (1,), {1: 3, 3: 1, 4: 2}),
        (1, (2,), {2: 3, 3: 1, 4: 2}),
    )
    assert realize_M(comp(3, "d1", "d2"), 4) == _poly(
        4,
        (1, (2, 3), {1: 3, 2: 1, 3: 2}),
        (1, (2, 4), {1: 3, 2: 1, 4: 2}),
        (1, (3, 4), {1: 3, 3: 1, 4: 2}),
        (1, (3, 4), {2: 3, 3: 1, 4: 2}),
    )

    # D/E/F sets of the running example
    sets = def_sets(comp(2, 3, "d1", "d2", 4, "d1", "d0", 2, "d1"))
    assert sorted(sets.D) == [2, 5, 7, 10, 14, 16, 17, 19]
    assert sorted(sets.E) == [6, 8, 9, 15, 20]
    assert sorted(sets.F) == [7, 10, 16, 17, 21]

    # five-term coproduct
    alpha = comp("d2", 1, "d3", 4)
    expected = TensorExpr(("M", "M"))
    for k in range(5):
        expected = expected + tensor(
            Expr.basis_element("M", comp(*alpha.parts[:k])),
            Expr.basis_element("M", comp(*alpha.parts[k:])),
        )
    assert coproduct_M(alpha) == expected

    # the fifteen-term signed fundamental product
    assert product_L(comp("d1", 2), comp("d2", 1)) == (
        L("d1", 2, "d2", 1)
        + L("d1", 1, "d2", 2)
        + L("d1", 1, "d2", 1, 1)
        + L("d1", 1, "d3", 1)
        + L("d1", "d2", 3)
        + L("d1", "d2", 2, 1)
        + L("d1", "d2", 1, 2)
        + L("d1", "d3", 2)
        + L("d1", "d3", 1, 1)
        + L("d1", "d4", 1)
        - L("d2", "d1", 3)
        - L("d2", "d1", 2, 1)
        - L("d2", "d1", 1, 2)
        - L("d2", 1, "d1", 2)
        - L("d2", "d2", 2)
    )

    # the two displayed grid paths
    pi = path_word(
        word(4, 3, "d3", 2, 6),
        word(8, "d0", 7),
        [("H",), ("H",), ("V",), ("H",), ("D4", 2), ("V",)],
    )
    assert pi == word(4, 3, 8, "d3", "d2", 7)
    assert comp_of_word(pi) == comp(1, 2, "d3", "d2", 1)
    pi = path_word(
        word("d1", 1, 2, 3, 4),
        word("d2", "d3", 5, 6, 7),
        [("H",), ("V",), ("D4", 2), ("H",), ("H",), ("V",), ("V",), ("V",)],
    )
    assert pi == word("d1", "d2", "d5", 3, 4, 5, 6, 7)
    assert comp_of_word(pi) == comp("d1", "d2", "d5", 5)

    # column decomposition (fifth factor corrected to (1,1,1); the printed
    # factor list in the source drops one unit and misses the degree)
    gamma = comp(2, "d0", 3, 1, "d3", 1, "d2", 2, 1, 3, "d0")
    factors = column_decomposition(gamma)
    assert factors == [
        comp(1),
        comp(1, "d0", 1),
        comp(1),
        comp(1, 1, "d3", 1, "d2", 1),
        comp(1, 1, 1),
        comp(1),
        comp(1, "d0"),
    ]
    assert near_concat_list(factors) == gamma

    # twelve-term antipode of a column
    assert antipode_L(comp(1, 1, "d5", 1, 1, 1)) == (
        L(3, "d5", 2)
        + L(3, "d6", 1)
        + L(3, "d7")
        + L(2, "d6", 2)
        + L(2, "d7", 1)
        + L(2, "d8")
        + L(1, "d7", 2)
        + L(1, "d8", 1)
        + L(1, "d9")
        + L("d8", 2)
        + L("d9", 1)
        + L("d10")
    )

    # classical antipode value
    assert antipode_L(comp(3, 1, 2, 1, 2)) == L(1, 3, 3, 1, 1).scale(-1)

    # descent composition of the displayed dot-standard tableau
    outer = Superpartition((1, 0), (4, 4, 1))
    cells = {
        (1, 1): 1, (1, 2): 2, (2, 1): 3, (2, 2): 3, (1, 3): 4,
        (3, 1): 5, (1, 4): 6, (2, 3): 7, (2, 4): 8, (4, 1): 9,
    }
    tabs = enumerate_s_tableaux(
        outer, EMPTY_SHAPE, (1, 1, "d2", 1, 1, 1, 1, "d1", 1)
    )
    matching = [t for t in tabs if t.cell_map() == cells]
    assert len(matching) == 1
    assert comp_of_tableau(matching[0]) == comp(2, "d2", 1, 2, 1, "d1", 1)

    # ten-term Schur expansion
    assert schur_to_L(Superpartition((1,), (2, 2))) == (
        L("d1", 2, 2)
        + L("d1", 1, 2, 1)
        + L(1, "d1", 1, 2)
        + L(1, "d1", 2, 1)
        + L(2, "d1", 2)
        + L(1, 1, "d1", 1, 1)
        + L(2, 1, "d1", 1)
        + L(1, 2, "d1", 1)
        + L(2, 2, "d1")
        + L(1, 2, 1, "d1")
    )


@criterion(2, "Hopf axiom suite, n+m<=4, m<=2")
def test_criterion_2_axioms():
    report = verify_hopf(4, 2)
    failing = [c.name for c in report.checks if c.status != "pass"]
    assert not failing, failing
    names = {c.name for c in report.checks}
    assert {
        "counit_M",
        "counit_L",
        "coassociativity_M",
        "coassociativity_L",
        "convolution_M",
        "convolution_L",
        "bialgebra_M",
        "bialgebra_L",
    } <= names


def _pairs_for_oracle():
    singles = [
        a
        for n in range(5)
        for m in range(3)
        for a in compositions_of(n, m)
    ]
    for a in singles:
        for b in singles:
            if (
                a.total_degree + b.total_degree <= 4
                and a.fermionic_degree + b.fermionic_degree <= 2
            ):
                yield a, b


@criterion(3, "product oracle, combined n<=4, m<=2")
def test_criterion_3_product_oracle():
    for a, b in _pairs_for_oracle():
        nvars = (
            a.total_degree
            + a.fermionic_degree
            + b.total_degree
            + b.fermionic_degree
        )
        prod = product_M(a, b)
        assert realize_expr(prod, nvars) == poly_mul(
            realize_M(a, nvars), realize_M(b, nvars)
        ), (a, b)
        via_l = L_to_M(
            product_L(M_to_L(Expr.basis_element("M", a)),
                      M_to_L(Expr.basis_element("M", b)))
        )
        assert via_l == prod, (a, b)


@criterion(4, "antipode cross-route, n+m<=5")
def test_criterion_4_antipode_routes():
    for gamma in universe(5):
        col = antipode_L(gamma)
        mon = M_to_L(antipode_M(L_to_M(Expr.basis_element("L", gamma))))
        assert col == mon, gamma


def _tensor_extract_M(p, n1, n2):
    """Read the M (x) M expansion off a two-block quasisymmetric polynomial."""
    terms = {}
    for (theta, xs), c in p.terms.items():
        m1 = (
            tuple(i for i in theta if i <= n1),
            tuple((i, e) for i, e in xs if i <= n1),
        )
        m2 = (
            tuple(i - n1 for i in theta if i > n1),
            tuple((i - n1, e) for i, e in xs if i > n1),
        )
        a1, idx1 = _monomial_type(m1)
        a2, idx2 = _monomial_type(m2)
        if idx1 == tuple(range(1, a1.length + 1)) and idx2 == tuple(
            range(1, a2.length + 1)
        ):
            terms[(a1, a2)] = c
    return TensorExpr(("M", "M"), terms)


@criterion(5, "coproduct oracle, n+m<=4")
def test_criterion_5_coproduct_oracle():
    n1 = n2 = 4
    for alpha in universe(4):
        p = realize_L(alpha, n1 + n2)
        t = coproduct_L(alpha)
        # exact two-block reconstruction
        rebuilt = SuperPolynomial.zero(n1 + n2)
        for (left, right), c in t.terms.items():
            pl = shift_indices(realize_L(left, n1), 0, n1 + n2)
            pr = shift_indices(realize_L(right, n2), n1, n1 + n2)
            rebuilt = rebuilt + poly_mul(pl, pr).scale(c)
        assert rebuilt == p, alpha
        # term-by-term agreement in the M (x) M basis
        oracle_tensor = _tensor_extract_M(p, n1, n2)
        assert t.map_slots(L_to_M, L_to_M, ("M", "M")) == oracle_tensor, alpha


@criterion(6, "concatenation-product theorems, combined n+m<=4")
def test_criterion_6_theorems():
    singles = universe(4)
    pairs = [
        (a, b)
        for a in singles
        for b in singles
        if (
            a.total_degree
            + a.fermionic_degree
            + b.total_degree
            + b.fermionic_degree
        )
        <= 4
    ]
    for a, b in pairs:
        ea, eb = Expr.basis_element("M", a), Expr.basis_element("M", b)
        sa, sb = antipode_M(ea), antipode_M(eb)
        sign = -1 if (a.fermionic_degree * b.fermionic_degree) % 2 else 1
        assert antipode_M(bullet(ea, eb)) == (
            bullet(sb, sa) + odot(sb, sa)
        ).scale(sign), (a, b)
        assert antipode_M(odot(ea, eb)) == odot(sb, sa).scale(-sign), (a, b)
    for a, b in pairs:
        la, lb = Expr.basis_element("L", a), Expr.basis_element("L", b)
        assert L_to_M(bullet(la, lb)) == bullet(L_to_M(la), L_to_M(lb)), (a, b)
        if (
            a.parts
            and b.parts
            and not a.parts[-1].dotted
            and not b.parts[0].dotted
        ):
            fused = near_concat(a, b)
            assert bullet(la, lb) + _odot_L_via_M(la, lb) == Expr.basis_element(
                "L", fused
            ), (a, b)


@criterion(7, "Schur suite, |star|+circles<=5")
def test_criterion_7_schur():
    for m in range(6):
        for d in range(6 - m):
            for lam in superpartitions(d, m):
                nvars = d + m
                assert realize_s(lam, EMPTY_SHAPE, nvars) == realize_expr(
                    L_to_M(schur_to_L(lam)), nvars
                ), lam
    for n in range(1, 6):
        for lam in superpartitions(n, 0):
            got = schur_to_L(lam)
            want = co.schur_to_L(lam.bosonic)
            assert {
                tuple(p.value for p in k.parts): v for k, v in got.terms.items()
            } == want, lam


@criterion(8, "classical degeneration, degree<=5")
def test_criterion_8_classical():
    def plain(e):
        return {tuple(p.value for p in k.parts): v for k, v in e.terms.items()}

    singles = [a for n in range(6) for a in compositions_of(n, 0)]
    for a in singles:
        ta = tuple(p.value for p in a.parts)
        for b in singles:
            if a.total_degree + b.total_degree > 5:
                continue
            tb = tuple(p.value for p in b.parts)
            assert plain(product_M(a, b)) == co.quasi_shuffle(ta, tb), (a, b)
            assert plain(product_L(a, b)) == co.fundamental_product(ta, tb), (a, b)
    for a in singles:
        ta = tuple(p.value for p in a.parts)
        got_m = {
            (tuple(p.value for p in l.parts), tuple(p.value for p in r.parts)): c
            for (l, r), c in coproduct_M(a).terms.items()
        }
        assert got_m == co.coproduct_M(ta), a
        got_l = {
            (tuple(p.value for p in l.parts), tuple(p.value for p in r.parts)): c
            for (l, r), c in coproduct_L(a).terms.items()
        }
        assert got_l == co.coproduct_L(ta), a
        assert plain(antipode_M(a)) == co.antipode_M(ta), a
        assert plain(antipode_L(a)) == co.antipode_L(ta), a
