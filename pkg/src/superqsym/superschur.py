"""Superpartitions, horizontal strips of type s, s-tableaux, and the
expansion of superspace Schur functions into the fundamental basis."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Optional

from .algebra import Expr
from .composition import DottedComposition, DottedPart
from .realize import SuperPolynomial
from .shuffles import _assemble_composition


class NotDotStandardError(ValueError):
    pass


class IncompatibleShapeError(ValueError):
    pass


class SuperpartitionParseError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"parse error at position {position}: {message}")
        self.position = position


class Superpartition:
    """A pair (fermionic; bosonic): strictly decreasing distinct parts >= 0
    carrying circles, and an ordinary partition.  Among equal row lengths the
    circled row sits above the plain one, so the circled diagram is fixed."""

    __slots__ = ("fermionic", "bosonic")

    def __init__(self, fermionic: Iterable[int] = (), bosonic: Iterable[int] = ()):
        f = tuple(sorted((int(v) for v in fermionic), reverse=True))
        b = tuple(sorted((int(v) for v in bosonic), reverse=True))
        if any(v < 0 for v in f):
            raise ValueError("fermionic parts must be >= 0")
        if len(set(f)) != len(f):
            raise ValueError("fermionic parts must be distinct")
        if any(v < 1 for v in b):
            raise ValueError("bosonic parts must be >= 1")
        object.__setattr__(self, "fermionic", f)
        object.__setattr__(self, "bosonic", b)

    def __setattr__(self, name, value):
        raise AttributeError("Superpartition is immutable")

    def __eq__(self, other):
        return (
            isinstance(other, Superpartition)
            and self.fermionic == other.fermionic
            and self.bosonic == other.bosonic
        )

    def __hash__(self):
        return hash((self.fermionic, self.bosonic))

    def __repr__(self) -> str:
        return str(self)

    def __str__(self) -> str:
        return (
            "("
            + ",".join(str(v) for v in self.fermionic)
            + ";"
            + ",".join(str(v) for v in self.bosonic)
            + ")"
        )

    @property
    def n_circles(self) -> int:
        return len(self.fermionic)

    @property
    def degree(self) -> int:
        return sum(self.fermionic) + sum(self.bosonic)

    def star(self) -> tuple[int, ...]:
        return tuple(
            sorted((v for v in self.fermionic + self.bosonic if v > 0), reverse=True)
        )

    def star_padded(self, length: int) -> tuple[int, ...]:
        s = self.star()
        return s + (0,) * (length - len(s))

    def circle_row(self, value: int) -> int:
        """Diagram row (1-based, top-down) of the circle ending a row of
        this length; rows sorted by length, circled above plain on ties."""
        entries = self.fermionic + self.bosonic
        return 1 + sum(1 for v in entries if v > value)

    def circles_from_below(self) -> tuple[int, ...]:
        return tuple(sorted(self.fermionic))

    def contains(self, other: "Superpartition") -> bool:
        rows = max(len(self.star()), len(other.star()))
        return self.n_circles >= other.n_circles and all(
            a >= b
            for a, b in zip(self.star_padded(rows), other.star_padded(rows))
        )

    @classmethod
    def parse(cls, text: str) -> "Superpartition":
        s = text.strip()
        if not (s.startswith("(") and s.endswith(")")):
            raise SuperpartitionParseError("expected '(...)'", 0)
        body = s[1:-1]
        if ";" not in body:
            raise SuperpartitionParseError("expected ';' separator", 1)
        left, right = body.split(";", 1)

        def ints(chunk: str, offset: int) -> list[int]:
            chunk = chunk.strip()
            if not chunk:
                return []
            out = []
            for piece in chunk.split(","):
                piece = piece.strip()
                if not piece.isdigit():
                    raise SuperpartitionParseError(
                        f"expected integer, got {piece!r}", offset
                    )
                out.append(int(piece))
            return out

        try:
            return cls(ints(left, 1), ints(right, 2 + len(left)))
        except ValueError as exc:
            if isinstance(exc, SuperpartitionParseError):
                raise
            raise SuperpartitionParseError(str(exc), 1) from None


EMPTY_SHAPE = Superpartition()


def partitions_of(n: int, max_part: Optional[int] = None) -> list[tuple[int, ...]]:
    if max_part is None:
        max_part = n
    if n == 0:
        return [()]
    out = []
    for first in range(min(n, max_part), 0, -1):
        for rest in partitions_of(n - first, first):
            out.append((first,) + rest)
    return out


def superpartitions(degree: int, circles: int) -> list[Superpartition]:
    """All superpartitions with |star| = degree and the given circle count."""
    results: list[Superpartition] = []

    def ferm(remaining: int, count: int, cap: int, acc: list[int]):
        if count == 0:
            for bos in partitions_of(remaining):
                results.append(Superpartition(tuple(acc), bos))
            return
        # smallest possible tail sum: 0+1+...+(count-1)
        for v in range(min(cap, remaining), count - 2, -1):
            if v < 0:
                break
            acc.append(v)
            ferm(remaining - v, count - 1, v - 1, acc)
            acc.pop()

    ferm(degree, circles, degree, [])
    return sorted(results, key=lambda sp: (sp.fermionic, sp.bosonic))


# ---------------------------------------------------------------------------
# horizontal strips of type s


def _is_horizontal_strip(big: tuple[int, ...], small: tuple[int, ...]) -> bool:
    rows = max(len(big), len(small))
    b = big + (0,) * (rows - len(big))
    s = small + (0,) * (rows - len(small))
    if any(bv < sv for bv, sv in zip(b, s)):
        return False
    return all(b[i + 1] <= s[i] for i in range(rows - 1))


def _strip_rows(big: tuple[int, ...], small: tuple[int, ...]) -> frozenset[int]:
    rows = max(len(big), len(small))
    b = big + (0,) * (rows - len(big))
    s = small + (0,) * (rows - len(small))
    return frozenset(i + 1 for i in range(rows) if b[i] > s[i])


def _strip_cells(
    big: tuple[int, ...], small: tuple[int, ...]
) -> tuple[tuple[int, int], ...]:
    rows = max(len(big), len(small))
    b = big + (0,) * (rows - len(big))
    s = small + (0,) * (rows - len(small))
    cells = []
    for i in range(rows):
        for c in range(s[i] + 1, b[i] + 1):
            cells.append((i + 1, c))
    return tuple(cells)


def _old_circles_ok(
    small: Superpartition,
    small_values: tuple[int, ...],
    big: Superpartition,
    big_values: tuple[int, ...],
    strip_rows: frozenset[int],
) -> bool:
    """Match the i-th circles from below: same row, or one below when the
    strip has a cell in the small circle's row."""
    if len(small_values) != len(big_values):
        return False
    for sv, bv in zip(small_values, big_values):
        r = small.circle_row(sv)
        expected = r + (1 if r in strip_rows else 0)
        if big.circle_row(bv) != expected:
            return False
    return True


@lru_cache(maxsize=None)
def bosonic_strips(gamma: Superpartition, size: int) -> tuple[Superpartition, ...]:
    """All targets one bosonic horizontal `size`-strip above gamma."""
    out = []
    for cand in superpartitions(gamma.degree + size, gamma.n_circles):
        if not _is_horizontal_strip(cand.star(), gamma.star()):
            continue
        rows = _strip_rows(cand.star(), gamma.star())
        if _old_circles_ok(
            gamma,
            gamma.circles_from_below(),
            cand,
            cand.circles_from_below(),
            rows,
        ):
            out.append(cand)
    return tuple(out)


@lru_cache(maxsize=None)
def fermionic_strips(
    gamma: Superpartition, size: int
) -> tuple[tuple[Superpartition, int], ...]:
    """All (target, new-circle column) one fermionic `size`-strip above gamma:
    the new circle's column is empty while every column left of it holds a
    strip cell; remaining circles move as in the bosonic case."""
    out = []
    for cand in superpartitions(gamma.degree + size, gamma.n_circles + 1):
        if not _is_horizontal_strip(cand.star(), gamma.star()):
            continue
        rows = _strip_rows(cand.star(), gamma.star())
        cols = {c for _, c in _strip_cells(cand.star(), gamma.star())}
        for new_value in cand.fermionic:
            col = new_value + 1
            if col in cols:
                continue
            if any(c not in cols for c in range(1, col)):
                continue
            others = tuple(v for v in cand.circles_from_below() if v != new_value)
            if _old_circles_ok(
                gamma, gamma.circles_from_below(), cand, others, rows
            ):
                out.append((cand, col))
                break  # the column conditions pin the new circle uniquely
    return tuple(out)


# ---------------------------------------------------------------------------
# s-tableaux


@dataclass(frozen=True)
class STableau:
    inner: Superpartition
    outer: Superpartition
    chain: tuple[Superpartition, ...]
    weight: tuple[DottedPart, ...]
    cells: tuple[tuple[tuple[int, int], int], ...]  # ((row, col), letter)
    circles: tuple[tuple[int, Optional[int]], ...]  # (value, letter) from below

    def cell_map(self) -> dict[tuple[int, int], int]:
        return dict(self.cells)

    def circle_word(self) -> tuple[int, ...]:
        # top-to-bottom = decreasing circle value; unfilled circles are skipped
        return tuple(
            letter
            for value, letter in sorted(self.circles, reverse=True)
            if letter is not None
        )

    def inv(self) -> int:
        w = self.circle_word()
        return sum(
            1
            for i in range(len(w))
            for j in range(i + 1, len(w))
            if w[i] > w[j]
        )

    def sign(self) -> int:
        return -1 if self.inv() % 2 else 1

    def is_dot_standard(self) -> bool:
        return all(p.dotted or p.value == 1 for p in self.weight)

    def ascii(self) -> str:
        cmap = self.cell_map()
        circle_at: dict[int, Optional[int]] = {}
        for value, letter in self.circles:
            circle_at[self.outer.circle_row(value)] = letter
        star = self.outer.star()
        inner_star = self.inner.star_padded(len(star) + self.outer.n_circles)
        nrows = max(
            len(star),
            max(circle_at, default=0),
        )
        lines = []
        for r in range(1, nrows + 1):
            width = star[r - 1] if r <= len(star) else 0
            row = []
            for c in range(1, width + 1):
                if (r, c) in cmap:
                    row.append(f"[{cmap[(r, c)]}]")
                elif c <= inner_star[r - 1]:
                    row.append(" . ")
                else:
                    row.append("[ ]")
            if r in circle_at:
                letter = circle_at[r]
                row.append(f"({letter})" if letter is not None else "( )")
            lines.append("".join(row))
        return "\n".join(lines)


def _initial_circles(inner: Superpartition) -> tuple[tuple[int, Optional[int]], ...]:
    return tuple((v, None) for v in inner.circles_from_below())


def _bosonic_extensions(sp, circles, letter, size):
    out = []
    for target in bosonic_strips(sp, size):
        cells = _strip_cells(target.star(), sp.star())
        new_circles = tuple(
            (v, circles[i][1]) for i, v in enumerate(target.circles_from_below())
        )
        out.append((target, cells, new_circles))
    return out


def _fermionic_extensions(sp, circles, letter, size):
    out = []
    for target, col in fermionic_strips(sp, size):
        cells = _strip_cells(target.star(), sp.star())
        new_value = col - 1
        values = target.circles_from_below()
        idx = values.index(new_value)
        old_letters = [l for _, l in circles]
        letters = old_letters[:idx] + [letter] + old_letters[idx:]
        new_circles = tuple((v, letters[i]) for i, v in enumerate(values))
        out.append((target, cells, new_circles))
    return out


def enumerate_s_tableaux(
    outer: Superpartition, inner: Superpartition, weight: Iterable
) -> list[STableau]:
    """All s-tableaux of shape outer/inner with the given weight (entries are
    ints for bosonic strips, 'd<k>' strings or (k, True) pairs for fermionic)."""
    wt = tuple(
        p if isinstance(p, DottedPart) else _weight_part(p) for p in weight
    )
    results: list[STableau] = []

    def go(i, sp, chain, cells, circles):
        if i == len(wt):
            if sp == outer:
                results.append(
                    STableau(inner, outer, tuple(chain), wt, tuple(cells), circles)
                )
            return
        part = wt[i]
        ext = (
            _fermionic_extensions(sp, circles, i + 1, part.value)
            if part.dotted
            else _bosonic_extensions(sp, circles, i + 1, part.value)
        )
        for target, new_cells, new_circles in ext:
            if not outer.contains(target):
                continue
            chain.append(target)
            cells.extend((cell, i + 1) for cell in new_cells)
            go(i + 1, target, chain, cells, new_circles)
            del cells[len(cells) - len(new_cells) :]
            chain.pop()

    go(0, inner, [inner], [], _initial_circles(inner))
    return results


def _weight_part(p) -> DottedPart:
    if isinstance(p, str) and p.startswith("d"):
        return DottedPart(int(p[1:]), True)
    if isinstance(p, int):
        return DottedPart(p, False)
    if isinstance(p, tuple):
        return DottedPart(int(p[0]), bool(p[1]))
    raise TypeError(f"cannot read weight entry {p!r}")


def dot_standard_tableaux(
    outer: Superpartition, inner: Superpartition
) -> list[STableau]:
    """All dot-standard s-tableaux of shape outer/inner (non-dotted weight
    entries equal 1; dotted entries of any size including d0)."""
    if not outer.contains(inner):
        raise IncompatibleShapeError(f"{inner} is not contained in {outer}")
    results: list[STableau] = []

    def go(sp, chain, cells, circles, weight):
        if sp == outer:
            results.append(
                STableau(
                    inner,
                    outer,
                    tuple(chain),
                    tuple(weight),
                    tuple(cells),
                    circles,
                )
            )
            return
        letter = len(weight) + 1
        remaining = outer.degree - sp.degree
        menu = [DottedPart(1, False)] if remaining >= 1 else []
        if outer.n_circles - len(circles) >= 1:
            menu.extend(DottedPart(v, True) for v in range(remaining + 1))
        for part in menu:
            ext = (
                _fermionic_extensions(sp, circles, letter, part.value)
                if part.dotted
                else _bosonic_extensions(sp, circles, letter, part.value)
            )
            for target, new_cells, new_circles in ext:
                if not outer.contains(target):
                    continue
                chain.append(target)
                cells.extend((cell, letter) for cell in new_cells)
                weight.append(part)
                go(target, chain, cells, new_circles, weight)
                weight.pop()
                del cells[len(cells) - len(new_cells) :]
                chain.pop()

    go(inner, [inner], [], _initial_circles(inner), [])
    return results


def inv_sign(tab: STableau) -> int:
    return tab.sign()


def comp_of_tableau(tab: STableau) -> DottedComposition:
    """Descent composition of a dot-standard s-tableau."""
    if not tab.is_dot_standard():
        raise NotDotStandardError("every non-dotted weight entry must equal 1")
    wt = tab.weight
    n_letters = len(wt)
    rows: dict[int, int] = {}
    for (r, _c), letter in tab.cells:
        rows[letter] = r
    descents = []  # adjusted positions within the non-dotted subsequence
    dotted_items = []
    seen_nondotted = 0
    for i in range(1, n_letters + 1):
        p = wt[i - 1]
        if p.dotted:
            dotted_items.append((seen_nondotted, DottedPart(p.value, True)))
            continue
        seen_nondotted += 1
        if i + 1 <= n_letters:
            nxt = wt[i]
            if nxt.dotted or rows[i + 1] > rows[i]:
                descents.append(seen_nondotted)
    n_nondotted = seen_nondotted
    return _assemble_composition(n_nondotted, descents, dotted_items)


def standardize(tab: STableau) -> STableau:
    """Split every bosonic letter into single-cell letters (left to right),
    drop empty bosonic letters, and relabel consecutively; circles keep their
    relative order."""
    steps: list[tuple[DottedPart, tuple[tuple[int, int], ...], bool]] = []
    cmap: dict[int, list[tuple[int, int]]] = {}
    for (cell, letter) in tab.cells:
        cmap.setdefault(letter, []).append(cell)
    for i, p in enumerate(tab.weight, start=1):
        cells = tuple(sorted(cmap.get(i, ()), key=lambda rc: rc[1]))
        if p.dotted:
            steps.append((p, cells, True))
        else:
            for cell in cells:
                steps.append((DottedPart(1, False), (cell,), False))

    sp = tab.inner
    chain = [sp]
    circles = _initial_circles(tab.inner)
    out_cells: list[tuple[tuple[int, int], int]] = []
    weight: list[DottedPart] = []
    for letter, (part, cells, dotted) in enumerate(steps, start=1):
        ext = (
            _fermionic_extensions(sp, circles, letter, part.value)
            if dotted
            else _bosonic_extensions(sp, circles, letter, part.value)
        )
        matches = [
            e
            for e in ext
            if frozenset(_strip_cells(e[0].star(), sp.star())) == frozenset(cells)
        ]
        if len(matches) != 1:
            raise ValueError("standardization produced an ambiguous or invalid step")
        target, new_cells, new_circles = matches[0]
        out_cells.extend((cell, letter) for cell in new_cells)
        weight.append(part)
        chain.append(target)
        sp, circles = target, new_circles
    if sp != tab.outer:
        raise ValueError("standardization did not reach the outer shape")
    return STableau(
        tab.inner,
        tab.outer,
        tuple(chain),
        tuple(weight),
        tuple(out_cells),
        circles,
    )


# ---------------------------------------------------------------------------
# Schur expansions


def schur_to_L(outer: Superpartition, inner: Superpartition = EMPTY_SHAPE) -> Expr:
    """s_{outer/inner} = sum over dot-standard tableaux of sign * L_comp(T)."""
    out: dict[DottedComposition, Fraction] = {}
    for tab in dot_standard_tableaux(outer, inner):
        key = comp_of_tableau(tab)
        out[key] = out.get(key, Fraction(0)) + tab.sign()
    return Expr("L", out)


def realize_s(
    outer: Superpartition, inner: Superpartition, nvars: int
) -> SuperPolynomial:
    """Generating sum over all s-tableaux with exactly `nvars` letters
    (weights may contain 0 and d0); the independent oracle for schur_to_L."""
    terms: dict = {}

    def emit(weight, circles):
        word = [
            letter
            for value, letter in sorted(circles, reverse=True)
            if letter is not None
        ]
        inv = sum(
            1
            for i in range(len(word))
            for j in range(i + 1, len(word))
            if word[i] > word[j]
        )
        theta = tuple(i for i, p in enumerate(weight, start=1) if p.dotted)
        xp = tuple(
            (i, p.value) for i, p in enumerate(weight, start=1) if p.value
        )
        key = (theta, xp)
        terms[key] = terms.get(key, Fraction(0)) + (-1 if inv % 2 else 1)

    def go(i, sp, circles, weight):
        if i == nvars:
            if sp == outer:
                emit(weight, circles)
            return
        remaining = outer.degree - sp.degree
        menu = [DottedPart(v, False) for v in range(remaining + 1)]
        if outer.n_circles - len(circles) >= 1:
            menu.extend(DottedPart(v, True) for v in range(remaining + 1))
        for part in menu:
            ext = (
                _fermionic_extensions(sp, circles, i + 1, part.value)
                if part.dotted
                else _bosonic_extensions(sp, circles, i + 1, part.value)
            )
            for target, _cells, new_circles in ext:
                if not outer.contains(target):
                    continue
                weight.append(part)
                go(i + 1, target, new_circles, weight)
                weight.pop()

    if not outer.contains(inner):
        raise IncompatibleShapeError(f"{inner} is not contained in {outer}")
    go(0, inner, _initial_circles(inner), [])
    return SuperPolynomial(nvars, terms)
