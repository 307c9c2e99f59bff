"""Dotted compositions: the index set of every basis in this package.

A dotted composition is a finite sequence of parts, each either a positive
integer or a "dotted" nonnegative integer (d0 is legal).  Total degree n sums
the values, fermionic degree m counts the dots.  This module carries the two
refinement orders, the D/E/F set coordinates, and the structural operations
(reverse, concatenation, near concatenation, column decomposition).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, NamedTuple, Optional


class CompositionParseError(ValueError):
    """Raised on malformed composition text; carries the offending position."""

    def __init__(self, message: str, position: int):
        super().__init__(f"parse error at position {position}: {message}")
        self.position = position


class InconsistentDefSetsError(ValueError):
    """Raised when (n, m, D, F) does not describe any dotted composition."""


class DottedPart(NamedTuple):
    value: int
    dotted: bool

    def __str__(self) -> str:
        return f"d{self.value}" if self.dotted else str(self.value)


def _coerce_part(p) -> DottedPart:
    if isinstance(p, DottedPart):
        part = p
    elif isinstance(p, tuple) and len(p) == 2:
        part = DottedPart(int(p[0]), bool(p[1]))
    elif isinstance(p, int):
        part = DottedPart(p, False)
    elif isinstance(p, str):
        s = p.strip()
        if s.startswith("d"):
            part = DottedPart(int(s[1:]), True)
        else:
            part = DottedPart(int(s), False)
    else:
        raise TypeError(f"cannot interpret {p!r} as a dotted part")
    if part.dotted:
        if part.value < 0:
            raise ValueError(f"dotted part must be >= 0, got {part.value}")
    elif part.value < 1:
        raise ValueError(f"non-dotted part must be >= 1, got {part.value}")
    return part


class DottedComposition:
    """Immutable sequence of dotted parts; hashable, usable as a basis key."""

    __slots__ = ("parts",)

    def __init__(self, parts: Iterable = ()):
        object.__setattr__(self, "parts", tuple(_coerce_part(p) for p in parts))

    def __setattr__(self, name, value):
        raise AttributeError("DottedComposition is immutable")

    # -- container protocol -------------------------------------------------

    def __len__(self) -> int:
        return len(self.parts)

    def __iter__(self) -> Iterator[DottedPart]:
        return iter(self.parts)

    def __getitem__(self, i):
        return self.parts[i]

    def __eq__(self, other) -> bool:
        return isinstance(other, DottedComposition) and self.parts == other.parts

    def __hash__(self) -> int:
        return hash(self.parts)

    def __repr__(self) -> str:
        return str(self)

    def __str__(self) -> str:
        return "[" + ",".join(str(p) for p in self.parts) + "]"

    # -- statistics ----------------------------------------------------------

    @property
    def length(self) -> int:
        return len(self.parts)

    @property
    def total_degree(self) -> int:
        return sum(p.value for p in self.parts)

    @property
    def fermionic_degree(self) -> int:
        return sum(1 for p in self.parts if p.dotted)

    def degrees(self) -> tuple[int, int]:
        """(n, m) with alpha |- (n, m)."""
        return (self.total_degree, self.fermionic_degree)

    def eta(self) -> tuple[int, ...]:
        """0/1 indicator of dotted positions."""
        return tuple(1 if p.dotted else 0 for p in self.parts)

    def is_empty(self) -> bool:
        return not self.parts

    # -- structural operations ------------------------------------------------

    def reverse(self) -> "DottedComposition":
        return DottedComposition(reversed(self.parts))

    def concat(self, other: "DottedComposition") -> "DottedComposition":
        return DottedComposition(self.parts + other.parts)

    def sort_key(self) -> tuple:
        # dotted sorts before non-dotted at equal value, for stable output
        return tuple((p.value, 0 if p.dotted else 1) for p in self.parts)

    # -- text / json ----------------------------------------------------------

    @classmethod
    def parse(cls, text: str) -> "DottedComposition":
        return parse_composition(text)

    def latex(self) -> str:
        body = ",".join(
            rf"\dot{{{p.value}}}" if p.dotted else str(p.value) for p in self.parts
        )
        return f"({body})"

    def to_json(self) -> list[dict]:
        return [{"v": p.value, "dot": p.dotted} for p in self.parts]

    @classmethod
    def from_json(cls, data: list[dict]) -> "DottedComposition":
        return cls((d["v"], d["dot"]) for d in data)


EMPTY = DottedComposition()


def comp(*parts) -> DottedComposition:
    """Shorthand constructor: comp(2, "d3", 1) == [2,d3,1]."""
    return DottedComposition(parts)


def parse_composition(text: str) -> DottedComposition:
    s = text
    i = 0
    n = len(s)

    def skip_ws(i: int) -> int:
        while i < n and s[i].isspace():
            i += 1
        return i

    i = skip_ws(i)
    if i >= n or s[i] != "[":
        raise CompositionParseError("expected '['", i)
    i = skip_ws(i + 1)
    parts: list[DottedPart] = []
    if i < n and s[i] == "]":
        i += 1
    else:
        while True:
            dotted = False
            if i < n and s[i] == "d":
                dotted = True
                i += 1
            start = i
            while i < n and s[i].isdigit():
                i += 1
            if i == start:
                raise CompositionParseError("expected digit", i)
            value = int(s[start:i])
            try:
                parts.append(_coerce_part((value, dotted)))
            except ValueError as exc:
                raise CompositionParseError(str(exc), start) from None
            i = skip_ws(i)
            if i < n and s[i] == ",":
                i = skip_ws(i + 1)
                continue
            if i < n and s[i] == "]":
                i += 1
                break
            raise CompositionParseError("expected ',' or ']'", i)
    i = skip_ws(i)
    if i != n:
        raise CompositionParseError("trailing input", i)
    return DottedComposition(parts)


# ---------------------------------------------------------------------------
# D / E / F coordinates


@dataclass(frozen=True)
class DefSets:
    D: frozenset[int]
    E: frozenset[int]
    F: frozenset[int]
    Fminus: frozenset[int]


def def_sets(alpha: DottedComposition) -> DefSets:
    """Partial-sum coordinates of alpha (positions run over 1..n+m)."""
    D: list[int] = []
    E: list[int] = []
    F: list[int] = []
    acc = 0
    for i, p in enumerate(alpha.parts):
        prev = acc
        acc += p.value + (1 if p.dotted else 0)
        if p.dotted:
            E.extend(range(prev + 1, acc))
            F.append(acc)
        if i < len(alpha.parts) - 1:
            D.append(acc)
    fset = frozenset(F)
    fminus = fset
    if F and F[-1] not in D:
        fminus = fset - {F[-1]}
    return DefSets(frozenset(D), frozenset(E), fset, fminus)


def from_def_sets(n: int, m: int, D: Iterable[int], F: Iterable[int]) -> DottedComposition:
    """Inverse of def_sets at fixed bidegree (n, m)."""
    total = n + m
    Dset = frozenset(D)
    Fset = frozenset(F)
    if len(Fset) != m:
        raise InconsistentDefSetsError(f"F must have {m} elements, got {len(Fset)}")
    if any(not (1 <= d <= total - 1) for d in Dset):
        raise InconsistentDefSetsError(f"D must lie in 1..{total - 1}")
    if not Fset <= Dset | {total}:
        raise InconsistentDefSetsError("F must be contained in D plus the endpoint")
    cuts = sorted(Dset) + [total] if total > 0 else []
    if total == 0:
        if Dset or Fset:
            raise InconsistentDefSetsError("empty bidegree admits no cut points")
        return EMPTY
    parts: list[DottedPart] = []
    prev = 0
    for c in cuts:
        if c in Fset:
            parts.append(DottedPart(c - prev - 1, True))
        else:
            parts.append(DottedPart(c - prev, False))
        prev = c
    return DottedComposition(parts)


# ---------------------------------------------------------------------------
# the two partial orders


def strong_leq(beta: DottedComposition, alpha: DottedComposition) -> bool:
    """beta strongly refines alpha (adds of adjacent non-dotted pairs)."""
    if beta.degrees() != alpha.degrees():
        return False
    sa, sb = def_sets(alpha), def_sets(beta)
    return sa.D <= sb.D and sa.E == sb.E and sa.F == sb.F


def weak_leq(beta: DottedComposition, alpha: DottedComposition) -> bool:
    """beta weakly refines alpha: alpha groups beta into consecutive blocks,
    each holding at most one dotted part, block dotted iff a member is."""
    if beta.degrees() != alpha.degrees():
        return False
    lb, la = len(beta), len(alpha)
    # reachable[j] = set of beta-positions i such that beta[:i] matches alpha[:j]
    reachable = {0}
    for j in range(la):
        target = alpha.parts[j]
        nxt: set[int] = set()
        for i in reachable:
            acc = 0
            dots = 0
            for k in range(i, lb):
                acc += beta.parts[k].value
                dots += 1 if beta.parts[k].dotted else 0
                if dots > (1 if target.dotted else 0) or acc > target.value:
                    break
                if acc == target.value and dots == (1 if target.dotted else 0):
                    nxt.add(k + 1)
                # no early exit at acc == value: a trailing d0 may still
                # supply the dot a dotted target needs
        reachable = nxt
        if not reachable:
            return False
    return lb in reachable


def _splits_strong(part: DottedPart) -> list[tuple[DottedPart, ...]]:
    if part.dotted:
        return [(part,)]
    v = part.value
    out = []
    for cuts in itertools.product((0, 1), repeat=v - 1):
        pieces = []
        run = 1
        for c in cuts:
            if c:
                pieces.append(DottedPart(run, False))
                run = 1
            else:
                run += 1
        pieces.append(DottedPart(run, False))
        out.append(tuple(pieces))
    return out


def _nondotted_compositions(v: int) -> list[tuple[DottedPart, ...]]:
    if v == 0:
        return [()]
    return _splits_strong(DottedPart(v, False))


def _splits_weak(part: DottedPart) -> list[tuple[DottedPart, ...]]:
    if not part.dotted:
        return _splits_strong(part)
    out = []
    v = part.value
    for d in range(v + 1):
        for lsum in range(v - d + 1):
            for left in _nondotted_compositions(lsum):
                for right in _nondotted_compositions(v - d - lsum):
                    out.append(left + (DottedPart(d, True),) + right)
    return out


def _sorted_unique(items: Iterable[DottedComposition]) -> tuple[DottedComposition, ...]:
    return tuple(sorted(set(items), key=DottedComposition.sort_key))


@lru_cache(maxsize=None)
def _strong_refinements(alpha: DottedComposition) -> tuple[DottedComposition, ...]:
    choices = [_splits_strong(p) for p in alpha.parts]
    return _sorted_unique(
        DottedComposition(itertools.chain.from_iterable(combo))
        for combo in itertools.product(*choices)
    )


def strong_refinements(alpha: DottedComposition) -> list[DottedComposition]:
    """All beta with beta <= alpha in the strong order, sorted."""
    return list(_strong_refinements(alpha))


@lru_cache(maxsize=None)
def _weak_refinements(alpha: DottedComposition) -> tuple[DottedComposition, ...]:
    choices = [_splits_weak(p) for p in alpha.parts]
    return _sorted_unique(
        DottedComposition(itertools.chain.from_iterable(combo))
        for combo in itertools.product(*choices)
    )


def weak_refinements(alpha: DottedComposition) -> list[DottedComposition]:
    """All beta with beta <= alpha in the weak order, sorted."""
    return list(_weak_refinements(alpha))


@lru_cache(maxsize=None)
def _weak_coarsenings(alpha: DottedComposition) -> tuple[DottedComposition, ...]:
    parts = alpha.parts
    l = len(parts)
    results: list[DottedComposition] = []

    def go(i: int, acc: list[DottedPart]):
        if i == l:
            results.append(DottedComposition(acc))
            return
        value = 0
        dots = 0
        for j in range(i, l):
            value += parts[j].value
            dots += 1 if parts[j].dotted else 0
            if dots > 1:
                break
            acc.append(DottedPart(value, dots == 1))
            go(j + 1, acc)
            acc.pop()

    go(0, [])
    return _sorted_unique(results)


def weak_coarsenings(alpha: DottedComposition) -> list[DottedComposition]:
    """All gamma with alpha <= gamma in the weak order, sorted."""
    return list(_weak_coarsenings(alpha))


# ---------------------------------------------------------------------------
# concatenations and columns


def near_concat(
    alpha: DottedComposition, beta: DottedComposition
) -> Optional[DottedComposition]:
    """alpha (.) beta, or None when both boundary parts are dotted."""
    if alpha.is_empty() or beta.is_empty():
        return None
    a, b = alpha.parts[-1], beta.parts[0]
    if a.dotted and b.dotted:
        return None
    fused = DottedPart(a.value + b.value, a.dotted or b.dotted)
    return DottedComposition(alpha.parts[:-1] + (fused,) + beta.parts[1:])


def near_concat_list(factors: Iterable[DottedComposition]) -> DottedComposition:
    factors = list(factors)
    if not factors:
        return EMPTY
    out = factors[0]
    for f in factors[1:]:
        fused = near_concat(out, f)
        if fused is None:
            raise ValueError("near concatenation undefined: both boundary parts dotted")
        out = fused
    return out


def is_column(alpha: DottedComposition) -> bool:
    return all(p.value == 1 for p in alpha.parts if not p.dotted)


def is_maximal(alpha: DottedComposition) -> bool:
    return not any(
        not a.dotted and not b.dotted
        for a, b in zip(alpha.parts, alpha.parts[1:])
    )


def maximal_strong_coarsening(alpha: DottedComposition) -> DottedComposition:
    parts: list[DottedPart] = []
    for p in alpha.parts:
        if not p.dotted and parts and not parts[-1].dotted:
            parts[-1] = DottedPart(parts[-1].value + p.value, False)
        else:
            parts.append(p)
    return DottedComposition(parts)


@dataclass(frozen=True)
class Classification:
    is_column: bool
    is_maximal: bool
    maximal_strong_coarsening: DottedComposition


def classify(alpha: DottedComposition) -> Classification:
    return Classification(
        is_column(alpha), is_maximal(alpha), maximal_strong_coarsening(alpha)
    )


def column_decomposition(gamma: DottedComposition) -> list[DottedComposition]:
    """The unique columns with gamma = a1 (.) a2 (.) ... (.) ak.

    Cuts fall exactly at the internal bonds of non-dotted parts: a non-dotted
    entry v expands into v unit parts that must be re-fused by (.), each fusion
    marking a column boundary.
    """
    if gamma.is_empty():
        return []
    columns: list[list[DottedPart]] = [[]]
    for p in gamma.parts:
        if p.dotted:
            columns[-1].append(p)
        else:
            columns[-1].append(DottedPart(1, False))
            for _ in range(p.value - 1):
                columns.append([DottedPart(1, False)])
    return [DottedComposition(c) for c in columns]


# ---------------------------------------------------------------------------
# enumeration


def compositions_of(n: int, m: int) -> list[DottedComposition]:
    """All dotted compositions of bidegree (n, m), sorted."""
    results: list[DottedComposition] = []

    def go(rem_n: int, rem_m: int, acc: list[DottedPart]):
        if rem_n == 0 and rem_m == 0:
            results.append(DottedComposition(acc))
        for v in range(1, rem_n + 1):
            acc.append(DottedPart(v, False))
            go(rem_n - v, rem_m, acc)
            acc.pop()
        if rem_m > 0:
            for v in range(rem_n + 1):
                acc.append(DottedPart(v, True))
                go(rem_n - v, rem_m - 1, acc)
                acc.pop()

    go(n, m, [])
    return sorted(results, key=DottedComposition.sort_key)


def compositions_with_total(total: int, max_fermionic: Optional[int] = None) -> list[DottedComposition]:
    """All dotted compositions with n + m == total (optionally capping m)."""
    out: list[DottedComposition] = []
    for m in range(total + 1):
        if max_fermionic is not None and m > max_fermionic:
            break
        out.extend(compositions_of(total - m, m))
    return sorted(out, key=DottedComposition.sort_key)


def universe(max_total: int, max_fermionic: Optional[int] = None) -> list[DottedComposition]:
    """All dotted compositions with n + m <= max_total (optionally capping m)."""
    out: list[DottedComposition] = []
    for t in range(max_total + 1):
        out.extend(compositions_with_total(t, max_fermionic))
    return out
