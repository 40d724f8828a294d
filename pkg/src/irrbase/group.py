"""Finite permutation groups via base-and-strong-generating-set stabilizer chains.

The chain is built by a deterministic Schreier-Sims procedure against a fixed
priority order of the points (natural order 1, 2, ..., n unless a custom
order is prescribed).  Every strong generator is bucketed at the first point
it moves in priority order, so the group stabilizing the first q points of
the order is generated by the buckets beyond q.  With the natural order this
yields ascending base points and makes minimal-coset-representative
canonicalization a greedy walk down the chain.

Orders are exact Python integers; nothing here overflows.  Intersections and
fingerprints are enumeration-based and refuse (never truncate) above a
caller-supplied element limit.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from typing import Iterator, Optional, Sequence

from .perm import (
    DegreeMismatchError,
    Permutation,
    _compose_tbl,
    _identity_tbl,
    _inverse_tbl,
    parse_cycles,
)


def _is_identity(tbl: tuple) -> bool:
    return all(i == v for i, v in enumerate(tbl))

#: default cap on enumeration-based operations (elements of the smaller group)
ENUM_LIMIT_DEFAULT = 2_000_000


class LimitExceeded(RuntimeError):
    """An enumeration or search limit was exceeded; the result was refused."""


class _Level:
    """One stabilizer-chain level: a base point, its generator bucket, orbit and transversal."""

    __slots__ = ("point", "gens", "orbit", "orbit_order", "inv")

    def __init__(self, point: int):
        self.point = point
        self.gens = []  # strong generators whose first moved point (in priority) is `point`
        self.orbit = {}  # orbit point -> transversal table u with point^u = orbit point
        self.orbit_order = []  # orbit points in BFS discovery order
        self.inv = {}  # orbit point -> inverse transversal table


class PermutationGroup:
    """Group generated by permutations of {1..n}, with order/membership/stabilizer queries."""

    def __init__(
        self,
        generators: Sequence[Permutation],
        degree: int,
        _base_order: Optional[Sequence[int]] = None,
    ):
        for g in generators:
            if g.degree != degree:
                raise DegreeMismatchError(
                    f"generator degree {g.degree} does not match group degree {degree}"
                )
        self.degree = degree
        self.generators = tuple(g for g in generators if not g.is_identity())
        if _base_order is None:
            self._pos = tuple(range(degree))  # natural priority: point index itself
            self._natural_base = True
        else:
            order = list(_base_order) + [p for p in range(degree) if p not in set(_base_order)]
            pos = [0] * degree
            for rank, pt in enumerate(order):
                pos[pt] = rank
            self._pos = tuple(pos)
            self._natural_base = list(order) == list(range(degree))
        self._levels: list[_Level] = []
        self._order: Optional[int] = None
        for g in self.generators:
            self._add_generator(g._tbl)
        self._order = 1
        for lvl in self._levels:
            self._order *= len(lvl.orbit)

    # -- construction ------------------------------------------------------

    def _placement(self, tbl: tuple) -> int:
        """First moved point in priority order."""
        pos = self._pos
        best = None
        for i, v in enumerate(tbl):
            if v != i and (best is None or pos[i] < pos[best]):
                best = i
        if best is None:
            raise ValueError("identity has no placement")
        return best

    def _place(self, tbl: tuple) -> int:
        """Bucket a new strong generator; returns the index of its level."""
        pt = self._placement(tbl)
        rank = self._pos[pt]
        for idx, lvl in enumerate(self._levels):
            if lvl.point == pt:
                lvl.gens.append(tbl)
                return idx
            if self._pos[lvl.point] > rank:
                new = _Level(pt)
                new.gens.append(tbl)
                self._levels.insert(idx, new)
                return idx
        new = _Level(pt)
        new.gens.append(tbl)
        self._levels.append(new)
        return len(self._levels) - 1

    def _gens_at(self, i: int) -> list:
        return [g for lvl in self._levels[i:] for g in lvl.gens]

    def _rebuild_level(self, i: int) -> None:
        lvl = self._levels[i]
        gens = self._gens_at(i)
        ident = _identity_tbl(self.degree)
        lvl.orbit = {lvl.point: ident}
        lvl.orbit_order = [lvl.point]
        lvl.inv = {lvl.point: ident}
        queue = [lvl.point]
        qi = 0
        while qi < len(queue):
            a = queue[qi]
            qi += 1
            ua = lvl.orbit[a]
            for s in gens:
                b = s[a]
                if b not in lvl.orbit:
                    ub = _compose_tbl(ua, s)
                    lvl.orbit[b] = ub
                    lvl.inv[b] = _inverse_tbl(ub)
                    lvl.orbit_order.append(b)
                    queue.append(b)

    def _sift_tbl(self, tbl: tuple, start: int = 0) -> tuple:
        """Strip tbl through the chain from level `start`; returns the residue table."""
        for idx in range(start, len(self._levels)):
            lvl = self._levels[idx]
            b = tbl[lvl.point]
            if b == lvl.point:
                continue
            u_inv = lvl.inv.get(b)
            if u_inv is None:
                return tbl
            tbl = _compose_tbl(tbl, u_inv)
        return tbl

    def _scan_level(self, i: int) -> Optional[int]:
        """Sift all Schreier generators of level i; place the first non-trivial residue."""
        lvl = self._levels[i]
        gens = self._gens_at(i)
        for a in lvl.orbit_order:
            ua = lvl.orbit[a]
            for s in gens:
                b = s[a]
                h = _compose_tbl(_compose_tbl(ua, s), lvl.inv[b])
                if _is_identity(h):
                    continue
                r = self._sift_tbl(h, i + 1)
                if not _is_identity(r):
                    return self._place(r)
        return None

    def _complete(self, i: int) -> None:
        while i >= 0:
            self._rebuild_level(i)
            nxt = self._scan_level(i)
            if nxt is None:
                i -= 1
            else:
                i = nxt

    def _add_generator(self, tbl: tuple) -> None:
        r = self._sift_tbl(tbl)
        if _is_identity(r):
            return
        idx = self._place(r)
        self._complete(idx)

    # -- queries -----------------------------------------------------------

    def order(self) -> int:
        return self._order

    def base(self) -> list:
        """1-based base points of the stabilizer chain, in chain order."""
        return [lvl.point + 1 for lvl in self._levels]

    def _contains_tbl(self, tbl: tuple) -> bool:
        return _is_identity(self._sift_tbl(tbl))

    def contains(self, p: Permutation) -> bool:
        if p.degree != self.degree:
            raise DegreeMismatchError(
                f"element degree {p.degree} does not match group degree {self.degree}"
            )
        return self._contains_tbl(p._tbl)

    def __contains__(self, p: Permutation) -> bool:
        return self.contains(p)

    def _iter_element_tbls(self) -> Iterator[tuple]:
        """All element tables exactly once, in a fixed deterministic order."""
        levels = self._levels
        n = self.degree

        def rec(i: int) -> Iterator[tuple]:
            if i == len(levels):
                yield _identity_tbl(n)
                return
            lvl = levels[i]
            for b in sorted(lvl.orbit):
                u = lvl.orbit[b]
                if b == lvl.point:
                    yield from rec(i + 1)
                else:
                    for sub in rec(i + 1):
                        yield _compose_tbl(sub, u)

        return rec(0)

    def iter_elements(self, limit: int = ENUM_LIMIT_DEFAULT) -> Iterator[Permutation]:
        if self._order > limit:
            raise LimitExceeded(
                f"group too large: order {self._order} exceeds enumeration limit {limit}"
            )
        return (Permutation._wrap(t) for t in self._iter_element_tbls())

    def elements(self, limit: int = ENUM_LIMIT_DEFAULT) -> list:
        return list(self.iter_elements(limit))

    def orbit(self, point: int) -> list:
        """Orbit of a 1-based point under the group, ascending."""
        if not 1 <= point <= self.degree:
            raise ValueError(f"point {point} out of range 1..{self.degree}")
        gens = [g._tbl for g in self.generators]
        seen = {point - 1}
        queue = [point - 1]
        while queue:
            a = queue.pop()
            for s in gens:
                b = s[a]
                if b not in seen:
                    seen.add(b)
                    queue.append(b)
        return sorted(p + 1 for p in seen)

    def point_stabilizer(self, point: int) -> "PermutationGroup":
        """Subgroup fixing the 1-based point; order(G) = |orbit| * order(result)."""
        if not 1 <= point <= self.degree:
            raise ValueError(f"point {point} out of range 1..{self.degree}")
        pt = point - 1
        rebased = PermutationGroup(self.generators, self.degree, _base_order=(pt,))
        stab_gens = []
        seen = set()
        for lvl in rebased._levels:
            for tbl in lvl.gens:
                if tbl[pt] == pt and tbl not in seen:
                    seen.add(tbl)
                    stab_gens.append(Permutation._wrap(tbl))
        return PermutationGroup(stab_gens, self.degree)

    def conjugate(self, x: Permutation) -> "PermutationGroup":
        """The group {g^x : g in G}; same order as G."""
        if x.degree != self.degree:
            raise DegreeMismatchError(
                f"conjugator degree {x.degree} does not match group degree {self.degree}"
            )
        return PermutationGroup([g.conjugate(x) for g in self.generators], self.degree)

    def is_subgroup_of(self, other: "PermutationGroup") -> bool:
        if self.degree != other.degree:
            raise DegreeMismatchError("degree mismatch between groups")
        return all(other._contains_tbl(g._tbl) for g in self.generators)

    def __repr__(self) -> str:
        return (
            f"<PermutationGroup degree={self.degree} order={self._order} "
            f"ngens={len(self.generators)}>"
        )


@dataclass(frozen=True)
class GroupKey:
    """Canonical fingerprint of a group's element set; equal keys iff equal groups."""

    order: int
    digest: str


def from_generators(gens: Sequence[Permutation], degree: int) -> PermutationGroup:
    return PermutationGroup(gens, degree)


def trivial_group(degree: int) -> PermutationGroup:
    return PermutationGroup([], degree)


def symmetric_group(n: int) -> PermutationGroup:
    if n < 1:
        raise ValueError("degree must be at least 1")
    gens = []
    if n >= 2:
        gens.append(parse_cycles("(1 2)", n))
    if n >= 3:
        gens.append(parse_cycles("(" + " ".join(str(i) for i in range(1, n + 1)) + ")", n))
    return PermutationGroup(gens, n)


def alternating_group(n: int) -> PermutationGroup:
    if n < 3:
        return trivial_group(max(n, 1))
    gens = [parse_cycles("(1 2 3)", n)]
    if n > 3:
        if n % 2 == 1:
            gens.append(parse_cycles("(" + " ".join(str(i) for i in range(1, n + 1)) + ")", n))
        else:
            gens.append(parse_cycles("(" + " ".join(str(i) for i in range(2, n + 1)) + ")", n))
    g = PermutationGroup(gens, n)
    assert g.order() * 2 == symmetric_group_order(n)
    return g


def symmetric_group_order(n: int) -> int:
    import math

    return math.factorial(n)


def intersect(
    g1: PermutationGroup, g2: PermutationGroup, limit: int = ENUM_LIMIT_DEFAULT
) -> PermutationGroup:
    """Exact intersection by enumerating the smaller group through the larger's membership test."""
    if g1.degree != g2.degree:
        raise DegreeMismatchError("degree mismatch between groups")
    small, large = (g1, g2) if g1.order() <= g2.order() else (g2, g1)
    if small.order() > limit:
        raise LimitExceeded(
            f"intersection too large to enumerate: smaller group has order "
            f"{small.order()}, limit {limit}"
        )
    members = [
        Permutation._wrap(t) for t in small._iter_element_tbls() if large._contains_tbl(t)
    ]
    return PermutationGroup(members, g1.degree)


def equals(g1: PermutationGroup, g2: PermutationGroup) -> bool:
    """True iff the groups have the same element set."""
    if g1.degree != g2.degree:
        raise DegreeMismatchError("degree mismatch between groups")
    return (
        g1.order() == g2.order()
        and g1.is_subgroup_of(g2)
        and g2.is_subgroup_of(g1)
    )


def subgroup_of(g1: PermutationGroup, g2: PermutationGroup) -> bool:
    return g1.is_subgroup_of(g2)


def group_key(g: PermutationGroup, limit: int = ENUM_LIMIT_DEFAULT) -> GroupKey:
    """Fingerprint from the sorted element tables; collision-free at any realistic scale."""
    if g.order() > limit:
        raise LimitExceeded(
            f"group too large: order {g.order()} exceeds enumeration limit {limit}"
        )
    tbls = sorted(g._iter_element_tbls())
    h = hashlib.sha256()
    h.update(g.degree.to_bytes(8, "big"))
    for t in tbls:
        h.update(bytes(v % 256 for v in t))
        if g.degree > 256:
            h.update(bytes(v >> 8 for v in t))
    return GroupKey(order=g.order(), digest=h.hexdigest())


def read_generator_file(text: str) -> tuple:
    """Parse the generator-file format: line 1 the degree, then one cycle string per line.

    Returns (degree, [Permutation, ...]).  Blank lines are ignored.
    """
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ValueError("empty generator file")
    try:
        degree = int(lines[0])
    except ValueError:
        raise ValueError(f"first line must be the degree, got {lines[0]!r}") from None
    if degree < 1:
        raise ValueError(f"degree must be positive, got {degree}")
    gens = [parse_cycles(ln, degree) for ln in lines[1:]]
    return degree, gens
