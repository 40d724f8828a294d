"""Permutations of {1..n} as immutable image tables.

A permutation is stored as a tuple ``tbl`` with ``tbl[i]`` the 0-based image
of the 0-based point ``i``.  All public interfaces (cycle text, the
``images`` field, ``image()``) speak 1-based points, matching the on-disk
formats of this package; the 0-based table is an internal detail.

The composition convention is the right action: ``i^(pq) = (i^p)^q``, so
``compose(p, q)`` means "apply p first, then q".  Conjugation is
``g^x = x^-1 g x``.  Every module in this package uses these conventions.
"""

from __future__ import annotations

from typing import Sequence


class CycleParseError(ValueError):
    """Raised when cycle-notation text is malformed."""


class DegreeMismatchError(ValueError):
    """Raised when permutations of different degrees are combined."""


class Permutation:
    """A bijection of {1..n}, immutable and hashable.

    Construct from a sequence of 1-based images (``images[i]`` is the image
    of point ``i + 1``), or use :meth:`identity`, :meth:`from_cycles`, or
    the module-level :func:`parse_cycles`.
    """

    __slots__ = ("_tbl",)

    def __init__(self, images: Sequence[int]):
        n = len(images)
        tbl = tuple(v - 1 for v in images)
        if sorted(tbl) != list(range(n)):
            raise ValueError("images do not form a bijection of {1..%d}" % n)
        self._tbl = tbl

    @classmethod
    def _wrap(cls, tbl: tuple) -> "Permutation":
        """Wrap a trusted 0-based image table without validation."""
        p = object.__new__(cls)
        p._tbl = tbl
        return p

    @classmethod
    def identity(cls, degree: int) -> "Permutation":
        if degree < 0:
            raise ValueError("degree must be non-negative")
        return cls._wrap(tuple(range(degree)))

    @classmethod
    def from_cycles(cls, text: str, degree: int) -> "Permutation":
        return parse_cycles(text, degree)

    @property
    def degree(self) -> int:
        return len(self._tbl)

    @property
    def images(self) -> tuple:
        """The 1-based image sequence: images[i] is the image of point i+1."""
        return tuple(v + 1 for v in self._tbl)

    def image(self, point: int) -> int:
        """Image of a 1-based point."""
        if not 1 <= point <= len(self._tbl):
            raise ValueError(f"point {point} out of range 1..{len(self._tbl)}")
        return self._tbl[point - 1] + 1

    def is_identity(self) -> bool:
        return all(i == v for i, v in enumerate(self._tbl))

    def __mul__(self, other: "Permutation") -> "Permutation":
        """Right-action composition: apply self first, then other."""
        return compose(self, other)

    def __pow__(self, e: int) -> "Permutation":
        if e < 0:
            return inverse(self) ** (-e)
        r = tuple(range(len(self._tbl)))
        b = self._tbl
        while e:
            if e & 1:
                r = tuple(b[v] for v in r)
            b = tuple(b[v] for v in b)
            e >>= 1
        return Permutation._wrap(r)

    def inverse(self) -> "Permutation":
        return inverse(self)

    def conjugate(self, x: "Permutation") -> "Permutation":
        return conjugate(self, x)

    def cycles(self) -> list:
        """Disjoint cycles as tuples of 1-based points, fixed points omitted.

        Cycles are sorted by smallest moved point and each starts at its
        smallest point.
        """
        tbl = self._tbl
        seen = [False] * len(tbl)
        out = []
        for i in range(len(tbl)):
            if seen[i] or tbl[i] == i:
                continue
            cyc = [i + 1]
            seen[i] = True
            j = tbl[i]
            while j != i:
                seen[j] = True
                cyc.append(j + 1)
                j = tbl[j]
            out.append(tuple(cyc))
        return out

    def moved_points(self) -> list:
        """1-based points not fixed by the permutation, ascending."""
        return [i + 1 for i, v in enumerate(self._tbl) if v != i]

    def order(self) -> int:
        from math import lcm

        return lcm(1, *(len(c) for c in self.cycles()))

    def is_even(self) -> bool:
        return sum(len(c) - 1 for c in self.cycles()) % 2 == 0

    def __eq__(self, other) -> bool:
        return isinstance(other, Permutation) and self._tbl == other._tbl

    def __hash__(self) -> int:
        return hash(self._tbl)

    def __str__(self) -> str:
        return print_cycles(self)

    def __repr__(self) -> str:
        return f"Permutation.from_cycles({print_cycles(self)!r}, {self.degree})"


def parse_cycles(text: str, degree: int) -> Permutation:
    """Parse disjoint-cycle notation like ``(1 2 3)(4 5)``; ``()`` is the identity.

    Points are 1-based and must lie in {1..degree}; a repeated point, a point
    out of range, or stray text raises :class:`CycleParseError` naming the
    offending token.
    """
    if degree < 0:
        raise ValueError("degree must be non-negative")
    tbl = list(range(degree))
    used = set()
    s = text.strip()
    if not s:
        raise CycleParseError("empty cycle text (use '()' for the identity)")
    pos = 0
    saw_cycle = False
    while pos < len(s):
        ch = s[pos]
        if ch.isspace():
            pos += 1
            continue
        if ch != "(":
            raise CycleParseError(f"unexpected text {s[pos:]!r}, expected '('")
        end = s.find(")", pos)
        if end < 0:
            raise CycleParseError(f"unclosed cycle {s[pos:]!r}")
        body = s[pos + 1 : end]
        pos = end + 1
        saw_cycle = True
        points = []
        for tok in body.split():
            if not tok.isdigit():
                raise CycleParseError(f"bad point token {tok!r}")
            pt = int(tok)
            if not 1 <= pt <= degree:
                raise CycleParseError(f"point {pt} out of range 1..{degree}")
            if pt in used:
                raise CycleParseError(f"point {pt} repeated")
            used.add(pt)
            points.append(pt - 1)
        if len(points) >= 2:
            for a, b in zip(points, points[1:]):
                tbl[a] = b
            tbl[points[-1]] = points[0]
    if not saw_cycle:
        raise CycleParseError(f"no cycles found in {text!r}")
    return Permutation._wrap(tuple(tbl))


def print_cycles(p: Permutation) -> str:
    """Canonical cycle text: cycles sorted by smallest moved point, ``()`` for identity."""
    cycs = p.cycles()
    if not cycs:
        return "()"
    return "".join("(" + " ".join(str(v) for v in c) + ")" for c in cycs)


def compose(p: Permutation, q: Permutation) -> Permutation:
    """The product pq under the right action: i^(pq) = (i^p)^q."""
    a, b = p._tbl, q._tbl
    if len(a) != len(b):
        raise DegreeMismatchError(f"degree mismatch: {len(a)} vs {len(b)}")
    return Permutation._wrap(tuple(b[v] for v in a))


def inverse(p: Permutation) -> Permutation:
    tbl = p._tbl
    inv = [0] * len(tbl)
    for i, v in enumerate(tbl):
        inv[v] = i
    return Permutation._wrap(tuple(inv))


def conjugate(g: Permutation, x: Permutation) -> Permutation:
    """g^x = x^-1 g x; relabels g's cycles by x, preserving cycle type."""
    a, b = g._tbl, x._tbl
    if len(a) != len(b):
        raise DegreeMismatchError(f"degree mismatch: {len(a)} vs {len(b)}")
    out = [0] * len(a)
    for i, v in enumerate(a):
        out[b[i]] = b[v]
    return Permutation._wrap(tuple(out))


def parity(p: Permutation) -> str:
    """'even' or 'odd': even iff p is a product of an even number of transpositions."""
    return "even" if p.is_even() else "odd"


def cycle_type(p: Permutation) -> tuple:
    """Multiset of cycle lengths (sorted, fixed points omitted)."""
    return tuple(sorted(len(c) for c in p.cycles()))


# ---------------------------------------------------------------------------
# raw-table helpers shared by the heavier modules; tables are 0-based tuples


def _compose_tbl(a: tuple, b: tuple) -> tuple:
    return tuple(b[v] for v in a)


def _inverse_tbl(a: tuple) -> tuple:
    inv = [0] * len(a)
    for i, v in enumerate(a):
        inv[v] = i
    return tuple(inv)


def _identity_tbl(n: int) -> tuple:
    return tuple(range(n))
