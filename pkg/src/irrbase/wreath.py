"""S_m wr S_k in product action on m^k tuples, and its conjugate-intersection chain.

Points are k-tuples over {1..m} under ``point = 1 + sum((entries[j]-1) * m^j)``
(0-based j).  An element ((v_1, ..., v_k), w) maps (a_1, ..., a_k) to the
tuple whose coordinate i^w is a_i^{v_i}; the product action preserves Hamming
distance between tuples.

The chain builder realizes each level as an intersection of conjugates of
M = S_m wr S_k.  The working conjugators apply the even cycle u (the full
m-cycle for odd m, an (m-1)-cycle for even m) to the first coordinate of
exactly the tuples whose i-th coordinate equals a marker value r; a final
conjugator of the same slice shape with a transposition in place of u kills
the last cyclic factor, since no element of M can act differently on one
slice than on another.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import factorial
from typing import Sequence

from .certificate import CertLevel, ChainCertificate
from .group import (
    ENUM_LIMIT_DEFAULT,
    PermutationGroup,
    symmetric_group,
)
from .perm import Permutation, inverse, parse_cycles


@dataclass
class WreathContext:
    """S_m wr S_k on m^k points, with the distinguished even cycle u."""

    m: int
    k: int
    n: int
    M: PermutationGroup  # the wreath product in product action
    u: Permutation  # degree m: (1..m) for odd m, (1..m-1) for even m
    U: PermutationGroup  # <u>, degree m
    sm: PermutationGroup  # S_m on {1..m}
    sk: PermutationGroup  # S_k on {1..k}


def tuple_to_point(ctx: WreathContext, entries: Sequence[int]) -> int:
    """1-based point of a k-tuple with entries in {1..m}."""
    if len(entries) != ctx.k:
        raise ValueError(f"expected {ctx.k} entries, got {len(entries)}")
    pt = 0
    for j in range(ctx.k - 1, -1, -1):
        e = entries[j]
        if not 1 <= e <= ctx.m:
            raise ValueError(f"entry {e} out of range 1..{ctx.m}")
        pt = pt * ctx.m + (e - 1)
    return pt + 1


def point_to_tuple(ctx: WreathContext, point: int) -> tuple:
    if not 1 <= point <= ctx.n:
        raise ValueError(f"point {point} out of range 1..{ctx.n}")
    v = point - 1
    entries = []
    for _ in range(ctx.k):
        entries.append(v % ctx.m + 1)
        v //= ctx.m
    return tuple(entries)


def hamming(a: Sequence[int], b: Sequence[int]) -> int:
    """Number of differing coordinates between two tuples of equal length."""
    if len(a) != len(b):
        raise ValueError(f"tuple shapes differ: {len(a)} vs {len(b)}")
    return sum(1 for x, y in zip(a, b) if x != y)


def embed_wreath_element(
    ctx: WreathContext, blocks: Sequence[Permutation], top: Permutation
) -> Permutation:
    """The point permutation of ((v_1..v_k), w): coordinate i^w of the image is a_i^{v_i}."""
    if len(blocks) != ctx.k:
        raise ValueError(f"expected {ctx.k} block permutations, got {len(blocks)}")
    for v in blocks:
        if v.degree != ctx.m:
            raise ValueError(f"block permutation degree {v.degree} != m = {ctx.m}")
    if top.degree != ctx.k:
        raise ValueError(f"top permutation degree {top.degree} != k = {ctx.k}")
    block_tbls = [v._tbl for v in blocks]
    top_tbl = top._tbl
    m, k = ctx.m, ctx.k
    images = []
    for pt in range(ctx.n):
        v = pt
        out = [0] * k
        for i in range(k):
            a = v % m
            v //= m
            out[top_tbl[i]] = block_tbls[i][a]
        code = 0
        for j in range(k - 1, -1, -1):
            code = code * m + out[j]
        images.append(code + 1)
    return Permutation(images)


def build_wreath(m: int, k: int) -> WreathContext:
    """Construct S_m wr S_k in product action on m^k points (m >= 5, k >= 2)."""
    if m < 5:
        raise ValueError(f"m must be at least 5, got {m}")
    if k < 2:
        raise ValueError(f"k must be at least 2, got {k}")
    n = m**k
    sm = symmetric_group(m)
    sk = symmetric_group(k)
    if m % 2 == 1:
        u = parse_cycles("(" + " ".join(str(i) for i in range(1, m + 1)) + ")", m)
    else:
        u = parse_cycles("(" + " ".join(str(i) for i in range(1, m)) + ")", m)
    assert u.is_even()
    ctx = WreathContext(m=m, k=k, n=n, M=None, u=u, U=PermutationGroup([u], m), sm=sm, sk=sk)
    id_m = Permutation.identity(m)
    id_k = Permutation.identity(k)
    gens = []
    for g in sm.generators:
        gens.append(embed_wreath_element(ctx, [g] + [id_m] * (k - 1), id_k))
    for w in sk.generators:
        gens.append(embed_wreath_element(ctx, [id_m] * k, w))
    big = PermutationGroup(gens, n)
    assert big.order() == factorial(m) ** k * factorial(k)
    ctx.M = big
    return ctx


def _slice_map(ctx: WreathContext, i: int, r: int, sigma: Permutation) -> Permutation:
    """Apply sigma to coordinate 1 of exactly the tuples whose coordinate i equals r."""
    if not 2 <= i <= ctx.k:
        raise ValueError(f"coordinate i must be in 2..{ctx.k}, got {i}")
    if not 1 <= r <= ctx.m:
        raise ValueError(f"marker r must be in 1..{ctx.m}, got {r}")
    if sigma.degree != ctx.m:
        raise ValueError(f"slice map degree {sigma.degree} != m = {ctx.m}")
    images = []
    for pt in range(1, ctx.n + 1):
        t = point_to_tuple(ctx, pt)
        if t[i - 1] == r:
            t = (sigma.image(t[0]),) + t[1:]
            images.append(tuple_to_point(ctx, t))
        else:
            images.append(pt)
    return Permutation(images)


def wreath_conjugator(ctx: WreathContext, i: int, r: int) -> Permutation:
    """The even conjugator x applying u to coordinate 1 on the slice {coordinate i = r}.

    For i = 2 this is the slice map itself; for i >= 3 it is the i = 2 map
    conjugated by the coordinate transposition (2 i) inside M, which yields
    the same slice map with the marker moved to coordinate i.
    """
    if i == 2:
        return _slice_map(ctx, 2, r, ctx.u)
    base = _slice_map(ctx, 2, r, ctx.u)
    swap = embed_wreath_element(
        ctx,
        [Permutation.identity(ctx.m)] * ctx.k,
        parse_cycles(f"(2 {i})", ctx.k),
    )
    return base.conjugate(swap)


def predicted_stabilizer(ctx: WreathContext, i: int, r: int) -> PermutationGroup:
    """(U x S_m^(i-2) x T_r x S_m^(k-i)) semidirect W_i, where T_r fixes r and W_i fixes 1 and i.

    This is the predicted intersection M ∩ M^x for the (i, r) conjugator; its
    order is |u| * (m-1)! * (m!)^(k-2) * (k-2)!.
    """
    if not 2 <= i <= ctx.k:
        raise ValueError(f"coordinate i must be in 2..{ctx.k}, got {i}")
    if not 1 <= r <= ctx.m:
        raise ValueError(f"marker r must be in 1..{ctx.m}, got {r}")
    m, k = ctx.m, ctx.k
    id_m = Permutation.identity(m)
    id_k = Permutation.identity(k)
    gens = []

    def at_coordinate(c, g):
        blocks = [id_m] * k
        blocks[c - 1] = g
        return embed_wreath_element(ctx, blocks, id_k)

    gens.append(at_coordinate(1, ctx.u))
    t_r = ctx.sm.point_stabilizer(r)
    for g in t_r.generators:
        gens.append(at_coordinate(i, g))
    for c in range(2, k + 1):
        if c == i:
            continue
        for g in ctx.sm.generators:
            gens.append(at_coordinate(c, g))
    w_i = ctx.sk.point_stabilizer(1).point_stabilizer(i)
    for w in w_i.generators:
        gens.append(embed_wreath_element(ctx, [id_m] * k, w))
    group = PermutationGroup(gens, ctx.n)
    expected = (
        ctx.u.order() * factorial(m - 1) * factorial(m) ** (k - 2) * factorial(k - 2)
    )
    assert group.order() == expected, (group.order(), expected)
    return group


def _member_of_conjugate(m_group: PermutationGroup, e: Permutation, x_inv: Permutation) -> bool:
    return m_group.contains(e.conjugate(x_inv))


def verify_intersection(
    ctx: WreathContext, i: int, r: int, limit: int = ENUM_LIMIT_DEFAULT
) -> bool:
    """True iff M ∩ M^x equals the predicted stabilizer, by full enumeration of M."""
    x_inv = inverse(wreath_conjugator(ctx, i, r))
    predicted = predicted_stabilizer(ctx, i, r)
    count = 0
    for e in ctx.M.iter_elements(limit):
        if _member_of_conjugate(ctx.M, e, x_inv):
            count += 1
            if not predicted.contains(e):
                return False
    return count == predicted.order()


def wreath_chain(
    ctx: WreathContext, ambient: str = "S", limit: int = ENUM_LIMIT_DEFAULT
) -> ChainCertificate:
    """Certificate for Sym(m^k) > M > ... > 1 of length (m-1)(k-1) + 2.

    Levels run over the markers (i, r) in lexicographic order for i in 2..k,
    r in 1..m-1, with nested conjugator sets; a final slice conjugator with a
    transposition kills the residual cyclic group on the first coordinate.
    """
    if ambient != "S":
        raise ValueError("explicit chains are built for ambient 'S' only")
    m_group = ctx.M
    if m_group.order() > limit:
        raise ValueError(f"|M| = {m_group.order()} exceeds enumeration limit {limit}")
    ident = Permutation.identity(ctx.n)
    levels = [CertLevel([ident], m_group.order())]
    conjs = [ident]
    current = None

    def refine(x):
        nonlocal current
        x_inv = inverse(x)
        if current is None:
            current = [
                e for e in m_group.iter_elements(limit) if _member_of_conjugate(m_group, e, x_inv)
            ]
        else:
            current = [e for e in current if _member_of_conjugate(m_group, e, x_inv)]

    for i in range(2, ctx.k + 1):
        for r in range(1, ctx.m):
            x = wreath_conjugator(ctx, i, r)
            conjs = conjs + [x]
            prev_order = levels[-1].order
            refine(x)
            if not len(current) < prev_order:
                raise RuntimeError(f"chain failed to descend at marker ({i}, {r})")
            levels.append(CertLevel(list(conjs), len(current)))

    kill = _slice_map(ctx, 2, 1, parse_cycles("(1 2)", ctx.m))
    conjs = conjs + [kill]
    refine(kill)
    if len(current) != 1:
        raise RuntimeError(f"terminal conjugator left a group of order {len(current)}")
    levels.append(CertLevel(list(conjs), 1))

    expected_length = (ctx.m - 1) * (ctx.k - 1) + 2
    if len(levels) != expected_length:
        raise RuntimeError(f"chain length {len(levels)} != expected {expected_length}")
    return ChainCertificate(
        degree=ctx.n,
        ambient="S",
        family="wreath",
        params={"m": ctx.m, "k": ctx.k},
        generators=list(m_group.generators),
        levels=levels,
        claimed_length=len(levels),
    )
