"""Affine groups AGL(d, p) inside Sym(p^d), and chains of conjugate intersections.

Points are the vectors of V = F_p^d under the encoding
``point = 1 + sum(coords[j] * p^j)`` (0-based j), so the zero vector is
point 1.  H = AGL(V) is generated by elementary transvections, the diagonal
map scaling the first basis vector by a primitive root, and the basis
translations; T is the group of diagonal matrices.

The chain builders return certificates whose levels descend from H through
subspace stabilizers to T and on through diagonal subgroups to the trivial
group, every level realized as an intersection of conjugates of H with
explicit conjugating permutations.  Only odd p is supported; even
characteristic is out of scope here.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .certificate import CertLevel, ChainCertificate
from .group import ENUM_LIMIT_DEFAULT, PermutationGroup, equals
from .perm import Permutation, compose, inverse

# -- small number theory -----------------------------------------------------


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    f = 2
    while f * f <= n:
        if n % f == 0:
            return False
        f += 1
    return True


def prime_factors(n: int) -> list:
    """Prime factors with multiplicity, ascending."""
    out = []
    f = 2
    while f * f <= n:
        while n % f == 0:
            out.append(f)
            n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


def smallest_primitive_root(p: int) -> int:
    distinct = sorted(set(prime_factors(p - 1)))
    for g in range(2, p):
        if all(pow(g, (p - 1) // q, p) != 1 for q in distinct):
            return g
    raise ValueError(f"{p} has no primitive root; not an odd prime?")


# -- context -----------------------------------------------------------------


@dataclass
class AffineContext:
    """V = F_p^d realized on {1..p^d}, with H = AGL(V), GL(V), and the diagonal group T."""

    p: int
    d: int
    n: int
    mu: int  # smallest primitive root mod p
    H: PermutationGroup  # AGL(V)
    gl: PermutationGroup  # GL(V), the stabilizer of the zero vector in H
    T: PermutationGroup  # diagonal matrices
    diag_gens: list  # g_i scales basis vector i by mu; order p - 1 each


def vector_to_point(ctx: AffineContext, coords: Sequence[int]) -> int:
    """1-based point of a coordinate vector; the zero vector is point 1."""
    if len(coords) != ctx.d:
        raise ValueError(f"expected {ctx.d} coordinates, got {len(coords)}")
    pt = 0
    for j in range(ctx.d - 1, -1, -1):
        c = coords[j]
        if not 0 <= c < ctx.p:
            raise ValueError(f"coordinate {c} out of range 0..{ctx.p - 1}")
        pt = pt * ctx.p + c
    return pt + 1


def point_to_vector(ctx: AffineContext, point: int) -> tuple:
    if not 1 <= point <= ctx.n:
        raise ValueError(f"point {point} out of range 1..{ctx.n}")
    v = point - 1
    coords = []
    for _ in range(ctx.d):
        coords.append(v % ctx.p)
        v //= ctx.p
    return tuple(coords)


def affine_to_permutation(
    ctx: AffineContext, matrix: Sequence[Sequence[int]], translation: Optional[Sequence[int]] = None
) -> Permutation:
    """Permutation of the points sending v to v*matrix + translation.

    ``matrix[i]`` is the image of basis vector i (row convention).  Raises
    ValueError for a singular matrix.
    """
    p, d, n = ctx.p, ctx.d, ctx.n
    if translation is None:
        translation = (0,) * d
    rows = [tuple(int(x) % p for x in row) for row in matrix]
    t = tuple(int(x) % p for x in translation)
    if len(rows) != d or any(len(r) != d for r in rows) or len(t) != d:
        raise ValueError(f"matrix must be {d}x{d} and translation length {d}")
    images = []
    for pt in range(1, n + 1):
        v = point_to_vector(ctx, pt)
        w = list(t)
        for i in range(d):
            vi = v[i]
            if vi:
                row = rows[i]
                for j in range(d):
                    w[j] = (w[j] + vi * row[j]) % p
        images.append(vector_to_point(ctx, w))
    if len(set(images)) != n:
        raise ValueError("singular matrix: affine map is not a bijection")
    return Permutation(images)


def build_agl(p: int, d: int) -> AffineContext:
    """Construct AGL(d, p) on p^d points, for odd prime p and d >= 1."""
    if not is_prime(p):
        raise ValueError(f"p = {p} is not prime")
    if p == 2:
        raise ValueError("odd p required")
    if d < 1:
        raise ValueError(f"d must be at least 1, got {d}")
    n = p**d
    mu = smallest_primitive_root(p)
    ctx = AffineContext(p=p, d=d, n=n, mu=mu, H=None, gl=None, T=None, diag_gens=None)

    def basis_rows():
        return [[1 if i == j else 0 for j in range(d)] for i in range(d)]

    gl_gens = []
    scale_first = basis_rows()
    scale_first[0][0] = mu
    gl_gens.append(affine_to_permutation(ctx, scale_first))
    for i in range(d):
        for j in range(d):
            if i == j:
                continue
            rows = basis_rows()
            rows[i][j] = 1  # transvection: b_i -> b_i + b_j
            gl_gens.append(affine_to_permutation(ctx, rows))
    translations = []
    for j in range(d):
        t = [0] * d
        t[j] = 1
        translations.append(affine_to_permutation(ctx, basis_rows(), t))

    gl = PermutationGroup(gl_gens, n)
    gl_order = 1
    for i in range(d):
        gl_order *= n - p**i
    assert gl.order() == gl_order, (gl.order(), gl_order)

    h = PermutationGroup(gl_gens + translations, n)
    assert h.order() == n * gl_order, (h.order(), n * gl_order)

    diag_gens = []
    for i in range(d):
        rows = basis_rows()
        rows[i][i] = mu
        diag_gens.append(affine_to_permutation(ctx, rows))
    t_group = PermutationGroup(diag_gens, n)
    assert t_group.order() == (p - 1) ** d

    ctx.H = h
    ctx.gl = gl
    ctx.T = t_group
    ctx.diag_gens = diag_gens
    return ctx


# -- subspaces ---------------------------------------------------------------


def span_points(ctx: AffineContext, basis: Sequence[Sequence[int]]) -> set:
    """All points of the subspace spanned by the given coordinate vectors."""
    p, d = ctx.p, ctx.d
    vecs = {(0,) * d}
    for b in basis:
        b = tuple(int(x) % p for x in b)
        new = set()
        for v in vecs:
            for c in range(p):
                new.add(tuple((v[j] + c * b[j]) % p for j in range(d)))
        vecs = new
    return {vector_to_point(ctx, v) for v in vecs}


def gl_subspace_stabilizer(ctx: AffineContext, basis: Sequence[Sequence[int]]) -> PermutationGroup:
    """Setwise stabilizer of a linear subspace in GL(V), by filtering GL's elements."""
    w = span_points(ctx, basis)
    members = [g for g in ctx.gl.iter_elements() if all(g.image(pt) in w for pt in w)]
    return PermutationGroup(members, ctx.n)


def scalar_conjugator(ctx: AffineContext) -> Permutation:
    """For d = 1: a pairing x of nonzero field elements with H ∩ H^x = T.

    x swaps mu^i with mu^(-i-1) (as multiples of the fixed nonzero vector u)
    for i = 0 .. (p-3)/2, fixing zero; conjugation by x inverts the scalar
    group while destroying the translations.
    """
    if ctx.d != 1:
        raise ValueError("scalar_conjugator requires d = 1")
    if ctx.p < 7:
        raise ValueError("scalar_conjugator requires p >= 7")
    p, mu = ctx.p, ctx.mu
    images = list(range(1, p + 1))
    for i in range((p - 1) // 2):
        a = pow(mu, i, p)  # mu^i * u with u = 1
        b = pow(mu, -i - 1, p)
        pa = vector_to_point(ctx, (a,))
        pb = vector_to_point(ctx, (b,))
        images[pa - 1], images[pb - 1] = pb, pa
    return Permutation(images)


def subspace_scaling_conjugator(
    ctx: AffineContext, basis: Sequence[Sequence[int]], lam: Optional[int] = None
) -> Permutation:
    """x scaling a proper nontrivial subspace W by lam != 1 and fixing all other points.

    H ∩ H^x is the setwise stabilizer of W in GL(V) (for d >= 2, p >= 3).
    """
    if ctx.d < 2:
        raise ValueError("subspace scaling requires d >= 2")
    lam = ctx.mu if lam is None else lam % ctx.p
    if lam in (0, 1):
        raise ValueError(f"lam must be a field element other than 0 and 1, got {lam}")
    w = span_points(ctx, basis)
    if len(w) in (1, ctx.n):
        raise ValueError("subspace must be proper and non-trivial")
    images = list(range(1, ctx.n + 1))
    for pt in w:
        v = point_to_vector(ctx, pt)
        images[pt - 1] = vector_to_point(ctx, tuple((lam * c) % ctx.p for c in v))
    return Permutation(images)


@dataclass
class SubspaceStep:
    """One stabilizer in the subspace chain, with witnesses for strict descent."""

    coords: tuple  # (i, j), 1-based: the subspace spanned by basis vectors i..j
    stabilizer: PermutationGroup  # setwise stabilizer in GL(V), by element filtering
    witness: Permutation  # lies in all earlier stabilizers but not this one
    conjugator: Permutation  # realizes the stabilizer as H ∩ H^x


def subspace_index_pairs(d: int) -> list:
    """Lexicographic pairs (i, j) with 1 <= i <= j <= d, omitting (1, d)."""
    return [(i, j) for i in range(1, d + 1) for j in range(i, d + 1) if (i, j) != (1, d)]


def subspace_chain(ctx: AffineContext) -> list:
    """The descending chain of subspace stabilizers from H to T (d >= 2).

    Returns d(d+1)/2 - 1 steps; intersecting the stabilizers in order descends
    strictly, ending at the diagonal group T.
    """
    if ctx.d < 2:
        raise ValueError("subspace_chain requires d >= 2")
    d = ctx.d
    steps = []
    for (i, j) in subspace_index_pairs(d):
        basis = []
        for c in range(i, j + 1):
            e = [0] * d
            e[c - 1] = 1
            basis.append(e)
        rows = [[1 if a == b else 0 for b in range(d)] for a in range(d)]
        if i == 1:
            rows[j - 1][j] = 1  # b_j -> b_j + b_{j+1}; j < d since (1, d) is omitted
        else:
            rows[j - 1][i - 2] = 1  # b_j -> b_{i-1} + b_j
        steps.append(
            SubspaceStep(
                coords=(i, j),
                stabilizer=gl_subspace_stabilizer(ctx, basis),
                witness=affine_to_permutation(ctx, rows),
                conjugator=subspace_scaling_conjugator(ctx, basis),
            )
        )
    return steps


# -- chains inside the diagonal group ----------------------------------------


def cycle_power_conjugator(k: int, a: int, m: int) -> Permutation:
    """x in Sym(m) with <s> ∩ <s>^x = <s^a> for the k-cycle s = (1 2 ... k).

    Requires a | k, k < m, and (k, a) != (4, 2).  For a = 1 the identity
    works; for a = k the transposition (1 m) works; otherwise x is the
    product of the k/a blocks (1 ... a)(a+1 ... 2a)...(k-a+1 ... k).
    """
    if k >= m:
        raise ValueError(f"need cycle length k < m, got k={k}, m={m}")
    if a < 1 or k % a != 0:
        raise ValueError(f"a = {a} does not divide k = {k}")
    if (k, a) == (4, 2):
        raise ValueError("excluded case (k, a) = (4, 2)")
    if a == 1:
        return Permutation.identity(m)
    images = list(range(1, m + 1))
    if a == k:
        images[0], images[m - 1] = m, 1
        return Permutation(images)
    for block in range(k // a):
        lo = block * a  # 0-based start of the block
        for off in range(a):
            images[lo + off] = lo + (off + 1) % a + 1
    return Permutation(images)


def coordinate_power_conjugator(ctx: AffineContext, i: int, a: int) -> Permutation:
    """Lift of the cycle-power conjugator to coordinate i of V.

    Acts on the line spanned by basis vector i (its nonzero multiples form the
    (p-1)-cycle of the diagonal generator g_i) and fixes the complementary
    coordinates, so that T ∩ T^x = <g_1, ..., g_i^a, ..., g_d>.
    Requires a | p - 1 and (p, a) != (5, 2).
    """
    p, d = ctx.p, ctx.d
    if not 1 <= i <= d:
        raise ValueError(f"coordinate {i} out of range 1..{d}")
    if a < 1 or (p - 1) % a != 0:
        raise ValueError(f"a = {a} does not divide p - 1 = {p - 1}")
    if (p, a) == (5, 2):
        raise ValueError("excluded case (p, a) = (5, 2)")
    # line labels: l in 1..p-1 is mu^(l-1) * b_i, label p is the zero multiple
    line = cycle_power_conjugator(p - 1, a, p)
    value_of_label = {p: 0}
    label_of_value = {0: p}
    for l in range(1, p):
        val = pow(ctx.mu, l - 1, p)
        value_of_label[l] = val
        label_of_value[val] = l
    images = []
    for pt in range(1, ctx.n + 1):
        v = list(point_to_vector(ctx, pt))
        new_label = line.image(label_of_value[v[i - 1]])
        v[i - 1] = value_of_label[new_label]
        images.append(vector_to_point(ctx, tuple(v)))
    return Permutation(images)


@dataclass
class DiagonalStep:
    """One level of the chain from T down to 1: its conjugator set and predicted group."""

    conjugators: list  # includes the identity, so the intersection contains T itself
    predicted: PermutationGroup


def diagonal_chain(ctx: AffineContext) -> list:
    """Conjugator sets Y_1..Y_l2 with T > ∩_{x in Y_1} T^x > ... > 1.

    For p in {3, 5} each coordinate is removed in one full-order step
    (l2 = d); for p >= 7 each coordinate steps down the ascending-prime
    cumulative divisors of p - 1 (l2 = d * Omega(p - 1)).  The sets are
    nested and each contains the identity.
    """
    p, d, n = ctx.p, ctx.d, ctx.n
    if p in (3, 5):
        seq = [(i, p - 1) for i in range(1, d + 1)]
    else:
        divisors = []
        acc = 1
        for q in prime_factors(p - 1):
            acc *= q
            divisors.append(acc)
        seq = [(i, a) for i in range(1, d + 1) for a in divisors]
    conjs = [Permutation.identity(n)]
    exponents = [1] * d  # current forced power of g_i; p - 1 means the coordinate is gone
    steps = []
    for (i, a) in seq:
        conjs = conjs + [coordinate_power_conjugator(ctx, i, a)]
        exponents[i - 1] = a
        gens = [
            ctx.diag_gens[c] ** exponents[c]
            for c in range(d)
            if exponents[c] != p - 1
        ]
        steps.append(DiagonalStep(conjugators=list(conjs), predicted=PermutationGroup(gens, n)))
    return steps


# -- certificate assembly ------------------------------------------------------


def _member_of_conjugate(h_group: PermutationGroup, e: Permutation, x_inv: Permutation) -> bool:
    """e in H^x, tested as e^(x^-1) in H."""
    return h_group.contains(e.conjugate(x_inv))


def affine_chain(
    ctx: AffineContext, ambient: str = "S", limit: int = ENUM_LIMIT_DEFAULT
) -> ChainCertificate:
    """Certificate for the chain Sym(V) > H > ... > T > ... > 1.

    Levels are intersections of conjugates of H with nested conjugator sets;
    claimed_length is 1 + (d(d+1)/2 - 1) + l2 for d >= 2 and 2 + l2 for d = 1.
    Strict descent and terminal triviality are asserted during the build.
    """
    if ambient != "S":
        raise ValueError("explicit chains are built for ambient 'S' only")
    if ctx.n < 7:
        raise ValueError(f"p^d = {ctx.n} < 7 is outside the supported range")
    h = ctx.H
    if h.order() > limit:
        raise ValueError(f"|H| = {h.order()} exceeds enumeration limit {limit}")
    ident = Permutation.identity(ctx.n)
    levels = [CertLevel([ident], h.order())]
    conjs = [ident]
    current = None  # None means "all of H"; otherwise the level's element list

    def refine(new_conjugators):
        nonlocal current
        inverses = [inverse(x) for x in new_conjugators]
        if current is None:
            out = []
            for e in h.iter_elements(limit):
                if all(_member_of_conjugate(h, e, xi) for xi in inverses):
                    out.append(e)
            current = out
        else:
            current = [
                e for e in current if all(_member_of_conjugate(h, e, xi) for xi in inverses)
            ]

    if ctx.d >= 2:
        for step in subspace_chain(ctx):
            conjs = conjs + [step.conjugator]
            prev_order = levels[-1].order
            refine([step.conjugator])
            if not len(current) < prev_order:
                raise RuntimeError(f"chain failed to descend at subspace step {step.coords}")
            levels.append(CertLevel(list(conjs), len(current)))
        t_level = PermutationGroup(current, ctx.n)
        if not equals(t_level, ctx.T):
            raise RuntimeError("subspace chain did not terminate at the diagonal group")
    else:
        x = scalar_conjugator(ctx)
        conjs = conjs + [x]
        refine([x])
        t_level = PermutationGroup(current, ctx.n)
        if not equals(t_level, ctx.T):
            raise RuntimeError("scalar conjugator did not cut H down to the diagonal group")
        levels.append(CertLevel(list(conjs), len(current)))

    x_t = list(conjs)  # realizes T; composed with the diagonal conjugators below
    for dstep in diagonal_chain(ctx):
        seen = set()
        z_set = []
        for y in dstep.conjugators:
            for x in x_t:
                z = compose(x, y)
                if z._tbl not in seen:
                    seen.add(z._tbl)
                    z_set.append(z)
        new = [z for z in z_set if z._tbl not in {c._tbl for c in conjs}]
        prev_order = levels[-1].order
        refine(new)
        conjs = z_set
        if not len(current) < prev_order:
            raise RuntimeError("chain failed to descend at a diagonal step")
        if len(current) != dstep.predicted.order():
            raise RuntimeError(
                f"diagonal level order {len(current)} != predicted {dstep.predicted.order()}"
            )
        levels.append(CertLevel(list(conjs), len(current)))

    if levels[-1].order != 1:
        raise RuntimeError("chain did not terminate at the trivial group")
    return ChainCertificate(
        degree=ctx.n,
        ambient="S",
        family="agl",
        params={"p": ctx.p, "d": ctx.d},
        generators=list(h.generators),
        levels=levels,
        claimed_length=len(levels),
    )
