"""Symmetrized interpolation polynomials attached to ordered set partitions.

For a shape with blocks of sizes lam_1..lam_N there is one polynomial per
index (ordered partition of {1..n}).  Each lives in auxiliary variables
t(i,a), i = 1..N-1, a = 1..cum_i, together with z(1..n) and, for the
h-carrying kinds, h.  The defining data is a product of linear forms over
a staircase of sorted block unions, symmetrized within every level.

Four kinds are built from one core routine:

  full           h-carrying polynomial
  checked        full kind of the reversed index, z-order reversed
  limit          top h-degree part (h dropped from every factor)
  limit_checked  same reversal applied to the limit kind

The module also provides the companion products used in evaluation and
orthogonality identities, the two-alphabet interpolation kernels, double
Schubert polynomials, and the generating polynomials in Chern roots.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from types import MappingProxyType
from typing import Mapping

from ._packed import CoeffOverflow, PackedRing, VecRing
from .indices import Index, Perm, Shape, all_indices, min_index, sigma_of
from .poly import Poly, RatFn, divided_difference

# Symmetrizing level i costs cum_i! relabels; keep the default desk-scale.
SYM_BOUND = 8


def tname(i: int, a: int) -> str:
    return f"t({i},{a})"


def zname(a: int) -> str:
    return f"z({a})"


def gname(i: int, j: int) -> str:
    return f"γ({i},{j})"


def _shape_of(I: Index, shape: Shape | None) -> Shape:
    if shape is not None:
        return shape
    return I.shape()


def sorted_unions(shape: Shape, I: Index) -> list[list[int]]:
    """unions[j-1] = sorted elements of blocks 1..j, for j = 1..N."""
    parts = I.parts_padded(shape.N)
    unions = []
    acc: list[int] = []
    for block in parts:
        acc = sorted(acc + list(block))
        unions.append(acc)
    return unions


def _level_var(shape: Shape, j: int, c: int) -> Poly:
    # level N is the z-alphabet; its sorted union is 1..n, slot c carries z(c)
    if j < shape.N:
        return Poly.var(tname(j, c))
    return Poly.var(zname(c))


def _core_product(shape: Shape, I: Index, with_h: bool) -> Poly:
    """Numerator of the pre-symmetrization product for the index I.

    Per level j and slot a: one factor per slot c of level j+1 whose
    element is smaller (plain difference) and, in the h-carrying kind,
    one shifted factor per larger element, plus the within-level shifted
    factors for slot pairs a < b.  The plain within-level differences
    form the denominator handled by the caller.
    """
    unions = sorted_unions(shape, I)
    h = Poly.var("h")
    out = Poly.one()
    for j in range(1, shape.N):
        size = shape.cum[j]
        size_up = shape.cum[j + 1]
        elems = unions[j - 1]
        elems_up = unions[j]
        for a in range(1, size + 1):
            x = Poly.var(tname(j, a))
            ea = elems[a - 1]
            for c in range(1, size_up + 1):
                ec = elems_up[c - 1]
                if ec < ea:
                    out = out * (x - _level_var(shape, j + 1, c))
                elif ec > ea and with_h:
                    out = out * (x - _level_var(shape, j + 1, c) - h)
            if with_h:
                for b in range(a + 1, size + 1):
                    out = out * (Poly.var(tname(j, b)) - x - h)
    return out


def _level_vandermonde(shape: Shape) -> Poly:
    out = Poly.one()
    for j in range(1, shape.N):
        size = shape.cum[j]
        for a in range(1, size + 1):
            for b in range(a + 1, size + 1):
                out = out * (Poly.var(tname(j, b)) - Poly.var(tname(j, a)))
    return out


def _perms_with_sign(m: int) -> list[tuple[tuple[int, ...], int]]:
    out = []
    for p in permutations(range(1, m + 1)):
        inv = sum(1 for x in range(m) for y in range(x + 1, m) if p[x] > p[y])
        out.append((p, -1 if inv % 2 else 1))
    return out


def _signed_symmetrize(p: Poly, shape: Shape) -> Poly:
    """Sum of sign(pi) * (p with t-slots permuted by pi) over per-level pi."""
    levels = [
        (j, shape.cum[j]) for j in range(1, shape.N) if shape.cum[j] > 1
    ]
    total = None
    stack = [({}, 1)]
    for j, size in levels:
        nxt = []
        for mapping, sign in stack:
            for perm, s in _perms_with_sign(size):
                m2 = dict(mapping)
                for a in range(1, size + 1):
                    m2[tname(j, a)] = tname(j, perm[a - 1])
                nxt.append((m2, sign * s))
        stack = nxt
    for mapping, sign in stack:
        term = p.relabel(mapping) if mapping else p
        term = term if sign > 0 else -term
        total = term if total is None else total + term
    return total if total is not None else p


def check_sym_bound(shape: Shape, bound: int | None) -> None:
    limit = SYM_BOUND if bound is None else bound
    work = sum(shape.cum[j] for j in range(1, shape.N))
    if work > limit:
        raise ValueError(
            f"{work} symmetrization variables exceed the bound {limit}"
        )


KINDS = ("full", "checked", "limit", "limit_checked")


def _ring_names(shape: Shape) -> tuple[str, ...]:
    names = ["h"]
    for j in range(1, shape.N):
        names += [tname(j, a) for a in range(1, shape.cum[j] + 1)]
    names += [zname(a) for a in range(1, shape.n + 1)]
    return tuple(names)


def _core_factor_specs(shape: Shape, I: Index,
                       with_h: bool) -> list[list[tuple[str, int]]]:
    """The linear factors of `_core_product`, as (name, coeff) lists."""
    unions = sorted_unions(shape, I)
    fs = []
    for j in range(1, shape.N):
        size = shape.cum[j]
        size_up = shape.cum[j + 1]
        elems = unions[j - 1]
        elems_up = unions[j]
        for a in range(1, size + 1):
            xa = tname(j, a)
            ea = elems[a - 1]
            for c in range(1, size_up + 1):
                ec = elems_up[c - 1]
                yc = tname(j + 1, c) if j + 1 < shape.N else zname(c)
                if ec < ea:
                    fs.append([(xa, 1), (yc, -1)])
                elif ec > ea and with_h:
                    fs.append([(xa, 1), (yc, -1), ("h", -1)])
            if with_h:
                for b in range(a + 1, size + 1):
                    fs.append([(tname(j, b), 1), (xa, -1), ("h", -1)])
    return fs


def _cascade_levels(shape: Shape) -> list[tuple[int, int]]:
    return sorted(
        ((j, shape.cum[j]) for j in range(1, shape.N) if shape.cum[j] > 1),
        key=lambda js: -js[1],
    )


def _cascade_weight(shape: Shape, I: Index, with_h: bool) -> Poly:
    """Symmetrize the core product one divided difference at a time.

    Per level, the alternating orbit sum divided by the difference product
    equals the divided-difference cascade along a reduced word of the
    longest permutation, up to the sign from the difference-product
    orientation.  The cascade never forms the big orbit sum, so it stays
    fast on wide shapes.  Runs on the vectorized kernel when the variable
    count and coefficients permit, on the arbitrary-precision one else.
    """
    names = _ring_names(shape)
    specs = _core_factor_specs(shape, I, with_h)
    try:
        width = 63 // len(names)
        if (1 << width) <= len(specs):
            raise ValueError("exponent fields too narrow")
        ring = VecRing(names, width=width)
        val = ring.product([ring.linear(f) for f in specs])
        for j, size in _cascade_levels(shape):
            slots = [ring.index[tname(j, a)] for a in range(1, size + 1)]
            word = [a for i in range(1, size) for a in range(i, 0, -1)]
            for a in word:
                val = ring.delta(val, slots[a - 1], slots[a])
            if len(word) % 2:
                val = ring.negate(val)
        return ring.unpack(val)
    except (ValueError, CoeffOverflow):
        pass
    ring = PackedRing(names)
    d = ring.product([ring.linear(f) for f in specs])
    for j, size in _cascade_levels(shape):
        slots = [ring.index[tname(j, a)] for a in range(1, size + 1)]
        word = [a for i in range(1, size) for a in range(i, 0, -1)]
        for a in word:
            d = ring.delta(d, slots[a - 1], slots[a])
        if len(word) % 2:
            d = ring.negate(d)
    return ring.unpack(d)


def weight(I: Index, kind: str = "full", shape: Shape | None = None,
           bound: int | None = None, method: str = "cascade") -> Poly:
    """The symmetrized polynomial of the given index and kind.

    Both methods evaluate the same per-level symmetrization: "cascade"
    through divided differences, "orbit" by the explicit signed sum over
    level permutations followed by one exact division.
    """
    if kind not in KINDS:
        raise ValueError(f"unknown kind {kind!r}")
    shape = _shape_of(I, shape)
    check_sym_bound(shape, bound)
    if kind in ("checked", "limit_checked"):
        n = shape.n
        rev = Perm.longest(n).act_index(I)
        base_kind = "full" if kind == "checked" else "limit"
        base = weight(rev, base_kind, shape=shape, bound=bound, method=method)
        flip = {a: n + 1 - a for a in range(1, n + 1)}
        return base.permute_family("z", flip)
    if method == "cascade":
        return _cascade_weight(shape, I, with_h=(kind == "full"))
    if method != "orbit":
        raise ValueError(f"unknown method {method!r}")
    core = _core_product(shape, I, with_h=(kind == "full"))
    numer = _signed_symmetrize(core, shape)
    van = _level_vandermonde(shape)
    if van.is_const:
        return numer
    if numer.is_zero:
        return numer
    # the alternating sum is divisible by the per-level difference product;
    # failure here is an implementation defect, not a data problem
    return numer.divide_exact(van)


@dataclass(frozen=True)
class WeightTable:
    shape: Shape
    kind: str
    entries: Mapping[Index, Poly]


def weight_table(shape: Shape, kind: str = "full",
                 bound: int | None = None) -> WeightTable:
    entries = {
        I: weight(I, kind, shape=shape, bound=bound)
        for I in all_indices(shape)
    }
    return WeightTable(shape, kind, MappingProxyType(entries))


def sigma_bindings(shape: Shape, J: Index) -> dict[str, str]:
    """Relabeling that sends t(k,a) to z at the a-th element of unions[k]."""
    unions = sorted_unions(shape, J)
    out = {}
    for k in range(1, shape.N):
        for a, e in enumerate(unions[k - 1], start=1):
            out[tname(k, a)] = zname(e)
    return out


def eval_at_sigma(f, J: Index, shape: Shape | None = None):
    """Substitute the staircase point of J for the t-variables of f."""
    shape = _shape_of(J, shape)
    return f.relabel(sigma_bindings(shape, J))


def sigma_matrix(table: WeightTable) -> dict[tuple[Index, Index], Poly]:
    """All staircase evaluations of a table: (J, I) -> entry I at point J.

    Equivalent to eval_at_sigma over the product of indices; each entry
    is packed once and remapped per point, which is what makes full
    orthogonality sweeps affordable.
    """
    shape = table.shape
    idxs = list(all_indices(shape))
    out: dict[tuple[Index, Index], Poly] = {}
    names = _ring_names(shape)
    try:
        maxdeg = max(
            max((sum(e) for e in p.terms), default=0)
            for p in table.entries.values()
        )
        width = 63 // len(names)
        if (1 << width) <= maxdeg:
            raise ValueError("exponent fields too narrow")
        ring = VecRing(names, width=width)
        packed = {I: ring.pack_poly(table.entries[I]) for I in idxs}
        for J in idxs:
            dest = sigma_bindings(shape, J)
            for I in idxs:
                out[(J, I)] = ring.unpack(ring.remap(packed[I], dest))
        return out
    except (ValueError, CoeffOverflow):
        pass
    for J in idxs:
        for I in idxs:
            out[(J, I)] = eval_at_sigma(table.entries[I], J, shape=shape)
    return out


def clash_product(shape: Shape) -> Poly:
    """Product of shifted within-level differences over ordered slot pairs."""
    h = Poly.var("h")
    out = Poly.one()
    for i in range(1, shape.N):
        size = shape.cum[i]
        for a in range(1, size + 1):
            for b in range(1, size + 1):
                if b != a:
                    out = out * (
                        Poly.var(tname(i, a)) - Poly.var(tname(i, b)) - h
                    )
    return out


def cross_product(shape: Shape, shifted: bool = False,
                  family: str = "z") -> Poly:
    """Product of differences over position pairs in distinct blocks.

    Pairs (a, b) with a in blocks 1..i and b in block i+1; with shifted
    the h is subtracted from every factor.
    """
    h = Poly.var("h")
    out = Poly.one()
    for i in range(1, shape.N):
        for a in range(1, shape.cum[i] + 1):
            for b in range(shape.cum[i] + 1, shape.cum[i + 1] + 1):
                f = Poly.var(f"{family}({a})") - Poly.var(f"{family}({b})")
                if shifted:
                    f = f - h
                out = out * f
    return out


def aux_products(shape: Shape, which: str) -> Poly:
    """Named companion products.

    clash          shifted within-level slot differences
    cross          cross-block position differences
    cross_shifted  the same with h subtracted
    sine_zeros     polynomial whose zero set matches the sine prefactor
                   of the residue normalization (same factors as cross)
    """
    if which == "clash":
        return clash_product(shape)
    if which == "cross":
        return cross_product(shape)
    if which == "cross_shifted":
        return cross_product(shape, shifted=True)
    if which == "sine_zeros":
        return cross_product(shape)
    raise ValueError(f"unknown product {which!r}")


def cross_at_index(shape: Shape, I: Index, shifted: bool = False) -> Poly:
    """cross_product with positions relabeled along the minimal-coset
    permutation of I; its factors pair elements of distinct blocks."""
    sig = sigma_of(shape, I)
    out = cross_product(shape, shifted=shifted)
    return out.permute_family("z", {a: sig(a) for a in range(1, shape.n + 1)})


def diagonal_value(shape: Shape, I: Index, limit: bool = False) -> Poly:
    """Closed form for the self-evaluation of the index polynomial.

    The h-carrying kind equals the clash product at the staircase point
    times, over block pairs j < k and a in block j, plain differences
    against smaller b in block k and shifted ones against larger b.
    The limit kind keeps only the plain differences.
    """
    h = Poly.var("h")
    parts = I.parts_padded(shape.N)
    out = Poly.one() if limit else eval_at_sigma(clash_product(shape), I, shape)
    for j in range(1, shape.N + 1):
        for k in range(j + 1, shape.N + 1):
            for a in parts[j - 1]:
                for b in parts[k - 1]:
                    if b < a:
                        out = out * (Poly.var(zname(a)) - Poly.var(zname(b)))
                    elif not limit:
                        out = out * (
                            Poly.var(zname(a)) - Poly.var(zname(b)) - h
                        )
    return out


def offdiagonal_divisor(shape: Shape, I: Index) -> Poly:
    """Guaranteed exact divisor of any index polynomial evaluated at the
    staircase point of I: the clash product there times the shifted
    differences toward larger elements of later blocks."""
    h = Poly.var("h")
    parts = I.parts_padded(shape.N)
    out = eval_at_sigma(clash_product(shape), I, shape)
    for j in range(1, shape.N + 1):
        for k in range(j + 1, shape.N + 1):
            for a in parts[j - 1]:
                for b in parts[k - 1]:
                    if b > a:
                        out = out * (
                            Poly.var(zname(a)) - Poly.var(zname(b)) - h
                        )
    return out


def limit_degree(shape: Shape, I: Index) -> int:
    """h-degree of the full kind; the limit kind is the signed top part."""
    d = sum(
        shape.cum[j] * (shape.cum[j + 1] - 1) for j in range(1, shape.N)
    )
    return d - sigma_of(shape, I).length()


# -- two-alphabet interpolation kernels --------------------------------


def v_kernel(shape: Shape, xf: str = "x", yf: str = "y") -> Poly:
    """Product of (x_a - y_b) over position pairs in distinct blocks."""
    out = Poly.one()
    n = shape.n
    for a in range(1, n + 1):
        for b in range(a + 1, n + 1):
            if shape.block_of_position(a) != shape.block_of_position(b):
                out = out * (Poly.var(f"{xf}({a})") - Poly.var(f"{yf}({b})"))
    return out


def v_anchored(shape: Shape, I: Index, xf: str = "x") -> Poly:
    """Kernel with the second alphabet pinned to the reversed, shifted
    permutation staircase of I: y_b = sigma_I(n+1-b) - 1."""
    sig = sigma_of(shape, I)
    n = shape.n
    kernel = v_kernel(shape, xf=xf, yf="y")
    bind = {
        f"y({b})": Fraction(sig(n + 1 - b) - 1) for b in range(1, n + 1)
    }
    return kernel.substitute(bind)


@dataclass(frozen=True)
class VPair:
    kernel: Poly
    anchored: Mapping[Index, Poly]


def v_polynomials(shape: Shape) -> VPair:
    anchored = {I: v_anchored(shape, I) for I in all_indices(shape)}
    return VPair(v_kernel(shape), MappingProxyType(anchored))


def v_gamma(shape: Shape) -> Poly:
    """Kernel in Chern-root variables: per block i < N, each γ(i,j)
    against every z-position after the block-i window."""
    out = Poly.one()
    for i in range(1, shape.N):
        for j in range(1, shape.lam[i - 1] + 1):
            for a in range(shape.cum[i] + 1, shape.n + 1):
                out = out * (Poly.var(gname(i, j)) - Poly.var(zname(a)))
    return out


def gamma_bindings(shape: Shape, J: Index) -> dict[str, str]:
    """Fixed-point relabeling: γ(i,j) goes to z at the j-th smallest
    element of block i of J."""
    parts = J.parts_padded(shape.N)
    out = {}
    for i in range(1, shape.N + 1):
        for j, e in enumerate(sorted(parts[i - 1]), start=1):
            out[gname(i, j)] = zname(e)
    return out


def gamma_at_index(f, shape: Shape, J: Index):
    return f.relabel(gamma_bindings(shape, J))


# -- double Schubert polynomials ----------------------------------------


def schubert_top(n: int, xf: str = "x", yf: str = "y") -> Poly:
    out = Poly.one()
    for i in range(1, n):
        for j in range(1, n - i + 1):
            out = out * (Poly.var(f"{xf}({i})") - Poly.var(f"{yf}({j})"))
    return out


def schubert(sigma: Perm, xf: str = "x", yf: str = "y") -> Poly:
    """Double Schubert polynomial via divided differences in the first
    alphabet, starting from the longest-permutation product."""
    n = sigma.n
    top = schubert_top(n, xf=xf, yf=yf)
    word = (sigma.inverse() * Perm.longest(n)).reduced_word()
    f = top
    for a in reversed(word):
        f = divided_difference(f, f"{xf}({a})", f"{xf}({a + 1})")
    return f


def collapse_levels(f: Poly, shape: Shape, family: str = "y") -> Poly:
    """Identify slot a of every t-level with family(a)."""
    out = {}
    for j in range(1, shape.N):
        for a in range(1, shape.cum[j] + 1):
            out[tname(j, a)] = f"{family}({a})"
    return f.relabel(out)


# -- generating polynomials in Chern roots ------------------------------


def hat_w(shape: Shape) -> Poly:
    """Pairing polynomial: per level i, every t(i,j) against every Chern
    root of block i+1."""
    out = Poly.one()
    for i in range(1, shape.N):
        for j in range(1, shape.cum[i] + 1):
            for k in range(1, shape.lam[i] + 1):
                out = out * (Poly.var(tname(i, j)) - Poly.var(gname(i + 1, k)))
    return out


def bar_w(n: int) -> Poly:
    """Difference quotient of the two characteristic products for the
    projective case: (prod(t - z_a) - prod(γ - z_a)) / (t - γ)."""
    t = Poly.var(tname(1, 1))
    g = Poly.var(gname(1, 1))
    pt = Poly.one()
    pg = Poly.one()
    for a in range(1, n + 1):
        pt = pt * (t - Poly.var(zname(a)))
        pg = pg * (g - Poly.var(zname(a)))
    return (pt - pg).divide_exact(t - g)
