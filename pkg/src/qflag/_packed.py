"""Packed-exponent kernel for the symmetrized-product construction.

Monomials are packed into single ints: bit field i (width `width`) holds
the exponent of variable i, and the top field holds the total degree, so
that plain integer comparison is graded lexicographic (later variables
more significant).  Coefficients stay machine ints.  This keeps the hot
construction loops (products of linear forms, alternating sums, exact
binomial divisions) an order of magnitude ahead of generic Poly dicts.

Only what the construction needs is implemented; conversion back to
`Poly` happens once at the end.
"""

from __future__ import annotations

import heapq
from fractions import Fraction

import numpy as np

from .poly import DivisionDefect, Poly, var_sort_key


class PackedRing:
    """Fixed variable tuple plus the bit layout for packing exponents."""

    __slots__ = ("vars", "k", "width", "mask", "pos", "shifts", "index")

    def __init__(self, vars: tuple[str, ...], width: int = 7):
        self.vars = tuple(sorted(vars, key=var_sort_key))
        self.k = len(self.vars)
        self.width = width
        self.mask = (1 << width) - 1
        self.pos = [width * i for i in range(self.k)]
        deg_pos = width * self.k
        # adding shifts[i] multiplies a monomial by variable i
        self.shifts = [(1 << self.pos[i]) + (1 << deg_pos) for i in range(self.k)]
        self.index = {v: i for i, v in enumerate(self.vars)}

    # -- conversion ---------------------------------------------------------

    def pack_poly(self, p: Poly) -> dict[int, int]:
        cols = [self.index[v] for v in p.vars]
        pos = self.pos
        deg_pos = self.width * self.k
        out: dict[int, int] = {}
        for e, c in p.terms.items():
            if c.denominator != 1:
                raise ValueError("packed kernel requires integer coefficients")
            key = sum(e) << deg_pos
            for x, i in zip(e, cols):
                key += x << pos[i]
            out[key] = out.get(key, 0) + c.numerator
        return {k: v for k, v in out.items() if v}

    def unpack(self, d: dict[int, int]) -> Poly:
        mask = self.mask
        pos = self.pos
        terms = {
            tuple((key >> p) & mask for p in pos): Fraction(c)
            for key, c in d.items()
        }
        return Poly._build(self.vars, terms)

    # -- arithmetic -----------------------------------------------------------

    def linear(self, terms: list[tuple[str | None, int]]) -> dict[int, int]:
        """A linear form; None names the constant slot."""
        out: dict[int, int] = {}
        for name, c in terms:
            key = 0 if name is None else self.shifts[self.index[name]]
            out[key] = out.get(key, 0) + c
        return {k: v for k, v in out.items() if v}

    def mul(self, d: dict[int, int], small: dict[int, int]) -> dict[int, int]:
        out: dict[int, int] = {}
        get = out.get
        for ks, cs in small.items():
            if ks == 0:
                for key, c in d.items():
                    out[key] = get(key, 0) + c * cs
            else:
                for key, c in d.items():
                    k2 = key + ks
                    out[k2] = get(k2, 0) + c * cs
        return {k: v for k, v in out.items() if v}

    def product(self, factors: list[dict[int, int]]) -> dict[int, int]:
        out = {0: 1}
        for f in sorted(factors, key=len):
            out = self.mul(out, f)
        return out

    def swap(self, d: dict[int, int], i: int, j: int) -> dict[int, int]:
        pi, pj = self.pos[i], self.pos[j]
        mask = self.mask
        out: dict[int, int] = {}
        for key, c in d.items():
            x = ((key >> pi) ^ (key >> pj)) & mask
            out[key ^ (x << pi) ^ (x << pj)] = c
        return out

    def div_binomial(self, d: dict[int, int], i: int, j: int) -> dict[int, int]:
        """Exact division by (x_i - x_j); raises DivisionDefect on remainder."""
        # under packed graded-lex the higher field position leads
        sgn = 1
        if self.pos[j] > self.pos[i]:
            i, j = j, i
            sgn = -1  # (x_i - x_j) = -(x_j - x_i)
        si, sj = self.shifts[i], self.shifts[j]
        pi = self.pos[i]
        mask = self.mask
        rem = dict(d)
        quot: dict[int, int] = {}
        heap = [-key for key in rem]
        heapq.heapify(heap)
        while heap:
            key = -heapq.heappop(heap)
            c = rem.get(key)
            if not c:
                continue  # stale entry
            if not (key >> pi) & mask:
                raise DivisionDefect("binomial division left a remainder")
            del rem[key]
            qe = key - si
            old = quot.get(qe)
            s = c if old is None else old + c
            if s:
                quot[qe] = s
            else:
                del quot[qe]
            k2 = qe + sj
            old = rem.get(k2)
            if old is None:
                rem[k2] = c
                heapq.heappush(heap, -k2)
            else:
                s = old + c
                if s:
                    rem[k2] = s
                else:
                    del rem[k2]
        if rem:
            raise DivisionDefect("binomial division left a remainder")
        if sgn < 0:
            return {k: -c for k, c in quot.items()}
        return quot

    def delta(self, d: dict[int, int], i: int, j: int) -> dict[int, int]:
        """Divided difference (f - f with x_i,x_j swapped) / (x_i - x_j)."""
        sw = self.swap(d, i, j)
        diff: dict[int, int] = dict(d)
        get = diff.get
        for key, c in sw.items():
            s = get(key, 0) - c
            if s:
                diff[key] = s
            else:
                diff.pop(key, None)
        if not diff:
            return {}
        return self.div_binomial(diff, i, j)

    def negate(self, d: dict[int, int]) -> dict[int, int]:
        return {k: -c for k, c in d.items()}


class CoeffOverflow(ArithmeticError):
    """Coefficients grew past the vectorized kernel's exact-int64 budget."""


# int64 keeps every add and multiply exact below this; callers fall back
# to the arbitrary-precision ring when a computation threatens to pass it
_GUARD = 1 << 60


def _dedup(keys: np.ndarray, coeffs: np.ndarray):
    if len(keys) == 0:
        return keys, coeffs
    order = np.argsort(keys, kind="stable")
    ks = keys[order]
    cs = coeffs[order]
    fresh = np.empty(len(ks), dtype=bool)
    fresh[0] = True
    np.not_equal(ks[1:], ks[:-1], out=fresh[1:])
    starts = np.flatnonzero(fresh)
    merged = np.add.reduceat(cs, starts)
    keep = merged != 0
    return ks[starts][keep], merged[keep]


class VecRing:
    """numpy twin of PackedRing: int64 keys, no degree field.

    Usable whenever width * nvars fits in 63 bits and coefficients stay
    under the exact-int64 guard; operations raise CoeffOverflow otherwise.
    Values are (keys, coeffs) int64 array pairs with unique keys.
    """

    __slots__ = ("vars", "k", "width", "mask", "pos", "shifts", "index")

    def __init__(self, vars: tuple[str, ...], width: int = 6):
        self.vars = tuple(sorted(vars, key=var_sort_key))
        self.k = len(self.vars)
        self.width = width
        if width * self.k > 63:
            raise ValueError("variable count too large for int64 packing")
        self.mask = (1 << width) - 1
        self.pos = [width * i for i in range(self.k)]
        self.shifts = [1 << p for p in self.pos]
        self.index = {v: i for i, v in enumerate(self.vars)}

    def linear(self, terms: list[tuple[str | None, int]]):
        keys = np.array(
            [0 if n is None else self.shifts[self.index[n]] for n, _ in terms],
            dtype=np.int64,
        )
        coeffs = np.array([c for _, c in terms], dtype=np.int64)
        return keys, coeffs

    def product(self, factors):
        keys = np.zeros(1, dtype=np.int64)
        coeffs = np.ones(1, dtype=np.int64)
        for fk, fc in factors:
            keys = (keys[:, None] + fk[None, :]).ravel()
            coeffs = (coeffs[:, None] * fc[None, :]).ravel()
            keys, coeffs = _dedup(keys, coeffs)
            if len(coeffs) and np.abs(coeffs).max() > _GUARD:
                raise CoeffOverflow
        return keys, coeffs

    def delta(self, value, i: int, j: int):
        """Divided difference (f - f with x_i,x_j swapped) / (x_i - x_j).

        Works bucket by bucket: fixing all other exponents and the sum
        s of the two swap exponents, the difference is antisymmetric
        along the antidiagonal and the quotient coefficients are its
        negated prefix sums, each filling the run up to the next listed
        exponent.
        """
        keys, coeffs = value
        if len(keys) == 0:
            return keys, coeffs
        pi, pj = self.pos[i], self.pos[j]
        mask = self.mask
        a = (keys >> pi) & mask
        b = (keys >> pj) & mask
        s_check = a + b
        if s_check.max() > mask:
            raise CoeffOverflow  # s would not fit the reused field
        base = keys - (a << pi) - (b << pj)
        # bucket id reuses the cleared i-field for s = a + b
        bid = np.concatenate([base + (s_check << pi)] * 2)
        av = np.concatenate([a, b])
        cv = np.concatenate([coeffs, -coeffs])
        order = np.lexsort((av, bid))
        bid = bid[order]
        av = av[order]
        cv = cv[order]
        fresh = np.empty(len(bid), dtype=bool)
        fresh[0] = True
        fresh[1:] = (bid[1:] != bid[:-1]) | (av[1:] != av[:-1])
        starts = np.flatnonzero(fresh)
        cm = np.add.reduceat(cv, starts)
        bidu = bid[starts]
        au = av[starts]
        m = len(starts)
        bfresh = np.empty(m, dtype=bool)
        bfresh[0] = True
        np.not_equal(bidu[1:], bidu[:-1], out=bfresh[1:])
        bstarts = np.flatnonzero(bfresh)
        cs = np.cumsum(cm)
        if np.abs(cs).max() > _GUARD:
            raise CoeffOverflow
        seg = np.cumsum(bfresh) - 1
        offs = np.concatenate([[np.int64(0)], cs[bstarts[1:] - 1]])
        q = offs[seg] - cs
        # run of exponent values sharing one prefix sum: up to the next
        # listed exponent, zero-length on the last entry of a bucket
        last = np.empty(m, dtype=bool)
        last[-1] = True
        last[:-1] = bfresh[1:]
        if np.any(q[last]):
            raise DivisionDefect("swap difference failed to cancel")
        run = np.zeros(m, dtype=np.int64)
        run[:-1] = au[1:] - au[:-1]
        run[last] = 0
        run[q == 0] = 0
        total = int(run.sum())
        if total == 0:
            return np.empty(0, dtype=np.int64), np.empty(0, dtype=np.int64)
        rep = np.repeat(np.arange(m), run)
        ends = np.cumsum(run)
        within = np.arange(total, dtype=np.int64) - np.repeat(ends - run, run)
        s = (bidu >> pi) & mask
        rbase = bidu - (s << pi)
        u = au[rep] + within
        out_keys = rbase[rep] + (u << pi) + ((s[rep] - 1 - u) << pj)
        return out_keys, q[rep]

    def negate(self, value):
        keys, coeffs = value
        return keys, -coeffs

    def remap(self, value, dest: dict[str, str]):
        """Rename variables (both in the ring); exponents of collisions add."""
        keys, coeffs = value
        if len(keys) == 0:
            return keys, coeffs
        mat = (keys[:, None] >> np.array(self.pos)) & self.mask
        dshift = np.array(
            [self.shifts[self.index[dest.get(v, v)]] for v in self.vars],
            dtype=np.int64,
        )
        return _dedup(mat.dot(dshift), coeffs.copy())

    def pack_poly(self, p: Poly):
        cols = [self.index[v] for v in p.vars]
        pos = self.pos
        mask = self.mask
        keys = np.empty(len(p.terms), dtype=np.int64)
        coeffs = np.empty(len(p.terms), dtype=np.int64)
        for r, (e, c) in enumerate(p.terms.items()):
            if c.denominator != 1 or abs(c.numerator) > _GUARD:
                raise CoeffOverflow
            key = 0
            for x, i in zip(e, cols):
                if x > mask:
                    raise CoeffOverflow
                key += x << pos[i]
            keys[r] = key
            coeffs[r] = c.numerator
        return _dedup(keys, coeffs)

    def unpack(self, value) -> Poly:
        keys, coeffs = value
        mat = (keys[:, None] >> np.array(self.pos)) & self.mask
        terms = {
            tuple(int(x) for x in row): Fraction(int(c))
            for row, c in zip(mat, coeffs)
        }
        return Poly._build(self.vars, terms)
