"""Sparse exact multivariate polynomials and reduced rational functions.

Coefficients are arbitrary-precision rationals (`fractions.Fraction`).
A polynomial stores an ordered tuple of variable names plus a map from
exponent vectors to nonzero coefficients.  Canonical term order is graded
lexicographic on the global variable order (see `var_sort_key`), which makes
string forms and equality checks deterministic.

Variable names follow the fixed convention used across the package:
``t(i,a)``, ``z(a)``, ``h``, ``q(i)``, ``p(i)``, ``γ(i,j)``, ``κ``, plus the
generic families ``x(a)``, ``y(a)``, ``u``, ``v``.  ASCII spellings
``gamma(i,j)`` / ``kappa`` are accepted on input and normalized.
"""

from __future__ import annotations

import heapq
import math
import re
from fractions import Fraction
from functools import lru_cache
from itertools import permutations
from typing import Iterable, Mapping, Union

Scalar = Union[int, Fraction]
__all__ = [
    "Poly",
    "RatFn",
    "DivisionDefect",
    "var_sort_key",
    "poly_gcd",
    "divided_difference",
    "twisted_swap",
    "symmetrize",
]


class DivisionDefect(ArithmeticError):
    """An exact division left a remainder where none is ever expected."""


# Family order fixes the global variable order; indices sort numerically.
_FAMILY_RANK = {
    "t": 0, "z": 1, "h": 2, "q": 3, "p": 4, "γ": 5, "κ": 6,
    "x": 7, "y": 8, "u": 9, "v": 10, "w": 11, "s": 12,
}

_NAME_RE = re.compile(r"^([^\W\d]+)(?:\((\d+(?:,\d+)*)\))?$", re.UNICODE)

_ALIASES = {"gamma": "γ", "kappa": "κ"}


@lru_cache(maxsize=None)
def normalize_name(name: str) -> str:
    m = _NAME_RE.match(name)
    if not m:
        raise ValueError(f"bad variable name {name!r}")
    fam, idx = m.group(1), m.group(2)
    fam = _ALIASES.get(fam, fam)
    return f"{fam}({idx})" if idx else fam


@lru_cache(maxsize=None)
def var_sort_key(name: str):
    m = _NAME_RE.match(name)
    if not m:
        raise ValueError(f"bad variable name {name!r}")
    fam, idx = m.group(1), m.group(2)
    fam = _ALIASES.get(fam, fam)
    rank = _FAMILY_RANK.get(fam, 99)
    indices = tuple(int(s) for s in idx.split(",")) if idx else ()
    return (rank, fam, indices)


def _as_fraction(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    raise TypeError(f"not an exact scalar: {c!r}")


class Poly:
    """Exact sparse multivariate polynomial over the rationals."""

    __slots__ = ("vars", "terms")

    def __init__(self, vars: tuple[str, ...], terms: dict[tuple[int, ...], Fraction]):
        # Trusted constructor: callers pass pruned, zero-free data.
        self.vars = vars
        self.terms = terms

    # -- construction -----------------------------------------------------

    @staticmethod
    def const(c) -> "Poly":
        c = _as_fraction(c)
        return Poly((), {(): c} if c else {})

    @staticmethod
    def zero() -> "Poly":
        return Poly((), {})

    @staticmethod
    def one() -> "Poly":
        return Poly((), {(): Fraction(1)})

    @staticmethod
    def var(name: str, exp: int = 1, coeff=1) -> "Poly":
        name = normalize_name(name)
        coeff = _as_fraction(coeff)
        if not coeff:
            return Poly.zero()
        if exp == 0:
            return Poly.const(coeff)
        return Poly((name,), {(exp,): coeff})

    @staticmethod
    def _build(vars: Iterable[str], terms: Mapping[tuple[int, ...], Fraction]) -> "Poly":
        """Normalize: drop zero coefficients and unused variables, sort vars."""
        vars = tuple(vars)
        if not all(terms.values()):
            terms = {e: c for e, c in terms.items() if c}
        elif not isinstance(terms, dict):
            terms = dict(terms)
        if not terms:
            return Poly((), {})
        k = len(vars)
        unseen = set(range(k))
        for e in terms:
            for i in tuple(unseen):
                if e[i]:
                    unseen.discard(i)
            if not unseen:
                break
        keys = [var_sort_key(v) for v in vars]
        if not unseen and all(keys[i] < keys[i + 1] for i in range(k - 1)):
            return Poly(vars, terms)
        order = sorted(
            (i for i in range(k) if i not in unseen), key=keys.__getitem__
        )
        new_vars = tuple(vars[i] for i in order)
        new_terms = {tuple(e[i] for i in order): c for e, c in terms.items()}
        return Poly(new_vars, new_terms)

    # -- basic queries -----------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def is_const(self) -> bool:
        return not self.vars

    def const_value(self) -> Fraction:
        if self.vars:
            raise ValueError("not a constant polynomial")
        return self.terms.get((), Fraction(0))

    def total_degree(self) -> int:
        if not self.terms:
            return 0
        return max(sum(e) for e in self.terms)

    def degree(self, name: str) -> int:
        name = normalize_name(name)
        if name not in self.vars:
            return 0
        i = self.vars.index(name)
        return max((e[i] for e in self.terms), default=0)

    def __len__(self) -> int:
        return len(self.terms)

    def _key(self, e: tuple[int, ...]):
        # graded lex: higher total degree first, then lexicographic
        return (sum(e), e)

    def leading(self) -> tuple[tuple[int, ...], Fraction]:
        """Leading (exponent, coefficient) in graded-lex order."""
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        e = max(self.terms, key=self._key)
        return e, self.terms[e]

    # -- alignment ---------------------------------------------------------

    @staticmethod
    def _align(a: "Poly", b: "Poly"):
        if a.vars == b.vars:
            return a.vars, a.terms, b.terms
        merged = tuple(sorted(set(a.vars) | set(b.vars), key=var_sort_key))
        pos = {v: i for i, v in enumerate(merged)}
        n = len(merged)

        def remap(p: "Poly"):
            idx = [pos[v] for v in p.vars]
            out = {}
            for e, c in p.terms.items():
                vec = [0] * n
                for j, ev in zip(idx, e):
                    vec[j] = ev
                out[tuple(vec)] = c
            return out

        return merged, remap(a), remap(b)

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other):
        if isinstance(other, RatFn):
            return NotImplemented
        if not isinstance(other, Poly):
            other = Poly.const(other)
        if self.is_zero:
            return other
        if other.is_zero:
            return self
        vars, ta, tb = Poly._align(self, other)
        if all(c.denominator == 1 for c in ta.values()) and all(
            c.denominator == 1 for c in tb.values()
        ):
            iout = {e: c.numerator for e, c in ta.items()}
            get = iout.get
            for e, c in tb.items():
                iout[e] = get(e, 0) + c.numerator
            return Poly._build(
                vars, {e: Fraction(c) for e, c in iout.items() if c}
            )
        out = dict(ta)
        for e, c in tb.items():
            old = out.get(e)
            s = c if old is None else old + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return Poly._build(vars, out)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, RatFn):
            return NotImplemented
        if not isinstance(other, Poly):
            other = Poly.const(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, RatFn):
            return NotImplemented
        if not isinstance(other, Poly):
            c = _as_fraction(other)
            if not c:
                return Poly.zero()
            return Poly(self.vars, {e: c * v for e, v in self.terms.items()})
        if self.is_zero or other.is_zero:
            return Poly.zero()
        if self.is_const:
            return other * self.const_value()
        if other.is_const:
            return self * other.const_value()
        vars, ta, tb = Poly._align(self, other)
        # integer coefficients dominate in practice; plain int arithmetic
        # beats Fraction by an order of magnitude on big products
        if all(c.denominator == 1 for c in ta.values()) and all(
            c.denominator == 1 for c in tb.values()
        ):
            ia = [(e, c.numerator) for e, c in ta.items()]
            ib = [(e, c.numerator) for e, c in tb.items()]
            iout: dict[tuple[int, ...], int] = {}
            get = iout.get
            for ea, ca in ia:
                for eb, cb in ib:
                    e = tuple(map(sum, zip(ea, eb)))
                    iout[e] = get(e, 0) + ca * cb
            return Poly._build(
                vars, {e: Fraction(c) for e, c in iout.items() if c}
            )
        out: dict[tuple[int, ...], Fraction] = {}
        for ea, ca in ta.items():
            for eb, cb in tb.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                s = out.get(e)
                s = ca * cb if s is None else s + ca * cb
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        return Poly._build(vars, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of a Poly; use RatFn")
        result = Poly.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            c = _as_fraction(other)
            if not c:
                raise ZeroDivisionError("division by zero")
            return self * (Fraction(1) / c)
        return RatFn.make(self, other)

    def __rtruediv__(self, other):
        return RatFn.make(other, self)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.is_const and self.const_value() == other
        if isinstance(other, RatFn):
            return other == self
        if not isinstance(other, Poly):
            return NotImplemented
        if self.vars == other.vars:
            return self.terms == other.terms
        vars, ta, tb = Poly._align(self, other)
        return ta == tb

    def __hash__(self):
        return hash((self.vars, frozenset(self.terms.items())))

    # -- substitution / evaluation ------------------------------------------

    def substitute(self, bindings: Mapping[str, object]) -> "Poly":
        """Exact composition; values may be Poly, int or Fraction.

        Unbound variables survive.  Bound names not present are ignored.
        """
        binds = {}
        for k, v in bindings.items():
            k = normalize_name(k)
            if k in self.vars:
                binds[k] = v if isinstance(v, Poly) else Poly.const(v)
        if not binds:
            return self
        keep = [i for i, v in enumerate(self.vars) if v not in binds]
        out = Poly.zero()
        # cache powers of substituted values
        pw: dict[tuple[int, int], Poly] = {}
        sub_idx = [(i, binds[v]) for i, v in enumerate(self.vars) if v in binds]
        for e, c in self.terms.items():
            mono = Poly._build(
                tuple(self.vars[i] for i in keep),
                {tuple(e[i] for i in keep): c},
            )
            for i, val in sub_idx:
                k = e[i]
                if not k:
                    continue
                key = (i, k)
                if key not in pw:
                    pw[key] = val ** k
                mono = mono * pw[key]
            out = out + mono
        return out

    def eval(self, env: Mapping[str, complex]) -> complex:
        """Numeric evaluation; every variable must be bound."""
        env = {normalize_name(k): v for k, v in env.items()}
        vals = []
        for v in self.vars:
            if v not in env:
                raise KeyError(f"unbound variable {v}")
            vals.append(env[v])
        # per-variable power cache
        maxe = [0] * len(self.vars)
        for e in self.terms:
            for i, k in enumerate(e):
                if k > maxe[i]:
                    maxe[i] = k
        pows = []
        for x, me in zip(vals, maxe):
            row = [1.0 + 0.0j] * (me + 1)
            for k in range(1, me + 1):
                row[k] = row[k - 1] * x
            pows.append(row)
        total = 0j
        for e, c in self.terms.items():
            term = complex(c)
            for i, k in enumerate(e):
                if k:
                    term *= pows[i][k]
            total += term
        return total

    def eval_exact(self, env: Mapping[str, Scalar]) -> Fraction:
        env2 = {normalize_name(k): _as_fraction(v) for k, v in env.items()}
        total = Fraction(0)
        for e, c in self.terms.items():
            term = c
            for v, k in zip(self.vars, e):
                if k:
                    term *= env2[v] ** k
            total += term
        return total

    def relabel(self, mapping: Mapping[str, str]) -> "Poly":
        """Rename variables (index relabeling; no substitution machinery)."""
        mapping = {normalize_name(k): normalize_name(v) for k, v in mapping.items()}
        new_vars = tuple(mapping.get(v, v) for v in self.vars)
        if len(set(new_vars)) == len(new_vars):
            return Poly._build(new_vars, self.terms)
        # collision: two old variables map to one name -> merge exponents
        names = sorted(set(new_vars), key=var_sort_key)
        pos = {v: i for i, v in enumerate(names)}
        out: dict[tuple[int, ...], Fraction] = {}
        for e, c in self.terms.items():
            vec = [0] * len(names)
            for v, k in zip(new_vars, e):
                vec[pos[v]] += k
            key = tuple(vec)
            s = out.get(key, Fraction(0)) + c
            if s:
                out[key] = s
            else:
                out.pop(key, None)
        return Poly._build(names, out)

    def swap(self, a: str, b: str) -> "Poly":
        return self.relabel({a: b, b: a})

    def permute_family(self, family: str, perm: Mapping[int, int]) -> "Poly":
        """Relabel ``family(a) -> family(perm[a])`` for single-index families."""
        mapping = {f"{family}({a})": f"{family}({b})" for a, b in perm.items()}
        return self.relabel(mapping)

    def derivative(self, name: str) -> "Poly":
        name = normalize_name(name)
        if name not in self.vars:
            return Poly.zero()
        i = self.vars.index(name)
        out = {}
        for e, c in self.terms.items():
            k = e[i]
            if not k:
                continue
            e2 = list(e)
            e2[i] = k - 1
            out[tuple(e2)] = c * k
        return Poly._build(self.vars, out)

    def coeff_of(self, name: str, k: int) -> "Poly":
        """Coefficient of name**k, as a polynomial in the other variables."""
        name = normalize_name(name)
        if name not in self.vars:
            return self if k == 0 else Poly.zero()
        i = self.vars.index(name)
        rest = tuple(v for j, v in enumerate(self.vars) if j != i)
        out = {}
        for e, c in self.terms.items():
            if e[i] == k:
                out[tuple(ev for j, ev in enumerate(e) if j != i)] = c
        return Poly._build(rest, out)

    # -- division -------------------------------------------------------------

    def divrem(self, divisor: "Poly") -> tuple["Poly", "Poly"]:
        """Single-divisor division in graded-lex order."""
        if divisor.is_zero:
            raise ZeroDivisionError("division by zero polynomial")
        if divisor.is_const:
            return self * Fraction(1) / divisor.const_value(), Poly.zero()
        vars, ta, tb = Poly._align(self, divisor)
        lead_b = max(tb, key=lambda e: (sum(e), e))
        cb = tb[lead_b]
        # divisors with unit lead and integer terms allow pure int arithmetic
        int_mode = (
            cb.denominator == 1
            and abs(cb.numerator) == 1
            and all(c.denominator == 1 for c in tb.values())
            and all(c.denominator == 1 for c in ta.values())
        )
        if int_mode:
            sgn = cb.numerator
            tail_b = [(eb, vb.numerator) for eb, vb in tb.items() if eb != lead_b]
            rem = {e: c.numerator for e, c in ta.items()}
            inv = lambda c: c * sgn  # 1/cb == cb when |cb| = 1
        else:
            tail_b = [(eb, vb) for eb, vb in tb.items() if eb != lead_b]
            rem = dict(ta)
            inv = lambda c: c / cb
        quot: dict = {}
        # reduction only creates exponents below the current head, so a
        # lazy max-heap visits each exponent a bounded number of times
        heap = [(-sum(e), tuple(-x for x in e)) for e in ta]
        heapq.heapify(heap)
        while heap:
            negd, nege = heapq.heappop(heap)
            e = tuple(-x for x in nege)
            c = rem.get(e)
            if not c:
                continue  # stale heap entry
            qe = tuple(x - y for x, y in zip(e, lead_b))
            if any(x < 0 for x in qe):
                break  # leading term not divisible: stop, rest is remainder
            del rem[e]
            qc = inv(c)
            old = quot.get(qe)
            s = qc if old is None else old + qc
            if s:
                quot[qe] = s
            else:
                quot.pop(qe, None)
            for eb, vb in tail_b:
                key = tuple(x + y for x, y in zip(qe, eb))
                old = rem.get(key)
                s = -qc * vb if old is None else old - qc * vb
                if s:
                    rem[key] = s
                    if old is None:
                        heapq.heappush(
                            heap, (-sum(key), tuple(-x for x in key))
                        )
                else:
                    rem.pop(key, None)
        if int_mode:
            quot = {e: Fraction(c) for e, c in quot.items()}
            rem = {e: Fraction(c) for e, c in rem.items()}
        return Poly._build(vars, quot), Poly._build(vars, rem)

    def divide_exact(self, divisor: "Poly") -> "Poly":
        q, r = self.divrem(divisor)
        if not r.is_zero:
            raise DivisionDefect(
                f"non-exact division: remainder with {len(r)} terms"
            )
        return q

    def divisible_by(self, divisor: "Poly") -> bool:
        try:
            _, r = self.divrem(divisor)
        except ZeroDivisionError:
            return False
        return r.is_zero

    # -- content / gcd ----------------------------------------------------------

    def content(self) -> Fraction:
        """Positive rational content (gcd of coefficients); 0 for the zero poly."""
        if not self.terms:
            return Fraction(0)
        num = 0
        den = 1
        for c in self.terms.values():
            num = math.gcd(num, c.numerator)
            den = den * c.denominator // math.gcd(den, c.denominator)
        return Fraction(num, den)

    def primitive(self) -> "Poly":
        """self / content, sign-normalized so the leading coefficient is > 0."""
        if self.is_zero:
            return self
        c = self.content()
        _, lc = self.leading()
        if lc < 0:
            c = -c
        return self * (1 / c)

    def monic_sign(self) -> int:
        if self.is_zero:
            return 0
        return 1 if self.leading()[1] > 0 else -1

    # -- string form --------------------------------------------------------------

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        items = sorted(self.terms.items(), key=lambda kv: (sum(kv[0]), kv[0]), reverse=True)
        parts = []
        for e, c in items:
            factors = []
            for v, k in zip(self.vars, e):
                if k == 1:
                    factors.append(v)
                elif k > 1:
                    factors.append(f"{v}^{k}")
            if not factors:
                body = str(abs(c))
            elif abs(c) == 1:
                body = "*".join(factors)
            else:
                body = "*".join([str(abs(c))] + factors)
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(f"+ {body}" if c > 0 else f"- {body}")
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"Poly({self})"

    _TOKEN_RE = re.compile(
        r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<var>[^\W\d][\w]*(?:\(\d+(?:,\d+)*\))?)"
        r"|(?P<pow>\^)|(?P<mul>\*)|(?P<plus>\+)|(?P<minus>-))",
        re.UNICODE,
    )

    @staticmethod
    def parse(text: str) -> "Poly":
        """Parse the textual format, e.g. ``3/2*t(1,1)^2*z(3) - h + 1``."""
        pos = 0
        total = Poly.zero()
        sign = 1
        factors: list[Poly] = []
        pending_pow = False

        def flush():
            nonlocal factors, sign, total
            if factors:
                term = Poly.const(sign)
                for f in factors:
                    term = term * f
                total = total + term
            factors = []
            sign = 1

        while pos < len(text):
            m = Poly._TOKEN_RE.match(text, pos)
            if not m:
                if text[pos:].strip():
                    raise ValueError(f"cannot parse {text[pos:]!r}")
                break
            pos = m.end()
            if m.group("num"):
                val = Fraction(m.group("num"))
                if pending_pow:
                    if not factors:
                        raise ValueError("dangling ^")
                    if val.denominator != 1:
                        raise ValueError("non-integer exponent")
                    factors[-1] = factors[-1] ** int(val)
                    pending_pow = False
                else:
                    factors.append(Poly.const(val))
            elif m.group("var"):
                factors.append(Poly.var(m.group("var")))
            elif m.group("pow"):
                pending_pow = True
            elif m.group("mul"):
                pass
            elif m.group("plus"):
                flush()
            elif m.group("minus"):
                if factors:
                    flush()
                    sign = -1
                else:
                    sign = -sign
        flush()
        return total


# -- gcd ---------------------------------------------------------------------


def _to_recursive(p: Poly, main: str) -> dict[int, Poly]:
    """View p as univariate in `main` with Poly coefficients."""
    out: dict[int, Poly] = {}
    if main not in p.vars:
        return {0: p} if not p.is_zero else {}
    i = p.vars.index(main)
    rest = tuple(v for j, v in enumerate(p.vars) if j != i)
    buckets: dict[int, dict[tuple[int, ...], Fraction]] = {}
    for e, c in p.terms.items():
        k = e[i]
        key = tuple(ev for j, ev in enumerate(e) if j != i)
        buckets.setdefault(k, {})[key] = c
    for k, terms in buckets.items():
        out[k] = Poly._build(rest, terms)
    return out


def _from_recursive(coeffs: dict[int, Poly], main: str) -> Poly:
    total = Poly.zero()
    v = Poly.var(main)
    for k in sorted(coeffs):
        c = coeffs[k]
        if c.is_zero:
            continue
        total = total + (c * (v ** k) if k else c)
    return total


def _poly_content_wrt(coeffs: dict[int, Poly]) -> Poly:
    g = Poly.zero()
    for c in coeffs.values():
        g = poly_gcd(g, c)
        if g.is_const and not g.is_zero:
            break
    return g if not g.is_zero else Poly.one()


def _pseudo_rem(a: dict[int, Poly], b: dict[int, Poly]) -> dict[int, Poly]:
    """Pseudo-remainder of recursive-form univariate polys."""
    da = max(a) if a else -1
    db = max(b)
    lb = b[db]
    r = dict(a)
    while r and max(r) >= db:
        dr = max(r)
        lr = r[dr]
        # r = lb*r - lr*x^(dr-db)*b
        new: dict[int, Poly] = {}
        for k, c in r.items():
            new[k] = c * lb
        for k, c in b.items():
            kk = k + dr - db
            val = new.get(kk, Poly.zero()) - lr * c
            if val.is_zero:
                new.pop(kk, None)
            else:
                new[kk] = val
        new.pop(dr, None)
        r = {k: v for k, v in new.items() if not v.is_zero}
    return r


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Primitive gcd, positive leading coefficient; content+recursive PRS."""
    if a.is_zero:
        return b.primitive()
    if b.is_zero:
        return a.primitive()
    if a.is_const or b.is_const:
        return Poly.one()
    common = set(a.vars) & set(b.vars)
    if not common:
        return Poly.one()
    main = sorted(common, key=var_sort_key)[0]
    ra, rb = _to_recursive(a, main), _to_recursive(b, main)
    ca, cb = _poly_content_wrt(ra), _poly_content_wrt(rb)
    cont = poly_gcd(ca, cb)
    pa = {k: v.divide_exact(ca) for k, v in ra.items()}
    pb = {k: v.divide_exact(cb) for k, v in rb.items()}
    if max(pa) < max(pb):
        pa, pb = pb, pa
    while pb:
        r = _pseudo_rem(pa, pb)
        if not r:
            break
        cr = _poly_content_wrt(r)
        r = {k: v.divide_exact(cr) for k, v in r.items()}
        pa, pb = pb, r
    if not pb:
        g = _from_recursive(pa, main)
    else:
        g = _from_recursive(pb, main)
    return (g * cont).primitive()


# -- rational functions ---------------------------------------------------------


class RatFn:
    """Reduced ratio of two Polys; denominator sign-normalized."""

    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: Poly):
        # Trusted constructor: assumes reduced, sign-normalized input.
        self.num = num
        self.den = den

    @staticmethod
    def make(num, den=None) -> "RatFn":
        if den is None:
            den = Poly.one()
        if not isinstance(num, Poly):
            num = Poly.const(num)
        if not isinstance(den, Poly):
            den = Poly.const(den)
        if den.is_zero:
            raise ZeroDivisionError("identically-zero denominator")
        return RatFn._reduced(num, den)

    @staticmethod
    def _reduced(num: Poly, den: Poly) -> "RatFn":
        if num.is_zero:
            return RatFn(Poly.zero(), Poly.one())
        if den.is_const:
            return RatFn(num * (1 / den.const_value()), Poly.one())
        # fast path: exact division
        q, r = num.divrem(den)
        if r.is_zero:
            return RatFn(q, Poly.one())
        g = poly_gcd(num, den)
        if not g.is_const:
            num = num.divide_exact(g)
            den = den.divide_exact(g)
            if den.is_const:
                return RatFn(num * (1 / den.const_value()), Poly.one())
        # sign/scale normalization: den primitive with positive leading coeff
        c = den.content()
        if den.leading()[1] < 0:
            c = -c
        num = num * (1 / c)
        den = den * (1 / c)
        return RatFn(num, den)

    @staticmethod
    def of(x) -> "RatFn":
        if isinstance(x, RatFn):
            return x
        if isinstance(x, Poly):
            return RatFn(x, Poly.one())
        return RatFn(Poly.const(x), Poly.one())

    @property
    def is_poly(self) -> bool:
        return self.den.is_const and self.den.const_value() == 1

    @property
    def is_zero(self) -> bool:
        return self.num.is_zero

    def as_poly(self) -> Poly:
        if not self.is_poly:
            raise DivisionDefect("rational function is not a polynomial")
        return self.num

    # arithmetic

    def __add__(self, other):
        o = RatFn.of(other)
        if self.den == o.den:
            return RatFn._reduced(self.num + o.num, self.den)
        g = poly_gcd(self.den, o.den)
        if g.is_const:
            num = self.num * o.den + o.num * self.den
            return RatFn._reduced(num, self.den * o.den)
        db = self.den.divide_exact(g)
        dd = o.den.divide_exact(g)
        num = self.num * dd + o.num * db
        return RatFn._reduced(num, db * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFn(-self.num, self.den)

    def __sub__(self, other):
        return self + (-RatFn.of(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = RatFn.of(other)
        # cross-reduce before multiplying
        g1 = poly_gcd(self.num, o.den)
        g2 = poly_gcd(o.num, self.den)
        n1 = self.num if g1.is_const else self.num.divide_exact(g1)
        d2 = o.den if g1.is_const else o.den.divide_exact(g1)
        n2 = o.num if g2.is_const else o.num.divide_exact(g2)
        d1 = self.den if g2.is_const else self.den.divide_exact(g2)
        return RatFn._reduced(n1 * n2, d1 * d2)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = RatFn.of(other)
        if o.num.is_zero:
            raise ZeroDivisionError("division by zero rational function")
        return self * RatFn(o.den, o.num)

    def __rtruediv__(self, other):
        return RatFn.of(other) / self

    def __pow__(self, n: int):
        if n < 0:
            return (RatFn.of(1) / self) ** (-n)
        return RatFn._reduced(self.num ** n, self.den ** n)

    def __eq__(self, other):
        o = RatFn.of(other) if not isinstance(other, RatFn) else other
        return self.num * o.den == o.num * self.den

    def __hash__(self):
        return hash((self.num, self.den))

    def substitute(self, bindings: Mapping[str, object]) -> "RatFn":
        num = self.num.substitute(bindings)
        den = self.den.substitute(bindings)
        if den.is_zero:
            raise ZeroDivisionError("substitution produced a zero denominator")
        return RatFn._reduced(num, den)

    def eval(self, env: Mapping[str, complex]) -> complex:
        d = self.den.eval(env)
        if d == 0:
            raise ZeroDivisionError("denominator vanishes at the point")
        return self.num.eval(env) / d

    def eval_exact(self, env: Mapping[str, Scalar]) -> Fraction:
        d = self.den.eval_exact(env)
        if d == 0:
            raise ZeroDivisionError("denominator vanishes at the point")
        return self.num.eval_exact(env) / d

    def relabel(self, mapping: Mapping[str, str]) -> "RatFn":
        return RatFn(self.num.relabel(mapping), self.den.relabel(mapping))

    def swap(self, a: str, b: str) -> "RatFn":
        return RatFn(self.num.swap(a, b), self.den.swap(a, b))

    def derivative(self, name: str) -> "RatFn":
        n, d = self.num, self.den
        return RatFn._reduced(
            n.derivative(name) * d - n * d.derivative(name), d * d
        )

    def __str__(self):
        if self.is_poly:
            return str(self.num)
        return f"({self.num})/({self.den})"

    def __repr__(self):
        return f"RatFn({self})"


# -- named operators ------------------------------------------------------------


def divided_difference(f: Poly, var_a: str, var_b: str) -> Poly:
    """(f - f with var_a,var_b swapped) / (var_a - var_b); always exact."""
    if isinstance(f, RatFn):
        diff = f - f.swap(var_a, var_b)
        den = RatFn.of(Poly.var(var_a) - Poly.var(var_b))
        return diff / den
    diff = f - f.swap(var_a, var_b)
    if diff.is_zero:
        return Poly.zero()
    return diff.divide_exact(Poly.var(var_a) - Poly.var(var_b))


def twisted_swap(f, a: int, family: str = "z", h: str = "h"):
    """Adjacent-swap action on rational functions of ``family(1..n)`` and h,
    twisted so that it is an involution and satisfies the braid relation.

    Acts by  ((ζ−h)/ζ)·(f∘s) + (h/ζ)·f  with ζ = family(a) − family(a+1)
    and s the swap of family(a), family(a+1).
    """
    f = RatFn.of(f)
    va, vb = f"{family}({a})", f"{family}({a + 1})"
    zeta = Poly.var(va) - Poly.var(vb)
    hp = Poly.var(h)
    swapped = f.swap(va, vb)
    return RatFn.of(RatFn.make(zeta - hp, zeta)) * swapped + RatFn.of(
        RatFn.make(hp, zeta)
    ) * f


def symmetrize(f, blocks: list[list[str]]):
    """Sum of f over all products of within-block variable permutations."""
    f = RatFn.of(f) if not isinstance(f, (Poly, RatFn)) else f
    results = None
    perms_per_block = []
    for block in blocks:
        names = [normalize_name(v) for v in block]
        perms_per_block.append([dict(zip(names, p)) for p in permutations(names)])

    def rec(i, mapping):
        nonlocal results
        if i == len(perms_per_block):
            g = f.relabel(mapping) if mapping else f
            results = g if results is None else results + g
            return
        for pm in perms_per_block[i]:
            m2 = dict(mapping)
            m2.update(pm)
            rec(i + 1, m2)

    rec(0, {})
    return results if results is not None else f
