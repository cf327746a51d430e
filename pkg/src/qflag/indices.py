"""Shapes, ordered set partitions of {1..n}, minimal permutations, and the
pair classification that drives the limiting Hamiltonians.

An `Index` is stored as its membership word: word[a-1] is the 1-based block
number of the letter a.  Enumeration order is lexicographic on that word,
fixing matrix layouts across the package.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import factorial
from typing import Iterator

__all__ = ["Shape", "Index", "Perm", "PairInfo", "all_indices", "classify_pair"]


@dataclass(frozen=True)
class Shape:
    """A composition lam of n into N nonnegative parts."""

    lam: tuple[int, ...]

    def __post_init__(self):
        if not self.lam or any(k < 0 for k in self.lam):
            raise ValueError(f"bad shape {self.lam}")
        object.__setattr__(self, "lam", tuple(int(k) for k in self.lam))

    @property
    def N(self) -> int:
        return len(self.lam)

    @property
    def n(self) -> int:
        return sum(self.lam)

    @property
    def cum(self) -> tuple[int, ...]:
        """Partial sums (lam^(0)=0, lam^(1), ..., lam^(N)=n)."""
        out = [0]
        for k in self.lam:
            out.append(out[-1] + k)
        return tuple(out)

    def block_of_position(self, a: int) -> int:
        """Block index i with cum[i-1] < a <= cum[i]."""
        cum = self.cum
        for i in range(1, self.N + 1):
            if cum[i - 1] < a <= cum[i]:
                return i
        raise ValueError(f"position {a} out of range")

    @property
    def count(self) -> int:
        """Number of indices: multinomial coefficient."""
        out = factorial(self.n)
        for k in self.lam:
            out //= factorial(k)
        return out

    @property
    def sum_cum(self) -> int:
        """Sum of the partial sums lam^(1)+...+lam^(N-1)."""
        return sum(self.cum[1:-1])

    @property
    def sum_cum_sq(self) -> int:
        return sum(c * c for c in self.cum[1:-1])

    @property
    def pair_product_sum(self) -> int:
        """Sum over i<j of lam_i*lam_j."""
        total = 0
        for i in range(self.N):
            for j in range(i + 1, self.N):
                total += self.lam[i] * self.lam[j]
        return total

    def bracket(self, i: int, j: int) -> int:
        """lam_i + lam_j + 2*(lam_{i+1}+...+lam_{j-1}) for i < j (1-based)."""
        if not 1 <= i < j <= self.N:
            raise ValueError("need 1 <= i < j <= N")
        return (
            self.lam[i - 1]
            + self.lam[j - 1]
            + 2 * sum(self.lam[k] for k in range(i, j - 1))
        )

    # determinant-formula combinatorial weights
    def dim_count(self) -> int:
        return self.count

    def trace_weight(self, i: int) -> int:
        """lam_i * (n-1)! / prod(lam_j!)."""
        out = self.lam[i - 1] * factorial(self.n - 1)
        for k in self.lam:
            out //= factorial(k)
        return out

    def pair_weight(self) -> int:
        """(n-2)! / prod(lam_j!) * sum_{i<j} lam_i lam_j."""
        if self.n < 2:
            return 0
        out = factorial(self.n - 2) * self.pair_product_sum
        for k in self.lam:
            out //= factorial(k)
        return out

    def __str__(self):
        return "(" + ",".join(str(k) for k in self.lam) + ")"


@dataclass(frozen=True)
class Index:
    """Ordered partition of {1..n}, stored as a membership word."""

    word: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "word", tuple(int(i) for i in self.word))

    @property
    def n(self) -> int:
        return len(self.word)

    def shape(self, N: int | None = None) -> Shape:
        N = N if N is not None else max(self.word, default=1)
        lam = [0] * N
        for i in self.word:
            lam[i - 1] += 1
        return Shape(tuple(lam))

    @property
    def parts(self) -> tuple[tuple[int, ...], ...]:
        N = max(self.word, default=1)
        out: list[list[int]] = [[] for _ in range(N)]
        for a, i in enumerate(self.word, start=1):
            out[i - 1].append(a)
        return tuple(tuple(p) for p in out)

    def parts_padded(self, N: int) -> tuple[tuple[int, ...], ...]:
        out: list[list[int]] = [[] for _ in range(N)]
        for a, i in enumerate(self.word, start=1):
            out[i - 1].append(a)
        return tuple(tuple(p) for p in out)

    def block_of(self, a: int) -> int:
        return self.word[a - 1]

    def swap_letters(self, a: int, b: int) -> "Index":
        """Image under the transposition of the letters a and b."""
        w = list(self.word)
        w[a - 1], w[b - 1] = w[b - 1], w[a - 1]
        return Index(tuple(w))

    def inversions(self) -> int:
        """Pairs a<b whose blocks are out of order; the minimal length."""
        w = self.word
        return sum(
            1
            for x in range(len(w))
            for y in range(x + 1, len(w))
            if w[x] > w[y]
        )

    @staticmethod
    def from_parts(parts) -> "Index":
        n = sum(len(p) for p in parts)
        word = [0] * n
        for i, block in enumerate(parts, start=1):
            for a in block:
                word[a - 1] = i
        if any(x == 0 for x in word):
            raise ValueError("parts do not partition {1..n}")
        return Index(tuple(word))

    @staticmethod
    def parse(text: str) -> "Index":
        """Parse the serialization, e.g. ``({1,3},{4},{2},{5})``."""
        s = text.strip()
        if not (s.startswith("(") and s.endswith(")")):
            raise ValueError(f"bad index literal {text!r}")
        body = s[1:-1]
        parts: list[list[int]] = []
        depth = 0
        cur = ""
        for ch in body:
            if ch == "{":
                depth += 1
                cur = ""
            elif ch == "}":
                depth -= 1
                parts.append([int(x) for x in cur.split(",") if x.strip()] if cur.strip() else [])
            elif depth:
                cur += ch
        return Index.from_parts(parts)

    def __str__(self):
        parts = self.parts
        return "(" + ",".join("{" + ",".join(str(a) for a in p) + "}" for p in parts) + ")"

    def serialize(self, N: int) -> str:
        parts = self.parts_padded(N)
        return "(" + ",".join("{" + ",".join(str(a) for a in p) + "}" for p in parts) + ")"


def min_index(shape: Shape) -> Index:
    """Blocks of consecutive integers in order."""
    word = []
    for i, k in enumerate(shape.lam, start=1):
        word.extend([i] * k)
    return Index(tuple(word))


@lru_cache(maxsize=None)
def _all_words(lam: tuple[int, ...]) -> tuple[tuple[int, ...], ...]:
    out: list[tuple[int, ...]] = []

    def rec(remaining: list[int], prefix: list[int]):
        if not any(remaining):
            out.append(tuple(prefix))
            return
        for i, r in enumerate(remaining, start=1):
            if r:
                remaining[i - 1] -= 1
                prefix.append(i)
                rec(remaining, prefix)
                prefix.pop()
                remaining[i - 1] += 1

    rec(list(lam), [])
    return tuple(out)


def all_indices(shape: Shape) -> list[Index]:
    """All indices of the shape, lexicographic in the membership word."""
    return [Index(w) for w in _all_words(shape.lam)]


def index_position(shape: Shape, I: Index) -> int:
    return _all_words(shape.lam).index(I.word)


@dataclass(frozen=True)
class Perm:
    """Permutation of {1..n} by images."""

    images: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "images", tuple(int(i) for i in self.images))
        if sorted(self.images) != list(range(1, len(self.images) + 1)):
            raise ValueError(f"not a permutation: {self.images}")

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, a: int) -> int:
        return self.images[a - 1]

    @staticmethod
    def identity(n: int) -> "Perm":
        return Perm(tuple(range(1, n + 1)))

    @staticmethod
    def longest(n: int) -> "Perm":
        return Perm(tuple(range(n, 0, -1)))

    @staticmethod
    def transposition(n: int, a: int, b: int) -> "Perm":
        img = list(range(1, n + 1))
        img[a - 1], img[b - 1] = b, a
        return Perm(tuple(img))

    def compose(self, other: "Perm") -> "Perm":
        """(self∘other)(a) = self(other(a))."""
        return Perm(tuple(self.images[other.images[a] - 1] for a in range(self.n)))

    def inverse(self) -> "Perm":
        img = [0] * self.n
        for a, b in enumerate(self.images, start=1):
            img[b - 1] = a
        return Perm(tuple(img))

    def length(self) -> int:
        inv = 0
        img = self.images
        for x in range(self.n):
            for y in range(x + 1, self.n):
                if img[x] > img[y]:
                    inv += 1
        return inv

    def descent(self) -> int | None:
        for i in range(1, self.n):
            if self.images[i - 1] > self.images[i]:
                return i
        return None

    def reduced_word(self) -> tuple[int, ...]:
        """Positions (a_1..a_k) with self = s_{a_1}···s_{a_k}, k = length."""
        w = list(self.images)
        collected = []
        while True:
            d = None
            for i in range(1, len(w)):
                if w[i - 1] > w[i]:
                    d = i
                    break
            if d is None:
                break
            collected.append(d)
            w[d - 1], w[d] = w[d], w[d - 1]
        return tuple(reversed(collected))

    def act_index(self, I: Index) -> Index:
        """Apply letterwise to an index: blocks of images."""
        w = [0] * self.n
        for a in range(1, self.n + 1):
            w[self.images[a - 1] - 1] = I.word[a - 1]
        return Index(tuple(w))

    def __mul__(self, other: "Perm") -> "Perm":
        return self.compose(other)

    def __str__(self):
        return "[" + " ".join(str(i) for i in self.images) + "]"


def sigma_of(shape: Shape, I: Index) -> Perm:
    """Minimal-length permutation sending the minimal index to I.

    Sends position cum[i-1]+j to the j-th smallest element of block i.
    """
    images = []
    for block in I.parts_padded(shape.N):
        images.extend(sorted(block))
    return Perm(tuple(images))


def permuted_z_values(shape: Shape, I: Index) -> list[int]:
    """z-argument order under sigma_I: position a carries z_{sigma_I(a)}."""
    return list(sigma_of(shape, I).images)


@dataclass(frozen=True)
class PairInfo:
    order: str  # "disordered" | "ordered" | "flat"
    first_kind: bool
    second_kind: bool
    m: int | None
    r: int | None


def classify_pair(shape: Shape, I: Index, a: int, b: int) -> PairInfo:
    """Classify the pair (a, b) relative to I.

    Admissibility is computed independently by the length-jump rule and by
    the interval rule; a disagreement is an internal defect.
    """
    if a == b:
        raise ValueError("need a != b")
    i, j = I.block_of(a), I.block_of(b)
    if i == j:
        return PairInfo("flat", False, False, None, None)
    if (a < b and i > j) or (a > b and i < j):
        order = "disordered"
    else:
        order = "ordered"
    k, l = min(i, j), max(i, j)
    m = shape.bracket(k, l)
    lo, hi = min(a, b), max(a, b)
    middle = set(range(lo + 1, hi))
    parts = I.parts_padded(shape.N)
    r = len(middle & set(parts[i - 1])) + len(middle & set(parts[j - 1]))
    for rr in range(k + 1, l):
        r += 2 * len(middle & set(parts[rr - 1]))
    # length route
    len_I = I.inversions()
    len_s = I.swap_letters(a, b).inversions()
    first_len = len_s == len_I - 1
    second_len = len_s == len_I + m - 1
    # interval route
    between = set()
    for rr in range(k, l + 1):
        between |= set(parts[rr - 1])
    first_int = order == "disordered" and not (middle & between)
    outside = set(range(1, lo)) | set(range(hi + 1, shape.n + 1))
    second_int = order == "ordered" and not (outside & between)
    if first_len != first_int or second_len != second_int:
        raise AssertionError(
            f"pair classification mismatch at I={I}, (a,b)=({a},{b})"
        )
    return PairInfo(order, first_len, second_len, m, r)
