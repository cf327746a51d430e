"""Shape/index combinatorics: enumeration, minimal permutations, pair rules."""

import itertools

import pytest

from qflag.indices import (
    Index,
    Perm,
    Shape,
    all_indices,
    classify_pair,
    min_index,
    sigma_of,
)


def shapes_upto(nmax, Nmax, positive=True):
    for n in range(1, nmax + 1):
        for N in range(1, Nmax + 1):
            lo = 1 if positive else 0
            for lam in itertools.product(range(lo, n + 1), repeat=N):
                if sum(lam) == n:
                    yield Shape(lam)


def test_enumeration_counts():
    assert len(all_indices(Shape((1, 1)))) == 2
    assert len(all_indices(Shape((1, 2)))) == 3
    assert len(all_indices(Shape((2, 2)))) == 6
    for sh in shapes_upto(5, 3):
        assert len(all_indices(sh)) == sh.count


def test_enumeration_is_lex_on_words():
    words = [I.word for I in all_indices(Shape((2, 1, 1)))]
    assert words == sorted(words)


def test_min_index_and_sigma():
    sh = Shape((1, 2))
    I0 = min_index(sh)
    assert sigma_of(sh, I0).images == (1, 2, 3)
    assert I0.inversions() == 0
    # one-block shapes: \sigma_{[a]} has length a-1
    for n in (2, 3, 4, 5):
        sh = Shape((1, n - 1))
        for a in range(1, n + 1):
            I = Index.from_parts([[a], [b for b in range(1, n + 1) if b != a]])
            assert sigma_of(sh, I).act_index(min_index(sh)) == I
            assert I.inversions() == a - 1
            assert sigma_of(sh, I).length() == a - 1


def test_sigma_reaches_index_and_longest_length():
    for sh in shapes_upto(5, 3):
        I0 = min_index(sh)
        w0 = Perm.longest(sh.n)
        for I in all_indices(sh):
            s = sigma_of(sh, I)
            assert s.act_index(I0) == I
            assert s.length() == I.inversions()
        rev = w0.act_index(I0)
        assert rev.inversions() == sh.pair_product_sum


def test_sigma_minimality_bruteforce():
    sh = Shape((1, 2))
    I0 = min_index(sh)
    for I in all_indices(sh):
        best = min(
            p.length()
            for p in (Perm(img) for img in itertools.permutations(range(1, 4)))
            if p.act_index(I0) == I
        )
        assert sigma_of(sh, I).length() == best


def test_reduced_word():
    for img in itertools.permutations(range(1, 5)):
        p = Perm(img)
        word = p.reduced_word()
        assert len(word) == p.length()
        acc = Perm.identity(4)
        for a in word:
            acc = acc * Perm.transposition(4, a, a + 1)
        assert acc == p


def test_index_serialization():
    I = Index.from_parts([[1, 3], [4], [2], [5]])
    assert str(I) == "({1,3},{4},{2},{5})"
    assert Index.parse("({1,3},{4},{2},{5})") == I


def test_published_admissible_example():
    sh = Shape((2, 1, 1, 1))
    I = Index.from_parts([[1, 3], [4], [2], [5]])
    first, second = set(), set()
    for a in range(1, 6):
        for b in range(1, 6):
            if a == b:
                continue
            info = classify_pair(sh, I, a, b)
            if info.first_kind:
                first.add((a, b))
            if info.second_kind:
                second.add((a, b))
    assert first == {(3, 2), (2, 3), (4, 2), (2, 4)}
    assert second == {(1, 4), (4, 1), (1, 5), (5, 1), (2, 5), (5, 2)}


def test_flat_pairs_fix_index():
    sh = Shape((2, 2))
    for I in all_indices(sh):
        for a in range(1, 5):
            for b in range(1, 5):
                if a == b:
                    continue
                info = classify_pair(sh, I, a, b)
                if info.order == "flat":
                    assert I.swap_letters(a, b) == I


def test_length_jumps_and_bounds():
    for sh in shapes_upto(5, 4):
        for I in all_indices(sh):
            li = I.inversions()
            for a in range(1, sh.n + 1):
                for b in range(1, sh.n + 1):
                    if a == b:
                        continue
                    info = classify_pair(sh, I, a, b)
                    ls = I.swap_letters(a, b).inversions()
                    if info.order == "flat":
                        continue
                    assert info.m >= 2
                    assert 0 <= info.r <= info.m - 2
                    if info.order == "disordered":
                        assert ls == li - info.r - 1
                        if ls < li:
                            pass  # consistent with the corollary
                    else:
                        assert ls == li + info.r + 1
                    if ls < li:
                        assert info.order == "disordered"
                    if ls > li:
                        assert info.order == "ordered"
