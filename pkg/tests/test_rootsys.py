"""Root system / Weyl group layer, checked against independent oracles:
Cayley-graph distances for lengths, permutation inversion counts for the
symmetric group, and exhaustive subword search for the Bruhat order."""

from fractions import Fraction
from itertools import permutations, product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wtits import load_preset
from wtits.rootsys import (
    all_reduced_words,
    bruhat_leq,
    evaluate_word,
    is_reduced,
    left_descents,
    length,
    longest_element,
    reduced_word,
    simple_reflection,
    split_roots_by_H,
    weyl_group,
    weyl_identity,
)


def cayley_distances(datum):
    """Independent length oracle: word metric on the Cayley graph."""
    gens = [simple_reflection(datum, i) for i in range(1, datum.rank + 1)]
    dist = {weyl_identity(datum).matrix: 0}
    frontier = [weyl_identity(datum)]
    while frontier:
        new = []
        for w in frontier:
            for g in gens:
                nxt = g * w
                if nxt.matrix not in dist:
                    dist[nxt.matrix] = dist[w.matrix] + 1
                    new.append(nxt)
        frontier = new
    return dist


@pytest.mark.parametrize("name,w_size,w0_len", [("sl3", 6, 3), ("so24", 8, 4), ("sl2", 2, 1)])
def test_lengths_match_cayley_distance(name, w_size, w0_len):
    datum = load_preset(name).root_datum
    group = weyl_group(datum)
    dist = cayley_distances(datum)
    assert len(group) == w_size == len(dist)
    for w in group:
        assert length(w) == dist[w.matrix]
    assert length(longest_element(datum)) == w0_len
    assert len(datum.positive_roots) == w0_len


def test_sl3_weyl_is_coordinate_permutations(sl3):
    datum = sl3.root_datum
    perm_mats = set()
    for sigma in permutations(range(3)):
        mat = tuple(
            tuple(Fraction(int(sigma[j] == i)) for j in range(3)) for i in range(3)
        )
        perm_mats.add(mat)
    assert {w.matrix for w in weyl_group(datum)} == perm_mats
    # inversion count of the order-reversing permutation
    sigma = (2, 1, 0)
    inversions = sum(
        1 for i in range(3) for j in range(i + 1, 3) if sigma[i] > sigma[j]
    )
    assert inversions == 3 == length(longest_element(datum))


def test_simple_reflection_actions(sl3, so24):
    # sl3 labeling: r2 swaps the first two diagonal coordinates
    r2 = simple_reflection(sl3.root_datum, 2)
    vec = (Fraction(5), Fraction(7), Fraction(-12))
    from wtits.exact import frac_mat_vec

    assert frac_mat_vec(r2.matrix, vec) == (Fraction(7), Fraction(5), Fraction(-12))
    r1 = simple_reflection(sl3.root_datum, 1)
    assert frac_mat_vec(r1.matrix, vec) == (Fraction(5), Fraction(-12), Fraction(7))
    # so24: r2 flips the second coordinate
    r2b = simple_reflection(so24.root_datum, 2)
    assert frac_mat_vec(r2b.matrix, (Fraction(3), Fraction(4))) == (
        Fraction(3),
        Fraction(-4),
    )
    for preset in (sl3, so24):
        for i in range(1, preset.rank + 1):
            r = simple_reflection(preset.root_datum, i)
            assert (r * r).is_identity()
            assert length(r) == 1

    with pytest.raises(IndexError):
        simple_reflection(sl3.root_datum, 3)


def test_reduced_word_deterministic_and_minimal(sl3, so24):
    datum = sl3.root_datum
    assert reduced_word(weyl_identity(datum)) == []
    target = evaluate_word(datum, [1, 2, 1])
    # brute force all words of length <= 3 over {1, 2}
    minimal = [
        list(word)
        for n in range(4)
        for word in product((1, 2), repeat=n)
        if evaluate_word(datum, word).matrix == target.matrix
    ]
    shortest = min(len(w) for w in minimal)
    assert shortest == 3
    assert reduced_word(target) in [w for w in minimal if len(w) == shortest]
    assert reduced_word(target) == [1, 2, 1]

    w0 = longest_element(so24.root_datum)
    assert reduced_word(w0) == [1, 2, 1, 2]
    assert evaluate_word(so24.root_datum, [1, 2, 1, 2]).matrix == evaluate_word(
        so24.root_datum, [2, 1, 2, 1]
    ).matrix


def test_is_reduced(sl3):
    datum = sl3.root_datum
    assert is_reduced(datum, [])
    assert not is_reduced(datum, [1, 1])
    assert is_reduced(datum, [1, 2, 1])
    assert not is_reduced(datum, [1, 2, 1, 2])


def subword_leq(v, w) -> bool:
    """Independent Bruhat oracle: some reduced word of w contains some
    reduced word of v as a subword."""

    def contains(big, small):
        it = iter(big)
        return all(ch in it for ch in small)

    small_words = all_reduced_words(v)
    return any(
        contains(big, small)
        for big in all_reduced_words(w)
        for small in small_words
    )


@pytest.mark.parametrize("name", ["sl3", "so24"])
def test_bruhat_leq_matches_subword_oracle(name):
    datum = load_preset(name).root_datum
    group = weyl_group(datum)
    for v in group:
        for w in group:
            assert bruhat_leq(v, w) == subword_leq(v, w), (v.matrix, w.matrix)


def test_bruhat_examples(sl3):
    datum = sl3.root_datum
    e = weyl_identity(datum)
    r1 = simple_reflection(datum, 1)
    r2 = simple_reflection(datum, 2)
    for w in weyl_group(datum):
        assert bruhat_leq(e, w)
    assert not bruhat_leq(r1, r2)
    assert not bruhat_leq(r2, r1)
    assert bruhat_leq(r2, r2 * r1)


@pytest.mark.parametrize("name", ["sl3", "so24"])
def test_bruhat_order_axioms(name):
    datum = load_preset(name).root_datum
    group = weyl_group(datum)
    for v in group:
        assert bruhat_leq(v, v)
        for w in group:
            if bruhat_leq(v, w) and bruhat_leq(w, v):
                assert v.matrix == w.matrix
            for x in group:
                if bruhat_leq(v, w) and bruhat_leq(w, x):
                    assert bruhat_leq(v, x)
    w0 = longest_element(datum)
    assert all(bruhat_leq(w, w0) for w in group)


def test_split_roots_by_H(sl3):
    datum = sl3.root_datum
    zero, positive = split_roots_by_H(datum, set())
    assert zero == () and set(positive) == set(datum.positive_roots)
    zero, positive = split_roots_by_H(datum, {1, 2})
    assert positive == () and set(zero) == set(datum.positive_roots)
    # Theta = {1}: evaluate every positive root on a representative H
    H = (2, -1, -1)  # alpha_1 = e2 - e3 vanishes, alpha_2 = e1 - e2 does not
    zero, positive = split_roots_by_H(datum, {1})
    for root in zero:
        assert sum(float(c) * h for c, h in zip(root, H)) == 0
    for root in positive:
        assert sum(float(c) * h for c, h in zip(root, H)) > 0
    assert len(zero) == 1 and len(positive) == 2
    with pytest.raises(IndexError):
        split_roots_by_H(datum, {5})


@pytest.mark.parametrize("name", ["sl3", "so24", "sl2"])
def test_word_and_length_invariants(name):
    datum = load_preset(name).root_datum
    for w in weyl_group(datum):
        word = reduced_word(w)
        assert len(word) == length(w)
        assert evaluate_word(datum, word).matrix == w.matrix
        assert is_reduced(datum, word)
        for i in range(1, datum.rank + 1):
            assert abs(length(simple_reflection(datum, i) * w) - length(w)) == 1


@settings(max_examples=60, deadline=None)
@given(word=st.lists(st.integers(min_value=1, max_value=3), max_size=10))
def test_random_words_sl4(word):
    datum = load_preset("sl4").root_datum
    w = evaluate_word(datum, word)
    assert length(w) <= len(word)
    assert (length(w) - len(word)) % 2 == 0
    assert is_reduced(datum, reduced_word(w))
    for i in left_descents(w):
        assert length(simple_reflection(datum, i) * w) == length(w) - 1
