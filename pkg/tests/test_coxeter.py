"""Reflections, real roots, and coset enumeration."""

import random
from collections import Counter

import pytest

from gkmcalc.coxeter import (
    GCM,
    CosetRep,
    Root,
    apply_word_dual,
    classify,
    enumerate_cosets,
    generic_dominant_vector,
    marks,
    real_roots,
    reflect,
    reflection_of_root,
    reflection_word,
    word_matrix,
)
from gkmcalc.errors import InvalidParabolicError

A1 = GCM(((2,),))
A2 = GCM(((2, -1), (-1, 2)))
B2 = GCM(((2, -1), (-2, 2)))
AFF_A1 = GCM(((2, -2), (-2, 2)))
TWISTED = GCM(((2, -1), (-4, 2)))


def test_gcm_validation():
    with pytest.raises(ValueError):
        GCM(((1, 0), (0, 2)))
    with pytest.raises(ValueError):
        GCM(((2, 1), (1, 2)))
    with pytest.raises(ValueError):
        GCM(((2, 0), (-1, 2)))


def test_reflect_simple_examples():
    assert reflect(A2, 0, (1, 0)) == (-1, 0)
    assert reflect(A2, 0, (0, 1)) == (1, 1)  # <a2, a1^vee> = -1


def test_reflect_is_involutive():
    rng = random.Random(3)
    for gcm in (A2, B2, AFF_A1, TWISTED):
        for _ in range(25):
            v = tuple(rng.randrange(-5, 6) for _ in range(gcm.n))
            i = rng.randrange(gcm.n)
            assert reflect(gcm, i, reflect(gcm, i, v)) == v


def test_classify_and_marks():
    assert classify(A2) == "finite"
    assert classify(B2) == "finite"
    assert classify(AFF_A1) == "affine"
    assert classify(TWISTED) == "affine"
    assert classify(GCM(((2, -3), (-3, 2)))) == "indefinite"
    assert marks(AFF_A1) == (1, 1)
    assert marks(TWISTED) == (1, 2)


def test_real_roots_a2():
    assert {r.coords for r in real_roots(A2, 2)} == {(1, 0), (0, 1), (1, 1)}


def test_real_roots_a1():
    for h in (1, 5, 20):
        assert [r.coords for r in real_roots(A1, h)] == [(1,)]


def test_real_roots_affine_a1():
    # positive real roots are alpha1 + n*delta and alpha0 + n*delta
    assert {r.coords for r in real_roots(AFF_A1, 3)} == {(1, 0), (0, 1), (2, 1), (1, 2)}
    assert {r.coords for r in real_roots(AFF_A1, 5)} == {
        (1, 0), (0, 1), (2, 1), (1, 2), (3, 2), (2, 3),
    }


def test_real_roots_closed_under_ball_reflections():
    for gcm, h in ((A2, 3), (B2, 4), (AFF_A1, 7), (TWISTED, 9)):
        roots = {r.coords for r in real_roots(gcm, h)}
        for c in roots:
            for i in range(gcm.n):
                image = reflect(gcm, i, c)
                if all(x >= 0 for x in image) and any(image) and sum(image) <= h:
                    assert image in roots


def test_reflection_word_acts_as_reflection():
    for gcm, h in ((A2, 2), (B2, 3), (AFF_A1, 5), (TWISTED, 7)):
        mu = generic_dominant_vector(gcm, ())
        for root in real_roots(gcm, h):
            word = reflection_word(gcm, root)
            assert len(word) % 2 == 1
            # involutive on the generic vector
            once = apply_word_dual(gcm, word, mu)
            assert apply_word_dual(gcm, word, once) == mu


def test_enumerate_cosets_a2_full():
    reps = enumerate_cosets(A2, (), 3)
    assert len(reps) == 6
    assert Counter(r.length for r in reps) == Counter({0: 1, 1: 2, 2: 2, 3: 1})


def test_enumerate_cosets_identity_only():
    reps = enumerate_cosets(B2, (), 0)
    assert [r.word for r in reps] == [()]


def test_enumerate_cosets_affine_grassmannian():
    reps = enumerate_cosets(AFF_A1, (1,), 4)
    assert [r.length for r in reps] == [0, 1, 2, 3, 4]


def test_enumerate_cosets_invalid_parabolic():
    with pytest.raises(InvalidParabolicError):
        enumerate_cosets(A2, (5,), 2)


def test_length_generating_functions_match_q_factorials():
    cases = {
        A1: {0: 1, 1: 1},
        A2: {0: 1, 1: 2, 2: 2, 3: 1},
        B2: {0: 1, 1: 2, 2: 2, 3: 2, 4: 1},
    }
    for gcm, expected in cases.items():
        reps = enumerate_cosets(gcm, (), 12)
        assert Counter(r.length for r in reps) == Counter(expected)


def test_dedup_agrees_with_matrix_representation():
    # enumerate raw words up to length 4 and partition them two ways
    from itertools import product

    for gcm in (A2, B2):
        mu = generic_dominant_vector(gcm, ())
        words = {w for n in range(5) for w in product(range(gcm.n), repeat=n)}
        by_vector = {}
        by_matrix = {}
        for w in words:
            by_vector.setdefault(apply_word_dual(gcm, w, mu), set()).add(w)
            by_matrix.setdefault(word_matrix(gcm, w), set()).add(w)
        assert set(map(frozenset, by_vector.values())) == set(map(frozenset, by_matrix.values()))


def test_reflection_parity():
    # l(r_b w) and l(w) always differ in parity (full flag case)
    for gcm, h, cutoff in ((A2, 2, 3), (B2, 3, 4), (AFF_A1, 4, 4)):
        for w in enumerate_cosets(gcm, (), cutoff):
            for root in real_roots(gcm, h):
                image = reflection_of_root(gcm, root, w, ())
                assert image is not None  # J is empty: reflections always move
                assert (image.length - w.length) % 2 == 1


def test_reflection_of_root_simple():
    rep = reflection_of_root(A2, Root((1, 0)), CosetRep(()), ())
    assert rep.word == (0,)


def test_reflection_of_root_highest_root_a2():
    rep = reflection_of_root(A2, Root((1, 1)), CosetRep(()), ())
    assert rep.length == 3
    assert word_matrix(A2, rep.word) == word_matrix(A2, (0, 1, 0))


def test_reflection_of_root_same_coset():
    # reflecting by a parabolic root fixes the base coset
    assert reflection_of_root(AFF_A1, Root((0, 1)), CosetRep(()), (1,)) is None


def test_generic_vector_stabilizer():
    mu = generic_dominant_vector(TWISTED, (1,))
    assert mu[1] == 0 and mu[0] != 0
    with pytest.raises(InvalidParabolicError):
        generic_dominant_vector(A2, (-1,))
