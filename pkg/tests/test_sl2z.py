import random

import pytest
from hypothesis import given, strategies as st

from generators import LETTERS, random_sl2z, sl2z_matrices
from oddchi import sl2z
from oddchi.sl2z import ELLIPTIC_REPS, MonodromyClass, NotInSL2Z, Sl2Matrix

M = Sl2Matrix.from_rows
I = sl2z.identity()


def test_constructor_rejects_bad_determinant():
    with pytest.raises(NotInSL2Z):
        Sl2Matrix(1, 1, 1, 1)
    with pytest.raises(TypeError):
        Sl2Matrix(1.0, 0, 0, 1)


def test_multiply_examples():
    assert sl2z.multiply(M([[1, 1], [0, 1]]), M([[1, 0], [-1, 1]])) == M([[0, 1], [-1, 1]])
    A = M([[2, 1], [1, 1]])
    assert sl2z.multiply(I, A) == A
    assert sl2z.multiply(sl2z.phi(), sl2z.phi()) == M([[-1, 0], [0, -1]])


def test_invert_examples():
    assert sl2z.invert(sl2z.phi()) == M([[0, -1], [1, 0]])
    assert sl2z.invert(I) == I
    assert sl2z.invert(M([[1, 1], [0, 1]])) == M([[1, -1], [0, 1]])


def test_generators():
    assert sl2z.twist_a() == M([[1, 1], [0, 1]])
    assert sl2z.twist_b() == M([[1, 0], [-1, 1]])
    assert sl2z.phi() == M([[0, 1], [-1, 0]])


def test_phi_decomposition():
    ta, tb = sl2z.twist_a(), sl2z.twist_b()
    assert sl2z.verify_phi_decomposition()
    assert not sl2z.verify_phi_decomposition([ta, sl2z.invert(tb), ta])
    assert not sl2z.verify_phi_decomposition([I, I, I])
    # order matters only up to the palindrome; a different order fails
    assert not sl2z.verify_phi_decomposition([tb, ta, ta])
    assert sl2z.phi() ** 4 == I and sl2z.phi().trace == 0


def test_classify_examples():
    assert sl2z.classify(M([[1, 1], [0, 1]])) == MonodromyClass("parabolic", 1, 1)
    assert sl2z.classify(M([[1, 0], [-1, 1]])) == MonodromyClass("parabolic", 1, 1)
    h = sl2z.classify(M([[2, 1], [1, 1]]))
    assert (h.kind, h.sign, h.word) == ("hyperbolic", 1, "RL")
    assert str(h) == "Hyperbolic(+,RL)"
    assert str(sl2z.classify(sl2z.invert(sl2z.twist_a()))) == "Parabolic(+,-1)"
    assert str(sl2z.classify(-I)) == "Central(-)"


def test_kinds_by_trace():
    for a, b, c, d in [(1, 0, 0, 1), (-1, 0, 0, -1), (0, -1, 1, 1), (-1, 3, 0, -1), (5, 2, 2, 1)]:
        A = Sl2Matrix(a, b, c, d)
        t = abs(A.trace)
        kind = sl2z.classify(A).kind
        if A in (I, -I):
            assert kind == "central"
        elif t == 2:
            assert kind == "parabolic"
        elif t > 2:
            assert kind == "hyperbolic"
        else:
            assert kind == "elliptic"


def test_are_conjugate_examples():
    ta, tb, phi = sl2z.twist_a(), sl2z.twist_b(), sl2z.phi()
    assert sl2z.are_conjugate(ta, tb)
    assert not sl2z.are_conjugate(ta, sl2z.invert(ta))
    assert sl2z.are_conjugate(phi, phi)
    # Phi and its inverse are GL- but not SL-conjugate
    assert not sl2z.are_conjugate(phi, sl2z.invert(phi))


def test_rl_word_length_examples():
    assert sl2z.rl_word_length(I) == 0
    assert sl2z.rl_word_length(sl2z.twist_a()) == 1
    assert sl2z.rl_word_length(M([[2, 1], [1, 1]])) == 2


def test_elliptic_representatives_are_six_classes():
    classes = {sl2z.classify(r) for r, _ in ELLIPTIC_REPS}
    assert len(classes) == 6
    for i, (r, word) in enumerate(ELLIPTIC_REPS):
        assert sl2z.classify(r).representative() == r
        assert sl2z.classify(r).index == i
        assert sl2z.word_product(word) == r


def test_hyperbolic_word_is_least_rotation():
    A = sl2z.word_product("RRLRLLL")
    w = sl2z.classify(A).word
    rots = [w[i:] + w[:i] for i in range(len(w))]
    assert w == min(rots, key=lambda s: s.translate(str.maketrans("RL", "01")))
    assert sl2z.word_product(w) == sl2z.classify(A).representative()


def test_induced_core_monodromy():
    m = sl2z.induced_core_monodromy()
    # (x, y) -> (y, -x) in column convention
    assert m == M([[0, 1], [-1, 0]])
    assert sl2z.are_conjugate(m, sl2z.phi()) or sl2z.are_conjugate(m, sl2z.invert(sl2z.phi()))
    assert m ** 4 == I


def test_monodromy_class_inverse():
    for A in [sl2z.twist_a(), sl2z.phi(), M([[2, 1], [1, 1]]), -sl2z.twist_a(), M([[0, -1], [1, 1]])]:
        assert sl2z.classify(A).inverse() == sl2z.classify(sl2z.invert(A))


@given(sl2z_matrices())
def test_normal_form_conjugator(A):
    cls, P = sl2z.normal_form(A)
    assert P @ cls.representative() @ sl2z.invert(P) == A


@given(sl2z_matrices(), sl2z_matrices())
def test_conjugate_implies_same_trace(A, B):
    if sl2z.are_conjugate(A, B):
        assert A.trace == B.trace


@given(sl2z_matrices())
def test_invert_involution(A):
    assert sl2z.invert(sl2z.invert(A)) == A
    assert A @ sl2z.invert(A) == I


@given(sl2z_matrices(6), sl2z_matrices(6), sl2z_matrices(6))
def test_multiply_associative(A, B, C):
    assert (A @ B) @ C == A @ (B @ C)


def test_classify_conjugation_invariant_1000():
    rng = random.Random(7)
    for _ in range(1000):
        A = random_sl2z(rng, 10)
        P = sl2z.word_product("".join(rng.choice(LETTERS) for _ in range(rng.randint(0, 8))))
        assert sl2z.classify(P @ A @ sl2z.invert(P)) == sl2z.classify(A)


@given(sl2z_matrices())
def test_twist_factorization(A):
    sign, twists = sl2z.twist_factorization(A)
    prod = I
    for t in twists:
        prod = prod @ t
        assert abs(sl2z.classify(t).twist) == 1 and sl2z.classify(t).kind == "parabolic"
    assert (prod if sign > 0 else -prod) == A
    assert len(twists) == sl2z.rl_word_length(A)


@given(st.integers(-20, 20))
def test_parabolic_powers(k):
    A = sl2z.twist_a() ** k
    cls = sl2z.classify(A)
    if k == 0:
        assert cls.kind == "central"
    else:
        assert (cls.kind, cls.sign, cls.twist) == ("parabolic", 1, k)
