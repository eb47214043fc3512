"""Group arithmetic, normal forms, ball enumeration, Bruhat order."""

import itertools

import pytest
import sympy

from heckej import GroupDescriptor, GroupMismatch, UnsupportedType, make_group


def poincare_counts(affine_type: str, upto: int) -> list[int]:
    """Length-generating series of the affine group, as an independent
    oracle for ball sizes: finite part times 1/((1-t^m)) over the
    exponents (1 for the rank-1 type, 1 and 2 for rank 2)."""
    t = sympy.Symbol("t")
    if affine_type == "A1~":
        series = (1 + t) / (1 - t)
    else:
        series = (1 + t) * (1 + t + t**2) / ((1 - t) * (1 - t**2))
    expansion = sympy.series(series, t, 0, upto + 1).removeO()
    poly = sympy.Poly(expansion, t)
    return [int(poly.coeff_monomial(t**k)) for k in range(upto + 1)]


def test_unsupported_type_rejected():
    with pytest.raises(UnsupportedType):
        GroupDescriptor("B2~")


@pytest.mark.parametrize("affine_type", ["A1~", "A2~"])
def test_generators_are_involutions(affine_type):
    g = make_group(GroupDescriptor(affine_type))
    for s in g.generators():
        assert g.multiply(s, s).is_identity()
        assert len(s.word) == 1


@pytest.mark.parametrize("affine_type,upto", [("A1~", 12), ("A2~", 8)])
def test_ball_sizes_match_length_series(affine_type, upto):
    g = make_group(GroupDescriptor(affine_type))
    counts = poincare_counts(affine_type, upto)
    ball = g.enumerate_ball(upto)
    by_len = {}
    for w in ball:
        by_len[len(w.word)] = by_len.get(len(w.word), 0) + 1
    assert [by_len.get(k, 0) for k in range(upto + 1)] == counts


@pytest.mark.parametrize("affine_type", ["A1~", "A2~"])
def test_extended_ball_scales_by_omega_order(affine_type):
    desc = GroupDescriptor(affine_type, extended=True)
    g = make_group(desc)
    plain = make_group(GroupDescriptor(affine_type))
    assert len(g.enumerate_ball(5)) == desc.omega_order * len(plain.enumerate_ball(5))


def test_ball_is_sorted_and_duplicate_free():
    g = make_group(GroupDescriptor("A2~", extended=True))
    ball = g.enumerate_ball(4)
    keys = [w.sort_key() for w in ball]
    assert keys == sorted(keys)
    assert len(set(ball)) == len(ball)


@pytest.mark.parametrize("affine_type", ["A1~", "A2~"])
def test_multiplication_against_word_concatenation(affine_type):
    g = make_group(GroupDescriptor(affine_type))
    ball = g.enumerate_ball(4)
    for a in ball:
        for b in ball:
            assert g.multiply(a, b) == g.element(a.word + b.word)


@pytest.mark.parametrize("affine_type", ["A1~", "A2~"])
def test_length_parity_and_subadditivity(affine_type):
    g = make_group(GroupDescriptor(affine_type))
    ball = g.enumerate_ball(4)
    for a in ball:
        for b in ball:
            ab = g.multiply(a, b)
            assert (len(ab.word) - len(a.word) - len(b.word)) % 2 == 0
            assert len(ab.word) <= len(a.word) + len(b.word)


@pytest.mark.parametrize("affine_type", ["A1~", "A2~"])
def test_inverse(affine_type):
    g = make_group(GroupDescriptor(affine_type, extended=True))
    for w in g.enumerate_ball(5):
        winv = g.inverse(w)
        assert g.multiply(w, winv).is_identity()
        assert len(winv.word) == len(w.word)


def test_normal_form_is_shortlex_least_reduced_word():
    g = make_group(GroupDescriptor("A2~"))
    for w in g.enumerate_ball(5):
        n = len(w.word)
        # every reduced word for w, by brute force over all words of length n
        reduced = [
            word
            for word in itertools.product(range(3), repeat=n)
            if g.element(word) == w
        ]
        assert min(reduced) == w.word


@pytest.mark.parametrize("affine_type", ["A1~", "A2~"])
def test_descents(affine_type):
    g = make_group(GroupDescriptor(affine_type))
    for w in g.enumerate_ball(6):
        ld = g.left_descents(w)
        rd = g.right_descents(w)
        if w.is_identity():
            assert not ld and not rd
            continue
        assert ld and rd
        for s in range(g.rank):
            gen = g.generator(s)
            shorter = len(g.multiply(gen, w).word) < len(w.word)
            assert (s in ld) == shorter
            shorter = len(g.multiply(w, gen).word) < len(w.word)
            assert (s in rd) == shorter


def test_omega_conjugation_permutes_generators():
    for affine_type in ("A1~", "A2~"):
        desc = GroupDescriptor(affine_type, extended=True)
        g = make_group(desc)
        for k in range(desc.omega_order):
            om = g.omega_element(k)
            om_inv = g.inverse(om)
            perm = g.omega_perm(k)
            for i in range(g.rank):
                lhs = g.multiply(om, g.multiply(g.generator(i), om_inv))
                assert lhs == g.generator(perm[i])
        # the omega subgroup is cyclic of the stated order
        om = g.omega_element(1 % desc.omega_order)
        power = g.identity
        for _ in range(desc.omega_order):
            power = g.multiply(power, om)
        assert power.is_identity()


def test_omega_parts_have_zero_length():
    g = make_group(GroupDescriptor("A2~", extended=True))
    w = g.element((0, 1), 2)
    assert len(w.word) == 2
    assert g.multiply(w, g.inverse(w)).is_identity()


def test_group_mismatch_detected():
    g1 = make_group(GroupDescriptor("A1~"))
    g2 = make_group(GroupDescriptor("A2~"))
    with pytest.raises(GroupMismatch):
        g1.multiply(g1.identity, g2.identity)


def subword_closure(g, word):
    """All elements represented by subsequences of the given word; by the
    subword characterization this is the lower Bruhat interval."""
    out = set()
    for mask in range(1 << len(word)):
        sub = tuple(word[i] for i in range(len(word)) if mask >> i & 1)
        out.add(g.element(sub))
    return out


@pytest.mark.parametrize("affine_type,radius", [("A1~", 8), ("A2~", 5)])
def test_bruhat_order_matches_subword_oracle(affine_type, radius):
    g = make_group(GroupDescriptor(affine_type))
    ball = g.enumerate_ball(radius)
    for w in ball:
        below = subword_closure(g, w.word)
        for y in ball:
            assert g.bruhat_leq(y, w) == (y in below)


def test_bruhat_independent_of_reduced_word():
    g = make_group(GroupDescriptor("A2~"))
    for w in g.enumerate_ball(6):
        n = len(w.word)
        words = [
            word
            for word in itertools.product(range(3), repeat=n)
            if g.element(word) == w
        ]
        expected = {y: g.bruhat_leq(y, w) for y in g.enumerate_ball(n)}
        for word in words:
            for y, val in expected.items():
                assert g.bruhat_leq_via_word(y, word) == val


def test_bruhat_is_a_partial_order():
    g = make_group(GroupDescriptor("A2~"))
    ball = g.enumerate_ball(4)
    for a in ball:
        assert g.bruhat_leq(a, a)
        for b in ball:
            if g.bruhat_leq(a, b) and g.bruhat_leq(b, a):
                assert a == b
            for c in ball:
                if g.bruhat_leq(a, b) and g.bruhat_leq(b, c):
                    assert g.bruhat_leq(a, c)


def test_bruhat_incomparable_across_omega():
    g = make_group(GroupDescriptor("A1~", extended=True))
    w = g.element((0, 1), 1)
    y = g.element((0,), 0)
    assert not g.bruhat_leq(y, w)
    assert g.bruhat_leq(g.element((0,), 1), w)


def test_element_string_and_json_round_trip():
    g = make_group(GroupDescriptor("A2~", extended=True))
    w = g.element((0, 1, 0), 2)
    assert str(w) == "010@2"
    assert g.from_json(w.to_json()) == w
    assert str(g.identity) == "e"
