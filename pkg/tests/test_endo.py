from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from conftest import EXAMPLE_MAP
from subtorus.endo import (
    Endomorphism,
    apply,
    compose,
    is_injective,
    iterate,
    parse_endomorphism,
    power,
    preimage,
    rebase,
)
from subtorus.errors import InputError
from subtorus.words import Basis, Word, free_reduce

A = Basis.of("a")
AB = Basis.of("ab")
ABCDE = Basis.of("abcde")

DOUBLE = Endomorphism.from_mapping(A, {"a": "aa"})
EXAMPLE = Endomorphism.from_mapping(ABCDE, EXAMPLE_MAP)
FIB = Endomorphism.from_mapping(AB, {"a": "b", "b": "ab"})

# injective maps on F(a,b) with |phi(x)| >= 1 for every letter x, so images never shrink a word
NON_SHRINKING = [
    Endomorphism.from_mapping(AB, {"a": "aa", "b": "b"}),
    Endomorphism.from_mapping(AB, {"a": "ab", "b": "ba"}),
    Endomorphism.from_mapping(AB, {"a": "b", "b": "a"}),
    Endomorphism.from_mapping(AB, {"a": "aba", "b": "bb"}),
]

ab_words = st.text(alphabet="aAbB", max_size=8).map(free_reduce)


def test_apply_examples():
    assert str(EXAMPLE("a")) == "b"
    assert EXAMPLE("").is_identity()
    assert str(DOUBLE("aaa")) == "aaaaaa"


def test_apply_rejects_foreign_words():
    with pytest.raises(InputError):
        apply(DOUBLE, Word(AB, "b"))


def test_power_examples():
    assert power(DOUBLE, 3).images == ("a" * 8,)
    assert power(EXAMPLE, 1) == EXAMPLE
    assert str(power(EXAMPLE, 2)("a")) == "c"
    with pytest.raises(InputError):
        power(DOUBLE, 0)


def test_compose_order():
    swap = Endomorphism.from_mapping(AB, {"a": "b", "b": "a"})
    sq = Endomorphism.from_mapping(AB, {"a": "aa", "b": "b"})
    # (phi o chi)(a) = phi(chi(a))
    assert compose(sq, swap)("a").letters == "b"
    assert compose(swap, sq)("a").letters == "bb"


def test_rebase_examples():
    assert rebase(EXAMPLE, "", 1) == EXAMPLE
    assert rebase(DOUBLE, "a", 1).images == ("aa",)
    assert str(rebase(EXAMPLE, "d", 2)("a")) == "dcD"


def test_is_injective_examples():
    assert is_injective(EXAMPLE)
    assert not is_injective(Endomorphism.from_mapping(AB, {"a": "a", "b": "a"}))
    assert is_injective(Endomorphism.from_mapping(AB, {"a": "aa", "b": "b"}))
    assert not is_injective(Endomorphism.from_mapping(AB, {"a": "", "b": "b"}))
    assert not is_injective(Endomorphism.from_mapping(AB, {"a": "ab", "b": "abab"}))


def test_surjectivity_flag():
    assert EXAMPLE.is_automorphism() and FIB.is_automorphism()
    assert not DOUBLE.surjective


def test_preimage_examples():
    assert str(preimage(DOUBLE, "aaaa")) == "aa"
    assert preimage(DOUBLE, "a") is None
    assert str(preimage(EXAMPLE, "abbcc")) == "c"


def test_preimage_requires_injective():
    with pytest.raises(InputError):
        preimage(Endomorphism.from_mapping(AB, {"a": "a", "b": "a"}), "a")


def test_parse_endomorphism():
    phi = parse_endomorphism(AB, ["a -> b  # swap", "", "b -> a b"])
    assert phi.images == ("b", "ab")
    for bad in (["a -> b"], ["a -> b", "a -> a", "b -> a"], ["a b", "b -> a"], ["c -> a", "a -> a", "b -> b"]):
        with pytest.raises(InputError):
            parse_endomorphism(AB, bad)


def test_images_are_reduced_on_construction():
    assert Endomorphism.from_mapping(AB, {"a": "abB", "b": "b"}).images == ("a", "b")


@settings(max_examples=100, deadline=None)
@given(ab_words, ab_words)
def test_homomorphism_law(w1, w2):
    for phi in [FIB] + NON_SHRINKING:
        assert phi(free_reduce(w1 + w2)).letters == free_reduce(phi(w1).letters + phi(w2).letters)


@settings(max_examples=60, deadline=None)
@given(ab_words, st.integers(min_value=1, max_value=5))
def test_functoriality(w, m):
    for phi in [FIB] + NON_SHRINKING[:2]:
        assert power(phi, m)(w).letters == iterate(phi, w, m)


@settings(max_examples=100, deadline=None)
@given(ab_words)
def test_preimage_of_image(w):
    for phi in [FIB] + NON_SHRINKING:
        assert preimage(phi, phi(w)).letters == w


def test_preimage_soundness_brute_force():
    # targets include images and arbitrary words; for non-shrinking maps a
    # preimage of w has length <= |w|, so the search below is exhaustive
    words6 = list(oracles.all_reduced_words("ab", 6))
    for phi in NON_SHRINKING:
        table = {}
        for x in words6:
            table.setdefault(phi(x).letters, x)
        for w in oracles.all_reduced_words("ab", 6):
            x = preimage(phi, w)
            if x is not None:
                assert phi(x).letters == w
            else:
                assert w not in table, (phi, w)


def test_rebase_laws():
    rng = random.Random(3)
    for phi in [FIB] + NON_SHRINKING:
        assert rebase(phi, "", 1) == phi
        for _ in range(10):
            u = free_reduce("".join(rng.choice("aAbB") for _ in range(rng.randint(0, 4))))
            v = free_reduce("".join(rng.choice("aAbB") for _ in range(rng.randint(0, 4))))
            lhs = rebase(rebase(phi, u, 1), v, 1)
            assert lhs == rebase(phi, free_reduce(v + u), 1)


def test_injectivity_invariant_under_automorphisms():
    autos = [FIB, Endomorphism.from_mapping(AB, {"a": "b", "b": "a"}),
             Endomorphism.from_mapping(AB, {"a": "ab", "b": "b"})]
    maps = NON_SHRINKING + [Endomorphism.from_mapping(AB, {"a": "ab", "b": "abab"})]
    for phi in maps:
        for alpha in autos:
            assert is_injective(compose(phi, alpha)) == is_injective(phi)
            assert is_injective(compose(alpha, phi)) == is_injective(phi)
