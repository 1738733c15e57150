from __future__ import annotations

import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from subtorus.endo import Endomorphism  # noqa: E402
from subtorus.torus import MappingTorus  # noqa: E402
from subtorus.words import Basis  # noqa: E402

FIXTURES = os.path.join(os.path.dirname(os.path.dirname(__file__)), "fixtures")

# rank 5 automorphism with the invariant free factor <a, b, c>
EXAMPLE_MAP = {"a": "b", "b": "c", "c": "abbcc", "d": "dea", "e": "ede"}


def make_torus(letters: str, mapping: dict) -> MappingTorus:
    basis = Basis.of(letters)
    return MappingTorus(Endomorphism.from_mapping(basis, mapping))


@pytest.fixture
def example_group():
    return make_torus("abcde", EXAMPLE_MAP)


@pytest.fixture
def bs12():
    return make_torus("a", {"a": "aa"})


@pytest.fixture
def klein():
    return make_torus("a", {"a": "A"})


@pytest.fixture
def z2():
    return make_torus("a", {"a": "a"})


@pytest.fixture
def fib():
    return make_torus("ab", {"a": "b", "b": "ab"})


@pytest.fixture
def f2xz():
    return make_torus("ab", {"a": "a", "b": "b"})


def fixture_path(name: str) -> str:
    return os.path.join(FIXTURES, name)
