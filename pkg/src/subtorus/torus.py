"""The mapping torus ``G = <F, t | t x t^-1 = phi(x)>`` of an injective endomorphism.

Torus words are strings over the basis letters plus ``t``/``T`` (stable
letter and its inverse).  Every element has a unique Britton-reduced form
``t^-p z t^q`` with ``p = 0``, ``q = 0`` or ``z`` outside the image of phi.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Union

from .endo import DEFAULT_MAX_WORD, Endomorphism, rebase
from .errors import InputError, NonInjective, ResourceExceeded
from .words import STABLE_LETTER, Basis, Word, concat_str, format_runs, free_reduce, invert_str

TorusWord = str
STABLE_INVERSE = STABLE_LETTER.upper()


def torus_inverse(w: TorusWord) -> TorusWord:
    return w[::-1].swapcase()


def theta(w: TorusWord) -> int:
    """Exponent sum of the stable letter."""
    return w.count(STABLE_LETTER) - w.count(STABLE_INVERSE)


@dataclass(frozen=True)
class NormalForm:
    p: int
    z: Word
    q: int

    def expand(self) -> TorusWord:
        return STABLE_INVERSE * self.p + self.z.letters + STABLE_LETTER * self.q

    def as_tuple(self) -> tuple[int, str, int]:
        return self.p, self.z.letters, self.q

    def __str__(self):
        parts = []
        if self.p:
            parts.append("T" if self.p == 1 else f"T^{self.p}")
        if self.z.letters or not (self.p or self.q):
            parts.append(format_runs(self.z.letters, sep=" "))
        if self.q:
            parts.append("t" if self.q == 1 else f"t^{self.q}")
        return " ".join(parts)


@dataclass
class MappingTorus:
    """Word problem and normal forms in the mapping torus of ``phi``."""

    phi: Endomorphism
    max_word: int = DEFAULT_MAX_WORD
    _powers: list = field(default_factory=list, repr=False)

    def __post_init__(self):
        if not self.phi.injective:
            raise NonInjective(f"endomorphism {self.phi} is not injective")
        self._powers = [{x: x for x in self.basis.signed_letters}]

    @property
    def basis(self) -> Basis:
        return self.phi.basis

    def parse(self, w: Union[str, Word]) -> TorusWord:
        if isinstance(w, Word):
            return self.basis.coerce(w)
        w = w.replace(" ", "")
        if w == "1":
            return ""
        for x in w:
            if x not in (STABLE_LETTER, STABLE_INVERSE):
                self.basis.validate(x)
        return w

    def _power_table(self, k: int) -> dict[str, str]:
        while len(self._powers) <= k:
            prev = self._powers[-1]
            table = {}
            for x in self.basis.letters:
                img = self.phi.apply_str(prev[x], self.max_word)
                table[x] = img
                table[x.upper()] = invert_str(img)
            self._powers.append(table)
        return self._powers[k]

    def _check(self, z: str) -> str:
        if len(z) > self.max_word:
            raise ResourceExceeded("word", len(z), self.max_word)
        return z

    def nf_tuple(self, w: TorusWord) -> tuple[int, str, int]:
        """Britton-reduced ``(p, z, q)`` of a parsed torus word."""
        p, z, q = 0, "", 0
        for x in w:
            if x == STABLE_LETTER:
                q += 1
            elif x == STABLE_INVERSE:
                if q:
                    q -= 1
                else:
                    # z t^-1 = t^-1 phi(z)
                    z = self._check(self.phi.apply_str(z, self.max_word))
                    p += 1
            else:
                # t^q x = phi^q(x) t^q
                z = self._check(concat_str(z, self._power_table(q)[x]))
            while p and q:
                pre = self.phi.preimage_str(z)
                if pre is None:
                    break
                z, p, q = pre, p - 1, q - 1
        return p, z, q

    def normal_form(self, w: Union[TorusWord, Word]) -> NormalForm:
        p, z, q = self.nf_tuple(self.parse(w))
        return NormalForm(p, Word(self.basis, z), q)

    def equal(self, w1: Union[TorusWord, Word], w2: Union[TorusWord, Word]) -> bool:
        return self.nf_tuple(self.parse(w1)) == self.nf_tuple(self.parse(w2))

    def is_identity(self, w: Union[TorusWord, Word]) -> bool:
        return self.nf_tuple(self.parse(w)) == (0, "", 0)

    def conjugate_into_fiber(self, z: str, k: int) -> str:
        """``t^k z t^-k`` as a word of F, i.e. ``phi^k(z)``."""
        for _ in range(k):
            z = self._check(self.phi.apply_str(z, self.max_word))
        return z

    def ambient_relators(self) -> list[tuple[str, str]]:
        """Defining relations ``t a t^-1 = phi(a)`` as (lhs, rhs) torus words."""
        return [(f"t{x}T", img) for x, img in zip(self.basis.letters, self.phi.images)]


def normal_form(G: MappingTorus, w: Union[TorusWord, Word]) -> NormalForm:
    return G.normal_form(w)


def equal(G: MappingTorus, w1, w2) -> bool:
    return G.equal(w1, w2)


def standard_subgroup(G: MappingTorus, u: Union[Word, str], m: int) -> tuple[int, Endomorphism]:
    """Index and endomorphism presenting ``<u t^m, F>`` as a mapping torus."""
    if m < 1:
        raise InputError(f"m must be >= 1, got {m}")
    return m, rebase(G.phi, u, m)


def reduce_torus(w: TorusWord) -> TorusWord:
    """Free reduction treating ``t`` as one more generator."""
    return free_reduce(w)
