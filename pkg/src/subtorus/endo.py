"""Injective endomorphisms of a free group given by basis images."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Mapping, Optional, Union

from .errors import InputError, ResourceExceeded
from .stallings import from_words, image_graph, is_cover, rank
from .words import Basis, Word, concat_str, free_reduce, invert_str, substitute_str

DEFAULT_MAX_WORD = 10**6


@dataclass(frozen=True)
class Endomorphism:
    basis: Basis
    images: tuple[str, ...]   # one reduced word per basis letter, in basis order

    def __post_init__(self):
        imgs = tuple(self.basis.coerce(w) for w in self.images)
        if len(imgs) != self.basis.rank:
            raise InputError(f"need {self.basis.rank} images, got {len(imgs)}")
        object.__setattr__(self, "images", imgs)

    @classmethod
    def from_mapping(cls, basis: Basis, mapping: Mapping[str, Union[str, Word]]) -> "Endomorphism":
        extra = set(mapping) - set(basis.letters)
        if extra:
            raise InputError(f"images given for unknown letters {sorted(extra)}")
        missing = [x for x in basis.letters if x not in mapping]
        if missing:
            raise InputError(f"no image for {missing}")
        return cls(basis, tuple(basis.coerce(mapping[x]) for x in basis.letters))

    @classmethod
    def identity(cls, basis: Basis) -> "Endomorphism":
        return cls(basis, basis.letters)

    @cached_property
    def table(self) -> dict[str, str]:
        t = {}
        for x, w in zip(self.basis.letters, self.images):
            t[x] = w
            t[x.upper()] = invert_str(w)
        return t

    def __call__(self, w: Union[Word, str]) -> Word:
        return apply(self, w)

    def apply_str(self, s: str, cap: int = DEFAULT_MAX_WORD) -> str:
        """Image of an already validated reduced string."""
        table = self.table
        if len(s) * max(1, max(map(len, self.images))) > cap:
            # only an upper bound; measure precisely before giving up
            total = sum(len(table[x]) for x in s)
            if total > cap:
                raise ResourceExceeded("word", total, cap)
        return substitute_str(s, table)

    def __str__(self):
        return ", ".join(f"{x} -> {w or '1'}" for x, w in zip(self.basis.letters, self.images))

    @cached_property
    def _image_steps(self) -> dict[tuple[int, str], tuple[int, str]]:
        # (vertex, signed letter) -> (next vertex, preimage label)
        g, labels, _ = image_graph(self.basis, self.images)
        steps = {}
        for (o, a, t), lab in zip(g.edges, labels):
            steps[(o, a)] = (t, lab)
            steps[(t, a.upper())] = (o, invert_str(lab))
        return steps

    @cached_property
    def injective(self) -> bool:
        if any(not w for w in self.images):
            return False
        return rank(from_words(self.basis, self.images)) == self.basis.rank

    @cached_property
    def surjective(self) -> bool:
        return is_cover(from_words(self.basis, self.images)) == 1

    def is_automorphism(self) -> bool:
        return self.injective and self.surjective

    def preimage_str(self, s: str) -> Optional[str]:
        if not self.injective:
            raise InputError("preimage requires an injective endomorphism")
        step = self._image_steps
        v = 0
        parts = []
        for x in s:
            hit = step.get((v, x))
            if hit is None:
                return None
            v, lab = hit
            parts.append(lab)
        if v != 0:
            return None
        return free_reduce("".join(parts))


def apply(phi: Endomorphism, w: Union[Word, str]) -> Word:
    return Word(phi.basis, phi.apply_str(phi.basis.coerce(w)))


def _check_same(phi: Endomorphism, chi: Endomorphism):
    if phi.basis != chi.basis:
        raise InputError("endomorphisms over different bases")


def compose(phi: Endomorphism, chi: Endomorphism) -> Endomorphism:
    """``x -> phi(chi(x))``."""
    _check_same(phi, chi)
    return Endomorphism(phi.basis, tuple(phi.apply_str(w) for w in chi.images))


def power(phi: Endomorphism, m: int) -> Endomorphism:
    if m < 1:
        raise InputError(f"power must be >= 1, got {m}")
    result = phi
    for _ in range(m - 1):
        result = compose(phi, result)
    return result


def iterate(phi: Endomorphism, w: str, k: int, cap: int = DEFAULT_MAX_WORD) -> str:
    for _ in range(k):
        w = phi.apply_str(w, cap)
    return w


def rebase(phi: Endomorphism, u: Union[Word, str], m: int) -> Endomorphism:
    """``x -> u phi^m(x) u^-1``."""
    u = phi.basis.coerce(u)
    pm = power(phi, m)
    ui = invert_str(u)
    return Endomorphism(phi.basis, tuple(concat_str(concat_str(u, w), ui) for w in pm.images))


def is_injective(phi: Endomorphism) -> bool:
    return phi.injective


def preimage(phi: Endomorphism, w: Union[Word, str]) -> Optional[Word]:
    """The unique ``x`` with ``phi(x) == w``, or None when ``w`` is not in the image."""
    x = phi.preimage_str(phi.basis.coerce(w))
    return None if x is None else Word(phi.basis, x)


def parse_endomorphism(basis: Basis, lines) -> Endomorphism:
    """Parse ``a -> b`` lines (one per basis letter)."""
    mapping = {}
    for raw in lines:
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "->" not in line:
            raise InputError(f"bad endomorphism line {raw!r}")
        lhs, rhs = (part.strip() for part in line.split("->", 1))
        if lhs not in basis.letters:
            raise InputError(f"{lhs!r} is not a basis letter")
        if lhs in mapping:
            raise InputError(f"duplicate image for {lhs}")
        mapping[lhs] = rhs.replace(" ", "")
    return Endomorphism.from_mapping(basis, mapping)

