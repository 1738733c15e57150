"""Free group words over a declared basis.

Surface syntax: a lowercase letter is a generator, the matching uppercase
letter its inverse, read left to right.  ``"1"`` and ``""`` both denote the
identity.  The letter ``t`` is reserved for the stable letter of a mapping
torus and may not appear in a basis.

Most of the package works directly on plain ``str`` words that have already
been validated; :class:`Word` is the value type handed to callers.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Union

from .errors import InputError

STABLE_LETTER = "t"


def inverse_letter(x: str) -> str:
    return x.swapcase()


def free_reduce(s: str) -> str:
    """Freely reduce a string word with a single stack pass."""
    out = []
    for x in s:
        if out and out[-1] == x.swapcase():
            out.pop()
        else:
            out.append(x)
    return "".join(out)


def invert_str(s: str) -> str:
    return s[::-1].swapcase()


def concat_str(u: str, v: str) -> str:
    """Product of two reduced words; only the seam can cancel."""
    i = 0
    n = min(len(u), len(v))
    while i < n and u[len(u) - 1 - i] == v[i].swapcase():
        i += 1
    return u[: len(u) - i] + v[i:]


def power_str(s: str, k: int) -> str:
    if k < 0:
        s, k = invert_str(s), -k
    out = ""
    for _ in range(k):
        out = concat_str(out, s)
    return out


def cyclic_reduce_str(s: str) -> tuple[str, str]:
    """Return ``(core, conjugator)`` with ``s == conjugator core conjugator^-1``."""
    i = 0
    while i < len(s) - 1 - i and s[i] == s[len(s) - 1 - i].swapcase():
        i += 1
    return s[i : len(s) - i], s[:i]


def substitute_str(s: str, images: dict[str, str]) -> str:
    """Apply a letter substitution; ``images`` must cover both cases and be reduced."""
    out: list[str] = []
    for x in s:
        img = images[x]
        # reduced images can only cancel at the seam
        k = 0
        while k < len(img) and out and out[-1] == img[k].swapcase():
            out.pop()
            k += 1
        out.extend(img[k:])
    return "".join(out)


@dataclass(frozen=True)
class Basis:
    """An ordered free basis of single lowercase letters."""

    letters: tuple[str, ...]

    def __post_init__(self):
        letters = tuple(self.letters)
        object.__setattr__(self, "letters", letters)
        if not letters:
            raise InputError("basis must be nonempty")
        if len(set(letters)) != len(letters):
            raise InputError(f"duplicate letters in basis {letters}")
        for x in letters:
            if len(x) != 1 or not x.isascii() or not x.islower() or not x.isalpha():
                raise InputError(f"basis letter {x!r} must be a single lowercase letter")
            if x == STABLE_LETTER:
                raise InputError("'t' is reserved for the stable letter")
        object.__setattr__(self, "_alphabet", frozenset(letters) | frozenset(x.upper() for x in letters))

    @classmethod
    def of(cls, letters: Union[str, Iterable[str]]) -> "Basis":
        if isinstance(letters, str):
            letters = letters.replace(",", " ").split() if (" " in letters or "," in letters) else list(letters)
        return cls(tuple(letters))

    @property
    def rank(self) -> int:
        return len(self.letters)

    @property
    def signed_letters(self) -> tuple[str, ...]:
        """Letters in fold/BFS order: a, A, b, B, ..."""
        return tuple(y for x in self.letters for y in (x, x.upper()))

    def letter_order(self) -> dict[str, int]:
        return {x: i for i, x in enumerate(self.signed_letters)}

    def validate(self, s: str) -> str:
        if s == "1":
            return ""
        bad = set(s) - self._alphabet
        if bad:
            raise InputError(f"letters {sorted(bad)} not in basis {self.letters}")
        return s

    def coerce(self, w: Union["Word", str]) -> str:
        """Validated, freely reduced string for a ``Word`` or raw string."""
        if isinstance(w, Word):
            if w.basis != self:
                raise InputError(f"word over {w.basis.letters} used with basis {self.letters}")
            return w.letters
        return free_reduce(self.validate(w))

    def word(self, s: Union["Word", str] = "") -> "Word":
        return Word(self, self.coerce(s))

    def __str__(self):
        return " ".join(self.letters)


@dataclass(frozen=True)
class Word:
    """A freely reduced word. Immutable; all operations return new values."""

    basis: Basis
    letters: str = ""

    def __post_init__(self):
        object.__setattr__(self, "letters", free_reduce(self.basis.validate(self.letters)))

    def __len__(self):
        return len(self.letters)

    def __str__(self):
        return self.letters or "1"

    def __mul__(self, other: "Word") -> "Word":
        return concat(self, other)

    def inverse(self) -> "Word":
        return invert(self)

    def is_identity(self) -> bool:
        return not self.letters


def _same_basis(*words: Word) -> Basis:
    basis = words[0].basis
    for w in words[1:]:
        if w.basis != basis:
            raise InputError(f"basis mismatch: {basis.letters} vs {w.basis.letters}")
    return basis


def reduce(basis: Basis, raw: Union[str, Iterable[str]]) -> Word:
    """Freely reduce a raw letter sequence. Unknown letters raise InputError."""
    return Word(basis, "".join(raw))


def concat(w1: Word, w2: Word) -> Word:
    basis = _same_basis(w1, w2)
    return Word(basis, concat_str(w1.letters, w2.letters))


def invert(w: Word) -> Word:
    return Word(w.basis, invert_str(w.letters))


def conjugate(w: Word, g: Word) -> Word:
    """``g w g^-1``."""
    basis = _same_basis(w, g)
    return Word(basis, concat_str(concat_str(g.letters, w.letters), invert_str(g.letters)))


def cyclic_reduce(w: Word) -> tuple[Word, Word]:
    core, conj = cyclic_reduce_str(w.letters)
    return Word(w.basis, core), Word(w.basis, conj)


def format_runs(s: str, sep: str = "") -> str:
    """Compress runs: ``"aaB"`` -> ``"a^2 B"`` style (``sep`` joins runs)."""
    if not s:
        return "1"
    parts = []
    i = 0
    while i < len(s):
        j = i
        while j < len(s) and s[j] == s[i]:
            j += 1
        k = j - i
        x = s[i]
        if x.isupper():
            parts.append(f"{x.lower()}^-{k}")
        else:
            parts.append(x if k == 1 else f"{x}^{k}")
        i = j
    return sep.join(parts)
