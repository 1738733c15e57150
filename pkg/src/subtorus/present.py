"""Finite presentations of classified subgroups and their first Betti numbers.

A relator is a tuple of ``(generator name, +1 | -1)`` tokens, freely reduced.
Text form::

    < s, a | s a s^-1 = a^-1 >

Words in the text form are whitespace separated tokens ``name`` or
``name^k``; for single-letter generator names a compact token such as
``saSA`` (uppercase = inverse) is accepted as well.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .classify import Classification, Verdict, verify_witness
from .endo import iterate
from .errors import InputError
from .stallings import basis_of, from_words, image_graph, rank, read_labels
from .torus import MappingTorus, TorusWord, torus_inverse
from .words import STABLE_LETTER, Basis

Token = tuple[str, int]
Relator = tuple[Token, ...]
STABLE_NAME = "s"

_NAME = re.compile(r"^[A-Za-z][A-Za-z0-9_]*$")
_POWER = re.compile(r"^([A-Za-z][A-Za-z0-9_]*)\^(-?\d+)$")


def reduce_tokens(tokens: Sequence[Token]) -> Relator:
    out: list[Token] = []
    for name, e in tokens:
        if e not in (1, -1):
            raise InputError(f"token exponent must be +-1, got {e}")
        if out and out[-1] == (name, -e):
            out.pop()
        else:
            out.append((name, e))
    return tuple(out)


def invert_tokens(tokens: Sequence[Token]) -> Relator:
    return tuple((name, -e) for name, e in reversed(tokens))


def power_tokens(name: str, k: int) -> Relator:
    return ((name, 1 if k > 0 else -1),) * abs(k)


def format_tokens(tokens: Sequence[Token]) -> str:
    if not tokens:
        return "1"
    parts = []
    i = 0
    while i < len(tokens):
        j = i
        while j < len(tokens) and tokens[j] == tokens[i]:
            j += 1
        name, e = tokens[i]
        k = (j - i) * e
        parts.append(name if k == 1 else f"{name}^{k}")
        i = j
    return " ".join(parts)


@dataclass(frozen=True)
class Presentation:
    generators: tuple[str, ...]
    relators: tuple[Relator, ...]
    # optional (lhs, rhs) display form, one per relator
    equations: Optional[tuple[tuple[Relator, Relator], ...]] = None

    def __post_init__(self):
        gens = tuple(self.generators)
        if len(set(gens)) != len(gens):
            raise InputError(f"duplicate generator names in {gens}")
        for g in gens:
            if not _NAME.match(g):
                raise InputError(f"bad generator name {g!r}")
        known = set(gens)
        rels = tuple(reduce_tokens(r) for r in self.relators)
        for r in rels:
            for name, _ in r:
                if name not in known:
                    raise InputError(f"relator uses unknown generator {name!r}")
        object.__setattr__(self, "generators", gens)
        object.__setattr__(self, "relators", rels)
        if self.equations is not None:
            eqs = tuple((reduce_tokens(l), reduce_tokens(r)) for l, r in self.equations)
            if len(eqs) != len(rels):
                raise InputError("one equation per relator expected")
            object.__setattr__(self, "equations", eqs)

    @classmethod
    def from_equations(cls, generators, equations) -> "Presentation":
        rels = tuple(tuple(l) + invert_tokens(r) for l, r in equations)
        return cls(tuple(generators), rels, tuple(equations))

    @property
    def deficiency(self) -> int:
        return len(self.generators) - len(self.relators)

    def format(self) -> str:
        if self.equations is not None:
            rels = [f"{format_tokens(l)} = {format_tokens(r)}" for l, r in self.equations]
        else:
            rels = [format_tokens(r) for r in self.relators]
        body = ", ".join(self.generators)
        if rels:
            return f"< {body} | {', '.join(rels)} >"
        return f"< {body} | >"

    __str__ = format

    def to_json(self) -> dict:
        data = {
            "generators": list(self.generators),
            "relators": [format_tokens(r) for r in self.relators],
        }
        if self.equations is not None:
            data["equations"] = [[format_tokens(l), format_tokens(r)] for l, r in self.equations]
        return data

    @classmethod
    def from_json(cls, data: dict) -> "Presentation":
        gens = tuple(data["generators"])
        if data.get("equations"):
            eqs = [(parse_word(l, gens), parse_word(r, gens)) for l, r in data["equations"]]
            return cls.from_equations(gens, eqs)
        return cls(gens, tuple(parse_word(r, gens) for r in data["relators"]))


def parse_word(text: str, generators: Sequence[str]) -> Relator:
    """Parse a word over named generators (see module docstring)."""
    known = set(generators)
    single = {g for g in generators if len(g) == 1}
    tokens: list[Token] = []
    text = text.strip()
    if text in ("", "1"):
        return ()
    for tok in text.split():
        m = _POWER.match(tok)
        if m and m.group(1) in known:
            tokens.extend(power_tokens(m.group(1), int(m.group(2))))
        elif tok in known:
            tokens.append((tok, 1))
        elif all(c.lower() in single and not (c.isupper() and c in known) for c in tok):
            tokens.extend((c.lower(), 1 if c.islower() else -1) for c in tok)
        else:
            raise InputError(f"cannot parse token {tok!r} over generators {list(generators)}")
    return reduce_tokens(tokens)


def parse_presentation(text: str) -> Presentation:
    text = text.strip().replace("⟨", "<").replace("⟩", ">")
    if not (text.startswith("<") and text.endswith(">")) or "|" not in text:
        raise InputError("presentation must look like < gens | relators >")
    gens_part, rels_part = text[1:-1].split("|", 1)
    gens = tuple(g.strip() for g in gens_part.split(",") if g.strip())
    equations = []
    plain = []
    for chunk in rels_part.split(","):
        chunk = chunk.strip()
        if not chunk:
            continue
        if "=" in chunk:
            lhs, rhs = chunk.split("=", 1)
            equations.append((parse_word(lhs, gens), parse_word(rhs, gens)))
        else:
            plain.append(parse_word(chunk, gens))
    if equations and not plain:
        return Presentation.from_equations(gens, equations)
    rels = [tuple(l) + invert_tokens(r) for l, r in equations] + plain
    return Presentation(gens, tuple(rels))


# --- abelianization ---------------------------------------------------------------

def exponent_matrix(P: Presentation) -> list[list[int]]:
    col = {g: i for i, g in enumerate(P.generators)}
    rows = []
    for r in P.relators:
        row = [0] * len(P.generators)
        for name, e in r:
            row[col[name]] += e
        rows.append(row)
    return rows


def rational_rank(rows: Sequence[Sequence[int]]) -> int:
    m = [[Fraction(x) for x in row] for row in rows]
    rank_ = 0
    ncols = len(m[0]) if m else 0
    for c in range(ncols):
        pivot = next((i for i in range(rank_, len(m)) if m[i][c] != 0), None)
        if pivot is None:
            continue
        m[rank_], m[pivot] = m[pivot], m[rank_]
        for i in range(len(m)):
            if i != rank_ and m[i][c] != 0:
                f = m[i][c] / m[rank_][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[rank_])]
        rank_ += 1
    return rank_


def first_betti(P: Presentation) -> int:
    """Dimension of the rational first homology."""
    return len(P.generators) - rational_rank(exponent_matrix(P))


def magnus_check(P: Presentation, claimed_rank: int) -> bool:
    """Deficiency test used before invoking the free-group criterion."""
    return P.deficiency == claimed_rank


# --- presentations of classified subgroups --------------------------------------

def v_basis_names(loops: Sequence[str]) -> tuple[str, ...]:
    """Basis letters when every loop is a single distinct positive letter, else g1..gk."""
    if (all(len(w) == 1 and w.islower() for w in loops) and STABLE_NAME not in loops
            and len(set(loops)) == len(loops)):
        return tuple(loops)
    return tuple(f"g{i}" for i in range(1, len(loops) + 1))


def _signed_to_tokens(seq: Sequence[int], names: Sequence[str]) -> Relator:
    return reduce_tokens([(names[abs(i) - 1], 1 if i > 0 else -1) for i in seq])


def sub_torus_presentation(c: Classification, verify: bool = True) -> Presentation:
    """``< s, V-basis | s b s^-1 = psi(b) >`` for a sub-mapping torus verdict."""
    if c.verdict is not Verdict.SUB_MAPPING_TORUS:
        raise InputError(f"no sub-mapping torus presentation for a {c.verdict} verdict")
    if verify:
        verify_witness(c.group, c)
    names = v_basis_names(c.V_basis)
    eqs = []
    for name, img in zip(names, c.psi_images):
        lhs = ((STABLE_NAME, 1), (name, 1), (STABLE_NAME, -1))
        eqs.append((lhs, _signed_to_tokens(img, names)))
    return Presentation.from_equations((STABLE_NAME,) + names, eqs)


def sub_torus_embedding(c: Classification) -> dict[str, TorusWord]:
    """Images in G of the presentation generators (inside ``H`` itself)."""
    pair = c.pair
    n = pair.conj_exponent
    back = lambda w: "T" * n + w + "t" * n  # noqa: E731
    names = v_basis_names(c.V_basis)
    emb = {STABLE_NAME: back(pair.s_word)}
    emb.update({name: back(w) for name, w in zip(names, c.V_basis)})
    return emb


def ambient_presentation(G: MappingTorus) -> Presentation:
    """``< basis, t | t a t^-1 = phi(a) >``."""
    gens = G.basis.letters + (STABLE_LETTER,)
    eqs = []
    for x, img in zip(G.basis.letters, G.phi.images):
        lhs = ((STABLE_LETTER, 1), (x, 1), (STABLE_LETTER, -1))
        rhs = tuple((y.lower(), 1 if y.islower() else -1) for y in img)
        eqs.append((lhs, rhs))
    return Presentation.from_equations(gens, eqs)


def evaluate_relator(G: MappingTorus, relator: Sequence[Token], images: dict[str, TorusWord]) -> TorusWord:
    return "".join(images[name] if e > 0 else torus_inverse(images[name]) for name, e in relator)


def relators_hold(G: MappingTorus, P: Presentation, images: dict[str, TorusWord]) -> bool:
    return all(G.is_identity(evaluate_relator(G, r, images)) for r in P.relators)


_AUX_NAMES = "abcdefghijklmnopqrsuvwxyz"


@dataclass
class InvariantPairPresentation:
    presentation: Presentation
    embedding: dict      # generator name -> torus word in t^n H t^-n
    step: int            # X is the closure graph after this many steps


def invariant_pair_presentation(c: Classification, max_steps: int = 8) -> Optional[InvariantPairPresentation]:
    """The presentation ``< s, c_i, d | s c_i s^-1 = w_i >`` built from a closure pair.

    ``X`` is the closure graph after ``j`` steps, ``Z`` the one after ``j + 1``
    steps, chosen as the first ``j`` where ``rank Z = rank X + 1`` and the
    basis of ``X`` plus the newest closure element form a basis of ``Z``.
    Returns None when no such step is found within ``max_steps``.
    """
    if c.pair is None:
        return None
    G = c.group
    pair = c.pair
    psi = c.psi
    p = c.shift or 0
    basis = G.basis
    cur = iterate(psi, pair.v, p)
    for j in range(max_steps):
        gens = [iterate(psi, cur, i) for i in range(j + 1)]
        d = psi.apply_str(gens[-1])
        X = from_words(basis, gens)
        Z = from_words(basis, gens + [d])
        cs = list(basis_of(X).loops)
        k = len(cs)
        if rank(Z) != k + 1 or k + 1 > len(_AUX_NAMES):
            continue
        aux = _AUX_NAMES[: k + 1]
        g, labels, ok = image_graph(basis, cs + [d], names=aux)
        if not ok:
            continue
        names = tuple(f"c{i}" for i in range(1, k + 1)) + ("d1",)
        to_name = {a: names[i] for i, a in enumerate(aux)}
        eqs = []
        for i, ci in enumerate(cs):
            pre = read_labels(g, labels, psi.apply_str(ci))
            if pre is None:
                break
            rhs = reduce_tokens([(to_name[x.lower()], 1 if x.islower() else -1) for x in pre])
            lhs = ((STABLE_NAME, 1), (names[i], 1), (STABLE_NAME, -1))
            eqs.append((lhs, rhs))
        else:
            P = Presentation.from_equations((STABLE_NAME,) + names, eqs)
            emb = {STABLE_NAME: pair.s_word}
            emb.update({name: w for name, w in zip(names, cs + [d])})
            return InvariantPairPresentation(P, emb, j)
    return None


__all__ = [
    "Presentation", "Token", "Relator", "parse_presentation", "parse_word", "format_tokens",
    "reduce_tokens", "exponent_matrix", "rational_rank", "first_betti", "magnus_check",
    "sub_torus_presentation", "sub_torus_embedding", "ambient_presentation",
    "evaluate_relator", "relators_hold", "invariant_pair_presentation",
    "InvariantPairPresentation", "v_basis_names",
]
