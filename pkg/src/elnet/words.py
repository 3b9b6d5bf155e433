"""Generator words ``u_{i_1}(a_1) ... u_{i_l}(a_l)`` and their rewriting.

A word is a sequence of ``(index, parameter)`` letters. Rewriting uses only
the three group relations: merging ``u_i(a) u_i(b) = u_i(a+b)``, commuting
distant letters, and the (tau-deformed) braid move for adjacent ones.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import (
    IndexOutOfRange,
    NegativeParameter,
    ParseError,
    SingularDenominator,
)
from .exact import rat, rat_str
from .perms import final_letters, perm_of_word

Letter = tuple  # (index, Fraction)


@dataclass(frozen=True)
class GenWord:
    """Word over generators 1..2n+2 for networks with n+1 boundary vertices.

    Indices 2n+1 and 2n+2 (spike/edge at the last boundary vertex, wrapping
    round to 1) act on networks but are not generators of the Lie group.
    """

    n: int
    letters: tuple = ()
    unchecked: bool = False

    def __post_init__(self):
        letters = tuple((int(i), rat(a)) for i, a in self.letters)
        object.__setattr__(self, "letters", letters)
        if self.n < 0:
            raise IndexOutOfRange("n must be nonnegative")
        for i, a in letters:
            if not 1 <= i <= 2 * self.n + 2:
                raise IndexOutOfRange(f"generator index {i} outside 1..{2 * self.n + 2}")
            if a < 0 and not self.unchecked:
                raise NegativeParameter(f"parameter {rat_str(a)} of u_{i} is negative")

    @property
    def extended(self) -> bool:
        return any(i > 2 * self.n for i, _ in self.letters)

    @property
    def indices(self) -> list[int]:
        return [i for i, _ in self.letters]

    @property
    def params(self) -> list[Fraction]:
        return [a for _, a in self.letters]

    def __len__(self) -> int:
        return len(self.letters)

    def __str__(self) -> str:
        return format_word(self.letters)

    @classmethod
    def parse(cls, text: str, n: int, unchecked: bool = False) -> "GenWord":
        return cls(n, parse_letters(text), unchecked)


def parse_letters(text: str) -> list[Letter]:
    """``"3:1,4:2/3"`` -> ``[(3, 1), (4, 2/3)]``; the empty string is the empty word."""
    out = []
    text = text.strip()
    if not text:
        return out
    for tok in text.split(","):
        idx, sep, val = tok.partition(":")
        if not sep:
            raise ParseError(f"word token {tok!r} is not of the form i:t")
        try:
            i = int(idx)
        except ValueError:
            raise ParseError(f"word token {tok!r}: bad index") from None
        out.append((i, rat(val)))
    return out


def format_word(letters: Sequence[Letter]) -> str:
    return ",".join(f"{i}:{rat_str(a)}" for i, a in letters)


def braid_move(a, b, c, tau=1) -> tuple[Fraction, Fraction, Fraction]:
    """``u_i(a) u_j(b) u_i(c) = u_j(b') u_i(a') u_j(c')`` for ``|i-j| = 1``.

    Returns ``(b', a', c') = (bc/d, d, ab/d)`` with ``d = a + c + tau*a*b*c``.
    """
    a, b, c, tau = rat(a), rat(b), rat(c), rat(tau)
    d = a + c + tau * a * b * c
    if d == 0:
        raise SingularDenominator("a + c + tau*a*b*c vanishes")
    return b * c / d, d, a * b / d


def _perm(letters: Sequence[Letter], m: int):
    return perm_of_word([i for i, _ in letters], m)[0]


def end_with(letters: Sequence[Letter], i: int, m: int, tau=1) -> list[Letter]:
    """Rewrite a reduced word so that it ends in letter ``i``.

    ``i`` must be a right descent of the word's permutation in S_m. Only
    commutations and braid moves are used, so the product is unchanged.
    """
    letters = list(letters)
    if i not in final_letters(_perm(letters, m)):
        raise ValueError(f"letter {i} is not a right descent of {format_word(letters)}")
    j = letters[-1][0]
    if j == i:
        return letters
    head = end_with(letters[:-1], i, m, tau)
    if abs(i - j) > 1:
        return head[:-1] + [letters[-1], head[-1]]
    # both i and j are descents, so the word ends in the longest element of <s_i, s_j>
    head2 = end_with(head[:-1], j, m, tau)
    (_, x), (_, y), (_, z) = head2[-1], head[-1], letters[-1]
    y2, x2, z2 = braid_move(x, y, z, tau)
    return head2[:-1] + [(i, y2), (j, x2), (i, z2)]


def reduce_letters(letters: Sequence[Letter], m: int, tau=1) -> list[Letter]:
    """Rewrite into a reduced word of S_m with the same product.

    Zero parameters are dropped (``u_i(0)`` is the identity).
    """
    out: list[Letter] = []
    for i, a in letters:
        if a == 0:
            continue
        if i in final_letters(_perm(out, m)):
            out = end_with(out, i, m, tau)
            out[-1] = (i, out[-1][1] + a)
            if out[-1][1] == 0:
                out.pop()
        else:
            out.append((i, a))
    return out


def commutation_normal_form(letters: Sequence[Letter]) -> list[Letter]:
    """Lexicographically smallest rearrangement reachable by commuting distant letters."""
    rest = list(letters)
    out: list[Letter] = []
    while rest:
        best = None
        for p, (i, _) in enumerate(rest):
            if all(abs(i - j) > 1 for j, _ in rest[:p]):
                if best is None or i < rest[best][0]:
                    best = p
        out.append(rest.pop(best))
    return out
