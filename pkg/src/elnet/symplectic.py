"""The representation of the electrical Lie algebra on R^{2n} and its group.

Generators: with ``a_1 = e_1``, ``a_i = e_{i-1} + e_i`` and ``b_i = e_i``,
``e_{2i-1}`` is the block matrix with ``a_i a_i^T`` upper right and
``e_{2i}`` has ``b_i b_i^T`` lower left. Every generator squares to zero, so
``u_i(a) = I + a e_i``.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .errors import (
    IndexOutOfRange,
    NonPositiveParameter,
    NotInTopCell,
    ResidueNotIdentity,
)
from .exact import Mat, ONE, ZERO, lie_bracket, rat
from .perms import Permutation, perm_of_word, staircase_letters
from .words import (
    GenWord,
    Letter,
    braid_move,
    commutation_normal_form,
    reduce_letters,
)


@lru_cache(maxsize=None)
def el_generators(n: int) -> tuple:
    """``(phi(e_1), ..., phi(e_2n))`` as 2n x 2n matrices."""
    if n < 1:
        raise IndexOutOfRange("n must be at least 1")
    size = 2 * n
    out = []
    for i in range(1, n + 1):
        a = [ZERO] * n
        a[i - 1] = ONE
        if i > 1:
            a[i - 2] = ONE
        upper = {(r, n + c): a[r] * a[c] for r in range(n) for c in range(n) if a[r] * a[c]}
        out.append(Mat.from_entries(size, upper))
        out.append(Mat.unit(size, n + i - 1, i - 1))
    return tuple(out)


def symplectic_form(n: int) -> Mat:
    """``J = [[0, I], [-I, 0]]``, the form preserved by the block convention
    ``A = -D^T``, ``B = B^T``, ``C = C^T``."""
    ident = Mat.identity(n)
    zero = Mat.zeros(n)
    return Mat.block([[zero, ident], [-ident, zero]])


def in_sp_algebra(x: Mat) -> bool:
    j = symplectic_form(x.rows // 2)
    return (x.T @ j + j @ x).is_zero()


def is_symplectic(m: Mat) -> bool:
    j = symplectic_form(m.rows // 2)
    return m.T @ j @ m == j


def _letters(word) -> Sequence[Letter]:
    return word.letters if isinstance(word, GenWord) else [(i, rat(a)) for i, a in word]


def sp_of_word(word: GenWord | Sequence[Letter], n: int | None = None) -> Mat:
    """Product of ``I + a_j phi(e_{i_j})`` from left to right."""
    if n is None:
        n = word.n
    gens = el_generators(n)
    out = Mat.identity(2 * n)
    for i, a in _letters(word):
        if not 1 <= i <= 2 * n:
            raise IndexOutOfRange(f"generator index {i} outside 1..{2 * n}")
        out = out + (out @ gens[i - 1]).scale(a)
    return out


def normalize_word(word: GenWord, check: bool = True) -> tuple[Permutation, GenWord]:
    """Reduced word with positive parameters and the same image in Sp_2n.

    Commuting letters end up sorted into the lexicographically smallest order.
    """
    n = word.n
    for i, a in word.letters:
        if not 1 <= i <= 2 * n:
            raise IndexOutOfRange(f"generator index {i} outside 1..{2 * n}")
        if a <= 0:
            raise NonPositiveParameter(f"u_{i} has non-positive parameter {a}")
    m = 2 * n + 1
    letters = commutation_normal_form(reduce_letters(word.letters, m))
    out = GenWord(n, letters)
    perm, reduced = perm_of_word(out.indices, m)
    if check:
        assert reduced, "normal form is not reduced"
        assert sp_of_word(out) == sp_of_word(word), "normal form changed the product"
    return perm, out


def staircase_word(n: int, params: Sequence) -> GenWord:
    """``[u_1][u_2 u_1]...[u_2n ... u_1]`` with the given parameters."""
    letters = staircase_letters(n)
    if len(params) != len(letters):
        raise IndexOutOfRange(f"staircase for n={n} takes {len(letters)} parameters")
    return GenWord(n, list(zip(letters, params)))


def _block_product(n: int, k: int, params: Sequence[Fraction]) -> Mat:
    return sp_of_word(list(zip(range(k, 0, -1), params)), n)


def _read_order(n: int, k: int) -> tuple[int, list[int]]:
    """Row and column sequence (both 1-based) that expose a block's parameters."""
    if k % 2:
        h = (k + 1) // 2
        row = h
        cols = []
        for step in range(k):
            cols.append(n + h - step // 2 if step % 2 == 0 else h - 1 - step // 2)
    else:
        h = k // 2
        row = n + h
        cols = []
        for step in range(k):
            cols.append(h - step // 2 if step % 2 == 0 else n + h - step // 2)
    return row, cols


def factorize_top_cell(m: Mat, n: int) -> list[Fraction]:
    """Recover the staircase parameters of ``m`` block by block, outermost first.

    Block k (letters k, k-1, ..., 1) is read off one row of the current matrix
    and each entry determines the next parameter through a linear equation.
    The block is then divided off on the right.
    """
    if m.shape != (2 * n, 2 * n):
        raise IndexOutOfRange(f"expected a {2 * n}x{2 * n} matrix")
    blocks: list[list[Fraction]] = []
    cur = m
    for k in range(2 * n, 0, -1):
        row, cols = _read_order(n, k)
        target = cur.row(row - 1)
        found: list[Fraction] = []
        for col in cols:
            pad = [ZERO] * (k - len(found) - 1)
            f0 = _block_product(n, k, found + [ZERO] + pad)[row - 1, col - 1]
            f1 = _block_product(n, k, found + [ONE] + pad)[row - 1, col - 1]
            slope = f1 - f0
            if slope == 0:
                raise NotInTopCell(
                    f"block {k}: pivot vanishes at entry ({row}, {col})"
                )
            a = (target[col - 1] - f0) / slope
            if a <= 0:
                raise NotInTopCell(f"block {k}: recovered parameter {a} is not positive")
            found.append(a)
        blocks.append(found)
        inverse = sp_of_word([(i, -a) for i, a in zip(range(1, k + 1), reversed(found))], n)
        cur = cur @ inverse
    if cur != Mat.identity(2 * n):
        raise ResidueNotIdentity("peeling every block did not leave the identity")
    return [a for block in reversed(blocks) for a in block]


def el_relation_failures(mats: Sequence[Mat]) -> list[tuple[int, int]]:
    """Ordered pairs (i, j), 1-based, violating the electrical Serre relations."""
    bad = []
    for i, x in enumerate(mats, start=1):
        for j, y in enumerate(mats, start=1):
            if i == j:
                continue
            if abs(i - j) > 1:
                ok = lie_bracket(x, y).is_zero()
            else:
                ok = lie_bracket(x, lie_bracket(x, y)) == x.scale(-2)
            if not ok:
                bad.append((i, j))
    return bad


def unipotent_of_word(word: Sequence[Letter], size: int) -> Mat:
    """Product of Chevalley elements ``I + t E_{i,i+1}`` in the unipotent
    upper-triangular group of the given size."""
    out = Mat.identity(size)
    for i, t in word:
        if not 1 <= i < size:
            raise IndexOutOfRange(f"Chevalley index {i} outside 1..{size - 1}")
        out = out @ (Mat.identity(size) + Mat.unit(size, i - 1, i).scale(rat(t)))
    return out
