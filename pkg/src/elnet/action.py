"""Boundary spikes and boundary edges as one-parameter operations.

Index ``2k-1`` adjoins a spike at boundary vertex k, index ``2k`` adjoins an
edge from k to k+1 (mod n+1). Words act on the left, so the rightmost letter
is applied first: ``u_{i_1}(a_1)...u_{i_l}(a_l) . L = u_{i_1}(a_1) . (... (u_{i_l}(a_l) . L))``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .errors import (
    DimensionMismatch,
    IndexOutOfRange,
    NegativeParameter,
    SingularDenominator,
    ValidationError,
)
from .exact import Mat, ONE, ZERO, rat, rat_str
from .network import Network
from .perms import final_letters, is_efficient, perm_of_word
from .words import GenWord, Letter, end_with, reduce_letters


def _check_param(t, unchecked: bool) -> Fraction:
    t = rat(t)
    if t < 0 and not unchecked:
        raise NegativeParameter(f"parameter {rat_str(t)} is negative")
    return t


def _check_vertex(net: Network, k: int) -> None:
    if not 1 <= k <= net.boundary_count:
        raise IndexOutOfRange(f"boundary vertex {k} outside 1..{net.boundary_count}")


def adjoin_spike(net: Network, k: int, t) -> Network:
    """New boundary vertex k hanging off the old one by an edge of weight 1/t."""
    _check_vertex(net, k)
    t = _check_param(t, False)
    if t == 0:
        return net
    old = net.fresh_id("b")
    rename = lambda x: old if x == k else x
    edges = [(rename(u), rename(v), w) for u, v, w in net.edges]
    edges.append((k, old, 1 / t))
    return net.replace(interior=list(net.interior) + [old], edges=edges)


def adjoin_edge(net: Network, k: int, t) -> Network:
    """Boundary edge of weight t from k to k+1 (indices mod n+1)."""
    _check_vertex(net, k)
    t = _check_param(t, False)
    if t == 0:
        return net
    nxt = k % net.boundary_count + 1
    return net.replace(edges=list(net.edges) + [(k, nxt, t)])


def apply_generator(net: Network, i: int, t) -> Network:
    """``v_i(t)`` on networks."""
    if not 1 <= i <= 2 * net.boundary_count:
        raise IndexOutOfRange(f"generator index {i} outside 1..{2 * net.boundary_count}")
    k = (i + 1) // 2
    return adjoin_spike(net, k, t) if i % 2 else adjoin_edge(net, k, t)


def act_network(net: Network, word: GenWord | Sequence[Letter]) -> Network:
    letters = word.letters if isinstance(word, GenWord) else word
    for i, t in reversed(letters):
        net = apply_generator(net, i, t)
    return net


def network_of_word(word: GenWord | Sequence[Letter], n: int) -> Network:
    """The generator word applied to the empty network with n+1 boundary vertices."""
    return act_network(Network.empty(n + 1), word)


def check_response(mat: Mat) -> None:
    if not mat.is_symmetric():
        raise ValidationError("response matrix must be square and symmetric")
    if any(s != 0 for s in mat.row_sums()):
        raise ValidationError("response matrix rows must sum to zero")


def act_entries(x: list, i: int, t) -> list:
    """Generator ``i`` at parameter ``t`` on a grid of field elements.

    Works with anything supporting + - * /, so tests can feed dual numbers.
    """
    size = len(x)
    k = (i + 1) // 2 - 1
    if i % 2:
        denom = t * x[k][k] + 1
        if denom == 0:
            raise SingularDenominator("t * x_kk + 1 vanishes")
        col = [x[r][k] for r in range(size)]
        return [
            [x[r][c] - t * col[r] * col[c] / denom for c in range(size)]
            for r in range(size)
        ]
    nxt = (k + 1) % size
    out = [list(r) for r in x]
    if nxt == k:
        return out
    for r, sr in ((k, 1), (nxt, -1)):
        for c, sc in ((k, 1), (nxt, -1)):
            out[r][c] = out[r][c] + sr * sc * t
    return out


def act_response(mat: Mat, i: int, t, unchecked: bool = False) -> Mat:
    """``u_i(t) . L``; ``unchecked`` admits negative t for algebraic experiments."""
    size = mat.rows
    if not mat.is_square:
        raise DimensionMismatch("response matrix must be square")
    if not 1 <= i <= 2 * size:
        raise IndexOutOfRange(f"generator index {i} outside 1..{2 * size}")
    t = _check_param(t, unchecked)
    return Mat(act_entries([list(r) for r in mat.data], i, t), size)


def act_word(mat: Mat, word: GenWord | Sequence[Letter], unchecked: bool = False) -> Mat:
    if isinstance(word, GenWord):
        if word.n != mat.rows - 1:
            raise DimensionMismatch(
                f"word is for n={word.n} but the matrix has size {mat.rows}"
            )
        letters = word.letters
        unchecked = unchecked or word.unchecked
    else:
        letters = word
    for i, t in reversed(letters):
        mat = act_response(mat, i, t, unchecked)
    return mat


def zero_response(n: int) -> Mat:
    return Mat.zeros(n + 1)


def series_at_zero(a, b) -> Fraction:
    """``u_{i+-1}(a) u_i(b) . L_0 = u_i(series_at_zero(a, b)) . L_0`` for even i.

    The spike of resistance a sits in series with the edge of conductance b.
    """
    a, b = rat(a), rat(b)
    return b / (ONE + a * b)


def reduce_at_zero(word: GenWord) -> GenWord:
    """A word of an efficient permutation with the same action on L_0.

    Alternates braid reduction with the two L_0 moves: a trailing odd letter
    acts trivially, and a trailing pair ``(i+-1) i`` with i even collapses to
    a single edge through the series rule.
    """
    n = word.n
    m = 2 * n + 1
    if word.extended:
        raise IndexOutOfRange("reduction at L_0 needs indices in 1..2n")
    letters = reduce_letters(word.letters, m)
    while True:
        w = perm_of_word([i for i, _ in letters], m)[0]
        if is_efficient(w):
            return GenWord(n, letters)
        ends = final_letters(w)
        odd = [i for i in ends if i % 2]
        if odd:
            letters = end_with(letters, odd[0], m)[:-1]
            continue
        for i in ends:
            rest = end_with(letters, i, m)
            head, (_, b) = rest[:-1], rest[-1]
            w_head = perm_of_word([j for j, _ in head], m)[0]
            j = next((j for j in (i - 1, i + 1) if j in final_letters(w_head)), None)
            if j is None:
                continue
            head = end_with(head, j, m)
            a = head[-1][1]
            letters = reduce_letters(head[:-1] + [(i, series_at_zero(a, b))], m)
            break
        else:
            raise AssertionError(f"no L_0 reduction applies to {w}")
