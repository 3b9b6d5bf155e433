"""Permutations of S_m in one-line notation, reduced words, efficient permutations.

A word ``i_1 ... i_l`` evaluates to the composite ``s_{i_1} o ... o s_{i_l}``:
start from the identity and swap *positions* i and i+1 letter by letter.
So ``s5 s3 s6 s4 s2`` is ``(1,4,2,6,3,7,5)``, an efficient permutation.
The last letter of a reduced word is a right descent ``w(i) > w(i+1)``.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations, permutations
from math import comb
from typing import Iterator, Sequence

from .errors import EvenSize, IndexOutOfRange

Permutation = tuple


def identity(m: int) -> Permutation:
    return tuple(range(1, m + 1))


def _swap_positions(w: Sequence[int], i: int) -> Permutation:
    out = list(w)
    out[i - 1], out[i] = out[i], out[i - 1]
    return tuple(out)


def inverse(w: Sequence[int]) -> Permutation:
    out = [0] * len(w)
    for p, x in enumerate(w, start=1):
        out[x - 1] = p
    return tuple(out)


def inversions(w: Sequence[int]) -> frozenset:
    """Position pairs ``(p, q)``, 1-based, with ``p < q`` and ``w(p) > w(q)``."""
    return frozenset(
        (p + 1, q + 1)
        for p in range(len(w))
        for q in range(p + 1, len(w))
        if w[p] > w[q]
    )


def length(w: Sequence[int]) -> int:
    return len(inversions(w))


def perm_of_word(word: Sequence[int], m: int) -> tuple[Permutation, bool]:
    w = identity(m)
    for i in word:
        if not 1 <= i < m:
            raise IndexOutOfRange(f"letter {i} outside 1..{m - 1}")
        w = _swap_positions(w, i)
    return w, length(w) == len(word)


def final_letters(w: Sequence[int]) -> list[int]:
    """Right descents: the letters that can end a reduced word of ``w``."""
    return [i for i in range(1, len(w)) if w[i - 1] > w[i]]


def strip_last(w: Sequence[int], i: int) -> Permutation:
    """``w s_i``; removes the final letter ``i`` when it is a right descent."""
    return _swap_positions(w, i)


def reduced_word(w: Sequence[int]) -> list[int]:
    """A reduced word of ``w``; at each step the smallest possible final letter."""
    w = tuple(w)
    out: list[int] = []
    while True:
        ends = final_letters(w)
        if not ends:
            return out[::-1]
        out.append(ends[0])
        w = strip_last(w, ends[0])


def all_reduced_words(w: Sequence[int]) -> Iterator[tuple]:
    """Every reduced word of ``w``. Only sensible for small lengths."""
    w = tuple(w)
    ends = final_letters(w)
    if not ends:
        yield ()
        return
    for i in ends:
        for head in all_reduced_words(strip_last(w, i)):
            yield head + (i,)


def left_weak_leq(w: Sequence[int], v: Sequence[int]) -> bool:
    return inversions(w) <= inversions(v)


def is_efficient(w: Sequence[int]) -> bool:
    m = len(w)
    if m % 2 == 0:
        raise EvenSize(f"efficiency is defined on S_(2n+1); got size {m}")
    odd = w[0::2]
    even = w[1::2]
    return (
        all(a < b for a, b in zip(odd, odd[1:]))
        and all(a < b for a, b in zip(even, even[1:]))
        and all(w[2 * k] < w[2 * k + 1] for k in range(len(even)))
    )


def enumerate_efficient(n: int) -> list[Permutation]:
    """All efficient permutations of S_{2n+1}, in lexicographic order.

    Odd positions carry an increasing (n+1)-subset of values, even positions
    the complement in increasing order; only the pairwise condition is left.
    """
    m = 2 * n + 1
    out = []
    for odd in combinations(range(1, m + 1), n + 1):
        even = sorted(set(range(1, m + 1)) - set(odd))
        if all(odd[k] < even[k] for k in range(n)):
            w = [0] * m
            w[0::2] = odd
            w[1::2] = even
            out.append(tuple(w))
    return sorted(out)


def brute_force_efficient(n: int) -> list[Permutation]:
    return [w for w in permutations(range(1, 2 * n + 2)) if is_efficient(w)]


def catalan(k: int) -> int:
    return comb(2 * k, k) // (k + 1)


def max_efficient(n: int) -> Permutation:
    """``1 (n+2) 2 (n+3) ... n (2n+1) (n+1)``, the top of the efficient set."""
    w: list[int] = []
    for k in range(1, n + 1):
        w += [k, n + 1 + k]
    return tuple(w + [n + 1])


def max_efficient_word(n: int) -> list[int]:
    """``(n+1) ... (4 6 .. 2n-2)(3 5 .. 2n-1)(2 4 .. 2n)``."""
    out: list[int] = []
    for g in range(n - 1, -1, -1):
        out += list(range(2 + g, 2 * n - g + 1, 2))
    return out


def staircase_letters(n: int) -> list[int]:
    """``[1][2 1][3 2 1]...[2n ... 1]``, a reduced word of the longest element of S_{2n+1}."""
    return [i for k in range(1, 2 * n + 1) for i in range(k, 0, -1)]


def _reduction_steps(w: Permutation) -> list[Permutation]:
    steps = []
    ends = final_letters(w)
    for i in ends:
        if i % 2 == 1:
            steps.append(strip_last(w, i))
    for i in ends:
        if i % 2 == 0:
            rest = strip_last(w, i)
            for j in (i - 1, i + 1):
                if j in final_letters(rest):
                    # ... j i  ->  ... i, which merges into v when v already ends in i
                    v = strip_last(rest, j)
                    steps.append(v if i in final_letters(v) else _swap_positions(v, i))
    return steps


def canonical_efficient(w: Sequence[int]) -> Permutation:
    """The efficient ``v`` whose L_0-orbit image equals that of ``w``.

    Repeatedly drops a final odd letter, or turns a final pair ``(i+-1) i``
    with ``i`` even into ``i``; the first available step is taken.
    """
    w = tuple(w)
    if len(w) % 2 == 0:
        raise EvenSize(f"efficiency is defined on S_(2n+1); got size {len(w)}")
    while not is_efficient(w):
        steps = _reduction_steps(w)
        if not steps:
            raise AssertionError(f"no reduction step applies to non-efficient {w}")
        w = steps[0]
    return w


def canonical_efficient_all(w: Sequence[int]) -> frozenset:
    """Every efficient permutation reachable by any sequence of reduction steps."""
    return _reachable(tuple(w))


@lru_cache(maxsize=None)
def _reachable(w: Permutation) -> frozenset:
    if is_efficient(w):
        return frozenset([w])
    out: frozenset = frozenset()
    for nxt in _reduction_steps(w):
        out |= _reachable(nxt)
    return out
