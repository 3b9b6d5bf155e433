"""Seeded verification suites behind ``elnet verify``.

Each suite returns a list of ``Line`` records; the report is fully
determined by the options, so two runs with the same seed print the same
bytes.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, NamedTuple

from .errors import NotInTopCell, UnknownName, ValidationError
from .exact import Mat, rat_str
from .liealg import (
    b2_braid,
    b2_closed_form,
    b2_u,
    b2_v,
    builtin_rep,
    lie_closure_dim,
    positive_root_count,
    stabilizer_codim,
)
from .network import random_network, random_rat, response
from .action import act_response, apply_generator, act_word
from .perms import brute_force_efficient, catalan, enumerate_efficient, staircase_letters
from .symplectic import (
    el_relation_failures,
    el_generators,
    factorize_top_cell,
    sp_of_word,
    staircase_word,
    unipotent_of_word,
)
from .words import braid_move


class Line(NamedTuple):
    text: str
    ok: bool

    def render(self) -> str:
        return f"{self.text} {'PASS' if self.ok else 'FAIL'}"


@dataclass
class Options:
    seed: int = 0
    trials: int | None = None
    tau: Fraction | None = None
    n: int | None = None


def _random_symmetric_response(rng: random.Random, size: int) -> Mat:
    """Zero-row-sum symmetric matrix with positive off-diagonal conductances."""
    entries = {}
    for i in range(size):
        for j in range(i + 1, size):
            w = random_rat(rng)
            entries[i, j] = entries[j, i] = -w
    for i in range(size):
        entries[i, i] = -sum(entries[i, j] for j in range(size) if j != i)
    return Mat.from_entries(size, entries)


def suite_relations(opts: Options) -> list[Line]:
    top = opts.n or 4
    out = []
    for n in range(1, top + 1):
        bad = el_relation_failures(el_generators(n))
        out.append(Line(f"n={n} pairs={2 * n * (2 * n - 1)} failures={len(bad)}", not bad))
    return out


def suite_braid(opts: Options) -> list[Line]:
    rng = random.Random(opts.seed)
    trials = opts.trials or 100
    tau = Fraction(1) if opts.tau is None else opts.tau
    n = opts.n or 2
    involution = matrix = response_fail = 0
    for _ in range(trials):
        a, b, c = (random_rat(rng) for _ in range(3))
        b2, a2, c2 = braid_move(a, b, c, tau)
        if braid_move(b2, a2, c2, tau) != (a, b, c):
            involution += 1
        i = rng.randint(1, 2 * n - 1)
        j = i + 1
        if rng.random() < 0.5:
            i, j = j, i
        lhs_word = [(i, a), (j, b), (i, c)]
        rhs_word = [(j, b2), (i, a2), (j, c2)]
        if tau == 1:
            if sp_of_word(lhs_word, n) != sp_of_word(rhs_word, n):
                matrix += 1
            start = _random_symmetric_response(rng, n + 1)
            if act_word(start, lhs_word) != act_word(start, rhs_word):
                response_fail += 1
        elif tau == 0:
            k = 1 if i < j else 2
            lhs = unipotent_of_word([(k, a), (3 - k, b), (k, c)], 3)
            rhs = unipotent_of_word([(3 - k, b2), (k, a2), (3 - k, c2)], 3)
            if lhs != rhs:
                matrix += 1
    out = [Line(f"tau={rat_str(tau)} involution trials={trials} failures={involution}", not involution)]
    if tau == 1:
        out.append(Line(f"tau=1 symplectic products trials={trials} failures={matrix}", not matrix))
        out.append(Line(f"tau=1 response action trials={trials} failures={response_fail}", not response_fail))
    elif tau == 0:
        out.append(Line(f"tau=0 unipotent products trials={trials} failures={matrix}", not matrix))
    return out


def suite_dims(opts: Options) -> list[Line]:
    reps = [builtin_rep("el", n) for n in range(1, (opts.n or 2) + 1)]
    reps += [builtin_rep(name) for name in ("eb2", "eg2", "ec3")]
    out = []
    for rep in reps:
        dim = lie_closure_dim(rep)
        roots = positive_root_count(rep.cartan)
        out.append(Line(f"{rep.name} dim={dim} positive_roots={roots}", dim == roots))
    return out


def suite_stabilizer(opts: Options) -> list[Line]:
    n = opts.n or 2
    codim = stabilizer_codim(n)
    expected = n * (n + 1) // 2
    return [Line(f"n={n} codim={codim} expected={expected}", codim == expected)]


def suite_b2(opts: Options) -> list[Line]:
    rng = random.Random(opts.seed)
    trials = opts.trials or 100
    taus = [Fraction(0), Fraction(1), Fraction(2)] if opts.tau is None else [opts.tau]
    group = 0
    formula = {tau: 0 for tau in taus}
    for _ in range(trials):
        ts = [random_rat(rng) for _ in range(4)]
        p = b2_braid(*ts)
        lhs = b2_u(ts[0]) * b2_v(ts[1]) * b2_u(ts[2]) * b2_v(ts[3])
        rhs = b2_v(p[0]) * b2_u(p[1]) * b2_v(p[2]) * b2_u(p[3])
        closed = b2_closed_form(*ts)
        if not (lhs == rhs == closed):
            group += 1
        for tau in taus:
            q = b2_braid(*ts, tau=tau)
            if q[1] + q[3] != ts[0] + ts[2] or min(q) <= 0:
                formula[tau] += 1
    out = [Line(f"tau=1 group identity trials={trials} failures={group}", not group)]
    for tau in taus:
        out.append(
            Line(
                f"tau={rat_str(tau)} p2+p4=t1+t3 and positivity trials={trials} failures={formula[tau]}",
                not formula[tau],
            )
        )
    return out


def suite_action(opts: Options) -> list[Line]:
    rng = random.Random(opts.seed)
    trials = opts.trials or 50
    checks = bad = 0
    for _ in range(trials):
        net = random_network(rng)
        base = response(net)
        for i in range(1, 2 * net.boundary_count + 1):
            t = random_rat(rng)
            checks += 1
            if response(apply_generator(net, i, t)) != act_response(base, i, t):
                bad += 1
    return [Line(f"networks={trials} checks={checks} failures={bad}", not bad)]


def suite_cells(opts: Options) -> list[Line]:
    rng = random.Random(opts.seed)
    trials = opts.trials or 20
    ns = [opts.n] if opts.n else [1, 2, 3]
    out = []
    for n in ns:
        size = len(staircase_letters(n))
        bad = 0
        for _ in range(trials):
            params = [random_rat(rng) for _ in range(size)]
            got = factorize_top_cell(sp_of_word(staircase_word(n, params)), n)
            if got != params:
                bad += 1
        out.append(Line(f"n={n} round trips={trials} failures={bad}", not bad))
    n = ns[-1] if opts.n else 2
    size = len(staircase_letters(n))
    refused = 0
    for k in range(size):
        params = [random_rat(rng) for _ in range(size)]
        params[k] = Fraction(0)
        try:
            factorize_top_cell(sp_of_word(staircase_word(n, params)), n)
        except NotInTopCell:
            refused += 1
    out.append(Line(f"n={n} one zero parameter refused={refused}/{size}", refused == size))
    return out


def suite_efficient(opts: Options) -> list[Line]:
    n = 3 if opts.n is None else opts.n
    if n <= 4:
        count = len(brute_force_efficient(n))
    else:
        count = len(enumerate_efficient(n))
    expected = catalan(n + 1)
    return [Line(f"count={count} expected={expected}", count == expected)]


SUITES: dict[str, Callable[[Options], list[Line]]] = {
    "relations": suite_relations,
    "braid": suite_braid,
    "dims": suite_dims,
    "stabilizer": suite_stabilizer,
    "b2": suite_b2,
    "action": suite_action,
    "cells": suite_cells,
    "efficient": suite_efficient,
}


def run_suite(name: str, opts: Options | None = None) -> list[Line]:
    try:
        suite = SUITES[name]
    except KeyError:
        raise UnknownName(f"unknown suite {name!r}; choose from {', '.join(SUITES)}") from None
    opts = opts or Options()
    if opts.n is not None and opts.n < 0:
        raise ValidationError("-n must be nonnegative")
    return suite(opts)
