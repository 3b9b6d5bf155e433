"""Electrical Lie algebras over Dynkin diagrams.

Relations for generators ``e_i``: ``ad(e_i)^{1-a_ij}(e_j) = 0`` when
``a_ij != -1`` and ``ad(e_i)^2(e_j) = -2 e_i`` when ``a_ij = -1``. Dimensions
are certified by bracket closure inside faithful matrix representations.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, NamedTuple, Sequence

from .errors import (
    ClosureBudgetExceeded,
    IndexOutOfRange,
    SingularDenominator,
    UnknownName,
    UnsupportedType,
    ValidationError,
)
from .exact import (
    EchelonBasis,
    Mat,
    ONE,
    ZERO,
    ScaledMat,
    ad_power,
    exp_nilpotent,
    lie_bracket,
    mat_vector,
    rat,
    scaled_exp,
)
from .symplectic import el_generators


# -- Cartan data ------------------------------------------------------------


@dataclass(frozen=True)
class CartanSpec:
    entries: tuple

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in r) for r in self.entries)
        object.__setattr__(self, "entries", rows)
        size = len(rows)
        for i, r in enumerate(rows):
            if len(r) != size:
                raise ValidationError("Cartan matrix must be square")
            if r[i] != 2:
                raise ValidationError("Cartan diagonal entries must equal 2")
            for j, x in enumerate(r):
                if i != j and (x > 0 or (x == 0) != (rows[j][i] == 0)):
                    raise ValidationError(f"bad off-diagonal Cartan entry at ({i}, {j})")

    @property
    def size(self) -> int:
        return len(self.entries)

    def __getitem__(self, key) -> int:
        i, j = key
        return self.entries[i][j]


def cartan_a(m: int) -> CartanSpec:
    return CartanSpec(
        [[2 if i == j else -1 if abs(i - j) == 1 else 0 for j in range(m)] for i in range(m)]
    )


# generator order (e, f) resp. (e, f, g) as in the relation lists of the built-ins
CARTAN_B2 = CartanSpec([[2, -2], [-1, 2]])
CARTAN_G2 = CartanSpec([[2, -3], [-1, 2]])
CARTAN_C3 = CartanSpec([[2, -2, 0], [-1, 2, -1], [0, -1, 2]])


def positive_roots(cartan: CartanSpec, limit: int = 500) -> list[tuple]:
    """Positive roots in simple-root coordinates, by closing the simple roots
    under simple reflections. Raises UnsupportedType past ``limit`` roots."""
    size = cartan.size
    simple = [tuple(1 if k == i else 0 for k in range(size)) for i in range(size)]
    seen = set(simple)
    todo = list(simple)
    while todo:
        beta = todo.pop()
        for i in range(size):
            pairing = sum(beta[j] * cartan[i, j] for j in range(size))
            image = tuple(b - pairing if k == i else b for k, b in enumerate(beta))
            if all(c >= 0 for c in image) and any(image) and image not in seen:
                seen.add(image)
                todo.append(image)
                if len(seen) > limit:
                    raise UnsupportedType("root system looks infinite")
    return sorted(seen, key=lambda r: (sum(r), r))


def positive_root_count(cartan: CartanSpec) -> int:
    return len(positive_roots(cartan))


# -- representations -----------------------------------------------------------


class RelationCheck(NamedTuple):
    i: int
    j: int
    relation: str
    ok: bool


def check_electrical_serre(gens: Sequence[Mat], cartan: CartanSpec) -> list[RelationCheck]:
    """One entry per ordered pair ``i != j`` (0-based generator indices)."""
    out = []
    for i, x in enumerate(gens):
        for j, y in enumerate(gens):
            if i == j:
                continue
            a = cartan[i, j]
            if a == -1:
                ok = ad_power(x, y, 2) == x.scale(-2)
                text = f"ad(e{i + 1})^2(e{j + 1}) = -2 e{i + 1}"
            else:
                ok = ad_power(x, y, 1 - a).is_zero()
                text = f"ad(e{i + 1})^{1 - a}(e{j + 1}) = 0"
            out.append(RelationCheck(i + 1, j + 1, text, ok))
    return out


@dataclass(frozen=True)
class LieRep:
    name: str
    gens: tuple
    cartan: CartanSpec
    validate: bool = field(default=True, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "gens", tuple(self.gens))
        if len(self.gens) != self.cartan.size:
            raise ValidationError("one generator per Cartan row is required")
        shapes = {g.shape for g in self.gens}
        if len(shapes) != 1 or not self.gens[0].is_square:
            raise ValidationError("generators must be square and of equal size")
        if self.validate:
            bad = [c for c in self.relations() if not c.ok]
            if bad:
                raise ValidationError(f"{self.name}: relation fails: {bad[0].relation}")

    def relations(self) -> list[RelationCheck]:
        return check_electrical_serre(self.gens, self.cartan)


def _sl2_pair() -> tuple[Mat, Mat]:
    return Mat([[1, 1], [0, 1]]), Mat([[0, 0], [1, 0]])


def _units(size: int, terms: Iterable[tuple[int, int, int]]) -> Mat:
    return Mat.from_entries(size, {(i - 1, j - 1): c for c, i, j in terms})


def ec3_adjoint() -> tuple[Mat, Mat, Mat]:
    """The 9-dimensional (adjoint) representation of ec_3, given in E_ij sums."""
    e = _units(9, [(1, 4, 2), (1, 5, 4), (1, 7, 6), (1, 8, 7), (1, 8, 9)])
    f = _units(
        9,
        [(2, 2, 4), (-2, 2, 6), (2, 4, 1), (2, 4, 5), (-1, 4, 7), (-2, 6, 3), (1, 6, 7), (1, 9, 8)],
    )
    g = _units(9, [(-1, 3, 6), (-1, 6, 2), (-1, 7, 4), (-1, 8, 5), (1, 8, 9)])
    return e, f, g


def builtin_rep(name: str, n: int | None = None) -> LieRep:
    """``"el"`` (with n), ``"eb2"``, ``"eg2"`` or ``"ec3"``."""
    if name == "el":
        if n is None or n < 1:
            raise UnknownName("'el' needs n >= 1")
        return LieRep(f"el_{2 * n}", el_generators(n), cartan_a(2 * n))
    if name == "eb2":
        return LieRep("eb2", _sl2_pair(), CARTAN_B2)
    if name == "eg2":
        e = Mat([[1, 1, 0, 1], [0, 1, 1, 0], [0, 0, 1, 0], [0, 0, 0, 1]])
        f = Mat.unit(4, 3, 0)
        return LieRep("eg2", (e, f), CARTAN_G2)
    if name == "ec3":
        big = ec3_adjoint()
        e2, f2 = _sl2_pair()
        small = (e2, f2, Mat([[0, 1], [0, 0]]))
        return LieRep("ec3", [Mat.direct_sum(b, s) for b, s in zip(big, small)], CARTAN_C3)
    raise UnknownName(f"unknown representation {name!r}")


def lie_closure(gens: Sequence[Mat], budget: int | None = None) -> list[Mat]:
    """A basis of the Lie algebra generated by ``gens``.

    New basis elements are bracketed against the generators only; that is
    enough because right-normed brackets of generators span.
    """
    basis = EchelonBasis()
    elems: list[Mat] = []
    todo: list[Mat] = []
    for g in gens:
        if basis.add(mat_vector(g)):
            elems.append(g)
            todo.append(g)
    while todo:
        x = todo.pop(0)
        for g in gens:
            y = lie_bracket(g, x)
            if basis.add(mat_vector(y)):
                elems.append(y)
                todo.append(y)
                if budget is not None and len(elems) > budget:
                    raise ClosureBudgetExceeded(
                        f"closure dimension exceeds the budget of {budget}"
                    )
    return elems


def lie_closure_dim(rep: LieRep, budget: int | None = None) -> int:
    if budget is None:
        budget = positive_root_count(rep.cartan)
    return len(lie_closure(rep.gens, budget))


# -- folding --------------------------------------------------------------------


class Check(NamedTuple):
    name: str
    ok: bool
    group: str  # "relation", "control" or "rescaled"


def folding_check_b2() -> list[Check]:
    """Fold the A_3 diagram inside the sp_4 representation of el_4.

    ``E = e_2`` and ``F = e_1 + e_3``. The "relation" entries are the B_2
    relations with E in the triple-bracket slot and F in the double-bracket
    slot. The computation gives ``ad(E)^2 F = -4E`` instead, so the pair only
    satisfies the eb_2 relations after rescaling to ``(F/2, E)``; those checks
    are reported under "rescaled".
    """
    g = el_generators(2)
    big_e = g[1]
    big_f = g[0] + g[2]
    twice = ad_power(big_e, big_f, 2)
    checks = [
        Check("[E,[E,[E,F]]] = 0", ad_power(big_e, big_f, 3).is_zero(), "relation"),
        Check("[F,[F,E]] = -2F", ad_power(big_f, big_e, 2) == big_f.scale(-2), "relation"),
        Check(
            "[E,[E,F]] is neither -2E nor 0",
            twice != big_e.scale(-2) and not twice.is_zero(),
            "control",
        ),
        Check(
            "F = e_1 alone: [E,[E,F]] = -2E",
            ad_power(big_e, g[0], 2) == big_e.scale(-2),
            "control",
        ),
        Check("[E,[E,F]] = -4E", twice == big_e.scale(-4), "rescaled"),
        Check("[F,[F,[F,E]]] = 0", ad_power(big_f, big_e, 3).is_zero(), "rescaled"),
    ]
    half = big_f.scale(Fraction(1, 2))
    for c in check_electrical_serre((half, big_e), CARTAN_B2):
        checks.append(Check(f"e=F/2, f=E: {c.relation}", c.ok, "rescaled"))
    checks.append(
        Check(
            "e=F/2, f=E generate a 4-dimensional algebra",
            len(lie_closure((half, big_e))) == 4,
            "rescaled",
        )
    )
    return checks


# -- polynomial vector fields ------------------------------------------------------


def variables(n: int) -> list[tuple[int, int]]:
    """``x_pq`` with ``1 <= p <= q <= n+1``."""
    return [(p, q) for p in range(1, n + 2) for q in range(p, n + 2)]


class Polynomial:
    """Sparse polynomial over Q in the variables of ``variables(n)``.

    Monomials are exponent tuples; no zero coefficient is ever stored.
    """

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: dict | None = None):
        self.n = n
        self.terms = {m: c for m, c in (terms or {}).items() if c}

    @classmethod
    def const(cls, n: int, c) -> "Polynomial":
        nv = len(variables(n))
        return cls(n, {(0,) * nv: rat(c)})

    @classmethod
    def var(cls, n: int, p: int, q: int) -> "Polynomial":
        vs = variables(n)
        idx = vs.index((min(p, q), max(p, q)))
        return cls(n, {tuple(1 if k == idx else 0 for k in range(len(vs))): ONE})

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.terms == other.terms

    def __add__(self, other: "Polynomial") -> "Polynomial":
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, ZERO) + c
        return Polynomial(self.n, out)

    def __neg__(self) -> "Polynomial":
        return Polynomial(self.n, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def scale(self, c) -> "Polynomial":
        c = rat(c)
        return Polynomial(self.n, {m: c * x for m, x in self.terms.items()})

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                out[m] = out.get(m, ZERO) + c1 * c2
        return Polynomial(self.n, out)

    def diff(self, idx: int) -> "Polynomial":
        out = {}
        for m, c in self.terms.items():
            if m[idx]:
                out[m[:idx] + (m[idx] - 1,) + m[idx + 1 :]] = c * m[idx]
        return Polynomial(self.n, out)

    def evaluate(self, point: Sequence) -> Fraction:
        total = ZERO
        for m, c in self.terms.items():
            term = c
            for x, e in zip(point, m):
                if e:
                    term *= x**e
            total += term
        return total

    def constant_term(self) -> Fraction:
        return self.terms.get((0,) * len(variables(self.n)), ZERO)

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        vs = variables(self.n)
        parts = []
        for m in sorted(self.terms, key=lambda m: (-sum(m), tuple(-e for e in m))):
            mono = "*".join(
                f"x{p}{q}" + (f"^{e}" if e > 1 else "") for (p, q), e in zip(vs, m) if e
            )
            parts.append(f"{self.terms[m]}" + (f"*{mono}" if mono else ""))
        return " + ".join(parts)


class VectorField:
    """``sum_v coeff[v] * d/dx_v`` over the symmetric variables."""

    __slots__ = ("n", "coeffs")

    def __init__(self, n: int, coeffs: dict | None = None):
        self.n = n
        self.coeffs = {v: c for v, c in (coeffs or {}).items() if c}

    def __eq__(self, other) -> bool:
        if not isinstance(other, VectorField):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __add__(self, other: "VectorField") -> "VectorField":
        out = dict(self.coeffs)
        for v, c in other.coeffs.items():
            out[v] = out[v] + c if v in out else c
        return VectorField(self.n, out)

    def scale(self, c) -> "VectorField":
        return VectorField(self.n, {v: p.scale(c) for v, p in self.coeffs.items()})

    def __sub__(self, other: "VectorField") -> "VectorField":
        return self + other.scale(-1)

    def is_zero(self) -> bool:
        return not self.coeffs

    def apply(self, poly: Polynomial) -> Polynomial:
        vs = variables(self.n)
        out = Polynomial(self.n)
        for v, c in self.coeffs.items():
            d = poly.diff(vs.index(v))
            if d:
                out = out + c * d
        return out

    def at(self, point: Sequence) -> dict:
        return {v: c.evaluate(point) for v, c in self.coeffs.items()}

    def vector(self) -> dict:
        return {(v, m): c for v, p in self.coeffs.items() for m, c in p.terms.items()}

    def __repr__(self) -> str:
        return " + ".join(f"({c})*d{p}{q}" for (p, q), c in sorted(self.coeffs.items())) or "0"


def derivation_field(i: int, n: int) -> VectorField:
    """Infinitesimal action of generator ``i`` on response-matrix entries.

    Even ``i = 2k``: ``d_kk + d_{k+1,k+1} - d_{k,k+1}``.
    Odd ``i = 2k-1``: ``-sum_{p<=q} x_kp x_kq d_pq``.
    """
    if not 1 <= i <= 2 * n:
        raise IndexOutOfRange(f"generator index {i} outside 1..{2 * n}")
    k = (i + 1) // 2
    if i % 2 == 0:
        one = Polynomial.const(n, 1)
        return VectorField(n, {(k, k): one, (k + 1, k + 1): one, (k, k + 1): one.scale(-1)})
    x = lambda p, q: Polynomial.var(n, p, q)
    return VectorField(n, {(p, q): -(x(k, p) * x(k, q)) for p, q in variables(n)})


def vf_bracket(v: VectorField, w: VectorField) -> VectorField:
    """``[V, W]`` with components ``V(W_u) - W(V_u)``."""
    out = {}
    for u in set(v.coeffs) | set(w.coeffs):
        vu = v.coeffs.get(u, Polynomial(v.n))
        wu = w.coeffs.get(u, Polynomial(v.n))
        out[u] = v.apply(wu) - w.apply(vu)
    return VectorField(v.n, out)


def commutator_formula(i: int, n: int) -> VectorField:
    """Candidate closed form for ``[e_2i-field, e_{2i-1}-field]``:
    ``-x_ii d_ii + x_{i,i+1} d_{i+1,i+1} + sum_p (x_{i+1,p} d_{i+1,p} - x_ip d_ip)``
    with ``d_pq = d_qp``.

    Kept for comparison with ``vf_bracket``, which disagrees with it: the
    true bracket has no ``x_{i+1,*}`` coefficients at all, since the even
    field is constant and the odd one only involves ``x_{i,*}``.
    """
    if not 1 <= i <= n:
        raise IndexOutOfRange(f"block index {i} outside 1..{n}")
    x = lambda p, q: Polynomial.var(n, p, q)
    key = lambda p, q: (min(p, q), max(p, q))
    out = VectorField(n, {(i, i): -x(i, i)})
    out = out + VectorField(n, {(i + 1, i + 1): x(i, i + 1)})
    for p in range(1, n + 2):
        out = out + VectorField(n, {key(i + 1, p): x(i + 1, p)})
        out = out + VectorField(n, {key(i, p): -x(i, p)})
    return out


def field_relation_failures(fields: Sequence[VectorField]) -> list[tuple[int, int]]:
    bad = []
    for i, x in enumerate(fields, start=1):
        for j, y in enumerate(fields, start=1):
            if i == j:
                continue
            if abs(i - j) > 1:
                ok = vf_bracket(x, y).is_zero()
            else:
                ok = vf_bracket(x, vf_bracket(x, y)) == x.scale(-2)
            if not ok:
                bad.append((i, j))
    return bad


def field_closure(fields: Sequence[VectorField], budget: int | None = None) -> list[VectorField]:
    basis = EchelonBasis()
    elems: list[VectorField] = []
    todo: list[VectorField] = []
    for f in fields:
        if basis.add(f.vector()):
            elems.append(f)
            todo.append(f)
    while todo:
        x = todo.pop(0)
        for g in fields:
            y = vf_bracket(g, x)
            if basis.add(y.vector()):
                elems.append(y)
                todo.append(y)
                if budget is not None and len(elems) > budget:
                    raise ClosureBudgetExceeded(
                        f"closure dimension exceeds the budget of {budget}"
                    )
    return elems


def stabilizer_codim(n: int) -> int:
    """Codimension of the stabilizer of the zero response matrix.

    Equals the rank of the evaluation-at-zero map on the closure of the 2n
    derivation fields.
    """
    if n < 1:
        raise IndexOutOfRange("n must be at least 1")
    fields = [derivation_field(i, n) for i in range(1, 2 * n + 1)]
    basis = field_closure(fields, budget=n * (2 * n + 1))
    zero = [ZERO] * len(variables(n))
    at_zero = EchelonBasis()
    for f in basis:
        at_zero.add({v: c for v, c in f.at(zero).items() if c})
    return len(at_zero)


# -- type B braid move ----------------------------------------------------------------


def b2_braid(t1, t2, t3, t4, tau=1) -> tuple[Fraction, Fraction, Fraction, Fraction]:
    """``u(t1) v(t2) u(t3) v(t4) = v(p1) u(p2) v(p3) u(p4)``."""
    t1, t2, t3, t4, tau = (rat(x) for x in (t1, t2, t3, t4, tau))
    pi1 = t1 * t2 + (t1 + t3) * t4 + tau * t1 * t2 * t3 * t4
    pi2 = t1**2 * t2 + (t1 + t3) ** 2 * t4 + tau * t1 * t2 * t3 * t4 * (t1 + t3)
    if pi1 == 0 or pi2 == 0:
        raise SingularDenominator("pi_1 or pi_2 vanishes")
    return t2 * t3**2 * t4 / pi2, pi2 / pi1, pi1**2 / pi2, t1 * t2 * t3 / pi1


def b2_u(t) -> ScaledMat:
    return scaled_exp(Mat([[1, 1], [0, 1]]), t)


def b2_v(t) -> ScaledMat:
    return ScaledMat(0, exp_nilpotent(Mat([[0, 0], [1, 0]]), t))


def b2_closed_form(t1, t2, t3, t4) -> ScaledMat:
    """Both sides of the tau = 1 identity, written out."""
    t1, t2, t3, t4 = (rat(x) for x in (t1, t2, t3, t4))
    body = Mat(
        [
            [1 + t3 * t4 + t1 * (t2 + t4 + t2 * t3 * t4), t1 + t3 + t1 * t2 * t3],
            [t2 + t4 + t2 * t3 * t4, 1 + t2 * t3],
        ]
    )
    return ScaledMat(t1 + t3, body)
