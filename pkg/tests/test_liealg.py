import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from elnet.action import act_entries
from elnet.errors import (
    ClosureBudgetExceeded,
    IndexOutOfRange,
    SingularDenominator,
    UnknownName,
    UnsupportedType,
    ValidationError,
)
from elnet.exact import Mat, ScaledMat, exp_nilpotent, lie_bracket
from elnet.liealg import (
    CARTAN_B2,
    CARTAN_C3,
    CARTAN_G2,
    CartanSpec,
    LieRep,
    Polynomial,
    VectorField,
    b2_braid,
    b2_closed_form,
    b2_u,
    b2_v,
    builtin_rep,
    cartan_a,
    check_electrical_serre,
    commutator_formula,
    derivation_field,
    ec3_adjoint,
    field_closure,
    field_relation_failures,
    folding_check_b2,
    lie_closure,
    lie_closure_dim,
    positive_root_count,
    positive_roots,
    stabilizer_codim,
    variables,
    vf_bracket,
)
from elnet.network import random_network, response

from conftest import pos_rats


def test_cartan_validation():
    with pytest.raises(ValidationError):
        CartanSpec([[2, 1], [-1, 2]])
    with pytest.raises(ValidationError):
        CartanSpec([[2, -1], [0, 2]])
    with pytest.raises(ValidationError):
        CartanSpec([[1, 0], [0, 2]])


def test_positive_root_counts():
    for m in range(1, 7):
        assert positive_root_count(cartan_a(m)) == m * (m + 1) // 2
    assert positive_root_count(cartan_a(4)) == 10
    assert positive_root_count(CARTAN_B2) == 4
    assert positive_root_count(CARTAN_G2) == 6
    assert positive_root_count(CARTAN_C3) == 9
    assert positive_roots(CARTAN_B2) == [(0, 1), (1, 0), (1, 1), (2, 1)]
    assert {(3, 1), (3, 2)} <= set(positive_roots(CARTAN_G2))
    with pytest.raises(UnsupportedType):
        positive_root_count(CartanSpec([[2, -2], [-2, 2]]))


def test_builtin_representations():
    eb2 = builtin_rep("eb2")
    assert len(eb2.gens) == 2 and eb2.gens[0].shape == (2, 2)
    e, f = builtin_rep("eg2").gens
    assert all(e[i, i] == 1 for i in range(4))
    assert e[0, 1] == e[1, 2] == e[0, 3] == 1
    assert f == Mat.unit(4, 3, 0)
    el = builtin_rep("el", 2)
    assert len(el.gens) == 4 and el.gens[0].shape == (4, 4)
    assert builtin_rep("ec3").gens[0].shape == (11, 11)
    with pytest.raises(UnknownName):
        builtin_rep("ed4")
    with pytest.raises(UnknownName):
        builtin_rep("el")


def test_relation_reports():
    for n in (1, 2, 3):
        assert all(c.ok for c in builtin_rep("el", n).relations())
    report = check_electrical_serre(builtin_rep("eb2").gens, CARTAN_B2)
    assert len(report) == 2 and all(c.ok for c in report)
    e, f = builtin_rep("eb2").gens
    broken = check_electrical_serre((e, f.scale(3)), CARTAN_B2)
    assert not all(c.ok for c in broken)
    with pytest.raises(ValidationError):
        LieRep("broken", (e, f.scale(3)), CARTAN_B2)
    assert LieRep("broken", (e, f.scale(3)), CARTAN_B2, validate=False).gens[1] == f.scale(3)


def test_ec3_adjoint_matrices_satisfy_the_relations():
    report = check_electrical_serre(ec3_adjoint(), CARTAN_C3)
    assert len(report) == 6
    assert all(c.ok for c in report)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_el_dimension(n):
    assert lie_closure_dim(builtin_rep("el", n)) == n * (2 * n + 1)


@pytest.mark.parametrize("name,dim", [("eb2", 4), ("eg2", 6), ("ec3", 9)])
def test_other_dimensions(name, dim):
    rep = builtin_rep(name)
    assert lie_closure_dim(rep) == dim == positive_root_count(rep.cartan)


def test_closure_budget():
    with pytest.raises(ClosureBudgetExceeded):
        lie_closure_dim(builtin_rep("el", 2), budget=6)
    # the eb2 pair closes up at dimension 4
    with pytest.raises(ClosureBudgetExceeded):
        lie_closure([Mat([[1, 1], [0, 1]]), Mat([[0, 0], [1, 0]])], budget=3)


def test_closure_is_closed():
    basis = lie_closure(builtin_rep("eg2").gens)
    from elnet.exact import span_dim

    for x in basis:
        for y in basis:
            assert span_dim(basis + [lie_bracket(x, y)]) == len(basis)


def test_folding_report():
    report = {c.name: c for c in folding_check_b2()}
    assert report["[E,[E,[E,F]]] = 0"].ok
    # the double bracket with F doubled back does not close up to -2F
    assert not report["[F,[F,E]] = -2F"].ok
    assert all(c.ok for c in report.values() if c.group != "relation")


def test_derivation_field_examples():
    one = Polynomial.const(1, 1)
    assert derivation_field(2, 1) == VectorField(1, {(1, 1): one, (2, 2): one, (1, 2): -one})
    x = lambda p, q: Polynomial.var(1, p, q)
    expected = VectorField(1, {(1, 1): -(x(1, 1) * x(1, 1)), (1, 2): -(x(1, 1) * x(1, 2)), (2, 2): -(x(1, 2) * x(1, 2))})
    assert derivation_field(1, 1) == expected
    zero = [0] * len(variables(3))
    for i in (1, 3, 5):
        assert all(v == 0 for v in derivation_field(i, 3).at(zero).values())
    with pytest.raises(IndexOutOfRange):
        derivation_field(5, 2)


def test_polynomial_symmetric_variables():
    assert Polynomial.var(2, 3, 1) == Polynomial.var(2, 1, 3)
    p = Polynomial.var(2, 1, 2) * Polynomial.var(2, 1, 2) + Polynomial.const(2, 3)
    assert p.evaluate([0, 2, 0, 0, 0, 0]) == 7
    assert (p - p).terms == {}


@pytest.mark.parametrize("n", [1, 2, 3])
def test_fields_satisfy_the_relations(n):
    fields = [derivation_field(i, n) for i in range(1, 2 * n + 1)]
    assert field_relation_failures(fields) == []
    for v in fields:
        assert vf_bracket(v, v).is_zero()
    assert vf_bracket(fields[0], vf_bracket(fields[0], fields[1])) == fields[0].scale(-2)


@pytest.mark.parametrize("n", [1, 2])
def test_field_closure_dimension(n):
    fields = [derivation_field(i, n) for i in range(1, 2 * n + 1)]
    assert len(field_closure(fields)) == n * (2 * n + 1)


def test_commutator_of_first_two_fields():
    n = 2
    x = lambda p, q: Polynomial.var(n, p, q)
    got = vf_bracket(derivation_field(2, n), derivation_field(1, n))
    expected = VectorField(
        n,
        {
            (1, 1): x(1, 1).scale(-2),
            (1, 2): x(1, 1) - x(1, 2),
            (1, 3): -x(1, 3),
            (2, 2): x(1, 2).scale(2),
            (2, 3): x(1, 3),
        },
    )
    assert got == expected
    # the candidate closed form has (x12 + x22) d22, which the bracket cannot produce
    assert commutator_formula(1, n) != got
    zero = [0] * len(variables(n))
    assert all(v == 0 for v in got.at(zero).values())


@pytest.mark.parametrize("n,codim", [(1, 1), (2, 3), (3, 6)])
def test_stabilizer_codim(n, codim):
    assert stabilizer_codim(n) == codim


class Dual:
    """a + b*eps with eps^2 = 0; exact first-order Taylor coefficients."""

    def __init__(self, a, b=0):
        self.a, self.b = Fraction(a), Fraction(b)

    @staticmethod
    def lift(x):
        return x if isinstance(x, Dual) else Dual(x)

    def __add__(self, o):
        o = Dual.lift(o)
        return Dual(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __sub__(self, o):
        o = Dual.lift(o)
        return Dual(self.a - o.a, self.b - o.b)

    def __rsub__(self, o):
        return Dual.lift(o) - self

    def __mul__(self, o):
        o = Dual.lift(o)
        return Dual(self.a * o.a, self.a * o.b + self.b * o.a)

    __rmul__ = __mul__

    def __truediv__(self, o):
        o = Dual.lift(o)
        return Dual(self.a / o.a, (self.b * o.a - self.a * o.b) / (o.a * o.a))

    def __rtruediv__(self, o):
        return Dual.lift(o) / self

    def __eq__(self, o):
        o = Dual.lift(o)
        return self.a == o.a and self.b == o.b


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6), st.data())
def test_fields_are_the_derivatives_of_the_action(seed, data):
    rng = random.Random(seed)
    net = random_network(rng, max_boundary=4, max_interior=3)
    while net.boundary_count < 2:
        net = random_network(rng, max_boundary=4, max_interior=3)
    mat = response(net)
    n = mat.rows - 1
    i = data.draw(st.integers(1, 2 * n))
    moved = act_entries([list(r) for r in mat.data], i, Dual(0, 1))
    point = [mat[p - 1, q - 1] for p, q in variables(n)]
    field = derivation_field(i, n).at(point)
    for p, q in variables(n):
        entry = Dual.lift(moved[p - 1][q - 1])
        assert entry.a == mat[p - 1, q - 1]
        assert entry.b == field.get((p, q), 0)


def test_b2_braid_example():
    assert b2_braid(1, 1, 1, 1) == (Fraction(1, 7), Fraction(7, 4), Fraction(16, 7), Fraction(1, 4))
    with pytest.raises(SingularDenominator):
        b2_braid(1, 0, 1, 0)


@settings(max_examples=100, deadline=None)
@given(pos_rats, pos_rats, pos_rats, pos_rats)
def test_b2_group_identity(t1, t2, t3, t4):
    p1, p2, p3, p4 = b2_braid(t1, t2, t3, t4)
    lhs = b2_u(t1) * b2_v(t2) * b2_u(t3) * b2_v(t4)
    rhs = b2_v(p1) * b2_u(p2) * b2_v(p3) * b2_u(p4)
    assert lhs == rhs == b2_closed_form(t1, t2, t3, t4)
    assert isinstance(lhs, ScaledMat) and lhs.exponent == t1 + t3


@settings(max_examples=100, deadline=None)
@given(pos_rats, pos_rats, pos_rats, pos_rats, st.sampled_from([0, 1, 2, Fraction(1, 3)]))
def test_b2_formula_properties(t1, t2, t3, t4, tau):
    p = b2_braid(t1, t2, t3, t4, tau)
    assert p[1] + p[3] == t1 + t3
    assert min(p) > 0


def chevalley_c2(t, which):
    short = Mat.from_entries(4, {(0, 1): 1, (2, 3): 1})
    long_ = Mat.unit(4, 1, 2)
    return exp_nilpotent(short if which == "u" else long_, t)


@settings(max_examples=60, deadline=None)
@given(pos_rats, pos_rats, pos_rats, pos_rats)
def test_b2_move_at_tau_zero_in_the_unipotent_group(t1, t2, t3, t4):
    u = lambda t: chevalley_c2(t, "u")
    v = lambda t: chevalley_c2(t, "v")
    lhs = u(t1) @ v(t2) @ u(t3) @ v(t4)
    p = b2_braid(t1, t2, t3, t4, tau=0)
    assert lhs == v(p[0]) @ u(p[1]) @ v(p[2]) @ u(p[3])
    q = b2_braid(t1, t2, t3, t4, tau=1)
    assert lhs != v(q[0]) @ u(q[1]) @ v(q[2]) @ u(q[3])
