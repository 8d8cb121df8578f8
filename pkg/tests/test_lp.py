from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lp_oracle import enumerate_vertices
from qcx import kernels
from qcx.extremes import Sign, extreme_volume
from qcx.lp import CertificateError, LinearProgram, Relation, Sense, Status, solve_simplex
from qcx.lp.builders import (
    build_dual_lp,
    build_full_lp,
    build_lp,
    build_reduced_lp,
    build_symmetric_lp,
    transpose_dual,
)
from qcx.lp.certificate import certify_optimal, duality_gap
from qcx.lp.duality import (
    DualSolution,
    canonical_dual,
    check_complementary_slackness,
    check_strong_duality,
    dual_structure_holds,
    dual_from_reduced_result,
    reduced_point_from_profile,
)
from qcx.construction import build_profile

BACKENDS = [False] + ([True] if kernels.ck is not None else [])


@pytest.fixture(params=BACKENDS, ids=lambda c: "compiled" if c else "python")
def compiled(request):
    return request.param


def test_trivial_max(compiled):
    lp = LinearProgram(Sense.MAXIMIZE, [1], ["x"])
    lp.add([1], "<=", 1)
    res = solve_simplex(lp, compiled=compiled)
    assert res.status is Status.OPTIMAL and res.optimum == 1 and res.certified


def test_trivial_infeasible(compiled):
    lp = LinearProgram(Sense.MINIMIZE, [0], ["x"])
    lp.add([1], "<=", -1)
    res = solve_simplex(lp, compiled=compiled)
    assert res.status is Status.INFEASIBLE and res.certified


def test_unbounded(compiled):
    lp = LinearProgram(Sense.MAXIMIZE, [1, 1], ["x", "y"])
    lp.add([1, -1], "<=", 1)
    res = solve_simplex(lp, compiled=compiled)
    assert res.status is Status.UNBOUNDED and res.certified


def test_free_and_shifted_variables(compiled):
    # min x + 2y with x free, y in [-3, 5], x - y >= -1, x + y >= 2
    lp = LinearProgram(Sense.MINIMIZE, [1, 2], ["x", "y"], lower=[None, Fraction(-3)], upper=[None, Fraction(5)])
    lp.add({"x": 1, "y": -1}, ">=", -1)
    lp.add({"x": 1, "y": 1}, ">=", 2)
    res = solve_simplex(lp, compiled=compiled)
    assert res.optimum == enumerate_vertices(
        LinearProgram(Sense.MINIMIZE, [1, 2], ["x", "y"], list(lp.constraints), [Fraction(-100), Fraction(-3)], [Fraction(100), Fraction(5)])
    )
    assert lp.is_feasible(res.primal_solution)


def test_degenerate_cycling_example(compiled):
    # Beale's example cycles under the textbook rule; Bland's rule terminates
    lp = LinearProgram(
        Sense.MINIMIZE,
        [Fraction(-3, 4), 150, Fraction(-1, 50), 6],
        ["x1", "x2", "x3", "x4"],
    )
    lp.add([Fraction(1, 4), -60, Fraction(-1, 25), 9], "<=", 0)
    lp.add([Fraction(1, 2), -90, Fraction(-1, 50), 3], "<=", 0)
    lp.add([0, 0, 1, 0], "<=", 1)
    res = solve_simplex(lp, compiled=compiled)
    assert res.status is Status.OPTIMAL and res.optimum == Fraction(-1, 20)


small = st.integers(-4, 4)


@st.composite
def boxed_lps(draw):
    n = draw(st.integers(1, 3))
    m = draw(st.integers(1, 4))
    sense = draw(st.sampled_from(list(Sense)))
    obj = [draw(small) for _ in range(n)]
    lp = LinearProgram(sense, obj, [f"x{j}" for j in range(n)], upper=[Fraction(draw(st.integers(1, 6))) for _ in range(n)])
    for _ in range(m):
        lp.add([draw(small) for _ in range(n)], draw(st.sampled_from(["<=", ">=", "="])), draw(st.integers(-6, 6)))
    return lp


@settings(max_examples=150, deadline=None)
@given(boxed_lps())
def test_against_vertex_enumeration(lp):
    expected = enumerate_vertices(lp)
    for compiled in BACKENDS:
        res = solve_simplex(lp, compiled=compiled)
        assert res.certified
        if expected is None:
            assert res.status is Status.INFEASIBLE
        else:
            assert res.status is Status.OPTIMAL
            assert res.optimum == expected
            assert lp.is_feasible(res.primal_solution)
            assert duality_gap(lp, res.primal_solution, _max_dual(lp, res)) == 0


def _max_dual(lp, res):
    return [-y for y in res.dual_solution] if lp.sense is Sense.MINIMIZE else list(res.dual_solution)


def test_certificate_rejects_wrong_dual():
    lp = LinearProgram(Sense.MAXIMIZE, [1, 1], ["x", "y"])
    lp.add([1, 2], "<=", 4)
    lp.add([3, 1], "<=", 6)
    res = solve_simplex(lp)
    y = list(res.dual_solution)
    certify_optimal(lp, res.primal_solution, y)
    y[0] += Fraction(1, 7)
    with pytest.raises(CertificateError):
        certify_optimal(lp, res.primal_solution, y)


def test_backends_agree_on_full_lp():
    if kernels.ck is None:
        pytest.skip("compiled kernels not built")
    lp = build_full_lp(4, 2, Sign.MINUS)
    a = solve_simplex(lp, compiled=True)
    b = solve_simplex(lp, compiled=False)
    assert a.optimum == b.optimum == -1
    assert a.primal_solution == b.primal_solution
    assert a.pivot_count == b.pivot_count


def test_full_lp_size_guard():
    with pytest.raises(ValueError):
        build_full_lp(6, 2, "minus", d_max=5)


@pytest.mark.parametrize(
    "variant,d,k,sign,value",
    [
        ("symmetric", 4, 2, "minus", Fraction(-1)),
        ("symmetric", 3, 2, "minus", Fraction(-1, 2)),
        ("symmetric", 4, 3, "minus", Fraction(-1, 3)),
        ("reduced", 5, 3, "minus", Fraction(-2, 3)),
        ("reduced", 6, 2, "plus", Fraction(2)),
        ("reduced", 9, 2, "minus", Fraction(-35, 4)),
        ("dual", 5, 3, "plus", Fraction(1)),
        ("dual", 7, 2, "minus", Fraction(-5, 2)),
        ("full", 3, 2, "minus", Fraction(-1, 2)),
        ("full", 3, 2, "plus", Fraction(1)),
    ],
)
def test_lp_examples(variant, d, k, sign, value):
    res = solve_simplex(build_lp(variant, d, k, sign))
    assert res.certified and res.optimum == value


def test_reduced_solution_hits_reciprocal_gamma():
    lp = build_reduced_lp(4, 2, "minus")
    res = solve_simplex(lp)
    assert res.primal_solution[lp.index("delta3^(2)")] == Fraction(1, 2)


def test_dual_objective_identity():
    res = solve_simplex(build_dual_lp(4, 2, "minus"))
    assert res.optimum == -1
    assert DualSolution(*res.primal_solution).objective_magnitude(4) == 1


@pytest.mark.parametrize("d,k", [(4, 2), (5, 3), (9, 4), (10, 10)])
@pytest.mark.parametrize("sign", list(Sign))
def test_transpose_matches_printed_dual(d, k, sign):
    mech = transpose_dual(build_reduced_lp(d, k, sign))
    printed = build_dual_lp(d, k, sign)
    assert mech.sense is printed.sense
    assert mech.objective == printed.objective
    assert mech.variable_names == printed.variable_names
    rows = lambda lp: {c.name: (c.coeffs, c.relation, c.rhs) for c in lp.constraints}
    assert rows(mech) == rows(printed)


def test_symmetric_equals_full_small():
    for d in range(2, 5):
        for k in range(2, d + 1):
            for sign in Sign:
                a = solve_simplex(build_symmetric_lp(d, k, sign)).optimum
                b = solve_simplex(build_full_lp(d, k, sign)).optimum
                assert a == b == extreme_volume(d, k, sign).value


@pytest.mark.parametrize("d,k,sign", [(4, 2, "minus"), (10, 5, "minus"), (6, 2, "plus")])
def test_strong_duality(d, k, sign):
    p = solve_simplex(build_reduced_lp(d, k, sign))
    q = solve_simplex(build_dual_lp(d, k, sign))
    assert check_strong_duality(p, q)


def test_strong_duality_detects_perturbation():
    p = solve_simplex(build_reduced_lp(4, 2, "minus"))
    dual = build_dual_lp(4, 2, "minus")
    # tighten the row of the witness index, which binds at the optimum
    i = next(n for n, c in enumerate(dual.constraints) if c.name == "delta3^(2)")
    con = dual.constraints[i]
    dual.constraints[i] = type(con)(con.coeffs, con.relation, con.rhs + 1, con.name)
    q = solve_simplex(dual)
    assert not check_strong_duality(p, q)


def test_reduced_multipliers_solve_the_dual():
    for d in range(3, 9):
        for k in range(2, d):
            for sign in Sign:
                lp = build_reduced_lp(d, k, sign)
                res = solve_simplex(lp)
                y = dual_from_reduced_result(lp, res)
                dual = build_dual_lp(d, k, sign)
                assert dual.is_feasible(y.as_list())
                assert dual.objective_value(y.as_list()) == res.optimum


@pytest.mark.parametrize("d,k,sign", [(4, 2, "minus"), (6, 3, "plus"), (8, 8, "plus"), (9, 2, "minus")])
def test_complementary_slackness(d, k, sign):
    p = build_profile(d, k, sign)
    lp = build_reduced_lp(d, k, sign)
    x = reduced_point_from_profile(p)
    rep = check_complementary_slackness(lp, x, canonical_dual(d, k, sign))
    assert rep.passed
    assert all(c.lhs(x) == c.rhs for c in lp.constraints)


def test_complementary_slackness_plus_with_zero_edge():
    p = build_profile(8, 8, "plus")
    assert p.a == 0 and p.i0 == 8
    lp = build_reduced_lp(8, 8, "plus")
    x = reduced_point_from_profile(p)
    assert lp.constraints[2].lhs(x) == 0  # the beta row


def test_complementary_slackness_planted_violation():
    p = build_profile(5, 2, "minus")
    lp = build_reduced_lp(5, 2, "minus")
    x = reduced_point_from_profile(p)
    x[lp.index("b")] = Fraction(1, 2)  # leaves slack in a row whose multiplier is positive
    rep = check_complementary_slackness(lp, x, canonical_dual(5, 2, "minus"))
    assert not rep.passed
    assert any(v.constraint == "row-slackness" for v in rep.violations)


@pytest.mark.parametrize("d,k,sign", [(4, 2, "minus"), (7, 3, "plus"), (10, 4, "minus")])
def test_dual_structure(d, k, sign):
    res = dual_structure_holds(d, k, sign)
    assert res["restricted_optimum_unchanged"] and res["magnitude_matches"]


def test_lp_result_json():
    lp = build_symmetric_lp(4, 2, "minus")
    js = solve_simplex(lp).to_json(lp)
    assert js["status"] == "optimal" and js["optimum"] == "-1" and js["certified"] is True
    assert set(js["primal"]) == set(lp.variable_names)
