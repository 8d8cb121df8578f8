from collections import Counter
from fractions import Fraction as F
from itertools import product

import pytest

from qcx.construction import SymmetricVertexProfile, build_profile, density_field
from qcx.extremes import Sign
from qcx.verify import (
    FeasibilityReport,
    check_k_increasing_extension,
    check_quasi_copula_axioms,
    check_symmetric_feasibility,
    difference_closed_form,
    difference_triangle,
    enumerate_k_faces,
    face_volume,
    frechet_bounds,
    grid_values,
)


def _trivial(d):
    return SymmetricVertexProfile(d, d, Sign.PLUS, F(0), tuple([F(0)] * d + [F(1)]), d, ())


def test_difference_triangle_example():
    tri = difference_triangle([0, 0, 0, F(1, 2), 1], 2)
    assert [tri.delta[2, i] for i in (2, 3, 4)] == [0, F(1, 2), 0]


def test_difference_triangle_edge_cases():
    tri = difference_triangle([0] * 6 + [1], 6)
    assert all(tri.delta[j, 6] == 1 for j in range(1, 7))
    const = difference_triangle([F(1, 3)] * 5, 4)
    assert all(v == 0 for v in const.delta.values())


def test_difference_closed_form_matches_recursion():
    q = [F(i * i, 7) - F(i, 3) for i in range(9)]
    tri = difference_triangle(q, 8)
    for (j, i), v in tri.delta.items():
        assert difference_closed_form(q, j, i) == v


def test_frechet_bounds():
    assert frechet_bounds([1, 1, 1]) == (1, 1)
    assert frechet_bounds([0, F(1, 2)]) == (0, 0)
    assert frechet_bounds([F(1, 2), 1, 1, 1]) == (F(1, 2), F(1, 2))


def test_symmetric_feasibility_passes():
    assert check_symmetric_feasibility(build_profile(4, 2, "minus")).passed
    assert check_symmetric_feasibility(_trivial(5)).passed


def test_symmetric_feasibility_edge_override():
    # a = alpha/gamma instead of beta/gamma breaks the Lipschitz row at i = 5
    p = build_profile(5, 3, "minus").replace(a=F(2, 3))
    rep = check_symmetric_feasibility(p)
    assert not rep.passed
    lip = [v for v in rep.violations if v.constraint == "Lipschitz"]
    assert [(v.index, v.lhs, v.rhs) for v in lip] == [((5,), F(2, 3), F(1, 3))]


def test_symmetric_feasibility_non_monotone():
    p = build_profile(4, 2, "minus").replace(q=(F(0), F(0), F(1, 2), F(1, 4), F(1)))
    rep = check_symmetric_feasibility(p)
    assert any(v.constraint == "increasing" for v in rep.violations)


@pytest.mark.parametrize("d,j,expected", [(2, 1, 16), (3, 2, 48), (3, 3, 8)])
def test_face_counts(d, j, expected):
    assert sum(1 for _ in enumerate_k_faces(d, F(1, 2), j)) == expected


def test_face_volume_examples():
    trivial = density_field(_trivial(3))
    top = [f for f in enumerate_k_faces(3, F(0), 3) if f.parent_subbox == (1, 1, 1)]
    assert [face_volume(trivial, f) for f in top] == [1]
    f = density_field(build_profile(4, 2, "minus"))
    top = [face for face in enumerate_k_faces(4, f.a, 4) if face.parent_subbox == (1, 1, 1, 1)]
    assert face_volume(f, top[0]) == -1
    on_boundary = [
        face for face in enumerate_k_faces(4, f.a, 2) if face.parent_subbox[0] == 0 and 0 not in face.free_axes and face.base_vertex[0] == 0
    ]
    assert on_boundary and all(face_volume(f, face) == 0 for face in on_boundary)


def _slow_check(f, k):
    """Independent checker: per-subbox face enumeration over exact grid values, no kernel."""
    values = grid_values(f)
    bad = Counter()
    for j in range(1, k + 1):
        seen = set()
        for face in enumerate_k_faces(f.d, f.a, j):
            corners = tuple(sorted(face.grid_vertices()))
            if corners in seen:
                continue
            seen.add(corners)
            if f.a == 0 and any(1 in g for g, _ in corners):
                continue
            if sum(sign * values[g] for g, sign in corners) < 0:
                bad[j] += 1
    return bad


@pytest.mark.parametrize("d", [2, 3, 4, 5])
def test_kernel_checker_matches_slow_checker(d):
    for k in range(2, d + 1):
        for sign in Sign:
            try:
                f = density_field(build_profile(d, k, sign))
            except ValueError:
                continue
            for level in range(1, d + 1):
                slow = _slow_check(f, level)
                rep = check_k_increasing_extension(f, level)
                assert rep.passed == (sum(slow.values()) == 0)
                per_level = Counter(v.constraint for v in rep.violations)
                assert sum(per_level.values()) + rep.unreported == sum(slow.values())


@pytest.mark.slow
def test_kernel_checker_matches_slow_checker_d6():
    test_kernel_checker_matches_slow_checker(6)


def test_k_increasing_examples():
    f = density_field(build_profile(4, 2, "minus"))
    values = grid_values(f)
    assert check_k_increasing_extension(f, 2, values=values).passed
    bad = check_k_increasing_extension(f, 3, values=values)
    assert not bad.passed
    assert all(v.constraint == "3-increasing" and v.lhs < 0 for v in bad.violations)
    assert check_k_increasing_extension(density_field(_trivial(4)), 4).passed


def test_k_increasing_monotone_in_level():
    # passing at level k implies passing at every lower level
    for d, k, sign in [(5, 3, "minus"), (6, 2, "plus"), (6, 4, "minus")]:
        f = density_field(build_profile(d, k, sign))
        values = grid_values(f)
        results = [check_k_increasing_extension(f, j, values=values).passed for j in range(1, d + 1)]
        assert results == sorted(results, reverse=True)
        assert results[k - 1]


def test_backends_agree_on_face_scan():
    from qcx import kernels

    if kernels.ck is None:
        pytest.skip("compiled kernels not built")
    f = density_field(build_profile(6, 2, "minus"))
    values = grid_values(f)
    for level in range(1, 7):
        a = check_k_increasing_extension(f, level, values=values, compiled=True)
        b = check_k_increasing_extension(f, level, values=values, compiled=False)
        assert a == b


def test_quasi_copula_axioms_pass():
    for d, k, sign in [(4, 2, "minus"), (5, 3, "plus"), (3, 3, "plus")]:
        assert check_quasi_copula_axioms(density_field(build_profile(d, k, sign))).passed
    assert check_quasi_copula_axioms(density_field(_trivial(3))).passed


def test_quasi_copula_axioms_planted_non_monotone():
    p = build_profile(4, 2, "minus").replace(q=(F(0), F(1, 2), F(1, 4), F(1, 2), F(1)))
    rep = check_quasi_copula_axioms(density_field(p))
    assert any(v.constraint == "monotone" for v in rep.violations)


def test_report_cap_and_merge():
    rep = FeasibilityReport()
    for i in range(150):
        rep.add("x", (i,), -1, 0)
    assert len(rep.violations) == 100 and rep.unreported == 50 and not rep
    merged = rep.merge(FeasibilityReport())
    assert merged.unreported == 50
    js = rep.to_json()
    assert js["passed"] is False and js["violations"][0]["lhs"] == "-1"
