import random
from fractions import Fraction

import pytest

from qualprob.ratlp import (
    Constraint,
    DimensionMismatch,
    Infeasible,
    LinearProgram,
    Optimal,
    Rel,
    Sense,
    SizeCapExceeded,
    Unbounded,
    check_point,
    fourier_motzkin_feasible,
    is_feasible,
    make_program,
    solve,
    verify_dual_bound,
    verify_farkas,
    verify_ray,
)

F = Fraction


def test_small_max():
    # max x + y  st  x + 2y <= 4, x <= 1
    lp = make_program(2, [((1, 2), Rel.LE, 4), ((1, 0), Rel.LE, 1)], (1, 1), Sense.MAXIMIZE)
    out = solve(lp)
    assert isinstance(out, Optimal)
    assert out.value == F(5, 2)
    assert out.point == (F(1), F(3, 2))
    assert verify_dual_bound(lp, out.dual) == out.value


def test_small_min_with_ge():
    # min 3x + y  st  x + y >= 2, x >= 1/2
    lp = make_program(2, [((1, 1), Rel.GE, 2), ((1, 0), Rel.GE, F(1, 2))], (3, 1), Sense.MINIMIZE)
    out = solve(lp)
    assert isinstance(out, Optimal)
    assert out.value == F(3)
    assert check_point(lp, out.point)
    assert verify_dual_bound(lp, out.dual) == out.value


def test_equality_rows():
    # x + y = 1, maximize x - y
    lp = make_program(2, [((1, 1), Rel.EQ, 1)], (1, -1), Sense.MAXIMIZE)
    out = solve(lp)
    assert out.value == 1 and out.point == (F(1), F(0))


def test_negative_rhs_flip():
    # -x <= -3 is x >= 3
    lp = make_program(1, [((-1,), Rel.LE, -3)], (1,), Sense.MINIMIZE)
    out = solve(lp)
    assert out.value == 3


def test_infeasible_with_farkas():
    lp = make_program(1, [((1,), Rel.LE, -1)], (0,), Sense.MAXIMIZE)
    out = solve(lp)
    assert isinstance(out, Infeasible)
    assert verify_farkas(lp, out.certificate)


def test_infeasible_between_rows():
    # x >= 3 and x <= 2
    lp = make_program(1, [((1,), Rel.GE, 3), ((1,), Rel.LE, 2)], (1,), Sense.MAXIMIZE)
    out = solve(lp)
    assert isinstance(out, Infeasible)
    assert verify_farkas(lp, out.certificate)
    # sign convention: >= rows get mu >= 0, <= rows mu <= 0
    assert out.certificate[0] >= 0 and out.certificate[1] <= 0


def test_unbounded_with_ray():
    lp = make_program(2, [((1, -1), Rel.LE, 1)], (1, 0), Sense.MAXIMIZE)
    out = solve(lp)
    assert isinstance(out, Unbounded)
    assert verify_ray(lp, out.ray)


def test_degenerate_redundant_equalities():
    # the same hyperplane twice plus an implied one
    lp = make_program(
        2,
        [((1, 1), Rel.EQ, 1), ((2, 2), Rel.EQ, 2), ((1, 1), Rel.LE, 1)],
        (0, 1),
        Sense.MAXIMIZE,
    )
    out = solve(lp)
    assert out.value == 1


def test_zero_rows_are_harmless():
    lp = make_program(2, [((0, 0), Rel.LE, 0), ((1, 1), Rel.LE, 1)], (1, 1), Sense.MAXIMIZE)
    assert solve(lp).value == 1


def test_dimension_validation():
    with pytest.raises(DimensionMismatch):
        make_program(2, [((1,), Rel.LE, 1)], (1, 1), Sense.MAXIMIZE)
    with pytest.raises(DimensionMismatch):
        make_program(1, [((1,), Rel.LE, 1)], (1, 1), Sense.MAXIMIZE)
    with pytest.raises(DimensionMismatch):
        make_program(1, [((1,), Rel.LE, 1)], (1,), Sense.MAXIMIZE, row_notes=(("a",), ("b",)))


def test_verifiers_reject_garbage():
    lp = make_program(1, [((1,), Rel.LE, -1)], (0,), Sense.MAXIMIZE)
    assert not verify_farkas(lp, (F(1),))  # wrong sign for a <= row
    assert not verify_farkas(lp, (F(0),))  # combines to 0 > 0
    assert verify_dual_bound(lp, (F(1),)) is None
    good = make_program(1, [((1,), Rel.LE, 2)], (1,), Sense.MAXIMIZE)
    assert not check_point(good, (F(3),))
    assert not check_point(good, (F(-1),))
    assert check_point(good, (F(2),))


def test_fm_small_answers():
    feasible = make_program(2, [((1, 1), Rel.LE, 1), ((1, 0), Rel.GE, F(1, 4))], (0, 0), Sense.MAXIMIZE)
    assert fourier_motzkin_feasible(feasible)
    empty = make_program(1, [((1,), Rel.GE, 3), ((1,), Rel.LE, 2)], (0,), Sense.MAXIMIZE)
    assert not fourier_motzkin_feasible(empty)
    # implicit x >= 0 participates: x <= -1 alone is already empty
    assert not fourier_motzkin_feasible(make_program(1, [((1,), Rel.LE, -1)], (0,), Sense.MAXIMIZE))


def test_fm_equality_split():
    lp = make_program(2, [((1, 1), Rel.EQ, 1), ((1, -1), Rel.EQ, 0)], (0, 0), Sense.MAXIMIZE)
    assert fourier_motzkin_feasible(lp)
    lp = make_program(1, [((1,), Rel.EQ, 1), ((1,), Rel.EQ, 2)], (0,), Sense.MAXIMIZE)
    assert not fourier_motzkin_feasible(lp)


def test_fm_caps():
    rows = [((1,) * 9, Rel.LE, 1)]
    with pytest.raises(SizeCapExceeded):
        fourier_motzkin_feasible(make_program(9, rows, (0,) * 9, Sense.MAXIMIZE))
    many = [((1, 0), Rel.LE, i + 1) for i in range(17)]
    with pytest.raises(SizeCapExceeded):
        fourier_motzkin_feasible(make_program(2, many, (0, 0), Sense.MAXIMIZE))


def _random_lp(rng: random.Random) -> LinearProgram:
    # elimination squares the row count per variable, so stay desk-sized
    n = rng.randint(1, 4)
    m = rng.randint(1, 6)
    rows = []
    for _ in range(m):
        coeffs = tuple(rng.randint(-4, 4) for _ in range(n))
        rel = rng.choice((Rel.LE, Rel.GE, Rel.EQ))
        rows.append((coeffs, rel, rng.randint(-6, 6)))
    return make_program(n, rows, (0,) * n, Sense.MAXIMIZE)


def test_fm_matches_simplex_on_seeded_systems():
    # the two deciders share no code past LinearProgram itself
    rng = random.Random(417)
    compared = 0
    for _ in range(160):
        lp = _random_lp(rng)
        try:
            fm = fourier_motzkin_feasible(lp)
        except SizeCapExceeded:
            continue
        assert fm == is_feasible(lp)
        compared += 1
    assert compared >= 100


def test_solve_certificates_on_seeded_systems():
    # solve() self-verifies internally; this loop exercises all three outcomes
    rng = random.Random(74)
    kinds = {"optimal": 0, "infeasible": 0, "unbounded": 0}
    for _ in range(120):
        n = rng.randint(1, 4)
        m = rng.randint(1, 6)
        rows = [
            (tuple(rng.randint(-3, 3) for _ in range(n)),
             rng.choice((Rel.LE, Rel.GE, Rel.EQ)),
             rng.randint(-5, 5))
            for _ in range(m)
        ]
        objective = tuple(rng.randint(-3, 3) for _ in range(n))
        lp = make_program(n, rows, objective, rng.choice((Sense.MAXIMIZE, Sense.MINIMIZE)))
        out = solve(lp)
        if isinstance(out, Optimal):
            kinds["optimal"] += 1
            assert check_point(lp, out.point)
            assert verify_dual_bound(lp, out.dual) == out.value
        elif isinstance(out, Infeasible):
            kinds["infeasible"] += 1
            assert verify_farkas(lp, out.certificate)
        else:
            kinds["unbounded"] += 1
            assert verify_ray(lp, out.ray)
    # the corpus must actually exercise every branch
    assert all(v > 0 for v in kinds.values()), kinds


def test_rational_exactness():
    third = F(1, 3)
    lp = make_program(1, [((3,), Rel.EQ, 1)], (1,), Sense.MAXIMIZE)
    out = solve(lp)
    assert out.point == (third,)
    assert out.value * 3 == 1  # no drift, ever
