import random
from fractions import Fraction

import pytest

from fracdim.errors import ConstraintViolated, DegenerateLambda, DepthExceeded
from fracdim.gallery import (
    closed_forms,
    remark1_report,
    sample_admissible,
    solve_theorem,
    symbolic_checks,
    theorem_report,
)

F = Fraction


def test_theorem1_unit_scale():
    inst = solve_theorem(1, F(3, 10), F(1, 5), F(1, 2), F(3, 5))
    assert inst.d == 1
    assert inst.s_params == (F(2, 5), F(3, 10))
    assert inst.t_params == (F(1, 5), F(1, 2))
    forms = closed_forms(inst)
    assert forms[("E", "lower")] == F(3, 10)
    assert forms[("ExF", "lower")] == F(3, 5)
    assert all(c.holds for c in symbolic_checks(inst))


def test_theorem1_needs_three_copies():
    inst = solve_theorem(1, F(6, 5), F(1, 2), 1, 2)
    assert inst.d == 3
    assert inst.s_params == (F(1, 2), F(2, 5))
    assert inst.t_params == (F(1, 6), F(1, 3))


def test_theorem2_example():
    inst = solve_theorem(2, F(1, 5), F(3, 10), F(3, 5), F(7, 10))
    assert inst.d == 1
    assert inst.s_params == (F(1, 5), F(3, 5))
    assert inst.t_params == (F(3, 10), F(1, 10))
    forms = closed_forms(inst)
    assert forms[("ExF", "upper")] == F(7, 10)
    assert forms[("F", "upper")] == F(3, 10)


def test_theorem3_reuses_theorem2_sets():
    a = solve_theorem(2, F(1, 5), F(3, 10), F(3, 5), F(7, 10))
    b = solve_theorem(3, F(1, 5), F(3, 10), F(3, 5), F(7, 10))
    assert (a.d, a.s_params, a.t_params) == (b.d, b.s_params, b.t_params)


@pytest.mark.parametrize(
    "which,args,exc",
    [
        (1, (F(1, 5), F(3, 5), F(1, 2), F(1)), ConstraintViolated),  # beta > gamma
        (1, (F(1, 5), F(1, 5), F(1, 2), F(1, 5)), ConstraintViolated),  # lambda < alpha+beta
        (1, (F(1, 5), F(1, 5), F(1, 2), F(4, 5)), ConstraintViolated),  # lambda > alpha+gamma
        (2, (F(3, 5), F(1, 5), F(1, 2), F(4, 5)), ConstraintViolated),  # alpha > gamma
        (2, (F(1, 5), F(3, 10), F(3, 5), F(1, 2)), DegenerateLambda),
        (3, (F(1, 5), F(1, 5), F(1, 2), F(1, 2)), DegenerateLambda),
        (2, (F(1, 5), F(1, 5), F(1, 2), F(1)), ConstraintViolated),  # lambda > gamma+beta
        (1, (0, F(1, 5), F(1, 2), F(1, 2)), ConstraintViolated),
    ],
)
def test_inadmissible(which, args, exc):
    with pytest.raises(exc):
        solve_theorem(which, *args)


def test_degenerate_is_a_constraint_violation():
    assert issubclass(DegenerateLambda, ConstraintViolated)


@pytest.mark.parametrize("which", [1, 2, 3])
def test_sampled_instances_round_trip(which):
    rng = random.Random(which)
    for _ in range(25):
        targets = sample_admissible(which, rng)
        inst = solve_theorem(which, *targets)
        assert inst.d == int(max(targets)) + 1
        assert all(c.holds for c in symbolic_checks(inst))


def test_theorem_report_numbers():
    inst = solve_theorem(1, F(3, 10), F(1, 5), F(1, 2), F(3, 5))
    rep = theorem_report(inst, 40, 20)
    assert rep.passed
    assert len(rep.numeric) == 4
    assert any("dim_P E" in n for n in rep.notes)
    text = rep.render()
    assert "Theorem 1" in text and "status:" in text


def test_remark_report_default_depth():
    rep = remark1_report(60, 50)
    assert rep.status == "pass"
    assert [c.target for c in rep.numeric] == [F(1, 4), F(1, 4), F(7, 12), F(3, 4)]
    assert all(c.error <= F(1, 50) for c in rep.numeric)
    assert all(c.holds for c in rep.symbolic)


def test_remark_report_shallow_is_inconclusive():
    rep = remark1_report(4)
    assert rep.status == "inconclusive at this depth"
    assert rep.passed
    assert all(c.bound > F(1, 50) for c in rep.numeric)


def test_remark_report_no_depth():
    with pytest.raises(DepthExceeded):
        remark1_report(0)
