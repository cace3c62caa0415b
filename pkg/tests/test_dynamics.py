import math

import pytest
from hypothesis import given, strategies as st

from barypoly import (
    ConjugateTuple,
    Phase,
    SaturationError,
    WeightTuple,
    classify_phase,
    comparison_sequence,
    conjugate_of,
    conjugate_step,
    derived_step,
    run_trajectory,
    solve_alpha,
    weights_of,
)


def weight_lists(lo=0.05, hi=0.95, min_p=3, max_p=8):
    return st.lists(
        st.floats(min_value=lo, max_value=hi), min_size=min_p, max_size=max_p
    )


def test_derived_step_hand_case():
    t = derived_step(WeightTuple.of((0.2, 0.3, 0.4)))
    assert t.t == pytest.approx((0.42, 0.48, 0.56), rel=1e-14)


def test_conjugate_step_hand_case():
    u = conjugate_step(ConjugateTuple.of((0.6, 0.7, 0.8)))
    assert u.u == pytest.approx((0.44, 0.52, 0.58), rel=1e-14)


@given(weight_lists())
def test_conjugate_duality(vals):
    """The two coordinate systems perform the same step: u' = 1 - t'."""
    t = WeightTuple.of(vals)
    via_u = conjugate_step(conjugate_of(t)).u
    via_t = derived_step(t).t
    for a, b in zip(via_u, via_t):
        assert abs(a - (1.0 - b)) <= 2e-15


@given(weight_lists(lo=0.01, hi=0.99))
def test_step_preserves_order_exactly(vals):
    # shared log total: componentwise order survives with no slack at all
    u = ConjugateTuple.of(sorted(vals))
    stepped = conjugate_step(u)
    assert all(a <= b for a, b in zip(stepped.u, stepped.u[1:]))


@given(weight_lists(lo=1e-6, hi=1.0 - 1e-6, min_p=2, max_p=6))
def test_coordinate_roundtrip(vals):
    t = WeightTuple.of(vals)
    back = weights_of(conjugate_of(t))
    for a, b in zip(t.t, back.t):
        assert abs(a - b) <= 1e-15


def test_step_raises_on_saturation():
    with pytest.raises(SaturationError) as err:
        conjugate_step(ConjugateTuple.of((1e-300, 1e-300, 0.5)))
    assert err.value.values is not None
    assert any(v >= 1.0 for v in err.value.values)


def test_validation():
    with pytest.raises(ValueError):
        WeightTuple.of((0.5,))
    with pytest.raises(ValueError):
        WeightTuple.of((0.5, 1.0, 0.5))
    with pytest.raises(ValueError):
        ConjugateTuple.of((0.0, 0.5, 0.5))
    with pytest.raises(ValueError):
        WeightTuple(4, (0.1, 0.2, 0.3))
    with pytest.raises(ValueError):
        run_trajectory(ConjugateTuple.of((0.2, 0.5, 0.8)), -1, solve_alpha(3))


def test_classify_phase():
    alpha = solve_alpha(3)
    assert classify_phase(ConjugateTuple.of((0.1, 0.2, 0.3)), alpha) is Phase.BELOW
    assert classify_phase(ConjugateTuple.of((0.7, 0.8, 0.9)), alpha) is Phase.ABOVE
    assert classify_phase(ConjugateTuple.of((0.1, 0.8, 0.9)), alpha) is Phase.MIXED
    # a component sitting on the threshold is undecidable, hence MIXED
    assert classify_phase(ConjugateTuple.of((0.2, alpha, 0.9)), alpha) is Phase.MIXED
    assert classify_phase(ConjugateTuple.of((0.2, alpha + 5e-16, 0.9)), alpha) is Phase.MIXED
    with pytest.raises(ValueError):
        classify_phase(ConjugateTuple.of((0.2, 0.5, 0.9)), 1.5)


def test_run_trajectory_sorts_and_permutes():
    traj = run_trajectory(ConjugateTuple.of((0.8, 0.2, 0.5)), 3, solve_alpha(3))
    assert traj.states[0].u == (0.2, 0.5, 0.8)
    assert traj.permutation == (1, 2, 0)
    original = (0.8, 0.2, 0.5)
    assert tuple(original[i] for i in traj.permutation) == traj.states[0].u


def test_run_trajectory_fixed_seed_never_saturates():
    alpha = solve_alpha(4)
    traj = run_trajectory(ConjugateTuple.of([alpha] * 4), 12, alpha)
    assert traj.saturation_step is None
    assert traj.saturation_values is None
    assert len(traj) == 13
    assert all(ph is Phase.MIXED for ph in traj.phase)


def test_run_trajectory_saturation_record():
    traj = run_trajectory(ConjugateTuple.of((0.15, 0.5, 0.85)), 400, solve_alpha(3))
    assert traj.saturation_step is not None
    assert traj.saturation_step == len(traj.states)
    assert traj.saturation_values is not None
    assert any(
        v <= math.ulp(0.0) or 1.0 - v <= math.ulp(1.0) for v in traj.saturation_values
    )
    ulp0, ulp1 = math.ulp(0.0), math.ulp(1.0)
    for state in traj.states:
        assert all(v > ulp0 and 1.0 - v > ulp1 for v in state.u)


def test_trajectory_diagnostic_fields():
    traj = run_trajectory(ConjugateTuple.of((0.3, 0.5, 0.6, 0.7)), 6, solve_alpha(4))
    for m, state in enumerate(traj.states):
        assert traj.spread[m] == state.u[-1] / state.u[0] - 1.0
        assert traj.phase[m] is classify_phase(state, traj.alpha)
        for k in range(traj.p):
            direct = math.prod(v for i, v in enumerate(state.u) if i != k)
            assert math.exp(traj.log_products[m][k]) == pytest.approx(direct, rel=1e-12)


def test_comparison_sequence_recurrence():
    seq = comparison_sequence(0.9, 3, 12)
    assert len(seq) == 13
    assert seq[0] == 0.9
    for a, b in zip(seq, seq[1:]):
        assert b == 1.0 - a ** 2


def test_comparison_sequence_reaches_boundary():
    # the scalar orbit is allowed to hit 0 and 1, where it alternates forever
    seq = comparison_sequence(0.99, 5, 60)
    assert 0.0 in seq and 1.0 in seq


def test_comparison_sequence_validation():
    with pytest.raises(ValueError):
        comparison_sequence(0.5, 2, 4)
    with pytest.raises(ValueError):
        comparison_sequence(1.0, 3, 4)
    with pytest.raises(ValueError):
        comparison_sequence(0.5, 3, -1)
