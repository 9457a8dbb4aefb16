import math

import numpy as np
import pytest

from nmrlogic import gates as g
from nmrlogic import synthesis as syn
from nmrlogic.observables import GridSpec, InitialState, ObservableKind

PI = math.pi

THERMAL_MX = syn.reference_single_pulse_scenario()
DEFAULT_GRID = syn.DEFAULT_SYNTH_GRID  # pi/4 multiples over [0, 4pi)
HALF_PI_GRID = GridSpec(0.0, PI / 2, 8)  # pi/2 multiples over [0, 4pi)
SIGNED_GRID = GridSpec(-PI / 2, PI / 2, 10)  # includes -pi/2


def x_scenario(kind):
    return syn.Scenario(
        InitialState.SUPERPOSITION_X, 1, kind, ("phi", "beta")
    )


def test_evaluate_scenario_examples():
    assert syn.evaluate_scenario(THERMAL_MX, PI / 2, PI / 2) == pytest.approx(0.25, abs=1e-15)
    assert syn.evaluate_scenario(THERMAL_MX, 3 * PI / 2, PI / 2) == pytest.approx(-0.25, abs=1e-15)
    mxy = syn.Scenario(InitialState.THERMAL_Z, 1, ObservableKind.MXY, ("phi", "beta"))
    for phi in (0.0, 1.0, -2.5):
        assert syn.evaluate_scenario(mxy, phi, 0.0) == pytest.approx(0.0, abs=1e-15)


def test_scenario_accepts_string_enums():
    s = syn.Scenario("z", 1, "mx", ("phi", "beta"))
    assert s.initial is InitialState.THERMAL_Z
    assert s.observable is ObservableKind.MX


def test_scenario_validation():
    with pytest.raises(ValueError):
        syn.Scenario(InitialState.THERMAL_Z, 1, ObservableKind.MX, ("phi", "phi"))
    with pytest.raises(ValueError):
        syn.Scenario(InitialState.THERMAL_Z, 1, ObservableKind.MX, ("phi", "beta2"))
    with pytest.raises(ValueError):
        syn.Scenario(
            InitialState.THERMAL_Z, 2, ObservableKind.MX, ("phi2", "beta1"),
            fixed=(("phi1", 0.0),),
        )


def test_scenario_table_matches_scalar_evaluation():
    cand = DEFAULT_GRID.values()[:6]
    table = syn.scenario_table(THERMAL_MX, cand, cand)
    for i, a in enumerate(cand):
        for j, b in enumerate(cand):
            assert table[i, j] == pytest.approx(
                syn.evaluate_scenario(THERMAL_MX, a, b), abs=1e-14
            )


def test_two_pulse_scenario_matches_direct_observable():
    from nmrlogic.observables import two_pulse_observable

    scenario = syn.Scenario(
        InitialState.SUPERPOSITION_X, 2, ObservableKind.MY, ("beta2", "phi1"),
        fixed=(("phi2", 0.4), ("beta1", -1.1)), lambda_b=0.8,
    )
    value = syn.evaluate_scenario(scenario, 2.0, -0.5)
    direct = two_pulse_observable(
        0.4, 2.0, -0.5, -1.1, 0.8, ObservableKind.MY, InitialState.SUPERPOSITION_X
    )
    assert value == pytest.approx(direct, abs=1e-15)


def test_reference_rows_realize_their_gates():
    for row in syn.REFERENCE_SINGLE_PULSE_GATES:
        assignment = syn.reference_assignment(row)
        assert syn.assignment_realizes(THERMAL_MX, assignment, row.gate), row.gate.name
        # and the recomputed corner values equal the quoted outputs
        for (a, b), expected in zip(((0, 0), (0, 1), (1, 0), (1, 1)), row.outputs):
            value = syn.evaluate_scenario(
                THERMAL_MX, row.a_values[a], row.b_values[b]
            )
            assert value == pytest.approx(expected, abs=1e-12)


def test_reference_row_does_not_realize_other_gate():
    xor_row = syn.REFERENCE_SINGLE_PULSE_GATES[3]
    assignment = syn.reference_assignment(xor_row)
    assert not syn.assignment_realizes(THERMAL_MX, assignment, g.AND)
    assert not syn.assignment_realizes(THERMAL_MX, assignment, g.XNOR)


def test_assignment_validation():
    with pytest.raises(ValueError):
        syn.GateAssignment((0.0, 1.0), (0.0, 1.0), ())
    with pytest.raises(ValueError):
        syn.GateAssignment((0.0, 1.0), (0.0, 1.0), ((0.25, True), (0.25, False)))
    with pytest.raises(ValueError):
        syn.GateAssignment((0.0, 1.0), (0.0, 1.0), ((0.25, True), (0.1, True)))


def test_classify_level_unreachable_value():
    assignment = syn.GateAssignment((0.0, 1.0), (0.0, 1.0), ((0.25, True), (0.0, False)))
    assert assignment.classify_level(0.5) is None
    assert assignment.classify_level(0.25 + 5e-10) is True
    assert assignment.classify_level(-4e-10) is False


def test_synthesize_xor_on_half_pi_grid():
    found = syn.synthesize(THERMAL_MX, g.XOR, HALF_PI_GRID)
    assert found
    # the reference quadruple with -pi/2 shifted by a full period
    target_a = (PI / 2, 3 * PI / 2)
    target_b = (3 * PI / 2, PI / 2)
    hits = [
        asg
        for asg in found
        if np.allclose(asg.a_values, target_a) and np.allclose(asg.b_values, target_b)
    ]
    assert len(hits) == 1
    assert dict((bit, lvl) for lvl, bit in hits[0].level_map) == pytest.approx(
        {False: -0.25, True: 0.25}
    )


def test_synthesize_finds_literal_reference_quadruples():
    found = syn.synthesize(THERMAL_MX, g.XOR, SIGNED_GRID)
    row = syn.REFERENCE_SINGLE_PULSE_GATES[3]
    hits = [
        asg
        for asg in found
        if np.allclose(asg.a_values, row.a_values)
        and np.allclose(asg.b_values, row.b_values)
    ]
    assert len(hits) == 1

    found_t = syn.synthesize(THERMAL_MX, g.T, DEFAULT_GRID)
    row_t = syn.REFERENCE_SINGLE_PULSE_GATES[0]
    hits_t = [
        asg
        for asg in found_t
        if np.allclose(asg.a_values, row_t.a_values)
        and np.allclose(asg.b_values, row_t.b_values)
    ]
    assert len(hits_t) == 1


def test_synthesize_constant_false_with_zero_flip():
    grid = GridSpec(0.0, PI / 2, 4)  # includes beta = 0
    found = syn.synthesize(THERMAL_MX, g.F, grid)
    assert found
    for asg in found[:50]:
        assert syn.assignment_realizes(THERMAL_MX, asg, g.F)


def test_synthesize_no_xor_from_x_state():
    for kind in ObservableKind:
        scenario = x_scenario(kind)
        assert syn.synthesize(scenario, g.XOR, DEFAULT_GRID) == []
        assert syn.count_assignments(scenario, g.XNOR, DEFAULT_GRID) == 0


def test_synthesize_results_are_sound():
    for tt in (g.XOR, g.NAND, g.B, g.T, g.AND):
        found = syn.synthesize(THERMAL_MX, tt, HALF_PI_GRID)
        assert found, tt.name
        step = max(1, len(found) // 40)
        for asg in found[::step]:
            assert syn.assignment_realizes(THERMAL_MX, asg, tt), (tt.name, asg)


def test_synthesize_deterministic():
    first = syn.synthesize(THERMAL_MX, g.NAND, DEFAULT_GRID)
    second = syn.synthesize(THERMAL_MX, g.NAND, DEFAULT_GRID)
    assert first == second


def test_coincident_input_values_only_for_ignored_inputs():
    for asg in syn.synthesize(THERMAL_MX, g.XOR, DEFAULT_GRID):
        assert asg.a_values[0] != asg.a_values[1]
        assert asg.b_values[0] != asg.b_values[1]
    b_assignments = syn.synthesize(THERMAL_MX, g.B, DEFAULT_GRID)
    assert any(asg.a_values[0] == asg.a_values[1] for asg in b_assignments)
    assert all(asg.b_values[0] != asg.b_values[1] for asg in b_assignments)
    t_assignments = syn.synthesize(THERMAL_MX, g.T, DEFAULT_GRID)
    assert any(
        asg.a_values[0] == asg.a_values[1] and asg.b_values[0] == asg.b_values[1]
        for asg in t_assignments
    )


def test_symmetry_closure_of_assignments():
    nand_assignments = syn.synthesize(THERMAL_MX, g.NAND, HALF_PI_GRID)
    swapped_scenario = syn.Scenario(
        InitialState.THERMAL_Z, 1, ObservableKind.MX, ("beta", "phi")
    )
    step = max(1, len(nand_assignments) // 25)
    for asg in nand_assignments[::step]:
        negated_map = tuple((level, not bit) for level, bit in asg.level_map)
        negated = syn.GateAssignment(asg.a_values, asg.b_values, negated_map, asg.tolerance)
        assert syn.assignment_realizes(THERMAL_MX, negated, g.negate_output(g.NAND))

        flipped_a = syn.GateAssignment(
            (asg.a_values[1], asg.a_values[0]), asg.b_values, asg.level_map, asg.tolerance
        )
        assert syn.assignment_realizes(THERMAL_MX, flipped_a, g.negate_input(g.NAND, "A"))

        swapped = syn.GateAssignment(asg.b_values, asg.a_values, asg.level_map, asg.tolerance)
        assert syn.assignment_realizes(swapped_scenario, swapped, g.swap_inputs(g.NAND))


# ---------------------------------------------------------------------------
# Completeness oracle: an independent pure-python exhaustive enumeration.
# ---------------------------------------------------------------------------


def oracle_realizable(table, tt, tol=1e-9):
    n = len(table)
    rng = range(n)
    for i0 in rng:
        for i1 in rng:
            for j0 in rng:
                for j1 in rng:
                    corners = (
                        (table[i0][j0], tt(0, 0)),
                        (table[i0][j1], tt(0, 1)),
                        (table[i1][j0], tt(1, 0)),
                        (table[i1][j1], tt(1, 1)),
                    )
                    zeros = [v for v, bit in corners if not bit]
                    ones = [v for v, bit in corners if bit]
                    if zeros and max(zeros) - min(zeros) > tol:
                        continue
                    if ones and max(ones) - min(ones) > tol:
                        continue
                    if zeros and ones:
                        gap_up = min(ones) - max(zeros)
                        gap_down = min(zeros) - max(ones)
                        if not (gap_up > tol or gap_down > tol):
                            continue
                    return True
    return False


@pytest.mark.parametrize(
    "scenario",
    [
        THERMAL_MX,
        x_scenario(ObservableKind.MX),
        x_scenario(ObservableKind.MY),
        x_scenario(ObservableKind.MXY),
    ],
    ids=["z-mx", "x-mx", "x-my", "x-mxy"],
)
def test_search_agrees_with_brute_force_oracle(scenario):
    cand = DEFAULT_GRID.values()
    table = [
        [syn.evaluate_scenario(scenario, a, b) for b in cand] for a in cand
    ]
    for tt in g.ALL_GATES:
        expected = oracle_realizable(table, tt)
        found = syn.count_assignments(scenario, tt, DEFAULT_GRID) > 0
        assert found == expected, tt.name


def test_realizable_set_closed_under_orbit_moves():
    scenario = x_scenario(ObservableKind.MX)
    realizable = {
        tt for tt in g.ALL_GATES if syn.count_assignments(scenario, tt, DEFAULT_GRID)
    }
    for tt in realizable:
        assert g.negate_output(tt) in realizable
        assert g.negate_input(tt, "A") in realizable
        assert g.negate_input(tt, "B") in realizable


# ---------------------------------------------------------------------------
# Class capability checks and built-in verification report.
# ---------------------------------------------------------------------------


def test_achievable_classes_examples():
    assert syn.achievable_classes(THERMAL_MX, DEFAULT_GRID) == set(g.GateClass)
    assert syn.achievable_classes(x_scenario(ObservableKind.MX), DEFAULT_GRID) == {
        g.GateClass.CONSTANT,
        g.GateClass.STRONG,
        g.GateClass.WEAK,
    }


def test_equal_fix_two_pulse_classes_on_exemplar_grid():
    for inputs, fixed in (
        (("phi2", "phi1"), (("beta1", PI / 2), ("beta2", PI / 2))),
        (("phi2", "beta1"), (("phi1", PI / 2), ("beta2", PI / 2))),
        (("beta2", "beta1"), (("phi1", PI / 2), ("phi2", PI / 2))),
    ):
        scenario = syn.Scenario(
            InitialState.SUPERPOSITION_X, 2, ObservableKind.MX, inputs, fixed=fixed
        )
        assert syn.achievable_classes(scenario, syn.EXEMPLAR_GRID) == {
            g.GateClass.CONSTANT,
            g.GateClass.STRONG,
            g.GateClass.NONE,
        }, inputs


def test_equal_fix_quarter_grid_admits_accidental_weak_gates():
    # on the finer pi/4 grid exact level coincidences (three corners at
    # lambda/8) realize weakly-canalising gates; pinned so the behaviour
    # is not mistaken for a search bug
    scenario = syn.Scenario(
        InitialState.SUPERPOSITION_X, 2, ObservableKind.MX, ("phi2", "phi1"),
        fixed=(("beta1", PI / 2), ("beta2", PI / 2)),
    )
    found = syn.synthesize(scenario, g.AND, DEFAULT_GRID)
    assert found
    assert syn.assignment_realizes(scenario, found[0], g.AND)
    witness = syn.GateAssignment(
        (0.0, PI / 4), (7 * PI / 4, PI / 4), ((0.125, False), (0.0, True))
    )
    assert syn.assignment_realizes(scenario, witness, g.AND)


def test_mixed_fix_two_pulse_restores_all_classes():
    scenario = syn.Scenario(
        InitialState.SUPERPOSITION_X, 2, ObservableKind.MX, ("phi2", "beta1"),
        fixed=(("phi1", PI / 2), ("beta2", PI)),
    )
    assert syn.achievable_classes(scenario, DEFAULT_GRID) == set(g.GateClass)


def test_verify_reference_tables_all_pass():
    checks = syn.verify_reference_tables(grid_points=33)
    assert checks
    failed = [c for c in checks if not c.passed]
    assert not failed, failed


def test_verify_reference_tables_detects_wrong_scale():
    checks = syn.verify_reference_tables(lambda_b=0.5, grid_points=21)
    assert any(not c.passed for c in checks)


def test_capability_checks_all_pass():
    checks = syn.capability_checks()
    assert len(checks) == 6
    failed = [c for c in checks if not c.passed]
    assert not failed, failed
