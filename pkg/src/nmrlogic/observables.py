"""Analytic observable functions and grid sampling.

Two routes exist to every observable: the closed-form trigonometric
expressions implemented here, and numeric matrix propagation (`spincore`
for scalars, `_kernels` for arrays).  The test suite pins one against the
other; production code may use whichever is convenient.

Single-pulse closed forms, starting state polarised along z:

    mx =  (lam/4) sin(phi) sin(beta)
    my = -(lam/4) cos(phi) sin(beta)
    mz =  (lam/4) cos(beta)

and starting polarised along x:

    mx =  (lam/4) (1 - 2 sin^2(phi) sin^2(beta/2))
    my =  (lam/4) sin(2 phi) sin^2(beta/2)
    mz = -(lam/4) sin(phi) sin(beta)

Two-pulse observables are evaluated numerically; closed forms for the
special fixed-parameter families are kept as independent regression
formulas (see `TWO_PULSE_PI_HALF_FORMS` and `TWO_PULSE_MIXED_FIX_FORMS`).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Mapping, Tuple

import numpy as np

from . import _kernels
from .spincore import Magnetization, _require_finite


class InitialState(enum.Enum):
    """Which prepared state the pulse sequence acts on."""

    THERMAL_Z = "z"
    SUPERPOSITION_X = "x"


class ObservableKind(enum.Enum):
    """The NMR-detectable quantities (the z component is not detectable)."""

    MX = "mx"
    MY = "my"
    MXY = "mxy"


ONE_PULSE_PARAMS = ("phi", "beta")
TWO_PULSE_PARAMS = ("phi2", "beta2", "phi1", "beta1")


def single_pulse_from_z(phi_p: float, beta: float, lambda_b: float = 1.0) -> Magnetization:
    """Magnetization after one pulse on the thermal (z-polarised) state."""
    _require_finite(phi_p, beta, lambda_b)
    q = 0.25 * lambda_b
    return Magnetization(
        q * math.sin(phi_p) * math.sin(beta),
        -q * math.cos(phi_p) * math.sin(beta),
        q * math.cos(beta),
    )


def single_pulse_from_x(phi_p: float, beta: float, lambda_b: float = 1.0) -> Magnetization:
    """Magnetization after one pulse on the x-polarised state."""
    _require_finite(phi_p, beta, lambda_b)
    q = 0.25 * lambda_b
    sh = math.sin(0.5 * beta)
    return Magnetization(
        q * (1.0 - 2.0 * math.sin(phi_p) ** 2 * sh**2),
        q * math.sin(2.0 * phi_p) * sh**2,
        -q * math.sin(phi_p) * math.sin(beta),
    )


def _single_pulse_components(phis, betas, lambda_b, from_x):
    """Vectorised closed forms; arrays broadcast. Returns (mx, my, mz)."""
    phis = np.asarray(phis, dtype=np.float64)
    betas = np.asarray(betas, dtype=np.float64)
    q = 0.25 * lambda_b
    if from_x:
        sh2 = np.sin(0.5 * betas) ** 2
        mx = q * (1.0 - 2.0 * np.sin(phis) ** 2 * sh2)
        my = q * np.sin(2.0 * phis) * sh2
        mz = -q * np.sin(phis) * np.sin(betas)
    else:
        mx = q * np.sin(phis) * np.sin(betas)
        my = -q * np.cos(phis) * np.sin(betas)
        mz = q * np.cos(betas)
    return mx, my, mz


def two_pulse_observable(
    phi_p2: float,
    beta2: float,
    phi_p1: float,
    beta1: float,
    lambda_b: float,
    kind: ObservableKind,
    initial: InitialState,
) -> float:
    """Observable after two pulses, by numeric propagation (pulse 1 first)."""
    _require_finite(phi_p2, beta2, phi_p1, beta1, lambda_b)
    mx, my, _ = _kernels.two_pulse_components(
        phi_p2, beta2, phi_p1, beta1, lambda_b, initial is InitialState.SUPERPOSITION_X
    )
    return float(_select_component(kind, mx, my))


def _select_component(kind: ObservableKind, mx, my):
    if kind is ObservableKind.MX:
        return mx
    if kind is ObservableKind.MY:
        return my
    if kind is ObservableKind.MXY:
        return np.hypot(mx, my)
    raise ValueError(f"unknown observable kind {kind!r}")


# ---------------------------------------------------------------------------
# Closed forms for the x-state two-pulse mx with two parameters fixed.
#
# First family: the remaining two parameters both fixed at pi/2, one entry
# per choice of free pair (keyed "<param of input A>,<param of input B>").
# Second family: unequal fixed values (flip angle pi on pulse 2).
# ---------------------------------------------------------------------------


def _form_phi2_phi1(a, b, q):
    return q * (np.cos(a) * np.cos(b) * np.cos(a - b) - np.sin(a) * np.sin(b))


def _form_phi2_beta1(a, b, q):
    return q * (np.cos(a) ** 2 * np.cos(b) - np.sin(a) * np.sin(b))


def _form_beta2_beta1(a, b, q):
    return q * np.cos(a + b)


def _form_beta2_phi1(a, b, q):
    return q * (np.cos(b) ** 2 * np.cos(a) - np.sin(b) * np.sin(a))


def _form_phi2_beta2(a, b, q):
    return -q * np.sin(a) * np.sin(b)


def _form_phi1_beta1(a, b, q):
    return -q * np.sin(a) * np.sin(b)


TWO_PULSE_PI_HALF_FORMS: Mapping[str, Tuple[Tuple[str, str], object]] = {
    # key: free pair (A first); value: ((param of A, param of B), formula)
    "phi2,phi1": (("phi2", "phi1"), _form_phi2_phi1),
    "phi2,beta1": (("phi2", "beta1"), _form_phi2_beta1),
    "beta2,beta1": (("beta2", "beta1"), _form_beta2_beta1),
    "beta2,phi1": (("beta2", "phi1"), _form_beta2_phi1),
    "phi2,beta2": (("phi2", "beta2"), _form_phi2_beta2),
    "phi1,beta1": (("phi1", "beta1"), _form_phi1_beta1),
}


def two_pulse_pi_half_closed_form(
    free_pair: str, var_a: float, var_b: float, lambda_b: float = 1.0
):
    """x-state two-pulse mx with the two non-free parameters fixed at pi/2.

    `free_pair` names the parameters bound to logic inputs A and B, e.g.
    "beta2,beta1".  Unknown pairs raise ValueError.
    """
    if free_pair not in TWO_PULSE_PI_HALF_FORMS:
        raise ValueError(
            f"unknown free pair {free_pair!r}; expected one of "
            f"{sorted(TWO_PULSE_PI_HALF_FORMS)}"
        )
    _, formula = TWO_PULSE_PI_HALF_FORMS[free_pair]
    return formula(np.asarray(var_a), np.asarray(var_b), 0.25 * lambda_b)


def _form_both_phis_beta2_pi(a, b, q):
    # fixed beta1 = pi/2, beta2 = pi; free (phi2, phi1)
    return q * np.cos(2.0 * a - b) * np.cos(b)


def _form_phi2_beta1_beta2_pi(a, b, q):
    # fixed phi1 = pi/2, beta2 = pi; free (phi2, beta1)
    return q * np.cos(2.0 * a) * np.cos(b)


TWO_PULSE_MIXED_FIX_FORMS = {
    "beta1_half_pi,beta2_pi": (("phi2", "phi1"), {"beta1": math.pi / 2, "beta2": math.pi}, _form_both_phis_beta2_pi),
    "phi1_half_pi,beta2_pi": (("phi2", "beta1"), {"phi1": math.pi / 2, "beta2": math.pi}, _form_phi2_beta1_beta2_pi),
}


def two_pulse_mixed_fix_closed_form(
    case: str, var_a: float, var_b: float, lambda_b: float = 1.0
):
    """x-state two-pulse mx with unequal fixed parameters.

    Case "beta1_half_pi,beta2_pi": free (phi2, phi1); only horizontal
    zero-valued traces exist.  Case "phi1_half_pi,beta2_pi": free
    (phi2, beta1); horizontal and vertical zero traces both exist.
    """
    if case not in TWO_PULSE_MIXED_FIX_FORMS:
        raise ValueError(
            f"unknown case {case!r}; expected one of {sorted(TWO_PULSE_MIXED_FIX_FORMS)}"
        )
    _, _, formula = TWO_PULSE_MIXED_FIX_FORMS[case]
    return formula(np.asarray(var_a), np.asarray(var_b), 0.25 * lambda_b)


# ---------------------------------------------------------------------------
# Parameter binding and grid sampling.
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GridSpec:
    """Arithmetic candidate sequence: start, start+step, ... (count values)."""

    start: float
    step: float
    count: int

    def __post_init__(self) -> None:
        _require_finite(self.start, self.step)
        if self.count < 2:
            raise ValueError(f"grid needs at least 2 points, got {self.count}")
        if self.step <= 0:
            raise ValueError(f"grid step must be positive, got {self.step}")

    def values(self) -> np.ndarray:
        return self.start + self.step * np.arange(self.count, dtype=np.float64)


def validate_binding(pulses: int, inputs, fixed: Mapping[str, float]) -> None:
    """Check that two distinct parameters are free and the rest are fixed."""
    if pulses == 1:
        names = ONE_PULSE_PARAMS
    elif pulses == 2:
        names = TWO_PULSE_PARAMS
    else:
        raise ValueError(f"pulse count must be 1 or 2, got {pulses}")
    inputs = tuple(inputs)
    if len(inputs) != 2 or inputs[0] == inputs[1]:
        raise ValueError(f"exactly two distinct input parameters required, got {inputs}")
    for p in inputs:
        if p not in names:
            raise ValueError(f"unknown parameter {p!r}; valid: {names}")
    rest = set(names) - set(inputs)
    if set(fixed) != rest:
        raise ValueError(
            f"fixed values must cover exactly {sorted(rest)}, got {sorted(fixed)}"
        )
    for name, value in fixed.items():
        _require_finite(value)


def scenario_components(
    initial: InitialState,
    pulses: int,
    inputs,
    fixed: Mapping[str, float],
    a_values,
    b_values,
    lambda_b: float = 1.0,
):
    """(mx, my, mz) with inputs A/B bound to `a_values` / `b_values`.

    Arrays broadcast; scalars give scalars.  One-pulse scenarios use the
    closed forms, two-pulse scenarios numeric propagation.
    """
    validate_binding(pulses, inputs, fixed)
    inputs = tuple(inputs)
    a_values = np.asarray(a_values, dtype=np.float64)
    b_values = np.asarray(b_values, dtype=np.float64)
    bound = dict(fixed)
    bound[inputs[0]] = a_values
    bound[inputs[1]] = b_values
    from_x = initial is InitialState.SUPERPOSITION_X
    if pulses == 1:
        return _single_pulse_components(bound["phi"], bound["beta"], lambda_b, from_x)
    return _kernels.two_pulse_components(
        bound["phi2"], bound["beta2"], bound["phi1"], bound["beta1"], lambda_b, from_x
    )


def observable_grid(
    initial: InitialState,
    kind: ObservableKind,
    pulses: int,
    inputs,
    fixed: Mapping[str, float],
    grid_a: GridSpec,
    grid_b: GridSpec,
    lambda_b: float = 1.0,
) -> np.ndarray:
    """Observable sampled over the Cartesian grid, input A on the row axis."""
    avals, bvals = np.meshgrid(grid_a.values(), grid_b.values(), indexing="ij")
    mx, my, _ = scenario_components(
        initial, pulses, inputs, fixed, avals, bvals, lambda_b
    )
    return np.asarray(_select_component(kind, mx, my))
