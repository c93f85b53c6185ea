"""Bell scenarios: settings layout, measurement construction, and value evaluation.

A settings vector packs all local measurement parameters party-major, then
setting, then parameter:

    theta[(party * settings_per_party + setting) * params_per_setting + q]

Qubit measurements use the Bloch decomposition a(theta, phi) . sigma with
a = (sin t cos p, sin t sin p, cos t), two parameters per setting. Qutrit
measurements use a rotated computational basis exp(iH)|j> with H expanded
over the eight dim-3 generators, eight parameters per setting.
"""

from dataclasses import dataclass

import numpy as np

from .linalg import SIGMA_X, SIGMA_Y, SIGMA_Z, tensor, unitary_from_coefficients
from .states import as_quantum_state
from .validation import check_settings


@dataclass(frozen=True)
class BellScenario:
    id: str
    parties: int
    settings_per_party: int
    outcomes_per_setting: int
    params_per_setting: int
    local_dim: int
    default_iterations: int
    # Initialization range for random starting settings. Bloch angles are
    # 2 pi periodic; generator coefficients are not, and large-radius starts
    # put exp(iH) in its oscillatory regime, so the qutrit scenario starts
    # at a moderate radius (every basis stays reachable).
    initial_scale: float = 2.0 * np.pi
    classical_bound: float = 2.0

    @property
    def theta_dim(self):
        return self.parties * self.settings_per_party * self.params_per_setting

    @property
    def total_dim(self):
        return self.local_dim ** self.parties


CHSH = BellScenario("chsh", parties=2, settings_per_party=2, outcomes_per_setting=2,
                    params_per_setting=2, local_dim=2, default_iterations=50)
MERMIN3 = BellScenario("mermin3", parties=3, settings_per_party=2, outcomes_per_setting=2,
                       params_per_setting=2, local_dim=2, default_iterations=80)
CGLMP3 = BellScenario("cglmp3", parties=2, settings_per_party=2, outcomes_per_setting=3,
                      params_per_setting=8, local_dim=3, default_iterations=100,
                      initial_scale=0.5)

SCENARIOS = {s.id: s for s in (CHSH, MERMIN3, CGLMP3)}

# Signed correlator terms of the two-outcome expressions, as
# (setting index per party, coefficient).
_CORRELATOR_TERMS = {
    "chsh": (((0, 0), 1.0), ((0, 1), 1.0), ((1, 0), 1.0), ((1, 1), -1.0)),
    "mermin3": (((1, 0, 0), 1.0), ((0, 1, 0), 1.0), ((0, 0, 1), 1.0), ((1, 1, 1), -1.0)),
}

SETTING_PAIRS = ((0, 0), (0, 1), (1, 0), (1, 1))


def get_scenario(scenario):
    if isinstance(scenario, BellScenario):
        return scenario
    key = str(scenario).lower()
    if key not in SCENARIOS:
        known = ", ".join(sorted(SCENARIOS))
        raise ValueError(f"unknown scenario {scenario!r} (known: {known})")
    return SCENARIOS[key]


def correlator_terms(scenario):
    """Signed terms of a two-outcome Bell expression."""
    scenario = get_scenario(scenario)
    if scenario.id not in _CORRELATOR_TERMS:
        raise ValueError(f"{scenario.id} is not a correlator-based scenario")
    return _CORRELATOR_TERMS[scenario.id]


def measured_setting_combos(scenario):
    """Joint setting combinations consumed by one evaluation (4 for every scenario)."""
    scenario = get_scenario(scenario)
    if scenario.id in _CORRELATOR_TERMS:
        return tuple(combo for combo, _ in _CORRELATOR_TERMS[scenario.id])
    return SETTING_PAIRS


def qubit_observable(theta, phi):
    """Spin observable along the Bloch direction (theta, phi); eigenvalues +1 and -1."""
    return (np.sin(theta) * np.cos(phi) * SIGMA_X
            + np.sin(theta) * np.sin(phi) * SIGMA_Y
            + np.cos(theta) * SIGMA_Z)


def qutrit_projectors(coefficients):
    """Rank-1 projector triple onto the rotated basis exp(iH)|0>, exp(iH)|1>, exp(iH)|2>."""
    u = unitary_from_coefficients(3, coefficients)
    return np.stack([np.outer(u[:, j], u[:, j].conj()) for j in range(3)])


def build_measurements(scenario, theta):
    """Local measurements for every party and setting, per the layout contract.

    Returns a nested list indexed [party][setting]: a 2x2 observable for the
    qubit scenarios, a stack of three outcome projectors for the qutrit one.
    """
    scenario = get_scenario(scenario)
    theta = check_settings(theta, scenario)
    p = scenario.params_per_setting
    measurements = []
    for party in range(scenario.parties):
        per_setting = []
        for setting in range(scenario.settings_per_party):
            base = (party * scenario.settings_per_party + setting) * p
            params = theta[base:base + p]
            if scenario.outcomes_per_setting == 2:
                per_setting.append(qubit_observable(params[0], params[1]))
            else:
                per_setting.append(qutrit_projectors(params))
        measurements.append(per_setting)
    return measurements


def joint_probabilities(rho, local_measurements):
    """Joint outcome distribution for one chosen measurement per party.

    Each entry of ``local_measurements`` is either a two-outcome observable
    (outcome index 0 is the +1 eigenvalue) or a stack of outcome projectors.
    """
    stacks = []
    for m in local_measurements:
        m = np.asarray(m, dtype=complex)
        if m.ndim == 2:
            eye = np.eye(m.shape[0])
            stacks.append(np.stack([(eye + m) / 2.0, (eye - m) / 2.0]))
        else:
            stacks.append(m)
    shape = tuple(stack.shape[0] for stack in stacks)
    probs = np.empty(shape)
    for idx in np.ndindex(shape):
        projector = tensor(*[stacks[party][i] for party, i in enumerate(idx)])
        probs[idx] = np.trace(rho @ projector).real
    return np.clip(probs, 0.0, None)


def cglmp_combination(p00, p01, p10, p11):
    """Signed three-outcome two-setting Bell combination from joint tables.

    ``pab[j, l]`` is the probability of outcomes (j, l) for settings (a, b).
    The combination is the standard d=3 form

        [P(A0=B0) + P(B0=A1+1) + P(A1=B1) + P(B1=A0)]
      - [P(A0=B0-1) + P(B0=A1) + P(A1=B1-1) + P(B1=A0-1)]

    where P(X=Y+k) is the probability that X's outcome is j while Y's is
    j+k mod 3, summed over j; the local bound is 2.
    """
    def a_eq_b_plus(p, k):
        return sum(p[j, (j + k) % 3] for j in range(3))

    def b_eq_a_plus(p, k):
        return sum(p[(j + k) % 3, j] for j in range(3))

    positive = (a_eq_b_plus(p00, 0) + b_eq_a_plus(p10, 1)
                + a_eq_b_plus(p11, 0) + b_eq_a_plus(p01, 0))
    negative = (a_eq_b_plus(p00, -1) + b_eq_a_plus(p10, 0)
                + a_eq_b_plus(p11, -1) + b_eq_a_plus(p01, -1))
    return positive - negative


def _signed_value(rho, scenario, measurements):
    if scenario.outcomes_per_setting == 2:
        total = 0.0
        for combo, coeff in correlator_terms(scenario):
            observable = tensor(*[measurements[party][s] for party, s in enumerate(combo)])
            total += coeff * np.trace(rho @ observable).real
        return total
    tables = {
        (a, b): joint_probabilities(rho, [measurements[0][a], measurements[1][b]])
        for a, b in SETTING_PAIRS
    }
    return cglmp_combination(tables[0, 0], tables[0, 1], tables[1, 0], tables[1, 1])


def bell_value(state, scenario, theta):
    """Noiseless Bell value of a state for the given scenario.

    The two-outcome expressions are sign-symmetric under setting relabels, so
    their value is |<B(theta)>|. The three-outcome combination is one-sided
    (its algebraic range is [-4, 2.873] and only the upper side can violate
    the local bound), so it is reported signed.
    """
    scenario = get_scenario(scenario)
    state = as_quantum_state(state, dim=scenario.total_dim)
    measurements = build_measurements(scenario, theta)
    value = float(_signed_value(state.rho, scenario, measurements))
    return abs(value) if scenario.outcomes_per_setting == 2 else value


def quantum_maximum(scenario):
    """Reference quantum maximum of the scenario's Bell expression."""
    scenario = get_scenario(scenario)
    if scenario.id == "chsh":
        return 2.0 * np.sqrt(2.0)
    if scenario.id == "mermin3":
        return 4.0
    return 4.0 / (6.0 * np.sqrt(3.0) - 9.0)
