"""Short-term synaptic plasticity feedback: efficacy r(t) and release probability U(t).

    dr/dt = (1 - r)/tau_r - U r <E>          (depression + recovery)
    dU/dt = (U_base - U)/tau_f + U_base (1 - U) <E>   (facilitation)

A time constant tau <= 0 is a sentinel meaning the channel is disabled:
r stays pinned at r0, U stays pinned at U_base.
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class PlasticityParams:
    tau_r: float = 0.0
    tau_f: float = 0.0
    U_base: float = 0.5
    r0: float = 1.0
    U0: float | None = None  # defaults to U_base

    def __post_init__(self):
        if not 0.0 < self.U_base <= 1.0:
            raise ValueError(f"U_base={self.U_base} outside (0, 1]")
        if not 0.0 <= self.r0 <= 1.0:
            raise ValueError(f"r0={self.r0} outside [0, 1]")
        u0 = self.initial_U
        if not 0.0 <= u0 <= 1.0:
            raise ValueError(f"U0={u0} outside [0, 1]")

    @property
    def depression_enabled(self) -> bool:
        return self.tau_r > 0.0

    @property
    def facilitation_enabled(self) -> bool:
        return self.tau_f > 0.0

    @property
    def initial_U(self) -> float:
        if not self.facilitation_enabled:
            # pinned channel: U identically U_base
            return self.U_base
        return self.U_base if self.U0 is None else self.U0


@dataclass
class SynapseState:
    r: float
    U: float


_E_SLACK = 1e-9


def plasticity_derivatives(
    state: SynapseState, E: float, params: PlasticityParams
) -> tuple[float, float]:
    """(dr/dt, dU/dt) at excitation level E; disabled channels return 0."""
    if not -_E_SLACK <= E <= 1.0 + _E_SLACK:
        raise ValueError(f"excitation E={E} outside [0, 1] beyond numerical slack")
    if params.depression_enabled:
        dr = (1.0 - state.r) / params.tau_r - state.U * state.r * E
    else:
        dr = 0.0
    if params.facilitation_enabled:
        dU = (params.U_base - state.U) / params.tau_f + params.U_base * (1.0 - state.U) * E
    else:
        dU = 0.0
    return dr, dU


def effective_coupling(g0: float, r: float) -> float:
    """Instantaneous coupling g(t) = g0 * r(t)."""
    return g0 * r
