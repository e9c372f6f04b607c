"""States on the four intersecting hypersurfaces alpha, beta, gamma, delta.

All states are written in the coordinate basis of the frame in which alpha
and beta are simultaneity planes.  gamma carries S1 past its local evolution
while S2 has not yet evolved; delta is the mirror image; beta has both
evolutions applied.

Observable roles follow the intersection points::

    alpha: (A1, A2)   beta: (B1, B2)   gamma: (B1, A2)   delta: (A1, B2)
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .linalg import embed, partial_trace
from .objects import DensityOperator, LocalObservable, QuantumChannel, validate_channel


class Surface(str, Enum):
    ALPHA = "alpha"
    BETA = "beta"
    GAMMA = "gamma"
    DELTA = "delta"

    def __str__(self):
        return self.value


SURFACES = (Surface.ALPHA, Surface.BETA, Surface.GAMMA, Surface.DELTA)

# which of the two channels have acted before each surface
_EVOLVED = {
    Surface.ALPHA: (),
    Surface.BETA: (1, 2),
    Surface.GAMMA: (1,),
    Surface.DELTA: (2,),
}


@dataclass(frozen=True, eq=False)
class FourSurfaceScenario:
    rho_alpha: DensityOperator
    channel_1: QuantumChannel
    channel_2: QuantumChannel
    obs_alpha: tuple[LocalObservable, LocalObservable]
    obs_beta: tuple[LocalObservable, LocalObservable]

    def __post_init__(self):
        layout = self.rho_alpha.layout
        if len(layout) != 2:
            raise ValueError(f"scenario needs a bipartite layout, got {layout.dims}")
        for k, ch in ((1, self.channel_1), (2, self.channel_2)):
            if ch.subsystem != k:
                raise ValueError(f"channel_{k} acts on subsystem {ch.subsystem}")
            if ch.dim != layout.local_dim(k):
                raise ValueError(f"channel_{k} has dim {ch.dim}, subsystem has {layout.local_dim(k)}")
            rep = validate_channel(ch)
            if not rep.ok:
                raise ValueError(f"channel_{k}: {rep.message}")
        for pair, tag in ((self.obs_alpha, "A"), (self.obs_beta, "B")):
            for k, obs in enumerate(pair, start=1):
                if obs.subsystem != k:
                    raise ValueError(f"{tag}{k} must act on subsystem {k}, not {obs.subsystem}")
                if obs.dim != layout.local_dim(k):
                    raise ValueError(f"{tag}{k} has dim {obs.dim}, subsystem has {layout.local_dim(k)}")

    @property
    def layout(self):
        return self.rho_alpha.layout

    def channel(self, subsystem: int) -> QuantumChannel:
        return (self.channel_1, self.channel_2)[subsystem - 1]

    def observables(self, surface: Surface) -> tuple[LocalObservable, LocalObservable]:
        """Observable pair read off on ``surface``."""
        a1, a2 = self.obs_alpha
        b1, b2 = self.obs_beta
        return {
            Surface.ALPHA: (a1, a2),
            Surface.BETA: (b1, b2),
            Surface.GAMMA: (b1, a2),
            Surface.DELTA: (a1, b2),
        }[Surface(surface)]


def apply_channel(rho: DensityOperator, channel: QuantumChannel) -> DensityOperator:
    """rho -> sum_k (K_k on its subsystem) rho (K_k on its subsystem)^H."""
    m = rho.matrix
    out = np.zeros_like(m)
    for k in channel.ops:
        big = embed(k, rho.layout, channel.subsystem)
        out += big @ m @ big.conj().T
    # symmetrise away roundoff asymmetry
    return DensityOperator(rho.layout, 0.5 * (out + out.conj().T))


def state_on(scenario: FourSurfaceScenario, surface: Surface) -> DensityOperator:
    rho = scenario.rho_alpha
    for k in _EVOLVED[Surface(surface)]:
        rho = apply_channel(rho, scenario.channel(k))
    return rho


def effective_observable(channel: QuantumChannel, b: LocalObservable) -> np.ndarray:
    """Heisenberg-picture pull-back of ``b`` through ``channel``.

    Unitary: U^H B U.  Kraus: sum_k K_k^H B K_k, which is Hermitian but in
    general not projective.
    """
    if channel.subsystem != b.subsystem:
        raise ValueError(
            f"channel acts on subsystem {channel.subsystem}, observable on {b.subsystem}"
        )
    bop = b.operator()
    return sum(k.conj().T @ bop @ k for k in channel.ops)


@dataclass
class NoSignalingReport:
    ok: bool
    max_deviation: float
    deviations: dict[str, float]


def check_no_signaling(scenario: FourSurfaceScenario, tol: float = 1e-10) -> NoSignalingReport:
    """Reduced states must be unchanged by evolution of the other subsystem."""
    layout = scenario.layout
    red = {
        s: (partial_trace(state_on(scenario, s).matrix, layout, 1),
            partial_trace(state_on(scenario, s).matrix, layout, 2))
        for s in SURFACES
    }
    pairs = {
        "S2 gamma~alpha": (red[Surface.GAMMA][1], red[Surface.ALPHA][1]),
        "S1 delta~alpha": (red[Surface.DELTA][0], red[Surface.ALPHA][0]),
        "S1 beta~gamma": (red[Surface.BETA][0], red[Surface.GAMMA][0]),
        "S2 beta~delta": (red[Surface.BETA][1], red[Surface.DELTA][1]),
    }
    devs = {k: float(np.max(np.abs(a - b))) for k, (a, b) in pairs.items()}
    worst = max(devs.values())
    return NoSignalingReport(worst <= tol, worst, devs)
