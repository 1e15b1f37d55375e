"""Single-atom evolution operator: free flight, Rabi rotation with recoil, free flight."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ZeroAmplitude
from .hilbert import (
    AtomState,
    CMWaveFunction,
    InternalLabel,
    free_propagate,
    inner,
    momentum_kick,
)


@dataclass(frozen=True)
class PulseModel:
    """Parameters of the single-atom unitary ``U = F(t_post) R F(t_pre)``.

    ``theta`` is the rotation angle of the internal two-level system, so a
    ground-state atom ends up excited with amplitude ``i sin(theta)``.
    ``wrap_tol`` is forwarded to ``free_propagate`` as its boundary guard
    (``None`` disables it).
    """

    theta: float
    k_recoil: float = 0.0
    t_pre: float = 0.0
    t_post: float = 0.0
    mass: float = 1.0
    wrap_tol: float | None = 1e-6

    def __post_init__(self):
        if not 0 <= self.theta <= np.pi / 2:
            raise ValueError(f"theta must lie in [0, pi/2], got {self.theta}")
        if self.k_recoil < 0:
            raise ValueError("k_recoil must be >= 0")
        if self.t_pre < 0 or self.t_post < 0:
            raise ValueError("free-flight times must be >= 0")
        if self.mass <= 0:
            raise ValueError("mass must be > 0")


@dataclass(frozen=True, eq=False)
class ChannelPair:
    """U|s> split by internal label; each channel is unnormalised."""

    g_channel: CMWaveFunction
    e_channel: CMWaveFunction

    def channel(self, label: InternalLabel) -> CMWaveFunction:
        return self.g_channel if label is InternalLabel.GROUND else self.e_channel

    @property
    def norm_sq(self) -> float:
        return self.g_channel.norm_sq + self.e_channel.norm_sq


def _drift(model: PulseModel, psi: CMWaveFunction, t: float) -> CMWaveFunction:
    return free_propagate(psi, t, model.mass, leak_tol=model.wrap_tol)


def apply_U(model: PulseModel, s: AtomState) -> ChannelPair:
    cm = _drift(model, s.cm, model.t_pre)
    c, sn = np.cos(model.theta), np.sin(model.theta)
    if s.internal is InternalLabel.GROUND:
        g = cm.scaled(c)
        e = momentum_kick(cm, model.k_recoil).scaled(1j * sn)
    else:
        e = cm.scaled(c)
        g = momentum_kick(cm, -model.k_recoil).scaled(1j * sn)
    return ChannelPair(_drift(model, g, model.t_post), _drift(model, e, model.t_post))


def single_amplitude(model: PulseModel, final: AtomState, initial: AtomState) -> complex:
    """<final| U |initial>."""
    out = apply_U(model, initial)
    return inner(final.cm, out.channel(final.internal))


def recoiled_state(model: PulseModel, phi: CMWaveFunction) -> CMWaveFunction:
    """Normalised excited-channel image of ``phi``, with the factor ``i`` removed.

    With this phase convention ``<phi~_e|U|phi_g> = i sin(theta)`` exactly.
    """
    e = apply_U(model, AtomState(phi, InternalLabel.GROUND)).e_channel
    n2 = e.norm_sq
    if n2 == 0:
        raise ZeroAmplitude("theta = 0 leaves the excited channel empty")
    return e.scaled(-1j / np.sqrt(n2))


def default_final_states(
    model: PulseModel, phi: CMWaveFunction, psi: CMWaveFunction
) -> tuple[CMWaveFunction, CMWaveFunction]:
    return recoiled_state(model, phi), recoiled_state(model, psi)


def orthogonalized_final_states(
    model: PulseModel, phi: CMWaveFunction, psi: CMWaveFunction
) -> tuple[CMWaveFunction, CMWaveFunction]:
    """Final packets that each exclude the other atom's recoiled image.

    ``phi_tilde`` is the recoiled image of ``phi`` with its component along the
    recoiled image of ``psi`` projected out (and vice versa). This makes the
    crossed channel vanish while keeping a nonzero initial overlap, i.e. it
    puts the problem in the crossed-negligible regime by construction.
    """
    a, b = default_final_states(model, phi, psi)
    return _project_out(a, b), _project_out(b, a)


def _project_out(a: CMWaveFunction, b: CMWaveFunction) -> CMWaveFunction:
    rest = a - b.scaled(inner(b, a))
    if rest.norm_sq < 1e-24:
        raise ZeroAmplitude("final states are parallel; nothing left after projection")
    rest = rest.normalized()
    rest = (rest - b.scaled(inner(b, rest))).normalized()  # second Gram-Schmidt pass
    # fix the phase so the direct amplitude keeps the i*sin(theta) convention
    phase = inner(rest, a)
    return rest.scaled(phase / abs(phase))
