"""Multi-squat energy accumulation: squat, lock, retract, repeat.

Each iteration compresses the spring at a fixed spring position until the
hip force reaches the force cap (or the leg range or the solid spring stops
it first).  The spring is then locked at its compressed length while the leg
extends, and the endpoints retract toward the knee so that the next squat
starts within the force cap again.  Losses enter as an energy efficiency per
lock/retract transition, and a ratchet pitch quantizes the retracted
position, leaving a force-free dead band at the start of the next squat.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, replace

import numpy as np

from .baseline import e1_max
from .errors import GeometryError, SimulationError, StallError
from .model import (
    Configuration,
    Trajectory,
    hip_force,
    initial_spring_length,
    spring_energy,
    CompressionPolicy,
)


class StopReason(enum.Enum):
    """Why a squat stroke ended."""

    FORCE_CAP = "force_cap"  # hip force reached the cap
    LEG_RANGE = "leg_range"  # leg deformation range exhausted
    SPRING_SOLID = "spring_solid"  # spring fully compressed
    ENGAGED_ONLY = "engaged_only"  # dead band consumed the stroke, no compression


@dataclass(frozen=True)
class CycleState:
    """State at the start of squat ``iteration`` (end state once ``spring_length_end`` is set).

    ``dead_band`` is the leg travel at the start of the squat during which
    ratchet-induced cable slack keeps the hip force at zero; it is 0 for
    continuous locking.
    """

    iteration: int
    spring_position: float  # m, distance from the knee
    spring_length_start: float  # m, pre-squat spring length
    spring_length_end: float | None = None  # m, post-squat spring length
    dead_band: float = 0.0  # m


@dataclass(frozen=True)
class SquatRecord:
    """Completed-squat snapshot with forces, energies, and the stop label."""

    state: CycleState
    start_force: float  # hip force when the spring engages, N
    end_force: float  # hip force at the bottom of the stroke, N
    energy_before: float  # J
    energy_after: float  # J
    leg_travel_used: float  # m, dead band plus engaged stroke
    stop_reason: StopReason


@dataclass(frozen=True)
class SimResult:
    """Full record of a multi-squat run."""

    records: tuple[SquatRecord, ...]
    trajectories: tuple[Trajectory, ...]
    final_energy: float  # J
    iterations_to_full_compression: int | None  # None = not reached
    normalization: tuple[float, float]  # (e1_max, force_cap)
    config: Configuration

    @property
    def final_spring_length(self) -> float:
        return self.records[-1].state.spring_length_end


@dataclass(frozen=True)
class ReleaseProfile:
    """Quasi-static extension of the locked spring at a fixed position."""

    trajectory: Trajectory
    peak_force: float  # hip force at the start of the release, N
    released_energy: float  # spring energy drop over the extension, J


def initial_state(config: Configuration) -> CycleState:
    """State before the first squat.

    The pre-squat spring length follows from the configured spring position
    at standing.  A length below the free length means the spring is
    pre-loaded and the hip sees a nonzero force before any squat.
    """
    s_start = initial_spring_length(config)
    return CycleState(
        iteration=1,
        spring_position=config.initial_spring_position,
        spring_length_start=s_start,
        dead_band=0.0,
    )


def start_force(state: CycleState, config: Configuration) -> float:
    """Hip force at the moment the spring engages in squat ``state.iteration``."""
    return hip_force(state.spring_position, state.spring_length_start, config.leg, config.spring)


def squat_step(
    state: CycleState, config: Configuration
) -> tuple[CycleState, SquatRecord, Trajectory]:
    """Run one squat at fixed spring position and return the completed state.

    The spring length decreases with the leg until the first stop: hip force
    at the cap (skipped under the FULL_RANGE policy), leg range exhausted,
    or spring solid.  The stop with the largest spring length binds; exact
    ties are labeled FORCE_CAP over LEG_RANGE over SPRING_SOLID.

    Raises
    ------
    StallError
        If no stop candidate lies below the pre-squat spring length, i.e.
        zero compression is possible (spring already solid, or the start
        force already at the cap).  A ratchet dead band that eats the whole
        leg range instead yields a zero-compression ENGAGED_ONLY record.
    """
    if state.spring_length_end is not None:
        raise SimulationError(f"squat {state.iteration} already completed")
    geom, spring = config.leg, config.spring
    x = state.spring_position
    s_start = state.spring_length_start
    if s_start <= spring.solid_length:
        raise StallError(
            f"squat {state.iteration}: spring already at solid length {spring.solid_length}"
        )

    ratio = x / geom.segment_length
    candidates: list[tuple[float, StopReason]] = []
    if config.policy is CompressionPolicy.FORCE_LIMITED:
        s_cap = spring.free_length - config.force_cap / (spring.stiffness * ratio)
        candidates.append((s_cap, StopReason.FORCE_CAP))
    s_range = ratio * (geom.standing_length - geom.max_deformation)
    candidates.append((s_range, StopReason.LEG_RANGE))
    candidates.append((spring.solid_length, StopReason.SPRING_SOLID))

    s_end = max(s for s, _ in candidates)
    reason = next(r for s, r in candidates if s == s_end)

    if s_end >= s_start:
        if reason is StopReason.LEG_RANGE and state.dead_band > 0:
            # The quantized retraction left so much slack that the leg range
            # is used up before (or exactly when) the cable re-tensions.
            return _engaged_only_step(state, config)
        raise StallError(
            f"squat {state.iteration}: no compression possible below spring length "
            f"{s_start} (binding stop: {reason.value} at {s_end})"
        )

    f_start = ratio * spring.stiffness * (spring.free_length - s_start)
    f_end = ratio * spring.stiffness * (spring.free_length - s_end)
    e_before = spring_energy(s_start, spring)
    e_after = spring_energy(s_end, spring)
    leg_travel = geom.standing_length - s_end * geom.segment_length / x

    # Uniform samples in leg deformation over the engaged stroke; the dead
    # band carries no force and no spring motion, so it is not sampled.
    deformation = np.linspace(state.dead_band, leg_travel, config.sample_count)
    s_samples = ratio * (geom.standing_length - deformation)
    f_samples = ratio * spring.stiffness * (spring.free_length - s_samples)
    e_samples = 0.5 * spring.stiffness * (spring.free_length - s_samples) ** 2
    trajectory = Trajectory(deformation, s_samples, f_samples, e_samples)

    done = replace(state, spring_length_end=s_end)
    record = SquatRecord(
        state=done,
        start_force=f_start,
        end_force=f_end,
        energy_before=e_before,
        energy_after=e_after,
        leg_travel_used=leg_travel,
        stop_reason=reason,
    )
    return done, record, trajectory


def _engaged_only_step(
    state: CycleState, config: Configuration
) -> tuple[CycleState, SquatRecord, Trajectory]:
    s = state.spring_length_start
    f = hip_force(state.spring_position, s, config.leg, config.spring)
    e = spring_energy(s, config.spring)
    travel = config.leg.max_deformation
    deformation = np.array([0.0, travel])
    trajectory = Trajectory(
        deformation,
        np.full(2, s),
        np.zeros(2),  # cable slack: the spring never loads the hip
        np.full(2, e),
    )
    done = replace(state, spring_length_end=s)
    record = SquatRecord(
        state=done,
        start_force=f,
        end_force=f,
        energy_before=e,
        energy_after=e,
        leg_travel_used=travel,
        stop_reason=StopReason.ENGAGED_ONLY,
    )
    return done, record, trajectory


def lock_and_retract(state: CycleState, config: Configuration) -> CycleState:
    """Lock the spring, extend the leg, and retract the endpoints toward the knee.

    The spring length carries over scaled by the loss model: the next
    pre-squat length is ``s0 - sqrt(efficiency) * (s0 - s_end)``, so the
    stored energy across the transition scales by exactly ``efficiency``.
    With continuous locking the new position restores standing consistency
    ``x = s * segment_length / standing_length``; a positive ratchet pitch
    rounds the position away from the knee onto the tooth grid (never past
    the hip), and the resulting cable slack becomes a force-free dead band.
    """
    if state.spring_length_end is None:
        raise SimulationError(f"squat {state.iteration} has no completed compression to lock")
    geom = config.leg
    s0 = config.spring.free_length
    s_next = s0 - math.sqrt(config.loss.efficiency) * (s0 - state.spring_length_end)
    x_target = s_next * geom.segment_length / geom.standing_length
    if x_target > geom.segment_length:
        raise SimulationError(
            f"retraction after squat {state.iteration} needs spring position {x_target} "
            f"beyond the hip ({geom.segment_length}): the locked spring (length {s_next}) "
            "no longer fits the standing leg"
        )

    pitch = config.loss.ratchet_pitch
    if pitch > 0:
        x_next = min(pitch * math.ceil(x_target / pitch), geom.segment_length)
        dead_band = geom.standing_length - s_next * geom.segment_length / x_next
    else:
        x_next = x_target
        dead_band = 0.0

    return CycleState(
        iteration=state.iteration + 1,
        spring_position=x_next,
        spring_length_start=s_next,
        dead_band=dead_band,
    )


def simulate(config: Configuration) -> SimResult:
    """Alternate squats and lock/retract transitions until done.

    Termination, in order of precedence per iteration:

    * full compression: post-squat spring length within ``tol_abs`` of the
      solid length;
    * convergence: net stored-energy progress since the previous squat below
      ``tol_gain`` (this detects both the vanishing-progress regime of the
      ideal mechanism and the loss/regain fixed point of a lossy one);
    * a stall on any squat after the first (no compression possible);
    * ``max_iterations``.

    A stall on the first squat raises, since the configuration can
    accumulate nothing at all.  The result is a pure function of the
    configuration: identical configurations give bit-identical results.
    """
    state = initial_state(config)
    records: list[SquatRecord] = []
    trajectories: list[Trajectory] = []
    full_at: int | None = None

    for iteration in range(1, config.max_iterations + 1):
        try:
            state, record, trajectory = squat_step(state, config)
        except StallError:
            if iteration == 1:
                raise
            break
        records.append(record)
        trajectories.append(trajectory)

        s_end = record.state.spring_length_end
        if s_end <= config.spring.solid_length + config.tol_abs:
            full_at = iteration
            break
        previous = records[-2].energy_after if len(records) >= 2 else records[0].energy_before
        if record.energy_after - previous < config.tol_gain:
            break
        if iteration < config.max_iterations:
            state = lock_and_retract(state, config)

    return SimResult(
        records=tuple(records),
        trajectories=tuple(trajectories),
        final_energy=records[-1].energy_after,
        iterations_to_full_compression=full_at,
        normalization=(e1_max(config.body, config.leg), config.force_cap),
        config=config,
    )


def release_profile(
    spring_length: float, config: Configuration, x_release: float | None = None
) -> ReleaseProfile:
    """Quasi-static extension from a locked spring at position ``x_release``.

    The leg starts at the (deep) posture where the spring at ``x_release``
    spans its locked length and extends until the spring reaches its free
    length or the leg reaches standing, whichever comes first.  Resetting to
    ``x_release = segment_length`` (the default) yields the largest
    assistive hip force the stored energy can provide.

    Raises
    ------
    GeometryError
        If the starting posture lies outside the leg's deformation range.
    """
    geom, spring = config.leg, config.spring
    if x_release is None:
        x_release = geom.segment_length
    if not 0 < x_release <= geom.segment_length:
        raise GeometryError(
            f"x_release={x_release} outside (0, segment_length={geom.segment_length}]"
        )
    if not spring.solid_length <= spring_length <= spring.free_length:
        raise GeometryError(
            f"locked spring length {spring_length} outside "
            f"[{spring.solid_length}, {spring.free_length}]"
        )
    ratio = x_release / geom.segment_length
    leg_start = spring_length / ratio
    if leg_start < geom.standing_length - geom.max_deformation:
        raise GeometryError(
            f"release posture needs leg length {leg_start}, below the reachable minimum "
            f"{geom.standing_length - geom.max_deformation}: release at a smaller x_release"
        )

    s_end = min(spring.free_length, ratio * geom.standing_length)
    leg_end = s_end / ratio
    deformation = np.linspace(
        geom.standing_length - leg_start, geom.standing_length - leg_end, config.sample_count
    )
    s_samples = ratio * (geom.standing_length - deformation)
    f_samples = ratio * spring.stiffness * (spring.free_length - s_samples)
    e_samples = 0.5 * spring.stiffness * (spring.free_length - s_samples) ** 2
    trajectory = Trajectory(deformation, s_samples, f_samples, e_samples)

    return ReleaseProfile(
        trajectory=trajectory,
        peak_force=hip_force(x_release, spring_length, geom, spring),
        released_energy=spring_energy(spring_length, spring) - spring_energy(s_end, spring),
    )
