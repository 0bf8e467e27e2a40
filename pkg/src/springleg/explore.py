"""Design-space queries built on the multi-squat simulator.

Everything here is derived: minimum squats to reach a target energy, the
energy ceiling of a configuration, and deterministic parameter sweeps whose
rows follow grid order regardless of how many workers evaluate them.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from typing import Mapping, Sequence

from .config import config_from_values, values_from_config
from .cyclic import SimResult, simulate
from .errors import ConfigurationError, DomainError, SimulationError, StallError
from .model import Configuration, initial_spring_length, spring_energy

#: Iteration budget used when a query needs the recurrence run to
#: termination rather than to the configured iteration cap.
_EXHAUSTIVE_ITERATIONS = 10_000


def spring_capacity(config: Configuration) -> float:
    """Energy stored by the spring at its solid length."""
    return spring_energy(config.spring.solid_length, config.spring)


def min_squats(config: Configuration, target_energy: float) -> int | None:
    """Smallest squat count whose stored energy reaches ``target_energy``.

    Returns 0 when the pre-squat (preload) energy already suffices, and
    None when the recurrence converges below the target (infeasible).  The
    run is extended beyond ``config.max_iterations`` if needed, so the
    answer is a property of the mechanism rather than of the iteration cap.
    """
    capacity = spring_capacity(config)
    if target_energy > capacity:
        raise DomainError(
            f"target energy {target_energy} exceeds the spring capacity {capacity}"
        )
    preload_energy = spring_energy(initial_spring_length(config), config.spring)
    if target_energy <= preload_energy:
        return 0
    result = _run_to_termination(config)
    if result is None:
        return None
    for index, record in enumerate(result.records, 1):
        if record.energy_after >= target_energy:
            return index
    return None


def max_energy(config: Configuration) -> float:
    """Supremum of the stored energy the recurrence can reach.

    The spring capacity if full compression is reached; otherwise the energy
    at the recurrence's fixed point, detected by the net-gain tolerance.
    """
    result = _run_to_termination(config)
    if result is None:
        # Not even one squat is possible; the fixed point is the start.
        return spring_energy(initial_spring_length(config), config.spring)
    if result.iterations_to_full_compression is not None:
        return spring_capacity(config)
    return result.final_energy


def _run_to_termination(config: Configuration) -> SimResult | None:
    budget = max(config.max_iterations, _EXHAUSTIVE_ITERATIONS)
    try:
        return simulate(replace(config, max_iterations=budget))
    except StallError:
        return None


@dataclass(frozen=True)
class SweepRow:
    """Summary of one grid point; ``status`` is 'ok', 'invalid', or 'stall'."""

    params: dict[str, object]
    status: str
    reason: str = ""
    final_energy: float | None = None  # J
    iterations: int | None = None
    iterations_to_full_compression: int | None = None
    peak_force: float | None = None  # N
    final_over_e1max: float | None = None
    peak_over_cap: float | None = None


def sweep(
    config: Configuration,
    points: Sequence[Mapping[str, object]],
    workers: int = 1,
) -> list[SweepRow]:
    """Simulate every override point of a parameter grid.

    Each point is a mapping of configuration keys (see ``config.ALL_KEYS``)
    merged over the template configuration.  Invalid or stalling points are
    flagged in their row and do not abort the sweep.  Row order equals grid
    order and the rows are identical for any worker count, since every
    evaluation is a pure function of its merged configuration.
    """
    base = values_from_config(config)
    if workers <= 1 or len(points) <= 1:
        return [_evaluate_point(base, dict(p)) for p in points]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(lambda p: _evaluate_point(base, dict(p)), points))


def _evaluate_point(base: dict[str, object], overrides: dict[str, object]) -> SweepRow:
    try:
        merged = {**base, **overrides}
        trial = config_from_values(merged)
        result = simulate(trial)
    except (ConfigurationError, DomainError) as exc:
        return SweepRow(params=overrides, status="invalid", reason=str(exc))
    except (StallError, SimulationError) as exc:
        return SweepRow(params=overrides, status="stall", reason=str(exc))
    e1, cap = result.normalization
    peak = max(record.end_force for record in result.records)
    return SweepRow(
        params=overrides,
        status="ok",
        final_energy=result.final_energy,
        iterations=len(result.records),
        iterations_to_full_compression=result.iterations_to_full_compression,
        peak_force=peak,
        final_over_e1max=result.final_energy / e1,
        peak_over_cap=peak / cap,
    )
