"""Design-space queries: squat counts, energy ceilings, sweeps."""

import math

import pytest

from springleg import (
    DomainError,
    LossModel,
    SpringParams,
    max_energy,
    min_squats,
    simulate,
    spring_capacity,
    sweep,
)

from conftest import worked_config


class TestMinSquats:
    def test_zero_target(self):
        assert min_squats(worked_config(), 0.0) == 0

    def test_worked_two_squats(self):
        assert min_squats(worked_config(), 2.0) == 2

    def test_one_squat(self):
        assert min_squats(worked_config(), 0.5) == 1

    def test_target_beyond_capacity_rejected(self):
        config = worked_config()
        with pytest.raises(DomainError, match="capacity"):
            min_squats(config, spring_capacity(config) * 1.01)

    def test_exact_capacity_is_allowed(self):
        config = worked_config()
        assert min_squats(config, spring_capacity(config)) == 3

    def test_infeasible_when_recurrence_converges_short(self):
        config = worked_config(
            spring=SpringParams(stiffness=1000.0, free_length=0.12, solid_length=0.002),
            force_cap=10.0,
        )
        assert min_squats(config, spring_capacity(config)) is None

    def test_monotone_in_target_and_cap(self):
        config = worked_config()
        targets = [0.0, 0.4, 0.8, 1.6, 2.4, 3.1]
        counts = [min_squats(config, t) for t in targets]
        assert counts == sorted(counts)
        # a lower cap can never reach a target in fewer squats
        tighter = worked_config(force_cap=14.0)
        for target in (0.5, 1.5, 2.5):
            assert min_squats(tighter, target) >= min_squats(config, target)


class TestMaxEnergy:
    def test_ample_range_reaches_capacity(self):
        config = worked_config()
        assert max_energy(config) == pytest.approx(spring_capacity(config), rel=1e-12)
        assert max_energy(config) == pytest.approx(3.2, rel=1e-12)

    def test_low_cap_fixed_point_matches_bisection(self):
        config = worked_config(
            spring=SpringParams(stiffness=1000.0, free_length=0.12, solid_length=0.002),
            force_cap=10.0,
        )
        ceiling = max_energy(config)
        # the fixed point satisfies k*s*(s0-s)/standing = cap; solve by
        # bisection on the larger root's branch as an independent check
        k, s0, lstand, cap = 1000.0, 0.12, 0.3, 10.0
        lo, hi = s0 / 2, s0
        for _ in range(200):
            mid = 0.5 * (lo + hi)
            if k * mid * (s0 - mid) / lstand >= cap:
                lo = mid
            else:
                hi = mid
        s_star = 0.5 * (lo + hi)
        assert ceiling == pytest.approx(0.5 * k * (s0 - s_star) ** 2, rel=1e-6)

    def test_degenerate_spring_stores_nothing(self):
        config = worked_config(
            spring=SpringParams(
                stiffness=1000.0, free_length=0.12, solid_length=0.12 * (1 - 1e-9)
            ),
        )
        assert max_energy(config) == pytest.approx(0.0, abs=1e-12)


class TestSweep:
    def test_single_point_equals_simulate(self):
        config = worked_config()
        rows = sweep(config, [{}])
        result = simulate(config)
        assert len(rows) == 1
        assert rows[0].status == "ok"
        assert rows[0].final_energy == result.final_energy
        assert rows[0].iterations == len(result.records)

    def test_cap_sweep_shows_force_energy_tradeoff(self):
        config = worked_config(
            spring=SpringParams(stiffness=1000.0, free_length=0.12, solid_length=0.002),
        )
        caps = [50.0, 75.0, 100.0]
        rows = sweep(config, [{"force_cap_n": c} for c in caps])
        iterations = [r.iterations for r in rows]
        assert iterations == sorted(iterations, reverse=True)  # lower cap, more squats
        assert all(r.peak_force <= c * (1 + 1e-12) for r, c in zip(rows, caps))

    def test_stall_rows_flagged_without_abort(self):
        # middle point has a cap below the preload force: first-squat stall
        config = worked_config(
            spring=SpringParams(stiffness=1000.0, free_length=0.13, solid_length=0.04),
        )
        rows = sweep(
            config,
            [{"force_cap_n": 100.0}, {"force_cap_n": 1.0}, {"force_cap_n": 50.0}],
        )
        assert [r.status for r in rows] == ["ok", "stall", "ok"]
        assert "no compression" in rows[1].reason

    def test_invalid_rows_flagged(self):
        rows = sweep(worked_config(), [{"efficiency": 1.2}, {"efficiency": 1.0}])
        assert rows[0].status == "invalid"
        assert "efficiency" in rows[0].reason
        assert rows[1].status == "ok"

    def test_row_order_independent_of_workers(self):
        config = worked_config()
        points = [{"force_cap_n": c} for c in (20.0, 40.0, 60.0, 80.0, 100.0, 120.0)]
        serial = sweep(config, points, workers=1)
        threaded = sweep(config, points, workers=4)
        assert serial == threaded
