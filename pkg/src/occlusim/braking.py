"""Proportional collision-avoidance braking.

The controller brakes only when the time-to-collision drops to the policy
threshold, and then with pressure proportional to how far below the
threshold it is: full pressure at TTC 0, zero pressure at the threshold.
Pressure maps linearly to deceleration, reaching ``max_decel_mps2`` at
full pressure.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .ttc import TtcOutcome


@dataclass(frozen=True, slots=True)
class BrakePolicy:
    """Thresholds of the proportional braking law.

    ttc_threshold_s: TTC at or below which braking engages (seconds).
    max_pressure_bar: pressure commanded at TTC 0 (bars).
    max_decel_mps2: deceleration produced by full pressure (m/s^2).
    """

    ttc_threshold_s: float = 10.0
    max_pressure_bar: float = 200.0
    max_decel_mps2: float = 8.0

    def __post_init__(self) -> None:
        for name in ("ttc_threshold_s", "max_pressure_bar", "max_decel_mps2"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0.0):
                raise ValueError(f"{name} must be positive and finite, got {value}")


def brake_pressure(t: TtcOutcome, policy: BrakePolicy) -> float:
    """Commanded braking pressure in bars for a TTC outcome.

    No valid TTC, or TTC above the threshold: 0 (maintain speed).
    Otherwise pressure scales linearly from 0 at the threshold up to
    ``max_pressure_bar`` at TTC 0.
    """
    if t is None or t > policy.ttc_threshold_s:
        return 0.0
    return (policy.ttc_threshold_s - t) / policy.ttc_threshold_s * policy.max_pressure_bar


def deceleration_for(pressure_bar: float, policy: BrakePolicy) -> float:
    """Deceleration magnitude (m/s^2) produced by a pressure command."""
    if not (0.0 <= pressure_bar <= policy.max_pressure_bar):
        raise ValueError(
            f"pressure must lie in [0, {policy.max_pressure_bar}], got {pressure_bar}"
        )
    return pressure_bar / policy.max_pressure_bar * policy.max_decel_mps2


def threshold_from_speed(free_flow_speed_mps: float, comfort_decel_mps2: float) -> float:
    """TTC threshold implied by stopping from a design speed at a comfortable
    deceleration (speed / deceleration, in seconds).

    Provided for documentation and validation; the default policy pins the
    threshold to 10 s rather than deriving it.
    """
    if not (math.isfinite(free_flow_speed_mps) and free_flow_speed_mps > 0.0):
        raise ValueError(f"free_flow_speed_mps must be positive, got {free_flow_speed_mps}")
    if not (math.isfinite(comfort_decel_mps2) and comfort_decel_mps2 > 0.0):
        raise ValueError(f"comfort_decel_mps2 must be positive, got {comfort_decel_mps2}")
    return free_flow_speed_mps / comfort_decel_mps2
