"""Surrogate vision model: detection probability and geometric occlusion.

The perception component is abstracted to one per-step detection
probability shaped by illuminance, contrast, and occlusion:

    p = p_base * g_E(E) * c**gamma * (1 - occ)

where g_E ramps linearly in log10(E) from e_min (no detection at or below)
to e_sat (fully lit). Occlusion is purely geometric: the fraction of sample
rays from the camera to a small disc around the hand that are blocked by
arm links or conveyor objects, and 1.0 whenever the hand leaves the field
of view.
"""

from __future__ import annotations

import math

from ..errors import DomainError
from .geometry import point_segment_distance, segment_segment_distance

N_OCCLUSION_RAYS = 16
HAND_DISC_RADIUS = 0.05
ARM_LINK_RADIUS = 0.05
OBJECT_RADIUS = 0.035

_SAMPLE_OFFSETS = tuple(
    (HAND_DISC_RADIUS * math.cos(2.0 * math.pi * k / N_OCCLUSION_RAYS),
     HAND_DISC_RADIUS * math.sin(2.0 * math.pi * k / N_OCCLUSION_RAYS))
    for k in range(N_OCCLUSION_RAYS)
)


def illuminance_gate(illuminance: float, e_min: float, e_sat: float) -> float:
    """Log-linear ramp from e_min to e_sat, clamped to [0, 1]."""
    if illuminance <= e_min:
        return 0.0
    if illuminance >= e_sat:
        return 1.0
    return (math.log10(illuminance) - math.log10(e_min)) / \
        (math.log10(e_sat) - math.log10(e_min))


def detection_probability(p_base: float, illuminance: float, contrast: float,
                          occlusion: float, e_min: float = 100.0,
                          e_sat: float = 1000.0,
                          contrast_exponent: float = 0.5) -> float:
    """Per-step probability that the target is detected."""
    if not (0.0 <= p_base <= 1.0):
        raise DomainError(f"p_base outside [0, 1]: {p_base}")
    if not (0.0 <= contrast <= 1.0):
        raise DomainError(f"contrast outside [0, 1]: {contrast}")
    if not (0.0 <= occlusion <= 1.0):
        raise DomainError(f"occlusion outside [0, 1]: {occlusion}")
    if illuminance < 0.0:
        raise DomainError(f"illuminance must be non-negative: {illuminance}")
    if not (0.0 < e_min < e_sat):
        raise DomainError(f"need 0 < e_min < e_sat, got {e_min}, {e_sat}")
    gate = illuminance_gate(illuminance, e_min, e_sat)
    return p_base * gate * (contrast ** contrast_exponent) * (1.0 - occlusion)


def in_field_of_view(cam_x: float, cam_y: float, yaw: float,
                     half_angle: float, px: float, py: float) -> bool:
    dx = px - cam_x
    dy = py - cam_y
    r = math.hypot(dx, dy)
    if r < 1e-12:
        return True
    cos_to_point = (dx * math.cos(yaw) + dy * math.sin(yaw)) / r
    # Guard acos domain; compare angles rather than cosines so half_angle
    # values above pi/2 behave.
    if cos_to_point > 1.0:
        cos_to_point = 1.0
    elif cos_to_point < -1.0:
        cos_to_point = -1.0
    return math.acos(cos_to_point) <= half_angle


def occlusion_fraction(cam_x: float, cam_y: float, yaw: float,
                       half_angle: float, hand_x: float, hand_y: float,
                       segments: tuple = (), discs: tuple = ()) -> float:
    """Blocked fraction of sample rays from the camera to the hand disc.

    `segments` holds capsules as (ax, ay, bx, by, radius); `discs` holds
    (x, y, radius). Returns 1.0 outright when the hand is outside the
    camera cone.
    """
    if not in_field_of_view(cam_x, cam_y, yaw, half_angle, hand_x, hand_y):
        return 1.0

    # Screen blockers against the camera-to-hand corridor before paying for
    # the full per-ray test; most steps have a clear view.
    near_segments = []
    for ax, ay, bx, by, radius in segments:
        if segment_segment_distance(cam_x, cam_y, hand_x, hand_y,
                                    ax, ay, bx, by) <= radius + HAND_DISC_RADIUS:
            near_segments.append((ax, ay, bx, by, radius))
    near_discs = []
    for ox, oy, radius in discs:
        if point_segment_distance(ox, oy, cam_x, cam_y,
                                  hand_x, hand_y) <= radius + HAND_DISC_RADIUS:
            near_discs.append((ox, oy, radius))
    if not near_segments and not near_discs:
        return 0.0

    blocked = 0
    for off_x, off_y in _SAMPLE_OFFSETS:
        sx = hand_x + off_x
        sy = hand_y + off_y
        hit = False
        for ax, ay, bx, by, radius in near_segments:
            if segment_segment_distance(cam_x, cam_y, sx, sy, ax, ay, bx, by) <= radius:
                hit = True
                break
        if not hit:
            for ox, oy, radius in near_discs:
                if point_segment_distance(ox, oy, cam_x, cam_y, sx, sy) <= radius:
                    hit = True
                    break
        if hit:
            blocked += 1
    return blocked / float(N_OCCLUSION_RAYS)
