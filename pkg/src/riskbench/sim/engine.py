"""Deterministic fixed-step simulation of the collaborative cell.

One `simulate(scenario, seed)` call plays out a conveyor feeding objects
past a two-link arm while a scripted operator periodically reaches a hand
into the workspace. The robot only knows what the surrogate camera tells
it: objects must be seen once before the task logic will chase them, and
the hand position is held for a bounded number of missed frames before the
controller treats the workspace as clear. Speed is governed so that, while
the hand is tracked, the protective separation distance plus a two-step
closing guard never exceeds the perceived clearance.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass

from ..errors import DomainError
from .geometry import (point_segment_distance, segment_segment_distance,
                       two_link_elbow)
from .perception import (ARM_LINK_RADIUS, HAND_DISC_RADIUS, N_OCCLUSION_RAYS,
                         OBJECT_RADIUS, _SAMPLE_OFFSETS, illuminance_gate,
                         in_field_of_view)
from .scenario import MODE_MONITORED_STOP, MODE_SSM, Scenario, validate_scenario

# Screening slack: a blocker farther than its radius plus the hand-disc
# radius from the camera-to-hand sight line cannot touch any sample ray.
_LINK_SCREEN = ARM_LINK_RADIUS + HAND_DISC_RADIUS
_DISC_SCREEN = OBJECT_RADIUS + HAND_DISC_RADIUS
_N_RAYS = float(N_OCCLUSION_RAYS)

TRACE_COLUMNS = ("t", "d", "S_p", "v_r", "detected",
                 "ee_x", "ee_y", "hand_x", "hand_y")

# Contact closer than this counts as a collision.
CONTACT_EPSILON = 0.02

# Operator reach script timing (seconds): extend, dwell deep, retract, rest.
HAND_DWELL = 1.2
HAND_REST = 0.6

# Chase gain: closing speed on a conveyor object is the belt speed plus
# gap/CHASE_GAIN, so the gap contracts instead of reaching a trailing
# equilibrium the way a pure gap/deadline pace would.
CHASE_GAIN = 0.8

# Aim to reach a chased object with this fraction of its remaining belt
# time still left.
CHASE_LEAD = 0.75

# Keep commanded arm targets strictly inside the reachable annulus.
REACH_SLACK = 0.03
INNER_SLACK = 0.01


def protective_distance(v_r: float, reaction_time: float,
                        assumed_human_speed: float, brake_decel: float,
                        min_clearance: float) -> float:
    """Separation the cell must hold at robot speed v_r.

    Covers human travel during the reaction window, robot travel during the
    reaction window, the robot braking distance, and a fixed clearance.
    """
    if brake_decel <= 0.0:
        raise DomainError(
            f"brake_decel must be positive, got {brake_decel!r}")
    if v_r < 0.0:
        raise DomainError(f"robot speed must be non-negative, got {v_r!r}")
    return (assumed_human_speed * reaction_time
            + v_r * reaction_time
            + v_r * v_r / (2.0 * brake_decel)
            + min_clearance)


@dataclass(frozen=True)
class TraceMetrics:
    min_margin: float
    min_distance: float
    objects_fallen: int
    detection_miss_ratio: float
    collision: bool

    def as_dict(self) -> dict:
        return {
            "min_margin": self.min_margin,
            "min_distance": self.min_distance,
            "objects_fallen": float(self.objects_fallen),
            "detection_miss_ratio": self.detection_miss_ratio,
            "collision": 1.0 if self.collision else 0.0,
        }


@dataclass(frozen=True)
class Trace:
    seed: int
    dt: float
    steps: tuple
    metrics: TraceMetrics


def _hand_depth(t: float, start_time: float, reach: float, speed: float) -> float:
    """Scripted intrusion depth at time t (0 = hand at the torso)."""
    if t < start_time or reach <= 0.0:
        return 0.0
    t_out = reach / speed
    cycle = 2.0 * t_out + HAND_DWELL + HAND_REST
    u = (t - start_time) % cycle
    if u < t_out:
        return speed * u
    u -= t_out
    if u < HAND_DWELL:
        return reach
    u -= HAND_DWELL
    if u < t_out:
        return reach - speed * u
    return 0.0


def simulate(scenario: Scenario, seed: int) -> Trace:
    """Run one episode and return the trace with its summary metrics."""
    validate_scenario(scenario)
    rng = random.Random(seed)

    dt = scenario.dt
    n_steps = int(scenario.duration / dt + 1e-9)

    belt = scenario.belt
    arm = scenario.arm
    op = scenario.operator
    cam = scenario.camera
    env = scenario.environment
    ctrl = scenario.controller
    per = scenario.perception

    # Belt geometry.
    belt_sx, belt_sy = belt.start
    belt_ex, belt_ey = belt.end
    belt_len = math.hypot(belt_ex - belt_sx, belt_ey - belt_sy)
    if belt_len <= 0.0:
        raise DomainError("belt has zero length")
    belt_ux = (belt_ex - belt_sx) / belt_len
    belt_uy = (belt_ey - belt_sy) / belt_len
    belt_speed = belt.speed
    spawn_interval = belt.spawn_interval
    n_objects = belt.object_count

    # Arm geometry and controller constants.
    base_x, base_y = arm.base
    l1 = arm.link1
    l2 = arm.link2
    reach_max = l1 + l2 - REACH_SLACK
    reach_min = abs(l1 - l2) + INNER_SLACK
    v_max = arm.max_speed
    a_brake = arm.brake_decel
    pick_radius = arm.pick_radius
    bin_x, bin_y = arm.bin

    t_r = ctrl.reaction_time
    v_h = ctrl.assumed_human_speed
    clearance = ctrl.min_clearance
    mode_stop = ctrl.mode == MODE_MONITORED_STOP
    if not mode_stop and ctrl.mode != MODE_SSM:
        raise DomainError(f"unknown controller mode {ctrl.mode!r}")
    inv_2a = 1.0 / (2.0 * a_brake)
    sp_static = v_h * t_r + clearance
    # Quadratic coefficients of the speed governor: largest v with
    # S_p(v) + v_h * (v / a) + 2 dt (v + v_h) <= perceived distance.
    gov_b = t_r + v_h / a_brake + 2.0 * dt
    gov_k0 = sp_static + 2.0 * dt * v_h

    # Operator script.
    torso_x, torso_y = op.start
    reach_depth = op.hand_intrusion
    hand_speed = op.hand_speed
    approach = op.approach_time

    # Perception constants folded down to one pre-occlusion probability.
    cam_x, cam_y = cam.position
    cam_yaw = cam.yaw
    half_angle = cam.fov_half_angle
    gate = illuminance_gate(env.illuminance, per.e_min, per.e_sat)
    p_clear = per.p_base * gate * (env.contrast ** per.contrast_exponent)
    if p_clear < 0.0 or p_clear > 1.0:
        raise DomainError(f"detection probability outside [0, 1]: {p_clear}")
    miss_horizon = per.miss_horizon
    ignore_occ = per.ignore_occlusion

    # Mutable world state.
    spawned = [False] * n_objects
    picked = [False] * n_objects
    fallen = [False] * n_objects
    travel = [0.0] * n_objects
    acquired = [False] * n_objects

    ee_x, ee_y = bin_x, bin_y
    elbow_x, elbow_y = two_link_elbow(base_x, base_y, ee_x, ee_y, l1, l2)
    v_prev = 0.0
    carrying = -1
    chase = -1

    hand_age = miss_horizon + 1
    last_hand_x = 0.0
    last_hand_y = 0.0

    fov_steps = 0
    miss_steps = 0
    objects_fallen = 0
    min_margin = math.inf
    min_distance = math.inf

    steps = []
    append_step = steps.append

    for k in range(n_steps):
        t = (k + 1) * dt

        # Advance the conveyor.
        for i in range(n_objects):
            if not spawned[i]:
                if t >= i * spawn_interval:
                    spawned[i] = True
                    travel[i] = (t - i * spawn_interval) * belt_speed
            elif not picked[i] and not fallen[i]:
                travel[i] += belt_speed * dt
            if spawned[i] and not picked[i] and not fallen[i] \
                    and travel[i] >= belt_len:
                fallen[i] = True
                objects_fallen += 1

        # Advance the operator.
        depth = _hand_depth(t, approach, reach_depth, hand_speed)
        hand_x = torso_x
        hand_y = torso_y - depth

        # Sense. Objects are acquired permanently on first sight; the hand
        # estimate goes stale after miss_horizon consecutive misses. An
        # in-view step with zero clear-sight probability still counts as a
        # miss: the hand is there, the camera just cannot resolve it.
        detected = False
        if p_clear > 0.0:
            for i in range(n_objects):
                if spawned[i] and not picked[i] and not fallen[i] \
                        and not acquired[i]:
                    ox = belt_sx + belt_ux * travel[i]
                    oy = belt_sy + belt_uy * travel[i]
                    if ignore_occ or in_field_of_view(
                            cam_x, cam_y, cam_yaw, half_angle, ox, oy):
                        if p_clear >= 1.0 or rng.random() < p_clear:
                            acquired[i] = True
        if ignore_occ:
            in_view = True
        else:
            in_view = in_field_of_view(cam_x, cam_y, cam_yaw, half_angle,
                                       hand_x, hand_y)
        if in_view:
            fov_steps += 1
            if p_clear <= 0.0:
                pass
            elif ignore_occ:
                detected = p_clear >= 1.0 or rng.random() < p_clear
            else:
                # One uniform draw decides the step; detection holds
                # iff u < p_clear * (1 - occ) with occ the blocked
                # fraction of the 16-ray fan. Drawing first lets most
                # steps skip some or all of the ray tests: the blocked
                # count only moves the threshold monotonically, so a
                # partial count often already settles the comparison.
                # A saturated p_clear needs no draw (occ < 1 decides).
                u = rng.random() if p_clear < 1.0 else 0.0
                if u >= p_clear:
                    detected = False
                else:
                    near = []
                    for lax, lay, lbx, lby in (
                            (base_x, base_y, elbow_x, elbow_y),
                            (elbow_x, elbow_y, ee_x, ee_y)):
                        if segment_segment_distance(
                                cam_x, cam_y, hand_x, hand_y,
                                lax, lay, lbx, lby) <= _LINK_SCREEN:
                            near.append((lax, lay, lbx, lby,
                                         ARM_LINK_RADIUS))
                    for i in range(n_objects):
                        if spawned[i] and not picked[i] and not fallen[i]:
                            ox = belt_sx + belt_ux * travel[i]
                            oy = belt_sy + belt_uy * travel[i]
                            if point_segment_distance(
                                    ox, oy, cam_x, cam_y, hand_x,
                                    hand_y) <= _DISC_SCREEN:
                                near.append((ox, oy, ox, oy,
                                             OBJECT_RADIUS))
                    if not near:
                        detected = True
                    else:
                        blocked = 0
                        left = N_OCCLUSION_RAYS
                        verdict_known = False
                        for off_x, off_y in _SAMPLE_OFFSETS:
                            sx = hand_x + off_x
                            sy = hand_y + off_y
                            left -= 1
                            for qax, qay, qbx, qby, rad in near:
                                if segment_segment_distance(
                                        cam_x, cam_y, sx, sy,
                                        qax, qay, qbx, qby) <= rad:
                                    blocked += 1
                                    break
                            if u >= p_clear * (1.0 - blocked / _N_RAYS):
                                detected = False
                                verdict_known = True
                                break
                            if u < p_clear * (1.0 - (blocked + left)
                                              / _N_RAYS):
                                detected = True
                                verdict_known = True
                                break
                        if not verdict_known:
                            detected = u < p_clear * (1.0 - blocked
                                                      / _N_RAYS)
            if detected:
                hand_age = 0
                last_hand_x = hand_x
                last_hand_y = hand_y
            else:
                miss_steps += 1
                hand_age += 1
        else:
            hand_age += 1

        tracked = hand_age <= miss_horizon

        # Task logic over acquired objects only.
        if carrying >= 0:
            target_x, target_y = bin_x, bin_y
            deadline = math.inf
            have_target = True
        else:
            # Stick with the current chase while it stays winnable.
            best = -1
            best_dist = math.inf
            for i in range(n_objects):
                if not (spawned[i] and not picked[i] and not fallen[i]
                        and acquired[i]):
                    continue
                ox = belt_sx + belt_ux * travel[i]
                oy = belt_sy + belt_uy * travel[i]
                dist = math.hypot(ox - ee_x, oy - ee_y)
                if belt_speed > 0.0:
                    t_fall = (belt_len - travel[i]) / belt_speed
                else:
                    t_fall = math.inf
                if dist / max(t_fall, dt) > v_max:
                    continue
                if i == chase:
                    best = i
                    break
                if dist < best_dist:
                    best = i
                    best_dist = dist
            chase = best
            if best >= 0:
                target_x = belt_sx + belt_ux * travel[best]
                target_y = belt_sy + belt_uy * travel[best]
                if belt_speed > 0.0:
                    deadline = (belt_len - travel[best]) / belt_speed
                else:
                    deadline = math.inf
                have_target = True
            else:
                target_x, target_y = ee_x, ee_y
                deadline = math.inf
                have_target = False

        if have_target:
            # Clamp the commanded point into the reachable annulus.
            tr = math.hypot(target_x - base_x, target_y - base_y)
            if tr > reach_max:
                scale = reach_max / tr
                target_x = base_x + (target_x - base_x) * scale
                target_y = base_y + (target_y - base_y) * scale
            elif tr < reach_min and tr > 1e-12:
                scale = reach_min / tr
                target_x = base_x + (target_x - base_x) * scale
                target_y = base_y + (target_y - base_y) * scale
            goal_dist = math.hypot(target_x - ee_x, target_y - ee_y)
            if carrying < 0 and chase >= 0:
                # Closing law for a moving object, with a deadline override
                # when the object nears the belt end.
                v_des = belt_speed + goal_dist / CHASE_GAIN
                if deadline < math.inf:
                    lead = deadline * CHASE_LEAD
                    if lead < dt:
                        lead = dt
                    urgent = goal_dist / lead
                    if urgent > v_des:
                        v_des = urgent
            else:
                # Drop-off: ride the brake envelope in, so the leg runs
                # at speed yet still settles onto the bin point.
                v_des = math.sqrt(2.0 * a_brake * goal_dist)
            if v_des > v_max:
                v_des = v_max
        else:
            goal_dist = 0.0
            v_des = 0.0

        # Speed governor against the perceived human position.
        if tracked:
            d_perc = min(
                point_segment_distance(last_hand_x, last_hand_y,
                                       base_x, base_y, elbow_x, elbow_y),
                point_segment_distance(last_hand_x, last_hand_y,
                                       elbow_x, elbow_y, ee_x, ee_y))
            if mode_stop:
                inside = math.hypot(last_hand_x - base_x,
                                    last_hand_y - base_y) <= l1 + l2
                v_cmd = 0.0 if inside else v_des
            else:
                disc = gov_b * gov_b - 4.0 * inv_2a * (gov_k0 - d_perc)
                if disc <= 0.0:
                    v_allow = 0.0
                else:
                    v_allow = (math.sqrt(disc) - gov_b) * a_brake
                    if v_allow < 0.0:
                        v_allow = 0.0
                v_cmd = v_des if v_des < v_allow else v_allow
        else:
            v_cmd = v_des

        # Acceleration limits; braking authority is a_brake.
        lo = v_prev - a_brake * dt
        hi = v_prev + a_brake * dt
        v_new = v_cmd
        if v_new < lo:
            v_new = lo
        elif v_new > hi:
            v_new = hi
        if v_new < 0.0:
            v_new = 0.0
        elif v_new > v_max:
            v_new = v_max

        # Move the end effector straight at the target, then cap the fastest
        # arm point (effector or elbow) at the commanded speed.
        old_x, old_y = ee_x, ee_y
        old_elbow_x, old_elbow_y = elbow_x, elbow_y
        if v_new > 0.0 and goal_dist > 1e-12:
            step_len = v_new * dt
            if step_len >= goal_dist:
                new_x, new_y = target_x, target_y
            else:
                new_x = ee_x + (target_x - ee_x) * step_len / goal_dist
                new_y = ee_y + (target_y - ee_y) * step_len / goal_dist
            # The commanded speed bounds every arm point, elbow included.
            # Shrink the effector displacement until the fastest point
            # complies; bail out to no motion if the contraction stalls.
            ok = False
            for _ in range(8):
                nex, ney = two_link_elbow(base_x, base_y, new_x, new_y, l1, l2)
                v_pt = max(math.hypot(new_x - old_x, new_y - old_y),
                           math.hypot(nex - old_elbow_x,
                                      ney - old_elbow_y)) / dt
                if v_pt <= v_new + 1e-9 or v_pt <= 1e-12:
                    ok = True
                    break
                shrink = v_new / v_pt
                new_x = old_x + (new_x - old_x) * shrink
                new_y = old_y + (new_y - old_y) * shrink
            if ok:
                ee_x, ee_y = new_x, new_y
                elbow_x, elbow_y = two_link_elbow(base_x, base_y, ee_x, ee_y,
                                                  l1, l2)
        v_r = max(math.hypot(ee_x - old_x, ee_y - old_y),
                  math.hypot(elbow_x - old_elbow_x,
                             elbow_y - old_elbow_y)) / dt
        v_prev = v_new

        # Pick and place bookkeeping after the move.
        if carrying >= 0:
            if math.hypot(ee_x - bin_x, ee_y - bin_y) <= pick_radius:
                carrying = -1
        elif chase >= 0 and spawned[chase] and not picked[chase] \
                and not fallen[chase]:
            ox = belt_sx + belt_ux * travel[chase]
            oy = belt_sy + belt_uy * travel[chase]
            if math.hypot(ee_x - ox, ee_y - oy) <= pick_radius:
                picked[chase] = True
                carrying = chase
                chase = -1

        # True separation between the operator (hand plus torso anchor) and
        # both arm links.
        d_true = min(
            point_segment_distance(hand_x, hand_y, base_x, base_y,
                                   elbow_x, elbow_y),
            point_segment_distance(hand_x, hand_y, elbow_x, elbow_y,
                                   ee_x, ee_y),
            point_segment_distance(torso_x, torso_y, base_x, base_y,
                                   elbow_x, elbow_y),
            point_segment_distance(torso_x, torso_y, elbow_x, elbow_y,
                                   ee_x, ee_y))
        s_p = sp_static + v_r * t_r + v_r * v_r * inv_2a
        margin = d_true - s_p
        if margin < min_margin:
            min_margin = margin
        if d_true < min_distance:
            min_distance = d_true

        append_step((t, d_true, s_p, v_r, detected,
                     ee_x, ee_y, hand_x, hand_y))

    metrics = TraceMetrics(
        min_margin=min_margin,
        min_distance=min_distance,
        objects_fallen=objects_fallen,
        detection_miss_ratio=(miss_steps / fov_steps) if fov_steps else 0.0,
        collision=min_distance < CONTACT_EPSILON,
    )
    return Trace(seed=seed, dt=dt, steps=tuple(steps), metrics=metrics)


def trace_to_csv(trace: Trace) -> str:
    """Render the per-step trace with a fixed header, one row per step."""
    lines = [",".join(TRACE_COLUMNS)]
    for (t, d, s_p, v_r, detected, ee_x, ee_y, hand_x, hand_y) in trace.steps:
        lines.append(f"{t!r},{d!r},{s_p!r},{v_r!r},{1 if detected else 0},"
                     f"{ee_x!r},{ee_y!r},{hand_x!r},{hand_y!r}")
    return "\n".join(lines) + "\n"
