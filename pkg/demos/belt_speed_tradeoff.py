"""Show how the protective governor turns belt speed into a hazard knob.

The arm may never move faster than its protective envelope allows, and the
envelope shrinks as the operator's hand gets close. At low belt speed that
margin costs nothing. Near the top of the certified range the governed arm
can no longer out-run the belt while a hand is inside the cell, so parts
ride off the end: the safety function itself creates the loss event.

Run from the repository root:

    python3 demos/belt_speed_tradeoff.py
"""

from riskbench.datafiles import data_text
from riskbench.riskml import load_model
from riskbench.sim import (bind_assignment, evaluate_events, load_scenario,
                           simulate)

SIM_SEED = 11


def main():
    model = load_model(data_text("default.riskml"))
    base = load_scenario(data_text("default_cell.scenario"))
    situation = model.situation("close_collaboration")

    print("belt_speed  min_margin  objects_fallen  label")
    for belt_speed in (0.10, 0.20, 0.30, 0.40, 0.50):
        bound = bind_assignment(base, model, {
            "belt_speed": belt_speed,
            "hand_intrusion": 0.4,
        })
        trace = simulate(bound, seed=SIM_SEED)
        verdict = evaluate_events(trace, model, situation)
        m = trace.metrics
        print(f"{belt_speed:10.2f}  {m.min_margin:10.4f}  "
              f"{m.objects_fallen:14d}  {verdict.label}")

    print()
    print("At 0.10 m/s the cell holds a comfortable margin. Everything above")
    print("that violates separation in at least one moment of the episode,")
    print("and at the top of the certified range parts ride off the belt:")
    print("the governor caps pursuit speed near the hand-conditioned")
    print("envelope, so a fast belt wins every stern chase. Slowing the belt")
    print("is the cheap fix; widening the camera's view is the expensive one.")


if __name__ == "__main__":
    main()
