"""Command-line workbench wiring the assurance stages into file workflows.

Subcommands: validate, cases, run, explain, replay. Campaign configs use
the same key-value format as scenario files; input paths inside a config
resolve relative to the config file, output paths relative to the working
directory. Every artifact write is atomic and every JSON output has stable
key order, so identical inputs give byte-identical outputs.

Exit codes: 0 success (found violations are results, not failures),
1 domain or validation error, 2 I/O or configuration error, 3 campaign
performed no evaluations.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

import click

from .errors import (ArchiveMismatchError, BindingError, ConfigError,
                     DomainError, EmptyRegionError, ModelInvalidError,
                     RiskmlSyntaxError, UnknownNameError)
from .explain import (dataset_from_rows, estimate_event_likelihood,
                      extract_rules, generate_counterexamples, induce_tree,
                      rules_report, rules_to_json, tree_to_json)
from .fileio import atomic_write_text, read_text, sha256_text, stable_json
from .kvdoc import parse_bool, parse_float, parse_int, read_kv
from .riskml import (annotate_likelihoods, cases_to_json,
                     derive_assurance_cases, parse_risk_model,
                     serialize_model, validate)
from .search import (ARCHIVE_FORMAT, SearchConfig, archive_header,
                     archive_to_csv, make_feature_space, parse_archive_csv,
                     run_campaign)
from .sim import (LABEL_NON_COMPLIANCE, bind_assignment, evaluate_events,
                  load_scenario, simulate, trace_to_csv)

EXIT_INVALID = 1
EXIT_CONFIG = 2
EXIT_EMPTY = 3

DEFAULT_THRESHOLD = 0.2
DEFAULT_SIM_SEED = 11
AUGMENTATION_PER_RULE = 20

_DOMAIN_ERRORS = (RiskmlSyntaxError, ModelInvalidError, DomainError,
                  UnknownNameError, BindingError, ArchiveMismatchError,
                  EmptyRegionError)


def _fail(code: int, message: str):
    click.echo(f"error: {message}", err=True)
    sys.exit(code)


def _load_model_file(path: str):
    """Read, parse, and validate a model file; exits on any problem."""
    try:
        text = read_text(path)
    except ConfigError as exc:
        _fail(EXIT_CONFIG, str(exc))
    try:
        model = parse_risk_model(text)
    except RiskmlSyntaxError as exc:
        _fail(EXIT_INVALID, f"{path}: {exc}")
    diagnostics = validate(model)
    if diagnostics:
        for diag in diagnostics:
            click.echo(f"{path}: {diag}", err=True)
        sys.exit(EXIT_INVALID)
    return model, text


def _load_scenario_file(path: str):
    try:
        text = read_text(path)
    except ConfigError as exc:
        _fail(EXIT_CONFIG, str(exc))
    try:
        return load_scenario(text, source=path), text
    except (ConfigError, DomainError) as exc:
        _fail(EXIT_CONFIG, f"{path}: {exc}")


def _write(path: Path, text: str) -> None:
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        atomic_write_text(str(path), text)
    except OSError as exc:
        _fail(EXIT_CONFIG, f"cannot write {path}: {exc}")


@click.group()
def main():
    """Risk-driven assurance workbench for a collaborative robot cell."""


@main.command("validate")
@click.option("--model", "model_path", required=True,
              type=click.Path(), help="Risk model file (.riskml).")
def cmd_validate(model_path):
    """Parse MODEL and check every model invariant."""
    _load_model_file(model_path)
    click.echo(f"{model_path}: ok")


@main.command("cases")
@click.option("--model", "model_path", required=True,
              type=click.Path(), help="Risk model file (.riskml).")
@click.option("--out", "out_path", default="cases.json", show_default=True,
              type=click.Path(), help="Output JSON file.")
def cmd_cases(model_path, out_path):
    """Derive assurance-case skeletons from MODEL."""
    model, _ = _load_model_file(model_path)
    cases = derive_assurance_cases(model)
    if not cases:
        click.echo("warning: no situation exposes a negative event; "
                   "case list is empty", err=True)
    _write(Path(out_path), stable_json(cases_to_json(cases)))
    click.echo(f"{len(cases)} assurance case(s) -> {out_path}")


def _read_config(config_path: str) -> dict:
    try:
        text = read_text(config_path)
        return read_kv(text, source=config_path)
    except ConfigError as exc:
        _fail(EXIT_CONFIG, str(exc))


_SEARCH_KEYS = {
    "algorithm": str,
    "budget": parse_int,
    "seed": parse_int,
    "sigma": parse_float,
    "t0": parse_float,
    "alpha": parse_float,
    "population": parse_int,
    "crossover": parse_float,
    "tournament": parse_int,
    "stop_on_violation": parse_bool,
}

_CONFIG_KEYS = set(_SEARCH_KEYS) | {
    "model", "scenario", "situation", "event", "sim_seed", "threshold", "out",
}


def _campaign_from_config(raw: dict, config_dir: Path, overrides: dict):
    """Resolve a campaign config document into loaded, validated inputs."""
    unknown = set(raw) - _CONFIG_KEYS
    if unknown:
        _fail(EXIT_CONFIG,
              f"unknown config key(s): {', '.join(sorted(unknown))}")
    if "model" not in raw:
        _fail(EXIT_CONFIG, "config is missing the 'model' key")

    model_path = config_dir / raw["model"]
    model, model_text = _load_model_file(str(model_path))

    situation_name = raw.get("situation")
    if situation_name is None:
        if len(model.situations) != 1:
            _fail(EXIT_CONFIG, "config must name a situation; the model "
                               f"declares {len(model.situations)}")
        situation_name = model.situations[0].name
    try:
        situation = model.situation(situation_name)
    except UnknownNameError as exc:
        _fail(EXIT_INVALID, str(exc))

    if "scenario" in raw:
        scenario_path = config_dir / raw["scenario"]
    else:
        # The situation's reference resolves like an include: next to the
        # file that made it.
        scenario_path = model_path.parent / situation.scenario_ref
    scenario, scenario_text = _load_scenario_file(str(scenario_path))

    event_name = raw.get("event")
    if event_name is None:
        if len(situation.exposes) != 1:
            _fail(EXIT_CONFIG, "config must name an event; the situation "
                               f"exposes {len(situation.exposes)}")
        event_name = situation.exposes[0]

    kwargs = {}
    for key, coerce in _SEARCH_KEYS.items():
        if key in raw:
            try:
                kwargs[key] = coerce(key, raw[key]) if coerce is not str \
                    else raw[key]
            except ConfigError as exc:
                _fail(EXIT_CONFIG, str(exc))
    if "budget" in overrides and overrides["budget"] is not None:
        kwargs["budget"] = overrides["budget"]
    if "seed" in overrides and overrides["seed"] is not None:
        kwargs["seed"] = overrides["seed"]
    config = SearchConfig(**kwargs)

    try:
        sim_seed = parse_int("sim_seed", raw["sim_seed"]) \
            if "sim_seed" in raw else DEFAULT_SIM_SEED
        threshold = parse_float("threshold", raw["threshold"]) \
            if "threshold" in raw else DEFAULT_THRESHOLD
    except ConfigError as exc:
        _fail(EXIT_CONFIG, str(exc))

    out_dir = overrides.get("out") or raw.get("out") or "campaign_out"

    return {
        "model": model,
        "model_text": model_text,
        "model_path": model_path,
        "scenario": scenario,
        "scenario_text": scenario_text,
        "scenario_path": scenario_path,
        "situation": situation_name,
        "event": event_name,
        "search": config,
        "sim_seed": sim_seed,
        "threshold": threshold,
        "out": Path(out_dir),
    }


@main.command("run")
@click.option("--config", "config_path", required=True,
              type=click.Path(), help="Campaign config file.")
@click.option("--out", "out_dir", default=None,
              type=click.Path(), help="Output directory (overrides config).")
@click.option("--seed", default=None, type=int,
              help="Search seed (overrides config).")
@click.option("--budget", default=None, type=int,
              help="Evaluation budget (overrides config).")
def cmd_run(config_path, out_dir, seed, budget):
    """Run a falsification campaign and persist its archive."""
    raw = _read_config(config_path)
    setup = _campaign_from_config(raw, Path(config_path).resolve().parent,
                                  {"out": out_dir, "seed": seed,
                                   "budget": budget})
    config = setup["search"]
    if config.budget < 1:
        _fail(EXIT_EMPTY, "campaign performed no evaluations (budget "
                          f"{config.budget})")

    try:
        archive = run_campaign(setup["model"], setup["scenario"],
                               setup["situation"], setup["event"], config,
                               sim_seeds=(setup["sim_seed"],))
    except _DOMAIN_ERRORS as exc:
        _fail(EXIT_INVALID, str(exc))
    except ConfigError as exc:
        _fail(EXIT_CONFIG, str(exc))
    if not archive.points:
        _fail(EXIT_EMPTY, "campaign performed no evaluations")

    space = make_feature_space(setup["model"], setup["situation"])
    header = archive_header(
        space, config, (setup["sim_seed"],), setup["situation"],
        setup["event"], sha256_text(setup["model_text"]),
        sha256_text(setup["scenario_text"]), len(archive.points))
    header["threshold"] = setup["threshold"]

    n = len(archive.points)
    n_viol = len(archive.violations)
    best = archive.points[archive.best]
    first = archive.violations[0] + 1 if archive.violations else None
    summary_lines = [
        f"situation {setup['situation']}, event {setup['event']}, "
        f"algorithm {config.algorithm}",
        f"evaluations {n}, violations {n_viol}"
        + (f", first at evaluation {first}" if first else ""),
        f"best robustness {best.robustness!r} at index {best.index}",
    ]

    out = setup["out"]
    _write(out / "archive.csv", archive_to_csv(archive, space, setup["event"]))
    _write(out / "campaign.json", stable_json(header))
    _write(out / "summary.txt", "\n".join(summary_lines) + "\n")
    for line in summary_lines:
        click.echo(line)
    click.echo(f"archive -> {out / 'archive.csv'}")


@main.command("explain")
@click.argument("archive_path", type=click.Path())
@click.option("--model", "model_path", required=True,
              type=click.Path(), help="Risk model the archive came from.")
@click.option("--threshold", default=None, type=float,
              help="Rule likelihood threshold (overrides campaign config).")
@click.option("--out", "out_dir", default=None, type=click.Path(),
              help="Output directory (default: the archive's directory).")
def cmd_explain(archive_path, model_path, threshold, out_dir):
    """Explain ARCHIVE_PATH: tree, rules, counterexamples, likelihoods."""
    archive_file = Path(archive_path)
    header_file = archive_file.parent / "campaign.json"
    try:
        archive_text = read_text(str(archive_file))
        header = json.loads(read_text(str(header_file)))
    except ConfigError as exc:
        _fail(EXIT_CONFIG, str(exc))
    except ValueError as exc:
        _fail(EXIT_CONFIG, f"{header_file}: not valid JSON: {exc}")
    if header.get("format") != ARCHIVE_FORMAT:
        _fail(EXIT_CONFIG, f"{header_file}: unrecognized archive format "
                           f"{header.get('format')!r}")

    model, model_text = _load_model_file(model_path)
    if sha256_text(model_text) != header.get("model_digest"):
        _fail(EXIT_INVALID,
              "model digest mismatch: the archive was produced from a "
              "different model than " + str(model_path))

    situation_name = header.get("situation")
    event_name = header.get("event")
    if threshold is None:
        threshold = float(header.get("threshold", DEFAULT_THRESHOLD))

    try:
        situation = model.situation(situation_name)
        space = make_feature_space(model, situation_name)
        rows = parse_archive_csv(archive_text, space)
        dataset = dataset_from_rows(space, rows)
        tree = induce_tree(dataset)
        rules = extract_rules(tree, threshold)
        augmentation = [
            generate_counterexamples(rule, space, AUGMENTATION_PER_RULE,
                                     seed=int(header["config"]["seed"]))
            for rule in rules
        ]
    except _DOMAIN_ERRORS as exc:
        _fail(EXIT_INVALID, str(exc))
    except ConfigError as exc:
        _fail(EXIT_CONFIG, str(exc))

    fraction, samples = estimate_event_likelihood(dataset)
    annotated = annotate_likelihoods(model, {event_name: (fraction, samples)})

    trigger_counts = {name: 0 for name in situation.exposes}
    for _, _, _, _, triggered in rows:
        for name in triggered:
            if name in trigger_counts:
                trigger_counts[name] += 1

    out = Path(out_dir) if out_dir else archive_file.parent
    report = {
        "archive": archive_file.name,
        "archive_digest": sha256_text(archive_text),
        "model_digest": header.get("model_digest"),
        "scenario_digest": header.get("scenario_digest"),
        "situation": situation_name,
        "event": event_name,
        "algorithm": header["config"]["algorithm"],
        "threshold": threshold,
        "evaluations": len(rows),
        "violations": sum(1 for r in rows if r[3] == LABEL_NON_COMPLIANCE),
        "best_robustness": min(r[2] for r in rows),
        "event_likelihood": {"fraction": fraction, "samples": samples},
        "event_trigger_counts": trigger_counts,
        "rules": rules_to_json(rules)["rules"],
        "artifacts": ["tree.json", "rules.txt", "rules.json",
                      "augmentation.json", "annotated.riskml"],
    }

    _write(out / "tree.json", stable_json(tree_to_json(tree)))
    _write(out / "rules.txt",
           rules_report(rules, algorithm=header["config"]["algorithm"]))
    _write(out / "rules.json", stable_json(rules_to_json(rules)))
    _write(out / "augmentation.json", stable_json({
        "per_rule": [
            {"rule_id": aug.rule_id, "assignments": list(aug.assignments)}
            for aug in augmentation
        ]
    }))
    _write(out / "annotated.riskml", serialize_model(annotated))
    _write(out / "report.json", stable_json(report))

    click.echo(f"{len(rules)} rule(s) at threshold {threshold}; "
               f"event {event_name} likelihood {fraction:.3f} "
               f"({samples} samples)")
    click.echo(f"report -> {out / 'report.json'}")


@main.command("replay")
@click.argument("assignment_path", type=click.Path())
@click.option("--model", "model_path", required=True,
              type=click.Path(), help="Risk model file (.riskml).")
@click.option("--scenario", "scenario_path", required=True,
              type=click.Path(), help="Scenario file to bind against.")
@click.option("--seed", default=DEFAULT_SIM_SEED, show_default=True,
              type=int, help="Simulator seed.")
@click.option("--out", "out_dir", default=".", type=click.Path(),
              help="Output directory.")
def cmd_replay(assignment_path, model_path, scenario_path, seed, out_dir):
    """Simulate one feature assignment (JSON object) and judge it."""
    model, _ = _load_model_file(model_path)
    scenario, _ = _load_scenario_file(scenario_path)
    try:
        assignment = json.loads(read_text(assignment_path))
    except ConfigError as exc:
        _fail(EXIT_CONFIG, str(exc))
    except ValueError as exc:
        _fail(EXIT_CONFIG, f"{assignment_path}: not valid JSON: {exc}")
    if not isinstance(assignment, dict):
        _fail(EXIT_CONFIG, f"{assignment_path}: expected a JSON object of "
                           "feature values")

    try:
        bound = bind_assignment(scenario, model, assignment)
        trace = simulate(bound, seed)
        verdicts = {
            situation.name: evaluate_events(trace, model, situation)
            for situation in model.situations
        }
    except _DOMAIN_ERRORS as exc:
        _fail(EXIT_INVALID, str(exc))

    out = Path(out_dir)
    verdict_doc = {
        "assignment": assignment,
        "seed": seed,
        "metrics": trace.metrics.as_dict(),
        "situations": {
            name: {
                "label": verdict.label,
                "events": {
                    ev: {"triggered": outcome.triggered,
                         "robustness": outcome.robustness}
                    for ev, outcome in verdict.per_event.items()
                },
            }
            for name, verdict in verdicts.items()
        },
    }
    _write(out / "trace.csv", trace_to_csv(trace))
    _write(out / "verdict.json", stable_json(verdict_doc))

    for name, verdict in verdicts.items():
        click.echo(f"{name}: {verdict.label}")
    click.echo(f"trace -> {out / 'trace.csv'}")


if __name__ == "__main__":
    main()
