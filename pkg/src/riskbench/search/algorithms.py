"""Metaheuristic search loop over the unit hypercube.

All algorithms minimize a scalar robustness through one shared driver so
that archives, budgets, and reproducibility behave identically. Hill
climbing and simulated annealing share one proposal kernel; annealing with
a vanishing start temperature makes exactly the same acceptance decisions
as hill climbing on the same seed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from ..errors import ConfigError
from .space import FeatureSpace, decode

ALGORITHMS = ("random", "hill_climb", "simulated_annealing", "genetic")

# Hill-climb restarts: abandon the incumbent after this many consecutive
# rejected proposals and re-seed from a fresh uniform point.
STALL_LIMIT = 20


@dataclass(frozen=True)
class SearchConfig:
    algorithm: str = "random"
    budget: int = 200
    seed: int = 0
    sigma: float = 0.1        # Gaussian mutation scale in unit space
    t0: float = 0.05          # annealing start temperature
    alpha: float = 0.95       # annealing cooling factor per evaluation
    population: int = 12      # genetic population size
    crossover: float = 0.9    # genetic crossover rate
    tournament: int = 3       # genetic tournament size
    stop_on_violation: bool = False


def validate_search_config(config: SearchConfig) -> None:
    if config.algorithm not in ALGORITHMS:
        raise ConfigError(f"unknown algorithm {config.algorithm!r}; "
                          f"expected one of {', '.join(ALGORITHMS)}")
    if config.budget < 1:
        raise ConfigError(f"budget must be >= 1, got {config.budget}")
    if config.sigma <= 0.0:
        raise ConfigError(f"sigma must be positive, got {config.sigma}")
    if config.t0 <= 0.0:
        raise ConfigError(f"t0 must be positive, got {config.t0}")
    if not (0.0 < config.alpha < 1.0):
        raise ConfigError(f"alpha must be in (0, 1), got {config.alpha}")
    if config.population < 2:
        raise ConfigError(f"population must be >= 2, got {config.population}")
    if not (0.0 <= config.crossover <= 1.0):
        raise ConfigError(f"crossover rate must be in [0, 1], got {config.crossover}")
    if config.tournament < 1:
        raise ConfigError(f"tournament size must be >= 1, got {config.tournament}")


@dataclass(frozen=True)
class EvaluatedPoint:
    assignment: dict
    robustness: float
    verdict: object
    seed: int
    index: int


@dataclass
class Archive:
    points: list = field(default_factory=list)
    best: int = -1
    violations: list = field(default_factory=list)

    def record(self, point: EvaluatedPoint) -> None:
        self.points.append(point)
        if self.best < 0 or point.robustness < self.points[self.best].robustness:
            self.best = point.index
        if point.robustness < 0.0:
            self.violations.append(point.index)


class _Driver:
    """Feeds proposals to the evaluator and stops exactly at the budget."""

    def __init__(self, space: FeatureSpace, evaluator, config: SearchConfig):
        self.space = space
        self.evaluator = evaluator
        self.config = config
        self.archive = Archive()
        self.spent = 0

    def exhausted(self) -> bool:
        if self.spent >= self.config.budget:
            return True
        if self.config.stop_on_violation and self.archive.violations:
            return True
        return False

    def evaluate(self, unit_vector) -> float:
        assignment = decode(self.space, unit_vector)
        robustness, verdict = self.evaluator(assignment)
        point = EvaluatedPoint(assignment=assignment,
                               robustness=float(robustness),
                               verdict=verdict, seed=self.config.seed,
                               index=self.spent)
        self.archive.record(point)
        self.spent += 1
        return point.robustness


def run_search(space: FeatureSpace, evaluator, config: SearchConfig) -> Archive:
    """Minimize robustness over the space within config.budget evaluations.

    The evaluator maps an assignment to (robustness, verdict). Returns the
    archive of every evaluation in order.
    """
    validate_search_config(config)
    rng = np.random.default_rng(config.seed)
    driver = _Driver(space, evaluator, config)
    if config.algorithm == "random":
        _random_walk(driver, rng)
    elif config.algorithm in ("hill_climb", "simulated_annealing"):
        _local_search(driver, rng,
                      annealing=config.algorithm == "simulated_annealing")
    else:
        _genetic(driver, rng)
    return driver.archive


def _random_walk(driver: _Driver, rng) -> None:
    d = len(driver.space)
    while not driver.exhausted():
        driver.evaluate(rng.random(d))


def _local_search(driver: _Driver, rng, annealing: bool) -> None:
    """(1+1) kernel shared by hill_climb and simulated_annealing.

    A uniform acceptance draw is consumed on every worsening proposal in
    both modes, so the two algorithms see identical random streams and
    annealing degenerates to hill climbing as t0 -> 0.
    """
    cfg = driver.config
    d = len(driver.space)
    temperature = cfg.t0

    x = rng.random(d)
    fx = driver.evaluate(x)
    if annealing:
        temperature *= cfg.alpha
    rejections = 0

    while not driver.exhausted():
        if rejections >= STALL_LIMIT:
            x = rng.random(d)
            fx = driver.evaluate(x)
            rejections = 0
        else:
            y = np.clip(x + rng.normal(0.0, cfg.sigma, d), 0.0, 1.0)
            fy = driver.evaluate(y)
            if fy < fx:
                x, fx = y, fy
                rejections = 0
            else:
                draw = rng.random()
                delta = fy - fx
                arg = -delta / temperature
                accept_p = math.exp(arg) if (annealing and arg > -700.0) else 0.0
                if annealing and draw < accept_p:
                    x, fx = y, fy
                    rejections = 0
                else:
                    rejections += 1
        if annealing:
            temperature *= cfg.alpha


def _genetic(driver: _Driver, rng) -> None:
    """Generational GA: tournament parents, uniform crossover, per-gene
    Gaussian mutation at rate 1/d, elitism of one."""
    cfg = driver.config
    d = len(driver.space)
    pop_size = cfg.population
    mutation_rate = 1.0 / d

    population = []
    for _ in range(pop_size):
        if driver.exhausted():
            return
        x = rng.random(d)
        population.append((driver.evaluate(x), x))

    while not driver.exhausted():
        population.sort(key=lambda pair: pair[0])
        next_gen = [population[0]]
        while len(next_gen) < pop_size and not driver.exhausted():
            mother = _tournament(population, cfg.tournament, rng)
            father = _tournament(population, cfg.tournament, rng)
            if rng.random() < cfg.crossover:
                mask = rng.random(d) < 0.5
                child = np.where(mask, mother, father)
            else:
                child = mother.copy()
            mutate = rng.random(d) < mutation_rate
            if mutate.any():
                child = child + mutate * rng.normal(0.0, cfg.sigma, d)
            child = np.clip(child, 0.0, 1.0)
            next_gen.append((driver.evaluate(child), child))
        population = next_gen


def _tournament(population, size, rng):
    picks = rng.integers(0, len(population), size)
    best = min(picks, key=lambda i: population[i][0])
    return population[best][1]
