"""Seeded random configurations and the classify-versus-rank check.

Each configuration is drawn from its own ``random.Random`` seeded with
the run seed, the regime, k and the index, so any single configuration
can be regenerated and results do not depend on the worker count.
"""

import logging
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Callable, Dict, Iterator, List, Optional, Sequence, Tuple

from .classifier import Status, classify, verify_condition
from .constants import FUZZ_REGIMES, MAX_FUZZ_COORDINATE
from .errors import RankDropError
from .exact_linalg import QMatrix, det
from .facesplit import transform
from .file_format import ConfigFile, FuzzSummaryFile, FuzzTally, FuzzViolation
from .projective import Config, Homography, PointP1, PointP2, PointPair
from .synthesis import line_case_config, sixth_pair

log = logging.getLogger(__name__)

Generator = Callable[[random.Random, int], Config]


@dataclass(frozen=True)
class FuzzOptions:
    seed: int = 0
    count: int = 100
    regimes: Tuple[str, ...] = FUZZ_REGIMES
    ks: Tuple[int, ...] = (2, 3, 4, 5, 6)
    jobs: int = 1


def _coordinate(rng: random.Random) -> int:
    return rng.randint(-MAX_FUZZ_COORDINATE, MAX_FUZZ_COORDINATE)


def random_point(rng: random.Random) -> PointP2:
    while True:
        v = [_coordinate(rng) for _ in range(3)]
        if any(v):
            return PointP2.of(*v)


def random_homography(rng: random.Random, size: int = 3) -> Homography:
    while True:
        m = QMatrix.of(
            [[rng.randint(-5, 5) for _ in range(size)] for _ in range(size)]
        )
        if det(m) != 0:
            return Homography(m)


def _random_line_points(
    rng: random.Random, params: Sequence[PointP1]
) -> List[PointP2]:
    """Points s*a + t*b of a random line for the given (s, t)."""
    while True:
        a, b = random_point(rng), random_point(rng)
        if a != b:
            break
    return [
        PointP2.of(
            *(s * u + t * w for u, w in zip(a.coords, b.coords))
        )
        for s, t in (p.coords for p in params)
    ]


def _random_p1(rng: random.Random, count: int) -> List[PointP1]:
    points = []
    while len(points) < count:
        s, t = _coordinate(rng), _coordinate(rng)
        if s or t:
            points.append(PointP1.of(s, t))
    return points


def _maybe_swap(rng: random.Random, c: Config) -> Config:
    return c.swapped() if rng.random() < 0.5 else c


def generic(rng: random.Random, k: int) -> Config:
    return Config.from_points(
        [random_point(rng) for _ in range(k)],
        [random_point(rng) for _ in range(k)],
    )


def collinear_side(rng: random.Random, k: int) -> Config:
    xs = [random_point(rng) for _ in range(k)]
    ys = _random_line_points(rng, _random_p1(rng, k))
    return _maybe_swap(rng, Config.from_points(xs, ys))


def planted_coincidence(rng: random.Random, k: int) -> Config:
    pairs = list(generic(rng, k).pairs)
    mode = rng.choice(["pair", "side", "triple-line"] if k >= 3 else ["pair", "side"])
    if mode == "pair":
        i, j = rng.sample(range(k), 2)
        pairs[i] = pairs[j]
    elif mode == "side":
        chosen = rng.sample(range(k), rng.randint(2, k))
        point = pairs[chosen[0]].x
        for i in chosen:
            pairs[i] = PointPair(point, pairs[i].y)
    else:
        i, j, m = rng.sample(range(k), 3)
        point = pairs[i].x
        line = _random_line_points(rng, _random_p1(rng, 3))
        for index, y in zip((i, j, m), line):
            pairs[index] = PointPair(point, y)
    return _maybe_swap(rng, Config(tuple(pairs)))


def planted_homography(rng: random.Random, k: int) -> Config:
    h = random_homography(rng)
    c = generic(rng, k)
    related = rng.sample(range(k), rng.randint(min(k, 4), k))
    pairs = [
        PointPair(p.x, h.apply(p.x)) if i in related else p
        for i, p in enumerate(c.pairs)
    ]
    return Config(tuple(pairs))


def _degenerate_k5(rng: random.Random) -> Config:
    """Five conic points and their projection onto a line."""
    h = random_homography(rng)
    params = rng.sample(range(-MAX_FUZZ_COORDINATE, MAX_FUZZ_COORDINATE + 1), 5)
    xs = [h.apply(PointP2.of(t * t, t, 1)) for t in params]
    g = random_homography(rng, 2)
    ys = _random_line_points(rng, [g.apply(PointP1.of(t, 1)) for t in params])
    return _maybe_swap(rng, Config.from_points(xs, ys))


def _degenerate_k6(rng: random.Random) -> Config:
    if rng.random() < 0.5:
        five = generic(rng, 5)
        return Config(five.pairs + (sixth_pair(five),))
    while True:
        t = QMatrix.of([[_coordinate(rng) for _ in range(3)] for _ in range(2)])
        xs = [random_point(rng) for _ in range(6)]
        try:
            c = line_case_config(t, xs)
        except RankDropError:
            continue
        h = random_homography(rng)
        return _maybe_swap(rng, transform(c, Homography.identity(), h))


def planted_degenerate(rng: random.Random, k: int) -> Config:
    if k == 2:
        pair = PointPair(random_point(rng), random_point(rng))
        return Config((pair, pair))
    if k == 3:
        point = random_point(rng)
        line = _random_line_points(rng, _random_p1(rng, 3))
        return _maybe_swap(rng, Config.from_points([point] * 3, line))
    if k == 4:
        params = _random_p1(rng, 4)
        g = random_homography(rng, 2)
        xs = _random_line_points(rng, params)
        ys = _random_line_points(rng, g.apply_all(params))
        return Config.from_points(xs, ys)
    if k == 5:
        return _degenerate_k5(rng)
    return _degenerate_k6(rng)


GENERATORS: Dict[str, Generator] = {
    "generic": generic,
    "collinear-side": collinear_side,
    "planted-coincidence": planted_coincidence,
    "planted-homography": planted_homography,
    "planted-degenerate": planted_degenerate,
}


def generate(regime: str, k: int, seed: int, index: int) -> Config:
    """The index-th configuration of a regime; retries degenerate draws."""
    rng = random.Random(f"{seed}:{regime}:{k}:{index}")
    while True:
        try:
            return GENERATORS[regime](rng, k)
        except (RankDropError, ValueError) as error:
            log.debug("redrawing %s k=%d #%d: %s", regime, k, index, error)


@dataclass(frozen=True)
class Outcome:
    index: int
    regime: str
    k: int
    deficient: bool
    reason: Optional[str]
    config: Config


def _check(c: Config, expect_deficient: bool) -> Tuple[bool, Optional[str]]:
    report = classify(c)
    if report.status is not Status.CONSISTENT:
        return report.deficient, report.status.value
    if report.deficient and not any(
        verify_condition(c, cond) for cond in report.conditions
    ):
        return True, "unverified"
    if expect_deficient and not report.deficient:
        return False, "planted-not-deficient"
    return report.deficient, None


def check_config(c: Config, *, expect_deficient: bool = False) -> Optional[str]:
    """Why the classification of c is wrong, or None."""
    return _check(c, expect_deficient)[1]


def _run_one(task: Tuple[int, str, int, int]) -> Outcome:
    index, regime, k, seed = task
    c = generate(regime, k, seed, index)
    deficient, reason = _check(c, regime == "planted-degenerate")
    return Outcome(index, regime, k, deficient, reason, c)


def _tasks(options: FuzzOptions) -> Iterator[Tuple[int, str, int, int]]:
    for regime in options.regimes:
        for k in options.ks:
            for index in range(options.count):
                yield index, regime, k, options.seed


def run_fuzz(options: FuzzOptions) -> FuzzSummaryFile:
    tasks = list(_tasks(options))
    if options.jobs > 1:
        with ProcessPoolExecutor(max_workers=options.jobs) as pool:
            outcomes = list(pool.map(_run_one, tasks, chunksize=16))
    else:
        outcomes = [_run_one(task) for task in tasks]
    tallies: Dict[Tuple[str, int], FuzzTally] = {}
    violations = []
    for outcome in outcomes:
        key = (outcome.regime, outcome.k)
        tally = tallies.setdefault(
            key, FuzzTally(regime=outcome.regime, k=outcome.k)
        )
        tally.total += 1
        tally.deficient += outcome.deficient
        if outcome.reason is not None:
            log.warning(
                "violation %s in %s k=%d #%d",
                outcome.reason,
                outcome.regime,
                outcome.k,
                outcome.index,
            )
            violations.append(
                FuzzViolation(
                    index=outcome.index,
                    regime=outcome.regime,
                    k=outcome.k,
                    reason=outcome.reason,
                    config=ConfigFile.from_config(outcome.config),
                )
            )
    log.info("%d configurations, %d violations", len(outcomes), len(violations))
    return FuzzSummaryFile(
        seed=options.seed,
        count=options.count,
        tallies=list(tallies.values()),
        violations=violations,
    )
