"""Brute-force posterior over two-class classification rules on a grid.

A classification rule assigns each of the C data-point types a probability
of the positive class.  With counts (n_i, r_i) per type and a factored
prior, the posterior factorizes componentwise, so each component is
handled on its own midpoint grid over [0, 1].  This is a desk-scale oracle
for comparing abduction (take the single most probable rule), transduction
(average over all rules weighted by posterior), and averaging a handful of
sampled high-posterior rules.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass

from .errors import BadIndexError, LengthMismatchError, ZeroNormalizerError


@dataclass(frozen=True)
class ClassificationRule:
    phis: tuple[float, ...]

    def __post_init__(self):
        if any(not 0.0 <= p <= 1.0 for p in self.phis):
            raise ValueError("rule components must lie in [0, 1]")


@dataclass(frozen=True)
class CountTable:
    counts: tuple[tuple[int, int], ...]  # (n_i, r_i) per type

    def __post_init__(self):
        for n, r in self.counts:
            if not 0 <= r <= n:
                raise ValueError(f"need 0 <= r <= n, got (n={n}, r={r})")

    def __len__(self):
        return len(self.counts)


def counts_to_text(table: CountTable) -> str:
    return "\n".join(f"{n} {r}" for n, r in table.counts) + "\n"


def counts_from_text(text: str) -> CountTable:
    rows = []
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("|"):
            continue
        n, r = line.split()
        rows.append((int(n), int(r)))
    return CountTable(tuple(rows))


def uniform_prior(phi: float) -> float:
    return 1.0


def beta_prior(a: float, b: float):
    def density(phi: float) -> float:
        if phi <= 0.0 or phi >= 1.0:
            return 0.0 if (a != 1 or b != 1) else 1.0
        return phi ** (a - 1) * (1 - phi) ** (b - 1)

    return density


def likelihood(rule: ClassificationRule, counts: CountTable) -> float:
    """Probability of the observed counts under the rule: the product over
    types of phi^r (1-phi)^(n-r), evaluated in log space."""
    if len(rule.phis) != len(counts):
        raise LengthMismatchError(
            f"rule has {len(rule.phis)} components, counts has {len(counts)}"
        )
    log_l = 0.0
    for phi, (n, r) in zip(rule.phis, counts.counts):
        if r > 0:
            if phi == 0.0:
                return 0.0
            log_l += r * math.log(phi)
        if n - r > 0:
            if phi == 1.0:
                return 0.0
            log_l += (n - r) * math.log(1.0 - phi)
    return math.exp(log_l)


@dataclass(frozen=True)
class PosteriorGrid:
    points: tuple[float, ...]  # midpoints of G equal cells of [0, 1]
    weights: tuple[tuple[float, ...], ...]  # one normalized vector per type

    @property
    def grid_size(self) -> int:
        return len(self.points)

    def component(self, i: int) -> tuple[float, ...]:
        if not 0 <= i < len(self.weights):
            raise BadIndexError(f"no type {i}")
        return self.weights[i]


def grid_points(grid_size: int) -> tuple[float, ...]:
    return tuple((j + 0.5) / grid_size for j in range(grid_size))


def posterior(prior, counts: CountTable, grid_size: int = 1001) -> PosteriorGrid:
    """Componentwise grid posterior: prior(phi) * phi^r * (1-phi)^(n-r),
    normalized on the midpoint grid."""
    if grid_size < 3:
        raise ValueError("grid_size must be >= 3")
    points = grid_points(grid_size)
    all_weights = []
    for n, r in counts.counts:
        logs = []
        for phi in points:
            p = prior(phi)
            if p <= 0.0:
                logs.append(-math.inf)
                continue
            logs.append(math.log(p) + r * math.log(phi) + (n - r) * math.log(1.0 - phi))
        peak = max(logs)
        if peak == -math.inf:
            raise ZeroNormalizerError(
                "prior vanishes everywhere the likelihood is positive"
            )
        raw = [math.exp(v - peak) for v in logs]
        z = sum(raw)
        all_weights.append(tuple(w / z for w in raw))
    return PosteriorGrid(points, tuple(all_weights))


def transductive_predict(post: PosteriorGrid, i: int) -> float:
    """Posterior mean of the component: the transduction estimate."""
    w = post.component(i)
    return sum(wk * phi for wk, phi in zip(w, post.points))


def map_predict(post: PosteriorGrid, i: int) -> float:
    """Component value at the posterior mode: the abduction estimate.

    Ties pick the lower value, except that a completely flat component
    (no data under a uniform prior) returns 0.5 by convention.
    """
    w = post.component(i)
    lo, hi = min(w), max(w)
    if hi - lo <= hi * 1e-12:
        return 0.5
    return post.points[w.index(hi)]


def flatness(post: PosteriorGrid, i: int, hdr_width: float = 0.1) -> dict:
    """Spread diagnostics: posterior standard deviation and the mass within
    a fixed-width window centered on the mode."""
    w = post.component(i)
    mean = transductive_predict(post, i)
    var = sum(wk * (phi - mean) ** 2 for wk, phi in zip(w, post.points))
    mode = post.points[w.index(max(w))]
    half = hdr_width / 2.0
    mass = sum(wk for wk, phi in zip(w, post.points) if abs(phi - mode) <= half)
    return {"posterior_sd": math.sqrt(var), "hdr_mass": mass}


def _sample_rule(post: PosteriorGrid, rng: random.Random) -> ClassificationRule:
    phis = []
    for w in post.weights:
        phis.append(rng.choices(post.points, weights=w)[0])
    return ClassificationRule(tuple(phis))


def compare_predictors(
    counts: CountTable,
    true_rule: ClassificationRule,
    trials: int,
    seed: int,
    prior=uniform_prior,
    grid_size: int = 201,
    k: int = 5,
) -> dict:
    """Monte-Carlo expected 0/1 error of abduction, transduction, and a
    k-rule high-posterior average, against data drawn from ``true_rule``.

    Each trial draws a type uniformly and a label from the true rule; a
    predictor errs when its thresholded estimate (positive iff >= 0.5)
    disagrees with the drawn label.  Deterministic under ``seed``.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    if len(true_rule.phis) != len(counts):
        raise LengthMismatchError("true rule and counts disagree on type count")
    post = posterior(prior, counts, grid_size)
    c = len(counts)
    rng = random.Random(seed)
    sampled = [_sample_rule(post, rng) for _ in range(k)]
    estimates = {
        "map": [map_predict(post, i) for i in range(c)],
        "transduction": [transductive_predict(post, i) for i in range(c)],
        "averaged": [
            sum(rule.phis[i] for rule in sampled) / k for i in range(c)
        ],
    }
    errors = {name: 0 for name in estimates}
    for _ in range(trials):
        i = rng.randrange(c)
        label_positive = rng.random() < true_rule.phis[i]
        for name, est in estimates.items():
            if (est[i] >= 0.5) != label_positive:
                errors[name] += 1
    return {name: e / trials for name, e in errors.items()}
