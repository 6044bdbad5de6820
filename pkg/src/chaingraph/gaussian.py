"""Gaussian simultaneous-equations oracle.

Samples randomly parameterized Gaussian models that are Markov for a chain
graph under either criterion, assembles the joint covariance block by block
in component order, and tests conditional independence numerically through
vanishing conditional covariance.  Certification replays every structural
verdict against sampled models: separated triples and generated statements
must show conditional covariances at rounding level, and non-separated
pairwise triples must show clear dependence in at least one sample.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Iterable, Mapping

import numpy as np
from scipy.linalg import LinAlgError, cho_factor, cho_solve

from .errors import (
    NumericalFailureError,
    OverlapError,
    TooLargeError,
    UnknownVertexError,
)
from .graphs import ChainGraph
from .separation import (
    AMP,
    CIQuery,
    LWF,
    SOURCE_AMP_GLOBAL,
    SOURCE_LWF_GLOBAL,
    _check_criterion,
    block_recursive_statements,
    enumerate_triples,
    separation_tester,
)

CERTIFY_LIMIT = 6
DEFAULT_MAGNITUDE_RANGE = (0.5, 1.5)
PRECISION_RANGE = (0.1, 0.3)
DEFAULT_SOUND_TOL = 1e-9
DEFAULT_COMPLETE_THRESHOLD = 1e-4


@dataclass(frozen=True, eq=False)
class Matrix:
    """A square real matrix with vertex labels on both axes."""

    labels: tuple[str, ...]
    values: np.ndarray

    @cached_property
    def position(self) -> Mapping[str, int]:
        return {label: i for i, label in enumerate(self.labels)}

    def entry(self, row: str, col: str) -> float:
        return float(self.values[self.position[row], self.position[col]])

    def indices(self, labels: Iterable[str]) -> list[int]:
        try:
            return [self.position[label] for label in labels]
        except KeyError as exc:
            raise UnknownVertexError(exc.args[0]) from None

    def is_symmetric(self, tol: float = 1e-12) -> bool:
        return bool(np.max(np.abs(self.values - self.values.T), initial=0.0) <= tol)


@dataclass(frozen=True, eq=False)
class ComponentBlock:
    """One chain component's regression onto its parent components.

    ``beta`` has one row per member and one column per predecessor;
    ``noise_cov`` is the positive-definite error covariance of the block.
    """

    members: tuple[str, ...]
    predecessors: tuple[str, ...]
    beta: np.ndarray
    noise_cov: np.ndarray


@dataclass(frozen=True, eq=False)
class GaussianSem:
    """Block-recursive linear model over the components of a chain graph."""

    variant: str
    blocks: tuple[ComponentBlock, ...]

    @cached_property
    def order(self) -> tuple[str, ...]:
        out: list[str] = []
        for block in self.blocks:
            out.extend(block.members)
        return tuple(out)


def _signed_uniform(rng: np.random.Generator, low: float, high: float) -> float:
    magnitude = rng.uniform(low, high)
    return magnitude if rng.random() < 0.5 else -magnitude


def sample_sem(
    graph: ChainGraph,
    variant: str,
    seed: int,
    magnitude_range: tuple[float, float] = DEFAULT_MAGNITUDE_RANGE,
) -> GaussianSem:
    """Draw a random model Markov for the graph under the given criterion.

    Coefficient magnitudes stay away from zero so dependence is visible in
    finitely many samples.  Error precisions put random weights on the lines
    of each component and make the diagonal strictly dominant, which
    certifies positive definiteness and places the error law in the
    component's undirected model.  In the amp variant the regression matrix
    itself carries the parent zero pattern; in the lwf variant the zero
    pattern sits on precision-times-regression, and beta stores the product
    noise_cov @ gamma.
    """
    _check_criterion(variant)
    rng = np.random.default_rng(seed)
    low, high = magnitude_range
    structure = graph.components
    blocks: list[ComponentBlock] = []
    for index in structure.topological_order:
        members = tuple(sorted(structure.components[index]))
        predecessors: set[str] = set()
        for j in structure.dag_parents[index]:
            predecessors |= structure.components[j]
        preds = tuple(sorted(predecessors))
        size = len(members)

        omega = np.zeros((size, size))
        for i in range(size):
            for j in range(i + 1, size):
                if graph.is_line(members[i], members[j]):
                    value = _signed_uniform(rng, *PRECISION_RANGE)
                    omega[i, j] = omega[j, i] = value
        omega[np.diag_indices(size)] = np.abs(omega).sum(axis=1) + 1.0
        try:
            noise_cov = cho_solve(cho_factor(omega), np.eye(size))
        except LinAlgError:
            raise NumericalFailureError("sampled precision is not positive definite")
        noise_cov = (noise_cov + noise_cov.T) / 2.0

        coefficients = np.zeros((size, len(preds)))
        for i, member in enumerate(members):
            for j, pred in enumerate(preds):
                if graph.is_arrow(pred, member):
                    coefficients[i, j] = _signed_uniform(rng, low, high)
        beta = coefficients if variant == AMP else noise_cov @ coefficients
        blocks.append(ComponentBlock(members, preds, beta, noise_cov))
    return GaussianSem(variant, tuple(blocks))


def joint_covariance(sem: GaussianSem) -> Matrix:
    """Assemble the joint covariance block by block in component order."""
    labels: list[str] = []
    position: dict[str, int] = {}
    sigma = np.zeros((0, 0))
    for block in sem.blocks:
        size = len(block.members)
        count = len(labels)
        pred_idx = [position[p] for p in block.predecessors]
        if pred_idx:
            cross = block.beta @ sigma[np.ix_(pred_idx, range(count))]
            own = block.beta @ sigma[np.ix_(pred_idx, pred_idx)] @ block.beta.T
            own = own + block.noise_cov
        else:
            cross = np.zeros((size, count))
            own = block.noise_cov.copy()
        own = (own + own.T) / 2.0
        grown = np.empty((count + size, count + size))
        grown[:count, :count] = sigma
        grown[count:, :count] = cross
        grown[:count, count:] = cross.T
        grown[count:, count:] = own
        sigma = grown
        for member in block.members:
            position[member] = len(labels)
            labels.append(member)
    if sigma.size:
        try:
            np.linalg.cholesky(sigma)
        except np.linalg.LinAlgError:
            raise NumericalFailureError("joint covariance is not positive definite")
    return Matrix(tuple(labels), sigma)


# ---------------------------------------------------------------------------
# conditional independence


def _conditional_cross(
    values: np.ndarray, rows: list[int], cols: list[int], given: list[int]
) -> np.ndarray:
    if not given:
        return values[np.ix_(rows, cols)]
    try:
        factor = cho_factor(values[np.ix_(given, given)])
    except LinAlgError:
        raise NumericalFailureError("conditioning block is not positive definite")
    solved = cho_solve(factor, values[np.ix_(given, cols)])
    return values[np.ix_(rows, cols)] - values[np.ix_(rows, given)] @ solved


def gaussian_ci(
    sigma: Matrix,
    a: Iterable[str],
    b: Iterable[str],
    s: Iterable[str] = (),
    tol: float = DEFAULT_SOUND_TOL,
) -> bool:
    """True when the conditional cross-covariance of A and B given S vanishes
    entrywise below ``tol``.  With S empty this is the plain covariance test.
    """
    sa = tuple(sorted({str(v) for v in a}))
    sb = tuple(sorted({str(v) for v in b}))
    ss = tuple(sorted({str(v) for v in s}))
    for overlap in (set(sa) & set(sb), set(sa) & set(ss), set(sb) & set(ss)):
        if overlap:
            raise OverlapError(min(overlap))
    if not sa or not sb:
        return True
    block = _conditional_cross(
        sigma.values, sigma.indices(sa), sigma.indices(sb), sigma.indices(ss)
    )
    return bool(np.max(np.abs(block)) < tol)


def conditional_covariance(sigma: Matrix, given: Iterable[str]) -> Matrix:
    """Covariance of the remaining variables conditioned on ``given``."""
    gs = tuple(sorted({str(v) for v in given}))
    rest = tuple(label for label in sigma.labels if label not in gs)
    rows = sigma.indices(rest)
    values = _conditional_cross(sigma.values, rows, rows, sigma.indices(gs))
    return Matrix(rest, values)


# ---------------------------------------------------------------------------
# certification


@dataclass(frozen=True)
class SoundnessViolation:
    """A must-vanish conditional covariance that exceeded the tolerance."""

    source: str
    a: tuple[str, ...]
    b: tuple[str, ...]
    s: tuple[str, ...]
    seed: int
    magnitude: float


@dataclass(frozen=True)
class CompletenessFailure:
    """A non-separated pairwise triple that never showed clear dependence."""

    a: tuple[str, ...]
    b: tuple[str, ...]
    s: tuple[str, ...]
    magnitude: float


@dataclass(frozen=True)
class CertificationReport:
    criterion: str
    seeds: int
    sound_tol: float
    complete_threshold: float
    vertex_count: int
    separated_count: int
    statement_count: int
    dependent_count: int
    soundness_violations: tuple[SoundnessViolation, ...]
    completeness_failures: tuple[CompletenessFailure, ...]
    worst_sound: float
    weakest_dependence: float | None

    @property
    def ok(self) -> bool:
        return not self.soundness_violations and not self.completeness_failures

    def to_dict(self) -> dict:
        return {
            "criterion": self.criterion,
            "seeds": self.seeds,
            "sound_tol": self.sound_tol,
            "complete_threshold": self.complete_threshold,
            "vertices": self.vertex_count,
            "separated_full": self.separated_count,
            "statements": self.statement_count,
            "dependent_pairwise": self.dependent_count,
            "soundness_violations": [
                {
                    "source": v.source,
                    "a": list(v.a),
                    "b": list(v.b),
                    "s": list(v.s),
                    "seed": v.seed,
                    "magnitude": v.magnitude,
                }
                for v in self.soundness_violations
            ],
            "completeness_failures": [
                {
                    "a": list(f.a),
                    "b": list(f.b),
                    "s": list(f.s),
                    "magnitude": f.magnitude,
                }
                for f in self.completeness_failures
            ],
            "worst_sound": self.worst_sound,
            "weakest_dependence": self.weakest_dependence,
            "ok": self.ok,
        }


class _ConditionalReader:
    """Per-sample cache of conditional covariances, grouped by conditioning set."""

    def __init__(self, sigma: Matrix):
        self.sigma = sigma
        self._cache: dict[tuple[str, ...], Matrix] = {}

    def max_abs(self, a: tuple[str, ...], b: tuple[str, ...], s: tuple[str, ...]) -> float:
        conditional = self._cache.get(s)
        if conditional is None:
            conditional = conditional_covariance(self.sigma, s)
            self._cache[s] = conditional
        block = conditional.values[
            np.ix_(conditional.indices(a), conditional.indices(b))
        ]
        return float(np.max(np.abs(block)))


def certify(
    graph: ChainGraph,
    criterion: str,
    seeds: int = 5,
    sound_tol: float = DEFAULT_SOUND_TOL,
    complete_threshold: float = DEFAULT_COMPLETE_THRESHOLD,
) -> CertificationReport:
    """Certify a graph's separation verdicts against sampled Gaussian models.

    Soundness: every separated triple (full enumeration) and every
    block-recursive statement must pass the conditional-covariance test in
    every sample.  Completeness: every pairwise triple that is not separated
    must exceed the dependence threshold in at least one sample.
    """
    _check_criterion(criterion)
    if len(graph.vertices) > CERTIFY_LIMIT:
        raise TooLargeError(len(graph.vertices), CERTIFY_LIMIT)

    separated = enumerate_triples(graph, criterion, "full", CERTIFY_LIMIT)
    statements = block_recursive_statements(graph, criterion)
    global_source = SOURCE_AMP_GLOBAL if criterion == AMP else SOURCE_LWF_GLOBAL
    must_vanish: list[tuple[str, CIQuery]] = [(global_source, q) for q in separated]
    must_vanish.extend((st.source, st.query) for st in statements)

    readers = [
        _ConditionalReader(joint_covariance(sample_sem(graph, criterion, seed=i)))
        for i in range(seeds)
    ]

    violations: list[SoundnessViolation] = []
    worst_sound = 0.0
    for seed, reader in enumerate(readers):
        for source, query in must_vanish:
            magnitude = reader.max_abs(query.a, query.b, query.s)
            worst_sound = max(worst_sound, magnitude)
            if magnitude >= sound_tol:
                violations.append(
                    SoundnessViolation(source, query.a, query.b, query.s, seed, magnitude)
                )

    test = separation_tester(graph, criterion)
    failures: list[CompletenessFailure] = []
    weakest: float | None = None
    dependent = 0
    members = graph.vertices
    for v, w in combinations(members, 2):
        rest = [x for x in members if x != v and x != w]
        for r in range(len(rest) + 1):
            for s in combinations(rest, r):
                if test(frozenset((v,)), frozenset((w,)), frozenset(s)):
                    continue
                dependent += 1
                magnitude = max(
                    reader.max_abs((v,), (w,), s) for reader in readers
                ) if readers else 0.0
                weakest = magnitude if weakest is None else min(weakest, magnitude)
                if magnitude <= complete_threshold:
                    failures.append(CompletenessFailure((v,), (w,), s, magnitude))

    return CertificationReport(
        criterion=criterion,
        seeds=seeds,
        sound_tol=sound_tol,
        complete_threshold=complete_threshold,
        vertex_count=len(graph.vertices),
        separated_count=len(separated),
        statement_count=len(statements),
        dependent_count=dependent,
        soundness_violations=tuple(violations),
        completeness_failures=tuple(failures),
        worst_sound=worst_sound,
        weakest_dependence=weakest,
    )
