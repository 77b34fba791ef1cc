"""Attribute weight derivation from the variance matrix.

Three methods turn the per-pair variance matrix into normalized
per-attribute weights:

ICW   normalized Shannon entropy of each attribute's relative-variance
      column:  E(r) = sum_i -p(i,r) * log p(i,r),  ICW(r) = E(r) / sum_j E(j)
IGHW  Kullback-Leibler divergence of the data-driven column from a
      subjective prior column:  IGH(r) = sum_i p(i,r) * log(p(i,r) / q(i,r)),
      normalized the same way
IGDW  information-gain difference of each attribute against the summed
      complement-entropies of the others:
      IGD(r) = E(r) - sum_{j != r} (1 - E(j)), normalized the same way

All reductions use exactly-rounded ``math.fsum``, which makes entropy and
divergence invariant to the ordering of alternatives.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import (
    AllZeroDivergence,
    AllZeroEntropy,
    DegenerateAttribute,
    DegenerateAttributeWarning,
    DimensionMismatch,
    NegativeIgd,
    ZeroIgdSum,
    ZeroPriorSupport,
)
from .model import (
    DegenerateVariancePolicy,
    EngineConfig,
    IgdNegativePolicy,
    MomentMatrices,
    PriorProfile,
    RelativeVarianceProfile,
    WeightMethod,
    WeightVector,
)

#: Weights this close to zero from below are floating-point noise; clamp.
_NEGATIVE_NOISE_TOL = 1e-12


class IgdResolution(Enum):
    RAW = "raw"
    MIN_SHIFTED = "min_shifted"


@dataclass(frozen=True)
class EntropyVector:
    """Per-attribute entropy of the relative-variance columns."""

    values: tuple[float, ...]
    log_base: float
    attributes: tuple[str, ...]


@dataclass(frozen=True)
class DivergenceVector:
    """Per-attribute KL divergence of the data-driven column from the prior."""

    values: tuple[float, ...]
    log_base: float
    attributes: tuple[str, ...]


@dataclass(frozen=True)
class IgdVector:
    """Per-attribute information-gain differences, after sign resolution."""

    values: tuple[float, ...]
    resolution: IgdResolution
    attributes: tuple[str, ...]


def relative_variance(
    moments: MomentMatrices, config: EngineConfig | None = None
) -> RelativeVarianceProfile:
    """Normalize each variance column into a distribution over alternatives.

    p(m, r) = variance(m, r) / sum_i variance(i, r)

    An attribute whose column sums to zero carries no weighting
    information: with the ``error`` policy this raises
    :class:`DegenerateAttribute`; with ``uniform`` the column becomes
    1/M everywhere and a :class:`DegenerateAttributeWarning` is emitted.
    """
    config = config or EngineConfig()
    m = moments.num_alternatives
    matrix = np.zeros_like(moments.variances)
    degenerate: list[str] = []
    for r, attr in enumerate(moments.attributes):
        column = [float(v) for v in moments.variances[:, r]]
        total = math.fsum(column)
        if total == 0.0:
            if config.degenerate_variance_policy is DegenerateVariancePolicy.ERROR:
                raise DegenerateAttribute(attr)
            matrix[:, r] = 1.0 / m
            degenerate.append(attr)
        else:
            matrix[:, r] = [v / total for v in column]
    if degenerate:
        warnings.warn(
            f"degenerate attribute(s) {degenerate} assigned the uniform distribution",
            DegenerateAttributeWarning,
            stacklevel=2,
        )
    return RelativeVarianceProfile(
        matrix, moments.alternatives, moments.attributes, tuple(degenerate)
    )


def entropy(profile: RelativeVarianceProfile, log_base: float = math.e) -> EntropyVector:
    """Per-attribute Shannon entropy of the relative-variance columns.

    E(r) = sum_i -p(i, r) * log p(i, r), using the convention 0*log 0 = 0.
    Values lie in [0, log(M)] in the chosen base.
    """
    m = len(profile.alternatives)
    ln_base = math.log(log_base)
    bound = math.log(m) / ln_base + 1e-9
    values = []
    for r in range(len(profile.attributes)):
        nats = fsum_entropy(profile.matrix[:, r])
        e = nats / ln_base
        if not 0.0 <= e <= bound:
            raise ValueError(
                f"entropy {e!r} for attribute {profile.attributes[r]!r} escapes [0, log M]"
            )
        values.append(e)
    return EntropyVector(tuple(values), log_base, profile.attributes)


def fsum_entropy(column: np.ndarray) -> float:
    """Entropy of one probability column in nats, exactly-rounded sum."""
    return math.fsum(-p * math.log(p) for p in (float(v) for v in column) if p > 0.0)


def icw(entropies: EntropyVector, config: EngineConfig | None = None) -> WeightVector:
    """Information-contents weights: each entropy over the entropy total.

    Raises :class:`AllZeroEntropy` when every attribute is fully
    degenerate (all entropies zero).
    """
    total = math.fsum(entropies.values)
    if total <= 0.0:
        raise AllZeroEntropy("every attribute entropy is zero")
    weights = tuple(e / total for e in entropies.values)
    config = config or EngineConfig(entropy_log_base=entropies.log_base)
    return WeightVector(WeightMethod.ICW, weights, entropies.values, entropies.attributes, config)


def kld(
    profile: RelativeVarianceProfile,
    prior: PriorProfile,
    config: EngineConfig | None = None,
) -> DivergenceVector:
    """Per-attribute KL divergence of the data-driven columns from the prior.

    IGH(r) = sum_i p(i, r) * log(p(i, r) / q(i, r)) in config.kld_log_base.

    With ``prior_smoothing_epsilon`` > 0 the prior is first replaced by
    (q + eps) / (1 + M * eps) columnwise; smoothing never touches p, which
    comes from data. A zero prior entry under positive data probability
    with eps = 0 raises :class:`ZeroPriorSupport`.
    """
    config = config or EngineConfig()
    if profile.matrix.shape != prior.matrix.shape:
        raise DimensionMismatch(
            f"profile shape {profile.matrix.shape} != prior shape {prior.matrix.shape}"
        )
    m = len(profile.alternatives)
    eps = config.prior_smoothing_epsilon
    q = (prior.matrix + eps) / (1.0 + m * eps) if eps > 0.0 else prior.matrix
    ln_base = math.log(config.kld_log_base)
    values = []
    for r in range(len(profile.attributes)):
        terms = []
        for i in range(m):
            p_ir = float(profile.matrix[i, r])
            if p_ir <= 0.0:
                continue
            q_ir = float(q[i, r])
            if q_ir <= 0.0:
                raise ZeroPriorSupport(profile.alternatives[i], profile.attributes[r])
            terms.append(p_ir * math.log(p_ir / q_ir))
        values.append(math.fsum(terms) / ln_base)
    return DivergenceVector(tuple(values), config.kld_log_base, profile.attributes)


def ighw(divergences: DivergenceVector, config: EngineConfig | None = None) -> WeightVector:
    """Information-gain weights: each divergence over the divergence total.

    Raises :class:`AllZeroDivergence` when the data matches the prior for
    every attribute; the caller must fall back to another method or report.
    """
    total = math.fsum(divergences.values)
    if total <= 0.0:
        raise AllZeroDivergence("data-driven probabilities equal the prior everywhere")
    weights = tuple(_clamp_noise(d / total) for d in divergences.values)
    config = config or EngineConfig(kld_log_base=divergences.log_base)
    return WeightVector(
        WeightMethod.IGHW, weights, divergences.values, divergences.attributes, config
    )


def igd(entropies: EntropyVector, config: EngineConfig | None = None) -> IgdVector:
    """Information-gain difference of each attribute against the others.

    IGD(r) = E(r) - sum_{j != r} (1 - E(j))

    Algebraically this equals sum_j E(j) - (R - 1) for every r, so the raw
    vector is constant across attributes; it goes negative whenever the
    entropy total falls below R - 1. The ``error`` policy raises
    :class:`NegativeIgd` in that case; ``min_shift`` subtracts the minimum
    entry, and resolves an all-equal vector directly to uniform 1/R.
    """
    config = config or EngineConfig(entropy_log_base=entropies.log_base)
    n = len(entropies.values)
    if n < 2:
        raise DimensionMismatch("information-gain difference needs at least 2 attributes")
    raw = tuple(
        e_r - math.fsum(1.0 - e_j for j, e_j in enumerate(entropies.values) if j != r)
        for r, e_r in enumerate(entropies.values)
    )
    if min(raw) >= 0.0:
        return IgdVector(raw, IgdResolution.RAW, entropies.attributes)
    if config.igd_negative_policy is IgdNegativePolicy.ERROR:
        raise NegativeIgd(raw)
    if max(raw) - min(raw) <= _NEGATIVE_NOISE_TOL:
        resolved = tuple([1.0 / n] * n)
    else:
        low = min(raw)
        resolved = tuple(g - low for g in raw)
    return IgdVector(resolved, IgdResolution.MIN_SHIFTED, entropies.attributes)


def igdw(igd_vector: IgdVector, config: EngineConfig | None = None) -> WeightVector:
    """Information-gain-difference weights: resolved differences, normalized.

    Raises :class:`ZeroIgdSum` when the resolved vector sums to zero.
    """
    values = igd_vector.values
    total = math.fsum(values)
    if total <= 0.0:
        raise ZeroIgdSum("resolved information-gain differences sum to zero")
    n = len(values)
    if max(values) - min(values) <= _NEGATIVE_NOISE_TOL * max(1.0, abs(max(values))):
        # constant vector (the formula's algebraic identity): exactly uniform
        weights = tuple([1.0 / n] * n)
    else:
        weights = tuple(_clamp_noise(g / total) for g in values)
    return WeightVector(
        WeightMethod.IGDW, weights, values, igd_vector.attributes, config or EngineConfig()
    )


def _clamp_noise(w: float) -> float:
    if w < 0.0:
        if w < -_NEGATIVE_NOISE_TOL:
            raise ValueError(f"weight {w!r} is negative beyond rounding noise")
        return 0.0
    return w
