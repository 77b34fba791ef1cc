"""Sample moments per (alternative, attribute) pair.

mean(m, r)     = sum_s u(m, r, s) / S
variance(m, r) = sum_s (u(m, r, s) - mean(m, r))^2 / (S - 1)

Summation order is canonicalized (samples arrive sorted by situation id)
and accumulated with exactly-rounded ``math.fsum``, so results are
bit-stable across platforms and input orderings, and variances can never
go negative even under catastrophic cancellation.
"""

from __future__ import annotations

from math import fsum
from typing import Sequence

import numpy as np

from .model import MomentMatrices, SampleSet


def mean_and_variance(values: Sequence[float]) -> tuple[float, float]:
    """Two-pass mean and unbiased sample variance of one pair's utilities."""
    n = len(values)
    mean = fsum(values) / n
    variance = fsum((v - mean) ** 2 for v in values) / (n - 1)
    return mean, variance


def compute_moments(sample_set: SampleSet) -> MomentMatrices:
    """Compute the mean and variance matrices of a validated sample set.

    Rows follow ``sample_set.alternatives``, columns
    ``sample_set.attributes``; ``counts`` records each pair's sample count
    (counts may be ragged across pairs, but each is at least 2).
    """
    m, r = sample_set.num_alternatives, sample_set.num_attributes
    alt_index = {a: i for i, a in enumerate(sample_set.alternatives)}
    attr_index = {a: j for j, a in enumerate(sample_set.attributes)}

    values: dict[tuple[int, int], list[float]] = {}
    for s in sample_set.samples:  # already sorted by (alt, attr, situation)
        values.setdefault((alt_index[s.alternative_id], attr_index[s.attribute_id]), []).append(
            s.utility
        )

    means = np.zeros((m, r))
    variances = np.zeros((m, r))
    counts = np.zeros((m, r), dtype=int)
    for (i, j), pair_values in values.items():
        mean, variance = mean_and_variance(pair_values)
        means[i, j] = mean
        variances[i, j] = variance
        counts[i, j] = len(pair_values)

    return MomentMatrices(means, variances, counts, sample_set.alternatives, sample_set.attributes)
