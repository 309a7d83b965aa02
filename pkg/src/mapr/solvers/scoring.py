"""Vectorised exact loss evaluation on integer-scaled seat counts.

With ``L`` the lcm of all target denominators, ``|R/k - pi| * k * L`` is an
integer, so every committee's loss is an integer multiple of ``1/(k*L)``.
Arrays use int64 when that cannot overflow and Python ints otherwise.
"""

from __future__ import annotations

import math
from fractions import Fraction

import numpy as np

from mapr.model import Instance, LossKind

_INT64_SAFE = 2**62


class Scorer:
    def __init__(self, instance: Instance, kind):
        self.instance = instance
        self.kind = LossKind.parse(kind)
        schema = instance.schema
        sizes = schema.sizes
        self.sizes = sizes
        self.P = sum(sizes)
        self.offsets = np.concatenate([[0], np.cumsum(sizes)[:-1]]).astype(np.intp)
        self.L = math.lcm(*(x.denominator for row in instance.target for x in row))
        self.k = instance.k
        self.scale = self.k * self.L
        bound = (self.P + 1) * 2 * max(self.scale, instance.db.m * self.L)
        self.dtype = np.int64 if bound < _INT64_SAFE else object
        self.target = np.array(
            [int(x * self.scale) for row in instance.target for x in row], dtype=self.dtype
        )
        ind = np.zeros((instance.db.m, self.P), dtype=self.dtype)
        for c, cand in enumerate(instance.db.candidates):
            for i, v in enumerate(cand.values):
                ind[c, self.offsets[i] + v] = self.L
        # row c: candidate c's one-hot values, pre-multiplied by L
        self.indicators = ind

    def counts(self, members) -> np.ndarray:
        return self.indicators[list(members)].sum(axis=0)

    def scaled(self, counts: np.ndarray):
        """Scaled loss of L-scaled count vectors (last axis = attribute values)."""
        dev = np.abs(counts - self.target)
        if self.kind is LossKind.L1:
            return dev.sum(axis=-1)
        if self.kind is LossKind.L1MAX:
            return np.maximum.reduceat(dev, self.offsets, axis=-1).sum(axis=-1)
        return dev.max(axis=-1)

    def fraction(self, scaled_value) -> Fraction:
        return Fraction(int(scaled_value), self.scale)
