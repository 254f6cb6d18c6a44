"""sklearn-style wrappers: fit a polynomial, predict its values at points."""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin

from . import cost
from ._validation import check_is_fitted, check_points, check_poly, check_words
from .evaluators import plan_for, run_plan
from .field import OpCounter
from .rs import N, NSYN, ReceivedWord, build_rs_context, syndromes_automorphic


class AutomorphicEvaluator(BaseEstimator):
    """Evaluate one polynomial at many points with a chosen method.

    ``method="auto"`` lets the cost model pick; ``depth=None`` takes the
    optimal depth for depth-parameterised methods.
    """

    def __init__(self, method: str = "auto", depth: int | None = None):
        self.method = method
        self.depth = depth

    def fit(self, P, y=None):
        P = check_poly(P)
        if self.method == "auto":
            plan = plan_for(P)
        elif self.method not in cost.METHODS:
            raise ValueError(f"unknown method {self.method!r}")
        else:
            s = P.s if self.method.startswith("ext") else 1
            n = P.degree
            if self.depth is None or self.method in ("horner", "direct") or n < 1:
                plan = cost.method_plan(self.method, P.ctx.p, s, n)
            else:
                predicted = cost.formula(self.method, P.ctx.p, s, n, self.depth)
                plan = cost.EvalPlan(self.method, self.depth, predicted, None, s)
        self.poly_ = P
        self.plan_ = plan
        return self

    def predict(self, X) -> np.ndarray:
        check_is_fitted(self, "plan_")
        points = check_points(X, self.poly_.ctx)
        out, counters = [], []
        for x in points:
            v, c = run_plan(self.plan_, self.poly_, x)
            out.append(v.value)
            counters.append(c)
        self.counters_ = counters
        return np.array(out, dtype=np.int64)

    def total_cost(self) -> OpCounter:
        check_is_fitted(self, "counters_")
        total = OpCounter(cp=self.poly_.ctx.cp)
        for c in self.counters_:
            total.merge(c)
        return total


class SyndromeTransformer(TransformerMixin, BaseEstimator):
    """Map received words, shape (K, 255), to their 32 syndromes."""

    def fit(self, X=None, y=None):
        self.context_ = build_rs_context()
        return self

    def transform(self, X) -> np.ndarray:
        check_is_fitted(self, "context_")
        words = check_words(X, N)
        out = np.zeros((len(words), NSYN), dtype=np.int64)
        self.per_syndrome_mul_ = []
        for k, row in enumerate(words):
            S = syndromes_automorphic(self.context_, ReceivedWord(tuple(int(v) for v in row)),
                                      include_tables=False)
            out[k] = [v.value for v in S.values]
            self.per_syndrome_mul_.append(S.per_syndrome_mul)
        return out
