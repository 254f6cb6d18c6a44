"""Closed-form multiplication counts and optimal-depth selection.

All counts follow the same conventions as the evaluators: products with an
operand equal to 0 or 1 are free, a p-th power costs ``cp(p)`` products.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

METHODS = ("direct", "horner", "m1", "m2", "ext_basis", "ext_m2")


@dataclass(frozen=True)
class CostQuery:
    p: int
    n: int
    s: int = 1
    L: int | None = None

    def __post_init__(self):
        if self.p < 2 or self.n < 0 or self.s < 1:
            raise ValueError(f"invalid cost query {self!r}")
        if self.L is not None and self.L < 0:
            raise ValueError(f"negative depth in {self!r}")


@dataclass(frozen=True)
class EvalPlan:
    """A chosen evaluation method, its depth and predicted product count.

    ``window`` is the inclusive ``(lo, hi)`` range of depths that was scanned,
    or ``None`` for methods without a depth parameter.
    """

    method: str
    L: int
    predicted_mul: int
    window: tuple[int, int] | None = None
    s: int = 1

    def __post_init__(self):
        if self.method not in METHODS:
            raise ValueError(f"unknown method {self.method!r}")
        if self.window is not None and self.window[1] - self.window[0] > 3:
            raise ValueError(f"window {self.window} wider than 3")


@dataclass(frozen=True)
class HornerComparison:
    horner: int
    best: EvalPlan
    wins: bool = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "wins", self.best.predicted_mul < self.horner)


def cp(p: int) -> int:
    """Products needed for a p-th power by square-and-multiply."""
    if p < 2:
        raise ValueError("p must be at least 2")
    if p == 2:
        return 1
    return p.bit_length() - 1 + bin(p).count("1") - 1


def cp_power(p: int, k: int) -> int:
    """Cost of raising to ``p**k``, taken as ``k`` successive p-th powers."""
    return k * cp(p)


def m_step(p: int, n: int) -> int:
    """One-step (L = 1) first-method count ``2p - 3 + floor(n/p)(p - 1)``."""
    if n < 1:
        raise ValueError("m_step needs n >= 1")
    return 2 * p - 3 + (n // p) * (p - 1)


def g1(p: int, n: int, L: int) -> int:
    _check(n, L)
    return (n // p**L) * (p - 1) + L * (p - 1) + p**L - 2


def g2(p: int, n: int, L: int) -> int:
    _check(n, L)
    d = n // p**L
    return d - 1 + (p ** (L + 1) - p) // (p - 1) * cp(p) + (p**L - 1) + d * (p - 2)


def g2_ext(p: int, s: int, n: int, L: int) -> int:
    _check(n, L)
    if s < 2:
        raise ValueError("g2_ext needs s >= 2")
    return (
        cp(p) * (p ** (L + 1) - p) // (p - 1)
        + p**L
        - 1
        + cp_power(p, s - 1) * p**L
        + (n // p**L) * (p**s - 1)
    )


def g1_ext_firstmethod_bound(p: int, s: int, n: int) -> int:
    """Ceiling of ``2s(sqrt(n(p-1)) + 1/2)``."""
    if s < 1 or n < 0:
        raise ValueError("bad arguments")
    # exact ceil: 2s*sqrt(n(p-1)) + s, with the square root bracketed by isqrt
    r = math.isqrt(n * (p - 1))
    if r * r == n * (p - 1):
        return 2 * s * r + s
    return math.ceil(2 * s * math.sqrt(n * (p - 1)) + s)


def ext_basis_prediction(p: int, s: int, n: int, L: int) -> int:
    """s independent first-method evaluations plus s - 1 combining products."""
    return s * g1(p, n, L) + s - 1


def _check(n: int, L: int) -> None:
    if n < 0:
        raise ValueError("degree must be non-negative")
    if L < 1:
        raise ValueError("depth must be at least 1")


def max_depth(p: int, n: int) -> int:
    """``floor(log_p n) + 1``: beyond it every leaf is constant."""
    if n < 1:
        return 1
    L = 0
    while p ** (L + 1) <= n:
        L += 1
    return L + 1


def center(kind: str, p: int, s: int, n: int) -> float:
    c = cp(p)
    if kind == "m1":
        arg = n * (p - 1)
    elif kind == "m2":
        arg = n * (p - 1) ** 2 / (p * c + p - 1)
    elif kind == "ext_m2":
        arg = n * (p - 1) * (p**s - 1) / (p * c + p - 1 + cp_power(p, s - 1) * (p - 1))
    else:
        raise ValueError(f"no depth center for {kind!r}")
    return math.log(math.sqrt(arg), p)


def formula(kind: str, p: int, s: int, n: int, L: int) -> int:
    if kind == "m1":
        return g1(p, n, L)
    if kind == "m2":
        return g2(p, n, L)
    if kind == "ext_m2":
        return g2_ext(p, s, n, L)
    if kind == "ext_basis":
        return ext_basis_prediction(p, s, n, L)
    raise ValueError(f"no depth formula for {kind!r}")


def lopt(kind: str, p: int, s: int, n: int) -> EvalPlan:
    """Best depth for ``kind`` found by scanning a small window around the
    analytic center; ties go to the smaller depth."""
    if n < 1:
        raise ValueError("lopt needs n >= 1")
    ckind = "m1" if kind == "ext_basis" else kind
    c = center(ckind, p, s, n)
    top = max_depth(p, n)
    lo = max(math.floor(c) - 1, 1)
    hi = min(math.ceil(c) + 1, top)
    if lo > hi:
        lo = hi = min(max(lo, 1), top)
    best = min(range(lo, hi + 1), key=lambda L: (formula(kind, p, s, n, L), L))
    return EvalPlan(kind, best, formula(kind, p, s, n, best), (lo, hi), s)


def exhaustive_argmin(kind: str, p: int, s: int, n: int) -> int:
    return min(range(1, max_depth(p, n) + 1), key=lambda L: (formula(kind, p, s, n, L), L))


def candidate_plans(p: int, s: int, n: int) -> list[EvalPlan]:
    """Every plan applicable to a degree-n polynomial over F_{p^s}."""
    plans = [EvalPlan("horner", 0, n, None, s)]
    if n < p:
        return plans
    if s == 1:
        plans.append(lopt("m1", p, 1, n))
        plans.append(lopt("m2", p, 1, n))
    else:
        plans.append(lopt("ext_basis", p, s, n))
        plans.append(lopt("ext_m2", p, s, n))
    return plans


def method_plan(method: str, p: int, s: int, n: int) -> EvalPlan:
    """``method`` at its optimal depth, with the count it is held to.

    Degree-0 inputs need no decomposition; only the basis-split scheme still
    spends its s - 1 combining products.  The basis-split prediction is also
    capped by the closed-form first-method bound for extension coefficients.
    """
    if method == "horner":
        return EvalPlan("horner", 0, max(n, 0), None, s)
    if method == "direct":
        return EvalPlan("direct", 0, max(2 * n - 1, 0), None, s)
    if method not in METHODS:
        raise ValueError(f"unknown method {method!r}")
    if n < 1:
        return EvalPlan(method, 1, s - 1 if method == "ext_basis" else 0, None, s)
    plan = lopt(method, p, s, n)
    if method == "ext_basis":
        bound = g1_ext_firstmethod_bound(p, s, n)
        plan = EvalPlan(method, plan.L, min(plan.predicted_mul, bound), plan.window, s)
    return plan


def best_plan(p: int, s: int, n: int) -> EvalPlan:
    # stable min keeps Horner on ties
    return min(candidate_plans(p, s, n), key=lambda plan: plan.predicted_mul)


def compare_horner(p: int, s: int, n: int) -> HornerComparison:
    if n < 1:
        return HornerComparison(n, EvalPlan("horner", 0, n, None, s))
    plans = [lopt("m1", p, 1, n), lopt("m2", p, 1, n)] if s == 1 else [
        lopt("ext_basis", p, s, n), lopt("ext_m2", p, s, n)]
    return HornerComparison(n, min(plans, key=lambda plan: plan.predicted_mul))
