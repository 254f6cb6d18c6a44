"""Polynomial evaluators that report what they spent.

Every evaluator returns the value together with the :class:`OpCounter` of its
session.  The schedules mirror the itemised costs the formulas in
:mod:`autoeval.cost` are built from, so measured counts can be compared with
the predictions directly: products by 0 or 1 are free, every scheduled
addition counts, a p-th power is charged ``cp(p)`` products.
"""

from __future__ import annotations

from typing import Sequence

from . import cost
from .cost import EvalPlan
from .field import CountingField, FieldElement, FieldError, OpCounter, _same
from .poly import DensePoly, basis_split


class _Session:
    """Counted arithmetic plus the power tables shared inside one evaluation."""

    def __init__(self, P: DensePoly, alpha: FieldElement, counter: OpCounter | None):
        _same(P.ctx, alpha.ctx)
        self.ctx = P.ctx
        self.p = P.ctx.p
        self.f = CountingField(P.ctx, counter)
        self.alpha = alpha.value
        self._sigma = [alpha.value]
        self._tables: dict[tuple[int, int], tuple[list[int], dict[int, list[int]]]] = {}

    @property
    def counter(self) -> OpCounter:
        return self.f.counter

    def sigma(self, i: int) -> int:
        """``sigma^i(alpha)``, each step a run of p - 1 consecutive products."""
        while len(self._sigma) <= i:
            self._sigma.append(self.f.chain(self._sigma[-1], self.p)[-1])
        return self._sigma[i]

    def table(self, z: int, D: int, alphabet: Sequence[int]):
        """Powers ``z^0..z^D`` and every ``c * z^e`` for the nontrivial c."""
        key = (z, D)
        if key not in self._tables:
            powers = self.f.chain(z, D)
            mul = self.f.mul
            products = {c: [c] + [mul(c, powers[e]) for e in range(1, D + 1)] for c in alphabet}
            self._tables[key] = (powers, products)
        return self._tables[key]

    def leaves(self, leaves: Sequence[Sequence[int]], z: int, alphabet: Sequence[int]) -> list[int]:
        D = max(len(leaf) for leaf in leaves) - 1
        if D < 1:
            return [leaf[0] if leaf else 0 for leaf in leaves]
        powers, products = self.table(z, D, alphabet)
        add = self.f.add
        out = []
        for leaf in leaves:
            if not leaf:
                out.append(0)
                continue
            acc = leaf[0]
            for e in range(1, len(leaf)):
                c = leaf[e]
                if c == 0:
                    term = 0
                elif c == 1:
                    term = powers[e]
                else:
                    term = products[c][e]
                acc = add(acc, term)
            out.append(acc)
        return out

    def fold(self, values: list[int], L: int, point, pth: bool = False,
             fixed_leaves: Sequence[bool] = ()) -> int:
        return fold_tree(self.f, values, L, point, pth, fixed_leaves)

    def result(self, v: int) -> tuple[FieldElement, OpCounter]:
        return FieldElement(self.ctx, v), self.counter


def fold_tree(f: CountingField, values: Sequence[int], L: int, point, pth: bool = False,
              fixed_leaves: Sequence[bool] = ()) -> int:
    """Rebuild the root value from the ``p^L`` leaf values.

    Level d combines its p children Horner-style in ``point(d)``; with
    ``pth`` the children are raised to the p-th power first, except leaves
    flagged in ``fixed_leaves`` (their value is already Frobenius-fixed).
    """
    p = f.ctx.p
    values = list(values)
    for d in range(L - 1, -1, -1):
        nd = p**d
        x = point(d)
        nxt = []
        for h in range(nd):
            ch = [values[h + nd * j] for j in range(p)]
            if pth:
                ch = [v if (d == L - 1 and fixed_leaves and fixed_leaves[h + nd * j]) else f.pth(v)
                      for j, v in enumerate(ch)]
            acc = ch[-1]
            for j in range(p - 2, -1, -1):
                acc = f.add(f.mul(acc, x), ch[j])
            nxt.append(acc)
        values = nxt
    return values[0]


def _prime_alphabet(P: DensePoly) -> list[int]:
    p = P.ctx.p
    if any(v >= p for v in P.values):
        raise FieldError("coefficients must lie in the prime field")
    return list(range(2, p))


def _subfield_alphabet(P: DensePoly, s: int) -> list[int]:
    return sorted(v for v in P.ctx.subfield_elements(s) if v > 1)


def _split(values: Sequence[int], p: int, L: int) -> list[tuple[int, ...]]:
    stride = p**L
    return [tuple(values[j::stride]) for j in range(stride)]


def eval_direct(P: DensePoly, alpha: FieldElement, counter: OpCounter | None = None):
    """Power chain ``eta_{i+1} = alpha eta_i`` then ``sum a_i eta_i``."""
    S = _Session(P, alpha, counter)
    f = S.f
    vals = P.values
    if not vals:
        return S.result(0)
    eta = f.chain(S.alpha, len(vals) - 1)
    acc = vals[0]
    for i in range(1, len(vals)):
        acc = f.add(acc, f.mul(vals[i], eta[i]))
    return S.result(acc)


def eval_horner(P: DensePoly, alpha: FieldElement, counter: OpCounter | None = None):
    S = _Session(P, alpha, counter)
    f, a = S.f, S.alpha
    vals = P.values
    if not vals:
        return S.result(0)
    acc = vals[-1]
    for c in reversed(vals[:-1]):
        acc = f.add(f.mul(acc, a), c)
    return S.result(acc)


def _m1(S: _Session, values: Sequence[int], L: int, alphabet: Sequence[int]) -> int:
    p = S.p
    if not values:
        return 0
    if L == 0:
        return S.leaves([values], S.alpha, alphabet)[0]
    leaves = _split(values, p, L)
    D = max(len(leaf) for leaf in leaves) - 1
    # sigma^L(alpha) is only needed when some leaf has a nonconstant term
    z = S.sigma(L) if D >= 1 else 0
    return S.fold(S.leaves(leaves, z, alphabet), L, S.sigma)


def eval_m1(P: DensePoly, alpha: FieldElement, L: int | None = None,
            counter: OpCounter | None = None):
    """First automorphic method: leaves at ``sigma^L(alpha)``, folded back
    with the Frobenius images ``sigma^d(alpha)``."""
    alphabet = _prime_alphabet(P)
    if L is None:
        L = _default_depth("m1", P)
    if L < 0:
        raise ValueError("depth must be non-negative")
    S = _Session(P, alpha, counter)
    return S.result(_m1(S, P.values, L, alphabet))


def eval_m2(P: DensePoly, alpha: FieldElement, L: int | None = None,
            counter: OpCounter | None = None):
    """Second automorphic method: leaves at alpha, folded back with p-th
    powers and products by alpha."""
    alphabet = _prime_alphabet(P)
    if L is None:
        L = _default_depth("m2", P)
    if L < 0:
        raise ValueError("depth must be non-negative")
    S = _Session(P, alpha, counter)
    if not P.values:
        return S.result(0)
    leaves = _split(P.values, S.p, L)
    vals = S.leaves(leaves, S.alpha, alphabet)
    const = [len(leaf) <= 1 for leaf in leaves]
    return S.result(S.fold(vals, L, lambda d: S.alpha, pth=True, fixed_leaves=const))


def _ext_field(P: DensePoly, s: int | None) -> int:
    s = P.s if s is None else s
    if s < 2 or P.ctx.m % s:
        raise FieldError(f"need a proper subfield degree s > 1 dividing {P.ctx.m}, got {s}")
    sub = P.ctx.subfield_elements(s)
    if any(v not in sub for v in P.values):
        raise FieldError(f"coefficients are not in F_{P.ctx.p}^{s}")
    return s


def eval_ext_basis(P: DensePoly, alpha: FieldElement, beta: FieldElement | None = None,
                   counter: OpCounter | None = None, s: int | None = None):
    """Split into s prime-field polynomials along the basis ``1, beta, ...``,
    evaluate each with the first method at its own best depth, recombine."""
    s = _ext_field(P, s)
    ctx = P.ctx
    if beta is None:
        beta = ctx.subfield_generator(s)
    parts = basis_split(P.with_field(s) if P.s != s else P, beta)
    S = _Session(P, alpha, counter)
    alphabet = list(range(2, ctx.p))
    vals = []
    for part in parts:
        n = part.degree
        L = cost.lopt("m1", ctx.p, 1, n).L if n >= 1 else 0
        vals.append(_m1(S, part.values, L, alphabet))
    f = S.f
    acc = vals[-1]
    for v in reversed(vals[:-1]):
        acc = f.add(f.mul(acc, beta.value), v)
    return S.result(acc)


def eval_ext_m2(P: DensePoly, alpha: FieldElement, L: int | None = None,
                counter: OpCounter | None = None, s: int | None = None):
    """Second method for coefficients in F_{p^s}.

    The leaf polynomials carry coefficients twisted by ``sigma^{-L}``.  When
    ``s | L`` the twist is the identity on F_{p^s}, so leaves are evaluated
    at alpha with the original coefficients and folded back with p-th powers.
    Otherwise each leaf is evaluated at ``sigma^L(alpha)``; the ``sigma^{-L}``
    its value needs cancels level by level against the p-th powers of the
    fold, so the fold runs with the Frobenius images of alpha instead and no
    automorphism is ever applied to a leaf value.
    """
    s = _ext_field(P, s)
    if L is None:
        L = _default_depth("ext_m2", P, s)
    if L < 0:
        raise ValueError("depth must be non-negative")
    S = _Session(P, alpha, counter)
    alphabet = _subfield_alphabet(P, s)
    if not P.values:
        return S.result(0)
    if L % s == 0:
        leaves = _split(P.values, S.p, L)
        vals = S.leaves(leaves, S.alpha, alphabet)
        return S.result(S.fold(vals, L, lambda d: S.alpha, pth=True))
    return S.result(_m1(S, P.values, L, alphabet))


def _default_depth(kind: str, P: DensePoly, s: int = 1) -> int:
    n = P.degree
    return cost.lopt(kind, P.ctx.p, s, n).L if n >= 1 else 1


def predicted(plan: EvalPlan) -> int:
    return plan.predicted_mul


def plan_for(P: DensePoly) -> EvalPlan:
    n = P.degree
    if n < 1:
        return EvalPlan("horner", 0, 0, None, P.s)
    s = P.s if P.s > 1 and any(v >= P.ctx.p for v in P.values) else 1
    return cost.best_plan(P.ctx.p, s, n)


def run_plan(plan: EvalPlan, P: DensePoly, alpha: FieldElement, counter: OpCounter | None = None):
    method = plan.method
    if method == "horner":
        return eval_horner(P, alpha, counter)
    if method == "direct":
        return eval_direct(P, alpha, counter)
    if method == "m1":
        return eval_m1(P, alpha, plan.L, counter)
    if method == "m2":
        return eval_m2(P, alpha, plan.L, counter)
    if method == "ext_basis":
        return eval_ext_basis(P, alpha, counter=counter, s=plan.s)
    if method == "ext_m2":
        return eval_ext_m2(P, alpha, plan.L, counter, s=plan.s)
    raise ValueError(f"unknown method {method!r}")


def eval_best(P: DensePoly, alpha: FieldElement, counter: OpCounter | None = None):
    """Run the plan the cost model predicts to be cheapest.

    Returns ``(value, plan, counter)``.
    """
    plan = plan_for(P)
    value, counter = run_plan(plan, P, alpha, counter)
    return value, plan, counter


EVALUATORS = {
    "direct": eval_direct,
    "horner": eval_horner,
    "m1": eval_m1,
    "m2": eval_m2,
    "ext_basis": eval_ext_basis,
    "ext_m2": eval_ext_m2,
}


def worst_case_poly(ctx, n: int, s: int, alpha: FieldElement, rng) -> DensePoly:
    """Degree-n polynomial over F_{p^s} whose Horner intermediates at alpha
    avoid 0 and 1, so that no counted Horner product is skipped.

    Coefficients are drawn from the elements other than 0 and 1 where
    possible; greedy from the leading coefficient down, using 0 or 1 only
    when no other choice keeps the intermediate away from 0 and 1."""
    if n < 0:
        return DensePoly._raw(ctx, (), s)
    sub = sorted(ctx.subfield_elements(s)) if s > 1 else list(range(ctx.p))
    alphabet = [v for v in sub if v > 1] or [1]
    a = alpha.value
    coeffs = [0] * (n + 1)
    coeffs[n] = rng.choice(alphabet)
    acc = coeffs[n]
    for i in range(n - 1, -1, -1):
        cand = alphabet[:]
        rng.shuffle(cand)
        cand += [c for c in (0, 1) if c not in cand]
        base = ctx.mul(acc, a)
        pick = next((c for c in cand if i == 0 or ctx.add(base, c) > 1), cand[0])
        coeffs[i] = pick
        acc = ctx.add(base, pick)
    return DensePoly._raw(ctx, coeffs, s)


def random_poly(ctx, n: int, s: int, rng) -> DensePoly:
    """Uniform coefficients from F_{p^s} with a nonzero leading one."""
    if n < 0:
        return DensePoly._raw(ctx, (), s)
    sub = sorted(ctx.subfield_elements(s)) if s > 1 else list(range(ctx.p))
    coeffs = [rng.choice(sub) for _ in range(n)] + [rng.choice(sub[1:])]
    return DensePoly._raw(ctx, coeffs, s)
