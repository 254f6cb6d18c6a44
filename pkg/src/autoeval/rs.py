"""Syndromes of the [255, 223, 33] Reed-Solomon code over GF(2^8).

The received word is split as ``r = r1 + gamma * r2`` with ``r1, r2`` over
GF(16), ``gamma`` a root of ``z^2 + z + beta`` outside GF(16).  Each half is
evaluated with a depth-4 radix-2 tree: since ``sigma^4`` fixes GF(16) the
leaves keep their coefficients, and every leaf term ``beta^k * x^e`` is a
lookup in a precomputed table, so leaves cost only additions.  The fold back
to the root spends 30 squarings and 15 products per half, and one more
product combines the halves: 91 per syndrome in the worst case.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Iterable, Sequence, TextIO

from .evaluators import fold_tree
from .field import CountingField, FieldContext, FieldElement, FieldError, OpCounter
from .poly import DensePoly, basis_coordinates, basis_matrix_inverse, from_roots

N = 255
K_MSG = 223
NSYN = 32
DEPTH = 4
RS_MODULUS = (1, 1, 0, 1, 0, 1, 0, 0, 1)  # x^8 + x^5 + x^3 + x + 1, lowest first


@dataclass(frozen=True)
class ReceivedWord:
    values: tuple[int, ...]

    def __post_init__(self):
        if len(self.values) != N:
            raise ValueError(f"a received word has {N} symbols, got {len(self.values)}")
        if any(not 0 <= v < 256 for v in self.values):
            raise ValueError("symbols must be bytes")

    @classmethod
    def from_poly(cls, P: DensePoly) -> "ReceivedWord":
        vals = list(P.values)
        if len(vals) > N:
            raise ValueError("polynomial degree exceeds 254")
        return cls(tuple(vals + [0] * (N - len(vals))))

    def __add__(self, other: "ReceivedWord") -> "ReceivedWord":
        return ReceivedWord(tuple(a ^ b for a, b in zip(self.values, other.values)))


@dataclass
class SyndromeSet:
    values: list[FieldElement]
    per_syndrome_mul: list[int]
    stages: dict[str, OpCounter] = field(default_factory=dict)

    @property
    def total(self) -> OpCounter:
        out = OpCounter(cp=1)
        for c in self.stages.values():
            out.merge(c)
        return out

    @property
    def total_mul(self) -> int:
        return self.total.charged_mul

    def is_zero(self) -> bool:
        return all(v.value == 0 for v in self.values)


class RSContext:
    """GF(2^8) with the constants and tables of the syndrome scheme.

    Construction verifies every structural claim the scheme relies on and
    records what the tables cost in ``table_cost``.
    """

    def __init__(self):
        F = FieldContext.get(2, 8, RS_MODULUS)
        if not F.is_primitive(F.element(2)):
            raise FieldError("x is not primitive for the RS modulus")
        self.field = F
        self.alpha = F.element(2)
        self.beta = F.element(F.power(2, 17))
        b = self.beta.value
        self.subfield = F.subfield_elements(4)
        if b not in self.subfield or F.multiplicative_order(self.beta) != 15:
            raise FieldError("beta is not a primitive element of GF(16)")
        if F.add(F.add(F.power(b, 4), F.power(b, 3)), 1) != 0:
            raise FieldError("beta is not a root of x^4 + x^3 + 1")
        if self.trace(b) != 1:
            raise FieldError("beta has trace 0 in GF(16)")
        roots = [z for z in range(256) if F.add(F.mul(z, z), z) == b]
        if not roots or roots[0] in self.subfield:
            raise FieldError("z^2 + z + beta has no root outside GF(16)")
        self.gamma = F.element(roots[0])
        g = self.gamma.value
        betas = [F.power(b, k) for k in range(4)]
        self.basis = betas + [F.mul(g, x) for x in betas]
        self.basis_matrix = basis_matrix_inverse(F, self.basis)
        self.log_beta = {F.power(b, k): k for k in range(15)}

        self.table_cost = {"table_powers": OpCounter(cp=1), "table_products": OpCounter(cp=1)}
        f = CountingField(F, self.table_cost["table_powers"])
        self.alpha_pow = f.chain(2, N - 1)[:N]  # alpha^0 .. alpha^254, 253 products
        # alpha^i * beta^k for every i and k = 1..14; charged per scheduled
        # product, the i = 0 row included
        prod = self.table_cost["table_products"]
        self.products = [[0] * 15 for _ in range(N)]
        beta_pow = [F.power(b, k) for k in range(15)]
        for i in range(N):
            row = self.products[i]
            row[0] = self.alpha_pow[i]
            for k in range(1, 15):
                prod.mul += 1
                row[k] = F.mul(self.alpha_pow[i], beta_pow[k])

    def trace(self, a: int) -> int:
        """Absolute trace of an element of GF(16)."""
        F = self.field
        out, y = 0, a
        for _ in range(4):
            out = F.add(out, y)
            y = F.mul(y, y)
        return out

    @property
    def table_mul(self) -> int:
        return sum(c.charged_mul for c in self.table_cost.values())

    def point(self, j: int) -> FieldElement:
        return FieldElement(self.field, self.alpha_pow[j % N])


_RS_CACHE: list[RSContext] = []


def build_rs_context() -> RSContext:
    if not _RS_CACHE:
        _RS_CACHE.append(RSContext())
    return _RS_CACHE[0]


def build_generator(ctx: RSContext) -> DensePoly:
    """``g(x) = prod_{i=1}^{32} (x - alpha^i)``."""
    return from_roots(ctx.field, [ctx.point(i) for i in range(1, NSYN + 1)])


def encode(ctx: RSContext, message: Sequence[int]) -> ReceivedWord:
    """Non-systematic codeword ``message * g``."""
    if len(message) > K_MSG:
        raise ValueError(f"messages have at most {K_MSG} symbols")
    m = DensePoly(ctx.field, message, 8)
    return ReceivedWord.from_poly(m * build_generator(ctx))


def gamma_split(ctx: RSContext, r: ReceivedWord) -> tuple[DensePoly, DensePoly]:
    F = ctx.field
    r1, r2 = [], []
    cache: dict[int, tuple[int, int]] = {}
    for v in r.values:
        if v not in cache:
            c = basis_coordinates(F, ctx.basis_matrix, ctx.basis, v)
            lo = hi = 0
            for k in range(4):
                if c[k]:
                    lo = F.add(lo, ctx.basis[k])
                if c[4 + k]:
                    hi = F.add(hi, ctx.basis[k])
            cache[v] = (lo, hi)
        lo, hi = cache[v]
        r1.append(lo)
        r2.append(hi)
    return DensePoly._raw(F, r1, 4), DensePoly._raw(F, r2, 4)


def _leaf_values(ctx: RSContext, values: Sequence[int], j: int, f: CountingField) -> list[int]:
    """The 16 leaves of a half at ``x = alpha^j``, by table lookups and sums."""
    stride = 1 << DEPTH
    out = []
    for t in range(stride):
        coeffs = values[t::stride]
        if not coeffs:
            out.append(0)
            continue
        acc = coeffs[0]
        for e in range(1, len(coeffs)):
            c = coeffs[e]
            term = ctx.products[(j * e) % N][ctx.log_beta[c]] if c else 0
            acc = f.add(acc, term)
        out.append(acc)
    return out


def _half(ctx: RSContext, P: DensePoly, j: int, f: CountingField, leaf_f: CountingField) -> int:
    x = ctx.alpha_pow[j % N]
    leaves = _leaf_values(ctx, P.values, j, leaf_f)
    return fold_tree(f, leaves, DEPTH, lambda d: x, pth=True)


def syndromes_automorphic(ctx: RSContext, r: ReceivedWord, include_tables: bool = True) -> SyndromeSet:
    r1, r2 = gamma_split(ctx, r)
    F = ctx.field
    stages = {"leaves": OpCounter(cp=1), "reconstruction": OpCounter(cp=1), "combine": OpCounter(cp=1)}
    leaf_f = CountingField(F, stages["leaves"])
    rec_f = CountingField(F, stages["reconstruction"])
    comb_f = CountingField(F, stages["combine"])
    values, per = [], []
    g = ctx.gamma.value
    for j in range(1, NSYN + 1):
        before = sum(c.charged_mul for c in stages.values())
        v1 = _half(ctx, r1, j, rec_f, leaf_f)
        v2 = _half(ctx, r2, j, rec_f, leaf_f)
        values.append(FieldElement(F, comb_f.add(v1, comb_f.mul(g, v2))))
        per.append(sum(c.charged_mul for c in stages.values()) - before)
    if include_tables:
        stages = {**{k: c.copy() for k, c in ctx.table_cost.items()}, **stages}
    return SyndromeSet(values, per, stages)


def horner_points(ctx: RSContext, counter: OpCounter | None = None) -> list[int]:
    """``alpha^1 .. alpha^32`` by the chain, 31 counted products."""
    return CountingField(ctx.field, counter).chain(ctx.alpha.value, NSYN)[1:]


def syndromes_horner(ctx: RSContext, r: ReceivedWord, points: Sequence[int] | None = None) -> SyndromeSet:
    F = ctx.field
    stages = {}
    if points is None:
        stages["power_chain"] = OpCounter(cp=1)
        points = horner_points(ctx, stages["power_chain"])
    stages["horner"] = OpCounter(cp=1)
    f = CountingField(F, stages["horner"])
    vals = r.values
    values, per = [], []
    for x in points:
        before = stages["horner"].mul
        acc = vals[-1]
        for c in reversed(vals[:-1]):
            acc = f.add(f.mul(acc, x), c)
        values.append(FieldElement(F, acc))
        per.append(stages["horner"].mul - before)
    return SyndromeSet(values, per, stages)


def syndromes_direct(ctx: RSContext, r: ReceivedWord) -> list[FieldElement]:
    """Uncounted reference: ``sum r_i alpha^{ij}``."""
    F = ctx.field
    out = []
    for j in range(1, NSYN + 1):
        acc = 0
        for i, c in enumerate(r.values):
            acc = F.add(acc, F.mul(c, ctx.alpha_pow[(i * j) % N]))
        out.append(FieldElement(F, acc))
    return out


@dataclass(frozen=True)
class AmortizedCost:
    horner: int
    automorphic: int


HORNER_FIXED = NSYN - 1
HORNER_PER_WORD = NSYN * (N - 1)
AUTO_FIXED = 253 + 3570
AUTO_PER_WORD = NSYN * 91


def amortized_cost(K: int) -> AmortizedCost:
    """Worst-case totals for K words sharing the fixed precomputation."""
    if K < 0:
        raise ValueError("K must be non-negative")
    return AmortizedCost(HORNER_FIXED + HORNER_PER_WORD * K, AUTO_FIXED + AUTO_PER_WORD * K)


@dataclass
class BatchReport:
    automorphic: list[SyndromeSet]
    horner: list[SyndromeSet]
    stages: dict[str, dict[str, OpCounter]]

    def total(self, pipeline: str) -> int:
        return sum(c.charged_mul for c in self.stages[pipeline].values())

    def agree(self) -> bool:
        return all(a.values == h.values for a, h in zip(self.automorphic, self.horner))


def run_batch(ctx: RSContext, words: Iterable[ReceivedWord]) -> BatchReport:
    """Both pipelines over K words, fixed costs paid once."""
    auto_sets, horner_sets = [], []
    auto_stages = {k: c.copy() for k, c in ctx.table_cost.items()}
    horner_stages = {"power_chain": OpCounter(cp=1)}
    points = horner_points(ctx, horner_stages["power_chain"])
    for r in words:
        a = syndromes_automorphic(ctx, r, include_tables=False)
        h = syndromes_horner(ctx, r, points)
        auto_sets.append(a)
        horner_sets.append(h)
        for k, c in a.stages.items():
            auto_stages.setdefault(k, OpCounter(cp=1)).merge(c)
        for k, c in h.stages.items():
            horner_stages.setdefault(k, OpCounter(cp=1)).merge(c)
    return BatchReport(auto_sets, horner_sets, {"automorphic": auto_stages, "horner": horner_stages})


# -- worst-case words ----------------------------------------------------------


def worst_case_word(ctx: RSContext, seed: int = 0) -> ReceivedWord:
    """A word on which no counted product of either pipeline is skipped.

    Both GF(16) components of every symbol avoid 0 and 1, every Horner
    intermediate multiplied by a point avoids 0 and 1, and so do the values
    of every non-root tree node and the root of the ``r2`` half.  Found by a
    seeded depth-first search from the top symbol down.
    """
    F = ctx.field
    g = ctx.gamma.value
    sub = sorted(v for v in ctx.subfield if v > 1)
    choices = [(F.add(a, F.mul(g, b)), a, b) for a in sub for b in sub]
    xs = [ctx.alpha_pow[j] for j in range(1, NSYN + 1)]
    rng = random.Random(seed)
    stride = 1 << DEPTH

    halves: list[list[int]] = [[0] * N, [0] * N]
    horner = [[0] * NSYN for _ in range(N + 1)]  # horner[i] = intermediates after symbol i

    def node_ok(i: int) -> bool:
        # every tree node whose smallest coefficient index is i is complete now
        for which, vals in enumerate(halves):
            for j, x in enumerate(xs):
                for d in range(DEPTH, -1, -1):
                    nd = 1 << d
                    if i >= nd:
                        break
                    if d == 0 and which == 0:
                        continue
                    v = _node_value(F, vals, i, d, x)
                    if v < 2:
                        return False
        return True

    order: list[list[tuple[int, int, int]]] = []
    pos: list[int] = []
    i = N - 1
    while i >= 0:
        if len(order) < N - i:
            cand = choices[:]
            rng.shuffle(cand)
            order.append(cand)
            pos.append(0)
        level = N - 1 - i
        placed = False
        while pos[level] < len(order[level]):
            v, a, b = order[level][pos[level]]
            pos[level] += 1
            prev = horner[i + 1] if i < N - 1 else None
            cur = [v] * NSYN if prev is None else [F.add(F.mul(h, x), v) for h, x in zip(prev, xs)]
            if i >= 1 and any(c < 2 for c in cur):
                continue
            halves[0][i], halves[1][i] = a, b
            if i < stride and not node_ok(i):
                continue
            horner[i] = cur
            placed = True
            break
        if placed:
            i -= 1
        else:
            order.pop()
            pos.pop()
            i += 1
            if i > N - 1:
                raise RuntimeError("no worst-case word exists for this search order")
    return ReceivedWord(tuple(F.add(halves[0][k], F.mul(g, halves[1][k])) for k in range(N)))


def _node_value(F: FieldContext, vals: Sequence[int], h: int, d: int, x: int) -> int:
    """Value the fold holds at depth d, node h: the node polynomial (the
    coefficients ``h, h + 2^d, ...``) with coefficients twisted by
    ``sigma^-d``, evaluated at x."""
    e = 1 << ((DEPTH - d) % DEPTH)  # sigma^-d on GF(16)
    acc = 0
    for c in reversed(vals[h::1 << d]):
        acc = F.add(F.mul(acc, x), F.power(c, e))
    return acc


def random_word(rng: random.Random) -> ReceivedWord:
    return ReceivedWord(tuple(rng.randrange(256) for _ in range(N)))


def random_codeword(ctx: RSContext, rng: random.Random) -> ReceivedWord:
    return encode(ctx, [rng.randrange(256) for _ in range(K_MSG)])


# -- files ---------------------------------------------------------------------


def read_word(fh: TextIO) -> ReceivedWord:
    vals = []
    for lineno, line in enumerate(fh, 1):
        t = line.strip()
        if not t:
            continue
        if len(t) != 2:
            raise ValueError(f"line {lineno}: expected two hex digits, got {t!r}")
        vals.append(int(t, 16))
    return ReceivedWord(tuple(vals))


def write_word(r: ReceivedWord, fh: TextIO) -> None:
    for v in r.values:
        fh.write(f"{v:02x}\n")


def write_syndromes(S: SyndromeSet, fh: TextIO) -> None:
    for j, v in enumerate(S.values, 1):
        fh.write(f"S{j}={v.value:02x}\n")


def write_cost_csv(stages: dict[str, OpCounter], fh: TextIO) -> None:
    fh.write("stage,muls,adds\n")
    for name, c in stages.items():
        fh.write(f"{name},{c.charged_mul},{c.add}\n")
    total_mul = sum(c.charged_mul for c in stages.values())
    total_add = sum(c.add for c in stages.values())
    fh.write(f"total,{total_mul},{total_add}\n")
