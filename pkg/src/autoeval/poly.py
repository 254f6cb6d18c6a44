"""Dense polynomials over a subfield of F_{p^m} and their radix-p splits."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence, TextIO

from .field import FieldContext, FieldElement, FieldError


class DensePoly:
    """Coefficients ``a_0 .. a_n`` (index = exponent) living in F_{p^s}.

    Coefficients are stored as packed field values of the ambient context;
    ``s`` only declares which subfield they are promised to lie in.  Trailing
    zeros are dropped, so the zero polynomial has no coefficients.
    """

    __slots__ = ("ctx", "s", "values")

    def __init__(self, ctx: FieldContext, coeffs: Iterable[FieldElement | int] = (), s: int = 1,
                 check: bool = True):
        if ctx.m % s:
            raise FieldError(f"coefficient field degree {s} does not divide {ctx.m}")
        vals = [ctx.element(c).value if check else (c.value if isinstance(c, FieldElement) else c)
                for c in coeffs]
        while vals and vals[-1] == 0:
            vals.pop()
        if check and s < ctx.m:
            sub = ctx.subfield_elements(s)
            bad = [i for i, v in enumerate(vals) if v not in sub]
            if bad:
                raise FieldError(f"coefficient {bad[0]} is not in F_{ctx.p}^{s}")
        self.ctx = ctx
        self.s = s
        self.values = tuple(vals)

    @classmethod
    def _raw(cls, ctx: FieldContext, values: Sequence[int], s: int) -> "DensePoly":
        return cls(ctx, values, s, check=False)

    @property
    def coeffs(self) -> tuple[FieldElement, ...]:
        return tuple(FieldElement(self.ctx, v) for v in self.values)

    @property
    def degree(self) -> int:
        """-1 stands in for the degree of the zero polynomial."""
        return len(self.values) - 1

    def is_zero(self) -> bool:
        return not self.values

    def __len__(self):
        return len(self.values)

    def __getitem__(self, i: int) -> FieldElement:
        return FieldElement(self.ctx, self.values[i] if i < len(self.values) else 0)

    def __eq__(self, other):
        if not isinstance(other, DensePoly):
            return NotImplemented
        return self.ctx == other.ctx and self.values == other.values

    def __hash__(self):
        return hash((self.ctx, self.values))

    def __repr__(self):
        return f"DensePoly(deg={self.degree}, s={self.s}, {[self.ctx.encode(v) for v in self.values]})"

    def __call__(self, x: FieldElement) -> FieldElement:
        """Uncounted Horner evaluation, a convenience oracle."""
        ctx = self.ctx
        acc = 0
        for c in reversed(self.values):
            acc = ctx.add(ctx.mul(acc, x.value), c)
        return FieldElement(ctx, acc)

    def __add__(self, other: "DensePoly") -> "DensePoly":
        ctx = self.ctx
        a, b = self.values, other.values
        n = max(len(a), len(b))
        out = [ctx.add(a[i] if i < len(a) else 0, b[i] if i < len(b) else 0) for i in range(n)]
        return DensePoly._raw(ctx, out, self.s if self.s == other.s else ctx.m)

    def __mul__(self, other: "DensePoly") -> "DensePoly":
        ctx = self.ctx
        if not self.values or not other.values:
            return DensePoly._raw(ctx, (), self.s)
        out = [0] * (len(self.values) + len(other.values) - 1)
        for i, x in enumerate(self.values):
            if x:
                for j, y in enumerate(other.values):
                    out[i + j] = ctx.add(out[i + j], ctx.mul(x, y))
        s = self.s if self.s == other.s else ctx.m
        return DensePoly._raw(ctx, out, s)

    def with_field(self, s: int) -> "DensePoly":
        """The same polynomial re-declared over F_{p^s} (membership is checked)."""
        return DensePoly(self.ctx, self.values, s)


def from_roots(ctx: FieldContext, roots: Iterable[FieldElement]) -> DensePoly:
    """Monic ``prod (x - r)``."""
    out = DensePoly._raw(ctx, (1,), ctx.m)
    for r in roots:
        out = out * DensePoly._raw(ctx, (ctx.neg(r.value), 1), ctx.m)
    return out


@dataclass(frozen=True)
class RadixTree:
    """Leaves of an L-fold radix-p split.

    Leaf ``j = j_1 + p j_2 + ... + p^{L-1} j_L`` (first split residue least
    significant) holds the coefficients ``a_i`` with ``i = j (mod p^L)``.
    """

    depth: int
    leaves: tuple[DensePoly, ...]
    p: int

    def reconstruct(self) -> DensePoly:
        """Interleave the leaves back into the original polynomial."""
        stride = self.p**self.depth
        first = self.leaves[0]
        n = max((len(leaf) - 1) * stride + j + 1 for j, leaf in enumerate(self.leaves)) if any(
            len(leaf) for leaf in self.leaves) else 0
        out = [0] * n
        for j, leaf in enumerate(self.leaves):
            for e, v in enumerate(leaf.values):
                out[j + e * stride] = v
        return DensePoly._raw(first.ctx, out, first.s)


def radix_split(P: DensePoly, p: int | None = None) -> list[DensePoly]:
    """``P(x) = sum_j x^j P_j(x^p)``; ``P_j`` takes the coefficients ``a_{ap+j}``."""
    p = P.ctx.p if p is None else p
    if p != P.ctx.p:
        raise FieldError("the split radix must equal the characteristic")
    return [DensePoly._raw(P.ctx, P.values[j::p], P.s) for j in range(p)]


def radix_tree(P: DensePoly, L: int) -> RadixTree:
    if L < 0:
        raise ValueError("depth must be non-negative")
    p = P.ctx.p
    level = [P]
    for _ in range(L):
        # node h splits into children h + p^d * j, j = residue of this split
        nxt: list[DensePoly | None] = [None] * (len(level) * p)
        for h, node in enumerate(level):
            for j, child in enumerate(radix_split(node, p)):
                nxt[h + len(level) * j] = child
        level = nxt
    return RadixTree(L, tuple(level), p)


def basis_matrix_inverse(ctx: FieldContext, basis: Sequence[int]) -> list[list[int]]:
    """Rows of a left inverse over F_p of the columns ``basis`` (packed values).

    Raises :class:`FieldError` if the vectors are linearly dependent.
    """
    p, m, k = ctx.p, ctx.m, len(basis)
    cols = [ctx.digits(b) for b in basis]
    # augmented rows: [A | I_m], A is m x k
    rows = [[cols[c][r] for c in range(k)] + [int(r == i) for i in range(m)] for r in range(m)]
    piv_rows = []
    r = 0
    for c in range(k):
        piv = next((i for i in range(r, m) if rows[i][c]), None)
        if piv is None:
            raise FieldError("basis elements are linearly dependent over F_p")
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = pow(rows[r][c], p - 2, p)
        rows[r] = [v * inv % p for v in rows[r]]
        for i in range(m):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [(a - f * b) % p for a, b in zip(rows[i], rows[r])]
        piv_rows.append(r)
        r += 1
    return [rows[i][k:] for i in piv_rows]


def basis_coordinates(ctx: FieldContext, left_inverse: list[list[int]], basis: Sequence[int],
                      value: int) -> list[int]:
    d = ctx.digits(value)
    p = ctx.p
    coords = [sum(a * b for a, b in zip(row, d)) % p for row in left_inverse]
    back = 0
    for c, b in zip(coords, basis):
        for _ in range(c):
            back = ctx.add(back, b)
    if back != value:
        raise FieldError(f"{ctx.encode(value)} is not in the span of the basis")
    return coords


def basis_split(P: DensePoly, beta: FieldElement) -> list[DensePoly]:
    """``P = P_0 + beta P_1 + ... + beta^{s-1} P_{s-1}`` with ``P_i`` over F_p."""
    ctx, s = P.ctx, P.s
    basis = [ctx.power(beta.value, i) for i in range(s)]
    inv = basis_matrix_inverse(ctx, basis)
    cache: dict[int, list[int]] = {0: [0] * s}
    parts = [[0] * len(P.values) for _ in range(s)]
    for e, v in enumerate(P.values):
        if v not in cache:
            cache[v] = basis_coordinates(ctx, inv, basis, v)
        for i, c in enumerate(cache[v]):
            parts[i][e] = c
    return [DensePoly._raw(ctx, part, 1) for part in parts]


# -- text format --------------------------------------------------------------


def write_poly(P: DensePoly, fh: TextIO) -> None:
    ctx = P.ctx
    mod = ",".join(str(c) for c in reversed(ctx.modulus))
    fh.write(f"p={ctx.p} s={P.s} m={ctx.m} mod={mod}\n")
    for v in P.values:
        fh.write(ctx.encode(v) + "\n")


def read_poly(fh: TextIO) -> DensePoly:
    header = fh.readline().split()
    try:
        fields = dict(item.split("=", 1) for item in header)
        p, s, m = int(fields["p"]), int(fields["s"]), int(fields["m"])
        modulus = tuple(reversed([int(t) for t in fields["mod"].split(",")]))
    except (KeyError, ValueError) as exc:
        raise FieldError(f"bad polynomial header {header!r}") from exc
    ctx = FieldContext.get(p, m, modulus)
    coeffs = [ctx.decode(line) for line in fh if line.strip()]
    return DensePoly(ctx, coeffs, s)
