"""Reference computations that share no code with the package.

Field arithmetic goes through sympy's dense GF(p)[x] routines; cost
oracles count an itemised schedule term by term.
"""

from __future__ import annotations

import math

from sympy import ZZ
from sympy.polys.galoistools import gf_add, gf_mul, gf_rem


def _high(digits):
    out = [int(d) for d in reversed(list(digits))]
    while out and out[0] == 0:
        out.pop(0)
    return out


def _low(poly, m):
    d = [int(c) for c in reversed(poly)]
    return d + [0] * (m - len(d))


def pack(digits, p):
    return sum(int(c) * p**i for i, c in enumerate(digits))


def unpack(v, p, m):
    out = []
    for _ in range(m):
        v, r = divmod(v, p)
        out.append(r)
    return out


class OracleField:
    """F_p[x]/(modulus) with packed-int elements, via sympy."""

    def __init__(self, p, modulus_low_first):
        self.p = p
        self.m = len(modulus_low_first) - 1
        self.mod = _high(modulus_low_first)

    def mul(self, a, b):
        pa, pb = _high(unpack(a, self.p, self.m)), _high(unpack(b, self.p, self.m))
        r = gf_rem(gf_mul(pa, pb, self.p, ZZ), self.mod, self.p, ZZ)
        return pack(_low(r, self.m), self.p)

    def add(self, a, b):
        pa, pb = _high(unpack(a, self.p, self.m)), _high(unpack(b, self.p, self.m))
        return pack(_low(gf_add(pa, pb, self.p, ZZ), self.m), self.p)

    def pow(self, a, e):
        out = 1
        for _ in range(e):
            out = self.mul(out, a)
        return out

    def horner(self, coeffs, x):
        acc = 0
        for c in reversed(coeffs):
            acc = self.add(self.mul(acc, x), c)
        return acc


def g1_itemised(p, n, L):
    D = n // p**L
    chain = L * (p - 1)
    powers = max(D - 1, 0)
    products = D * (p - 2)
    fold = p**L - 1
    return chain + powers + products + fold


def g2_itemised(p, n, L, cp):
    D = n // p**L
    powers = D - 1
    pth = sum(p**d for d in range(1, L + 1)) * cp
    fold = p**L - 1
    products = D * (p - 2)
    return powers + pth + fold + products


def cp_oracle(p):
    """Products in left-to-right square-and-multiply for exponent p."""
    if p == 2:
        return 1
    count = 0
    for bit in bin(p)[3:]:
        count += 1 + (bit == "1")
    return count


def nearest_depth(p, n):
    return math.floor(math.log(math.sqrt(n * (p - 1)), p) + 0.5)
