"""Arithmetic in F_p and F_{p^m} with operation counting.

Elements are stored as integers: the coefficient vector ``(c_0, ..., c_{m-1})``
of the polynomial basis is packed as ``sum(c_i * p**i)``.  For p = 2 this is
the usual bit-packed form.  With this packing the field zero and one are the
integers 0 and 1, which keeps the "operand is 0 or 1" counting test cheap.

Fields with at most ``TABLE_LIMIT`` elements get log/antilog (and, for odd p,
Zech logarithm) tables for speed.  Tables never change what is counted.
"""

from __future__ import annotations

import functools
import math
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .cost import cp as _cp

TABLE_LIMIT = 1 << 16
MAX_PRIME = 1 << 16
MAX_ORDER = 1 << 64

# Moduli pinned for reproducibility; lowest-degree coefficient first.
IRREDUCIBLE_OVERRIDES: dict[tuple[int, int], tuple[int, ...]] = {
    (2, 8): (1, 1, 0, 1, 0, 1, 0, 0, 1),  # x^8 + x^5 + x^3 + x + 1
    (2, 4): (1, 0, 0, 1, 1),  # x^4 + x^3 + 1
}


class FieldError(ValueError):
    pass


class FieldMismatchError(FieldError):
    """Raised when elements of different fields are combined."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


# -- polynomials over F_p as coefficient lists, lowest degree first ---------


def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmod(a: list[int], f: Sequence[int], p: int) -> list[int]:
    a = list(a)
    df = len(f) - 1
    inv = pow(f[-1], p - 2, p) if f[-1] != 1 else 1
    for i in range(len(a) - 1, df - 1, -1):
        c = a[i] * inv % p
        if c:
            for j in range(df + 1):
                a[i - df + j] = (a[i - df + j] - c * f[j]) % p
    return _trim(a[:df] if len(a) > df else a)


def _pmulmod(a: Sequence[int], b: Sequence[int], f: Sequence[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _pmod([c % p for c in out], f, p)


def _ppowmod(a: Sequence[int], e: int, f: Sequence[int], p: int) -> list[int]:
    result = [1]
    base = _pmod(list(a), f, p)
    while e:
        if e & 1:
            result = _pmulmod(result, base, f, p)
        base = _pmulmod(base, base, f, p)
        e >>= 1
    return result


def _pgcd(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _pmod(a, b, p)
    return a


def is_irreducible(modulus: Sequence[int], p: int) -> bool:
    """Rabin-style test: ``gcd(x^{p^k} - x, f) = 1`` for ``k <= m/2``."""
    f = _trim([c % p for c in modulus])
    m = len(f) - 1
    if m < 1:
        return False
    if m == 1:
        return True
    xp = [0, 1]
    for _ in range(m // 2):
        xp = _ppowmod(xp, p, f, p)
        diff = list(xp) + [0] * max(0, 2 - len(xp))
        diff[1] = (diff[1] - 1) % p
        g = _pgcd(f, _trim(diff), p)
        if len(g) > 1:
            return False
    return True


def find_irreducible(p: int, m: int, use_overrides: bool = True) -> tuple[int, ...]:
    """Monic irreducible polynomial of degree m over F_p, lowest coefficient first.

    Candidates are scanned with their lower coefficients read as base-p digits
    of 0, 1, 2, ... (constant term least significant), so the answer is
    deterministic.  The override table wins when ``use_overrides`` is set.
    """
    if m < 1:
        raise FieldError("degree must be at least 1")
    if not is_prime(p):
        raise FieldError(f"{p} is not prime")
    if use_overrides and (p, m) in IRREDUCIBLE_OVERRIDES:
        return IRREDUCIBLE_OVERRIDES[(p, m)]
    for k in range(p**m):
        low = [(k // p**i) % p for i in range(m)]
        cand = tuple(low) + (1,)
        if is_irreducible(cand, p):
            return cand
    raise AssertionError("unreachable: irreducible polynomials exist for every degree")


def _factor(n: int) -> list[int]:
    if n < 1 << 40:
        out, f = [], 2
        while f * f <= n:
            if n % f == 0:
                out.append(f)
                while n % f == 0:
                    n //= f
            f += 1 if f == 2 else 2
        if n > 1:
            out.append(n)
        return out
    from sympy import factorint

    return sorted(factorint(n))


# -- counters -----------------------------------------------------------------


@dataclass
class OpCounter:
    """Operation tallies for one evaluation session.

    ``charged_mul`` folds p-th powers (and the p-th powers that make up a
    Frobenius application) into the multiplication count at ``cp`` each.
    """

    mul: int = 0
    add: int = 0
    pth_power: int = 0
    frobenius_apps: Counter = field(default_factory=Counter)
    cp: int = 1

    @property
    def charged_mul(self) -> int:
        return self.mul + self.cp * self.pth_power

    def merge(self, other: "OpCounter") -> "OpCounter":
        if other.cp != self.cp:
            raise ValueError("cannot merge counters with different p-th power costs")
        self.mul += other.mul
        self.add += other.add
        self.pth_power += other.pth_power
        self.frobenius_apps.update(other.frobenius_apps)
        return self

    def __add__(self, other: "OpCounter") -> "OpCounter":
        return self.copy().merge(other)

    def copy(self) -> "OpCounter":
        return OpCounter(self.mul, self.add, self.pth_power, Counter(self.frobenius_apps), self.cp)

    def snapshot(self) -> dict:
        return {"mul": self.mul, "add": self.add, "pth_power": self.pth_power,
                "charged_mul": self.charged_mul}


# -- the field ----------------------------------------------------------------


class FieldContext:
    """The field F_{p^m} = F_p[x]/(modulus).

    ``modulus`` is given lowest-degree coefficient first and must be monic
    and irreducible; when omitted, :func:`find_irreducible` supplies one.
    The designated element ``alpha`` is the class of x when it is primitive,
    otherwise the first primitive element in integer order.
    """

    def __init__(self, p: int, m: int = 1, modulus: Sequence[int] | None = None,
                 generator_hint: int | Sequence[int] | None = None):
        if not isinstance(p, int) or not is_prime(p):
            raise FieldError(f"characteristic {p!r} is not prime")
        if p >= MAX_PRIME:
            raise FieldError(f"characteristic {p} exceeds {MAX_PRIME}")
        if m < 1:
            raise FieldError("extension degree must be at least 1")
        if p**m > MAX_ORDER:
            raise FieldError(f"field order {p}^{m} exceeds 2^64")
        if modulus is None:
            modulus = find_irreducible(p, m)
        mod = tuple(int(c) % p for c in modulus)
        if len(mod) != m + 1 or mod[-1] != 1:
            raise FieldError(f"modulus {modulus} is not monic of degree {m}")
        if not is_irreducible(mod, p):
            raise FieldError(f"modulus {modulus} is reducible over F_{p}")
        self.p = p
        self.m = m
        self.q = p**m
        self.modulus = mod
        self.cp = _cp(p)
        self._hint = generator_hint
        self._modint = sum(c << i for i, c in enumerate(mod)) if p == 2 else None
        self._exp: list[int] | None = None
        self._log: list[int] | None = None
        self._zech: list[int] | None = None
        self._alpha: int | None = None
        self._subfields: dict[int, frozenset[int]] = {}
        if self.q <= TABLE_LIMIT:
            self._build_tables()
        self.mul = self._table_mul if self._exp is not None else self._generic_mul
        if p == 2:
            self.add = int.__xor__
        elif self._exp is not None:
            self.add = self._zech_add
        else:
            self.add = self._generic_add

    # construction helpers

    @classmethod
    @functools.lru_cache(maxsize=None)
    def get(cls, p: int, m: int = 1, modulus: tuple[int, ...] | None = None) -> "FieldContext":
        """Shared context instance (tables are built once per field)."""
        return cls(p, m, modulus)

    @classmethod
    def from_spec(cls, spec: str) -> "FieldContext":
        """Parse ``"p=<p>,m=<m>[,mod=<coefficients highest first>]"``."""
        return cls.get(*parse_spec(spec)[:3])

    @property
    def spec(self) -> str:
        return f"p={self.p},m={self.m},mod=" + ",".join(str(c) for c in reversed(self.modulus))

    def __eq__(self, other):
        return isinstance(other, FieldContext) and (self.p, self.m, self.modulus) == (
            other.p, other.m, other.modulus)

    def __hash__(self):
        return hash((self.p, self.m, self.modulus))

    def __repr__(self):
        return f"FieldContext({self.spec})"

    # raw integer arithmetic (uncounted)

    def digits(self, v: int) -> list[int]:
        p = self.p
        out = []
        for _ in range(self.m):
            v, r = divmod(v, p)
            out.append(r)
        return out

    def from_digits(self, d: Sequence[int]) -> int:
        v = 0
        for c in reversed(d):
            v = v * self.p + c % self.p
        return v

    def _generic_mul(self, a: int, b: int) -> int:
        if self.p == 2:
            r, m, mod = 0, self.m, self._modint
            while b:
                if b & 1:
                    r ^= a
                b >>= 1
                a <<= 1
                if (a >> m) & 1:
                    a ^= mod
            return r
        prod = _pmulmod(_trim(self.digits(a)), _trim(self.digits(b)), self.modulus, self.p)
        return self.from_digits(prod)

    def _generic_add(self, a: int, b: int) -> int:
        p = self.p
        v, scale = 0, 1
        while a or b:
            a, ra = divmod(a, p)
            b, rb = divmod(b, p)
            v += ((ra + rb) % p) * scale
            scale *= p
        return v

    def _table_mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self._exp[self._log[a] + self._log[b]]

    def _zech_add(self, a: int, b: int) -> int:
        if a == 0:
            return b
        if b == 0:
            return a
        la = self._log[a]
        z = self._zech[(self._log[b] - la) % (self.q - 1)]
        return 0 if z < 0 else self._exp[la + z]

    def neg(self, a: int) -> int:
        if self.p == 2 or a == 0:
            return a
        return self.from_digits([-c for c in self.digits(a)])

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def power(self, a: int, e: int) -> int:
        if e < 0:
            if a == 0:
                raise ZeroDivisionError("zero has no inverse")
            e %= self.q - 1
        if self._exp is not None:
            if a == 0:
                return 1 if e == 0 else 0
            return self._exp[(self._log[a] * e) % (self.q - 1)]
        result, base = 1, a
        while e:
            if e & 1:
                result = self._generic_mul(result, base)
            base = self._generic_mul(base, base)
            e >>= 1
        return result

    def inverse(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("zero has no inverse")
        return self.power(a, self.q - 2)

    def frob(self, a: int, k: int = 1) -> int:
        """Raw ``a^{p^k}`` with k reduced mod m."""
        k %= self.m
        if k == 0 or a <= 1:
            return a
        return self.power(a, self.p**k)

    def _x_class(self) -> int:
        # the class of x; for m = 1 that is -modulus[0]
        return self.p if self.m > 1 else (-self.modulus[0]) % self.p

    def _build_tables(self) -> None:
        q = self.q
        g = self._find_primitive_generic()
        exp = [0] * (2 * (q - 1))
        log = [-1] * q
        v = 1
        for i in range(q - 1):
            exp[i] = v
            log[v] = i
            v = self._generic_mul(v, g)
        exp[q - 1:] = exp[: q - 1]
        self._exp, self._log, self._alpha = exp, log, g
        if self.p != 2:
            p = self.p
            zech = [-1] * (q - 1)
            for d in range(q - 1):
                w = exp[d]
                one_plus = w - w % p + (w % p + 1) % p
                zech[d] = log[one_plus] if one_plus else -1
            self._zech = zech

    def _order_is_full(self, a: int) -> bool:
        if a == 0:
            return False
        n = self.q - 1
        pw = self.power if self._exp is not None else self._generic_power
        return all(pw(a, n // f) != 1 for f in _factor(n)) if n > 1 else a == 1

    def _generic_power(self, a: int, e: int) -> int:
        result, base = 1, a
        while e:
            if e & 1:
                result = self._generic_mul(result, base)
            base = self._generic_mul(base, base)
            e >>= 1
        return result

    def _find_primitive_generic(self) -> int:
        hint = self._hint
        if hint is not None:
            h = hint if isinstance(hint, int) else self.from_digits(hint)
            if not self._order_is_full(h):
                raise FieldError("generator hint is not primitive")
            return h
        x = self._x_class()
        if self._order_is_full(x):
            return x
        for v in range(2, self.q):
            if self._order_is_full(v):
                return v
        return 1  # F_2: the only nonzero element

    # public element API

    @property
    def alpha(self) -> "FieldElement":
        if self._alpha is None:
            self._alpha = self._find_primitive_generic()
        return FieldElement(self, self._alpha)

    @property
    def zero(self) -> "FieldElement":
        return FieldElement(self, 0)

    @property
    def one(self) -> "FieldElement":
        return FieldElement(self, 1)

    def __call__(self, value) -> "FieldElement":
        return self.element(value)

    def element(self, value) -> "FieldElement":
        """Element from its packed integer, a coefficient sequence or text."""
        if isinstance(value, FieldElement):
            _same(self, value.ctx)
            return value
        if isinstance(value, str):
            return self.decode(value)
        if isinstance(value, int):
            if not 0 <= value < self.q:
                raise FieldError(f"{value} is not an element of F_{self.p}^{self.m}")
            return FieldElement(self, value)
        coeffs = list(value)
        if len(coeffs) != self.m or any(not 0 <= c < self.p for c in coeffs):
            raise FieldError(f"need {self.m} residues in [0, {self.p})")
        return FieldElement(self, self.from_digits(coeffs))

    def scalar(self, c: int) -> "FieldElement":
        """Embed the prime-field residue ``c``."""
        return FieldElement(self, c % self.p)

    def elements(self) -> Iterable["FieldElement"]:
        return (FieldElement(self, v) for v in range(self.q))

    def encode(self, a: "FieldElement | int") -> str:
        v = a.value if isinstance(a, FieldElement) else a
        if self.p == 2:
            return format(v, "0{}x".format((self.m + 3) // 4))
        return ",".join(str(c) for c in self.digits(v))

    def decode(self, text: str) -> "FieldElement":
        text = text.strip()
        if self.p == 2:
            return self.element(int(text, 16))
        return self.element([int(t) for t in text.split(",")])

    def multiplicative_order(self, a: "FieldElement") -> int:
        v = a.value
        if v == 0:
            raise FieldError("zero has no multiplicative order")
        n = self.q - 1
        for f in _factor(n):
            while n % f == 0 and self.power(v, n // f) == 1:
                n //= f
        return n

    def is_primitive(self, a: "FieldElement") -> bool:
        return self._order_is_full(a.value)

    def subfield_elements(self, s: int) -> frozenset[int]:
        """Packed values of the subfield F_{p^s}."""
        if self.m % s:
            raise FieldError(f"{s} does not divide {self.m}")
        if s not in self._subfields:
            if s == self.m:
                vals = frozenset(range(self.q))
            elif self.q <= TABLE_LIMIT:
                step = (self.q - 1) // (self.p**s - 1)
                vals = frozenset([0] + [self._exp[i * step] for i in range(self.p**s - 1)])
            else:
                beta = self.subfield_generator(s).value
                vals = {0}
                v = 1
                for _ in range(self.p**s - 1):
                    vals.add(v)
                    v = self.mul(v, beta)
                vals = frozenset(vals)
            self._subfields[s] = vals
        return self._subfields[s]

    def subfield_generator(self, s: int) -> "FieldElement":
        """A primitive element of F_{p^s}, namely ``alpha^((q-1)/(p^s-1))``."""
        if self.m % s:
            raise FieldError(f"{s} does not divide {self.m}")
        return FieldElement(self, self.power(self.alpha.value, (self.q - 1) // (self.p**s - 1)))


def _same(a: FieldContext, b: FieldContext) -> None:
    if a is not b and a != b:
        raise FieldMismatchError(f"{a!r} and {b!r} are different fields")


class FieldElement:
    """An element of a :class:`FieldContext`.

    Python operators compute without counting; use the ``ff_*`` functions or
    a :class:`CountingField` to tally operations.
    """

    __slots__ = ("ctx", "value")

    def __init__(self, ctx: FieldContext, value: int):
        self.ctx = ctx
        self.value = value

    @property
    def coeffs(self) -> tuple[int, ...]:
        return tuple(self.ctx.digits(self.value))

    def _other(self, other) -> int:
        if isinstance(other, FieldElement):
            _same(self.ctx, other.ctx)
            return other.value
        if isinstance(other, int):
            return other % self.ctx.p
        return NotImplemented

    def __add__(self, other):
        o = self._other(other)
        return FieldElement(self.ctx, self.ctx.add(self.value, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        return FieldElement(self.ctx, self.ctx.sub(self.value, o))

    def __rsub__(self, other):
        return FieldElement(self.ctx, self.ctx.sub(self._other(other), self.value))

    def __neg__(self):
        return FieldElement(self.ctx, self.ctx.neg(self.value))

    def __mul__(self, other):
        o = self._other(other)
        return FieldElement(self.ctx, self.ctx.mul(self.value, o))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        return FieldElement(self.ctx, self.ctx.power(self.value, e))

    def __truediv__(self, other):
        o = self._other(other)
        return FieldElement(self.ctx, self.ctx.mul(self.value, self.ctx.inverse(o)))

    def inverse(self) -> "FieldElement":
        return FieldElement(self.ctx, self.ctx.inverse(self.value))

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.ctx == other.ctx and self.value == other.value
        if isinstance(other, int):
            return self.value == other % self.ctx.p
        return NotImplemented

    def __hash__(self):
        return hash((self.ctx, self.value))

    def __bool__(self):
        return self.value != 0

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"FieldElement({self.ctx.encode(self.value)!r})"

    def __str__(self):
        return self.ctx.encode(self.value)


class CountingField:
    """Counted integer-level arithmetic over one context.

    Products with an operand equal to 0 or 1 are free; every addition counts.
    """

    __slots__ = ("ctx", "counter", "_mul", "_add", "_power")

    def __init__(self, ctx: FieldContext, counter: OpCounter | None = None):
        self.ctx = ctx
        self.counter = counter if counter is not None else OpCounter(cp=ctx.cp)
        self._mul = ctx.mul
        self._add = ctx.add
        self._power = ctx.power

    def mul(self, a: int, b: int) -> int:
        if a > 1 and b > 1:
            self.counter.mul += 1
        return self._mul(a, b)

    def add(self, a: int, b: int) -> int:
        self.counter.add += 1
        return self._add(a, b)

    def pth(self, a: int) -> int:
        """A p-th power, charged ``cp`` products unless ``a`` is 0 or 1."""
        if a > 1:
            self.counter.pth_power += 1
        return self._power(a, self.ctx.p)

    def frobenius(self, a: int, k: int) -> int:
        self.counter.frobenius_apps[k] += 1
        if a > 1:
            self.counter.pth_power += k
        return self.ctx.frob(a, k)

    def chain(self, a: int, n: int) -> list[int]:
        """``[1, a, a^2, ..., a^n]`` by successive multiplication by a."""
        out = [1, a] if n >= 1 else [1]
        for _ in range(n - 1):
            out.append(self.mul(out[-1], a))
        return out

    def pow(self, a: int, e: int) -> int:
        """Square-and-multiply with counted products."""
        if e == 0:
            return 1
        result = a
        for bit in bin(e)[3:]:
            result = self.mul(result, result)
            if bit == "1":
                result = self.mul(result, a)
        return result


# -- counted element-level operations -------------------------------------------


def _counted(a: FieldElement, counter: OpCounter | None) -> CountingField:
    return CountingField(a.ctx, counter if counter is not None else OpCounter(cp=a.ctx.cp))


def ff_add(a: FieldElement, b: FieldElement, counter: OpCounter | None = None) -> FieldElement:
    _same(a.ctx, b.ctx)
    return FieldElement(a.ctx, _counted(a, counter).add(a.value, b.value))


def ff_mul(a: FieldElement, b: FieldElement, counter: OpCounter | None = None) -> FieldElement:
    _same(a.ctx, b.ctx)
    return FieldElement(a.ctx, _counted(a, counter).mul(a.value, b.value))


def ff_pow(a: FieldElement, e: int, counter: OpCounter | None = None) -> FieldElement:
    if e < 0:
        raise FieldError("exponent must be non-negative")
    return FieldElement(a.ctx, _counted(a, counter).pow(a.value, e))


def power_chain(a: FieldElement, n: int, counter: OpCounter | None = None) -> list[FieldElement]:
    """Consecutive powers ``a^0 .. a^n``; ``n - 1`` counted products."""
    return [FieldElement(a.ctx, v) for v in _counted(a, counter).chain(a.value, n)]


def frobenius(a: FieldElement, k: int = 1, counter: OpCounter | None = None) -> FieldElement:
    """``sigma^k(a) = a^{p^k}``; counts k p-th powers."""
    if k < 0:
        raise FieldError("use inverse_frobenius for negative powers")
    return FieldElement(a.ctx, _counted(a, counter).frobenius(a.value, k))


def inverse_frobenius(a: FieldElement, k: int = 1, counter: OpCounter | None = None) -> FieldElement:
    """``sigma^{-k}(a)``, evaluated as ``sigma^{(m - k) mod m}``."""
    if k < 0:
        raise FieldError("k must be non-negative")
    m = a.ctx.m
    return frobenius(a, (m - k % m) % m, counter)


def is_in_subfield(a: FieldElement, s: int) -> bool:
    ctx = a.ctx
    if s < 1 or ctx.m % s:
        raise FieldError(f"{s} does not divide {ctx.m}")
    if ctx.q <= TABLE_LIMIT:
        return a.value in ctx.subfield_elements(s)
    return ctx.power(a.value, ctx.p**s) == a.value


def parse_spec(spec: str) -> tuple[int, int, tuple[int, ...] | None, int]:
    """Split a context spec string into ``(p, m, modulus_low_first, s)``.

    Accepts ``p=<p>,m=<m>[,s=<s>][,mod=<c_m,...,c_0>]``; the modulus list must
    come last since it is itself comma separated.
    """
    spec = spec.strip()
    head, sep, mod = spec.partition("mod=")
    parts = {}
    for item in filter(None, (t.strip() for t in head.split(","))):
        key, eq, val = item.partition("=")
        if not eq or key not in ("p", "m", "s") or key in parts:
            raise FieldError(f"malformed field spec {spec!r}")
        try:
            parts[key] = int(val)
        except ValueError:
            raise FieldError(f"malformed field spec {spec!r}") from None
    if "p" not in parts or "m" not in parts:
        raise FieldError(f"field spec {spec!r} needs p and m")
    modulus = None
    if sep:
        try:
            hi_first = [int(t) for t in mod.replace(" ", ",").split(",") if t]
        except ValueError:
            raise FieldError(f"malformed modulus in {spec!r}") from None
        modulus = tuple(reversed(hi_first))
    return parts["p"], parts["m"], modulus, parts.get("s", 1)
