"""Arithmetic in GF(p^k) and the witness searches the matrix catalog needs.

Field elements are encoded as integers in [0, q): the code sum(c_i * p**i)
stands for the residue polynomial sum(c_i * t**i) modulo a fixed monic
irreducible polynomial of degree k.  All arithmetic goes through
:class:`FieldSpec`; :class:`FieldElement` is a thin immutable wrapper for
callers that want operator syntax.  Fields are tiny here, so elements are
kept fully reduced and the small ones get dense add/mul lookup tables.
"""

from __future__ import annotations

import functools
from typing import Optional

from .errors import BoundExceeded, DivisionByZero, MixedFields, NotPrime

DEFAULT_ORDER_BOUND = 1 << 16
_TABLE_BOUND = 64  # build dense op tables only for fields at most this big


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def _poly_trim(c: list[int]) -> list[int]:
    while c and c[-1] == 0:
        c.pop()
    return c


def _poly_mod(a: list[int], b: list[int], p: int) -> list[int]:
    """Remainder of a mod b over GF(p); b must be nonzero."""
    a = list(a)
    db = len(b) - 1
    inv_lead = pow(b[-1], p - 2, p)
    while len(a) - 1 >= db and a:
        if a[-1] == 0:
            a.pop()
            continue
        factor = a[-1] * inv_lead % p
        shift = len(a) - 1 - db
        for i, bc in enumerate(b):
            a[shift + i] = (a[shift + i] - factor * bc) % p
        a = _poly_trim(a)
    return a


def _poly_mul(a: list[int], b: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ac in enumerate(a):
        if ac == 0:
            continue
        for j, bc in enumerate(b):
            out[i + j] = (out[i + j] + ac * bc) % p
    return out


class FieldSpec:
    """The finite field GF(p^k) with a fixed irreducible modulus.

    Do not instantiate directly; use :func:`field` so equal parameters
    share one instance (element ownership is checked by identity).
    """

    __slots__ = (
        "p", "k", "q", "modulus",
        "_mul_table", "_add_table", "_neg_table", "_inv_table",
    )

    def __init__(self, p: int, k: int, modulus: tuple[int, ...]):
        self.p = p
        self.k = k
        self.q = p**k
        self.modulus = modulus
        if self.q <= _TABLE_BOUND:
            self._add_table = [[self._add_slow(a, b) for b in range(self.q)]
                               for a in range(self.q)]
            self._mul_table = [[self._mul_slow(a, b) for b in range(self.q)]
                               for a in range(self.q)]
            self._neg_table = [self._neg_slow(a) for a in range(self.q)]
            self._inv_table = [None] + [self._inv_slow(a) for a in range(1, self.q)]
        else:
            self._add_table = None
            self._mul_table = None
            self._neg_table = None
            self._inv_table = None

    # -- encoding ---------------------------------------------------------

    def decode(self, code: int) -> tuple[int, ...]:
        coeffs = []
        for _ in range(self.k):
            coeffs.append(code % self.p)
            code //= self.p
        return tuple(coeffs)

    def encode(self, coeffs) -> int:
        code = 0
        for c in reversed(list(coeffs)):
            code = code * self.p + c % self.p
        return code

    # -- arithmetic on codes ----------------------------------------------

    def _add_slow(self, a: int, b: int) -> int:
        if self.k == 1:
            return (a + b) % self.p
        ca, cb = self.decode(a), self.decode(b)
        return self.encode((x + y) % self.p for x, y in zip(ca, cb))

    def _neg_slow(self, a: int) -> int:
        if self.k == 1:
            return (-a) % self.p
        return self.encode((-x) % self.p for x in self.decode(a))

    def _mul_slow(self, a: int, b: int) -> int:
        if self.k == 1:
            return a * b % self.p
        prod = _poly_mul(list(self.decode(a)), list(self.decode(b)), self.p)
        rem = _poly_mod(prod, list(self.modulus), self.p)
        rem += [0] * (self.k - len(rem))
        return self.encode(rem)

    def _inv_slow(self, a: int) -> int:
        return self.pow(a, self.q - 2)

    def add(self, a: int, b: int) -> int:
        t = self._add_table
        return t[a][b] if t is not None else self._add_slow(a, b)

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def neg(self, a: int) -> int:
        t = self._neg_table
        return t[a] if t is not None else self._neg_slow(a)

    def mul(self, a: int, b: int) -> int:
        t = self._mul_table
        return t[a][b] if t is not None else self._mul_slow(a, b)

    def inv(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero(f"inverse of 0 in GF({self.q})")
        t = self._inv_table
        return t[a] if t is not None else self._inv_slow(a)

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            return self.pow(self.inv(a), -e)
        result = 1
        base = a
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def multiplicative_order(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero("0 has no multiplicative order")
        b, n = a, 1
        while b != 1:
            b = self.mul(b, a)
            n += 1
        return n

    # -- elements ----------------------------------------------------------

    def element(self, value) -> "FieldElement":
        """Wrap an int code, coefficient sequence, or element of this field."""
        if isinstance(value, FieldElement):
            if value.owner is not self:
                raise MixedFields("element belongs to a different field")
            return value
        if isinstance(value, int):
            return FieldElement(self, value % self.q if self.k == 1 else value)
        return FieldElement(self, self.encode(value))

    def elements(self):
        return [FieldElement(self, c) for c in range(self.q)]

    def render(self, code: int) -> str:
        if self.k == 1:
            return str(code)
        terms = []
        for i in reversed(range(self.k)):
            c = self.decode(code)[i]
            if c == 0:
                continue
            if i == 0:
                terms.append(str(c))
            else:
                var = "t" if i == 1 else f"t^{i}"
                terms.append(var if c == 1 else f"{c}{var}")
        return "+".join(terms) if terms else "0"

    def __repr__(self):
        return f"GF({self.q})"


class FieldElement:
    """An element of a FieldSpec; immutable, hashable, operator-friendly."""

    __slots__ = ("owner", "code")

    def __init__(self, owner: FieldSpec, code: int):
        if not 0 <= code < owner.q:
            raise ValueError(f"code {code} out of range for {owner!r}")
        self.owner = owner
        self.code = code

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self.owner.decode(self.code)

    def _peer(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.owner is not self.owner:
                raise MixedFields("operands from different fields")
            return other.code
        if isinstance(other, int):
            return other % self.owner.p if self.owner.k == 1 else other
        return NotImplemented

    def __add__(self, other):
        return FieldElement(self.owner, self.owner.add(self.code, self._peer(other)))

    def __sub__(self, other):
        return FieldElement(self.owner, self.owner.sub(self.code, self._peer(other)))

    def __mul__(self, other):
        return FieldElement(self.owner, self.owner.mul(self.code, self._peer(other)))

    def __neg__(self):
        return FieldElement(self.owner, self.owner.neg(self.code))

    def __pow__(self, e: int):
        return FieldElement(self.owner, self.owner.pow(self.code, e))

    def inverse(self):
        return FieldElement(self.owner, self.owner.inv(self.code))

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.owner is other.owner and self.code == other.code
        if isinstance(other, int):
            return self.code == self.owner.element(other).code
        return NotImplemented

    def __hash__(self):
        return hash((id(self.owner), self.code))

    def __repr__(self):
        return self.owner.render(self.code)


def _least_irreducible(p: int, k: int) -> tuple[int, ...]:
    """Lexicographically least monic irreducible of degree k over GF(p).

    Candidates are scanned in increasing order of their low-coefficient
    code sum(c_i * p**i); irreducibility by trial division against all
    monic polynomials of degree 1..k//2.
    """
    divisors = []
    for d in range(1, k // 2 + 1):
        for code in range(p**d):
            coeffs = []
            c = code
            for _ in range(d):
                coeffs.append(c % p)
                c //= p
            divisors.append(coeffs + [1])
    for code in range(p**k):
        coeffs = []
        c = code
        for _ in range(k):
            coeffs.append(c % p)
            c //= p
        candidate = coeffs + [1]
        if all(_poly_mod(candidate, div, p) for div in divisors):
            return tuple(candidate)
    raise AssertionError(f"no irreducible of degree {k} over GF({p})")  # impossible


@functools.lru_cache(maxsize=None)
def field(p: int, k: int = 1, bound: int = DEFAULT_ORDER_BOUND) -> FieldSpec:
    """Build GF(p^k) with the deterministic least irreducible modulus."""
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if k < 1:
        raise ValueError("k must be >= 1")
    if p**k > bound:
        raise BoundExceeded(f"field order {p**k} exceeds bound {bound}")
    return FieldSpec(p, k, _least_irreducible(p, k))


def field_of_order(q: int, bound: int = DEFAULT_ORDER_BOUND) -> FieldSpec:
    """GF(q) for a prime power q, e.g. the CLI's --q argument."""
    if q < 2:
        raise NotPrime(f"{q} is not a prime power")
    p = None
    for d in range(2, q + 1):
        if q % d == 0:
            p = d
            break
    k = 0
    m = q
    while m % p == 0:
        m //= p
        k += 1
    if m != 1:
        raise NotPrime(f"{q} is not a prime power")
    return field(p, k, bound)


def sqrt(F: FieldSpec, a) -> Optional[FieldElement]:
    """Least b (in code order) with b*b = a, or None."""
    a = F.element(a).code
    for b in range(F.q):
        if F.mul(b, b) == a:
            return FieldElement(F, b)
    return None


def sqrt_minus_one(F: FieldSpec) -> Optional[FieldElement]:
    """Least square root of -1, or None.

    For even q the element 1 qualifies (1 = -1 in characteristic 2); for
    odd q a root exists exactly when q % 4 != 3.
    """
    if F.q % 2 == 0:
        return FieldElement(F, 1)
    return sqrt(F, F.neg(1))


def chevalley_warning_witness(F: FieldSpec) -> tuple[FieldElement, FieldElement]:
    """Least pair (x, y) with 1 + x^2 + y^2 = 0.

    In characteristic 2 the pair (1, 0) always works and is returned
    directly; for odd q the pair is found by scanning x (outer) and y
    (inner) in code order.  The search always succeeds on a finite field.
    """
    if F.q % 2 == 0:
        return FieldElement(F, 1), FieldElement(F, 0)
    for x in range(F.q):
        lhs = F.add(1, F.mul(x, x))
        for y in range(F.q):
            if F.add(lhs, F.mul(y, y)) == 0:
                return FieldElement(F, x), FieldElement(F, y)
    raise AssertionError(f"no Chevalley-Warning witness in GF({F.q})")  # impossible
