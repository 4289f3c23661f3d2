"""Core representation and algebra of finite semigroups with involution.

Two concrete representations share one duck-typed interface (``size``,
``product(a, b)``, ``star_of(a)``, ``generators``, ``identity``, ``zero``,
``element_label(a)``):

* :class:`InvolutorySemigroup` -- a dense Cayley table, for semigroups small
  enough to tabulate (products are O(1) lookups);
* :class:`BlackBoxSemigroup` -- an enumerated element list with
  multiplication/involution callables, for semigroups whose dense table
  would not fit in memory (e.g. 59049 upper-triangular matrices).

Every product performed through either class is counted in ``.products``;
reports use that counter, so algorithms must multiply via ``product()``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import combinations, product as iterproduct
from math import comb, gcd
from typing import Callable, Optional, Sequence

import numpy as np

from .errors import (
    BoundExceeded,
    GeneratorsDoNotGenerate,
    LimitExceeded,
    MalformedTable,
    NonAssociative,
    NotAnIdeal,
    NotStarClosed,
    OracleBoundExceeded,
    StarNotAntiAutomorphism,
    StarNotInvolution,
)

# Dense tables are kept below this size; beyond it callers should use
# BlackBoxSemigroup (a dense 59049^2 table would need ~14 GB).
DENSE_TABLE_BOUND = 2500

DIVIDES_SIZE_BOUND = 6
ISOMORPHISM_SIZE_BOUND = 10
_DIVIDES_CANDIDATE_CAP = 2_000_000


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


# ---------------------------------------------------------------------------
# dense representation
# ---------------------------------------------------------------------------


class FiniteSemigroup:
    """A finite semigroup on ids 0..size-1 given by a dense Cayley table."""

    __slots__ = ("size", "table", "identity", "zero", "name")

    def __init__(self, table, identity=None, zero=None, name="S", validate=True):
        self.size = len(table)
        self.table = [list(row) for row in table]
        self.identity = identity
        self.zero = zero
        self.name = name
        if validate:
            self._validate()

    def _validate(self):
        n = self.size
        if n == 0:
            raise MalformedTable("empty table")
        for row in self.table:
            if len(row) != n:
                raise MalformedTable(f"row of length {len(row)} in {n}x{n} table")
            for v in row:
                if not isinstance(v, int) or not 0 <= v < n:
                    raise MalformedTable(f"entry {v!r} out of range [0, {n})")
        t = np.array(self.table, dtype=np.intp)
        for a in range(n):
            lhs = t[t[a]]      # lhs[b, c] = (a*b)*c
            rhs = t[a][t]      # rhs[b, c] = a*(b*c)
            if not np.array_equal(lhs, rhs):
                b, c = map(int, np.argwhere(lhs != rhs)[0])
                raise NonAssociative(a, b, c)
        if self.identity is not None:
            e = self.identity
            if any(self.table[e][x] != x or self.table[x][e] != x for x in range(n)):
                raise MalformedTable(f"{e} is not an identity")
        if self.zero is not None:
            z = self.zero
            if any(self.table[z][x] != z or self.table[x][z] != z for x in range(n)):
                raise MalformedTable(f"{z} is not a zero")

    def product(self, a: int, b: int) -> int:
        return self.table[a][b]


class InvolutorySemigroup:
    """A finite semigroup with involution, backed by a dense Cayley table."""

    __slots__ = ("base", "star", "name", "generators", "element_names",
                 "products", "_table")

    def __init__(self, base: FiniteSemigroup, star: Sequence[int], name=None,
                 generators=None, element_names=None, validate=True):
        self.base = base
        self.star = list(star)
        self.name = name if name is not None else base.name
        self.generators = list(generators) if generators is not None else None
        self.element_names = list(element_names) if element_names else None
        self.products = 0
        self._table = base.table
        if validate:
            self._validate()

    def _validate(self):
        n = self.base.size
        if len(self.star) != n or sorted(self.star) != list(range(n)):
            raise MalformedTable("star is not a permutation of the element ids")
        s = np.array(self.star, dtype=np.intp)
        bad = np.nonzero(s[s] != np.arange(n))[0]
        if bad.size:
            raise StarNotInvolution(int(bad[0]))
        t = np.array(self.base.table, dtype=np.intp)
        lhs = s[t]                    # lhs[a, b] = (a*b)^*
        rhs = t[np.ix_(s, s)].T       # rhs[a, b] = b^* a^*
        if not np.array_equal(lhs, rhs):
            a, b = map(int, np.argwhere(lhs != rhs)[0])
            raise StarNotAntiAutomorphism(a, b)

    @property
    def size(self) -> int:
        return self.base.size

    @property
    def table(self):
        return self._table

    @property
    def identity(self):
        return self.base.identity

    @property
    def zero(self):
        return self.base.zero

    def product(self, a: int, b: int) -> int:
        self.products += 1
        return self._table[a][b]

    def star_of(self, a: int) -> int:
        return self.star[a]

    def element_label(self, a: int) -> str:
        return self.element_names[a] if self.element_names else str(a)

    def __repr__(self):
        return f"<InvolutorySemigroup {self.name!r} size={self.size}>"


class BlackBoxSemigroup:
    """An involutory semigroup kept as an element list plus oracles.

    Products and stars are computed by the supplied callables and resolved
    back to ids via a hash index; nothing quadratic in the size is stored.
    """

    __slots__ = ("name", "values", "generators", "identity", "zero",
                 "products", "_index", "_mul", "_star_fn", "_star_memo",
                 "element_names")

    def __init__(self, values, mul: Callable, star: Callable, name="S",
                 generators=None, identity=None, zero=None):
        self.name = name
        self.values = list(values)
        self._index = {v: i for i, v in enumerate(self.values)}
        if len(self._index) != len(self.values):
            raise MalformedTable("duplicate values in element list")
        self._mul = mul
        self._star_fn = star
        self._star_memo: list[Optional[int]] = [None] * len(self.values)
        self.generators = list(generators) if generators is not None else None
        self.identity = identity
        self.zero = zero
        self.products = 0
        self.element_names = None

    @property
    def size(self) -> int:
        return len(self.values)

    def product(self, a: int, b: int) -> int:
        self.products += 1
        return self._index[self._mul(self.values[a], self.values[b])]

    def star_of(self, a: int) -> int:
        s = self._star_memo[a]
        if s is None:
            s = self._index[self._star_fn(self.values[a])]
            self._star_memo[a] = s
        return s

    def value(self, a: int):
        return self.values[a]

    def element_label(self, a: int) -> str:
        return str(a)

    def __repr__(self):
        return f"<BlackBoxSemigroup {self.name!r} size={self.size}>"


# ---------------------------------------------------------------------------
# construction
# ---------------------------------------------------------------------------


def from_cayley(size, table, star, name="S", identity=None, zero=None,
                validate=True) -> InvolutorySemigroup:
    """Build and (by default) eagerly validate an involutory semigroup."""
    if len(table) != size:
        raise MalformedTable(f"table has {len(table)} rows, expected {size}")
    if len(star) != size:
        raise MalformedTable(f"star has length {len(star)}, expected {size}")
    base = FiniteSemigroup(table, identity=identity, zero=zero, name=name,
                           validate=validate)
    return InvolutorySemigroup(base, star, validate=validate)


def to_cayley_dict(S: InvolutorySemigroup) -> dict:
    d = {"name": S.name, "size": S.size,
         "table": [list(row) for row in S.table], "star": list(S.star)}
    if S.identity is not None:
        d["identity"] = S.identity
    if S.zero is not None:
        d["zero"] = S.zero
    return d


def from_cayley_dict(d: dict, validate=True) -> InvolutorySemigroup:
    try:
        size = d["size"]
        table = d["table"]
        star = d["star"]
    except (KeyError, TypeError) as exc:
        raise MalformedTable(f"missing key in Cayley JSON: {exc}") from exc
    return from_cayley(size, table, star, name=d.get("name", "S"),
                       identity=d.get("identity"), zero=d.get("zero"),
                       validate=validate)


def load_cayley(path, validate=True) -> InvolutorySemigroup:
    with open(path, "r", encoding="utf-8") as fh:
        return from_cayley_dict(json.load(fh), validate=validate)


def dump_cayley(S: InvolutorySemigroup, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(to_cayley_dict(S), fh, indent=2)
        fh.write("\n")


# ---------------------------------------------------------------------------
# black-box generation
# ---------------------------------------------------------------------------


@dataclass
class BlackBoxGenerators:
    """Opaque generator values with multiplication and involution oracles."""

    values: list
    mul: Callable
    star: Callable
    names: Optional[list[str]] = None

    def name_of(self, i: int) -> str:
        return self.names[i] if self.names else f"g{i + 1}"


@dataclass
class GenerationResult:
    semigroup: InvolutorySemigroup
    values: list
    words: list[list[tuple[str, bool]]]  # witness word per element


def _render_word(word) -> str:
    return " ".join(f"{name}*" if starred else name for name, starred in word)


def generate(gens: BlackBoxGenerators, limit: int) -> GenerationResult:
    """Breadth-first closure of gens and their stars under multiplication.

    Insertion order is: the generators, their new stars, then products in
    BFS order.  Each element carries one witness word over the generators.
    The closure is tabulated into a dense InvolutorySemigroup, so `limit`
    must stay modest.
    """
    if limit < 1:
        raise ValueError("limit must be >= 1")
    values: list = []
    index: dict = {}
    words: list[list[tuple[str, bool]]] = []

    def add(v, word) -> int:
        if v in index:
            return index[v]
        if len(values) >= limit:
            raise LimitExceeded(f"closure exceeds limit {limit}")
        index[v] = len(values)
        values.append(v)
        words.append(word)
        return index[v]

    for i, v in enumerate(gens.values):
        add(v, [(gens.name_of(i), False)])
    for i, v in enumerate(list(gens.values)):
        add(gens.star(v), [(gens.name_of(i), True)])
    base_ids = list(range(len(values)))

    frontier = 0
    while frontier < len(values):
        x = values[frontier]
        wx = words[frontier]
        for g in base_ids:
            add(gens.mul(x, values[g]), wx + words[g])
        frontier += 1

    n = len(values)
    if n > DENSE_TABLE_BOUND:
        raise LimitExceeded(
            f"closure of size {n} exceeds the dense-table bound {DENSE_TABLE_BOUND}")
    table = [[index[gens.mul(a, b)] for b in values] for a in values]
    star = [index[gens.star(v)] for v in values]
    identity = zero = None
    for e in range(n):
        if all(table[e][x] == x and table[x][e] == x for x in range(n)):
            identity = e
        if all(table[e][x] == e and table[x][e] == e for x in range(n)):
            zero = e
    base = FiniteSemigroup(table, identity=identity, zero=zero,
                           name="generated", validate=False)
    sg = InvolutorySemigroup(base, star, generators=list(range(len(gens.values))),
                             element_names=[_render_word(w) for w in words],
                             validate=False)
    return GenerationResult(sg, values, words)


# ---------------------------------------------------------------------------
# elementary structure
# ---------------------------------------------------------------------------


def idempotents(S) -> list[int]:
    return [a for a in range(S.size) if S.product(a, a) == a]


def is_regular_element(S, a: int) -> tuple[bool, Optional[int]]:
    """First witness y (in id order) with a = a*y*a, if any."""
    prod = S.product
    for y in range(S.size):
        if prod(prod(a, y), a) == a:
            return True, y
    return False, None


def is_regular(S) -> bool:
    return all(is_regular_element(S, a)[0] for a in range(S.size))


def _index_period(S, a: int) -> tuple[int, int, list[int]]:
    """(index, period, powers) with powers[e] = a^e for e = 1..index+period-1."""
    powers = [a, a]  # powers[0] unused
    seen = {a: 1}
    b, e = a, 1
    while True:
        b = S.product(b, a)
        e += 1
        if b in seen:
            i = seen[b]
            return i, e - i, powers
        seen[b] = e
        powers.append(b)


def element_order(S, a: int) -> tuple[int, int]:
    i, c, _ = _index_period(S, a)
    return i, c


def omega_power(S, a: int) -> int:
    """The unique idempotent power of a."""
    i, c, powers = _index_period(S, a)
    n = c * ((i + c - 1) // c)  # least multiple of the period >= index
    return powers[n]


@dataclass
class OrderData:
    index: list[int]
    period: list[int]
    global_n: int          # least N with x^N = x^(2N) for all x
    subgroup_exponent: int  # lcm of the exponents of all subgroups

    def omega_exponent_of(self, a: int) -> int:
        c, i = self.period[a], self.index[a]
        return c * ((i + c - 1) // c)


def order_data(S) -> OrderData:
    """Per-element index/period plus the two global exponents.

    Elements lying in a subgroup are exactly those of index 1 (their powers
    form a cyclic group), so the subgroup exponent is the lcm of the periods
    of the index-1 elements -- exact, no Green's data needed.
    """
    indices, periods = [], []
    for a in range(S.size):
        i, c = element_order(S, a)
        indices.append(i)
        periods.append(c)
    period_lcm = 1
    sub_exp = 1
    for i, c in zip(indices, periods):
        period_lcm = _lcm(period_lcm, c)
        if i == 1:
            sub_exp = _lcm(sub_exp, c)
    max_index = max(indices)
    global_n = period_lcm * ((max_index + period_lcm - 1) // period_lcm)
    return OrderData(indices, periods, global_n, sub_exp)


def moore_penrose(S, a: int) -> Optional[int]:
    """First y with aya=a, yay=y, (ay)*=ay, (ya)*=ya, or None."""
    prod, star = S.product, S.star_of
    for y in range(S.size):
        ay = prod(a, y)
        if prod(ay, a) != a:
            continue
        ya = prod(y, a)
        if prod(ya, y) != y:
            continue
        if star(ay) == ay and star(ya) == ya:
            return y
    return None


# ---------------------------------------------------------------------------
# quotients and subsemigroups
# ---------------------------------------------------------------------------


def rees_quotient(S, ideal) -> tuple[InvolutorySemigroup, list[int]]:
    """Collapse a star-closed two-sided ideal to a single zero.

    Returns the quotient and the projection map (old id -> new id).
    Survivors keep their relative order; the new zero gets the last id.
    """
    ideal = set(ideal)
    if not ideal or not all(isinstance(i, int) and 0 <= i < S.size for i in ideal):
        raise NotAnIdeal("ideal must be a nonempty subset of the element ids")
    for i in ideal:
        if S.star_of(i) not in ideal:
            raise NotStarClosed(f"star({i}) escapes the ideal")
    prod = S.product
    for i in sorted(ideal):
        for s in range(S.size):
            if prod(i, s) not in ideal or prod(s, i) not in ideal:
                raise NotAnIdeal(f"products of {i} with {s} escape the ideal")

    survivors = [a for a in range(S.size) if a not in ideal]
    zero_id = len(survivors)
    proj = [0] * S.size
    for new, old in enumerate(survivors):
        proj[old] = new
    for old in ideal:
        proj[old] = zero_id

    n = zero_id + 1
    table = [[zero_id] * n for _ in range(n)]
    for x, old_x in enumerate(survivors):
        for y, old_y in enumerate(survivors):
            table[x][y] = proj[prod(old_x, old_y)]
    star = [proj[S.star_of(old)] for old in survivors] + [zero_id]
    identity = None
    if S.identity is not None and S.identity not in ideal and n > 1:
        identity = proj[S.identity]
    names = [S.element_label(old) for old in survivors] + ["0"]
    base = FiniteSemigroup(table, identity=identity, zero=zero_id,
                           name=f"{S.name}/I", validate=False)
    quotient = InvolutorySemigroup(base, star, element_names=names, validate=False)
    return quotient, proj


def involutory_subsemigroup(S, gens) -> tuple[InvolutorySemigroup, list[int]]:
    """Closure of gens under product and star, tabulated.

    Returns the subsemigroup and the embedding (new id -> old id).
    """
    gens = list(gens)
    if not gens:
        raise ValueError("need at least one generator")
    elems: list[int] = []
    pos: dict[int, int] = {}

    def add(a: int) -> int:
        if a not in pos:
            pos[a] = len(elems)
            elems.append(a)
        return pos[a]

    for g in gens:
        add(g)
    for g in gens:
        add(S.star_of(g))
    base_ids = list(elems)

    frontier = 0
    prod = S.product
    while frontier < len(elems):
        x = elems[frontier]
        for g in base_ids:
            add(prod(x, g))
        frontier += 1
        if len(elems) > DENSE_TABLE_BOUND:
            raise LimitExceeded("subsemigroup too large to tabulate")

    n = len(elems)
    table = [[pos[prod(a, b)] for b in elems] for a in elems]
    star = [pos[S.star_of(a)] for a in elems]
    identity = next((e for e in range(n)
                     if all(table[e][x] == x == table[x][e] for x in range(n))), None)
    zero = next((z for z in range(n)
                 if all(table[z][x] == z == table[x][z] for x in range(n))), None)
    names = [S.element_label(a) for a in elems]
    base = FiniteSemigroup(table, identity=identity, zero=zero,
                           name=f"{S.name}|sub", validate=False)
    sub = InvolutorySemigroup(base, star, generators=[pos[g] for g in gens],
                              element_names=names, validate=False)
    return sub, elems


def _involutory_closure_ids(S, gens) -> list[int]:
    elems: list[int] = []
    pos: set[int] = set()
    for g in list(gens) + [S.star_of(g) for g in gens]:
        if g not in pos:
            pos.add(g)
            elems.append(g)
    base_ids = list(elems)
    frontier = 0
    prod = S.product
    while frontier < len(elems):
        x = elems[frontier]
        for g in base_ids:
            p = prod(x, g)
            if p not in pos:
                pos.add(p)
                elems.append(p)
        frontier += 1
    return elems


# ---------------------------------------------------------------------------
# division and isomorphism oracles
# ---------------------------------------------------------------------------


@dataclass
class DividesResult:
    divides: bool
    generator_ids: Optional[list[int]] = None   # subset of S that generates U
    morphism: Optional[dict[int, int]] = None   # U element id (in S) -> T id


def _min_generator_count(T) -> int:
    for k in range(1, T.size + 1):
        for subset in combinations(range(T.size), k):
            if len(_involutory_closure_ids(T, subset)) == T.size:
                return k
    raise AssertionError("semigroup not generated by itself")  # unreachable


def divides(T, S, *, size_bound: int = DIVIDES_SIZE_BOUND) -> DividesResult:
    """Brute-force test: is T a star-respecting image of a subsemigroup of S?

    Enumerates generator subsets of S up to the minimal involutory generator
    count of T (a surjection from a subsemigroup restricts to one from the
    closure of preimages of T's generators, so this loses nothing), then
    searches generator-image assignments.  A candidate map is propagated
    along the closure's derivation steps and verified on every
    (element, generator) pair plus the involution, which suffices for a
    homomorphism.  This is a desk-scale oracle, not a production path.
    """
    if T.size > size_bound:
        raise OracleBoundExceeded(f"|T| = {T.size} exceeds oracle bound {size_bound}")
    k_max = _min_generator_count(T)
    total = sum(comb(S.size, k) for k in range(1, k_max + 1))
    if total > _DIVIDES_CANDIDATE_CAP:
        raise OracleBoundExceeded(
            f"{total} candidate generator subsets exceed the oracle cap")

    t_prod, t_star = T.product, T.star_of
    s_prod, s_star = S.product, S.star_of

    for k in range(1, k_max + 1):
        for subset in combinations(range(S.size), k):
            # closure with recorded derivation steps
            elems: list[int] = []
            pos: dict[int, int] = {}

            def local(a: int) -> int:
                if a not in pos:
                    pos[a] = len(elems)
                    elems.append(a)
                return pos[a]

            gen_locals = [local(g) for g in subset]
            star_gen_locals = [local(s_star(g)) for g in subset]
            base_locals = sorted(set(gen_locals) | set(star_gen_locals))
            steps: list[tuple[int, int, int]] = []
            frontier = 0
            while frontier < len(elems):
                for g in base_locals:
                    r = local(s_prod(elems[frontier], elems[g]))
                    steps.append((frontier, g, r))
                frontier += 1
            n_local = len(elems)
            star_local = [pos[s_star(a)] for a in elems]

            for assignment in iterproduct(range(T.size), repeat=k):
                img: list[Optional[int]] = [None] * n_local
                ok = True
                for gl, t in zip(gen_locals, assignment):
                    if img[gl] is None:
                        img[gl] = t
                    elif img[gl] != t:
                        ok = False
                        break
                if ok:
                    for gl, t in zip(star_gen_locals, assignment):
                        ts = t_star(t)
                        if img[gl] is None:
                            img[gl] = ts
                        elif img[gl] != ts:
                            ok = False
                            break
                if ok:
                    for x, g, r in steps:
                        p = t_prod(img[x], img[g])
                        if img[r] is None:
                            img[r] = p
                        elif img[r] != p:
                            ok = False
                            break
                if ok:
                    for a in range(n_local):
                        if img[star_local[a]] != t_star(img[a]):
                            ok = False
                            break
                if ok and len(set(img)) == T.size:
                    morphism = {elems[i]: img[i] for i in range(n_local)}
                    return DividesResult(True, list(subset), morphism)
    return DividesResult(False)


def is_isomorphic(T1, T2, *, size_bound: int = ISOMORPHISM_SIZE_BOUND
                  ) -> tuple[bool, Optional[list[int]]]:
    """Search for a product- and star-preserving bijection T1 -> T2."""
    if T1.size != T2.size:
        return False, None
    if T1.size > size_bound:
        raise BoundExceeded(f"size {T1.size} exceeds isomorphism bound {size_bound}")
    n = T1.size

    def signature(S, a):
        return (S.product(a, a) == a, S.star_of(a) == a)

    sig1 = [signature(T1, a) for a in range(n)]
    sig2 = [signature(T2, a) for a in range(n)]
    if sorted(sig1) != sorted(sig2):
        return False, None

    mapping: list[Optional[int]] = [None] * n
    used = [False] * n

    def consistent(d: int) -> bool:
        md = mapping[d]
        sd = T1.star_of(d)
        if mapping[sd] is not None and mapping[sd] != T2.star_of(md):
            return False
        for i in range(d + 1):
            mi = mapping[i]
            p = T1.product(i, d)
            if p <= d and T2.product(mi, md) != mapping[p]:
                return False
            q = T1.product(d, i)
            if q <= d and T2.product(md, mi) != mapping[q]:
                return False
        return True

    def backtrack(d: int) -> bool:
        if d == n:
            return True
        for c in range(n):
            if used[c] or sig2[c] != sig1[d]:
                continue
            mapping[d] = c
            used[c] = True
            if consistent(d) and backtrack(d + 1):
                return True
            mapping[d] = None
            used[c] = False
        return False

    if backtrack(0):
        return True, [m for m in mapping]  # type: ignore[misc]
    return False, None


# ---------------------------------------------------------------------------
# characterization helpers
# ---------------------------------------------------------------------------


def is_completely_simple(S) -> bool:
    """Regular with a single J-class (finite case)."""
    from .green import greens  # deferred: green builds on this module

    if not is_regular(S):
        return False
    gd = greens(S, S.generators)
    return max(gd.j_class) == 0


def _has_projection_in_regular_classes(S, class_array) -> bool:
    classes: dict[int, list[int]] = {}
    for a, c in enumerate(class_array):
        classes.setdefault(c, []).append(a)
    idems = set(idempotents(S))
    projections = {p for p in idems if S.star_of(p) == p}
    for members in classes.values():
        if not any(is_regular_element(S, a)[0] for a in members):
            continue
        if not any(a in projections for a in members):
            return False
    return True


def has_projection_in_every_regular_l_class(S, greens_data=None) -> bool:
    from .green import greens

    gd = greens_data if greens_data is not None else greens(S, S.generators)
    return _has_projection_in_regular_classes(S, gd.l_class)


def has_projection_in_every_regular_r_class(S, greens_data=None) -> bool:
    from .green import greens

    gd = greens_data if greens_data is not None else greens(S, S.generators)
    return _has_projection_in_regular_classes(S, gd.r_class)
