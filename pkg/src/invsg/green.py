"""Green's relations from generator-labelled Cayley graphs.

R-classes are the strongly connected components of the right Cayley graph
(edges a -> a*g), L-classes of the left graph, J-classes of the union
graph.  H and D are derived and D = J is asserted (a theorem for finite
semigroups; a mismatch means an implementation bug).  The SCC routine is
iterative: element counts can reach 1e5 and recursion would blow the stack.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

from .errors import BoundExceeded, GeneratorsDoNotGenerate, InvsgError, NotSameDClass

ALL_ELEMENT_GENERATOR_BOUND = 2000


def _sccs(n: int, neighbors_of: Callable[[int], list[int]]) -> list[int]:
    """Tarjan, iteratively; components renumbered by least member id."""
    indices = [-1] * n
    low = [0] * n
    on_stack = [False] * n
    comp = [-1] * n
    stack: list[int] = []
    work: list[list] = []
    counter = 0
    n_comps = 0

    for root in range(n):
        if indices[root] != -1:
            continue
        indices[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack[root] = True
        work.append([root, iter(neighbors_of(root))])
        while work:
            frame = work[-1]
            v, it = frame
            descended = False
            for w in it:
                if indices[w] == -1:
                    indices[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack[w] = True
                    work.append([w, iter(neighbors_of(w))])
                    descended = True
                    break
                if on_stack[w] and indices[w] < low[v]:
                    low[v] = indices[w]
            if descended:
                continue
            work.pop()
            if work and low[v] < low[work[-1][0]]:
                low[work[-1][0]] = low[v]
            if low[v] == indices[v]:
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp[w] = n_comps
                    if w == v:
                        break
                n_comps += 1

    remap: dict[int, int] = {}
    for a in range(n):
        if comp[a] not in remap:
            remap[comp[a]] = len(remap)
    return [remap[c] for c in comp]


def _normalize(classes: Sequence[int]) -> list[int]:
    remap: dict[int, int] = {}
    out = []
    for c in classes:
        if c not in remap:
            remap[c] = len(remap)
        out.append(remap[c])
    return out


@dataclass
class GreensData:
    r_class: list[int]
    l_class: list[int]
    j_class: list[int]
    h_class: list[int]
    d_class: list[int]
    j_order: list[tuple[int, int]]  # covering pairs (upper, lower) of <=_J
    generators: list[int]

    def classes(self, kind: str) -> list[list[int]]:
        arr = getattr(self, f"{kind}_class")
        out: list[list[int]] = [[] for _ in range(max(arr) + 1)]
        for a, c in enumerate(arr):
            out[c].append(a)
        return out


def _resolve_generators(S, generators) -> list[int]:
    gens = generators if generators is not None else S.generators
    if gens is None:
        if S.size > ALL_ELEMENT_GENERATOR_BOUND:
            raise BoundExceeded(
                f"no generators given and {S.size} elements is too many to use "
                f"them all (bound {ALL_ELEMENT_GENERATOR_BOUND})")
        gens = list(range(S.size))
    full = []
    seen = set()
    for g in list(gens) + [S.star_of(g) for g in gens]:
        if g not in seen:
            seen.add(g)
            full.append(g)
    return full


def _check_generates(S, gens: list[int]) -> None:
    if len(gens) == S.size:
        return
    seen = set(gens)
    queue = list(gens)
    prod = S.product
    while queue:
        x = queue.pop()
        for g in gens:
            p = prod(x, g)
            if p not in seen:
                seen.add(p)
                queue.append(p)
    if len(seen) != S.size:
        raise GeneratorsDoNotGenerate(
            f"generators reach {len(seen)} of {S.size} elements")


def greens(S, generators=None) -> GreensData:
    """Compute all five Green's relations and the J-order covering DAG."""
    gens = _resolve_generators(S, generators)
    _check_generates(S, gens)
    prod = S.product
    n = S.size

    def right(a):
        return [prod(a, g) for g in gens]

    def left(a):
        return [prod(g, a) for g in gens]

    def both(a):
        return [prod(a, g) for g in gens] + [prod(g, a) for g in gens]

    r = _sccs(n, right)
    l = _sccs(n, left)
    j = _sccs(n, both)

    h_map: dict[tuple[int, int], int] = {}
    h = []
    for a in range(n):
        key = (r[a], l[a])
        if key not in h_map:
            h_map[key] = len(h_map)
        h.append(h_map[key])

    # D = R v L via union-find, independently of J
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x, y):
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[max(rx, ry)] = min(rx, ry)

    firsts: dict[int, int] = {}
    for a in range(n):
        if r[a] in firsts:
            union(firsts[r[a]], a)
        else:
            firsts[r[a]] = a
    firsts = {}
    for a in range(n):
        if l[a] in firsts:
            union(firsts[l[a]], a)
        else:
            firsts[l[a]] = a
    d = _normalize([find(a) for a in range(n)])
    if d != j:
        raise InvsgError("D != J on a finite semigroup: implementation bug")

    # condensation edges, then transitive reduction to covering pairs
    n_j = max(j) + 1
    below: list[set[int]] = [set() for _ in range(n_j)]
    for a in range(n):
        ja = j[a]
        for p in both(a):
            if j[p] != ja:
                below[ja].add(j[p])

    # reachability sets in topological order (iterative: chains can be long)
    indeg = [0] * n_j
    for c in range(n_j):
        for lower in below[c]:
            indeg[lower] += 1
    topo: list[int] = [c for c in range(n_j) if indeg[c] == 0]
    head = 0
    while head < len(topo):
        for lower in sorted(below[topo[head]]):
            indeg[lower] -= 1
            if indeg[lower] == 0:
                topo.append(lower)
        head += 1
    reach: list[set[int]] = [set() for _ in range(n_j)]
    for c in reversed(topo):
        acc = set(below[c])
        for nxt in below[c]:
            acc |= reach[nxt]
        reach[c] = acc

    order: list[tuple[int, int]] = []
    for c in range(n_j):
        for lower in sorted(below[c]):
            if any(lower in reach[mid] for mid in below[c] if mid != lower):
                continue
            order.append((c, lower))

    return GreensData(r, l, j, h, d, order, gens)


# ---------------------------------------------------------------------------
# principal ideals and the J-order, without full Green's data
# ---------------------------------------------------------------------------


def principal_ideal(S, generators, a: int, stop_at: Optional[int] = None):
    """BFS closure of {a} under one-sided generator multiplication = S^1 a S^1.

    With stop_at set, returns early (None) as soon as that element appears.
    """
    gens = _resolve_generators(S, generators)
    prod = S.product
    seen = {a}
    if a == stop_at:
        return None
    queue = [a]
    while queue:
        x = queue.pop()
        for g in gens:
            for p in (prod(x, g), prod(g, x)):
                if p not in seen:
                    if p == stop_at:
                        return None
                    seen.add(p)
                    queue.append(p)
    return seen


def j_leq(S, generators, a: int, b: int) -> bool:
    """a <=_J b, by targeted BFS from b."""
    return principal_ideal(S, generators, b, stop_at=a) is None


def strictly_above_j(S, generators, a: int, b: int) -> bool:
    """a >_J b: b lies in the ideal of a but not conversely."""
    return j_leq(S, generators, b, a) and not j_leq(S, generators, a, b)


# ---------------------------------------------------------------------------
# eggbox views
# ---------------------------------------------------------------------------


@dataclass
class EggboxView:
    d_index: int
    row_r_classes: list[int]
    col_l_classes: list[int]
    cells: dict[tuple[int, int], list[int]]  # (row, col) -> element ids
    idempotent_ids: set[int]
    labels: list[str] = field(default_factory=list)
    star_map: Optional[list[int]] = None

    def render(self, annotate_star: bool = False) -> str:
        texts = {}
        for key, members in self.cells.items():
            inner = ",".join(self.labels[a] for a in members)
            mark = "e:" if any(a in self.idempotent_ids for a in members) else ""
            texts[key] = f"[{mark}{inner}]"
        widths = [max((len(texts.get((ri, ci), "[]"))
                       for ri in range(len(self.row_r_classes))), default=2)
                  for ci in range(len(self.col_l_classes))]
        lines = [f"D-class {self.d_index}"]
        for ri in range(len(self.row_r_classes)):
            row = [texts.get((ri, ci), "[]").ljust(widths[ci])
                   for ci in range(len(self.col_l_classes))]
            lines.append(" ".join(row).rstrip())
        if annotate_star and self.star_map is not None:
            members = sorted(m for cell in self.cells.values() for m in cell)
            pairs = ", ".join(
                f"{self.labels[a]}->{self.labels[self.star_map[a]]}" for a in members)
            lines.append(f"star: {pairs}")
        return "\n".join(lines)


def eggbox(S, greens_data: GreensData, element: int) -> EggboxView:
    """Grid of H-classes for the D-class of `element`.

    Rows are R-classes ordered by least member id, columns L-classes
    likewise; cells containing an idempotent are flagged in the rendering.
    """
    d = greens_data.d_class[element]
    members = [a for a in range(S.size) if greens_data.d_class[a] == d]
    r_classes = sorted({greens_data.r_class[a] for a in members},
                       key=lambda c: min(a for a in members
                                         if greens_data.r_class[a] == c))
    l_classes = sorted({greens_data.l_class[a] for a in members},
                       key=lambda c: min(a for a in members
                                         if greens_data.l_class[a] == c))
    cells: dict[tuple[int, int], list[int]] = {}
    for a in members:
        key = (r_classes.index(greens_data.r_class[a]),
               l_classes.index(greens_data.l_class[a]))
        cells.setdefault(key, []).append(a)
    for key in cells:
        cells[key].sort()
    idems = {a for a in members if S.product(a, a) == a}
    labels = [S.element_label(a) for a in range(S.size)]
    star_map = [S.star_of(a) for a in range(S.size)]
    return EggboxView(d, r_classes, l_classes, cells, idems, labels, star_map)


# ---------------------------------------------------------------------------
# theorem spot-checks (stability, Miller-Clifford)
# ---------------------------------------------------------------------------


def stability_check(S, greens_data: GreensData, sample_pairs=None
                    ) -> tuple[bool, Optional[tuple[int, int]]]:
    """a J ab implies a R ab, and b J ab implies b L ab, over the sample.

    A False return would indicate a bug: stability is a theorem for finite
    semigroups.  With no sample given, all pairs are checked.
    """
    if sample_pairs is None:
        sample_pairs = ((a, b) for a in range(S.size) for b in range(S.size))
    j, r, l = greens_data.j_class, greens_data.r_class, greens_data.l_class
    prod = S.product
    for a, b in sample_pairs:
        ab = prod(a, b)
        if j[a] == j[ab] and r[a] != r[ab]:
            return False, (a, b)
        if j[b] == j[ab] and l[b] != l[ab]:
            return False, (a, b)
    return True, None


def miller_clifford_check(S, greens_data: GreensData, a: int, b: int) -> bool:
    """ab in R_a /\\ L_b  <=>  L_a /\\ R_b contains an idempotent."""
    if greens_data.d_class[a] != greens_data.d_class[b]:
        raise NotSameDClass(f"{a} and {b} lie in different D-classes")
    r, l = greens_data.r_class, greens_data.l_class
    ab = S.product(a, b)
    lhs = r[ab] == r[a] and l[ab] == l[b]
    rhs = any(S.product(x, x) == x
              for x in range(S.size) if l[x] == l[a] and r[x] == r[b])
    return lhs == rhs
