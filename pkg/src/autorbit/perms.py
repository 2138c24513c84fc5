"""Vertex permutations, their actions on graphs and edge sets, and permutation groups.

A permutation of degree n is a tuple ``images`` of length n where
``images[i]`` is the image of vertex i. Groups are carried as generator
lists; the full element set is realized on demand by breadth-first closure
under composition (no strong generating sets at this scale).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator

from .errors import CapExceededError, DegreeMismatchError
from .graphs import EdgeSet, Graph, Pair, pair_index

Perm = tuple[int, ...]

ELEMENT_CAP = 10_000_000
BRUTE_FORCE_CAP = 8


def identity(n: int) -> Perm:
    return tuple(range(n))


def make_perm(images: Iterable[int]) -> Perm:
    """Validate and freeze a permutation given by its image array."""
    perm = tuple(images)
    if sorted(perm) != list(range(len(perm))):
        raise ValueError(f"{perm} is not a bijection of 0..{len(perm) - 1}")
    return perm


def compose(f: Perm, g: Perm) -> Perm:
    """Composite permutation applying g first: (f o g)(x) = f(g(x))."""
    if len(f) != len(g):
        raise DegreeMismatchError(f"degrees {len(f)} and {len(g)} differ")
    return tuple(f[x] for x in g)


def inverse(f: Perm) -> Perm:
    inv = [0] * len(f)
    for i, fi in enumerate(f):
        inv[fi] = i
    return tuple(inv)


def apply_pair(f: Perm, pair: Pair) -> Pair:
    """Image of a vertex pair, re-normalized to (min, max)."""
    u, v = pair
    if not (0 <= u < len(f) and 0 <= v < len(f)):
        raise DegreeMismatchError(f"pair {pair} out of range for degree {len(f)}")
    fu, fv = f[u], f[v]
    return (fu, fv) if fu < fv else (fv, fu)


def apply_edge_set(f: Perm, pairs: Iterable[Pair]) -> EdgeSet:
    return frozenset(apply_pair(f, p) for p in pairs)


def apply_graph(f: Perm, graph: Graph) -> Graph:
    """Relabel a graph by f; the image has edge (f(u), f(v)) for each edge (u, v)."""
    if len(f) != graph.n:
        raise DegreeMismatchError(f"degree {len(f)} does not match n={graph.n}")
    return Graph(graph.n, apply_edge_set(f, graph.edges))


def is_automorphism(f: Perm, graph: Graph) -> bool:
    """True iff relabeling by f maps the edge set onto itself."""
    if len(f) != graph.n:
        raise DegreeMismatchError(f"degree {len(f)} does not match n={graph.n}")
    adjacency = graph.adjacency
    return all((adjacency[f[u]] >> f[v]) & 1 for u, v in graph.edges)


def _closure(degree: int, generators: tuple[Perm, ...], cap: int) -> tuple[Perm, ...]:
    """BFS closure of the generators starting from the identity.

    Enumeration order is deterministic for a fixed generator order.
    """
    ident = identity(degree)
    seen = {ident}
    ordered = [ident]
    frontier = [ident]
    while frontier:
        new = []
        for h in frontier:
            for g in generators:
                c = tuple(g[x] for x in h)
                if c not in seen:
                    if len(seen) >= cap:
                        raise CapExceededError(f"group enumeration exceeds cap {cap}")
                    seen.add(c)
                    ordered.append(c)
                    new.append(c)
        frontier = new
    return tuple(ordered)


@dataclass(frozen=True)
class PermGroup:
    """Permutation group given by degree and a sorted generator tuple."""

    degree: int
    generators: tuple[Perm, ...]

    @cached_property
    def elements(self) -> tuple[Perm, ...]:
        return _closure(self.degree, self.generators, ELEMENT_CAP)

    @property
    def order(self) -> int:
        return len(self.elements)

    @cached_property
    def pair_action(self) -> tuple[tuple[int, ...], ...]:
        """Induced generator permutations of pair indices (orbit fast path)."""
        return tuple(pair_action_table(g) for g in self.generators)

    @cached_property
    def pair_action_bytes(self) -> tuple[tuple[tuple[int, ...], ...], ...]:
        """Per-generator byte-translation tables over pair-index bitmasks.

        Entry j of a generator's table maps any byte of mask bits 8j..8j+7 to
        the OR of their image bits, so applying the generator to a whole mask
        is one lookup per byte. Orbits of large edge sets walk with these.
        """
        npairs = self.degree * (self.degree - 1) // 2
        nbytes = (npairs + 7) // 8
        tables = []
        for table in self.pair_action:
            per_gen = []
            for j in range(nbytes):
                base = 8 * j
                width = min(8, npairs - base)
                entries = [0] * 256
                for b in range(1, 256):
                    low = b & -b
                    i = low.bit_length() - 1
                    rest = entries[b ^ low]
                    entries[b] = rest | (1 << table[base + i]) if i < width else rest
                per_gen.append(tuple(entries))
            tables.append(tuple(per_gen))
        return tuple(tables)

    def __iter__(self) -> Iterator[Perm]:
        return iter(self.elements)


def pair_action_table(f: Perm) -> tuple[int, ...]:
    """Permutation of normalized-pair indices induced by a vertex permutation."""
    n = len(f)
    table = [0] * (n * (n - 1) // 2)
    idx = 0
    for v in range(n):
        fv = f[v]
        for u in range(v):
            table[idx] = pair_index(f[u], fv)
            idx += 1
    return tuple(table)


def reduce_generators(generators: Iterable[Perm], degree: int) -> tuple[Perm, ...]:
    """Greedy generating subset with the same closure, scanned in sorted order."""
    out: list[Perm] = []
    known = {identity(degree)}
    for g in sorted(set(generators)):
        if g not in known:
            out.append(g)
            known = set(_closure(degree, tuple(out), ELEMENT_CAP))
    return tuple(out)


def perm_group(generators: Iterable[Iterable[int]], degree: int | None = None) -> PermGroup:
    """Normalize generators (validate, dedupe, drop identity, sort) into a group."""
    gens = [make_perm(g) for g in generators]
    if degree is None:
        if not gens:
            raise DegreeMismatchError("degree is required for an empty generator list")
        degree = len(gens[0])
    for g in gens:
        if len(g) != degree:
            raise DegreeMismatchError(f"generator degree {len(g)} != {degree}")
    ident = identity(degree)
    return PermGroup(degree, tuple(sorted(set(gens) - {ident})))


def group_order(
    generators: Iterable[Iterable[int]],
    degree: int | None = None,
    cap: int = ELEMENT_CAP,
) -> int:
    """Order of the group generated by ``generators`` via closure enumeration."""
    gens = [make_perm(g) for g in generators]
    if not gens:
        return 1
    group = perm_group(gens, degree)
    return len(_closure(group.degree, group.generators, cap))


def enumerate_elements(group: PermGroup) -> Iterator[Perm]:
    """Stream the group's elements in deterministic closure order."""
    return iter(group.elements)


def brute_force_aut(graph: Graph, cap: int = BRUTE_FORCE_CAP) -> PermGroup:
    """Automorphism group by filtering all n! bijections against the definition.

    The returned group's element list is exactly the filtered set (in
    lexicographic order); the generators are a reduced subset of it.
    """
    n = graph.n
    if n > cap:
        raise CapExceededError(f"n={n} exceeds brute-force cap {cap}")
    adjacency = graph.adjacency
    edges = tuple(graph.edges)
    auts = [
        p
        for p in itertools.permutations(range(n))
        if all((adjacency[p[u]] >> p[v]) & 1 for u, v in edges)
    ]
    group = perm_group(reduce_generators(auts, n), degree=n)
    group.__dict__["elements"] = tuple(auts)
    return group
