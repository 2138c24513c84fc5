"""Automorphism search, canonical certificates, and isomorphism testing.

The engine is classic individualization-refinement: refine an ordered vertex
partition to its coarsest equitable refinement, pick the first smallest
non-singleton cell, individualize each of its vertices in turn, and recurse.
Discrete partitions (leaves) induce a relabeling of the graph; the
certificate is the lexicographically smallest relabeled adjacency bitstring
over all leaves, and automorphism generators are harvested whenever two
leaves produce identical bitstrings. Already-discovered automorphisms that
fix the current branching sequence pointwise are used to skip equivalent
siblings. Correctness before speed: the whole engine is validated against
the brute-force definition on every small graph.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .graphs import Graph
from .perms import Perm, PermGroup, identity, perm_group, reduce_generators

OrderedPartition = list[list[int]]


def unit_partition(n: int) -> OrderedPartition:
    return [list(range(n))] if n else []


def _validate_partition(n: int, cells: OrderedPartition) -> OrderedPartition:
    seen: set[int] = set()
    out = []
    for cell in cells:
        cl = list(cell)
        out.append(cl)
        seen.update(cl)
    if len(seen) != n or seen != set(range(n)) or sum(len(c) for c in out) != n:
        raise ValueError("cells must partition 0..n-1 without repeats")
    return out


def _refine(adjacency: tuple[int, ...], cells: OrderedPartition) -> OrderedPartition:
    """Coarsest equitable refinement of an ordered partition.

    Cells split by the vector of neighbor counts into every current cell;
    fragments are ordered by that signature, so the result is deterministic.
    """
    cells = [sorted(c) for c in cells]
    while True:
        masks = [sum(1 << v for v in c) for c in cells]
        new_cells: OrderedPartition = []
        changed = False
        for cell in cells:
            if len(cell) == 1:
                new_cells.append(cell)
                continue
            groups: dict[tuple[int, ...], list[int]] = {}
            for v in cell:
                row = adjacency[v]
                sig = tuple((row & m).bit_count() for m in masks)
                groups.setdefault(sig, []).append(v)
            if len(groups) > 1:
                changed = True
            for sig in sorted(groups):
                new_cells.append(groups[sig])
        if not changed:
            return new_cells
        cells = new_cells


def color_refine(graph: Graph, partition: OrderedPartition | None = None) -> OrderedPartition:
    """Equitable refinement of ``partition`` (the unit partition by default)."""
    cells = unit_partition(graph.n) if partition is None else _validate_partition(graph.n, partition)
    return _refine(graph.adjacency, cells)


@dataclass
class _SearchOutcome:
    generators: list[Perm] = field(default_factory=list)
    best_bits: int = 0
    leaves: int = 0


def _orbit_contains(target: int, seeds: list[int], gens: list[Perm]) -> bool:
    seen = set(seeds)
    frontier = list(seeds)
    while frontier:
        new = []
        for v in frontier:
            for g in gens:
                w = g[v]
                if w == target:
                    return True
                if w not in seen:
                    seen.add(w)
                    new.append(w)
        frontier = new
    return False


def _search(graph: Graph) -> _SearchOutcome:
    n = graph.n
    adjacency = graph.adjacency
    ident = identity(n)
    outcome = _SearchOutcome()
    gens = outcome.generators
    gen_seen: set[Perm] = set()
    first_bits: int | None = None
    first_lab: Perm = ident
    best_bits = 0
    best_lab: Perm = ident

    def leaf_bits(lab: Perm) -> int:
        bits = 0
        for i in range(n):
            row = adjacency[lab[i]]
            for j in range(i + 1, n):
                bits = (bits << 1) | ((row >> lab[j]) & 1)
        return bits

    def harvest(lab_a: Perm, lab_b: Perm) -> None:
        g = [0] * n
        for i in range(n):
            g[lab_a[i]] = lab_b[i]
        gt = tuple(g)
        if gt != ident and gt not in gen_seen:
            gen_seen.add(gt)
            gens.append(gt)

    def recurse(cells: OrderedPartition, base: tuple[int, ...]) -> None:
        nonlocal first_bits, first_lab, best_bits, best_lab
        cells = _refine(adjacency, cells)
        target = -1
        target_size = n + 1
        for i, cell in enumerate(cells):
            size = len(cell)
            if 1 < size < target_size:
                target_size = size
                target = i
        if target < 0:
            lab = tuple(cell[0] for cell in cells)
            bits = leaf_bits(lab)
            outcome.leaves += 1
            if first_bits is None:
                first_bits = bits
                first_lab = lab
                best_bits = bits
                best_lab = lab
                return
            if bits == first_bits:
                harvest(first_lab, lab)
            if bits < best_bits:
                best_bits = bits
                best_lab = lab
            elif bits == best_bits and bits != first_bits:
                harvest(best_lab, lab)
            return
        head = cells[:target]
        cell = cells[target]
        tail = cells[target + 1:]
        tried: list[int] = []
        for v in cell:
            if tried:
                fixers = [g for g in gens if all(g[b] == b for b in base)]
                if fixers and _orbit_contains(v, tried, fixers):
                    continue
            rest = [w for w in cell if w != v]
            recurse(head + [[v], rest] + tail, base + (v,))
            tried.append(v)

    recurse(unit_partition(n), ())
    outcome.best_bits = best_bits
    return outcome


def automorphism_group(graph: Graph) -> PermGroup:
    """Automorphism group computed by individualization-refinement search.

    The harvested generators are reduced to a small generating subset so
    downstream orbit walks pay for few generators.
    """
    outcome = _search(graph)
    return perm_group(reduce_generators(outcome.generators, graph.n), degree=graph.n)


def _pack_bits(bits: int, nbits: int) -> bytes:
    nbytes = (nbits + 7) // 8
    if nbytes == 0:
        return b""
    return (bits << (nbytes * 8 - nbits)).to_bytes(nbytes, "big")


def canonical_form(graph: Graph) -> bytes:
    """Relabeling-invariant certificate; two graphs share it iff isomorphic.

    Layout: 4 bytes of vertex count, then the canonically relabeled upper
    triangle (row-major) packed big-endian.
    """
    outcome = _search(graph)
    return graph.n.to_bytes(4, "big") + _pack_bits(outcome.best_bits, math.comb(graph.n, 2))


def is_isomorphic(g: Graph, h: Graph) -> bool:
    if g.n != h.n or g.m != h.m:
        return False
    return canonical_form(g) == canonical_form(h)
