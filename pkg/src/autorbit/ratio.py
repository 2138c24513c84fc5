"""Exact verification that deleting an edge set preserves the symmetry ratio.

For a graph G and a nonempty edge subset E', the quantity
|Aut(G)| / |AO_G(E')| equals |Aut(G - E')| / |AO_{G-E'}(E')|, where the first
orbit treats E' as edges of G and the second treats it as non-edges of
G - E'. The check is done by integer cross-multiplication so no rational
arithmetic sits on the pass/fail path.
"""

from __future__ import annotations

import itertools
import math
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .canon import automorphism_group
from .errors import CapExceededError, EmptyEdgeSetError
from .graphs import ENUMERATION_CAP, EdgeSet, Graph, Pair, edge_set, from_edge_mask
from .orbits import edge_set_orbit
from .perms import PermGroup

AutCache = dict[tuple[int, int], PermGroup]

SUBSET_POLICIES = ("single-edges", "all-subsets", "random")
ALL_SUBSETS_CAP = 5


@dataclass(frozen=True)
class RatioReport:
    """All four counted quantities plus the cross-multiplied comparison."""

    aut_g: int
    ao_g: int
    aut_minus: int
    ao_minus: int
    lhs_cross: int
    rhs_cross: int
    holds: bool
    ratio: Fraction


@dataclass(frozen=True)
class SweepSummary:
    n: int
    policies: tuple[str, ...]
    samples: int
    seed: int | None
    graphs: int
    checks: int
    violations: tuple

    @property
    def holds(self) -> bool:
        return not self.violations


def cached_aut_group(graph: Graph, cache: AutCache | None = None) -> PermGroup:
    """Automorphism group, memoized by (n, edge mask) when a cache is supplied."""
    if cache is None:
        return automorphism_group(graph)
    key = (graph.n, graph.mask)
    group = cache.get(key)
    if group is None:
        group = automorphism_group(graph)
        cache[key] = group
    return group


def verify_ratio_identity(
    graph: Graph,
    deleted: Iterable[Pair],
    cache: AutCache | None = None,
) -> RatioReport:
    """Count both ratios exactly and compare them by cross-multiplication.

    The orbit of the deleted set is taken in the correct ambient graph on
    each side: under Aut(G) with the set as edges, and under Aut(G - E')
    with the set as non-edges.
    """
    dset: EdgeSet = edge_set(deleted, graph.n)
    if not dset:
        raise EmptyEdgeSetError("the deleted edge set must be nonempty")
    group_g = cached_aut_group(graph, cache)
    ao_g = edge_set_orbit(group_g, dset).size
    reduced = graph.delete_edges(dset)
    group_minus = cached_aut_group(reduced, cache)
    ao_minus = edge_set_orbit(group_minus, dset).size
    lhs = group_g.order * ao_minus
    rhs = group_minus.order * ao_g
    return RatioReport(
        aut_g=group_g.order,
        ao_g=ao_g,
        aut_minus=group_minus.order,
        ao_minus=ao_minus,
        lhs_cross=lhs,
        rhs_cross=rhs,
        holds=lhs == rhs,
        ratio=Fraction(group_g.order, ao_g),
    )


def _subset_rng(seed: int | None, n: int, mask: int) -> random.Random:
    # Per-graph derivation keeps results independent of chunking and thread count.
    return random.Random(f"{seed}:{n}:{mask}")


def subsets_for_graph(
    graph: Graph,
    policies: Sequence[str],
    samples: int,
    seed: int | None,
) -> list[EdgeSet]:
    """Deleted-set candidates for one graph under the given policies, deduplicated."""
    edges_sorted = sorted(graph.edges)
    m = len(edges_sorted)
    out: list[EdgeSet] = []
    seen: set[EdgeSet] = set()

    def push(subset: EdgeSet) -> None:
        if subset and subset not in seen:
            seen.add(subset)
            out.append(subset)

    for policy in policies:
        if policy == "single-edges":
            for e in edges_sorted:
                push(frozenset([e]))
        elif policy == "all-subsets":
            for k in range(1, m + 1):
                for combo in itertools.combinations(edges_sorted, k):
                    push(frozenset(combo))
        elif policy == "random":
            if m == 0:
                continue
            rng = _subset_rng(seed, graph.n, graph.mask)
            for _ in range(samples):
                k = rng.randint(1, m)
                push(frozenset(rng.sample(edges_sorted, k)))
        else:
            raise ValueError(f"unknown subset policy {policy!r}")
    return out


def _sweep_range(
    n: int,
    start: int,
    stop: int,
    policies: tuple[str, ...],
    samples: int,
    seed: int | None,
    collect_rows: bool,
) -> tuple[int, int, list, list]:
    cache: AutCache = {}
    graphs = 0
    checks = 0
    violations: list = []
    rows: list = []
    for mask in range(start, stop):
        graph = from_edge_mask(n, mask)
        graphs += 1
        for dset in subsets_for_graph(graph, policies, samples, seed):
            report = verify_ratio_identity(graph, dset, cache)
            checks += 1
            if not report.holds:
                violations.append({"mask": mask, "deleted": sorted(dset)})
            if collect_rows:
                rows.append(
                    (
                        mask,
                        tuple(sorted(dset)),
                        report.aut_g,
                        report.ao_g,
                        report.aut_minus,
                        report.ao_minus,
                        report.holds,
                    )
                )
    return graphs, checks, violations, rows


def sweep_verify(
    n: int,
    policies: Sequence[str] = ("single-edges",),
    samples: int = 20,
    seed: int | None = None,
    threads: int = 1,
    enumeration_cap: int = ENUMERATION_CAP,
    collect_rows: bool = False,
) -> SweepSummary | tuple[SweepSummary, list]:
    """Run the identity over every labeled graph on n vertices.

    Policies combine: each graph is checked against the union of the chosen
    deleted-set families. Any violation would indicate an implementation bug.
    """
    policies = tuple(policies)
    for policy in policies:
        if policy not in SUBSET_POLICIES:
            raise ValueError(f"unknown subset policy {policy!r}")
    if n > enumeration_cap:
        raise CapExceededError(f"n={n} exceeds enumeration cap {enumeration_cap}")
    if "all-subsets" in policies and n > ALL_SUBSETS_CAP:
        raise CapExceededError(f"all-subsets sweeps are capped at n={ALL_SUBSETS_CAP}")
    if "random" in policies and seed is None:
        raise ValueError("random subset policy requires an explicit seed")

    total = 1 << math.comb(n, 2)
    if threads <= 1:
        graphs, checks, violations, rows = _sweep_range(
            n, 0, total, policies, samples, seed, collect_rows
        )
    else:
        chunk = max(1, math.ceil(total / (threads * 4)))
        bounds = [(lo, min(lo + chunk, total)) for lo in range(0, total, chunk)]
        graphs = checks = 0
        violations = []
        rows = []
        with ProcessPoolExecutor(max_workers=threads) as pool:
            futures = [
                pool.submit(_sweep_range, n, lo, hi, policies, samples, seed, collect_rows)
                for lo, hi in bounds
            ]
            for fut in futures:  # submission order == mask order, so merge is stable
                g, c, v, r = fut.result()
                graphs += g
                checks += c
                violations.extend(v)
                rows.extend(r)

    summary = SweepSummary(
        n=n,
        policies=policies,
        samples=samples,
        seed=seed,
        graphs=graphs,
        checks=checks,
        violations=tuple(violations),
    )
    if collect_rows:
        return summary, rows
    return summary
