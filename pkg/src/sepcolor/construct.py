"""Constructions of partite hypergraphs with small independence number.

Two routes build a single partite hypergraph whose independence number is
forced below a*t*q: a greedy cover of the auxiliary instance whose
hyperedges are "the partite r-sets inside X" over all X of size
ceil(a*t*q), and a randomized sampler verified by exact search.  Stacking
q disjoint copies per level then yields families of k pairwise nearly
disjoint hypergraphs, and padding fills members up to requested edge
counts.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field, replace
from fractions import Fraction
from itertools import combinations, product
from typing import Optional, Sequence, Union

from .hypergraphs import (
    BudgetExceeded,
    Edge,
    Hypergraph,
    HypergraphFamily,
    PartitionStructure,
    are_nearly_disjoint,
    edge_mask,
    independence_number,
    max_degree,
    validate,
)

DEFAULT_ENUM_CAP = 1_000_000
DEFAULT_MAX_RETRIES = 20
_PAD_BLOCK_CAP = 5_000_000
_MASK64 = (1 << 64) - 1


class EnumerationCapExceeded(RuntimeError):
    """Greedy-cover would have to enumerate too many candidate sets."""


class RetriesExhausted(RuntimeError):
    """Randomized construction failed verification on every retry."""


class CapacityError(ValueError):
    """Padding target is unreachable (or below the current edge count)."""


def derive_seed(seed: int, *salts: int) -> int:
    """Deterministic 64-bit child seed from a parent seed and salt indices."""
    x = seed & _MASK64
    for s in salts:
        x = (x * 6364136223846793005 + (s + 1) * 1442695040888963407 + 1) & _MASK64
        x ^= x >> 29
    return x


@dataclass(frozen=True)
class ConstructionParams:
    """Parameters shared by the single-level and iterative constructions.

    ``a`` is kept as an exact :class:`~fractions.Fraction` so the
    hypothesis q >= r^2/a and the bound alpha < a*t*q never hit
    floating-point boundaries.  ``q`` defaults to the smallest admissible
    value ceil(r^2/a).
    """

    k: int
    r: int
    a: Fraction
    q: Optional[int] = None
    t: int = 1
    strategy: str = "randomized"
    seed: int = 0
    max_retries: int = DEFAULT_MAX_RETRIES
    enum_cap: int = DEFAULT_ENUM_CAP
    budget: Optional[int] = None

    def __post_init__(self) -> None:
        a = Fraction(self.a)
        object.__setattr__(self, "a", a)
        if not 0 < a < 1:
            raise ValueError(f"a must lie strictly between 0 and 1, got {a}")
        if self.r < 2:
            raise ValueError(f"uniformity r must be at least 2, got {self.r}")
        if self.t < 1:
            raise ValueError(f"part size t must be positive, got {self.t}")
        if self.k < 1:
            raise ValueError(f"k must be positive, got {self.k}")
        if self.strategy not in ("randomized", "greedy-cover"):
            raise ValueError(f"unknown strategy {self.strategy!r}")
        if self.max_retries < 1:
            raise ValueError("max_retries must be at least 1")
        q = self.q
        if q is None:
            q = math.ceil(Fraction(self.r * self.r) / a)
            object.__setattr__(self, "q", q)
        if Fraction(q) < Fraction(self.r * self.r) / a:
            raise ValueError(
                f"hypothesis violation: q={q} < r^2/a = {Fraction(self.r * self.r) / a}"
            )

    @property
    def alpha_limit(self) -> Fraction:
        return self.a * self.t * self.q

    @property
    def edge_limit(self) -> int:
        """floor((1/a)^r * 4*t*q), the edge-count ceiling and sample target."""
        return math.floor((1 / self.a) ** self.r * 4 * self.t * self.q)


# --- greedy transversal ------------------------------------------------------


def _greedy_hitting_set(edge_masks: Sequence[int]) -> list[int]:
    """Greedy cover: repeatedly take the item hitting the most uncovered sets.

    Ties break toward the smallest item id.  Raises on an empty set, which
    nothing can hit.
    """
    uncovered = list(edge_masks)
    if any(m == 0 for m in uncovered):
        raise ValueError("an empty edge has no transversal")
    chosen: list[int] = []
    while uncovered:
        counts: dict[int, int] = {}
        for m in uncovered:
            while m:
                lsb = m & -m
                v = lsb.bit_length() - 1
                counts[v] = counts.get(v, 0) + 1
                m ^= lsb
        best_v = max(counts.items(), key=lambda kv: (kv[1], -kv[0]))[0]
        chosen.append(best_v)
        bit = 1 << best_v
        uncovered = [m for m in uncovered if not m & bit]
    return chosen


def greedy_transversal(h: Hypergraph) -> frozenset[int]:
    """Greedy transversal of h (most-uncovered-edges-first, lowest id on ties).

    The output always meets every edge and its size is at most
    (1 + 1/2 + ... + 1/max_degree) * n / min_edge_size, the classical
    guarantee for greedy covers.
    """
    if not h.edges:
        raise ValueError("hypergraph has no edges; transversal is trivial/undefined")
    return frozenset(_greedy_hitting_set(h.edge_masks))


def greedy_transversal_bound(h: Hypergraph) -> Fraction:
    """The harmonic transversal bound (1 + 1/2 + ... + 1/Delta) * n / u."""
    if not h.edges:
        raise ValueError("bound needs at least one edge")
    u = min(len(e) for e in h.edges)
    if u == 0:
        raise ValueError("an empty edge has no transversal")
    delta = max_degree(h)
    harmonic = sum((Fraction(1, d) for d in range(1, delta + 1)), Fraction(0))
    return harmonic * h.num_vertices / u


# --- single-level construction ----------------------------------------------


@dataclass(frozen=True)
class Lemma1Report:
    strategy: str
    alpha: int
    alpha_limit: Fraction
    edge_count: int
    edge_limit: int
    partite_ok: bool
    retries: int
    notes: tuple[str, ...] = ()

    @property
    def alpha_ok(self) -> bool:
        return Fraction(self.alpha) < self.alpha_limit

    @property
    def edges_ok(self) -> bool:
        return self.edge_count <= self.edge_limit

    @property
    def all_ok(self) -> bool:
        return self.partite_ok and self.alpha_ok and self.edges_ok


def _partite_rsets(q: int, t: int, r: int) -> list[Edge]:
    """All r-sets taking one vertex from each of r distinct contiguous parts."""
    out: list[Edge] = []
    for parts in combinations(range(q), r):
        for offsets in product(range(t), repeat=r):
            out.append(tuple(p * t + o for p, o in zip(parts, offsets)))
    return out


def _construct_greedy_cover(params: ConstructionParams) -> tuple[list[Edge], int]:
    t, q, r = params.t, params.q, params.r
    n = t * q
    x_size = math.ceil(params.alpha_limit)
    num_x = math.comb(n, x_size)
    if num_x > params.enum_cap:
        raise EnumerationCapExceeded(
            f"{num_x} candidate sets of size {x_size} exceed the cap {params.enum_cap}"
        )
    rsets = _partite_rsets(q, t, r)
    # For each vertex, the bitmask of partite r-sets through it: the r-sets
    # inside X are exactly those avoiding the complement of X.
    through = [0] * n
    for i, e in enumerate(rsets):
        for v in e:
            through[v] |= 1 << i
    all_rsets = (1 << len(rsets)) - 1
    cover_edges = []
    for x in combinations(range(n), x_size):
        outside = set(range(n)).difference(x)
        inside = all_rsets
        for v in outside:
            inside &= ~through[v]
        cover_edges.append(inside)
    chosen = _greedy_hitting_set(cover_edges)
    edges = sorted(rsets[i] for i in chosen)
    return edges, 0


def _sample_parts(rng: random.Random, q: int, r: int) -> tuple[int, ...]:
    # Partial Fisher-Yates: r distinct parts, uniform.
    pool = list(range(q))
    for i in range(r):
        j = i + rng.randrange(q - i)
        pool[i], pool[j] = pool[j], pool[i]
    return tuple(sorted(pool[:r]))


def _sample_edges(params: ConstructionParams, seed: int) -> tuple[list[Edge], bool]:
    """Distinct partite r-sets: the whole population when it fits the target,
    otherwise rejection-sampled until `target` distinct edges are drawn."""
    t, q, r = params.t, params.q, params.r
    target = params.edge_limit
    capacity = math.comb(q, r) * t**r
    if capacity <= target:
        return sorted(_partite_rsets(q, t, r)), True
    rng = random.Random(seed)
    seen: set[Edge] = set()
    while len(seen) < target:
        parts = _sample_parts(rng, q, r)
        seen.add(tuple(p * t + rng.randrange(t) for p in parts))
    return sorted(seen), False


def lemma1_construct(
    params: ConstructionParams,
) -> tuple[Hypergraph, PartitionStructure, Lemma1Report]:
    """One partite hypergraph on t*q vertices with alpha < a*t*q.

    Returns the hypergraph, its partition into q contiguous parts of size
    t, and a report with the exactly verified conditions: partiteness,
    alpha < a*t*q (exact branch-and-bound), and the edge-count ceiling
    floor((1/a)^r * 4tq).

    The greedy-cover strategy follows the covering construction literally
    and is gated by ``enum_cap``; the randomized strategy samples partite
    r-sets and retries with fresh seed streams until verification passes.
    """
    t, q = params.t, params.q
    n = t * q
    partition = PartitionStructure.contiguous(q, t)
    notes: list[str] = []
    if t == 1:
        notes.append("t=1: parts are singletons, so every r-set of distinct vertices is partite")

    if params.strategy == "greedy-cover":
        edges, _ = _construct_greedy_cover(params)
        h = Hypergraph(n, tuple(edges), params.r)
        alpha = independence_number(h, budget=params.budget)
        report = Lemma1Report(
            strategy="greedy-cover",
            alpha=alpha,
            alpha_limit=params.alpha_limit,
            edge_count=len(edges),
            edge_limit=params.edge_limit,
            partite_ok=validate(h, partition).ok,
            retries=0,
            notes=tuple(notes),
        )
        if not report.all_ok:
            raise RuntimeError(
                f"greedy cover broke a guaranteed condition: {report}"
            )
        return h, partition, report

    last_alpha = None
    for retry in range(params.max_retries):
        edges, exhaustive = _sample_edges(params, derive_seed(params.seed, retry))
        h = Hypergraph(n, tuple(edges), params.r)
        alpha = independence_number(h, budget=params.budget)
        if Fraction(alpha) < params.alpha_limit:
            if exhaustive:
                notes.append("population of partite r-sets within target: took all of them")
            report = Lemma1Report(
                strategy="randomized",
                alpha=alpha,
                alpha_limit=params.alpha_limit,
                edge_count=len(edges),
                edge_limit=params.edge_limit,
                partite_ok=validate(h, partition).ok,
                retries=retry,
                notes=tuple(notes),
            )
            if not report.partite_ok or not report.edges_ok:
                raise RuntimeError(f"sampler produced an out-of-contract hypergraph: {report}")
            return h, partition, report
        last_alpha = alpha
        if exhaustive:
            break  # deterministic edge set; retrying cannot help
    raise RetriesExhausted(
        f"randomized construction failed alpha < {params.alpha_limit} "
        f"{params.max_retries} times (last alpha={last_alpha})"
    )


# --- iterative family ---------------------------------------------------------


@dataclass
class MemberRecord:
    member: int
    source: str  # "fresh" | "copies"
    num_vertices: int
    num_edges: int
    alpha: Optional[int]
    alpha_limit: Fraction
    alpha_verified: bool
    partite_ok: Optional[bool]
    retries: int = 0

    @property
    def alpha_ok(self) -> Optional[bool]:
        if self.alpha is None:
            return None
        return Fraction(self.alpha) < self.alpha_limit


@dataclass
class LevelRecord:
    level: int
    nearly_disjoint: bool
    members: list[MemberRecord]
    hypergraphs: list[Hypergraph] = field(repr=False, default_factory=list)


@dataclass
class ConstructionTrace:
    params: ConstructionParams
    levels: list[LevelRecord] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    def to_json_dict(self) -> dict:
        p = self.params
        return {
            "params": {
                "k": p.k,
                "r": p.r,
                "a": f"{p.a.numerator}/{p.a.denominator}",
                "q": p.q,
                "t": p.t,
                "strategy": p.strategy,
                "seed": p.seed,
                "max_retries": p.max_retries,
            },
            "levels": [
                {
                    "level": lv.level,
                    "nearly_disjoint": lv.nearly_disjoint,
                    "members": [
                        {
                            "member": m.member,
                            "source": m.source,
                            "num_vertices": m.num_vertices,
                            "num_edges": m.num_edges,
                            "alpha": m.alpha,
                            "alpha_limit": str(m.alpha_limit),
                            "alpha_verified": m.alpha_verified,
                            "alpha_ok": m.alpha_ok,
                            "partite_ok": m.partite_ok,
                            "retries": m.retries,
                        }
                        for m in lv.members
                    ],
                }
                for lv in self.levels
            ],
            "notes": list(self.notes),
        }


def _shift_edges(h: Hypergraph, offset: int) -> tuple[Edge, ...]:
    return tuple(tuple(v + offset for v in e) for e in h.edges)


def _disjoint_copies(h: Hypergraph, copies: int) -> Hypergraph:
    edges: list[Edge] = []
    for c in range(copies):
        edges.extend(_shift_edges(h, c * h.num_vertices))
    return Hypergraph(h.num_vertices * copies, tuple(edges), h.uniformity)


def iterative_family(
    params: ConstructionParams, strict: bool = True
) -> tuple[HypergraphFamily, ConstructionTrace]:
    """k pairwise nearly disjoint r-uniform hypergraphs on q^k shared vertices.

    Level 1 is a fresh single-level construction on q vertices; level i
    keeps q disjoint copies of each previous member and adds one fresh
    member partite across the q copy blocks (part size q^(i-1)).  Every
    member of the final level has alpha < a*q^k.

    All four construction properties (partiteness of the fresh member,
    pairwise near-disjointness, vertex counts, alpha bounds) are verified
    per level and recorded in the trace.  Independence is verified exactly
    while the node budget lasts; past it, the member is flagged unverified
    and, in strict mode, :class:`~sepcolor.hypergraphs.BudgetExceeded`
    propagates.
    """
    if params.k < 2:
        raise ValueError(f"iterative construction needs k >= 2, got {params.k}")
    if params.t != 1:
        raise ValueError("iterative construction starts from singleton parts (t=1)")
    q = params.q
    trace = ConstructionTrace(params=params)

    current: list[Hypergraph] = []
    for level in range(1, params.k + 1):
        t_level = q ** (level - 1)
        fresh_params = replace(
            params, t=t_level, seed=derive_seed(params.seed, level)
        )
        hypergraphs: list[Hypergraph] = [_disjoint_copies(h, q) for h in current]
        fresh, fresh_partition, fresh_report = lemma1_construct(fresh_params)
        hypergraphs.append(fresh)
        for note in fresh_report.notes:
            tagged = f"level {level}: {note}"
            if tagged not in trace.notes:
                trace.notes.append(tagged)

        alpha_limit = params.a * q**level
        records: list[MemberRecord] = []
        for j, h in enumerate(hypergraphs):
            if h.num_vertices != q**level:
                raise RuntimeError(
                    f"level {level} member {j} has {h.num_vertices} vertices, "
                    f"expected {q ** level}"
                )
            is_fresh = j == len(hypergraphs) - 1
            alpha: Optional[int]
            verified = True
            if is_fresh:
                alpha = fresh_report.alpha
            else:
                try:
                    alpha = independence_number(h, budget=params.budget)
                except BudgetExceeded:
                    if strict:
                        raise
                    alpha = None
                    verified = False
            if alpha is not None and not Fraction(alpha) < alpha_limit:
                raise RuntimeError(
                    f"level {level} member {j} has alpha={alpha}, breaking the "
                    f"bound {alpha_limit}; disjoint copies cannot do this"
                )
            records.append(
                MemberRecord(
                    member=j,
                    source="fresh" if is_fresh else "copies",
                    num_vertices=h.num_vertices,
                    num_edges=len(h.edges),
                    alpha=alpha,
                    alpha_limit=alpha_limit,
                    alpha_verified=verified,
                    partite_ok=fresh_report.partite_ok if is_fresh else None,
                    retries=fresh_report.retries if is_fresh else 0,
                )
            )

        level_family = HypergraphFamily(q**level, tuple(hypergraphs))
        nd = are_nearly_disjoint(level_family)
        if not nd.ok:
            raise RuntimeError(
                f"level {level} members {nd.witness_members} share >= 2 vertices "
                f"in edges {nd.witness}; the copy/partite layout forbids this"
            )
        trace.levels.append(
            LevelRecord(level, nd.ok, records, hypergraphs=list(hypergraphs))
        )
        current = hypergraphs

    partition = PartitionStructure.contiguous(q, q ** (params.k - 1))
    family = HypergraphFamily(q**params.k, tuple(current), partition)
    return family, trace


# --- padding ------------------------------------------------------------------


@dataclass(frozen=True)
class MemberPadding:
    member: int
    target: int
    before: int
    simple_capacity: int
    simple_added: int
    duplicates_added: int

    @property
    def simple_shortfall(self) -> bool:
        return self.simple_capacity < self.target


@dataclass(frozen=True)
class PaddingReport:
    q: int
    members: tuple[MemberPadding, ...]


def _integer_kth_root(n: int, k: int) -> Optional[int]:
    if n < 1:
        return None
    root = round(n ** (1.0 / k))  # float guess, then search the neighborhood
    for q in range(max(1, root - 2), root + 3):
        if q**k == n:
            return q
    return None


def _simple_candidates_block(base: int, q: int, sub: int, r: int) -> list[Edge]:
    """All partite r-sets inside one level block, sorted lexicographically."""
    out = [
        tuple(base + p * sub + o for p, o in zip(parts, offsets))
        for parts in combinations(range(q), r)
        for offsets in product(range(sub), repeat=r)
    ]
    out.sort()
    return out


def pad_family(
    family: HypergraphFamily,
    targets: Sequence[int],
    allow_duplicates: bool,
    q: Optional[int] = None,
) -> tuple[HypergraphFamily, PaddingReport]:
    """Grow each member of an iteratively built family to an exact edge count.

    Member i (0-based, the level-(i+1) member) first gains new simple
    partite edges respecting its level structure, smallest-first in
    lexicographic order, up to the structural capacity
    C(q,r) * q^(i*r + k-1-i).  If the target is still not met: duplicate
    existing edges round-robin when ``allow_duplicates``, else raise
    :class:`CapacityError`.  Near-disjointness is re-verified afterwards;
    a failure there is an internal defect and raises RuntimeError.
    """
    k = family.k
    r = family.uniformity
    if len(targets) != k:
        raise ValueError(f"need {k} targets, got {len(targets)}")
    if q is None:
        q = _integer_kth_root(family.num_vertices, k)
        if q is None:
            raise ValueError(
                f"{family.num_vertices} vertices is not a perfect {k}-th power; "
                "pass q explicitly for families with level structure"
            )
    paddings: list[MemberPadding] = []
    new_members: list[Hypergraph] = []
    for i, (h, target) in enumerate(zip(family.members, targets)):
        before = len(h.edges)
        if target < before:
            raise CapacityError(
                f"member {i}: target {target} is below the current edge count {before}"
            )
        level = i + 1
        sub = q ** (level - 1)  # within-block part size
        block = q**level
        num_blocks = q ** (k - level)
        capacity = math.comb(q, r) * q ** ((level - 1) * r + (k - level))
        existing = set(h.edges)
        added: list[Edge] = []
        need = target - before
        if need > 0:
            per_block = math.comb(q, r) * sub**r
            if per_block > _PAD_BLOCK_CAP:
                raise EnumerationCapExceeded(
                    f"member {i}: {per_block} candidate edges per block is too many "
                    "to enumerate"
                )
            for b in range(num_blocks):
                if len(added) >= need:
                    break
                for e in _simple_candidates_block(b * block, q, sub, r):
                    if len(added) >= need:
                        break
                    if e not in existing:
                        existing.add(e)
                        added.append(e)
        edges = list(h.edges) + added
        duplicates = 0
        if len(edges) < target:
            if not allow_duplicates:
                raise CapacityError(
                    f"member {i}: simple capacity {capacity} cannot reach target "
                    f"{target} and duplicates are disallowed"
                )
            base_cycle = list(edges)
            j = 0
            while len(edges) < target:
                edges.append(base_cycle[j % len(base_cycle)])
                j += 1
                duplicates += 1
        paddings.append(
            MemberPadding(
                member=i,
                target=target,
                before=before,
                simple_capacity=capacity,
                simple_added=len(added),
                duplicates_added=duplicates,
            )
        )
        new_members.append(Hypergraph(h.num_vertices, tuple(edges), r))
    padded = HypergraphFamily(family.num_vertices, tuple(new_members), family.partition)
    nd = are_nearly_disjoint(padded)
    if not nd.ok:
        raise RuntimeError(
            f"padding broke near-disjointness between members {nd.witness_members} "
            f"(edges {nd.witness}); this is a defect in the candidate enumeration"
        )
    return padded, PaddingReport(q=q, members=tuple(paddings))


def corollary_targets(params: ConstructionParams) -> list[int]:
    """The uniform edge count floor(4*q^k*(1/a)^r) every member can reach."""
    value = math.floor(Fraction(4 * params.q**params.k) * (1 / params.a) ** params.r)
    return [value] * params.k
