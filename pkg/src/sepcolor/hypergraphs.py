"""Uniform hypergraphs with exact independence and transversal machinery.

Edges are multisets of ascending vertex tuples on vertices 0..n-1.  Every
predicate here is exact; the independence search is branch-and-bound with a
hard node budget, and running out of budget raises instead of degrading to
a heuristic answer.

All values are immutable after construction and safe to share across
threads; the searches are single-threaded and fully deterministic (branch
choices tie-break on the smallest vertex id), so repeated calls return
identical numbers and witnesses.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, NamedTuple, Optional

DEFAULT_NODE_BUDGET = 20_000_000

Edge = tuple[int, ...]


class BudgetExceeded(RuntimeError):
    """An exact search ran past its node budget; the answer is unknown."""


def edge_mask(edge: Iterable[int]) -> int:
    m = 0
    for v in edge:
        m |= 1 << v
    return m


def mask_vertices(mask: int) -> tuple[int, ...]:
    out = []
    while mask:
        lsb = mask & -mask
        out.append(lsb.bit_length() - 1)
        mask ^= lsb
    return tuple(out)


@dataclass(frozen=True)
class Hypergraph:
    """An r-uniform hypergraph.

    ``edges`` has multiset semantics: duplicates are allowed and preserved
    in order.  Each edge is canonically an ascending tuple of distinct
    vertex ids; :func:`validate` reports violations of that form as data
    rather than raising, so ill-formed values are representable.
    """

    num_vertices: int
    edges: tuple[Edge, ...]
    uniformity: int

    @classmethod
    def from_edges(
        cls,
        num_vertices: int,
        edges: Iterable[Iterable[int]],
        uniformity: Optional[int] = None,
    ) -> "Hypergraph":
        """Build a hypergraph, sorting each edge into canonical form."""
        canon = tuple(tuple(sorted(e)) for e in edges)
        if uniformity is None:
            if not canon:
                raise ValueError("uniformity is required for an empty edge set")
            uniformity = len(canon[0])
        return cls(num_vertices, canon, uniformity)

    @cached_property
    def edge_masks(self) -> tuple[int, ...]:
        return tuple(edge_mask(e) for e in self.edges)

    @cached_property
    def distinct_edges(self) -> tuple[Edge, ...]:
        """Simple-edge view: duplicates collapsed, first-occurrence order."""
        seen: set[Edge] = set()
        out = []
        for e in self.edges:
            if e not in seen:
                seen.add(e)
                out.append(e)
        return tuple(out)

    def with_extra_edges(self, extra: Iterable[Iterable[int]]) -> "Hypergraph":
        new = tuple(tuple(sorted(e)) for e in extra)
        return Hypergraph(self.num_vertices, self.edges + new, self.uniformity)


@dataclass(frozen=True)
class PartitionStructure:
    """A decomposition of [0, t*q) into q parts of size t each."""

    num_parts: int
    part_size: int
    assignment: tuple[int, ...]  # vertex id -> part index

    def __post_init__(self) -> None:
        q, t = self.num_parts, self.part_size
        if q < 1 or t < 1:
            raise ValueError("need at least one part and positive part size")
        if len(self.assignment) != q * t:
            raise ValueError(
                f"assignment covers {len(self.assignment)} vertices, expected {q * t}"
            )
        sizes = [0] * q
        for v, p in enumerate(self.assignment):
            if not 0 <= p < q:
                raise ValueError(f"vertex {v} assigned to out-of-range part {p}")
            sizes[p] += 1
        if any(s != t for s in sizes):
            raise ValueError(f"parts must all have size {t}, got sizes {sizes}")

    @classmethod
    def contiguous(cls, num_parts: int, part_size: int) -> "PartitionStructure":
        """Parts are consecutive blocks: part p is [p*t, (p+1)*t)."""
        assignment = tuple(v // part_size for v in range(num_parts * part_size))
        return cls(num_parts, part_size, assignment)

    def parts(self) -> list[tuple[int, ...]]:
        out: list[list[int]] = [[] for _ in range(self.num_parts)]
        for v, p in enumerate(self.assignment):
            out[p].append(v)
        return [tuple(p) for p in out]


@dataclass(frozen=True)
class HypergraphFamily:
    """k hypergraphs sharing one vertex set (and uniformity)."""

    num_vertices: int
    members: tuple[Hypergraph, ...]
    partition: Optional[PartitionStructure] = None

    def __post_init__(self) -> None:
        if len(self.members) < 1:
            raise ValueError("a family needs at least one member")
        for i, h in enumerate(self.members):
            if h.num_vertices != self.num_vertices:
                raise ValueError(
                    f"member {i} has {h.num_vertices} vertices, family declares "
                    f"{self.num_vertices}"
                )
            if h.uniformity != self.members[0].uniformity:
                raise ValueError("family members must share uniformity")

    @property
    def k(self) -> int:
        return len(self.members)

    @property
    def uniformity(self) -> int:
        return self.members[0].uniformity


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    violations: tuple[str, ...]

    def __bool__(self) -> bool:
        return self.ok


def validate(
    h: Hypergraph, partition: Optional[PartitionStructure] = None
) -> ValidationReport:
    """Check hypergraph invariants, and partiteness when a partition is given.

    Violations are returned as data (naming the offending edge or part),
    never raised.
    """
    bad: list[str] = []
    if h.num_vertices < 0:
        bad.append(f"num_vertices {h.num_vertices} is negative")
    if h.uniformity < 1:
        bad.append(f"uniformity {h.uniformity} is not positive")
    for i, e in enumerate(h.edges):
        if any(e[j] >= e[j + 1] for j in range(len(e) - 1)):
            bad.append(f"edge #{i} {e} is not strictly ascending")
            continue
        if len(e) != h.uniformity:
            bad.append(f"edge #{i} {e} has size {len(e)}, expected {h.uniformity}")
        if e and (e[0] < 0 or e[-1] >= h.num_vertices):
            bad.append(f"edge #{i} {e} has a vertex outside [0, {h.num_vertices})")
    if partition is not None:
        n_part = partition.num_parts * partition.part_size
        if n_part != h.num_vertices:
            bad.append(
                f"partition covers {n_part} vertices, hypergraph has {h.num_vertices}"
            )
        else:
            for i, e in enumerate(h.edges):
                counts: dict[int, int] = {}
                for v in e:
                    if 0 <= v < h.num_vertices:
                        p = partition.assignment[v]
                        counts[p] = counts.get(p, 0) + 1
                for p, c in sorted(counts.items()):
                    if c > 1:
                        bad.append(f"edge #{i} {e} meets part {p} in {c} vertices")
    return ValidationReport(not bad, tuple(bad))


@dataclass(frozen=True)
class NearDisjointReport:
    ok: bool
    witness: Optional[tuple[Edge, Edge]] = None
    witness_members: Optional[tuple[int, int]] = None

    def __bool__(self) -> bool:
        return self.ok


def are_nearly_disjoint(family: HypergraphFamily) -> NearDisjointReport:
    """True iff every edge of one member meets every edge of another in <= 1 vertex.

    Duplicate edges within a single member never count as a violation.  For
    2-uniform members the condition collapses to cross-member edge-set
    disjointness, which is used as a fast path.
    """
    members = family.members
    if family.uniformity == 2 and all(
        all(len(e) == 2 for e in h.edges) for h in members
    ):
        edge_sets = [set(h.distinct_edges) for h in members]
        for i in range(len(members)):
            for j in range(i + 1, len(members)):
                common = edge_sets[i] & edge_sets[j]
                if common:
                    e = min(common)
                    return NearDisjointReport(False, (e, e), (i, j))
        return NearDisjointReport(True)
    for i in range(len(members)):
        for j in range(i + 1, len(members)):
            for ea in members[i].distinct_edges:
                ma = edge_mask(ea)
                for eb in members[j].distinct_edges:
                    if (ma & edge_mask(eb)).bit_count() >= 2:
                        return NearDisjointReport(False, (ea, eb), (i, j))
    return NearDisjointReport(True)


def is_independent(h: Hypergraph, vertices: Iterable[int]) -> bool:
    """True iff the set contains no edge of h entirely."""
    m = edge_mask(vertices)
    return all(em & m != em for em in h.edge_masks)


def is_transversal(h: Hypergraph, vertices: Iterable[int]) -> bool:
    """True iff the set meets every edge of h."""
    m = edge_mask(vertices)
    return all(em & m for em in h.edge_masks)


def max_degree(h: Hypergraph) -> int:
    """Maximum number of edges (with multiplicity) through one vertex."""
    deg = [0] * h.num_vertices
    for e in h.edges:
        for v in e:
            deg[v] += 1
    return max(deg, default=0)


class _Budget:
    __slots__ = ("remaining",)

    def __init__(self, limit: int) -> None:
        self.remaining = limit

    def spend(self) -> None:
        self.remaining -= 1
        if self.remaining < 0:
            raise BudgetExceeded(
                "independence search exceeded its node budget; raise the budget "
                "to get an exact answer"
            )


def _mis_graph(n: int, adj: list[int], budget: _Budget) -> tuple[int, int]:
    """Exact maximum independent set for a 2-uniform component (bitsets)."""
    best_size = 0
    best_mask = 0
    full = (1 << n) - 1

    def clique_cover_bound(free: int) -> int:
        # An independent set takes at most one vertex per clique.
        count = 0
        rem = free
        while rem:
            v = (rem & -rem).bit_length() - 1
            clique = 1 << v
            cand = rem & adj[v]
            while cand:
                u = (cand & -cand).bit_length() - 1
                clique |= 1 << u
                cand &= adj[u]
            rem &= ~clique
            count += 1
        return count

    def branch_vertex(free: int) -> int:
        # Highest degree inside free; ties go to the smallest id.
        best_v = -1
        best_deg = -1
        rem = free
        while rem:
            v = (rem & -rem).bit_length() - 1
            d = (adj[v] & free).bit_count()
            if d > best_deg:
                best_deg = d
                best_v = v
            rem &= rem - 1
        return best_v

    def rec(chosen: int, size: int, free: int) -> None:
        nonlocal best_size, best_mask
        budget.spend()
        if size + free.bit_count() <= best_size:
            return
        if not free:
            best_size, best_mask = size, chosen
            return
        if size + clique_cover_bound(free) <= best_size:
            return
        v = branch_vertex(free)
        bit = 1 << v
        rec(chosen | bit, size + 1, free & ~adj[v] & ~bit)
        rec(chosen, size, free & ~bit)

    rec(0, 0, full)
    return best_size, best_mask


def _mis_hyper(n: int, edge_masks: list[int], budget: _Budget) -> tuple[int, int]:
    """Exact maximum independent set for an r-uniform component, r >= 3.

    State is (chosen, excluded) bitmasks.  An edge missing exactly one
    vertex forces that vertex out; the bound packs disjoint live edge
    remainders, each of which must lose at least one free vertex.
    """
    full = (1 << n) - 1
    best_size = 0
    best_mask = 0

    def rec(chosen: int, excluded: int) -> None:
        nonlocal best_size, best_mask
        budget.spend()
        free = full & ~chosen & ~excluded
        forced = 0
        active: list[int] = []
        for em in edge_masks:
            if em & excluded:
                continue
            rem = em & free
            if rem == 0:
                return  # edge entirely chosen
            if rem & (rem - 1) == 0:
                forced |= rem
            else:
                active.append(rem)
        if forced:
            # Excluding a vertex satisfies every edge through it, so one
            # pass is a fixpoint; edges untouched by `forced` kept their
            # remainders.
            rec(chosen, excluded | forced)
            return
        size = chosen.bit_count()
        if not active:
            total = size + free.bit_count()
            if total > best_size:
                best_size, best_mask = total, chosen | free
            return
        used = 0
        pack = 0
        for rem in active:
            if rem & used == 0:
                pack += 1
                used |= rem
        if size + free.bit_count() - pack <= best_size:
            return
        pick = min(active, key=lambda rem: (rem.bit_count(), rem))
        v = (pick & -pick).bit_length() - 1
        bit = 1 << v
        rec(chosen | bit, excluded)
        rec(chosen, excluded | bit)

    rec(0, 0)
    return best_size, best_mask


def _components(
    n: int, masks: list[int]
) -> tuple[list[tuple[list[int], list[int]]], list[int]]:
    """Split into connected components: (vertices, edge masks) plus isolated."""
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for em in masks:
        vs = mask_vertices(em)
        for v in vs[1:]:
            ra, rb = find(vs[0]), find(v)
            if ra != rb:
                parent[rb] = ra
    covered = 0
    for em in masks:
        covered |= em
    groups: dict[int, list[int]] = {}
    for v in range(n):
        if covered >> v & 1:
            groups.setdefault(find(v), []).append(v)
    edges_by_root: dict[int, list[int]] = {}
    for em in masks:
        edges_by_root.setdefault(find(mask_vertices(em)[0]), []).append(em)
    comps = [
        (verts, edges_by_root.get(root, []))
        for root, verts in sorted(groups.items())
    ]
    isolated = [v for v in range(n) if not covered >> v & 1]
    return comps, isolated


def _max_independent(h: Hypergraph, budget_limit: Optional[int]) -> tuple[int, tuple[int, ...]]:
    limit = DEFAULT_NODE_BUDGET if budget_limit is None else budget_limit
    budget = _Budget(limit)
    # Duplicates never affect independence; keep first occurrences only.
    seen: set[int] = set()
    masks: list[int] = []
    for em in h.edge_masks:
        if em == 0:
            raise ValueError("hypergraph has an empty edge; no set is independent")
        if em not in seen:
            seen.add(em)
            masks.append(em)
    comps, isolated = _components(h.num_vertices, masks)
    total = len(isolated)
    witness = list(isolated)
    for verts, comp_masks in comps:
        index = {v: i for i, v in enumerate(verts)}
        local = [edge_mask(index[u] for u in mask_vertices(em)) for em in comp_masks]
        if all(m.bit_count() == 2 for m in local):
            adj = [0] * len(verts)
            for m in local:
                u, v = mask_vertices(m)
                adj[u] |= 1 << v
                adj[v] |= 1 << u
            size, mask = _mis_graph(len(verts), adj, budget)
        else:
            size, mask = _mis_hyper(len(verts), local, budget)
        total += size
        witness.extend(verts[i] for i in mask_vertices(mask))
    return total, tuple(sorted(witness))


class IndependenceDecision(NamedTuple):
    meets_threshold: bool
    witness: Optional[tuple[int, ...]]


def independence_number(
    h: Hypergraph,
    threshold: Optional[int] = None,
    budget: Optional[int] = None,
):
    """Exact independence number, or the decision "alpha >= threshold?".

    Without a threshold, returns the integer alpha(H).  With one, returns
    an :class:`IndependenceDecision` whose witness (an independent set of
    size >= threshold) is present exactly when the answer is True.  Raises
    :class:`BudgetExceeded` when the search budget runs out, so callers can
    tell "unknown" apart from an answer.
    """
    size, witness = _max_independent(h, budget)
    if threshold is None:
        return size
    if size >= threshold:
        return IndependenceDecision(True, witness)
    return IndependenceDecision(False, None)


def maximum_independent_set(
    h: Hypergraph, budget: Optional[int] = None
) -> tuple[int, ...]:
    """One maximum independent set (deterministic for fixed input)."""
    _, witness = _max_independent(h, budget)
    return witness


# --- JSON wire formats -----------------------------------------------------


def hypergraph_to_dict(h: Hypergraph) -> dict:
    return {"n": h.num_vertices, "r": h.uniformity, "edges": [list(e) for e in h.edges]}


def _parse_edges(raw, n: int, r: int) -> tuple[Edge, ...]:
    edges = []
    for i, e in enumerate(raw):
        if not isinstance(e, list) or not all(isinstance(v, int) for v in e):
            raise ValueError(f"edge #{i} must be a list of integers")
        if len(e) != r:
            raise ValueError(f"edge #{i} {e} has size {len(e)}, expected {r}")
        if any(e[j] >= e[j + 1] for j in range(len(e) - 1)):
            raise ValueError(f"edge #{i} {e} must be strictly ascending")
        if e and (e[0] < 0 or e[-1] >= n):
            raise ValueError(f"edge #{i} {e} has a vertex outside [0, {n})")
        edges.append(tuple(e))
    return tuple(edges)


def hypergraph_from_dict(d: dict) -> Hypergraph:
    """Parse {"n", "r", "edges"}; rejects non-canonical edges."""
    try:
        n, r, raw = d["n"], d["r"], d["edges"]
    except (KeyError, TypeError) as exc:
        raise ValueError(f"hypergraph document missing field: {exc}") from exc
    if not isinstance(n, int) or n < 0:
        raise ValueError("n must be a nonnegative integer")
    if not isinstance(r, int) or r < 1:
        raise ValueError("r must be a positive integer")
    return Hypergraph(n, _parse_edges(raw, n, r), r)


def _partition_from_parts(parts: list, n: int) -> PartitionStructure:
    if not parts:
        raise ValueError("parts must be a nonempty list of vertex lists")
    sizes = {len(p) for p in parts}
    if len(sizes) != 1:
        raise ValueError(f"parts must all have equal size, got sizes {sorted(sizes)}")
    t = sizes.pop()
    assignment = [-1] * n
    for pi, part in enumerate(parts):
        for v in part:
            if not isinstance(v, int) or not 0 <= v < n:
                raise ValueError(f"part {pi} has out-of-range vertex {v}")
            if assignment[v] != -1:
                raise ValueError(f"vertex {v} appears in two parts")
            assignment[v] = pi
    if -1 in assignment:
        raise ValueError("parts must cover every vertex")
    return PartitionStructure(len(parts), t, tuple(assignment))


def family_to_dict(f: HypergraphFamily) -> dict:
    d = {
        "n": f.num_vertices,
        "r": f.uniformity,
        "members": [[list(e) for e in h.edges] for h in f.members],
    }
    if f.partition is not None:
        d["parts"] = [list(p) for p in f.partition.parts()]
    return d


def family_from_dict(d: dict) -> HypergraphFamily:
    """Parse {"n", "r", "members", "parts"?}; rejects non-canonical edges."""
    try:
        n, r, raw_members = d["n"], d["r"], d["members"]
    except (KeyError, TypeError) as exc:
        raise ValueError(f"family document missing field: {exc}") from exc
    if not isinstance(n, int) or n < 0:
        raise ValueError("n must be a nonnegative integer")
    if not isinstance(r, int) or r < 1:
        raise ValueError("r must be a positive integer")
    if not isinstance(raw_members, list) or not raw_members:
        raise ValueError("members must be a nonempty list of edge lists")
    members = tuple(
        Hypergraph(n, _parse_edges(raw, n, r), r) for raw in raw_members
    )
    partition = None
    if d.get("parts") is not None:
        partition = _partition_from_parts(d["parts"], n)
    return HypergraphFamily(n, members, partition)
