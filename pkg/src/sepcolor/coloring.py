"""List assignments for complete multipartite targets and their solvers.

A complete multipartite graph (or complete k-partite k-uniform hypergraph)
with one list per vertex is colorable exactly when the colors can be split
into k classes making every vertex's list "happy": containing a class-i
color for part-i vertices (graph targets, mode "star"), or not lying
entirely inside class i (hypergraph targets, mode "star_star").  The
reduction to a hypergraph family on the color set, exact and randomized
class-assignment solvers, and the lower-bound certificate checker all live
here.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .construct import derive_seed
from .hypergraphs import (
    BudgetExceeded,
    Edge,
    Hypergraph,
    HypergraphFamily,
    are_nearly_disjoint,
    edge_mask,
    independence_number,
)

GRAPH = "graph"
HYPERGRAPH = "hypergraph"
STAR = "star"
STAR_STAR = "star_star"

_MODE_OF_SPEC = {GRAPH: STAR, HYPERGRAPH: STAR_STAR}
_SPEC_OF_MODE = {STAR: GRAPH, STAR_STAR: HYPERGRAPH}


def partition_mode_for(spec_mode: str) -> str:
    """graph -> star, hypergraph -> star_star."""
    try:
        return _MODE_OF_SPEC[spec_mode]
    except KeyError:
        raise ValueError(f"unknown target mode {spec_mode!r}") from None


def spec_mode_for(partition_mode: str) -> str:
    try:
        return _SPEC_OF_MODE[partition_mode]
    except KeyError:
        raise ValueError(f"unknown partition mode {partition_mode!r}") from None


@dataclass(frozen=True)
class MultipartiteSpec:
    """A complete multipartite target: K(k,m...) or K^k(k,m...)."""

    mode: str  # "graph" | "hypergraph"
    part_sizes: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.mode not in (GRAPH, HYPERGRAPH):
            raise ValueError(f"mode must be 'graph' or 'hypergraph', got {self.mode!r}")
        object.__setattr__(self, "part_sizes", tuple(self.part_sizes))
        if len(self.part_sizes) < 2:
            raise ValueError("need at least two parts")
        if any(m < 1 for m in self.part_sizes):
            raise ValueError("part sizes must be positive")

    @property
    def k(self) -> int:
        return len(self.part_sizes)

    @classmethod
    def balanced(cls, mode: str, k: int, m: int) -> "MultipartiteSpec":
        return cls(mode, (m,) * k)


@dataclass(frozen=True)
class ListAssignment:
    """Equal-size color lists over a dense color range [0, num_colors).

    Every color must occur in some list (the color universe is exactly the
    union of the lists); original labels, when the lists came from labeled
    input, sit in ``color_labels``.
    """

    num_colors: int
    list_size: int
    lists: tuple[tuple[tuple[int, ...], ...], ...]  # [part][vertex] -> colors
    color_labels: Optional[tuple[int, ...]] = None

    def __post_init__(self) -> None:
        used = set()
        for part in self.lists:
            for lst in part:
                if len(lst) != self.list_size or len(set(lst)) != self.list_size:
                    raise ValueError(
                        f"list {lst} must hold exactly {self.list_size} distinct colors"
                    )
                if any(not 0 <= c < self.num_colors for c in lst):
                    raise ValueError(f"list {lst} has a color outside [0, {self.num_colors})")
                used.update(lst)
        if used != set(range(self.num_colors)):
            raise ValueError("every color in [0, num_colors) must appear in some list")
        if self.color_labels is not None and len(self.color_labels) != self.num_colors:
            raise ValueError("color_labels must map every dense color id")

    @classmethod
    def from_labeled(
        cls, labeled_lists: Sequence[Sequence[Iterable[int]]]
    ) -> "ListAssignment":
        """Canonicalize arbitrary integer color labels to a dense range."""
        parts = [[tuple(lst) for lst in part] for part in labeled_lists]
        labels = sorted({c for part in parts for lst in part for c in lst})
        dense = {c: i for i, c in enumerate(labels)}
        sizes = {len(lst) for part in parts for lst in part}
        if len(sizes) != 1:
            raise ValueError(f"lists must all have one size, got sizes {sorted(sizes)}")
        lists = tuple(
            tuple(tuple(sorted(dense[c] for c in lst)) for lst in part) for part in parts
        )
        return cls(len(labels), sizes.pop(), lists, tuple(labels))

    @property
    def part_sizes(self) -> tuple[int, ...]:
        return tuple(len(p) for p in self.lists)

    def implied_spec(self, mode: str) -> MultipartiteSpec:
        return MultipartiteSpec(mode, self.part_sizes)


@dataclass(frozen=True)
class ColorPartition:
    """A total map color -> class in {0, ..., num_classes-1}."""

    num_classes: int
    classes: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.num_classes < 1:
            raise ValueError("need at least one class")
        if any(not 0 <= c < self.num_classes for c in self.classes):
            raise ValueError("every color must be assigned a class in range")


def _check_spec_cover(spec: MultipartiteSpec, lists: ListAssignment) -> None:
    if spec.part_sizes != lists.part_sizes:
        raise ValueError(
            f"list assignment covers parts {lists.part_sizes}, spec has {spec.part_sizes}"
        )


@dataclass(frozen=True)
class SeparationReport:
    ok: bool
    witness: Optional[tuple[tuple[int, int], tuple[int, int]]] = None

    def __bool__(self) -> bool:
        return self.ok


def check_separation(
    spec: MultipartiteSpec, lists: ListAssignment, s: int
) -> SeparationReport:
    """Do all co-edge vertex pairs share at most s colors?

    In both target modes the co-edge pairs are exactly the pairs from
    distinct parts; same-part lists may overlap arbitrarily.  The witness
    is a violating ((part, index), (part, index)) pair.
    """
    _check_spec_cover(spec, lists)
    sets = [[set(lst) for lst in part] for part in lists.lists]
    k = spec.k
    for i in range(k):
        for j in range(i + 1, k):
            for ui, u in enumerate(sets[i]):
                for vi, v in enumerate(sets[j]):
                    if len(u & v) > s:
                        return SeparationReport(False, ((i, ui), (j, vi)))
    return SeparationReport(True)


def family_from_lists(spec: MultipartiteSpec, lists: ListAssignment) -> HypergraphFamily:
    """The hypergraph family on the color set whose member-i edges are the
    part-i lists (duplicate lists stay duplicate edges)."""
    _check_spec_cover(spec, lists)
    members = tuple(
        Hypergraph(lists.num_colors, tuple(part), lists.list_size)
        for part in lists.lists
    )
    return HypergraphFamily(lists.num_colors, members)


def lists_from_family(
    family: HypergraphFamily,
    target_m: Optional[Sequence[int]] = None,
    mode: str = GRAPH,
) -> tuple[MultipartiteSpec, ListAssignment]:
    """Inverse of :func:`family_from_lists`: one part per member, one vertex
    per edge, list = edge.

    With ``target_m``, part i is grown to m_i vertices by cycling through
    member i's edges round-robin.  Colors are the family vertices that
    occur in some edge; any uncovered vertices are dropped from the dense
    range (their ids are kept in the label table).
    """
    if target_m is not None:
        if len(target_m) != family.k:
            raise ValueError(f"need {family.k} targets, got {len(target_m)}")
        for i, (h, m) in enumerate(zip(family.members, target_m)):
            if m < len(h.edges):
                raise ValueError(
                    f"member {i}: target {m} is below the edge count {len(h.edges)}"
                )
    labeled = []
    for i, h in enumerate(family.members):
        edges = list(h.edges)
        if not edges:
            raise ValueError(f"member {i} has no edges; it cannot fill a part")
        m = len(edges) if target_m is None else target_m[i]
        labeled.append([edges[j % len(edges)] for j in range(m)])
    lists = ListAssignment.from_labeled(labeled)
    return lists.implied_spec(mode), lists


@dataclass(frozen=True)
class PartitionCheck:
    ok: bool
    unhappy: tuple[tuple[int, Edge], ...]  # (member index, edge)

    def __bool__(self) -> bool:
        return self.ok


def check_partition(
    family: HypergraphFamily, partition: ColorPartition, mode: str
) -> PartitionCheck:
    """Does the class assignment make every edge happy?

    star: each member-i edge must contain a class-i color.
    star_star: no member-i edge may consist entirely of class-i colors.
    """
    if mode not in (STAR, STAR_STAR):
        raise ValueError(f"mode must be 'star' or 'star_star', got {mode!r}")
    if len(partition.classes) != family.num_vertices:
        raise ValueError(
            f"partition assigns {len(partition.classes)} colors, family has "
            f"{family.num_vertices}"
        )
    classes = partition.classes
    unhappy = []
    for i, h in enumerate(family.members):
        for e in h.edges:
            if mode == STAR:
                happy = any(classes[c] == i for c in e)
            else:
                happy = any(classes[c] != i for c in e)
            if not happy:
                unhappy.append((i, e))
    return PartitionCheck(not unhappy, tuple(unhappy))


# --- exact solver --------------------------------------------------------------


class _Nodes:
    __slots__ = ("remaining",)

    def __init__(self, limit: int) -> None:
        self.remaining = limit

    def spend(self) -> None:
        self.remaining -= 1
        if self.remaining < 0:
            raise BudgetExceeded(
                "class-assignment search exceeded its node budget; the instance "
                "is neither solved nor refuted"
            )


def _find_split(
    n: int, hit: Sequence[int], avoid: Sequence[int], nodes: _Nodes
) -> Optional[int]:
    """A set S meeting every `hit` mask and containing no `avoid` mask whole.

    Bitset DFS with unit propagation: an avoid edge with one undecided
    vertex left forces it out of S, a hit edge with one undecided vertex
    left forces it in.  Vertices are decided lowest-id first, S before
    not-S.  Returns the S mask, or None when no split exists.
    """
    full = (1 << n) - 1

    def rec(s_mask: int, out_mask: int) -> Optional[int]:
        nodes.spend()
        while True:
            free = full & ~s_mask & ~out_mask
            force_in = 0
            force_out = 0
            for em in avoid:
                if em & out_mask:
                    continue
                rem = em & free
                if rem == 0:
                    return None  # edge swallowed by S
                if rem & (rem - 1) == 0:
                    force_out |= rem
            for em in hit:
                if em & s_mask:
                    continue
                rem = em & free
                if rem == 0:
                    return None  # edge has no vertex left to hit
                if rem & (rem - 1) == 0:
                    force_in |= rem
            if force_in & force_out:
                return None
            if not force_in and not force_out:
                break
            s_mask |= force_in
            out_mask |= force_out
        free = full & ~s_mask & ~out_mask
        pending_avoid = [em for em in avoid if not em & out_mask]
        pending_hit = [em for em in hit if not em & s_mask]
        if not pending_hit and not pending_avoid:
            # Unconstrained leftovers join S (class order: lowest first).
            return s_mask | free
        # Pending edges all have >= 2 undecided vertices here (empty or unit
        # remainders were handled during propagation).
        undecided = 0
        for em in pending_avoid + pending_hit:
            undecided |= em & free
        v = (undecided & -undecided).bit_length() - 1
        bit = 1 << v
        got = rec(s_mask | bit, out_mask)
        if got is not None:
            return got
        return rec(s_mask, out_mask | bit)

    return rec(0, 0)


def _solve_two_members(
    family: HypergraphFamily, mode: str, nodes: _Nodes
) -> Optional[ColorPartition]:
    """k=2 route via independence structure.

    star: class 0 must hit every member-0 edge (so the class-1 set is
    independent in member 0) and contain no member-1 edge (so it is
    independent in member 1).  star_star swaps the member roles.
    """
    e0 = list(dict.fromkeys(family.members[0].edge_masks))
    e1 = list(dict.fromkeys(family.members[1].edge_masks))
    n = family.num_vertices
    if mode == STAR:
        s_mask = _find_split(n, hit=e0, avoid=e1, nodes=nodes)
    else:
        s_mask = _find_split(n, hit=e1, avoid=e0, nodes=nodes)
    if s_mask is None:
        return None
    classes = tuple(0 if s_mask >> c & 1 else 1 for c in range(n))
    return ColorPartition(2, classes)


def _solve_backtracking(
    family: HypergraphFamily, mode: str, nodes: _Nodes
) -> Optional[ColorPartition]:
    """General-k backtracking over color class domains with propagation."""
    k = family.k
    n = family.num_vertices
    full_domain = (1 << k) - 1
    constraints = [
        (i, e) for i, h in enumerate(family.members) for e in h.distinct_edges
    ]

    def propagate(domains: list[int]) -> bool:
        changed = True
        while changed:
            changed = False
            for i, e in constraints:
                bit = 1 << i
                if mode == STAR:
                    # Need some color of e committed to class i.
                    if any(domains[c] == bit for c in e):
                        continue
                    candidates = [c for c in e if domains[c] & bit]
                    if not candidates:
                        return False
                    if len(candidates) == 1:
                        domains[candidates[0]] = bit
                        changed = True
                else:
                    # Need some color of e that cannot be class i, or is
                    # committed elsewhere.
                    if any(not domains[c] & bit for c in e):
                        continue
                    loose = [c for c in e if domains[c] != bit]
                    if not loose:
                        return False
                    if len(loose) == 1:
                        domains[loose[0]] &= ~bit
                        if domains[loose[0]] == 0:
                            return False
                        changed = True
        return True

    def rec(domains: list[int]) -> Optional[list[int]]:
        nodes.spend()
        if not propagate(domains):
            return None
        try:
            c = next(i for i in range(n) if domains[i] & (domains[i] - 1))
        except StopIteration:
            return domains
        d = domains[c]
        cls = 0
        while d:
            if d & 1:
                trial = list(domains)
                trial[c] = 1 << cls
                got = rec(trial)
                if got is not None:
                    return got
            d >>= 1
            cls += 1
        return None

    got = rec([full_domain] * n)
    if got is None:
        return None
    classes = tuple(dom.bit_length() - 1 for dom in got)
    return ColorPartition(k, classes)


def solve_exact(
    family: HypergraphFamily, mode: str, budget: int = 2_000_000
) -> Optional[ColorPartition]:
    """A class partition passing :func:`check_partition`, or None for UNSAT.

    The answer is exact and certifying: SAT results are re-checked before
    being returned, and running out of node budget raises
    :class:`~sepcolor.hypergraphs.BudgetExceeded` rather than answering.
    Branching is deterministic (lowest undecided color, classes in
    ascending order); k=2 instances route through a bitset bipartition
    search over independence constraints.
    """
    if mode not in (STAR, STAR_STAR):
        raise ValueError(f"mode must be 'star' or 'star_star', got {mode!r}")
    nodes = _Nodes(budget)
    if family.k == 2:
        partition = _solve_two_members(family, mode, nodes)
    else:
        partition = _solve_backtracking(family, mode, nodes)
    if partition is not None and not check_partition(family, partition, mode).ok:
        raise RuntimeError("solver returned a partition its own check rejects")
    return partition


@dataclass(frozen=True)
class RandomSolveOutcome:
    partition: Optional[ColorPartition]
    trials_used: int

    @property
    def succeeded(self) -> bool:
        return self.partition is not None


def solve_random(
    family: HypergraphFamily, mode: str, seed: int = 0, trials: int = 50
) -> RandomSolveOutcome:
    """Uniform random class assignments until one passes, at most `trials`.

    Each color independently gets a uniform class, per trial; trial t uses
    a child seed derived from (seed, t), so any subset of trials replays
    identically.  When the expected number of unhappy edges
    k*m*((k-1)/k)^r (star) or k*m*k^(-r) (star_star) is below 1, each
    trial succeeds with probability at least 1 minus that expectation.
    Exhausting the trials proves nothing.
    """
    k = family.k
    n = family.num_vertices
    for t in range(trials):
        rng = random.Random(derive_seed(seed, t))
        partition = ColorPartition(k, tuple(rng.randrange(k) for _ in range(n)))
        if check_partition(family, partition, mode).ok:
            return RandomSolveOutcome(partition, t + 1)
    return RandomSolveOutcome(None, trials)


# --- realizing an actual coloring ----------------------------------------------


def realize_coloring(
    spec: MultipartiteSpec, lists: ListAssignment, partition: ColorPartition
) -> tuple[tuple[int, ...], ...]:
    """Turn a happy class partition into a proper coloring of the target.

    Graph targets: part-i vertices take a list color of class i (classes
    are disjoint across parts, so cross-part neighbors never collide).
    Hypergraph targets: vertices prefer a list color outside class i, so
    no transversal edge can end up monochromatic.  The returned coloring
    is verified before being handed back.
    """
    _check_spec_cover(spec, lists)
    family = family_from_lists(spec, lists)
    mode = partition_mode_for(spec.mode)
    chk = check_partition(family, partition, mode)
    if not chk.ok:
        raise ValueError(f"partition fails {mode} check; unhappy: {chk.unhappy[:5]}")
    classes = partition.classes
    coloring: list[tuple[int, ...]] = []
    if spec.mode == GRAPH:
        for i, part in enumerate(lists.lists):
            coloring.append(
                tuple(min(c for c in lst if classes[c] == i) for lst in part)
            )
        for i in range(spec.k):
            for j in range(i + 1, spec.k):
                shared = set(coloring[i]) & set(coloring[j])
                if shared:
                    raise RuntimeError(
                        f"parts {i} and {j} share color {min(shared)}; "
                        "class disjointness should make this impossible"
                    )
    else:
        for i, part in enumerate(lists.lists):
            row = []
            for lst in part:
                outside = [c for c in lst if classes[c] != i]
                row.append(min(outside) if outside else min(lst))
            coloring.append(tuple(row))
        # No transversal edge is monochromatic iff every color misses
        # some part entirely.
        for c in range(lists.num_colors):
            if all(c in row for row in coloring):
                raise RuntimeError(
                    f"color {c} appears in every part; a monochromatic edge exists"
                )
    return tuple(coloring)


# --- lower-bound certificates ---------------------------------------------------


@dataclass(frozen=True)
class CertificateClaim:
    graph_kind: str  # "K(k,m)" | "K^k(k,m)"
    min_m: int
    lower_bound_r_plus_1: int


@dataclass(frozen=True)
class Certificate:
    """Premise evidence for the pigeonhole lower bound.

    A nearly disjoint family with every alpha(H_i) < a*n blocks every
    class partition, so the corresponding 1-separated r-lists are
    uncolorable: the separation choosability exceeds r for every part
    size m >= min_m.
    """

    mode: str
    k: int
    r: int
    n: int
    alpha: tuple[int, ...]
    a: Fraction
    claim: CertificateClaim

    def to_json_dict(self) -> dict:
        return {
            "mode": self.mode,
            "k": self.k,
            "r": self.r,
            "n": self.n,
            "alpha": list(self.alpha),
            "a": f"{self.a.numerator}/{self.a.denominator}",
            "claim": {
                "graph_kind": self.claim.graph_kind,
                "min_m": self.claim.min_m,
                "lower_bound_r_plus_1": self.claim.lower_bound_r_plus_1,
            },
        }

    @classmethod
    def from_json_dict(cls, d: dict) -> "Certificate":
        num, den = str(d["a"]).split("/")
        return cls(
            mode=d["mode"],
            k=d["k"],
            r=d["r"],
            n=d["n"],
            alpha=tuple(d["alpha"]),
            a=Fraction(int(num), int(den)),
            claim=CertificateClaim(
                graph_kind=d["claim"]["graph_kind"],
                min_m=d["claim"]["min_m"],
                lower_bound_r_plus_1=d["claim"]["lower_bound_r_plus_1"],
            ),
        )

    def describe(self) -> str:
        target = (
            f"K({self.k},{self.claim.min_m})"
            if self.mode == STAR
            else f"K^{self.k}({self.k},{self.claim.min_m})"
        )
        return (
            f"chi_l({target},1) >= {self.claim.lower_bound_r_plus_1} "
            f"(and for every m >= {self.claim.min_m})"
        )


@dataclass(frozen=True)
class CertificateResult:
    accepted: bool
    certificate: Optional[Certificate]
    failures: tuple[str, ...]

    def __bool__(self) -> bool:
        return self.accepted


def verify_certificate(
    family: HypergraphFamily, mode: str, budget: Optional[int] = None
) -> CertificateResult:
    """Check the two lower-bound premises and emit the claim they support.

    (P1) the members are pairwise nearly disjoint; (P2) every member has
    alpha(H_i) < a*n exactly, with a = (k-1)/k in star mode and a = 1/k in
    star_star mode.  On success the claim covers every part size
    m >= max_i |E(H_i)|; on failure the failing premises are listed.
    Independence numbers are computed exactly (BudgetExceeded propagates;
    "unknown" is never a rejection).
    """
    if mode not in (STAR, STAR_STAR):
        raise ValueError(f"mode must be 'star' or 'star_star', got {mode!r}")
    k = family.k
    if k < 2:
        raise ValueError("certificates need at least two members")
    a = Fraction(k - 1, k) if mode == STAR else Fraction(1, k)
    failures: list[str] = []
    nd = are_nearly_disjoint(family)
    if not nd.ok:
        failures.append(
            f"members {nd.witness_members} are not nearly disjoint: edges "
            f"{nd.witness} share >= 2 vertices"
        )
    alphas = tuple(
        independence_number(h, budget=budget) for h in family.members
    )
    limit = a * family.num_vertices
    for i, alpha in enumerate(alphas):
        if not Fraction(alpha) < limit:
            failures.append(
                f"member {i} has alpha = {alpha}, not below a*n = {limit}"
            )
    if failures:
        return CertificateResult(False, None, tuple(failures))
    min_m = max(len(h.edges) for h in family.members)
    cert = Certificate(
        mode=mode,
        k=k,
        r=family.uniformity,
        n=family.num_vertices,
        alpha=alphas,
        a=a,
        claim=CertificateClaim(
            graph_kind="K(k,m)" if mode == STAR else "K^k(k,m)",
            min_m=min_m,
            lower_bound_r_plus_1=family.uniformity + 1,
        ),
    )
    return CertificateResult(True, cert, ())


# --- list assignment file formats ------------------------------------------------


def lists_to_text(spec: MultipartiteSpec, lists: ListAssignment) -> str:
    """Text format: header "k r mode", then "<part> <index>: c1 ... cr"."""
    _check_spec_cover(spec, lists)
    labels = lists.color_labels or tuple(range(lists.num_colors))
    out = [f"{spec.k} {lists.list_size} {spec.mode}"]
    for p, part in enumerate(lists.lists):
        for v, lst in enumerate(part):
            colors = " ".join(str(labels[c]) for c in lst)
            out.append(f"{p} {v}: {colors}")
    return "\n".join(out) + "\n"


def lists_from_text(text: str) -> tuple[MultipartiteSpec, ListAssignment]:
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise ValueError("empty list file")
    header = lines[0].split()
    if len(header) != 3:
        raise ValueError(f"header must be 'k r mode', got {lines[0]!r}")
    k, r, mode = int(header[0]), int(header[1]), header[2]
    if mode not in (GRAPH, HYPERGRAPH):
        raise ValueError(f"mode must be 'graph' or 'hypergraph', got {mode!r}")
    rows: dict[int, dict[int, tuple[int, ...]]] = {}
    for ln in lines[1:]:
        head, _, tail = ln.partition(":")
        try:
            p, v = map(int, head.split())
            colors = tuple(int(c) for c in tail.split())
        except ValueError as exc:
            raise ValueError(f"bad list line {ln!r}") from exc
        if not 0 <= p < k:
            raise ValueError(f"part {p} out of range in line {ln!r}")
        if len(colors) != r or len(set(colors)) != r:
            raise ValueError(f"line {ln!r} must list exactly {r} distinct colors")
        if v in rows.setdefault(p, {}):
            raise ValueError(f"duplicate entry for vertex ({p}, {v})")
        rows[p][v] = colors
    labeled = []
    for p in range(k):
        if p not in rows:
            raise ValueError(f"part {p} has no vertices")
        byv = rows[p]
        if sorted(byv) != list(range(len(byv))):
            raise ValueError(f"part {p} vertex indices must be 0..{len(byv) - 1}")
        labeled.append([byv[v] for v in range(len(byv))])
    lists = ListAssignment.from_labeled(labeled)
    if lists.list_size != r:
        raise ValueError("list size disagrees with header")
    return lists.implied_spec(mode), lists


def lists_to_dict(spec: MultipartiteSpec, lists: ListAssignment) -> dict:
    _check_spec_cover(spec, lists)
    return {
        "k": spec.k,
        "r": lists.list_size,
        "mode": spec.mode,
        "part_sizes": list(spec.part_sizes),
        "lists": [[list(lst) for lst in part] for part in lists.lists],
        "color_labels": list(lists.color_labels) if lists.color_labels else None,
    }


def lists_from_dict(d: dict) -> tuple[MultipartiteSpec, ListAssignment]:
    try:
        mode, raw = d["mode"], d["lists"]
    except (KeyError, TypeError) as exc:
        raise ValueError(f"list document missing field: {exc}") from exc
    parts = tuple(tuple(tuple(lst) for lst in part) for part in raw)
    if not parts or not any(parts):
        raise ValueError("lists must be nonempty")
    sizes = {len(lst) for part in parts for lst in part}
    if len(sizes) != 1:
        raise ValueError(f"lists must all have one size, got sizes {sorted(sizes)}")
    num_colors = 1 + max(c for part in parts for lst in part for c in lst)
    labels = d.get("color_labels")
    try:
        lists = ListAssignment(
            num_colors, sizes.pop(), parts, tuple(labels) if labels else None
        )
    except ValueError as exc:
        raise ValueError(f"bad list document: {exc}") from exc
    if lists.list_size != d.get("r", lists.list_size):
        raise ValueError("list size disagrees with the document's r")
    if len(parts) != d.get("k", len(parts)):
        raise ValueError("part count disagrees with the document's k")
    return lists.implied_spec(mode), lists
