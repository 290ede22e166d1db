import random
from fractions import Fraction
from itertools import combinations

import pytest

from oracles import brute_alpha, brute_min_transversal
from sepcolor.construct import (
    CapacityError,
    ConstructionParams,
    EnumerationCapExceeded,
    corollary_targets,
    greedy_transversal,
    greedy_transversal_bound,
    iterative_family,
    lemma1_construct,
    pad_family,
)
from sepcolor.hypergraphs import (
    Hypergraph,
    HypergraphFamily,
    are_nearly_disjoint,
    independence_number,
    is_transversal,
    max_degree,
    validate,
)


def _params(**kw):
    base = dict(k=2, r=2, a=Fraction(1, 2), q=8, t=1, seed=0)
    base.update(kw)
    return ConstructionParams(**base)


class TestGreedyTransversal:
    def test_single_edge_lexicographic(self):
        h = Hypergraph(3, ((0, 1, 2),), 3)
        assert greedy_transversal(h) == {0}

    def test_k4(self):
        h = Hypergraph.from_edges(4, combinations(range(4), 2), 2)
        t = greedy_transversal(h)
        assert is_transversal(h, t)
        assert len(t) == 3 == brute_min_transversal(4, h.edges)
        assert Fraction(len(t)) <= greedy_transversal_bound(h) == Fraction(11, 3)

    def test_tie_break_smallest_vertex(self):
        h = Hypergraph.from_edges(4, [(0, 1), (2, 3)], 2)
        assert greedy_transversal(h) == {0, 2}

    def test_needs_an_edge(self):
        with pytest.raises(ValueError):
            greedy_transversal(Hypergraph(3, (), 2))

    def test_random_outputs_within_harmonic_bound(self):
        rng = random.Random(99)
        for _ in range(150):
            r = rng.choice((2, 3))
            n = rng.randint(r, 12)
            pool = list(combinations(range(n), r))
            edges = tuple(rng.sample(pool, rng.randint(1, min(len(pool), 18))))
            h = Hypergraph(n, edges, r)
            t = greedy_transversal(h)
            assert is_transversal(h, t)
            assert Fraction(len(t)) <= greedy_transversal_bound(h)


class TestParams:
    def test_defaults_fill_q(self):
        p = ConstructionParams(k=2, r=2, a=Fraction(1, 2))
        assert p.q == 8
        assert ConstructionParams(k=2, r=3, a=Fraction(2, 3)).q == 14

    def test_hypothesis_violation(self):
        with pytest.raises(ValueError, match="hypothesis"):
            _params(q=3)

    def test_rejects_bad_a_and_r(self):
        with pytest.raises(ValueError):
            _params(a=Fraction(3, 2))
        with pytest.raises(ValueError):
            _params(r=1, q=None)

    def test_exact_boundary_q(self):
        # q = r^2/a exactly is admissible; one less is not
        assert _params(a=Fraction(1, 2), q=8).q == 8
        with pytest.raises(ValueError):
            _params(a=Fraction(1, 2), q=7)

    def test_edge_limit(self):
        assert _params().edge_limit == 128
        assert _params(t=8).edge_limit == 1024


class TestLemma1:
    @pytest.mark.parametrize("strategy", ["greedy-cover", "randomized"])
    def test_desk_instance_both_strategies(self, strategy):
        h, partition, report = lemma1_construct(_params(strategy=strategy))
        assert h.num_vertices == 8
        assert validate(h, partition).ok
        assert report.partite_ok and report.alpha_ok and report.edges_ok
        assert report.alpha <= 3
        assert len(h.edges) <= 128
        # cross-check the verified alpha with plain subset enumeration
        assert brute_alpha(8, h.edges) == report.alpha

    def test_greedy_cover_cap(self):
        with pytest.raises(EnumerationCapExceeded):
            lemma1_construct(_params(t=8, strategy="greedy-cover", enum_cap=1000))

    def test_randomized_full_population_path(self):
        # capacity C(8,2)*4 = 112 below the 256 target: must take every
        # partite pair, making alpha = (r-1)*t exactly
        h, partition, report = lemma1_construct(_params(t=2))
        assert len(h.edges) == 112
        assert report.alpha == 2
        assert validate(h, partition).ok
        assert any("took all" in note for note in report.notes)

    def test_randomized_sampling_path(self):
        # capacity C(8,2)*25 = 700 above the 640 target: genuine sampling
        params = _params(t=5)
        h, partition, report = lemma1_construct(params)
        assert len(h.edges) == 640 == params.edge_limit
        assert validate(h, partition).ok
        assert Fraction(report.alpha) < Fraction(20)
        assert independence_number(h) == report.alpha

    def test_randomized_three_uniform(self):
        params = ConstructionParams(k=2, r=3, a=Fraction(1, 2), q=18, seed=4)
        h, partition, report = lemma1_construct(params)
        assert h.uniformity == 3
        assert len(h.edges) == params.edge_limit == 576
        assert validate(h, partition).ok
        assert report.alpha_ok

    def test_deterministic_for_seed(self):
        a = lemma1_construct(_params(t=5, seed=42))[0]
        b = lemma1_construct(_params(t=5, seed=42))[0]
        assert a == b
        c = lemma1_construct(_params(t=5, seed=43))[0]
        assert c != a

    def test_t_one_recorded(self):
        _, _, report = lemma1_construct(_params())
        assert any("t=1" in note for note in report.notes)


class TestIterativeFamily:
    def test_desk_family(self):
        family, trace = iterative_family(_params())
        assert family.k == 2
        assert family.num_vertices == 64
        assert are_nearly_disjoint(family).ok
        for h in family.members:
            assert independence_number(h) < 32
        assert [len(lv.members) for lv in trace.levels] == [1, 2]
        for lv in trace.levels:
            for rec in lv.members:
                assert rec.num_vertices == 8**lv.level
                assert rec.alpha_verified and rec.alpha_ok

    def test_k_must_be_at_least_two(self):
        with pytest.raises(ValueError):
            iterative_family(_params(k=1))

    def test_t_must_be_one(self):
        with pytest.raises(ValueError):
            iterative_family(_params(t=2))

    def test_copy_step_multiplies_alpha(self):
        base = Hypergraph.from_edges(5, [(0, 1), (1, 2)], 2)
        base_alpha = independence_number(base)
        assert base_alpha == brute_alpha(5, base.edges) == 4
        from sepcolor.construct import _disjoint_copies

        stacked = _disjoint_copies(base, 3)
        assert independence_number(stacked) == brute_alpha(15, stacked.edges) == 12

    def test_deterministic_families(self):
        f1, t1 = iterative_family(_params(seed=9))
        f2, t2 = iterative_family(_params(seed=9))
        assert f1 == f2
        assert t1.to_json_dict() == t2.to_json_dict()

    def test_trace_serializes(self):
        _, trace = iterative_family(_params())
        d = trace.to_json_dict()
        assert d["params"]["a"] == "1/2"
        assert d["params"]["seed"] == 0
        assert d["levels"][1]["members"][1]["source"] == "fresh"
        assert d["levels"][1]["nearly_disjoint"] is True


@pytest.fixture(scope="module")
def desk_family():
    return iterative_family(_params())[0]


class TestPadFamily:
    def test_corollary_targets(self):
        assert corollary_targets(_params()) == [1024, 1024]

    def test_pad_to_corollary_targets(self, desk_family):
        padded, report = pad_family(desk_family, [1024, 1024], allow_duplicates=True)
        assert [len(h.edges) for h in padded.members] == [1024, 1024]
        assert report.members[0].simple_capacity == 224
        assert report.members[1].simple_capacity == 1792
        assert report.members[0].simple_shortfall
        assert not report.members[1].simple_shortfall
        assert report.members[0].simple_added + report.members[0].before == 224
        assert report.members[0].duplicates_added == 800
        assert are_nearly_disjoint(padded).ok
        # duplicates cannot change alpha
        for before, after in zip(desk_family.members, padded.members):
            assert independence_number(after) == independence_number(before)

    def test_identity_targets(self, desk_family):
        sizes = [len(h.edges) for h in desk_family.members]
        padded, report = pad_family(desk_family, sizes, allow_duplicates=False)
        assert padded.members == desk_family.members
        assert all(p.simple_added == 0 and p.duplicates_added == 0 for p in report.members)

    def test_simple_padding_is_lexicographic(self):
        # strip edges from member 0, then padding must restore smallest-first
        family = iterative_family(_params())[0]
        h0 = family.members[0]
        stripped = HypergraphFamily(
            family.num_vertices,
            (Hypergraph(h0.num_vertices, h0.edges[2:], 2), family.members[1]),
            family.partition,
        )
        padded, report = pad_family(stripped, [224, 1024], allow_duplicates=False)
        assert report.members[0].simple_added == 2
        assert sorted(padded.members[0].edges) == sorted(h0.edges)
        added = padded.members[0].edges[-2:]
        assert list(added) == sorted(h0.edges[:2])

    def test_target_below_current(self, desk_family):
        with pytest.raises(CapacityError):
            pad_family(desk_family, [10, 1024], allow_duplicates=True)

    def test_capacity_exhausted_without_duplicates(self, desk_family):
        with pytest.raises(CapacityError):
            pad_family(desk_family, [1024, 1024], allow_duplicates=False)

    def test_needs_level_structure(self):
        f = HypergraphFamily(5, (Hypergraph.from_edges(5, [(0, 1)], 2),) * 2)
        with pytest.raises(ValueError, match="perfect"):
            pad_family(f, [2, 2], allow_duplicates=True)
