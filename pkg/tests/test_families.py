"""Family builders, the recognizer, and the closed-form type table."""

import pytest

from dualgraph.canonical import KType, k_type_report
from dualgraph.dgn import serialize_dgn
from dualgraph.errors import InvalidFamilyParams
from dualgraph.families import (
    FamilyInstance,
    NotInList,
    build_family,
    classify_family,
    classify_family_all,
    figure1_graph,
    figure1_spec,
    l_bound,
    predicted_k_type,
    trivial_threshold,
    validate_family,
)
from dualgraph.graphs import DualGraph, graph_d, isomorphic, signed_determinant
from dualgraph.twigs import adjoint, twig_determinant


def spec(family, **kw):
    return FamilyInstance(family=family, **kw)


class TestBuilders:
    def test_family_1_layout(self):
        g = build_family(spec(1, n=4))
        assert serialize_dgn(g) == "v 1 0 C\nv 2 -4\ne 1 2\n"
        assert graph_d(g) == -1

    def test_family_2_frozen_layout(self):
        g = build_family(spec(2, A=(3,), n=2))
        assert serialize_dgn(g) == (
            "v 1 -2\nv 2 -3\nv 3 -1 C\nv 4 -2\nv 5 -2\n"
            "e 1 2\ne 2 3\ne 3 4\ne 4 5\n"
        )

    def test_family_2_longer_twig_keeps_orientation(self):
        # chain (-n) a_1 .. a_r C a*_1 .. a*_t with a_r against C
        g = build_family(spec(2, A=(2, 3), n=2))
        order = sorted(g.vertex_ids)
        assert [g.weight(v) for v in order] == [-2, -2, -3, -1, -2, -3]
        assert g.c == 4
        assert graph_d(g) == -1

    def test_family_3_star_layout(self):
        g = build_family(spec(3, A=(2,), n=3, l=7))
        assert g.weight(1) == -2 and g.degree(1) == 3
        assert g.weight(g.c) == -1 and g.degree(g.c) == 1
        arm_weights = sorted(
            tuple(g.weight(v) for v in _arm(g, 1, nb)) for nb in g.neighbors(1)
        )
        assert arm_weights == sorted(
            [(-2,), (-2, -2, -2, -2, -2, -2, -2, -1), (-2, -3)]
        )

    def test_family_5_carries_tail_and_adjoint_stub(self):
        s = spec(5, A=(2, 2), n=2, l=1, b=(4,), m=1)
        g = build_family(s)
        w = next(
            v for v in g.vertex_ids if g.degree(v) == 3 and g.weight(v) == -3
        )
        assert g.has_edge(w, g.c)
        assert graph_d(g) == -1
        assert classify_family(g) == s

    def test_family_6_single_b_attaches_c_to_center(self):
        g = build_family(spec(6, A=(2,), n=2, b=(4,)))
        center = next(v for v in g.vertex_ids if g.degree(v) == 3)
        assert g.weight(center) == -4
        assert g.has_edge(center, g.c)

    def test_builders_are_deterministic(self):
        s = spec(7, A=(2, 3), n=2, b=(3,), m=2)
        assert build_family(s) == build_family(s)

    def test_all_families_hit_minus_one_determinant(self):
        cases = [
            spec(1, n=2),
            spec(2, A=(2, 2, 2), n=5),
            spec(3, A=(3, 2), n=2, l=0),
            spec(4, A=(2,), n=4, l=3, b=(5, 2)),
            spec(5, A=(2,), n=3, l=6, b=(3,), m=0),
            spec(6, A=(4,), n=2, b=(3, 3)),
            spec(7, A=(2, 2), n=2, b=(4, 2), m=3),
        ]
        for s in cases:
            g = build_family(s)
            assert graph_d(g) == -1, s
            assert signed_determinant(g) == (-1) ** (len(g) - 1), s


def _arm(g, center, first):
    ids = [first]
    prev, cur = center, first
    while g.degree(cur) == 2:
        cur, prev = next(x for x in g.adjacency[cur] if x != prev), cur
        ids.append(cur)
    return ids


class TestValidation:
    @pytest.mark.parametrize(
        "bad, message",
        [
            (dict(family=0, n=2), "family must be"),
            (dict(family=8, n=2), "family must be"),
            (dict(family=1, n=1), "n >= 2"),
            (dict(family=1, n=2, l=0), "does not take"),
            (dict(family=3, A=(2,), n=2), "requires field 'l'"),
            (dict(family=2, A=(), n=2), "nonempty admissible"),
            (dict(family=2, A=(2, 1), n=2), "nonempty admissible"),
            (dict(family=4, A=(2,), n=2, l=0, b=(2, 3)), "b_1 >= 3"),
            (dict(family=4, A=(2,), n=2, l=-1, b=(3,)), "l >= 0"),
            (dict(family=5, A=(2,), n=2, l=0, b=(3,), m=-1), "m >= 0"),
        ],
    )
    def test_rejections(self, bad, message):
        with pytest.raises(InvalidFamilyParams, match=message):
            validate_family(FamilyInstance(**bad))

    def test_l_bound_is_enforced_only_when_strict(self):
        s = spec(3, A=(2,), n=2, l=5)  # bound is 4
        with pytest.raises(InvalidFamilyParams, match="l out of range"):
            build_family(s)
        g = build_family(s, strict=False)
        assert len(g) == 10

    def test_l_bound_values(self):
        assert l_bound((2,), 2) == 4
        assert l_bound((2,), 3) == 8
        assert l_bound((3, 2), 2) == 5 * (2 * 5 - 2) - 2

    def test_trivial_threshold_values(self):
        assert trivial_threshold((2,), 2) == 5
        assert trivial_threshold((2,), 3) == 7
        assert trivial_threshold((2, 2), 2) == 3 * 3 - 2


class TestJson:
    def test_round_trip_all_fields(self):
        s = spec(5, A=(2, 3), n=2, l=1, b=(4,), m=0)
        d = s.to_json_dict()
        assert d == {"family": 5, "A": [2, 3], "n": 2, "l": 1, "b": [4], "m": 0}
        assert FamilyInstance.from_json_dict(d) == s

    def test_none_fields_are_omitted(self):
        assert spec(1, n=3).to_json_dict() == {"family": 1, "n": 3}

    @pytest.mark.parametrize(
        "doc, message",
        [
            ({"family": 1, "n": 2, "q": 1}, "unexpected field"),
            ({"n": 2}, "needs a 'family'"),
            ({"family": 1, "n": True}, "must be an integer"),
            ({"family": 2, "A": [2, "x"], "n": 2}, "list of integers"),
            ([1, 2], "JSON object"),
        ],
    )
    def test_malformed_docs(self, doc, message):
        with pytest.raises(InvalidFamilyParams, match=message):
            FamilyInstance.from_json_dict(doc)


class TestFigure1:
    def test_m0_matches_family_3_at_threshold(self):
        g = figure1_graph((2,), 0, 3)
        s = figure1_spec((2,), 0, 3)
        assert s == spec(3, A=(2,), n=3, l=7)
        assert isomorphic(g, build_family(s))

    def test_positive_m_matches_family_4(self):
        for m in (1, 2, 3):
            g = figure1_graph((2, 2), m, 2)
            s = figure1_spec((2, 2), m, 2)
            assert s.family == 4 and s.b == (m + 2,)
            assert isomorphic(g, build_family(s))

    def test_exclusion(self):
        with pytest.raises(InvalidFamilyParams, match="excluded"):
            figure1_graph((2,), 0, 2)

    def test_exclusion_boundary_neighbors_are_fine(self):
        figure1_graph((2,), 1, 2)
        figure1_graph((2,), 0, 3)
        figure1_graph((3,), 0, 2)

    def test_smallest_excluded_case_sits_exactly_on_the_bound(self):
        # for A=[2], n=2 the trivial run length equals the bound plus one,
        # while the m >= 1 variants sit exactly on it
        assert trivial_threshold((2,), 2) == l_bound((2,), 2) + 1

    def test_every_figure_instance_is_numerically_trivial(self):
        for a, m, n in [((2,), 0, 3), ((2,), 2, 2), ((3,), 0, 2), ((2, 2), 1, 2)]:
            kt, pairing = k_type_report(figure1_graph(a, m, n))
            assert kt is KType.NUMERICALLY_TRIVIAL
            assert pairing == 1


class TestPredictedType:
    def test_always_anti_families(self):
        assert predicted_k_type(spec(1, n=2)) is KType.ANTI_CANONICAL_AMPLE
        assert (
            predicted_k_type(spec(2, A=(3,), n=2)) is KType.ANTI_CANONICAL_AMPLE
        )
        assert (
            predicted_k_type(spec(6, A=(2,), n=2, b=(3,)))
            is KType.ANTI_CANONICAL_AMPLE
        )
        assert (
            predicted_k_type(spec(7, A=(2,), n=2, b=(3,), m=0))
            is KType.ANTI_CANONICAL_AMPLE
        )

    def test_family_3_splits_at_threshold(self):
        # A=[2], n=3: threshold 7, bound 8
        table = {6: KType.ANTI_CANONICAL_AMPLE, 7: KType.NUMERICALLY_TRIVIAL,
                 8: KType.CANONICAL_AMPLE}
        for l, want in table.items():
            assert predicted_k_type(spec(3, A=(2,), n=3, l=l)) is want

    def test_family_3_on_a_short_bound_never_goes_trivial(self):
        # A=[2], n=2: threshold 5 exceeds bound 4
        for l in range(0, 5):
            assert (
                predicted_k_type(spec(3, A=(2,), n=2, l=l))
                is KType.ANTI_CANONICAL_AMPLE
            )

    def test_family_4_trivial_needs_single_b(self):
        t = trivial_threshold((2,), 3)  # 7
        assert (
            predicted_k_type(spec(4, A=(2,), n=3, l=t - 1, b=(3,)))
            is KType.NUMERICALLY_TRIVIAL
        )
        assert (
            predicted_k_type(spec(4, A=(2,), n=3, l=t - 1, b=(3, 2)))
            is KType.CANONICAL_AMPLE
        )
        assert (
            predicted_k_type(spec(4, A=(2,), n=3, l=t - 2, b=(3,)))
            is KType.ANTI_CANONICAL_AMPLE
        )

    def test_family_5_never_trivial(self):
        t = trivial_threshold((2,), 3)
        assert (
            predicted_k_type(spec(5, A=(2,), n=3, l=t - 1, b=(3,), m=0))
            is KType.CANONICAL_AMPLE
        )
        assert (
            predicted_k_type(spec(5, A=(2,), n=3, l=t - 2, b=(3,), m=0))
            is KType.ANTI_CANONICAL_AMPLE
        )

    def test_frozen_canonical_example(self):
        s = spec(5, A=(2,), n=3, l=6, b=(3,), m=0)
        assert predicted_k_type(s) is KType.CANONICAL_AMPLE
        assert k_type_report(build_family(s))[0] is KType.CANONICAL_AMPLE


class TestClassifier:
    def test_round_trip_over_sampled_budget(self):
        import itertools

        twigs = [(2,), (3,), (2, 2), (2, 3), (3, 2), (4,), (2, 2, 2)]
        bees = [(3,), (4,), (3, 2), (5, 2)]
        checked = 0
        for a, n in itertools.product(twigs, (2, 3)):
            bound = l_bound(a, n)
            stream = [spec(2, A=a, n=n)]
            stream += [spec(3, A=a, n=n, l=l) for l in (0, 1, bound)]
            for b in bees:
                stream.append(spec(4, A=a, n=n, l=min(2, bound), b=b))
                stream.append(spec(5, A=a, n=n, l=min(1, bound), b=b, m=1))
                stream.append(spec(6, A=a, n=n, b=b))
                stream.append(spec(7, A=a, n=n, b=b, m=0))
            for s in stream:
                g = build_family(s)
                assert classify_family(g) == s, s
                assert graph_d(g) == -1, s
                checked += 1
        assert checked > 100

    def test_classification_is_structural_not_id_based(self):
        s = spec(4, A=(2, 2), n=2, l=1, b=(3,))
        g = build_family(s)
        mapping = {v: 100 - v for v in g.vertex_ids}
        relabeled = DualGraph(
            {mapping[v]: g.weight(v) for v in g.vertex_ids},
            [(mapping[u], mapping[v]) for u, v in g.edges],
            mapping[g.c],
        )
        assert classify_family(relabeled) == s

    def test_all_matches_contains_primary(self):
        s = spec(5, A=(2,), n=2, l=2, b=(3,), m=1)
        matches, reason = classify_family_all(build_family(s))
        assert s in matches and reason == ""
        assert matches == sorted(matches, key=lambda x: x.family)

    def test_too_small_chain_is_rejected_with_n_reason(self):
        g = DualGraph({1: 0, 2: -1}, [(1, 2)], c=1)
        assert classify_family(g) == NotInList("n >= 2 violated")

    def test_no_mark(self):
        g = DualGraph({1: -2, 2: -2}, [(1, 2)])
        assert classify_family(g) == NotInList("no C-marked vertex")

    def test_cycle_is_not_a_tree(self):
        g = DualGraph(
            {1: -1, 2: -2, 3: -2}, [(1, 2), (2, 3), (1, 3)], c=1
        )
        assert classify_family(g) == NotInList("not a tree")

    def test_wrong_c_weight_on_star(self):
        s = spec(3, A=(2,), n=2, l=1)
        g = build_family(s)
        ws = g.weights
        ws[g.c] = -2
        assert classify_family(DualGraph(ws, g.edges, g.c)) == NotInList(
            "C weight not -1"
        )

    def test_perturbed_adjoint_arm_is_reported(self):
        g = build_family(spec(6, A=(3,), n=2, b=(4, 2)))
        ws = g.weights
        # bend the far end of the arm hanging beyond C
        target = None
        for nb in g.neighbors(g.c):
            walked = _arm(g, g.c, nb)
            if g.degree(walked[-1]) == 1:
                target = walked[-1]
        assert target is not None
        ws[target] -= 1
        out = classify_family(DualGraph(ws, g.edges, g.c))
        assert out == NotInList("adjoint mismatch")

    def test_over_bound_run_is_out_of_range(self):
        s = spec(3, A=(2,), n=2, l=5)
        g = build_family(s, strict=False)
        out = classify_family(g)
        assert isinstance(out, NotInList)
        assert out.reason == "l out of range: 0 <= l <= 4, got 5"

    def test_four_armed_center_is_unrecognized(self):
        g = DualGraph(
            {1: -2, 2: -2, 3: -2, 4: -2, 5: -1},
            [(1, 2), (1, 3), (1, 4), (1, 5)],
            c=5,
        )
        assert classify_family(g) == NotInList("unrecognized shape")

    def test_figure1_classifies_to_its_spec(self):
        assert classify_family(figure1_graph((2,), 0, 3)) == figure1_spec(
            (2,), 0, 3
        )
        assert classify_family(figure1_graph((3,), 2, 2)) == figure1_spec(
            (3,), 2, 2
        )


class TestTypeAgreement:
    def test_predicted_matches_solver_on_spot_instances(self):
        cases = [
            spec(2, A=(2, 2), n=3),
            spec(3, A=(3,), n=2, l=2),
            spec(4, A=(2,), n=2, l=4, b=(3,)),
            spec(5, A=(2, 2), n=2, l=0, b=(4,), m=2),
            spec(6, A=(2,), n=4, b=(5,)),
            spec(7, A=(3,), n=2, b=(3, 2), m=1),
        ]
        for s in cases:
            got = k_type_report(build_family(s))[0]
            assert got is predicted_k_type(s), s
