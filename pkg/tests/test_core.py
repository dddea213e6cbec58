"""Data model: validation, counting helpers, factor/certificate verification."""

from __future__ import annotations

import pytest

import reference
from bifactor import (Certificate, Factor, Instance, InvalidInstanceError,
                      edge_count, neighborhood, pair_deficiency,
                      validate_instance, verify_certificate, verify_factor)
from bifactor.core import MAX_TOTAL
from bifactor.generator import SplitMix64


def empty_instance():
    return Instance(1, 1, {}, (0,), (0,), (0,))


def infeasible_pair():
    # two X vertices demanding degree 1 through a single capacity-1 Y vertex
    return Instance(2, 1, {(0, 0): 1, (1, 0): 1}, (1, 1), (1, 1), (1,))


class TestValidateInstance:
    def test_empty_graph_is_valid(self):
        inst = empty_instance()
        assert validate_instance(inst) is inst

    def test_g_above_f_rejected(self):
        inst = Instance(1, 1, {}, (2,), (1,), (0,))
        with pytest.raises(InvalidInstanceError) as err:
            validate_instance(inst)
        assert any("g exceeds f at x=0" in v for v in err.value.violations)

    def test_zero_multiplicity_rejected(self):
        inst = Instance(1, 1, {(0, 0): 0}, (0,), (0,), (0,))
        with pytest.raises(InvalidInstanceError) as err:
            validate_instance(inst)
        assert any("zero multiplicity stored" in v for v in err.value.violations)

    def test_all_violations_reported_together(self):
        inst = Instance(1, 1, {(0, 0): 0, (5, 0): 1}, (2,), (1,), (-1,))
        with pytest.raises(InvalidInstanceError) as err:
            validate_instance(inst)
        text = "\n".join(err.value.violations)
        assert "zero multiplicity" in text
        assert "out of range" in text
        assert "g exceeds f" in text
        assert "negative f at y=0" in text

    def test_length_mismatch(self):
        inst = Instance(2, 1, {}, (0,), (0, 0), (0,))
        with pytest.raises(InvalidInstanceError) as err:
            validate_instance(inst)
        assert any("g_x has 1 entries, expected 2" in v for v in err.value.violations)

    def test_63_bit_cap(self):
        inst = Instance(1, 1, {(0, 0): MAX_TOTAL + 1}, (0,), (0,), (0,))
        with pytest.raises(InvalidInstanceError) as err:
            validate_instance(inst)
        assert any("63-bit cap" in v for v in err.value.violations)

    def test_nonpositive_counts(self):
        inst = Instance(0, 1, {}, (), (), (0,))
        with pytest.raises(InvalidInstanceError):
            validate_instance(inst)


class TestEdgeCount:
    def test_empty_subset(self):
        inst = Instance(1, 2, {(0, 0): 3}, (0,), (3,), (3, 3))
        assert edge_count(inst, 0, set()) == 0

    def test_single_edge(self):
        inst = Instance(1, 1, {(0, 0): 3}, (0,), (3,), (3,))
        assert edge_count(inst, 0, {0}) == 3

    def test_additive_over_disjoint_sets(self):
        inst = Instance(1, 2, {(0, 0): 2, (0, 1): 1}, (0,), (3,), (3, 3))
        assert edge_count(inst, 0, {0, 1}) == 3
        assert edge_count(inst, 0, {0}) + edge_count(inst, 0, {1}) == 3

    def test_out_of_range(self):
        inst = empty_instance()
        with pytest.raises(ValueError):
            edge_count(inst, 1, set())
        with pytest.raises(ValueError):
            edge_count(inst, 0, {7})

    def test_degree_identities_on_random_instances(self, small_corpus):
        rng = SplitMix64(7)
        for inst in small_corpus[:200]:
            all_y = set(range(inst.y_count))
            assert sum(edge_count(inst, x, all_y) for x in range(inst.x_count)) \
                == inst.total_multiplicity()
            assert sum(inst.degree_y(y) for y in range(inst.y_count)) \
                == inst.total_multiplicity()
            # splitting Y in two halves preserves the count
            for x in range(inst.x_count):
                left = {y for y in all_y if rng.below(2)}
                right = all_y - left
                assert edge_count(inst, x, left) + edge_count(inst, x, right) \
                    == edge_count(inst, x, all_y) == inst.degree(x)


class TestNeighborhood:
    def test_empty(self):
        assert neighborhood(infeasible_pair(), set()) == set()

    def test_direct(self):
        inst = Instance(1, 3, {(0, 1): 1, (0, 2): 4}, (0,), (9,), (9, 9, 9))
        assert neighborhood(inst, {0}) == {1, 2}

    def test_whole_side(self):
        inst = Instance(2, 3, {(0, 0): 1, (1, 2): 1}, (0, 0), (9, 9), (9, 9, 9))
        assert neighborhood(inst, {0, 1}) == {0, 2}


class TestVerifyFactor:
    def test_empty_factor_valid_when_no_lower_bounds(self):
        inst = Instance(2, 2, {(0, 0): 1}, (0, 0), (1, 1), (1, 1))
        assert verify_factor(inst, Factor({})).valid

    def test_capacity_violation(self):
        inst = Instance(1, 1, {(0, 0): 1}, (0,), (2,), (2,))
        report = verify_factor(inst, Factor({(0, 0): 2}))
        assert not report.valid
        assert any(v.kind == "capacity" and "capacity at (0,0)" in v.message
                   for v in report.violations)

    def test_tight_single_edge(self):
        inst = Instance(1, 1, {(0, 0): 1}, (1,), (1,), (1,))
        assert verify_factor(inst, Factor({(0, 0): 1})).valid

    def test_unknown_edge_is_structural(self):
        inst = Instance(1, 1, {}, (0,), (0,), (0,))
        report = verify_factor(inst, Factor({(0, 0): 1}))
        kinds = {v.kind for v in report.violations}
        assert kinds == {"structure"}

    def test_bound_violations_found(self):
        inst = Instance(1, 2, {(0, 0): 2, (0, 1): 2}, (1,), (2,), (1, 3))
        report = verify_factor(inst, Factor({(0, 0): 2, (0, 1): 1}))
        messages = [v.message for v in report.violations]
        assert any("upper bound at x=0" in m for m in messages)
        assert any("upper bound at y=0" in m for m in messages)

    def test_optional_lower_bounds_on_y(self):
        inst = Instance(1, 1, {(0, 0): 1}, (0,), (1,), (1,))
        assert verify_factor(inst, Factor({}), g_y=[0]).valid
        report = verify_factor(inst, Factor({}), g_y=[1])
        assert not report.valid
        assert any("lower bound at y=0" in v.message for v in report.violations)

    def test_shrinking_a_valid_factor_only_breaks_lower_bounds(self, small_corpus):
        from bifactor import solve
        rng = SplitMix64(99)
        checked = 0
        for inst in small_corpus:
            if checked >= 120:
                break
            out = solve(inst)
            if out.factor is None or not out.factor.chosen:
                continue
            checked += 1
            shrunk = dict(out.factor.chosen)
            pair = sorted(shrunk)[rng.below(len(shrunk))]
            shrunk[pair] -= 1
            if shrunk[pair] == 0:
                del shrunk[pair]
            report = verify_factor(inst, Factor(shrunk))
            assert all(v.kind == "lower-bound" for v in report.violations)
        assert checked == 120


class TestVerifyCertificate:
    def test_empty_a_is_never_valid(self):
        inst = infeasible_pair()
        report = verify_certificate(inst, Certificate(frozenset(), frozenset({0}), 1))
        assert not report.valid
        assert report.recomputed_deficiency == -1

    def test_canonical_infeasible_pair(self):
        inst = infeasible_pair()
        cert = Certificate(frozenset({0, 1}), frozenset({0}), 1)
        report = verify_certificate(inst, cert)
        assert report.valid
        assert report.recomputed_deficiency == 1

    def test_empty_b_on_same_instance_has_no_deficiency(self):
        inst = infeasible_pair()
        report = verify_certificate(inst, Certificate(frozenset({0, 1}), frozenset(), 0))
        assert not report.valid
        assert report.recomputed_deficiency == 0

    def test_stale_deficiency_rejected(self):
        inst = infeasible_pair()
        report = verify_certificate(inst, Certificate(frozenset({0, 1}), frozenset({0}), 2))
        assert not report.valid
        assert any("stale deficiency" in issue for issue in report.issues)

    def test_out_of_range_sets(self):
        inst = infeasible_pair()
        report = verify_certificate(inst, Certificate(frozenset({5}), frozenset(), 1))
        assert not report.valid
        assert any("out of range" in issue for issue in report.issues)

    def test_adding_starved_vertices_keeps_certificates_valid(self, small_corpus):
        rng = SplitMix64(321)
        grown = 0
        for inst in small_corpus:
            a = frozenset(x for x in range(inst.x_count) if rng.below(2))
            b = frozenset(y for y in range(inst.y_count) if rng.below(2))
            value = pair_deficiency(inst, a, b)
            if value < 1:
                continue
            assert verify_certificate(inst, Certificate(a, b, value)).valid
            outside_y = set(range(inst.y_count)) - b
            for x in range(inst.x_count):
                if x in a or inst.g_x[x] <= edge_count(inst, x, outside_y):
                    continue
                bigger = a | {x}
                new_val = pair_deficiency(inst, bigger, b)
                assert new_val >= value
                assert verify_certificate(inst, Certificate(bigger, b, new_val)).valid
                grown += 1
        # the corpus is big enough that enlargeable certificates do occur
        assert grown > 0


class TestPairDeficiency:
    def test_matches_literal_evaluation(self, small_corpus):
        rng = SplitMix64(123)
        for inst in small_corpus[:300]:
            a = {x for x in range(inst.x_count) if rng.below(2)}
            b = {y for y in range(inst.y_count) if rng.below(2)}
            assert pair_deficiency(inst, a, b) == \
                reference.direct_pair_deficiency(inst, a, b)
