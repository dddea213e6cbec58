"""Solver: augmentation loop, path search, flips, certificate extraction."""

from __future__ import annotations

from dataclasses import replace

import pytest

import reference
from bifactor import (AugmentState, Factor, Instance, InternalInvariantError,
                      brute_force_factor, emit_outcome, extract_certificate,
                      find_nice_path, flip_path, solve, verify_certificate,
                      verify_factor)
from bifactor.oracle import OracleBudget
from bifactor.solver import run_solver


def single_edge():
    return Instance(1, 1, {(0, 0): 1}, (1,), (1,), (1,))


def infeasible_pair():
    return Instance(2, 1, {(0, 0): 1, (1, 0): 1}, (1, 1), (1, 1), (1,))


class TestSolveExamples:
    def test_single_tight_edge(self):
        out = solve(single_edge())
        assert out.kind == "factor"
        assert out.factor.chosen == {(0, 0): 1}

    def test_infeasible_pair_certificate(self):
        out = solve(infeasible_pair())
        assert out.kind == "certificate"
        cert = out.certificate
        assert cert.a_set == frozenset({0, 1})
        assert cert.b_set == frozenset({0})
        assert cert.deficiency == 1
        assert verify_certificate(infeasible_pair(), cert).valid

    def test_multiplicity_three_picks_two(self):
        inst = Instance(1, 1, {(0, 0): 3}, (2,), (3,), (2,))
        out = solve(inst)
        assert out.factor.chosen == {(0, 0): 2}

    def test_no_lower_bounds_always_feasible(self, small_corpus):
        for inst in small_corpus[:150]:
            relaxed = replace(inst, g_x=(0,) * inst.x_count)
            out = solve(relaxed)
            assert out.kind == "factor"


class TestFindNicePath:
    def test_first_layer_endpoint(self):
        inst = single_edge()
        state = AugmentState.for_instance(inst)
        path = find_nice_path(inst, state)
        assert path.vertices == (0, 0)  # x0 then y0
        assert len(path.edge_ids) == 1

    def test_exhaustion_labels_reachable_sets(self):
        inst = infeasible_pair()
        state = AugmentState.for_instance(inst)
        first = find_nice_path(inst, state)
        flip_path(state, first)  # places one copy on (0, 0)
        assert state.factor.chosen == {(0, 0): 1}
        second = find_nice_path(inst, state)
        assert second is None
        assert list(state.reached_x) == [1, 1]
        assert list(state.reached_y) == [1]

    def test_requires_a_deficient_vertex(self):
        inst = Instance(1, 1, {(0, 0): 1}, (0,), (1,), (1,))
        state = AugmentState.for_instance(inst)
        with pytest.raises(ValueError):
            find_nice_path(inst, state)


class TestFlipPath:
    def test_length_one_flip(self):
        inst = single_edge()
        state = AugmentState.for_instance(inst)
        path = find_nice_path(inst, state)
        flip_path(state, path)
        assert state.factor.chosen == {(0, 0): 1}
        assert state.deg_f_x == [1] and state.deg_f_y == [1]
        assert not state.deficient
        assert state.deficiency_total == 0

    def test_length_two_flip_keeps_interior_degree(self):
        # y0 is saturated by x0's copy, so the search must pull it off x0:
        # path x1 -> y0 -> x0, ending at an X vertex above its lower bound.
        inst = Instance(2, 1, {(0, 0): 2, (1, 0): 1}, (0, 1), (2, 1), (1,))
        state = AugmentState.for_instance(inst, warm_start=True)
        assert state.factor.chosen == {(0, 0): 1}
        path = find_nice_path(inst, state)
        assert path.vertices == (1, 0, 0)
        flip_path(state, path)
        assert state.factor.chosen == {(1, 0): 1}
        assert state.deg_f_y == [1]  # interior vertex degree unchanged
        assert state.deg_f_x == [0, 1]
        assert state.deficiency_total == 0

    def test_intermediate_subgraph_respects_upper_bounds(self, small_corpus):
        zeros_ok = 0
        for inst in small_corpus[:200]:
            state = AugmentState.for_instance(inst)
            capped = replace(inst, g_x=(0,) * inst.x_count)
            while state.deficient:
                path = find_nice_path(inst, state)
                if path is None:
                    break
                flip_path(state, path)
                assert verify_factor(capped, state.factor).valid
                zeros_ok += 1
        assert zeros_ok > 100


class TestExtractCertificate:
    def test_canonical_pair(self):
        inst = infeasible_pair()
        state = AugmentState.for_instance(inst)
        flip_path(state, find_nice_path(inst, state))
        assert find_nice_path(inst, state) is None
        cert = extract_certificate(inst, state)
        assert (cert.a_set, cert.b_set, cert.deficiency) == \
            (frozenset({0, 1}), frozenset({0}), 1)

    def test_isolated_demanding_vertex_gives_empty_b(self):
        inst = Instance(1, 1, {}, (1,), (1,), (1,))
        out = solve(inst)
        cert = out.certificate
        assert cert.a_set == frozenset({0})
        assert cert.b_set == frozenset()
        assert cert.deficiency == 1
        assert verify_certificate(inst, cert).valid

    def test_sabotaged_state_aborts_loudly(self):
        inst = infeasible_pair()
        state = AugmentState.for_instance(inst)
        flip_path(state, find_nice_path(inst, state))
        assert find_nice_path(inst, state) is None
        state.deg_f_y[0] -= 1  # simulate bookkeeping drift
        with pytest.raises(InternalInvariantError):
            extract_certificate(inst, state)

    def test_requires_deficiency(self):
        inst = single_edge()
        state = AugmentState.for_instance(inst)
        flip_path(state, find_nice_path(inst, state))
        with pytest.raises(ValueError):
            extract_certificate(inst, state)


class TestSolverProperties:
    def test_oracle_equivalence_sample(self, small_corpus):
        budget = OracleBudget(10**8)
        for inst in small_corpus[:300]:
            out = solve(inst)
            found = brute_force_factor(inst, budget=budget)
            assert (out.factor is not None) == (found is not None)
            if out.factor is not None:
                assert verify_factor(inst, out.factor).valid
            else:
                assert verify_certificate(inst, out.certificate).valid

    def test_flip_count_bounded_by_total_demand(self, small_corpus):
        for inst in small_corpus[:300]:
            _, stats = run_solver(inst)
            assert stats.augmentations <= sum(inst.g_x)

    def test_instrumented_runs_stay_clean(self, small_corpus):
        for inst in small_corpus[:300]:
            run_solver(inst, check_invariants=True)

    def test_warm_start_never_changes_the_verdict(self, small_corpus):
        for inst in small_corpus[:300]:
            cold = solve(inst)
            warm = solve(inst, warm_start=True)
            assert cold.kind == warm.kind
            if warm.factor is not None:
                assert verify_factor(inst, warm.factor).valid
            else:
                assert verify_certificate(inst, warm.certificate).valid

    def test_deterministic_outcomes(self, small_corpus):
        for inst in small_corpus[:200]:
            first = emit_outcome(solve(inst))
            again = emit_outcome(solve(inst))
            assert first == again

    def test_unpruned_reference_agrees_on_micro_instances(self, small_corpus):
        checked = 0
        for inst in small_corpus:
            if checked >= 150 or inst.total_multiplicity() > 8:
                continue
            checked += 1
            expected = reference.unpruned_first(inst)
            out = solve(inst)
            assert (out.factor is not None) == (expected is not None)
        assert checked == 150
