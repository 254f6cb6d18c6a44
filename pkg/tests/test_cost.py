import math

import pytest
from hypothesis import given, settings, strategies as st

from autoeval import cost
from oracles import cp_oracle, g1_itemised, g2_itemised, nearest_depth

PRIMES = [2, 3, 5, 7, 11, 13]


class TestProductCosts:
    def test_frozen_values(self):
        assert cost.cp(2) == 1
        assert cost.cp(3) == 2
        assert cost.cp(7) == 4

    @pytest.mark.parametrize("p", PRIMES + [17, 31, 65521])
    def test_square_and_multiply(self, p):
        assert cost.cp(p) == cp_oracle(p)
        if p > 2:
            assert cost.cp(p) <= 2 * int(math.log2(p))

    def test_power_of_p(self):
        assert cost.cp_power(2, 3) == 3
        assert cost.cp_power(3, 0) == 0


class TestFormulas:
    def test_one_step(self):
        assert cost.m_step(3, 10) == 9
        assert cost.m_step(5, 100) == 87
        assert all(cost.m_step(2, n) == 1 + n // 2 for n in range(1, 500))
        with pytest.raises(ValueError):
            cost.m_step(3, 0)

    def test_first_method_values(self):
        assert cost.g1(3, 10, 1) == 9
        assert [cost.g1(2, 255, L) for L in range(1, 9)] == [128, 67, 40, 33, 42, 71, 134, 262]

    def test_second_method_values(self):
        assert cost.g2(2, 255, 3) == 51
        assert cost.g2(3, 100, 2) == 53
        assert all(cost.g2(2, n, L) == n // 2**L + 3 * 2**L - 4
                   for n in range(1, 400) for L in range(1, 8))

    def test_extension_values(self):
        assert cost.g2_ext(2, 4, 255, 4) == 318
        assert cost.g1_ext_firstmethod_bound(2, 2, 1000) == 129
        with pytest.raises(ValueError):
            cost.g2_ext(2, 1, 10, 1)

    def test_extension_bound_is_exact_ceiling(self):
        for p, s, n in [(2, 1, 4), (2, 3, 8), (3, 2, 50), (2, 2, 1000), (5, 1, 0)]:
            exact = 2 * s * (math.sqrt(n * (p - 1)) + 0.5)
            assert cost.g1_ext_firstmethod_bound(p, s, n) == math.ceil(exact - 1e-9)

    @given(st.sampled_from(PRIMES), st.integers(1, 10**5))
    def test_one_step_is_depth_one(self, p, n):
        assert cost.g1(p, n, 1) == cost.m_step(p, n)

    @settings(max_examples=300)
    @given(st.sampled_from(PRIMES), st.integers(1, 10**5), st.integers(1, 8))
    def test_formulas_match_itemised_schedules(self, p, n, L):
        if n // p**L < 1:
            return
        assert cost.g1(p, n, L) == g1_itemised(p, n, L)
        assert cost.g2(p, n, L) == g2_itemised(p, n, L, cost.cp(p))

    def test_bad_depth(self):
        with pytest.raises(ValueError):
            cost.g1(2, 10, 0)


class TestDepthSelection:
    def test_frozen_plans(self):
        plan = cost.lopt("m1", 2, 1, 255)
        assert (plan.L, plan.predicted_mul) == (4, 33)
        assert cost.lopt("m1", 3, 1, 10).L == 1
        assert cost.lopt("m1", 3, 1, 10).predicted_mul == 9
        plan = cost.lopt("m2", 2, 1, 255)
        assert (plan.L, plan.predicted_mul) == (3, 51)

    @settings(max_examples=400)
    @given(st.sampled_from(PRIMES), st.integers(2, 10**6))
    def test_first_method_window(self, p, n):
        if n < p:
            return
        plan = cost.lopt("m1", p, 1, n)
        ex = cost.exhaustive_argmin("m1", p, 1, n)
        assert plan.window[0] <= ex <= plan.window[1] and plan.L == ex
        assert ex in (nearest_depth(p, n), nearest_depth(p, n) - 1)

    @settings(max_examples=400)
    @given(st.sampled_from(PRIMES), st.integers(2, 10**6))
    def test_second_method_window(self, p, n):
        plan = cost.lopt("m2", p, 1, n)
        assert plan.L == cost.exhaustive_argmin("m2", p, 1, n)
        assert plan.window[1] - plan.window[0] <= 3

    @settings(max_examples=400)
    @given(st.sampled_from([(2, 2), (2, 3), (2, 4), (3, 2), (5, 2), (3, 3)]), st.integers(2, 10**6))
    def test_extension_window(self, ps, n):
        p, s = ps
        plan = cost.lopt("ext_m2", p, s, n)
        assert plan.L == cost.exhaustive_argmin("ext_m2", p, s, n)

    def test_ties_go_to_smaller_depth(self):
        # g1(2, n, L) ties between neighbouring depths at these degrees
        for n in range(2, 5000):
            plan = cost.lopt("m1", 2, 1, n)
            lo, hi = plan.window
            best = min(cost.g1(2, n, L) for L in range(lo, hi + 1))
            assert plan.L == min(L for L in range(lo, hi + 1) if cost.g1(2, n, L) == best)

    def test_plan_validation(self):
        with pytest.raises(ValueError):
            cost.EvalPlan("fast", 1, 1)
        with pytest.raises(ValueError):
            cost.EvalPlan("m1", 1, 1, (1, 6))

    def test_method_plans(self):
        assert cost.method_plan("horner", 3, 1, 10).predicted_mul == 10
        assert cost.method_plan("direct", 3, 1, 10).predicted_mul == 19
        assert cost.method_plan("ext_basis", 2, 4, 0).predicted_mul == 3
        assert cost.method_plan("m2", 2, 1, 0).predicted_mul == 0


class TestHornerComparison:
    def test_worked_example(self):
        cmp = cost.compare_horner(3, 1, 10)
        assert cmp.horner == 10 and cmp.best.predicted_mul == 9 and cmp.wins

    def test_no_strict_win_at_nine(self):
        assert cost.m_step(3, 9) == 9
        assert not cost.compare_horner(3, 1, 9).wins

    @pytest.mark.parametrize("p", PRIMES)
    def test_wins_past_breakeven(self, p):
        start = 2 * p * p - 3 * p
        for n in range(start + 1, start + 51):
            assert cost.compare_horner(p, 1, n).wins

    def test_best_plan_prefers_horner_below_p(self):
        assert cost.best_plan(7, 1, 5).method == "horner"
        assert cost.best_plan(3, 1, 10).method == "m1"


class TestAsymptotics:
    @pytest.mark.parametrize("p", [2, 3, 5])
    def test_first_method(self, p):
        n = 10**6
        r = cost.lopt("m1", p, 1, n).predicted_mul / (2 * math.sqrt(n * (p - 1)))
        assert 0.85 <= r <= 1.15

    @pytest.mark.parametrize("p", [2, 3, 5])
    def test_second_method(self, p):
        n, c = 10**6, cost.cp(p)
        r = cost.lopt("m2", p, 1, n).predicted_mul / (2 * math.sqrt(n * (p * c + p - 1)))
        assert 0.8 <= r <= 1.2

    @pytest.mark.parametrize("p,s", [(2, 2), (2, 4), (3, 2)])
    def test_extension(self, p, s):
        n, c = 10**6, cost.cp(p)
        ref = 2 * math.sqrt(n * (p**s - 1)) * math.sqrt(1 + cost.cp_power(p, s - 1) + c * p / (p - 1))
        r = cost.lopt("ext_m2", p, s, n).predicted_mul / ref
        assert 0.8 <= r <= 1.2
