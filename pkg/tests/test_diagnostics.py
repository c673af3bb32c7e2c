import numpy as np
import pytest

from powerindex import (
    CapRule,
    DegenerateComplementError,
    IdentifierMismatchError,
    LinearizedPowerRule,
    OrderViolation,
    PowerRule,
    cap_rebalance,
    compare_methods,
    concentration_metrics,
    diagnostics_report,
    find_order_violations,
    normalize,
    power_rebalance,
    turnover,
)

from helpers import random_simplex, wv

CAP1_MU = [0.20, 0.19, 0.18, 0.05] + [0.038] * 10
CAP2_MU = [0.046] + [0.018] * 53


def brute_force_violations(mu, eta):
    """Independent oracle: plain double loop over unordered pairs."""
    after = eta.as_dict()
    pairs = set()
    items = mu.entries
    for a in range(len(items)):
        for b in range(a + 1, len(items)):
            (id_a, mu_a), (id_b, mu_b) = items[a], items[b]
            if mu_a == mu_b:
                continue
            (id_lo, mu_lo), (id_hi, mu_hi) = (
                ((id_a, mu_a), (id_b, mu_b))
                if mu_a < mu_b
                else ((id_b, mu_b), (id_a, mu_a))
            )
            if after[id_lo] > after[id_hi]:
                pairs.add((id_lo, id_hi))
    return pairs


class TestFindOrderViolations:
    def test_power_rebalance_is_clean(self):
        mu = wv([0.7, 0.3])
        assert find_order_violations(mu, power_rebalance(mu, 0.5)) == []

    def test_identity_is_clean(self):
        mu = wv([0.4, 0.35, 0.25])
        assert find_order_violations(mu, mu) == []

    def test_cap_instance_flags_the_flipped_pairs(self):
        mu = wv(CAP1_MU)
        violations = find_order_violations(mu, cap_rebalance(mu))
        # The 0.05 name flipped below each of the ten 0.038 names.
        assert len(violations) == 10
        flipped = {(v.identifier_low, v.identifier_high) for v in violations}
        assert all(high == "C003" for _, high in flipped)
        sample = violations[0]
        assert sample.mu_low == pytest.approx(0.038, abs=1e-15)
        assert sample.mu_high == pytest.approx(0.05, abs=1e-15)
        assert sample.eta_low == pytest.approx(0.06, abs=1e-12)
        assert sample.eta_high == pytest.approx(0.05 * 0.40 / 0.62, abs=1e-12)

    def test_matches_brute_force_on_noisy_pairs(self):
        rng = np.random.default_rng(71)
        for _ in range(25):
            n = int(rng.integers(3, 40))
            mu_w = random_simplex(rng, n, ties=True)
            eta_w = normalize(np.abs(mu_w + rng.normal(0.0, 0.02, size=n)))
            mu, eta = wv(mu_w), wv(eta_w)
            got = {
                (v.identifier_low, v.identifier_high)
                for v in find_order_violations(mu, eta)
            }
            assert got == brute_force_violations(mu, eta)

    def test_alignment_is_by_identifier_not_position(self):
        mu = wv([0.7, 0.3], ids=("A", "B"))
        eta = wv([0.4, 0.6], ids=("B", "A"))
        assert find_order_violations(mu, eta) == []

    def test_tied_weights_are_never_violations(self):
        mu = wv([0.4, 0.3, 0.3])
        eta = wv([0.4, 0.29, 0.31])
        assert find_order_violations(mu, eta) == []

    def test_identifier_mismatch(self):
        with pytest.raises(IdentifierMismatchError):
            find_order_violations(
                wv([0.6, 0.4], ids=("A", "B")), wv([0.6, 0.4], ids=("A", "C"))
            )

    def test_violation_invariant_enforced(self):
        with pytest.raises(ValueError):
            OrderViolation("a", "b", mu_low=0.5, mu_high=0.4, eta_low=0.5, eta_high=0.4)


class TestTurnover:
    def test_zero_for_identity(self):
        mu = wv([0.7, 0.3])
        assert turnover(mu, mu) == 0.0

    def test_total_replacement(self):
        assert turnover(wv([1.0, 0.0]), wv([0.0, 1.0])) == pytest.approx(1.0, abs=0)

    def test_two_stock_power_half(self):
        mu = wv([0.7, 0.3])
        t = turnover(mu, power_rebalance(mu, 0.5))
        assert t == pytest.approx(0.09564392373895994, abs=1e-12)

    def test_symmetric(self):
        rng = np.random.default_rng(73)
        a = wv(random_simplex(rng, 30))
        b = wv(random_simplex(rng, 30))
        assert turnover(a, b) == turnover(b, a)

    def test_union_alignment_counts_full_weight(self):
        before = wv([0.6, 0.4], ids=("A", "B"))
        after = wv([0.6, 0.4], ids=("A", "C"))
        assert turnover(before, after) == pytest.approx(0.4, abs=1e-15)

    def test_bounds_and_triangle_inequality(self):
        rng = np.random.default_rng(79)
        for _ in range(30):
            n = int(rng.integers(2, 50))
            x = wv(random_simplex(rng, n))
            y = wv(random_simplex(rng, n))
            z = wv(random_simplex(rng, n))
            txy, tyz, txz = turnover(x, y), turnover(y, z), turnover(x, z)
            for t in (txy, tyz, txz):
                assert 0.0 <= t <= 1.0
            assert txz <= txy + tyz + 1e-12

    def test_nonincreasing_in_p_and_zero_at_one(self):
        rng = np.random.default_rng(83)
        for _ in range(10):
            mu = wv(random_simplex(rng, int(rng.integers(3, 80))))
            values = [
                turnover(mu, power_rebalance(mu, p))
                for p in np.linspace(0.0, 1.0, 21)
            ]
            assert all(b <= a + 1e-12 for a, b in zip(values, values[1:]))
            assert values[-1] <= 1e-15


class TestConcentrationMetrics:
    def test_equal_weights_hhi(self):
        for n in (2, 10, 100):
            metrics = concentration_metrics(wv([1.0 / n] * n))
            assert metrics.hhi == pytest.approx(1.0 / n, abs=1e-12)

    def test_single_stock_corner(self):
        metrics = concentration_metrics(wv([1.0, 0.0, 0.0]))
        assert metrics.hhi == pytest.approx(1.0, abs=0)
        assert metrics.diversity == pytest.approx(1.0, abs=1e-12)

    def test_two_stock_diversity(self):
        metrics = concentration_metrics(wv([0.7, 0.3]), reporting_p=0.5)
        assert metrics.diversity == pytest.approx(1.9165151389911679, abs=1e-12)

    def test_top_k_clamps_to_n(self):
        metrics = concentration_metrics(wv([0.5, 0.3, 0.2]))
        assert metrics.top_k_sums[10] == pytest.approx(1.0, abs=1e-12)
        assert metrics.top_k_sums[1] == pytest.approx(0.5, abs=1e-15)

    def test_diversity_at_least_one(self):
        rng = np.random.default_rng(89)
        for _ in range(20):
            metrics = concentration_metrics(
                wv(random_simplex(rng, int(rng.integers(2, 100))))
            )
            assert metrics.diversity >= 1.0

    def test_rejects_reporting_p_outside_unit_interval(self):
        for p in (0.0, 1.0, -0.5):
            with pytest.raises(ValueError, match="reporting_p"):
                concentration_metrics(wv([0.7, 0.3]), reporting_p=p)

    def test_hhi_weakly_decreases_under_power(self):
        rng = np.random.default_rng(97)
        for _ in range(20):
            mu = wv(random_simplex(rng, int(rng.integers(2, 100))))
            before = concentration_metrics(mu).hhi
            for p in (0.0, 0.3, 0.7, 0.95):
                after = concentration_metrics(power_rebalance(mu, p)).hhi
                assert after <= before + 1e-12

    def test_diversity_nondecreasing_under_power(self):
        rng = np.random.default_rng(101)
        for _ in range(20):
            mu = wv(random_simplex(rng, int(rng.integers(2, 100))))
            before = concentration_metrics(mu).diversity
            for p in (0.0, 0.3, 0.7, 0.95):
                after = concentration_metrics(power_rebalance(mu, p)).diversity
                assert after >= before - 1e-12


class TestDiagnosticsReport:
    def test_power_report_is_clean(self):
        mu = wv([0.7, 0.3])
        report = diagnostics_report(mu, power_rebalance(mu, 0.5))
        assert report.order_violations == []
        assert not report.max_increased
        assert not report.has_pathology
        assert report.max_before == pytest.approx(0.7, abs=0)
        assert report.max_after == pytest.approx(0.60435607626104, abs=1e-12)

    def test_cap_instance_two_reports_max_increase(self):
        mu = wv(CAP2_MU)
        report = diagnostics_report(mu, cap_rebalance(mu))
        assert report.max_increased
        assert report.has_pathology
        assert report.max_before == pytest.approx(0.046, abs=1e-15)
        assert report.max_after == pytest.approx(0.40, abs=1e-12)

    def test_max_increase_tolerance_boundary(self):
        mu = wv([0.5, 0.5])
        eta_above = wv([0.5 + 2e-12, 0.5 - 2e-12])
        eta_within = wv([0.5 + 5e-13, 0.5 - 5e-13])
        assert diagnostics_report(mu, eta_above).max_increased
        assert not diagnostics_report(mu, eta_within).max_increased

    def test_top_k_pairs(self):
        mu = wv(CAP1_MU)
        report = diagnostics_report(mu, cap_rebalance(mu))
        assert set(report.top_k_sums) == {1, 5, 6, 10}
        before_top1, after_top1 = report.top_k_sums[1]
        assert before_top1 == pytest.approx(0.20, abs=1e-15)
        assert after_top1 == pytest.approx(0.20 * 0.40 / 0.62, abs=1e-12)

    def test_report_across_different_universes(self):
        before = wv([0.6, 0.4], ids=("A", "B"))
        after = wv([0.2, 0.8], ids=("A", "C"))
        report = diagnostics_report(before, after)
        assert report.order_violations == []
        assert report.turnover == pytest.approx(0.5 * (0.4 + 0.4 + 0.8), abs=1e-15)
        assert report.max_increased


class TestCompareMethods:
    def test_two_stock_both_exponents(self):
        mu = wv([0.7, 0.3])
        results = compare_methods(mu, [PowerRule(0.5), PowerRule(0.75)])
        assert len(results) == 2
        (rule_a, rep_a), (rule_b, rep_b) = results
        assert rule_a.p == 0.5 and rule_b.p == 0.75
        assert rep_a.max_after == pytest.approx(0.60, abs=0.005)
        assert rep_b.max_after == pytest.approx(0.65, abs=0.005)
        assert rep_a.order_violations == []
        assert rep_b.order_violations == []

    def test_cap_pathology_instance(self):
        results = compare_methods(wv(CAP2_MU), [CapRule()])
        _, report = results[0]
        assert report.max_increased

    def test_empty_rule_list(self):
        assert compare_methods(wv([0.7, 0.3]), []) == []

    def test_error_carries_rule_position(self):
        mu = wv([0.5, 0.5])
        rules = [PowerRule(0.5), CapRule()]
        with pytest.raises(DegenerateComplementError, match=r"rule 1 \(CapRule\)"):
            compare_methods(mu, rules)

    def test_order_matches_input(self):
        mu = wv([0.7, 0.3])
        rules = [PowerRule(0.9), LinearizedPowerRule(0.5, 0.05), PowerRule(0.1)]
        results = compare_methods(mu, rules)
        assert [r for r, _ in results] == rules
