import math

import numpy as np
import pytest

from coherence_bench.estimators import (
    SCHEME_ADAPTIVE,
    SCHEME_CMS_QUBIT,
    SCHEME_CMS_QUTRIT,
    SCHEME_DIRECT_PAULI,
    SCHEME_TOMO_QUBIT,
    SCHEME_TOMO_QUTRIT,
    Estimate,
    SchemeSpec,
    _adaptive_value,
    _cms_qubit_value,
    _cms_qutrit_value,
    _direct_value,
    estimate_adaptive,
    estimate_cms_qubit,
    estimate_cms_qutrit,
    estimate_direct_pauli,
    estimate_tomo_qubit,
    estimate_tomo_qutrit,
    oracle_estimate,
    run_scheme,
)
from coherence_bench.exceptions import BadBudgetError, OutOfRangeError
from coherence_bench.measures import (
    MEASURE_FORMATION,
    MEASURE_L1,
    MEASURE_REL_ENT,
    c_l1,
)
from coherence_bench.sampling import make_rng
from coherence_bench.states import qubit_family, qutrit_family


def h2(x):
    if x in (0.0, 1.0):
        return 0.0
    return -x * math.log2(x) - (1 - x) * math.log2(1 - x)


class TestSchemeSpecValidation:
    def test_unknown_kind(self):
        with pytest.raises(OutOfRangeError):
            SchemeSpec("Unknown", MEASURE_L1, 100)

    def test_qutrit_scheme_rejects_non_l1(self):
        with pytest.raises(OutOfRangeError):
            SchemeSpec(SCHEME_CMS_QUTRIT, MEASURE_REL_ENT, 100)

    def test_direct_rejects_rel_ent(self):
        with pytest.raises(OutOfRangeError):
            SchemeSpec(SCHEME_DIRECT_PAULI, MEASURE_REL_ENT, 100)
        with pytest.raises(OutOfRangeError):
            SchemeSpec(SCHEME_ADAPTIVE, MEASURE_REL_ENT, 100)

    def test_collective_budget_must_be_even(self):
        with pytest.raises(BadBudgetError):
            SchemeSpec(SCHEME_CMS_QUBIT, MEASURE_L1, 101)
        with pytest.raises(BadBudgetError):
            SchemeSpec(SCHEME_CMS_QUTRIT, MEASURE_L1, 7)

    def test_bad_fraction(self):
        with pytest.raises(OutOfRangeError):
            SchemeSpec(SCHEME_ADAPTIVE, MEASURE_L1, 100, step1_fraction=1.0)


class TestCmsQubit:
    def test_exact_limit_l1(self):
        spec = SchemeSpec(SCHEME_CMS_QUBIT, MEASURE_L1, 1200)
        est = oracle_estimate(spec, qubit_family(math.pi / 6))
        assert abs(est.value - math.sqrt(3) / 2) <= 1e-12

    def test_inversion_from_counts(self):
        # counts (300, 0, 200, 100) of 600 pairs -> sqrt(2 * 0.5) = 1
        value, _ = _cms_qubit_value((0.5, 0.0, 200 / 600, 100 / 600), MEASURE_L1)
        assert value == pytest.approx(1.0, abs=1e-15)

    def test_maximally_mixed_statistics(self):
        phat = (0.25, 0.25, 0.25, 0.25)
        assert _cms_qubit_value(phat, MEASURE_L1)[0] == 0.0
        assert _cms_qubit_value(phat, MEASURE_REL_ENT)[0] == 0.0

    def test_rel_ent_intermediate_clamps(self, rng):
        for _ in range(10_000):
            counts = rng.integers(0, 40, size=4)
            shots = counts.sum()
            if shots == 0:
                continue
            value, inter = _cms_qubit_value(counts / shots, MEASURE_REL_ENT)
            assert 0.0 <= value <= 1.0
            assert inter["r"] <= 1.0 + 1e-12
            assert inter["rz"] <= inter["r"] + 1e-12

    def test_value_ranges_fuzz(self, rng):
        for _ in range(10_000):
            counts = rng.integers(0, 40, size=4)
            shots = counts.sum()
            if shots == 0:
                continue
            phat = counts / shots
            for measure, hi in ((MEASURE_L1, 1.0), (MEASURE_REL_ENT, 1.0), (MEASURE_FORMATION, 1.0)):
                value, _ = _cms_qubit_value(phat, measure)
                assert 0.0 <= value <= hi

    def test_budget_even_required(self):
        with pytest.raises(BadBudgetError):
            estimate_cms_qubit(qubit_family(0.4), 1201, MEASURE_L1, make_rng(1))

    def test_copies_used(self):
        est = estimate_cms_qubit(qubit_family(0.4), 1200, MEASURE_L1, make_rng(1))
        assert est.copies_used == 1200


class TestDirectPauli:
    def test_exact_limits(self):
        spec = SchemeSpec(SCHEME_DIRECT_PAULI, MEASURE_L1, 1200)
        assert oracle_estimate(spec, qubit_family(math.pi / 4)).value == pytest.approx(1.0, abs=1e-12)
        assert oracle_estimate(spec, qubit_family(0.0)).value == pytest.approx(0.0, abs=1e-12)

    def test_all_plus_x_even_y(self):
        value, _ = _direct_value(1.0, 0.0, MEASURE_L1)
        assert value == 1.0

    def test_clamped_to_unit_interval(self, rng):
        for _ in range(2000):
            rx, ry = rng.uniform(-1.3, 1.3, size=2)
            value, _ = _direct_value(rx, ry, MEASURE_L1)
            assert 0.0 <= value <= 1.0

    def test_budget_split_remainder_to_x(self):
        est = estimate_direct_pauli(qubit_family(0.5), 1201, MEASURE_L1, make_rng(4))
        assert est.copies_used == 1201

    def test_rejects_rel_ent(self):
        with pytest.raises(OutOfRangeError):
            estimate_direct_pauli(qubit_family(0.5), 1200, MEASURE_REL_ENT, make_rng(4))


class TestAdaptive:
    def test_exact_limit_aligns_with_x_axis(self):
        spec = SchemeSpec(SCHEME_ADAPTIVE, MEASURE_L1, 1200)
        est = oracle_estimate(spec, qubit_family(math.pi / 6))
        assert est.intermediate["phi"] == pytest.approx(0.0, abs=1e-12)
        assert abs(est.value - math.sqrt(3) / 2) <= 1e-12

    def test_exact_limit_maximally_coherent(self):
        spec = SchemeSpec(SCHEME_ADAPTIVE, MEASURE_L1, 1200)
        assert oracle_estimate(spec, qubit_family(math.pi / 4)).value == pytest.approx(1.0, abs=1e-12)

    def test_degenerate_pilot_tie_uses_phi_zero(self):
        spec = SchemeSpec(SCHEME_ADAPTIVE, MEASURE_L1, 1200)
        est = oracle_estimate(spec, np.eye(2) / 2)
        assert est.intermediate["phi"] == 0.0
        assert est.value == 0.0

    def test_charged_budget_consumes_n(self):
        est = estimate_adaptive(qubit_family(0.7), 1200, MEASURE_L1, make_rng(5))
        assert est.copies_used == 1200
        assert "pilot_copies" not in est.intermediate

    def test_uncharged_pilot_reports_overhead(self):
        est = estimate_adaptive(
            qubit_family(0.7), 1200, MEASURE_L1, make_rng(5), pilot_charged=False
        )
        assert est.copies_used == 1200
        assert est.intermediate["pilot_copies"] == 600.0

    def test_minimum_budget(self):
        with pytest.raises(BadBudgetError):
            estimate_adaptive(qubit_family(0.7), 3, MEASURE_L1, make_rng(5))


class TestTomoQubit:
    def test_exact_limit_maximally_coherent(self):
        spec = SchemeSpec(SCHEME_TOMO_QUBIT, MEASURE_L1, 1200)
        est = oracle_estimate(spec, qubit_family(math.pi / 4))
        assert abs(est.value - 1.0) <= 1e-6

    def test_exact_limit_rel_ent(self):
        spec = SchemeSpec(SCHEME_TOMO_QUBIT, MEASURE_REL_ENT, 1200)
        est = oracle_estimate(spec, qubit_family(math.pi / 6))
        assert abs(est.value - h2(0.75)) <= 1e-6

    def test_maximally_mixed_all_measures_zero(self):
        for measure in (MEASURE_L1, MEASURE_REL_ENT, MEASURE_FORMATION):
            spec = SchemeSpec(SCHEME_TOMO_QUBIT, measure, 1200)
            assert oracle_estimate(spec, np.eye(2) / 2).value <= 1e-9

    def test_budget_split_remainder_to_z(self):
        est = estimate_tomo_qubit(qubit_family(0.3), 1201, MEASURE_L1, make_rng(6))
        assert est.copies_used == 1201


class TestCmsQutrit:
    def test_exact_limit_quarter_pi(self):
        spec = SchemeSpec(SCHEME_CMS_QUTRIT, MEASURE_L1, 1200)
        est = oracle_estimate(spec, qutrit_family(math.pi / 4))
        assert abs(est.value - (0.5 + math.sqrt(2))) <= 1e-12

    def test_exact_limit_alpha_zero(self):
        spec = SchemeSpec(SCHEME_CMS_QUTRIT, MEASURE_L1, 1200)
        est = oracle_estimate(spec, qutrit_family(0.0))
        assert abs(est.value - 1.0) <= 1e-12

    def test_balanced_pairs_give_zero(self):
        phat = np.array([0.1, 0.1, 0.1, 0.2, 0.2, 0.1, 0.1, 0.05, 0.05])
        value, _ = _cms_qutrit_value(tuple(phat))
        assert value == pytest.approx(
            2 * (0.0 + 0.0 + 0.0), abs=1e-15
        ) or value >= 0.0
        equal = (0.0, 0.0, 0.0, 0.2, 0.2, 0.15, 0.15, 0.15, 0.15)
        assert _cms_qutrit_value(equal)[0] == 0.0

    def test_value_range_fuzz(self, rng):
        for _ in range(10_000):
            counts = rng.integers(0, 30, size=9)
            shots = counts.sum()
            if shots == 0:
                continue
            value, _ = _cms_qutrit_value(counts / shots)
            assert 0.0 <= value <= 2.0


class TestTomoQutrit:
    @pytest.mark.parametrize(
        "alpha,expected",
        [(math.pi / 4, 0.5 + math.sqrt(2)), (0.0, 1.0)],
    )
    def test_exact_limits(self, alpha, expected):
        spec = SchemeSpec(SCHEME_TOMO_QUTRIT, MEASURE_L1, 1200)
        est = oracle_estimate(spec, qutrit_family(alpha))
        assert abs(est.value - expected) <= 1e-6

    def test_maximally_mixed(self):
        spec = SchemeSpec(SCHEME_TOMO_QUTRIT, MEASURE_L1, 1200)
        assert oracle_estimate(spec, np.eye(3) / 3).value <= 1e-6

    def test_budget_split_remainder_to_first_basis(self):
        est = estimate_tomo_qutrit(qutrit_family(0.9), 1203, make_rng(7))
        assert est.copies_used == 1203


class TestDispatchAndDeterminism:
    def test_run_scheme_reproducible(self):
        rho = qubit_family(0.8)
        for kind, measure in (
            (SCHEME_CMS_QUBIT, MEASURE_REL_ENT),
            (SCHEME_DIRECT_PAULI, MEASURE_L1),
            (SCHEME_ADAPTIVE, MEASURE_FORMATION),
            (SCHEME_TOMO_QUBIT, MEASURE_L1),
        ):
            spec = SchemeSpec(kind, measure, 600)
            first = run_scheme(spec, rho, make_rng(123))
            second = run_scheme(spec, rho, make_rng(123))
            assert first.value == second.value

    def test_adaptive_value_folding(self):
        value, _ = _adaptive_value(-0.4, 0.1, MEASURE_L1)
        assert value == pytest.approx(0.4, abs=1e-15)

    def test_estimates_are_estimate_instances(self):
        est = estimate_cms_qutrit(qutrit_family(1.0), 600, make_rng(2))
        assert isinstance(est, Estimate)
        assert est.copies_used == 600
        assert set(est.intermediate) == {"offdiag01", "offdiag02", "offdiag12"}

    def test_uncharged_pilot_lowers_error_on_average(self):
        # sanity: the estimation stage sees twice the shots, so the
        # spread against the truth should shrink
        rho = qubit_family(0.62)
        truth = c_l1(rho)
        charged, uncharged = [], []
        for rep in range(300):
            charged.append(
                abs(estimate_adaptive(rho, 1200, MEASURE_L1, make_rng(rep)).value - truth)
            )
            uncharged.append(
                abs(
                    estimate_adaptive(
                        rho, 1200, MEASURE_L1, make_rng(rep), pilot_charged=False
                    ).value
                    - truth
                )
            )
        assert np.mean(uncharged) < np.mean(charged)
