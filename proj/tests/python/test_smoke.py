import math

import pytest

import ekac


def test_omega_and_factoring():
    assert ekac.omega_range(1, 12) == [0, 1, 1, 1, 1, 2, 1, 1, 1, 2, 1, 2]
    assert ekac.omega_range(1400, 1400) == [3]
    assert ekac.factorize(1400) == [(2, 3), (5, 2), (7, 1)]
    m = (1 << 61) - 1
    assert ekac.is_prime(m)
    assert ekac.factorize(m * 1000003) == [(1000003, 1), (m, 1)]


def test_window():
    w = ekac.omega_window(514843556263457212366848, 50)
    assert w["lo"] == 514843556263457212366848 - 50
    assert len(w["counts"]) == 101
    assert w["mean"] == pytest.approx(sum(w["counts"]) / 101)


def test_scalars():
    assert ekac.mertens_sum(10) == pytest.approx(247 / 210, abs=1e-12)
    assert ekac.alpha(100) == pytest.approx(20.3988, abs=1e-4)
    assert ekac.normal_cdf(0.0) == 0.5
    with pytest.raises(ekac.DomainError):
        ekac.alpha(10)


def test_distributions():
    h = ekac.Distribution("harmonic", 10)
    assert h.n == 10
    assert sum(h.pmf(i) for i in range(1, 11)) == pytest.approx(1.0, abs=1e-15)
    assert ekac.partial_epsilon_sum(h, [2]) == pytest.approx(-0.1102154, abs=1e-7)
    z = ekac.Distribution("zipf", 2, 2.0)
    assert ekac.sup_distance(z, ekac.Distribution("harmonic", 2)) == pytest.approx(0.13333, abs=1e-5)
    with pytest.raises(ekac.DomainError):
        ekac.Distribution("zipf", 10, 1.0)
    c = ekac.Distribution.custom([0.25, 0.75])
    assert c.kind == "custom"
    assert h.sample(5, seed=3) == h.sample(5, seed=3)


def test_reports():
    reports = ekac.check(ekac.Distribution("harmonic", 10))
    six = [r for r in reports if r["constraint"] == "6"][0]
    assert six["status"] == "fail"
    assert six["lower_violations"] > 0
    u = ekac.infer_constants(ekac.Distribution("uniform", 1000))
    assert u["C_min"] == 0 and u["D_min"] == 0
    assert ekac.omega_mean(ekac.Distribution("uniform", 10)) == 1.1
    ks = ekac.ks_statistic(ekac.Distribution("uniform", 4))
    assert ks["ks"] == pytest.approx(0.6306, abs=1e-3)
    model = ekac.model_sn(100)
    assert model["b_n"] == pytest.approx(1.455478, abs=1e-6)
    gaps = ekac.moment_gaps(ekac.Distribution("uniform", 100), 1)
    assert gaps[1]["gap"] == pytest.approx(0.025478, abs=1e-6)
    gap = ekac.independence_gap(ekac.Distribution("uniform", 7), [2, 3])
    assert gap["gap"] == pytest.approx(1 / 49, abs=1e-15)
    assert math.isfinite(ekac.tail_sum(ekac.Distribution("harmonic", 1000))["value"])
