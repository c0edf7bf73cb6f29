import math

import numpy as np
import pytest
from scipy.special import gammaln

from brenke_approx import (
    StancuParams,
    central_moments,
    derived_quantities,
    make_gould_hopper,
    make_miller_lee,
    make_szasz,
    moment_report,
    power_sums,
    raw_moments,
)
from brenke_approx.moments import NegativeVarianceError, rel_gap
from brenke_approx.series import eval_pi

NU0 = StancuParams()
NU12 = StancuParams(1.0, 2.0)
NU55 = StancuParams(0.5, 0.5)


class TestPowerSums:
    def test_szasz_at_one(self):
        ps = power_sums(make_szasz(), 1, 1.0)
        e = math.e
        assert ps.s0 == pytest.approx(e, rel=1e-14)
        assert ps.s1 == pytest.approx(e, rel=1e-14)
        assert ps.s2 == pytest.approx(2.0 * e, rel=1e-14)
        assert ps.rel_gap <= 1e-8

    def test_szasz_at_zero(self):
        ps = power_sums(make_szasz(), 4, 0.0)
        assert (ps.s0, ps.s1, ps.s2) == (1.0, 0.0, 0.0)

    def test_gould_hopper_at_zero(self, builtins):
        ps = power_sums(builtins["gould_hopper"], 1, 0.0)
        assert ps.s0 == pytest.approx(math.e, rel=1e-14)
        # oracle: sum of g_k(0, 1)/k! = sum over even k of 1/s!
        oracle = sum(1.0 / math.factorial(s) for s in range(40))
        assert ps.s0 == pytest.approx(oracle, rel=1e-14)

    def test_absolute_sums_match_table_at_small_nx(self, builtins):
        # unnormalized check: direct summation of pi_k(nx) from the table
        for key in ("szasz", "miller_lee"):
            fam = builtins[key]
            table = fam.table()
            n, x = 2, 1.5
            ps = power_sums(fam, n, x)
            ks = np.arange(120)
            pis = np.array([eval_pi(table, int(k), n * x) for k in ks])
            np.testing.assert_allclose(pis.sum(), ps.s0, rtol=1e-10)
            np.testing.assert_allclose((ks * pis).sum(), ps.s1, rtol=1e-10)
            np.testing.assert_allclose((ks * ks * pis).sum(), ps.s2, rtol=1e-10)

    def test_ratio_identity_against_summation(self, builtins, weight_cache):
        for key in builtins:
            for n in (1, 16, 256):
                for x in (0.25, 1.0, 4.0):
                    wv = weight_cache(key, n, x)
                    ps = power_sums(builtins[key], n, x, weight_vec=wv)
                    assert ps.rel_gap <= 1e-8, (key, n, x)


class TestRawMoments:
    def test_m0_is_exactly_one(self, builtins):
        for fam in builtins.values():
            for s in (NU0, NU12, NU55):
                m0, _, _ = raw_moments(fam, 7, 1.3, s)
                assert m0 == 1.0

    def test_szasz_closed_forms(self):
        sz = make_szasz()
        for n in (1, 10, 64):
            for x in (0.0, 0.5, 2.0):
                _, m1, m2 = raw_moments(sz, n, x, NU0)
                assert m1 == pytest.approx(x, abs=1e-15)
                assert m2 == pytest.approx(x * x + x / n, rel=1e-14, abs=1e-15)

    def test_miller_lee_first_moment(self):
        # m1 = x + (m+1)/n at nu = 0, checked against direct summation
        for m in (0.0, 2.0):
            ml = make_miller_lee(m)
            _, m1, _ = raw_moments(ml, 8, 1.0, NU0)
            assert m1 == pytest.approx(1.0 + (m + 1.0) / 8.0, rel=1e-13)

    def test_szasz_poisson_oracle(self):
        sz = make_szasz()
        n, x = 6, 1.25
        ks = np.arange(600, dtype=np.float64)
        w = np.exp(-n * x + ks * math.log(n * x) - gammaln(ks + 1.0))
        for s in (NU0, NU12):
            nodes = (ks + s.nu1) / (n + s.nu2)
            _, m1, m2 = raw_moments(sz, n, x, s)
            assert m1 == pytest.approx(float(np.dot(w, nodes)), abs=1e-12)
            assert m2 == pytest.approx(float(np.dot(w, nodes**2)), abs=1e-12)


class TestCentralMoments:
    def test_szasz_plain(self):
        sz = make_szasz()
        for n in (1, 8, 128):
            for x in (0.0, 1.0, 3.0):
                d1, d2 = central_moments(sz, n, x, NU0)
                assert d1 == pytest.approx(0.0, abs=1e-15)
                assert d2 == pytest.approx(x / n, rel=1e-13, abs=1e-15)

    def test_szasz_stancu_example(self):
        d1, d2 = central_moments(make_szasz(), 8, 1.0, NU12)
        assert d1 == pytest.approx(-0.1, abs=1e-14)
        # oracle: E[(K - 9)^2]/100 for K ~ Poisson(8) is (8 + 1)/100
        assert d2 == pytest.approx(0.09, abs=1e-14)

    def test_variance_shrinks_with_n(self, builtins):
        for fam in builtins.values():
            for s in (NU0, NU12):
                d2s = [central_moments(fam, n, 1.0, s)[1] for n in (1, 16, 256)]
                assert d2s[2] < d2s[1] < d2s[0]

    def test_recombination_identity_within_8_ulps(self, builtins):
        for fam in builtins.values():
            for s in (NU0, NU12, NU55):
                for n in (1, 32, 256):
                    for x in (0.0, 0.25, 2.0, 4.0):
                        _, m1, m2 = raw_moments(fam, n, x, s)
                        d1, d2 = central_moments(fam, n, x, s)
                        scale = max(1.0, x * x, abs(m2), 2.0 * x * abs(m1))
                        tol = 8 * np.spacing(scale)
                        assert abs(d1 - (m1 - x)) <= tol
                        assert abs(d2 - (m2 - 2 * x * m1 + x * x)) <= tol


class TestDerivedQuantities:
    def test_zero_case(self):
        assert derived_quantities(0.0, 0.0) == (0.0, 0.0, 0.0)

    def test_szasz_n4_x1(self):
        d1, d2 = central_moments(make_szasz(), 4, 1.0, NU0)
        delta, lam, mu = derived_quantities(d1, d2)
        assert delta == pytest.approx(0.5, rel=1e-14)
        assert lam == pytest.approx(0.125, rel=1e-14)
        assert mu == pytest.approx(0.03125, rel=1e-14)

    def test_plain_arithmetic(self):
        delta, lam, mu = derived_quantities(-0.1, 0.2)
        assert delta == pytest.approx(math.sqrt(0.2), rel=1e-15)
        assert lam == pytest.approx(0.05, rel=1e-13)
        assert mu == pytest.approx(0.02625, rel=1e-13)

    def test_noise_clamped_but_negative_variance_raises(self):
        delta, _, _ = derived_quantities(0.0, -1e-13)
        assert delta == 0.0
        with pytest.raises(NegativeVarianceError):
            derived_quantities(0.0, -1e-9)

    def test_delta_monotone_in_n(self, builtins):
        for fam in builtins.values():
            for x in (0.25, 1.0, 4.0):
                for n in (4, 16, 64):
                    d_n = derived_quantities(*central_moments(fam, n, x, NU0))[0]
                    d_4n = derived_quantities(*central_moments(fam, 4 * n, x, NU0))[0]
                    assert d_4n < d_n


class TestMomentReport:
    def test_closed_vs_summation_gap(self, builtins, weight_cache):
        for key in builtins:
            for s in (NU0, NU12, NU55):
                for n in (1, 16, 256):
                    for x in (0.0, 0.5, 2.0, 4.0):
                        wv = weight_cache(key, n, x)
                        rep = moment_report(builtins[key], n, x, s, weight_vec=wv)
                        assert rep.max_rel_gap <= 1e-8, (key, s, n, x)

    def test_report_fields(self, builtins):
        rep = moment_report(builtins["szasz"], 4, 1.0, NU0)
        assert rep.m0 == 1.0
        assert rep.m1 == pytest.approx(1.0, abs=1e-14)
        assert rep.d2 == pytest.approx(0.25, rel=1e-13)
        assert rep.delta_n == pytest.approx(0.5, rel=1e-13)
        assert rep.m1_sum == pytest.approx(1.0, abs=1e-10)
        assert rep.family == "szasz"

    def test_korovkin_trend_closed_form(self, builtins):
        # sup_x |m_i(n, x) - x^i| over [0, 2] must fall along n = 4, 16,
        # 64, 256; ties allowed only when the error is exactly zero
        xs = np.arange(0.0, 2.25, 0.25)
        for fam in builtins.values():
            for s in (NU0, NU12):
                for i in (1, 2):
                    sups = []
                    for n in (4, 16, 64, 256):
                        errs = [
                            abs(raw_moments(fam, n, float(x), s)[i] - float(x) ** i)
                            for x in xs
                        ]
                        sups.append(max(errs))
                    for prev, nxt in zip(sups, sups[1:]):
                        assert nxt < prev or (nxt == 0.0 and prev == 0.0), (
                            fam.name,
                            s,
                            i,
                            sups,
                        )


def test_rel_gap_regimes():
    assert rel_gap(1.0, 1.0 + 1e-9) == pytest.approx(1e-9, rel=1e-3)
    # below the floor the gap is measured absolutely, scaled by the floor
    assert rel_gap(1e-4, 1e-4 + 1e-12) == pytest.approx(1e-10, rel=1e-3)
