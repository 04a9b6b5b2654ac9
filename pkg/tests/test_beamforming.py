import numpy as np
import pytest

from wynersim import beamforming as bf
from wynersim import channel as ch
from wynersim.errors import DegenerateChannel, RankDeficient, ShapeError

from oracles import align_phase


def _rand_cvec(rng, n):
    return rng.standard_normal(n) + 1j * rng.standard_normal(n)


def _symmetric(K, rho, alpha):
    return [ch.CellParams(rho_d=rho, alpha=alpha)] * K


class TestEbf:
    def test_aligned_channel(self):
        np.testing.assert_allclose(bf.ebf(np.array([1.0, 0.0j])),
                                   np.array([1.0, 0.0]), atol=1e-15)

    def test_matched_gain_equals_norm(self):
        h = np.array([0.0, 2.0j])
        assert abs(np.dot(h, bf.ebf(h))) == pytest.approx(2.0, rel=1e-12)

    def test_beats_random_search(self):
        rng = np.random.default_rng(5)
        h = _rand_cvec(rng, 4)
        best = abs(np.dot(h, bf.ebf(h))) ** 2
        u = rng.standard_normal((10000, 4)) + 1j * rng.standard_normal((10000, 4))
        u /= np.linalg.norm(u, axis=1, keepdims=True)
        assert best >= np.max(np.abs(u @ h) ** 2)

    def test_zero_channel(self):
        with pytest.raises(DegenerateChannel):
            bf.ebf(np.zeros(2, complex))


class TestZf:
    def test_already_orthogonal(self):
        f = bf.zf(np.array([1.0, 0.0j]), np.array([0.0j, 1.0]))
        np.testing.assert_allclose(f, np.array([1.0, 0.0]), atol=1e-12)

    def test_nulls_interference(self):
        rng = np.random.default_rng(8)
        for _ in range(20):
            h, g = _rand_cvec(rng, 2), _rand_cvec(rng, 2)
            f = bf.zf(h, g)
            assert abs(np.dot(g, f)) < 1e-10
            assert abs(np.dot(h, f)) > 0.0
            assert abs(np.linalg.norm(f) - 1.0) < 1e-12

    def test_matches_projection_oracle(self):
        rng = np.random.default_rng(9)
        for _ in range(20):
            h, g = _rand_cvec(rng, 4), _rand_cvec(rng, 4)
            f = bf.zf(h, g)
            gc = np.conj(g) / np.linalg.norm(g)
            proj = np.conj(h) - gc * (gc.conj() @ np.conj(h))
            proj /= np.linalg.norm(proj)
            np.testing.assert_allclose(f, align_phase(proj, f), atol=1e-10)

    def test_parallel_channels_rejected(self):
        h = np.array([1.0 + 1.0j, 2.0 - 0.5j])
        with pytest.raises(RankDeficient):
            bf.zf(h, 3.0j * h)


class TestGebf:
    def test_no_interference_equals_ebf(self):
        rng = np.random.default_rng(10)
        h, g = _rand_cvec(rng, 3), _rand_cvec(rng, 3)
        np.testing.assert_allclose(bf.gebf(h, g, 0.0), bf.ebf(h), atol=1e-12)

    def test_infinite_interference_approaches_zf(self):
        rng = np.random.default_rng(12)
        for _ in range(10):
            h, g = _rand_cvec(rng, 2), _rand_cvec(rng, 2)
            f = bf.gebf(h, g, 1e9)
            assert abs(np.dot(g, f)) <= 1e-4
            np.testing.assert_allclose(f, bf.zf(h, g), atol=1e-3)

    def test_quotient_beats_ebf_and_zf(self):
        rng = np.random.default_rng(13)
        for _ in range(50):
            h, g = _rand_cvec(rng, 2), _rand_cvec(rng, 2)
            rho = 10.0
            q = bf.rayleigh_quotient(bf.gebf(h, g, rho), h, g, rho)
            assert q >= bf.rayleigh_quotient(bf.ebf(h), h, g, rho) - 1e-12
            assert q >= bf.rayleigh_quotient(bf.zf(h, g), h, g, rho) - 1e-12


class TestSinr:
    def test_zero_interference_ebf(self):
        topo = ch.Topology(ch.CIRCULAR, 2)
        cs = ch.generate(topo, 2, 77)
        params = _symmetric(2, 10.0, 0.0)
        beams = bf.plan_full_csi(bf.EBF, cs, params, topo)
        rep = bf.sinr(cs, beams, params, topo)
        for k in range(2):
            assert rep.sinr[k] == pytest.approx(
                10.0 * np.linalg.norm(cs.h[k]) ** 2, rel=1e-12)

    def test_zf_interference_term_exactly_zero(self):
        topo = ch.Topology(ch.CIRCULAR, 2)
        cs = ch.generate(topo, 2, 78)
        params = _symmetric(2, 10.0, 1.0)
        beams = bf.plan_full_csi(bf.ZF, cs, params, topo)
        rep = bf.sinr(cs, beams, params, topo)
        for k in range(2):
            expect = 10.0 * abs(np.dot(cs.h[k], beams[k])) ** 2
            assert rep.sinr[k] == pytest.approx(expect, rel=1e-12)

    def test_matches_hand_expansion(self):
        topo = ch.Topology(ch.CIRCULAR, 2)
        cs = ch.generate(topo, 2, 79)
        params = [ch.CellParams(rho_d=5.0, alpha=0.4),
                  ch.CellParams(rho_d=20.0, alpha=0.9)]
        beams = bf.plan_full_csi(bf.GEBF, cs, params, topo)
        rep = bf.sinr(cs, beams, params, topo)
        for k in range(2):
            h, g, fk, fn = cs.h[k], cs.g[k], beams[k], beams[(k + 1) % 2]
            sig = abs(h[0] * fk[0] + h[1] * fk[1]) ** 2
            intf = params[k].alpha * abs(g[0] * fn[0] + g[1] * fn[1]) ** 2
            manual = sig / (intf + 1.0 / params[k].rho_d)
            assert rep.sinr[k] == pytest.approx(manual, rel=1e-12)

    def test_rate_relations(self):
        topo = ch.Topology(ch.CIRCULAR, 4)
        cs = ch.generate(topo, 4, 80)
        params = _symmetric(4, 10.0, 0.5)
        rep = bf.sinr(cs, bf.plan_full_csi(bf.GEBF, cs, params, topo), params, topo)
        assert np.all(rep.rate_exact >= 0.0)
        assert np.all(rep.rate_highsinr <= rep.rate_exact + 1e-12)
        assert rep.sum_exact == pytest.approx(np.sum(rep.rate_exact))

    def test_shape_mismatch(self):
        topo = ch.Topology(ch.CIRCULAR, 2)
        cs = ch.generate(topo, 2, 81)
        params = _symmetric(2, 10.0, 0.5)
        beams = bf.plan_full_csi(bf.EBF, cs, params, topo)
        with pytest.raises(ShapeError):
            bf.sinr(cs, beams[:1], params, topo)
        with pytest.raises(ShapeError):
            bf.sinr(cs, beams, params[:1], topo)


class TestPlanFullCsi:
    def test_circular_gebf_unrolls_to_pairwise_calls(self):
        topo = ch.Topology(ch.CIRCULAR, 2)
        cs = ch.generate(topo, 2, 90)
        params = [ch.CellParams(rho_d=10.0, alpha=0.3),
                  ch.CellParams(rho_d=10.0, alpha=0.8)]
        beams = bf.plan_full_csi(bf.GEBF, cs, params, topo)
        np.testing.assert_allclose(
            beams[0], bf.gebf(cs.h[0], cs.g[1], params[1].rho_i), atol=1e-14)
        np.testing.assert_allclose(
            beams[1], bf.gebf(cs.h[1], cs.g[0], params[0].rho_i), atol=1e-14)

    def test_ebf_independent_of_interference(self):
        topo = ch.Topology(ch.CIRCULAR, 3)
        cs = ch.generate(topo, 2, 91)
        params = _symmetric(3, 10.0, 1.0)
        beams = bf.plan_full_csi(bf.EBF, cs, params, topo)
        cs2 = ch.ChannelSet(h=cs.h, g=[2.0 * g for g in cs.g])
        beams2 = bf.plan_full_csi(bf.EBF, cs2, params, topo)
        for a, b in zip(beams, beams2):
            np.testing.assert_array_equal(a, b)

    def test_finite_array_edge_base_uses_ebf(self):
        topo = ch.Topology(ch.FINITE, 3)
        cs = ch.generate(topo, 2, 92)
        params = _symmetric(3, 10.0, 1.0)
        for strat in (bf.GEBF, bf.ZF):
            beams = bf.plan_full_csi(strat, cs, params, topo)
            np.testing.assert_allclose(beams[0], bf.ebf(cs.h[0]), atol=1e-14)


class TestStatisticalProperties:
    def test_zf_sum_rate_alpha_invariant(self):
        # interference is exactly nulled, so with shared channel draws the
        # per-trial sum-rates are identical across alpha
        topo = ch.Topology(ch.CIRCULAR, 2)
        for t in range(50):
            cs = ch.generate(topo, 2, (4000, t))
            rates = []
            for alpha in (0.001, 0.1, 1.0):
                params = _symmetric(2, 10.0, alpha)
                beams = bf.plan_full_csi(bf.ZF, cs, params, topo)
                rates.append(bf.sinr(cs, beams, params, topo).sum_exact)
            assert rates[0] == pytest.approx(rates[1], rel=1e-12)
            assert rates[0] == pytest.approx(rates[2], rel=1e-12)

    def test_gebf_dominates_in_expectation(self):
        topo = ch.Topology(ch.CIRCULAR, 2)
        params = _symmetric(2, 10.0, 1.0)
        sums = {s: 0.0 for s in (bf.GEBF, bf.EBF, bf.ZF)}
        trials = 800
        for t in range(trials):
            cs = ch.generate(topo, 2, (4100, t))
            for strat in sums:
                beams = bf.plan_full_csi(strat, cs, params, topo)
                sums[strat] += bf.sinr(cs, beams, params, topo).sum_exact
        assert sums[bf.GEBF] > sums[bf.EBF]
        assert sums[bf.GEBF] > sums[bf.ZF]

    def test_high_sinr_gap_shrinks_with_snr(self):
        topo = ch.Topology(ch.CIRCULAR, 4)
        gaps = []
        for rho_db in (0.0, 10.0, 20.0):
            params = _symmetric(4, 10.0 ** (rho_db / 10.0), 0.01)
            tot_e = tot_a = 0.0
            for t in range(400):
                cs = ch.generate(topo, 4, (4200, t))
                rep = bf.sinr(cs, bf.plan_full_csi(bf.GEBF, cs, params, topo),
                              params, topo)
                tot_e += rep.sum_exact
                tot_a += rep.sum_highsinr
            gaps.append((tot_e - tot_a) / tot_e)
        assert gaps[0] > gaps[1] > gaps[2] > 0.0
