// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <numbers>

#include "helpers.hpp"
#include "jamsense/channel.hpp"

using namespace jamsense;
using jamsense::testing::max_abs;
using jamsense::testing::small_config;

TEST_CASE("exponential correlation entries") {
  const HermitianMatrix r = exp_corr(4, 0.5);
  CHECK(r(0, 0).real() == 1.0);
  CHECK(r(0, 3).real() == doctest::Approx(0.125));
  CHECK(r(2, 1).real() == doctest::Approx(0.5));
  CHECK(max_abs(exp_corr(3, 0.0).matrix() - CMatrix::Identity(3, 3)) == 0.0);
  CHECK(max_abs(exp_corr(3, 1.0).matrix() - CMatrix::Ones(3, 3)) == 0.0);
  CHECK_THROWS_AS(exp_corr(3, 1.5), ValidationError);
}

TEST_CASE("DFT codebook is unitary with the expected phase") {
  const Codebook b = dft_codebook(8);
  CHECK(max_abs(b.vectors.adjoint() * b.vectors - CMatrix::Identity(8, 8)) < 1e-12);
  const double ang = 2.0 * std::numbers::pi * 3.0 * 5.0 / 8.0;
  CHECK(std::abs(b.vectors(3, 5) - std::polar(1.0 / std::sqrt(8.0), ang)) < 1e-14);
}

TEST_CASE("centred beam selection starts at -n/2") {
  const Codebook b = dft_codebook(8);
  const Codebook c = select_beams(b, 4, BeamSelection::Centered);
  CHECK(max_abs(c.vectors.col(0) - b.vectors.col(6)) == 0.0);
  CHECK(max_abs(c.vectors.col(2) - b.vectors.col(0)) == 0.0);
  CHECK(max_abs(c.vectors.col(3) - b.vectors.col(1)) == 0.0);
  CHECK(max_abs(select_beams(b, 4, BeamSelection::First).vectors - b.vectors) == 0.0);
  CHECK_THROWS_AS(select_beams(b, 9, BeamSelection::First), ValidationError);
}

TEST_CASE("beam maps reproduce the slot-combined channel") {
  const SystemConfig cfg = small_config();
  const Codebook bs = dft_codebook(cfg.m_bs), ue = dft_codebook(cfg.m_ue);
  const BeamMaps maps = build_beam_maps(cfg, bs, ue);
  REQUIRE(maps.user.cols() == cfg.beams());
  Rng rng(11);
  const CVector h = standard_complex_normal(cfg.m_bs * cfg.m_ue, rng);
  const Eigen::Map<const CMatrix> hm(h.data(), cfg.m_bs, cfg.m_ue);
  const CVector g = maps.user.adjoint() * h.conjugate();
  for (int q = 0; q < cfg.n_bs; ++q) {
    for (int p = 0; p < cfg.n_ue; ++p) {
      const cplx direct = (bs.vectors.col(q).adjoint() * hm * ue.vectors.col(p))(0, 0);
      CHECK(std::abs(g(q * cfg.n_ue + p) - std::conj(direct)) < 1e-12);
    }
  }
  const CVector hj = standard_complex_normal(cfg.m_bs, rng);
  const CVector gj = maps.jam.adjoint() * hj.conjugate();
  CHECK(std::abs(gj(1 * cfg.n_ue + 1) - std::conj(bs.vectors.col(1).dot(hj))) < 1e-12);
}

TEST_CASE("config validation") {
  SystemConfig cfg = small_config();
  CHECK_NOTHROW(cfg.validate());
  cfg.tau = 1;
  CHECK_THROWS_AS(cfg.validate(), ValidationError);
  cfg = small_config();
  cfg.n_bs = 9;
  CHECK_THROWS_AS(cfg.validate(), ValidationError);
  cfg = small_config();
  cfg.rho_ue = -0.1;
  CHECK_THROWS_AS(cfg.validate(), ValidationError);
}

TEST_CASE("beam-domain covariances match their definition") {
  const SystemConfig cfg = small_config();
  const BeamMaps maps = build_beam_maps(cfg);
  const ChannelStatistics s = build_statistics(cfg, maps);
  const CMatrix ru = kron(exp_corr(cfg.m_ue, cfg.rho_ue).matrix(), exp_corr(cfg.m_bs, cfg.rho_bs).matrix());
  CHECK(max_abs(s.user.matrix() - ru) == 0.0);
  const CMatrix kb = maps.user.adjoint() * ru.conjugate() * maps.user;
  CHECK(max_abs(s.user_beam.matrix() - kb) < 1e-12);
  CHECK(s.jam_beam_evd.eigenvalues.size() == cfg.beams());
  // Beams repeat across user beams within a BS cycle, so the jammer beam
  // covariance has rank at most n_bs.
  CHECK(s.jam_beam_evd.rank() <= cfg.n_bs);
}

TEST_CASE("sampled channels have the beam-domain covariance") {
  const SystemConfig cfg = small_config(3, 0.6);
  const BeamMaps maps = build_beam_maps(cfg);
  const ChannelStatistics s = build_statistics(cfg, maps);
  const ChannelSampler sampler(s);
  Rng rng(12);
  const int n = 100000;
  CMatrix uu = CMatrix::Zero(cfg.beams(), cfg.beams());
  CMatrix jj = CMatrix::Zero(cfg.beams(), cfg.beams());
  for (int i = 0; i < n; ++i) {
    const ChannelRealization c = sampler(rng);
    const CVector gu = maps.user.adjoint() * c.user.conjugate();
    const CVector gj = maps.jam.adjoint() * c.jam.conjugate();
    uu += gu * gu.adjoint();
    jj += gj * gj.adjoint();
  }
  uu /= n;
  jj /= n;
  CHECK(max_abs(uu - s.user_beam.matrix()) < 0.03 * s.user_beam.matrix().cwiseAbs().maxCoeff());
  CHECK(max_abs(jj - s.jam_beam.matrix()) < 0.03 * s.jam_beam.matrix().cwiseAbs().maxCoeff());
}
