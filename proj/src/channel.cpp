// SPDX-License-Identifier: Apache-2.0

#include "jamsense/channel.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace jamsense {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw ValidationError("SystemConfig: " + what);
}

bool in_unit_interval(double x) { return x >= 0.0 && x <= 1.0; }

}  // namespace

void SystemConfig::validate() const {
  require(m_bs >= 1 && m_ue >= 1 && m_jm >= 1, "antenna counts must be positive");
  require(users >= 1, "user count must be positive");
  require(tau >= 2, "tau must be at least 2, got " + std::to_string(tau));
  require(n_bs >= 1 && n_ue >= 1, "codebook sizes must be positive");
  require(n_bs <= m_bs, "n_bs exceeds the BS codebook size");
  require(n_ue <= m_ue, "n_ue exceeds the user codebook size");
  require(pilot_power >= 0.0 && jammer_power >= 0.0 && noise_variance >= 0.0,
          "powers must be non-negative");
  require(in_unit_interval(rho_bs) && in_unit_interval(rho_ue) && in_unit_interval(rho_jm),
          "correlation coefficients must lie in [0, 1]");
  require(in_unit_interval(epsilon), "epsilon must lie in [0, 1]");
}

HermitianMatrix exp_corr(int m, double rho) {
  if (!(rho >= 0.0 && rho <= 1.0)) {
    throw ValidationError("exp_corr: rho = " + std::to_string(rho) + " outside [0, 1]");
  }
  if (m < 1) throw ValidationError("exp_corr: dimension must be positive");
  CMatrix r(m, m);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) r(i, j) = std::pow(rho, std::abs(i - j));
  }
  return HermitianMatrix(std::move(r));
}

Codebook dft_codebook(int m) {
  if (m < 1) throw ValidationError("dft_codebook: size must be positive");
  Codebook book;
  book.vectors.resize(m, m);
  const double scale = 1.0 / std::sqrt(static_cast<double>(m));
  for (int n = 0; n < m; ++n) {
    for (int q = 0; q < m; ++q) {
      // Reduce the exponent modulo m so large products keep full precision.
      const double arg = 2.0 * std::numbers::pi * static_cast<double>((n * q) % m) / m;
      book.vectors(n, q) = scale * cplx(std::cos(arg), std::sin(arg));
    }
  }
  return book;
}

BeamMaps build_beam_maps(const SystemConfig& cfg, const Codebook& bs_book, const Codebook& ue_book) {
  if (bs_book.antennas() != cfg.m_bs || ue_book.antennas() != cfg.m_ue) {
    throw ValidationError("build_beam_maps: codebook antenna count does not match the config");
  }
  if (bs_book.size() < cfg.n_bs || ue_book.size() < cfg.n_ue) {
    throw ValidationError("build_beam_maps: codebook smaller than the requested beam count");
  }
  const Index nb = cfg.beams();
  BeamMaps maps;
  maps.user.resize(static_cast<Index>(cfg.m_bs) * cfg.m_ue, nb);
  maps.jam.resize(cfg.m_bs, nb);
  for (int q = 0; q < cfg.n_bs; ++q) {
    const CVector w_rf_conj = bs_book.vectors.col(q).conjugate();
    for (int p = 0; p < cfg.n_ue; ++p) {
      const Index col = static_cast<Index>(q) * cfg.n_ue + p;
      maps.user.col(col) = kron(ue_book.vectors.col(p), w_rf_conj);
      maps.jam.col(col) = w_rf_conj;
    }
  }
  return maps;
}

Codebook select_beams(const Codebook& book, int n, BeamSelection selection) {
  const int m = static_cast<int>(book.size());
  if (n < 1 || n > m) throw ValidationError("select_beams: beam count outside [1, codebook size]");
  if (selection == BeamSelection::First) return book;
  Codebook out;
  out.vectors.resize(book.antennas(), m);
  const int start = -(n / 2);
  for (int k = 0; k < m; ++k) {
    const int idx = ((start + k) % m + m) % m;
    out.vectors.col(k) = book.vectors.col(idx);
  }
  return out;
}

BeamMaps build_beam_maps(const SystemConfig& cfg) {
  return build_beam_maps(cfg, select_beams(dft_codebook(cfg.m_bs), cfg.n_bs, cfg.beam_selection),
                         select_beams(dft_codebook(cfg.m_ue), cfg.n_ue, cfg.beam_selection));
}

ChannelStatistics build_statistics(const SystemConfig& cfg, const BeamMaps& maps) {
  cfg.validate();
  const Index ant = static_cast<Index>(cfg.m_bs) * cfg.m_ue;
  if (maps.user.rows() != ant || maps.user.cols() != cfg.beams() || maps.jam.rows() != cfg.m_bs ||
      maps.jam.cols() != cfg.beams()) {
    throw ValidationError("build_statistics: beam maps do not match the config dimensions");
  }
  ChannelStatistics s;
  s.r_bs = exp_corr(cfg.m_bs, cfg.rho_bs);
  s.r_ue = exp_corr(cfg.m_ue, cfg.rho_ue);
  s.user = HermitianMatrix(kron(s.r_ue.matrix(), s.r_bs.matrix()));
  s.jam = exp_corr(cfg.m_bs, cfg.rho_jm);
  s.user_beam = HermitianMatrix(maps.user.adjoint() * (s.user.matrix().conjugate() * maps.user),
                                1e-9);
  s.jam_beam = HermitianMatrix(maps.jam.adjoint() * (s.jam.matrix().conjugate() * maps.jam), 1e-9);
  s.jam_beam_evd = hermitian_evd(s.jam_beam);
  return s;
}

ChannelSampler::ChannelSampler(const ChannelStatistics& stats)
    : sqrt_bs_(psd_sqrt(stats.r_bs).matrix()),
      sqrt_ue_(psd_sqrt(stats.r_ue).matrix()),
      sqrt_jam_(psd_sqrt(stats.jam).matrix()) {}

CVector ChannelSampler::sample_jam(Rng& rng) const {
  return sqrt_jam_ * standard_complex_normal(sqrt_jam_.cols(), rng);
}

ChannelRealization ChannelSampler::operator()(Rng& rng) const {
  const Index mb = sqrt_bs_.rows();
  const Index mu = sqrt_ue_.rows();
  const CVector z = standard_complex_normal(mb * mu, rng);
  const Eigen::Map<const CMatrix> zm(z.data(), mb, mu);
  // R_UE is real symmetric here, but transpose keeps the identity exact for
  // any Hermitian factor: vec(A Z B^T) = kron(B, A) vec(Z).
  const CMatrix h = sqrt_bs_ * zm * sqrt_ue_.transpose();
  ChannelRealization out;
  out.user = Eigen::Map<const CVector>(h.data(), mb * mu);
  out.jam = sample_jam(rng);
  return out;
}

ChannelRealization sample_channels(const ChannelStatistics& stats, Rng& rng) {
  return ChannelSampler(stats)(rng);
}

}  // namespace jamsense
