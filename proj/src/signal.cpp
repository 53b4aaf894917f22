// SPDX-License-Identifier: Apache-2.0

#include "jamsense/signal.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace jamsense {

CVector TrainingObservations::stacked() const {
  return Eigen::Map<const CVector>(unused.data(), unused.size());
}

PilotBook make_pilot_book(int tau) {
  if (tau < 2) throw ValidationError("make_pilot_book: tau must be at least 2");
  return PilotBook{dft_codebook(tau).vectors};
}

JammingPilot sample_jamming_pilot(int tau, Rng& rng) {
  if (tau < 1) throw ValidationError("sample_jamming_pilot: tau must be positive");
  return JammingPilot{standard_complex_normal(tau, rng) / std::sqrt(static_cast<double>(tau))};
}

CVector rotate_unused(const CVector& alpha) {
  if (alpha.size() < 2) throw ValidationError("rotate_unused: need at least two pilots");
  const CVector tail = alpha.tail(alpha.size() - 1);
  const double phase = std::arg(tail(0));
  CVector out = tail * std::polar(1.0, -phase);
  out(0) = std::abs(tail(0));
  return out;
}

InnerProducts inner_products(const PilotBook& book, const JammingPilot& psi) {
  if (psi.psi.size() != book.tau()) {
    throw ValidationError("inner_products: pilot length mismatch");
  }
  InnerProducts ip;
  ip.alpha = book.phi.transpose() * psi.psi.conjugate();
  ip.alpha_bar = rotate_unused(ip.alpha);
  return ip;
}

CMatrix sample_projected_noise(const SystemConfig& cfg, Rng& rng) {
  const Index nb = cfg.beams();
  const CVector z = standard_complex_normal(nb * cfg.tau, rng);
  return std::sqrt(cfg.noise_variance) * Eigen::Map<const CMatrix>(z.data(), nb, cfg.tau);
}

TrainingObservations simulate_projected(const SystemConfig& cfg, const BeamMaps& maps,
                                        const InnerProducts& ip, const ChannelRealization& ch,
                                        bool jammer_present, const CMatrix& noise) {
  const Index nb = cfg.beams();
  if (maps.user.cols() != nb || ip.alpha.size() != cfg.tau || noise.rows() != nb ||
      noise.cols() != cfg.tau || ch.user.size() != maps.user.rows() ||
      ch.jam.size() != maps.jam.rows()) {
    throw ValidationError("simulate_projected: dimension mismatch");
  }
  const double tau = cfg.tau;
  TrainingObservations obs;
  obs.used = std::sqrt(tau * cfg.pilot_power) * (maps.user.adjoint() * ch.user.conjugate()) +
             noise.col(0);
  obs.unused = noise.rightCols(cfg.tau - 1);
  if (jammer_present) {
    const CVector g = std::sqrt(tau * cfg.jammer_power) * (maps.jam.adjoint() * ch.jam.conjugate());
    obs.used += ip.alpha(0) * g;
    for (int i = 1; i < cfg.tau; ++i) obs.unused.col(i - 1) += ip.alpha(i) * g;
  }
  return obs;
}

TrainingObservations simulate_projected(const SystemConfig& cfg, const BeamMaps& maps,
                                        const InnerProducts& ip, const ChannelRealization& ch,
                                        bool jammer_present, Rng& rng) {
  return simulate_projected(cfg, maps, ip, ch, jammer_present, sample_projected_noise(cfg, rng));
}

CMatrix simulate_unused(const SystemConfig& cfg, const CVector& alpha_unused,
                        const CVector& jam_beam_channel, bool jammer_present, Rng& rng) {
  const Index nb = cfg.beams();
  if (alpha_unused.size() != cfg.tau - 1 || jam_beam_channel.size() != nb) {
    throw ValidationError("simulate_unused: dimension mismatch");
  }
  const CVector z = standard_complex_normal(nb * (cfg.tau - 1), rng);
  CMatrix y = std::sqrt(cfg.noise_variance) * Eigen::Map<const CMatrix>(z.data(), nb, cfg.tau - 1);
  if (jammer_present) {
    const double s = std::sqrt(cfg.tau * cfg.jammer_power);
    for (int i = 0; i < cfg.tau - 1; ++i) y.col(i) += (s * alpha_unused(i)) * jam_beam_channel;
  }
  return y;
}

std::vector<CMatrix> sample_antenna_noise(const SystemConfig& cfg, Rng& rng) {
  std::vector<CMatrix> out;
  out.reserve(cfg.beams());
  const double sd = std::sqrt(cfg.noise_variance);
  for (int slot = 0; slot < cfg.beams(); ++slot) {
    const CVector z = standard_complex_normal(static_cast<Index>(cfg.m_bs) * cfg.tau, rng);
    out.emplace_back(sd * Eigen::Map<const CMatrix>(z.data(), cfg.m_bs, cfg.tau));
  }
  return out;
}

CMatrix project_antenna_noise(const SystemConfig& cfg, const Codebook& bs_book,
                              const PilotBook& book, const std::vector<CMatrix>& noise) {
  if (static_cast<int>(noise.size()) != cfg.beams()) {
    throw ValidationError("project_antenna_noise: expected one noise matrix per beacon slot");
  }
  CMatrix out(cfg.beams(), cfg.tau);
  for (int q = 0; q < cfg.n_bs; ++q) {
    const CVector w = bs_book.vectors.col(q);
    for (int p = 0; p < cfg.n_ue; ++p) {
      const int slot = q * cfg.n_ue + p;
      // Combined noise row w^H N; the projection uses its conjugate.
      const CVector combined_conj = (w.adjoint() * noise[slot]).adjoint();
      out.row(slot) = (book.phi.transpose() * combined_conj).transpose();
    }
  }
  return out;
}

TrainingObservations simulate_antenna_level(const SystemConfig& cfg, const Codebook& bs_book,
                                            const Codebook& ue_book, const PilotBook& book,
                                            const JammingPilot& psi, const ChannelRealization& ch,
                                            bool jammer_present,
                                            const std::vector<CMatrix>& noise) {
  if (book.tau() != cfg.tau || psi.psi.size() != cfg.tau ||
      static_cast<int>(noise.size()) != cfg.beams() ||
      ch.user.size() != static_cast<Index>(cfg.m_bs) * cfg.m_ue || ch.jam.size() != cfg.m_bs) {
    throw ValidationError("simulate_antenna_level: dimension mismatch");
  }
  const double tau = cfg.tau;
  const Eigen::Map<const CMatrix> h(ch.user.data(), cfg.m_bs, cfg.m_ue);
  const CVector phi1 = book.phi.col(0);

  CMatrix projected(cfg.beams(), cfg.tau);
  for (int q = 0; q < cfg.n_bs; ++q) {
    const CVector w_rf = bs_book.vectors.col(q);
    for (int p = 0; p < cfg.n_ue; ++p) {
      const int slot = q * cfg.n_ue + p;
      const CVector w_ue = ue_book.vectors.col(p);
      // Antenna-domain received block for this slot: M_BS x tau.
      CMatrix rx = std::sqrt(tau * cfg.pilot_power) * (h * w_ue) * phi1.transpose() + noise[slot];
      if (jammer_present) {
        rx += std::sqrt(tau * cfg.jammer_power) * ch.jam * psi.psi.transpose();
      }
      // Received sequence y^T = w_RF^H rx; observation on pilot i is phi_i^T conj(y).
      const CVector y_conj = (w_rf.adjoint() * rx).adjoint();
      projected.row(slot) = (book.phi.transpose() * y_conj).transpose();
    }
  }
  TrainingObservations obs;
  obs.used = projected.col(0);
  obs.unused = projected.rightCols(cfg.tau - 1);
  return obs;
}

TrainingObservations simulate_antenna_level(const SystemConfig& cfg, const Codebook& bs_book,
                                            const Codebook& ue_book, const PilotBook& book,
                                            const JammingPilot& psi, const ChannelRealization& ch,
                                            bool jammer_present, Rng& rng) {
  return simulate_antenna_level(cfg, bs_book, ue_book, book, psi, ch, jammer_present,
                                sample_antenna_noise(cfg, rng));
}

}  // namespace jamsense
