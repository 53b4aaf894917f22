// SPDX-License-Identifier: Apache-2.0
//
// Small fixtures shared by the unit tests.

#pragma once

#include "jamsense/channel.hpp"
#include "jamsense/numerics.hpp"

namespace jamsense::testing {

/// A scenario small enough for dense oracles and quick Monte Carlo.
inline SystemConfig small_config(int tau = 3, double rho = 0.5) {
  SystemConfig cfg;
  cfg.m_bs = 8;
  cfg.m_ue = 4;
  cfg.n_bs = 4;
  cfg.n_ue = 2;
  cfg.tau = tau;
  cfg.set_rho(rho);
  cfg.pilot_power = 2.0;
  cfg.jammer_power = 3.0;
  cfg.noise_variance = 0.7;
  return cfg;
}

/// Random Hermitian PSD matrix of the given rank.
inline HermitianMatrix random_psd(Index n, Index rank, Rng& rng) {
  CMatrix a(n, rank);
  for (Index j = 0; j < rank; ++j) a.col(j) = standard_complex_normal(n, rng);
  return HermitianMatrix(a * a.adjoint());
}

inline double max_abs(const CMatrix& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace jamsense::testing
