// SPDX-License-Identifier: Apache-2.0
//
// Antenna correlation models, DFT codebooks, combined beam maps and the
// beam-domain covariances seen after beam training.

#pragma once

#include <cstdint>
#include <vector>

#include "jamsense/numerics.hpp"

namespace jamsense {

/// Which DFT beams are used when fewer beams than antennas are trained.
enum class BeamSelection {
  First,     // columns 0..N-1 of the DFT matrix
  Centered,  // spatial frequencies -N/2..N/2-1 around broadside, ascending
};

/// Scenario parameters for one subband.  Powers are linear.
struct SystemConfig {
  int m_bs = 64;  // BS antennas
  int m_ue = 16;  // user antennas
  int m_jm = 16;  // jammer antennas (folded into the equivalent jammer channel)
  int users = 5;  // subbands, one user each
  int tau = 4;    // pilot length
  int n_bs = 64;  // BS codebook size used for training
  int n_ue = 16;  // user codebook size used for training

  double pilot_power = 1.0;    // p_t
  double jammer_power = 1.0;   // q_k
  double noise_variance = 1.0; // sigma^2

  double rho_bs = 0.0;
  double rho_ue = 0.0;
  double rho_jm = 0.0;

  double epsilon = 0.1;
  std::uint64_t seed = 1;
  BeamSelection beam_selection = BeamSelection::First;

  int beams() const { return n_bs * n_ue; }
  int unused_pilots() const { return tau - 1; }

  /// Sets all three correlation coefficients.
  void set_rho(double rho) { rho_bs = rho_ue = rho_jm = rho; }

  /// Throws ValidationError when any documented invariant is broken.
  void validate() const;
};

/// Columns are unit-norm beam vectors.
struct Codebook {
  CMatrix vectors;

  Index size() const { return vectors.cols(); }
  Index antennas() const { return vectors.rows(); }
  CVector beam(Index i) const { return vectors.col(i); }
};

struct BeamMaps {
  CMatrix user;  // M_BS*M_UE x N_b
  CMatrix jam;   // M_BS x N_b
};

struct ChannelStatistics {
  HermitianMatrix r_bs;       // BS-side correlation of the user channel
  HermitianMatrix r_ue;       // user-side correlation
  HermitianMatrix user;       // kron(r_ue, r_bs)
  HermitianMatrix jam;        // jammer channel correlation
  HermitianMatrix user_beam;  // U^H conj(R_user) U
  HermitianMatrix jam_beam;   // U_JM^H conj(R_jam) U_JM
  EigenDecomposition jam_beam_evd;
};

/// Exponential correlation model: entry (m, n) = rho^|m - n|.
HermitianMatrix exp_corr(int m, double rho);

/// M-point DFT codebook, f_{n,q} = exp(j 2 pi n q / M) / sqrt(M) with
/// zero-based n, q.
Codebook dft_codebook(int m);

/// Codebook whose first n columns are the selected beams; the remaining
/// columns follow in the same cyclic order.
Codebook select_beams(const Codebook& book, int n, BeamSelection selection);

/// Combined beam maps for the first n_bs BS beams and first n_ue user beams.
/// Column q * n_ue + p of `user` is kron(w_p, conj(w_RF,q)); column
/// q * n_ue + p of `jam` is conj(w_RF,q).  With these columns
/// U^H conj(h) reproduces the per-slot combined channel
/// conj(w_RF,q^H H w_p) of a beacon slot.
BeamMaps build_beam_maps(const SystemConfig& cfg, const Codebook& bs_book, const Codebook& ue_book);

/// Default maps: DFT codebooks sized by cfg.m_bs and cfg.m_ue, reordered by
/// cfg.beam_selection.
BeamMaps build_beam_maps(const SystemConfig& cfg);

ChannelStatistics build_statistics(const SystemConfig& cfg, const BeamMaps& maps);

struct ChannelRealization {
  CVector user;  // vec(H_k), length M_BS*M_UE, column-major
  CVector jam;   // length M_BS
};

/// Draws independent user and jammer channels.  The user channel is formed
/// as R_BS^{1/2} Z R_UE^{1/2} (matrix form), which has covariance
/// kron(R_UE, R_BS) for vec(H).
class ChannelSampler {
 public:
  explicit ChannelSampler(const ChannelStatistics& stats);

  ChannelRealization operator()(Rng& rng) const;
  CVector sample_jam(Rng& rng) const;

 private:
  CMatrix sqrt_bs_;
  CMatrix sqrt_ue_;
  CMatrix sqrt_jam_;
};

ChannelRealization sample_channels(const ChannelStatistics& stats, Rng& rng);

}  // namespace jamsense
