// SPDX-License-Identifier: Apache-2.0
//
// Pilot books, jamming pilots and the training observations collected during
// beam training.  Pilot index 0 (the first column) is the one the user sends;
// the remaining tau - 1 pilots are unused.

#pragma once

#include <vector>

#include "jamsense/channel.hpp"

namespace jamsense {

struct PilotBook {
  CMatrix phi;  // tau x tau, orthonormal columns

  int tau() const { return static_cast<int>(phi.cols()); }
};

struct JammingPilot {
  CVector psi;
};

struct InnerProducts {
  CVector alpha;      // alpha_i = phi_i^T conj(psi), length tau
  CVector alpha_bar;  // (alpha_2..alpha_tau) rotated so that alpha_bar(0) is real, >= 0

  /// |alpha_1|^2, the jammer leakage onto the used pilot.
  double used_leakage() const { return std::norm(alpha(0)); }
};

struct TrainingObservations {
  CVector used;    // N_b
  CMatrix unused;  // N_b x (tau - 1); column i holds the observation of unused pilot i + 2

  Index beams() const { return used.size(); }
  /// In-order concatenation of the unused-pilot observations.
  CVector stacked() const;
};

PilotBook make_pilot_book(int tau);

/// psi with i.i.d. CN(0, 1/tau) entries.
JammingPilot sample_jamming_pilot(int tau, Rng& rng);

InnerProducts inner_products(const PilotBook& book, const JammingPilot& psi);

/// Forms alpha_bar from a full alpha vector by removing the phase of alpha_2.
CVector rotate_unused(const CVector& alpha);

/// Projected noise for all pilots: an N_b x tau matrix whose column i is the
/// noise of pilot i.
CMatrix sample_projected_noise(const SystemConfig& cfg, Rng& rng);

/// Fast path: builds the projected observations directly from the beam maps.
TrainingObservations simulate_projected(const SystemConfig& cfg, const BeamMaps& maps,
                                        const InnerProducts& ip, const ChannelRealization& ch,
                                        bool jammer_present, const CMatrix& noise);

TrainingObservations simulate_projected(const SystemConfig& cfg, const BeamMaps& maps,
                                        const InnerProducts& ip, const ChannelRealization& ch,
                                        bool jammer_present, Rng& rng);

/// Unused-pilot observations only, given the beam-domain jammer channel
/// U_JM^H conj(h_JM).  Used by the detection Monte Carlo.
CMatrix simulate_unused(const SystemConfig& cfg, const CVector& alpha_unused,
                        const CVector& jam_beam_channel, bool jammer_present, Rng& rng);

/// Antenna-level receive noise: one M_BS x tau matrix per beacon slot, in slot
/// order (all user beams within BS cycle q, then the next cycle).
std::vector<CMatrix> sample_antenna_noise(const SystemConfig& cfg, Rng& rng);

/// Projects antenna-level noise exactly as the receiver does: per slot,
/// combine with w_RF,q, conjugate, and project onto each pilot.
CMatrix project_antenna_noise(const SystemConfig& cfg, const Codebook& bs_book,
                              const PilotBook& book, const std::vector<CMatrix>& noise);

/// Reference path: builds the received tau-sample sequence of every beacon
/// slot from the antenna-domain channels, applies the slot combiners and
/// projects onto each pilot.
TrainingObservations simulate_antenna_level(const SystemConfig& cfg, const Codebook& bs_book,
                                            const Codebook& ue_book, const PilotBook& book,
                                            const JammingPilot& psi, const ChannelRealization& ch,
                                            bool jammer_present,
                                            const std::vector<CMatrix>& noise);

TrainingObservations simulate_antenna_level(const SystemConfig& cfg, const Codebook& bs_book,
                                            const Codebook& ue_book, const PilotBook& book,
                                            const JammingPilot& psi, const ChannelRealization& ch,
                                            bool jammer_present, Rng& rng);

}  // namespace jamsense
