#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "droneqc/constants.hpp"
#include "droneqc/rng.hpp"

namespace droneqc::repeater {

using Qubit = Eigen::Vector2cd;        // pure single-qubit state
using State1q = Eigen::Matrix2cd;      // single-qubit density operator
using State2q = Eigen::Matrix4cd;      // two-qubit density operator
using PureState2q = Eigen::Vector4cd;  // pure two-qubit state

/// Bell states in the |00>,|01>,|10>,|11> basis.
PureState2q bell_phi_plus();
PureState2q bell_phi_minus();
PureState2q bell_psi_plus();
PureState2q bell_psi_minus();

/// |phi+><phi+| as a density operator.
State2q bell_pair();

/// Named single-qubit states: zero, one, plus, minus, plus-i, minus-i.
Qubit named_qubit(const std::string& name);

/// Checks Hermiticity, unit trace and positive semidefiniteness within tol.
void validate_state(const State2q& rho, double tol = 1e-10);

/// Depolarizing channel with probability p on one qubit (0 or 1) of a pair.
State2q depolarize_qubit(const State2q& rho, int qubit, double p);

/// Dephasing channel with probability p on one qubit of a pair.
State2q dephase_qubit(const State2q& rho, int qubit, double p);

/// Fidelity <psi| rho |psi> against a pure two-qubit reference.
double fidelity(const State2q& rho, const PureState2q& reference);

/// Fidelity <psi| rho |psi> against a pure single-qubit reference.
double fidelity(const State1q& rho, const Qubit& reference);

/// Per-hop noise applied to each distributed entangled pair.
struct NoiseSpec {
  enum class Model { kIdeal, kDepolarizing, kTransmittanceDriven };
  Model model = Model::kIdeal;
  double p = 0.0;         // depolarizing probability per hop
  double mean_eta = 1.0;  // channel transmittance feeding the driven model
  double bsm_success = 1.0;

  /// Effective depolarizing probability: 0 (ideal), p, or 1 - mean_eta
  /// (transmittance-driven heuristic: lost transmittance becomes white
  /// noise).
  double per_hop_depolarizing_p() const;
  void validate() const;
};

/// Chain of n repeater drones between the two end stations; n + 1 hops of
/// equal length.
struct SwarmTopology {
  int n_repeaters = 0;
  double hop_length_km = 5.0;
  double classical_signal_speed_mps = kSpeedOfLight;
  NoiseSpec per_hop_noise;

  double total_span_km() const {
    return (n_repeaters + 1) * hop_length_km;
  }
  void validate() const;
};

struct BsmOutcomePolicy {
  enum class Kind { kSample, kForced };
  Kind kind = Kind::kSample;
  int forced_outcome = 0;  // 0..3 = phi+, phi-, psi+, psi-

  static BsmOutcomePolicy sample() { return {}; }
  static BsmOutcomePolicy forced(int outcome) {
    return {Kind::kForced, outcome};
  }
};

struct SwapResult {
  State2q state;       // post-swap, post-correction pair on the outer qubits
  int outcome = 0;     // Bell-measurement outcome
  double probability = 0.0;
};

/// Bell-state measurement on the middle qubits of two pairs (left = A-B,
/// right = C-D), followed by the outcome-dependent Pauli correction on D.
/// Ideal phi+ inputs give phi+ out for every outcome.
SwapResult swap_once(const State2q& pair_left, const State2q& pair_right,
                     const BsmOutcomePolicy& policy, SampleStream& rng);

struct Event {
  double time_ns = 0.0;
  std::string node;
  std::string what;
};

struct RunOptions {
  /// Pairs are loaded into the drone memories before the run (default); the
  /// alternative distributes them in real time, adding one photon flight
  /// per hop up front.
  bool preshared_entanglement = true;
  bool log_events = true;
  /// Exponential memory dephasing time constant in ns; 0 disables it.
  double memory_dephasing_t_ns = 0.0;
};

struct SimResult {
  double fidelity = 0.0;    // output state vs the input state
  double elapsed_ns = 0.0;  // completion time of Bob's final correction
  bool success = true;      // false when a probabilistic BSM failed
  std::vector<Event> event_log;
};

/// Teleport `input` from Alice to Bob through the repeater chain:
/// left-to-right entanglement swapping at D1..Dn, classical outcome
/// forwarding hop by hop, Alice's Bell measurement, and Bob's Pauli
/// correction after the classical message crosses the full span.
/// Deterministic for a fixed seed.
SimResult run_teleportation(const SwarmTopology& topology, const Qubit& input,
                            std::uint64_t seed, const RunOptions& opts = {});

}  // namespace droneqc::repeater
