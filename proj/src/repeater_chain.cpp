#include "droneqc/repeater_chain.hpp"

#include <unsupported/Eigen/KroneckerProduct>

#include <array>
#include <cmath>
#include <complex>

#include "droneqc/errors.hpp"

namespace droneqc::repeater {

namespace {

using Complex = std::complex<double>;

const std::array<PureState2q, 4>& bell_basis() {
  static const std::array<PureState2q, 4> basis = {
      bell_phi_plus(), bell_phi_minus(), bell_psi_plus(), bell_psi_minus()};
  return basis;
}

State1q pauli(int k) {
  State1q m = State1q::Zero();
  switch (k) {
    case 0: m << 1, 0, 0, 1; break;           // I
    case 1: m << 0, 1, 1, 0; break;           // X
    case 2: m << 0, Complex(0, -1), Complex(0, 1), 0; break;  // Y
    case 3: m << 1, 0, 0, -1; break;          // Z
  }
  return m;
}

// Pauli correction on the outer right-hand qubit per BSM outcome, chosen so
// ideal phi+ inputs always swap to phi+.
State1q swap_correction(int outcome) {
  switch (outcome) {
    case 0: return pauli(0);             // phi+ -> I
    case 1: return pauli(3);             // phi- -> Z
    case 2: return pauli(1);             // psi+ -> X
    default: return pauli(3) * pauli(1); // psi- -> ZX
  }
}

State2q apply_one_qubit(const State2q& rho, int qubit, const State1q& op) {
  State2q full;
  if (qubit == 0)
    full = Eigen::kroneckerProduct(op, State1q::Identity()).eval();
  else
    full = Eigen::kroneckerProduct(State1q::Identity(), op).eval();
  return full * rho * full.adjoint();
}

State2q kraus_mix_one_qubit(const State2q& rho, int qubit,
                            const std::vector<std::pair<double, State1q>>& ops) {
  State2q out = State2q::Zero();
  for (const auto& [weight, op] : ops)
    out += weight * apply_one_qubit(rho, qubit, op);
  return out;
}

int pick_outcome(const std::array<double, 4>& probs, SampleStream& rng) {
  const double u = rng.uniform();
  double acc = 0.0;
  for (int k = 0; k < 4; ++k) {
    acc += probs[k];
    if (u < acc) return k;
  }
  return 3;
}

}  // namespace

PureState2q bell_phi_plus() {
  PureState2q v;
  v << 1, 0, 0, 1;
  return v / std::sqrt(2.0);
}
PureState2q bell_phi_minus() {
  PureState2q v;
  v << 1, 0, 0, -1;
  return v / std::sqrt(2.0);
}
PureState2q bell_psi_plus() {
  PureState2q v;
  v << 0, 1, 1, 0;
  return v / std::sqrt(2.0);
}
PureState2q bell_psi_minus() {
  PureState2q v;
  v << 0, 1, -1, 0;
  return v / std::sqrt(2.0);
}

State2q bell_pair() {
  const PureState2q v = bell_phi_plus();
  return v * v.adjoint();
}

Qubit named_qubit(const std::string& name) {
  const double s = 1.0 / std::sqrt(2.0);
  Qubit q;
  if (name == "zero") q << 1, 0;
  else if (name == "one") q << 0, 1;
  else if (name == "plus") q << s, s;
  else if (name == "minus") q << s, -s;
  else if (name == "plus-i") q << s, Complex(0, s);
  else if (name == "minus-i") q << s, Complex(0, -s);
  else throw InvalidInputError("unknown qubit state '" + name + "'");
  return q;
}

void validate_state(const State2q& rho, double tol) {
  if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > tol)
    throw InvalidState("density operator is not Hermitian");
  if (std::abs(rho.trace().real() - 1.0) > tol ||
      std::abs(rho.trace().imag()) > tol)
    throw InvalidState("density operator trace is not 1");
  Eigen::SelfAdjointEigenSolver<State2q> eigs(rho);
  if (eigs.eigenvalues().minCoeff() < -tol)
    throw InvalidState("density operator is not positive semidefinite");
}

State2q depolarize_qubit(const State2q& rho, int qubit, double p) {
  if (!(p >= 0.0 && p <= 1.0))
    throw InvalidInputError("depolarizing probability outside [0, 1]");
  if (p == 0.0) return rho;
  std::vector<std::pair<double, State1q>> ops = {{1.0 - 3.0 * p / 4.0, pauli(0)},
                                                 {p / 4.0, pauli(1)},
                                                 {p / 4.0, pauli(2)},
                                                 {p / 4.0, pauli(3)}};
  return kraus_mix_one_qubit(rho, qubit, ops);
}

State2q dephase_qubit(const State2q& rho, int qubit, double p) {
  if (!(p >= 0.0 && p <= 1.0))
    throw InvalidInputError("dephasing probability outside [0, 1]");
  if (p == 0.0) return rho;
  std::vector<std::pair<double, State1q>> ops = {{1.0 - p / 2.0, pauli(0)},
                                                 {p / 2.0, pauli(3)}};
  return kraus_mix_one_qubit(rho, qubit, ops);
}

double fidelity(const State2q& rho, const PureState2q& reference) {
  if (std::abs(reference.squaredNorm() - 1.0) > 1e-10)
    throw NonNormalizedReference("two-qubit reference state is not normalized");
  return (reference.adjoint() * rho * reference)(0, 0).real();
}

double fidelity(const State1q& rho, const Qubit& reference) {
  if (std::abs(reference.squaredNorm() - 1.0) > 1e-10)
    throw NonNormalizedReference("qubit reference state is not normalized");
  return (reference.adjoint() * rho * reference)(0, 0).real();
}

double NoiseSpec::per_hop_depolarizing_p() const {
  switch (model) {
    case Model::kIdeal: return 0.0;
    case Model::kDepolarizing: return p;
    case Model::kTransmittanceDriven: return 1.0 - mean_eta;
  }
  return 0.0;
}

void NoiseSpec::validate() const {
  if (!(p >= 0.0 && p <= 1.0))
    throw InvalidTopology("noise probability outside [0, 1]");
  if (!(mean_eta >= 0.0 && mean_eta <= 1.0))
    throw InvalidTopology("mean transmittance outside [0, 1]");
  if (!(bsm_success >= 0.0 && bsm_success <= 1.0))
    throw InvalidTopology("BSM success probability outside [0, 1]");
}

void SwarmTopology::validate() const {
  if (n_repeaters < 0) throw InvalidTopology("repeater count must be >= 0");
  if (!(hop_length_km > 0.0)) throw InvalidTopology("hop length must be positive");
  if (!(classical_signal_speed_mps > 0.0))
    throw InvalidTopology("classical signal speed must be positive");
  per_hop_noise.validate();
}

SwapResult swap_once(const State2q& pair_left, const State2q& pair_right,
                     const BsmOutcomePolicy& policy, SampleStream& rng) {
  validate_state(pair_left);
  validate_state(pair_right);

  // Full four-qubit state in basis |a b c d> with the left pair on (a, b)
  // and the right pair on (c, d); the BSM acts on the middle pair (b, c).
  Eigen::Matrix<Complex, 16, 16> full =
      Eigen::kroneckerProduct(pair_left, pair_right);

  std::array<State2q, 4> post;
  std::array<double, 4> probs{};
  for (int k = 0; k < 4; ++k) {
    const PureState2q& beta = bell_basis()[k];
    State2q reduced = State2q::Zero();
    for (int a = 0; a < 2; ++a)
      for (int d = 0; d < 2; ++d)
        for (int a2 = 0; a2 < 2; ++a2)
          for (int d2 = 0; d2 < 2; ++d2) {
            Complex sum = 0.0;
            for (int b = 0; b < 2; ++b)
              for (int c = 0; c < 2; ++c)
                for (int b2 = 0; b2 < 2; ++b2)
                  for (int c2 = 0; c2 < 2; ++c2) {
                    const int row = a * 8 + b * 4 + c * 2 + d;
                    const int col = a2 * 8 + b2 * 4 + c2 * 2 + d2;
                    sum += std::conj(beta(b * 2 + c)) * beta(b2 * 2 + c2) *
                           full(row, col);
                  }
            reduced(a * 2 + d, a2 * 2 + d2) = sum;
          }
    probs[k] = reduced.trace().real();
    post[k] = reduced;
  }

  int outcome;
  if (policy.kind == BsmOutcomePolicy::Kind::kForced) {
    if (policy.forced_outcome < 0 || policy.forced_outcome > 3)
      throw InvalidInputError("forced BSM outcome must be in 0..3");
    outcome = policy.forced_outcome;
  } else {
    outcome = pick_outcome(probs, rng);
  }
  if (!(probs[outcome] > 0.0))
    throw InvalidState("BSM outcome has zero probability");

  SwapResult result;
  result.outcome = outcome;
  result.probability = probs[outcome];
  State2q normalized = post[outcome] / probs[outcome];
  result.state = apply_one_qubit(normalized, 1, swap_correction(outcome));
  return result;
}

namespace {

// Teleportation correction on Bob's qubit per Alice's Bell outcome, for a
// shared phi+ pair.
State1q teleport_correction(int outcome) {
  switch (outcome) {
    case 0: return pauli(0);
    case 1: return pauli(3);
    case 2: return pauli(1);
    default: return pauli(1) * pauli(3);
  }
}

}  // namespace

SimResult run_teleportation(const SwarmTopology& topology, const Qubit& input,
                            std::uint64_t seed, const RunOptions& opts) {
  topology.validate();
  if (std::abs(input.squaredNorm() - 1.0) > 1e-10)
    throw InvalidState("input qubit is not normalized");

  const int n = topology.n_repeaters;
  const double hop_m = topology.hop_length_km * 1000.0;
  const double hop_delay_ns =
      hop_m / topology.classical_signal_speed_mps * 1e9;
  const double span_delay_ns = (n + 1) * hop_delay_ns;
  const double p_hop = topology.per_hop_noise.per_hop_depolarizing_p();

  SampleStream rng(seed, 0xb5a2u);
  SimResult result;
  auto log = [&](double t, const std::string& node, const std::string& what) {
    if (opts.log_events) result.event_log.push_back({t, node, what});
  };
  auto node_name = [&](int i) {
    if (i == 0) return std::string("alice");
    if (i == n + 1) return std::string("bob");
    return "D" + std::to_string(i);
  };

  // Pairs become available at t_ready: immediately from memory, or after
  // one photon flight per hop when distributed in real time.
  const double t_ready = opts.preshared_entanglement ? 0.0 : hop_delay_ns;
  std::vector<State2q> pairs(n + 1);
  for (int hop = 0; hop <= n; ++hop) {
    pairs[hop] = depolarize_qubit(bell_pair(), 1, p_hop);
    log(t_ready, node_name(hop) + "-" + node_name(hop + 1),
        opts.preshared_entanglement ? "entangled pair from memory"
                                    : "entangled pair distributed");
  }
  double t = t_ready;

  auto dephased = [&](const State2q& rho, double wait_ns) {
    if (opts.memory_dephasing_t_ns <= 0.0 || wait_ns <= 0.0) return rho;
    const double p = 1.0 - std::exp(-wait_ns / opts.memory_dephasing_t_ns);
    return dephase_qubit(dephase_qubit(rho, 0, p), 1, p);
  };

  State2q chain = pairs[0];  // currently spans alice .. node 1
  double chain_age_start = t_ready;
  for (int i = 1; i <= n; ++i) {
    // Swap at D_i merges the chain (alice..D_i) with the hop pair
    // (D_i..node_{i+1}).
    if (topology.per_hop_noise.bsm_success < 1.0 &&
        rng.uniform() >= topology.per_hop_noise.bsm_success) {
      log(t, node_name(i), "bsm failed");
      result.success = false;
      result.fidelity = 0.0;
      result.elapsed_ns = t;
      return result;
    }
    const State2q right = dephased(pairs[i], t - t_ready);
    chain = dephased(chain, t - chain_age_start);
    const SwapResult swap = swap_once(chain, right, BsmOutcomePolicy::sample(), rng);
    log(t, node_name(i), "bsm outcome=" + std::to_string(swap.outcome));
    log(t, node_name(i), "classical message to " + node_name(i + 1));
    t += hop_delay_ns;
    log(t, node_name(i + 1), "pauli correction applied");
    chain = swap.state;
    chain_age_start = t;
  }

  // Alice measures her qubit together with the unknown input state.
  chain = dephased(chain, t - chain_age_start);
  Eigen::Matrix<Complex, 8, 8> joint = Eigen::kroneckerProduct(
      (input * input.adjoint()).eval(), chain);
  std::array<State1q, 4> bob_states;
  std::array<double, 4> probs{};
  for (int k = 0; k < 4; ++k) {
    const PureState2q& beta = bell_basis()[k];
    State1q reduced = State1q::Zero();
    for (int b = 0; b < 2; ++b)
      for (int b2 = 0; b2 < 2; ++b2) {
        Complex sum = 0.0;
        for (int m = 0; m < 2; ++m)
          for (int a = 0; a < 2; ++a)
            for (int m2 = 0; m2 < 2; ++m2)
              for (int a2 = 0; a2 < 2; ++a2)
                sum += std::conj(beta(m * 2 + a)) * beta(m2 * 2 + a2) *
                       joint(m * 4 + a * 2 + b, m2 * 4 + a2 * 2 + b2);
        reduced(b, b2) = sum;
      }
    probs[k] = reduced.trace().real();
    bob_states[k] = reduced;
  }
  const int outcome = pick_outcome(probs, rng);
  log(t, "alice", "teleport measurement outcome=" + std::to_string(outcome));
  log(t, "alice", "classical message to bob");
  t += span_delay_ns;

  const State1q corr = teleport_correction(outcome);
  State1q bob = bob_states[outcome] / probs[outcome];
  bob = (corr * bob * corr.adjoint()).eval();
  log(t, "bob", "pauli correction applied");

  result.fidelity = fidelity(bob, input);
  result.elapsed_ns = t;
  log(t, "bob", "teleportation complete");
  return result;
}

}  // namespace droneqc::repeater
