// Copyright (c) 2026 The aeronav Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "aeronav/policy.hpp"

namespace aeronav {

/// One rollout step. `advantage` and `ret` are filled by generalized
/// advantage estimation before the update consumes the batch.
struct Transition {
  PooledObs obs;
  int action = 0;
  double log_prob = 0.0;  // behavior-policy log pi(a|s), <= 0
  double reward = 0.0;
  double value = 0.0;     // behavior-policy V(s)
  bool done = false;      // terminal transitions carry no bootstrap
  double advantage = 0.0;
  double ret = 0.0;
};

struct PpoConfig {
  double clip = 0.2;
  int epochs = 4;
  int minibatch = 64;
  double lr = 1e-3;
  double value_coeff = 0.5;
  double entropy_coeff = 0.01;
  double gamma = 0.99;
  double gae_lambda = 0.95;
  bool normalize_advantages = true;
};

struct LossReport {
  double policy_loss = 0.0;
  double value_loss = 0.0;
  double entropy = 0.0;
  double total = 0.0;
  double clip_fraction = 0.0;
};

struct PpoReport {
  std::vector<LossReport> epochs;
};

/// Per-tensor Adam over the flat parameter vector.
class Adam {
 public:
  Adam() = default;
  explicit Adam(std::int64_t n)
      : m_(Eigen::VectorXd::Zero(n)), v_(Eigen::VectorXd::Zero(n)) {}

  void step(Eigen::VectorXd& params, const Eigen::VectorXd& grad, double lr);

 private:
  Eigen::VectorXd m_, v_;
  long t_ = 0;
};

/// Fills advantage/ret over one contiguous episode-ordered sequence.
/// `last_value` bootstraps the final transition when it is not done.
void compute_gae(std::vector<Transition>& batch, double last_value, double gamma,
                 double gae_lambda);

/// Mean clipped-surrogate objective of the batch under `params`:
/// -min(rho*A, clip(rho)*A) + value_coeff*(V-R)^2 - entropy_coeff*H.
double surrogate_loss(const std::vector<Transition>& batch, const PolicyParams& params,
                      const PpoConfig& cfg);

/// Minibatched clipped-surrogate update (advantages must be precomputed).
/// Throws std::invalid_argument on an empty batch and std::runtime_error when
/// a loss turns non-finite.
PpoReport ppo_update(std::vector<Transition>& batch, PolicyParams& params,
                     const PpoConfig& cfg, Adam& opt, Rng& rng);

}  // namespace aeronav
