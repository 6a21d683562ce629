// Copyright 2026 The Everettropy Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <vector>

#include "everettropy/spectral.hpp"
#include "everettropy/state.hpp"

namespace everettropy {

/// Information-carrying capacity log2 N - S(rho) in bits.
double i_max(const DensityState& state);

/// Permutation-coding experiment: message a (drawn from `prior`) is written
/// into the channel by permuting the channel's eigenbasis with code[a]; the
/// channel is then read out onto a blank record.
class ChannelExperiment {
 public:
  /// Throws ValidationError unless the prior is a distribution (within
  /// 1e-9), there is one bijective permutation of 0..N-1 per message, and the
  /// number of messages does not exceed N.
  ChannelExperiment(RealVector prior, DensityState channel, std::vector<Permutation> code);

  const RealVector& prior() const { return prior_; }
  const DensityState& channel() const { return channel_; }
  const std::vector<Permutation>& code() const { return code_; }
  std::size_t messages() const { return code_.size(); }

 private:
  RealVector prior_;
  DensityState channel_;
  std::vector<Permutation> code_;
};

RealVector uniform_prior(std::size_t messages);

struct ChannelResult {
  /// p(a, b): rows are messages, columns record values.
  RealMatrix joint;
  /// Record state for each message, sum_b p_{pi_a(b)} |b><b|.
  std::vector<DensityState> records;
  /// Channel eigenvalues p_b in the order used for coding.
  RealVector channel_spectrum;
};

/// Simulates the two premeasurements unitarily and returns the joint
/// distribution p(a, b) = prior(a) p_{pi_a(b)}.
ChannelResult run_permutation_code(const ChannelExperiment& experiment);

/// Mutual information in bits of a joint distribution. Throws
/// ValidationError for negative entries or a total off 1 by more than 1e-9.
double mutual_information(const RealMatrix& joint);

struct CapacityReport {
  RealMatrix joint;
  double mutual_information_bits = 0.0;
  double i_max_bits = 0.0;
  double gap = 0.0;  // i_max - mutual information
};

CapacityReport evaluate_capacity(const ChannelExperiment& experiment);

}  // namespace everettropy
