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

#include "everettropy/capacity.hpp"

#include <algorithm>
#include <cmath>

#include "everettropy/dynamics.hpp"
#include "everettropy/error.hpp"

namespace everettropy {
namespace {

Eigen::Index as_index(std::size_t n) { return static_cast<Eigen::Index>(n); }

}  // namespace

double i_max(const DensityState& state) {
  const double cap = std::log2(static_cast<double>(state.dim()));
  return std::clamp(cap - von_neumann_entropy(state), 0.0, cap);
}

ChannelExperiment::ChannelExperiment(RealVector prior, DensityState channel,
                                     std::vector<Permutation> code)
    : prior_(std::move(prior)), channel_(std::move(channel)), code_(std::move(code)) {
  const std::size_t n = channel_.dim();
  if (code_.empty()) throw ValidationError("code: at least one message is required");
  if (static_cast<std::size_t>(prior_.size()) != code_.size()) {
    throw ValidationError("prior: length " + std::to_string(prior_.size()) +
                          " does not match the number of code permutations " +
                          std::to_string(code_.size()));
  }
  if (code_.size() > n) {
    throw ValidationError("code: more messages than channel levels");
  }
  if (prior_.minCoeff() < 0.0 || std::abs(prior_.sum() - 1.0) > 1e-9) {
    throw ValidationError("prior: not a probability distribution");
  }
  for (std::size_t a = 0; a < code_.size(); ++a) {
    if (code_[a].size() != n || !is_bijection(code_[a])) {
      throw ValidationError("code[" + std::to_string(a) + "]: not a bijection of 0.." +
                            std::to_string(n - 1));
    }
  }
}

RealVector uniform_prior(std::size_t messages) {
  if (messages == 0) throw ValidationError("prior: at least one message is required");
  return RealVector::Constant(as_index(messages), 1.0 / static_cast<double>(messages));
}

ChannelResult run_permutation_code(const ChannelExperiment& experiment) {
  const DensityState& channel = experiment.channel();
  const std::size_t n = channel.dim();
  const EigenSystem eig = basis_ordered_eigen(channel.matrix());
  RealVector spectrum = eig.values.cwiseMax(0.0);
  spectrum /= spectrum.sum();

  // The message register sits in a basis state |a>, so the message-controlled
  // permutation acts on the channel as the single permutation for that a.
  const SystemLayout layout({{"channel", n}, {"record", n}});
  const Operator readout =
      perfect_measurement_unitary(layout, "channel", "record", eig.vectors);
  Matrix channel_diag = spectrum.cast<Complex>().asDiagonal();
  const Matrix channel_in_basis = eig.vectors * channel_diag * eig.vectors.adjoint();
  Vector blank = Vector::Zero(as_index(n));
  blank(0) = 1.0;
  const Matrix blank_rec = blank * blank.adjoint();

  ChannelResult out;
  out.channel_spectrum = spectrum;
  out.joint = RealMatrix::Zero(as_index(experiment.messages()), as_index(n));
  for (std::size_t a = 0; a < experiment.messages(); ++a) {
    // Moving the weight of eigenvector pi_a(b) onto eigenvector b needs the
    // basis permutation pi_a^{-1}.
    const Operator encode = permutation_unitary(single("channel", n), "channel",
                                                inverse(experiment.code()[a]), eig.vectors);
    const Matrix encoded = encode.matrix() * channel_in_basis * encode.matrix().adjoint();
    const Operator joint_in = tensor(Operator(single("channel", n), encoded),
                                     Operator(single("record", n), blank_rec));
    const Operator joint_out(layout, readout.matrix() * joint_in.matrix() *
                                         readout.matrix().adjoint());
    DensityState record = DensityState::from_operator(partial_trace(joint_out, {"record"}));
    for (std::size_t b = 0; b < n; ++b) {
      out.joint(as_index(a), as_index(b)) =
          experiment.prior()(as_index(a)) *
          std::max(0.0, record.matrix()(as_index(b), as_index(b)).real());
    }
    out.records.push_back(std::move(record));
  }
  return out;
}

double mutual_information(const RealMatrix& joint) {
  if (joint.size() == 0) throw ValidationError("joint: empty distribution");
  if (joint.minCoeff() < 0.0) throw ValidationError("joint: negative entry");
  if (std::abs(joint.sum() - 1.0) > 1e-9) {
    throw ValidationError("joint: entries sum to " + std::to_string(joint.sum()) + ", not 1");
  }
  const RealVector pa = joint.rowwise().sum();
  const RealVector pb = joint.colwise().sum().transpose();
  double mi = 0.0;
  for (Eigen::Index a = 0; a < joint.rows(); ++a) {
    for (Eigen::Index b = 0; b < joint.cols(); ++b) {
      const double p = joint(a, b);
      if (p > 0.0) mi += p * std::log2(p / (pa(a) * pb(b)));
    }
  }
  return std::max(mi, 0.0);
}

CapacityReport evaluate_capacity(const ChannelExperiment& experiment) {
  ChannelResult result = run_permutation_code(experiment);
  CapacityReport report;
  report.mutual_information_bits = mutual_information(result.joint);
  report.i_max_bits = i_max(experiment.channel());
  report.gap = report.i_max_bits - report.mutual_information_bits;
  report.joint = std::move(result.joint);
  return report;
}

}  // namespace everettropy
