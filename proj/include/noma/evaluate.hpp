#pragma once

#include <optional>
#include <vector>

#include "noma/assignment.hpp"
#include "noma/beamforming.hpp"
#include "noma/channel.hpp"
#include "noma/collinearity.hpp"
#include "noma/power.hpp"

namespace noma {

// System-level knobs every clustering algorithm needs.
struct SystemConfig {
  int n_rf_chains = 5;
  std::vector<double> gamma_th_linear;  // cycled over users when shorter
  double noise_power_w = 1e-2;
  double p_max_w = 1.0;

  double gamma_for(int user) const {
    return gamma_th_linear[user % gamma_th_linear.size()];
  }
};

struct EvaluatedAssignment {
  ClusterAssignment assignment;  // members re-sorted into decoding order
  SinrModel model;
  std::vector<int> representatives;
  std::optional<BeamformerSet> beams;
  PowerSolution solution;
  bool ok = false;  // beams exist and the allocation fits the budget
};

// Full pipeline for a candidate clustering: pick representatives, zero-force
// on them, derive per-user (c, g), re-sort each cluster by descending c*g
// (decoding order), then solve the closed-form minimum power. Unresolvable
// representatives or a budget breach leave ok = false.
EvaluatedAssignment evaluate_assignment(const ChannelSet& channels,
                                        const CollinearityMatrix& c,
                                        ClusterAssignment assignment,
                                        const SystemConfig& sys);

}  // namespace noma
