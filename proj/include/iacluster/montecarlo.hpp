// SPDX-License-Identifier: Apache-2.0
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef IACLUSTER_MONTECARLO_HPP
#define IACLUSTER_MONTECARLO_HPP

#include "iacluster/alignment.hpp"
#include "iacluster/analysis.hpp"
#include "iacluster/pointprocess.hpp"
#include "iacluster/rng.hpp"

#include <cstdint>

namespace iacluster
{

enum class LinkMode
{
    MimoIa, // reference cluster aligned, intra-cluster interference removed
    Siso,   // single antennas, no cooperation
};

enum class InterfererPrecoding
{
    Isotropic, // foreign transmitters use random unit precoders
    FullIa,    // every foreign cluster runs its own alignment
};

struct TrialConfig
{
    NetworkParams params;
    LinkMode mode = LinkMode::MimoIa;
    int n_t = 2;
    int n_r = 2;
    std::int64_t trials = 10000;
    std::uint64_t master_seed = 1;
    InterfererPrecoding interferer_precoding = InterfererPrecoding::Isotropic;
    double window_radius = 0.0; // 0 selects default_window_radius
    SolverOptions solver{.closed_form = true};
    unsigned threads = 0;       // 0 uses std::thread::hardware_concurrency

    /// Throws DomainError / FeasibilityError.
    void validate() const;

    int tx_antennas() const { return mode == LinkMode::Siso ? 1 : n_t; }
    int rx_antennas() const { return mode == LinkMode::Siso ? 1 : n_r; }
    double resolved_window_radius() const;
};

struct TrialOutcome
{
    double sir = 0.0;              // +inf when interference and noise are both zero
    bool success = false;
    double signal_power = 0.0;     // |h_ii|^2 g(d_ii)
    double fading_power = 0.0;     // |h_ii|^2 alone
    double inter_cluster = 0.0;    // interference from other clusters
    double intra_cluster = 0.0;    // interference from cluster mates (0 under alignment)
};

/// Per-trial random streams derived from (master_seed, trial_index, attempt).
struct TrialStreams
{
    Rng geometry;
    Rng fading;   // channels to the reference receiver from foreign transmitters
    Rng precoder; // foreign precoders (and their clusters' internal channels under FullIa)
    Rng cluster;  // channels inside the reference cluster and its alignment

    static TrialStreams make(std::uint64_t master_seed, std::uint64_t trial, std::uint64_t attempt = 0);
};

/// SIR of one realization. The reference receiver is at (d_ii, 0).
/// Throws ConvergenceError when alignment fails, DomainError when a transmitter sits on the
/// receiver.
TrialOutcome evaluate_trial(const TrialConfig& config, const PalmRealization& realization,
                            TrialStreams& streams);

/// Samples the realization from the geometry stream and evaluates it.
TrialOutcome run_trial(const TrialConfig& config, std::int64_t trial_index, std::uint64_t attempt = 0);

struct SuccessEstimate
{
    double p_hat = 0.0;
    std::int64_t trials = 0;
    double ci_half_width = 0.0; // 95 % normal approximation
    std::uint64_t seed = 0;
    std::int64_t resampled_trials = 0; // trials redrawn after an alignment failure
};

/// Fraction of successful trials. Independent of thread count and scheduling. Trials whose
/// alignment fails are redrawn with a fresh substream; more than 0.1 % of them raises RunError.
SuccessEstimate estimate_success(const TrialConfig& config);

double ci_half_width(double p_hat, std::int64_t trials);

} // namespace iacluster

#endif
