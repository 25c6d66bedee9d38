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

#ifndef IACLUSTER_ALIGNMENT_HPP
#define IACLUSTER_ALIGNMENT_HPP

#include "iacluster/channel.hpp"

#include <vector>

namespace iacluster
{

/// All channels inside one cluster. at(i, j) is the channel from transmitter j to receiver i.
class ClusterChannels
{
  public:
    ClusterChannels(int cbar, int n_r, int n_t);

    static ClusterChannels sample(int cbar, int n_r, int n_t, double mu, Rng& rng);

    int cbar() const { return cbar_; }
    int n_r() const { return n_r_; }
    int n_t() const { return n_t_; }

    const MimoChannel& at(int rx, int tx) const { return channels_[index(rx, tx)]; }
    MimoChannel& at(int rx, int tx) { return channels_[index(rx, tx)]; }

    /// Replaces one link. Throws DimensionError if the shape differs from the cluster's.
    void set(int rx, int tx, MimoChannel h);

  private:
    std::size_t index(int rx, int tx) const { return static_cast<std::size_t>(rx * cbar_ + tx); }

    int cbar_, n_r_, n_t_;
    std::vector<MimoChannel> channels_;
};

struct SolverOptions
{
    double tolerance = 1e-8;    // on total leakage
    int max_iterations = 5000;  // per attempt
    int max_restarts = 5;       // attempts after the first
    bool closed_form = false;   // eigenvector construction for cbar = 3, 2x2
    double rank_threshold = 1e-10;
};

struct AlignmentSolution
{
    std::vector<CVector> precoders; // v_i, unit norm, length N_T
    std::vector<CVector> combiners; // u_i, unit norm, length N_R
    double leakage = 0.0;           // sum over i != j of |u_i^H H_ij v_j|^2
    int iterations = 0;             // alternating sweeps of the successful attempt
    int restarts = 0;
    bool used_closed_form = false;
};

/// Alignment with one stream per pair is solvable (generically) iff N_R + N_T - 1 >= cbar.
bool is_feasible(int n_t, int n_r, int cbar);

/// Throws FeasibilityError when is_feasible is false.
void require_feasible(int n_t, int n_r, int cbar);

double total_leakage(const ClusterChannels& channels, const std::vector<CVector>& precoders,
                     const std::vector<CVector>& combiners);

/// Unit eigenvector of the smallest eigenvalue of a Hermitian matrix, phased so that its first
/// non-negligible component is real and positive.
CVector min_eigenvector(const CMatrix& hermitian);

/// Minimum-leakage alternating solver. Each sweep sets every combiner to the least-interfered
/// direction of its receiver, then does the same for the precoders in the reciprocal network.
/// If trace is given, the total leakage after every half sweep is appended to it.
///
/// Throws FeasibilityError for infeasible dimensions and ConvergenceError when every attempt
/// ends above tolerance.
AlignmentSolution solve_ia(const ClusterChannels& channels, const SolverOptions& options, Rng& rng,
                           std::vector<double>* trace = nullptr);

/// Closed-form alignment for three users with 2x2 channels. v_1 is an eigenvector of
/// H21^-1 H23 H13^-1 H12 H32^-1 H31; v_2 and v_3 follow by aligning at receivers 3 and 2.
/// Returns false if the construction is numerically unusable.
bool solve_ia_closed_form(const ClusterChannels& channels, AlignmentSolution& out);

/// Scalar u^H H v.
Complex effective_coefficient(const CVector& u, const MimoChannel& h, const CVector& v);

} // namespace iacluster

#endif
