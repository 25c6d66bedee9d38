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

#ifndef IACLUSTER_CHANNEL_HPP
#define IACLUSTER_CHANNEL_HPP

#include "iacluster/rng.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <complex>

namespace iacluster
{

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

/// Power-law path loss g(d) = d^-alpha.
class PathLossModel
{
  public:
    explicit PathLossModel(double alpha);

    double alpha() const { return alpha_; }

    /// Throws DomainError for d <= 0 (the pure power law is singular at the origin).
    double gain(double distance) const;

    /// Amplitude factor gamma = sqrt(g(d)).
    double amplitude(double distance) const { return std::sqrt(gain(distance)); }

  private:
    double alpha_;
};

/// N_R x N_T flat-fading channel with i.i.d. CN(0, mu) entries.
struct MimoChannel
{
    CMatrix entries;
    double mu = 1.0;

    int n_r() const { return static_cast<int>(entries.rows()); }
    int n_t() const { return static_cast<int>(entries.cols()); }
};

double path_gain(const PathLossModel& model, double distance);

/// Circularly symmetric complex Gaussian with variance mu (real and imaginary parts N(0, mu/2)).
/// Entries are drawn as sqrt(mu) times a unit-variance draw, so matched seeds give exactly
/// scaled channels.
Complex sample_cn(double mu, Rng& rng);

MimoChannel sample_channel(int n_r, int n_t, double mu, Rng& rng);

/// Vector drawn uniformly from the complex unit sphere of dimension n.
CVector random_unit_vector(int n, Rng& rng);

} // namespace iacluster

#endif
