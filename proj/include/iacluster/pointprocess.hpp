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

#ifndef IACLUSTER_POINTPROCESS_HPP
#define IACLUSTER_POINTPROCESS_HPP

#include "iacluster/geometry.hpp"
#include "iacluster/rng.hpp"

#include <cstddef>
#include <vector>

namespace iacluster
{

/// Isotropic Gaussian scattering of daughters around their parent: each coordinate is
/// N(0, sigma^2), so the total variance of an offset is 2 sigma^2.
class ScatterKernel
{
  public:
    explicit ScatterKernel(double sigma);

    double sigma() const { return sigma_; }

    /// Density (1 / (2 pi sigma^2)) exp(-|offset|^2 / (2 sigma^2)).
    double pdf(Point2 offset) const;

    Point2 sample(Rng& rng) const;

  private:
    double sigma_;
};

/// Neyman-Scott process with a fixed number of daughters per cluster.
class ClusterConfig
{
  public:
    ClusterConfig(double lambda_p, int cbar, ScatterKernel kernel);

    double lambda_p() const { return lambda_p_; }
    int cbar() const { return cbar_; }
    const ScatterKernel& kernel() const { return kernel_; }

    /// Intensity of the daughter process, lambda_p * cbar.
    double intensity() const { return lambda_p_ * cbar_; }

  private:
    double lambda_p_;
    int cbar_;
    ScatterKernel kernel_;
};

struct Cluster
{
    Point2 parent;
    std::vector<Point2> daughters;
};

/// Network seen from a typical transmitter placed at the origin.
struct PalmRealization
{
    Point2 reference_tx;
    Point2 reference_parent;
    std::vector<Point2> sibling_txs;     // cbar - 1 cluster mates of the reference transmitter
    std::vector<Cluster> other_clusters; // rest of the network
    double window_radius = 0.0;          // analysis window around the origin
    double parent_radius = 0.0;          // disc on which other parents were drawn

    std::size_t interferer_count() const;
};

double scatter_pdf(const ScatterKernel& kernel, Point2 offset);

/// Homogeneous PPP of the given intensity on the disc of radius window_radius centred at the
/// origin.
std::vector<Point2> sample_parent_ppp(double lambda_p, double window_radius, Rng& rng);

/// count i.i.d. daughters scattered about parent. count must be >= 1.
std::vector<Point2> scatter_daughters(Point2 parent, int count, const ScatterKernel& kernel, Rng& rng);

/// Window radius used when none is given: max(10, d + 12 sigma + 4 / (lambda_p cbar T)^(1/alpha)).
double default_window_radius(const ClusterConfig& config, double link_distance, double threshold,
                             double alpha);

/// Palm realization: reference transmitter at the origin, its parent at -x with x drawn from
/// the kernel, cbar - 1 siblings, and an independent copy of the process whose parents cover
/// the window enlarged by 6 sigma.
PalmRealization sample_palm(const ClusterConfig& config, double window_radius, Rng& rng);

} // namespace iacluster

#endif
