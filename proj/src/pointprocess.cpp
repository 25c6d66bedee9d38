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

#include "iacluster/pointprocess.hpp"

#include "iacluster/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace iacluster
{

ScatterKernel::ScatterKernel(double sigma)
    : sigma_(sigma)
{
    if (!(sigma > 0.0) || !std::isfinite(sigma))
        throw DomainError("scatter kernel: sigma must be positive and finite");
}

double ScatterKernel::pdf(Point2 offset) const
{
    const double s2 = sigma_ * sigma_;
    return std::exp(-offset.norm2() / (2.0 * s2)) / (2.0 * std::numbers::pi * s2);
}

Point2 ScatterKernel::sample(Rng& rng) const
{
    std::normal_distribution<double> normal(0.0, sigma_);
    const double x = normal(rng);
    const double y = normal(rng);
    return {x, y};
}

ClusterConfig::ClusterConfig(double lambda_p, int cbar, ScatterKernel kernel)
    : lambda_p_(lambda_p), cbar_(cbar), kernel_(kernel)
{
    if (!(lambda_p > 0.0) || !std::isfinite(lambda_p))
        throw DomainError("cluster config: lambda_p must be positive");
    if (cbar < 1)
        throw DomainError("cluster config: cbar must be >= 1");
}

std::size_t PalmRealization::interferer_count() const
{
    std::size_t n = sibling_txs.size();
    for (const auto& c : other_clusters)
        n += c.daughters.size();
    return n;
}

double scatter_pdf(const ScatterKernel& kernel, Point2 offset)
{
    return kernel.pdf(offset);
}

std::vector<Point2> sample_parent_ppp(double lambda_p, double window_radius, Rng& rng)
{
    if (!(window_radius > 0.0))
        throw DomainError("sample_parent_ppp: window radius must be positive");
    if (!(lambda_p >= 0.0))
        throw DomainError("sample_parent_ppp: negative intensity");

    const double mean = lambda_p * std::numbers::pi * window_radius * window_radius;
    std::vector<Point2> points;
    if (mean <= 0.0)
        return points;

    std::poisson_distribution<long long> count_dist(mean);
    const long long count = count_dist(rng);
    points.reserve(static_cast<std::size_t>(count));

    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (long long k = 0; k < count; ++k)
    {
        // sqrt of a uniform gives a radius uniform in area
        const double r = window_radius * std::sqrt(unit(rng));
        const double phi = 2.0 * std::numbers::pi * unit(rng);
        points.push_back({r * std::cos(phi), r * std::sin(phi)});
    }
    return points;
}

std::vector<Point2> scatter_daughters(Point2 parent, int count, const ScatterKernel& kernel, Rng& rng)
{
    if (count < 1)
        throw DomainError("scatter_daughters: count must be >= 1");

    std::vector<Point2> out;
    out.reserve(static_cast<std::size_t>(count));
    for (int k = 0; k < count; ++k)
        out.push_back(parent + kernel.sample(rng));
    return out;
}

double default_window_radius(const ClusterConfig& config, double link_distance, double threshold,
                             double alpha)
{
    const double sigma = config.kernel().sigma();
    const double reach = 4.0 / std::pow(config.intensity() * threshold, 1.0 / alpha);
    return std::max(10.0, link_distance + 12.0 * sigma + reach);
}

PalmRealization sample_palm(const ClusterConfig& config, double window_radius, Rng& rng)
{
    if (!(window_radius > 0.0))
        throw DomainError("sample_palm: window radius must be positive");

    const ScatterKernel& kernel = config.kernel();
    PalmRealization out;
    out.window_radius = window_radius;
    out.parent_radius = window_radius + 6.0 * kernel.sigma();

    // reference sits at parent + x, so the parent is at -x
    out.reference_parent = -kernel.sample(rng);
    if (config.cbar() > 1)
        out.sibling_txs = scatter_daughters(out.reference_parent, config.cbar() - 1, kernel, rng);

    const auto parents = sample_parent_ppp(config.lambda_p(), out.parent_radius, rng);
    out.other_clusters.reserve(parents.size());
    for (const Point2& p : parents)
        out.other_clusters.push_back({p, scatter_daughters(p, config.cbar(), kernel, rng)});
    return out;
}

} // namespace iacluster
