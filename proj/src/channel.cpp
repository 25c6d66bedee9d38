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

#include "iacluster/channel.hpp"

#include "iacluster/error.hpp"

#include <cmath>
#include <numbers>

namespace iacluster
{

PathLossModel::PathLossModel(double alpha)
    : alpha_(alpha)
{
    if (!(alpha >= 2.0) || !std::isfinite(alpha))
        throw DomainError("path loss: alpha must be >= 2");
}

double PathLossModel::gain(double distance) const
{
    if (!(distance > 0.0))
        throw DomainError("path loss: distance must be positive");
    return std::pow(distance, -alpha_);
}

double path_gain(const PathLossModel& model, double distance)
{
    return model.gain(distance);
}

Complex sample_cn(double mu, Rng& rng)
{
    std::normal_distribution<double> normal(0.0, std::numbers::sqrt2 / 2.0);
    const double re = normal(rng);
    const double im = normal(rng);
    return std::sqrt(mu) * Complex(re, im);
}

MimoChannel sample_channel(int n_r, int n_t, double mu, Rng& rng)
{
    if (n_r < 1 || n_t < 1)
        throw DimensionError("sample_channel: antenna counts must be >= 1");
    if (!(mu > 0.0))
        throw DomainError("sample_channel: mu must be positive");

    MimoChannel h{CMatrix(n_r, n_t), mu};
    // column-major fill order is part of the reproducibility contract
    for (int c = 0; c < n_t; ++c)
        for (int r = 0; r < n_r; ++r)
            h.entries(r, c) = sample_cn(mu, rng);
    return h;
}

CVector random_unit_vector(int n, Rng& rng)
{
    if (n < 1)
        throw DimensionError("random_unit_vector: dimension must be >= 1");
    CVector v(n);
    double norm2 = 0.0;
    do
    {
        for (int k = 0; k < n; ++k)
            v(k) = sample_cn(1.0, rng);
        norm2 = v.squaredNorm();
    } while (norm2 == 0.0);
    return v / std::sqrt(norm2);
}

} // namespace iacluster
