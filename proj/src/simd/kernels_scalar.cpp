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

#include "iacluster/simd/kernels.hpp"

#include <cmath>

namespace iacluster::simd
{

namespace
{

double weighted_path_gain_sum(std::span<const double> dx, std::span<const double> dy,
                              std::span<const double> weight, double alpha)
{
    const double e = -0.5 * alpha;
    double sum = 0.0;
    for (std::size_t k = 0; k < dx.size(); ++k)
        sum += weight[k] * std::pow(dx[k] * dx[k] + dy[k] * dy[k], e);
    return sum;
}

void effective_power(const LinkBatch& b, std::span<double> out)
{
    const std::size_t n = b.count;
    for (std::size_t k = 0; k < n; ++k)
    {
        double acc_re = 0.0, acc_im = 0.0;
        for (int r = 0; r < b.n_r; ++r)
        {
            // (H v)_r
            double hv_re = 0.0, hv_im = 0.0;
            for (int c = 0; c < b.n_t; ++c)
            {
                const std::size_t hi = static_cast<std::size_t>(r * b.n_t + c) * n + k;
                const std::size_t vi = static_cast<std::size_t>(c) * n + k;
                hv_re += b.h_re[hi] * b.v_re[vi] - b.h_im[hi] * b.v_im[vi];
                hv_im += b.h_re[hi] * b.v_im[vi] + b.h_im[hi] * b.v_re[vi];
            }
            // conj(u_r) * (H v)_r
            acc_re += b.u_re[r] * hv_re + b.u_im[r] * hv_im;
            acc_im += b.u_re[r] * hv_im - b.u_im[r] * hv_re;
        }
        out[k] = acc_re * acc_re + acc_im * acc_im;
    }
}

double weighted_sir_factor_sum(std::span<const double> nx, std::span<const double> ny,
                               std::span<const double> w, double sx, double sy, double c, double alpha)
{
    const double e = 0.5 * alpha;
    double sum = 0.0;
    for (std::size_t k = 0; k < nx.size(); ++k)
    {
        const double px = nx[k] + sx;
        const double py = ny[k] + sy;
        const double p = std::pow(px * px + py * py, e);
        sum += w[k] * (p / (p + c));
    }
    return sum;
}

} // namespace

const KernelTable& scalar_kernels()
{
    static const KernelTable table{Isa::Scalar, &weighted_path_gain_sum, &effective_power,
                                   &weighted_sir_factor_sum};
    return table;
}

} // namespace iacluster::simd
