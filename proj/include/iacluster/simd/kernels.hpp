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

#ifndef IACLUSTER_SIMD_KERNELS_HPP
#define IACLUSTER_SIMD_KERNELS_HPP

// Data-parallel inner loops. Every kernel has a scalar reference implementation; wider
// variants are selected at runtime from what the CPU supports and must agree with the
// reference to rounding (they sum in a different order).

#include <cstddef>
#include <span>
#include <string_view>

namespace iacluster::simd
{

enum class Isa
{
    Scalar,
    Avx2,
};

std::string_view isa_name(Isa isa);

// Structure-of-arrays batch of `count` links sharing one receive combiner u.
//   h_re/h_im : (r * n_t + c) * count + k   (n_r * n_t * count values)
//   v_re/v_im : c * count + k               (n_t * count values)
//   u_re/u_im : r                            (n_r values)
struct LinkBatch
{
    int n_r = 0;
    int n_t = 0;
    std::size_t count = 0;
    std::span<const double> h_re, h_im;
    std::span<const double> v_re, v_im;
    std::span<const double> u_re, u_im;
};

struct KernelTable
{
    Isa isa;

    // sum_k weight[k] * (dx[k]^2 + dy[k]^2)^(-alpha/2)
    double (*weighted_path_gain_sum)(std::span<const double> dx, std::span<const double> dy,
                                     std::span<const double> weight, double alpha);

    // out[k] = |u^H H_k v_k|^2
    void (*effective_power)(const LinkBatch& batch, std::span<double> out);

    // sum_k w[k] * p_k / (p_k + c), p_k = ((nx[k]+sx)^2 + (ny[k]+sy)^2)^(alpha/2); c > 0
    double (*weighted_sir_factor_sum)(std::span<const double> nx, std::span<const double> ny,
                                      std::span<const double> w, double sx, double sy, double c,
                                      double alpha);
};

bool isa_available(Isa isa);

// Best available ISA, unless overridden by IACLUSTER_ISA=scalar|avx2 in the environment.
Isa active_isa();

const KernelTable& kernels();
const KernelTable& kernels(Isa isa); // throws std::invalid_argument if unavailable

// Kernel tables of the individual ISAs (defined in their own translation units).
const KernelTable& scalar_kernels();
#if defined(IACLUSTER_HAVE_AVX2)
const KernelTable& avx2_kernels();
#endif

// Exponents for which the vector kernels use exact multiply/sqrt powers instead of pow.
inline bool integer_exponent(double alpha)
{
    return alpha >= 1.0 && alpha <= 16.0 && alpha == static_cast<double>(static_cast<int>(alpha));
}

} // namespace iacluster::simd

#endif
