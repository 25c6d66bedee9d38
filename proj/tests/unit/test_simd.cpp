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

#include "doctest.h"

#include "iacluster/rng.hpp"
#include "iacluster/simd/kernels.hpp"

#include <cmath>
#include <complex>
#include <random>
#include <vector>

using namespace iacluster;
using namespace iacluster::simd;

namespace
{

std::vector<double> uniform(std::size_t n, double lo, double hi, Rng& rng)
{
    std::uniform_real_distribution<double> d(lo, hi);
    std::vector<double> v(n);
    for (auto& x : v)
        x = d(rng);
    return v;
}

struct Batch
{
    int n_r, n_t;
    std::size_t count;
    std::vector<double> h_re, h_im, v_re, v_im, u_re, u_im;

    LinkBatch view() const { return {n_r, n_t, count, h_re, h_im, v_re, v_im, u_re, u_im}; }
};

Batch random_batch(int n_r, int n_t, std::size_t count, Rng& rng)
{
    const std::size_t nh = static_cast<std::size_t>(n_r * n_t) * count;
    const std::size_t nv = static_cast<std::size_t>(n_t) * count;
    return {n_r,
            n_t,
            count,
            uniform(nh, -2, 2, rng),
            uniform(nh, -2, 2, rng),
            uniform(nv, -1, 1, rng),
            uniform(nv, -1, 1, rng),
            uniform(static_cast<std::size_t>(n_r), -1, 1, rng),
            uniform(static_cast<std::size_t>(n_r), -1, 1, rng)};
}

// straightforward complex arithmetic, independent of the kernel layout code
std::vector<double> effective_power_reference(const Batch& b)
{
    std::vector<double> out(b.count);
    for (std::size_t k = 0; k < b.count; ++k)
    {
        std::complex<double> acc = 0.0;
        for (int r = 0; r < b.n_r; ++r)
        {
            std::complex<double> hv = 0.0;
            for (int c = 0; c < b.n_t; ++c)
            {
                const std::size_t i = static_cast<std::size_t>(r * b.n_t + c) * b.count + k;
                const std::size_t j = static_cast<std::size_t>(c) * b.count + k;
                hv += std::complex<double>(b.h_re[i], b.h_im[i]) * std::complex<double>(b.v_re[j], b.v_im[j]);
            }
            acc += std::conj(std::complex<double>(b.u_re[r], b.u_im[r])) * hv;
        }
        out[k] = std::norm(acc);
    }
    return out;
}

constexpr std::size_t kSizes[] = {0, 1, 3, 4, 5, 7, 8, 17, 64, 1001};

} // namespace

TEST_CASE("ISA selection")
{
    CHECK(isa_available(Isa::Scalar));
    CHECK(kernels(Isa::Scalar).isa == Isa::Scalar);
    CHECK(kernels().isa == active_isa());
    CHECK(isa_name(Isa::Scalar) == "scalar");
    CHECK(isa_name(Isa::Avx2) == "avx2");
    if (!isa_available(Isa::Avx2))
        CHECK_THROWS_AS(kernels(Isa::Avx2), std::invalid_argument);
}

TEST_CASE("integer exponent detection")
{
    CHECK(integer_exponent(4.0));
    CHECK(integer_exponent(3.0));
    CHECK_FALSE(integer_exponent(3.5));
    CHECK_FALSE(integer_exponent(40.0));
}

TEST_CASE("scalar effective power matches complex arithmetic")
{
    Rng rng(1);
    for (auto [n_r, n_t] : {std::pair{1, 1}, std::pair{2, 2}, std::pair{3, 2}, std::pair{4, 4}})
        for (std::size_t count : kSizes)
        {
            const Batch b = random_batch(n_r, n_t, count, rng);
            std::vector<double> out(count);
            scalar_kernels().effective_power(b.view(), out);
            const auto ref = effective_power_reference(b);
            for (std::size_t k = 0; k < count; ++k)
                CHECK(out[k] == doctest::Approx(ref[k]).epsilon(1e-13));
        }
}

TEST_CASE("scalar path-gain sum matches pow")
{
    Rng rng(2);
    for (double alpha : {2.0, 3.0, 3.5, 4.0})
    {
        const auto dx = uniform(257, -5, 5, rng), dy = uniform(257, -5, 5, rng), w = uniform(257, 0, 3, rng);
        double ref = 0.0;
        for (std::size_t k = 0; k < dx.size(); ++k)
            ref += w[k] * std::pow(dx[k] * dx[k] + dy[k] * dy[k], -alpha / 2);
        CHECK(scalar_kernels().weighted_path_gain_sum(dx, dy, w, alpha) == doctest::Approx(ref).epsilon(1e-13));
    }
}

TEST_CASE("scalar SIR factor sum matches its definition")
{
    Rng rng(3);
    for (double alpha : {3.0, 4.0, 3.7})
    {
        const auto nx = uniform(300, -3, 3, rng), ny = uniform(300, -3, 3, rng), w = uniform(300, 0, 1, rng);
        const double sx = 0.4, sy = -0.3, c = 0.1;
        double ref = 0.0;
        for (std::size_t k = 0; k < nx.size(); ++k)
        {
            const double p = std::pow(std::hypot(nx[k] + sx, ny[k] + sy), alpha);
            ref += w[k] * p / (p + c);
        }
        CHECK(scalar_kernels().weighted_sir_factor_sum(nx, ny, w, sx, sy, c, alpha) ==
              doctest::Approx(ref).epsilon(1e-13));
    }
}

#if defined(IACLUSTER_HAVE_AVX2)

TEST_CASE("AVX2 kernels agree with the scalar reference")
{
    if (!isa_available(Isa::Avx2))
    {
        MESSAGE("AVX2 not supported on this CPU; equivalence not exercised");
        return;
    }
    const KernelTable& s = scalar_kernels();
    const KernelTable& v = avx2_kernels();
    CHECK(v.isa == Isa::Avx2);
    Rng rng(4);

    SUBCASE("effective_power")
    {
        for (auto [n_r, n_t] : {std::pair{1, 1}, std::pair{2, 2}, std::pair{2, 3}, std::pair{4, 4}})
            for (std::size_t count : kSizes)
            {
                const Batch b = random_batch(n_r, n_t, count, rng);
                std::vector<double> a(count), c(count);
                s.effective_power(b.view(), a);
                v.effective_power(b.view(), c);
                for (std::size_t k = 0; k < count; ++k)
                    CHECK(c[k] == doctest::Approx(a[k]).epsilon(1e-12));
            }
    }
    SUBCASE("weighted_path_gain_sum")
    {
        for (double alpha : {2.0, 3.0, 3.5, 4.0, 5.0})
            for (std::size_t count : kSizes)
            {
                const auto dx = uniform(count, -8, 8, rng), dy = uniform(count, -8, 8, rng);
                const auto w = uniform(count, 0, 2, rng);
                const double a = s.weighted_path_gain_sum(dx, dy, w, alpha);
                const double c = v.weighted_path_gain_sum(dx, dy, w, alpha);
                CHECK(c == doctest::Approx(a).epsilon(1e-12));
            }
    }
    SUBCASE("weighted_sir_factor_sum")
    {
        for (double alpha : {3.0, 4.0, 3.25})
            for (std::size_t count : kSizes)
            {
                const auto nx = uniform(count, -3, 3, rng), ny = uniform(count, -3, 3, rng);
                const auto w = uniform(count, 0, 1, rng);
                const double a = s.weighted_sir_factor_sum(nx, ny, w, 0.7, 0.2, 0.05, alpha);
                const double c = v.weighted_sir_factor_sum(nx, ny, w, 0.7, 0.2, 0.05, alpha);
                CHECK(c == doctest::Approx(a).epsilon(1e-12));
            }
    }
}

#endif
