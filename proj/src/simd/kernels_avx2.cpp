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

// AVX2 + FMA variants, four doubles per lane. The functions carry a target attribute so the
// rest of the translation unit (and the inline code it pulls from headers) stays baseline x86-64.

#include "iacluster/simd/kernels.hpp"

#if defined(IACLUSTER_HAVE_AVX2)

#include <immintrin.h>

#include <cmath>

#define IACLUSTER_AVX2 __attribute__((target("avx2,fma")))

namespace iacluster::simd
{

namespace
{

IACLUSTER_AVX2 inline double hsum(__m256d v)
{
    const __m128d lo = _mm256_castpd256_pd128(v);
    const __m128d hi = _mm256_extractf128_pd(v, 1);
    const __m128d s = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

// r2^(alpha/2) for integer alpha in [1, 16]
IACLUSTER_AVX2 inline __m256d half_power(__m256d r2, int alpha)
{
    __m256d p = _mm256_set1_pd(1.0);
    for (int m = 0; m < alpha / 2; ++m)
        p = _mm256_mul_pd(p, r2);
    if (alpha % 2 != 0)
        p = _mm256_mul_pd(p, _mm256_sqrt_pd(r2));
    return p;
}

inline double half_power_scalar(double r2, int alpha)
{
    double p = 1.0;
    for (int m = 0; m < alpha / 2; ++m)
        p *= r2;
    if (alpha % 2 != 0)
        p *= std::sqrt(r2);
    return p;
}

IACLUSTER_AVX2 double weighted_path_gain_sum(std::span<const double> dx, std::span<const double> dy,
                                             std::span<const double> weight, double alpha)
{
    if (!integer_exponent(alpha))
        return scalar_kernels().weighted_path_gain_sum(dx, dy, weight, alpha);

    const int a = static_cast<int>(alpha);
    const std::size_t n = dx.size();
    __m256d acc = _mm256_setzero_pd();
    std::size_t k = 0;
    for (; k + 4 <= n; k += 4)
    {
        const __m256d x = _mm256_loadu_pd(dx.data() + k);
        const __m256d y = _mm256_loadu_pd(dy.data() + k);
        const __m256d w = _mm256_loadu_pd(weight.data() + k);
        const __m256d r2 = _mm256_fmadd_pd(x, x, _mm256_mul_pd(y, y));
        acc = _mm256_add_pd(acc, _mm256_div_pd(w, half_power(r2, a)));
    }
    double sum = hsum(acc);
    for (; k < n; ++k)
        sum += weight[k] / half_power_scalar(dx[k] * dx[k] + dy[k] * dy[k], a);
    return sum;
}

IACLUSTER_AVX2 void effective_power(const LinkBatch& b, std::span<double> out)
{
    const std::size_t n = b.count;
    std::size_t k = 0;
    for (; k + 4 <= n; k += 4)
    {
        __m256d acc_re = _mm256_setzero_pd();
        __m256d acc_im = _mm256_setzero_pd();
        for (int r = 0; r < b.n_r; ++r)
        {
            __m256d hv_re = _mm256_setzero_pd();
            __m256d hv_im = _mm256_setzero_pd();
            for (int c = 0; c < b.n_t; ++c)
            {
                const std::size_t hi = static_cast<std::size_t>(r * b.n_t + c) * n + k;
                const std::size_t vi = static_cast<std::size_t>(c) * n + k;
                const __m256d h_re = _mm256_loadu_pd(b.h_re.data() + hi);
                const __m256d h_im = _mm256_loadu_pd(b.h_im.data() + hi);
                const __m256d v_re = _mm256_loadu_pd(b.v_re.data() + vi);
                const __m256d v_im = _mm256_loadu_pd(b.v_im.data() + vi);
                hv_re = _mm256_fmadd_pd(h_re, v_re, _mm256_fnmadd_pd(h_im, v_im, hv_re));
                hv_im = _mm256_fmadd_pd(h_re, v_im, _mm256_fmadd_pd(h_im, v_re, hv_im));
            }
            const __m256d u_re = _mm256_set1_pd(b.u_re[r]);
            const __m256d u_im = _mm256_set1_pd(b.u_im[r]);
            acc_re = _mm256_fmadd_pd(u_re, hv_re, _mm256_fmadd_pd(u_im, hv_im, acc_re));
            acc_im = _mm256_fmadd_pd(u_re, hv_im, _mm256_fnmadd_pd(u_im, hv_re, acc_im));
        }
        const __m256d p = _mm256_fmadd_pd(acc_re, acc_re, _mm256_mul_pd(acc_im, acc_im));
        _mm256_storeu_pd(out.data() + k, p);
    }
    for (; k < n; ++k)
    {
        double acc_re = 0.0, acc_im = 0.0;
        for (int r = 0; r < b.n_r; ++r)
        {
            double hv_re = 0.0, hv_im = 0.0;
            for (int c = 0; c < b.n_t; ++c)
            {
                const std::size_t hi = static_cast<std::size_t>(r * b.n_t + c) * n + k;
                const std::size_t vi = static_cast<std::size_t>(c) * n + k;
                hv_re += b.h_re[hi] * b.v_re[vi] - b.h_im[hi] * b.v_im[vi];
                hv_im += b.h_re[hi] * b.v_im[vi] + b.h_im[hi] * b.v_re[vi];
            }
            acc_re += b.u_re[r] * hv_re + b.u_im[r] * hv_im;
            acc_im += b.u_re[r] * hv_im - b.u_im[r] * hv_re;
        }
        out[k] = acc_re * acc_re + acc_im * acc_im;
    }
}

IACLUSTER_AVX2 double weighted_sir_factor_sum(std::span<const double> nx, std::span<const double> ny,
                                              std::span<const double> w, double sx, double sy, double c,
                                              double alpha)
{
    if (!integer_exponent(alpha))
        return scalar_kernels().weighted_sir_factor_sum(nx, ny, w, sx, sy, c, alpha);

    const int a = static_cast<int>(alpha);
    const std::size_t n = nx.size();
    const __m256d vsx = _mm256_set1_pd(sx);
    const __m256d vsy = _mm256_set1_pd(sy);
    const __m256d vc = _mm256_set1_pd(c);
    __m256d acc = _mm256_setzero_pd();
    std::size_t k = 0;
    for (; k + 4 <= n; k += 4)
    {
        const __m256d px = _mm256_add_pd(_mm256_loadu_pd(nx.data() + k), vsx);
        const __m256d py = _mm256_add_pd(_mm256_loadu_pd(ny.data() + k), vsy);
        const __m256d r2 = _mm256_fmadd_pd(px, px, _mm256_mul_pd(py, py));
        const __m256d p = half_power(r2, a);
        const __m256d f = _mm256_div_pd(p, _mm256_add_pd(p, vc));
        acc = _mm256_fmadd_pd(_mm256_loadu_pd(w.data() + k), f, acc);
    }
    double sum = hsum(acc);
    for (; k < n; ++k)
    {
        const double px = nx[k] + sx;
        const double py = ny[k] + sy;
        const double p = half_power_scalar(px * px + py * py, a);
        sum += w[k] * (p / (p + c));
    }
    return sum;
}

} // namespace

const KernelTable& avx2_kernels()
{
    static const KernelTable table{Isa::Avx2, &weighted_path_gain_sum, &effective_power,
                                   &weighted_sir_factor_sum};
    return table;
}

} // namespace iacluster::simd

#endif
