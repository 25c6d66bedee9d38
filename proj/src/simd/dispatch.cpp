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

#include <cstdlib>
#include <stdexcept>
#include <string>

namespace iacluster::simd
{

std::string_view isa_name(Isa isa)
{
    switch (isa)
    {
    case Isa::Scalar:
        return "scalar";
    case Isa::Avx2:
        return "avx2";
    }
    return "unknown";
}

bool isa_available(Isa isa)
{
    switch (isa)
    {
    case Isa::Scalar:
        return true;
    case Isa::Avx2:
#if defined(IACLUSTER_HAVE_AVX2)
        return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
        return false;
#endif
    }
    return false;
}

namespace
{

Isa detect()
{
    if (const char* env = std::getenv("IACLUSTER_ISA"))
    {
        const std::string want(env);
        if (want == "scalar")
            return Isa::Scalar;
        if (want == "avx2" && isa_available(Isa::Avx2))
            return Isa::Avx2;
    }
    return isa_available(Isa::Avx2) ? Isa::Avx2 : Isa::Scalar;
}

} // namespace

Isa active_isa()
{
    static const Isa isa = detect();
    return isa;
}

const KernelTable& kernels(Isa isa)
{
    if (!isa_available(isa))
        throw std::invalid_argument("kernel ISA not available: " + std::string(isa_name(isa)));
#if defined(IACLUSTER_HAVE_AVX2)
    if (isa == Isa::Avx2)
        return avx2_kernels();
#endif
    return scalar_kernels();
}

const KernelTable& kernels()
{
    static const KernelTable& table = kernels(active_isa());
    return table;
}

} // namespace iacluster::simd
