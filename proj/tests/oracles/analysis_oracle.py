# SPDX-License-Identifier: Apache-2.0
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
# http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
# ------------------------------------------------------------------------
"""Reference values frozen into tests/unit/test_analysis.cpp.

Independent of the C++ code: SciPy QUADPACK integrators, scipy.special.i0e for the Rice
density, and a direct planar integral (dblquad) for beta_tilde.

    python3 tests/oracles/analysis_oracle.py
"""
import numpy as np
from scipy import integrate, special


def deficit(r, d, s, T, a):
    c = T * d**a
    f = lambda rho: c / (rho**a + c) * rho / s**2 * np.exp(-(rho - r) ** 2 / (2 * s**2)) * special.i0e(rho * r / s**2)
    lo, hi = max(0.0, r - 14 * s), r + 14 * s
    pts = [x for x in (r, c ** (1 / a)) if lo < x < hi]
    return integrate.quad(f, lo, hi, points=pts or None, limit=400, epsabs=1e-14, epsrel=1e-12)[0]


def beta_tilde_planar(y, d, s, T, a):
    """int f(x) / (1 + T |x - y - z|^-a / d^-a) dx over the plane."""
    z = np.array([d, 0.0])
    m = np.array(y) + z
    f = lambda x2, x1: np.exp(-(x1 * x1 + x2 * x2) / (2 * s * s)) / (2 * np.pi * s * s) / (
        1 + T * d**a / max(np.hypot(x1 - m[0], x2 - m[1]), 1e-300) ** a)
    L = 12 * s
    return integrate.dblquad(f, -L, L, -L, L, epsabs=1e-12, epsrel=1e-10)[0]


def xi(d, s, T, a, cb):
    g = lambda r: -np.expm1(cb * np.log1p(-deficit(r, d, s, T, a))) * 2 * np.pi * r
    R0 = max(20 * s + 5 * d, 5.0)
    A = integrate.quad(g, 0, R0, limit=400, points=[d], epsabs=1e-13, epsrel=1e-11)[0]
    k = a - 2
    h = lambda u: g(u ** (-1 / k)) * (1 / k) * u ** (-1 / k - 1)
    B = integrate.quad(h, 0, R0 ** (-k), limit=400, epsabs=1e-13, epsrel=1e-11)[0]
    return A + B


def intra(d, s, T, a, cb):
    f = lambda r: (1 - deficit(r, d, s, T, a)) ** (cb - 1) * r / s**2 * np.exp(-(r - d) ** 2 / (2 * s**2)) * special.i0e(r * d / s**2)
    return integrate.quad(f, max(0.0, d - 14 * s), d + 14 * s, limit=400, points=[d], epsabs=1e-14, epsrel=1e-12)[0]


def success(lp, cb, s, T, a, d):
    p = np.exp(-lp * xi(d, s, T, a, cb))
    return p, p * intra(d, s, T, a, cb)


def bound_1d(lp, cb, s, T, a, d):
    c = T * d**a
    f = lambda t: -np.expm1(-cb * np.log1p(c * (t * t - 8 * s**4) ** (-a / 4)))
    lo = 4 * s * s
    I = integrate.quad(f, lo, lo + 50, limit=400, epsabs=1e-13, epsrel=1e-11)[0]
    k = a / 2 - 1
    # t = u^(-1/k)
    h = lambda u: f(u ** (-1 / k)) * (1 / k) * u ** (-1 / k - 1)
    I += integrate.quad(h, 0, (lo + 50) ** (-k), limit=400, epsabs=1e-13, epsrel=1e-11)[0]
    return np.exp(-lp * np.pi * I)


if __name__ == "__main__":
    print("# deficit D(r): (d, sigma, r) -> value")
    for d, s, r in [(1.0, 0.25, 0.0), (1.0, 0.25, 1.0), (0.5, 0.0625, 0.3), (1.0, 1.0, 2.5), (1.5, 0.25, 10.0)]:
        print(f"  {{{d}, {s}, {r}, {deficit(r, d, s, 0.1, 4):.15e}}},")
    print("# beta_tilde planar: (d, sigma, yx, yy) -> value")
    for d, s, y in [(1.0, 0.25, (0.3, -0.2)), (0.5, 0.25, (-0.5, 0.1)), (1.0, 1.0, (0.0, 1.0))]:
        print(f"  {{{d}, {s}, {y[0]}, {y[1]}, {beta_tilde_planar(y, d, s, 0.1, 4):.12e}}},")
    print("# (lambda_p, cbar, sigma, T, alpha, d) -> p_ia, p_siso, bound_1d")
    cases = [
        (0.25, 3, 0.25, 0.1, 4, 0.5),
        (0.25, 3, 0.25, 0.1, 4, 1.0),
        (0.25, 3, 0.0625, 0.1, 4, 1.0),
        (0.25, 3, 1.0, 0.1, 4, 0.75),
        (0.75 / 7, 7, 0.25, 0.1, 4, 0.8),
        (0.1, 4, 0.5, 1.0, 3, 0.7),
        (0.3, 2, 0.2, 0.5, 3.5, 1.2),
    ]
    for lp, cb, s, T, a, d in cases:
        ia, si = success(lp, cb, s, T, a, d)
        print(f"  {{{lp!r}, {cb}, {s}, {T}, {a}, {d}, {ia:.12e}, {si:.12e}, {bound_1d(lp, cb, s, T, a, d):.12e}}},")
