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

#include "iacluster/analysis.hpp"
#include "iacluster/error.hpp"

#include <boost/math/special_functions/bessel.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <iostream>
#include <numbers>
#include <sstream>

using namespace iacluster;

namespace
{

// Values from tests/oracles/analysis_oracle.py (SciPy).
struct DeficitCase
{
    double d, sigma, r, value;
};
constexpr DeficitCase kDeficit[] = {
    {1.0, 0.25, 0.0, 8.459916106957414e-01},   {1.0, 0.25, 1.0, 1.256136075763363e-01},
    {0.5, 0.0625, 0.3, 4.393074766032093e-01}, {1.0, 1.0, 2.5, 1.701648110377538e-02},
    {1.5, 0.25, 10.0, 5.087694356936469e-05},
};

struct PlanarCase
{
    double d, sigma, yx, yy, value;
};
constexpr PlanarCase kPlanar[] = {
    {1.0, 0.25, 0.3, -0.2, 9.568894729939e-01},
    {0.5, 0.25, -0.5, 0.1, 5.280026105766e-01},
    {1.0, 1.0, 0.0, 1.0, 9.147456024337e-01},
};

struct SuccessCase
{
    double lambda_p;
    int cbar;
    double sigma, threshold, alpha, d, p_ia, p_siso, bound;
};
constexpr SuccessCase kSuccess[] = {
    {0.25, 3, 0.25, 0.1, 4, 0.5, 7.916580671510e-01, 5.710005713467e-01, 9.361711724343e-01},
    {0.25, 3, 0.25, 0.1, 4, 1.0, 4.448332907539e-01, 3.285404173851e-01, 5.729866320105e-01},
    {0.25, 3, 0.0625, 0.1, 4, 1.0, 4.782973859120e-01, 3.917651626284e-01, 4.870873239702e-01},
    {0.25, 3, 1.0, 0.1, 4, 0.75, 5.369289838544e-01, 4.799082106402e-01, 9.770906562195e-01},
    {0.10714285714285714, 7, 0.25, 0.1, 4, 0.8, 6.906646411445e-01, 3.129123036632e-01, 7.878277352387e-01},
    {0.1, 4, 0.5, 1.0, 3, 0.7, 3.262986408932e-01, 1.090306931597e-01, 4.683397512846e-01},
    {0.3, 2, 0.2, 0.5, 3.5, 1.2, 6.832422433866e-02, 4.447200745468e-02, 8.234986858755e-02},
};

NetworkParams params_of(const SuccessCase& c)
{
    NetworkParams p;
    p.lambda_p = c.lambda_p;
    p.cbar = c.cbar;
    p.sigma = c.sigma;
    p.threshold = c.threshold;
    p.alpha = c.alpha;
    p.link_distance = c.d;
    return p;
}

NetworkParams base(double d, double sigma)
{
    NetworkParams p;
    p.link_distance = d;
    p.sigma = sigma;
    return p;
}

} // namespace

TEST_CASE("scaled Bessel function matches boost across the asymptotic switch")
{
    for (double x : {0.0, 1e-3, 0.5, 3.0, 40.0, 350.0, 699.0, 701.0, 2000.0})
    {
        const double ref = x < 700.0 ? std::exp(-x) * boost::math::cyl_bessel_i(0, x)
                                     : 1.0 / std::sqrt(2.0 * std::numbers::pi * x) *
                                           (1.0 + 1.0 / (8.0 * x) + 9.0 / (128.0 * x * x));
        CHECK(scaled_bessel_i0(x) == doctest::Approx(ref).epsilon(1e-9));
    }
    // no jump at the switch
    CHECK(scaled_bessel_i0(700.0 - 1e-9) == doctest::Approx(scaled_bessel_i0(700.0 + 1e-9)).epsilon(1e-10));
}

TEST_CASE("Rice density integrates to one")
{
    for (double nu : {0.0, 0.4, 3.0, 50.0})
        for (double s : {0.0625, 0.25, 1.0})
        {
            auto f = [&](double r) { return rice_pdf(r, nu, s); };
            const double lo = std::max(0.0, nu - 14 * s);
            const double mass = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, lo, nu + 14 * s, 15, 1e-12);
            CHECK(mass == doctest::Approx(1.0).epsilon(1e-9));
        }
    CHECK(rice_pdf(-1.0, 1.0, 1.0) == 0.0);
}

TEST_CASE("Gauss-Hermite rule integrates polynomials against exp(-t^2)")
{
    const HermiteRule& rule = gauss_hermite_rule(20);
    REQUIRE(rule.nodes.size() == 20);
    double m0 = 0, m2 = 0, m4 = 0, m1 = 0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i)
    {
        const double t = rule.nodes[i], w = rule.weights[i];
        m0 += w;
        m1 += w * t;
        m2 += w * t * t;
        m4 += w * t * t * t * t;
    }
    const double rp = std::sqrt(std::numbers::pi);
    CHECK(m0 == doctest::Approx(rp).epsilon(1e-13));
    CHECK(std::abs(m1) < 1e-13);
    CHECK(m2 == doctest::Approx(rp / 2).epsilon(1e-13));
    CHECK(m4 == doctest::Approx(3 * rp / 4).epsilon(1e-13));
    CHECK(&gauss_hermite_rule(20) == &rule);
}

TEST_CASE("single-daughter outage probability matches reference values")
{
    for (const auto& c : kDeficit)
    {
        CAPTURE(c.r);
        const auto v = interference_deficit(base(c.d, c.sigma), c.r);
        CHECK(v.value == doctest::Approx(c.value).epsilon(1e-7));
        CHECK(v.error >= 0.0);
    }
}

TEST_CASE("beta_tilde: radial route, Gauss-Hermite route and planar reference agree")
{
    for (const auto& c : kPlanar)
    {
        CAPTURE(c.yx);
        const NetworkParams p = base(c.d, c.sigma);
        const Point2 y{c.yx, c.yy};
        const auto radial = beta_tilde(p, y);
        const auto gh = beta_tilde_hermite(p, y);
        CHECK(radial.value == doctest::Approx(c.value).epsilon(1e-7));
        CHECK(gh.value == doctest::Approx(c.value).epsilon(2e-6));
        CHECK(radial.value <= jensen_bound(p, y) + 1e-12);
    }
}

TEST_CASE("beta_tilde is rotation invariant about -z and lies in (0, 1]")
{
    const NetworkParams p = base(0.8, 0.3);
    const Point2 z{0.8, 0.0};
    const Point2 offset{0.4, 0.25};
    const double ref = beta_tilde(p, offset - z).value;
    for (double angle : {0.7, 2.0, 4.1})
        CHECK(beta_tilde(p, offset.rotated(angle) - z).value == doctest::Approx(ref).epsilon(1e-9));
    CHECK(ref > 0.0);
    CHECK(ref <= 1.0);
}

TEST_CASE("success probabilities match reference values")
{
    for (const auto& c : kSuccess)
    {
        CAPTURE(c.cbar);
        CAPTURE(c.d);
        const NetworkParams p = params_of(c);
        const auto ia = success_prob_ia(p);
        const auto siso = success_prob_siso(p);
        const auto ub = upper_bound_1d(p);
        CHECK(ia.value == doctest::Approx(c.p_ia).epsilon(2e-6));
        CHECK(siso.value == doctest::Approx(c.p_siso).epsilon(2e-6));
        CHECK(ub.value == doctest::Approx(c.bound).epsilon(2e-6));
        CHECK(ia.error < 1e-5);
        CHECK(siso.value <= ia.value + ia.error + siso.error);
        CHECK(ia.value <= ub.value + ia.error + ub.error);
    }
}

TEST_CASE("xi is consistent with the IA success probability")
{
    const NetworkParams p = base(0.9, 0.25);
    const double x = xi(p).value;
    CHECK(success_prob_ia(p).value == doctest::Approx(std::exp(-p.lambda_p * x)).epsilon(1e-12));
    CHECK(intra_cluster_factor(p).value ==
          doctest::Approx(success_prob_siso(p).value / success_prob_ia(p).value).epsilon(1e-9));
}

TEST_CASE("single-transmitter clusters: IA and SISO coincide")
{
    NetworkParams p = base(0.7, 0.25);
    p.cbar = 1;
    CHECK(success_prob_siso(p).value == doctest::Approx(success_prob_ia(p).value).epsilon(1e-12));
}

TEST_CASE("analysis does not depend on the mean fading power")
{
    NetworkParams p = base(0.6, 0.25);
    const double ref = success_prob_ia(p).value;
    p.mu = 7.5;
    CHECK(success_prob_ia(p).value == ref);
}

TEST_CASE("success probability is decreasing in link distance and intensity")
{
    double prev = 1.0;
    for (double d = 0.1; d < 1.55; d += 0.2)
    {
        const double v = success_prob_ia(base(d, 0.25)).value;
        CHECK(v < prev);
        prev = v;
    }
    NetworkParams sparse = base(1.0, 0.25), dense = base(1.0, 0.25);
    dense.lambda_p = 0.5;
    CHECK(success_prob_ia(dense).value < success_prob_ia(sparse).value);
}

TEST_CASE("closed-form constants")
{
    CHECK(delta_coeff(1) == 1.0);
    CHECK(delta_coeff(2) == 1.5);
    CHECK(delta_coeff(3) == 1.875);
    CHECK(delta_coeff(4) == 2.1875);
    CHECK(c_alpha(4.0) == doctest::Approx(std::numbers::pi * std::numbers::pi / 2).epsilon(1e-14));
    CHECK(c_alpha(3.0) == doctest::Approx(2 * std::numbers::pi * std::numbers::pi / 3 / std::sin(2 * std::numbers::pi / 3)).epsilon(1e-14));
    CHECK_THROWS_AS(delta_coeff(0), DomainError);
    CHECK_THROWS_AS(c_alpha(2.0), DomainError);
}

TEST_CASE("closed-form bound reduces to the PPP baseline for single-point clusters")
{
    NetworkParams p = base(1.0, 1e-7);
    p.cbar = 1;
    CHECK(upper_bound_closed_form(p) == doctest::Approx(ppp_baseline(p)).epsilon(1e-9));
}

TEST_CASE("PPP baseline formula")
{
    const NetworkParams p = base(1.0, 0.25);
    const double expected = std::exp(-0.75 * std::sqrt(0.1) * std::numbers::pi * std::numbers::pi / 2);
    CHECK(ppp_baseline(p) == doctest::Approx(expected).epsilon(1e-14));
}

TEST_CASE("closed-form bound warns for wide clusters and rejects alpha != 4")
{
    std::ostringstream captured;
    auto* old = std::clog.rdbuf(captured.rdbuf());
    const double v = upper_bound_closed_form(base(1.0, 1.0));
    std::clog.rdbuf(old);
    CHECK(v > 0.0);
    CHECK(captured.str().find("warning") != std::string::npos);

    NetworkParams p = base(1.0, 0.25);
    p.alpha = 3.5;
    CHECK_THROWS_AS(upper_bound_closed_form(p), DomainError);
}

TEST_CASE("domain errors")
{
    NetworkParams p = base(1.0, 0.25);
    p.alpha = 2.0;
    CHECK_THROWS_AS(xi(p), DivergenceError);
    CHECK_THROWS_AS(success_prob_ia(p), NumericalError);

    p = base(1.0, 0.25);
    p.alpha = 4.5;
    CHECK_THROWS_AS(upper_bound_1d(p), DomainError);
    CHECK_THROWS_AS(jensen_bound(p, {}), DomainError);

    p = base(1.0, 0.25);
    p.noise_var = 0.1;
    CHECK_THROWS_AS(success_prob_ia(p), DomainError);

    CHECK_THROWS_AS(success_prob_ia(base(0.0, 0.25)), DomainError);
    CHECK_THROWS_AS(success_prob_ia(base(1.0, 0.0)), DomainError);
}

TEST_CASE("bound converges for exponents close to 2")
{
    NetworkParams p;
    p.lambda_p = 0.2878;
    p.cbar = 4;
    p.sigma = 0.1482;
    p.threshold = 1.319;
    p.alpha = 2.137;
    p.link_distance = 1.77;
    const auto ub = upper_bound_1d(p);
    const auto ia = success_prob_ia(p);
    CHECK(ub.value > 0.0);
    CHECK(ia.value <= ub.value * (1.0 + 1e-5));
}

TEST_CASE("quadrature survives breakpoints that nearly coincide")
{
    // knee radius (T d^alpha)^(1/alpha) lies 5e-5 from d
    NetworkParams p;
    p.lambda_p = 0.2683;
    p.cbar = 2;
    p.sigma = 0.8177;
    p.threshold = 1.0002213256873995;
    p.alpha = 3.2051694966616449;
    p.link_distance = 0.7630538895076957;
    const auto siso = success_prob_siso(p);
    NetworkParams q = p;
    q.threshold = 1.0;
    CHECK(siso.value == doctest::Approx(success_prob_siso(q).value).epsilon(1e-3));
}
