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

#include "iacluster/analysis.hpp"

#include "iacluster/error.hpp"
#include "iacluster/simd/kernels.hpp"

#include <Eigen/Eigenvalues>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/bessel.hpp>

#include <algorithm>
#include <cmath>
#include <iostream>
#include <map>
#include <mutex>
#include <numbers>
#include <sstream>

namespace iacluster
{

namespace
{

constexpr double pi = std::numbers::pi;

// Gaussian tails beyond 12 sigma are below exp(-72).
constexpr double kTailSigmas = 12.0;

// Relative accuracy demanded from D(r) compared with the outer tolerance.
constexpr double kInnerTolFactor = 1e-2;

using Kronrod = boost::math::quadrature::gauss_kronrod<double, 31>;

struct Panels
{
    double value = 0.0;
    double error = 0.0;
    bool converged = true;
};

// Adaptive Gauss-Kronrod over consecutive panels [pts[i], pts[i+1]].
template <class F>
Panels integrate_panels(F&& f, std::vector<double> pts, double rel_tol, unsigned depth)
{
    std::sort(pts.begin(), pts.end());
    // breakpoints only mark features; sliver panels break the error estimate
    const double gap = 1e-6 * (pts.back() - pts.front());
    std::vector<double> kept{pts.front()};
    for (std::size_t i = 1; i + 1 < pts.size(); ++i)
        if (pts[i] - kept.back() > gap && pts.back() - pts[i] > gap)
            kept.push_back(pts[i]);
    kept.push_back(pts.back());
    pts = std::move(kept);
    Panels out;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i)
    {
        double err = 0.0, l1 = 0.0;
        const double v = Kronrod::integrate(f, pts[i], pts[i + 1], depth, rel_tol, &err, &l1);
        out.value += v;
        out.error += err;
        if (err > rel_tol * l1 + 1e-300)
            out.converged = false;
    }
    return out;
}

void require_analysis_params(const NetworkParams& p, const char* what)
{
    p.validate();
    if (p.noise_var != 0.0)
        throw DomainError(std::string(what) + ": the analysis is interference-limited, noise_var must be 0");
}

// c = T d^alpha, so that T g(w) / g(z) = c / |w|^alpha
double outage_scale(const NetworkParams& p)
{
    return p.threshold * std::pow(p.link_distance, p.alpha);
}

// Radius at which a single interferer drives the SIR to T: c^(1/alpha)
double knee_radius(const NetworkParams& p)
{
    return p.link_distance * std::pow(p.threshold, 1.0 / p.alpha);
}

// 1 - (1 - d)^n without cancellation for small d
double one_minus_power(double d, int n)
{
    if (d >= 1.0)
        return 1.0;
    return -std::expm1(n * std::log1p(-d));
}

} // namespace

void NetworkParams::validate() const
{
    if (!(lambda_p > 0.0) || !std::isfinite(lambda_p))
        throw DomainError("lambda_p must be positive");
    if (cbar < 1)
        throw DomainError("cbar must be >= 1");
    if (!(sigma > 0.0) || !std::isfinite(sigma))
        throw DomainError("sigma must be positive");
    if (!(alpha >= 2.0) || !std::isfinite(alpha))
        throw DomainError("alpha must be >= 2");
    if (!(threshold >= 0.0) || !std::isfinite(threshold))
        throw DomainError("threshold must be non-negative");
    if (!(link_distance > 0.0) || !std::isfinite(link_distance))
        throw DomainError("link distance must be positive");
    if (!(mu > 0.0))
        throw DomainError("mu must be positive");
    if (!(noise_var >= 0.0))
        throw DomainError("noise variance must be non-negative");
}

const HermiteRule& gauss_hermite_rule(int n)
{
    if (n < 1)
        throw DomainError("gauss_hermite_rule: n must be >= 1");

    static std::mutex mutex;
    static std::map<int, HermiteRule> cache;
    std::lock_guard lock(mutex);
    if (auto it = cache.find(n); it != cache.end())
        return it->second;

    // Golub-Welsch: eigen-decomposition of the Jacobi matrix of the Hermite recurrence
    Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(n, n);
    for (int k = 1; k < n; ++k)
        jacobi(k, k - 1) = jacobi(k - 1, k) = std::sqrt(0.5 * k);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(jacobi);

    HermiteRule rule;
    rule.nodes.resize(static_cast<std::size_t>(n));
    rule.weights.resize(static_cast<std::size_t>(n));
    const double sqrt_pi = std::sqrt(pi);
    for (int k = 0; k < n; ++k)
    {
        rule.nodes[k] = eig.eigenvalues()(k);
        const double v0 = eig.eigenvectors()(0, k);
        rule.weights[k] = sqrt_pi * v0 * v0;
    }
    return cache.emplace(n, std::move(rule)).first->second;
}

double scaled_bessel_i0(double x)
{
    x = std::abs(x);
    if (x < 700.0)
        return std::exp(-x) * boost::math::cyl_bessel_i(0, x);

    // Hankel expansion, terms ((2k-1)!!)^2 / (k! 8^k x^k)
    double term = 1.0, sum = 1.0;
    for (int k = 1; k < 10; ++k)
    {
        const double odd = 2.0 * k - 1.0;
        term *= odd * odd / (8.0 * k * x);
        sum += term;
    }
    return sum / std::sqrt(2.0 * pi * x);
}

double rice_pdf(double rho, double nu, double sigma)
{
    if (rho < 0.0)
        return 0.0;
    const double s2 = sigma * sigma;
    const double dr = rho - nu;
    return rho / s2 * std::exp(-dr * dr / (2.0 * s2)) * scaled_bessel_i0(rho * nu / s2);
}

QuadratureValue interference_deficit(const NetworkParams& params, double r, const QuadratureParams& quad)
{
    params.validate();
    const double c = outage_scale(params);
    if (c == 0.0)
        return {};

    const double sigma = params.sigma;
    const double alpha = params.alpha;
    auto integrand = [&](double rho) {
        if (rho <= 0.0)
            return 0.0;
        return c / (std::pow(rho, alpha) + c) * rice_pdf(rho, r, sigma);
    };

    const double lo = std::max(0.0, r - kTailSigmas * sigma);
    const double hi = r + kTailSigmas * sigma;
    std::vector<double> pts{lo, hi};
    for (double b : {r, knee_radius(params)})
        if (b > lo && b < hi)
            pts.push_back(b);

    const double tol = quad.rel_tol * kInnerTolFactor;
    const Panels res = integrate_panels(integrand, pts, tol, quad.max_depth);
    if (!res.converged)
        throw NumericalError("interference deficit: quadrature did not converge", res.value, res.error);
    return {std::clamp(res.value, 0.0, 1.0), res.error};
}

QuadratureValue beta_tilde(const NetworkParams& params, Point2 y, const QuadratureParams& quad)
{
    require_analysis_params(params, "beta_tilde");
    const Point2 z{params.link_distance, 0.0};
    const QuadratureValue d = interference_deficit(params, (y + z).norm(), quad);
    return {1.0 - d.value, d.error};
}

QuadratureValue beta_tilde_hermite(const NetworkParams& params, Point2 y, const QuadratureParams& quad)
{
    require_analysis_params(params, "beta_tilde_hermite");
    const double c = outage_scale(params);
    if (c == 0.0)
        return {1.0, 0.0};

    const Point2 shift = -(y + Point2{params.link_distance, 0.0});
    const double scale = std::numbers::sqrt2 * params.sigma;
    const auto& kern = simd::kernels();

    auto evaluate = [&](int n) {
        const HermiteRule& rule = gauss_hermite_rule(n);
        const std::size_t m = static_cast<std::size_t>(n) * static_cast<std::size_t>(n);
        std::vector<double> nx(m), ny(m), w(m);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
            {
                const std::size_t k = static_cast<std::size_t>(i) * n + j;
                nx[k] = scale * rule.nodes[i];
                ny[k] = scale * rule.nodes[j];
                w[k] = rule.weights[i] * rule.weights[j] / pi;
            }
        return kern.weighted_sir_factor_sum(nx, ny, w, shift.x, shift.y, c, params.alpha);
    };

    int n = std::max(2, quad.hermite_nodes);
    double prev = evaluate(n);
    double change = std::abs(prev);
    while (2 * n <= quad.hermite_max_nodes)
    {
        n *= 2;
        const double cur = evaluate(n);
        change = std::abs(cur - prev);
        if (change <= quad.rel_tol * std::abs(cur))
            return {std::clamp(cur, 0.0, 1.0), change};
        prev = cur;
    }
    throw NumericalError("beta_tilde_hermite: node refinement did not converge", prev, change);
}

double jensen_bound(const NetworkParams& params, Point2 y)
{
    require_analysis_params(params, "jensen_bound");
    if (params.alpha > 4.0)
        throw DomainError("jensen_bound: requires alpha <= 4 (concavity)");
    const double s2 = params.sigma * params.sigma;
    const Point2 z{params.link_distance, 0.0};
    const double a2 = (y + z).norm2();
    // second raw moment of |x - y - z|^2
    const double m2 = (2.0 * s2 + a2) * (2.0 * s2 + a2) + 4.0 * s2 * s2 + 4.0 * s2 * a2;
    return 1.0 / (1.0 + outage_scale(params) * std::pow(m2, -params.alpha / 4.0));
}

QuadratureValue xi(const NetworkParams& params, const QuadratureParams& quad)
{
    require_analysis_params(params, "xi");
    if (params.alpha <= 2.0)
        throw DivergenceError("xi: interference integral diverges for alpha <= 2");
    const double c = outage_scale(params);
    if (c == 0.0)
        return {};

    const int cbar = params.cbar;
    const double alpha = params.alpha;
    const double scale = knee_radius(params) + 6.0 * params.sigma;
    const double r0 = quad.outer_radius > 0.0 ? quad.outer_radius : 4.0 * scale;
    const double far = 1e4 * r0;

    auto near_integrand = [&](double r) {
        const double d = interference_deficit(params, r, quad).value;
        return one_minus_power(d, cbar) * 2.0 * pi * r;
    };

    // r = s^(-1/(alpha-2)) maps [r0, inf) onto (0, r0^(2-alpha)] with a smooth integrand that
    // tends to 2 pi cbar c / (alpha - 2) as s -> 0.
    const double k = alpha - 2.0;
    const double limit = 2.0 * pi * cbar * c / k;
    auto tail_integrand = [&](double s) {
        if (s <= 0.0)
            return limit;
        const double r = std::pow(s, -1.0 / k);
        if (!(r < far))
            return limit;
        return near_integrand(r) * r / (k * s);
    };

    const double rel = quad.rel_tol * 0.25;
    const Panels near = integrate_panels(near_integrand, {0.0, 0.25 * scale, 0.5 * scale, scale, 2.0 * scale, r0},
                                         rel, quad.max_depth);
    const Panels tail = integrate_panels(tail_integrand, {0.0, std::pow(r0, -k)}, rel, quad.max_depth);

    const double value = near.value + tail.value;
    // each D(r) is accurate to the inner relative tolerance; 1 - (1 - D)^cbar moves by at most
    // cbar times that, and int D <= xi
    const double inner = cbar * quad.rel_tol * kInnerTolFactor * value;
    const double error = near.error + tail.error + inner;
    if (!near.converged || !tail.converged)
        throw NumericalError("xi: outer quadrature did not converge", value, error);
    return {value, error};
}

QuadratureValue success_prob_ia(const NetworkParams& params, const QuadratureParams& quad)
{
    const QuadratureValue x = xi(params, quad);
    const double p = std::exp(-params.lambda_p * x.value);
    return {p, p * params.lambda_p * x.error};
}

QuadratureValue intra_cluster_factor(const NetworkParams& params, const QuadratureParams& quad)
{
    require_analysis_params(params, "intra_cluster_factor");
    if (params.cbar == 1 || outage_scale(params) == 0.0)
        return {1.0, 0.0};

    const double d = params.link_distance;
    const double sigma = params.sigma;
    const int siblings = params.cbar - 1;
    auto integrand = [&](double r) {
        const double def = interference_deficit(params, r, quad).value;
        return std::exp(siblings * std::log1p(-std::min(def, 1.0))) * rice_pdf(r, d, sigma);
    };

    const double lo = std::max(0.0, d - kTailSigmas * sigma);
    const double hi = d + kTailSigmas * sigma;
    std::vector<double> pts{lo, hi};
    for (double b : {d, knee_radius(params)})
        if (b > lo && b < hi)
            pts.push_back(b);

    const Panels res = integrate_panels(integrand, pts, quad.rel_tol * 0.25, quad.max_depth);
    const double inner = siblings * quad.rel_tol * kInnerTolFactor;
    const double value = std::clamp(res.value, 0.0, 1.0);
    if (!res.converged)
        throw NumericalError("intra_cluster_factor: quadrature did not converge", value, res.error + inner);
    return {value, res.error + inner};
}

QuadratureValue success_prob_siso(const NetworkParams& params, const QuadratureParams& quad)
{
    const QuadratureValue ia = success_prob_ia(params, quad);
    const QuadratureValue intra = intra_cluster_factor(params, quad);
    const double p = ia.value * intra.value;
    return {p, ia.error * intra.value + ia.value * intra.error};
}

QuadratureValue upper_bound_1d(const NetworkParams& params, const QuadratureParams& quad)
{
    require_analysis_params(params, "upper_bound_1d");
    if (params.alpha > 4.0)
        throw DomainError("upper_bound_1d: requires alpha <= 4");
    if (params.alpha <= 2.0)
        throw DivergenceError("upper_bound_1d: integral diverges for alpha <= 2");
    const double c = outage_scale(params);
    if (c == 0.0)
        return {1.0, 0.0};

    const int cbar = params.cbar;
    const double alpha = params.alpha;
    const double s2 = params.sigma * params.sigma;
    const double s4x8 = 8.0 * s2 * s2;
    const double start = 4.0 * s2;

    // q = c (s^2 - 8 sigma^4)^(-alpha/4), factored so that s^2 never overflows
    auto integrand = [&](double s) {
        const double q = c * std::pow(s, -alpha / 2.0) * std::pow(1.0 - s4x8 / s / s, -alpha / 4.0);
        return -std::expm1(-cbar * std::log1p(q));
    };

    const double knee = std::sqrt(std::pow(c, 4.0 / alpha) + s4x8);
    const double s0 = 4.0 * std::max(knee, start) + start;

    // s = u^(-2/(alpha-2)); integrand tends to 2 cbar c / (alpha - 2) as u -> 0
    const double k = alpha - 2.0;
    const double limit = 2.0 * cbar * c / k;
    auto tail_integrand = [&](double u) {
        if (u <= 0.0)
            return limit;
        const double s = std::pow(u, -2.0 / k);
        if (!std::isfinite(s))
            return limit;
        // s^(1 - alpha/2) = u, so integrand(s) 2 s / (k u) = (integrand / q) c w 2 / k with
        // w = (1 - 8 sigma^4 / s^2)^(-alpha/4); no factor grows with s
        const double w = std::pow(1.0 - s4x8 / s / s, -alpha / 4.0);
        const double q = c * u * w / s;
        const double ratio = q > 0.0 ? -std::expm1(-cbar * std::log1p(q)) / q : cbar;
        return ratio * c * w * 2.0 / k;
    };

    const double rel = quad.rel_tol * 0.25;
    std::vector<double> pts{start, s0};
    if (knee > start && knee < s0)
        pts.push_back(knee);
    const Panels near = integrate_panels(integrand, pts, rel, quad.max_depth);
    const Panels tail = integrate_panels(tail_integrand, {0.0, std::pow(s0, -k / 2.0)}, rel, quad.max_depth);

    const double integral = pi * (near.value + tail.value);
    const double err = pi * (near.error + tail.error);
    const double p = std::exp(-params.lambda_p * integral);
    if (!near.converged || !tail.converged)
        throw NumericalError("upper_bound_1d: quadrature did not converge", p, p * params.lambda_p * err);
    return {p, p * params.lambda_p * err};
}

double delta_coeff(int cbar)
{
    if (cbar < 1)
        throw DomainError("delta_coeff: cbar must be >= 1");
    // term_k = (-1)^k binom(-1/2, k) = binom(2k, k) / 4^k, term_k = term_{k-1} (2k - 1) / (2k)
    double term = 1.0, sum = 1.0;
    for (int k = 1; k < cbar; ++k)
    {
        term *= (2.0 * k - 1.0) / (2.0 * k);
        sum += term;
    }
    return sum;
}

double upper_bound_closed_form(const NetworkParams& params)
{
    require_analysis_params(params, "upper_bound_closed_form");
    if (params.alpha != 4.0)
        throw DomainError("upper_bound_closed_form: defined for alpha = 4 only");
    const double s2 = params.sigma * params.sigma;
    if (s2 > 0.25)
        std::clog << "warning: closed-form bound assumes small clusters, sigma^2 = " << s2 << " > 0.25\n";

    const double d2 = params.link_distance * params.link_distance;
    const double root_t = std::sqrt(params.threshold);
    const double exponent =
        params.lambda_p * pi * delta_coeff(params.cbar) * d2 * root_t * std::atan(d2 * root_t / (4.0 * s2));
    return std::exp(-exponent);
}

double c_alpha(double alpha)
{
    if (!(alpha > 2.0) || !std::isfinite(alpha))
        throw DomainError("c_alpha: requires alpha > 2");
    return 2.0 * pi * pi / alpha / std::sin(2.0 * pi / alpha);
}

double ppp_baseline(const NetworkParams& params)
{
    params.validate();
    const double d2 = params.link_distance * params.link_distance;
    return std::exp(-params.intensity() * d2 * std::pow(params.threshold, 2.0 / params.alpha) *
                    c_alpha(params.alpha));
}

} // namespace iacluster
