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

#ifndef IACLUSTER_ANALYSIS_HPP
#define IACLUSTER_ANALYSIS_HPP

// Semi-analytical success probabilities of the clustered network with the reference
// transmitter at the origin and its receiver at z = (d_ii, 0), interference-limited
// (zero noise), Rayleigh fading and g(d) = d^-alpha.
//
// The interference of one foreign cluster only depends on the distance r between its parent
// and the receiver, because the scattering kernel is isotropic. With D(r) the probability that
// a single daughter of that cluster causes outage,
//
//     D(r) = E[ c / (R^alpha + c) ],  c = T d_ii^alpha,  R ~ Rice(r, sigma),
//
// every planar integral below reduces to one-dimensional radial integrals:
//
//     beta_tilde = 1 - D(|y + z|)
//     xi         = int_0^inf (1 - (1 - D(r))^cbar) 2 pi r dr
//     p_ia       = exp(-lambda_p xi)
//     p_siso     = p_ia * E[(1 - D(R'))^(cbar - 1)],  R' ~ Rice(d_ii, sigma)

#include "iacluster/geometry.hpp"

#include <vector>

namespace iacluster
{

struct NetworkParams
{
    double lambda_p = 0.25;      // parent intensity
    int cbar = 3;                // transmitters per cluster
    double sigma = 0.25;         // scattering scale (per-axis standard deviation)
    double alpha = 4.0;          // path-loss exponent
    double threshold = 0.1;      // SIR threshold T
    double link_distance = 1.0;  // d_ii
    double mu = 1.0;             // mean fading power; analysis results do not depend on it
    double noise_var = 0.0;

    /// Throws DomainError on values outside the model (sigma <= 0, d_ii <= 0, ...).
    void validate() const;

    double intensity() const { return lambda_p * cbar; }

    bool operator==(const NetworkParams&) const = default;
};

struct QuadratureParams
{
    double rel_tol = 1e-6;
    double outer_radius = 0.0; // 0 selects it from the parameters
    int hermite_nodes = 48;    // per axis, first level of the tensor Gauss-Hermite rule
    int hermite_max_nodes = 768;
    unsigned max_depth = 18;   // bisection depth of the adaptive Gauss-Kronrod rule
};

struct QuadratureValue
{
    double value = 0.0;
    double error = 0.0; // estimated absolute error
};

/// Gauss-Hermite rule for the weight exp(-t^2).
struct HermiteRule
{
    std::vector<double> nodes;
    std::vector<double> weights;
};

const HermiteRule& gauss_hermite_rule(int n);

/// exp(-x) I_0(x) for x >= 0.
double scaled_bessel_i0(double x);

/// Rice density of |X - z| for X ~ N(0, sigma^2 I) and |z| = nu.
double rice_pdf(double rho, double nu, double sigma);

/// D(r): outage probability caused by one daughter of a cluster whose parent is at distance r
/// from the receiver.
QuadratureValue interference_deficit(const NetworkParams& params, double r, const QuadratureParams& quad = {});

/// int f(x) / (1 + T g(x - y - z) / g(z)) dx, evaluated along the radial route.
QuadratureValue beta_tilde(const NetworkParams& params, Point2 y, const QuadratureParams& quad = {});

/// Same quantity from a tensorised Gauss-Hermite rule over the Gaussian weight, refined by
/// doubling the node count until the change falls below rel_tol.
QuadratureValue beta_tilde_hermite(const NetworkParams& params, Point2 y, const QuadratureParams& quad = {});

/// Jensen upper bound on beta_tilde from the second raw moment of |x - y - z|^2.
/// Requires 2 <= alpha <= 4.
double jensen_bound(const NetworkParams& params, Point2 y);

/// xi = int (1 - beta_tilde^cbar) dy. Throws DivergenceError for alpha <= 2.
QuadratureValue xi(const NetworkParams& params, const QuadratureParams& quad = {});

/// exp(-lambda_p xi): success probability with intra-cluster interference aligned away.
QuadratureValue success_prob_ia(const NetworkParams& params, const QuadratureParams& quad = {});

/// int beta_tilde^(cbar - 1) f(y) dy: success probability factor due to the cluster mates.
QuadratureValue intra_cluster_factor(const NetworkParams& params, const QuadratureParams& quad = {});

/// Single-antenna network without cooperation (intra- and inter-cluster interference).
QuadratureValue success_prob_siso(const NetworkParams& params, const QuadratureParams& quad = {});

/// Upper bound on success_prob_ia from the Jensen bound, as a one-dimensional integral over
/// [4 sigma^2, inf). Requires 2 < alpha <= 4.
QuadratureValue upper_bound_1d(const NetworkParams& params, const QuadratureParams& quad = {});

/// sum_{k=0}^{cbar-1} (-1)^k binom(-1/2, k) = sum_k binom(2k, k) / 4^k.
double delta_coeff(int cbar);

/// Closed-form bound for alpha = 4 and small clusters:
/// exp(-lambda_p pi delta(cbar) d^2 sqrt(T) atan(d^2 sqrt(T) / (4 sigma^2))).
/// Warns on std::clog when sigma^2 > 0.25, where the small-cluster approximation is poor.
double upper_bound_closed_form(const NetworkParams& params);

/// 2 pi^2 / alpha * csc(2 pi / alpha), alpha > 2.
double c_alpha(double alpha);

/// Success probability in a homogeneous PPP of intensity lambda_p * cbar.
double ppp_baseline(const NetworkParams& params);

} // namespace iacluster

#endif
