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

#include "iacluster/alignment.hpp"

#include "iacluster/error.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace iacluster
{

FeasibilityError::FeasibilityError(int n_t, int n_r, int cbar)
    : Error("infeasible alignment setting: N_R + N_T - 1 >= cbar violated (N_T=" + std::to_string(n_t) +
            ", N_R=" + std::to_string(n_r) + ", cbar=" + std::to_string(cbar) + ")"),
      n_t_(n_t), n_r_(n_r), cbar_(cbar)
{
}

ClusterChannels::ClusterChannels(int cbar, int n_r, int n_t)
    : cbar_(cbar), n_r_(n_r), n_t_(n_t)
{
    if (cbar < 1 || n_r < 1 || n_t < 1)
        throw DimensionError("cluster channels: cbar and antenna counts must be >= 1");
    channels_.resize(static_cast<std::size_t>(cbar * cbar), MimoChannel{CMatrix::Zero(n_r, n_t), 1.0});
}

ClusterChannels ClusterChannels::sample(int cbar, int n_r, int n_t, double mu, Rng& rng)
{
    ClusterChannels out(cbar, n_r, n_t);
    for (int i = 0; i < cbar; ++i)
        for (int j = 0; j < cbar; ++j)
            out.at(i, j) = sample_channel(n_r, n_t, mu, rng);
    return out;
}

void ClusterChannels::set(int rx, int tx, MimoChannel h)
{
    if (h.n_r() != n_r_ || h.n_t() != n_t_)
        throw DimensionError("cluster channels: link shape differs from cluster shape");
    at(rx, tx) = std::move(h);
}

bool is_feasible(int n_t, int n_r, int cbar)
{
    return n_r + n_t - 1 >= cbar;
}

void require_feasible(int n_t, int n_r, int cbar)
{
    if (n_t < 1 || n_r < 1 || cbar < 1)
        throw DimensionError("antenna counts and cbar must be >= 1");
    if (!is_feasible(n_t, n_r, cbar))
        throw FeasibilityError(n_t, n_r, cbar);
}

Complex effective_coefficient(const CVector& u, const MimoChannel& h, const CVector& v)
{
    if (u.size() != h.entries.rows() || v.size() != h.entries.cols())
        throw DimensionError("effective_coefficient: u, H, v shapes do not conform");
    return u.dot(h.entries * v); // Eigen's dot conjugates the left operand
}

double total_leakage(const ClusterChannels& channels, const std::vector<CVector>& precoders,
                     const std::vector<CVector>& combiners)
{
    double sum = 0.0;
    for (int i = 0; i < channels.cbar(); ++i)
        for (int j = 0; j < channels.cbar(); ++j)
            if (i != j)
                sum += std::norm(combiners[i].dot(channels.at(i, j).entries * precoders[j]));
    return sum;
}

namespace
{

void rephase(CVector& v)
{
    const double norm = v.norm();
    for (Eigen::Index k = 0; k < v.size(); ++k)
    {
        const double mag = std::abs(v(k));
        if (mag > 1e-12 * norm)
        {
            v *= std::conj(v(k)) / mag;
            v(k) = Complex(std::abs(v(k)), 0.0);
            return;
        }
    }
}

CVector min_eigenvector_2x2(const CMatrix& q)
{
    const double a = q(0, 0).real();
    const double c = q(1, 1).real();
    const Complex b = q(0, 1);
    const double half_diff = 0.5 * (a - c);
    const double lambda = 0.5 * (a + c) - std::sqrt(half_diff * half_diff + std::norm(b));

    // Two null vectors of Q - lambda I; keep the better conditioned one.
    CVector x1(2), x2(2);
    x1 << b, Complex(lambda - a, 0.0);
    x2 << Complex(lambda - c, 0.0), std::conj(b);
    CVector v = x1.squaredNorm() >= x2.squaredNorm() ? x1 : x2;
    const double n = v.norm();
    if (!(n > 0.0) || !std::isfinite(n))
    {
        // Q is a multiple of the identity
        v = CVector::Zero(2);
        v(0) = 1.0;
        return v;
    }
    v /= n;
    rephase(v);
    return v;
}

} // namespace

CVector min_eigenvector(const CMatrix& hermitian)
{
    if (hermitian.rows() != hermitian.cols() || hermitian.rows() < 1)
        throw DimensionError("min_eigenvector: matrix must be square");
    if (hermitian.rows() == 1)
        return CVector::Ones(1);
    if (hermitian.rows() == 2)
        return min_eigenvector_2x2(hermitian);

    Eigen::SelfAdjointEigenSolver<CMatrix> solver(hermitian);
    CVector v = solver.eigenvectors().col(0);
    v.normalize();
    rephase(v);
    return v;
}

bool solve_ia_closed_form(const ClusterChannels& channels, AlignmentSolution& out)
{
    if (channels.cbar() != 3 || channels.n_r() != 2 || channels.n_t() != 2)
        return false;

    auto h = [&](int rx, int tx) -> Eigen::Matrix2cd { return channels.at(rx, tx).entries; };
    const Eigen::Matrix2cd e = h(1, 0).inverse() * h(1, 2) * h(0, 2).inverse() * h(0, 1) *
                               h(2, 1).inverse() * h(2, 0);
    Eigen::ComplexEigenSolver<Eigen::Matrix2cd> eig(e);
    if (eig.info() != Eigen::Success)
        return false;

    std::vector<CVector> v(3);
    v[0] = eig.eigenvectors().col(0);
    v[1] = h(2, 1).inverse() * h(2, 0) * v[0]; // aligned with v_1 at receiver 3
    v[2] = h(1, 2).inverse() * h(1, 0) * v[0]; // aligned with v_1 at receiver 2
    for (auto& x : v)
    {
        const double n = x.norm();
        if (!(n > 0.0) || !std::isfinite(n))
            return false;
        x /= n;
        rephase(x);
    }

    // combiner orthogonal to the (single) interference direction at each receiver
    std::vector<CVector> u(3);
    for (int i = 0; i < 3; ++i)
    {
        const int j = (i + 1) % 3;
        const CVector w = h(i, j) * v[j];
        CVector ui(2);
        ui << -std::conj(w(1)), std::conj(w(0));
        const double n = ui.norm();
        if (!(n > 0.0) || !std::isfinite(n))
            return false;
        ui /= n;
        rephase(ui);
        u[i] = ui;
    }

    out.precoders = std::move(v);
    out.combiners = std::move(u);
    out.leakage = total_leakage(channels, out.precoders, out.combiners);
    out.iterations = 0;
    out.restarts = 0;
    out.used_closed_form = true;
    return std::isfinite(out.leakage);
}

namespace
{

bool rank_ok(const ClusterChannels& channels, const AlignmentSolution& s, double threshold)
{
    for (int i = 0; i < channels.cbar(); ++i)
        if (!(std::abs(s.combiners[i].dot(channels.at(i, i).entries * s.precoders[i])) > threshold))
            return false;
    return true;
}

} // namespace

AlignmentSolution solve_ia(const ClusterChannels& channels, const SolverOptions& options, Rng& rng,
                           std::vector<double>* trace)
{
    const int k = channels.cbar();
    const int n_r = channels.n_r();
    const int n_t = channels.n_t();
    require_feasible(n_t, n_r, k);

    AlignmentSolution sol;
    if (k == 1)
    {
        sol.precoders = {random_unit_vector(n_t, rng)};
        sol.combiners = {random_unit_vector(n_r, rng)};
        rephase(sol.precoders[0]);
        rephase(sol.combiners[0]);
        sol.leakage = 0.0;
        return sol;
    }

    if (options.closed_form && solve_ia_closed_form(channels, sol) && sol.leakage <= options.tolerance &&
        rank_ok(channels, sol, options.rank_threshold))
        return sol;

    double best = std::numeric_limits<double>::infinity();
    std::vector<CVector> v(k), u(k);
    CMatrix q_r(n_r, n_r), q_t(n_t, n_t);
    std::vector<CVector> w(k);

    for (int attempt = 0; attempt <= options.max_restarts; ++attempt)
    {
        for (auto& x : v)
            x = random_unit_vector(n_t, rng);

        double leakage = std::numeric_limits<double>::infinity();
        int it = 0;
        while (it < options.max_iterations)
        {
            ++it;
            // forward network: combiners
            for (int i = 0; i < k; ++i)
            {
                q_r.setZero();
                for (int j = 0; j < k; ++j)
                {
                    if (j == i)
                        continue;
                    w[j] = channels.at(i, j).entries * v[j];
                    q_r.noalias() += w[j] * w[j].adjoint();
                }
                u[i] = min_eigenvector(q_r);
            }
            if (trace != nullptr)
                trace->push_back(total_leakage(channels, v, u));

            // reciprocal network: precoders
            for (int j = 0; j < k; ++j)
            {
                q_t.setZero();
                for (int i = 0; i < k; ++i)
                {
                    if (i == j)
                        continue;
                    w[i] = channels.at(i, j).entries.adjoint() * u[i];
                    q_t.noalias() += w[i] * w[i].adjoint();
                }
                v[j] = min_eigenvector(q_t);
            }

            leakage = total_leakage(channels, v, u);
            if (trace != nullptr)
                trace->push_back(leakage);
            if (leakage <= options.tolerance)
                break;
        }

        best = std::min(best, leakage);
        if (leakage <= options.tolerance)
        {
            sol.precoders = v;
            sol.combiners = u;
            sol.leakage = leakage;
            sol.iterations = it;
            sol.restarts = attempt;
            if (rank_ok(channels, sol, options.rank_threshold))
                return sol;
        }
    }

    throw ConvergenceError("alignment solver did not reach leakage tolerance after " +
                               std::to_string(options.max_restarts) + " restarts",
                           best);
}

} // namespace iacluster
