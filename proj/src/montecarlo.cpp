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

#include "iacluster/montecarlo.hpp"

#include "iacluster/error.hpp"
#include "iacluster/simd/kernels.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>

namespace iacluster
{

namespace
{

constexpr std::uint64_t kMaxAttempts = 16;

// SoA buffers for the foreign links of one trial
struct LinkBuffers
{
    std::vector<double> dx, dy;
    std::vector<double> h_re, h_im, v_re, v_im;
    std::vector<double> power;
};

} // namespace

void TrialConfig::validate() const
{
    params.validate();
    if (mode == LinkMode::MimoIa)
        require_feasible(n_t, n_r, params.cbar);
    if (trials < 1)
        throw DomainError("trial count must be positive");
    if (window_radius < 0.0)
        throw DomainError("window radius must be non-negative");
}

double TrialConfig::resolved_window_radius() const
{
    if (window_radius > 0.0)
        return window_radius;
    const ClusterConfig cc(params.lambda_p, params.cbar, ScatterKernel(params.sigma));
    return default_window_radius(cc, params.link_distance, params.threshold, params.alpha);
}

TrialStreams TrialStreams::make(std::uint64_t master_seed, std::uint64_t trial, std::uint64_t attempt)
{
    return {make_rng(master_seed, trial, attempt, Stream::Geometry),
            make_rng(master_seed, trial, attempt, Stream::Fading),
            make_rng(master_seed, trial, attempt, Stream::Precoder),
            make_rng(master_seed, trial, attempt, Stream::Cluster)};
}

double ci_half_width(double p_hat, std::int64_t trials)
{
    if (trials <= 0)
        return 0.0;
    return 1.96 * std::sqrt(p_hat * (1.0 - p_hat) / static_cast<double>(trials));
}

TrialOutcome evaluate_trial(const TrialConfig& config, const PalmRealization& realization,
                            TrialStreams& streams)
{
    const NetworkParams& p = config.params;
    const int n_t = config.tx_antennas();
    const int n_r = config.rx_antennas();
    const double mu = p.mu;
    const PathLossModel path_loss(p.alpha);
    const Point2 rx{p.link_distance, 0.0};

    TrialOutcome out;

    // reference cluster: link 0 is the reference pair
    const ClusterChannels own = ClusterChannels::sample(p.cbar, n_r, n_t, mu, streams.cluster);
    CVector u, v;
    if (config.mode == LinkMode::MimoIa)
    {
        const AlignmentSolution sol = solve_ia(own, config.solver, streams.cluster);
        u = sol.combiners[0];
        v = sol.precoders[0];
    }
    else
    {
        u = CVector::Ones(1);
        v = CVector::Ones(1);
    }
    out.fading_power = std::norm(effective_coefficient(u, own.at(0, 0), v));
    out.signal_power = out.fading_power * path_loss.gain(p.link_distance);

    if (config.mode == LinkMode::Siso)
    {
        const std::size_t mates = std::min<std::size_t>(realization.sibling_txs.size(), p.cbar - 1);
        for (std::size_t j = 0; j < mates; ++j)
        {
            const double h2 = std::norm(own.at(0, static_cast<int>(j) + 1).entries(0, 0));
            out.intra_cluster += h2 * path_loss.gain((realization.sibling_txs[j] - rx).norm());
        }
    }

    // foreign transmitters
    std::size_t count = 0;
    for (const auto& c : realization.other_clusters)
        count += c.daughters.size();

    LinkBuffers buf;
    buf.dx.resize(count);
    buf.dy.resize(count);
    buf.h_re.resize(count * n_r * n_t);
    buf.h_im.resize(count * n_r * n_t);
    buf.v_re.resize(count * n_t);
    buf.v_im.resize(count * n_t);
    buf.power.resize(count);

    std::size_t k = 0;
    for (const auto& cluster : realization.other_clusters)
    {
        std::vector<CVector> cluster_precoders;
        if (config.mode == LinkMode::MimoIa && config.interferer_precoding == InterfererPrecoding::FullIa)
        {
            const ClusterChannels theirs =
                ClusterChannels::sample(static_cast<int>(cluster.daughters.size()), n_r, n_t, mu, streams.precoder);
            cluster_precoders = solve_ia(theirs, config.solver, streams.precoder).precoders;
        }

        for (std::size_t m = 0; m < cluster.daughters.size(); ++m, ++k)
        {
            const Point2 d = cluster.daughters[m] - rx;
            if (d.x == 0.0 && d.y == 0.0)
                throw DomainError("interferer located at the receiver");
            buf.dx[k] = d.x;
            buf.dy[k] = d.y;

            const MimoChannel h = sample_channel(n_r, n_t, mu, streams.fading);
            for (int r = 0; r < n_r; ++r)
                for (int c = 0; c < n_t; ++c)
                {
                    const std::size_t idx = static_cast<std::size_t>(r * n_t + c) * count + k;
                    buf.h_re[idx] = h.entries(r, c).real();
                    buf.h_im[idx] = h.entries(r, c).imag();
                }

            CVector vj;
            if (config.mode == LinkMode::Siso)
                vj = CVector::Ones(1);
            else if (config.interferer_precoding == InterfererPrecoding::FullIa)
                vj = cluster_precoders[m];
            else
                vj = random_unit_vector(n_t, streams.precoder);
            for (int c = 0; c < n_t; ++c)
            {
                buf.v_re[static_cast<std::size_t>(c) * count + k] = vj(c).real();
                buf.v_im[static_cast<std::size_t>(c) * count + k] = vj(c).imag();
            }
        }
    }

    if (count > 0)
    {
        std::vector<double> u_re(n_r), u_im(n_r);
        for (int r = 0; r < n_r; ++r)
        {
            u_re[r] = u(r).real();
            u_im[r] = u(r).imag();
        }
        const simd::LinkBatch batch{n_r, n_t, count, buf.h_re, buf.h_im, buf.v_re, buf.v_im, u_re, u_im};
        const auto& kern = simd::kernels();
        kern.effective_power(batch, buf.power);
        out.inter_cluster = kern.weighted_path_gain_sum(buf.dx, buf.dy, buf.power, p.alpha);
    }

    const double denom = p.noise_var + out.inter_cluster + out.intra_cluster;
    out.sir = denom > 0.0 ? out.signal_power / denom : std::numeric_limits<double>::infinity();
    out.success = out.sir >= p.threshold;
    return out;
}

TrialOutcome run_trial(const TrialConfig& config, std::int64_t trial_index, std::uint64_t attempt)
{
    TrialStreams streams = TrialStreams::make(config.master_seed, static_cast<std::uint64_t>(trial_index), attempt);
    const ClusterConfig cc(config.params.lambda_p, config.params.cbar, ScatterKernel(config.params.sigma));
    const PalmRealization realization = sample_palm(cc, config.resolved_window_radius(), streams.geometry);
    return evaluate_trial(config, realization, streams);
}

SuccessEstimate estimate_success(const TrialConfig& config)
{
    config.validate();
    if (config.trials < 100)
        throw DomainError("estimate_success: at least 100 trials required");

    const std::int64_t n = config.trials;
    const std::int64_t cap = n / 1000; // 0.1 %
    unsigned workers = config.threads != 0 ? config.threads : std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::int64_t>(workers, n));

    // resolve once, not per trial
    TrialConfig resolved = config;
    resolved.window_radius = config.resolved_window_radius();

    std::atomic<std::int64_t> successes{0};
    std::atomic<std::int64_t> resampled{0};
    std::atomic<bool> abort{false};
    std::exception_ptr failure;
    std::mutex failure_mutex;

    auto work = [&](unsigned w) {
        std::int64_t local_ok = 0;
        try
        {
            for (std::int64_t t = w; t < n && !abort.load(std::memory_order_relaxed); t += workers)
            {
                for (std::uint64_t attempt = 0;; ++attempt)
                {
                    try
                    {
                        local_ok += run_trial(resolved, t, attempt).success ? 1 : 0;
                        break;
                    }
                    catch (const ConvergenceError&)
                    {
                        if (resampled.fetch_add(1) + 1 > cap || attempt + 1 >= kMaxAttempts)
                            throw RunError("too many alignment failures (more than 0.1 % of trials)");
                    }
                }
            }
        }
        catch (...)
        {
            std::lock_guard lock(failure_mutex);
            if (!failure)
                failure = std::current_exception();
            abort = true;
        }
        successes += local_ok;
    };

    if (workers <= 1)
        work(0);
    else
    {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w)
            pool.emplace_back(work, w);
        for (auto& th : pool)
            th.join();
    }
    if (failure)
        std::rethrow_exception(failure);

    SuccessEstimate est;
    est.trials = n;
    est.p_hat = static_cast<double>(successes.load()) / static_cast<double>(n);
    est.ci_half_width = ci_half_width(est.p_hat, n);
    est.seed = config.master_seed;
    est.resampled_trials = resampled.load();
    return est;
}

} // namespace iacluster
