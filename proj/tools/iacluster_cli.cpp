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

// iacluster: runs a sweep spec and writes curve data.
//
//   iacluster --spec specs/ia_vs_siso.spec --out out/ia_vs_siso.csv
//   iacluster --spec specs/ia_vs_siso.spec --out out/ia_vs_siso.csv --compare IA_ANALYSIS:SISO_ANALYSIS \
//             --metric relative_gain
//
// Exit codes: 0 success, 2 configuration error, 3 infeasible antenna/cluster setting,
// 4 numerical failure.

#include "iacluster/error.hpp"
#include "iacluster/experiment.hpp"
#include "iacluster/simd/kernels.hpp"

#include "CLI11.hpp"

#include <cstdio>
#include <iostream>
#include <algorithm>
#include <optional>
#include <string>
#include <vector>

namespace
{

constexpr int kExitConfig = 2;
constexpr int kExitFeasibility = 3;
constexpr int kExitNumerical = 4;

void print_comparison(const std::vector<iacluster::CurveRecord>& records, const std::string& pair,
                      iacluster::CompareMetric metric)
{
    using namespace iacluster;
    const auto colon = pair.find(':');
    if (colon == std::string::npos)
        throw ConfigError("compare", "expected MODE_A:MODE_B");
    const auto a = parse_mode(pair.substr(0, colon));
    const auto b = parse_mode(pair.substr(colon + 1));
    if (!a || !b)
        throw ConfigError("compare", "unknown mode in '" + pair + "'");

    // one comparison per parameter set, in order of first appearance
    std::vector<NetworkParams> sets;
    for (const auto& r : records)
    {
        NetworkParams p = r.params;
        p.link_distance = 1.0;
        if (std::find(sets.begin(), sets.end(), p) == sets.end())
            sets.push_back(p);
    }
    for (const auto& p : sets)
    {
        auto same = [&](const NetworkParams& q) {
            NetworkParams k = q;
            k.link_distance = 1.0;
            return k == p;
        };
        const auto ca = select_curve(records, *a, same);
        const auto cb = select_curve(records, *b, same);
        if (ca.empty() || cb.empty())
            continue;
        const Comparison cmp = compare_curves(ca, cb, metric);
        std::printf("# %s vs %s  lambda_p=%g cbar=%d sigma=%g alpha=%g T=%g\n", std::string(mode_name(*a)).c_str(),
                    std::string(mode_name(*b)).c_str(), p.lambda_p, p.cbar, p.sigma, p.alpha, p.threshold);
        std::printf("d_ii,a,b,metric\n");
        for (const auto& row : cmp.rows)
            std::printf("%.6g,%.10g,%.10g,%.10g\n", row.d_ii, row.a, row.b, row.metric);
        std::printf("# max %.6g at d_ii=%.6g\n", cmp.max_metric(), cmp.argmax_d());
    }
}

} // namespace

int main(int argc, char** argv)
{
    using namespace iacluster;

    CLI::App app{"Success probability sweeps for clustered ad hoc networks with interference alignment"};
    std::string spec_path;
    std::string out_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::int64_t> trials;
    std::vector<std::string> modes;
    std::string format;
    std::string compare;
    std::string metric_name = "ratio";
    std::optional<unsigned> threads;

    app.add_option("--spec", spec_path, "Sweep spec file")->required();
    app.add_option("--out", out_path, "Output path (overrides the sweep file's output key)");
    app.add_option("--seed", seed, "Master seed for Monte-Carlo modes");
    app.add_option("--trials", trials, "Monte-Carlo trials per grid point");
    app.add_option("--mode", modes, "Modes to run (overrides the sweep file), e.g. IA_MC,SISO_MC")->delimiter(',');
    app.add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--threads", threads, "Worker threads for Monte-Carlo modes (0 = all cores)");
    app.add_option("--compare", compare, "Print a comparison MODE_A:MODE_B per parameter set");
    app.add_option("--metric", metric_name, "ratio, relative_gain or abs_diff");

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError& e)
    {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kExitConfig;
    }

    try
    {
        ExperimentSpec spec = load_spec(spec_path);
        if (seed)
            spec.seed = *seed;
        if (trials)
            spec.trials = *trials;
        if (threads)
            spec.threads = *threads;
        if (!format.empty())
            spec.format = format == "json" ? OutputFormat::Json : OutputFormat::Csv;
        if (!out_path.empty())
            spec.output = out_path;
        if (!modes.empty())
        {
            spec.modes.clear();
            for (const auto& m : modes)
            {
                const auto parsed = parse_mode(m);
                if (!parsed)
                    throw ConfigError("mode", "unknown mode '" + m + "'");
                spec.modes.push_back(*parsed);
            }
        }
        std::optional<CompareMetric> metric = parse_metric(metric_name);
        if (!metric)
            throw ConfigError("metric", "unknown metric '" + metric_name + "'");

        spec.validate();
        std::clog << "iacluster: " << (spec.name.empty() ? spec_path : spec.name) << ", kernels "
                  << simd::isa_name(simd::active_isa()) << "\n";
        const auto records = run_experiment(spec);

        if (spec.output.empty() || spec.output == "-")
        {
            if (spec.format == OutputFormat::Json)
                std::cout << records_to_json(spec, records) << "\n";
            else
                write_csv(std::cout, records);
        }
        else
        {
            write_output(spec, records, spec.output);
            std::clog << "iacluster: wrote " << records.size() << " records to " << spec.output << "\n";
        }

        if (!compare.empty())
            print_comparison(records, compare, *metric);
        return 0;
    }
    catch (const FeasibilityError& e)
    {
        std::cerr << "iacluster: infeasible setting: " << e.what() << "\n";
        return kExitFeasibility;
    }
    catch (const ConfigError& e)
    {
        std::cerr << "iacluster: configuration error: " << e.what() << "\n";
        return kExitConfig;
    }
    catch (const GridMismatchError& e)
    {
        std::cerr << "iacluster: configuration error: " << e.what() << "\n";
        return kExitConfig;
    }
    catch (const DomainError& e)
    {
        std::cerr << "iacluster: configuration error: " << e.what() << "\n";
        return kExitConfig;
    }
    catch (const NumericalError& e)
    {
        std::cerr << "iacluster: numerical failure: " << e.what() << " (partial value " << e.partial_value()
                  << ")\n";
        return kExitNumerical;
    }
    catch (const ConvergenceError& e)
    {
        std::cerr << "iacluster: numerical failure: " << e.what() << "\n";
        return kExitNumerical;
    }
    catch (const RunError& e)
    {
        std::cerr << "iacluster: numerical failure: " << e.what() << "\n";
        return kExitNumerical;
    }
    catch (const std::exception& e)
    {
        std::cerr << "iacluster: " << e.what() << "\n";
        return 1;
    }
}
