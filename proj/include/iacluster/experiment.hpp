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

#ifndef IACLUSTER_EXPERIMENT_HPP
#define IACLUSTER_EXPERIMENT_HPP

// Parameter sweeps over d_ii: spec files, curve records, CSV/JSON output and curve comparison.
//
// Spec file syntax (one `key = value` per line, `#` starts a comment):
//
//   lambda_p  = 0.25                 # scalar
//   sigma     = [0.0625, 0.25, 1]    # sweep list
//   d_ii      = 0.1:0.1:1.5          # inclusive range start:step:stop
//   modes     = IA_ANALYSIS, SISO_ANALYSIS
//
// Sweepable keys: lambda_p, cbar, sigma, alpha, threshold. `total_intensity` replaces
// lambda_p by total_intensity / cbar for every cbar of the sweep.

#include "iacluster/analysis.hpp"
#include "iacluster/montecarlo.hpp"

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace iacluster
{

enum class CurveMode
{
    IaAnalysis,
    SisoAnalysis,
    IaMc,
    SisoMc,
    Bound1d,
    BoundClosed,
    PppBaseline,
};

std::string_view mode_name(CurveMode mode);
std::optional<CurveMode> parse_mode(std::string_view name);

enum class OutputFormat
{
    Csv,
    Json,
};

struct ExperimentSpec
{
    std::string name;
    std::vector<std::string> notes;

    std::vector<double> lambda_p{0.25};
    std::optional<double> total_intensity;
    std::vector<int> cbar{3};
    std::vector<double> sigma{0.25};
    std::vector<double> alpha{4.0};
    std::vector<double> threshold{0.1};
    std::vector<double> d_ii; // empty selects 0.1, 0.2, ..., 1.5

    double mu = 1.0;
    double noise_var = 0.0;
    int n_t = 2;
    int n_r = 2;

    std::vector<CurveMode> modes;
    std::int64_t trials = 100000;
    std::uint64_t seed = 1;
    InterfererPrecoding interferer_precoding = InterfererPrecoding::Isotropic;
    bool closed_form_ia = true;
    int ia_max_iterations = 5000; // per solver attempt
    double quad_rel_tol = 1e-6;
    unsigned threads = 0;

    std::string output;
    OutputFormat format = OutputFormat::Csv;

    /// Throws ConfigError (with the field name) or FeasibilityError.
    void validate() const;

    std::vector<double> resolved_grid() const;

    /// Cartesian product of the sweep lists, d_ii left at its default.
    std::vector<NetworkParams> parameter_sets() const;
};

std::vector<double> default_distance_grid();

ExperimentSpec parse_spec(std::istream& in, const std::string& source = "<spec>");
ExperimentSpec load_spec(const std::string& path);

struct CurveRecord
{
    double d_ii = 0.0;
    CurveMode mode = CurveMode::IaAnalysis;
    double value = 0.0;
    double err = 0.0;             // CI half-width (MC) or quadrature error estimate
    std::int64_t trials = 0;      // MC trials, 0 for deterministic modes
    double wall_ms = 0.0;
    NetworkParams params;         // curve parameters (link_distance == d_ii)

    /// `lambda_p=..;cbar=..;sigma=..;alpha=..;T=..;trials=..;wall_ms=..`
    std::string meta() const;

    bool operator==(const CurveRecord&) const = default;
};

/// One record per (parameter set, mode, d_ii), in that nesting order.
std::vector<CurveRecord> run_experiment(const ExperimentSpec& spec);

/// Evaluates a single mode at one parameter point.
CurveRecord evaluate_point(const ExperimentSpec& spec, const NetworkParams& params, CurveMode mode);

void write_csv(std::ostream& out, const std::vector<CurveRecord>& records);
std::vector<CurveRecord> read_csv(std::istream& in);

std::string spec_to_json(const ExperimentSpec& spec);
std::string records_to_json(const ExperimentSpec& spec, const std::vector<CurveRecord>& records);
std::vector<CurveRecord> records_from_json(const std::string& text);

/// Writes the records in the sweep file's format via a temporary file and rename. CSV output gets a
/// `<path>.json` sidecar with the resolved spec.
void write_output(const ExperimentSpec& spec, const std::vector<CurveRecord>& records, const std::string& path);

/// Records of one mode whose parameters satisfy `where`, sorted by d_ii.
std::vector<CurveRecord> select_curve(const std::vector<CurveRecord>& records, CurveMode mode,
                                      const std::function<bool(const NetworkParams&)>& where = {});

enum class CompareMetric
{
    Ratio,        // a / b
    RelativeGain, // (a - b) / b
    AbsDiff,      // a - b
};

std::optional<CompareMetric> parse_metric(std::string_view name);

struct ComparisonRow
{
    double d_ii;
    double a;
    double b;
    double metric;
};

struct Comparison
{
    std::vector<ComparisonRow> rows;
    std::size_t argmax = 0;

    double max_metric() const { return rows.at(argmax).metric; }
    double argmax_d() const { return rows.at(argmax).d_ii; }
};

/// Throws GridMismatchError unless both curves share the same d_ii grid.
Comparison compare_curves(const std::vector<CurveRecord>& a, const std::vector<CurveRecord>& b,
                          CompareMetric metric);

} // namespace iacluster

#endif
