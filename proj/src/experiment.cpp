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

#include "iacluster/experiment.hpp"

#include "iacluster/error.hpp"
#include "iacluster/simd/kernels.hpp"

#include "json.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <istream>
#include <map>
#include <sstream>

namespace iacluster
{

namespace
{

constexpr std::pair<CurveMode, std::string_view> kModeNames[] = {
    {CurveMode::IaAnalysis, "IA_ANALYSIS"}, {CurveMode::SisoAnalysis, "SISO_ANALYSIS"},
    {CurveMode::IaMc, "IA_MC"},             {CurveMode::SisoMc, "SISO_MC"},
    {CurveMode::Bound1d, "BOUND_1D"},       {CurveMode::BoundClosed, "BOUND_CLOSED"},
    {CurveMode::PppBaseline, "PPP_BASELINE"},
};

bool is_mc(CurveMode m)
{
    return m == CurveMode::IaMc || m == CurveMode::SisoMc;
}

// modes describing the aligned multi-antenna network
bool is_aligned(CurveMode m)
{
    return m == CurveMode::IaAnalysis || m == CurveMode::IaMc || m == CurveMode::Bound1d ||
           m == CurveMode::BoundClosed;
}

bool is_analysis(CurveMode m)
{
    return m == CurveMode::IaAnalysis || m == CurveMode::SisoAnalysis || m == CurveMode::Bound1d ||
           m == CurveMode::BoundClosed;
}

std::string trim(std::string_view s)
{
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos)
        return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(b, e - b + 1));
}

std::string format_double(double v)
{
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

double to_double(std::string_view text, const std::string& field)
{
    const std::string t = trim(text);
    double v = 0.0;
    const auto res = std::from_chars(t.data(), t.data() + t.size(), v);
    if (res.ec != std::errc() || res.ptr != t.data() + t.size() || t.empty())
        throw ConfigError(field, "expected a number, got '" + t + "'");
    return v;
}

long long to_integer(std::string_view text, const std::string& field)
{
    const std::string t = trim(text);
    long long v = 0;
    const auto res = std::from_chars(t.data(), t.data() + t.size(), v);
    if (res.ec != std::errc() || res.ptr != t.data() + t.size() || t.empty())
        throw ConfigError(field, "expected an integer, got '" + t + "'");
    return v;
}

std::vector<std::string> split_list(std::string_view text)
{
    std::string t = trim(text);
    if (!t.empty() && t.front() == '[')
    {
        if (t.back() != ']')
            throw ConfigError("", "unterminated list '" + t + "'");
        t = t.substr(1, t.size() - 2);
    }
    std::vector<std::string> out;
    std::stringstream ss(t);
    std::string item;
    while (std::getline(ss, item, ','))
    {
        item = trim(item);
        if (!item.empty())
            out.push_back(item);
    }
    return out;
}

std::vector<double> parse_reals(std::string_view text, const std::string& field)
{
    const std::string t = trim(text);
    if (t.find(':') != std::string::npos && t.front() != '[')
    {
        // start:step:stop, inclusive
        std::vector<std::string> parts;
        std::stringstream ss(t);
        std::string item;
        while (std::getline(ss, item, ':'))
            parts.push_back(item);
        if (parts.size() != 3)
            throw ConfigError(field, "range must be start:step:stop");
        const double start = to_double(parts[0], field);
        const double step = to_double(parts[1], field);
        const double stop = to_double(parts[2], field);
        if (!(step > 0.0) || stop < start)
            throw ConfigError(field, "range needs a positive step and stop >= start");
        const auto n = static_cast<long long>(std::floor((stop - start) / step + 1e-9)) + 1;
        std::vector<double> out;
        for (long long i = 0; i < n; ++i)
            out.push_back(std::round((start + static_cast<double>(i) * step) * 1e12) / 1e12);
        return out;
    }
    std::vector<double> out;
    for (const auto& item : split_list(t))
        out.push_back(to_double(item, field));
    if (out.empty())
        throw ConfigError(field, "sweep list must not be empty");
    return out;
}

bool parse_bool(std::string_view text, const std::string& field)
{
    const std::string t = trim(text);
    if (t == "true" || t == "1" || t == "yes")
        return true;
    if (t == "false" || t == "0" || t == "no")
        return false;
    throw ConfigError(field, "expected true or false, got '" + t + "'");
}

void require_increasing(const std::vector<double>& v, const std::string& field)
{
    if (v.empty())
        throw ConfigError(field, "sweep list must not be empty");
    for (std::size_t i = 1; i < v.size(); ++i)
        if (!(v[i] > v[i - 1]))
            throw ConfigError(field, "sweep list must be strictly increasing");
}

void require_positive(const std::vector<double>& v, const std::string& field)
{
    for (double x : v)
        if (!(x > 0.0) || !std::isfinite(x))
            throw ConfigError(field, "values must be positive");
}

std::string_view precoding_name(InterfererPrecoding p)
{
    return p == InterfererPrecoding::FullIa ? "full_ia" : "isotropic";
}

} // namespace

std::string_view mode_name(CurveMode mode)
{
    for (const auto& [m, name] : kModeNames)
        if (m == mode)
            return name;
    return "UNKNOWN";
}

std::optional<CurveMode> parse_mode(std::string_view name)
{
    const std::string t = trim(name);
    for (const auto& [m, n] : kModeNames)
        if (n == t)
            return m;
    return std::nullopt;
}

std::optional<CompareMetric> parse_metric(std::string_view name)
{
    const std::string t = trim(name);
    if (t == "ratio" || t == "RATIO")
        return CompareMetric::Ratio;
    if (t == "relative_gain" || t == "RELATIVE_GAIN")
        return CompareMetric::RelativeGain;
    if (t == "abs_diff" || t == "ABS_DIFF")
        return CompareMetric::AbsDiff;
    return std::nullopt;
}

std::vector<double> default_distance_grid()
{
    std::vector<double> g;
    for (int i = 1; i <= 15; ++i)
        g.push_back(i / 10.0);
    return g;
}

std::vector<double> ExperimentSpec::resolved_grid() const
{
    return d_ii.empty() ? default_distance_grid() : d_ii;
}

std::vector<NetworkParams> ExperimentSpec::parameter_sets() const
{
    std::vector<NetworkParams> out;
    const std::vector<double> lambdas = total_intensity ? std::vector<double>{0.0} : lambda_p;
    for (double lp : lambdas)
        for (int c : cbar)
            for (double s : sigma)
                for (double a : alpha)
                    for (double t : threshold)
                    {
                        NetworkParams p;
                        p.lambda_p = total_intensity ? *total_intensity / c : lp;
                        p.cbar = c;
                        p.sigma = s;
                        p.alpha = a;
                        p.threshold = t;
                        p.mu = mu;
                        p.noise_var = noise_var;
                        out.push_back(p);
                    }
    return out;
}

void ExperimentSpec::validate() const
{
    if (modes.empty())
        throw ConfigError("modes", "at least one mode must be selected");
    if (total_intensity)
    {
        if (!(*total_intensity > 0.0))
            throw ConfigError("total_intensity", "must be positive");
    }
    else
    {
        require_increasing(lambda_p, "lambda_p");
        require_positive(lambda_p, "lambda_p");
    }
    if (cbar.empty())
        throw ConfigError("cbar", "sweep list must not be empty");
    for (std::size_t i = 0; i < cbar.size(); ++i)
    {
        if (cbar[i] < 1)
            throw ConfigError("cbar", "must be >= 1");
        if (i > 0 && cbar[i] <= cbar[i - 1])
            throw ConfigError("cbar", "sweep list must be strictly increasing");
    }
    require_increasing(sigma, "sigma");
    require_positive(sigma, "sigma");
    require_increasing(alpha, "alpha");
    require_increasing(threshold, "threshold");
    for (double t : threshold)
        if (!(t >= 0.0))
            throw ConfigError("threshold", "must be non-negative");
    const auto grid = resolved_grid();
    require_increasing(grid, "d_ii");
    require_positive(grid, "d_ii");
    if (!(mu > 0.0))
        throw ConfigError("mu", "must be positive");
    if (!(noise_var >= 0.0))
        throw ConfigError("noise_var", "must be non-negative");
    if (ia_max_iterations < 1)
        throw ConfigError("ia_max_iterations", "must be >= 1");
    if (!(quad_rel_tol > 0.0 && quad_rel_tol < 1.0))
        throw ConfigError("quad_rel_tol", "must lie in (0, 1)");
    if (n_t < 1 || n_r < 1)
        throw ConfigError(n_t < 1 ? "n_t" : "n_r", "antenna counts must be >= 1");

    bool any_mc = false;
    for (CurveMode m : modes)
    {
        any_mc = any_mc || is_mc(m);
        for (double a : alpha)
        {
            if (a < 2.0)
                throw ConfigError("alpha", "must be >= 2");
            if ((is_analysis(m) || m == CurveMode::PppBaseline) && a <= 2.0)
                throw ConfigError("alpha", std::string(mode_name(m)) + " requires alpha > 2");
            if (m == CurveMode::Bound1d && a > 4.0)
                throw ConfigError("alpha", "BOUND_1D requires alpha <= 4");
            if (m == CurveMode::BoundClosed && a != 4.0)
                throw ConfigError("alpha", "BOUND_CLOSED requires alpha = 4");
        }
        if (is_analysis(m) && noise_var != 0.0)
            throw ConfigError("noise_var", std::string(mode_name(m)) + " is interference-limited; set noise_var = 0");
    }
    if (any_mc && trials < 100)
        throw ConfigError("trials", "Monte-Carlo modes need at least 100 trials");

    for (CurveMode m : modes)
        if (is_aligned(m))
            for (int c : cbar)
                require_feasible(n_t, n_r, c);
}

ExperimentSpec parse_spec(std::istream& in, const std::string& source)
{
    ExperimentSpec spec;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line))
    {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        line = trim(line);
        if (line.empty())
            continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("", source + ":" + std::to_string(line_no) + ": expected key = value");
        const std::string key = trim(std::string_view(line).substr(0, eq));
        const std::string value = trim(std::string_view(line).substr(eq + 1));

        try
        {
            if (key == "name")
                spec.name = value;
            else if (key == "note")
                spec.notes.push_back(value);
            else if (key == "lambda_p")
                spec.lambda_p = parse_reals(value, key);
            else if (key == "total_intensity")
                spec.total_intensity = to_double(value, key);
            else if (key == "cbar")
            {
                spec.cbar.clear();
                for (const auto& item : split_list(value))
                    spec.cbar.push_back(static_cast<int>(to_integer(item, key)));
            }
            else if (key == "sigma")
                spec.sigma = parse_reals(value, key);
            else if (key == "alpha")
                spec.alpha = parse_reals(value, key);
            else if (key == "threshold")
                spec.threshold = parse_reals(value, key);
            else if (key == "d_ii")
                spec.d_ii = parse_reals(value, key);
            else if (key == "mu")
                spec.mu = to_double(value, key);
            else if (key == "noise_var")
                spec.noise_var = to_double(value, key);
            else if (key == "n_t")
                spec.n_t = static_cast<int>(to_integer(value, key));
            else if (key == "n_r")
                spec.n_r = static_cast<int>(to_integer(value, key));
            else if (key == "modes")
            {
                spec.modes.clear();
                for (const auto& item : split_list(value))
                {
                    const auto m = parse_mode(item);
                    if (!m)
                        throw ConfigError(key, "unknown mode '" + item + "'");
                    spec.modes.push_back(*m);
                }
            }
            else if (key == "trials")
                spec.trials = to_integer(value, key);
            else if (key == "seed")
                spec.seed = static_cast<std::uint64_t>(to_integer(value, key));
            else if (key == "threads")
                spec.threads = static_cast<unsigned>(to_integer(value, key));
            else if (key == "interferer_precoding")
            {
                if (value == "isotropic")
                    spec.interferer_precoding = InterfererPrecoding::Isotropic;
                else if (value == "full_ia")
                    spec.interferer_precoding = InterfererPrecoding::FullIa;
                else
                    throw ConfigError(key, "expected isotropic or full_ia");
            }
            else if (key == "closed_form_ia")
                spec.closed_form_ia = parse_bool(value, key);
            else if (key == "ia_max_iterations")
                spec.ia_max_iterations = static_cast<int>(to_integer(value, key));
            else if (key == "quad_rel_tol")
                spec.quad_rel_tol = to_double(value, key);
            else if (key == "output")
                spec.output = value;
            else if (key == "format")
            {
                if (value == "csv")
                    spec.format = OutputFormat::Csv;
                else if (value == "json")
                    spec.format = OutputFormat::Json;
                else
                    throw ConfigError(key, "expected csv or json");
            }
            else
                throw ConfigError(key, "unknown key");
        }
        catch (const ConfigError& e)
        {
            std::string msg = e.what();
            if (!e.field().empty() && msg.rfind(e.field() + ": ", 0) == 0)
                msg.erase(0, e.field().size() + 2);
            throw ConfigError(e.field().empty() ? key : e.field(),
                              source + ":" + std::to_string(line_no) + ": " + msg);
        }
    }
    return spec;
}

ExperimentSpec load_spec(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("spec", "cannot open '" + path + "'");
    return parse_spec(in, path);
}

std::string CurveRecord::meta() const
{
    std::string m;
    m += "lambda_p=" + format_double(params.lambda_p);
    m += ";cbar=" + std::to_string(params.cbar);
    m += ";sigma=" + format_double(params.sigma);
    m += ";alpha=" + format_double(params.alpha);
    m += ";T=" + format_double(params.threshold);
    m += ";mu=" + format_double(params.mu);
    m += ";noise_var=" + format_double(params.noise_var);
    m += ";trials=" + std::to_string(trials);
    m += ";wall_ms=" + format_double(wall_ms);
    return m;
}

CurveRecord evaluate_point(const ExperimentSpec& spec, const NetworkParams& params, CurveMode mode)
{
    const auto t0 = std::chrono::steady_clock::now();
    CurveRecord rec;
    rec.d_ii = params.link_distance;
    rec.mode = mode;
    rec.params = params;

    QuadratureParams quad;
    quad.rel_tol = spec.quad_rel_tol;
    auto from_quadrature = [&](QuadratureValue q) {
        rec.value = std::clamp(q.value, 0.0, 1.0);
        rec.err = q.error;
    };

    switch (mode)
    {
    case CurveMode::IaAnalysis:
        from_quadrature(success_prob_ia(params, quad));
        break;
    case CurveMode::SisoAnalysis:
        from_quadrature(success_prob_siso(params, quad));
        break;
    case CurveMode::Bound1d:
        from_quadrature(upper_bound_1d(params, quad));
        break;
    case CurveMode::BoundClosed:
        rec.value = upper_bound_closed_form(params);
        break;
    case CurveMode::PppBaseline:
        rec.value = ppp_baseline(params);
        break;
    case CurveMode::IaMc:
    case CurveMode::SisoMc: {
        TrialConfig cfg;
        cfg.params = params;
        cfg.mode = mode == CurveMode::IaMc ? LinkMode::MimoIa : LinkMode::Siso;
        cfg.n_t = spec.n_t;
        cfg.n_r = spec.n_r;
        cfg.trials = spec.trials;
        cfg.master_seed = spec.seed;
        cfg.interferer_precoding = spec.interferer_precoding;
        cfg.solver.closed_form = spec.closed_form_ia;
        cfg.solver.max_iterations = spec.ia_max_iterations;
        cfg.threads = spec.threads;
        const SuccessEstimate est = estimate_success(cfg);
        rec.value = est.p_hat;
        rec.err = est.ci_half_width;
        rec.trials = est.trials;
        break;
    }
    }
    rec.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return rec;
}

std::vector<CurveRecord> run_experiment(const ExperimentSpec& spec)
{
    spec.validate();
    const auto grid = spec.resolved_grid();
    std::vector<CurveRecord> out;
    for (NetworkParams p : spec.parameter_sets())
        for (CurveMode m : spec.modes)
            for (double d : grid)
            {
                p.link_distance = d;
                out.push_back(evaluate_point(spec, p, m));
            }
    return out;
}

void write_csv(std::ostream& out, const std::vector<CurveRecord>& records)
{
    out << "d_ii,mode,value,err,meta\n";
    for (const auto& r : records)
        out << format_double(r.d_ii) << ',' << mode_name(r.mode) << ',' << format_double(r.value) << ','
            << format_double(r.err) << ',' << r.meta() << '\n';
}

std::vector<CurveRecord> read_csv(std::istream& in)
{
    std::vector<CurveRecord> out;
    std::string line;
    if (!std::getline(in, line) || trim(line) != "d_ii,mode,value,err,meta")
        throw ConfigError("csv", "missing or wrong header");
    int line_no = 1;
    while (std::getline(in, line))
    {
        ++line_no;
        if (trim(line).empty())
            continue;
        std::vector<std::string> cols;
        std::stringstream ss(line);
        std::string item;
        while (std::getline(ss, item, ','))
            cols.push_back(item);
        const std::string where = "csv line " + std::to_string(line_no);
        if (cols.size() != 5)
            throw ConfigError(where, "expected 5 columns");

        CurveRecord r;
        r.d_ii = to_double(cols[0], where);
        const auto m = parse_mode(cols[1]);
        if (!m)
            throw ConfigError(where, "unknown mode '" + cols[1] + "'");
        r.mode = *m;
        r.value = to_double(cols[2], where);
        r.err = to_double(cols[3], where);
        r.params.link_distance = r.d_ii;

        std::stringstream ms(trim(cols[4]));
        while (std::getline(ms, item, ';'))
        {
            const auto eq = item.find('=');
            if (eq == std::string::npos)
                throw ConfigError(where, "malformed meta entry '" + item + "'");
            const std::string k = item.substr(0, eq);
            const std::string v = item.substr(eq + 1);
            if (k == "lambda_p")
                r.params.lambda_p = to_double(v, where);
            else if (k == "cbar")
                r.params.cbar = static_cast<int>(to_integer(v, where));
            else if (k == "sigma")
                r.params.sigma = to_double(v, where);
            else if (k == "alpha")
                r.params.alpha = to_double(v, where);
            else if (k == "T")
                r.params.threshold = to_double(v, where);
            else if (k == "mu")
                r.params.mu = to_double(v, where);
            else if (k == "noise_var")
                r.params.noise_var = to_double(v, where);
            else if (k == "trials")
                r.trials = to_integer(v, where);
            else if (k == "wall_ms")
                r.wall_ms = to_double(v, where);
        }
        out.push_back(r);
    }
    return out;
}

namespace
{

nlohmann::json spec_json(const ExperimentSpec& spec)
{
    nlohmann::json j;
    j["name"] = spec.name;
    j["notes"] = spec.notes;
    j["lambda_p"] = spec.lambda_p;
    j["total_intensity"] = spec.total_intensity ? nlohmann::json(*spec.total_intensity) : nlohmann::json();
    j["cbar"] = spec.cbar;
    j["sigma"] = spec.sigma;
    j["alpha"] = spec.alpha;
    j["threshold"] = spec.threshold;
    j["d_ii"] = spec.resolved_grid();
    j["mu"] = spec.mu;
    j["noise_var"] = spec.noise_var;
    j["n_t"] = spec.n_t;
    j["n_r"] = spec.n_r;
    std::vector<std::string> modes;
    for (CurveMode m : spec.modes)
        modes.emplace_back(mode_name(m));
    j["modes"] = modes;
    j["trials"] = spec.trials;
    j["seed"] = spec.seed;
    j["interferer_precoding"] = std::string(precoding_name(spec.interferer_precoding));
    j["closed_form_ia"] = spec.closed_form_ia;
    j["ia_max_iterations"] = spec.ia_max_iterations;
    j["quad_rel_tol"] = spec.quad_rel_tol;
    j["format"] = spec.format == OutputFormat::Json ? "json" : "csv";
    j["kernel_isa"] = std::string(simd::isa_name(simd::active_isa()));
    return j;
}

nlohmann::json record_json(const CurveRecord& r)
{
    return {{"d_ii", r.d_ii},
            {"mode", std::string(mode_name(r.mode))},
            {"value", r.value},
            {"err", r.err},
            {"trials", r.trials},
            {"wall_ms", r.wall_ms},
            {"lambda_p", r.params.lambda_p},
            {"cbar", r.params.cbar},
            {"sigma", r.params.sigma},
            {"alpha", r.params.alpha},
            {"threshold", r.params.threshold},
            {"mu", r.params.mu},
            {"noise_var", r.params.noise_var}};
}

void write_atomically(const std::string& path, const std::string& content)
{
    namespace fs = std::filesystem;
    const fs::path target(path);
    if (target.has_parent_path())
        fs::create_directories(target.parent_path());
    const fs::path tmp = target.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw ConfigError("output", "cannot write '" + tmp.string() + "'");
        out << content;
        if (!out.flush())
            throw ConfigError("output", "write failed for '" + tmp.string() + "'");
    }
    fs::rename(tmp, target);
}

} // namespace

std::string spec_to_json(const ExperimentSpec& spec)
{
    return spec_json(spec).dump(2);
}

std::string records_to_json(const ExperimentSpec& spec, const std::vector<CurveRecord>& records)
{
    nlohmann::json j;
    j["spec"] = spec_json(spec);
    j["records"] = nlohmann::json::array();
    for (const auto& r : records)
        j["records"].push_back(record_json(r));
    return j.dump(2);
}

std::vector<CurveRecord> records_from_json(const std::string& text)
{
    std::vector<CurveRecord> out;
    try
    {
        const auto j = nlohmann::json::parse(text);
        for (const auto& e : j.at("records"))
        {
            CurveRecord r;
            r.d_ii = e.at("d_ii").get<double>();
            const auto m = parse_mode(e.at("mode").get<std::string>());
            if (!m)
                throw ConfigError("records.mode", "unknown mode");
            r.mode = *m;
            r.value = e.at("value").get<double>();
            r.err = e.at("err").get<double>();
            r.trials = e.at("trials").get<std::int64_t>();
            r.wall_ms = e.at("wall_ms").get<double>();
            r.params.lambda_p = e.at("lambda_p").get<double>();
            r.params.cbar = e.at("cbar").get<int>();
            r.params.sigma = e.at("sigma").get<double>();
            r.params.alpha = e.at("alpha").get<double>();
            r.params.threshold = e.at("threshold").get<double>();
            r.params.mu = e.at("mu").get<double>();
            r.params.noise_var = e.at("noise_var").get<double>();
            r.params.link_distance = r.d_ii;
            out.push_back(r);
        }
    }
    catch (const nlohmann::json::exception& e)
    {
        throw ConfigError("records", e.what());
    }
    return out;
}

void write_output(const ExperimentSpec& spec, const std::vector<CurveRecord>& records, const std::string& path)
{
    if (spec.format == OutputFormat::Json)
    {
        write_atomically(path, records_to_json(spec, records) + "\n");
        return;
    }
    std::ostringstream csv;
    write_csv(csv, records);
    write_atomically(path, csv.str());
    write_atomically(path + ".json", spec_to_json(spec) + "\n");
}

std::vector<CurveRecord> select_curve(const std::vector<CurveRecord>& records, CurveMode mode,
                                      const std::function<bool(const NetworkParams&)>& where)
{
    std::vector<CurveRecord> out;
    for (const auto& r : records)
        if (r.mode == mode && (!where || where(r.params)))
            out.push_back(r);
    std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.d_ii < b.d_ii; });
    return out;
}

Comparison compare_curves(const std::vector<CurveRecord>& a, const std::vector<CurveRecord>& b,
                          CompareMetric metric)
{
    if (a.size() != b.size() || a.empty())
        throw GridMismatchError("compare_curves: curves have different (or empty) d_ii grids");
    Comparison out;
    for (std::size_t i = 0; i < a.size(); ++i)
    {
        if (std::abs(a[i].d_ii - b[i].d_ii) > 1e-12)
            throw GridMismatchError("compare_curves: d_ii grids differ at index " + std::to_string(i));
        double m = 0.0;
        switch (metric)
        {
        case CompareMetric::Ratio:
            m = a[i].value / b[i].value;
            break;
        case CompareMetric::RelativeGain:
            m = (a[i].value - b[i].value) / b[i].value;
            break;
        case CompareMetric::AbsDiff:
            m = a[i].value - b[i].value;
            break;
        }
        out.rows.push_back({a[i].d_ii, a[i].value, b[i].value, m});
        if (out.rows[out.argmax].metric < m || std::isnan(out.rows[out.argmax].metric))
            out.argmax = i;
    }
    return out;
}

} // namespace iacluster
