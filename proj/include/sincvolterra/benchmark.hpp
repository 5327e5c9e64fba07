#ifndef SINCVOLTERRA_BENCHMARK_HPP
#define SINCVOLTERRA_BENCHMARK_HPP

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <future>
#include <iomanip>
#include <limits>
#include <map>
#include <mutex>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "solvers.hpp"

namespace sincvolterra {

enum class Method { se_nystrom, de_nystrom, se_colloc, rz_colloc, de_colloc };

inline constexpr std::string_view method_names[] = {"se-nystrom", "de-nystrom", "se-colloc",
                                                    "rz-colloc", "de-colloc"};

inline std::string_view to_string(Method m)
{
    return method_names[static_cast<int>(m)];
}

inline Method parse_method(std::string_view name)
{
    for (int i = 0; i < 5; ++i)
        if (method_names[i] == name) return static_cast<Method>(i);
    throw std::invalid_argument("unknown method '" + std::string(name) + "'");
}

inline bool uses_de(Method m)
{
    return m == Method::de_nystrom || m == Method::de_colloc;
}

inline bool is_nystrom(Method m)
{
    return m == Method::se_nystrom || m == Method::de_nystrom;
}

// One (method, problem, N) measurement.  Milliseconds are wall clock;
// max_error is the sup norm against the reference solution over the probe
// grid, NaN when the solve failed.
struct ExperimentRecord {
    Method method;
    std::string problem_id;
    int N;
    double h;
    double max_error;
    double assemble_ms;
    double solve_ms;
    double eval_ms;
    int probe_points;

    friend bool operator==(const ExperimentRecord&, const ExperimentRecord&) = default;
};

/*
 * Built-in benchmark equations on [0, 1] with known solutions, both written
 * in the canonical u - int k u = g form:
 *
 *   rz4:   k(t,s) = -t s,
 *          g(t)   = exp(-t^2) + (t/2)(1 - exp(-t^2)),
 *          u(t)   = exp(-t^2);            d_SE = 3.14, d_DE = 1.57, alpha = 1
 *
 *   pm45:  k(t,s) = 6 (sqrt(t) - sqrt(s)),
 *          g(t)   = 1 + sqrt(t) - 2 t sqrt(t) - t^2,
 *          u(t)   = 1 + sqrt(t);          same d, alpha = 1/2
 */
inline VolterraProblem<double> builtin_rz4()
{
    return make_problem<double>(
        0.0, 1.0, [](double t, double s) { return -t * s; },
        [](double t) { return std::exp(-t * t) + 0.5 * t * (1.0 - std::exp(-t * t)); },
        {3.14, 1.0}, {1.57, 1.0}, [](double t) { return std::exp(-t * t); });
}

inline VolterraProblem<double> builtin_pm45()
{
    return make_problem<double>(
        0.0, 1.0, [](double t, double s) { return 6.0 * (std::sqrt(t) - std::sqrt(s)); },
        [](double t) { return 1.0 + std::sqrt(t) - 2.0 * t * std::sqrt(t) - t * t; },
        {3.14, 0.5}, {1.57, 0.5}, [](double t) { return 1.0 + std::sqrt(t); });
}

namespace detail {

inline std::mutex& registry_mutex()
{
    static std::mutex m;
    return m;
}

inline std::map<std::string, VolterraProblem<double>, std::less<>>& problem_registry()
{
    static auto reg = [] {
        std::map<std::string, VolterraProblem<double>, std::less<>> r;
        r.emplace("rz4", builtin_rz4());
        r.emplace("pm45", builtin_pm45());
        return r;
    }();
    return reg;
}

} // namespace detail

inline void register_problem(std::string id, VolterraProblem<double> problem)
{
    std::lock_guard lock(detail::registry_mutex());
    detail::problem_registry().insert_or_assign(std::move(id), std::move(problem));
}

inline VolterraProblem<double> find_problem(std::string_view id)
{
    std::lock_guard lock(detail::registry_mutex());
    auto& reg = detail::problem_registry();
    const auto it = reg.find(id);
    if (it == reg.end()) throw std::invalid_argument("unknown problem '" + std::string(id) + "'");
    return it->second;
}

inline std::vector<std::string> registered_problem_ids()
{
    std::lock_guard lock(detail::registry_mutex());
    std::vector<std::string> ids;
    for (const auto& [id, p] : detail::problem_registry()) ids.push_back(id);
    return ids;
}

struct SweepOptions {
    int probe_points = 2048;           // error probe grid size, endpoints included
    std::optional<double> d_override;  // replaces d for the method's transform
    std::optional<double> alpha_override;
    bool timed = false;                // sequential runs, median-of-3 per phase
};

struct SweepResult {
    std::vector<ExperimentRecord> records;  // ordered by N; failed rows carry NaN
    std::vector<std::string> failures;      // one diagnostic per failed run
};

namespace detail {

inline double median3(double a, double b, double c)
{
    return std::max(std::min(a, b), std::min(std::max(a, b), c));
}

// Wall-clocks fn() once, or three times keeping the median, and returns the
// last result.
template <typename Fn>
auto time_phase(Fn&& fn, bool timed, double& ms_out)
{
    using clock = std::chrono::steady_clock;
    auto once = [&] {
        const auto t0 = clock::now();
        auto r = fn();
        const auto t1 = clock::now();
        return std::pair(std::chrono::duration<double, std::milli>(t1 - t0).count(),
                         std::move(r));
    };
    auto [m1, r1] = once();
    if (!timed) {
        ms_out = m1;
        return std::move(r1);
    }
    auto [m2, r2] = once();
    auto [m3, r3] = once();
    ms_out = median3(m1, m2, m3);
    return std::move(r3);
}

inline ExperimentRecord run_single(Method method, const VolterraProblem<double>& problem,
                                   const std::string& problem_id, int N,
                                   const SweepOptions& opt)
{
    const TransformKind kind = uses_de(method) ? TransformKind::DE : TransformKind::SE;
    const MeshParameters<double>& params =
        kind == TransformKind::SE ? problem.mesh_se : problem.mesh_de;
    const double h = mesh_size(kind, N, params);
    const SincGrid<double> grid(N, h);
    const VariableTransform<double> transform(kind, problem.a, problem.b);

    ExperimentRecord rec{method, problem_id, N, h, 0.0, 0.0, 0.0, 0.0, opt.probe_points};

    auto assemble = [&] {
        return method == Method::rz_colloc ? assemble_rz(problem, transform, grid)
                                           : assemble_nystrom(problem, transform, grid);
    };
    const AssembledSystem<double> system = time_phase(assemble, opt.timed, rec.assemble_ms);

    // packaging the approximant is part of the solve phase
    auto solve = [&]() -> std::function<double(double)> {
        VectorX<double> x = lu_solve(system.matrix, system.rhs);
        if (is_nystrom(method)) {
            VectorX<double> derivs(grid.n());
            for (int j = -N; j <= N; ++j) derivs[j + N] = transform.derivative(j * h);
            NystromSolution<double> sol{problem, transform, grid, std::move(x),
                                        transform.nodes(grid), std::move(derivs)};
            return [sol = std::move(sol)](double t) { return evaluate_nystrom(sol, t); };
        }
        if (method == Method::rz_colloc) {
            RZSolution<double> sol = make_rz_solution(transform, grid, std::move(x));
            return [sol = std::move(sol)](double t) { return evaluate_rz(sol, t); };
        }
        auto sol = generalized_sinc_approximant(transform, grid, std::move(x));
        return [sol = std::move(sol)](double t) { return evaluate_collocation(sol, t); };
    };
    const std::function<double(double)> approximant = time_phase(solve, opt.timed, rec.solve_ms);

    auto evaluate = [&] {
        double max_err = 0;
        for (int i = 0; i < opt.probe_points; ++i) {
            const double t = problem.a
                           + (problem.b - problem.a) * double(i) / double(opt.probe_points - 1);
            max_err = std::max(max_err, std::abs(approximant(t) - problem.exact(t)));
        }
        return max_err;
    };
    rec.max_error = time_phase(evaluate, opt.timed, rec.eval_ms);
    return rec;
}

} // namespace detail

/*
 * Runs one method over a list of N values and records max error plus the
 * per-phase wall-clock times.  Untimed sweeps may run the N values
 * concurrently; --timed sweeps run sequentially with median-of-3 timings.
 * A singular discrete system does not abort the sweep: the row is kept with
 * max_error = NaN and a diagnostic is appended to `failures`.
 */
inline SweepResult run_sweep(Method method, const VolterraProblem<double>& problem,
                             std::string problem_id, const std::vector<int>& N_list,
                             SweepOptions opt = {})
{
    if (N_list.empty()) throw std::invalid_argument("run_sweep: N list is empty");
    for (std::size_t i = 1; i < N_list.size(); ++i)
        if (N_list[i] <= N_list[i - 1])
            throw std::invalid_argument("run_sweep: N list must be strictly increasing");
    if (opt.probe_points < 2)
        throw std::invalid_argument("run_sweep: probe_points must be >= 2");
    if (!problem.exact)
        throw std::invalid_argument("run_sweep: problem has no reference solution");

    VolterraProblem<double> p = problem;
    if (opt.d_override) (uses_de(method) ? p.mesh_de.d : p.mesh_se.d) = *opt.d_override;
    if (opt.alpha_override) {
        p.mesh_se.alpha = *opt.alpha_override;
        p.mesh_de.alpha = *opt.alpha_override;
    }
    (uses_de(method) ? p.mesh_de : p.mesh_se)
        .validate_for(uses_de(method) ? TransformKind::DE : TransformKind::SE);

    auto task = [&](int N) -> std::pair<ExperimentRecord, std::string> {
        try {
            return {detail::run_single(method, p, problem_id, N, opt), {}};
        } catch (const SingularMatrixError& e) {
            const double nan = std::numeric_limits<double>::quiet_NaN();
            const TransformKind kind = uses_de(method) ? TransformKind::DE : TransformKind::SE;
            const double h =
                mesh_size(kind, N, kind == TransformKind::SE ? p.mesh_se : p.mesh_de);
            ExperimentRecord rec{method, problem_id, N, h, nan, 0.0, 0.0, 0.0,
                                 opt.probe_points};
            return {std::move(rec), std::string(to_string(method)) + " on " + problem_id
                                        + " at N = " + std::to_string(N) + ": " + e.what()};
        }
    };

    SweepResult out;
    if (opt.timed) {
        for (const int N : N_list) {
            auto [rec, fail] = task(N);
            out.records.push_back(std::move(rec));
            if (!fail.empty()) out.failures.push_back(std::move(fail));
        }
    } else {
        std::vector<std::future<std::pair<ExperimentRecord, std::string>>> futures;
        for (const int N : N_list)
            futures.push_back(std::async(std::launch::async, task, N));
        for (auto& f : futures) {
            auto [rec, fail] = f.get();
            out.records.push_back(std::move(rec));
            if (!fail.empty()) out.failures.push_back(std::move(fail));
        }
    }
    return out;
}

inline SweepResult run_sweep(Method method, std::string_view problem_id,
                             const std::vector<int>& N_list, SweepOptions opt = {})
{
    return run_sweep(method, find_problem(problem_id), std::string(problem_id), N_list, opt);
}

inline constexpr std::string_view csv_header =
    "method,problem,N,h,max_error,assemble_ms,solve_ms,eval_ms,probe_points";

namespace detail {

inline void append_number(std::string& out, int v)
{
    char buf[16];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    out.append(buf, res.ptr);
}

// shortest decimal form that parses back to the identical bits
inline void append_number(std::string& out, double v)
{
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    out.append(buf, res.ptr);
}

template <typename T>
T parse_number(std::string_view field, const char* name)
{
    T value{};
    const auto res = std::from_chars(field.data(), field.data() + field.size(), value);
    if (res.ec != std::errc{} || res.ptr != field.data() + field.size())
        throw std::runtime_error("parse_csv: bad " + std::string(name) + " field '"
                                 + std::string(field) + "'");
    return value;
}

inline std::vector<std::string_view> split_fields(std::string_view line)
{
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            fields.push_back(line.substr(start));
            return fields;
        }
        fields.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
}

} // namespace detail

// Plain UTF-8 CSV, LF line ends, one row per record.  Floating fields use
// the shortest round-tripping decimal form, so emit + parse is lossless.
inline void emit_csv(const std::vector<ExperimentRecord>& records, std::ostream& os)
{
    if (records.empty()) throw std::invalid_argument("emit_csv: no records");
    std::string out{csv_header};
    out.push_back('\n');
    for (const ExperimentRecord& r : records) {
        out += to_string(r.method);
        out.push_back(',');
        out += r.problem_id;
        out.push_back(',');
        detail::append_number(out, r.N);
        out.push_back(',');
        detail::append_number(out, r.h);
        out.push_back(',');
        detail::append_number(out, r.max_error);
        out.push_back(',');
        detail::append_number(out, r.assemble_ms);
        out.push_back(',');
        detail::append_number(out, r.solve_ms);
        out.push_back(',');
        detail::append_number(out, r.eval_ms);
        out.push_back(',');
        detail::append_number(out, r.probe_points);
        out.push_back('\n');
    }
    os << out;
    if (!os) throw std::runtime_error("emit_csv: write failed");
}

inline void emit_csv(const std::vector<ExperimentRecord>& records, const std::string& path)
{
    std::ofstream file(path, std::ios::binary);
    if (!file) throw std::runtime_error("emit_csv: cannot open '" + path + "' for writing");
    emit_csv(records, file);
    file.flush();
    if (!file) throw std::runtime_error("emit_csv: write to '" + path + "' failed");
}

inline std::vector<ExperimentRecord> parse_csv(std::istream& is)
{
    std::string line;
    if (!std::getline(is, line)) throw std::runtime_error("parse_csv: empty input");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != csv_header)
        throw std::runtime_error("parse_csv: unexpected header '" + line + "'");

    std::vector<ExperimentRecord> records;
    while (std::getline(is, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto f = detail::split_fields(line);
        if (f.size() != 9)
            throw std::runtime_error("parse_csv: expected 9 fields, got "
                                     + std::to_string(f.size()));
        ExperimentRecord r;
        try {
            r.method = parse_method(f[0]);
        } catch (const std::invalid_argument& e) {
            throw std::runtime_error(std::string("parse_csv: ") + e.what());
        }
        r.problem_id = std::string(f[1]);
        r.N = detail::parse_number<int>(f[2], "N");
        r.h = detail::parse_number<double>(f[3], "h");
        r.max_error = detail::parse_number<double>(f[4], "max_error");
        r.assemble_ms = detail::parse_number<double>(f[5], "assemble_ms");
        r.solve_ms = detail::parse_number<double>(f[6], "solve_ms");
        r.eval_ms = detail::parse_number<double>(f[7], "eval_ms");
        r.probe_points = detail::parse_number<int>(f[8], "probe_points");
        records.push_back(std::move(r));
    }
    return records;
}

namespace detail {

inline double fit_slope(const std::vector<double>& xs, const std::vector<double>& ys)
{
    const double n = double(xs.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

} // namespace detail

/*
 * Convergence summary.  Every (method, problem) group spanning at least four
 * distinct N values gets a least-squares fit of log(max_error) against the
 * method's natural abscissa,
 *
 *   SE-based methods:  sqrt(N),              expected slope -sqrt(pi d alpha)
 *   DE-based methods:  N / log(2 d N/alpha), expected slope -pi d
 *
 * with (d, alpha) looked up in the problem registry by id.  Rows at the
 * double-precision floor (max_error < 100 eps) are left out of the fits.
 * Where a Nystrom and a collocation run share (problem, N), their per-point
 * evaluation times are compared.
 */
inline std::string report_slopes(const std::vector<ExperimentRecord>& records)
{
    std::map<std::pair<Method, std::string>, std::vector<const ExperimentRecord*>> groups;
    for (const ExperimentRecord& r : records)
        groups[{r.method, r.problem_id}].push_back(&r);

    constexpr double floor = 100 * std::numeric_limits<double>::epsilon();
    std::ostringstream os;
    os << "convergence slopes\n";
    int fitted = 0;
    for (const auto& [key, rows] : groups) {
        const auto& [method, problem_id] = key;
        std::vector<int> distinct;
        for (const auto* r : rows) distinct.push_back(r->N);
        std::sort(distinct.begin(), distinct.end());
        distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
        if (distinct.size() < 4) continue;

        VolterraProblem<double> problem;
        try {
            problem = find_problem(problem_id);
        } catch (const std::invalid_argument&) {
            os << "  " << to_string(method) << " on " << problem_id
               << ": not a registered problem, skipped\n";
            continue;
        }
        const bool de = uses_de(method);
        const MeshParameters<double>& params = de ? problem.mesh_de : problem.mesh_se;

        std::vector<double> xs, ys;
        int floored = 0;
        for (const auto* r : rows) {
            if (!std::isfinite(r->max_error) || r->max_error <= 0) continue;
            if (r->max_error < floor) {
                ++floored;
                continue;
            }
            const double x = de ? double(r->N) / std::log(2 * params.d * r->N / params.alpha)
                                : std::sqrt(double(r->N));
            xs.push_back(x);
            ys.push_back(std::log(r->max_error));
        }
        if (xs.size() < 4) {
            os << "  " << to_string(method) << " on " << problem_id
               << ": fewer than 4 usable points, skipped\n";
            continue;
        }

        const double slope = detail::fit_slope(xs, ys);
        const double theory = de ? -std::numbers::pi * params.d
                                 : -std::sqrt(std::numbers::pi * params.d * params.alpha);
        const double deviation = std::abs(slope / theory - 1) * 100;
        os << "  " << to_string(method) << " on " << problem_id << ": fitted "
           << std::fixed << std::setprecision(4) << slope << " vs theoretical " << theory
           << " (" << std::setprecision(1) << deviation << "% off, " << xs.size()
           << " points vs " << (de ? "N/log(2dN/alpha)" : "sqrt(N)") << ")";
        if (floored > 0) os << ", " << floored << " at the precision floor excluded";
        os << "\n";
        os.unsetf(std::ios_base::floatfield);
        ++fitted;
    }
    if (fitted == 0)
        throw std::invalid_argument(
            "report_slopes: need at least 4 N values for some method/problem pair");

    // per-point evaluation cost, Nystrom vs collocation at matching N
    static constexpr std::pair<Method, Method> pairs[] = {
        {Method::se_nystrom, Method::se_colloc},
        {Method::se_nystrom, Method::rz_colloc},
        {Method::de_nystrom, Method::de_colloc},
    };
    std::ostringstream cmp;
    for (const auto& [ny, co] : pairs) {
        for (const auto& [key, rows] : groups) {
            if (key.first != ny) continue;
            const auto other = groups.find({co, key.second});
            if (other == groups.end()) continue;
            for (const auto* r : rows)
                for (const auto* s : other->second) {
                    if (r->N != s->N || r->eval_ms <= 0 || s->eval_ms <= 0) continue;
                    const double ny_us = 1000 * r->eval_ms / r->probe_points;
                    const double co_us = 1000 * s->eval_ms / s->probe_points;
                    cmp << "  " << key.second << " N = " << r->N << ": " << to_string(ny)
                        << " " << std::fixed << std::setprecision(3) << ny_us << " us/pt, "
                        << to_string(co) << " " << co_us << " us/pt ("
                        << std::setprecision(1) << ny_us / co_us << "x)\n";
                    cmp.unsetf(std::ios_base::floatfield);
                }
        }
    }
    const std::string cmp_text = cmp.str();
    if (!cmp_text.empty()) os << "per-point evaluation time, Nystrom vs collocation\n"
                              << cmp_text;
    return os.str();
}

} // namespace sincvolterra

#endif
