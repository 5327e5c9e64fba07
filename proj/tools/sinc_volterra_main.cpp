#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <sincvolterra/sinc_volterra.hpp>

namespace sv = sincvolterra;

namespace {

int cmd_sweep(const std::string& method_name, const std::string& problem_id,
              const std::vector<int>& n_list, int probe_points,
              std::optional<double> d_override, std::optional<double> alpha_override,
              const std::string& out_path, bool timed)
{
    const sv::Method method = sv::parse_method(method_name);
    const sv::VolterraProblem<double> problem = sv::find_problem(problem_id);
    sv::SweepOptions opt;
    opt.probe_points = probe_points;
    opt.d_override = d_override;
    opt.alpha_override = alpha_override;
    opt.timed = timed;

    const sv::SweepResult result = sv::run_sweep(method, problem, problem_id, n_list, opt);
    for (const std::string& failure : result.failures) std::cerr << "error: " << failure << "\n";
    if (out_path.empty())
        sv::emit_csv(result.records, std::cout);
    else
        sv::emit_csv(result.records, out_path);
    return result.failures.empty() ? 0 : 1;
}

int cmd_slopes(const std::string& in_path)
{
    std::ifstream file(in_path, std::ios::binary);
    if (!file) throw std::runtime_error("cannot open '" + in_path + "' for reading");
    const std::vector<sv::ExperimentRecord> records = sv::parse_csv(file);
    std::cout << sv::report_slopes(records);
    return 0;
}

// Solves the same equation with both SE collocation variants and compares
// them at the nodes, where they agree to rounding even though the two
// approximants differ between nodes and at the endpoints.
int cmd_verify_theorem4(const std::string& problem_id, int N)
{
    const sv::VolterraProblem<double> problem = sv::find_problem(problem_id);
    const auto v = sv::solve_collocation(problem, sv::TransformKind::SE, N);
    const auto w = sv::solve_rz(problem, N);

    const sv::VectorX<double> nodes = v.transform.nodes(v.grid);
    double discrepancy = 0;
    for (int i = 0; i < v.grid.n(); ++i)
        discrepancy = std::max(discrepancy, std::abs(sv::evaluate_collocation(v, nodes[i])
                                                     - sv::evaluate_rz(w, nodes[i])));
    const double tolerance = 1e-9 * (1 + v.node_values.cwiseAbs().maxCoeff());
    const double endpoint_gap = std::abs(v.boundary_left - w.coeffs[0]);

    std::cout << "problem " << problem_id << ", N = " << N << " (" << v.grid.n()
              << " nodes)\n"
              << "max node discrepancy: " << discrepancy << " (tolerance " << tolerance
              << ")\n"
              << "left endpoint gap between the variants: " << endpoint_gap << "\n";
    return discrepancy <= tolerance ? 0 : 1;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Sinc solvers and benchmarks for Volterra integral equations of the second kind"};
    app.require_subcommand(1);

    std::string method_name, problem_id, out_path, in_path;
    std::vector<int> n_list;
    int probe_points = 2048;
    std::optional<double> d_override, alpha_override;
    bool timed = false;
    int theorem_N = 16;

    CLI::App* sweep = app.add_subcommand(
        "sweep", "Solve at each N, recording max error and per-phase timings as CSV");
    sweep->add_option("--method", method_name,
                      "se-nystrom, de-nystrom, se-colloc, rz-colloc or de-colloc")
        ->required();
    sweep->add_option("--problem", problem_id, "registered problem id (rz4, pm45)")->required();
    sweep->add_option("--n-list", n_list, "strictly increasing N values, comma separated")
        ->required()
        ->delimiter(',');
    sweep->add_option("--probe-points", probe_points,
                      "error probe grid size; equally spaced and includes both endpoints");
    sweep->add_option("--d", d_override, "override strip half-width d for the method's transform");
    sweep->add_option("--alpha", alpha_override, "override endpoint exponent alpha");
    sweep->add_option("--out", out_path, "write the CSV here instead of stdout");
    sweep->add_flag("--timed", timed, "run sequentially and keep median-of-3 phase timings");

    CLI::App* slopes = app.add_subcommand(
        "slopes", "Fit convergence slopes from a sweep CSV and compare evaluation costs");
    slopes->add_option("--in", in_path, "CSV produced by sweep")->required();

    CLI::App* theorem = app.add_subcommand(
        "verify-theorem4", "Check that the two SE collocation variants agree at the nodes");
    theorem->add_option("--problem", problem_id, "registered problem id")->required();
    theorem->add_option("--n", theorem_N, "truncation index N")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2; // help/version exit clean, anything else is usage
    }

    try {
        if (sweep->parsed())
            return cmd_sweep(method_name, problem_id, n_list, probe_points, d_override,
                             alpha_override, out_path, timed);
        if (slopes->parsed()) return cmd_slopes(in_path);
        return cmd_verify_theorem4(problem_id, theorem_N);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
