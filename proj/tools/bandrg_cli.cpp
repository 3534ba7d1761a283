// Command-line front end: spectra, reductions, RG/PC comparisons, xi flows
// and the cutoff-convergence check.

#include "bandrg/band_matrix.hpp"
#include "bandrg/eig.hpp"
#include "bandrg/error.hpp"
#include "bandrg/harness.hpp"
#include "bandrg/io.hpp"
#include "bandrg/oscillator.hpp"
#include "bandrg/rg.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdint>
#include <iostream>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

enum exit_code : int {
    exit_ok = 0,
    exit_io = 1,
    exit_invalid = 2,
    exit_numerical = 3,
    exit_check_failed = 4,
};

int run_spectrum(double g, std::uint32_t cutoff, std::uint32_t levels, const std::string& csv)
{
    const auto spectrum = bandrg::reference_spectrum(g, cutoff, levels);
    std::ostringstream os;
    bandrg::write_csv(os, spectrum);
    std::cout << os.str();
    if (!csv.empty())
        bandrg::write_file_atomic(csv, os.str());
    return exit_ok;
}

int run_reduce(double g, std::uint32_t big_n, std::uint32_t small_n, const std::string& mode, double trial_e,
               const std::string& csv)
{
    bandrg::RGConfig config;
    config.g = g;
    config.initial_cutoff = big_n;
    config.target_cutoff = small_n;
    config.mode = mode == "exact" ? bandrg::EliminationMode::exact_at_e : bandrg::EliminationMode::approximate;
    config.trial_e = trial_e;
    const auto reduced = bandrg::rg_reduce(config);

    if (!csv.empty()) {
        std::ostringstream os;
        bandrg::write_csv(os, reduced);
        bandrg::write_file_atomic(csv, os.str());
    }
    const auto spectrum = bandrg::lowest_k(reduced, std::min<std::size_t>(3, reduced.dim()));
    bandrg::write_csv(std::cout, spectrum);
    return exit_ok;
}

int run_compare(double g, std::uint32_t big_n, std::uint32_t n_min, std::uint32_t n_max, std::uint32_t levels,
                std::uint32_t reference_cutoff, const std::string& csv, const std::string& svg)
{
    if (n_min > n_max)
        throw bandrg::InvalidArgument("--n-min must not exceed --n-max");
    std::vector<std::size_t> grid(n_max - n_min + 1);
    std::iota(grid.begin(), grid.end(), std::size_t{n_min});
    const auto report = bandrg::compare_rg_pc(g, big_n, grid, levels, reference_cutoff);

    std::ostringstream os;
    bandrg::write_csv(os, report);
    bandrg::write_file_atomic(csv, os.str());
    if (!svg.empty())
        bandrg::write_file_atomic(svg, bandrg::comparison_svg(report, 0));
    for (const auto& note : report.notes)
        std::cerr << "note: " << note << '\n';
    return exit_ok;
}

int run_xi(double g, std::uint32_t big_n, std::uint32_t n_min, const std::string& csv, const std::string& svg)
{
    std::optional<std::filesystem::path> svg_path;
    if (!svg.empty())
        svg_path = svg;
    bandrg::xi_flow_report(g, big_n, n_min, csv, svg_path);
    return exit_ok;
}

int run_converge(double g, const std::vector<std::uint32_t>& cutoffs, std::uint32_t levels, double tol)
{
    const std::vector<std::size_t> list(cutoffs.begin(), cutoffs.end());
    const auto report = bandrg::convergence_study(g, list, levels, tol);
    std::cout << "level,max_relative_spread\n";
    for (std::size_t i = 0; i < report.spread.size(); ++i)
        std::cout << i << ',' << bandrg::format_real(report.spread[i]) << '\n';
    std::cout << (report.passed ? "PASS" : "FAIL") << " (tolerance " << bandrg::format_real(tol) << ")\n";
    return report.passed ? exit_ok : exit_check_failed;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Band-diagonal Hamiltonian renormalization by Gaussian elimination"};
    app.require_subcommand(1);

    double g = 0.0;
    std::uint32_t cutoff = 0;
    std::uint32_t levels = 3;
    std::uint32_t big_n = 200;
    std::uint32_t small_n = 0;
    std::uint32_t n_min = 8;
    std::uint32_t n_max = 0;
    std::uint32_t reference_cutoff = static_cast<std::uint32_t>(bandrg::default_reference_cutoff);
    std::string mode = "approx";
    double trial_e = 0.0;
    double tol = 1e-10;
    std::vector<std::uint32_t> cutoffs;
    std::string csv;
    std::string svg;

    auto* spectrum = app.add_subcommand("spectrum", "Lowest eigenvalues of the oscillator at a plain cutoff");
    spectrum->add_option("--g", g, "Coupling constant")->required()->check(CLI::NonNegativeNumber);
    spectrum->add_option("--cutoff", cutoff, "Highest basis index")->required();
    spectrum->add_option("--levels", levels, "Number of eigenvalues")->required()->check(CLI::PositiveNumber);
    spectrum->add_option("--csv", csv, "Also write index,eigenvalue CSV here");

    auto* reduce = app.add_subcommand("reduce", "Effective Hamiltonian at a small cutoff");
    reduce->add_option("--g", g, "Coupling constant")->required()->check(CLI::NonNegativeNumber);
    reduce->add_option("--big-n", big_n, "Initial cutoff N")->required();
    reduce->add_option("--small-n", small_n, "Target cutoff n")->required();
    reduce->add_option("--mode", mode, "approx (E dropped) or exact (fixed trial energy)")
        ->check(CLI::IsMember({"approx", "exact"}));
    reduce->add_option("--trial-e", trial_e, "Trial energy for exact mode");
    reduce->add_option("--csv", csv, "Write the k,l,value matrix dump here");

    auto* compare = app.add_subcommand("compare", "RG vs plain cutoff accuracy over a cutoff range");
    compare->add_option("--g", g, "Coupling constant")->required()->check(CLI::NonNegativeNumber);
    compare->add_option("--big-n", big_n, "Initial cutoff N")->capture_default_str();
    compare->add_option("--n-min", n_min, "Smallest target cutoff")->required();
    compare->add_option("--n-max", n_max, "Largest target cutoff")->required();
    compare->add_option("--levels", levels, "Levels per cutoff")->capture_default_str()->check(CLI::PositiveNumber);
    compare->add_option("--reference-cutoff", reference_cutoff, "Cutoff of the reference diagonalization")
        ->capture_default_str();
    compare->add_option("--csv", csv, "Comparison CSV")->required();
    compare->add_option("--svg", svg, "Ground-state plot");

    auto* xi = app.add_subcommand("xi", "Flow of the six corner coefficients");
    xi->add_option("--g", g, "Coupling constant")->check(CLI::NonNegativeNumber);
    xi->add_option("--big-n", big_n, "Initial cutoff N")->capture_default_str();
    xi->add_option("--n-min", n_min, "Smallest cutoff")->capture_default_str();
    xi->add_option("--csv", csv, "xi CSV")->required();
    xi->add_option("--svg", svg, "xi plot");

    auto* converge = app.add_subcommand("converge", "Check that low levels do not depend on the cutoff");
    converge->add_option("--g", g, "Coupling constant")->required()->check(CLI::NonNegativeNumber);
    converge->add_option("--cutoffs", cutoffs, "Comma-separated cutoffs")->required()->delimiter(',');
    converge->add_option("--levels", levels, "Levels to compare")->capture_default_str()->check(CLI::PositiveNumber);
    converge->add_option("--tol", tol, "Relative tolerance")->capture_default_str()->check(CLI::NonNegativeNumber);

    xi->preparse_callback([&](std::size_t) { g = 10.0; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_invalid;
    }

    try {
        if (*spectrum)
            return run_spectrum(g, cutoff, levels, csv);
        if (*reduce)
            return run_reduce(g, big_n, small_n, mode, trial_e, csv);
        if (*compare)
            return run_compare(g, big_n, n_min, n_max, levels, reference_cutoff, csv, svg);
        if (*xi)
            return run_xi(g, big_n, n_min, csv, svg);
        if (*converge)
            return run_converge(g, cutoffs, levels, tol);
    } catch (const bandrg::InvalidArgument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_invalid;
    } catch (const bandrg::NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return exit_numerical;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_io;
    }
    return exit_invalid;
}
