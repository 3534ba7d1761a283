#pragma once

#include "bandrg/eig.hpp"
#include "bandrg/rg.hpp"

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace bandrg {

inline constexpr std::size_t default_reference_cutoff = 1000;
inline constexpr std::size_t default_initial_cutoff = 200;

/// Lowest `levels` eigenvalues of the oscillator truncated at `cutoff`.
Spectrum reference_spectrum(double g, std::size_t cutoff, std::size_t levels);

struct ConvergenceReport {
    double g = 0.0;
    std::vector<std::size_t> cutoffs;
    /// levels_by_cutoff[c][i]: level i at cutoffs[c].
    std::vector<std::vector<double>> levels_by_cutoff;
    /// Per level, max over cutoff pairs of |E_a - E_b| / |E_b|.
    std::vector<double> spread;
    double tolerance = 0.0;
    bool passed = false;
};

ConvergenceReport convergence_study(double g, std::span<const std::size_t> cutoffs, std::size_t levels,
                                    double tolerance);

struct ComparisonRow {
    std::size_t cutoff = 0;
    std::size_t level = 0;
    double reference = 0.0;
    double rg = 0.0;
    double pc = 0.0;
    double rg_error = 0.0;
    double pc_error = 0.0;
};

struct ComparisonReport {
    double g = 0.0;
    std::size_t reference_cutoff = 0;
    std::size_t initial_cutoff = 0;
    std::vector<ComparisonRow> rows;
    std::vector<std::string> notes;

    /// Throws InvalidArgument if (cutoff, level) was not computed.
    const ComparisonRow& at(std::size_t cutoff, std::size_t level) const;
};

/// |value - reference| / |reference|; the absolute difference when the reference is zero.
double relative_error(double value, double reference);

/// Effective-Hamiltonian (approximate elimination from initial_cutoff) and
/// plain-cutoff spectra at each small cutoff, both scored against the
/// spectrum at reference_cutoff.
ComparisonReport compare_rg_pc(double g, std::size_t initial_cutoff, std::span<const std::size_t> cutoffs,
                               std::size_t levels, std::size_t reference_cutoff = default_reference_cutoff);

/// Remarks on how a computed reference spectrum relates to published values
/// for the same coupling (empty when no published values are known).
std::vector<std::string> published_value_notes(double g, const Spectrum& reference);

/// `n,level,reference,rg,pc,rg_rel_error,pc_rel_error` rows.
void write_csv(std::ostream& os, const ComparisonReport& report);

/// RG, PC and reference energy of one level versus cutoff.
std::string comparison_svg(const ComparisonReport& report, std::size_t level);

/// xi_1..xi_6 versus cutoff.
std::string xi_svg(const XiTrace& trace);

/// Runs xi_flow and writes its CSV (and optionally an SVG) atomically.
/// Requires initial_cutoff >= min_cutoff + 8.
XiTrace xi_flow_report(double g, std::size_t initial_cutoff, std::size_t min_cutoff,
                       const std::filesystem::path& csv_path,
                       const std::optional<std::filesystem::path>& svg_path = std::nullopt);

} // namespace bandrg
