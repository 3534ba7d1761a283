#pragma once

#include "bandrg/band_matrix.hpp"
#include "bandrg/dense_matrix.hpp"

#include <array>
#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace bandrg {

inline constexpr double default_pivot_floor = 1e-12;

enum class EliminationMode {
    /// Trial eigenvalue dropped from every denominator.
    approximate,
    /// Exact Schur complement at a fixed trial eigenvalue.
    exact_at_e,
};

struct RGConfig {
    double g = 0.0;
    std::size_t initial_cutoff = 0;
    std::size_t target_cutoff = 0;
    EliminationMode mode = EliminationMode::approximate;
    /// Only read in exact_at_e mode.
    double trial_e = 0.0;
    double pivot_floor = default_pivot_floor;
};

// ---------------------------------------------------------------------------
// Single eliminations of the highest basis state.

/// Schur complement of the top state at energy E:
/// H'[k][l] = H[k][l] + H[k][N] H[N][l] / (E - H[N][N]).
/// Only the half_bandwidth x half_bandwidth corner below N changes.
BandMatrix eliminate_top_exact(const BandMatrix& h, double trial_e, double pivot_floor = default_pivot_floor);

/// Interaction-level step with E = 0:
/// HI'[k][l] = HI[k][l] - g HI[k][n] HI[n][l] / (H0[n][n] + g HI[n][n]).
/// The denominator must exceed the pivot floor.
BandMatrix eliminate_top_approx(std::span<const double> h0_diag, const BandMatrix& hi, double g,
                                double pivot_floor = default_pivot_floor);

/// Dense twins of the two steps above. They update every retained entry and
/// serve as the full-matrix oracle for the band path.
DenseMatrix eliminate_top_exact_dense(const DenseMatrix& h, double trial_e, double pivot_floor = default_pivot_floor);
DenseMatrix eliminate_top_approx_dense(std::span<const double> h0_diag, const DenseMatrix& hi, double g,
                                       double pivot_floor = default_pivot_floor);

// ---------------------------------------------------------------------------
// Iterated reduction N -> n.

/// Renormalized interaction H_I^RG(n) after approximate eliminations of the
/// states initial_cutoff .. target_cutoff+1. `h0_diag` must cover the
/// interaction's dimension.
BandMatrix reduce_interaction(std::span<const double> h0_diag, const BandMatrix& hi, double g,
                              std::size_t target_cutoff, double pivot_floor = default_pivot_floor);

/// Full effective Hamiltonian H0 + g H_I^RG(n) for H = diag(h0_diag) + g hi.
/// Approximate mode iterates the interaction-level step; exact_at_e mode
/// iterates the Schur complement at config.trial_e. PivotError::step() reports
/// how many eliminations succeeded before the failure.
BandMatrix rg_reduce(std::span<const double> h0_diag, const BandMatrix& hi, const RGConfig& config);

/// Same for the quartic oscillator.
BandMatrix rg_reduce(const RGConfig& config);

/// Full-matrix version of rg_reduce, built from the dense steps.
DenseMatrix rg_reduce_dense(std::span<const double> h0_diag, const DenseMatrix& hi, const RGConfig& config);

// ---------------------------------------------------------------------------
// Corner locality.

struct CornerDelta {
    /// First index of the corner; the corner spans first_index .. dim-1.
    std::size_t first_index = 0;
    /// H_rg - H_pc restricted to the corner.
    DenseMatrix difference;
    /// Entries of the full matrix (both triangles) that differ.
    std::size_t changed_entries = 0;
};

/// Difference of an effective matrix and its plain-cutoff counterpart inside
/// the corner_size x corner_size highest-index block. Throws LocalityError if
/// any entry outside that block differs.
CornerDelta corner_delta(const DenseMatrix& h_rg, const DenseMatrix& h_pc, std::size_t corner_size);

/// Band overload; the corner size is the common half bandwidth.
CornerDelta corner_delta(const BandMatrix& h_rg, const BandMatrix& h_pc);

// ---------------------------------------------------------------------------
// Oscillator corner coefficients xi_1 .. xi_6.

/// Index map of the six cutoff-dependent corner elements: 1..4 are the
/// diagonal entries n, n-1, n-2, n-3; 5 is (n, n-2); 6 is (n-1, n-3).
/// Symmetric in k and l. Pairs outside that set map to nullopt.
std::optional<int> xi_index(std::size_t k, std::size_t l, std::size_t cutoff);

/// (k, l) with k >= l for xi_1 .. xi_6 at the given cutoff (>= 3).
std::array<std::pair<std::size_t, std::size_t>, 6> xi_positions(std::size_t cutoff);

struct XiRow {
    std::size_t cutoff = 0;
    std::array<double, 6> xi{};
    std::array<std::pair<std::size_t, std::size_t>, 6> positions{};
    /// f[a][b] = H_I[n-a][n-b] for a, b < 6 (zero where n-a or n-b < 0).
    std::array<std::array<double, 6>, 6> f{};
};

struct XiTrace {
    double g = 0.0;
    std::size_t initial_cutoff = 0;
    double trial_e = 0.0;
    /// Descending cutoff, starting at initial_cutoff.
    std::vector<XiRow> rows;
};

/// Corner coefficients of the oscillator from the two second-order
/// recursions, one for (xi_1, xi_3, xi_5) and a shifted copy for
/// (xi_2, xi_4, xi_6), both starting from 1 at the initial cutoff.
/// Requires min_cutoff >= 4 and initial_cutoff >= min_cutoff + 2.
XiTrace xi_flow(double g, std::size_t initial_cutoff, std::size_t min_cutoff, double trial_e = 0.0,
                double pivot_floor = default_pivot_floor);

/// Ratios H_I^RG[k][l] / H_I[k][l] at the six xi positions of a renormalized
/// oscillator interaction whose highest index is `hi_rg.size() - 1`.
std::array<double, 6> xi_ratios(const DenseMatrix& hi_rg);

/// `n,xi1,...,xi6` rows.
void write_csv(std::ostream& os, const XiTrace& trace);

} // namespace bandrg
