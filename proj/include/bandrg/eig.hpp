#pragma once

#include "bandrg/band_matrix.hpp"
#include "bandrg/dense_matrix.hpp"

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string_view>
#include <vector>

namespace bandrg {

enum class SpectrumSource { unspecified, reference, rg, pc };

std::string_view to_string(SpectrumSource source);

/// Ascending eigenvalues plus where they came from.
struct Spectrum {
    std::vector<double> eigenvalues;
    std::size_t source_cutoff = 0;
    std::optional<double> g;
    SpectrumSource source = SpectrumSource::unspecified;
};

/// All eigenvalues of a dense symmetric matrix, ascending.
///
/// Householder reduction to tridiagonal form followed by implicit QL with
/// Wilkinson-type shifts. An off-diagonal e_i is deflated once
/// |e_i| <= eps (|d_i| + |d_{i+1}|). Throws InvalidArgument if the input is
/// not symmetric to 1e-12 relative to its largest entry, ConvergenceError if
/// 30 * dim QL iterations do not suffice.
Spectrum eigenvalues_symmetric(const DenseMatrix& matrix);

/// The `count` smallest eigenvalues of a band matrix.
Spectrum lowest_k(const BandMatrix& matrix, std::size_t count);

/// `index,eigenvalue` rows.
void write_csv(std::ostream& os, const Spectrum& spectrum);

} // namespace bandrg
