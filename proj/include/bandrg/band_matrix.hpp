#pragma once

#include "bandrg/dense_matrix.hpp"

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <span>
#include <vector>

namespace bandrg {

/// Real symmetric band matrix stored as its lower diagonals.
///
/// Diagonal `i` (0 <= i <= half_bandwidth) holds the entries M[k+i][k] for
/// k = 0 .. dim-i-1; the upper triangle is implied. Symmetry therefore holds
/// by construction. Instances are immutable; every transformation returns a
/// new matrix.
class BandMatrix {
public:
    BandMatrix() = default;

    /// Takes ownership of `diagonals`. `diagonals[i]` must have length
    /// max(dim - i, 0) and contain only finite values.
    static BandMatrix from_diagonals(std::size_t dim, std::vector<std::vector<double>> diagonals);

    /// Extracts the band of width `half_bandwidth` from the lower triangle of `dense`.
    static BandMatrix from_dense(const DenseMatrix& dense, std::size_t half_bandwidth);

    std::size_t dim() const noexcept { return dim_; }
    /// Highest basis index, dim - 1.
    std::size_t cutoff() const noexcept { return dim_ - 1; }
    std::size_t half_bandwidth() const noexcept { return diagonals_.empty() ? 0 : diagonals_.size() - 1; }

    /// M[k][l]; zero outside the band. Throws InvalidArgument for indices >= dim.
    double get(std::size_t k, std::size_t l) const;

    std::span<const double> diagonal(std::size_t offset) const;

    /// Leading (new_cutoff+1) x (new_cutoff+1) block, i.e. the plain cutoff.
    BandMatrix truncate(std::size_t new_cutoff) const;

    DenseMatrix to_dense() const;

    std::vector<std::vector<double>> release_diagonals() && { return std::move(diagonals_); }

    friend bool operator==(const BandMatrix&, const BandMatrix&) = default;

private:
    std::size_t dim_ = 0;
    std::vector<std::vector<double>> diagonals_;
};

/// Near-diagonal generator: `entry(i, k)` is h_i(k) = M[k][k-i] for k >= i.
struct BandGenerator {
    std::size_t half_bandwidth = 0;
    std::function<double(std::size_t offset, std::size_t row)> entry;
};

/// Evaluates `generator` on basis states 0..cutoff.
BandMatrix build(const BandGenerator& generator, std::size_t cutoff);

inline BandMatrix truncate(const BandMatrix& matrix, std::size_t new_cutoff) { return matrix.truncate(new_cutoff); }
inline DenseMatrix to_dense(const BandMatrix& matrix) { return matrix.to_dense(); }

/// `k,l,value` rows for every stored lower-triangle entry, ordered by k then l.
void write_csv(std::ostream& os, const BandMatrix& matrix);

} // namespace bandrg
