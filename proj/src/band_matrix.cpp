#include "bandrg/band_matrix.hpp"

#include "bandrg/error.hpp"
#include "bandrg/io.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <string>

namespace bandrg {

namespace {

std::size_t diagonal_length(std::size_t dim, std::size_t offset)
{
    return offset < dim ? dim - offset : 0;
}

} // namespace

BandMatrix BandMatrix::from_diagonals(std::size_t dim, std::vector<std::vector<double>> diagonals)
{
    if (dim == 0)
        throw InvalidArgument("band matrix needs at least one basis state");
    if (diagonals.empty())
        throw InvalidArgument("band matrix needs a main diagonal");
    for (std::size_t i = 0; i < diagonals.size(); ++i) {
        if (diagonals[i].size() != diagonal_length(dim, i))
            throw InvalidArgument("diagonal " + std::to_string(i) + " has length " +
                                  std::to_string(diagonals[i].size()) + ", expected " +
                                  std::to_string(diagonal_length(dim, i)));
        for (std::size_t k = 0; k < diagonals[i].size(); ++k)
            if (!std::isfinite(diagonals[i][k]))
                throw NumericalError("non-finite entry on diagonal " + std::to_string(i) + " at column " +
                                     std::to_string(k));
    }
    BandMatrix m;
    m.dim_ = dim;
    m.diagonals_ = std::move(diagonals);
    return m;
}

BandMatrix BandMatrix::from_dense(const DenseMatrix& dense, std::size_t half_bandwidth)
{
    const std::size_t dim = dense.size();
    std::vector<std::vector<double>> diagonals(half_bandwidth + 1);
    for (std::size_t i = 0; i <= half_bandwidth; ++i) {
        diagonals[i].resize(diagonal_length(dim, i));
        for (std::size_t c = 0; c < diagonals[i].size(); ++c)
            diagonals[i][c] = dense(c + i, c);
    }
    return from_diagonals(dim, std::move(diagonals));
}

double BandMatrix::get(std::size_t k, std::size_t l) const
{
    if (k >= dim_ || l >= dim_)
        throw InvalidArgument("index (" + std::to_string(k) + "," + std::to_string(l) + ") outside " +
                              std::to_string(dim_) + "x" + std::to_string(dim_) + " matrix");
    const auto [row, col] = std::minmax(k, l);
    const std::size_t offset = col - row;
    if (offset >= diagonals_.size())
        return 0.0;
    return diagonals_[offset][row];
}

std::span<const double> BandMatrix::diagonal(std::size_t offset) const
{
    if (offset >= diagonals_.size())
        throw InvalidArgument("diagonal offset " + std::to_string(offset) + " exceeds half bandwidth");
    return diagonals_[offset];
}

BandMatrix BandMatrix::truncate(std::size_t new_cutoff) const
{
    if (new_cutoff >= dim_)
        throw InvalidArgument("cannot truncate a " + std::to_string(dim_) + "-state matrix to cutoff " +
                              std::to_string(new_cutoff));
    const std::size_t dim = new_cutoff + 1;
    auto diagonals = diagonals_;
    for (std::size_t i = 0; i < diagonals.size(); ++i)
        diagonals[i].resize(diagonal_length(dim, i));
    BandMatrix m;
    m.dim_ = dim;
    m.diagonals_ = std::move(diagonals);
    return m;
}

DenseMatrix BandMatrix::to_dense() const
{
    DenseMatrix dense(dim_);
    for (std::size_t i = 0; i < diagonals_.size(); ++i)
        for (std::size_t c = 0; c < diagonals_[i].size(); ++c) {
            dense(c + i, c) = diagonals_[i][c];
            dense(c, c + i) = diagonals_[i][c];
        }
    return dense;
}

BandMatrix build(const BandGenerator& generator, std::size_t cutoff)
{
    if (!generator.entry)
        throw InvalidArgument("band generator has no entry function");
    const std::size_t dim = cutoff + 1;
    std::vector<std::vector<double>> diagonals(generator.half_bandwidth + 1);
    for (std::size_t i = 0; i <= generator.half_bandwidth; ++i) {
        diagonals[i].resize(diagonal_length(dim, i));
        for (std::size_t c = 0; c < diagonals[i].size(); ++c) {
            const std::size_t k = c + i;
            const double value = generator.entry(i, k);
            if (!std::isfinite(value))
                throw NumericalError("non-finite generator value h_" + std::to_string(i) + "(" +
                                     std::to_string(k) + ")");
            diagonals[i][c] = value;
        }
    }
    return BandMatrix::from_diagonals(dim, std::move(diagonals));
}

void write_csv(std::ostream& os, const BandMatrix& matrix)
{
    os << "k,l,value\n";
    const std::size_t m = matrix.half_bandwidth();
    for (std::size_t k = 0; k < matrix.dim(); ++k)
        for (std::size_t l = k > m ? k - m : 0; l <= k; ++l)
            os << k << ',' << l << ',' << format_real(matrix.get(k, l)) << '\n';
}

} // namespace bandrg
