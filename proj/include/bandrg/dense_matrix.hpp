#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace bandrg {

/// Square row-major matrix of doubles. Used for dense eigensolves and as the
/// full-matrix oracle for band operations.
class DenseMatrix {
public:
    DenseMatrix() = default;
    explicit DenseMatrix(std::size_t size) : size_(size), data_(size * size, 0.0) {}

    std::size_t size() const noexcept { return size_; }

    double& operator()(std::size_t row, std::size_t col) noexcept { return data_[row * size_ + col]; }
    double operator()(std::size_t row, std::size_t col) const noexcept { return data_[row * size_ + col]; }

    std::span<const double> values() const noexcept { return data_; }

    /// Leading principal submatrix of the given size.
    DenseMatrix leading(std::size_t size) const;

    friend bool operator==(const DenseMatrix&, const DenseMatrix&) = default;

private:
    std::size_t size_ = 0;
    std::vector<double> data_;
};

} // namespace bandrg
