#include "bandrg/dense_matrix.hpp"

#include "bandrg/error.hpp"

namespace bandrg {

DenseMatrix DenseMatrix::leading(std::size_t size) const
{
    if (size > size_)
        throw InvalidArgument("leading block larger than the matrix");
    DenseMatrix out(size);
    for (std::size_t r = 0; r < size; ++r)
        for (std::size_t c = 0; c < size; ++c)
            out(r, c) = (*this)(r, c);
    return out;
}

} // namespace bandrg
