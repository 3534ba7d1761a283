#include "bandrg/error.hpp"

#include <sstream>

namespace bandrg {

namespace {

std::string pivot_message(std::size_t index, double pivot, std::size_t step)
{
    std::ostringstream os;
    os.precision(17);
    os << "singular pivot eliminating state " << index << " (pivot " << pivot << ", step " << step << ")";
    return os.str();
}

} // namespace

PivotError::PivotError(std::size_t index, double pivot, std::size_t step)
    : NumericalError(pivot_message(index, pivot, step)), index_(index), pivot_(pivot), step_(step)
{
}

} // namespace bandrg
