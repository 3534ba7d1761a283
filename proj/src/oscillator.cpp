#include "bandrg/oscillator.hpp"

#include "bandrg/error.hpp"

#include <algorithm>
#include <cmath>

namespace bandrg {

namespace {

void check_coupling(double g)
{
    if (!std::isfinite(g) || g < 0.0)
        throw InvalidArgument("coupling g must be finite and non-negative");
}

} // namespace

double interaction_element(std::size_t k, std::size_t l)
{
    const auto [low, high] = std::minmax(k, l);
    const double x = static_cast<double>(low);
    switch (high - low) {
    case 0:
        return 3.0 * (2.0 * x * x + 2.0 * x + 1.0);
    case 2:
        return (4.0 * x + 6.0) * std::sqrt((x + 1.0) * (x + 2.0));
    case 4:
        return std::sqrt((x + 1.0) * (x + 2.0) * (x + 3.0) * (x + 4.0));
    default:
        return 0.0;
    }
}

BandGenerator interaction_generator()
{
    return {oscillator_half_bandwidth, [](std::size_t offset, std::size_t row) {
                return interaction_element(row, row - offset);
            }};
}

BandGenerator hamiltonian_generator(OscillatorParams params)
{
    check_coupling(params.g);
    const double g = params.g;
    return {oscillator_half_bandwidth, [g](std::size_t offset, std::size_t row) {
                const double coupled = g * interaction_element(row, row - offset);
                return offset == 0 ? static_cast<double>(row) + coupled : coupled;
            }};
}

BandMatrix hamiltonian(OscillatorParams params, std::size_t cutoff)
{
    return build(hamiltonian_generator(params), cutoff);
}

BandMatrix interaction(std::size_t cutoff)
{
    return build(interaction_generator(), cutoff);
}

std::vector<double> free_diagonal(std::size_t cutoff)
{
    std::vector<double> d(cutoff + 1);
    for (std::size_t k = 0; k <= cutoff; ++k)
        d[k] = static_cast<double>(k);
    return d;
}

} // namespace bandrg
