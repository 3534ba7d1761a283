#pragma once

#include "bandrg/band_matrix.hpp"

#include <cstddef>
#include <vector>

namespace bandrg {

/// Quartic oscillator H = a^dagger a + g (a^dagger + a)^4 with unit mass and the
/// zero-point constant dropped. g = 0 is accepted (free oscillator).
struct OscillatorParams {
    double g = 0.0;
};

/// Half bandwidth of the quartic interaction.
inline constexpr std::size_t oscillator_half_bandwidth = 4;

/// <k| (a^dagger + a)^4 |l> in the number basis. Zero for |k-l| not in {0,2,4}.
double interaction_element(std::size_t k, std::size_t l);

BandGenerator interaction_generator();
BandGenerator hamiltonian_generator(OscillatorParams params);

/// Full Hamiltonian on states 0..cutoff.
BandMatrix hamiltonian(OscillatorParams params, std::size_t cutoff);

/// g-independent interaction H_I with H = H0 + g H_I.
BandMatrix interaction(std::size_t cutoff);

/// Diagonal of H0 = a^dagger a, i.e. 0, 1, ..., cutoff.
std::vector<double> free_diagonal(std::size_t cutoff);

} // namespace bandrg
