#include "bandrg/eig.hpp"
#include "bandrg/error.hpp"
#include "bandrg/oscillator.hpp"
#include "bandrg/rg.hpp"

#include "test_support.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace bandrg;

namespace {

DenseMatrix full_dense(std::span<const double> h0, const DenseMatrix& hi, double g)
{
    DenseMatrix h(hi.size());
    for (std::size_t k = 0; k < hi.size(); ++k)
        for (std::size_t l = 0; l < hi.size(); ++l)
            h(k, l) = k == l ? h0[k] + g * hi(k, l) : g * hi(k, l);
    return h;
}

} // namespace

TEST_CASE("exact elimination of a 2x2")
{
    const BandMatrix h = BandMatrix::from_diagonals(2, {{0.0, 2.0}, {1.0}});
    const BandMatrix reduced = eliminate_top_exact(h, 0.0);
    REQUIRE(reduced.dim() == 1);
    CHECK(reduced.get(0, 0) == -0.5);
}

TEST_CASE("exact elimination at an eigenvalue keeps that eigenvalue")
{
    const BandMatrix h = hamiltonian({1.0}, 5);
    const auto spectrum = test::eigen_eigenvalues(h.to_dense());
    for (double e : spectrum) {
        const BandMatrix reduced = eliminate_top_exact(h, e);
        CHECK(reduced.dim() == 5);
        CHECK(reduced.half_bandwidth() == 4);
        CHECK(test::distance_to_spectrum(test::eigen_eigenvalues(reduced.to_dense()), e) < 1e-9);
    }
}

TEST_CASE("iterated exact elimination at an eigenvalue keeps that eigenvalue")
{
    const std::size_t N = 12;
    const auto spectrum = test::eigen_eigenvalues(hamiltonian({1.0}, N).to_dense());
    RGConfig config;
    config.g = 1.0;
    config.initial_cutoff = N;
    config.target_cutoff = 4;
    config.mode = EliminationMode::exact_at_e;
    for (std::size_t i = 0; i < 3; ++i) {
        config.trial_e = spectrum[i];
        const BandMatrix reduced = rg_reduce(config);
        CHECK(reduced.dim() == 5);
        CHECK(test::distance_to_spectrum(test::eigen_eigenvalues(reduced.to_dense()), spectrum[i]) <
              1e-9 * std::max(1.0, spectrum[i]));
    }
}

TEST_CASE("a decoupled top state drops out unchanged")
{
    const BandMatrix h = BandMatrix::from_diagonals(4, {{1, 2, 3, 9}, {0.5, 0.25, 0.0}, {0.1, 0.0}});
    CHECK(eliminate_top_exact(h, 0.3) == h.truncate(2));
}

TEST_CASE("singular pivots are errors")
{
    const BandMatrix h = hamiltonian({1.0}, 3);
    try {
        eliminate_top_exact(h, h.get(3, 3));
        FAIL("expected PivotError");
    } catch (const PivotError& e) {
        CHECK(e.index() == 3);
        CHECK(e.pivot() == 0.0);
    }
    CHECK_THROWS_AS(eliminate_top_exact(BandMatrix::from_diagonals(1, {{1.0}}), 0.0), InvalidArgument);

    const BandMatrix hi = BandMatrix::from_diagonals(2, {{1.0, -2.0}, {0.5}});
    const std::vector<double> h0{0.0, 1.0};
    CHECK_THROWS_AS(eliminate_top_approx(h0, hi, 0.5, default_pivot_floor), PivotError);
    CHECK_THROWS_AS(eliminate_top_approx(h0, hi, 1.0), PivotError);
    CHECK_NOTHROW(eliminate_top_approx(h0, hi, 0.25));
}

TEST_CASE("pivot failures report the step index")
{
    const std::vector<double> h0{1, 1, 1, 0, 1, 1};
    const BandMatrix hi = BandMatrix::from_diagonals(6, {{0, 0, 0, 0, 0, 0}, {0, 0, 0, 0, 0}});
    RGConfig config;
    config.g = 1.0;
    config.initial_cutoff = 5;
    config.target_cutoff = 0;
    try {
        rg_reduce(h0, hi, config);
        FAIL("expected PivotError");
    } catch (const PivotError& e) {
        CHECK(e.step() == 2);
        CHECK(e.index() == 3);
    }
}

TEST_CASE("approximate step with g = 0 is a plain cutoff")
{
    const BandMatrix hi = interaction(9);
    CHECK(eliminate_top_approx(free_diagonal(9), hi, 0.0) == hi.truncate(8));
}

TEST_CASE("approximate step on the g = 1 oscillator, N = 6")
{
    const BandMatrix hi = interaction(6);
    const BandMatrix reduced = eliminate_top_approx(free_diagonal(6), hi, 1.0);
    REQUIRE(reduced.dim() == 6);

    // H_I[4][4] = 3 * 41, H_I[4][6] = 22 sqrt(30), H_I[6][6] = 3 * 85.
    const double expected = 123.0 - (22.0 * 22.0 * 30.0) / (6.0 + 255.0);
    CHECK(reduced.get(4, 4) == doctest::Approx(expected).epsilon(1e-14));

    for (std::size_t k = 0; k < 2; ++k)
        for (std::size_t l = 0; l < 2; ++l)
            CHECK(reduced.get(k, l) == hi.get(k, l));
    CHECK(reduced.get(5, 1) == hi.get(5, 1));
}

TEST_CASE("rg_reduce with zero steps returns the Hamiltonian")
{
    RGConfig config;
    config.g = 1.3;
    config.initial_cutoff = 30;
    config.target_cutoff = 30;
    CHECK(rg_reduce(config) == hamiltonian({1.3}, 30));
    config.mode = EliminationMode::exact_at_e;
    CHECK(rg_reduce(config) == hamiltonian({1.3}, 30));
}

TEST_CASE("rg_reduce validates its configuration")
{
    RGConfig config;
    config.g = 1.0;
    config.initial_cutoff = 10;
    config.target_cutoff = 11;
    CHECK_THROWS_AS(rg_reduce(config), InvalidArgument);
    config.target_cutoff = 5;
    config.g = -1.0;
    CHECK_THROWS_AS(rg_reduce(config), InvalidArgument);
    config.g = 1.0;
    CHECK_THROWS_AS(rg_reduce(free_diagonal(10), interaction(9), config), InvalidArgument);
    CHECK_THROWS_AS(rg_reduce(free_diagonal(3), interaction(10), config), InvalidArgument);
}

TEST_CASE("strong coupling ground state from small effective Hamiltonians")
{
    const double reference = 1.826275924;
    RGConfig config;
    config.g = 10.0;
    config.initial_cutoff = 200;

    config.target_cutoff = 10;
    const BandMatrix h10 = rg_reduce(config);
    CHECK(h10.dim() == 11);
    CHECK(h10.half_bandwidth() == 4);
    CHECK(test::rel_diff(lowest_k(h10, 1).eigenvalues[0], reference) < 0.005);

    config.target_cutoff = 4;
    CHECK(test::rel_diff(lowest_k(rg_reduce(config), 1).eigenvalues[0], reference) < 0.08);
}

TEST_CASE("band path equals the full-matrix path bit for bit")
{
    for (double g : {0.01, 1.0, 10.0}) {
        RGConfig config;
        config.g = g;
        config.initial_cutoff = 60;
        config.target_cutoff = 7;
        const DenseMatrix dense = rg_reduce_dense(free_diagonal(60), interaction(60).to_dense(), config);
        CHECK(rg_reduce(config).to_dense() == dense);

        config.mode = EliminationMode::exact_at_e;
        config.trial_e = 0.4;
        const DenseMatrix dense_exact = rg_reduce_dense(free_diagonal(60), interaction(60).to_dense(), config);
        CHECK(rg_reduce(config).to_dense() == dense_exact);
    }

    std::mt19937_64 rng(3);
    for (std::size_t m = 1; m <= 5; ++m) {
        const BandMatrix hi = test::random_dominant_band(30, m, rng);
        const auto h0 = free_diagonal(30);
        RGConfig config;
        config.g = 0.8;
        config.initial_cutoff = 30;
        config.target_cutoff = m + 2;
        const BandMatrix band = rg_reduce(h0, hi, config);
        CHECK(band.half_bandwidth() == m);
        CHECK(band.to_dense() == rg_reduce_dense(h0, hi.to_dense(), config));
    }
}

TEST_CASE("corner_delta on the oscillator")
{
    SUBCASE("one step changes only the 4x4 corner")
    {
        const BandMatrix hi = interaction(30);
        const BandMatrix reduced = eliminate_top_approx(free_diagonal(30), hi, 1.0);
        const CornerDelta delta = corner_delta(reduced, hi.truncate(29));
        CHECK(delta.first_index == 26);
        CHECK(delta.difference.size() == 4);
        // state 30 couples to 28 and 26 only
        CHECK(delta.difference(2, 2) < 0.0);
        CHECK(delta.difference(0, 0) < 0.0);
        CHECK(delta.difference(2, 0) < 0.0);
        CHECK(delta.difference(3, 3) == 0.0);
        CHECK(delta.difference(1, 1) == 0.0);
        CHECK(delta.changed_entries == 4);
    }
    SUBCASE("g = 0 changes nothing")
    {
        RGConfig config;
        config.initial_cutoff = 30;
        config.target_cutoff = 12;
        const CornerDelta delta = corner_delta(rg_reduce(config), hamiltonian({0.0}, 12));
        CHECK(delta.changed_entries == 0);
        for (double v : delta.difference.values())
            CHECK(v == 0.0);
    }
    SUBCASE("eight entries, six independent, depend on the cutoff")
    {
        RGConfig config;
        config.g = 1.0;
        config.initial_cutoff = 20;
        config.target_cutoff = 12;
        const CornerDelta delta = corner_delta(rg_reduce(config), hamiltonian({1.0}, 20).truncate(12));
        CHECK(delta.changed_entries == 8);
        CHECK(delta.first_index == 9);
        for (std::size_t k = 9; k <= 12; ++k)
            for (std::size_t l = 9; l <= 12; ++l) {
                const double d = delta.difference(k - 9, l - 9);
                CHECK(d == delta.difference(l - 9, k - 9));
                CHECK((d != 0.0) == xi_index(k, l, 12).has_value());
            }
    }
}

TEST_CASE("corner_delta flags changes outside the corner")
{
    const BandMatrix pc = hamiltonian({1.0}, 10);
    DenseMatrix tampered = pc.to_dense();
    tampered(2, 2) = std::nextafter(tampered(2, 2), 100.0);
    CHECK(tampered(2, 2) != pc.get(2, 2));
    CHECK_THROWS_AS(corner_delta(tampered, pc.to_dense(), 4), LocalityError);
    CHECK_THROWS_AS(corner_delta(pc, pc.truncate(9)), InvalidArgument);
}

TEST_CASE("property: corner locality of the full-matrix elimination")
{
    std::mt19937_64 rng(1970);
    std::uniform_int_distribution<std::size_t> pick_m(1, 5);
    std::uniform_int_distribution<std::size_t> pick_n(12, 30);
    std::uniform_real_distribution<double> pick_g(0.05, 5.0);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t m = pick_m(rng);
        const std::size_t N = pick_n(rng);
        const double g = pick_g(rng);
        const BandMatrix hi = test::random_dominant_band(N, m, rng);
        const auto h0 = free_diagonal(N);
        const DenseMatrix pc_full = full_dense(h0, hi.to_dense(), g);

        DenseMatrix work = hi.to_dense();
        while (work.size() > m + 3) {
            work = eliminate_top_approx_dense(h0, work, g);
            const std::size_t n = work.size() - 1;
            const CornerDelta delta = corner_delta(full_dense(h0, work, g), pc_full.leading(n + 1), m);
            CHECK(delta.changed_entries <= m * m);
        }
    }
}

TEST_CASE("approximate elimination approaches the exact one as eliminated levels rise")
{
    std::mt19937_64 rng(5);
    const std::size_t N = 12;
    const std::size_t n = 3;
    const BandMatrix hi = test::random_dominant_band(N, 2, rng);
    double previous = INFINITY;
    double first = 0.0;
    for (double scale : {1.0, 10.0, 100.0, 1000.0}) {
        std::vector<double> h0 = free_diagonal(N);
        for (std::size_t k = n + 1; k <= N; ++k)
            h0[k] *= scale;
        const double exact = test::eigen_eigenvalues(full_dense(h0, hi.to_dense(), 1.0)).front();

        RGConfig config;
        config.g = 1.0;
        config.initial_cutoff = N;
        config.target_cutoff = n;
        const double approx = lowest_k(rg_reduce(h0, hi, config), 1).eigenvalues[0];

        config.mode = EliminationMode::exact_at_e;
        config.trial_e = exact;
        CHECK(test::distance_to_spectrum(test::eigen_eigenvalues(rg_reduce(h0, hi, config).to_dense()), exact) <
              1e-9);

        const double gap = std::abs(approx - exact);
        if (scale == 1.0)
            first = gap;
        CHECK(gap < previous);
        previous = gap;
    }
    CHECK(previous < 1e-3 * first);
}

TEST_CASE("xi index map")
{
    const std::size_t n = 20;
    CHECK(xi_index(n, n, n) == 1);
    CHECK(xi_index(n - 1, n - 1, n) == 2);
    CHECK(xi_index(n - 2, n - 2, n) == 3);
    CHECK(xi_index(n - 3, n - 3, n) == 4);
    CHECK(xi_index(n, n - 2, n) == 5);
    CHECK(xi_index(n - 2, n, n) == 5);
    CHECK(xi_index(n - 1, n - 3, n) == 6);
    CHECK(xi_index(n - 3, n - 1, n) == 6);
    CHECK_FALSE(xi_index(n - 4, n - 4, n).has_value());
    CHECK_FALSE(xi_index(n, n - 4, n).has_value());
    CHECK_FALSE(xi_index(n - 2, n - 4, n).has_value());
    CHECK_FALSE(xi_index(n, n - 1, n).has_value());
    CHECK_FALSE(xi_index(n + 1, n + 1, n).has_value());

    const auto pos = xi_positions(n);
    for (std::size_t i = 0; i < 6; ++i)
        CHECK(xi_index(pos[i].first, pos[i].second, n) == static_cast<int>(i) + 1);
    CHECK_THROWS_AS(xi_positions(2), InvalidArgument);
}
