#include "bandrg/rg.hpp"

#include "bandrg/error.hpp"
#include "bandrg/io.hpp"
#include "bandrg/oscillator.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <string>

namespace bandrg {

namespace {

// Mutable lower-band storage used while eliminating; only the corner below
// the current top state is ever written.
class BandWork {
public:
    explicit BandWork(BandMatrix m) : dim_(m.dim()), diagonals_(std::move(m).release_diagonals()) {}

    std::size_t dim() const noexcept { return dim_; }
    std::size_t top() const noexcept { return dim_ - 1; }
    std::size_t half_bandwidth() const noexcept { return diagonals_.size() - 1; }

    // Requires k >= l and k - l <= half_bandwidth.
    double& at(std::size_t k, std::size_t l) noexcept { return diagonals_[k - l][l]; }

    std::size_t corner_begin() const noexcept
    {
        const std::size_t m = half_bandwidth();
        return top() > m ? top() - m : 0;
    }

    void drop_top()
    {
        --dim_;
        for (auto& d : diagonals_)
            if (!d.empty())
                d.pop_back();
    }

    BandMatrix finish() && { return BandMatrix::from_diagonals(dim_, std::move(diagonals_)); }

private:
    std::size_t dim_;
    std::vector<std::vector<double>> diagonals_;
};

void require_reducible(std::size_t dim)
{
    if (dim < 2)
        throw InvalidArgument("elimination needs at least two basis states");
}

void require_diagonal(std::span<const double> h0_diag, std::size_t dim)
{
    if (h0_diag.size() < dim)
        throw InvalidArgument("H0 diagonal has " + std::to_string(h0_diag.size()) + " entries, matrix needs " +
                              std::to_string(dim));
}

void approx_step(BandWork& hi, std::span<const double> h0_diag, double g, double floor, std::size_t step)
{
    const std::size_t n = hi.top();
    const double den = h0_diag[n] + g * hi.at(n, n);
    if (!(den > floor))
        throw PivotError(n, den, step);
    for (std::size_t k = hi.corner_begin(); k < n; ++k)
        for (std::size_t l = hi.corner_begin(); l <= k; ++l)
            hi.at(k, l) = hi.at(k, l) - g * hi.at(n, k) * hi.at(n, l) / den;
    hi.drop_top();
}

void exact_step(BandWork& h, double trial_e, double floor, std::size_t step)
{
    const std::size_t n = h.top();
    const double pivot = trial_e - h.at(n, n);
    if (!(std::abs(pivot) >= floor))
        throw PivotError(n, pivot, step);
    for (std::size_t k = h.corner_begin(); k < n; ++k)
        for (std::size_t l = h.corner_begin(); l <= k; ++l)
            h.at(k, l) = h.at(k, l) + h.at(n, k) * h.at(n, l) / pivot;
    h.drop_top();
}

// Both triangles are written from the lower-triangle expression so the
// result stays exactly symmetric and matches the band path bit for bit.
DenseMatrix approx_step_dense(const DenseMatrix& hi, std::span<const double> h0_diag, double g, double floor,
                              std::size_t step)
{
    const std::size_t n = hi.size() - 1;
    const double den = h0_diag[n] + g * hi(n, n);
    if (!(den > floor))
        throw PivotError(n, den, step);
    DenseMatrix out(n);
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = 0; l <= k; ++l) {
            const double v = hi(k, l) - g * hi(n, k) * hi(n, l) / den;
            out(k, l) = v;
            out(l, k) = v;
        }
    return out;
}

DenseMatrix exact_step_dense(const DenseMatrix& h, double trial_e, double floor, std::size_t step)
{
    const std::size_t n = h.size() - 1;
    const double pivot = trial_e - h(n, n);
    if (!(std::abs(pivot) >= floor))
        throw PivotError(n, pivot, step);
    DenseMatrix out(n);
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = 0; l <= k; ++l) {
            const double v = h(k, l) + h(n, k) * h(n, l) / pivot;
            out(k, l) = v;
            out(l, k) = v;
        }
    return out;
}

void check_config(const RGConfig& config, std::size_t dim)
{
    if (!std::isfinite(config.g))
        throw InvalidArgument("coupling must be finite");
    if (config.initial_cutoff + 1 != dim)
        throw InvalidArgument("initial cutoff " + std::to_string(config.initial_cutoff) +
                              " does not match a matrix of " + std::to_string(dim) + " states");
    if (config.target_cutoff > config.initial_cutoff)
        throw InvalidArgument("target cutoff exceeds the initial cutoff");
    if (config.mode == EliminationMode::exact_at_e && !std::isfinite(config.trial_e))
        throw InvalidArgument("trial energy must be finite");
}

// diag(h0) + g * hi, evaluated entrywise in the same order as the oscillator
// generator so that a zero-step reduction reproduces it exactly.
BandMatrix combine(std::span<const double> h0_diag, const BandMatrix& hi, double g)
{
    std::vector<std::vector<double>> diagonals(hi.half_bandwidth() + 1);
    for (std::size_t i = 0; i < diagonals.size(); ++i) {
        const auto src = hi.diagonal(i);
        diagonals[i].resize(src.size());
        for (std::size_t c = 0; c < src.size(); ++c)
            diagonals[i][c] = i == 0 ? h0_diag[c] + g * src[c] : g * src[c];
    }
    return BandMatrix::from_diagonals(hi.dim(), std::move(diagonals));
}

DenseMatrix combine_dense(std::span<const double> h0_diag, const DenseMatrix& hi, double g)
{
    DenseMatrix h(hi.size());
    for (std::size_t k = 0; k < hi.size(); ++k)
        for (std::size_t l = 0; l < hi.size(); ++l)
            h(k, l) = k == l ? h0_diag[k] + g * hi(k, l) : g * hi(k, l);
    return h;
}

} // namespace

BandMatrix eliminate_top_exact(const BandMatrix& h, double trial_e, double pivot_floor)
{
    require_reducible(h.dim());
    BandWork work(h);
    exact_step(work, trial_e, pivot_floor, 0);
    return std::move(work).finish();
}

BandMatrix eliminate_top_approx(std::span<const double> h0_diag, const BandMatrix& hi, double g, double pivot_floor)
{
    require_reducible(hi.dim());
    require_diagonal(h0_diag, hi.dim());
    BandWork work(hi);
    approx_step(work, h0_diag, g, pivot_floor, 0);
    return std::move(work).finish();
}

DenseMatrix eliminate_top_exact_dense(const DenseMatrix& h, double trial_e, double pivot_floor)
{
    require_reducible(h.size());
    return exact_step_dense(h, trial_e, pivot_floor, 0);
}

DenseMatrix eliminate_top_approx_dense(std::span<const double> h0_diag, const DenseMatrix& hi, double g,
                                       double pivot_floor)
{
    require_reducible(hi.size());
    require_diagonal(h0_diag, hi.size());
    return approx_step_dense(hi, h0_diag, g, pivot_floor, 0);
}

BandMatrix reduce_interaction(std::span<const double> h0_diag, const BandMatrix& hi, double g,
                              std::size_t target_cutoff, double pivot_floor)
{
    require_diagonal(h0_diag, hi.dim());
    if (target_cutoff > hi.cutoff())
        throw InvalidArgument("target cutoff exceeds the matrix cutoff");
    BandWork work(hi);
    for (std::size_t step = 0; work.top() > target_cutoff; ++step)
        approx_step(work, h0_diag, g, pivot_floor, step);
    return std::move(work).finish();
}

BandMatrix rg_reduce(std::span<const double> h0_diag, const BandMatrix& hi, const RGConfig& config)
{
    check_config(config, hi.dim());
    require_diagonal(h0_diag, hi.dim());
    if (config.mode == EliminationMode::approximate) {
        const BandMatrix reduced = reduce_interaction(h0_diag, hi, config.g, config.target_cutoff, config.pivot_floor);
        return combine(h0_diag, reduced, config.g);
    }
    BandWork work(combine(h0_diag, hi, config.g));
    for (std::size_t step = 0; work.top() > config.target_cutoff; ++step)
        exact_step(work, config.trial_e, config.pivot_floor, step);
    return std::move(work).finish();
}

BandMatrix rg_reduce(const RGConfig& config)
{
    if (!std::isfinite(config.g) || config.g < 0.0)
        throw InvalidArgument("coupling g must be finite and non-negative");
    return rg_reduce(free_diagonal(config.initial_cutoff), interaction(config.initial_cutoff), config);
}

DenseMatrix rg_reduce_dense(std::span<const double> h0_diag, const DenseMatrix& hi, const RGConfig& config)
{
    check_config(config, hi.size());
    require_diagonal(h0_diag, hi.size());
    if (config.mode == EliminationMode::approximate) {
        DenseMatrix work = hi;
        for (std::size_t step = 0; work.size() > config.target_cutoff + 1; ++step)
            work = approx_step_dense(work, h0_diag, config.g, config.pivot_floor, step);
        return combine_dense(h0_diag, work, config.g);
    }
    DenseMatrix work = combine_dense(h0_diag, hi, config.g);
    for (std::size_t step = 0; work.size() > config.target_cutoff + 1; ++step)
        work = exact_step_dense(work, config.trial_e, config.pivot_floor, step);
    return work;
}

CornerDelta corner_delta(const DenseMatrix& h_rg, const DenseMatrix& h_pc, std::size_t corner_size)
{
    if (h_rg.size() != h_pc.size())
        throw InvalidArgument("corner_delta needs matrices of equal size");
    const std::size_t dim = h_rg.size();
    const std::size_t size = std::min(corner_size, dim);
    CornerDelta out;
    out.first_index = dim - size;
    out.difference = DenseMatrix(size);
    for (std::size_t k = 0; k < dim; ++k)
        for (std::size_t l = 0; l < dim; ++l) {
            const bool differs = h_rg(k, l) != h_pc(k, l);
            if (differs)
                ++out.changed_entries;
            if (k >= out.first_index && l >= out.first_index)
                out.difference(k - out.first_index, l - out.first_index) = h_rg(k, l) - h_pc(k, l);
            else if (differs)
                throw LocalityError("entry (" + std::to_string(k) + "," + std::to_string(l) +
                                    ") changed outside the " + std::to_string(size) + "x" + std::to_string(size) +
                                    " corner: " + format_real(h_rg(k, l)) + " vs " + format_real(h_pc(k, l)));
        }
    return out;
}

CornerDelta corner_delta(const BandMatrix& h_rg, const BandMatrix& h_pc)
{
    if (h_rg.dim() != h_pc.dim() || h_rg.half_bandwidth() != h_pc.half_bandwidth())
        throw InvalidArgument("corner_delta needs matrices of equal dimension and bandwidth");
    return corner_delta(h_rg.to_dense(), h_pc.to_dense(), h_rg.half_bandwidth());
}

std::optional<int> xi_index(std::size_t k, std::size_t l, std::size_t cutoff)
{
    if (k > cutoff || l > cutoff)
        return std::nullopt;
    const auto [low, high] = std::minmax(k, l);
    const std::size_t from_top = cutoff - high;
    if (low == high && from_top < 4)
        return static_cast<int>(from_top) + 1;
    if (high - low == 2 && from_top < 2)
        return static_cast<int>(from_top) + 5;
    return std::nullopt;
}

std::array<std::pair<std::size_t, std::size_t>, 6> xi_positions(std::size_t cutoff)
{
    if (cutoff < 3)
        throw InvalidArgument("xi positions need a cutoff of at least 3");
    const std::size_t n = cutoff;
    return {{{n, n}, {n - 1, n - 1}, {n - 2, n - 2}, {n - 3, n - 3}, {n, n - 2}, {n - 1, n - 3}}};
}

namespace {

// (xi_1, xi_3, xi_5) at some cutoff, or (xi_2, xi_4, xi_6) for the shifted set.
struct XiSet {
    double top = 1.0;
    double lower = 1.0;
    double coupling = 1.0;
};

// One second-order step n -> n-2. shift = 0 is the (xi_1, xi_3, xi_5) set;
// shift = 1 raises every f index by one and uses n-1 as the free energy.
XiSet advance(const XiSet& x, double g, std::size_t n, std::size_t shift, double trial_e, double floor,
              std::size_t initial)
{
    const std::size_t top = n - shift;
    const auto f = [top](std::size_t a, std::size_t b) { return interaction_element(top - a, top - b); };
    const double den = static_cast<double>(top) + g * f(0, 0) * x.top - trial_e;
    if (!(std::abs(den) >= floor))
        throw PivotError(top, den, initial - top);
    return {
        x.lower - g * (f(0, 2) * f(0, 2) / f(2, 2)) * (x.coupling * x.coupling / den),
        1.0 - g * (f(0, 4) * f(0, 4) / f(4, 4)) / den,
        1.0 - g * (f(0, 2) * f(0, 4) / f(2, 4)) * (x.coupling / den),
    };
}

} // namespace

XiTrace xi_flow(double g, std::size_t initial_cutoff, std::size_t min_cutoff, double trial_e, double pivot_floor)
{
    if (!std::isfinite(g) || g < 0.0)
        throw InvalidArgument("coupling g must be finite and non-negative");
    if (!std::isfinite(trial_e))
        throw InvalidArgument("trial energy must be finite");
    if (min_cutoff < 4)
        throw InvalidArgument("xi flow needs a minimum cutoff of at least 4");
    if (initial_cutoff < min_cutoff + 2)
        throw InvalidArgument("xi flow needs initial cutoff >= minimum cutoff + 2");

    const std::size_t N = initial_cutoff;
    std::vector<XiSet> chain_a(N + 1);
    std::vector<XiSet> chain_b(N + 1);
    for (std::size_t n = N; n >= min_cutoff + 1; n -= 2)
        chain_a[n - 2] = advance(chain_a[n], g, n, 0, trial_e, pivot_floor, N);
    for (std::size_t n = N; n >= min_cutoff + 2; n -= 2)
        chain_b[n - 2] = advance(chain_b[n], g, n, 1, trial_e, pivot_floor, N);

    // Both chains only land on cutoffs of the same parity as N. The other
    // parity follows from (xi_2, xi_4, xi_6)(n) = (xi_1, xi_3, xi_5)(n-1):
    // eliminating n leaves rows n-1 and n-3 untouched.
    const auto same_parity = [N](std::size_t n) { return (N - n) % 2 == 0; };

    XiTrace trace;
    trace.g = g;
    trace.initial_cutoff = N;
    trace.trial_e = trial_e;
    trace.rows.reserve(N - min_cutoff + 1);
    for (std::size_t n = N + 1; n-- > min_cutoff;) {
        const XiSet& odd = same_parity(n) ? chain_a[n] : chain_b[n + 1];
        const XiSet& even = same_parity(n) ? chain_b[n] : chain_a[n - 1];
        XiRow row;
        row.cutoff = n;
        row.xi = {odd.top, even.top, odd.lower, even.lower, odd.coupling, even.coupling};
        row.positions = xi_positions(n);
        for (std::size_t a = 0; a < 6; ++a)
            for (std::size_t b = 0; b < 6; ++b)
                row.f[a][b] = (a <= n && b <= n) ? interaction_element(n - a, n - b) : 0.0;
        trace.rows.push_back(row);
    }
    return trace;
}

std::array<double, 6> xi_ratios(const DenseMatrix& hi_rg)
{
    if (hi_rg.size() < 4)
        throw InvalidArgument("xi ratios need at least four basis states");
    const auto positions = xi_positions(hi_rg.size() - 1);
    std::array<double, 6> out{};
    for (std::size_t i = 0; i < 6; ++i) {
        const auto [k, l] = positions[i];
        out[i] = hi_rg(k, l) / interaction_element(k, l);
    }
    return out;
}

void write_csv(std::ostream& os, const XiTrace& trace)
{
    os << "n,xi1,xi2,xi3,xi4,xi5,xi6\n";
    for (const auto& row : trace.rows) {
        os << row.cutoff;
        for (double v : row.xi)
            os << ',' << format_real(v);
        os << '\n';
    }
}

} // namespace bandrg
