#include "bandrg/eig.hpp"

#include "bandrg/error.hpp"
#include "bandrg/io.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <string>

namespace bandrg {

namespace {

using index_t = std::ptrdiff_t;

void check_symmetric(const DenseMatrix& a)
{
    const std::size_t n = a.size();
    double scale = 0.0;
    for (double v : a.values()) {
        if (!std::isfinite(v))
            throw NumericalError("matrix has non-finite entries");
        scale = std::max(scale, std::abs(v));
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < i; ++j)
            if (std::abs(a(i, j) - a(j, i)) > 1e-12 * scale)
                throw InvalidArgument("matrix is not symmetric at (" + std::to_string(i) + "," +
                                      std::to_string(j) + ")");
}

// Householder reduction of the lower triangle of `a` (destroyed) to a
// tridiagonal matrix with diagonal `d` and subdiagonal `e` (e[0] unused on exit,
// then shifted so that e[i] couples d[i] and d[i+1]).
void tridiagonalize(DenseMatrix& a, std::vector<double>& d, std::vector<double>& e)
{
    const index_t n = static_cast<index_t>(a.size());
    d.assign(n, 0.0);
    e.assign(n, 0.0);
    for (index_t i = n - 1; i > 0; --i) {
        const index_t l = i - 1;
        double h = 0.0;
        if (l > 0) {
            double scale = 0.0;
            for (index_t k = 0; k <= l; ++k)
                scale += std::abs(a(i, k));
            if (scale == 0.0) {
                e[i] = a(i, l);
            } else {
                for (index_t k = 0; k <= l; ++k) {
                    a(i, k) /= scale;
                    h += a(i, k) * a(i, k);
                }
                double f = a(i, l);
                double g = f >= 0.0 ? -std::sqrt(h) : std::sqrt(h);
                e[i] = scale * g;
                h -= f * g;
                a(i, l) = f - g;
                f = 0.0;
                for (index_t j = 0; j <= l; ++j) {
                    g = 0.0;
                    for (index_t k = 0; k <= j; ++k)
                        g += a(j, k) * a(i, k);
                    for (index_t k = j + 1; k <= l; ++k)
                        g += a(k, j) * a(i, k);
                    e[j] = g / h;
                    f += e[j] * a(i, j);
                }
                const double hh = f / (h + h);
                for (index_t j = 0; j <= l; ++j) {
                    f = a(i, j);
                    g = e[j] - hh * f;
                    e[j] = g;
                    for (index_t k = 0; k <= j; ++k)
                        a(j, k) -= f * e[k] + g * a(i, k);
                }
            }
        } else {
            e[i] = a(i, l);
        }
        d[i] = h;
    }
    for (index_t i = 0; i < n; ++i)
        d[i] = a(i, i);
    for (index_t i = 1; i < n; ++i)
        e[i - 1] = e[i];
    e[n - 1] = 0.0;
}

// Implicit QL on the tridiagonal (d, e); eigenvalues are left in d.
void ql_implicit(std::vector<double>& d, std::vector<double>& e)
{
    constexpr double eps = std::numeric_limits<double>::epsilon();
    const index_t n = static_cast<index_t>(d.size());
    const index_t max_iterations = 30 * n;
    index_t iterations = 0;
    for (index_t l = 0; l < n; ++l) {
        index_t m;
        do {
            for (m = l; m < n - 1; ++m) {
                const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
                if (std::abs(e[m]) <= eps * dd)
                    break;
            }
            if (m == l)
                break;
            if (++iterations > max_iterations)
                throw ConvergenceError("implicit QL did not converge within " + std::to_string(max_iterations) +
                                       " iterations");
            double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            double r = std::hypot(g, 1.0);
            g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
            double s = 1.0;
            double c = 1.0;
            double p = 0.0;
            bool underflow = false;
            for (index_t i = m - 1; i >= l; --i) {
                const double f = s * e[i];
                const double b = c * e[i];
                r = std::hypot(f, g);
                e[i + 1] = r;
                if (r == 0.0) {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
            }
            if (underflow)
                continue;
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        } while (m != l);
    }
}

} // namespace

std::string_view to_string(SpectrumSource source)
{
    switch (source) {
    case SpectrumSource::reference:
        return "reference";
    case SpectrumSource::rg:
        return "rg";
    case SpectrumSource::pc:
        return "pc";
    case SpectrumSource::unspecified:
        break;
    }
    return "unspecified";
}

Spectrum eigenvalues_symmetric(const DenseMatrix& matrix)
{
    if (matrix.size() == 0)
        throw InvalidArgument("eigenvalues of an empty matrix");
    check_symmetric(matrix);

    DenseMatrix work = matrix;
    std::vector<double> d;
    std::vector<double> e;
    tridiagonalize(work, d, e);
    ql_implicit(d, e);
    std::sort(d.begin(), d.end());

    Spectrum out;
    out.eigenvalues = std::move(d);
    out.source_cutoff = matrix.size() - 1;
    return out;
}

Spectrum lowest_k(const BandMatrix& matrix, std::size_t count)
{
    if (count == 0 || count > matrix.dim())
        throw InvalidArgument("requested " + std::to_string(count) + " eigenvalues of a " +
                              std::to_string(matrix.dim()) + "-state matrix");
    Spectrum out = eigenvalues_symmetric(matrix.to_dense());
    out.eigenvalues.resize(count);
    return out;
}

void write_csv(std::ostream& os, const Spectrum& spectrum)
{
    os << "index,eigenvalue\n";
    for (std::size_t i = 0; i < spectrum.eigenvalues.size(); ++i)
        os << i << ',' << format_real(spectrum.eigenvalues[i]) << '\n';
}

} // namespace bandrg
