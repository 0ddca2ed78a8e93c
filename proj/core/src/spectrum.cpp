#include "icf/spectrum.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "icf/curve_io.hpp"
#include "icf/detail/spectral.hpp"

namespace icf {

namespace {
constexpr double kPi = std::numbers::pi;
}

std::complex<double> SpectralDecomposition::coeff(int p) const {
    const int q = std::abs(p);
    if (q > p_max) throw TruncationTooHigh("coefficient beyond p_max requested");
    return p >= 0 ? a[q] : std::conj(a[q]);
}

SpectralDecomposition decompose_curvature(const GeometryCache& cache, int p_max) {
    const int n = cache.n();
    if (p_max < 0 || p_max > n / 2 - 1)
        throw TruncationTooHigh("p_max " + std::to_string(p_max) +
                                " exceeds N/2 - 1 = " + std::to_string(n / 2 - 1));

    // The series is taken in arc length; resample so the uniform grid
    // realises (1/L) int k e^{-i 2 pi p s / L} ds exactly.
    auto uniform = resample_uniform_arclength(cache.curve, n);
    auto g = build_geometry(uniform);
    auto coeffs = spectral::modes(g.k());

    SpectralDecomposition dec;
    dec.p_max = p_max;
    dec.length = g.length;
    dec.winding = g.winding;
    dec.a.resize(p_max + 1);
    for (int p = 0; p <= p_max; ++p) dec.a[p] = coeffs[p];
    return dec;
}

std::vector<double> k0_operator(const GeometryCache& cache) {
    const double factor = std::pow(2.0 * kPi * cache.winding / cache.length, 2);
    std::vector<double> out(cache.n());
    for (int j = 0; j < cache.n(); ++j)
        out[j] = cache.k_s4()[j] + factor * cache.k_ss()[j];
    return out;
}

double c_omega(int winding) {
    if (winding <= 0) throw BadWinding("c_omega requires winding >= 1");
    const double w2 = static_cast<double>(winding) * winding;
    const double up = std::pow(1.0 - w2 / ((winding + 1.0) * (winding + 1.0)), 2);
    if (winding == 1) return up; // p = 0 is excluded from the sum
    const double down = std::pow(1.0 - w2 / ((winding - 1.0) * (winding - 1.0)), 2);
    return std::min(down, up);
}

ModeGapReport mode_gap_report(const GeometryCache& cache) {
    const int w = cache.winding;
    if (w <= 0) throw BadWinding("mode_gap_report requires winding >= 1");

    ModeGapReport rep;
    rep.winding = w;
    auto k0 = k0_operator(cache);
    std::vector<double> sq(k0.size());
    for (std::size_t j = 0; j < k0.size(); ++j) sq[j] = k0[j] * k0[j];
    rep.lhs = cache.integrate(sq);
    for (std::size_t j = 0; j < sq.size(); ++j)
        sq[j] = cache.k_s4()[j] * cache.k_s4()[j];
    rep.p_quantity = cache.integrate(sq);
    rep.c_omega_value = c_omega(w);

    const double L = cache.length, E = cache.energy;
    rep.rhs = rep.c_omega_value * rep.p_quantity -
              std::pow(4.0, 5) * std::pow(static_cast<double>(w), 8) *
                  std::pow(kPi, 8) * E * E / (L * L * L);
    rep.slack = rep.lhs - rep.rhs;
    rep.tolerance = 1e-8 * std::max(1.0, rep.c_omega_value * rep.p_quantity);
    rep.pass = rep.slack >= -rep.tolerance;

    const int p_max = std::min(std::max(cache.n() / 4, w), cache.n() / 2 - 1);
    auto dec = decompose_curvature(cache, p_max);
    rep.a_omega_abs = std::abs(dec.coeff(w));
    rep.a_omega_bound = 2.0 * L * L * E;
    rep.a_bound_pass = rep.a_omega_abs <= rep.a_omega_bound + 1e-12;
    return rep;
}

std::string mode_gap_to_json(const ModeGapReport& r) {
    std::ostringstream out;
    out << "{\n"
        << "  \"winding\": " << r.winding << ",\n"
        << "  \"lhs\": " << format_double(r.lhs) << ",\n"
        << "  \"p_quantity\": " << format_double(r.p_quantity) << ",\n"
        << "  \"c_omega\": " << format_double(r.c_omega_value) << ",\n"
        << "  \"rhs\": " << format_double(r.rhs) << ",\n"
        << "  \"slack\": " << format_double(r.slack) << ",\n"
        << "  \"tolerance\": " << format_double(r.tolerance) << ",\n"
        << "  \"pass\": " << (r.pass ? "true" : "false") << ",\n"
        << "  \"a_omega_abs\": " << format_double(r.a_omega_abs) << ",\n"
        << "  \"a_omega_bound\": " << format_double(r.a_omega_bound) << ",\n"
        << "  \"a_bound_pass\": " << (r.a_bound_pass ? "true" : "false") << "\n"
        << "}\n";
    return out.str();
}

std::string spectrum_to_csv(const SpectralDecomposition& dec) {
    std::ostringstream out;
    out << "p,re_a,im_a\n";
    for (int p = -dec.p_max; p <= dec.p_max; ++p) {
        const auto c = dec.coeff(p);
        out << p << ',' << format_double(c.real()) << ',' << format_double(c.imag())
            << '\n';
    }
    return out.str();
}

} // namespace icf
