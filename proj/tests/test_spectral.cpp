#include <doctest.h>

#include <cmath>
#include <functional>
#include <numbers>

#include "icf/detail/spectral.hpp"

namespace {

constexpr double kTau = 2.0 * std::numbers::pi;

std::vector<double> grid_samples(int n, const std::function<double(double)>& f) {
    std::vector<double> out(n);
    for (int j = 0; j < n; ++j) out[j] = f(kTau * j / n);
    return out;
}

} // namespace

TEST_CASE("spectral derivative is exact on trigonometric polynomials") {
    const int n = 64;
    auto f = grid_samples(n, [](double u) {
        return 3.0 + std::cos(5 * u) - 2.0 * std::sin(3 * u);
    });
    for (int order = 1; order <= 6; ++order) {
        auto d = icf::spectral::derivative(f, order);
        for (int j = 0; j < n; ++j) {
            const double u = kTau * j / n;
            const double c5 = std::pow(5.0, order), c3 = std::pow(3.0, order);
            double expect = 0;
            switch (order % 4) {
            case 0: expect = c5 * std::cos(5 * u) - 2 * c3 * std::sin(3 * u); break;
            case 1: expect = -c5 * std::sin(5 * u) - 2 * c3 * std::cos(3 * u); break;
            case 2: expect = -c5 * std::cos(5 * u) + 2 * c3 * std::sin(3 * u); break;
            case 3: expect = c5 * std::sin(5 * u) + 2 * c3 * std::cos(3 * u); break;
            }
            CHECK(d[j] == doctest::Approx(expect).epsilon(1e-9));
        }
    }
}

TEST_CASE("non-power-of-two sizes take the naive transform and agree") {
    const int n = 48;
    auto f = grid_samples(n, [](double u) { return std::cos(4 * u) + 0.5 * std::sin(u); });
    auto d = icf::spectral::derivative(f, 1);
    for (int j = 0; j < n; ++j) {
        const double u = kTau * j / n;
        CHECK(d[j] == doctest::Approx(-4 * std::sin(4 * u) + 0.5 * std::cos(u))
                          .epsilon(1e-11));
    }
}

TEST_CASE("chop removes rounding-level modes before differentiation") {
    const int n = 256;
    auto f = grid_samples(n, [](double u) { return std::cos(u) + 1e-15 * std::cos(100 * u); });
    // Naively the 1e-15 mode contributes 1e-15 * 100^4 = 1e-7 to the 4th
    // derivative; the chop removes it entirely.
    auto d4 = icf::spectral::derivative(f, 4);
    for (int j = 0; j < n; ++j)
        CHECK(d4[j] == doctest::Approx(std::cos(kTau * j / n)).epsilon(1e-12));
}

TEST_CASE("trigonometric interpolation reproduces band-limited values off-grid") {
    const int n = 64;
    auto f = grid_samples(n, [](double u) { return 1.0 + std::cos(7 * u) - std::sin(2 * u); });
    auto m = icf::spectral::modes(f);
    for (double u : {0.1234, 2.71, 5.5, 0.0}) {
        const double expect = 1.0 + std::cos(7 * u) - std::sin(2 * u);
        CHECK(icf::spectral::trig_eval(m, u) == doctest::Approx(expect).epsilon(1e-12));
    }
    // On-grid evaluation returns the samples.
    for (int j : {0, 17, 63})
        CHECK(icf::spectral::trig_eval(m, kTau * j / n) ==
              doctest::Approx(f[j]).epsilon(1e-13));
}

TEST_CASE("periodic antiderivative inverts the derivative on zero-mean fields") {
    const int n = 128;
    auto f = grid_samples(n, [](double u) { return std::cos(3 * u) + std::sin(8 * u); });
    auto af = icf::spectral::periodic_antiderivative(f);
    auto back = icf::spectral::derivative(af, 1);
    for (int j = 0; j < n; ++j) CHECK(back[j] == doctest::Approx(f[j]).epsilon(1e-12));
}

TEST_CASE("extended-precision instantiations reach their own floors") {
    const int n = 64;
    const long double tau_l = 2.0L * icf::detail::RealTraits<long double>::pi();
    std::vector<long double> f(n);
    for (int j = 0; j < n; ++j) f[j] = std::cos(2.0L * tau_l * j / n);
    auto d = icf::spectral::derivative(f, 1);
    for (int j = 0; j < n; ++j) {
        const long double expect = -2.0L * std::sin(2.0L * tau_l * j / n);
        CHECK(std::fabs(d[j] - expect) < 1e-16L);
    }

#if defined(ICF_HAVE_FLOAT128)
    using Q = __float128;
    const Q tau_q = Q(2) * icf::detail::RealTraits<Q>::pi();
    std::vector<Q> g(n);
    for (int j = 0; j < n; ++j) g[j] = cosq(Q(2) * tau_q * Q(j) / Q(n));
    auto dq = icf::spectral::derivative(g, 1);
    for (int j = 0; j < n; ++j) {
        const Q expect = -Q(2) * sinq(Q(2) * tau_q * Q(j) / Q(n));
        CHECK(static_cast<double>(fabsq(dq[j] - expect)) < 1e-30);
    }
#endif
}
