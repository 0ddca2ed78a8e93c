#pragma once

// Scalar abstraction for the spectral pipeline. The production path runs in
// double; verification paths (finite-difference gradient checks) instantiate
// the same code at extended precision to push rounding floors below the
// tolerances being certified.

#include <cmath>
#include <limits>

#if defined(ICF_HAVE_FLOAT128)
#include <quadmath.h>
#endif

namespace icf::detail {

template <class Real>
struct RealTraits {
    static Real pi() { return Real(3.14159265358979323846264338327950288L); }
    static Real sqrt(Real x) { return std::sqrt(x); }
    static Real cos(Real x) { return std::cos(x); }
    static Real sin(Real x) { return std::sin(x); }
    static Real abs(Real x) { return std::fabs(x); }
    static bool finite(Real x) { return std::isfinite(x); }
    // Relative floor below which Fourier modes are indistinguishable from
    // rounding noise for this precision (see spectral::derivative).
    static Real chop() { return Real(1e-13); }
};

template <>
struct RealTraits<long double> {
    static long double pi() { return 3.14159265358979323846264338327950288L; }
    static long double sqrt(long double x) { return std::sqrt(x); }
    static long double cos(long double x) { return std::cos(x); }
    static long double sin(long double x) { return std::sin(x); }
    static long double abs(long double x) { return std::fabs(x); }
    static bool finite(long double x) { return std::isfinite(x); }
    static long double chop() { return 1e-16L; }
};

#if defined(ICF_HAVE_FLOAT128)
template <>
struct RealTraits<__float128> {
    static __float128 pi() { return M_PIq; }
    static __float128 sqrt(__float128 x) { return sqrtq(x); }
    static __float128 cos(__float128 x) { return cosq(x); }
    static __float128 sin(__float128 x) { return sinq(x); }
    static __float128 abs(__float128 x) { return fabsq(x); }
    static bool finite(__float128 x) { return finiteq(x) != 0; }
    static __float128 chop() { return __float128(1e-30); }
};

using verify_real = __float128;
#else
using verify_real = long double;
#endif

} // namespace icf::detail
