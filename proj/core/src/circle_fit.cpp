#include "icf/circle_fit.hpp"

#include <array>
#include <cmath>

namespace icf {

CircleFit fit_circle(const CurveState& curve) {
    const int n = curve.n();
    if (n < 16) throw BadParams("fit_circle needs at least 16 points");

    // Work relative to the centroid for conditioning.
    double mx = 0, my = 0;
    for (const auto& p : curve.points) {
        mx += p.x;
        my += p.y;
    }
    mx /= n;
    my /= n;

    // Normal equations for z = x^2 + y^2 = 2 a x + 2 b y + c.
    std::array<std::array<double, 3>, 3> A{};
    std::array<double, 3> rhs{};
    for (const auto& p : curve.points) {
        const double x = p.x - mx, y = p.y - my;
        const double z = x * x + y * y;
        const std::array<double, 3> row = {2 * x, 2 * y, 1};
        for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 3; ++j) A[i][j] += row[i] * row[j];
            rhs[i] += row[i] * z;
        }
    }

    // Gaussian elimination with partial pivoting on the 3x3 system.
    std::array<int, 3> piv = {0, 1, 2};
    for (int col = 0; col < 3; ++col) {
        int best = col;
        for (int r = col + 1; r < 3; ++r)
            if (std::fabs(A[piv[r]][col]) > std::fabs(A[piv[best]][col])) best = r;
        std::swap(piv[col], piv[best]);
        const double d = A[piv[col]][col];
        if (std::fabs(d) < 1e-12 * (1.0 + std::fabs(A[0][0])))
            throw DegenerateFit("collinear or degenerate points");
        for (int r = col + 1; r < 3; ++r) {
            const double f = A[piv[r]][col] / d;
            for (int c2 = col; c2 < 3; ++c2) A[piv[r]][c2] -= f * A[piv[col]][c2];
            rhs[piv[r]] -= f * rhs[piv[col]];
        }
    }
    std::array<double, 3> sol{};
    for (int col = 2; col >= 0; --col) {
        double acc = rhs[piv[col]];
        for (int c2 = col + 1; c2 < 3; ++c2) acc -= A[piv[col]][c2] * sol[c2];
        sol[col] = acc / A[piv[col]][col];
    }

    CircleFit fit;
    fit.center = {sol[0] + mx, sol[1] + my};
    const double r2 = sol[2] + sol[0] * sol[0] + sol[1] * sol[1];
    if (!(r2 > 0)) throw DegenerateFit("non-positive squared radius");
    fit.radius = std::sqrt(r2);

    double acc = 0;
    for (const auto& p : curve.points) {
        const double d = norm(p - fit.center) - fit.radius;
        acc += d * d;
    }
    fit.residual = std::sqrt(acc / n) / fit.radius;
    return fit;
}

} // namespace icf
