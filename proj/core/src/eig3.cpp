#include "mobmap/eig3.hpp"

#include <algorithm>
#include <cmath>

namespace mobmap {

namespace {

// Cyclic Jacobi for symmetric 3x3. Unconditionally convergent, used when the
// analytic path cannot produce a reliable eigenbasis.
SymEigen3 jacobi_eigen3(Mat3 a) {
    Mat3 v;
    v(0, 0) = v(1, 1) = v(2, 2) = 1.0;

    for (int sweep = 0; sweep < 64; ++sweep) {
        const double off = a(0, 1) * a(0, 1) + a(0, 2) * a(0, 2) + a(1, 2) * a(1, 2);
        const double diag = a(0, 0) * a(0, 0) + a(1, 1) * a(1, 1) + a(2, 2) * a(2, 2);
        if (off <= 1e-32 * (diag + off)) break;
        for (int p = 0; p < 2; ++p) {
            for (int q = p + 1; q < 3; ++q) {
                const double apq = a(p, q);
                if (apq == 0.0) continue;
                const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;

                for (int i = 0; i < 3; ++i) {
                    const double aip = a(i, p);
                    const double aiq = a(i, q);
                    a(i, p) = c * aip - s * aiq;
                    a(i, q) = s * aip + c * aiq;
                }
                for (int i = 0; i < 3; ++i) {
                    const double api = a(p, i);
                    const double aqi = a(q, i);
                    a(p, i) = c * api - s * aqi;
                    a(q, i) = s * api + c * aqi;
                }
                for (int i = 0; i < 3; ++i) {
                    const double vip = v(i, p);
                    const double viq = v(i, q);
                    v(i, p) = c * vip - s * viq;
                    v(i, q) = s * vip + c * viq;
                }
            }
        }
    }

    SymEigen3 out;
    std::array<int, 3> order{0, 1, 2};
    std::array<double, 3> vals{a(0, 0), a(1, 1), a(2, 2)};
    std::sort(order.begin(), order.end(), [&](int i, int j) { return vals[i] < vals[j]; });
    for (int i = 0; i < 3; ++i) {
        const int k = order[i];
        out.values[i] = vals[k];
        out.vectors[i] = Vec3{v(0, k), v(1, k), v(2, k)}.normalized();
    }
    return out;
}

// Eigenvector of `a` for eigenvalue lam by crossing rows of (a - lam*I).
// Returns a zero vector when the eigenvalue is (numerically) repeated.
Vec3 eigenvector_for(const Mat3& a, double lam, double scale) {
    const Vec3 r0{a(0, 0) - lam, a(0, 1), a(0, 2)};
    const Vec3 r1{a(1, 0), a(1, 1) - lam, a(1, 2)};
    const Vec3 r2{a(2, 0), a(2, 1), a(2, 2) - lam};

    const Vec3 c01 = r0.cross(r1);
    const Vec3 c02 = r0.cross(r2);
    const Vec3 c12 = r1.cross(r2);

    Vec3 best = c01;
    if (c02.squared_norm() > best.squared_norm()) best = c02;
    if (c12.squared_norm() > best.squared_norm()) best = c12;

    const double tol = 1e-14 * scale * scale;
    if (best.squared_norm() <= tol * tol) return {};
    return best.normalized();
}

}  // namespace

SymEigen3 sym_eigen3(const Mat3& a) {
    const double p1 = a(0, 1) * a(0, 1) + a(0, 2) * a(0, 2) + a(1, 2) * a(1, 2);
    if (p1 == 0.0) {
        // Already diagonal.
        SymEigen3 out;
        std::array<int, 3> order{0, 1, 2};
        std::array<double, 3> vals{a(0, 0), a(1, 1), a(2, 2)};
        std::sort(order.begin(), order.end(), [&](int i, int j) { return vals[i] < vals[j]; });
        for (int i = 0; i < 3; ++i) {
            out.values[i] = vals[order[i]];
            Vec3 e{};
            if (order[i] == 0) e = {1, 0, 0};
            else if (order[i] == 1) e = {0, 1, 0};
            else e = {0, 0, 1};
            out.vectors[i] = e;
        }
        return out;
    }

    const double q = (a(0, 0) + a(1, 1) + a(2, 2)) / 3.0;
    const double p2 = (a(0, 0) - q) * (a(0, 0) - q) + (a(1, 1) - q) * (a(1, 1) - q) +
                      (a(2, 2) - q) * (a(2, 2) - q) + 2.0 * p1;
    const double p = std::sqrt(p2 / 6.0);

    Mat3 b = a;
    b(0, 0) -= q;
    b(1, 1) -= q;
    b(2, 2) -= q;
    double detb = b(0, 0) * (b(1, 1) * b(2, 2) - b(1, 2) * b(2, 1)) -
                  b(0, 1) * (b(1, 0) * b(2, 2) - b(1, 2) * b(2, 0)) +
                  b(0, 2) * (b(1, 0) * b(2, 1) - b(1, 1) * b(2, 0));
    double r = detb / (2.0 * p * p * p);
    r = std::clamp(r, -1.0, 1.0);

    const double phi = std::acos(r) / 3.0;
    const double lam2 = q + 2.0 * p * std::cos(phi);                       // largest
    const double lam0 = q + 2.0 * p * std::cos(phi + 2.0 * M_PI / 3.0);    // smallest
    const double lam1 = 3.0 * q - lam0 - lam2;

    const double scale = std::max({std::abs(lam0), std::abs(lam1), std::abs(lam2)});

    SymEigen3 out;
    out.values = {lam0, lam1, lam2};
    // Clustered eigenvalues make the cross-product extraction unstable.
    const double sep = 1e-6 * std::max(scale, 1e-300);
    if (lam1 - lam0 < sep || lam2 - lam1 < sep) return jacobi_eigen3(a);

    for (int i = 0; i < 3; ++i) {
        out.vectors[i] = eigenvector_for(a, out.values[i], std::max(scale, 1.0));
        if (out.vectors[i].squared_norm() == 0.0) return jacobi_eigen3(a);
    }
    return out;
}

}  // namespace mobmap
