#pragma once

#include <array>

#include "mobmap/types.hpp"

namespace mobmap {

/// Symmetric 3x3 matrix, row-major.
struct Mat3 {
    std::array<double, 9> m{};

    double& operator()(int r, int c) { return m[r * 3 + c]; }
    double operator()(int r, int c) const { return m[r * 3 + c]; }

    Vec3 apply(const Vec3& v) const {
        return {m[0] * v.x + m[1] * v.y + m[2] * v.z,
                m[3] * v.x + m[4] * v.y + m[5] * v.z,
                m[6] * v.x + m[7] * v.y + m[8] * v.z};
    }
};

/// Eigen-decomposition of a symmetric 3x3 matrix, eigenvalues ascending,
/// eigenvectors unit length and mutually orthogonal.
struct SymEigen3 {
    std::array<double, 3> values{};
    std::array<Vec3, 3> vectors{};
};

/// Closed-form trigonometric solve for the eigenvalues with cross-product
/// eigenvector extraction; falls back to cyclic Jacobi sweeps whenever the
/// analytic route is ill-conditioned (clustered eigenvalues).
SymEigen3 sym_eigen3(const Mat3& a);

}  // namespace mobmap
