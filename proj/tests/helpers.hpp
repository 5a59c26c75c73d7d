#pragma once

// Shared assertions and deterministic random inputs for the test suites.

#include <cmath>

#include "ksmap/linalg.hpp"
#include "ksmap/pauli.hpp"
#include "ksmap/rng.hpp"

namespace testutil {

// Vec3c is an alias for std::array, so the ksmap operators are not found by
// argument-dependent lookup from inside this namespace.
using namespace ksmap;

inline bool close(double a, double b, double tol) { return std::abs(a - b) <= tol; }

inline double mat_dist(const ksmap::Mat3& a, const ksmap::Mat3& b) {
    return ksmap::max_abs(a - b);
}

inline double mat_dist(const ksmap::Mat2c& a, const ksmap::Mat2c& b) {
    return ksmap::frobenius_norm(a - b);
}

inline double vec_dist(const ksmap::Vec3c& a, const ksmap::Vec3c& b) {
    return ksmap::norm(a - b);
}

inline ksmap::Mat3 random_mat3(ksmap::Rng& rng, double scale = 1.0) {
    ksmap::Mat3 m;
    for (auto& x : m.a) x = rng.uniform(-scale, scale);
    return m;
}

inline ksmap::Vec3c random_vec3c(ksmap::Rng& rng, double scale = 1.0) {
    ksmap::Vec3c v;
    for (auto& x : v) x = {rng.uniform(-scale, scale), rng.uniform(-scale, scale)};
    return v;
}

inline ksmap::Mat2c random_mat2c(ksmap::Rng& rng, double scale = 1.0) {
    ksmap::Mat2c m;
    for (auto& x : m.a) x = {rng.uniform(-scale, scale), rng.uniform(-scale, scale)};
    return m;
}

inline ksmap::QubitElement random_element(ksmap::Rng& rng, double scale = 1.0) {
    return ksmap::from_matrix(random_mat2c(rng, scale));
}

inline ksmap::QubitElement random_self_adjoint(ksmap::Rng& rng, double scale = 1.0) {
    ksmap::QubitElement x;
    x.w0 = rng.uniform(-scale, scale);
    for (auto& c : x.w) c = rng.uniform(-scale, scale);
    return x;
}

// Haar-like random unitary from a normalized random quaternion.
inline ksmap::Mat2c random_unitary(ksmap::Rng& rng) {
    double q[4];
    double n = 0.0;
    do {
        n = 0.0;
        for (auto& c : q) {
            c = rng.uniform(-1.0, 1.0);
            n += c * c;
        }
    } while (n < 1e-6);
    n = std::sqrt(n);
    for (auto& c : q) c /= n;
    ksmap::Mat2c u;
    u(0, 0) = {q[0], -q[3]};
    u(0, 1) = {-q[2], -q[1]};
    u(1, 0) = {q[2], -q[1]};
    u(1, 1) = {q[0], q[3]};
    return u;
}

// Proper rotation about the z axis.
inline ksmap::Mat3 rot_z(double theta) {
    ksmap::Mat3 r = ksmap::Mat3::identity();
    r(0, 0) = std::cos(theta);
    r(0, 1) = -std::sin(theta);
    r(1, 0) = std::sin(theta);
    r(1, 1) = std::cos(theta);
    return r;
}

}  // namespace testutil
