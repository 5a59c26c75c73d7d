#include "ksmap/pauli.hpp"

#include <cmath>

namespace ksmap {

namespace {
constexpr Complex kI{0.0, 1.0};
}

QubitElement operator+(const QubitElement& x, const QubitElement& y) {
    return {x.w0 + y.w0, x.w + y.w};
}

QubitElement operator-(const QubitElement& x, const QubitElement& y) {
    return {x.w0 - y.w0, x.w - y.w};
}

QubitElement operator*(Complex a, const QubitElement& x) {
    return {a * x.w0, a * x.w};
}

QubitElement from_matrix(const Mat2c& m) {
    QubitElement x;
    x.w0 = 0.5 * (m(0, 0) + m(1, 1));
    x.w[0] = 0.5 * (m(0, 1) + m(1, 0));
    x.w[1] = (m(1, 0) - m(0, 1)) / (2.0 * kI);
    x.w[2] = 0.5 * (m(0, 0) - m(1, 1));
    return x;
}

Mat2c to_matrix(const QubitElement& x) {
    Mat2c m;
    m(0, 0) = x.w0 + x.w[2];
    m(0, 1) = x.w[0] - kI * x.w[1];
    m(1, 0) = x.w[0] + kI * x.w[1];
    m(1, 1) = x.w0 - x.w[2];
    return m;
}

QubitElement multiply(const QubitElement& x, const QubitElement& y) {
    QubitElement out;
    out.w0 = x.w0 * y.w0 + dot_unconjugated(x.w, y.w);
    out.w = x.w0 * y.w + y.w0 * x.w + kI * cross(x.w, y.w);
    return out;
}

QubitElement adjoint(const QubitElement& x) {
    return {std::conj(x.w0), conjugate(x.w)};
}

Complex normalized_trace(const QubitElement& x) { return x.w0; }

bool is_self_adjoint(const QubitElement& x, double tol) {
    return std::abs(x.w0.imag()) <= tol && std::abs(x.w[0].imag()) <= tol &&
           std::abs(x.w[1].imag()) <= tol && std::abs(x.w[2].imag()) <= tol;
}

bool is_positive(const QubitElement& x, double tol) {
    if (!is_self_adjoint(x, tol)) return false;
    return norm(x.w) <= x.w0.real() + tol;
}

bool is_normal(const QubitElement& x, double tol) {
    return norm(cross(x.w, conjugate(x.w))) <= tol;
}

}  // namespace ksmap
