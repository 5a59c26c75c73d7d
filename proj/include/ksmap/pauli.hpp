#pragma once

// Coordinates of a complex 2x2 matrix in the Pauli basis,
// m = w0 * I + w[0] * sigma1 + w[1] * sigma2 + w[2] * sigma3,
// together with the algebra operations expressed directly on (w0, w).

#include "ksmap/linalg.hpp"

namespace ksmap {

struct QubitElement {
    Complex w0{};
    Vec3c w{};
};

QubitElement operator+(const QubitElement& x, const QubitElement& y);
QubitElement operator-(const QubitElement& x, const QubitElement& y);
QubitElement operator*(Complex a, const QubitElement& x);

// The unique Pauli coordinates of m; exact inverse of to_matrix.
QubitElement from_matrix(const Mat2c& m);
Mat2c to_matrix(const QubitElement& x);

// Product in coordinates: (x0*y0 + x.y, x0*y + y0*x + i x cross y),
// with the unconjugated dot product.
QubitElement multiply(const QubitElement& x, const QubitElement& y);

QubitElement adjoint(const QubitElement& x);

// Normalized trace tau = Tr/2.
Complex normalized_trace(const QubitElement& x);

// Self-adjoint iff w0 and w are real within tol.
bool is_self_adjoint(const QubitElement& x, double tol = kTol.predicate);

// Positive semidefinite iff self-adjoint and |w| <= w0 + tol.
bool is_positive(const QubitElement& x, double tol = kTol.predicate);

// Normal iff w commutes with its conjugate, i.e. cross(w, conj(w)) = 0.
bool is_normal(const QubitElement& x, double tol = kTol.predicate);

}  // namespace ksmap
