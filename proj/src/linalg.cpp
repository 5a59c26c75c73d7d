#include "ksmap/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ksmap {

// ===== vectors =====

Vec3c to_complex(const Vec3& v) {
    return {Complex(v[0]), Complex(v[1]), Complex(v[2])};
}

Vec3c conjugate(const Vec3c& v) {
    return {std::conj(v[0]), std::conj(v[1]), std::conj(v[2])};
}

Vec3c cross(const Vec3c& u, const Vec3c& v) {
    return {u[1] * v[2] - u[2] * v[1],
            u[2] * v[0] - u[0] * v[2],
            u[0] * v[1] - u[1] * v[0]};
}

Vec3 cross(const Vec3& u, const Vec3& v) {
    return {u[1] * v[2] - u[2] * v[1],
            u[2] * v[0] - u[0] * v[2],
            u[0] * v[1] - u[1] * v[0]};
}

Complex dot_unconjugated(const Vec3c& u, const Vec3c& v) {
    return u[0] * v[0] + u[1] * v[1] + u[2] * v[2];
}

double norm_sq(const Vec3c& v) {
    return std::norm(v[0]) + std::norm(v[1]) + std::norm(v[2]);
}

double norm(const Vec3c& v) { return std::sqrt(norm_sq(v)); }

double norm(const Vec3& v) {
    return std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
}

Vec3c operator+(const Vec3c& u, const Vec3c& v) {
    return {u[0] + v[0], u[1] + v[1], u[2] + v[2]};
}

Vec3c operator-(const Vec3c& u, const Vec3c& v) {
    return {u[0] - v[0], u[1] - v[1], u[2] - v[2]};
}

Vec3c operator*(Complex a, const Vec3c& v) { return {a * v[0], a * v[1], a * v[2]}; }

Vec3 operator*(double a, const Vec3& v) { return {a * v[0], a * v[1], a * v[2]}; }

Vec3 operator+(const Vec3& u, const Vec3& v) {
    return {u[0] + v[0], u[1] + v[1], u[2] + v[2]};
}

// ===== real 3x3 =====

Mat3 Mat3::identity() { return diagonal(1.0, 1.0, 1.0); }

Mat3 Mat3::diagonal(double d0, double d1, double d2) {
    Mat3 m;
    m(0, 0) = d0;
    m(1, 1) = d1;
    m(2, 2) = d2;
    return m;
}

Mat3 operator*(const Mat3& l, const Mat3& r) {
    Mat3 out;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            double s = 0.0;
            for (int k = 0; k < 3; ++k) s += l(i, k) * r(k, j);
            out(i, j) = s;
        }
    return out;
}

Mat3 operator+(const Mat3& l, const Mat3& r) {
    Mat3 out;
    for (size_t i = 0; i < 9; ++i) out.a[i] = l.a[i] + r.a[i];
    return out;
}

Mat3 operator-(const Mat3& l, const Mat3& r) {
    Mat3 out;
    for (size_t i = 0; i < 9; ++i) out.a[i] = l.a[i] - r.a[i];
    return out;
}

Mat3 operator*(double a, const Mat3& m) {
    Mat3 out;
    for (size_t i = 0; i < 9; ++i) out.a[i] = a * m.a[i];
    return out;
}

Vec3 operator*(const Mat3& m, const Vec3& v) {
    Vec3 out{};
    for (int i = 0; i < 3; ++i)
        out[static_cast<size_t>(i)] =
            m(i, 0) * v[0] + m(i, 1) * v[1] + m(i, 2) * v[2];
    return out;
}

Vec3c operator*(const Mat3& m, const Vec3c& v) {
    Vec3c out{};
    for (int i = 0; i < 3; ++i)
        out[static_cast<size_t>(i)] =
            m(i, 0) * v[0] + m(i, 1) * v[1] + m(i, 2) * v[2];
    return out;
}

Mat3 transpose(const Mat3& m) {
    Mat3 out;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) out(i, j) = m(j, i);
    return out;
}

double determinant(const Mat3& m) {
    return m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) -
           m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
           m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
}

double frobenius_norm(const Mat3& m) {
    double s = 0.0;
    for (double x : m.a) s += x * x;
    return std::sqrt(s);
}

double max_abs(const Mat3& m) {
    double s = 0.0;
    for (double x : m.a) s = std::max(s, std::abs(x));
    return s;
}

// ===== complex 2x2 and 4x4 =====

Mat2c Mat2c::identity() {
    Mat2c m;
    m(0, 0) = 1.0;
    m(1, 1) = 1.0;
    return m;
}

Mat2c operator*(const Mat2c& l, const Mat2c& r) {
    Mat2c out;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            out(i, j) = l(i, 0) * r(0, j) + l(i, 1) * r(1, j);
    return out;
}

Mat2c operator+(const Mat2c& l, const Mat2c& r) {
    Mat2c out;
    for (size_t i = 0; i < 4; ++i) out.a[i] = l.a[i] + r.a[i];
    return out;
}

Mat2c operator-(const Mat2c& l, const Mat2c& r) {
    Mat2c out;
    for (size_t i = 0; i < 4; ++i) out.a[i] = l.a[i] - r.a[i];
    return out;
}

Mat2c operator*(Complex a, const Mat2c& m) {
    Mat2c out;
    for (size_t i = 0; i < 4; ++i) out.a[i] = a * m.a[i];
    return out;
}

Mat2c adjoint(const Mat2c& m) {
    Mat2c out;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) out(i, j) = std::conj(m(j, i));
    return out;
}

Complex trace(const Mat2c& m) { return m(0, 0) + m(1, 1); }

double frobenius_norm(const Mat2c& m) {
    double s = 0.0;
    for (Complex x : m.a) s += std::norm(x);
    return std::sqrt(s);
}

bool is_unitary(const Mat2c& u, double tol) {
    return frobenius_norm(adjoint(u) * u - Mat2c::identity()) <= tol;
}

const Mat2c& pauli(int k) {
    static const std::array<Mat2c, 3> sigma = [] {
        std::array<Mat2c, 3> s;
        s[0](0, 1) = 1.0;
        s[0](1, 0) = 1.0;
        s[1](0, 1) = Complex(0.0, -1.0);
        s[1](1, 0) = Complex(0.0, 1.0);
        s[2](0, 0) = 1.0;
        s[2](1, 1) = -1.0;
        return s;
    }();
    return sigma.at(static_cast<size_t>(k));
}

HermMat4::HermMat4(const Mat4c& m) {
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            m_(i, j) = 0.5 * (m(i, j) + std::conj(m(j, i)));
}

// ===== Jacobi kernels =====

namespace {

// Smaller-magnitude root of t^2 - 2*tau*t - 1 = 0; the resulting (c, s)
// zeroes the pivot while staying close to the identity.
double jacobi_tangent(double tau) {
    double t = 1.0 / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
    return tau >= 0.0 ? -t : t;
}

double off_diagonal_mass(const Mat3& m) {
    double s = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            if (i != j) s += m(i, j) * m(i, j);
    return std::sqrt(s);
}

// Cyclic Jacobi for a real symmetric 3x3; fills v with the accumulated
// rotations so that input = v * diag * v^T.
void jacobi_sym3(Mat3& m, Mat3& v) {
    v = Mat3::identity();
    double scale = std::max(1.0, frobenius_norm(m));
    for (int sweep = 0; sweep < kTol.jacobi_max_sweeps; ++sweep) {
        if (off_diagonal_mass(m) <= kTol.jacobi_off_diagonal * scale) break;
        for (int p = 0; p < 3; ++p)
            for (int q = p + 1; q < 3; ++q) {
                double z = m(p, q);
                if (std::abs(z) <= 1e-300) continue;
                double tau = (m(q, q) - m(p, p)) / (2.0 * z);
                double t = jacobi_tangent(tau);
                double c = 1.0 / std::sqrt(1.0 + t * t);
                double s = t * c;
                Mat3 g = Mat3::identity();
                g(p, p) = c;
                g(q, q) = c;
                g(p, q) = -s;
                g(q, p) = s;
                m = transpose(g) * m * g;
                v = v * g;
            }
    }
}

template <int N, typename M>
double herm_defect(const M& m) {
    double worst = 0.0;
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j)
            worst = std::max(worst, std::abs(m(i, j) - std::conj(m(j, i))));
    return worst;
}

// Cyclic Jacobi for a complex Hermitian NxN (N = 2 or 4). The pivot phase is
// folded into the rotation so each step reduces to the real formula.
template <int N, typename M>
void jacobi_herm(M& m, M& v) {
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) v(i, j) = i == j ? 1.0 : 0.0;
    double scale = 1.0;
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) scale += std::norm(m(i, j));
    scale = std::sqrt(scale);
    for (int sweep = 0; sweep < kTol.jacobi_max_sweeps; ++sweep) {
        double off = 0.0;
        for (int i = 0; i < N; ++i)
            for (int j = 0; j < N; ++j)
                if (i != j) off += std::norm(m(i, j));
        if (std::sqrt(off) <= kTol.jacobi_off_diagonal * scale) break;
        for (int p = 0; p < N; ++p)
            for (int q = p + 1; q < N; ++q) {
                Complex z = m(p, q);
                double az = std::abs(z);
                if (az <= 1e-300) continue;
                Complex phase = z / az;
                double tau = (m(q, q).real() - m(p, p).real()) / (2.0 * az);
                double t = jacobi_tangent(tau);
                double c = 1.0 / std::sqrt(1.0 + t * t);
                Complex s = t * c * std::conj(phase);
                M g;
                for (int i = 0; i < N; ++i)
                    for (int j = 0; j < N; ++j) g(i, j) = i == j ? 1.0 : 0.0;
                g(p, p) = c;
                g(q, q) = c;
                g(p, q) = -std::conj(s);
                g(q, p) = s;
                // m <- g^dagger m g, v <- v g
                M gm;
                for (int i = 0; i < N; ++i)
                    for (int j = 0; j < N; ++j) {
                        Complex acc = 0.0;
                        for (int k = 0; k < N; ++k)
                            acc += std::conj(g(k, i)) * m(k, j);
                        gm(i, j) = acc;
                    }
                for (int i = 0; i < N; ++i)
                    for (int j = 0; j < N; ++j) {
                        Complex acc = 0.0;
                        for (int k = 0; k < N; ++k) acc += gm(i, k) * g(k, j);
                        m(i, j) = acc;
                    }
                M vg;
                for (int i = 0; i < N; ++i)
                    for (int j = 0; j < N; ++j) {
                        Complex acc = 0.0;
                        for (int k = 0; k < N; ++k) acc += v(i, k) * g(k, j);
                        vg(i, j) = acc;
                    }
                v = vg;
            }
    }
}

template <int N, typename M>
void sort_herm_ascending(M& vectors, std::array<double, N>& values) {
    std::array<int, N> order;
    for (int i = 0; i < N; ++i) order[static_cast<size_t>(i)] = i;
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return values[static_cast<size_t>(a)] < values[static_cast<size_t>(b)];
    });
    M permuted = vectors;
    std::array<double, N> sorted{};
    for (int k = 0; k < N; ++k) {
        int src = order[static_cast<size_t>(k)];
        sorted[static_cast<size_t>(k)] = values[static_cast<size_t>(src)];
        for (int i = 0; i < N; ++i) permuted(i, k) = vectors(i, src);
    }
    vectors = permuted;
    values = sorted;
}

Vec3 column(const Mat3& m, int c) { return {m(0, c), m(1, c), m(2, c)}; }

void set_column(Mat3& m, int c, const Vec3& v) {
    m(0, c) = v[0];
    m(1, c) = v[1];
    m(2, c) = v[2];
}

}  // namespace

SymEig3 sym_eig3(const Mat3& s) {
    double defect = max_abs(s - transpose(s));
    if (defect > kTol.symmetric_input)
        throw std::invalid_argument("sym_eig3: matrix is not symmetric");
    Mat3 m = 0.5 * (s + transpose(s));
    SymEig3 out;
    jacobi_sym3(m, out.vectors);
    out.values = {m(0, 0), m(1, 1), m(2, 2)};
    // descending by value, columns permuted alongside
    std::array<int, 3> order = {0, 1, 2};
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return out.values[static_cast<size_t>(a)] > out.values[static_cast<size_t>(b)];
    });
    Mat3 vperm;
    Vec3 dperm{};
    for (int k = 0; k < 3; ++k) {
        int src = order[static_cast<size_t>(k)];
        dperm[static_cast<size_t>(k)] = out.values[static_cast<size_t>(src)];
        set_column(vperm, k, column(out.vectors, src));
    }
    out.vectors = vperm;
    out.values = dperm;
    return out;
}

Svd3 svd3(const Mat3& m) {
    // One-sided Jacobi: rotate column pairs of b until mutually orthogonal,
    // accumulating the rotations in v; then b = u * diag(sigma).
    Mat3 b = m;
    Mat3 v = Mat3::identity();
    for (int sweep = 0; sweep < kTol.jacobi_max_sweeps; ++sweep) {
        bool rotated = false;
        for (int p = 0; p < 3; ++p)
            for (int q = p + 1; q < 3; ++q) {
                Vec3 bp = column(b, p);
                Vec3 bq = column(b, q);
                double alpha = bp[0] * bp[0] + bp[1] * bp[1] + bp[2] * bp[2];
                double beta = bq[0] * bq[0] + bq[1] * bq[1] + bq[2] * bq[2];
                double gamma = bp[0] * bq[0] + bp[1] * bq[1] + bp[2] * bq[2];
                if (std::abs(gamma) <= 1e-300 ||
                    std::abs(gamma) <= kTol.jacobi_off_diagonal * 0.01 * std::sqrt(alpha * beta))
                    continue;
                rotated = true;
                double tau = (alpha - beta) / (2.0 * gamma);
                double t = jacobi_tangent(tau);
                double c = 1.0 / std::sqrt(1.0 + t * t);
                double s = t * c;
                for (int i = 0; i < 3; ++i) {
                    double xp = b(i, p), xq = b(i, q);
                    b(i, p) = c * xp - s * xq;
                    b(i, q) = s * xp + c * xq;
                    double vp = v(i, p), vq = v(i, q);
                    v(i, p) = c * vp - s * vq;
                    v(i, q) = s * vp + c * vq;
                }
            }
        if (!rotated) break;
    }
    Svd3 out;
    out.v = v;
    Vec3 sigma{};
    for (int k = 0; k < 3; ++k) sigma[static_cast<size_t>(k)] = norm(column(b, k));
    // descending, carrying b and v columns along
    std::array<int, 3> order = {0, 1, 2};
    std::stable_sort(order.begin(), order.end(), [&](int x, int y) {
        return sigma[static_cast<size_t>(x)] > sigma[static_cast<size_t>(y)];
    });
    Mat3 bs, vs;
    for (int k = 0; k < 3; ++k) {
        int src = order[static_cast<size_t>(k)];
        out.sigma[static_cast<size_t>(k)] = sigma[static_cast<size_t>(src)];
        set_column(bs, k, column(b, src));
        set_column(vs, k, column(out.v, src));
    }
    out.v = vs;
    // left vectors: normalized columns, completed to an orthonormal frame
    // when columns vanish (rank-deficient input)
    for (int k = 0; k < 3; ++k) {
        double sk = out.sigma[static_cast<size_t>(k)];
        if (sk > 1e-150) {
            set_column(out.u, k, (1.0 / sk) * column(bs, k));
        } else if (k == 2) {
            set_column(out.u, 2, cross(column(out.u, 0), column(out.u, 1)));
        } else if (k == 1) {
            // one valid column: pick the axis least aligned with it
            Vec3 u0 = column(out.u, 0);
            int axis = std::abs(u0[0]) <= std::abs(u0[1])
                           ? (std::abs(u0[0]) <= std::abs(u0[2]) ? 0 : 2)
                           : (std::abs(u0[1]) <= std::abs(u0[2]) ? 1 : 2);
            Vec3 e{};
            e[static_cast<size_t>(axis)] = 1.0;
            double proj = e[0] * u0[0] + e[1] * u0[1] + e[2] * u0[2];
            Vec3 w = e + (-proj) * u0;
            set_column(out.u, 1, (1.0 / norm(w)) * w);
        } else {
            out.u = Mat3::identity();
            break;
        }
    }
    return out;
}

PolarRS polar_rotation(const Mat3& m) {
    Svd3 f = svd3(m);
    double d = determinant(f.u) * determinant(f.v);
    double sign = d >= 0.0 ? 1.0 : -1.0;
    Mat3 flip = Mat3::diagonal(1.0, 1.0, sign);
    PolarRS out;
    out.rotation = f.u * flip * transpose(f.v);
    out.symmetric =
        f.v * Mat3::diagonal(f.sigma[0], f.sigma[1], sign * f.sigma[2]) * transpose(f.v);
    return out;
}

HermEig2 herm_eig(const Mat2c& h) {
    if (herm_defect<2>(h) > kTol.hermitian_input)
        throw std::invalid_argument("herm_eig: matrix is not Hermitian");
    Mat2c m;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) m(i, j) = 0.5 * (h(i, j) + std::conj(h(j, i)));
    HermEig2 out;
    jacobi_herm<2>(m, out.vectors);
    out.values = {m(0, 0).real(), m(1, 1).real()};
    sort_herm_ascending<2>(out.vectors, out.values);
    return out;
}

HermEig4 herm_eig(const HermMat4& h) {
    Mat4c m = h.matrix();
    HermEig4 out;
    jacobi_herm<4>(m, out.vectors);
    out.values = {m(0, 0).real(), m(1, 1).real(), m(2, 2).real(), m(3, 3).real()};
    sort_herm_ascending<4>(out.vectors, out.values);
    return out;
}

namespace {

bool is_rotation(const Mat3& r, double tol) {
    return max_abs(transpose(r) * r - Mat3::identity()) <= tol &&
           std::abs(determinant(r) - 1.0) <= tol;
}

}  // namespace

Mat2c so3_to_su2(const Mat3& r) {
    if (!is_rotation(r, kTol.rotation_input))
        throw std::invalid_argument("so3_to_su2: input is not a proper rotation");
    // quaternion extraction, branch on the largest pivot for stability
    double t = r(0, 0) + r(1, 1) + r(2, 2);
    double q0, q1, q2, q3;
    if (t > 0.0) {
        double s = std::sqrt(t + 1.0) * 2.0;
        q0 = 0.25 * s;
        q1 = (r(2, 1) - r(1, 2)) / s;
        q2 = (r(0, 2) - r(2, 0)) / s;
        q3 = (r(1, 0) - r(0, 1)) / s;
    } else if (r(0, 0) >= r(1, 1) && r(0, 0) >= r(2, 2)) {
        double s = std::sqrt(1.0 + r(0, 0) - r(1, 1) - r(2, 2)) * 2.0;
        q0 = (r(2, 1) - r(1, 2)) / s;
        q1 = 0.25 * s;
        q2 = (r(0, 1) + r(1, 0)) / s;
        q3 = (r(0, 2) + r(2, 0)) / s;
    } else if (r(1, 1) >= r(2, 2)) {
        double s = std::sqrt(1.0 + r(1, 1) - r(0, 0) - r(2, 2)) * 2.0;
        q0 = (r(0, 2) - r(2, 0)) / s;
        q1 = (r(0, 1) + r(1, 0)) / s;
        q2 = 0.25 * s;
        q3 = (r(1, 2) + r(2, 1)) / s;
    } else {
        double s = std::sqrt(1.0 + r(2, 2) - r(0, 0) - r(1, 1)) * 2.0;
        q0 = (r(1, 0) - r(0, 1)) / s;
        q1 = (r(0, 2) + r(2, 0)) / s;
        q2 = (r(1, 2) + r(2, 1)) / s;
        q3 = 0.25 * s;
    }
    double qn = std::sqrt(q0 * q0 + q1 * q1 + q2 * q2 + q3 * q3);
    q0 /= qn;
    q1 /= qn;
    q2 /= qn;
    q3 /= qn;
    Mat2c u;
    u(0, 0) = Complex(q0, -q3);
    u(0, 1) = Complex(-q2, -q1);
    u(1, 0) = Complex(q2, -q1);
    u(1, 1) = Complex(q0, q3);
    // sign convention: nonnegative real trace, zero trace broken by the
    // first nonzero entry
    double tr = trace(u).real();
    bool flip = tr < -1e-12;
    if (!flip && std::abs(tr) <= 1e-12) {
        for (Complex e : u.a) {
            if (std::abs(e) <= 1e-12) continue;
            flip = e.real() < -1e-12 || (std::abs(e.real()) <= 1e-12 && e.imag() < 0.0);
            break;
        }
    }
    if (flip) u = Complex(-1.0) * u;
    // defensive check of the adjoint action on the basis
    for (int j = 0; j < 3; ++j) {
        Mat2c lhs = u * pauli(j) * adjoint(u);
        Mat2c rhs;
        for (int i = 0; i < 3; ++i) rhs = rhs + Complex(r(i, j)) * pauli(i);
        if (frobenius_norm(lhs - rhs) > kTol.rotation_input)
            throw std::invalid_argument("so3_to_su2: lift failed the action check");
    }
    return u;
}

Mat3 su2_to_so3(const Mat2c& u) {
    if (!is_unitary(u))
        throw std::invalid_argument("su2_to_so3: input is not unitary");
    Mat3 r;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            r(i, j) = 0.5 * trace(pauli(i) * u * pauli(j) * adjoint(u)).real();
    return r;
}

}  // namespace ksmap
