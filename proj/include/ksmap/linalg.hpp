#pragma once

// Small fixed-size linear algebra used by the Pauli-picture channel toolkit:
// complex 3-vectors, real 3x3 matrices acting on them, complex 2x2/4x4
// matrices, Jacobi eigensolvers, a one-sided Jacobi SVD, the polar
// decomposition into rotation * symmetric, and the SO(3) <-> SU(2) lift.

#include <array>
#include <complex>

namespace ksmap {

using Complex = std::complex<double>;
using Vec3 = std::array<double, 3>;
using Vec3c = std::array<Complex, 3>;

// Shared tolerance knobs. Input gates reject malformed matrices, the Jacobi
// settings bound the iteration, `predicate` is the default slack for yes/no
// questions (positivity, normality, contraction).
struct Tolerances {
    double jacobi_off_diagonal = 1e-13;
    int jacobi_max_sweeps = 100;
    double symmetric_input = 1e-10;
    double hermitian_input = 1e-10;
    double rotation_input = 1e-9;
    double unitary_input = 1e-9;
    double predicate = 1e-10;
};
inline constexpr Tolerances kTol{};

// ===== vectors =====

Vec3c to_complex(const Vec3& v);
Vec3c conjugate(const Vec3c& v);
Vec3c cross(const Vec3c& u, const Vec3c& v);
Vec3 cross(const Vec3& u, const Vec3& v);
Complex dot_unconjugated(const Vec3c& u, const Vec3c& v);
double norm_sq(const Vec3c& v);
double norm(const Vec3c& v);
double norm(const Vec3& v);
Vec3c operator+(const Vec3c& u, const Vec3c& v);
Vec3c operator-(const Vec3c& u, const Vec3c& v);
Vec3c operator*(Complex a, const Vec3c& v);
Vec3 operator*(double a, const Vec3& v);
Vec3 operator+(const Vec3& u, const Vec3& v);

// ===== real 3x3 =====

struct Mat3 {
    std::array<double, 9> a{};

    double& operator()(int r, int c) { return a[static_cast<size_t>(3 * r + c)]; }
    double operator()(int r, int c) const { return a[static_cast<size_t>(3 * r + c)]; }

    static Mat3 identity();
    static Mat3 diagonal(double d0, double d1, double d2);
};

Mat3 operator*(const Mat3& l, const Mat3& r);
Mat3 operator+(const Mat3& l, const Mat3& r);
Mat3 operator-(const Mat3& l, const Mat3& r);
Mat3 operator*(double a, const Mat3& m);
Vec3 operator*(const Mat3& m, const Vec3& v);
Vec3c operator*(const Mat3& m, const Vec3c& v);
Mat3 transpose(const Mat3& m);
double determinant(const Mat3& m);
double frobenius_norm(const Mat3& m);
double max_abs(const Mat3& m);

// ===== complex 2x2 and 4x4 =====

struct Mat2c {
    std::array<Complex, 4> a{};

    Complex& operator()(int r, int c) { return a[static_cast<size_t>(2 * r + c)]; }
    Complex operator()(int r, int c) const { return a[static_cast<size_t>(2 * r + c)]; }

    static Mat2c identity();
};

Mat2c operator*(const Mat2c& l, const Mat2c& r);
Mat2c operator+(const Mat2c& l, const Mat2c& r);
Mat2c operator-(const Mat2c& l, const Mat2c& r);
Mat2c operator*(Complex a, const Mat2c& m);
Mat2c adjoint(const Mat2c& m);
Complex trace(const Mat2c& m);
double frobenius_norm(const Mat2c& m);
bool is_unitary(const Mat2c& u, double tol = kTol.unitary_input);

// The three Pauli matrices, indexed 0..2.
const Mat2c& pauli(int k);

struct Mat4c {
    std::array<Complex, 16> a{};

    Complex& operator()(int r, int c) { return a[static_cast<size_t>(4 * r + c)]; }
    Complex operator()(int r, int c) const { return a[static_cast<size_t>(4 * r + c)]; }
};

// Hermitian-by-construction wrapper: averages the argument with its
// conjugate transpose, so the stored matrix equals its adjoint exactly.
class HermMat4 {
  public:
    explicit HermMat4(const Mat4c& m);
    const Mat4c& matrix() const { return m_; }

  private:
    Mat4c m_;
};

// ===== factorizations =====

// S = vectors * diag(values) * vectors^T, values sorted descending.
// Rejects inputs that are not symmetric within kTol.symmetric_input.
struct SymEig3 {
    Mat3 vectors;
    Vec3 values;
};
SymEig3 sym_eig3(const Mat3& s);

// m = u * diag(sigma) * v^T with u, v orthogonal and sigma descending >= 0.
// Degenerate and zero matrices are fine.
struct Svd3 {
    Mat3 u;
    Vec3 sigma;
    Mat3 v;
};
Svd3 svd3(const Mat3& m);

// m = rotation * symmetric with det(rotation) = +1; a negative determinant
// is folded into the smallest singular value of the symmetric factor.
struct PolarRS {
    Mat3 rotation;
    Mat3 symmetric;
};
PolarRS polar_rotation(const Mat3& m);

// Eigenvalues ascending; h = vectors * diag(values) * vectors^dagger.
// Rejects inputs that are not Hermitian within kTol.hermitian_input.
struct HermEig2 {
    Mat2c vectors;
    std::array<double, 2> values;
};
HermEig2 herm_eig(const Mat2c& h);

struct HermEig4 {
    Mat4c vectors;
    std::array<double, 4> values;
};
HermEig4 herm_eig(const HermMat4& h);

// Lift of a proper rotation to SU(2): the returned u satisfies
// u (v.sigma) u^dagger = (r v).sigma on the three basis vectors. The sign
// ambiguity is fixed by requiring a nonnegative real trace; a zero trace is
// broken by the first nonzero entry in row-major order, rotated into the
// closed right half plane. Rejects improper or non-orthogonal inputs.
Mat2c so3_to_su2(const Mat3& r);

// Adjoint action of a unitary on the Pauli basis, always a proper rotation.
// Rejects non-unitary inputs.
Mat3 su2_to_so3(const Mat2c& u);

}  // namespace ksmap
