#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "helpers.hpp"

using namespace ksmap;
using testutil::close;
using testutil::mat_dist;

namespace {
const Complex kI{0.0, 1.0};

Mat2c as_matrix_product(const QubitElement& x, const QubitElement& y) {
    return to_matrix(x) * to_matrix(y);
}
}  // namespace

TEST_CASE("from_matrix recovers the unique Pauli coefficients") {
    Mat2c m;
    m(0, 0) = 1.0;
    m(0, 1) = 2.0;
    m(1, 0) = 3.0;
    m(1, 1) = 4.0;
    QubitElement x = from_matrix(m);
    CHECK(close(x.w0.real(), 2.5, 1e-15));
    CHECK(close(x.w0.imag(), 0.0, 1e-15));
    CHECK(close(x.w[0].real(), 2.5, 1e-15));
    CHECK(close(x.w[0].imag(), 0.0, 1e-15));
    CHECK(close(x.w[1].real(), 0.0, 1e-15));
    CHECK(close(x.w[1].imag(), -0.5, 1e-15));
    CHECK(close(x.w[2].real(), -1.5, 1e-15));
    CHECK(mat_dist(to_matrix(x), m) <= 1e-15);
}

TEST_CASE("to_matrix and from_matrix are mutually inverse") {
    Rng rng(21);
    for (int k = 0; k < 500; ++k) {
        QubitElement x = testutil::random_element(rng);
        QubitElement back = from_matrix(to_matrix(x));
        CHECK(std::abs(back.w0 - x.w0) <= 1e-14);
        CHECK(testutil::vec_dist(back.w, x.w) <= 1e-14);

        Mat2c m = testutil::random_mat2c(rng);
        CHECK(mat_dist(to_matrix(from_matrix(m)), m) <= 1e-14);
    }
}

TEST_CASE("multiply reproduces the Pauli relations") {
    QubitElement s1{0.0, {1.0, 0.0, 0.0}};
    QubitElement s2{0.0, {0.0, 1.0, 0.0}};
    QubitElement s3{0.0, {0.0, 0.0, 1.0}};

    QubitElement p = multiply(s1, s2);  // sigma1 sigma2 = i sigma3
    CHECK(std::abs(p.w0) <= 1e-16);
    CHECK(testutil::vec_dist(p.w, {0.0, 0.0, kI}) <= 1e-16);

    QubitElement sq = multiply(s3, s3);  // sigma3^2 = 1
    CHECK(std::abs(sq.w0 - 1.0) <= 1e-16);
    CHECK(norm(sq.w) <= 1e-16);

    QubitElement anti = multiply(s1, s2) + multiply(s2, s1);
    CHECK(std::abs(anti.w0) <= 1e-16);
    CHECK(norm(anti.w) <= 1e-16);
}

TEST_CASE("square of a vector element with complex coordinates") {
    // w = (1, 1, i): w.w = 1, cross(w, w) = 0, so x^2 = (w.w) 1 when w0 = 0…
    QubitElement x{0.0, {1.0, 1.0, kI}};
    QubitElement sq = multiply(x, x);
    CHECK(std::abs(sq.w0 - 1.0) <= 1e-15);
    CHECK(norm(sq.w) <= 1e-15);

    // …while x^dagger x picks up the cross term of w with its conjugate
    QubitElement grams = multiply(adjoint(x), x);
    CHECK(std::abs(grams.w0 - 3.0) <= 1e-15);
    CHECK(testutil::vec_dist(grams.w, {-2.0, 2.0, 0.0}) <= 1e-15);
}

TEST_CASE("multiply agrees with the 2x2 matrix product") {
    Rng rng(22);
    for (int k = 0; k < 1000; ++k) {
        QubitElement x = testutil::random_element(rng);
        QubitElement y = testutil::random_element(rng);
        CHECK(mat_dist(to_matrix(multiply(x, y)), as_matrix_product(x, y)) <= 1e-12);
    }
}

TEST_CASE("multiply is associative and distributes over addition") {
    Rng rng(23);
    for (int k = 0; k < 200; ++k) {
        QubitElement x = testutil::random_element(rng);
        QubitElement y = testutil::random_element(rng);
        QubitElement z = testutil::random_element(rng);
        QubitElement lhs = multiply(multiply(x, y), z);
        QubitElement rhs = multiply(x, multiply(y, z));
        CHECK(std::abs(lhs.w0 - rhs.w0) <= 1e-12);
        CHECK(testutil::vec_dist(lhs.w, rhs.w) <= 1e-12);

        QubitElement d1 = multiply(x, y + z);
        QubitElement d2 = multiply(x, y) + multiply(x, z);
        CHECK(std::abs(d1.w0 - d2.w0) <= 1e-13);
        CHECK(testutil::vec_dist(d1.w, d2.w) <= 1e-13);
    }
}

TEST_CASE("adjoint is an involutive anti-homomorphism") {
    Rng rng(24);
    for (int k = 0; k < 300; ++k) {
        QubitElement x = testutil::random_element(rng);
        QubitElement y = testutil::random_element(rng);

        QubitElement twice = adjoint(adjoint(x));
        CHECK(std::abs(twice.w0 - x.w0) <= 1e-16);
        CHECK(testutil::vec_dist(twice.w, x.w) <= 1e-16);

        QubitElement lhs = adjoint(multiply(x, y));
        QubitElement rhs = multiply(adjoint(y), adjoint(x));
        CHECK(std::abs(lhs.w0 - rhs.w0) <= 1e-13);
        CHECK(testutil::vec_dist(lhs.w, rhs.w) <= 1e-13);

        CHECK(mat_dist(to_matrix(adjoint(x)), adjoint(to_matrix(x))) <= 1e-14);
    }
}

TEST_CASE("self-adjointness means real coordinates") {
    QubitElement real{1.0, {0.5, -0.25, 3.0}};
    CHECK(is_self_adjoint(real));

    QubitElement complex_scalar{kI, {0.0, 0.0, 0.0}};
    CHECK(!is_self_adjoint(complex_scalar));

    QubitElement complex_vector{1.0, {0.0, kI, 0.0}};
    CHECK(!is_self_adjoint(complex_vector));

    Rng rng(25);
    for (int k = 0; k < 200; ++k) {
        QubitElement x = testutil::random_self_adjoint(rng);
        CHECK(is_self_adjoint(x));
        CHECK(mat_dist(to_matrix(x), adjoint(to_matrix(x))) <= 1e-14);
    }
}

TEST_CASE("positivity matches the eigenvalue oracle") {
    QubitElement id{1.0, {0.0, 0.0, 0.0}};
    CHECK(is_positive(id));

    QubitElement edge{1.0, {0.0, 0.0, 1.0}};  // rank one projector (times 2)
    CHECK(is_positive(edge));

    QubitElement tilted_edge{1.0, {0.6, 0.0, 0.8}};  // still on the boundary
    CHECK(is_positive(tilted_edge));

    QubitElement indef{1.0, {0.0, 0.0, 1.5}};
    CHECK(!is_positive(indef));

    QubitElement not_sa{1.0, {kI, 0.0, 0.0}};
    CHECK(!is_positive(not_sa));

    Rng rng(26);
    int positives = 0;
    for (int k = 0; k < 1000; ++k) {
        QubitElement x = testutil::random_self_adjoint(rng);
        double min_eig = herm_eig(to_matrix(x)).values[0];
        bool oracle = min_eig >= -1e-12;
        // skip razor-thin margins where the two tolerances may disagree
        if (std::abs(min_eig) <= 1e-9) continue;
        CHECK(is_positive(x) == oracle);
        if (oracle) ++positives;
    }
    CHECK(positives > 0);

    for (int k = 0; k < 200; ++k) {
        // squares are always positive
        QubitElement x = testutil::random_self_adjoint(rng);
        CHECK(is_positive(multiply(x, x)));
    }
}

TEST_CASE("normality detects commuting and non-commuting coordinates") {
    QubitElement herm{2.0, {1.0, 2.0, 3.0}};
    CHECK(is_normal(herm));

    QubitElement unitary_like{0.0, {0.0, 0.0, std::polar(1.0, 0.3)}};
    CHECK(is_normal(unitary_like));

    QubitElement nonnormal{0.0, {1.0, kI, 0.0}};  // a nilpotent direction
    CHECK(!is_normal(nonnormal));

    QubitElement mixed{0.0, {1.0, 1.0, kI}};
    CHECK(!is_normal(mixed));

    Rng rng(27);
    for (int k = 0; k < 300; ++k) {
        QubitElement x = testutil::random_element(rng);
        Mat2c m = to_matrix(x);
        double defect = frobenius_norm(m * adjoint(m) - adjoint(m) * m);
        if (defect <= 1e-12) continue;  // stay away from the tolerance edge
        CHECK(is_normal(x) == (defect <= 1e-10));
    }
}

TEST_CASE("normalized_trace reads off the scalar coordinate") {
    QubitElement x{Complex(1.5, -0.5), {9.0, 9.0, 9.0}};
    CHECK(std::abs(normalized_trace(x) - Complex(1.5, -0.5)) <= 1e-16);

    Rng rng(28);
    for (int k = 0; k < 100; ++k) {
        QubitElement y = testutil::random_element(rng);
        CHECK(std::abs(normalized_trace(y) - 0.5 * trace(to_matrix(y))) <= 1e-14);
    }
}

TEST_CASE("vector space operations act coordinatewise") {
    QubitElement x{1.0, {1.0, 0.0, 0.0}};
    QubitElement y{2.0, {0.0, 1.0, 0.0}};
    QubitElement s = x + y;
    CHECK(std::abs(s.w0 - 3.0) <= 1e-16);
    CHECK(testutil::vec_dist(s.w, {1.0, 1.0, 0.0}) <= 1e-16);

    QubitElement d = x - y;
    CHECK(std::abs(d.w0 + 1.0) <= 1e-16);

    QubitElement scaled = kI * x;
    CHECK(std::abs(scaled.w0 - kI) <= 1e-16);
    CHECK(std::abs(scaled.w[0] - kI) <= 1e-16);

    Rng rng(29);
    for (int k = 0; k < 100; ++k) {
        QubitElement a = testutil::random_element(rng);
        QubitElement b = testutil::random_element(rng);
        CHECK(mat_dist(to_matrix(a + b), to_matrix(a) + to_matrix(b)) <= 1e-14);
        CHECK(mat_dist(to_matrix(a - b), to_matrix(a) - to_matrix(b)) <= 1e-14);
        CHECK(mat_dist(to_matrix(kI * a), kI * to_matrix(a)) <= 1e-14);
    }
}
