#pragma once

// Linear maps on qubit elements in transfer form: Phi(w0, w) = (w0, t*w0 + T w).
// The bistochastic case (t = 0, T real) is the one the classifiers accept.

#include <cstdint>
#include <string>

#include "ksmap/pauli.hpp"

namespace ksmap {

struct TransferMap {
    Mat3 transfer;
    Vec3 shift{0.0, 0.0, 0.0};
};

struct BistochasticMap {
    Mat3 transfer;
};

struct DiagonalParams {
    double lambda1 = 1.0;
    double lambda2 = 1.0;
    double lambda3 = 1.0;
};

BistochasticMap diagonal_map(const DiagonalParams& d);
TransferMap as_transfer(const BistochasticMap& m);

// Throws std::invalid_argument when the shift is nonzero beyond tol.
BistochasticMap require_unital(const TransferMap& m, double tol = kTol.predicate);

QubitElement apply(const TransferMap& m, const QubitElement& x);
QubitElement apply(const BistochasticMap& m, const QubitElement& x);

// (1 - weight) * a + weight * b; weight must lie in [0, 1].
BistochasticMap convex_combine(const BistochasticMap& a, const BistochasticMap& b,
                               double weight);

// x -> u * Phi(v x v^dagger) * u^dagger, i.e. transfer R_u * T * R_v.
// Rejects non-unitary u or v.
BistochasticMap conjugate_by_unitary(const BistochasticMap& m, const Mat2c& u,
                                     const Mat2c& v);

// T = R_left * diag(d) * R_right with both rotations lifted to SU(2), so
// Phi(x) = left * Phi_d(right x right^dagger) * left^dagger. Entries of d are
// ordered by decreasing magnitude with signs kept; permutations and a
// negative determinant end up in the rotation factors. single_unitary marks
// the cases where one unitary suffices: the right factor acts trivially, or
// it inverts the left one so the sandwich is a plain conjugation.
struct CanonicalDecomposition {
    Mat2c left_unitary;
    DiagonalParams d;
    Mat2c right_unitary;
    double reconstruction_error;
    bool single_unitary;
};
CanonicalDecomposition canonical_decompose(const BistochasticMap& m);

enum class RandomMode { Contractive, Diagonal, General };

// Deterministic in the seed. Contractive mode rescales by the largest
// singular value whenever it exceeds one.
BistochasticMap random_bistochastic(std::uint64_t seed, RandomMode mode);

// ===== channel files =====
//
// JSON documents with "kind" either "diagonal" (field "lambdas", 3 reals) or
// "general" (field "t_matrix", 9 reals row-major). Readers also accept an
// optional "t" shift (3 reals) on general maps so that non-unital inputs can
// reach the classifier's rejection path; the writer never emits it. Numbers
// are written with 17 significant digits.

std::string channel_to_json(const TransferMap& m);
TransferMap channel_from_json(const std::string& text);  // throws std::runtime_error
TransferMap load_channel_file(const std::string& path);  // throws std::runtime_error

}  // namespace ksmap
