#pragma once

// Deciders and certificate search for positivity, the Kadison-Schwarz
// property and complete positivity of bistochastic qubit maps.
//
// The KS residual of T at a complex direction w is
//     (|w|^2 - |Tw|^2) - |T [w, conj w] - [Tw, conj(Tw)]|
// with [u, v] the cross product; T is KS exactly when T is contractive and
// the residual is nonnegative everywhere. A certified negative value at some
// w is therefore a machine-checkable witness of KS failure.

#include <cstdint>
#include <optional>

#include "ksmap/channel.hpp"

namespace ksmap {

struct SearchConfig {
    std::uint64_t seed = 0;
    int samples = 20000;   // low-discrepancy samples of the unit sphere
    int starts = 32;       // local descents seeded from the best samples
    double descent_tol = 1e-10;
    int max_iterations = 500;  // per descent
    double certificate_threshold = 1e-7;
};

enum class KsStatus { ViolationCertified, NoViolationFound, SufficientConditionHolds };

struct KsVerdict {
    KsStatus status = KsStatus::NoViolationFound;
    std::optional<Vec3c> witness;  // unit norm, gauge fixed
    double min_residual = 0.0;     // NaN when the search did not run
    long evaluations = 0;
};

struct Classification {
    bool positive = false;
    KsVerdict ks;
    std::optional<bool> cp_inequalities;  // closed form, diagonal transfer only
    bool cp_choi = false;
    double choi_min_eigenvalue = 0.0;
};

// Largest singular value at most 1 + tol. For bistochastic maps this is
// exactly positivity (and also the KS contraction condition).
bool check_positive(const BistochasticMap& m, double tol = kTol.predicate);
bool check_ks_contraction(const BistochasticMap& m, double tol = kTol.predicate);

double ks_residual(const BistochasticMap& m, const Vec3c& w);

// The two sides separately: residual = norm_decrease - gap_norm.
struct KsResidualParts {
    double gap_norm;       // |T [w, conj w] - [Tw, conj(Tw)]|
    double norm_decrease;  // |w|^2 - |Tw|^2
};
KsResidualParts ks_residual_parts(const BistochasticMap& m, const Vec3c& w);

// Multistart descent over the gauge-fixed unit sphere. A minimum below
// -certificate_threshold yields ViolationCertified with a witness;
// otherwise NoViolationFound reports the located minimum, which is evidence
// but not a proof of the KS property.
KsVerdict verify_ks_numeric(const BistochasticMap& m, const SearchConfig& cfg = {});

// Closed-form sufficient conditions for KS on diagonal maps; each of the
// four inequalities gets `slack` of room.
bool check_ks_sufficient_diagonal(const DiagonalParams& d, double slack = 1e-12);

// Closed-form complete positivity test for diagonal maps.
bool check_cp_diagonal(const DiagonalParams& d, double slack = 1e-12);

// Choi matrix sum_ij E_ij (x) Phi(E_ij), trace 2.
HermMat4 choi_matrix(const BistochasticMap& m);

struct CpChoiResult {
    bool cp;
    double min_eigenvalue;
};
CpChoiResult check_cp_choi(const BistochasticMap& m, double tol = 1e-10);

// Full report. For diagonal transfers the sufficient conditions are tried
// first and the numeric search is skipped when they hold; cp_inequalities is
// filled for diagonal transfers only. The TransferMap overload rejects
// non-unital inputs.
Classification classify(const BistochasticMap& m, const SearchConfig& cfg = {});
Classification classify(const TransferMap& m, const SearchConfig& cfg = {});

// Scale to unit norm and rotate the global phase so the first component
// of nonnegligible magnitude is real and nonnegative.
Vec3c gauge_fix(const Vec3c& w);

}  // namespace ksmap
