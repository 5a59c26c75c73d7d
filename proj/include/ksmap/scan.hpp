#pragma once

// Parameter-region scans over diagonal channel families, the closed-form
// boundary curves of the (lambda, lambda, mu) family, and the text documents
// the command line tool emits (CSV scans, classification reports,
// violation certificates, decomposition reports).

#include <array>
#include <iosfwd>
#include <string>
#include <vector>

#include "ksmap/classify.hpp"

namespace ksmap {

// Closed interval sampled at `points` equally spaced values including both
// endpoints. Bounds must stay inside [-1, 1] and the step must be positive.
struct GridSpec {
    double lo = -1.0;
    double hi = 1.0;
    int points = 21;
};

void validate_grid(const GridSpec& g);  // throws std::invalid_argument
std::vector<double> grid_values(const GridSpec& g);

enum class KsLabel { Violated, Sufficient, Undetermined };
const char* to_string(KsLabel label);

struct ScanRow {
    double lambda1;
    double lambda2;
    double lambda3;
    bool positive;
    bool cp;  // closed-form diagonal test
    KsLabel ks_label;
    double min_residual;  // NaN when the sufficient conditions decided
    std::optional<Vec3c> witness;
};

ScanRow classify_grid_point(const DiagonalParams& d, const SearchConfig& cfg);

// Family (lambda, lambda, mu); rows ordered lexicographically by
// (lambda1, lambda2, lambda3), i.e. lambda outer, mu inner.
std::vector<ScanRow> scan_llm(const GridSpec& lambda_grid, const GridSpec& mu_grid,
                              const SearchConfig& cfg);

// Full cube (lambda1, lambda2, lambda3), lexicographic order.
std::vector<ScanRow> scan_cube(const GridSpec& grid, const SearchConfig& cfg);

// Nonnegative lambda roots of the four (lambda, lambda, mu) region borders:
//   cp_quarter   lambda^2 = (1+mu)^2/4
//   ks_ratio     lambda^2 = (1+mu)/(3-mu)
//   half_sq      lambda^2 = (1+mu)^2/2
//   half_linear  lambda^2 = (1+mu)/2
// Samples satisfy the defining equation exactly; clipping to [-1, 1] is left
// to the CSV emitter, which carries both columns.
struct BoundaryCurve {
    std::string name;
    std::vector<std::array<double, 2>> samples;  // (mu, lambda >= 0)
};
std::vector<BoundaryCurve> boundary_curves(const GridSpec& mu_grid);

// CSV with header lambda1,lambda2,lambda3,positive,cp,ks_label,min_residual
// and LF line endings; numbers use 17 significant digits so a parse/emit
// round trip is byte identical.
void write_scan_csv(std::ostream& out, const std::vector<ScanRow>& rows);
std::vector<ScanRow> parse_scan_csv(std::istream& in);  // throws std::runtime_error

// CSV with header curve,mu,lambda_pos,lambda_neg,lambda_pos_clip,lambda_neg_clip.
void write_boundaries_csv(std::ostream& out, const std::vector<BoundaryCurve>& curves);

// ===== reports =====

std::string render_classification(const TransferMap& input, const Classification& c);
std::string render_certificate(const BistochasticMap& m, const KsVerdict& verdict);
std::string render_decomposition(const CanonicalDecomposition& d);

}  // namespace ksmap
