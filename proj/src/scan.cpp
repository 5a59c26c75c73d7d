#include "ksmap/scan.hpp"

#include <cmath>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "ksmap/format.hpp"

namespace ksmap {

void validate_grid(const GridSpec& g) {
    if (!(g.lo >= -1.0 && g.hi <= 1.0))
        throw std::invalid_argument("grid bounds must lie within [-1, 1]");
    if (!(g.lo < g.hi) || g.points < 2)
        throw std::invalid_argument("grid needs lo < hi and at least 2 points");
}

std::vector<double> grid_values(const GridSpec& g) {
    validate_grid(g);
    std::vector<double> out(static_cast<size_t>(g.points));
    double step = (g.hi - g.lo) / (g.points - 1);
    for (int k = 0; k < g.points; ++k) out[static_cast<size_t>(k)] = g.lo + k * step;
    out.back() = g.hi;
    return out;
}

const char* to_string(KsLabel label) {
    switch (label) {
        case KsLabel::Violated: return "violated";
        case KsLabel::Sufficient: return "sufficient";
        default: return "undetermined";
    }
}

ScanRow classify_grid_point(const DiagonalParams& d, const SearchConfig& cfg) {
    ScanRow row{};
    row.lambda1 = d.lambda1;
    row.lambda2 = d.lambda2;
    row.lambda3 = d.lambda3;
    BistochasticMap m = diagonal_map(d);
    row.positive = check_positive(m);
    row.cp = check_cp_diagonal(d);
    if (check_ks_sufficient_diagonal(d)) {
        row.ks_label = KsLabel::Sufficient;
        row.min_residual = std::numeric_limits<double>::quiet_NaN();
    } else {
        KsVerdict verdict = verify_ks_numeric(m, cfg);
        row.ks_label = verdict.status == KsStatus::ViolationCertified
                           ? KsLabel::Violated
                           : KsLabel::Undetermined;
        row.min_residual = verdict.min_residual;
        row.witness = verdict.witness;
    }
    return row;
}

std::vector<ScanRow> scan_llm(const GridSpec& lambda_grid, const GridSpec& mu_grid,
                              const SearchConfig& cfg) {
    std::vector<double> lams = grid_values(lambda_grid);
    std::vector<double> mus = grid_values(mu_grid);
    std::vector<ScanRow> rows;
    rows.reserve(lams.size() * mus.size());
    for (double lam : lams)
        for (double mu : mus)
            rows.push_back(classify_grid_point({lam, lam, mu}, cfg));
    return rows;
}

std::vector<ScanRow> scan_cube(const GridSpec& grid, const SearchConfig& cfg) {
    std::vector<double> vals = grid_values(grid);
    std::vector<ScanRow> rows;
    rows.reserve(vals.size() * vals.size() * vals.size());
    for (double l1 : vals)
        for (double l2 : vals)
            for (double l3 : vals)
                rows.push_back(classify_grid_point({l1, l2, l3}, cfg));
    return rows;
}

std::vector<BoundaryCurve> boundary_curves(const GridSpec& mu_grid) {
    std::vector<double> mus = grid_values(mu_grid);
    std::vector<BoundaryCurve> out(4);
    out[0].name = "cp_quarter";
    out[1].name = "ks_ratio";
    out[2].name = "half_sq";
    out[3].name = "half_linear";
    for (double mu : mus) {
        double plus = 1.0 + mu;
        out[0].samples.push_back({mu, std::sqrt(plus * plus / 4.0)});
        out[1].samples.push_back({mu, std::sqrt(plus / (3.0 - mu))});
        out[2].samples.push_back({mu, std::sqrt(plus * plus / 2.0)});
        out[3].samples.push_back({mu, std::sqrt(plus / 2.0)});
    }
    return out;
}

// ===== CSV =====

namespace {

const char* bool_text(bool b) { return b ? "true" : "false"; }

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cell;
    std::istringstream in(line);
    while (std::getline(in, cell, ',')) out.push_back(cell);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

double parse_number(const std::string& s) {
    const char* begin = s.c_str();
    char* end = nullptr;
    double v = std::strtod(begin, &end);
    if (end == begin || end != begin + s.size())
        throw std::runtime_error("scan csv: bad number '" + s + "'");
    return v;
}

bool parse_bool(const std::string& s) {
    if (s == "true") return true;
    if (s == "false") return false;
    throw std::runtime_error("scan csv: bad boolean '" + s + "'");
}

KsLabel parse_label(const std::string& s) {
    if (s == "violated") return KsLabel::Violated;
    if (s == "sufficient") return KsLabel::Sufficient;
    if (s == "undetermined") return KsLabel::Undetermined;
    throw std::runtime_error("scan csv: bad ks label '" + s + "'");
}

constexpr char kScanHeader[] = "lambda1,lambda2,lambda3,positive,cp,ks_label,min_residual";

}  // namespace

void write_scan_csv(std::ostream& out, const std::vector<ScanRow>& rows) {
    out << kScanHeader << "\n";
    for (const ScanRow& r : rows) {
        out << format_g17(r.lambda1) << ',' << format_g17(r.lambda2) << ','
            << format_g17(r.lambda3) << ',' << bool_text(r.positive) << ','
            << bool_text(r.cp) << ',' << to_string(r.ks_label) << ','
            << format_g17(r.min_residual) << "\n";
    }
}

std::vector<ScanRow> parse_scan_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line != kScanHeader)
        throw std::runtime_error("scan csv: missing or wrong header");
    std::vector<ScanRow> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> cells = split_csv_line(line);
        if (cells.size() != 7) throw std::runtime_error("scan csv: expected 7 columns");
        ScanRow r{};
        r.lambda1 = parse_number(cells[0]);
        r.lambda2 = parse_number(cells[1]);
        r.lambda3 = parse_number(cells[2]);
        r.positive = parse_bool(cells[3]);
        r.cp = parse_bool(cells[4]);
        r.ks_label = parse_label(cells[5]);
        r.min_residual = parse_number(cells[6]);
        rows.push_back(r);
    }
    return rows;
}

void write_boundaries_csv(std::ostream& out, const std::vector<BoundaryCurve>& curves) {
    out << "curve,mu,lambda_pos,lambda_neg,lambda_pos_clip,lambda_neg_clip\n";
    for (const BoundaryCurve& c : curves)
        for (const auto& s : c.samples) {
            double lam = s[1];
            double clip = std::min(lam, 1.0);
            out << c.name << ',' << format_g17(s[0]) << ',' << format_g17(lam) << ','
                << format_g17(-lam) << ',' << format_g17(clip) << ','
                << format_g17(-clip) << "\n";
        }
}

// ===== reports =====

namespace {

const char* status_text(KsStatus s) {
    switch (s) {
        case KsStatus::ViolationCertified: return "violation_certified";
        case KsStatus::SufficientConditionHolds: return "sufficient_condition_holds";
        default: return "no_violation_found";
    }
}

void append_witness_values(std::ostream& out, const Vec3c& w) {
    for (size_t k = 0; k < 3; ++k) {
        if (k) out << ", ";
        out << format_g17(w[k].real()) << ", " << format_g17(w[k].imag());
    }
}

void append_mat2c_json(std::ostream& out, const Mat2c& u) {
    out << "[";
    for (int r = 0; r < 2; ++r) {
        if (r) out << ", ";
        out << "[";
        for (int c = 0; c < 2; ++c) {
            if (c) out << ", ";
            out << "[" << format_g17(u(r, c).real()) << ", " << format_g17(u(r, c).imag())
                << "]";
        }
        out << "]";
    }
    out << "]";
}

}  // namespace

std::string render_classification(const TransferMap& input, const Classification& c) {
    std::ostringstream out;
    bool diag = true;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            if (i != j && input.transfer(i, j) != 0.0) diag = false;
    if (diag) {
        out << "input: diagonal [" << format_g17(input.transfer(0, 0)) << ", "
            << format_g17(input.transfer(1, 1)) << ", " << format_g17(input.transfer(2, 2))
            << "]\n";
    } else {
        out << "input: general [";
        for (size_t k = 0; k < 9; ++k) {
            if (k) out << ", ";
            out << format_g17(input.transfer.a[k]);
        }
        out << "]\n";
    }
    out << "positive: " << bool_text(c.positive) << "\n";
    out << "ks_status: " << status_text(c.ks.status) << "\n";
    out << "ks_min_residual: " << format_g17(c.ks.min_residual) << "\n";
    if (c.ks.witness) {
        out << "ks_witness: [";
        append_witness_values(out, *c.ks.witness);
        out << "]\n";
    }
    out << "ks_evaluations: " << c.ks.evaluations << "\n";
    out << "cp_inequalities: "
        << (c.cp_inequalities ? bool_text(*c.cp_inequalities) : "n/a") << "\n";
    out << "cp_choi: " << bool_text(c.cp_choi) << "\n";
    out << "choi_min_eigenvalue: " << format_g17(c.choi_min_eigenvalue) << "\n";
    return out.str();
}

std::string render_certificate(const BistochasticMap& m, const KsVerdict& verdict) {
    std::ostringstream out;
    bool found = verdict.status == KsStatus::ViolationCertified;
    out << "{\n  \"violation_found\": " << bool_text(found) << ",\n";
    out << "  \"min_residual\": " << format_g17(verdict.min_residual) << ",\n";
    if (verdict.witness) {
        KsResidualParts parts = ks_residual_parts(m, *verdict.witness);
        out << "  \"witness\": [";
        append_witness_values(out, *verdict.witness);
        out << "],\n";
        out << "  \"gap_norm\": " << format_g17(parts.gap_norm) << ",\n";
        out << "  \"norm_decrease\": " << format_g17(parts.norm_decrease) << ",\n";
    }
    out << "  \"evaluations\": " << verdict.evaluations << "\n}\n";
    return out.str();
}

std::string render_decomposition(const CanonicalDecomposition& d) {
    std::ostringstream out;
    out << "{\n  \"d\": [" << format_g17(d.d.lambda1) << ", " << format_g17(d.d.lambda2)
        << ", " << format_g17(d.d.lambda3) << "],\n";
    out << "  \"left_unitary\": ";
    append_mat2c_json(out, d.left_unitary);
    out << ",\n  \"right_unitary\": ";
    append_mat2c_json(out, d.right_unitary);
    out << ",\n  \"reconstruction_error\": " << format_g17(d.reconstruction_error)
        << ",\n  \"single_unitary\": " << bool_text(d.single_unitary) << "\n}\n";
    return out.str();
}

}  // namespace ksmap
