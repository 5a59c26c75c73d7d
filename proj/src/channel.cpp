#include "ksmap/channel.hpp"

#include <array>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "ksmap/format.hpp"
#include "ksmap/rng.hpp"

namespace ksmap {

namespace {

Vec3 column(const Mat3& m, int c) { return {m(0, c), m(1, c), m(2, c)}; }

void set_column(Mat3& m, int c, const Vec3& v) {
    m(0, c) = v[0];
    m(1, c) = v[1];
    m(2, c) = v[2];
}

}  // namespace

BistochasticMap diagonal_map(const DiagonalParams& d) {
    return {Mat3::diagonal(d.lambda1, d.lambda2, d.lambda3)};
}

TransferMap as_transfer(const BistochasticMap& m) { return {m.transfer, {0.0, 0.0, 0.0}}; }

BistochasticMap require_unital(const TransferMap& m, double tol) {
    if (norm(m.shift) > tol)
        throw std::invalid_argument("map is not unital: nonzero shift vector");
    return {m.transfer};
}

QubitElement apply(const TransferMap& m, const QubitElement& x) {
    QubitElement out;
    out.w0 = x.w0;
    Vec3c moved = m.transfer * x.w;
    for (size_t k = 0; k < 3; ++k) moved[k] += x.w0 * m.shift[k];
    out.w = moved;
    return out;
}

QubitElement apply(const BistochasticMap& m, const QubitElement& x) {
    return {x.w0, m.transfer * x.w};
}

BistochasticMap convex_combine(const BistochasticMap& a, const BistochasticMap& b,
                               double weight) {
    if (!(weight >= 0.0 && weight <= 1.0))
        throw std::invalid_argument("convex_combine: weight must lie in [0, 1]");
    return {(1.0 - weight) * a.transfer + weight * b.transfer};
}

BistochasticMap conjugate_by_unitary(const BistochasticMap& m, const Mat2c& u,
                                     const Mat2c& v) {
    Mat3 ru = su2_to_so3(u);
    Mat3 rv = su2_to_so3(v);
    return {ru * m.transfer * rv};
}

CanonicalDecomposition canonical_decompose(const BistochasticMap& m) {
    PolarRS rs = polar_rotation(m.transfer);
    SymEig3 es = sym_eig3(rs.symmetric);

    // magnitude-descending order with signs kept; sym_eig3 sorts by value,
    // so re-permute and carry the eigenvector columns along
    std::array<int, 3> order = {0, 1, 2};
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return std::abs(es.values[static_cast<size_t>(a)]) >
               std::abs(es.values[static_cast<size_t>(b)]);
    });
    Mat3 v;
    Vec3 d{};
    for (int k = 0; k < 3; ++k) {
        int src = order[static_cast<size_t>(k)];
        d[static_cast<size_t>(k)] = es.values[static_cast<size_t>(src)];
        set_column(v, k, column(es.vectors, src));
    }
    if (determinant(v) < 0.0) set_column(v, 2, -1.0 * column(v, 2));

    Mat3 left_rot = rs.rotation * v;
    Mat3 right_rot = transpose(v);

    CanonicalDecomposition out;
    out.left_unitary = so3_to_su2(left_rot);
    out.right_unitary = so3_to_su2(right_rot);
    out.d = {d[0], d[1], d[2]};
    Mat3 rebuilt = left_rot * Mat3::diagonal(d[0], d[1], d[2]) * right_rot;
    out.reconstruction_error = frobenius_norm(rebuilt - m.transfer);

    bool right_trivial = max_abs(right_rot - Mat3::identity()) <= 1e-8;
    bool plain_conjugation = max_abs(rs.rotation - Mat3::identity()) <= 1e-8;
    out.single_unitary = right_trivial || plain_conjugation;
    return out;
}

BistochasticMap random_bistochastic(std::uint64_t seed, RandomMode mode) {
    Rng rng(seed);
    Mat3 t;
    if (mode == RandomMode::Diagonal) {
        for (int k = 0; k < 3; ++k) t(k, k) = rng.uniform(-1.0, 1.0);
    } else {
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) t(i, j) = rng.uniform(-1.0, 1.0);
        if (mode == RandomMode::Contractive) {
            double top = svd3(t).sigma[0];
            if (top > 1.0) t = (1.0 / top) * t;
        }
    }
    return {t};
}

// ===== channel files =====

namespace {

bool exactly_diagonal(const Mat3& t) {
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            if (i != j && t(i, j) != 0.0) return false;
    return true;
}

double number_at(const nlohmann::json& arr, size_t k, const char* field) {
    const auto& e = arr.at(k);
    if (!e.is_number())
        throw std::runtime_error(std::string("channel file: ") + field +
                                 " must contain only numbers");
    return e.get<double>();
}

}  // namespace

std::string channel_to_json(const TransferMap& m) {
    if (norm(m.shift) != 0.0)
        throw std::invalid_argument("channel_to_json: only unital maps are representable");
    std::ostringstream out;
    if (exactly_diagonal(m.transfer)) {
        out << "{\n  \"kind\": \"diagonal\",\n  \"lambdas\": ["
            << format_g17(m.transfer(0, 0)) << ", " << format_g17(m.transfer(1, 1)) << ", "
            << format_g17(m.transfer(2, 2)) << "]\n}\n";
    } else {
        out << "{\n  \"kind\": \"general\",\n  \"t_matrix\": [";
        for (size_t k = 0; k < 9; ++k) {
            if (k) out << ", ";
            out << format_g17(m.transfer.a[k]);
        }
        out << "]\n}\n";
    }
    return out.str();
}

TransferMap channel_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::runtime_error(std::string("channel file: ") + e.what());
    }
    if (!j.is_object()) throw std::runtime_error("channel file: expected a JSON object");
    if (!j.contains("kind") || !j.at("kind").is_string())
        throw std::runtime_error("channel file: missing string field \"kind\"");
    std::string kind = j.at("kind").get<std::string>();

    TransferMap out{};
    if (kind == "diagonal") {
        for (const auto& item : j.items())
            if (item.key() != "kind" && item.key() != "lambdas")
                throw std::runtime_error("channel file: unknown field \"" + item.key() + "\"");
        if (!j.contains("lambdas") || !j.at("lambdas").is_array() || j.at("lambdas").size() != 3)
            throw std::runtime_error("channel file: \"lambdas\" must be an array of 3 numbers");
        const auto& l = j.at("lambdas");
        out.transfer = Mat3::diagonal(number_at(l, 0, "lambdas"), number_at(l, 1, "lambdas"),
                                      number_at(l, 2, "lambdas"));
    } else if (kind == "general") {
        for (const auto& item : j.items())
            if (item.key() != "kind" && item.key() != "t_matrix" && item.key() != "t")
                throw std::runtime_error("channel file: unknown field \"" + item.key() + "\"");
        if (!j.contains("t_matrix") || !j.at("t_matrix").is_array() ||
            j.at("t_matrix").size() != 9)
            throw std::runtime_error(
                "channel file: \"t_matrix\" must be an array of 9 numbers (row-major)");
        const auto& t = j.at("t_matrix");
        for (size_t k = 0; k < 9; ++k) out.transfer.a[k] = number_at(t, k, "t_matrix");
        if (j.contains("t")) {
            if (!j.at("t").is_array() || j.at("t").size() != 3)
                throw std::runtime_error("channel file: \"t\" must be an array of 3 numbers");
            for (size_t k = 0; k < 3; ++k) out.shift[k] = number_at(j.at("t"), k, "t");
        }
    } else {
        throw std::runtime_error("channel file: \"kind\" must be \"diagonal\" or \"general\"");
    }
    return out;
}

TransferMap load_channel_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open channel file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return channel_from_json(buf.str());
}

}  // namespace ksmap
