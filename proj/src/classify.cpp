#include "ksmap/classify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "ksmap/rng.hpp"

namespace ksmap {

bool check_positive(const BistochasticMap& m, double tol) {
    return svd3(m.transfer).sigma[0] <= 1.0 + tol;
}

bool check_ks_contraction(const BistochasticMap& m, double tol) {
    return check_positive(m, tol);
}

double ks_residual(const BistochasticMap& m, const Vec3c& w) {
    Vec3c tw = m.transfer * w;
    Vec3c gap = m.transfer * cross(w, conjugate(w)) - cross(tw, conjugate(tw));
    return (norm_sq(w) - norm_sq(tw)) - norm(gap);
}

KsResidualParts ks_residual_parts(const BistochasticMap& m, const Vec3c& w) {
    Vec3c tw = m.transfer * w;
    Vec3c gap = m.transfer * cross(w, conjugate(w)) - cross(tw, conjugate(tw));
    return {norm(gap), norm_sq(w) - norm_sq(tw)};
}

Vec3c gauge_fix(const Vec3c& w) {
    double n = norm(w);
    if (n == 0.0) return w;
    Vec3c out = Complex(1.0 / n) * w;
    for (size_t k = 0; k < 3; ++k) {
        double mag = std::abs(out[k]);
        if (mag > 1e-12) {
            out = (std::conj(out[k]) / mag) * out;
            break;
        }
    }
    return out;
}

namespace {

// Additive low-discrepancy sequence in [0,1)^4 built on the unique positive
// root of x^5 = x + 1; the seed only moves the starting point.
class R4Sequence {
  public:
    explicit R4Sequence(std::uint64_t seed) {
        double g = 1.2;
        for (int k = 0; k < 64; ++k) {
            double g4 = g * g * g * g;
            g -= (g4 * g - g - 1.0) / (5.0 * g4 - 1.0);
        }
        double inv = 1.0;
        for (size_t k = 0; k < 4; ++k) {
            inv /= g;
            alpha_[k] = inv;
        }
        Rng rng(seed);
        for (auto& s : state_) s = rng.next_double();
    }

    std::array<double, 4> next() {
        for (size_t k = 0; k < 4; ++k) {
            state_[k] += alpha_[k];
            if (state_[k] >= 1.0) state_[k] -= 1.0;
        }
        return state_;
    }

  private:
    std::array<double, 4> alpha_{};
    std::array<double, 4> state_{};
};

constexpr double kPi = 3.14159265358979323846;

// Unit vectors of C^3 with the component picked by `chart` real and
// nonnegative (for parameters in range); the three charts cover the gauge
// slice even where a chart's real component vanishes.
Vec3c chart_point(int chart, const std::array<double, 4>& p) {
    double ca = std::cos(p[0]), sa = std::sin(p[0]);
    double cb = std::cos(p[1]), sb = std::sin(p[1]);
    Complex c1 = (sa * cb) * std::polar(1.0, p[2]);
    Complex c2 = (sa * sb) * std::polar(1.0, p[3]);
    switch (chart) {
        case 0: return {Complex(ca), c1, c2};
        case 1: return {c1, Complex(ca), c2};
        default: return {c1, c2, Complex(ca)};
    }
}

struct NmOut {
    std::array<double, 4> x;
    double value;
};

// Standard Nelder-Mead on R^4 (reflection 1, expansion 2, contraction 1/2,
// shrink 1/2); stops when the simplex value spread falls under tol.
template <typename F>
NmOut nelder_mead(F&& f, const std::array<double, 4>& x0, double step, double tol,
                  int max_iter) {
    constexpr int n = 4;
    std::array<std::array<double, 4>, n + 1> pt;
    std::array<double, n + 1> val;
    pt[0] = x0;
    val[0] = f(x0);
    for (int k = 0; k < n; ++k) {
        pt[static_cast<size_t>(k + 1)] = x0;
        pt[static_cast<size_t>(k + 1)][static_cast<size_t>(k)] += step;
        val[static_cast<size_t>(k + 1)] = f(pt[static_cast<size_t>(k + 1)]);
    }
    for (int iter = 0; iter < max_iter; ++iter) {
        std::array<int, n + 1> ord{};
        for (int i = 0; i <= n; ++i) ord[static_cast<size_t>(i)] = i;
        std::stable_sort(ord.begin(), ord.end(), [&](int a, int b) {
            return val[static_cast<size_t>(a)] < val[static_cast<size_t>(b)];
        });
        int best = ord[0], worst = ord[n], second = ord[n - 1];
        if (val[static_cast<size_t>(worst)] - val[static_cast<size_t>(best)] <= tol) break;

        std::array<double, 4> centroid{};
        for (int i = 0; i <= n; ++i) {
            if (i == worst) continue;
            for (size_t k = 0; k < 4; ++k) centroid[k] += pt[static_cast<size_t>(i)][k];
        }
        for (size_t k = 0; k < 4; ++k) centroid[k] /= n;

        auto blend = [&](double coef) {
            std::array<double, 4> x{};
            for (size_t k = 0; k < 4; ++k)
                x[k] = centroid[k] + coef * (centroid[k] - pt[static_cast<size_t>(worst)][k]);
            return x;
        };

        std::array<double, 4> refl = blend(1.0);
        double fr = f(refl);
        if (fr < val[static_cast<size_t>(best)]) {
            std::array<double, 4> exp = blend(2.0);
            double fe = f(exp);
            if (fe < fr) {
                pt[static_cast<size_t>(worst)] = exp;
                val[static_cast<size_t>(worst)] = fe;
            } else {
                pt[static_cast<size_t>(worst)] = refl;
                val[static_cast<size_t>(worst)] = fr;
            }
            continue;
        }
        if (fr < val[static_cast<size_t>(second)]) {
            pt[static_cast<size_t>(worst)] = refl;
            val[static_cast<size_t>(worst)] = fr;
            continue;
        }
        std::array<double, 4> contr =
            fr < val[static_cast<size_t>(worst)] ? blend(0.5) : blend(-0.5);
        double fc = f(contr);
        if (fc < std::min(fr, val[static_cast<size_t>(worst)])) {
            pt[static_cast<size_t>(worst)] = contr;
            val[static_cast<size_t>(worst)] = fc;
            continue;
        }
        for (int i = 0; i <= n; ++i) {
            if (i == best) continue;
            for (size_t k = 0; k < 4; ++k)
                pt[static_cast<size_t>(i)][k] =
                    0.5 * (pt[static_cast<size_t>(i)][k] + pt[static_cast<size_t>(best)][k]);
            val[static_cast<size_t>(i)] = f(pt[static_cast<size_t>(i)]);
        }
    }
    int arg = 0;
    for (int i = 1; i <= n; ++i)
        if (val[static_cast<size_t>(i)] < val[static_cast<size_t>(arg)]) arg = i;
    return {pt[static_cast<size_t>(arg)], val[static_cast<size_t>(arg)]};
}

}  // namespace

KsVerdict verify_ks_numeric(const BistochasticMap& m, const SearchConfig& cfg) {
    long evaluations = 0;
    auto residual_at = [&](const Vec3c& w) {
        ++evaluations;
        return ks_residual(m, w);
    };

    double best = std::numeric_limits<double>::infinity();
    Vec3c best_w = {Complex(1.0), Complex(0.0), Complex(0.0)};

    // a contraction failure hands over a real witness directly
    Svd3 f = svd3(m.transfer);
    if (f.sigma[0] > 1.0 + kTol.predicate) {
        Vec3c w = {Complex(f.v(0, 0)), Complex(f.v(1, 0)), Complex(f.v(2, 0))};
        double r = residual_at(w);
        best = r;
        best_w = w;
        if (r < -cfg.certificate_threshold) {
            Vec3c witness = gauge_fix(w);
            double final_r = residual_at(witness);
            return {KsStatus::ViolationCertified, witness, final_r, evaluations};
        }
    }

    struct Start {
        double value;
        int index;
        int chart;
        std::array<double, 4> params;
    };
    std::vector<Start> starts;
    starts.reserve(static_cast<size_t>(std::max(cfg.samples, 0)));

    R4Sequence seq(cfg.seed);
    for (int i = 0; i < cfg.samples; ++i) {
        std::array<double, 4> u = seq.next();
        std::array<double, 4> p = {u[0] * (kPi / 2.0), u[1] * (kPi / 2.0),
                                   u[2] * 2.0 * kPi, u[3] * 2.0 * kPi};
        int chart = i % 3;
        Vec3c w = chart_point(chart, p);
        double r = residual_at(w);
        starts.push_back({r, i, chart, p});
        if (r < best) {
            best = r;
            best_w = w;
        }
    }

    int n_descend = std::min<int>(cfg.starts, static_cast<int>(starts.size()));
    std::partial_sort(starts.begin(), starts.begin() + n_descend, starts.end(),
                      [](const Start& a, const Start& b) {
                          return a.value != b.value ? a.value < b.value : a.index < b.index;
                      });
    for (int s = 0; s < n_descend; ++s) {
        const Start& st = starts[static_cast<size_t>(s)];
        auto objective = [&](const std::array<double, 4>& p) {
            return residual_at(chart_point(st.chart, p));
        };
        NmOut r = nelder_mead(objective, st.params, 0.2, cfg.descent_tol,
                              cfg.max_iterations);
        if (r.value < best) {
            best = r.value;
            best_w = chart_point(st.chart, r.x);
        }
    }

    Vec3c witness = gauge_fix(best_w);
    double final_r = residual_at(witness);
    if (final_r > best) final_r = best;  // gauge roundoff must not lose the certificate
    if (final_r < -cfg.certificate_threshold)
        return {KsStatus::ViolationCertified, witness, final_r, evaluations};
    return {KsStatus::NoViolationFound, witness, final_r, evaluations};
}

bool check_ks_sufficient_diagonal(const DiagonalParams& d, double slack) {
    double s1 = d.lambda1 * d.lambda1;
    double s2 = d.lambda2 * d.lambda2;
    double s3 = d.lambda3 * d.lambda3;
    double prod = d.lambda1 * d.lambda2 * d.lambda3;
    double rhs = 4.0 * (1.0 + prod) + slack;
    return (1.0 + s1) * (3.0 + s2 + s3 - s1) <= rhs &&
           (1.0 + s2) * (3.0 + s1 + s3 - s2) <= rhs &&
           (1.0 + s3) * (3.0 + s1 + s2 - s3) <= rhs &&
           s1 + s2 + s3 <= 1.0 + 2.0 * prod + slack;
}

bool check_cp_diagonal(const DiagonalParams& d, double slack) {
    double l1 = d.lambda1, l2 = d.lambda2, l3 = d.lambda3;
    double s1 = l1 * l1, s2 = l2 * l2, s3 = l3 * l3;
    double square_sum = s1 + s2 + s3;
    return (l1 + l2) * (l1 + l2) <= (1.0 + l3) * (1.0 + l3) + slack &&
           (l1 - l2) * (l1 - l2) <= (1.0 - l3) * (1.0 - l3) + slack &&
           (1.0 - square_sum) * (1.0 - square_sum) + slack >=
               4.0 * (s1 * s2 + s2 * s3 + s1 * s3 - 2.0 * l1 * l2 * l3);
}

HermMat4 choi_matrix(const BistochasticMap& m) {
    Mat4c c;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            Mat2c unit;
            unit(i, j) = 1.0;
            Mat2c block = to_matrix(apply(m, from_matrix(unit)));
            for (int k = 0; k < 2; ++k)
                for (int l = 0; l < 2; ++l) c(2 * i + k, 2 * j + l) = block(k, l);
        }
    return HermMat4(c);
}

CpChoiResult check_cp_choi(const BistochasticMap& m, double tol) {
    double min_eig = herm_eig(choi_matrix(m)).values[0];
    return {min_eig >= -tol, min_eig};
}

namespace {

bool diagonal_within(const Mat3& t, double tol) {
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            if (i != j && std::abs(t(i, j)) > tol) return false;
    return true;
}

}  // namespace

Classification classify(const BistochasticMap& m, const SearchConfig& cfg) {
    Classification out;
    out.positive = check_positive(m);
    if (diagonal_within(m.transfer, 1e-12)) {
        DiagonalParams d{m.transfer(0, 0), m.transfer(1, 1), m.transfer(2, 2)};
        out.cp_inequalities = check_cp_diagonal(d);
        if (check_ks_sufficient_diagonal(d)) {
            out.ks.status = KsStatus::SufficientConditionHolds;
            out.ks.min_residual = std::numeric_limits<double>::quiet_NaN();
        } else {
            out.ks = verify_ks_numeric(m, cfg);
        }
    } else {
        out.ks = verify_ks_numeric(m, cfg);
    }
    CpChoiResult choi = check_cp_choi(m);
    out.cp_choi = choi.cp;
    out.choi_min_eigenvalue = choi.min_eigenvalue;
    return out;
}

Classification classify(const TransferMap& m, const SearchConfig& cfg) {
    return classify(require_unital(m), cfg);
}

}  // namespace ksmap
