#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"

#include "gasket/format.hpp"
#include "gasket/interpolation.hpp"

namespace gasket {

/// Self-similar measure on [0,1]: w0 is the mass of the left map x -> x/2,
/// w1 of the right map x -> (x+1)/2.  The projection nu_n has w0 = n/(n+1),
/// w1 = 1/(n+1) (the cell adjacent to the projection vertex maps right).
struct SelfSimilarMeasure1D {
    mpq_class w0, w1;

    static SelfSimilarMeasure1D standard(int n) {
        return {mpq_class(n, n + 1), mpq_class(1, n + 1)};
    }

    void validate() const {
        if (w0 < 0 || w1 < 0 || w0 + w1 != 1) throw InvalidWeights("weights must be >= 0 and sum to 1");
    }
};

/// Exact CDF value nu([0,x]) via the binary-digit recursion.
inline mpq_class nu_cdf(const SelfSimilarMeasure1D& meas, Dyadic x) {
    if (x < Dyadic(0) || x > Dyadic(1)) throw DomainError("CDF argument outside [0,1]");
    const Dyadic half(mpz_class(1), 1);
    mpq_class result = 0, coeff = 1;
    while (!x.is_zero()) {
        if (x.is_one()) {
            result += coeff;
            break;
        }
        if (x <= half) {
            coeff *= meas.w0;
            x = x.shifted_up(1);
        } else {
            result += coeff * meas.w0;
            coeff *= meas.w1;
            x = x.shifted_up(1) - Dyadic(1);
        }
    }
    return result;
}

/// Exact-rational histogram over 2^depth equal bins of [0,1].
struct Histogram {
    int depth = 0;
    std::vector<mpq_class> masses;

    std::size_t bins() const { return masses.size(); }
    mpq_class total() const {
        mpq_class s = 0;
        for (const mpq_class& m : masses) s += m;
        return s;
    }
};

/// Double-precision histogram (transfer-operator iterations).
struct HistogramD {
    int depth = 0;
    std::vector<double> masses;

    double total() const {
        double s = 0;
        for (double m : masses) s += m;
        return s;
    }
};

inline double l1_distance(const Histogram& a, const HistogramD& b) {
    double s = 0;
    for (std::size_t i = 0; i < a.masses.size(); ++i) s += std::abs(a.masses[i].get_d() - b.masses[i]);
    return s;
}

inline double l1_distance(const HistogramD& a, const HistogramD& b) {
    double s = 0;
    for (std::size_t i = 0; i < a.masses.size(); ++i) s += std::abs(a.masses[i] - b.masses[i]);
    return s;
}

inline constexpr int kMaxRationalDepth = 12;

/// Bin [j 2^{-M}, (j+1) 2^{-M}) gets the product of digit weights of j.
inline Histogram nu_histogram(const SelfSimilarMeasure1D& meas, int depth) {
    if (depth < 0 || depth > 24) throw BudgetExceeded("histogram depth out of budget");
    meas.validate();
    Histogram h;
    h.depth = depth;
    std::size_t bins = std::size_t{1} << depth;
    // Mass depends only on the number of 1-digits.
    std::vector<mpq_class> w0p(depth + 1), w1p(depth + 1);
    w0p[0] = w1p[0] = 1;
    for (int i = 1; i <= depth; ++i) {
        w0p[i] = w0p[i - 1] * meas.w0;
        w1p[i] = w1p[i - 1] * meas.w1;
    }
    h.masses.resize(bins);
    for (std::size_t j = 0; j < bins; ++j) {
        int ones = std::popcount(j);
        h.masses[j] = w0p[depth - ones] * w1p[ones];
    }
    return h;
}

/// Hausdorff dimension of nu_n: ((n+1)ln(n+1) - n ln n) / ((n+1) ln 2).
inline double nu_dimension(int n) {
    if (n < 2) throw DomainError("dimension formula needs n >= 2");
    return ((n + 1) * std::log(n + 1) - n * std::log(n)) / ((n + 1) * std::log(2.0));
}

/// Dimension of nu_n x nu_n; crosses 1 between n = 8 and n = 9.
inline double pair_dimension(int n) { return 2.0 * nu_dimension(n); }

/// Parameters of the pushforward measure tilde-nu: projection psi_t of the
/// product of two 1D self-similar marginals (s toward the entry point, r
/// toward the exit point).
struct PushforwardSpec {
    int n = 2;
    mpq_class t;
    int k = 0, m = 0;
    SelfSimilarMeasure1D s, r;

    /// Weight of the quadrant map G_ij, indexed as in the product IFS:
    /// digit 0 is the left/lower half with marginal weight w0.
    mpq_class quad_weight(int i, int j) const {
        return (i ? s.w1 : s.w0) * (j ? r.w1 : r.w0);
    }

    /// The same four weights under the entry/exit orientation labels
    /// (w00 = mu^i mu^j for the weighted variants).
    mpq_class oriented_weight(int a, int b) const {
        return (a ? s.w0 : s.w1) * (b ? r.w0 : r.w1);
    }

    mpq_class alpha() const {
        return Dyadic::one_over_pow2(static_cast<unsigned>(k)).to_mpq() * (1 - t);
    }
    mpq_class beta() const {
        return Dyadic::one_over_pow2(static_cast<unsigned>(m)).to_mpq() * t;
    }
};

inline PushforwardSpec standard_spec(int n, const mpq_class& t, int k, int m) {
    PushforwardSpec sp;
    sp.n = n;
    sp.t = t;
    sp.k = k;
    sp.m = m;
    sp.s = sp.r = SelfSimilarMeasure1D::standard(n);
    return sp;
}

/// Weighted gasket measure (mu^0..mu^n) projected along a common path with
/// entry vertex index i and exit vertex index j: the 1D marginals get right
/// weight mu^i (resp. mu^j).
inline PushforwardSpec weighted_variants(int n, const std::vector<mpq_class>& mu, int i, int j,
                                         const mpq_class& t = 0, int k = 0, int m = 0) {
    if (static_cast<int>(mu.size()) != n + 1) throw InvalidWeights("need n+1 weights");
    mpq_class sum = 0;
    for (const mpq_class& w : mu) {
        if (w <= 0) throw InvalidWeights("weights must be positive");
        sum += w;
    }
    if (sum != 1) throw InvalidWeights("weights must sum to 1");
    if (i < 0 || i > n || j < 0 || j > n) throw LetterOutOfRange("orientation index out of range");
    PushforwardSpec sp;
    sp.n = n;
    sp.t = t;
    sp.k = k;
    sp.m = m;
    sp.s = {1 - mu[i], mu[i]};
    sp.r = {1 - mu[j], mu[j]};
    return sp;
}

/// Method A: exact grid pushforward.  Depth-M product squares map under
/// psi_t to intervals of width exactly 2^{-M}, deposited proportionally.
inline Histogram tilde_nu_histogram_grid(const PushforwardSpec& spec, int depth) {
    if (depth < 0 || depth > kMaxRationalDepth) throw BudgetExceeded("grid depth out of budget");
    if (spec.t < 0 || spec.t > 1) throw DomainError("t outside [0,1]");
    Histogram hs = nu_histogram(spec.s, depth), hr = nu_histogram(spec.r, depth);
    mpq_class alpha = spec.alpha(), beta = spec.beta();
    if (alpha + beta == 0) throw DomainError("degenerate projection: both weights vanish");
    Histogram out;
    out.depth = depth;
    const long bins = 1L << depth;
    out.masses.assign(bins, 0);
    for (long a = 0; a < bins; ++a) {
        if (hs.masses[a] == 0) continue;
        for (long b = 0; b < bins; ++b) {
            // Left edge of the image interval, scaled by 2^M.
            mpq_class pos = (alpha * a + beta * (bins - b - 1)) / (alpha + beta);
            mpz_class idx_z = pos.get_num() / pos.get_den();  // floor (pos >= 0)
            long idx = idx_z.get_si();
            mpq_class frac = pos - mpq_class(idx_z);
            mpq_class mass = hs.masses[a] * hr.masses[b];
            if (idx >= bins) idx = bins - 1, frac = 0;
            out.masses[idx] += mass * (1 - frac);
            if (frac != 0) out.masses[idx + 1 < bins ? idx + 1 : bins - 1] += mass * frac;
        }
    }
    return out;
}

/// Transfer-operator iteration log for method B.
struct IfsResult {
    HistogramD hist;
    int iterations = 0;
    std::vector<double> residuals;  // L1 between successive iterates
};

/// Method B: iterate the overlapping-IFS operator
/// h -> sum_ij w_ij h o G~_ij^{-1}, G~_ij(u) = (u + c_ij)/2 with
/// c_ij = psi_t(digit values), from the uniform start.
inline IfsResult tilde_nu_histogram_ifs(const PushforwardSpec& spec, int depth, int max_iterations = 200,
                                        double tol = 1e-13) {
    if (depth < 0 || depth > 24) throw BudgetExceeded("histogram depth out of budget");
    if (spec.t < 0 || spec.t > 1) throw DomainError("t outside [0,1]");
    mpq_class alpha = spec.alpha(), beta = spec.beta();
    if (alpha + beta == 0) throw DomainError("degenerate projection: both weights vanish");
    const long bins = 1L << depth;
    double offset[2][2], weight[2][2];
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            // psi_t at the corner (s,r) = (i, j); G~_ij shifts by this value.
            mpq_class c = psi_weights(alpha, beta, i, j);
            offset[i][j] = c.get_d();
            weight[i][j] = spec.quad_weight(i, j).get_d();
        }
    }
    IfsResult res;
    res.hist.depth = depth;
    res.hist.masses.assign(bins, 1.0 / bins);
    std::vector<double> next(bins);
    for (int it = 0; it < max_iterations; ++it) {
        std::fill(next.begin(), next.end(), 0.0);
        for (int i = 0; i < 2; ++i) {
            for (int j = 0; j < 2; ++j) {
                if (weight[i][j] == 0) continue;
                double start = offset[i][j] / 2;  // image of bin u: width 2^{-M-1}
                for (long u = 0; u < bins; ++u) {
                    double mass = weight[i][j] * res.hist.masses[u];
                    if (mass == 0) continue;
                    double left = (start + static_cast<double>(u) / (2.0 * bins)) * bins;
                    double right = left + 0.5;
                    long li = static_cast<long>(left);
                    if (li >= bins) li = bins - 1;
                    double cut = static_cast<double>(li + 1);
                    if (right <= cut || li + 1 >= bins) {
                        next[li] += mass;
                    } else {
                        double f = (cut - left) / 0.5;
                        next[li] += mass * f;
                        next[li + 1] += mass * (1 - f);
                    }
                }
            }
        }
        double diff = 0;
        for (long u = 0; u < bins; ++u) diff += std::abs(next[u] - res.hist.masses[u]);
        res.hist.masses.swap(next);
        ++res.iterations;
        res.residuals.push_back(diff);
        if (diff < tol) break;
    }
    return res;
}

/// eta_t over Z_t(A,b) as a histogram in the H_t parametrization: the nu_n
/// histogram scaled by (n+1)^{-|A|}.
struct EtaResult {
    Histogram hist;
    InterpolantInterval interval;
    mpq_class normalization;
};

inline EtaResult eta_cell_to_point(const Cell& A, const PointAddress& b, const mpq_class& t, int depth) {
    CommonPath cp = build_common_path(A, b);
    EtaResult res;
    res.interval = interpolant_interval(cp, t);
    res.hist = nu_histogram(SelfSimilarMeasure1D::standard(A.n()), depth);
    mpz_class denom = 1;
    for (int i = 0; i < A.level(); ++i) denom *= A.n() + 1;
    res.normalization = mpq_class(1, denom);
    for (mpq_class& m : res.hist.masses) m *= res.normalization;
    return res;
}

/// eta_t over Z_t(A,B): the tilde-nu histogram scaled by (n+1)^{-k-m}.
inline EtaResult eta_cell_to_cell(const Cell& A, const Cell& B, const mpq_class& t, int depth) {
    CommonPath cp = build_common_path(A, B);
    if (!cp.regular()) throw NoCommonPath("common path is not regular");
    EtaResult res;
    res.interval = interpolant_interval(cp, t);
    PushforwardSpec spec = standard_spec(A.n(), t, cp.k, cp.m);
    res.hist = tilde_nu_histogram_grid(spec, depth);
    mpz_class denom = 1;
    for (int i = 0; i < cp.k + cp.m; ++i) denom *= A.n() + 1;
    res.normalization = mpq_class(1, denom);
    for (mpq_class& m : res.hist.masses) m *= res.normalization;
    return res;
}

/// CSV emission shared by the CLI: schema comment, JSON metadata comment,
/// then bin rows.
template <typename Hist>
void write_histogram_csv(std::ostream& os, const Hist& h, const nlohmann::json& metadata) {
    os << "# schema=gasket-histogram-v1\n";
    os << "# " << metadata.dump() << "\n";
    os << "bin_left,bin_right,mass\n";
    const long bins = 1L << h.depth;
    for (long j = 0; j < bins; ++j) {
        mpq_class left(j, bins), right(j + 1, bins);
        left.canonicalize();
        right.canonicalize();
        os << rational_str(left) << ',' << rational_str(right) << ',';
        if constexpr (std::is_same_v<Hist, Histogram>)
            os << rational_str(h.masses[j]);
        else
            os << h.masses[j];
        os << '\n';
    }
}

}  // namespace gasket
