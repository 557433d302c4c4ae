#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "qnd/errors.hpp"
#include "qnd/operators.hpp"

namespace qnd {

// Inputs are allowed to stray this far outside [0,1] before being treated as
// genuine domain errors; Bloch norms and probability sums carry roundoff.
inline constexpr double kClampBand = 1e-9;

inline double clamp01(double x, const char* what) {
    if (x < -kClampBand || x > 1.0 + kClampBand)
        throw DomainError(std::string(what) + " outside [0,1]: " + std::to_string(x));
    return x < 0.0 ? 0.0 : (x > 1.0 ? 1.0 : x);
}

// 0 log 0 := 0 throughout.
inline double plog2p(double p) { return p > 0.0 ? p * std::log2(p) : 0.0; }

// Entropy of a coin with bias (1+x)/2, in bits. h(0) = 1, h(1) = 0,
// strictly decreasing on [0,1].
inline double binary_entropy(double x) {
    x = clamp01(x, "binary_entropy argument");
    return -plog2p(0.5 * (1.0 + x)) - plog2p(0.5 * (1.0 - x));
}

// Inverse of binary_entropy on [0,1], by bisection. The derivative of h
// vanishes at x -> 0, so Newton from that side is unreliable; bisection to
// 1e-14 in the argument is exact enough for every consumer here. The
// endpoints are returned exactly: h is floating-point-flat near x = 0
// (h rounds to 1.0 for x below ~1e-8), so bisection alone cannot pin them.
inline double binary_entropy_inverse(double y) {
    y = clamp01(y, "binary_entropy_inverse argument");
    if (y >= 1.0) return 0.0;
    if (y <= 0.0) return 1.0;
    double lo = 0.0, hi = 1.0;  // h(lo) = 1 >= y >= 0 = h(hi)
    for (int it = 0; it < 100 && hi - lo > 1e-14; ++it) {
        const double mid = 0.5 * (lo + hi);
        (binary_entropy(mid) >= y ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

inline double shannon_entropy(const std::vector<double>& p) {
    double h = 0.0;
    for (double x : p) h -= plog2p(x);
    return h;
}

// Joint distribution over two finite variables; rows index the first.
class JointDist {
  public:
    JointDist(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), p_(rows * cols, 0.0) {}

    double& at(std::size_t r, std::size_t c) { return p_[r * cols_ + c]; }
    double at(std::size_t r, std::size_t c) const { return p_[r * cols_ + c]; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    const std::vector<double>& flat() const { return p_; }

    void validate() const {
        double sum = 0.0;
        for (double x : p_) {
            if (x < -kClampBand) throw DomainError("joint distribution has a negative entry");
            sum += x;
        }
        if (std::abs(sum - 1.0) > 1e-12)
            throw DomainError("joint distribution sums to " + std::to_string(sum));
    }

    std::vector<double> row_marginal() const {
        std::vector<double> m(rows_, 0.0);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c) m[r] += at(r, c);
        return m;
    }
    std::vector<double> col_marginal() const {
        std::vector<double> m(cols_, 0.0);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c) m[c] += at(r, c);
        return m;
    }

  private:
    std::size_t rows_, cols_;
    std::vector<double> p_;
};

// H(X|Y) with X the row variable, as the column-weighted average
// sum_y p(y) H(X|Y=y).
inline double conditional_entropy(const JointDist& j) {
    const std::vector<double> py = j.col_marginal();
    double h = 0.0;
    for (std::size_t c = 0; c < j.cols(); ++c) {
        if (py[c] <= 0.0) continue;
        double hc = 0.0;
        for (std::size_t r = 0; r < j.rows(); ++r) hc -= plog2p(j.at(r, c) / py[c]);
        h += py[c] * hc;
    }
    return h;
}

// H(X|Y) = H(X,Y) - H(Y); algebraically identical route, kept as a
// cross-check against the weighted form.
inline double conditional_entropy_chain(const JointDist& j) {
    return shannon_entropy(j.flat()) - shannon_entropy(j.col_marginal());
}

// H(A|rho) for a sharp observable: binary entropy of the Bloch overlap.
inline double observable_entropy(const PauliObservable& a, const State& rho) {
    return binary_entropy(std::abs(a.axis().dot(rho.bloch())));
}

}  // namespace qnd
