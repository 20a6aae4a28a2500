#pragma once

// Finitely supported Fourier coefficient maps n -> c_n for real-valued
// functions on the circle. Storage and every reduction run in a fixed order
// (ascending |n|, negative frequency first) so results are bit-reproducible.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <string>
#include <vector>

#include "skewlab/frac128.hpp"

namespace skewlab {

// e(t) = exp(2 pi i t) for t in [0,1).
inline std::complex<double> circle_exp(double t) {
    const double a = 2.0 * std::numbers::pi_v<double> * t;
    return {std::cos(a), std::sin(a)};
}

class SparseSeries {
  public:
    struct Term {
        std::int64_t n;
        std::complex<double> c;
    };

    SparseSeries() = default;
    explicit SparseSeries(std::string label) : label_(std::move(label)) {}

    const std::string& label() const { return label_; }
    void set_label(std::string l) { label_ = std::move(l); }

    // Inserts or replaces; an exactly-zero coefficient erases the frequency,
    // so an all-zero series is extensionally the empty series.
    void set_coeff(std::int64_t n, std::complex<double> c) {
        auto it = std::lower_bound(terms_.begin(), terms_.end(), n, key_less);
        if (it != terms_.end() && it->n == n) {
            if (c == std::complex<double>(0.0, 0.0))
                terms_.erase(it);
            else
                it->c = c;
            return;
        }
        if (c == std::complex<double>(0.0, 0.0)) return;
        terms_.insert(it, Term{n, c});
    }

    std::complex<double> coeff(std::int64_t n) const {
        auto it = std::lower_bound(terms_.begin(), terms_.end(), n, key_less);
        if (it != terms_.end() && it->n == n) return it->c;
        return {0.0, 0.0};
    }

    const std::vector<Term>& terms() const { return terms_; }
    std::size_t support_size() const { return terms_.size(); }
    bool empty() const { return terms_.empty(); }

    // Coefficient maps compared exactly; labels are not part of the value.
    bool operator==(const SparseSeries& o) const {
        if (terms_.size() != o.terms_.size()) return false;
        for (std::size_t i = 0; i < terms_.size(); ++i)
            if (terms_[i].n != o.terms_[i].n || terms_[i].c != o.terms_[i].c) return false;
        return true;
    }

    bool is_conjugate_symmetric(double tol = 1e-12) const {
        for (const auto& t : terms_)
            if (std::abs(coeff(-t.n) - std::conj(t.c)) > tol) return false;
        return true;
    }

    double abs_coeff_sum() const {
        double s = 0;
        for (const auto& t : terms_) s += std::abs(t.c);
        return s;
    }

    double l2_norm() const {
        double s = 0;
        for (const auto& t : terms_) s += std::norm(t.c);
        return std::sqrt(s);
    }

  private:
    // order: ascending |n|, then the negative frequency before the positive
    static bool key_less(const Term& t, std::int64_t n) { return key(t.n) < key(n); }
    static std::pair<std::uint64_t, std::int64_t> key(std::int64_t n) {
        const std::uint64_t mag =
            n < 0 ? static_cast<std::uint64_t>(-(n + 1)) + 1 : static_cast<std::uint64_t>(n);
        return {mag, n};
    }

    std::vector<Term> terms_;
    std::string label_;
};

// Sum of Re(c_n e(n x)) with each n*x reduced exactly before the transcendental
// step; term order is the storage order.
inline double eval(const SparseSeries& s, Frac128 x) {
    double acc = 0;
    for (const auto& t : s.terms()) {
        const double theta = frac_mul(t.n, x).to_double();
        const std::complex<double> e = circle_exp(theta);
        acc += t.c.real() * e.real() - t.c.imag() * e.imag();
    }
    return acc;
}

inline double abs_coeff_sum(const SparseSeries& s) { return s.abs_coeff_sum(); }
inline double l2_norm(const SparseSeries& s) { return s.l2_norm(); }

}  // namespace skewlab
