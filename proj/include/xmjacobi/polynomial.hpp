#pragma once

#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

namespace xmjacobi {

/// Dense real polynomial, coeffs[q] multiplying y^q. An empty coefficient
/// vector is the zero polynomial. Trailing exact zeros are trimmed so the
/// leading coefficient of a nonzero polynomial is nonzero.
class Polynomial {
public:
    Polynomial() = default;

    explicit Polynomial(std::vector<double> coeffs) : c_(std::move(coeffs)) { trim(); }

    static Polynomial constant(double v) {
        return v == 0.0 ? Polynomial{} : Polynomial{{v}};
    }

    /// c0 + c1*y
    static Polynomial linear(double c0, double c1) { return Polynomial{{c0, c1}}; }

    bool is_zero() const { return c_.empty(); }

    /// Degree of the zero polynomial is -1.
    int degree() const { return static_cast<int>(c_.size()) - 1; }

    const std::vector<double>& coeffs() const { return c_; }

    /// Coefficient of y^q (0 beyond the stored range).
    double coeff(std::size_t q) const { return q < c_.size() ? c_[q] : 0.0; }

    /// Horner evaluation.
    double operator()(double y) const {
        double acc = 0.0;
        for (std::size_t i = c_.size(); i-- > 0;) acc = acc * y + c_[i];
        return acc;
    }

    Polynomial derivative() const {
        if (c_.size() <= 1) return {};
        std::vector<double> d(c_.size() - 1);
        for (std::size_t q = 1; q < c_.size(); ++q) d[q - 1] = static_cast<double>(q) * c_[q];
        return Polynomial{std::move(d)};
    }

    Polynomial& operator+=(const Polynomial& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), 0.0);
        for (std::size_t q = 0; q < o.c_.size(); ++q) c_[q] += o.c_[q];
        trim();
        return *this;
    }

    Polynomial& operator-=(const Polynomial& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), 0.0);
        for (std::size_t q = 0; q < o.c_.size(); ++q) c_[q] -= o.c_[q];
        trim();
        return *this;
    }

    Polynomial& operator*=(double s) {
        if (s == 0.0) {
            c_.clear();
        } else {
            for (double& v : c_) v *= s;
        }
        return *this;
    }

    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(Polynomial a, double s) { return a *= s; }
    friend Polynomial operator*(double s, Polynomial a) { return a *= s; }

    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<double> p(a.c_.size() + b.c_.size() - 1, 0.0);
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j) p[i + j] += a.c_[i] * b.c_[j];
        return Polynomial{std::move(p)};
    }

private:
    void trim() {
        while (!c_.empty() && c_.back() == 0.0) c_.pop_back();
    }

    std::vector<double> c_;
};

/// Integer power by repeated multiplication (degrees here are small).
inline Polynomial pow(const Polynomial& p, int n) {
    Polynomial acc = Polynomial::constant(1.0);
    for (int i = 0; i < n; ++i) acc = acc * p;
    return acc;
}

}  // namespace xmjacobi
