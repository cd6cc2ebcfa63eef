#pragma once

#include <algorithm>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "padyn/errors.hpp"

namespace padyn {

/// Dense univariate polynomial over an exact commutative ring R, lowest
/// coefficient first, with no trailing zeros. R needs R(int), ==, +, -, *;
/// division of coefficients is only used by the field-only routines
/// (`divmod`, `gcd`, `make_monic`).
template <class R>
class Poly {
   public:
    Poly() = default;
    Poly(const R& constant) : c_{constant} { trim(); }
    explicit Poly(std::vector<R> coeffs) : c_(std::move(coeffs)) { trim(); }

    static Poly x() { return Poly(std::vector<R>{R(0), R(1)}); }
    static Poly monomial(const R& coeff, int degree) {
        std::vector<R> c(static_cast<size_t>(degree) + 1, R(0));
        c.back() = coeff;
        return Poly(std::move(c));
    }

    /// -1 for the zero polynomial.
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const std::vector<R>& coeffs() const { return c_; }
    R operator[](int i) const { return (i >= 0 && i < static_cast<int>(c_.size())) ? c_[i] : R(0); }
    R lead() const { return c_.empty() ? R(0) : c_.back(); }

    friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    friend Poly operator+(const Poly& a, const Poly& b) {
        std::vector<R> r(std::max(a.c_.size(), b.c_.size()), R(0));
        for (size_t i = 0; i < a.c_.size(); ++i) r[i] = r[i] + a.c_[i];
        for (size_t i = 0; i < b.c_.size(); ++i) r[i] = r[i] + b.c_[i];
        return Poly(std::move(r));
    }
    friend Poly operator-(const Poly& a) {
        std::vector<R> r = a.c_;
        for (auto& c : r) c = R(0) - c;
        return Poly(std::move(r));
    }
    friend Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }
    friend Poly operator*(const Poly& a, const Poly& b) {
        if (a.is_zero() || b.is_zero()) return Poly();
        std::vector<R> r(a.c_.size() + b.c_.size() - 1, R(0));
        for (size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i] == R(0)) continue;
            for (size_t j = 0; j < b.c_.size(); ++j) r[i + j] = r[i + j] + a.c_[i] * b.c_[j];
        }
        return Poly(std::move(r));
    }
    Poly& operator+=(const Poly& b) { return *this = *this + b; }
    Poly& operator-=(const Poly& b) { return *this = *this - b; }
    Poly& operator*=(const Poly& b) { return *this = *this * b; }

    Poly scaled(const R& s) const {
        std::vector<R> r = c_;
        for (auto& c : r) c = c * s;
        return Poly(std::move(r));
    }

    Poly derivative() const {
        if (c_.size() <= 1) return Poly();
        std::vector<R> r(c_.size() - 1, R(0));
        for (size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * R(static_cast<int>(i));
        return Poly(std::move(r));
    }

    /// this(inner), by Horner.
    Poly compose(const Poly& inner) const {
        Poly acc;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * inner + Poly(*it);
        return acc;
    }

    /// Evaluate at a point of any ring S that accepts R coefficients via
    /// `lift(const R&) -> S`.
    template <class S, class Lift>
    S evaluate(const S& x, Lift lift, S zero) const {
        S acc = zero;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + lift(*it);
        return acc;
    }

    R evaluate(const R& x) const {
        R acc(0);
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
        return acc;
    }

    std::string to_string(const std::string& var = "X") const {
        if (c_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (int i = degree(); i >= 0; --i) {
            const R& c = c_[i];
            if (c == R(0)) continue;
            std::ostringstream cs;
            cs << c;
            std::string s = cs.str();
            bool negative = !s.empty() && s[0] == '-' && s.find_first_of("+-", 1) == std::string::npos;
            if (negative) s = s.substr(1);
            bool compound = s.find_first_of("+-", 1) != std::string::npos || s.find('*') != std::string::npos;
            if (first)
                os << (negative ? "-" : "");
            else
                os << (negative ? " - " : " + ");
            first = false;
            if (i == 0) {
                os << (compound ? "(" + s + ")" : s);
                continue;
            }
            if (s != "1") os << (compound ? "(" + s + ")" : s) << "*";
            os << var;
            if (i > 1) os << "^" << i;
        }
        return os.str();
    }

    friend std::ostream& operator<<(std::ostream& os, const Poly& p) { return os << p.to_string(); }

   private:
    void trim() {
        while (!c_.empty() && c_.back() == R(0)) c_.pop_back();
    }
    std::vector<R> c_;
};

/// Division by a monic divisor; exact over any commutative ring.
template <class R>
std::pair<Poly<R>, Poly<R>> divmod_monic(const Poly<R>& a, const Poly<R>& b) {
    if (b.is_zero() || !(b.lead() == R(1))) throw Error(ErrorKind::InvalidArgument, "divisor must be monic");
    std::vector<R> rem = a.coeffs();
    int db = b.degree();
    if (a.degree() < db) return {Poly<R>(), a};
    std::vector<R> quo(static_cast<size_t>(a.degree() - db + 1), R(0));
    for (int k = a.degree(); k >= db; --k) {
        R q = rem[k];
        if (q == R(0)) continue;
        quo[k - db] = q;
        for (int i = 0; i <= db; ++i) rem[k - db + i] = rem[k - db + i] - q * b[i];
    }
    rem.resize(static_cast<size_t>(db));
    return {Poly<R>(std::move(quo)), Poly<R>(std::move(rem))};
}

/// Exact quotient a / b for monic b; throws InexactDivision on a nonzero
/// remainder.
template <class R>
Poly<R> exact_quotient(const Poly<R>& a, const Poly<R>& b) {
    auto [q, r] = divmod_monic(a, b);
    if (!r.is_zero()) throw Error(ErrorKind::InexactDivision, "nonzero remainder in exact polynomial division");
    return q;
}

template <class R>
Poly<R> make_monic(const Poly<R>& a) {
    if (a.is_zero()) return a;
    R inv = R(1) / a.lead();
    return a.scaled(inv);
}

/// Division with remainder over a field R.
template <class R>
std::pair<Poly<R>, Poly<R>> divmod(const Poly<R>& a, const Poly<R>& b) {
    if (b.is_zero()) throw Error(ErrorKind::InvalidArgument, "polynomial division by zero");
    R lead_inv = R(1) / b.lead();
    auto [q, r] = divmod_monic(a.scaled(lead_inv), b.scaled(lead_inv));
    return {q, r.scaled(b.lead())};
}

/// Monic gcd over a field R.
template <class R>
Poly<R> gcd(Poly<R> a, Poly<R> b) {
    while (!b.is_zero()) {
        auto r = divmod(a, b).second;
        a = std::move(b);
        b = make_monic(r);
    }
    return make_monic(a);
}

}  // namespace padyn
