#pragma once

#include <gmpxx.h>

#include <optional>
#include <ostream>
#include <string>

#include "padyn/padic.hpp"

namespace padyn {

/// a + b*sqrt(delta) with exact rational a, b. delta == 0 marks a plain
/// rational that has not been tied to a quadratic field yet; it adopts the
/// field of whatever it is combined with.
class QuadElement {
   public:
    QuadElement() = default;
    QuadElement(int n) : a_(n) {}
    QuadElement(const mpq_class& a) : a_(a) {}
    QuadElement(mpq_class a, mpq_class b, long delta);

    static QuadElement sqrt_delta(long delta) { return QuadElement(0, 1, delta); }

    const mpq_class& a() const { return a_; }
    const mpq_class& b() const { return b_; }
    long delta() const { return delta_; }
    bool is_rational() const { return b_ == 0; }
    bool is_zero() const { return a_ == 0 && b_ == 0; }

    QuadElement conj() const { return QuadElement(a_, -b_, delta_); }
    mpq_class norm() const { return a_ * a_ - mpq_class(delta_) * b_ * b_; }
    mpq_class trace() const { return 2 * a_; }
    QuadElement inverse() const;
    QuadElement with_delta(long delta) const;

    friend QuadElement operator+(const QuadElement& x, const QuadElement& y);
    friend QuadElement operator-(const QuadElement& x, const QuadElement& y);
    friend QuadElement operator-(const QuadElement& x) { return QuadElement(-x.a_, -x.b_, x.delta_); }
    friend QuadElement operator*(const QuadElement& x, const QuadElement& y);
    friend QuadElement operator/(const QuadElement& x, const QuadElement& y) { return x * y.inverse(); }
    QuadElement& operator+=(const QuadElement& y) { return *this = *this + y; }
    QuadElement& operator-=(const QuadElement& y) { return *this = *this - y; }
    QuadElement& operator*=(const QuadElement& y) { return *this = *this * y; }
    friend bool operator==(const QuadElement& x, const QuadElement& y) { return x.a_ == y.a_ && x.b_ == y.b_; }
    friend bool operator!=(const QuadElement& x, const QuadElement& y) { return !(x == y); }

    /// Canonical text: "a", "b*sqrt(D)", "a + b*sqrt(D)" with reduced
    /// fractions, e.g. "1/2 + 1/2*sqrt(5)".
    std::string to_string() const;
    friend std::ostream& operator<<(std::ostream& os, const QuadElement& x) { return os << x.to_string(); }

   private:
    static long common_delta(const QuadElement& x, const QuadElement& y);
    mpq_class a_{0}, b_{0};
    long delta_ = 0;
};

/// The image of Q(sqrt(delta)) in a p-adic field, fixed by a choice of
/// square root of delta.
class Embedding {
   public:
    /// Uses the canonical square root of delta in F (or its negative when
    /// `negate` is set). Throws InvalidArgument when delta is not a square in F.
    static Embedding make(const FieldDescriptor& F, long delta, bool negate = false);
    /// Rational-only embedding (no square root needed).
    static Embedding rational(const FieldDescriptor& F);

    const FieldDescriptor& field() const { return field_; }
    long delta() const { return delta_; }
    const std::optional<PadicElement>& root() const { return root_; }

    PadicElement image(const QuadElement& x) const;

   private:
    Embedding(FieldDescriptor F, long delta, std::optional<PadicElement> root)
        : field_(std::move(F)), delta_(delta), root_(std::move(root)) {}
    FieldDescriptor field_;
    long delta_ = 0;
    std::optional<PadicElement> root_;
};

}  // namespace padyn
