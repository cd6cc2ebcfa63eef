#include "padyn/quad.hpp"

#include <sstream>

#include "padyn/errors.hpp"

namespace padyn {

QuadElement::QuadElement(mpq_class a, mpq_class b, long delta) : a_(std::move(a)), b_(std::move(b)), delta_(delta) {
    a_.canonicalize();
    b_.canonicalize();
    if (delta_ == 0 && b_ != 0) throw Error(ErrorKind::InvalidArgument, "sqrt part requires a field discriminant");
}

long QuadElement::common_delta(const QuadElement& x, const QuadElement& y) {
    if (x.delta_ == 0) return y.delta_;
    if (y.delta_ == 0 || x.delta_ == y.delta_) return x.delta_;
    if (x.b_ == 0) return y.delta_;
    if (y.b_ == 0) return x.delta_;
    throw Error(ErrorKind::FieldMismatch,
                "Q(sqrt(" + std::to_string(x.delta_) + ")) vs Q(sqrt(" + std::to_string(y.delta_) + "))");
}

QuadElement QuadElement::with_delta(long delta) const {
    if (b_ != 0 && delta_ != delta) throw Error(ErrorKind::FieldMismatch, "element lives in another field");
    return QuadElement(a_, b_, delta);
}

QuadElement operator+(const QuadElement& x, const QuadElement& y) {
    return QuadElement(x.a_ + y.a_, x.b_ + y.b_, QuadElement::common_delta(x, y));
}

QuadElement operator-(const QuadElement& x, const QuadElement& y) {
    return QuadElement(x.a_ - y.a_, x.b_ - y.b_, QuadElement::common_delta(x, y));
}

QuadElement operator*(const QuadElement& x, const QuadElement& y) {
    long d = QuadElement::common_delta(x, y);
    mpq_class a = x.a_ * y.a_ + mpq_class(d) * x.b_ * y.b_;
    mpq_class b = x.a_ * y.b_ + x.b_ * y.a_;
    return QuadElement(a, b, d);
}

QuadElement QuadElement::inverse() const {
    mpq_class n = norm();
    if (n == 0) throw Error(ErrorKind::InvalidArgument, "division by zero in quadratic field");
    return QuadElement(a_ / n, -b_ / n, delta_);
}

std::string QuadElement::to_string() const {
    std::ostringstream os;
    auto root = "sqrt(" + std::to_string(delta_) + ")";
    if (b_ == 0) {
        os << a_;
        return os.str();
    }
    auto coeff = [&](const mpq_class& b) {
        if (b == 1) return root;
        std::ostringstream s;
        s << b << "*" << root;
        return s.str();
    };
    if (a_ == 0) {
        if (b_ == -1) return "-" + root;
        return coeff(b_);
    }
    os << a_;
    if (b_ < 0)
        os << " - " << coeff(-b_);
    else
        os << " + " << coeff(b_);
    return os.str();
}

Embedding Embedding::make(const FieldDescriptor& F, long delta, bool negate) {
    auto r = sqrt(PadicElement::from_integer(F, delta));
    if (!r)
        throw Error(ErrorKind::InvalidArgument,
                    "Q(sqrt(" + std::to_string(delta) + ")) does not embed in " + F.describe());
    return Embedding(F, delta, negate ? -*r : *r);
}

Embedding Embedding::rational(const FieldDescriptor& F) { return Embedding(F, 0, std::nullopt); }

PadicElement Embedding::image(const QuadElement& x) const {
    PadicElement a = PadicElement::from_rational(field_, x.a());
    if (x.b() == 0) return a;
    if (!root_ || (x.delta() != delta_))
        throw Error(ErrorKind::FieldMismatch, "element " + x.to_string() + " is outside the embedded field");
    return a + PadicElement::from_rational(field_, x.b()) * *root_;
}

}  // namespace padyn
