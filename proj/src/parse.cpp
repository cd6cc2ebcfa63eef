#include "padyn/parse.hpp"

#include <cctype>

#include "padyn/arith.hpp"
#include "padyn/errors.hpp"

namespace padyn {

namespace {

using Kind = Expr::Kind;

ExprPtr node(Kind k, ExprPtr l = nullptr, ExprPtr r = nullptr) {
    auto e = std::make_shared<Expr>();
    e->kind = k;
    e->lhs = std::move(l);
    e->rhs = std::move(r);
    return e;
}

ExprPtr number(const mpq_class& q) {
    auto e = std::make_shared<Expr>();
    e->kind = Kind::Number;
    e->number = q;
    return e;
}

class Parser {
   public:
    explicit Parser(const std::string& s) : s_(s) {}

    ExprPtr parse() {
        auto e = expr();
        skip();
        if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
        return e;
    }

   private:
    [[noreturn]] void fail(const std::string& msg) const {
        throw Error(ErrorKind::ParseError, msg + " at column " + std::to_string(pos_ + 1) + " in \"" + s_ + "\"");
    }
    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    char peek() {
        skip();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }
    bool accept(char c) {
        if (peek() != c) return false;
        ++pos_;
        return true;
    }
    void expect(char c) {
        if (!accept(c)) fail(std::string("expected '") + c + "'");
    }

    mpz_class integer() {
        skip();
        size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (start == pos_) fail("expected an integer");
        return mpz_class(s_.substr(start, pos_ - start));
    }

    std::string name() {
        size_t start = pos_;
        while (pos_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        return s_.substr(start, pos_ - start);
    }

    ExprPtr expr() {
        ExprPtr acc;
        if (accept('-'))
            acc = node(Kind::Neg, term());
        else {
            accept('+');
            acc = term();
        }
        for (;;) {
            if (accept('+'))
                acc = node(Kind::Add, acc, term());
            else if (accept('-'))
                acc = node(Kind::Sub, acc, term());
            else
                return acc;
        }
    }

    bool starts_atom() {
        char c = peek();
        return std::isdigit(static_cast<unsigned char>(c)) || std::isalpha(static_cast<unsigned char>(c)) || c == '(';
    }

    ExprPtr term() {
        ExprPtr acc = power();
        for (;;) {
            if (accept('*'))
                acc = node(Kind::Mul, acc, power());
            else if (accept('/'))
                acc = node(Kind::Div, acc, power());
            else if (starts_atom())
                acc = node(Kind::Mul, acc, power());
            else
                return acc;
        }
    }

    ExprPtr power() {
        ExprPtr base = atom();
        if (!accept('^')) return base;
        bool neg = false;
        bool paren = accept('(');
        if (accept('-')) neg = true;
        mpz_class n = integer();
        if (paren) expect(')');
        if (!n.fits_slong_p()) fail("exponent too large");
        auto e = std::make_shared<Expr>();
        e->kind = Kind::Pow;
        e->lhs = base;
        e->exponent = neg ? -n.get_si() : n.get_si();
        return e;
    }

    ExprPtr atom() {
        char c = peek();
        if (std::isdigit(static_cast<unsigned char>(c))) return number(mpq_class(integer()));
        if (accept('(')) {
            auto e = expr();
            expect(')');
            return e;
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::string id = name();
            if (id == "x" || id == "X") return node(Kind::Var);
            if (id == "c") return node(Kind::Param);
            if (id == "i") return node(Kind::Imag);
            if (id == "pi") return node(Kind::Pi);
            if (id == "t") return node(Kind::Gen);
            if (id == "sqrt") {
                expect('(');
                bool neg = accept('-');
                mpq_class q(integer());
                if (accept('/')) q /= mpq_class(integer());
                expect(')');
                q.canonicalize();
                auto e = std::make_shared<Expr>();
                e->kind = Kind::Sqrt;
                e->number = neg ? mpq_class(-q) : q;
                return e;
            }
            fail("unknown name '" + id + "'");
        }
        fail(c == '\0' ? "unexpected end of input" : "unexpected '" + std::string(1, c) + "'");
    }

    const std::string& s_;
    size_t pos_ = 0;
};

// Generic evaluation. The policy supplies leaves, ring operations and
// division (which may reject non-constant divisors).
template <class V, class Policy>
V evaluate(const Expr& e, Policy& P) {
    switch (e.kind) {
        case Kind::Add: return evaluate<V>(*e.lhs, P) + evaluate<V>(*e.rhs, P);
        case Kind::Sub: return evaluate<V>(*e.lhs, P) - evaluate<V>(*e.rhs, P);
        case Kind::Mul: return evaluate<V>(*e.lhs, P) * evaluate<V>(*e.rhs, P);
        case Kind::Neg: return P.zero() - evaluate<V>(*e.lhs, P);
        case Kind::Div: return P.divide(evaluate<V>(*e.lhs, P), evaluate<V>(*e.rhs, P));
        case Kind::Pow: {
            if constexpr (requires { P.exact_power(e); })
                if (auto v = P.exact_power(e)) return *v;
            V base = evaluate<V>(*e.lhs, P);
            V acc = P.one();
            for (long i = 0; i < std::abs(e.exponent); ++i) acc = acc * base;
            return e.exponent < 0 ? P.divide(P.one(), acc) : acc;
        }
        default: return P.leaf(e);
    }
}

[[noreturn]] void reject(const std::string& what) { throw Error(ErrorKind::ParseError, what); }

struct QuadPolyPolicy {
    using V = Poly<QuadElement>;
    std::optional<QuadElement> c;
    V zero() { return V(); }
    V one() { return V(QuadElement(1)); }
    V divide(const V& a, const V& b) {
        if (b.degree() != 0) reject("division by a non-constant");
        return a.scaled(b[0].inverse());
    }
    V leaf(const Expr& e) {
        switch (e.kind) {
            case Kind::Number: return V(QuadElement(e.number));
            case Kind::Var: return V::x();
            case Kind::Param:
                if (!c) reject("symbolic c needs a value here");
                return V(*c);
            case Kind::Sqrt: return V(quad_sqrt_of_rational(e.number));
            case Kind::Imag: return V(QuadElement::sqrt_delta(-1));
            default: reject("pi and t are only meaningful for p-adic elements");
        }
    }
};

struct SymbolicPolicy {
    using Q = Poly<mpq_class>;
    using V = SymbolicPoly;
    V zero() { return V(); }
    V one() { return V(Q(mpq_class(1))); }
    V divide(const V& a, const V& b) {
        if (b.degree() != 0 || b[0].degree() != 0) reject("division by a non-constant");
        return a.scaled(Q(mpq_class(1) / b[0][0]));
    }
    V leaf(const Expr& e) {
        switch (e.kind) {
            case Kind::Number: return V(Q(e.number));
            case Kind::Var: return V::x();
            case Kind::Param: return V(Q::x());
            case Kind::Sqrt: {
                auto r = exact_sqrt(e.number);
                if (!r) reject("irrational sqrt in a rational-coefficient polynomial");
                return V(Q(*r));
            }
            default: reject("only x, c and rationals are allowed with a symbolic c");
        }
    }
};

struct PadicPolicy {
    const FieldDescriptor& F;
    PadicElement zero() { return PadicElement(F); }
    PadicElement one() { return PadicElement::from_integer(F, 1); }
    PadicElement divide(const PadicElement& a, const PadicElement& b) { return a * inv(b); }
    // pi^k is exact for every k, so avoid the precision loss of inverting pi^|k|.
    std::optional<PadicElement> exact_power(const Expr& e) {
        if (e.lhs->kind != Kind::Pi) return std::nullopt;
        const int k = static_cast<int>(e.exponent);
        return PadicElement::from_digits(F, {F.residue_field().one()}, k, k + F.precision());
    }
    PadicElement root(const mpq_class& q) {
        auto r = sqrt(PadicElement::from_rational(F, q));
        if (!r) {
            std::ostringstream os;
            os << "sqrt(" << q << ") does not exist in " << F.describe();
            throw Error(ErrorKind::InvalidArgument, os.str());
        }
        return *r;
    }
    PadicElement leaf(const Expr& e) {
        switch (e.kind) {
            case Kind::Number: return PadicElement::from_rational(F, e.number);
            case Kind::Sqrt: return root(e.number);
            case Kind::Imag: return root(-1);
            case Kind::Pi: return PadicElement::uniformizer(F);
            case Kind::Gen: return PadicElement::unram_generator(F);
            default: reject("x and c are not allowed in a p-adic constant");
        }
    }
};

}  // namespace

ExprPtr parse_expression(const std::string& text) { return Parser(text).parse(); }

QuadElement quad_sqrt_of_rational(const mpq_class& q) {
    if (q == 0) return QuadElement(0);
    // sqrt(a/b) = sqrt(a*b)/b, then pull square factors out of a*b.
    mpz_class n = q.get_num() * q.get_den();
    mpz_class denom = q.get_den();
    long sign = n < 0 ? -1 : 1;
    mpz_class m = abs(n);
    mpz_class outside = 1, rest = 1;
    for (mpz_class d = 2; d * d <= m; ++d) {
        while (m % (d * d) == 0) {
            m /= d * d;
            outside *= d;
        }
        if (m % d == 0) {
            m /= d;
            rest *= d;
        }
    }
    rest *= m;
    mpq_class coeff(outside, denom);
    coeff.canonicalize();
    if (sign > 0 && rest == 1) return QuadElement(coeff);
    if (!rest.fits_slong_p()) throw Error(ErrorKind::ParseError, "radicand too large");
    return QuadElement(0, coeff, sign * rest.get_si());
}

Poly<QuadElement> parse_quad_poly(const std::string& text, const std::optional<QuadElement>& c_value) {
    QuadPolyPolicy P{c_value};
    return evaluate<Poly<QuadElement>>(*parse_expression(text), P);
}

SymbolicPoly parse_symbolic_poly(const std::string& text) {
    SymbolicPolicy P;
    return evaluate<SymbolicPoly>(*parse_expression(text), P);
}

QuadElement parse_quad(const std::string& text) {
    auto p = parse_quad_poly(text);
    if (p.degree() > 0) throw Error(ErrorKind::ParseError, "expected a constant, got a polynomial: " + text);
    return p[0];
}

PadicElement parse_padic(const FieldDescriptor& F, const std::string& text) {
    std::string body = text;
    std::optional<int> prec;
    auto mod = text.rfind("(mod");
    if (mod != std::string::npos) {
        auto caret = text.find("pi^", mod);
        auto close = text.find(')', mod);
        if (caret == std::string::npos || close == std::string::npos || close < caret)
            throw Error(ErrorKind::ParseError, "malformed precision suffix in \"" + text + "\"");
        try {
            prec = std::stoi(text.substr(caret + 3, close - caret - 3));
        } catch (const std::exception&) {
            throw Error(ErrorKind::ParseError, "malformed precision suffix in \"" + text + "\"");
        }
        body = text.substr(0, mod);
    }
    PadicPolicy P{F};
    PadicElement v = evaluate<PadicElement>(*parse_expression(body), P);
    return prec ? v.reduced_precision(*prec) : v;
}

}  // namespace padyn
