#include "padyn/padic.hpp"

#include <algorithm>
#include <sstream>

#include "padyn/arith.hpp"
#include "padyn/errors.hpp"

namespace padyn {

using Body = std::vector<mpz_class>;

namespace detail {

struct FieldData {
    long p = 2;
    int f = 1;
    int e = 1;
    int N = kDefaultPrecision;
    std::vector<long> unram;                  // monic, f + 1 entries
    std::vector<std::vector<long>> eis_input;  // as supplied (or pi - p)
    std::vector<Body> eis;                     // e + 1 W-elements, each f coords
    int K = 0;                                 // storage exponent
    mpz_class pK;                              // p^K
    ResidueField residue{2, {1, 1}};
    Body p_over_pi;     // p / pi, integral
    Body pi_e_over_p;   // pi^e / p, a unit
    int capacity() const { return e * K; }
};

}  // namespace detail

namespace {

using detail::FieldData;

void reduce(Body& a, const FieldData& d) {
    for (auto& c : a) {
        c %= d.pK;
        if (c < 0) c += d.pK;
    }
}

// W-level arithmetic on spans of f coordinates. Results are not reduced.
Body w_mul(const mpz_class* a, const mpz_class* b, const FieldData& d) {
    const int f = d.f;
    if (f == 1) return {a[0] * b[0]};
    Body prod(2 * f - 1);
    for (int i = 0; i < f; ++i) {
        if (a[i] == 0) continue;
        for (int j = 0; j < f; ++j) prod[i + j] += a[i] * b[j];
    }
    for (int k = 2 * f - 2; k >= f; --k) {
        if (prod[k] == 0) continue;
        mpz_class c = prod[k];
        prod[k] = 0;
        for (int i = 0; i < f; ++i)
            if (d.unram[i] != 0) prod[k - f + i] -= c * d.unram[i];
    }
    prod.resize(f);
    for (auto& c : prod) c %= d.pK;
    return prod;
}

Body body_zero(const FieldData& d) { return Body(static_cast<size_t>(d.e * d.f)); }

Body body_one(const FieldData& d) {
    Body b = body_zero(d);
    b[0] = 1;
    return b;
}

Body body_add(const Body& a, const Body& b, const FieldData& d) {
    Body r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    reduce(r, d);
    return r;
}

Body body_sub(const Body& a, const Body& b, const FieldData& d) {
    Body r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    reduce(r, d);
    return r;
}

Body body_mul(const Body& a, const Body& b, const FieldData& d) {
    const int e = d.e, f = d.f;
    if (e == 1) {
        Body r = w_mul(a.data(), b.data(), d);
        reduce(r, d);
        return r;
    }
    std::vector<Body> prod(2 * e - 1, Body(f));
    for (int j1 = 0; j1 < e; ++j1)
        for (int j2 = 0; j2 < e; ++j2) {
            Body w = w_mul(&a[j1 * f], &b[j2 * f], d);
            for (int i = 0; i < f; ++i) prod[j1 + j2][i] += w[i];
        }
    for (int k = 2 * e - 2; k >= e; --k) {
        Body top = prod[k];
        for (auto& c : top) c %= d.pK;
        for (int i = 0; i < e; ++i) {
            Body w = w_mul(top.data(), d.eis[i].data(), d);
            for (int m = 0; m < f; ++m) prod[k - e + i][m] -= w[m];
        }
    }
    Body r(static_cast<size_t>(e * f));
    for (int j = 0; j < e; ++j)
        for (int i = 0; i < f; ++i) r[j * f + i] = prod[j][i];
    reduce(r, d);
    return r;
}

Body body_mul_pi(const Body& a, const FieldData& d) {
    const int e = d.e, f = d.f;
    Body r = body_zero(d);
    for (int j = 0; j + 1 < e; ++j)
        for (int i = 0; i < f; ++i) r[(j + 1) * f + i] = a[j * f + i];
    // pi^e = -(c_0 + c_1 pi + ... + c_{e-1} pi^{e-1})
    const mpz_class* top = &a[(e - 1) * f];
    for (int j = 0; j < e; ++j) {
        Body w = w_mul(top, d.eis[j].data(), d);
        for (int i = 0; i < f; ++i) r[j * f + i] -= w[i];
    }
    reduce(r, d);
    return r;
}

Body body_mul_pi_pow(Body a, long k, const FieldData& d) {
    for (long i = 0; i < k; ++i) a = body_mul_pi(a, d);
    return a;
}

long w_vp(const mpz_class* w, const FieldData& d) {
    long best = d.K;
    for (int i = 0; i < d.f; ++i) {
        if (w[i] == 0) continue;
        best = std::min(best, *vp(w[i], d.p));
    }
    return best;
}

// Valuation of a body, capped at the storage capacity.
long body_valuation(const Body& a, const FieldData& d) {
    long best = d.capacity();
    for (int j = 0; j < d.e; ++j) {
        long v = w_vp(&a[j * d.f], d);
        if (v >= d.K) continue;
        best = std::min(best, static_cast<long>(d.e) * v + j);
    }
    return best;
}

// a / pi for a body with valuation >= 1. The top p-digit of the constant
// coordinate is lost, which lowers the known precision by one.
Body body_div_pi(const Body& a, const FieldData& d) {
    const int e = d.e, f = d.f;
    Body r = body_zero(d);
    for (int j = 1; j < e; ++j)
        for (int i = 0; i < f; ++i) r[(j - 1) * f + i] = a[j * f + i];
    Body w0(f);
    for (int i = 0; i < f; ++i) {
        if (!mpz_divisible_ui_p(a[i].get_mpz_t(), static_cast<unsigned long>(d.p)))
            throw Error(ErrorKind::InvalidArgument, "internal: division by pi of a unit");
        w0[i] = a[i] / d.p;
    }
    Body lifted = body_zero(d);
    for (int i = 0; i < f; ++i) lifted[i] = w0[i];
    Body term = body_mul(lifted, d.p_over_pi, d);
    for (size_t i = 0; i < r.size(); ++i) r[i] += term[i];
    reduce(r, d);
    return r;
}

Body body_div_pi_pow(Body a, long k, const FieldData& d) {
    for (long i = 0; i < k; ++i) a = body_div_pi(a, d);
    return a;
}

ResidueElement body_residue(const Body& a, const FieldData& d) {
    ResidueElement r;
    r.coeffs.resize(d.f);
    for (int i = 0; i < d.f; ++i) {
        mpz_class c = a[i] % d.p;
        if (c < 0) c += d.p;
        r.coeffs[i] = c.get_si();
    }
    return r;
}

Body body_lift(const ResidueElement& r, const FieldData& d) {
    Body b = body_zero(d);
    for (int i = 0; i < d.f; ++i) b[i] = r.coeffs[i];
    return b;
}

// Inverse of a unit body to full storage precision (Newton on y -> y(2 - uy)).
Body body_unit_inverse(const Body& u, const FieldData& d) {
    ResidueElement r = body_residue(u, d);
    Body y = body_lift(d.residue.inv(r), d);
    Body two = body_zero(d);
    two[0] = 2;
    for (int known = 1; known < d.capacity(); known *= 2) {
        Body uy = body_mul(u, y, d);
        y = body_mul(y, body_sub(two, uy, d), d);
    }
    // One extra step settles any rounding at the top digit.
    y = body_mul(y, body_sub(two, body_mul(u, y, d), d), d);
    return y;
}

// Inverse in W (f coordinates) of a W-unit.
Body w_unit_inverse(const Body& w, const FieldData& d) {
    Body b = body_zero(d);
    for (int i = 0; i < d.f; ++i) b[i] = w[i];
    // Work with e = 1 semantics: a pure W element times a W element stays in
    // the j = 0 slot, so the body inverse is again a pure W element.
    Body inv = body_unit_inverse(b, d);
    return Body(inv.begin(), inv.begin() + d.f);
}

int ceil_div(int a, int b) { return (a + b - 1) / b; }

}  // namespace

// ----------------------------------------------------------------------------
// FieldDescriptor

long FieldDescriptor::p() const { return data_->p; }
int FieldDescriptor::f() const { return data_->f; }
int FieldDescriptor::e() const { return data_->e; }
int FieldDescriptor::precision() const { return data_->N; }
const std::vector<long>& FieldDescriptor::unram_poly() const { return data_->unram; }
const std::vector<std::vector<long>>& FieldDescriptor::eisenstein_poly() const { return data_->eis_input; }
const ResidueField& FieldDescriptor::residue_field() const { return data_->residue; }

FieldDescriptor FieldDescriptor::with_precision(int N) const {
    std::optional<std::vector<std::vector<long>>> eis;
    if (e() > 1) eis = eisenstein_poly();
    return make_field(p(), f(), e(), eis, N, unram_poly());
}

bool FieldDescriptor::same_as(const FieldDescriptor& other) const {
    if (data_ == other.data_) return true;
    return p() == other.p() && f() == other.f() && e() == other.e() && precision() == other.precision() &&
           unram_poly() == other.unram_poly() && eisenstein_poly() == other.eisenstein_poly();
}

nlohmann::json FieldDescriptor::to_json() const {
    nlohmann::json eis = nlohmann::json::array();
    if (e() > 1)
        for (const auto& c : eisenstein_poly()) eis.push_back(c);
    return {{"p", p()}, {"f", f()}, {"e", e()}, {"unram_poly", unram_poly()}, {"eisenstein_poly", eis},
            {"N", precision()}};
}

FieldDescriptor FieldDescriptor::from_json(const nlohmann::json& j) {
    try {
        long p = j.at("p").get<long>();
        int f = j.at("f").get<int>();
        int e = j.value("e", 1);
        int N = j.value("N", kDefaultPrecision);
        std::optional<std::vector<long>> unram;
        if (j.contains("unram_poly") && !j.at("unram_poly").empty())
            unram = j.at("unram_poly").get<std::vector<long>>();
        std::optional<std::vector<std::vector<long>>> eis;
        if (e > 1) {
            std::vector<std::vector<long>> coeffs;
            for (const auto& c : j.at("eisenstein_poly")) {
                if (c.is_number())
                    coeffs.push_back({c.get<long>()});
                else
                    coeffs.push_back(c.get<std::vector<long>>());
            }
            eis = coeffs;
        }
        return make_field(p, f, e, eis, N, unram);
    } catch (const nlohmann::json::exception& ex) {
        throw Error(ErrorKind::ParseError, std::string("field descriptor: ") + ex.what());
    }
}

std::string FieldDescriptor::describe() const {
    std::ostringstream os;
    os << "Q_" << p();
    if (f() > 1) os << " unramified degree " << f();
    if (e() > 1) os << " ramified e=" << e();
    os << " (N=" << precision() << ")";
    return os.str();
}

FieldDescriptor make_field(long p, int f, int e, std::optional<std::vector<std::vector<long>>> eisenstein, int N,
                           std::optional<std::vector<long>> unram) {
    if (!is_prime(p)) throw Error(ErrorKind::NotPrime, std::to_string(p) + " is not prime");
    if (f < 1 || e < 1 || N < 1) throw Error(ErrorKind::InvalidArgument, "f, e and N must be >= 1");
    if ((e > 1) != eisenstein.has_value())
        throw Error(ErrorKind::InvalidArgument, "an Eisenstein polynomial is required exactly when e > 1");

    auto d = std::make_shared<FieldData>();
    d->p = p;
    d->f = f;
    d->e = e;
    d->N = N;
    if (unram) {
        auto g = *unram;
        if (static_cast<int>(g.size()) != f + 1 || g.back() != 1)
            throw Error(ErrorKind::InvalidArgument, "unram_poly must be monic of degree f");
        if (!fp_poly::is_irreducible(g, p))
            throw Error(ErrorKind::NotIrreducible, "unram_poly is reducible mod " + std::to_string(p));
        d->unram = g;
    } else {
        d->unram = fp_poly::smallest_irreducible(p, f);
    }
    d->residue = ResidueField(p, d->unram);
    d->K = ceil_div(N, e) + 2;
    d->pK = pow_ui(p, static_cast<unsigned long>(d->K));

    if (e == 1) {
        d->eis_input = {{-p}, {1}};
    } else {
        auto eis = *eisenstein;
        if (static_cast<int>(eis.size()) != e + 1)
            throw Error(ErrorKind::NotEisenstein, "Eisenstein polynomial must have degree e");
        for (auto& c : eis) {
            if (static_cast<int>(c.size()) > f)
                throw Error(ErrorKind::NotEisenstein, "coefficient has more than f coordinates");
            c.resize(f, 0);
        }
        std::vector<long> lead(f, 0);
        lead[0] = 1;
        if (eis.back() != lead) throw Error(ErrorKind::NotEisenstein, "Eisenstein polynomial must be monic");
        for (int i = 0; i < e; ++i)
            for (long c : eis[i])
                if (c % p != 0) throw Error(ErrorKind::NotEisenstein, "lower coefficients must be divisible by p");
        bool v0_is_one = false;
        for (long c : eis[0])
            if (c % (p * p) != 0) v0_is_one = true;
        if (!v0_is_one) throw Error(ErrorKind::NotEisenstein, "constant term must have valuation exactly 1");
        d->eis_input = eis;
    }
    d->eis.clear();
    for (const auto& c : d->eis_input) {
        Body w(f);
        for (int i = 0; i < f; ++i) w[i] = i < static_cast<int>(c.size()) ? mpz_class(c[i]) : mpz_class(0);
        for (auto& x : w) {
            x %= d->pK;
            if (x < 0) x += d->pK;
        }
        d->eis.push_back(w);
    }
    // For e == 1 the "body" is a single W element and pi = p.
    if (e == 1) {
        d->p_over_pi = body_one(*d);
        d->pi_e_over_p = body_one(*d);
    } else {
        // c_0 = p * u0;  p / pi = -u0^{-1} (pi^{e-1} + c_{e-1} pi^{e-2} + ... + c_1)
        Body u0(f);
        for (int i = 0; i < f; ++i) u0[i] = mpz_class(d->eis_input[0][i] / p);
        Body u0_inv = w_unit_inverse(u0, *d);
        Body s = body_zero(*d);
        for (int j = 0; j + 1 < e; ++j)
            for (int i = 0; i < f; ++i) s[j * f + i] = d->eis[j + 1][i];
        for (int i = 0; i < f; ++i) s[(e - 1) * f + i] = (i == 0) ? 1 : 0;
        Body u0_body = body_zero(*d);
        for (int i = 0; i < f; ++i) u0_body[i] = u0_inv[i];
        Body r = body_mul(s, u0_body, *d);
        for (auto& c : r) c = -c;
        reduce(r, *d);
        d->p_over_pi = r;
        // pi^e / p = -(c_0/p + (c_1/p) pi + ... + (c_{e-1}/p) pi^{e-1})
        Body q = body_zero(*d);
        for (int j = 0; j < e; ++j)
            for (int i = 0; i < f; ++i) q[j * f + i] = -mpz_class(d->eis_input[j][i] / p);
        reduce(q, *d);
        d->pi_e_over_p = q;
    }
    return FieldDescriptor(std::move(d));
}

// ----------------------------------------------------------------------------
// PadicElement

PadicElement::PadicElement(const FieldDescriptor& field)
    : field_(field), body_(body_zero(field.data())), shift_(0), prec_(field.precision()) {}

PadicElement::PadicElement(FieldDescriptor field, std::vector<mpz_class> body, int shift, int prec)
    : field_(std::move(field)), body_(std::move(body)), shift_(shift), prec_(prec) {}

PadicElement PadicElement::make(const FieldDescriptor& field, std::vector<mpz_class> body, int shift, int prec) {
    const int N = field.precision();
    if (shift < 0) {
        // Pull factors of pi out of the body so integral values sit at shift 0.
        const auto& d = field.data();
        long k = std::min<long>(body_valuation(body, d), -shift);
        if (k > 0) {
            body = body_div_pi_pow(std::move(body), k, d);
            shift += static_cast<int>(k);
        }
    }
    prec = std::min({prec, N, shift + N});
    return PadicElement(field, std::move(body), shift, prec);
}

PadicElement PadicElement::from_integer(const FieldDescriptor& field, const mpz_class& n) {
    const auto& d = field.data();
    Body b = body_zero(d);
    b[0] = n;
    reduce(b, d);
    return make(field, std::move(b), 0, field.precision());
}

PadicElement PadicElement::from_rational(const FieldDescriptor& field, const mpq_class& q) {
    if (q == 0) return PadicElement(field);
    const auto& d = field.data();
    const long p = d.p;
    long v = *vp(q, p);
    mpz_class num = q.get_num(), den = q.get_den();
    while (v > 0 && mpz_divisible_ui_p(num.get_mpz_t(), p)) num /= p;
    while (v < 0 && mpz_divisible_ui_p(den.get_mpz_t(), p)) den /= p;
    mpz_class den_inv;
    mpz_invert(den_inv.get_mpz_t(), den.get_mpz_t(), d.pK.get_mpz_t());
    Body unit = body_zero(d);
    unit[0] = num * den_inv;
    reduce(unit, d);
    if (v >= 0) {
        Body pv = body_zero(d);
        pv[0] = pow_ui(p, static_cast<unsigned long>(v));
        reduce(pv, d);
        return make(field, body_mul(unit, pv, d), 0, field.precision());
    }
    // p^{-k} = pi^{-ek} (pi^e / p)^k
    Body factor = body_one(d);
    for (long i = 0; i < -v; ++i) factor = body_mul(factor, d.pi_e_over_p, d);
    int shift = static_cast<int>(d.e * v);
    return make(field, body_mul(unit, factor, d), shift, shift + field.precision());
}

PadicElement PadicElement::from_residue(const FieldDescriptor& field, const ResidueElement& r) {
    return make(field, body_lift(r, field.data()), 0, field.precision());
}

PadicElement PadicElement::from_digits(const FieldDescriptor& field, const std::vector<ResidueElement>& digits,
                                       int shift, int prec) {
    const auto& d = field.data();
    Body acc = body_zero(d);
    for (auto it = digits.rbegin(); it != digits.rend(); ++it) {
        acc = body_mul_pi(acc, d);
        acc = body_add(acc, body_lift(*it, d), d);
    }
    return make(field, std::move(acc), shift, prec);
}

PadicElement PadicElement::from_coordinates(const FieldDescriptor& field, std::vector<mpz_class> coords, int prec) {
    const auto& d = field.data();
    if (coords.size() != static_cast<size_t>(d.e * d.f))
        throw Error(ErrorKind::InvalidArgument, "coordinate vector has wrong length");
    reduce(coords, d);
    return make(field, std::move(coords), 0, prec);
}

PadicElement PadicElement::uniformizer(const FieldDescriptor& field) {
    const auto& d = field.data();
    return make(field, body_mul_pi(body_one(d), d), 0, field.precision());
}

PadicElement PadicElement::unram_generator(const FieldDescriptor& field) {
    const auto& d = field.data();
    Body b = body_zero(d);
    if (d.f > 1)
        b[1] = 1;
    else
        b[0] = -d.unram[0];
    reduce(b, d);
    return make(field, std::move(b), 0, field.precision());
}

void PadicElement::check_same_field(const PadicElement& other) const {
    if (!field_.same_as(other.field_)) throw Error(ErrorKind::FieldMismatch, "operands live in different fields");
}

std::optional<long> PadicElement::valuation() const {
    long v = shift_ + body_valuation(body_, field_.data());
    if (v >= prec_) return std::nullopt;
    return v;
}

bool PadicElement::is_integral() const {
    auto v = valuation();
    return !v || *v >= 0;
}

bool PadicElement::is_unit() const {
    auto v = valuation();
    return v && *v == 0;
}

std::vector<mpz_class> PadicElement::unit_body(long v) const {
    const auto& d = field_.data();
    long k = v - shift_;
    return body_div_pi_pow(body_, k, d);
}

std::vector<mpz_class> PadicElement::integral_body() const {
    const auto& d = field_.data();
    if (shift_ >= 0) return body_mul_pi_pow(body_, shift_, d);
    auto v = valuation();
    if (v && *v < 0) throw Error(ErrorKind::NotIntegral, "element has negative valuation");
    if (!v) {
        // Zero to known precision; prec may still be positive.
        return body_zero(d);
    }
    return body_div_pi_pow(body_, -shift_, d);
}

ResidueElement PadicElement::residue() const {
    if (!is_integral()) throw Error(ErrorKind::NotIntegral, "residue of a non-integral element");
    if (prec_ < 1) throw Error(ErrorKind::PrecisionExhausted, "residue needs precision >= 1");
    return body_residue(integral_body(), field_.data());
}

DigitExpansion PadicElement::expansion() const {
    const auto& d = field_.data();
    DigitExpansion out;
    out.prec = prec_;
    auto v = valuation();
    if (!v) {
        out.shift = prec_;
        return out;
    }
    out.shift = static_cast<int>(*v);
    Body u = unit_body(*v);
    for (int i = 0; i < prec_ - *v; ++i) {
        ResidueElement digit = body_residue(u, d);
        out.digits.push_back(digit);
        if (i + 1 == prec_ - *v) break;
        u = body_div_pi(body_sub(u, body_lift(digit, d), d), d);
    }
    return out;
}

std::vector<ResidueElement> PadicElement::integral_digits() const {
    const auto& d = field_.data();
    if (!is_integral()) throw Error(ErrorKind::NotIntegral, "digits of a non-integral element");
    Body u = integral_body();
    std::vector<ResidueElement> out;
    for (int i = 0; i < prec_; ++i) {
        ResidueElement digit = body_residue(u, d);
        out.push_back(digit);
        if (i + 1 == prec_) break;
        u = body_div_pi(body_sub(u, body_lift(digit, d), d), d);
    }
    return out;
}

std::vector<mpz_class> PadicElement::coordinates() const {
    if (!is_integral()) throw Error(ErrorKind::NotIntegral, "coordinates of a non-integral element");
    return integral_body();
}

PadicElement PadicElement::reduced_precision(int k) const {
    PadicElement r = *this;
    r.prec_ = std::min(prec_, k);
    return r;
}

PadicElement PadicElement::lifted() const {
    return make(field_, body_, shift_, field_.precision());
}

PadicElement PadicElement::operator-() const {
    const auto& d = field_.data();
    return PadicElement(field_, body_sub(body_zero(d), body_, d), shift_, prec_);
}

PadicElement operator+(const PadicElement& a, const PadicElement& b) {
    a.check_same_field(b);
    const auto& d = a.field_.data();
    int s = std::min(a.shift_, b.shift_);
    int prec = std::min(a.prec_, b.prec_);
    auto aligned = [&](const PadicElement& x) {
        long k = x.shift_ - s;
        if (k >= d.capacity()) return body_zero(d);
        return body_mul_pi_pow(x.body_, k, d);
    };
    return PadicElement::make(a.field_, body_add(aligned(a), aligned(b), d), s, prec);
}

PadicElement operator-(const PadicElement& a, const PadicElement& b) { return a + (-b); }

PadicElement operator*(const PadicElement& a, const PadicElement& b) {
    a.check_same_field(b);
    const auto& d = a.field_.data();
    long va = a.valuation().value_or(a.prec_);
    long vb = b.valuation().value_or(b.prec_);
    long prec = std::min(a.prec_ + vb, b.prec_ + va);
    int s = a.shift_ + b.shift_;
    prec = std::min<long>(prec, s + d.capacity());
    return PadicElement::make(a.field_, body_mul(a.body_, b.body_, d), s, static_cast<int>(prec));
}

PadicElement PadicElement::pow(unsigned long n) const {
    PadicElement result = PadicElement::from_integer(field_, 1);
    PadicElement base = *this;
    while (n > 0) {
        if (n & 1) result = result * base;
        n >>= 1;
        if (n) base = base * base;
    }
    return result;
}

bool operator==(const PadicElement& a, const PadicElement& b) { return (a - b).is_zero(); }

PadicElement inv(const PadicElement& a) {
    auto v = a.valuation();
    if (!v)
        throw Error(ErrorKind::NotInvertibleAtPrecision,
                    "value is zero modulo pi^" + std::to_string(a.precision()));
    const auto& d = a.field_.data();
    Body u = a.unit_body(*v);
    Body y = body_unit_inverse(u, d);
    long rel = a.prec_ - *v;
    int shift = static_cast<int>(-*v);
    return PadicElement::make(a.field_, std::move(y), shift, static_cast<int>(shift + rel));
}

std::string PadicElement::to_string() const {
    const auto& rf = field_.residue_field();
    DigitExpansion ex = expansion();
    std::ostringstream os;
    bool first = true;
    for (size_t i = 0; i < ex.digits.size(); ++i) {
        if (ex.digits[i].is_zero()) continue;
        int power = ex.shift + static_cast<int>(i);
        if (!first) os << " + ";
        first = false;
        os << rf.to_string(ex.digits[i]);
        if (power == 1)
            os << "*pi";
        else if (power != 0)
            os << "*pi^" << power;
    }
    if (first) os << "0";
    os << " (mod pi^" << prec_ << ")";
    return os.str();
}

// ----------------------------------------------------------------------------
// Root finding

std::pair<PadicElement, PadicElement> eval_with_derivative(std::span<const PadicElement> g, const PadicElement& x) {
    if (g.empty()) return {PadicElement(x.field()), PadicElement(x.field())};
    PadicElement value = g.back();
    PadicElement deriv(x.field());
    for (size_t i = g.size() - 1; i-- > 0;) {
        deriv = deriv * x + value;
        value = value * x + g[i];
    }
    return {value, deriv};
}

PadicElement newton_lift(const std::function<std::pair<PadicElement, PadicElement>(const PadicElement&)>& eval,
                         const PadicElement& x0, int target_prec) {
    const FieldDescriptor& F = x0.field();
    const int N = F.precision();
    if (target_prec > N)
        throw Error(ErrorKind::PrecisionExhausted,
                    "target precision " + std::to_string(target_prec) + " exceeds field precision " +
                        std::to_string(N));
    PadicElement x = x0.lifted();
    auto [g0, dg0] = eval(x);
    auto vdg = dg0.valuation();
    auto vg = g0.valuation();
    if (!vdg) throw Error(ErrorKind::HenselConditionFailed, "derivative vanishes at the starting point");
    if (vg && *vg <= 2 * *vdg)
        throw Error(ErrorKind::HenselConditionFailed,
                    "v(g(x0)) = " + std::to_string(*vg) + " is not > 2 v(g'(x0)) = " + std::to_string(2 * *vdg));
    const long delta = *vdg;
    if (target_prec > N - delta)
        throw Error(ErrorKind::PrecisionExhausted,
                    "root is only determined to precision " + std::to_string(N - delta));
    for (int iter = 0; iter < 2 * N + 8; ++iter) {
        auto [g, dg] = eval(x);
        if (g.is_zero()) break;
        x = (x - g * inv(dg)).lifted();
    }
    auto [gr, dgr] = eval(x);
    if (!gr.is_zero()) throw Error(ErrorKind::PrecisionExhausted, "Newton iteration did not converge");
    return x.reduced_precision(target_prec);
}

PadicElement hensel_lift(std::span<const PadicElement> g, const PadicElement& x0, int target_prec) {
    return newton_lift([&](const PadicElement& x) { return eval_with_derivative(g, x); }, x0, target_prec);
}

bool canonical_less(const PadicElement& a, const PadicElement& b) {
    const auto& rf = a.field().residue_field();
    auto key = [&](const PadicElement& x) {
        DigitExpansion ex = x.expansion();
        std::vector<long> k;
        k.push_back(ex.shift);
        std::vector<std::uint64_t> head, rest;
        for (size_t i = 0; i < ex.digits.size(); ++i) (i < 3 ? head : rest).push_back(rf.index(ex.digits[i]));
        std::reverse(head.begin(), head.end());
        for (auto h : head) k.push_back(static_cast<long>(h));
        for (auto r : rest) k.push_back(static_cast<long>(r));
        return k;
    };
    return key(a) < key(b);
}

std::optional<PadicElement> sqrt(const PadicElement& a) {
    const FieldDescriptor& F = a.field();
    const auto& d = F.data();
    auto v = a.valuation();
    if (!v) return PadicElement(F).reduced_precision(a.precision() / 2);
    if (*v % 2 != 0) return std::nullopt;
    const long half = *v / 2;
    // Unit part u = pi^{-v} a.
    PadicElement pi_pow = PadicElement::uniformizer(F).pow(static_cast<unsigned long>(std::abs(half)));
    PadicElement unit = a * inv(pi_pow.pow(2));
    if (*v < 0) unit = a * pi_pow.pow(2);
    const int rel = a.precision() - static_cast<int>(*v);
    unit = unit.reduced_precision(rel);

    const ResidueField& rf = F.residue_field();
    PadicElement x0(F);
    if (F.p() != 2) {
        ResidueElement r;
        if (!rf.sqrt(unit.residue(), r)) return std::nullopt;
        x0 = PadicElement::from_residue(F, r);
    } else {
        // Squares of units are decided modulo pi^{2e+1}; candidates x0 run
        // over units mod pi^{e+1}.
        const int need = 2 * d.e + 1;
        if (rel < need)
            throw Error(ErrorKind::PrecisionTooLowToDecide,
                        "need relative precision " + std::to_string(need) + " to decide squareness at p = 2");
        const std::uint64_t q = rf.size();
        std::uint64_t total = 1;
        for (int i = 0; i <= d.e; ++i) total *= q;
        bool found = false;
        for (std::uint64_t code = 0; code < total && !found; ++code) {
            std::vector<ResidueElement> digits;
            std::uint64_t c = code;
            for (int i = 0; i <= d.e; ++i) {
                digits.push_back(rf.element(c % q));
                c /= q;
            }
            if (digits[0].is_zero()) continue;
            PadicElement cand = PadicElement::from_digits(F, digits, 0, F.precision());
            PadicElement diff = unit - cand * cand;
            auto vd = diff.valuation();
            if (!vd || *vd >= need) {
                x0 = cand;
                found = true;
            }
        }
        if (!found) return std::nullopt;
    }
    PadicElement minus_unit = -unit;
    std::vector<PadicElement> g{minus_unit.lifted(), PadicElement(F), PadicElement::from_integer(F, 1)};
    long delta = F.p() == 2 ? d.e : 0;
    int target = static_cast<int>(std::min<long>(rel - delta, F.precision() - delta));
    PadicElement root = hensel_lift(g, x0, target);
    PadicElement scale = (half >= 0) ? pi_pow : inv(pi_pow);
    PadicElement r = root * scale;
    PadicElement neg = -r;
    return canonical_less(neg, r) ? neg : r;
}

}  // namespace padyn
