#include "padyn/dynamics.hpp"

#include <sstream>

#include "padyn/errors.hpp"
#include "padyn/functional_graph.hpp"
#include "padyn/parse.hpp"

namespace padyn {

// ----------------------------------------------------------------------------
// DynPoly

DynPoly::DynPoly(Poly<QuadElement> exact) {
    if (exact.degree() < 2)
        throw Error(ErrorKind::InvalidArgument, "a dynamical polynomial needs degree >= 2, got " + exact.to_string());
    degree_ = exact.degree();
    a0_rational_ = exact[0].is_rational();
    exact_ = std::move(exact);
}

DynPoly DynPoly::from_image(PadicPoly image, bool a0_rational) {
    while (!image.empty() && image.back().is_zero()) image.pop_back();
    if (image.size() < 3) throw Error(ErrorKind::InvalidArgument, "a dynamical polynomial needs degree >= 2");
    DynPoly out;
    out.degree_ = static_cast<int>(image.size()) - 1;
    out.a0_rational_ = a0_rational;
    out.image_ = std::move(image);
    return out;
}

DynPoly DynPoly::parse(const std::string& text, const std::optional<QuadElement>& c) {
    return DynPoly(parse_quad_poly(text, c));
}

const Poly<QuadElement>& DynPoly::exact() const {
    if (!exact_) throw Error(ErrorKind::InvalidArgument, "map has no exact coefficients");
    return *exact_;
}

long DynPoly::delta() const {
    if (!exact_) return 0;
    for (const auto& c : exact_->coeffs())
        if (!c.is_rational()) return c.delta();
    return 0;
}

bool DynPoly::constant_term_rational() const { return a0_rational_; }

const PadicPoly& DynPoly::image() const {
    if (!image_) throw Error(ErrorKind::InvalidArgument, "map is not attached to a p-adic field");
    return *image_;
}

const FieldDescriptor& DynPoly::field() const { return image().front().field(); }

DynPoly DynPoly::attach(const Embedding& emb) const {
    PadicPoly img;
    for (int i = 0; i <= degree_; ++i) {
        PadicElement a = emb.image(exact()[i]);
        if (!a.is_integral()) {
            std::ostringstream os;
            os << "coefficient " << exact()[i] << " of X^" << i << " has valuation " << *a.valuation() << " in "
               << emb.field().describe();
            throw Error(ErrorKind::NotIntegral, os.str());
        }
        img.push_back(a);
    }
    DynPoly out = *this;
    out.image_ = std::move(img);
    return out;
}

DynPoly DynPoly::attach(const FieldDescriptor& F) const {
    long d = delta();
    return attach(d == 0 ? Embedding::rational(F) : Embedding::make(F, d));
}

DynPoly DynPoly::over(const FieldDescriptor& F) const {
    if (image_ && field().same_as(F)) return *this;
    if (!exact_) throw Error(ErrorKind::FieldMismatch, "map is attached to another field");
    return attach(F);
}

PadicElement DynPoly::operator()(const PadicElement& x) const {
    const auto& g = image();
    PadicElement acc = g.back();
    for (size_t i = g.size() - 1; i-- > 0;) acc = acc * x + g[i];
    return acc;
}

std::string DynPoly::to_string() const {
    if (exact_) return exact_->to_string("X");
    std::ostringstream os;
    const auto& g = *image_;
    for (size_t i = g.size(); i-- > 0;) {
        if (g[i].is_zero()) continue;
        os << (i + 1 == g.size() ? "" : " + ") << "[" << g[i].to_string() << "]";
        if (i > 0) os << "*X" << (i > 1 ? "^" + std::to_string(i) : "");
    }
    return os.str();
}

// ----------------------------------------------------------------------------
// Conditions

namespace {

bool positive_valuation(const PadicElement& a) { return a.valuation().value_or(1) > 0; }

}  // namespace

bool check_star(const DynPoly& phi, const FieldDescriptor& F) {
    const int d = phi.degree();
    if (d % F.p() != 0)
        throw Error(ErrorKind::DegreeNotDivisibleByP,
                    "degree " + std::to_string(d) + " is not divisible by p = " + std::to_string(F.p()));
    DynPoly psi = phi;
    try {
        psi = phi.over(F);
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::NotIntegral) return false;
        throw;
    }
    const auto& a = psi.image();
    if (!a[d].is_unit()) return false;
    for (int i = 1; i < d; ++i)
        if (i % F.p() != 0 && !positive_valuation(a[i])) return false;
    return true;
}

bool check_star_star(const DynPoly& phi, const FieldDescriptor& F) {
    const int d = phi.degree();
    auto pp = prime_power(d);
    if (!pp || pp->first != F.p())
        throw Error(ErrorKind::DegreeNotPrimePower,
                    "degree " + std::to_string(d) + " is not a power of p = " + std::to_string(F.p()));
    DynPoly psi = phi;
    try {
        psi = phi.over(F);
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::NotIntegral) return false;
        throw;
    }
    const auto& a = psi.image();
    if (!(a[d] == PadicElement::from_integer(F, 1))) return false;
    for (int i = 1; i < d; ++i)
        if (!positive_valuation(a[i])) return false;
    return true;
}

// ----------------------------------------------------------------------------
// Iteration

PadicElement iterate(const DynPoly& phi, const PadicElement& x, int n) {
    if (n < 0) throw Error(ErrorKind::InvalidArgument, "negative iteration count");
    PadicElement y = x;
    for (int i = 0; i < n; ++i) y = phi(y);
    return y;
}

namespace {

std::vector<ResidueElement> residue_coefficients(const DynPoly& phi) {
    std::vector<ResidueElement> out;
    for (const auto& a : phi.image()) out.push_back(a.residue());
    return out;
}

ResidueElement eval_residue(const ResidueField& rf, const std::vector<ResidueElement>& c, const ResidueElement& x) {
    ResidueElement acc = c.back();
    for (size_t i = c.size() - 1; i-- > 0;) acc = rf.add(rf.mul(acc, x), c[i]);
    return acc;
}

}  // namespace

std::vector<std::uint64_t> residue_map(const DynPoly& phi) {
    const auto& rf = phi.field().residue_field();
    auto c = residue_coefficients(phi);
    std::vector<std::uint64_t> table(rf.size());
    for (std::uint64_t i = 0; i < rf.size(); ++i) table[i] = rf.index(eval_residue(rf, c, rf.element(i)));
    return table;
}

ResidueElement iterate_mod_pi(const DynPoly& phi, const ResidueElement& x, int n) {
    const auto& rf = phi.field().residue_field();
    auto c = residue_coefficients(phi);
    ResidueElement y = x;
    for (int i = 0; i < n; ++i) y = eval_residue(rf, c, y);
    return y;
}

std::optional<ExpansionCertificate> expansion_witness(const DynPoly& phi, const PadicElement& lambda) {
    const auto& F = lambda.field();
    DynPoly psi = phi.over(F);
    if (!check_star(psi, F)) throw Error(ErrorKind::StarConditionFailed, "expansion needs condition (*)");
    auto vl = lambda.valuation();
    if (!vl || *vl >= 0) return std::nullopt;
    ExpansionCertificate cert;
    cert.v_lambda = *vl;
    cert.degree = psi.degree();
    cert.v_lead = *psi.image().back().valuation();
    auto vi = psi(lambda).valuation();
    if (!vi) throw Error(ErrorKind::PrecisionExhausted, "phi(lambda) is indistinguishable from zero");
    cert.v_image = *vi;
    if (cert.v_image != cert.degree * cert.v_lambda + cert.v_lead || cert.v_image >= cert.v_lambda)
        throw Error(ErrorKind::HypothesisFailed, "valuation identity failed for an expanding point");
    return cert;
}

int m_value(const FieldDescriptor& F, const PadicElement& a0, int k) {
    if (!a0.is_integral()) throw Error(ErrorKind::NotIntegral, "a0 = " + a0.to_string() + " is not integral");
    if (k < 1) throw Error(ErrorKind::InvalidArgument, "k must be >= 1");
    const long bound = lcm(F.p(), F.f());
    for (long m = 1; m <= bound; ++m) {
        bool pi_divides = positive_valuation(a0 * PadicElement::from_integer(F, m));
        if (pi_divides && (static_cast<long>(k) * m) % F.f() == 0) return static_cast<int>(m);
    }
    throw Error(ErrorKind::HypothesisFailed, "no m <= lcm(p, f) found");
}

std::vector<PeriodicPoint> periodic_points(const DynPoly& phi, const FieldDescriptor& F) {
    DynPoly psi = phi.over(F);
    if (!check_star(psi, F))
        throw Error(ErrorKind::StarConditionFailed, psi.to_string() + " does not satisfy (*) over " + F.describe());
    const auto& rf = F.residue_field();
    auto census = analyze_functional_graph(residue_map(psi));
    auto deriv = psi.image();
    PadicPoly dphi;
    for (size_t i = 1; i < deriv.size(); ++i) dphi.push_back(deriv[i] * PadicElement::from_integer(F, long(i)));

    std::vector<PeriodicPoint> out;
    for (std::uint64_t r = 0; r < rf.size(); ++r) {
        const int n = static_cast<int>(census.period[r]);
        if (n == 0) continue;
        // g = phi^n - X, g' = prod phi'(phi^j(x)) - 1 (a unit under (*)).
        auto eval = [&](const PadicElement& x) {
            PadicElement y = x;
            PadicElement d = PadicElement::from_integer(F, 1);
            for (int j = 0; j < n; ++j) {
                d = d * eval_with_derivative(dphi, y).first;
                y = psi(y);
            }
            return std::make_pair(y - x, d - PadicElement::from_integer(F, 1));
        };
        ResidueElement res = rf.element(r);
        PeriodicPoint pt{res, 0, newton_lift(eval, PadicElement::from_residue(F, res), F.precision()), {}, false};
        for (int j : divisors(n)) {
            if (iterate(psi, pt.approx, j) == pt.approx) {
                pt.exact_period = j;
                break;
            }
        }
        out.push_back(std::move(pt));
    }
    return out;
}

std::optional<int> exact_period(const DynPoly& phi, const PadicElement& x, std::optional<int> max_n) {
    const auto& F = x.field();
    DynPoly psi = phi.over(F);
    int cap = max_n.value_or(static_cast<int>(2 * lcm(F.p(), F.f())));
    PadicElement y = x;
    for (int n = 1; n <= cap; ++n) {
        y = psi(y);
        if (y == x) return n;
    }
    return std::nullopt;
}

long dynatomic_degree(int d, int n) {
    long total = 0;
    for (int i : divisors(n)) total += mobius(n / i) * pow_ui(d, static_cast<unsigned long>(i)).get_si();
    return total;
}

PeriodCensus exact_period_census(const DynPoly& phi, const FieldDescriptor& F) {
    DynPoly psi = phi.over(F);
    if (!check_star_star(psi, F))
        throw Error(ErrorKind::HypothesisFailed, psi.to_string() + " does not satisfy (**) over " + F.describe());
    PeriodCensus out;
    out.k = prime_power(psi.degree())->second;
    if (out.k % F.f() != 0 && !psi.constant_term_rational())
        throw Error(ErrorKind::HypothesisFailed, "needs f | k or a0 in Q");
    out.m = m_value(F, psi.image()[0], out.k);
    out.points = periodic_points(psi, F);
    for (const auto& pt : out.points) out.by_period[pt.exact_period].count++;
    out.theorem_exact = out.k * out.m == F.f();
    if (out.theorem_exact) {
        for (int n : divisors(out.m)) {
            auto& entry = out.by_period[n];
            entry.dynatomic_degree = dynatomic_degree(psi.degree(), n);
            if (psi.has_exact()) {
                auto Phi = dynatomic(psi.exact(), n);
                entry.squarefree = gcd(Phi, Phi.derivative()).degree() == 0;
            }
        }
    }
    return out;
}

}  // namespace padyn
