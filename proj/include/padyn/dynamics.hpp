#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "padyn/arith.hpp"
#include "padyn/padic.hpp"
#include "padyn/poly.hpp"
#include "padyn/quad.hpp"

namespace padyn {

/// A polynomial map of degree >= 2. It carries exact coefficients (in Q or
/// a quadratic field), an image over a p-adic field, or both.
class DynPoly {
   public:
    explicit DynPoly(Poly<QuadElement> exact);
    /// Image-only map, e.g. with random O_F coefficients. `a0_rational`
    /// records whether the constant term is known to lie in Q.
    static DynPoly from_image(PadicPoly image, bool a0_rational = false);
    static DynPoly parse(const std::string& text, const std::optional<QuadElement>& c = {});

    int degree() const { return degree_; }
    bool has_exact() const { return exact_.has_value(); }
    const Poly<QuadElement>& exact() const;
    /// Field discriminant of the exact coefficients (0 when all rational).
    long delta() const;
    bool constant_term_rational() const;

    bool has_image() const { return image_.has_value(); }
    const PadicPoly& image() const;
    const FieldDescriptor& field() const;

    /// Image under an embedding; every coefficient must be integral.
    DynPoly attach(const Embedding& emb) const;
    /// Attach using the default embedding (canonical sqrt of the discriminant).
    DynPoly attach(const FieldDescriptor& F) const;
    /// This map over F: itself when already attached there, else attach(F).
    DynPoly over(const FieldDescriptor& F) const;

    PadicElement operator()(const PadicElement& x) const;
    std::string to_string() const;

   private:
    DynPoly() = default;
    std::optional<Poly<QuadElement>> exact_;
    std::optional<PadicPoly> image_;
    int degree_ = 0;
    bool a0_rational_ = false;
};

struct PeriodicPoint {
    ResidueElement residue;
    int exact_period = 0;
    PadicElement approx;
    std::optional<QuadElement> exact_value;
    bool verified = false;  // exact_value checked by exact arithmetic
};

/// v(a_d) = 0 and v(a_i) > 0 whenever p does not divide i (all a_i integral).
bool check_star(const DynPoly& phi, const FieldDescriptor& F);
/// Monic of degree p^k with every middle coefficient in the maximal ideal.
bool check_star_star(const DynPoly& phi, const FieldDescriptor& F);

/// phi^n(x); phi^0(x) = x.
PadicElement iterate(const DynPoly& phi, const PadicElement& x, int n);

/// Reduction of phi on the residue field, as a table indexed by
/// ResidueField::index.
std::vector<std::uint64_t> residue_map(const DynPoly& phi);
ResidueElement iterate_mod_pi(const DynPoly& phi, const ResidueElement& x, int n);

/// For |lambda| > 1: v(phi(lambda)) = d v(lambda) + v(a_d) < v(lambda) < 0,
/// so lambda escapes and is not periodic.
struct ExpansionCertificate {
    long v_lambda = 0;
    long v_image = 0;
    int degree = 0;
    long v_lead = 0;
};
std::optional<ExpansionCertificate> expansion_witness(const DynPoly& phi, const PadicElement& lambda);

/// Smallest m >= 1 with v(a0 * m) >= 1 and f | k*m.
int m_value(const FieldDescriptor& F, const PadicElement& a0, int k);

/// All periodic points of a (*) map in F, one per periodic residue class,
/// sorted by residue index.
std::vector<PeriodicPoint> periodic_points(const DynPoly& phi, const FieldDescriptor& F);

/// Smallest n <= max_n (default 2 lcm(p, f)) with phi^n(x) == x.
std::optional<int> exact_period(const DynPoly& phi, const PadicElement& x, std::optional<int> max_n = {});

/// Sum over i | n of mu(n/i) d^i.
long dynatomic_degree(int d, int n);

/// n-th iterate of an exact polynomial.
template <class R>
Poly<R> iterate_poly(const Poly<R>& phi, int n) {
    Poly<R> acc = Poly<R>::x();
    for (int i = 0; i < n; ++i) acc = phi.compose(acc);
    return acc;
}

/// Phi_n = prod_{i | n} (phi^i - X)^{mu(n/i)}, by exact multiplication and
/// one exact division. Throws InexactDivision if the division leaves a
/// remainder (never expected).
template <class R>
Poly<R> dynatomic(const Poly<R>& phi, int n) {
    if (n < 1) throw Error(ErrorKind::InvalidArgument, "dynatomic index must be >= 1");
    if (phi.degree() < 2) throw Error(ErrorKind::InvalidArgument, "degree must be >= 2");
    Poly<R> num(R(1)), den(R(1));
    Poly<R> it = Poly<R>::x();
    for (int i = 1; i <= n; ++i) {
        it = phi.compose(it);
        if (n % i != 0) continue;
        int mu = mobius(n / i);
        if (mu == 1) num *= it - Poly<R>::x();
        if (mu == -1) den *= it - Poly<R>::x();
    }
    if (den.lead() == R(1)) return exact_quotient(num, den);
    if constexpr (requires(R a) { R(1) / a; }) {
        R s = R(1) / den.lead();
        return exact_quotient(num.scaled(s), den.scaled(s));
    } else {
        throw Error(ErrorKind::InvalidArgument, "non-monic dynatomic division over a non-field");
    }
}

struct CensusEntry {
    int count = 0;
    std::optional<long> dynatomic_degree;  // deg Phi_n, when computed
    std::optional<bool> squarefree;        // gcd(Phi_n, Phi_n') == 1
};

struct PeriodCensus {
    int m = 0;
    int k = 0;
    bool theorem_exact = false;  // k*m == f: counts are forced to equal deg Phi_n
    std::map<int, CensusEntry> by_period;  // only periods that occur or divide m (when theorem_exact)
    std::vector<PeriodicPoint> points;
};

/// Counts of exact periods for a (**) map with f | k or a0 in Q.
PeriodCensus exact_period_census(const DynPoly& phi, const FieldDescriptor& F);

}  // namespace padyn
