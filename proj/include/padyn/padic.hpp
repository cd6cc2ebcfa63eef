#pragma once

#include <gmpxx.h>

#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "padyn/residue_field.hpp"

namespace padyn {

namespace detail {
struct FieldData;
}

inline constexpr int kDefaultPrecision = 64;

/// A finite extension F/Q_p presented as a tower: an unramified layer
/// W = Z_p[t]/(g(t)) of degree f, then an Eisenstein layer W[pi]/(E(pi)) of
/// degree e. Elements are known modulo pi^N.
///
/// Cheap to copy; all copies share the same immutable data.
class FieldDescriptor {
   public:
    long p() const;
    int f() const;
    int e() const;
    int precision() const;
    int degree() const { return e() * f(); }

    /// Monic unramified polynomial, low coefficient first.
    const std::vector<long>& unram_poly() const;
    /// Monic Eisenstein polynomial, low coefficient first; each coefficient
    /// is an element of W given in the basis 1, t, ..., t^{f-1}. For e == 1
    /// this is pi - p.
    const std::vector<std::vector<long>>& eisenstein_poly() const;

    const ResidueField& residue_field() const;
    /// p^f
    std::uint64_t residue_size() const { return residue_field().size(); }

    /// Same field at a different working precision.
    FieldDescriptor with_precision(int N) const;

    /// Structural equality (p, f, e, both polynomials, N).
    bool same_as(const FieldDescriptor& other) const;

    nlohmann::json to_json() const;
    static FieldDescriptor from_json(const nlohmann::json& j);

    std::string describe() const;

    const detail::FieldData& data() const { return *data_; }

   private:
    explicit FieldDescriptor(std::shared_ptr<const detail::FieldData> d) : data_(std::move(d)) {}
    std::shared_ptr<const detail::FieldData> data_;

    friend FieldDescriptor make_field(long, int, int, std::optional<std::vector<std::vector<long>>>, int,
                                      std::optional<std::vector<long>>);
};

/// Builds and validates a field. `eisenstein` must be given exactly when
/// e > 1. `unram` defaults to the lexicographically smallest monic
/// irreducible of degree f over F_p.
FieldDescriptor make_field(long p, int f, int e, std::optional<std::vector<std::vector<long>>> eisenstein = {},
                           int N = kDefaultPrecision, std::optional<std::vector<long>> unram = {});

/// pi-adic expansion value = pi^shift * sum digits[i] pi^i, known mod pi^prec.
struct DigitExpansion {
    int shift = 0;
    int prec = 0;
    std::vector<ResidueElement> digits;
};

/// An element of F known modulo pi^prec (absolute precision).
///
/// Stored as pi^shift * body where body lies in O_F and is held in the
/// basis t^i pi^j (0 <= i < f, 0 <= j < e) with coordinates mod p^K.
class PadicElement {
   public:
    explicit PadicElement(const FieldDescriptor& field);  // zero, full precision

    static PadicElement from_integer(const FieldDescriptor& field, const mpz_class& n);
    static PadicElement from_rational(const FieldDescriptor& field, const mpq_class& q);
    /// Teichmuller-free digit lift: coordinates of the residue in [0, p).
    static PadicElement from_residue(const FieldDescriptor& field, const ResidueElement& r);
    static PadicElement from_digits(const FieldDescriptor& field, const std::vector<ResidueElement>& digits,
                                    int shift, int prec);
    /// Integral element from basis coordinates (index j*f + i for t^i pi^j).
    static PadicElement from_coordinates(const FieldDescriptor& field, std::vector<mpz_class> coords, int prec);
    static PadicElement uniformizer(const FieldDescriptor& field);
    /// The class of t in the unramified layer.
    static PadicElement unram_generator(const FieldDescriptor& field);

    const FieldDescriptor& field() const { return field_; }
    int shift() const { return shift_; }
    int precision() const { return prec_; }

    /// v_F; nullopt when the element is zero modulo pi^prec.
    std::optional<long> valuation() const;
    bool is_zero() const { return !valuation().has_value(); }
    bool is_integral() const;
    bool is_unit() const;

    ResidueElement residue() const;
    DigitExpansion expansion() const;
    /// Digits d_0 .. d_{prec-1} of an integral element.
    std::vector<ResidueElement> integral_digits() const;
    /// Basis coordinates of an integral element, reduced into [0, p^K).
    std::vector<mpz_class> coordinates() const;

    /// Same value with absolute precision lowered to min(prec, k).
    PadicElement reduced_precision(int k) const;
    /// Treat the stored representative as exact and restore the field's
    /// full precision. Used by Newton iterations, whose answer is certified
    /// by a final residual check rather than by propagated precision.
    PadicElement lifted() const;

    PadicElement operator-() const;
    friend PadicElement operator+(const PadicElement& a, const PadicElement& b);
    friend PadicElement operator-(const PadicElement& a, const PadicElement& b);
    friend PadicElement operator*(const PadicElement& a, const PadicElement& b);
    PadicElement& operator+=(const PadicElement& b) { return *this = *this + b; }
    PadicElement& operator-=(const PadicElement& b) { return *this = *this - b; }
    PadicElement& operator*=(const PadicElement& b) { return *this = *this * b; }
    PadicElement pow(unsigned long n) const;

    /// Congruence modulo pi^{min(prec_a, prec_b)}.
    friend bool operator==(const PadicElement& a, const PadicElement& b);

    std::string to_string() const;

   private:
    PadicElement(FieldDescriptor field, std::vector<mpz_class> body, int shift, int prec);
    static PadicElement make(const FieldDescriptor& field, std::vector<mpz_class> body, int shift, int prec);
    void check_same_field(const PadicElement& other) const;
    /// pi^{-v} * value as an integral unit body (precondition: nonzero).
    std::vector<mpz_class> unit_body(long v) const;
    std::vector<mpz_class> integral_body() const;

    FieldDescriptor field_;
    std::vector<mpz_class> body_;
    int shift_ = 0;
    int prec_ = 0;

    friend PadicElement inv(const PadicElement& a);
};

PadicElement inv(const PadicElement& a);
inline std::optional<long> valuation(const PadicElement& a) { return a.valuation(); }
inline ResidueElement residue(const PadicElement& a) { return a.residue(); }

/// Polynomial over O_F, low coefficient first.
using PadicPoly = std::vector<PadicElement>;

/// Value and derivative of g at x (Horner).
std::pair<PadicElement, PadicElement> eval_with_derivative(std::span<const PadicElement> g, const PadicElement& x);

/// Newton iteration for a root of the function described by `eval`, which
/// returns (g(x), g'(x)). Requires v(g(x0)) > 2 v(g'(x0)). The result is the
/// unique root r with v(r - x0) > v(g'(x0)), certified to `target_prec`.
PadicElement newton_lift(const std::function<std::pair<PadicElement, PadicElement>(const PadicElement&)>& eval,
                         const PadicElement& x0, int target_prec);

PadicElement hensel_lift(std::span<const PadicElement> g, const PadicElement& x0, int target_prec);
inline PadicElement hensel_lift(std::span<const PadicElement> g, const PadicElement& x0) {
    return hensel_lift(g, x0, x0.field().precision());
}

/// Square root, or nullopt when a is certifiably not a square. When a root
/// exists the canonical one of the pair +-r is returned: the one whose value
/// mod pi^3, read most-significant digit first, is smaller.
std::optional<PadicElement> sqrt(const PadicElement& a);

/// Total order used to pick canonical representatives (e.g. among +-r).
bool canonical_less(const PadicElement& a, const PadicElement& b);

}  // namespace padyn
