#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace padyn {

/// An element of F_{p^f} in the polynomial basis 1, t, ..., t^{f-1} of the
/// defining polynomial. Coefficients are kept reduced into [0, p).
struct ResidueElement {
    std::vector<long> coeffs;

    bool is_zero() const;
    friend bool operator==(const ResidueElement&, const ResidueElement&) = default;
};

/// The residue field O_F / pi = F_p[t] / (g(t)).
class ResidueField {
   public:
    /// `modulus` is monic of degree f, low coefficient first, reduced mod p.
    ResidueField(long p, std::vector<long> modulus);

    long characteristic() const { return p_; }
    int degree() const { return static_cast<int>(modulus_.size()) - 1; }
    std::uint64_t size() const { return size_; }
    const std::vector<long>& modulus() const { return modulus_; }

    ResidueElement zero() const;
    ResidueElement one() const;
    ResidueElement generator() const;  // the class of t (or 0 -> 1 when f == 1)
    ResidueElement from_integer(long n) const;

    ResidueElement add(const ResidueElement& a, const ResidueElement& b) const;
    ResidueElement sub(const ResidueElement& a, const ResidueElement& b) const;
    ResidueElement neg(const ResidueElement& a) const;
    ResidueElement mul(const ResidueElement& a, const ResidueElement& b) const;
    ResidueElement scale(const ResidueElement& a, long k) const;
    ResidueElement pow(ResidueElement a, std::uint64_t e) const;
    /// Throws NotInvertibleAtPrecision on zero.
    ResidueElement inv(const ResidueElement& a) const;
    /// Some square root (smallest index), or nullopt-like empty vector flag.
    bool sqrt(const ResidueElement& a, ResidueElement& out) const;

    /// Base-p encoding: sum coeffs[i] * p^i. Used as a stable total order.
    std::uint64_t index(const ResidueElement& a) const;
    ResidueElement element(std::uint64_t index) const;

    std::string to_string(const ResidueElement& a, const char* var = "t") const;

   private:
    long p_;
    std::vector<long> modulus_;
    std::uint64_t size_;
};

// Small helpers on dense polynomials over F_p (low coefficient first).
namespace fp_poly {
std::vector<long> reduce(std::vector<long> a, long p);
std::vector<long> rem(std::vector<long> a, const std::vector<long>& b, long p);
bool is_irreducible(const std::vector<long>& monic, long p);
/// Lexicographically smallest monic irreducible of degree f, comparing
/// coefficients from t^{f-1} down to t^0.
std::vector<long> smallest_irreducible(long p, int f);
}  // namespace fp_poly

}  // namespace padyn
