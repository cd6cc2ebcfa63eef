#include "padyn/residue_field.hpp"

#include <algorithm>
#include <sstream>

#include "padyn/errors.hpp"

namespace padyn {

namespace {

long mod(long a, long p) {
    a %= p;
    return a < 0 ? a + p : a;
}

long inv_mod(long a, long p) {
    long t = 0, nt = 1, r = p, nr = mod(a, p);
    while (nr != 0) {
        long q = r / nr;
        t = t - q * nt;
        std::swap(t, nt);
        r = r - q * nr;
        std::swap(r, nr);
    }
    return mod(t, p);
}

void trim(std::vector<long>& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

}  // namespace

bool ResidueElement::is_zero() const {
    for (long c : coeffs)
        if (c != 0) return false;
    return true;
}

namespace fp_poly {

std::vector<long> reduce(std::vector<long> a, long p) {
    for (auto& c : a) c = mod(c, p);
    trim(a);
    return a;
}

std::vector<long> rem(std::vector<long> a, const std::vector<long>& b, long p) {
    a = reduce(std::move(a), p);
    std::vector<long> d = reduce(b, p);
    if (d.empty()) throw Error(ErrorKind::InvalidArgument, "polynomial division by zero mod p");
    long lead_inv = inv_mod(d.back(), p);
    while (a.size() >= d.size()) {
        long q = a.back() * lead_inv % p;
        size_t shift = a.size() - d.size();
        for (size_t i = 0; i < d.size(); ++i) a[shift + i] = mod(a[shift + i] - q * d[i], p);
        trim(a);
    }
    return a;
}

bool is_irreducible(const std::vector<long>& monic, long p) {
    std::vector<long> g = reduce(monic, p);
    int f = static_cast<int>(g.size()) - 1;
    if (f < 1) return false;
    if (f == 1) return true;
    // Trial division by every monic polynomial of degree 1..f/2.
    for (int deg = 1; deg <= f / 2; ++deg) {
        long count = 1;
        for (int i = 0; i < deg; ++i) count *= p;
        for (long code = 0; code < count; ++code) {
            std::vector<long> h(deg + 1);
            long c = code;
            for (int i = 0; i < deg; ++i) {
                h[i] = c % p;
                c /= p;
            }
            h[deg] = 1;
            if (rem(g, h, p).empty()) return false;
        }
    }
    return true;
}

std::vector<long> smallest_irreducible(long p, int f) {
    if (f == 1) return {0, 1};
    long count = 1;
    for (int i = 0; i < f; ++i) count *= p;
    // Enumerate codes so that t^{f-1} is the most significant digit.
    for (long code = 0; code < count; ++code) {
        std::vector<long> g(f + 1);
        long c = code;
        for (int i = 0; i < f; ++i) {
            g[i] = c % p;
            c /= p;
        }
        g[f] = 1;
        if (is_irreducible(g, p)) return g;
    }
    throw Error(ErrorKind::NotIrreducible, "no irreducible polynomial found");
}

}  // namespace fp_poly

ResidueField::ResidueField(long p, std::vector<long> modulus) : p_(p), modulus_(std::move(modulus)) {
    for (auto& c : modulus_) c = mod(c, p_);
    size_ = 1;
    for (int i = 0; i < degree(); ++i) size_ *= static_cast<std::uint64_t>(p_);
}

ResidueElement ResidueField::zero() const { return {std::vector<long>(degree(), 0)}; }

ResidueElement ResidueField::one() const {
    auto z = zero();
    z.coeffs[0] = 1;
    return z;
}

ResidueElement ResidueField::generator() const {
    auto z = zero();
    if (degree() == 1)
        z.coeffs[0] = mod(-modulus_[0], p_);
    else
        z.coeffs[1] = 1;
    return z;
}

ResidueElement ResidueField::from_integer(long n) const {
    auto z = zero();
    z.coeffs[0] = mod(n, p_);
    return z;
}

ResidueElement ResidueField::add(const ResidueElement& a, const ResidueElement& b) const {
    ResidueElement r = a;
    for (int i = 0; i < degree(); ++i) r.coeffs[i] = mod(a.coeffs[i] + b.coeffs[i], p_);
    return r;
}

ResidueElement ResidueField::sub(const ResidueElement& a, const ResidueElement& b) const {
    ResidueElement r = a;
    for (int i = 0; i < degree(); ++i) r.coeffs[i] = mod(a.coeffs[i] - b.coeffs[i], p_);
    return r;
}

ResidueElement ResidueField::neg(const ResidueElement& a) const { return sub(zero(), a); }

ResidueElement ResidueField::scale(const ResidueElement& a, long k) const {
    ResidueElement r = a;
    long kk = mod(k, p_);
    for (auto& c : r.coeffs) c = c * kk % p_;
    return r;
}

ResidueElement ResidueField::mul(const ResidueElement& a, const ResidueElement& b) const {
    int f = degree();
    std::vector<long> prod(2 * f - 1, 0);
    for (int i = 0; i < f; ++i) {
        if (a.coeffs[i] == 0) continue;
        for (int j = 0; j < f; ++j) prod[i + j] = (prod[i + j] + a.coeffs[i] * b.coeffs[j]) % p_;
    }
    for (int k = 2 * f - 2; k >= f; --k) {
        long c = prod[k];
        if (c == 0) continue;
        prod[k] = 0;
        for (int i = 0; i < f; ++i) prod[k - f + i] = mod(prod[k - f + i] - c * modulus_[i], p_);
    }
    prod.resize(f);
    return {prod};
}

ResidueElement ResidueField::pow(ResidueElement a, std::uint64_t e) const {
    ResidueElement r = one();
    while (e > 0) {
        if (e & 1) r = mul(r, a);
        a = mul(a, a);
        e >>= 1;
    }
    return r;
}

ResidueElement ResidueField::inv(const ResidueElement& a) const {
    if (a.is_zero()) throw Error(ErrorKind::NotInvertibleAtPrecision, "zero in residue field");
    if (degree() == 1) return {{inv_mod(a.coeffs[0], p_)}};
    return pow(a, size_ - 2);
}

bool ResidueField::sqrt(const ResidueElement& a, ResidueElement& out) const {
    for (std::uint64_t i = 0; i < size_; ++i) {
        auto x = element(i);
        if (mul(x, x) == a) {
            out = x;
            return true;
        }
    }
    return false;
}

std::uint64_t ResidueField::index(const ResidueElement& a) const {
    std::uint64_t idx = 0;
    for (int i = degree() - 1; i >= 0; --i) idx = idx * static_cast<std::uint64_t>(p_) + a.coeffs[i];
    return idx;
}

ResidueElement ResidueField::element(std::uint64_t index) const {
    auto z = zero();
    for (int i = 0; i < degree(); ++i) {
        z.coeffs[i] = static_cast<long>(index % static_cast<std::uint64_t>(p_));
        index /= static_cast<std::uint64_t>(p_);
    }
    return z;
}

std::string ResidueField::to_string(const ResidueElement& a, const char* var) const {
    if (degree() == 1) return std::to_string(a.coeffs[0]);
    std::ostringstream os;
    bool first = true;
    for (int i = 0; i < degree(); ++i) {
        long c = a.coeffs[i];
        if (c == 0) continue;
        if (!first) os << "+";
        first = false;
        if (i == 0)
            os << c;
        else {
            if (c != 1) os << c << "*";
            os << var;
            if (i > 1) os << "^" << i;
        }
    }
    if (first) return "0";
    if (a.coeffs.size() > 1 && std::count_if(a.coeffs.begin(), a.coeffs.end(), [](long c) { return c != 0; }) > 1)
        return "(" + os.str() + ")";
    return os.str();
}

}  // namespace padyn
