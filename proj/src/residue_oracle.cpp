#include "padyn/residue_oracle.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "padyn/errors.hpp"

namespace padyn {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

int ceil_div(int a, int b) { return a <= 0 ? 0 : (a + b - 1) / b; }

u64 ipow(u64 base, int exp) {
    u64 r = 1;
    for (int i = 0; i < exp; ++i) r *= base;
    return r;
}

std::vector<u64> level_moduli(const FieldDescriptor& F, int M) {
    std::vector<u64> mod;
    for (int j = 0; j < F.e(); ++j)
        for (int i = 0; i < F.f(); ++i) mod.push_back(ipow(static_cast<u64>(F.p()), ceil_div(M - j, F.e())));
    return mod;
}

u64 encode(const std::vector<u64>& coords, const std::vector<u64>& mod) {
    u64 idx = 0;
    for (size_t k = mod.size(); k-- > 0;) idx = idx * mod[k] + coords[k] % mod[k];
    return idx;
}

std::vector<u64> decode(u64 idx, const std::vector<u64>& mod) {
    std::vector<u64> c(mod.size());
    for (size_t k = 0; k < mod.size(); ++k) {
        c[k] = idx % mod[k];
        idx /= mod[k];
    }
    return c;
}

std::string coords_label(const std::vector<u64>& c, int e, int f) {
    std::ostringstream os;
    bool first = true;
    for (int j = 0; j < e; ++j)
        for (int i = 0; i < f; ++i) {
            u64 v = c[static_cast<size_t>(j * f + i)];
            if (v == 0) continue;
            if (!first) os << "+";
            first = false;
            bool bare = i == 0 && j == 0;
            if (v != 1 || bare) os << v;
            if (i > 0) os << "t" << (i > 1 ? "^" + std::to_string(i) : "");
            if (j > 0) os << "pi" << (j > 1 ? "^" + std::to_string(j) : "");
        }
    return first ? "0" : os.str();
}

// Arithmetic in O_F / p^K with 64-bit coordinates.
struct Ring {
    int e, f;
    u64 P;
    std::vector<u64> g;               // unram poly, low first, reduced mod P
    std::vector<std::vector<u64>> c;  // Eisenstein coefficients c_0..c_{e-1}

    u64 add(u64 a, u64 b) const {
        u64 s = a + b;
        return s >= P ? s - P : s;
    }
    u64 sub(u64 a, u64 b) const { return a >= b ? a - b : a + (P - b); }
    u64 mul(u64 a, u64 b) const { return static_cast<u64>(static_cast<u128>(a) * b % P); }

    std::vector<u64> wmul(const u64* a, const u64* b) const {
        std::vector<u64> prod(static_cast<size_t>(2 * f - 1), 0);
        for (int i = 0; i < f; ++i)
            for (int j = 0; j < f; ++j) prod[i + j] = add(prod[i + j], mul(a[i], b[j]));
        for (int k = 2 * f - 2; k >= f; --k) {
            u64 top = prod[k];
            for (int i = 0; i < f; ++i) prod[k - f + i] = sub(prod[k - f + i], mul(top, g[i]));
        }
        prod.resize(static_cast<size_t>(f));
        return prod;
    }

    std::vector<u64> mul(const std::vector<u64>& a, const std::vector<u64>& b) const {
        std::vector<std::vector<u64>> prod(static_cast<size_t>(2 * e - 1), std::vector<u64>(f, 0));
        for (int j1 = 0; j1 < e; ++j1)
            for (int j2 = 0; j2 < e; ++j2) {
                auto w = wmul(&a[j1 * f], &b[j2 * f]);
                for (int i = 0; i < f; ++i) prod[j1 + j2][i] = add(prod[j1 + j2][i], w[i]);
            }
        for (int k = 2 * e - 2; k >= e; --k)
            for (int j = 0; j < e; ++j) {
                auto w = wmul(prod[k].data(), c[j].data());
                for (int i = 0; i < f; ++i) prod[k - e + j][i] = sub(prod[k - e + j][i], w[i]);
            }
        std::vector<u64> r(static_cast<size_t>(e * f));
        for (int j = 0; j < e; ++j)
            for (int i = 0; i < f; ++i) r[j * f + i] = prod[j][i];
        return r;
    }

    std::vector<u64> add(const std::vector<u64>& a, const std::vector<u64>& b) const {
        std::vector<u64> r(a.size());
        for (size_t i = 0; i < a.size(); ++i) r[i] = add(a[i], b[i]);
        return r;
    }
};

u64 reduce_signed(long v, u64 P) {
    long r = v % static_cast<long>(P);
    return static_cast<u64>(r < 0 ? r + static_cast<long>(P) : r);
}

}  // namespace

std::vector<std::uint64_t> FiniteRingMap::coordinates(std::uint64_t index) const { return decode(index, modulus_); }

std::uint64_t FiniteRingMap::index_of(const std::vector<std::uint64_t>& coords) const {
    return encode(coords, modulus_);
}

std::uint64_t FiniteRingMap::project(std::uint64_t index) const {
    if (M_ < 2) throw Error(ErrorKind::InvalidArgument, "no level below 1");
    return encode(coordinates(index), level_moduli(F_, M_ - 1));
}

std::uint64_t FiniteRingMap::residue_index(std::uint64_t index) const {
    auto c = coordinates(index);
    u64 p = static_cast<u64>(F_.p()), idx = 0;
    for (int i = F_.f(); i-- > 0;) idx = idx * p + c[static_cast<size_t>(i)] % p;
    return idx;
}

std::string FiniteRingMap::label(std::uint64_t index) const {
    return coords_label(coordinates(index), F_.e(), F_.f());
}

FiniteRingMap build_map(const DynPoly& phi, const FieldDescriptor& F, int M, std::uint64_t budget) {
    if (M < 1) throw Error(ErrorKind::InvalidArgument, "oracle level must be >= 1");
    if (M > F.precision()) throw Error(ErrorKind::PrecisionExhausted, "oracle level exceeds field precision");
    DynPoly psi = phi.over(F);
    // |O_F / pi^M| = p^{fM}
    u128 size = 1;
    for (int i = 0; i < F.f() * M; ++i) {
        size *= static_cast<u64>(F.p());
        if (size > budget)
            throw Error(ErrorKind::BudgetExceeded, "|O_F/pi^" + std::to_string(M) + "| exceeds the budget of " +
                                                       std::to_string(budget) + " elements");
    }

    FiniteRingMap map(F, M);
    map.modulus_ = level_moduli(F, M);
    Ring R{F.e(), F.f(), ipow(static_cast<u64>(F.p()), ceil_div(M, F.e())), {}, {}};
    if (R.P > (u64{1} << 62)) throw Error(ErrorKind::BudgetExceeded, "coordinate modulus exceeds 64 bits");
    for (long g : F.unram_poly()) R.g.push_back(reduce_signed(g, R.P));
    for (int j = 0; j < F.e(); ++j) {
        std::vector<u64> w(static_cast<size_t>(F.f()), 0);
        const auto& src = F.eisenstein_poly()[static_cast<size_t>(j)];
        for (size_t i = 0; i < src.size() && i < w.size(); ++i) w[i] = reduce_signed(src[i], R.P);
        R.c.push_back(w);
    }
    std::vector<std::vector<u64>> coeffs;
    for (const auto& a : psi.image()) {
        if (!a.is_integral()) throw Error(ErrorKind::NotIntegral, "oracle needs integral coefficients");
        std::vector<u64> w;
        const mpz_class Pz(static_cast<unsigned long>(R.P));
        for (const auto& x : a.coordinates()) {
            mpz_class r = x % Pz;
            if (r < 0) r += Pz;
            w.push_back(r.get_ui());
        }
        coeffs.push_back(std::move(w));
    }

    map.table_.resize(static_cast<size_t>(size));
    for (u64 idx = 0; idx < map.table_.size(); ++idx) {
        auto x = decode(idx, map.modulus_);
        std::vector<u64> acc = coeffs.back();
        for (size_t i = coeffs.size() - 1; i-- > 0;) acc = R.add(R.mul(acc, x), coeffs[i]);
        map.table_[idx] = encode(acc, map.modulus_);
    }
    return map;
}

std::vector<std::uint64_t> oracle_count(const DynPoly& phi, const FieldDescriptor& F, int M_max,
                                        std::uint64_t budget) {
    std::vector<std::uint64_t> counts;
    for (int M = 1; M <= M_max; ++M) counts.push_back(periodic_census(build_map(phi, F, M, budget)).periodic_count());
    return counts;
}

std::string to_dot(const FiniteRingMap& map, const std::string& title) {
    const auto& F = map.field();
    const int M = map.level();
    auto census = periodic_census(map);
    std::vector<std::vector<u64>> moduli;  // levels 1..M-1
    for (int L = 1; L < M; ++L) moduli.push_back(level_moduli(F, L));

    // Ancestor keys (ball index at each level), then sort elements by them.
    std::vector<std::pair<std::vector<u64>, u64>> order;
    for (u64 x = 0; x < map.size(); ++x) {
        auto c = map.coordinates(x);
        std::vector<u64> key;
        for (const auto& mod : moduli) key.push_back(encode(c, mod));
        order.emplace_back(std::move(key), x);
    }
    std::sort(order.begin(), order.end());

    std::ostringstream os;
    os << "digraph \"" << title << "\" {\n";
    os << "  label=\"O_F/pi^" << M << " under " << title << "\";\n";
    os << "  node [shape=circle];\n";
    std::vector<u64> open;  // currently open ball keys
    auto indent = [&](size_t depth) { return std::string(2 * (depth + 1), ' '); };
    for (const auto& [key, x] : order) {
        size_t common = 0;
        while (common < open.size() && open[common] == key[common]) ++common;
        while (open.size() > common) {
            open.pop_back();
            os << indent(open.size()) << "}\n";
        }
        while (open.size() < key.size()) {
            size_t L = open.size() + 1;
            u64 ball = key[open.size()];
            auto c = decode(ball, moduli[L - 1]);
            os << indent(open.size()) << "subgraph cluster_L" << L << "_" << ball << " {\n";
            os << indent(open.size() + 1) << "label=\"" << coords_label(c, F.e(), F.f()) << " mod pi^" << L
               << "\";\n";
            open.push_back(ball);
        }
        os << indent(open.size()) << "n" << x << " [label=\"" << map.label(x) << "\""
           << (census.period[x] ? ", shape=doublecircle" : "") << "];\n";
    }
    while (!open.empty()) {
        open.pop_back();
        os << indent(open.size()) << "}\n";
    }
    for (u64 x = 0; x < map.size(); ++x) os << "  n" << x << " -> n" << map.table()[x] << ";\n";
    os << "}\n";
    return os.str();
}

}  // namespace padyn
