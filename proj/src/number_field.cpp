#include "padyn/number_field.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <iomanip>
#include <map>
#include <sstream>

#include "padyn/arith.hpp"
#include "padyn/errors.hpp"
#include "padyn/functional_graph.hpp"

namespace padyn {

// ----------------------------------------------------------------------------
// Fields and the prime above 2

QuadField::QuadField(long delta) : delta_(delta) {
    if (delta == 0 || delta == 1)
        throw Error(ErrorKind::InvalidArgument, "delta must be a squarefree integer other than 0 and 1");
    if (!is_squarefree(delta)) throw Error(ErrorKind::NotSquarefree, std::to_string(delta) + " is not squarefree");
}

QuadElement QuadField::adopt(const QuadElement& x) const {
    if (x.is_rational()) return QuadElement(x.a(), 0, delta_);
    if (x.delta() != delta_)
        throw Error(ErrorKind::FieldMismatch, x.to_string() + " does not lie in " + name());
    return x;
}

std::string to_string(SplitKind k) {
    switch (k) {
        case SplitKind::Split: return "split";
        case SplitKind::Ramified: return "ramified";
        case SplitKind::Inert: return "inert";
    }
    return "?";
}

namespace {

long mod_pos(long a, long m) { return ((a % m) + m) % m; }

}  // namespace

SplittingData splitting_of_two(const QuadField& K, int N, bool other_prime) {
    const long D = K.delta();
    auto build = [&](SplitKind kind, int f, int e, FieldDescriptor F) {
        Embedding emb = Embedding::make(F, D, other_prime);
        return SplittingData{kind, f, e, F, emb, other_prime};
    };
    switch (mod_pos(D, 8)) {
        case 1: return build(SplitKind::Split, 1, 1, make_field(2, 1, 1, {}, N));
        case 5: return build(SplitKind::Inert, 2, 1, make_field(2, 2, 1, {}, N));
        default: break;
    }
    // Ramified: sqrt(D) is a uniformizer when D = 2 mod 4, sqrt(D) - 1 when D = 3 mod 4.
    std::vector<std::vector<long>> eis =
        mod_pos(D, 4) == 2 ? std::vector<std::vector<long>>{{-D}, {0}, {1}}
                           : std::vector<std::vector<long>>{{1 - D}, {2}, {1}};
    return build(SplitKind::Ramified, 1, 2, make_field(2, 1, 2, eis, N));
}

std::optional<long> valuation_at_2(const QuadField& K, const QuadElement& x0, const SplittingData& data) {
    const QuadElement x = K.adopt(x0);
    if (x.is_zero()) return std::nullopt;
    switch (data.kind) {
        case SplitKind::Inert: return *vp(x.norm(), 2) / 2;
        case SplitKind::Ramified: return *vp(x.norm(), 2);
        case SplitKind::Split: break;
    }
    if (x.is_rational()) return *vp(x.a(), 2);
    // v(x) + v(conj x) = v2(N(x)) and v(conj x) >= min(v2 a, v2 b), which
    // bounds v(x) from above; pick a precision that exceeds the bound.
    const long vn = *vp(x.norm(), 2);
    long lo = *vp(x.b(), 2);
    if (x.a() != 0) lo = std::min(lo, *vp(x.a(), 2));
    const long need = std::max<long>(vn - lo, 0) + std::max<long>(-lo, 0) + 8;
    int N = std::max<int>(data.completion.precision(), static_cast<int>(need));
    FieldDescriptor F = data.completion.with_precision(N);
    auto v = Embedding::make(F, K.delta(), data.other_prime).image(x).valuation();
    if (!v) throw Error(ErrorKind::PrecisionExhausted, "image of " + x.to_string() + " vanished at precision " +
                                                          std::to_string(N));
    return v;
}

std::optional<QuadElement> is_square(const QuadField& K, const QuadElement& z0) {
    const QuadElement z = K.adopt(z0);
    const long D = K.delta();
    if (z.is_zero()) return K.element(0);
    if (z.is_rational()) {
        if (auto r = exact_sqrt(z.a())) return K.element(*r);
        if (auto r = exact_sqrt(mpq_class(z.a() / D))) return K.element(0, abs(*r));
        return std::nullopt;
    }
    // (x + y sqrt D)^2 = z  <=>  x^2 + D y^2 = a, 2xy = b, so x^2 is a root of
    // T^2 - a T + D b^2 / 4, i.e. x^2 = (a +- sqrt(N(z))) / 2.
    auto n = exact_sqrt(z.norm());
    if (!n) return std::nullopt;
    for (const mpq_class& s : {*n, mpq_class(-*n)}) {
        mpq_class x2 = (z.a() + s) / 2;
        if (x2 <= 0) continue;
        auto x = exact_sqrt(x2);
        if (!x) continue;
        QuadElement w = K.element(*x, z.b() / (2 * *x));
        if (w * w == z) return w;
    }
    return std::nullopt;
}

// ----------------------------------------------------------------------------
// Classification

bool Classification::all_checks_pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

namespace {

bool quad_less(const QuadElement& x, const QuadElement& y) {
    if (x.a() != y.a()) return x.a() < y.a();
    return x.b() < y.b();
}

QuadElement apply(const QuadElement& c, const QuadElement& x) { return x * x + c; }

QuadElement apply_n(const QuadElement& c, QuadElement x, int n) {
    for (int i = 0; i < n; ++i) x = apply(c, x);
    return x;
}

int quad_period(const QuadElement& c, const QuadElement& x, int cap) {
    QuadElement y = x;
    for (int n = 1; n <= cap; ++n) {
        y = apply(c, y);
        if (y == x) return n;
    }
    return 0;
}

// Roots in K of X^2 + X*b1 + b0 via the discriminant.
std::vector<QuadElement> quadratic_roots(const QuadField& K, const QuadElement& b1, const QuadElement& b0) {
    auto r = is_square(K, b1 * b1 - QuadElement(4) * b0);
    if (!r) return {};
    const QuadElement half = K.element(mpq_class(1, 2));
    std::vector<QuadElement> out{(-b1 + *r) * half};
    if (!r->is_zero()) out.push_back((-b1 - *r) * half);
    return out;
}

std::string join_points(const std::vector<QuadPeriodicPoint>& pts) {
    std::ostringstream os;
    os << "{";
    for (size_t i = 0; i < pts.size(); ++i) os << (i ? ", " : "") << pts[i].value << " (period " << pts[i].period << ")";
    os << "}";
    return os.str();
}

// Recognise an integral element of the unramified completion as an element
// of K, writing it in the basis (1, w) with w = (1 + sqrt D)/2.
std::optional<QuadElement> reconstruct(const QuadField& K, const Embedding& emb, const PadicElement& x) {
    const FieldDescriptor& F = emb.field();
    const int N = std::min(x.precision(), F.precision());
    const mpz_class mod = pow_ui(2, static_cast<unsigned long>(N));
    const QuadElement w = K.element(mpq_class(1, 2), mpq_class(1, 2));
    auto wc = emb.image(w).coordinates();
    auto xc = x.coordinates();
    auto red = [&](mpz_class v) {
        v %= mod;
        if (v < 0) v += mod;
        return v;
    };
    mpz_class w1inv;
    mpz_class w1 = red(wc[1]);
    if (mpz_invert(w1inv.get_mpz_t(), w1.get_mpz_t(), mod.get_mpz_t()) == 0) return std::nullopt;
    mpz_class v = red(xc[1] * w1inv);
    mpz_class u = red(xc[0] - v * wc[0]);
    const mpz_class bound = pow_ui(2, static_cast<unsigned long>(std::max(N / 2 - 1, 1)));
    auto uq = rational_reconstruct(u, mod, bound);
    auto vq = rational_reconstruct(v, mod, bound);
    if (!uq || !vq) return std::nullopt;
    return K.element(*uq) + K.element(*vq) * w;
}

}  // namespace

Classification classify_quadratic(const QuadField& K, const QuadElement& c0, int N, bool other_prime) {
    const QuadElement c = K.adopt(c0);
    SplittingData data = splitting_of_two(K, N, other_prime);
    Classification out;
    out.delta = K.delta();
    out.c = c;
    out.kind = data.kind;
    out.f = data.f;
    out.e = data.e;
    out.v_c = valuation_at_2(K, c, data);
    if (out.v_c && *out.v_c < 0) {
        std::ostringstream os;
        os << "c = " << c << " has valuation " << *out.v_c << " at the prime above 2 in " << K.name()
           << "; c must be integral there (this also excludes c = -1/2, where the 2-cycle formula breaks down)";
        throw Error(ErrorKind::NotIntegralAt2, os.str());
    }

    // Fixed points: X^2 - X + c. Exact period 2: X^2 + X + 1 + c.
    for (const auto& x : quadratic_roots(K, K.element(-1), c)) out.points.push_back({x, 1});
    for (const auto& x : quadratic_roots(K, K.element(1), c + K.element(1)))
        if (quad_period(c, x, 2) == 2) out.points.push_back({x, 2});

    // Over the completion every periodic point is found by lifting residue
    // cycles; K-rational ones of other periods can only occur in the inert
    // case and are recognised by rational reconstruction.
    DynPoly phi(Poly<QuadElement>({c, K.element(0), K.element(1)}));
    out.local_points = periodic_points(phi.attach(data.embedding), data.completion);
    if (data.kind == SplitKind::Inert && !c.is_rational()) {
        out.period4_searched = true;
        bool missed = false;
        for (const auto& lp : out.local_points) {
            if (lp.exact_period <= 2) continue;
            auto cand = reconstruct(K, data.embedding, lp.approx);
            if (cand && apply_n(c, *cand, lp.exact_period) == *cand &&
                quad_period(c, *cand, lp.exact_period) == lp.exact_period) {
                out.points.push_back({*cand, lp.exact_period});
            } else {
                missed = true;
            }
        }
        if (missed) {
            std::ostringstream os;
            os << "no further K-rational periodic point found up to height 2^" << std::max(N / 2 - 1, 1);
            out.disclaimer = os.str();
        }
    }
    std::sort(out.points.begin(), out.points.end(), [](const auto& x, const auto& y) {
        return x.period != y.period ? x.period < y.period : quad_less(x.value, y.value);
    });

    // Ledger of the constraints the classification must satisfy.
    const size_t count = out.points.size();
    const bool inert = data.kind == SplitKind::Inert;
    {
        bool ok = inert ? (count == 0 || count == 2 || count == 4) : (count == 0 || count == 2);
        out.checks.push_back({"count in allowed set", ok,
                              "count " + std::to_string(count) + (inert ? " in {0,2,4}" : " in {0,2}")});
    }
    out.checks.push_back({"count bounded by 2^f", count <= (std::size_t{1} << data.f),
                          std::to_string(count) + " <= " + std::to_string(1 << data.f)});
    if (!inert) {
        const int want = out.v_c && *out.v_c == 0 ? 2 : 1;
        bool ok = std::all_of(out.points.begin(), out.points.end(), [&](const auto& p) { return p.period == want; });
        out.checks.push_back({"periods determined by v(c)", ok,
                              "expected every period = " + std::to_string(want) + ": " + join_points(out.points)});
    }
    if (c.is_rational()) {
        const mpz_class r = c.a().get_num();
        const int m = (r * data.f) % 2 == 0 ? data.f : 2 * data.f;
        bool divides = std::all_of(out.points.begin(), out.points.end(), [&](const auto& p) { return m % p.period == 0; });
        bool literal = std::all_of(out.points.begin(), out.points.end(), [&](const auto& p) { return p.period == m; });
        out.checks.push_back({"rational c: periods divide m", divides,
                              "m = " + std::to_string(m) + "; every period equals m: " + (literal ? "yes" : "no") +
                                  " " + join_points(out.points)});
    }
    {
        bool ok = true;
        std::string detail = "all K-rational points appear among the local periodic points";
        for (const auto& p : out.points) {
            PadicElement img = data.embedding.image(p.value);
            auto it = std::find_if(out.local_points.begin(), out.local_points.end(),
                                   [&](const PeriodicPoint& q) { return q.approx == img; });
            if (it == out.local_points.end() || it->exact_period != p.period) {
                ok = false;
                detail = p.value.to_string() + " has no matching local periodic point";
                break;
            }
        }
        out.checks.push_back({"embeds into completion", ok, detail});
    }
    return out;
}

// ----------------------------------------------------------------------------
// No 3-cycles in the inert case

ThreeCycleCertificate three_cycle_obstruction() {
    static const std::vector<long> numer = {1, 4, 9, 8, 4, 2, 1};  // low first
    ThreeCycleCertificate cert;
    FieldDescriptor F = make_field(2, 2, 1, {}, 64);
    const auto& rf = F.residue_field();
    cert.numerator_nonzero = true;
    for (std::uint64_t i = 0; i < rf.size(); ++i) {
        ResidueElement tau = rf.element(i), acc = rf.zero();
        for (size_t k = numer.size(); k-- > 0;) acc = rf.add(rf.mul(acc, tau), rf.from_integer(numer[k]));
        cert.evaluations.emplace_back(tau, acc);
        if (rf.index(acc) == 0) cert.numerator_nonzero = false;
    }

    // For v(tau) = v < 0 every lower term of the numerator has valuation
    // v2(a_k) + k v > 6 v, so v(numerator) = 6 v; the denominator has
    // valuation 2 + 4 v since v(tau + 1) = v. Hence v(c) = 2 v - 2 < 0.
    bool symbolic = true;
    for (int k = 0; k < 6; ++k)
        if (!(*vp(mpz_class(numer[static_cast<size_t>(k)]), 2) + k * -1 > 6 * -1)) symbolic = false;
    bool samples = true;
    const PadicElement one = PadicElement::from_integer(F, 1), four = PadicElement::from_integer(F, 4);
    const PadicElement unit = one + PadicElement::unram_generator(F);
    for (long v = -1; v >= -8; --v) {
        PadicElement tau = inv(PadicElement::from_integer(F, pow_ui(2, static_cast<unsigned long>(-v)))) * unit;
        PadicElement num(F);
        for (size_t k = numer.size(); k-- > 0;) num = num * tau + PadicElement::from_integer(F, numer[k]);
        PadicElement den = four * tau * tau * (tau + one) * (tau + one);
        auto vc = (-(num * inv(den))).valuation();
        long got = vc ? *vc : 0;
        cert.branch_samples.emplace_back(v, got);
        if (!vc || got != 2 * v - 2 || got >= 0) samples = false;
    }
    cert.branch_negative = symbolic && samples;
    return cert;
}

// ----------------------------------------------------------------------------
// Portraits

namespace {

std::string canonical_form(const std::vector<std::size_t>& image) {
    const std::size_t n = image.size();
    auto census = analyze_functional_graph(std::vector<std::uint64_t>(image.begin(), image.end()));
    std::vector<std::vector<std::size_t>> children(n);
    for (std::size_t x = 0; x < n; ++x)
        if (!census.period[x]) children[image[x]].push_back(x);
    std::function<std::string(std::size_t)> tree = [&](std::size_t x) {
        std::vector<std::string> parts;
        for (auto ch : children[x]) parts.push_back(tree(ch));
        std::sort(parts.begin(), parts.end());
        std::string s = "(";
        for (auto& p : parts) s += p;
        return s + ")";
    };
    std::vector<std::string> comps;
    for (const auto& cyc : census.cycles) {
        std::vector<std::string> seq;
        for (auto x : cyc) seq.push_back(tree(static_cast<std::size_t>(x)));
        std::vector<std::string> best = seq;
        for (std::size_t r = 1; r < seq.size(); ++r) {
            std::vector<std::string> rot(seq.begin() + static_cast<long>(r), seq.end());
            rot.insert(rot.end(), seq.begin(), seq.begin() + static_cast<long>(r));
            best = std::min(best, rot);
        }
        std::string s = "[";
        for (auto& p : best) s += p;
        comps.push_back(s + "]");
    }
    std::sort(comps.begin(), comps.end());
    std::string out;
    for (auto& c : comps) out += c;
    return out;
}

std::string fnv1a_hex(const std::string& s) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char ch : s) {
        h ^= ch;
        h *= 1099511628211ULL;
    }
    std::ostringstream os;
    os << std::hex << std::setw(16) << std::setfill('0') << h;
    return os.str();
}

}  // namespace

Portrait compute_portrait(const QuadField& K, const QuadElement& c0, int depth_cap) {
    const QuadElement c = K.adopt(c0);
    Classification cls = classify_quadratic(K, c);
    Portrait P;
    std::map<std::string, std::size_t> seen;
    std::vector<int> depth;
    std::deque<std::size_t> queue;
    auto add = [&](const QuadElement& x, int d) {
        seen.emplace(x.to_string(), P.vertices.size());
        P.vertices.push_back(x);
        depth.push_back(d);
        queue.push_back(P.vertices.size() - 1);
    };
    for (const auto& p : cls.points) add(p.value, 0);
    while (!queue.empty()) {
        const std::size_t y = queue.front();
        queue.pop_front();
        auto r = is_square(K, P.vertices[y] - c);
        if (!r) continue;
        std::vector<QuadElement> pre{*r};
        if (!r->is_zero()) pre.push_back(-*r);
        std::sort(pre.begin(), pre.end(), quad_less);
        for (const auto& x : pre) {
            if (seen.count(x.to_string())) continue;
            const int d = depth[y] + 1;
            if (d > depth_cap)
                throw Error(ErrorKind::DepthCapReached, "preimage tree of X^2 + " + c.to_string() +
                                                            " exceeds depth " + std::to_string(depth_cap));
            add(x, d);
        }
    }

    std::vector<std::size_t> image(P.vertices.size());
    for (std::size_t i = 0; i < P.vertices.size(); ++i) {
        auto it = seen.find(apply(c, P.vertices[i]).to_string());
        if (it == seen.end()) throw Error(ErrorKind::HypothesisFailed, "portrait is not closed under the map");
        image[i] = it->second;
        P.edges.emplace_back(i, it->second);
    }
    auto census = analyze_functional_graph(std::vector<std::uint64_t>(image.begin(), image.end()));
    for (const auto& cyc : census.cycles) P.cycle_lengths.push_back(static_cast<int>(cyc.size()));
    std::sort(P.cycle_lengths.rbegin(), P.cycle_lengths.rend());
    if (P.vertices.empty()) {
        P.label = "0";
    } else {
        std::ostringstream os;
        os << P.vertices.size() << "(";
        for (std::size_t i = 0; i < P.cycle_lengths.size(); ++i) os << (i ? "," : "") << P.cycle_lengths[i];
        os << ")";
        P.label = os.str();
    }
    P.graph_hash = fnv1a_hex(canonical_form(image));
    P.depth = depth.empty() ? 0 : *std::max_element(depth.begin(), depth.end());
    return P;
}

std::string portrait_dot(const Portrait& P, const std::string& title) {
    std::ostringstream os;
    os << "digraph \"" << title << "\" {\n";
    os << "  label=\"" << P.label << "\";\n";
    for (std::size_t i = 0; i < P.vertices.size(); ++i) os << "  v" << i << " [label=\"" << P.vertices[i] << "\"];\n";
    for (const auto& [a, b] : P.edges) os << "  v" << a << " -> v" << b << ";\n";
    os << "}\n";
    return os.str();
}

std::string strip_label_suffix(const std::string& label) {
    auto close = label.rfind(')');
    return close == std::string::npos ? label : label.substr(0, close + 1);
}

}  // namespace padyn
