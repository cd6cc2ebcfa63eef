#include "padyn/sweeps.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <random>

#include "padyn/arith.hpp"
#include "padyn/errors.hpp"
#include "padyn/sampling.hpp"

namespace padyn {

using nlohmann::json;

void SweepRow::record(bool ok, json dump) {
    ++instances;
    if (ok) return;
    ++failures;
    if (dumps.size() < kMaxDumps) dumps.push_back(std::move(dump));
}

json SweepRow::to_json() const {
    json j{{"name", name}, {"instances", instances}, {"failures", failures}, {"passed", passed()}};
    j["counterexamples"] = dumps;
    if (!notes.empty()) j["notes"] = notes;
    return j;
}

Check SweepRow::as_check() const {
    std::string detail = std::to_string(instances - failures) + "/" + std::to_string(instances) + " passed";
    if (!dumps.empty()) detail += "; first counterexample: " + dumps.front().dump();
    return {name, passed(), detail};
}

namespace {

std::mt19937_64 make_rng(std::uint64_t seed, const std::string& name) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char ch : name) h = (h ^ ch) * 1099511628211ULL;
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(h), static_cast<std::uint32_t>(h >> 32)};
    return std::mt19937_64(seq);
}

std::string field_name(long p, int f) {
    return "p=" + std::to_string(p) + " f=" + std::to_string(f);
}

json periods_json(const std::vector<PeriodicPoint>& pts) {
    json j = json::array();
    for (const auto& pt : pts) j.push_back(pt.exact_period);
    return j;
}

std::uint64_t field_size(const FieldDescriptor& F) { return F.residue_size(); }

// Failure reason for the lifted points of a (*) map, or empty when all hold.
std::string check_lifted(const DynPoly& phi, const FieldDescriptor& F, const std::vector<PeriodicPoint>& pts,
                         const SweepOptions& opt) {
    if (pts.size() > field_size(F)) return "count exceeds p^f";
    for (const auto& pt : pts) {
        if (pt.exact_period < 1) return "a lifted point has no period";
        if (!(iterate(phi, pt.approx, pt.exact_period) == pt.approx))
            return "phi^n(x) != x for " + pt.approx.to_string();
    }
    std::uint64_t size = 1;
    for (int M = 1; M <= opt.levels; ++M) {
        for (int i = 0; i < F.f(); ++i) size *= static_cast<std::uint64_t>(F.p());
        if (size > opt.budget) break;
        auto n = periodic_census(build_map(phi, F, M, opt.budget)).periodic_count();
        if (n != pts.size())
            return "oracle count " + std::to_string(n) + " at level " + std::to_string(M) + " != " +
                   std::to_string(pts.size());
    }
    return "";
}

json instance_dump(const DynPoly& phi, const FieldDescriptor& F, const std::string& reason) {
    return json{{"field", F.describe()}, {"poly", phi.to_string()}, {"reason", reason}};
}

SweepRow sweep_maps(const std::string& name, const FieldDescriptor& F, const SweepOptions& opt,
                    const std::function<DynPoly(std::mt19937_64&, int)>& draw) {
    SweepRow row;
    row.name = name;
    auto rng = make_rng(opt.seed, name);
    for (int i = 0; i < opt.samples; ++i) {
        DynPoly phi = draw(rng, i);
        try {
            auto pts = periodic_points(phi, F);
            std::string why = check_lifted(phi, F, pts, opt);
            json d = instance_dump(phi, F, why);
            d["periods"] = periods_json(pts);
            row.record(why.empty(), std::move(d));
        } catch (const Error& e) {
            row.record(false, instance_dump(phi, F, e.what()));
        }
    }
    return row;
}

}  // namespace

SweepRow sweep_star(long p, int f, const SweepOptions& opt) {
    auto F = make_field(p, f, 1, {}, opt.precision);
    return sweep_maps("star " + field_name(p, f), F, opt, [&](std::mt19937_64& rng, int i) {
        return sample_star(F, rng, static_cast<int>(i % 2 ? 2 * p : p));
    });
}

SweepRow sweep_unicritical(long p, int f, const SweepOptions& opt) {
    auto F = make_field(p, f, 1, {}, opt.precision);
    return sweep_maps("unicritical " + field_name(p, f), F, opt, [&](std::mt19937_64& rng, int) {
        PadicPoly a(static_cast<size_t>(p + 1), PadicElement(F));
        a[0] = sample_integral(F, rng);
        a[static_cast<size_t>(p)] = PadicElement::from_integer(F, 1);
        return DynPoly::from_image(std::move(a));
    });
}

SweepRow sweep_star_star(long p, int f, int k, const SweepOptions& opt) {
    auto F = make_field(p, f, 1, {}, opt.precision);
    SweepRow row;
    row.name = "star-star " + field_name(p, f) + " k=" + std::to_string(k);
    auto rng = make_rng(opt.seed, row.name);
    for (int i = 0; i < opt.samples; ++i) {
        // The hypothesis f | k or a0 in Q: force a rational a0 when f does not divide k.
        const bool rational = k % f != 0 || rng() % 2 == 0;
        DynPoly phi = sample_star_star(F, rng, k, rational);
        try {
            if (!check_star_star(phi, F)) throw Error(ErrorKind::HypothesisFailed, "sample is not (**)");
            const int m = m_value(F, phi.image()[0], k);
            auto pts = periodic_points(phi, F);
            std::string why = check_lifted(phi, F, pts, opt);
            if (why.empty() && pts.size() != field_size(F)) why = "count != p^f";
            for (const auto& pt : pts)
                if (why.empty() && m % pt.exact_period != 0)
                    why = "period " + std::to_string(pt.exact_period) + " does not divide m";
            json d = instance_dump(phi, F, why);
            d["m"] = m;
            d["periods"] = periods_json(pts);
            row.record(why.empty(), std::move(d));
        } catch (const Error& e) {
            row.record(false, instance_dump(phi, F, e.what()));
        }
    }
    return row;
}

SweepRow nonexample_check(int precision) {
    SweepRow row;
    row.name = "nonexample X^2 + omega over Q_2(omega)";
    auto F = make_field(2, 2, 1, {}, precision);
    const PadicElement omega = PadicElement::unram_generator(F);  // t^2 + t + 1 = 0
    DynPoly phi = DynPoly::from_image({omega, PadicElement(F), PadicElement::from_integer(F, 1)});
    const int k = 1;
    const bool hypothesis = k % F.f() == 0 || phi.constant_term_rational();
    const int m = m_value(F, omega, k);
    auto pts = periodic_points(phi, F);
    bool found = false;
    json certified = json::array();
    for (const auto& pt : pts) {
        const bool four = pt.exact_period == 4 && iterate(phi, pt.approx, 4) == pt.approx &&
                          !(iterate(phi, pt.approx, 2) == pt.approx) && !(phi(pt.approx) == pt.approx);
        if (four) certified.push_back(pt.approx.to_string());
        found = found || four;
    }
    json d = instance_dump(phi, F, "");
    d["m"] = m;
    d["hypothesis_holds"] = hypothesis;
    d["periods"] = periods_json(pts);
    d["period_4_points"] = certified;
    const bool ok = found && m % 4 != 0 && !hypothesis;
    if (!ok) d["reason"] = "expected a certified period-4 point outside the hypothesis";
    row.record(ok, d);
    row.notes.push_back("exact period 4 does not divide m = " + std::to_string(m) +
                        "; hypothesis f | k or a0 in Q: " + (hypothesis ? "holds" : "fails"));
    return row;
}

SweepRow sweep_period_law(int f, bool literal, const SweepOptions& opt) {
    SweepRow row;
    row.name = std::string(literal ? "period law (every exact period = f or 2f)" : "period law (phi^m = id, lcm = m)") +
               " f=" + std::to_string(f);
    auto F = make_field(2, f, 1, {}, opt.precision);
    for (long r = -20; r <= 20; ++r) {
        for (long s : {1L, 3L, 5L}) {
            mpq_class c(r, s);
            c.canonicalize();
            DynPoly phi = DynPoly(Poly<QuadElement>(std::vector<QuadElement>{QuadElement(c), 0, 1})).attach(F);
            const int expect = (r * f) % 2 == 0 ? f : 2 * f;
            json d{{"field", F.describe()}, {"c", c.get_str()}, {"expected", expect}};
            try {
                auto pts = periodic_points(phi, F);
                d["periods"] = periods_json(pts);
                std::string why;
                if (literal) {
                    for (const auto& pt : pts)
                        if (why.empty() && pt.exact_period != expect)
                            why = "exact period " + std::to_string(pt.exact_period) + " != " + std::to_string(expect);
                } else {
                    const int m = m_value(F, phi.image()[0], 1);
                    d["m"] = m;
                    long l = 1;
                    for (const auto& pt : pts) {
                        l = lcm(l, pt.exact_period);
                        if (why.empty() && !(iterate(phi, pt.approx, m) == pt.approx)) why = "phi^m(x) != x";
                    }
                    if (why.empty() && m != expect) why = "m = " + std::to_string(m) + " differs from f or 2f";
                    if (why.empty() && l != m) why = "lcm of exact periods " + std::to_string(l) + " != m";
                }
                d["reason"] = why;
                row.record(why.empty(), std::move(d));
            } catch (const Error& e) {
                d["reason"] = e.what();
                row.record(false, std::move(d));
            }
        }
    }
    return row;
}

namespace {

// sqrt(D), or (1 + sqrt D)/2 when D = 1 mod 4: together with 1 a Z-basis of O_K.
QuadElement integral_generator(const QuadField& K) {
    const long D = K.delta();
    if (((D % 4) + 4) % 4 == 1) return K.element(mpq_class(1, 2), mpq_class(1, 2));
    return K.sqrt_delta();
}

json points_json(const Classification& c) {
    json j = json::array();
    for (const auto& p : c.points) j.push_back({{"value", p.value.to_string()}, {"period", p.period}});
    return j;
}

}  // namespace

SweepRow sweep_classification(long delta, const SweepOptions& opt) {
    QuadField K(delta);
    SweepRow row;
    row.name = "classification " + K.name();
    auto rng = make_rng(opt.seed, row.name);
    const bool inert = ((delta % 8) + 8) % 8 == 5;
    const QuadElement w = integral_generator(K);
    static const long denominators[] = {1, 1, 1, 3, 5};
    std::map<std::size_t, int> hist;
    for (int i = 0; i < opt.samples; ++i) {
        const long a = static_cast<long>(rng() % 21) - 10, b = static_cast<long>(rng() % 21) - 10;
        const long s = denominators[rng() % 5];
        const QuadElement c = (K.element(a) + K.element(b) * w) * K.element(mpq_class(1, s));
        json d{{"field", K.name()}, {"c", c.to_string()}};
        try {
            auto r = classify_quadratic(K, c, opt.precision);
            const std::size_t n = r.points.size();
            std::string why;
            for (const auto& chk : r.checks)
                if (why.empty() && !chk.passed) why = chk.name + ": " + chk.detail;
            if (why.empty() && n == 3) why = "count 3";
            if (why.empty() && !(n == 0 || n == 2 || (inert && n == 4))) why = "count outside the allowed set";
            ++hist[n];
            d["count"] = n;
            d["points"] = points_json(r);
            d["reason"] = why;
            row.record(why.empty(), std::move(d));
        } catch (const Error& e) {
            d["reason"] = e.what();
            row.record(false, std::move(d));
        }
    }
    std::string h = "counts:";
    for (const auto& [n, times] : hist) h += " " + std::to_string(n) + " x" + std::to_string(times);
    row.notes.push_back(h);
    return row;
}

std::optional<std::vector<std::string>> known_portrait_labels(long delta) {
    if (delta == -1) return std::vector<std::string>{"0", "3(2)", "4(1,1)", "4(2)", "5(1,1)", "5(2)", "6(1,1)", "6(2)"};
    if (delta == -3)
        return std::vector<std::string>{"0",      "3(2)",     "4(1,1)", "4(2)", "5(1,1)",
                                        "6(1,1)", "6(2)",     "7(2,1,1)", "8(2)", "8(2,1,1)"};
    return std::nullopt;
}

SweepRow sweep_portraits(long delta, const SweepOptions& opt) {
    QuadField K(delta);
    auto allowed = known_portrait_labels(delta);
    if (!allowed) throw Error(ErrorKind::InvalidArgument, "no portrait list is known for " + K.name());
    SweepRow row;
    row.name = "portraits " + K.name();
    auto rng = make_rng(opt.seed, row.name);
    const QuadElement w = delta == -3 ? K.element(mpq_class(-1, 2), mpq_class(1, 2)) : integral_generator(K);
    std::map<std::string, int> hist;
    for (int i = 0; i < opt.samples; ++i) {
        const long a = static_cast<long>(rng() % 9) - 4, b = static_cast<long>(rng() % 9) - 4;
        const QuadElement c = K.element(a) + K.element(b) * w;
        json d{{"field", K.name()}, {"c", c.to_string()}};
        try {
            Portrait P = compute_portrait(K, c);
            const std::string label = strip_label_suffix(P.label);
            const bool ok = std::find(allowed->begin(), allowed->end(), label) != allowed->end();
            ++hist[P.label];
            d["label"] = P.label;
            d["graph_hash"] = P.graph_hash;
            if (!ok) {
                json vs = json::array();
                for (const auto& v : P.vertices) vs.push_back(v.to_string());
                d["vertices"] = vs;
                d["edges"] = P.edges;
                d["reason"] = "label not in the known list";
            }
            row.record(ok, std::move(d));
        } catch (const Error& e) {
            d["reason"] = e.what();
            row.record(false, std::move(d));
        }
    }
    std::string h = "labels:";
    for (const auto& [label, times] : hist) h += " " + label + " x" + std::to_string(times);
    row.notes.push_back(h);
    return row;
}

SweepRow oracle_stability(const DynPoly& phi0, const FieldDescriptor& F, int levels, std::uint64_t budget) {
    SweepRow row;
    DynPoly phi = phi0.over(F);
    row.name = "oracle stability " + phi.to_string() + " over " + F.describe();
    std::optional<std::size_t> hensel;
    try {
        if (check_star(phi, F)) hensel = periodic_points(phi, F).size();
    } catch (const Error&) {
    }
    if (!hensel) row.notes.push_back("(*) fails: comparing levels with each other only");
    std::optional<std::uint64_t> first;
    for (int M = 1; M <= levels; ++M) {
        json d{{"field", F.describe()}, {"poly", phi.to_string()}, {"level", M}};
        try {
            auto n = periodic_census(build_map(phi, F, M, budget)).periodic_count();
            if (!first) first = n;
            d["count"] = n;
            std::string why;
            if (n != *first) why = "count changed between levels";
            if (hensel && n != *hensel) why = "count differs from the lifted count " + std::to_string(*hensel);
            d["reason"] = why;
            row.record(why.empty(), std::move(d));
        } catch (const Error& e) {
            d["reason"] = e.what();
            row.record(false, std::move(d));
        }
    }
    return row;
}

}  // namespace padyn
