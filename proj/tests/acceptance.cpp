// Acceptance checks, one per criterion. `padyn_acceptance N` runs criterion N
// (or "6b"); without arguments every criterion runs. Prints one line each.

#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <regex>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "padyn/cli.hpp"
#include "padyn/dynamics.hpp"
#include "padyn/errors.hpp"
#include "padyn/parse.hpp"
#include "padyn/residue_oracle.hpp"
#include "padyn/sweeps.hpp"

#ifndef PADYN_GOLDEN_DIR
#define PADYN_GOLDEN_DIR "tests/golden"
#endif

using namespace padyn;
using nlohmann::json;

namespace {

struct Outcome {
    bool ok = true;
    std::vector<std::string> notes;

    void require(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            notes.push_back("FAILED " + what);
        }
    }
    void row(const SweepRow& r) {
        require(r.passed(), r.as_check().name + ": " + r.as_check().detail);
    }
    void note(const std::string& s) { notes.push_back(s); }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// x and y agree to at least `digits` pi-adic digits.
bool agree(const PadicElement& x, const PadicElement& y, int digits) {
    auto v = (x - y).valuation();
    return (!v || *v >= digits) && x.precision() >= digits && y.precision() >= digits;
}

Outcome criterion1() {
    Outcome o;
    std::ostringstream out, err;
    const auto t0 = std::chrono::steady_clock::now();
    const int code = run_cli({"--format", "json", "periodic", "--poly", "x^2-1", "--p", "2", "--f", "2"}, out, err);
    const double secs = seconds_since(t0);
    o.require(code == 0, "periodic exits 0 (got " + std::to_string(code) + ")");
    json j = json::parse(out.str(), nullptr, false);
    o.require(!j.is_discarded() && j.value("count", -1) == 4, "periodic reports exactly 4 points");
    if (!j.is_discarded()) o.require(j["periods"] == json({1, 1, 2, 2}), "periods are [1, 1, 2, 2]");
    o.require(secs < 1.0, "runtime < 1 s (" + std::to_string(secs) + " s)");

    auto F = make_field(2, 2, 1, {}, 64);
    auto pts = periodic_points(DynPoly::parse("x^2-1"), F);
    o.require(pts.size() == 4, "library finds 4 points");
    const auto alpha = parse_padic(F, "(1+sqrt(5))/2"), beta = parse_padic(F, "(1-sqrt(5))/2");
    const auto zero = PadicElement::from_integer(F, 0), minus_one = PadicElement::from_integer(F, -1);
    bool a = false, b = false, z = false, m = false;
    for (const auto& pt : pts) {
        if (pt.exact_period == 1) {
            a = a || agree(pt.approx, alpha, 32);
            b = b || agree(pt.approx, beta, 32);
        } else if (pt.exact_period == 2) {
            z = z || agree(pt.approx, zero, 32);
            m = m || agree(pt.approx, minus_one, 32);
        }
    }
    o.require(a && b, "fixed points match (1 +- sqrt 5)/2 to >= 32 digits");
    o.require(z && m, "2-cycle members are 0 and -1 mod 2^32");
    o.note("4 points, periods [1,1,2,2], " + std::to_string(secs) + " s");
    return o;
}

Outcome criterion2() {
    Outcome o;
    SweepOptions opt;
    opt.samples = 500;
    opt.levels = 3;
    opt.precision = 32;
    const auto t0 = std::chrono::steady_clock::now();
    int total = 0;
    for (auto [p, f] : std::vector<std::pair<long, int>>{{2, 1}, {2, 2}, {2, 3}, {3, 1}, {3, 2}, {5, 1}}) {
        auto r = sweep_star(p, f, opt);
        total += r.instances;
        o.row(r);
    }
    const double secs = seconds_since(t0);
    o.require(secs < 60.0, "runtime < 60 s (" + std::to_string(secs) + " s)");
    o.note(std::to_string(total) + " maps, " + std::to_string(secs) + " s");
    return o;
}

Outcome criterion3() {
    Outcome o;
    SweepOptions opt;
    opt.samples = 40;
    int total = 0;
    for (auto [p, f, k] : std::vector<std::tuple<long, int, int>>{{2, 1, 1}, {2, 2, 1}, {2, 2, 2}, {3, 1, 1}, {3, 2, 1}}) {
        auto r = sweep_star_star(p, f, k, opt);
        total += r.instances;
        o.row(r);
    }
    o.require(total == 200, "200 instances");
    auto non = nonexample_check(32);
    o.row(non);
    o.note(std::to_string(total) + " (**) maps; " + non.notes.front());
    return o;
}

Outcome criterion4() {
    Outcome o;
    auto F = make_field(2, 2, 1, {}, 64);
    auto census = exact_period_census(DynPoly::parse("x^2-1"), F);
    o.require(census.k == 1 && census.m == 2 && F.f() == 2, "(k, m, f) = (1, 2, 2)");
    o.require(census.by_period.size() == 2, "exactly periods 1 and 2 occur");
    for (int n : {1, 2}) {
        const auto& e = census.by_period[n];
        const std::string tag = " for n = " + std::to_string(n);
        o.require(e.count == 2, "census count 2" + tag);
        o.require(e.dynatomic_degree == 2, "deg Phi_n = 2" + tag);
        o.require(e.squarefree == true, "Phi_n has no double root" + tag);
    }
    o.note("census {1: 2, 2: 2}, deg Phi_1 = deg Phi_2 = 2, squarefree");
    return o;
}

template <class P>
bool mobius_identity(const P& phi, int m) {
    P prod{typename std::decay_t<decltype(phi[0])>(1)};
    for (int d : divisors(m)) prod = prod * dynatomic(phi, d);
    return prod == iterate_poly(phi, m) - P::x();
}

Outcome criterion5() {
    Outcome o;
    auto sym = parse_symbolic_poly("x^2+c");
    for (int m = 1; m <= 6; ++m)
        o.require(mobius_identity(sym, m), "identity for X^2 + c, m = " + std::to_string(m));

    std::mt19937_64 rng(5);
    auto F = make_field(2, 1, 1, {}, 32);
    auto coef = [&](long lo, long hi) { return lo + static_cast<long>(rng() % static_cast<std::uint64_t>(hi - lo + 1)); };
    for (int i = 0; i < 20; ++i) {
        // monic quartic, middle coefficients even: (**) over Q_2 with k = 2
        std::ostringstream s;
        s << "x^4";
        for (const char* mono : {"*x^3", "*x^2", "*x"}) s << std::showpos << 2 * coef(-3, 3) << mono;
        s << std::showpos << coef(-9, 9);
        const std::string text = s.str();
        o.require(check_star_star(DynPoly::parse(text).attach(F), F), text + " satisfies (**)");
        auto phi = parse_quad_poly(text);
        for (int m = 1; m <= 4; ++m)
            o.require(mobius_identity(phi, m), "identity for " + text + ", m = " + std::to_string(m));
    }
    o.note("X^2 + c for m = 1..6 and 20 integer quartics for m = 1..4");
    return o;
}

Outcome criterion6(bool literal) {
    Outcome o;
    SweepOptions opt;
    int total = 0, failures = 0;
    for (int f : {1, 2, 3}) {
        auto r = sweep_period_law(f, literal, opt);
        total += r.instances;
        failures += r.failures;
        o.row(r);
    }
    o.note(std::to_string(total - failures) + "/" + std::to_string(total) + " values of c satisfy the " +
           (literal ? "literal law (every period = f or 2f)" : "law phi^m = id with lcm of periods = m"));
    return o;
}

Outcome criterion7() {
    Outcome o;
    SweepOptions opt;
    opt.samples = 100;
    for (long delta : {-5L, -3L, -1L, 2L, 3L, 5L, 13L, 17L, 33L}) o.row(sweep_classification(delta, opt));
    auto cert = three_cycle_obstruction();
    o.require(cert.verified(), "F_4 three-cycle obstruction certificate");
    o.note("9 fields x 100 values of c; three-cycle certificate verified");
    return o;
}

Outcome criterion8() {
    Outcome o;
    std::ostringstream out, err;
    const int code = run_cli({"classify", "--delta", "33", "--c", "-71/48"}, out, err);
    o.require(code == 2, "exit code 2 (got " + std::to_string(code) + ")");
    o.require(err.str().find("NotIntegralAt2") != std::string::npos, "error names NotIntegralAt2");
    o.note("exit " + std::to_string(code) + ": " + err.str().substr(0, err.str().find('\n')));
    return o;
}

Outcome criterion9() {
    Outcome o;
    SweepOptions opt;
    opt.samples = 50;
    for (long delta : {-1L, -3L}) {
        auto r = sweep_portraits(delta, opt);
        o.row(r);
        for (const auto& d : r.dumps) o.note("portrait dump: " + d.dump());
        if (!r.notes.empty()) o.note(r.notes.front());
    }
    return o;
}

// Structure of an oracle DOT graph: the chain of cluster labels around each
// node, which nodes are periodic, and the edges, all keyed by node label.
struct DotShape {
    std::map<std::string, std::vector<std::string>> clusters;
    std::set<std::string> periodic;
    std::set<std::pair<std::string, std::string>> edges;
    bool operator==(const DotShape&) const = default;
};

DotShape dot_shape(const std::string& dot) {
    static const std::regex cluster(R"re(^\s*subgraph\s+cluster_\w+\s*\{\s*$)re");
    static const std::regex label(R"re(^\s*label="([^"]*)";\s*$)re");
    static const std::regex node(R"re(^\s*(\w+)\s*\[label="([^"]*)"(.*)\];\s*$)re");
    static const std::regex edge(R"re(^\s*(\w+)\s*->\s*(\w+);\s*$)re");
    DotShape s;
    std::map<std::string, std::string> names;
    std::vector<std::string> stack;
    std::vector<std::pair<std::string, std::string>> raw_edges;
    std::istringstream in(dot);
    std::string line;
    bool pending = false;
    std::smatch mt;
    while (std::getline(in, line)) {
        if (std::regex_match(line, cluster)) {
            stack.emplace_back();
            pending = true;
        } else if (std::regex_match(line, mt, label)) {
            if (pending) stack.back() = mt[1];
            pending = false;
        } else if (std::regex_match(line, mt, node)) {
            names[mt[1]] = mt[2];
            s.clusters[mt[2]] = stack;
            if (mt[3].str().find("doublecircle") != std::string::npos) s.periodic.insert(mt[2]);
        } else if (std::regex_match(line, mt, edge)) {
            raw_edges.emplace_back(mt[1], mt[2]);
        } else if (line.find('}') != std::string::npos && !stack.empty()) {
            stack.pop_back();
        }
    }
    for (const auto& [a, b] : raw_edges) s.edges.emplace(names[a], names[b]);
    return s;
}

Outcome criterion10() {
    Outcome o;
    std::vector<std::pair<std::string, FieldDescriptor>> maps{
        {"x^2-1", make_field(2, 2, 1, {}, 32)},         {"x^2-1", make_field(2, 1, 1, {}, 32)},
        {"x^2+1", make_field(2, 1, 1, {}, 32)},         {"x^2+2", make_field(2, 1, 1, {}, 32)},
        {"x^2", make_field(2, 3, 1, {}, 32)},           {"x^2 + (-1+sqrt(-3))/2", make_field(2, 2, 1, {}, 32)},
        {"x^3+3*x+2", make_field(3, 1, 1, {}, 32)},     {"x^3+3*x^2-1", make_field(3, 2, 1, {}, 32)},
        {"x^5+5*x+1", make_field(5, 1, 1, {}, 32)},     {"x^4+2*x^3+2*x+1", make_field(2, 2, 1, {}, 32)},
    };
    for (const auto& [text, F] : maps) o.row(oracle_stability(DynPoly::parse(text), F, 4));

    // X^2 - 1 over the unramified quadratic: 4 balls mod pi, one periodic class of O_F/pi^2 in each,
    // 0 <-> -1 a 2-cycle, the two fixed points in the balls of t and 1 + t.
    auto F = make_field(2, 2, 1, {}, 32);
    const std::string dot = to_dot(build_map(DynPoly::parse("x^2-1"), F, 2), "X^2 - 1");
    const DotShape got = dot_shape(dot);
    std::map<std::string, int> per_ball;
    for (const auto& [lbl, chain] : got.clusters) per_ball[chain.empty() ? "" : chain.front()] += got.periodic.count(lbl);
    o.require(got.clusters.size() == 16 && per_ball.size() == 4, "16 classes nested in 4 residue balls");
    bool one_each = true;
    for (const auto& [ball, n] : per_ball) one_each = one_each && n == 1;
    o.require(one_each, "one periodic class per residue ball");
    o.require(got.edges.count({"0", "3"}) && got.edges.count({"3", "0"}), "2-cycle 0 <-> -1");
    o.require(got.edges.count({"2+3t", "2+3t"}) && got.edges.count({"3+t", "3+t"}), "two fixed classes");

    std::ifstream golden(std::string(PADYN_GOLDEN_DIR) + "/x2_minus_1_level2.dot");
    o.require(static_cast<bool>(golden), "golden file x2_minus_1_level2.dot present");
    std::stringstream buf;
    buf << golden.rdbuf();
    o.require(dot_shape(buf.str()) == got, "DOT nesting matches the golden file structurally");
    o.note(std::to_string(maps.size()) + " maps stable for M = 1..4; X^2 - 1 DOT matches golden");
    return o;
}

const std::map<std::string, std::pair<std::string, std::function<Outcome()>>>& criteria() {
    static const std::map<std::string, std::pair<std::string, std::function<Outcome()>>> c{
        {"1", {"X^2 - 1 over the unramified quadratic of Q_2", criterion1}},
        {"2", {"count bound for random (*) maps", criterion2}},
        {"3", {"exactness for (**) maps and the period-4 nonexample", criterion3}},
        {"4", {"period census of X^2 - 1", criterion4}},
        {"5", {"Mobius identity", criterion5}},
        {"6", {"period law, literal reading", [] { return criterion6(true); }}},
        {"6b", {"period law, phi^m = id and lcm = m", [] { return criterion6(false); }}},
        {"7", {"classification over quadratic fields", criterion7}},
        {"8", {"c = -71/48 over Q(sqrt 33) is rejected", criterion8}},
        {"9", {"portrait membership over Q(i) and Q(sqrt -3)", criterion9}},
        {"10", {"oracle stability and the X^2 - 1 DOT nesting", criterion10}},
    };
    return c;
}

bool run(const std::string& id) {
    const auto& [title, fn] = criteria().at(id);
    Outcome o;
    try {
        o = fn();
    } catch (const std::exception& e) {
        o.require(false, std::string("exception: ") + e.what());
    }
    std::cout << "criterion " << id << ": " << (o.ok ? "PASS" : "FAIL") << " - " << title << "\n";
    for (const auto& n : o.notes) std::cout << "    " << n << "\n";
    return o.ok;
}

}  // namespace

int main(int argc, char** argv) {
    std::vector<std::string> ids;
    for (int i = 1; i < argc; ++i) ids.emplace_back(argv[i]);
    if (ids.empty())
        for (const char* id : {"1", "2", "3", "4", "5", "6", "6b", "7", "8", "9", "10"}) ids.emplace_back(id);
    bool ok = true;
    for (const auto& id : ids) {
        if (!criteria().count(id)) {
            std::cerr << "unknown criterion " << id << "\n";
            return 2;
        }
        ok = run(id) && ok;
    }
    return ok ? 0 : 1;
}
