#include "padyn/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "CLI11.hpp"
#include "padyn/arith.hpp"
#include "padyn/errors.hpp"
#include "padyn/parse.hpp"
#include "padyn/sweeps.hpp"

namespace padyn {

using nlohmann::json;

bool Report::passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

json Report::to_json() const {
    json j = data;
    j["command"] = command;
    json ledger = json::array();
    for (const auto& c : checks) ledger.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
    j["assertions"] = ledger;
    j["passed"] = passed();
    return j;
}

namespace {

std::string pass_word(bool ok) { return ok ? "pass" : "FAIL"; }

void render_checks(std::ostream& os, const std::vector<Check>& checks) {
    os << "assertions:\n";
    for (const auto& c : checks) os << "  [" << pass_word(c.passed) << "] " << c.name << " -- " << c.detail << "\n";
}

std::vector<long> parse_longs(const std::string& s, char sep) {
    std::vector<long> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) {
        try {
            size_t used = 0;
            out.push_back(std::stol(item, &used));
            if (item.find_first_not_of(" ", used) != std::string::npos) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw Error(ErrorKind::ParseError, "expected an integer, got \"" + item + "\"");
        }
    }
    return out;
}

std::optional<QuadElement> c_value(const RunConfig& cfg) {
    if (!cfg.c) return std::nullopt;
    return parse_quad(*cfg.c);
}

DynPoly map_from_config(const RunConfig& cfg) {
    if (cfg.poly.empty()) throw Error(ErrorKind::InvalidArgument, "--poly is required");
    return DynPoly::parse(cfg.poly, c_value(cfg));
}

// Inner coefficients are polynomials in c.
std::string symbolic_to_string(const SymbolicPoly& P) {
    if (P.degree() < 0) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = P.degree(); i >= 0; --i) {
        const auto& a = P[i];
        if (a.degree() < 0) continue;
        std::string s = a.to_string("c");
        const bool compound = a.degree() > 0 && s.find_first_of("+-", 1) != std::string::npos;
        const bool negative = !compound && s[0] == '-';
        if (negative) s = s.substr(1);
        os << (first ? (negative ? "-" : "") : (negative ? " - " : " + "));
        first = false;
        if (compound) s = "(" + s + ")";
        if (i == 0) {
            os << s;
            continue;
        }
        if (s != "1") os << s << "*";
        os << "X" << (i > 1 ? "^" + std::to_string(i) : "");
    }
    return os.str();
}

}  // namespace

FieldDescriptor field_from_config(const RunConfig& cfg) {
    return make_field(cfg.p, cfg.f, cfg.e, cfg.eisenstein, cfg.precision, cfg.unram);
}

// ----------------------------------------------------------------------------
// periodic

Report cmd_periodic(const RunConfig& cfg) {
    Report R;
    R.command = "periodic";
    const FieldDescriptor F = field_from_config(cfg);
    const DynPoly phi = map_from_config(cfg).over(F);
    if (!check_star(phi, F))
        throw Error(ErrorKind::StarConditionFailed, phi.to_string() + " does not satisfy (*) over " + F.describe());
    const auto& rf = F.residue_field();
    const auto pts = periodic_points(phi, F);
    const std::uint64_t bound = F.residue_size();

    R.checks.push_back({"count <= p^f", pts.size() <= bound,
                        std::to_string(pts.size()) + " <= " + std::to_string(bound)});
    bool returns = true;
    for (const auto& pt : pts) returns = returns && iterate(phi, pt.approx, pt.exact_period) == pt.approx;
    R.checks.push_back({"each point returns after its exact period", returns, "phi^n(x) = x mod pi^N"});
    SweepRow oracle = oracle_stability(phi, F, std::min(cfg.levels, F.precision()), cfg.budget);
    // Levels beyond the budget are reported, not failed.
    oracle.failures = 0;
    std::vector<json> kept;
    int skipped = 0;
    for (const auto& d : oracle.dumps) {
        if (d.value("reason", "").find("BudgetExceeded") != std::string::npos) {
            ++skipped;
            continue;
        }
        ++oracle.failures;
        kept.push_back(d);
    }
    oracle.instances -= skipped;
    oracle.dumps = kept;
    if (oracle.instances > 0) R.checks.push_back(oracle.as_check());

    bool star_star = false;
    try {
        star_star = check_star_star(phi, F);
    } catch (const Error&) {
    }
    std::optional<int> k, m;
    bool hypothesis = false;
    if (star_star) {
        k = prime_power(phi.degree())->second;
        hypothesis = *k % F.f() == 0 || phi.constant_term_rational();
        m = m_value(F, phi.image()[0], *k);
        if (hypothesis) {
            R.checks.push_back({"(**): count = p^f", pts.size() == bound,
                                std::to_string(pts.size()) + " = " + std::to_string(bound)});
            bool divides = std::all_of(pts.begin(), pts.end(), [&](const auto& pt) { return *m % pt.exact_period == 0; });
            R.checks.push_back({"(**): every exact period divides m", divides, "m = " + std::to_string(*m)});
        }
    }

    json jp = json::array();
    std::vector<int> periods;
    for (const auto& pt : pts) {
        jp.push_back({{"residue", rf.to_string(pt.residue)}, {"period", pt.exact_period}, {"value", pt.approx.to_string()}});
        periods.push_back(pt.exact_period);
    }
    std::sort(periods.begin(), periods.end());
    R.data = {{"field", F.to_json()},      {"poly", phi.to_string()}, {"bound", bound},
              {"count", pts.size()},       {"periods", periods},      {"points", jp},
              {"star", true},              {"star_star", star_star},  {"hypothesis_exact", star_star && hypothesis},
              {"m", m ? json(*m) : json()}, {"k", k ? json(*k) : json()}};

    std::ostringstream os;
    os << "field: " << F.describe() << "\n";
    os << "map: " << phi.to_string() << "\n";
    os << "(*) holds; bound p^f = " << bound << "\n";
    os << "periodic points: " << pts.size() << "\n";
    for (const auto& pt : pts)
        os << "  residue " << std::setw(8) << std::left << rf.to_string(pt.residue) << " period " << pt.exact_period
           << "  x = " << pt.approx.to_string() << "\n";
    if (star_star)
        os << "(**) holds with k = " << *k << ", m = " << *m << "; f | k or a0 in Q: " << (hypothesis ? "yes" : "no")
           << "\n";
    else
        os << "(**) does not hold\n";
    render_checks(os, R.checks);
    R.text = os.str();
    return R;
}

// ----------------------------------------------------------------------------
// dynatomic

Report cmd_dynatomic(const RunConfig& cfg) {
    Report R;
    R.command = "dynatomic";
    if (cfg.n < 1 || cfg.n > kDynatomicCap || cfg.verify_mobius < 0 || cfg.verify_mobius > kDynatomicCap)
        throw Error(ErrorKind::InvalidArgument, "n and --verify-mobius must lie in [1, " +
                                                    std::to_string(kDynatomicCap) + "]");
    if (cfg.poly.empty()) throw Error(ErrorKind::InvalidArgument, "--poly is required");
    std::ostringstream os;
    json mobius = json::array();
    auto run = [&](const auto& phi, auto&& show) {
        using P = std::decay_t<decltype(phi)>;
        if (phi.degree() < 2) throw Error(ErrorKind::InvalidArgument, "a dynamical polynomial needs degree >= 2");
        const auto Phi = dynatomic(phi, cfg.n);
        const long want = dynatomic_degree(phi.degree(), cfg.n);
        R.checks.push_back({"deg Phi_" + std::to_string(cfg.n) + " = sum mu(n/d) deg^d", Phi.degree() == want,
                            std::to_string(Phi.degree()) + " vs " + std::to_string(want)});
        R.data["poly"] = show(phi);
        R.data["phi_n"] = show(Phi);
        R.data["degree"] = Phi.degree();
        os << "phi = " << show(phi) << "\n";
        os << "Phi_" << cfg.n << " = " << show(Phi) << "\n";
        for (int m = 1; m <= cfg.verify_mobius; ++m) {
            using R0 = std::decay_t<decltype(phi[0])>;
            P prod{R0(1)};
            for (int d : divisors(m)) prod = prod * dynatomic(phi, d);
            const bool ok = prod == iterate_poly(phi, m) - P::x();
            mobius.push_back({{"m", m}, {"holds", ok}});
            R.checks.push_back({"phi^" + std::to_string(m) + "(X) - X = prod_{n | m} Phi_n", ok, "exact"});
            os << "Mobius identity m = " << m << ": " << (ok ? "holds" : "FAILS") << "\n";
        }
    };
    if (cfg.symbolic_c) {
        run(parse_symbolic_poly(cfg.poly), [](const SymbolicPoly& p) { return symbolic_to_string(p); });
    } else {
        run(parse_quad_poly(cfg.poly, c_value(cfg)), [](const Poly<QuadElement>& p) { return p.to_string("X"); });
    }
    R.data["n"] = cfg.n;
    R.data["symbolic_c"] = cfg.symbolic_c;
    R.data["mobius"] = mobius;
    render_checks(os, R.checks);
    R.text = os.str();
    return R;
}

// ----------------------------------------------------------------------------
// classify

Report cmd_classify(const RunConfig& cfg) {
    Report R;
    R.command = "classify";
    if (!cfg.delta) throw Error(ErrorKind::InvalidArgument, "--delta is required");
    if (!cfg.c) throw Error(ErrorKind::InvalidArgument, "--c is required");
    QuadField K(*cfg.delta);
    const QuadElement c = K.adopt(parse_quad(*cfg.c));
    auto cls = classify_quadratic(K, c, cfg.precision, cfg.other_prime);
    R.checks = cls.checks;
    const auto data = splitting_of_two(K, cfg.precision, cfg.other_prime);

    json split{{"kind", to_string(data.kind)}, {"f", data.f}, {"e", data.e}, {"completion", data.completion.to_json()}};
    if (data.kind == SplitKind::Split) {
        split["sqrt_delta"] = data.embedding.root()->to_string();
        split["other_prime"] = cfg.other_prime;
    }
    json pts = json::array();
    for (const auto& p : cls.points) pts.push_back({{"value", p.value.to_string()}, {"period", p.period}});
    json local = json::array();
    for (const auto& p : cls.local_points) local.push_back({{"value", p.approx.to_string()}, {"period", p.exact_period}});
    R.data = {{"delta", K.delta()},
              {"c", c.to_string()},
              {"splitting", split},
              {"valuation_of_c", cls.v_c ? json(*cls.v_c) : json("infinity")},
              {"periodic_points", pts},
              {"count", cls.points.size()},
              {"local_periodic_points", local},
              {"period4_searched", cls.period4_searched}};
    if (cls.disclaimer) R.data["disclaimer"] = *cls.disclaimer;

    if (data.kind == SplitKind::Inert) {
        auto cert = three_cycle_obstruction();
        R.checks.push_back({"no 3-cycle: F_4 numerator nonzero and |tau| > 1 forces v(c) < 0", cert.verified(),
                            "checked at all 4 residues and " + std::to_string(cert.branch_samples.size()) +
                                " branch valuations"});
    }

    std::ostringstream os;
    os << "field: " << K.name() << ", 2 is " << to_string(data.kind) << " (f=" << data.f << ", e=" << data.e << ")\n";
    os << "c = " << c << ", v(c) = " << (cls.v_c ? std::to_string(*cls.v_c) : "infinity") << "\n";
    os << "periodic points: " << cls.points.size() << "\n";
    for (const auto& p : cls.points) os << "  " << p.value << "  period " << p.period << "\n";
    if (cls.disclaimer) os << "note: " << *cls.disclaimer << "\n";

    if (cfg.portrait || cfg.format == "dot") {
        Portrait P = compute_portrait(K, c, cfg.depth_cap);
        json vs = json::array();
        for (const auto& v : P.vertices) vs.push_back(v.to_string());
        R.data["portrait"] = {{"label", P.label},   {"vertices", vs},     {"edges", P.edges},
                              {"graph_hash", P.graph_hash}, {"cycle_lengths", P.cycle_lengths}, {"depth", P.depth}};
        if (auto known = known_portrait_labels(K.delta())) {
            const std::string label = strip_label_suffix(P.label);
            const bool ok = std::find(known->begin(), known->end(), label) != known->end();
            R.checks.push_back({"portrait label in the known list for " + K.name(), ok, P.label});
        }
        os << "portrait: " << P.label << " (hash " << P.graph_hash << ", " << P.vertices.size() << " vertices)\n";
        for (const auto& [a, b] : P.edges) os << "  " << P.vertices[a] << " -> " << P.vertices[b] << "\n";
        R.dot = portrait_dot(P, K.name() + ", c = " + c.to_string());
    }
    render_checks(os, R.checks);
    R.text = os.str();
    return R;
}

// ----------------------------------------------------------------------------
// verify-bounds

Report cmd_verify_bounds(const RunConfig& cfg) {
    Report R;
    R.command = "verify-bounds";
    SweepOptions opt;
    opt.seed = cfg.seed;
    opt.samples = cfg.samples;
    opt.levels = cfg.levels;
    opt.precision = cfg.precision;
    opt.budget = cfg.budget;
    if (cfg.samples < 1) throw Error(ErrorKind::InvalidArgument, "--samples must be >= 1");

    std::vector<std::string> suites = cfg.suites;
    if (suites.empty()) suites = {"star", "unicritical", "star-star", "nonexample"};
    std::vector<SweepRow> rows;
    for (const auto& s : suites) {
        if (s == "star" || s == "unicritical" || s == "star-star") {
            for (long p : cfg.primes)
                for (int f : cfg.degrees) {
                    if (s == "star") rows.push_back(sweep_star(p, f, opt));
                    if (s == "unicritical") rows.push_back(sweep_unicritical(p, f, opt));
                    if (s == "star-star") rows.push_back(sweep_star_star(p, f, cfg.k, opt));
                }
        } else if (s == "nonexample") {
            rows.push_back(nonexample_check(opt.precision));
        } else if (s == "period-law" || s == "period-law-literal") {
            for (int f : cfg.degrees) rows.push_back(sweep_period_law(f, s == "period-law-literal", opt));
        } else if (s == "classification") {
            auto ds = cfg.deltas.empty() ? std::vector<long>{-5, -3, -1, 2, 3, 5, 13, 17, 33} : cfg.deltas;
            for (long d : ds) rows.push_back(sweep_classification(d, opt));
        } else if (s == "portraits") {
            auto ds = cfg.deltas.empty() ? std::vector<long>{-1, -3} : cfg.deltas;
            for (long d : ds) rows.push_back(sweep_portraits(d, opt));
        } else {
            throw Error(ErrorKind::InvalidArgument, "unknown suite '" + s + "'");
        }
    }

    json jr = json::array();
    std::ostringstream os;
    os << "seed " << cfg.seed << ", " << cfg.samples << " samples per row, precision " << cfg.precision << "\n";
    os << std::left << std::setw(58) << "row" << std::setw(11) << "instances" << std::setw(10) << "failures"
       << "status\n";
    for (const auto& row : rows) {
        jr.push_back(row.to_json());
        R.checks.push_back(row.as_check());
        os << std::left << std::setw(58) << row.name << std::setw(11) << row.instances << std::setw(10)
           << row.failures << (row.passed() ? "PASS" : "FAIL") << "\n";
    }
    for (const auto& row : rows) {
        for (const auto& n : row.notes) os << "note (" << row.name << "): " << n << "\n";
        for (const auto& d : row.dumps) os << "counterexample (" << row.name << "): " << d.dump() << "\n";
    }
    R.data = {{"seed", cfg.seed}, {"samples", cfg.samples}, {"precision", cfg.precision}, {"rows", jr}};
    R.text = os.str();
    return R;
}

// ----------------------------------------------------------------------------
// oracle

Report cmd_oracle(const RunConfig& cfg) {
    Report R;
    R.command = "oracle";
    if (cfg.levels < 1) throw Error(ErrorKind::InvalidArgument, "--levels must be >= 1");
    const FieldDescriptor F = field_from_config(cfg);
    const DynPoly phi = map_from_config(cfg).over(F);
    std::vector<std::uint64_t> counts;
    for (int M = 1; M <= cfg.levels; ++M) counts.push_back(periodic_census(build_map(phi, F, M, cfg.budget)).periodic_count());
    SweepRow row = oracle_stability(phi, F, cfg.levels, cfg.budget);
    R.checks.push_back(row.as_check());
    std::optional<std::size_t> hensel;
    try {
        if (check_star(phi, F)) hensel = periodic_points(phi, F).size();
    } catch (const Error&) {
    }
    const auto top = build_map(phi, F, cfg.levels, cfg.budget);
    const std::string dot = to_dot(top, phi.to_string());
    if (cfg.dot_path) {
        std::ofstream file(*cfg.dot_path);
        if (!file) throw Error(ErrorKind::InvalidArgument, "cannot write " + *cfg.dot_path);
        file << dot;
    }
    R.dot = dot;
    R.data = {{"field", F.to_json()},
              {"poly", phi.to_string()},
              {"levels", cfg.levels},
              {"counts", counts},
              {"hensel_count", hensel ? json(*hensel) : json()},
              {"dot_file", cfg.dot_path ? json(*cfg.dot_path) : json()}};
    std::ostringstream os;
    os << "field: " << F.describe() << "\nmap: " << phi.to_string() << "\n";
    for (int M = 1; M <= cfg.levels; ++M)
        os << "level " << M << ": " << top.field().residue_size() << "^" << M << " elements, "
           << counts[static_cast<size_t>(M - 1)] << " periodic\n";
    if (hensel) os << "lifted periodic points: " << *hensel << "\n";
    if (cfg.dot_path) os << "DOT graph written to " << *cfg.dot_path << "\n";
    for (const auto& n : row.notes) os << "note: " << n << "\n";
    render_checks(os, R.checks);
    R.text = os.str();
    return R;
}

Report dispatch(const RunConfig& cfg) {
    if (cfg.command == "periodic") return cmd_periodic(cfg);
    if (cfg.command == "dynatomic") return cmd_dynatomic(cfg);
    if (cfg.command == "classify") return cmd_classify(cfg);
    if (cfg.command == "verify-bounds") return cmd_verify_bounds(cfg);
    if (cfg.command == "oracle") return cmd_oracle(cfg);
    throw Error(ErrorKind::InvalidArgument, "unknown command '" + cfg.command + "'");
}

// ----------------------------------------------------------------------------
// Command line

namespace {

void add_field_options(CLI::App* sub, RunConfig& cfg, std::string& eis, std::string& unram) {
    sub->add_option("--p", cfg.p, "prime p")->capture_default_str();
    sub->add_option("--f", cfg.f, "residue degree f")->capture_default_str();
    sub->add_option("--e", cfg.e, "ramification index e")->capture_default_str();
    sub->add_option("--eisenstein", eis, "Eisenstein coefficients low first, ';' between coefficients, ',' between "
                                         "t-coordinates, e.g. \"-2;0;1\"");
    sub->add_option("--unram", unram, "unramified modulus low first, e.g. \"1,1,1\"");
}

void add_map_options(CLI::App* sub, RunConfig& cfg, bool required = true) {
    auto* opt = sub->add_option("--poly", cfg.poly, "polynomial in x, e.g. \"x^2-1\"");
    if (required) opt->required();
    sub->add_option("--c", cfg.c, "value substituted for c");
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    RunConfig cfg;
    std::string eis, unram, deltas;
    CLI::App app{"p-adic periodic points of polynomial maps", "padyn"};
    app.require_subcommand(1);
    app.add_option("--format", cfg.format, "text, json or dot")
        ->check(CLI::IsMember({"text", "json", "dot"}))
        ->capture_default_str();
    app.add_option("--precision", cfg.precision, "working precision N (digits)")->capture_default_str();
    app.add_option("--seed", cfg.seed, "seed for randomized sweeps")->capture_default_str();
    app.add_option("--budget", cfg.budget, "largest finite ring the oracle may tabulate")->capture_default_str();

    auto* periodic = app.add_subcommand("periodic", "periodic points of a (*) map over a p-adic field");
    add_field_options(periodic, cfg, eis, unram);
    add_map_options(periodic, cfg);
    periodic->add_option("--levels", cfg.levels, "oracle cross-check levels")->capture_default_str();

    auto* dyn = app.add_subcommand("dynatomic", "dynatomic polynomials and the Mobius identity");
    add_map_options(dyn, cfg);
    dyn->add_flag("--symbolic-c", cfg.symbolic_c, "treat c as an indeterminate");
    dyn->add_option("--n", cfg.n, "period n")->capture_default_str();
    dyn->add_option("--verify-mobius", cfg.verify_mobius, "check phi^m(X) - X = prod Phi_d for m = 1..M");

    auto* cls = app.add_subcommand("classify", "K-rational periodic points of X^2 + c over Q(sqrt(delta))");
    cls->add_option("--delta", cfg.delta, "squarefree delta")->required();
    cls->add_option("--c", cfg.c, "c in Q(sqrt(delta)), e.g. \"-1\", \"i\", \"(1+sqrt(5))/2\"")->required();
    cls->add_flag("--portrait", cfg.portrait, "also compute the preperiodic portrait");
    cls->add_flag("--other-prime", cfg.other_prime, "use the other prime above 2 when 2 splits");
    cls->add_option("--depth-cap", cfg.depth_cap, "largest preimage depth explored")->capture_default_str();

    auto* vb = app.add_subcommand("verify-bounds", "seeded property sweeps");
    vb->add_option("--suite", cfg.suites,
                   "star, unicritical, star-star, nonexample, period-law, period-law-literal, classification, "
                   "portraits (repeatable; default star, unicritical, star-star, nonexample)")
        ->delimiter(',');
    vb->add_option("--p", cfg.primes, "primes")->delimiter(',')->capture_default_str();
    vb->add_option("--f", cfg.degrees, "residue degrees")->delimiter(',')->capture_default_str();
    vb->add_option("--k", cfg.k, "degree p^k for star-star")->capture_default_str();
    vb->add_option("--samples", cfg.samples, "instances per row")->capture_default_str();
    vb->add_option("--levels", cfg.levels, "oracle levels")->capture_default_str();
    vb->add_option("--delta", deltas, "fields for classification/portraits, e.g. \"-1,-3\"");

    auto* orc = app.add_subcommand("oracle", "exhaustive census on O_F / pi^M");
    add_field_options(orc, cfg, eis, unram);
    add_map_options(orc, cfg);
    orc->add_option("--levels", cfg.levels, "levels M = 1..L")->capture_default_str();
    orc->add_option("--dot", cfg.dot_path, "write the level-L functional graph as DOT");

    for (auto* sub : {periodic, dyn, cls, vb, orc}) sub->fallthrough();

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }
    for (auto* sub : app.get_subcommands()) cfg.command = sub->get_name();

    try {
        if (!eis.empty()) {
            std::vector<std::vector<long>> coeffs;
            std::stringstream ss(eis);
            std::string item;
            while (std::getline(ss, item, ';')) coeffs.push_back(parse_longs(item, ','));
            cfg.eisenstein = coeffs;
        }
        if (!unram.empty()) cfg.unram = parse_longs(unram, ',');
        if (!deltas.empty()) cfg.deltas = parse_longs(deltas, ',');
        if (cfg.format == "dot" && cfg.command != "classify" && cfg.command != "oracle")
            throw Error(ErrorKind::InvalidArgument, "--format dot is available for classify and oracle");

        Report R = dispatch(cfg);
        if (cfg.format == "json")
            out << R.to_json().dump(2) << "\n";
        else if (cfg.format == "dot")
            out << *R.dot;
        else
            out << R.text;
        if (!R.passed()) err << "assertion failure: see the ledger above\n";
        return R.passed() ? 0 : 1;
    } catch (const Error& e) {
        if (cfg.format == "json") {
            json j{{"command", cfg.command},
                   {"error", {{"kind", std::string(to_string(e.kind()))}, {"message", e.what()}}},
                   {"assertions", json::array()},
                   {"passed", false}};
            out << j.dump(2) << "\n";
        }
        err << "error: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace padyn
