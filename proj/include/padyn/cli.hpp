#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "padyn/number_field.hpp"
#include "padyn/residue_oracle.hpp"

namespace padyn {

inline constexpr int kDynatomicCap = 8;

/// Everything a subcommand needs, validated before dispatch.
struct RunConfig {
    std::string command;
    std::string format = "text";  // text | json | dot
    int precision = kDefaultPrecision;
    std::uint64_t seed = 1;
    std::uint64_t budget = kDefaultOracleBudget;

    // p-adic field
    long p = 2;
    int f = 1;
    int e = 1;
    std::optional<std::vector<std::vector<long>>> eisenstein;
    std::optional<std::vector<long>> unram;

    // map
    std::string poly;
    std::optional<std::string> c;
    bool symbolic_c = false;

    // dynatomic
    int n = 1;
    int verify_mobius = 0;

    // classify
    std::optional<long> delta;
    bool portrait = false;
    bool other_prime = false;
    int depth_cap = kDefaultDepthCap;

    // oracle
    int levels = 3;
    std::optional<std::string> dot_path;

    // verify-bounds
    std::vector<std::string> suites;
    std::vector<long> primes{2};
    std::vector<int> degrees{1, 2};
    int k = 1;
    int samples = 100;
    std::vector<long> deltas;
};

/// A subcommand's result: structured data, a human-readable rendering, an
/// optional DOT graph and the ledger of assertions it checked.
struct Report {
    std::string command;
    nlohmann::json data = nlohmann::json::object();
    std::string text;
    std::optional<std::string> dot;
    std::vector<Check> checks;

    bool passed() const;
    /// data plus "command", "assertions" and "passed".
    nlohmann::json to_json() const;
};

FieldDescriptor field_from_config(const RunConfig& cfg);

Report cmd_periodic(const RunConfig& cfg);
Report cmd_dynatomic(const RunConfig& cfg);
Report cmd_classify(const RunConfig& cfg);
Report cmd_verify_bounds(const RunConfig& cfg);
Report cmd_oracle(const RunConfig& cfg);
Report dispatch(const RunConfig& cfg);

/// Full command line: parses args (without the program name), runs the
/// command and prints in the requested format. Returns 0 when every
/// assertion passed, 1 when one failed, 2 on usage or input errors.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace padyn
