#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "padyn/dynamics.hpp"
#include "padyn/functional_graph.hpp"

namespace padyn {

inline constexpr std::uint64_t kDefaultOracleBudget = std::uint64_t{1} << 24;

/// The map induced by phi on the finite ring O_F / pi^M, tabulated in full.
///
/// An element sum_j w_j pi^j (w_j in W = Z_p[t]/(g), 0 <= j < e) is zero
/// mod pi^M exactly when p^ceil((M-j)/e) divides w_j, so elements are the
/// coordinate tuples (x_ij mod p^ceil((M-j)/e)). Arithmetic is done with
/// plain 64-bit integers, independently of PadicElement.
class FiniteRingMap {
   public:
    const FieldDescriptor& field() const { return F_; }
    int level() const { return M_; }
    std::uint64_t size() const { return table_.size(); }
    const std::vector<std::uint64_t>& table() const { return table_; }

    /// Coordinates of an element, index j*f + i for t^i pi^j.
    std::vector<std::uint64_t> coordinates(std::uint64_t index) const;
    std::uint64_t index_of(const std::vector<std::uint64_t>& coords) const;
    /// Image of an element in O_F / pi^{M-1} (M >= 2), as an index there.
    std::uint64_t project(std::uint64_t index) const;
    /// Index of the residue class in the residue field (ResidueField::index).
    std::uint64_t residue_index(std::uint64_t index) const;
    /// Text such as "1+2t+pi" for use in reports and DOT files.
    std::string label(std::uint64_t index) const;

   private:
    friend FiniteRingMap build_map(const DynPoly&, const FieldDescriptor&, int, std::uint64_t);
    FieldDescriptor F_;
    int M_ = 1;
    std::vector<std::uint64_t> modulus_;  // per coordinate: p^ceil((M-j)/e)
    std::vector<std::uint64_t> table_;
    FiniteRingMap(FieldDescriptor F, int M) : F_(std::move(F)), M_(M) {}
};

/// Throws BudgetExceeded when p^{fM} > budget.
FiniteRingMap build_map(const DynPoly& phi, const FieldDescriptor& F, int M,
                        std::uint64_t budget = kDefaultOracleBudget);

inline FunctionalGraphCensus periodic_census(const FiniteRingMap& map) { return analyze_functional_graph(map.table()); }

/// Number of periodic elements at levels 1..M_max.
std::vector<std::uint64_t> oracle_count(const DynPoly& phi, const FieldDescriptor& F, int M_max,
                                        std::uint64_t budget = kDefaultOracleBudget);

/// Functional graph in DOT, with each level-L ball (L = 1..M-1) drawn as a
/// cluster nested inside its parent ball. Periodic elements are double
/// circles.
std::string to_dot(const FiniteRingMap& map, const std::string& title = "oracle");

}  // namespace padyn
