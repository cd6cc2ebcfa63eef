#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "padyn/dynamics.hpp"
#include "padyn/quad.hpp"

namespace padyn {

/// One named assertion with its outcome, collected into report ledgers.
struct Check {
    std::string name;
    bool passed = false;
    std::string detail;
};

/// Q(sqrt(delta)) for squarefree delta != 0, 1.
class QuadField {
   public:
    explicit QuadField(long delta);
    long delta() const { return delta_; }
    QuadElement sqrt_delta() const { return QuadElement::sqrt_delta(delta_); }
    QuadElement element(const mpq_class& a, const mpq_class& b = 0) const { return QuadElement(a, b, delta_); }
    /// Brings a parsed constant into this field (FieldMismatch otherwise).
    QuadElement adopt(const QuadElement& x) const;
    std::string name() const { return "Q(sqrt(" + std::to_string(delta_) + "))"; }

   private:
    long delta_;
};

enum class SplitKind { Split, Ramified, Inert };
std::string to_string(SplitKind k);

/// The prime above 2 and the completion there.
struct SplittingData {
    SplitKind kind;
    int f = 1;
    int e = 1;
    FieldDescriptor completion;
    Embedding embedding;
    bool other_prime = false;
};

/// Split when delta = 1 mod 8, inert when delta = 5 mod 8, ramified when
/// delta = 2, 3 mod 4. In the split case the prime is fixed by the canonical
/// 2-adic square root of delta (the one that is smaller mod 8), or by its
/// negative when `other_prime` is set.
SplittingData splitting_of_two(const QuadField& K, int N = kDefaultPrecision, bool other_prime = false);

/// v_p(x) at the chosen prime above 2; nullopt for x == 0.
std::optional<long> valuation_at_2(const QuadField& K, const QuadElement& x, const SplittingData& data);

/// An exact square root in K (the one with positive rational part, or
/// positive sqrt(delta) part when the rational part is 0), or nullopt.
std::optional<QuadElement> is_square(const QuadField& K, const QuadElement& z);

struct QuadPeriodicPoint {
    QuadElement value;
    int period = 0;
};

struct Classification {
    long delta = 0;
    QuadElement c;
    SplitKind kind = SplitKind::Split;
    int f = 1;
    int e = 1;
    std::optional<long> v_c;  // nullopt for c == 0
    std::vector<QuadPeriodicPoint> points;  // sorted by period, then value
    std::vector<PeriodicPoint> local_points;  // periodic points over the completion
    bool period4_searched = false;
    std::optional<std::string> disclaimer;
    std::vector<Check> checks;
    bool all_checks_pass() const;
};

/// The exact set of K-rational periodic points of X^2 + c, for c integral at
/// the chosen prime above 2. Throws NotIntegralAt2 otherwise.
Classification classify_quadratic(const QuadField& K, const QuadElement& c, int N = kDefaultPrecision,
                                  bool other_prime = false);

/// Evidence that X^2 + c has no K-rational 3-cycle when 2 is inert and c is
/// integral at 2: the numerator of the 3-cycle parametrisation never
/// vanishes on F_4, and |tau| > 1 forces v(c) = 2 v(tau) - 2 < 0.
struct ThreeCycleCertificate {
    std::vector<std::pair<ResidueElement, ResidueElement>> evaluations;  // (tau, numerator(tau)) over F_4
    bool numerator_nonzero = false;
    std::vector<std::pair<long, long>> branch_samples;  // (v(tau), v(c)) checked in Q_2(sqrt 5)
    bool branch_negative = false;
    bool verified() const { return numerator_nonzero && branch_negative; }
};
ThreeCycleCertificate three_cycle_obstruction();

struct Portrait {
    std::vector<QuadElement> vertices;
    std::vector<std::pair<std::size_t, std::size_t>> edges;  // vertex index -> image index
    std::vector<int> cycle_lengths;                          // descending
    std::string label;                                       // "N(n1,n2,...)" or "0"
    std::string graph_hash;                                  // 16 hex digits
    int depth = 0;                                           // longest tail
};

inline constexpr int kDefaultDepthCap = 16;

/// K-rational preperiodic points of X^2 + c, found by pulling the periodic
/// points back through exact square roots.
Portrait compute_portrait(const QuadField& K, const QuadElement& c, int depth_cap = kDefaultDepthCap);
std::string portrait_dot(const Portrait& P, const std::string& title = "portrait");
/// "5(1,1)a" -> "5(1,1)"
std::string strip_label_suffix(const std::string& label);

}  // namespace padyn
