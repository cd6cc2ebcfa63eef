#include "padyn/sampling.hpp"

#include "padyn/errors.hpp"

namespace padyn {

ResidueElement sample_residue(const FieldDescriptor& F, std::mt19937_64& rng, bool nonzero) {
    const auto& rf = F.residue_field();
    std::uint64_t q = rf.size();
    return rf.element(nonzero ? 1 + rng() % (q - 1) : rng() % q);
}

PadicElement sample_integral(const FieldDescriptor& F, std::mt19937_64& rng, int digits) {
    std::vector<ResidueElement> d;
    for (int i = 0; i < digits; ++i) d.push_back(sample_residue(F, rng));
    return PadicElement::from_digits(F, d, 0, F.precision());
}

PadicElement sample_unit(const FieldDescriptor& F, std::mt19937_64& rng, int digits) {
    std::vector<ResidueElement> d{sample_residue(F, rng, true)};
    for (int i = 1; i < digits; ++i) d.push_back(sample_residue(F, rng));
    return PadicElement::from_digits(F, d, 0, F.precision());
}

DynPoly sample_star(const FieldDescriptor& F, std::mt19937_64& rng, int d) {
    if (d < 2 || d % F.p() != 0) throw Error(ErrorKind::DegreeNotDivisibleByP, "degree must be a multiple of p");
    const PadicElement pi = PadicElement::uniformizer(F);
    PadicPoly a;
    for (int i = 0; i < d; ++i) a.push_back(i % F.p() == 0 ? sample_integral(F, rng) : pi * sample_integral(F, rng));
    a.push_back(sample_unit(F, rng));
    return DynPoly::from_image(std::move(a));
}

DynPoly sample_star_star(const FieldDescriptor& F, std::mt19937_64& rng, int k, bool rational_a0) {
    long d = 1;
    for (int i = 0; i < k; ++i) d *= F.p();
    const PadicElement pi = PadicElement::uniformizer(F);
    PadicPoly a;
    a.push_back(rational_a0 ? PadicElement::from_integer(F, static_cast<long>(rng() % 41) - 20)
                            : sample_integral(F, rng));
    for (long i = 1; i < d; ++i) a.push_back(pi * sample_integral(F, rng));
    a.push_back(PadicElement::from_integer(F, 1));
    return DynPoly::from_image(std::move(a), rational_a0);
}

}  // namespace padyn
