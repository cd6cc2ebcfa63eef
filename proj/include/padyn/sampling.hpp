#pragma once

#include <random>

#include "padyn/dynamics.hpp"

namespace padyn {

/// Seeded samplers shared by the sweeps. All draws use rng() % n so a seed
/// reproduces the same instances on every platform.
ResidueElement sample_residue(const FieldDescriptor& F, std::mt19937_64& rng, bool nonzero = false);
/// Element of O_F whose first `digits` pi-adic digits are random and the
/// rest zero (exact, full precision).
PadicElement sample_integral(const FieldDescriptor& F, std::mt19937_64& rng, int digits = 6);
PadicElement sample_unit(const FieldDescriptor& F, std::mt19937_64& rng, int digits = 6);

/// Random map satisfying (*) of degree d (p | d).
DynPoly sample_star(const FieldDescriptor& F, std::mt19937_64& rng, int d);
/// Random monic map of degree p^k with middle coefficients in the maximal
/// ideal; the constant term is a random integer when `rational_a0`.
DynPoly sample_star_star(const FieldDescriptor& F, std::mt19937_64& rng, int k, bool rational_a0);

}  // namespace padyn
