#pragma once

#include <string_view>

namespace qgf {

// 2018 CODATA / SI exact values.
inline constexpr double kHbar = 1.054571817e-34;       // J s
inline constexpr double kBoltzmann = 1.380649e-23;     // J / K
inline constexpr double kAtomicMassKg = 1.66053906660e-27;

// Masses of commonly used alkali species, in kg.
// Throws Error(Validation) for unknown names.
double species_mass_kg(std::string_view name);

}  // namespace qgf
