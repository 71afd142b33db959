#pragma once

#include <array>
#include <string>
#include <vector>

#include "enersim/morph_pde.hpp"

namespace enersim {

using Rgb = std::array<unsigned char, 3>;

inline constexpr Rgb kColorA{0, 0, 255};        // polymer A, blue
inline constexpr Rgb kColorSolvent{255, 0, 0};  // solvent, red
inline constexpr Rgb kColorB{255, 255, 0};      // polymer B, yellow

void write_ppm(const std::string& path, int width, int height, const std::vector<Rgb>& pixels);

// One pixel per lattice site, spin -1/0/+1 -> A/S/B colors.
void write_lattice_ppm(const std::string& path, int side, const std::vector<int>& spins);

// Threshold rendering of (m, phi): solvent-dominant where 1-phi > 0.5,
// otherwise A/B by the sign of m.
void write_fields_ppm(const std::string& path, const FieldPair& fields);

}  // namespace enersim
