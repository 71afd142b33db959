#include "enersim/ppm.hpp"

#include <fstream>

#include "enersim/errors.hpp"

namespace enersim {

void write_ppm(const std::string& path, int width, int height, const std::vector<Rgb>& pixels) {
    if (static_cast<int>(pixels.size()) != width * height)
        throw DimensionError("write_ppm: pixel count does not match dimensions");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("write_ppm: cannot open " + path);
    out << "P6\n" << width << " " << height << "\n255\n";
    for (const Rgb& p : pixels) out.write(reinterpret_cast<const char*>(p.data()), 3);
}

void write_lattice_ppm(const std::string& path, int side, const std::vector<int>& spins) {
    std::vector<Rgb> px(spins.size());
    for (std::size_t i = 0; i < spins.size(); ++i)
        px[i] = spins[i] < 0 ? kColorA : (spins[i] == 0 ? kColorSolvent : kColorB);
    write_ppm(path, side, side, px);
}

void write_fields_ppm(const std::string& path, const FieldPair& fields) {
    std::vector<Rgb> px(fields.m.size());
    for (std::size_t i = 0; i < fields.m.size(); ++i) {
        if (1.0 - fields.phi[i] > 0.5)
            px[i] = kColorSolvent;
        else
            px[i] = fields.m[i] < 0 ? kColorA : kColorB;
    }
    write_ppm(path, fields.grid.n(), fields.grid.n(), px);
}

}  // namespace enersim
