#include "besovlab/snapshot_io.hpp"

#include <bit>
#include <cstring>
#include <fstream>

namespace besovlab {

namespace {

static_assert(std::endian::native == std::endian::little,
              "BNSL serialization assumes a little-endian host");

template <typename T>
void put(std::ofstream& out, T value) {
    out.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

template <typename T>
T get(std::ifstream& in) {
    T value{};
    in.read(reinterpret_cast<char*>(&value), sizeof(T));
    return value;
}

constexpr char kMagic[4] = {'B', 'N', 'S', 'L'};

}  // namespace

void write_snapshot(const std::filesystem::path& path, const SpectralField& field,
                    double epsilon) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot open snapshot for writing: " + path.string());
    out.write(kMagic, 4);
    put<std::uint32_t>(out, 1);
    put<std::uint32_t>(out, Grid::kDim);
    put<std::uint32_t>(out, static_cast<std::uint32_t>(field.components()));
    put<std::uint32_t>(out, static_cast<std::uint32_t>(field.grid().n()));
    put<double>(out, field.time_tag().value_or(0.0));
    put<double>(out, epsilon);
    for (const Complex& z : field.raw()) {
        put<double>(out, z.real());
        put<double>(out, z.imag());
    }
    if (!out) throw ConfigError("short write on snapshot: " + path.string());
}

SpectralField read_snapshot(const std::filesystem::path& path, SnapshotHeader* header) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open snapshot: " + path.string());
    char magic[4];
    in.read(magic, 4);
    if (!in || std::memcmp(magic, kMagic, 4) != 0)
        throw ConfigError("not a BNSL snapshot: " + path.string());
    SnapshotHeader h;
    h.version = get<std::uint32_t>(in);
    h.dimension = get<std::uint32_t>(in);
    h.components = get<std::uint32_t>(in);
    h.n = get<std::uint32_t>(in);
    h.time = get<double>(in);
    h.epsilon = get<double>(in);
    if (h.version != 1) throw ConfigError("unsupported BNSL version");
    if (h.dimension != Grid::kDim) throw ConfigError("unsupported BNSL dimension");
    if (h.components < 1 || h.components > 8) throw ConfigError("bad BNSL component count");

    SpectralField field(Grid(static_cast<int>(h.n)), static_cast<int>(h.components));
    for (Complex& z : field.raw()) {
        double re = get<double>(in);
        double im = get<double>(in);
        z = Complex(re, im);
    }
    if (!in) throw ConfigError("truncated BNSL snapshot: " + path.string());
    field.set_time_tag(h.time);
    if (header) *header = h;
    return field;
}

}  // namespace besovlab
