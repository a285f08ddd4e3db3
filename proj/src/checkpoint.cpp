#include "gsqg/checkpoint.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace gsqg {

namespace {

constexpr char kMagic[5] = {'G', 'S', 'Q', 'G', '1'};
constexpr std::uint32_t kVersion = 1;

void put_u32(std::ostream& out, std::uint32_t v) {
    char b[4];
    for (int i = 0; i < 4; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xff);
    out.write(b, 4);
}

void put_u64(std::ostream& out, std::uint64_t v) {
    char b[8];
    for (int i = 0; i < 8; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xff);
    out.write(b, 8);
}

void put_f64(std::ostream& out, double v) { put_u64(out, std::bit_cast<std::uint64_t>(v)); }

std::uint32_t get_u32(std::istream& in) {
    unsigned char b[4];
    in.read(reinterpret_cast<char*>(b), 4);
    if (!in) throw std::runtime_error("checkpoint truncated");
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(b[i]) << (8 * i);
    return v;
}

std::uint64_t get_u64(std::istream& in) {
    unsigned char b[8];
    in.read(reinterpret_cast<char*>(b), 8);
    if (!in) throw std::runtime_error("checkpoint truncated");
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(b[i]) << (8 * i);
    return v;
}

double get_f64(std::istream& in) { return std::bit_cast<double>(get_u64(in)); }

}  // namespace

void write_checkpoint(const SimulationState& state, const CheckpointMeta& meta, const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open checkpoint for writing: " + path);
    const Grid& g = state.theta.grid();
    out.write(kMagic, sizeof(kMagic));
    put_u32(out, kVersion);
    put_u32(out, static_cast<std::uint32_t>(g.n()));
    put_f64(out, g.length());
    put_f64(out, g.shift());
    put_f64(out, state.t);
    put_u64(out, meta.seed);
    put_u32(out, static_cast<std::uint32_t>(meta.model_descriptor.size()));
    out.write(meta.model_descriptor.data(),
              static_cast<std::streamsize>(meta.model_descriptor.size()));
    for (const Complex& c : state.theta.coeffs()) {
        put_f64(out, c.real());
        put_f64(out, c.imag());
    }
    if (!out) throw std::runtime_error("checkpoint write failed: " + path);
}

LoadedCheckpoint read_checkpoint(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open checkpoint: " + path);
    char magic[5];
    in.read(magic, sizeof(magic));
    if (!in || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0)
        throw std::runtime_error("checkpoint magic tag mismatch");
    const std::uint32_t version = get_u32(in);
    if (version != kVersion)
        throw std::runtime_error("unsupported checkpoint version " + std::to_string(version));
    const std::uint32_t n = get_u32(in);
    const double length = get_f64(in);
    const double shift = get_f64(in);
    const double t = get_f64(in);
    const std::uint64_t seed = get_u64(in);
    const std::uint32_t desc_len = get_u32(in);
    if (desc_len > (1u << 20)) throw std::runtime_error("checkpoint descriptor length implausible");
    std::string desc(desc_len, '\0');
    in.read(desc.data(), desc_len);
    if (!in) throw std::runtime_error("checkpoint truncated");

    LoadedCheckpoint lc;
    lc.meta.model_descriptor = std::move(desc);
    lc.meta.seed = seed;
    lc.state.t = t;
    Grid grid;
    try {
        grid = make_grid(static_cast<int>(n), length, shift);
    } catch (const std::invalid_argument& e) {
        throw std::runtime_error(std::string("checkpoint header invalid: ") + e.what());
    }
    lc.state.theta = SpectralField(grid);
    for (Complex& c : lc.state.theta.coeffs()) {
        const double re = get_f64(in);
        const double im = get_f64(in);
        c = Complex(re, im);
    }
    // Must be at EOF now.
    char extra;
    if (in.read(&extra, 1)) throw std::runtime_error("checkpoint has trailing bytes");
    return lc;
}

}  // namespace gsqg
