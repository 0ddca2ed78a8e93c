#include "icf/checkpoint.hpp"

#include <cstring>
#include <fstream>

#include <zlib.h>

namespace icf {

namespace {

constexpr char kMagic[4] = {'I', 'C', 'F', 'L'};
constexpr std::uint32_t kVersion = 1;

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

void put_f64(std::vector<std::uint8_t>& out, double v) {
    std::uint64_t bits;
    std::memcpy(&bits, &v, 8);
    for (int i = 0; i < 8; ++i) out.push_back(static_cast<std::uint8_t>(bits >> (8 * i)));
}

std::uint32_t get_u32(const std::uint8_t* p) {
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(p[i]) << (8 * i);
    return v;
}

double get_f64(const std::uint8_t* p) {
    std::uint64_t bits = 0;
    for (int i = 0; i < 8; ++i) bits |= static_cast<std::uint64_t>(p[i]) << (8 * i);
    double v;
    std::memcpy(&v, &bits, 8);
    return v;
}

std::uint32_t crc_of(const std::uint8_t* data, std::size_t len) {
    return static_cast<std::uint32_t>(
        ::crc32(0L, reinterpret_cast<const Bytef*>(data), static_cast<uInt>(len)));
}

} // namespace

std::vector<std::uint8_t> checkpoint_save(const FlowState& state) {
    std::vector<std::uint8_t> out;
    const auto n = static_cast<std::uint32_t>(state.curve.n());
    out.reserve(12 + 8 * (2 * n + 3) + 4);
    out.insert(out.end(), kMagic, kMagic + 4);
    put_u32(out, kVersion);
    put_u32(out, n);
    for (const auto& p : state.curve.points) {
        put_f64(out, p.x);
        put_f64(out, p.y);
    }
    put_f64(out, state.time);
    put_f64(out, state.last_dt);
    put_f64(out, state.dissipation);
    put_u32(out, crc_of(out.data(), out.size()));
    return out;
}

FlowState checkpoint_load(const std::vector<std::uint8_t>& bytes) {
    if (bytes.size() < 16) throw CorruptCheckpoint("checkpoint truncated (header)");
    if (std::memcmp(bytes.data(), kMagic, 4) != 0)
        throw CorruptCheckpoint("bad magic, not an ICFL checkpoint");
    const std::uint32_t version = get_u32(bytes.data() + 4);
    if (version != kVersion)
        throw CorruptCheckpoint("unsupported checkpoint version " +
                                std::to_string(version) + ", expected " +
                                std::to_string(kVersion));
    const std::uint32_t n = get_u32(bytes.data() + 8);
    const std::size_t expected = 12 + 8 * (2 * static_cast<std::size_t>(n) + 3) + 4;
    if (bytes.size() != expected)
        throw CorruptCheckpoint("checkpoint size " + std::to_string(bytes.size()) +
                                " does not match N=" + std::to_string(n));
    const std::uint32_t stored_crc = get_u32(bytes.data() + bytes.size() - 4);
    if (crc_of(bytes.data(), bytes.size() - 4) != stored_crc)
        throw CorruptCheckpoint("CRC mismatch");

    FlowState state;
    state.curve.points.resize(n);
    const std::uint8_t* p = bytes.data() + 12;
    for (std::uint32_t j = 0; j < n; ++j, p += 16)
        state.curve.points[j] = {get_f64(p), get_f64(p + 8)};
    state.time = get_f64(p);
    state.last_dt = get_f64(p + 8);
    state.dissipation = get_f64(p + 16);
    state.cache = build_geometry(state.curve);
    state.initial_energy = state.cache.energy + state.dissipation; // E(0) = E(t) + D(t)
    return state;
}

void checkpoint_write_file(const std::filesystem::path& path, const FlowState& state) {
    const auto bytes = checkpoint_save(state);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open " + path.string() + " for writing");
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
}

FlowState checkpoint_read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path.string());
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                    std::istreambuf_iterator<char>());
    return checkpoint_load(bytes);
}

} // namespace icf
