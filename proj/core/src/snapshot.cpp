#include "undulant/snapshot.hpp"

#include <array>
#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>

#include "undulant/errors.hpp"

namespace undulant {

namespace {

static_assert(std::endian::native == std::endian::little, "snapshot I/O assumes a little-endian host");

template <class T>
void put(std::ofstream& os, T v) {
    os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <class T>
T get(std::ifstream& is) {
    T v{};
    is.read(reinterpret_cast<char*>(&v), sizeof(T));
    return v;
}

}  // namespace

void write_snapshot(const std::filesystem::path& path, const Snapshot& snap) {
    if (snap.components.empty()) throw Error(ErrorCode::InvalidArgument, "snapshot has no components");
    const Field& first = snap.components.front();
    for (const Field& f : snap.components) require_same_shape(first, f, "write_snapshot");

    std::ofstream os(path, std::ios::binary);
    if (!os) throw Error(ErrorCode::IoError, "cannot open " + path.string());
    os.write("UNDU", 4);
    put<std::uint32_t>(os, kSnapshotVersion);
    put<std::uint32_t>(os, first.kind() == FieldKind::surface ? 0u : 1u);
    put<std::uint32_t>(os, static_cast<std::uint32_t>(first.nx()));
    put<std::uint32_t>(os, static_cast<std::uint32_t>(first.ntheta()));
    put<std::uint32_t>(os, static_cast<std::uint32_t>(snap.components.size()));
    put<double>(os, snap.time);
    for (const Field& f : snap.components) {
        const auto v = f.values();
        os.write(reinterpret_cast<const char*>(v.data()), static_cast<std::streamsize>(v.size_bytes()));
    }
    if (!os) throw Error(ErrorCode::IoError, "write failed for " + path.string());
}

void write_snapshot(const std::filesystem::path& path, const State& state, double time) {
    write_snapshot(path, Snapshot{time, {state.u1, state.u2}});
}

Snapshot read_snapshot(const std::filesystem::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw Error(ErrorCode::IoError, "cannot open " + path.string());
    std::array<char, 4> magic{};
    is.read(magic.data(), 4);
    if (std::memcmp(magic.data(), "UNDU", 4) != 0) throw Error(ErrorCode::IoError, "bad snapshot magic");
    const auto version = get<std::uint32_t>(is);
    if (version != kSnapshotVersion) throw Error(ErrorCode::IoError, "unsupported snapshot version");
    const auto kind = get<std::uint32_t>(is);
    const auto nx = get<std::uint32_t>(is);
    const auto nt = get<std::uint32_t>(is);
    const auto ncomp = get<std::uint32_t>(is);
    Snapshot snap;
    snap.time = get<double>(is);
    if (!is || kind > 1 || nx < 8 || nt < 1 || (kind == 1 && nt != 1))
        throw Error(ErrorCode::IoError, "corrupt snapshot header");
    for (std::uint32_t c = 0; c < ncomp; ++c) {
        Field f = kind == 0 ? Field::surface(Grid(static_cast<int>(nx), static_cast<int>(nt), 1.0))
                            : Field::radial(static_cast<int>(nx));
        auto v = f.values();
        is.read(reinterpret_cast<char*>(v.data()), static_cast<std::streamsize>(v.size_bytes()));
        if (!is) throw Error(ErrorCode::IoError, "truncated snapshot payload");
        snap.components.push_back(std::move(f));
    }
    return snap;
}

}  // namespace undulant
