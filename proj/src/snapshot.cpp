#include "chemoflow/snapshot.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>
#include <limits>

#include "chemoflow/errors.hpp"

namespace chemoflow {

namespace {

constexpr char kMagic[4] = {'C', 'H', 'F', 'S'};
// Refuse headers describing more than 2^31 cells.
constexpr std::uint64_t kMaxCells = std::uint64_t{1} << 31;

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

void put_f64(std::vector<std::uint8_t>& out, double v) {
    const auto bits = std::bit_cast<std::uint64_t>(v);
    for (int i = 0; i < 8; ++i) out.push_back(static_cast<std::uint8_t>(bits >> (8 * i)));
}

class Reader {
public:
    explicit Reader(const std::vector<std::uint8_t>& bytes) : bytes_(bytes) {}

    std::uint32_t u32() {
        need(4);
        std::uint32_t v = 0;
        for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(bytes_[pos_ + i]) << (8 * i);
        pos_ += 4;
        return v;
    }

    double f64() {
        need(8);
        std::uint64_t v = 0;
        for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(bytes_[pos_ + i]) << (8 * i);
        pos_ += 8;
        return std::bit_cast<double>(v);
    }

    std::size_t remaining() const { return bytes_.size() - pos_; }

private:
    void need(std::size_t n) const {
        if (remaining() < n) throw SnapshotError("snapshot truncated");
    }

    const std::vector<std::uint8_t>& bytes_;
    std::size_t pos_ = 4;
};

}  // namespace

std::vector<std::uint8_t> encode_snapshot(const Field& field, double t) {
    const Grid& g = field.grid();
    std::vector<std::uint8_t> out;
    out.reserve(kSnapshotHeaderBytes + 8 * field.size());
    out.insert(out.end(), std::begin(kMagic), std::end(kMagic));
    put_u32(out, kSnapshotVersion);
    put_u32(out, static_cast<std::uint32_t>(g.dim()));
    for (int a = 0; a < 3; ++a) put_u32(out, static_cast<std::uint32_t>(g.cells(a)));
    for (int a = 0; a < 3; ++a) put_f64(out, g.length(a));
    put_f64(out, t);
    for (double v : field.values()) put_f64(out, v);
    return out;
}

Snapshot decode_snapshot(const std::vector<std::uint8_t>& bytes) {
    if (bytes.size() < 4 || std::memcmp(bytes.data(), kMagic, 4) != 0) {
        throw SnapshotError("not a snapshot file (magic mismatch)");
    }
    Reader in(bytes);
    const std::uint32_t version = in.u32();
    if (version != kSnapshotVersion) {
        throw SnapshotError("unsupported snapshot version " + std::to_string(version));
    }
    const std::uint32_t dim = in.u32();
    if (dim < 1 || dim > 3) throw SnapshotError("snapshot dimension " + std::to_string(dim) + " out of range");
    std::array<std::size_t, 3> cells{};
    std::uint64_t total = 1;
    for (int a = 0; a < 3; ++a) {
        cells[a] = in.u32();
        if (cells[a] == 0) throw SnapshotError("snapshot has an empty axis");
        total *= cells[a];
        if (total > kMaxCells) throw SnapshotError("snapshot dimensions overflow the cell limit");
    }
    std::array<double, 3> lengths{};
    for (int a = 0; a < 3; ++a) lengths[a] = in.f64();
    const double t = in.f64();
    for (std::uint32_t a = dim; a < 3; ++a) {
        if (cells[a] != 1) throw SnapshotError("snapshot has cells on an unused axis");
    }
    if (in.remaining() < 8 * total) throw SnapshotError("snapshot truncated");
    if (in.remaining() > 8 * total) throw SnapshotError("snapshot has trailing bytes");

    Grid grid = [&] {
        try {
            return Grid(static_cast<int>(dim), cells, lengths);
        } catch (const Error& e) {
            throw SnapshotError(std::string("snapshot grid invalid: ") + e.what());
        }
    }();
    std::vector<double> values(total);
    for (auto& v : values) v = in.f64();
    return Snapshot{Field(std::move(grid), std::move(values)), t};
}

void write_snapshot(const Field& field, double t, const std::string& path) {
    const auto bytes = encode_snapshot(field, t);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw SnapshotError("cannot open '" + path + "' for writing");
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw SnapshotError("write to '" + path + "' failed");
}

Snapshot read_snapshot(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw SnapshotError("cannot open snapshot '" + path + "'");
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return decode_snapshot(bytes);
}

}  // namespace chemoflow
