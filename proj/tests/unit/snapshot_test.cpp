#include <gtest/gtest.h>

#include <bit>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <random>

#include "chemoflow/errors.hpp"
#include "chemoflow/snapshot.hpp"

using namespace chemoflow;

namespace {

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

void put_f64(std::vector<std::uint8_t>& out, double v) {
    const auto bits = std::bit_cast<std::uint64_t>(v);
    for (int i = 0; i < 8; ++i) out.push_back(static_cast<std::uint8_t>(bits >> (8 * i)));
}

std::string temp_path(const char* name) { return (std::filesystem::temp_directory_path() / name).string(); }

}  // namespace

TEST(Snapshot, GoldenBytes) {
    const Grid g(1, {4, 1, 1}, {2.0, 1.0, 1.0});
    const Field f(g, std::vector<double>{1.0, -2.5, 0.0, 1e-300});
    std::vector<std::uint8_t> expected{'C', 'H', 'F', 'S'};
    put_u32(expected, 1);
    put_u32(expected, 1);
    put_u32(expected, 4);
    put_u32(expected, 1);
    put_u32(expected, 1);
    put_f64(expected, 2.0);
    put_f64(expected, 1.0);
    put_f64(expected, 1.0);
    put_f64(expected, 0.75);
    for (double v : f.values()) put_f64(expected, v);
    const auto bytes = encode_snapshot(f, 0.75);
    EXPECT_EQ(bytes, expected);
    EXPECT_EQ(bytes.size(), kSnapshotHeaderBytes + 32);
    // Spot-check the little-endian layout without the helpers: 2.0 = 0x4000000000000000.
    EXPECT_EQ(bytes[24], 0x00);
    EXPECT_EQ(bytes[31], 0x40);
}

TEST(Snapshot, RoundTripIsBitExact) {
    const Grid g(3, {5, 6, 7}, {0.3, 1.1, 2.7});
    std::mt19937_64 rng(3);
    Field f(g);
    for (double& v : f.values()) v = std::bit_cast<double>(rng() & 0x7fefffffffffffffULL);
    const auto path = temp_path("chemoflow_roundtrip.chfs");
    write_snapshot(f, 1.2345678901234567, path);
    const Snapshot s = read_snapshot(path);
    EXPECT_EQ(s.t, 1.2345678901234567);
    EXPECT_EQ(s.field.grid(), g);
    EXPECT_EQ(std::memcmp(s.field.data().data(), f.data().data(), 8 * f.size()), 0);
    std::filesystem::remove(path);
}

TEST(Snapshot, TruncationRejected) {
    const auto bytes = encode_snapshot(Field(Grid::unit(2, 4), 1.0), 0.0);
    for (std::size_t n : {std::size_t{0}, std::size_t{3}, std::size_t{20}, kSnapshotHeaderBytes, bytes.size() - 1}) {
        EXPECT_THROW(decode_snapshot({bytes.begin(), bytes.begin() + static_cast<long>(n)}), SnapshotError) << n;
    }
}

TEST(Snapshot, CorruptHeadersRejected) {
    const auto good = encode_snapshot(Field(Grid::unit(2, 4), 1.0), 0.0);
    auto bad = good;
    bad[0] = 'X';
    EXPECT_THROW(decode_snapshot(bad), SnapshotError);
    bad = good;
    bad[4] = 2;  // version
    EXPECT_THROW(decode_snapshot(bad), SnapshotError);
    bad = good;
    bad[8] = 4;  // dim
    EXPECT_THROW(decode_snapshot(bad), SnapshotError);
    bad = good;
    for (int i = 12; i < 24; ++i) bad[i] = 0xff;  // cells overflow
    EXPECT_THROW(decode_snapshot(bad), SnapshotError);
    bad = good;
    bad.push_back(0);
    EXPECT_THROW(decode_snapshot(bad), SnapshotError);
}

TEST(Snapshot, MissingFile) {
    EXPECT_THROW(read_snapshot(temp_path("chemoflow_does_not_exist.chfs")), SnapshotError);
}
