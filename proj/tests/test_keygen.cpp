#include "doctest.h"

#include <algorithm>
#include <bit>
#include <cstdio>
#include <fstream>

#include "ranc/bits.hpp"
#include "ranc/errors.hpp"
#include "ranc/keygen.hpp"
#include "ranc/rng.hpp"

using namespace ranc;

namespace {

// Independent sidelobe route on packed words: p[n] = popcount(v & rot(v,n)).
int psl_by_rotation(std::uint32_t v, int n) {
    const std::uint32_t mask = (std::uint32_t(1) << n) - 1;
    int best = 0;
    for (int s = 1; s < n; ++s) {
        const std::uint32_t rot = ((v >> s) | (v << (n - s))) & mask;
        best = std::max(best, std::popcount(v & rot));
    }
    return best;
}

BitVector rotate_bits(const BitVector& bits, int m) {
    const int n = int(bits.size());
    BitVector out(bits.size());
    for (int i = 0; i < n; ++i) out[std::size_t(i)] = bits[std::size_t((i + m) % n)];
    return out;
}

}  // namespace

TEST_CASE("psl worked examples") {
    CHECK(psl(hex_to_bits("AA", 8)) == 4);  // shift by 2 aligns all four ones
    CHECK(psl(hex_to_bits("0F", 8)) == 3);
    CHECK(psl(hex_to_bits("FF", 8)) == 8);  // constant sequence peaks at every shift
    CHECK_THROWS_AS(psl(BitVector{1}), ArgumentError);
}

TEST_CASE("psl is invariant under circular shifts") {
    Rng rng(42);
    for (int trial = 0; trial < 50; ++trial) {
        const int n = 4 + 2 * int(rng.next_u64() % 7);  // 4..16
        BitVector bits(std::size_t(n));
        for (auto& b : bits) b = std::uint8_t(rng.next_u64() & 1);
        const int base = psl(bits);
        for (int m = 1; m < n; ++m) CHECK(psl(rotate_bits(bits, m)) == base);
    }
}

TEST_CASE("pool (8,5): seventy keys, equal to the full balanced set") {
    const KeyPool pool = generate_pool(8, 5);
    CHECK(pool.size() == 70);

    // the tolerance excludes nothing here: exactly C(8,4) balanced bytes
    std::size_t balanced = 0;
    for (std::uint32_t v = 0; v < 256; ++v) balanced += std::popcount(v) == 4;
    CHECK(balanced == 70);
    CHECK(pool.size() == balanced);

    for (const char* hex : {"0F", "17", "1B", "1D"}) CHECK(pool.contains(hex_to_bits(hex, 8)));

    // sorted ascending, unique, all members valid
    for (std::size_t i = 0; i < pool.size(); ++i) {
        const Key& k = pool.keys[i];
        int ones = 0;
        for (auto b : k.bits) ones += b;
        CHECK(ones == 4);
        CHECK(k.psl <= 5);
        if (i) CHECK(bits_to_value(pool.keys[i - 1].bits) < bits_to_value(k.bits));
    }
}

TEST_CASE("pool matches an independent brute-force enumeration") {
    for (int tol : {3, 4, 5}) {
        const KeyPool pool = generate_pool(8, tol);
        std::vector<std::uint32_t> expect;
        for (std::uint32_t v = 0; v < 256; ++v)
            if (std::popcount(v) == 4 && psl_by_rotation(v, 8) <= tol) expect.push_back(v);
        REQUIRE(pool.size() == expect.size());
        for (std::size_t i = 0; i < expect.size(); ++i)
            CHECK(bits_to_value(pool.keys[i].bits) == expect[i]);
    }
}

TEST_CASE("pool (2,2) is {01, 10}") {
    const KeyPool pool = generate_pool(2, 2);
    REQUIRE(pool.size() == 2);
    CHECK(pool.keys[0].bits == BitVector{0, 1});
    CHECK(pool.keys[1].bits == BitVector{1, 0});
}

TEST_CASE("pool argument errors") {
    CHECK_THROWS_AS(generate_pool(7, 5), ArgumentError);   // odd
    CHECK_THROWS_AS(generate_pool(26, 5), ArgumentError);  // over the enumeration cap
    CHECK_THROWS_AS(generate_pool(8, -1), ArgumentError);
}

TEST_CASE("pool file round trip") {
    const KeyPool pool = generate_pool(8, 5);
    const std::string path = "keys_test.txt";
    write_pool(pool, path);

    std::ifstream in(path);
    std::string line;
    std::vector<std::string> lines;
    while (std::getline(in, line)) lines.push_back(line);
    REQUIRE(lines.size() == 70);
    CHECK(lines.front() == "0F");
    CHECK(std::is_sorted(lines.begin(), lines.end()));

    const KeyPool loaded = read_pool(path, 8, 5);
    REQUIRE(loaded.size() == pool.size());
    for (std::size_t i = 0; i < pool.size(); ++i) {
        CHECK(loaded.keys[i].bits == pool.keys[i].bits);
        CHECK(loaded.keys[i].psl == pool.keys[i].psl);
    }
    std::remove(path.c_str());
}

TEST_CASE("hex and signal codecs") {
    CHECK(hex_to_bits("0xAA", 8) == BitVector{1, 0, 1, 0, 1, 0, 1, 0});
    CHECK(bits_to_hex(BitVector{0, 0, 0, 0, 1, 1, 1, 1}) == "0F");
    CHECK_THROWS_AS(hex_to_bits("zz", 8), ArgumentError);
    CHECK_THROWS_AS(hex_to_bits("1FF", 8), ArgumentError);

    CHECK(bits_to_signal({1, 0, 1}) == SignalVector{1.0f, -1.0f, 1.0f});
    CHECK(signal_to_bits({1.0f, -1.0f}) == BitVector{1, 0});
    CHECK(signal_to_bits({0.0f}) == BitVector{1});  // tie resolves to bit 1
    CHECK_THROWS_AS(signal_to_bits({std::numeric_limits<float>::quiet_NaN()}), NumericError);

    // exhaustive 8-bit round trip
    for (std::uint32_t v = 0; v < 256; ++v) {
        const BitVector b = value_to_bits(v, 8);
        CHECK(signal_to_bits(bits_to_signal(b)) == b);
        CHECK(hex_to_bits(bits_to_hex(b), 8) == b);
    }
}
