#include "ranc/keygen.hpp"

#include <bit>
#include <fstream>

#include "ranc/errors.hpp"

namespace ranc {

bool KeyPool::contains(const BitVector& bits) const { return find(bits) >= 0; }

int KeyPool::find(const BitVector& bits) const {
    for (std::size_t i = 0; i < keys.size(); ++i)
        if (keys[i].bits == bits) return int(i);
    return -1;
}

int psl(const BitVector& bits) {
    const int n = int(bits.size());
    if (n < 2) throw ArgumentError("psl: sequence length must be at least 2");
    int peak = 0;
    for (int shift = 1; shift < n; ++shift) {
        int p = 0;
        for (int i = 0; i < n; ++i) p += int(bits[std::size_t(i)]) * int(bits[std::size_t((i + shift) % n)]);
        if (p > peak) peak = p;
    }
    return peak;
}

KeyPool generate_pool(int n_bits, int tolerance) {
    if (n_bits < 2 || n_bits % 2 != 0)
        throw ArgumentError("generate_pool: n_bits must be even and >= 2 (bitwise symmetry), got " +
                            std::to_string(n_bits));
    if (n_bits > 24)
        throw ArgumentError("generate_pool: n_bits capped at 24 for exhaustive enumeration, got " +
                            std::to_string(n_bits));
    if (tolerance < 0) throw ArgumentError("generate_pool: tolerance must be >= 0");

    KeyPool pool;
    pool.n_bits = n_bits;
    pool.tolerance = tolerance;
    const std::uint32_t count = std::uint32_t(1) << n_bits;
    for (std::uint32_t v = 0; v < count; ++v) {
        if (std::popcount(v) != n_bits / 2) continue;
        BitVector bits = value_to_bits(v, n_bits);
        const int p = psl(bits);
        if (p > tolerance) continue;
        pool.keys.push_back(Key{std::move(bits), p});
    }
    return pool;  // enumeration order is already ascending
}

void write_pool(const KeyPool& pool, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ArgumentError("write_pool: cannot open '" + path + "' for writing");
    for (const Key& k : pool.keys) out << k.hex() << '\n';
}

KeyPool read_pool(const std::string& path, int n_bits, int tolerance) {
    std::ifstream in(path);
    if (!in) throw ArgumentError("read_pool: cannot open '" + path + "'");
    KeyPool pool;
    pool.n_bits = n_bits;
    pool.tolerance = tolerance;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        BitVector bits = hex_to_bits(line, n_bits);
        int ones = 0;
        for (auto b : bits) ones += b;
        if (ones * 2 != n_bits)
            throw ArgumentError("read_pool: key " + line + " is not bitwise symmetric");
        const int p = psl(bits);
        if (p > tolerance)
            throw ArgumentError("read_pool: key " + line + " exceeds psl tolerance " +
                                std::to_string(tolerance));
        pool.keys.push_back(Key{std::move(bits), p});
    }
    if (pool.keys.empty()) throw ArgumentError("read_pool: no keys in '" + path + "'");
    return pool;
}

}  // namespace ranc
