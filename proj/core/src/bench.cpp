#include "ranc/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>

#include "ranc/errors.hpp"
#include "ranc/rng.hpp"
#include "ranc/stream.hpp"

namespace ranc {

namespace {

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace

const std::vector<std::size_t>& default_bench_sizes() {
    static const std::vector<std::size_t> sizes = {16, 64, 128, 256, 512, 1024};
    return sizes;
}

std::vector<BenchResult> bench_throughput(const AncModel& model, const Key& key,
                                          const std::vector<std::size_t>& sizes, int repetitions,
                                          int warmup, std::uint64_t seed) {
    if (sizes.empty()) throw ArgumentError("bench_throughput: sizes must be nonempty");
    if (repetitions < 3) throw ArgumentError("bench_throughput: need at least 3 repetitions");
    if (warmup < 0) warmup = 0;

    using clock = std::chrono::steady_clock;
    std::vector<BenchResult> rows;
    for (std::size_t size : sizes) {
        Rng rng(seed ^ size);
        std::vector<std::uint8_t> plaintext(size);
        for (auto& b : plaintext) b = std::uint8_t(rng.next_u64());

        std::vector<double> t_alice, t_bob, totals;
        CipherStream cipher;
        std::vector<std::uint8_t> recovered;
        for (int rep = 0; rep < warmup + repetitions; ++rep) {
            const auto t0 = clock::now();
            cipher = encrypt_stream(model, key, plaintext);
            const auto t1 = clock::now();
            recovered = decrypt_stream(model, key, cipher);
            const auto t2 = clock::now();
            if (rep < warmup) continue;
            const double ta = std::chrono::duration<double>(t1 - t0).count();
            const double tb = std::chrono::duration<double>(t2 - t1).count();
            t_alice.push_back(ta);
            t_bob.push_back(tb);
            totals.push_back(ta + tb);
        }
        if (recovered != plaintext)
            throw NumericError("bench_throughput: round trip mismatch at size " + std::to_string(size));

        BenchResult row;
        row.message_bytes = size;
        row.t_alice_s = median(t_alice);
        row.t_bob_s = median(t_bob);
        row.throughput_Bps = double(size) / (row.t_alice_s + row.t_bob_s);
        row.repetitions = repetitions;
        const double med_total = median(totals);
        const auto [mn, mx] = std::minmax_element(totals.begin(), totals.end());
        row.spread = med_total > 0.0 ? (*mx - *mn) / med_total : 0.0;
        rows.push_back(row);
    }
    return rows;
}

void write_bench_csv(const std::vector<BenchResult>& rows, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ArgumentError("write_bench_csv: cannot open '" + path + "'");
    out << "size_bytes,t_alice_s,t_bob_s,throughput_Bps,reps,spread\n";
    char buf[192];
    for (const BenchResult& r : rows) {
        std::snprintf(buf, sizeof buf, "%zu,%.9f,%.9f,%.3f,%d,%.6f\n", r.message_bytes, r.t_alice_s,
                      r.t_bob_s, r.throughput_Bps, r.repetitions, r.spread);
        out << buf;
    }
}

}  // namespace ranc
