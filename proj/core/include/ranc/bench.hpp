#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ranc/keygen.hpp"
#include "ranc/network.hpp"

namespace ranc {

struct BenchResult {
    std::size_t message_bytes = 0;
    double t_alice_s = 0.0;        // median encrypt wall time
    double t_bob_s = 0.0;          // median decrypt wall time
    double throughput_Bps = 0.0;   // message_bytes / (t_alice_s + t_bob_s)
    int repetitions = 0;
    double spread = 0.0;           // (max-min)/median of per-repetition totals
};

// Times the encrypt/decrypt round trip for each message size on a
// monotonic clock: `warmup` untimed repetitions are discarded, then
// `repetitions` timed ones are reduced by the median. Plaintexts are
// seeded pseudo-random bytes; only the forward-pass pipeline is timed
// (model and key setup stay outside the clock).
std::vector<BenchResult> bench_throughput(const AncModel& model, const Key& key,
                                          const std::vector<std::size_t>& sizes, int repetitions,
                                          int warmup = 3, std::uint64_t seed = 0x5eed);

// {16, 64, 128, 256, 512, 1024}
const std::vector<std::size_t>& default_bench_sizes();

void write_bench_csv(const std::vector<BenchResult>& rows, const std::string& path);

}  // namespace ranc
