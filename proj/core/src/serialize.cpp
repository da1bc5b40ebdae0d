#include "ranc/serialize.hpp"

#include <array>
#include <bit>
#include <cstring>
#include <fstream>

#include "ranc/errors.hpp"

namespace ranc {

namespace {

constexpr std::array<std::uint8_t, 8> kMagic = {'R', 'A', 'N', 'C', 'M', 'D', 'L', '\0'};

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
    out.push_back(std::uint8_t(v));
    out.push_back(std::uint8_t(v >> 8));
    out.push_back(std::uint8_t(v >> 16));
    out.push_back(std::uint8_t(v >> 24));
}

void put_u64(std::vector<std::uint8_t>& out, std::uint64_t v) {
    put_u32(out, std::uint32_t(v));
    put_u32(out, std::uint32_t(v >> 32));
}

class Reader {
  public:
    Reader(const std::vector<std::uint8_t>& bytes) : bytes_(bytes) {}
    std::uint32_t u32() {
        need(4);
        std::uint32_t v = std::uint32_t(bytes_[pos_]) | std::uint32_t(bytes_[pos_ + 1]) << 8 |
                          std::uint32_t(bytes_[pos_ + 2]) << 16 | std::uint32_t(bytes_[pos_ + 3]) << 24;
        pos_ += 4;
        return v;
    }
    std::uint64_t u64() {
        const std::uint64_t lo = u32();
        return lo | (std::uint64_t(u32()) << 32);
    }
    const std::uint8_t* raw(std::size_t n) {
        need(n);
        const std::uint8_t* p = bytes_.data() + pos_;
        pos_ += n;
        return p;
    }
    std::size_t remaining() const { return bytes_.size() - pos_; }

  private:
    void need(std::size_t n) const {
        if (pos_ + n > bytes_.size())
            throw FormatError(FormatError::Kind::truncated, "model file truncated");
    }
    const std::vector<std::uint8_t>& bytes_;
    std::size_t pos_ = 0;
};

void put_params(std::vector<std::uint8_t>& out, const std::vector<const Parameter*>& params) {
    for (const Parameter* p : params)
        for (float f : p->tensor.values()) put_u32(out, std::bit_cast<std::uint32_t>(f));
}

void read_params(Reader& r, std::vector<Parameter*> params) {
    for (Parameter* p : params)
        for (float& f : p->tensor.values()) f = std::bit_cast<float>(r.u32());
}

}  // namespace

std::uint32_t crc32(const std::uint8_t* data, std::size_t len) {
    static const auto table = []() {
        std::array<std::uint32_t, 256> t{};
        for (std::uint32_t i = 0; i < 256; ++i) {
            std::uint32_t c = i;
            for (int k = 0; k < 8; ++k) c = (c & 1u) ? 0xEDB88320u ^ (c >> 1) : (c >> 1);
            t[i] = c;
        }
        return t;
    }();
    std::uint32_t c = 0xFFFFFFFFu;
    for (std::size_t i = 0; i < len; ++i) c = table[(c ^ data[i]) & 0xFFu] ^ (c >> 8);
    return c ^ 0xFFFFFFFFu;
}

std::vector<std::uint8_t> serialize_model(const AncModel& m, bool include_eve) {
    if (include_eve && !m.eve)
        throw UsageError("serialize_model: model bundle has no Eve network to include");
    std::vector<std::uint8_t> out(kMagic.begin(), kMagic.end());
    put_u32(out, kModelFormatVersion);
    put_u32(out, std::uint32_t(m.n_bits));
    put_u32(out, std::uint32_t(m.n_proj));
    put_u64(out, m.seed);
    put_u32(out, (m.converged ? 1u : 0u) | (include_eve ? 2u : 0u));
    put_u32(out, m.training_epochs);

    const std::size_t payload_start = out.size();
    put_params(out, m.alice.parameters());
    put_params(out, m.bob.parameters());
    if (include_eve) put_params(out, m.eve->parameters());
    const std::uint32_t checksum = crc32(out.data() + payload_start, out.size() - payload_start);
    put_u32(out, checksum);
    return out;
}

AncModel deserialize_model(const std::vector<std::uint8_t>& bytes) {
    Reader r(bytes);
    const std::uint8_t* magic = r.raw(kMagic.size());
    if (!std::equal(kMagic.begin(), kMagic.end(), magic))
        throw FormatError(FormatError::Kind::magic, "not a model bundle (bad magic)");
    const std::uint32_t version = r.u32();
    if (version != kModelFormatVersion)
        throw FormatError(FormatError::Kind::version,
                          "unsupported model format version " + std::to_string(version));
    const std::uint32_t n_bits = r.u32();
    const std::uint32_t n_proj = r.u32();
    const std::uint64_t seed = r.u64();
    const std::uint32_t flags = r.u32();
    const std::uint32_t epochs = r.u32();
    if (n_bits < 2 || n_bits > 64 || n_proj < 1 || n_proj > 4096)
        throw FormatError(FormatError::Kind::dimensions,
                          "implausible dimensions n_bits=" + std::to_string(n_bits) +
                              " n_proj=" + std::to_string(n_proj));
    const bool has_eve = (flags & 2u) != 0;

    std::size_t n_floats = alice_parameter_count(int(n_bits), int(n_proj)) +
                           bob_parameter_count(int(n_bits), int(n_proj));
    if (has_eve) n_floats += eve_parameter_count(int(n_bits), int(n_proj));
    if (r.remaining() != n_floats * 4 + 4)
        throw FormatError(FormatError::Kind::dimensions,
                          "payload size does not match the declared dimensions");

    const std::uint8_t* payload = bytes.data() + (bytes.size() - r.remaining());
    const std::uint32_t computed = crc32(payload, n_floats * 4);

    AncModel m;
    m.n_bits = int(n_bits);
    m.n_proj = int(n_proj);
    m.seed = seed;
    m.converged = (flags & 1u) != 0;
    m.training_epochs = epochs;
    Rng rng(0);
    InitConfig init;
    m.alice = AliceNet(m.n_bits, m.n_proj, rng, init);
    m.bob = BobNet(m.n_bits, m.n_proj, rng, init);
    read_params(r, m.alice.parameters());
    read_params(r, m.bob.parameters());
    if (has_eve) {
        m.eve.emplace(m.n_bits, m.n_proj, rng, init);
        read_params(r, m.eve->parameters());
    }
    const std::uint32_t stored = r.u32();
    if (stored != computed)
        throw FormatError(FormatError::Kind::checksum, "payload checksum mismatch");
    return m;
}

void save_model(const AncModel& m, const std::string& path, bool include_eve) {
    const auto bytes = serialize_model(m, include_eve && m.eve.has_value());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ArgumentError("save_model: cannot open '" + path + "' for writing");
    out.write(reinterpret_cast<const char*>(bytes.data()), std::streamsize(bytes.size()));
    if (!out) throw ArgumentError("save_model: write to '" + path + "' failed");
}

AncModel load_model(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ArgumentError("load_model: cannot open '" + path + "'");
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return deserialize_model(bytes);
}

}  // namespace ranc
