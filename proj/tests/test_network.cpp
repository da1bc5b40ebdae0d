#include "doctest.h"

#include <cstdio>
#include <filesystem>

#include "ranc/network.hpp"
#include "ranc/serialize.hpp"

using namespace ranc;

namespace {

Tensor signal_column(std::initializer_list<float> v) {
    return Tensor::from(int(v.size()), 1, std::vector<float>(v));
}

bool same_values(const Tensor& a, const Tensor& b) {
    if (a.size() != b.size()) return false;
    auto av = a.values(), bv = b.values();
    for (std::size_t i = 0; i < av.size(); ++i)
        if (av[i] != bv[i]) return false;
    return true;
}

}  // namespace

TEST_CASE("forward shape contracts and determinism") {
    for (int np : {4, 8, 16, 32}) {
        AncModel m(8, np, 77);
        Tensor x = signal_column({1, -1, 1, 1, -1, -1, 1, -1});
        Tensor k = signal_column({-1, 1, 1, -1, 1, -1, -1, 1});

        const AliceNet::Out a1 = m.alice.forward(nullptr, x, k);
        CHECK(a1.x_hat.rows() == 8);
        CHECK(a1.y.rows() == 8);
        CHECK(a1.k_hat.rows() == 8);

        const BobNet::Out b1 = m.bob.forward(nullptr, a1.y, k);
        CHECK(b1.x_hat.rows() == 8);
        CHECK(b1.k_hat.rows() == 8);

        const Tensor e1 = m.eve->forward(nullptr, a1.y);
        CHECK(e1.rows() == 8);

        // identical inputs twice -> identical outputs
        const AliceNet::Out a2 = m.alice.forward(nullptr, x, k);
        CHECK(same_values(a1.y, a2.y));
        CHECK(same_values(a1.x_hat, a2.x_hat));

        for (float v : a1.y.values()) {
            CHECK(v > -1.0f);
            CHECK(v < 1.0f);
        }
    }
    AncModel m(8, 8, 1);
    CHECK_THROWS_AS(m.alice.forward(nullptr, Tensor::zeros(8, 1), Tensor::zeros(4, 1)), ShapeError);
}

TEST_CASE("parameter counts follow the architecture formulas") {
    for (int np : {4, 8, 16, 32}) {
        AncModel m(8, np, 5);
        CHECK(parameter_count(std::as_const(m).alice.parameters()) == alice_parameter_count(8, np));
        CHECK(parameter_count(std::as_const(m).bob.parameters()) == bob_parameter_count(8, np));
        CHECK(parameter_count(std::as_const(m).eve->parameters()) == eve_parameter_count(8, np));
        // Eve has no key branch, so strictly fewer parameters than Bob
        CHECK(eve_parameter_count(8, np) < bob_parameter_count(8, np));
    }
    // growth is linear in n_proj
    const std::size_t a4 = alice_parameter_count(8, 4);
    const std::size_t a8 = alice_parameter_count(8, 8);
    const std::size_t a32 = alice_parameter_count(8, 32);
    CHECK(a8 == 2 * a4);
    CHECK(a32 == 8 * a4);
}

TEST_CASE("serialization round trip is lossless and byte-stable") {
    AncModel m(8, 8, 4242);
    m.converged = true;
    m.training_epochs = 57;

    const auto bytes1 = serialize_model(m, true);
    const auto bytes2 = serialize_model(m, true);
    CHECK(bytes1 == bytes2);

    const AncModel r = deserialize_model(bytes1);
    CHECK(r.n_bits == 8);
    CHECK(r.n_proj == 8);
    CHECK(r.seed == 4242);
    CHECK(r.converged);
    CHECK(r.training_epochs == 57);
    REQUIRE(r.eve.has_value());

    auto lhs = std::as_const(m).alice.parameters();
    auto rhs = std::as_const(r).alice.parameters();
    REQUIRE(lhs.size() == rhs.size());
    for (std::size_t i = 0; i < lhs.size(); ++i) {
        auto a = lhs[i]->tensor.values(), b = rhs[i]->tensor.values();
        REQUIRE(a.size() == b.size());
        for (std::size_t j = 0; j < a.size(); ++j) CHECK(a[j] == b[j]);
    }

    // deployment bundle without Eve
    const AncModel lean = deserialize_model(serialize_model(m, false));
    CHECK_FALSE(lean.eve.has_value());
    CHECK(serialize_model(m, false).size() < bytes1.size());
}

TEST_CASE("file round trip") {
    AncModel m(8, 4, 99);
    const std::string path = "model_test.ranc";
    save_model(m, path);
    const AncModel r = load_model(path);
    CHECK(r.n_proj == 4);
    CHECK(same_values(r.alice.head_y.w.tensor, m.alice.head_y.w.tensor));
    std::remove(path.c_str());
    CHECK_THROWS_AS(load_model(path), ArgumentError);
}

TEST_CASE("load failures are distinct") {
    AncModel m(8, 4, 7);
    auto bytes = serialize_model(m, true);

    SUBCASE("corrupted magic") {
        bytes[0] = 'X';
        try {
            deserialize_model(bytes);
            FAIL("expected FormatError");
        } catch (const FormatError& e) {
            CHECK(e.kind == FormatError::Kind::magic);
        }
    }
    SUBCASE("wrong version") {
        bytes[8] = 99;
        try {
            deserialize_model(bytes);
            FAIL("expected FormatError");
        } catch (const FormatError& e) {
            CHECK(e.kind == FormatError::Kind::version);
        }
    }
    SUBCASE("truncated") {
        bytes.resize(bytes.size() / 2);
        try {
            deserialize_model(bytes);
            FAIL("expected FormatError");
        } catch (const FormatError& e) {
            const bool size_related = e.kind == FormatError::Kind::truncated ||
                                      e.kind == FormatError::Kind::dimensions;
            CHECK(size_related);
        }
    }
    SUBCASE("payload corruption trips the checksum") {
        bytes[bytes.size() - 8] ^= 0x40;  // a float inside the last parameter
        try {
            deserialize_model(bytes);
            FAIL("expected FormatError");
        } catch (const FormatError& e) {
            CHECK(e.kind == FormatError::Kind::checksum);
        }
    }
    SUBCASE("implausible dimensions") {
        bytes[12] = 0;  // n_bits = 0
        try {
            deserialize_model(bytes);
            FAIL("expected FormatError");
        } catch (const FormatError& e) {
            CHECK(e.kind == FormatError::Kind::dimensions);
        }
    }
}

TEST_CASE("crc32 matches the standard test vector") {
    const char* s = "123456789";
    CHECK(crc32(reinterpret_cast<const std::uint8_t*>(s), 9) == 0xCBF43926u);
}
