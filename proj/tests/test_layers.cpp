#include "doctest.h"

#include <cmath>

#include "ranc/layers.hpp"
#include "ranc/rng.hpp"
#include "oracle.hpp"

using namespace ranc;
using testoracle::dvec;

namespace {

dvec to_dvec(const Tensor& t) {
    dvec v(t.size());
    auto tv = t.values();
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = double(tv[i]);
    return v;
}

Tensor random_tensor(int rows, int cols, Rng& rng, float lo = -1.0f, float hi = 1.0f) {
    Tensor t = Tensor::zeros(rows, cols);
    for (float& v : t.values()) v = rng.uniform(lo, hi);
    return t;
}

void check_close(const Tensor& got, const dvec& expect, double tol = 1e-6) {
    auto gv = got.values();
    REQUIRE(gv.size() == expect.size());
    for (std::size_t i = 0; i < expect.size(); ++i)
        CHECK(double(gv[i]) == doctest::Approx(expect[i]).epsilon(tol).scale(1.0));
}

}  // namespace

TEST_CASE("projection pre-activation by definition") {
    Tensor x = Tensor::from(1, 1, {1.0f});
    Tensor w = Tensor::from(2, 1, {2.0f, 3.0f});
    Tensor b = Tensor::zeros(2, 1);
    Tensor out = project(nullptr, x, w, b);
    CHECK(out.value(0, 0) == 2.0f);
    CHECK(out.value(0, 1) == 3.0f);

    Tensor x2 = Tensor::from(2, 1, {1.0f, -1.0f});
    Tensor w2 = Tensor::from(2, 1, {1.0f, 1.0f});
    Tensor out2 = project(nullptr, x2, w2, b);
    CHECK(out2.value(0, 0) == 1.0f);
    CHECK(out2.value(0, 1) == 1.0f);
    CHECK(out2.value(1, 0) == -1.0f);
    CHECK(out2.value(1, 1) == -1.0f);

    CHECK_THROWS_AS(project(nullptr, Tensor::zeros(2, 2), w, b), ShapeError);
    CHECK_THROWS_AS(project(nullptr, x, w, Tensor::zeros(3, 1)), ShapeError);
}

TEST_CASE("projection layer matches the scalar oracle") {
    Rng rng(11);
    InitConfig init;
    ProjectionLayer layer("t", 8, rng, init);
    Tensor x = random_tensor(12, 1, rng);
    Tensor out = layer.forward(nullptr, x);
    const dvec expect = testoracle::tanh_all(
        testoracle::project(to_dvec(x), to_dvec(layer.w.tensor), to_dvec(layer.b.tensor)));
    check_close(out, expect);
}

TEST_CASE("dot-product layer identity and zero cases (pre-activation)") {
    // identity weights leave X unchanged
    Tensor X = Tensor::from(2, 2, {0.1f, -0.4f, 0.9f, 0.2f});
    Tensor ones = Tensor::full(2, 2, 1.0f);
    Tensor zeros = Tensor::zeros(2, 2);
    Tensor same = add(nullptr, mul(nullptr, X, ones), zeros);
    for (std::size_t i = 0; i < 4; ++i) CHECK(same.values()[i] == X.values()[i]);

    // zero input passes the bias through
    Tensor B = Tensor::from(2, 2, {0.5f, -0.5f, 0.25f, 0.75f});
    Tensor biased = add(nullptr, mul(nullptr, Tensor::zeros(2, 2), ones), B);
    for (std::size_t i = 0; i < 4; ++i) CHECK(biased.values()[i] == B.values()[i]);
}

TEST_CASE("dot-product layer matches the scalar oracle (batched rows)") {
    Rng rng(12);
    InitConfig init;
    const int nb = 2, np = 2, n_pairs = 3;
    DotProductLayer layer("t", nb, np, rng, init);
    Tensor X = random_tensor(nb * n_pairs, np, rng);
    Tensor out = layer.forward(nullptr, X);
    const dvec expect = testoracle::tanh_all(testoracle::dot_affine(
        to_dvec(X), to_dvec(layer.w.tensor), to_dvec(layer.b.tensor), nb, np));
    check_close(out, expect);
}

TEST_CASE("inverse projection degenerate and zero cases (pre-activation)") {
    // n_proj = 1 with unit weight reduces to the single column
    Tensor X = Tensor::from(3, 1, {0.3f, -0.8f, 0.5f});
    Tensor W = Tensor::full(3, 1, 1.0f);
    Tensor B = Tensor::zeros(3, 1);
    Tensor y = row_sum(nullptr, add(nullptr, mul(nullptr, X, W), B));
    for (std::size_t i = 0; i < 3; ++i) CHECK(y.values()[i] == X.values()[i]);

    // zero input leaves the row-sums of the bias
    Tensor B2 = Tensor::from(2, 3, {1.0f, 2.0f, 3.0f, -1.0f, 0.5f, 0.5f});
    Tensor y2 = row_sum(nullptr, add(nullptr, mul(nullptr, Tensor::zeros(2, 3), Tensor::full(2, 3, 1.0f)), B2));
    CHECK(y2.values()[0] == doctest::Approx(6.0f));
    CHECK(y2.values()[1] == doctest::Approx(0.0f));
}

TEST_CASE("inverse projection layer matches the scalar oracle") {
    Rng rng(13);
    InitConfig init;
    const int nb = 3, np = 4;
    InverseProjectionLayer layer("t", nb, np, rng, init);
    Tensor X = random_tensor(nb, np, rng);
    Tensor out = layer.forward(nullptr, X);
    const dvec expect = testoracle::tanh_all(testoracle::invproj(
        to_dvec(X), to_dvec(layer.w.tensor), to_dvec(layer.b.tensor), nb, np));
    check_close(out, expect);
}

TEST_CASE("transform layer") {
    // multiplicative identity (pre-activation)
    Tensor Xd = Tensor::from(2, 2, {0.2f, -0.6f, 0.4f, 0.9f});
    Tensor prod = mul(nullptr, Xd, Tensor::full(2, 2, 1.0f));
    for (std::size_t i = 0; i < 4; ++i) CHECK(prod.values()[i] == Xd.values()[i]);

    // squares of +/-1 give the all-ones matrix
    Tensor pm = Tensor::from(2, 2, {1.0f, -1.0f, -1.0f, 1.0f});
    Tensor sq = mul(nullptr, pm, pm);
    for (std::size_t i = 0; i < 4; ++i) CHECK(sq.values()[i] == 1.0f);

    // activated transform vs oracle
    Rng rng(14);
    Tensor A = random_tensor(4, 3, rng), B = random_tensor(4, 3, rng);
    Tensor out = transform(nullptr, A, B);
    const dvec expect = testoracle::tanh_all(testoracle::hadamard(to_dvec(A), to_dvec(B)));
    check_close(out, expect);
    CHECK_THROWS_AS(transform(nullptr, A, Tensor::zeros(4, 2)), ShapeError);
}

TEST_CASE("shape algebra: project then inverse-project preserves length") {
    Rng rng(15);
    InitConfig init;
    for (int np : {4, 8, 16, 32}) {
        const int nb = 8;
        ProjectionLayer p("p", np, rng, init);
        DotProductLayer d("d", nb, np, rng, init);
        InverseProjectionLayer ip("ip", nb, np, rng, init);
        Tensor x = random_tensor(nb, 1, rng);
        Tensor y = ip.forward(nullptr, d.forward(nullptr, p.forward(nullptr, x)));
        CHECK(y.rows() == nb);
        CHECK(y.cols() == 1);
        // tanh keeps every activated output strictly inside (-1, 1)
        for (float v : y.values()) {
            CHECK(v > -1.0f);
            CHECK(v < 1.0f);
        }
    }
}

TEST_CASE("single-layer gradients match finite differences") {
    Rng rng(16);
    InitConfig init;
    const int nb = 3, np = 4;
    InverseProjectionLayer layer("t", nb, np, rng, init);
    Tensor X = random_tensor(nb, np, rng);
    Tensor target = random_tensor(nb, 1, rng);

    Tape tape;
    Tensor loss = rmse(&tape, layer.forward(&tape, X), target);
    tape.backward(loss);

    dvec w = to_dvec(layer.w.tensor), b = to_dvec(layer.b.tensor);
    const dvec Xd = to_dvec(X), td = to_dvec(target);
    auto f = [&]() {
        return testoracle::rmse(testoracle::tanh_all(testoracle::invproj(Xd, w, b, nb, np)), td);
    };
    const double eps = 1e-5;
    auto wg = layer.w.tensor.grad();
    for (std::size_t i = 0; i < w.size(); ++i) {
        const double saved = w[i];
        w[i] = saved + eps;
        const double fp = f();
        w[i] = saved - eps;
        const double fm = f();
        w[i] = saved;
        const double fd = (fp - fm) / (2 * eps);
        CHECK(std::abs(fd - double(wg[i])) <= std::max(1e-7, 1e-4 * std::abs(fd)));
    }
}
