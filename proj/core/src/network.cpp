#include "ranc/network.hpp"

namespace ranc {

AliceNet::AliceNet(int n_bits, int n_proj, Rng& rng, const InitConfig& init)
    : msg_proj("alice.msg_proj", n_proj, rng, init),
      key_proj("alice.key_proj", n_proj, rng, init),
      msg_dot("alice.msg_dot", n_bits, n_proj, rng, init),
      key_dot("alice.key_dot", n_bits, n_proj, rng, init),
      post_dot("alice.post_dot", n_bits, n_proj, rng, init),
      head_x("alice.head_x", n_bits, n_proj, rng, init),
      head_y("alice.head_y", n_bits, n_proj, rng, init),
      head_k("alice.head_k", n_bits, n_proj, rng, init) {}

AliceNet::Out AliceNet::forward(Tape* tape, const Tensor& x, const Tensor& k) const {
    if (x.rows() != k.rows() || x.cols() != 1 || k.cols() != 1)
        throw ShapeError("AliceNet::forward: x and k must be equal-length columns");
    const Tensor x_d = msg_dot.forward(tape, msg_proj.forward(tape, x));
    const Tensor k_d = key_dot.forward(tape, key_proj.forward(tape, k));
    const Tensor merged = post_dot.forward(tape, transform(tape, x_d, k_d));
    return Out{head_x.forward(tape, merged), head_y.forward(tape, merged), head_k.forward(tape, merged)};
}

std::vector<Parameter*> AliceNet::parameters() {
    return {&msg_proj.w, &msg_proj.b, &key_proj.w, &key_proj.b,
            &msg_dot.w,  &msg_dot.b,  &key_dot.w,  &key_dot.b,
            &post_dot.w, &post_dot.b, &head_x.w,   &head_x.b,
            &head_y.w,   &head_y.b,   &head_k.w,   &head_k.b};
}

std::vector<const Parameter*> AliceNet::parameters() const {
    auto mut = const_cast<AliceNet*>(this)->parameters();
    return {mut.begin(), mut.end()};
}

BobNet::BobNet(int n_bits, int n_proj, Rng& rng, const InitConfig& init)
    : cipher_proj("bob.cipher_proj", n_proj, rng, init),
      key_proj("bob.key_proj", n_proj, rng, init),
      cipher_dot("bob.cipher_dot", n_bits, n_proj, rng, init),
      key_dot("bob.key_dot", n_bits, n_proj, rng, init),
      post_dot("bob.post_dot", n_bits, n_proj, rng, init),
      head_x("bob.head_x", n_bits, n_proj, rng, init),
      head_k("bob.head_k", n_bits, n_proj, rng, init) {}

BobNet::Out BobNet::forward(Tape* tape, const Tensor& y, const Tensor& k) const {
    if (y.rows() != k.rows() || y.cols() != 1 || k.cols() != 1)
        throw ShapeError("BobNet::forward: y and k must be equal-length columns");
    const Tensor y_d = cipher_dot.forward(tape, cipher_proj.forward(tape, y));
    const Tensor k_d = key_dot.forward(tape, key_proj.forward(tape, k));
    const Tensor merged = post_dot.forward(tape, transform(tape, y_d, k_d));
    return Out{head_x.forward(tape, merged), head_k.forward(tape, merged)};
}

std::vector<Parameter*> BobNet::parameters() {
    return {&cipher_proj.w, &cipher_proj.b, &key_proj.w, &key_proj.b,
            &cipher_dot.w,  &cipher_dot.b,  &key_dot.w,  &key_dot.b,
            &post_dot.w,    &post_dot.b,    &head_x.w,   &head_x.b,
            &head_k.w,      &head_k.b};
}

std::vector<const Parameter*> BobNet::parameters() const {
    auto mut = const_cast<BobNet*>(this)->parameters();
    return {mut.begin(), mut.end()};
}

EveNet::EveNet(int n_bits, int n_proj, Rng& rng, const InitConfig& init)
    : proj("eve.proj", n_proj, rng, init),
      dot("eve.dot", n_bits, n_proj, rng, init),
      inv("eve.inv", n_bits, n_proj, rng, init) {}

Tensor EveNet::forward(Tape* tape, const Tensor& y) const {
    if (y.cols() != 1) throw ShapeError("EveNet::forward: y must be a column");
    return inv.forward(tape, dot.forward(tape, proj.forward(tape, y)));
}

std::vector<Parameter*> EveNet::parameters() {
    return {&proj.w, &proj.b, &dot.w, &dot.b, &inv.w, &inv.b};
}

std::vector<const Parameter*> EveNet::parameters() const {
    auto mut = const_cast<EveNet*>(this)->parameters();
    return {mut.begin(), mut.end()};
}

AncModel::AncModel(int nb, int np, std::uint64_t s, const InitConfig& init)
    : n_bits(nb), n_proj(np), seed(s) {
    Rng rng(s);
    alice = AliceNet(nb, np, rng, init);
    bob = BobNet(nb, np, rng, init);
    eve.emplace(nb, np, rng, init);
}

std::vector<Parameter*> AncModel::all_parameters() {
    std::vector<Parameter*> out = alice.parameters();
    for (Parameter* p : bob.parameters()) out.push_back(p);
    if (eve)
        for (Parameter* p : eve->parameters()) out.push_back(p);
    return out;
}

void AncModel::zero_all_grads() {
    for (Parameter* p : all_parameters()) p->tensor.zero_grad();
}

std::size_t alice_parameter_count(int n_bits, int n_proj) {
    return 2u * (2u * std::size_t(n_proj)) + 6u * (2u * std::size_t(n_bits) * std::size_t(n_proj));
}

std::size_t bob_parameter_count(int n_bits, int n_proj) {
    return 2u * (2u * std::size_t(n_proj)) + 5u * (2u * std::size_t(n_bits) * std::size_t(n_proj));
}

std::size_t eve_parameter_count(int n_bits, int n_proj) {
    return 2u * std::size_t(n_proj) + 2u * (2u * std::size_t(n_bits) * std::size_t(n_proj));
}

std::size_t parameter_count(const std::vector<const Parameter*>& params) {
    std::size_t n = 0;
    for (const Parameter* p : params) n += p->tensor.size();
    return n;
}

}  // namespace ranc
