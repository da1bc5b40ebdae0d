#include "ranc/optim.hpp"

#include <cmath>
#include <utility>

namespace ranc {

Parameter::Parameter(std::string n, Tensor t) : name(std::move(n)), tensor(std::move(t)) {
    tensor.set_requires_grad(true);
    adam_m.assign(tensor.size(), 0.0f);
    adam_v.assign(tensor.size(), 0.0f);
}

void adam_step(Parameter& p, const AdamConfig& cfg) {
    auto grad = p.tensor.grad();
    auto vals = p.tensor.values();
    const std::size_t n = vals.size();
    for (std::size_t i = 0; i < n; ++i)
        if (!std::isfinite(grad[i]))
            throw NumericError("adam_step: non-finite gradient in parameter '" + p.name + "'");

    p.step_count += 1;
    const double b1t = 1.0 - std::pow(double(cfg.beta1), double(p.step_count));
    const double b2t = 1.0 - std::pow(double(cfg.beta2), double(p.step_count));
    for (std::size_t i = 0; i < n; ++i) {
        const float g = grad[i];
        p.adam_m[i] = cfg.beta1 * p.adam_m[i] + (1.0f - cfg.beta1) * g;
        p.adam_v[i] = cfg.beta2 * p.adam_v[i] + (1.0f - cfg.beta2) * g * g;
        const float m_hat = float(double(p.adam_m[i]) / b1t);
        const float v_hat = float(double(p.adam_v[i]) / b2t);
        vals[i] -= cfg.learning_rate * m_hat / (std::sqrt(v_hat) + cfg.eps);
    }
}

}  // namespace ranc
