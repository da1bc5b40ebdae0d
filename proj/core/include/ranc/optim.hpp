#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ranc/tensor.hpp"

namespace ranc {

struct AdamConfig {
    float learning_rate = 0.001f;
    float beta1 = 0.9f;
    float beta2 = 0.999f;
    float eps = 1e-8f;
};

// A trainable tensor plus its ADAM moment estimates.
struct Parameter {
    std::string name;
    Tensor tensor;
    std::vector<float> adam_m;
    std::vector<float> adam_v;
    std::int64_t step_count = 0;

    Parameter() = default;
    Parameter(std::string name, Tensor t);
};

// One ADAM update from the gradients currently stored on p.tensor.
// Gradients are left untouched; the caller zeroes them between steps.
// Throws NumericError (naming the parameter) on non-finite gradients.
void adam_step(Parameter& p, const AdamConfig& cfg);

}  // namespace ranc
