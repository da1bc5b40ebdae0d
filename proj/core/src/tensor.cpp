#include "ranc/tensor.hpp"

#include <cmath>
#include <string>
#include <utility>

namespace ranc {

namespace {

std::string shape_str(const Tensor& t) {
    return "(" + std::to_string(t.rows()) + "x" + std::to_string(t.cols()) + ")";
}

void require_same_shape(const char* op, const Tensor& a, const Tensor& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw ShapeError(std::string(op) + ": shape mismatch " + shape_str(a) + " vs " + shape_str(b));
}

// rhs may tile vertically: equal cols, rhs rows divide lhs rows.
void require_tileable(const char* op, const Tensor& a, const Tensor& b) {
    if (a.cols() != b.cols() || b.rows() == 0 || a.rows() % b.rows() != 0)
        throw ShapeError(std::string(op) + ": shape mismatch " + shape_str(a) + " vs " + shape_str(b) +
                         " (rhs must tile lhs rows)");
}

bool want_record(Tape* tape, std::initializer_list<const Tensor*> inputs) {
    if (!tape) return false;
    for (const Tensor* t : inputs)
        if (t->requires_grad()) return true;
    return false;
}

}  // namespace

// ---- Tensor --------------------------------------------------------------

Tensor Tensor::zeros(int rows, int cols) {
    Tensor t;
    t.d_ = std::make_shared<Data>();
    t.d_->rows = rows;
    t.d_->cols = cols;
    t.d_->values.assign(std::size_t(rows) * cols, 0.0f);
    return t;
}

Tensor Tensor::full(int rows, int cols, float value) {
    Tensor t = zeros(rows, cols);
    for (float& v : t.d_->values) v = value;
    return t;
}

Tensor Tensor::from(int rows, int cols, std::vector<float> values) {
    if (values.size() != std::size_t(rows) * cols)
        throw ShapeError("Tensor::from: " + std::to_string(values.size()) + " values for (" +
                         std::to_string(rows) + "x" + std::to_string(cols) + ")");
    Tensor t;
    t.d_ = std::make_shared<Data>();
    t.d_->rows = rows;
    t.d_->cols = cols;
    t.d_->values = std::move(values);
    return t;
}

Tensor Tensor::column(std::span<const float> values) {
    return from(int(values.size()), 1, std::vector<float>(values.begin(), values.end()));
}

std::span<float> Tensor::grad() {
    if (d_->grad.empty()) d_->grad.assign(d_->values.size(), 0.0f);
    return d_->grad;
}

void Tensor::zero_grad() {
    for (float& g : d_->grad) g = 0.0f;
}

float Tensor::item() const {
    if (size() != 1) throw UsageError("Tensor::item: tensor is " + shape_str(*this) + ", not 1x1");
    return d_->values[0];
}

Tensor Tensor::detached() const {
    Tensor t;
    t.d_ = std::make_shared<Data>();
    t.d_->rows = d_->rows;
    t.d_->cols = d_->cols;
    t.d_->values = d_->values;
    return t;
}

// ---- Tape ----------------------------------------------------------------

void Tape::record(Tensor& out, std::function<void()> backward_fn) {
    out.d_->tape = this;
    out.d_->node = int(nodes_.size());
    out.d_->requires_grad = true;
    nodes_.push_back(std::move(backward_fn));
}

void Tape::backward(const Tensor& loss) {
    if (!loss.defined() || loss.d_->tape != this)
        throw UsageError("Tape::backward: loss tensor was not produced under this tape");
    if (loss.size() != 1)
        throw UsageError("Tape::backward: loss must be 1x1");
    Tensor seed = loss;  // shared storage
    seed.grad()[0] += 1.0f;
    for (int i = loss.d_->node; i >= 0; --i) nodes_[std::size_t(i)]();
}

// ---- primitives ----------------------------------------------------------

Tensor add(Tape* tape, const Tensor& a, const Tensor& b) {
    require_tileable("add", a, b);
    const int rows = a.rows(), cols = a.cols(), brows = b.rows();
    Tensor out = Tensor::zeros(rows, cols);
    {
        auto av = a.values(); auto bv = b.values(); auto ov = out.values();
        for (int i = 0; i < rows; ++i) {
            const float* ap = &av[std::size_t(i) * cols];
            const float* bp = &bv[std::size_t(i % brows) * cols];
            float* op = &ov[std::size_t(i) * cols];
            for (int j = 0; j < cols; ++j) op[j] = ap[j] + bp[j];
        }
    }
    if (want_record(tape, {&a, &b})) {
        Tensor ac = a, bc = b, oc = out;
        tape->record(out, [ac, bc, oc]() mutable {
            auto og = oc.grad();
            const int rows = oc.rows(), cols = oc.cols(), brows = bc.rows();
            if (ac.requires_grad()) {
                auto ag = ac.grad();
                for (std::size_t n = 0; n < og.size(); ++n) ag[n] += og[n];
            }
            if (bc.requires_grad()) {
                auto bg = bc.grad();
                for (int i = 0; i < rows; ++i) {
                    float* bp = &bg[std::size_t(i % brows) * cols];
                    const float* gp = &og[std::size_t(i) * cols];
                    for (int j = 0; j < cols; ++j) bp[j] += gp[j];
                }
            }
        });
    }
    return out;
}

Tensor mul(Tape* tape, const Tensor& a, const Tensor& b) {
    require_tileable("mul", a, b);
    const int rows = a.rows(), cols = a.cols(), brows = b.rows();
    Tensor out = Tensor::zeros(rows, cols);
    {
        auto av = a.values(); auto bv = b.values(); auto ov = out.values();
        for (int i = 0; i < rows; ++i) {
            const float* ap = &av[std::size_t(i) * cols];
            const float* bp = &bv[std::size_t(i % brows) * cols];
            float* op = &ov[std::size_t(i) * cols];
            for (int j = 0; j < cols; ++j) op[j] = ap[j] * bp[j];
        }
    }
    if (want_record(tape, {&a, &b})) {
        Tensor ac = a, bc = b, oc = out;
        tape->record(out, [ac, bc, oc]() mutable {
            auto og = oc.grad();
            auto av = ac.values(); auto bv = bc.values();
            const int rows = oc.rows(), cols = oc.cols(), brows = bc.rows();
            if (ac.requires_grad()) {
                auto ag = ac.grad();
                for (int i = 0; i < rows; ++i) {
                    float* ap = &ag[std::size_t(i) * cols];
                    const float* bp = &bv[std::size_t(i % brows) * cols];
                    const float* gp = &og[std::size_t(i) * cols];
                    for (int j = 0; j < cols; ++j) ap[j] += gp[j] * bp[j];
                }
            }
            if (bc.requires_grad()) {
                auto bg = bc.grad();
                for (int i = 0; i < rows; ++i) {
                    float* bp = &bg[std::size_t(i % brows) * cols];
                    const float* ap = &av[std::size_t(i) * cols];
                    const float* gp = &og[std::size_t(i) * cols];
                    for (int j = 0; j < cols; ++j) bp[j] += gp[j] * ap[j];
                }
            }
        });
    }
    return out;
}

Tensor sub(Tape* tape, const Tensor& a, const Tensor& b) {
    require_same_shape("sub", a, b);
    Tensor out = Tensor::zeros(a.rows(), a.cols());
    {
        auto av = a.values(); auto bv = b.values(); auto ov = out.values();
        for (std::size_t n = 0; n < ov.size(); ++n) ov[n] = av[n] - bv[n];
    }
    if (want_record(tape, {&a, &b})) {
        Tensor ac = a, bc = b, oc = out;
        tape->record(out, [ac, bc, oc]() mutable {
            auto og = oc.grad();
            if (ac.requires_grad()) {
                auto ag = ac.grad();
                for (std::size_t n = 0; n < og.size(); ++n) ag[n] += og[n];
            }
            if (bc.requires_grad()) {
                auto bg = bc.grad();
                for (std::size_t n = 0; n < og.size(); ++n) bg[n] -= og[n];
            }
        });
    }
    return out;
}

Tensor affine(Tape* tape, const Tensor& t, float scale, float shift) {
    Tensor out = Tensor::zeros(t.rows(), t.cols());
    {
        auto tv = t.values(); auto ov = out.values();
        for (std::size_t n = 0; n < ov.size(); ++n) ov[n] = scale * tv[n] + shift;
    }
    if (want_record(tape, {&t})) {
        Tensor tc = t, oc = out;
        tape->record(out, [tc, oc, scale]() mutable {
            auto og = oc.grad();
            auto tg = tc.grad();
            for (std::size_t n = 0; n < og.size(); ++n) tg[n] += scale * og[n];
        });
    }
    return out;
}

Tensor project(Tape* tape, const Tensor& x, const Tensor& w, const Tensor& b) {
    if (x.cols() != 1) throw ShapeError("project: x must be a column vector, got " + shape_str(x));
    if (w.cols() != 1 || b.cols() != 1 || w.rows() != b.rows())
        throw ShapeError("project: w and b must be equal-length column vectors, got " +
                         shape_str(w) + " and " + shape_str(b));
    const int rows = x.rows(), m = w.rows();
    Tensor out = Tensor::zeros(rows, m);
    {
        auto xv = x.values(); auto wv = w.values(); auto bv = b.values(); auto ov = out.values();
        for (int i = 0; i < rows; ++i) {
            const float xi = xv[std::size_t(i)];
            float* op = &ov[std::size_t(i) * m];
            for (int j = 0; j < m; ++j) op[j] = xi * wv[std::size_t(j)] + bv[std::size_t(j)];
        }
    }
    if (want_record(tape, {&x, &w, &b})) {
        Tensor xc = x, wc = w, bc = b, oc = out;
        tape->record(out, [xc, wc, bc, oc]() mutable {
            auto og = oc.grad();
            const int rows = oc.rows(), m = oc.cols();
            if (xc.requires_grad()) {
                auto xg = xc.grad(); auto wv = wc.values();
                for (int i = 0; i < rows; ++i) {
                    const float* gp = &og[std::size_t(i) * m];
                    double acc = 0.0;
                    for (int j = 0; j < m; ++j) acc += double(gp[j]) * wv[std::size_t(j)];
                    xg[std::size_t(i)] += float(acc);
                }
            }
            if (wc.requires_grad()) {
                auto wg = wc.grad(); auto xv = xc.values();
                for (int j = 0; j < m; ++j) {
                    double acc = 0.0;
                    for (int i = 0; i < rows; ++i) acc += double(og[std::size_t(i) * m + j]) * xv[std::size_t(i)];
                    wg[std::size_t(j)] += float(acc);
                }
            }
            if (bc.requires_grad()) {
                auto bg = bc.grad();
                for (int j = 0; j < m; ++j) {
                    double acc = 0.0;
                    for (int i = 0; i < rows; ++i) acc += double(og[std::size_t(i) * m + j]);
                    bg[std::size_t(j)] += float(acc);
                }
            }
        });
    }
    return out;
}

Tensor row_sum(Tape* tape, const Tensor& t) {
    const int rows = t.rows(), cols = t.cols();
    Tensor out = Tensor::zeros(rows, 1);
    {
        auto tv = t.values(); auto ov = out.values();
        for (int i = 0; i < rows; ++i) {
            const float* tp = &tv[std::size_t(i) * cols];
            double acc = 0.0;
            for (int j = 0; j < cols; ++j) acc += tp[j];
            ov[std::size_t(i)] = float(acc);
        }
    }
    if (want_record(tape, {&t})) {
        Tensor tc = t, oc = out;
        tape->record(out, [tc, oc]() mutable {
            auto og = oc.grad();
            auto tg = tc.grad();
            const int rows = tc.rows(), cols = tc.cols();
            for (int i = 0; i < rows; ++i) {
                const float g = og[std::size_t(i)];
                float* tp = &tg[std::size_t(i) * cols];
                for (int j = 0; j < cols; ++j) tp[j] += g;
            }
        });
    }
    return out;
}

double tanh_reference(double x) { return std::tanh(x); }

Tensor tanh(Tape* tape, const Tensor& t) {
    Tensor out = Tensor::zeros(t.rows(), t.cols());
    {
        auto tv = t.values(); auto ov = out.values();
        const std::size_t n = ov.size();
        const float* in = tv.data();
        float* o = ov.data();
        for (std::size_t k = 0; k < n; ++k) o[k] = std::tanh(in[k]);
    }
    if (want_record(tape, {&t})) {
        Tensor tc = t, oc = out;
        tape->record(out, [tc, oc]() mutable {
            auto og = oc.grad();
            auto ov = oc.values();
            auto tg = tc.grad();
            for (std::size_t n = 0; n < og.size(); ++n) tg[n] += og[n] * (1.0f - ov[n] * ov[n]);
        });
    }
    return out;
}

Tensor rmse(Tape* tape, const Tensor& x, const Tensor& y) {
    require_same_shape("rmse", x, y);
    const std::size_t n = x.size();
    double acc = 0.0;
    {
        auto xv = x.values(); auto yv = y.values();
        for (std::size_t k = 0; k < n; ++k) {
            const double d = double(xv[k]) - double(yv[k]);
            acc += d * d;
        }
    }
    const float value = float(std::sqrt(acc / double(n)));
    Tensor out = Tensor::from(1, 1, {value});
    if (want_record(tape, {&x, &y})) {
        Tensor xc = x, yc = y, oc = out;
        tape->record(out, [xc, yc, oc]() mutable {
            const float g = oc.grad()[0];
            const float v = oc.values()[0];
            if (v == 0.0f) return;  // subgradient 0 at the exact minimum
            auto xv = xc.values(); auto yv = yc.values();
            const float scale = g / (v * float(xv.size()));
            if (xc.requires_grad()) {
                auto xg = xc.grad();
                for (std::size_t k = 0; k < xv.size(); ++k) xg[k] += scale * (xv[k] - yv[k]);
            }
            if (yc.requires_grad()) {
                auto yg = yc.grad();
                for (std::size_t k = 0; k < xv.size(); ++k) yg[k] -= scale * (xv[k] - yv[k]);
            }
        });
    }
    return out;
}

}  // namespace ranc
