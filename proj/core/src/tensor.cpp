#include "folio/tensor.hpp"

#include <cmath>
#include <utility>

#include "folio/errors.hpp"

namespace folio {

std::size_t numel(const std::vector<int>& shape) {
    std::size_t n = 1;
    for (int d : shape) {
        if (d <= 0) throw DimensionError("tensor dimensions must be positive, got " + shape_str(shape));
        n *= static_cast<std::size_t>(d);
    }
    return n;
}

std::string shape_str(const std::vector<int>& shape) {
    std::string s = "[";
    for (std::size_t i = 0; i < shape.size(); ++i) {
        if (i) s += ", ";
        s += std::to_string(shape[i]);
    }
    return s + "]";
}

Tensor::Tensor(std::vector<int> shape, double fill)
    : shape_(std::move(shape)), data_(numel(shape_), fill) {}

Tensor Tensor::scalar(double v) {
    Tensor t({1});
    t.data_[0] = v;
    return t;
}

Tensor Tensor::from_vector(std::vector<int> shape, std::vector<double> values) {
    Tensor t;
    t.shape_ = std::move(shape);
    if (numel(t.shape_) != values.size()) {
        throw DimensionError("from_vector: " + std::to_string(values.size()) +
                             " values do not fill shape " + folio::shape_str(t.shape_));
    }
    t.data_ = std::move(values);
    return t;
}

double Tensor::item() const {
    if (data_.size() != 1) {
        throw DimensionError("item() called on tensor of shape " + shape_str());
    }
    return data_[0];
}

bool Tensor::all_finite() const {
    for (double v : data_) {
        if (!std::isfinite(v)) return false;
    }
    return true;
}

std::string Tensor::shape_str() const { return folio::shape_str(shape_); }

} // namespace folio
