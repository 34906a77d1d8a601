#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace folio {

/// Dense row-major tensor of doubles with a runtime shape.
///
/// This is deliberately minimal: the training engine only needs contiguous
/// storage, shape bookkeeping and a handful of indexing helpers. Anything
/// numeric lives in the autodiff ops, not here.
class Tensor {
public:
    Tensor() = default;
    explicit Tensor(std::vector<int> shape, double fill = 0.0);

    static Tensor scalar(double v);
    static Tensor from_vector(std::vector<int> shape, std::vector<double> values);

    const std::vector<int>& shape() const { return shape_; }
    int dim(int i) const { return shape_[static_cast<std::size_t>(i)]; }
    int rank() const { return static_cast<int>(shape_.size()); }
    std::size_t size() const { return data_.size(); }

    double* data() { return data_.data(); }
    const double* data() const { return data_.data(); }
    std::vector<double>& values() { return data_; }
    const std::vector<double>& values() const { return data_; }

    double& operator[](std::size_t i) { return data_[i]; }
    double operator[](std::size_t i) const { return data_[i]; }

    double& at2(int i, int j) {
        return data_[static_cast<std::size_t>(i) * static_cast<std::size_t>(shape_[1]) +
                     static_cast<std::size_t>(j)];
    }
    double at2(int i, int j) const {
        return data_[static_cast<std::size_t>(i) * static_cast<std::size_t>(shape_[1]) +
                     static_cast<std::size_t>(j)];
    }
    double& at3(int i, int j, int k) {
        const std::size_t s1 = static_cast<std::size_t>(shape_[1]);
        const std::size_t s2 = static_cast<std::size_t>(shape_[2]);
        return data_[(static_cast<std::size_t>(i) * s1 + static_cast<std::size_t>(j)) * s2 +
                     static_cast<std::size_t>(k)];
    }
    double at3(int i, int j, int k) const {
        const std::size_t s1 = static_cast<std::size_t>(shape_[1]);
        const std::size_t s2 = static_cast<std::size_t>(shape_[2]);
        return data_[(static_cast<std::size_t>(i) * s1 + static_cast<std::size_t>(j)) * s2 +
                     static_cast<std::size_t>(k)];
    }

    /// Value of a single-element tensor.
    double item() const;

    /// True if every element is finite.
    bool all_finite() const;

    /// "[2, 3, 5]" style shape string for error messages.
    std::string shape_str() const;

    bool same_shape(const Tensor& other) const { return shape_ == other.shape_; }

private:
    std::vector<int> shape_;
    std::vector<double> data_;
};

std::size_t numel(const std::vector<int>& shape);
std::string shape_str(const std::vector<int>& shape);

} // namespace folio
