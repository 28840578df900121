#pragma once

#include <cstddef>
#include <vector>

namespace ladder {

struct RealMatrix {
    std::size_t rows = 0, cols = 0;
    std::vector<double> a;

    RealMatrix() = default;
    RealMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, 0.0) {}
    double operator()(std::size_t i, std::size_t j) const { return a[i * cols + j]; }
    double& at(std::size_t i, std::size_t j) { return a[i * cols + j]; }
    bool operator==(const RealMatrix&) const = default;
};

}  // namespace ladder
