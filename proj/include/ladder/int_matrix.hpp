#pragma once

#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace ladder {

using BigInt = mpz_class;

// Dense matrix of nonnegative arbitrary-precision integers, row-major.
class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols);
    IntMatrix(std::initializer_list<std::initializer_list<long>> grid);
    static IntMatrix from_rows(const std::vector<std::vector<BigInt>>& grid);
    static IntMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    const BigInt& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
    // Callers must keep entries nonnegative; check_nonnegative() re-validates.
    BigInt& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    void set(std::size_t i, std::size_t j, const BigInt& v);

    bool is_zero() const;
    bool is_symmetric() const;
    void check_nonnegative() const;
    IntMatrix transpose() const;
    std::vector<std::vector<double>> to_double() const;
    std::string str() const;

    bool operator==(const IntMatrix& o) const;
    bool operator!=(const IntMatrix& o) const { return !(*this == o); }
    bool operator<=(const IntMatrix& o) const;  // entrywise

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<BigInt> data_;
};

IntMatrix mat_add(const IntMatrix& a, const IntMatrix& b);
// OpenMP over output rows.
IntMatrix mat_mul(const IntMatrix& a, const IntMatrix& b);
IntMatrix mat_pow(const IntMatrix& a, unsigned e);

namespace serial {
IntMatrix mat_mul(const IntMatrix& a, const IntMatrix& b);
}

}  // namespace ladder
