#include "ladder/int_matrix.hpp"

#include <sstream>

#include "ladder/error.hpp"

namespace ladder {

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, BigInt(0)) {}

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> grid) {
    rows_ = grid.size();
    cols_ = rows_ ? grid.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& row : grid) {
        if (row.size() != cols_) throw Error(ErrorKind::DimensionMismatch, "ragged matrix literal");
        for (long v : row) data_.emplace_back(v);
    }
    check_nonnegative();
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<BigInt>>& grid) {
    IntMatrix m(grid.size(), grid.empty() ? 0 : grid[0].size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (grid[i].size() != m.cols_) throw Error(ErrorKind::DimensionMismatch, "ragged matrix rows");
        for (std::size_t j = 0; j < m.cols_; ++j) m.data_[i * m.cols_ + j] = grid[i][j];
    }
    m.check_nonnegative();
    return m;
}

IntMatrix IntMatrix::identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.data_[i * n + i] = 1;
    return m;
}

void IntMatrix::set(std::size_t i, std::size_t j, const BigInt& v) {
    if (sgn(v) < 0) throw Error(ErrorKind::ValidationFailed, "negative matrix entry");
    data_[i * cols_ + j] = v;
}

bool IntMatrix::is_zero() const {
    for (const auto& x : data_)
        if (sgn(x) != 0) return false;
    return true;
}

bool IntMatrix::is_symmetric() const {
    if (!square()) return false;
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = i + 1; j < cols_; ++j)
            if ((*this)(i, j) != (*this)(j, i)) return false;
    return true;
}

void IntMatrix::check_nonnegative() const {
    for (const auto& x : data_)
        if (sgn(x) < 0) throw Error(ErrorKind::ValidationFailed, "negative matrix entry");
}

IntMatrix IntMatrix::transpose() const {
    IntMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t.data_[j * rows_ + i] = (*this)(i, j);
    return t;
}

std::vector<std::vector<double>> IntMatrix::to_double() const {
    std::vector<std::vector<double>> out(rows_, std::vector<double>(cols_));
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) out[i][j] = (*this)(i, j).get_d();
    return out;
}

std::string IntMatrix::str() const {
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < rows_; ++i) {
        os << (i ? ",[" : "[");
        for (std::size_t j = 0; j < cols_; ++j) os << (j ? "," : "") << (*this)(i, j).get_str();
        os << ']';
    }
    os << ']';
    return os.str();
}

bool IntMatrix::operator==(const IntMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
}

bool IntMatrix::operator<=(const IntMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) return false;
    for (std::size_t k = 0; k < data_.size(); ++k)
        if (data_[k] > o.data_[k]) return false;
    return true;
}

IntMatrix mat_add(const IntMatrix& a, const IntMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw Error(ErrorKind::DimensionMismatch, "mat_add: shapes differ");
    IntMatrix c(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) c.at(i, j) = a(i, j) + b(i, j);
    return c;
}

namespace {

void check_mul_shapes(const IntMatrix& a, const IntMatrix& b) {
    if (a.cols() != b.rows())
        throw Error(ErrorKind::DimensionMismatch,
                    "mat_mul: " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) + " times " +
                        std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
}

void mul_row(const IntMatrix& a, const IntMatrix& b, IntMatrix& c, std::size_t i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
        const BigInt& aik = a(i, k);
        if (sgn(aik) == 0) continue;
        for (std::size_t j = 0; j < b.cols(); ++j) {
            if (sgn(b(k, j)) == 0) continue;
            mpz_addmul(c.at(i, j).get_mpz_t(), aik.get_mpz_t(), b(k, j).get_mpz_t());
        }
    }
}

}  // namespace

IntMatrix mat_mul(const IntMatrix& a, const IntMatrix& b) {
    check_mul_shapes(a, b);
    IntMatrix c(a.rows(), b.cols());
    const long n = static_cast<long>(a.rows());
#pragma omp parallel for schedule(dynamic, 1) if (n * static_cast<long>(b.cols()) >= 64)
    for (long i = 0; i < n; ++i) mul_row(a, b, c, static_cast<std::size_t>(i));
    return c;
}

IntMatrix serial::mat_mul(const IntMatrix& a, const IntMatrix& b) {
    check_mul_shapes(a, b);
    IntMatrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) mul_row(a, b, c, i);
    return c;
}

IntMatrix mat_pow(const IntMatrix& a, unsigned e) {
    if (!a.square()) throw Error(ErrorKind::DimensionMismatch, "mat_pow: matrix not square");
    IntMatrix result = IntMatrix::identity(a.rows());
    IntMatrix base = a;
    while (e) {
        if (e & 1u) result = mat_mul(result, base);
        e >>= 1;
        if (e) base = mat_mul(base, base);
    }
    return result;
}

}  // namespace ladder
