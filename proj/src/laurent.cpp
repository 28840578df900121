#include "ladder/laurent.hpp"

#include <algorithm>
#include <sstream>
#include <utility>
#include <vector>

#include "ladder/error.hpp"

namespace ladder {

LaurentBlockMatrix LaurentBlockMatrix::constant(const IntMatrix& block) {
    if (!block.square()) throw Error(ErrorKind::DimensionMismatch, "Laurent block must be square");
    LaurentBlockMatrix L(block.rows());
    L.set(0, block);
    return L;
}

LaurentBlockMatrix LaurentBlockMatrix::identity(std::size_t d) {
    return constant(IntMatrix::identity(d));
}

IntMatrix LaurentBlockMatrix::block(int shift) const {
    auto it = blocks_.find(shift);
    return it == blocks_.end() ? IntMatrix(d_, d_) : it->second;
}

void LaurentBlockMatrix::set(int shift, const IntMatrix& b) {
    if (b.rows() != d_ || b.cols() != d_)
        throw Error(ErrorKind::DimensionMismatch, "Laurent block has wrong size");
    if (b.is_zero())
        blocks_.erase(shift);
    else
        blocks_[shift] = b;
}

void LaurentBlockMatrix::add(int shift, const IntMatrix& b) {
    auto it = blocks_.find(shift);
    if (it == blocks_.end())
        set(shift, b);
    else
        set(shift, mat_add(it->second, b));
}

int LaurentBlockMatrix::min_shift() const { return blocks_.empty() ? 0 : blocks_.begin()->first; }
int LaurentBlockMatrix::max_shift() const { return blocks_.empty() ? 0 : blocks_.rbegin()->first; }

int LaurentBlockMatrix::band() const {
    return std::max(std::abs(min_shift()), std::abs(max_shift()));
}

LaurentBlockMatrix LaurentBlockMatrix::adjoint() const {
    LaurentBlockMatrix r(d_);
    for (const auto& [s, b] : blocks_) r.blocks_[-s] = b.transpose();
    return r;
}

std::string LaurentBlockMatrix::str() const {
    std::ostringstream os;
    bool first = true;
    for (const auto& [s, b] : blocks_) {
        os << (first ? "" : " + ") << b.str() << "t^" << s;
        first = false;
    }
    if (first) os << "0";
    return os.str();
}

LaurentBlockMatrix laurent_add(const LaurentBlockMatrix& a, const LaurentBlockMatrix& b) {
    if (a.dim() != b.dim()) throw Error(ErrorKind::DimensionMismatch, "laurent_add: block dims differ");
    LaurentBlockMatrix r = a;
    for (const auto& [s, blk] : b.blocks()) r.add(s, blk);
    return r;
}

namespace {

void check_dims(const LaurentBlockMatrix& a, const LaurentBlockMatrix& b) {
    if (a.dim() != b.dim()) throw Error(ErrorKind::DimensionMismatch, "laurent_mul: block dims differ");
}

// Sum of a_r * b_{s-r} for one output shift s.
IntMatrix product_at(const LaurentBlockMatrix& a, const LaurentBlockMatrix& b, int s) {
    IntMatrix acc(a.dim(), a.dim());
    for (const auto& [r, ar] : a.blocks()) {
        auto it = b.blocks().find(s - r);
        if (it == b.blocks().end()) continue;
        acc = mat_add(acc, serial::mat_mul(ar, it->second));
    }
    return acc;
}

}  // namespace

LaurentBlockMatrix laurent_mul(const LaurentBlockMatrix& a, const LaurentBlockMatrix& b) {
    check_dims(a, b);
    LaurentBlockMatrix r(a.dim());
    if (a.empty() || b.empty()) return r;
    const int lo = a.min_shift() + b.min_shift();
    const int hi = a.max_shift() + b.max_shift();
    std::vector<IntMatrix> out(static_cast<std::size_t>(hi - lo + 1));
#pragma omp parallel for schedule(dynamic, 1)
    for (int s = lo; s <= hi; ++s) out[static_cast<std::size_t>(s - lo)] = product_at(a, b, s);
    for (int s = lo; s <= hi; ++s) r.set(s, out[static_cast<std::size_t>(s - lo)]);
    return r;
}

LaurentBlockMatrix serial::laurent_mul(const LaurentBlockMatrix& a, const LaurentBlockMatrix& b) {
    check_dims(a, b);
    LaurentBlockMatrix r(a.dim());
    for (const auto& [ra, ba] : a.blocks())
        for (const auto& [rb, bb] : b.blocks()) r.add(ra + rb, serial::mat_mul(ba, bb));
    return r;
}

LaurentBlockMatrix laurent_pow(const LaurentBlockMatrix& a, unsigned e) {
    LaurentBlockMatrix result = LaurentBlockMatrix::identity(a.dim());
    LaurentBlockMatrix base = a;
    while (e) {
        if (e & 1u) result = laurent_mul(result, base);
        e >>= 1;
        if (e) base = laurent_mul(base, base);
    }
    return result;
}

IntMatrix laurent_eval_one(const LaurentBlockMatrix& L) {
    IntMatrix acc(L.dim(), L.dim());
    for (const auto& [s, b] : L.blocks()) acc = mat_add(acc, b);
    return acc;
}

}  // namespace ladder
