#pragma once

#include <map>
#include <string>

#include "ladder/int_matrix.hpp"

namespace ladder {

// Finitely supported map shift -> d x d block; zero blocks are never stored.
class LaurentBlockMatrix {
public:
    explicit LaurentBlockMatrix(std::size_t d = 1) : d_(d) {}
    static LaurentBlockMatrix constant(const IntMatrix& block);
    static LaurentBlockMatrix identity(std::size_t d);

    std::size_t dim() const { return d_; }
    const std::map<int, IntMatrix>& blocks() const { return blocks_; }
    bool empty() const { return blocks_.empty(); }

    // Zero matrix when the shift is outside the support.
    IntMatrix block(int shift) const;
    void set(int shift, const IntMatrix& b);
    void add(int shift, const IntMatrix& b);

    int min_shift() const;
    int max_shift() const;
    // max |shift| over the support, 0 when empty.
    int band() const;

    // t -> 1/t combined with blockwise transpose.
    LaurentBlockMatrix adjoint() const;
    std::string str() const;

    bool operator==(const LaurentBlockMatrix& o) const { return d_ == o.d_ && blocks_ == o.blocks_; }
    bool operator!=(const LaurentBlockMatrix& o) const { return !(*this == o); }

private:
    std::size_t d_;
    std::map<int, IntMatrix> blocks_;
};

LaurentBlockMatrix laurent_add(const LaurentBlockMatrix& a, const LaurentBlockMatrix& b);
// OpenMP over output shifts.
LaurentBlockMatrix laurent_mul(const LaurentBlockMatrix& a, const LaurentBlockMatrix& b);
LaurentBlockMatrix laurent_pow(const LaurentBlockMatrix& a, unsigned e);
IntMatrix laurent_eval_one(const LaurentBlockMatrix& L);

namespace serial {
LaurentBlockMatrix laurent_mul(const LaurentBlockMatrix& a, const LaurentBlockMatrix& b);
}

}  // namespace ladder
