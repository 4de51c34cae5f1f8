#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace coho {

using Integer = mpz_class;

// Arithmetic in F_p for p < 2^31.
inline std::uint32_t mod_reduce(std::int64_t v, std::uint32_t p)
{
    std::int64_t r = v % static_cast<std::int64_t>(p);
    return static_cast<std::uint32_t>(r < 0 ? r + p : r);
}
inline std::uint32_t mod_mul(std::uint32_t a, std::uint32_t b, std::uint32_t p)
{
    return static_cast<std::uint32_t>((static_cast<std::uint64_t>(a) * b) % p);
}
inline std::uint32_t mod_add(std::uint32_t a, std::uint32_t b, std::uint32_t p)
{
    std::uint32_t s = a + b;
    return s >= p ? s - p : s;
}
inline std::uint32_t mod_sub(std::uint32_t a, std::uint32_t b, std::uint32_t p)
{
    return a >= b ? a - b : a + p - b;
}
std::uint32_t mod_pow(std::uint32_t a, std::uint64_t e, std::uint32_t p);
std::uint32_t mod_inv(std::uint32_t a, std::uint32_t p);
bool is_prime(std::uint64_t n);

// Checked int64 helpers; throw std::overflow_error.
std::int64_t checked_add(std::int64_t a, std::int64_t b);
std::int64_t checked_mul(std::int64_t a, std::int64_t b);

struct DimensionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

template <class S>
struct Triple {
    std::size_t row;
    std::size_t col;
    S value;
};

// Sparse matrix over F_p (S = std::uint32_t, prime > 0) or over Z (S = Integer, prime == 0).
template <class S>
class SparseMatrix {
public:
    SparseMatrix() = default;
    SparseMatrix(std::size_t rows, std::size_t cols, std::uint32_t prime = 0)
        : rows_(rows), cols_(cols), prime_(prime) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::uint32_t prime() const { return prime_; }
    const std::vector<Triple<S>>& entries() const { return entries_; }
    std::size_t nnz() const { return entries_.size(); }

    // Accumulates into (r,c); zero results are dropped by finalize().
    void add(std::size_t r, std::size_t c, const S& v);
    // Merge duplicates, drop zeros, sort by (col,row).
    void finalize();

    SparseMatrix transpose() const;
    std::string domain() const;

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::uint32_t prime_ = 0;
    std::vector<Triple<S>> entries_;
};

using MatrixFp = SparseMatrix<std::uint32_t>;
using MatrixZ = SparseMatrix<Integer>;

struct SmithReport {
    std::vector<Integer> elementary_divisors;
    std::size_t rank = 0;
    // divisors > 1 only, i.e. the cokernel torsion
    std::vector<Integer> torsion() const;
};

std::size_t rank_mod_p(const MatrixFp& m);
SmithReport smith_normal_form(const MatrixZ& m);

std::optional<std::vector<std::uint32_t>> solve(const MatrixFp& m, const std::vector<std::uint32_t>& b);
std::optional<std::vector<Integer>> solve(const MatrixZ& m, const std::vector<Integer>& b);

// Basis of the right kernel {x : m x = 0} over F_p.
std::vector<std::vector<std::uint32_t>> kernel_mod_p(const MatrixFp& m);

MatrixFp reduce_mod_p(const MatrixZ& m, std::uint32_t p);

// Coordinate text format: header "rows cols nnz domain", then "row col value" lines.
void write_coordinate(std::ostream& os, const MatrixZ& m);
void write_coordinate(std::ostream& os, const MatrixFp& m);
MatrixZ read_coordinate_z(std::istream& is);

// Incremental column-echelon basis over F_p. Columns are reduced against the
// stored pivots in a fixed order, so results do not depend on timing.
class EchelonBasisFp {
public:
    using SparseVec = std::vector<std::pair<std::uint32_t, std::uint32_t>>;

    EchelonBasisFp(std::size_t dim, std::uint32_t p, bool track = false);

    // Returns true if v was independent of the basis (and inserts it).
    bool insert(const SparseVec& v);
    // Reduce v; returns the residue and (if tracking) the combination of
    // inserted vectors that was subtracted.
    SparseVec reduce(const SparseVec& v, SparseVec* combo = nullptr) const;
    std::size_t rank() const { return count_; }
    std::size_t inserted() const { return inserted_; }

private:
    void reduce_dense(std::vector<std::uint32_t>& dense, std::vector<std::uint32_t>& touched,
                      std::vector<std::uint32_t>* combo_dense, std::vector<std::uint32_t>* combo_touched) const;

    std::size_t dim_;
    std::uint32_t p_;
    bool track_;
    std::size_t count_ = 0;
    std::size_t inserted_ = 0;
    std::vector<int> pivot_of_row_;
    std::vector<SparseVec> pivots_;
    std::vector<SparseVec> combos_;
    mutable std::vector<std::uint32_t> scratch_, combo_scratch_;
};

// Dense matrices over F_p, used for the small graded pieces of invariant theory.
struct DenseFp {
    std::size_t rows = 0, cols = 0;
    std::uint32_t p = 0;
    std::vector<std::uint32_t> a;

    DenseFp() = default;
    DenseFp(std::size_t r, std::size_t c, std::uint32_t prime) : rows(r), cols(c), p(prime), a(r * c, 0) {}
    std::uint32_t& at(std::size_t i, std::size_t j) { return a[i * cols + j]; }
    std::uint32_t at(std::size_t i, std::size_t j) const { return a[i * cols + j]; }
};

// Row reduce in place; returns pivot columns.
std::vector<std::size_t> rref(DenseFp& m);
std::size_t rank(DenseFp m);
std::vector<std::vector<std::uint32_t>> kernel(const DenseFp& m);

} // namespace coho
