// Exact linear algebra over prime fields F_p.
//
// Every cohomology computation in masseykit bottoms out here: cocycle and
// coboundary spaces, defining-system solves and coset membership tests are
// all sparse eliminations over F_p. Pivots are chosen as the first nonzero
// column, so bases come out in a canonical order.

#ifndef MASSEYKIT_FP_LINALG_HPP
#define MASSEYKIT_FP_LINALG_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace masseykit {

using fp_t = std::uint32_t;

bool is_prime(std::uint64_t n);

/// Arithmetic in Z/pZ on raw residues. The modulus must be a prime below 2^31.
class PrimeField {
   public:
    explicit PrimeField(fp_t p);

    fp_t modulus() const noexcept { return p_; }
    fp_t reduce(std::int64_t v) const noexcept {
        std::int64_t r = v % static_cast<std::int64_t>(p_);
        return static_cast<fp_t>(r < 0 ? r + p_ : r);
    }
    fp_t add(fp_t a, fp_t b) const noexcept {
        fp_t s = a + b;
        return s >= p_ ? s - p_ : s;
    }
    fp_t sub(fp_t a, fp_t b) const noexcept { return a >= b ? a - b : a + p_ - b; }
    fp_t neg(fp_t a) const noexcept { return a == 0 ? 0 : p_ - a; }
    fp_t mul(fp_t a, fp_t b) const noexcept {
        return static_cast<fp_t>(static_cast<std::uint64_t>(a) * b % p_);
    }
    fp_t pow(fp_t a, std::uint64_t e) const noexcept;
    /// Throws std::domain_error on zero.
    fp_t inv(fp_t a) const;

   private:
    fp_t p_;
};

/// A residue together with its modulus.
struct FpScalar {
    fp_t value = 0;
    fp_t modulus = 2;

    FpScalar() = default;
    FpScalar(std::int64_t v, fp_t p);

    friend bool operator==(const FpScalar&, const FpScalar&) = default;
    FpScalar operator+(const FpScalar& o) const;
    FpScalar operator-(const FpScalar& o) const;
    FpScalar operator*(const FpScalar& o) const;
    FpScalar operator-() const;
    FpScalar inverse() const;
};

using FpVector = std::vector<fp_t>;
using SparseRow = std::vector<std::pair<std::uint32_t, fp_t>>;  // sorted by column, no zeros

/// Matrix over F_p, stored densely or as sparse rows.
///
/// Builders produce whichever storage is convenient; `compact()` switches to
/// sparse rows when fewer than 10% of the entries are nonzero. Elimination
/// always works on sparse rows, so the storage choice only affects memory.
class FpMatrix {
   public:
    enum class Storage { dense, sparse };

    FpMatrix(std::size_t rows, std::size_t cols, fp_t p);
    static FpMatrix identity(std::size_t n, fp_t p);
    static FpMatrix from_rows(std::size_t cols, fp_t p, std::vector<SparseRow> rows);
    static FpMatrix from_dense(fp_t p, const std::vector<std::vector<std::int64_t>>& rows);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    fp_t modulus() const noexcept { return field_.modulus(); }
    const PrimeField& field() const noexcept { return field_; }
    Storage storage() const noexcept { return storage_; }

    fp_t at(std::size_t r, std::size_t c) const;
    void set(std::size_t r, std::size_t c, fp_t v);

    SparseRow row(std::size_t r) const;
    std::size_t nonzeros() const;
    double density() const;
    void compact();

    FpMatrix transpose() const;
    FpVector apply(std::span<const fp_t> x) const;

   private:
    PrimeField field_;
    std::size_t rows_, cols_;
    Storage storage_;
    std::vector<fp_t> dense_;
    std::vector<SparseRow> sparse_;
};

std::size_t rank(const FpMatrix& m);
/// Basis of {x : m x = 0}; one vector per non-pivot column, with a 1 there and
/// zeros on the other free columns.
std::vector<FpVector> kernel_basis(const FpMatrix& m);
std::optional<FpVector> solve(const FpMatrix& m, std::span<const fp_t> b);

/// Incrementally built row echelon form of a subspace of F_p^n.
///
/// Every stored row remembers which combination of the inserted generators
/// produced it, so `express` returns coefficients with respect to the
/// generators as they were added. This is the workhorse behind membership
/// tests ("is this 2-cocycle a coboundary?") and the tall solves that never
/// need the full matrix in memory.
class FpSubspace {
   public:
    FpSubspace(std::size_t dim, fp_t p);

    std::size_t ambient_dim() const noexcept { return dim_; }
    std::size_t dimension() const noexcept { return rows_.size(); }
    std::size_t generator_count() const noexcept { return generators_; }
    const PrimeField& field() const noexcept { return field_; }

    /// Adds a generator; returns true if it enlarged the span.
    bool add(SparseRow v);
    bool add_dense(std::span<const fp_t> v);
    bool contains(SparseRow v) const;
    bool contains_dense(std::span<const fp_t> v) const;
    /// Coefficients c with sum c_i * generator_i = v, or nullopt.
    std::optional<FpVector> express(SparseRow v) const;
    std::optional<FpVector> express_dense(std::span<const fp_t> v) const;

   private:
    struct Row {
        SparseRow vec;    // leading coefficient 1
        SparseRow combo;  // over generator indices
    };
    // Reduces v in place; stops at the first column without a pivot.
    void reduce(SparseRow& v, SparseRow* combo) const;

    PrimeField field_;
    std::size_t dim_;
    std::size_t generators_ = 0;
    std::vector<Row> rows_;
    std::vector<std::int64_t> pivot_of_col_;
};

SparseRow to_sparse(std::span<const fp_t> v);
FpVector to_dense(const SparseRow& v, std::size_t n);

}  // namespace masseykit

#endif  // MASSEYKIT_FP_LINALG_HPP
