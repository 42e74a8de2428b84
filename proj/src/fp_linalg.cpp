#include "masseykit/fp_linalg.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace masseykit {

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

PrimeField::PrimeField(fp_t p) : p_(p) {
    if (p >= (1u << 31) || !is_prime(p))
        throw std::invalid_argument("modulus " + std::to_string(p) + " is not a prime below 2^31");
}

fp_t PrimeField::pow(fp_t a, std::uint64_t e) const noexcept {
    fp_t r = 1 % p_;
    fp_t b = a % p_;
    while (e) {
        if (e & 1) r = mul(r, b);
        b = mul(b, b);
        e >>= 1;
    }
    return r;
}

fp_t PrimeField::inv(fp_t a) const {
    if (a % p_ == 0) throw std::domain_error("inverse of zero in F_" + std::to_string(p_));
    return pow(a, p_ - 2);
}

FpScalar::FpScalar(std::int64_t v, fp_t p) : value(PrimeField(p).reduce(v)), modulus(p) {}

namespace {
fp_t same_modulus(const FpScalar& a, const FpScalar& b) {
    if (a.modulus != b.modulus) throw std::invalid_argument("FpScalar modulus mismatch");
    return a.modulus;
}
}  // namespace

FpScalar FpScalar::operator+(const FpScalar& o) const {
    return FpScalar(static_cast<std::int64_t>(value) + o.value, same_modulus(*this, o));
}
FpScalar FpScalar::operator-(const FpScalar& o) const {
    return FpScalar(static_cast<std::int64_t>(value) - o.value, same_modulus(*this, o));
}
FpScalar FpScalar::operator*(const FpScalar& o) const {
    return FpScalar(static_cast<std::int64_t>(static_cast<std::uint64_t>(value) * o.value % modulus),
                    same_modulus(*this, o));
}
FpScalar FpScalar::operator-() const { return FpScalar(-static_cast<std::int64_t>(value), modulus); }
FpScalar FpScalar::inverse() const {
    FpScalar r;
    r.modulus = modulus;
    r.value = PrimeField(modulus).inv(value);
    return r;
}

SparseRow to_sparse(std::span<const fp_t> v) {
    SparseRow r;
    for (std::size_t i = 0; i < v.size(); ++i)
        if (v[i]) r.emplace_back(static_cast<std::uint32_t>(i), v[i]);
    return r;
}

FpVector to_dense(const SparseRow& v, std::size_t n) {
    FpVector r(n, 0);
    for (auto [c, x] : v) r.at(c) = x;
    return r;
}

// ---------------------------------------------------------------- FpMatrix

FpMatrix::FpMatrix(std::size_t rows, std::size_t cols, fp_t p)
    : field_(p), rows_(rows), cols_(cols), storage_(Storage::dense), dense_(rows * cols, 0) {}

FpMatrix FpMatrix::identity(std::size_t n, fp_t p) {
    FpMatrix m(n, n, p);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i, 1);
    return m;
}

FpMatrix FpMatrix::from_rows(std::size_t cols, fp_t p, std::vector<SparseRow> rows) {
    FpMatrix m(0, cols, p);
    m.storage_ = Storage::sparse;
    m.rows_ = rows.size();
    for (auto& r : rows) {
        std::sort(r.begin(), r.end());
        SparseRow clean;
        for (auto [c, v] : r) {
            if (c >= cols) throw std::out_of_range("sparse row column out of range");
            v %= p;
            if (!clean.empty() && clean.back().first == c)
                clean.back().second = m.field_.add(clean.back().second, v);
            else
                clean.emplace_back(c, v);
        }
        std::erase_if(clean, [](const auto& e) { return e.second == 0; });
        m.sparse_.push_back(std::move(clean));
    }
    return m;
}

FpMatrix FpMatrix::from_dense(fp_t p, const std::vector<std::vector<std::int64_t>>& rows) {
    std::size_t cols = rows.empty() ? 0 : rows.front().size();
    FpMatrix m(rows.size(), cols, p);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != cols) throw std::invalid_argument("ragged matrix literal");
        for (std::size_t c = 0; c < cols; ++c) m.set(r, c, m.field_.reduce(rows[r][c]));
    }
    return m;
}

fp_t FpMatrix::at(std::size_t r, std::size_t c) const {
    if (r >= rows_ || c >= cols_) throw std::out_of_range("FpMatrix index");
    if (storage_ == Storage::dense) return dense_[r * cols_ + c];
    const auto& row = sparse_[r];
    auto it = std::lower_bound(row.begin(), row.end(), std::make_pair(static_cast<std::uint32_t>(c), fp_t{0}));
    return (it != row.end() && it->first == c) ? it->second : 0;
}

void FpMatrix::set(std::size_t r, std::size_t c, fp_t v) {
    if (r >= rows_ || c >= cols_) throw std::out_of_range("FpMatrix index");
    v %= field_.modulus();
    if (storage_ == Storage::dense) {
        dense_[r * cols_ + c] = v;
        return;
    }
    auto& row = sparse_[r];
    auto key = static_cast<std::uint32_t>(c);
    auto it = std::lower_bound(row.begin(), row.end(), std::make_pair(key, fp_t{0}));
    if (it != row.end() && it->first == key) {
        if (v)
            it->second = v;
        else
            row.erase(it);
    } else if (v) {
        row.insert(it, {key, v});
    }
}

SparseRow FpMatrix::row(std::size_t r) const {
    if (r >= rows_) throw std::out_of_range("FpMatrix row");
    if (storage_ == Storage::sparse) return sparse_[r];
    return to_sparse(std::span<const fp_t>(dense_.data() + r * cols_, cols_));
}

std::size_t FpMatrix::nonzeros() const {
    if (storage_ == Storage::dense)
        return static_cast<std::size_t>(std::count_if(dense_.begin(), dense_.end(), [](fp_t v) { return v != 0; }));
    std::size_t n = 0;
    for (const auto& r : sparse_) n += r.size();
    return n;
}

double FpMatrix::density() const {
    if (rows_ == 0 || cols_ == 0) return 0.0;
    return static_cast<double>(nonzeros()) / (static_cast<double>(rows_) * static_cast<double>(cols_));
}

void FpMatrix::compact() {
    bool want_sparse = density() < 0.1;
    if (want_sparse && storage_ == Storage::dense) {
        sparse_.clear();
        for (std::size_t r = 0; r < rows_; ++r) sparse_.push_back(row(r));
        dense_.clear();
        dense_.shrink_to_fit();
        storage_ = Storage::sparse;
    } else if (!want_sparse && storage_ == Storage::sparse) {
        dense_.assign(rows_ * cols_, 0);
        for (std::size_t r = 0; r < rows_; ++r)
            for (auto [c, v] : sparse_[r]) dense_[r * cols_ + c] = v;
        sparse_.clear();
        storage_ = Storage::dense;
    }
}

FpMatrix FpMatrix::transpose() const {
    std::vector<SparseRow> cols(cols_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (auto [c, v] : row(r)) cols[c].emplace_back(static_cast<std::uint32_t>(r), v);
    return from_rows(rows_, field_.modulus(), std::move(cols));
}

FpVector FpMatrix::apply(std::span<const fp_t> x) const {
    if (x.size() != cols_) throw std::invalid_argument("FpMatrix::apply dimension mismatch");
    FpVector y(rows_, 0);
    for (std::size_t r = 0; r < rows_; ++r) {
        fp_t acc = 0;
        for (auto [c, v] : row(r)) acc = field_.add(acc, field_.mul(v, x[c]));
        y[r] = acc;
    }
    return y;
}

// ---------------------------------------------------------------- FpSubspace

namespace {

// a <- a + f*b over sparse rows
void axpy(const PrimeField& F, SparseRow& a, fp_t f, const SparseRow& b, SparseRow& scratch) {
    scratch.clear();
    scratch.reserve(a.size() + b.size());
    auto ia = a.cbegin();
    auto ib = b.cbegin();
    while (ia != a.cend() || ib != b.cend()) {
        if (ib == b.cend() || (ia != a.cend() && ia->first < ib->first)) {
            scratch.push_back(*ia++);
        } else if (ia == a.cend() || ib->first < ia->first) {
            scratch.emplace_back(ib->first, F.mul(f, ib->second));
            ++ib;
        } else {
            fp_t v = F.add(ia->second, F.mul(f, ib->second));
            if (v) scratch.emplace_back(ia->first, v);
            ++ia;
            ++ib;
        }
    }
    a.swap(scratch);
}

void scale(const PrimeField& F, SparseRow& a, fp_t f) {
    for (auto& e : a) e.second = F.mul(e.second, f);
}

}  // namespace

FpSubspace::FpSubspace(std::size_t dim, fp_t p) : field_(p), dim_(dim), pivot_of_col_(dim, -1) {}

void FpSubspace::reduce(SparseRow& v, SparseRow* combo) const {
    SparseRow scratch;
    while (!v.empty()) {
        auto lead = v.front().first;
        auto pr = pivot_of_col_[lead];
        if (pr < 0) return;
        const Row& row = rows_[static_cast<std::size_t>(pr)];
        fp_t f = field_.neg(v.front().second);
        axpy(field_, v, f, row.vec, scratch);
        if (combo) axpy(field_, *combo, f, row.combo, scratch);
    }
}

bool FpSubspace::add(SparseRow v) {
    for (auto& e : v) {
        if (e.first >= dim_) throw std::out_of_range("FpSubspace vector longer than ambient space");
        e.second %= field_.modulus();
    }
    std::erase_if(v, [](const auto& e) { return e.second == 0; });
    SparseRow combo{{static_cast<std::uint32_t>(generators_), 1}};
    ++generators_;
    reduce(v, &combo);
    if (v.empty()) return false;
    fp_t inv = field_.inv(v.front().second);
    scale(field_, v, inv);
    scale(field_, combo, inv);
    pivot_of_col_[v.front().first] = static_cast<std::int64_t>(rows_.size());
    rows_.push_back({std::move(v), std::move(combo)});
    return true;
}

bool FpSubspace::add_dense(std::span<const fp_t> v) {
    if (v.size() != dim_) throw std::invalid_argument("FpSubspace::add_dense dimension mismatch");
    return add(to_sparse(v));
}

bool FpSubspace::contains(SparseRow v) const {
    reduce(v, nullptr);
    return v.empty();
}

bool FpSubspace::contains_dense(std::span<const fp_t> v) const { return contains(to_sparse(v)); }

std::optional<FpVector> FpSubspace::express(SparseRow v) const {
    SparseRow combo;
    reduce(v, &combo);
    if (!v.empty()) return std::nullopt;
    // v + combo*generators = 0
    FpVector out(generators_, 0);
    for (auto [g, c] : combo) out[g] = field_.neg(c);
    return out;
}

std::optional<FpVector> FpSubspace::express_dense(std::span<const fp_t> v) const {
    if (v.size() != dim_) throw std::invalid_argument("FpSubspace::express_dense dimension mismatch");
    return express(to_sparse(v));
}

// ---------------------------------------------------------------- rank / kernel / solve

namespace {

// Row echelon form without combination tracking.
struct Echelon {
    const PrimeField& F;
    std::vector<SparseRow> rows;
    std::vector<std::int64_t> pivot_of_col;
    SparseRow scratch;

    Echelon(const PrimeField& f, std::size_t cols) : F(f), pivot_of_col(cols, -1) {}

    // Returns the leading column of the inserted row, or -1 if it reduced to zero.
    std::int64_t insert(SparseRow v) {
        while (!v.empty()) {
            auto pr = pivot_of_col[v.front().first];
            if (pr < 0) break;
            axpy(F, v, F.neg(v.front().second), rows[static_cast<std::size_t>(pr)], scratch);
        }
        if (v.empty()) return -1;
        scale(F, v, F.inv(v.front().second));
        auto lead = v.front().first;
        pivot_of_col[lead] = static_cast<std::int64_t>(rows.size());
        rows.push_back(std::move(v));
        return lead;
    }

    // Back substitution: x[c] for pivot columns given the free values already in x.
    // Entries at columns >= x.size() are treated as a right-hand side.
    void back_substitute(FpVector& x) const {
        std::vector<std::uint32_t> order;
        for (std::size_t c = 0; c < pivot_of_col.size(); ++c)
            if (pivot_of_col[c] >= 0 && c < x.size()) order.push_back(static_cast<std::uint32_t>(c));
        for (auto it = order.rbegin(); it != order.rend(); ++it) {
            const auto& row = rows[static_cast<std::size_t>(pivot_of_col[*it])];
            fp_t acc = 0;
            for (auto [c, v] : row) {
                if (c == *it) continue;
                if (c < x.size())
                    acc = F.sub(acc, F.mul(v, x[c]));
                else
                    acc = F.add(acc, v);  // augmented column holds b
            }
            x[*it] = acc;
        }
    }
};

}  // namespace

std::size_t rank(const FpMatrix& m) {
    Echelon e(m.field(), m.cols());
    for (std::size_t r = 0; r < m.rows(); ++r) e.insert(m.row(r));
    return e.rows.size();
}

std::vector<FpVector> kernel_basis(const FpMatrix& m) {
    Echelon e(m.field(), m.cols());
    for (std::size_t r = 0; r < m.rows(); ++r) e.insert(m.row(r));
    std::vector<FpVector> basis;
    for (std::size_t f = 0; f < m.cols(); ++f) {
        if (e.pivot_of_col[f] >= 0) continue;
        FpVector x(m.cols(), 0);
        x[f] = 1;
        e.back_substitute(x);
        basis.push_back(std::move(x));
    }
    return basis;
}

std::optional<FpVector> solve(const FpMatrix& m, std::span<const fp_t> b) {
    if (b.size() != m.rows()) throw std::invalid_argument("solve: right-hand side length != rows");
    const auto aug = static_cast<std::uint32_t>(m.cols());
    Echelon e(m.field(), m.cols() + 1);
    for (std::size_t r = 0; r < m.rows(); ++r) {
        SparseRow row = m.row(r);
        fp_t rhs = b[r] % m.modulus();
        if (rhs) row.emplace_back(aug, rhs);
        if (e.insert(std::move(row)) == aug) return std::nullopt;
    }
    FpVector x(m.cols(), 0);
    e.back_substitute(x);
    return x;
}

}  // namespace masseykit
