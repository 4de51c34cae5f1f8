#include "cohomolab/linalg.hpp"

#include <algorithm>
#include <istream>
#include <map>
#include <ostream>
#include <queue>
#include <set>
#include <sstream>

namespace coho {

std::uint32_t mod_pow(std::uint32_t a, std::uint64_t e, std::uint32_t p)
{
    std::uint64_t r = 1 % p, b = a % p;
    while (e) {
        if (e & 1) r = r * b % p;
        b = b * b % p;
        e >>= 1;
    }
    return static_cast<std::uint32_t>(r);
}

std::uint32_t mod_inv(std::uint32_t a, std::uint32_t p)
{
    std::int64_t t = 0, nt = 1, r = p, nr = a % p;
    while (nr) {
        std::int64_t q = r / nr;
        std::tie(t, nt) = std::make_pair(nt, t - q * nt);
        std::tie(r, nr) = std::make_pair(nr, r - q * nr);
    }
    if (r != 1) throw std::domain_error("mod_inv: not invertible");
    return mod_reduce(t, p);
}

bool is_prime(std::uint64_t n)
{
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

std::int64_t checked_add(std::int64_t a, std::int64_t b)
{
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("int64 overflow in cochain arithmetic");
    return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b)
{
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("int64 overflow in cochain arithmetic");
    return r;
}

// ---------------------------------------------------------------- SparseMatrix

namespace {

bool is_zero(const std::uint32_t& v) { return v == 0; }
bool is_zero(const Integer& v) { return sgn(v) == 0; }

} // namespace

template <class S>
void SparseMatrix<S>::add(std::size_t r, std::size_t c, const S& v)
{
    if (r >= rows_ || c >= cols_) throw DimensionError("SparseMatrix::add: index out of range");
    if constexpr (std::is_same_v<S, std::uint32_t>)
        entries_.push_back({r, c, v % prime_});
    else
        entries_.push_back({r, c, v});
}

template <class S>
void SparseMatrix<S>::finalize()
{
    std::sort(entries_.begin(), entries_.end(), [](const Triple<S>& a, const Triple<S>& b) {
        return a.col != b.col ? a.col < b.col : a.row < b.row;
    });
    std::vector<Triple<S>> out;
    out.reserve(entries_.size());
    for (auto& e : entries_) {
        if (!out.empty() && out.back().row == e.row && out.back().col == e.col) {
            if constexpr (std::is_same_v<S, std::uint32_t>)
                out.back().value = mod_add(out.back().value, e.value, prime_);
            else
                out.back().value += e.value;
        } else {
            out.push_back(std::move(e));
        }
    }
    out.erase(std::remove_if(out.begin(), out.end(), [](const Triple<S>& t) { return is_zero(t.value); }),
              out.end());
    entries_ = std::move(out);
}

template <class S>
SparseMatrix<S> SparseMatrix<S>::transpose() const
{
    SparseMatrix<S> t(cols_, rows_, prime_);
    for (const auto& e : entries_) t.entries_.push_back({e.col, e.row, e.value});
    t.finalize();
    return t;
}

template <class S>
std::string SparseMatrix<S>::domain() const
{
    return prime_ == 0 ? std::string("Z") : "F" + std::to_string(prime_);
}

template class SparseMatrix<std::uint32_t>;
template class SparseMatrix<Integer>;

std::vector<Integer> SmithReport::torsion() const
{
    std::vector<Integer> t;
    for (const auto& d : elementary_divisors)
        if (d > 1) t.push_back(d);
    return t;
}

MatrixFp reduce_mod_p(const MatrixZ& m, std::uint32_t p)
{
    MatrixFp r(m.rows(), m.cols(), p);
    for (const auto& e : m.entries()) {
        Integer v = e.value % p;
        if (v < 0) v += p;
        if (v != 0) r.add(e.row, e.col, static_cast<std::uint32_t>(v.get_ui()));
    }
    r.finalize();
    return r;
}

// ---------------------------------------------------------------- echelon basis

EchelonBasisFp::EchelonBasisFp(std::size_t dim, std::uint32_t p, bool track)
    : dim_(dim), p_(p), track_(track), pivot_of_row_(dim, -1), scratch_(dim, 0)
{
}

void EchelonBasisFp::reduce_dense(std::vector<std::uint32_t>& dense, std::vector<std::uint32_t>& touched,
                                  std::vector<std::uint32_t>* combo_dense,
                                  std::vector<std::uint32_t>* combo_touched) const
{
    std::priority_queue<std::uint32_t, std::vector<std::uint32_t>, std::greater<>> heap(touched.begin(),
                                                                                        touched.end());
    std::uint32_t last = UINT32_MAX;
    while (!heap.empty()) {
        std::uint32_t i = heap.top();
        heap.pop();
        if (i == last) continue;
        last = i;
        std::uint32_t f = dense[i];
        if (f == 0) continue;
        int k = pivot_of_row_[i];
        if (k < 0) continue;
        std::uint32_t nf = p_ - f;
        for (const auto& [j, v] : pivots_[k]) {
            if (dense[j] == 0) {
                touched.push_back(j);
                if (j != i) heap.push(j);
            }
            dense[j] = mod_add(dense[j], mod_mul(nf, v, p_), p_);
        }
        if (combo_dense) {
            for (const auto& [j, v] : combos_[k]) {
                if ((*combo_dense)[j] == 0) combo_touched->push_back(j);
                (*combo_dense)[j] = mod_add((*combo_dense)[j], mod_mul(f, v, p_), p_);
            }
        }
    }
}

EchelonBasisFp::SparseVec EchelonBasisFp::reduce(const SparseVec& v, SparseVec* combo) const
{
    std::vector<std::uint32_t> touched;
    for (const auto& [i, x] : v) {
        if (i >= dim_) throw DimensionError("EchelonBasisFp: index out of range");
        if (x % p_ == 0) continue;
        if (scratch_[i] == 0) touched.push_back(i);
        scratch_[i] = mod_add(scratch_[i], x % p_, p_);
    }
    std::vector<std::uint32_t> ctouched;
    if (combo && combo_scratch_.size() < inserted_ + 1) combo_scratch_.resize(inserted_ + 1, 0);
    reduce_dense(scratch_, touched, combo ? &combo_scratch_ : nullptr, &ctouched);
    SparseVec out;
    std::sort(touched.begin(), touched.end());
    touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
    for (auto i : touched) {
        if (scratch_[i]) out.emplace_back(i, scratch_[i]);
        scratch_[i] = 0;
    }
    if (combo) {
        combo->clear();
        std::sort(ctouched.begin(), ctouched.end());
        ctouched.erase(std::unique(ctouched.begin(), ctouched.end()), ctouched.end());
        for (auto j : ctouched) {
            if (combo_scratch_[j]) combo->emplace_back(j, combo_scratch_[j]);
            combo_scratch_[j] = 0;
        }
    }
    return out;
}

bool EchelonBasisFp::insert(const SparseVec& v)
{
    std::uint32_t id = static_cast<std::uint32_t>(inserted_++);
    SparseVec combo;
    SparseVec r = reduce(v, track_ ? &combo : nullptr);
    if (r.empty()) return false;
    std::uint32_t inv = mod_inv(r.front().second, p_);
    for (auto& [i, x] : r) x = mod_mul(x, inv, p_);
    pivot_of_row_[r.front().first] = static_cast<int>(pivots_.size());
    pivots_.push_back(std::move(r));
    if (track_) {
        // new pivot = (v - sum combo) * inv, expressed in inserted ids
        SparseVec c;
        for (auto& [j, x] : combo) c.emplace_back(j, mod_mul(p_ - x, inv, p_));
        c.emplace_back(id, inv);
        combos_.push_back(std::move(c));
    } else {
        combos_.emplace_back();
    }
    ++count_;
    return true;
}

// ---------------------------------------------------------------- F_p operations

namespace {

std::vector<EchelonBasisFp::SparseVec> columns_of(const MatrixFp& m)
{
    std::vector<EchelonBasisFp::SparseVec> cols(m.cols());
    for (const auto& e : m.entries())
        cols[e.col].emplace_back(static_cast<std::uint32_t>(e.row), e.value);
    return cols;
}

} // namespace

std::size_t rank_mod_p(const MatrixFp& m)
{
    if (m.prime() == 0) throw std::invalid_argument("rank_mod_p: matrix is not over F_p");
    EchelonBasisFp basis(m.rows(), m.prime());
    auto cols = columns_of(m);
    for (const auto& c : cols)
        if (!c.empty()) basis.insert(c);
    return basis.rank();
}

std::optional<std::vector<std::uint32_t>> solve(const MatrixFp& m, const std::vector<std::uint32_t>& b)
{
    if (b.size() != m.rows()) throw DimensionError("solve: rhs length mismatch");
    std::uint32_t p = m.prime();
    EchelonBasisFp basis(m.rows(), p, true);
    auto cols = columns_of(m);
    // ids are insertion order; keep the map to column indices
    for (const auto& c : cols) basis.insert(c);
    EchelonBasisFp::SparseVec rhs;
    for (std::size_t i = 0; i < b.size(); ++i)
        if (b[i] % p) rhs.emplace_back(static_cast<std::uint32_t>(i), b[i] % p);
    EchelonBasisFp::SparseVec combo;
    auto r = basis.reduce(rhs, &combo);
    if (!r.empty()) return std::nullopt;
    std::vector<std::uint32_t> x(m.cols(), 0);
    for (const auto& [j, v] : combo) x[j] = v;
    return x;
}

std::vector<std::vector<std::uint32_t>> kernel_mod_p(const MatrixFp& m)
{
    std::uint32_t p = m.prime();
    EchelonBasisFp basis(m.rows(), p, true);
    auto cols = columns_of(m);
    std::vector<std::vector<std::uint32_t>> ker;
    for (std::size_t j = 0; j < cols.size(); ++j) {
        EchelonBasisFp::SparseVec combo;
        auto r = basis.reduce(cols[j], &combo);
        if (r.empty()) {
            std::vector<std::uint32_t> k(m.cols(), 0);
            for (const auto& [i, v] : combo) k[i] = mod_sub(k[i], v, p);
            k[j] = mod_add(k[j], 1, p);
            ker.push_back(std::move(k));
        }
        basis.insert(cols[j]);
    }
    return ker;
}

// ---------------------------------------------------------------- dense F_p

std::vector<std::size_t> rref(DenseFp& m)
{
    std::vector<std::size_t> piv;
    std::size_t r = 0;
    const std::uint32_t p = m.p;
    for (std::size_t c = 0; c < m.cols && r < m.rows; ++c) {
        std::size_t s = r;
        while (s < m.rows && m.at(s, c) == 0) ++s;
        if (s == m.rows) continue;
        if (s != r)
            for (std::size_t j = 0; j < m.cols; ++j) std::swap(m.at(s, j), m.at(r, j));
        std::uint32_t inv = mod_inv(m.at(r, c), p);
        for (std::size_t j = c; j < m.cols; ++j) m.at(r, j) = mod_mul(m.at(r, j), inv, p);
        for (std::size_t i = 0; i < m.rows; ++i) {
            if (i == r || m.at(i, c) == 0) continue;
            std::uint32_t f = p - m.at(i, c);
            for (std::size_t j = c; j < m.cols; ++j)
                if (m.at(r, j)) m.at(i, j) = mod_add(m.at(i, j), mod_mul(f, m.at(r, j), p), p);
        }
        piv.push_back(c);
        ++r;
    }
    return piv;
}

std::size_t rank(DenseFp m) { return rref(m).size(); }

std::vector<std::vector<std::uint32_t>> kernel(const DenseFp& m0)
{
    DenseFp m = m0;
    auto piv = rref(m);
    std::vector<bool> is_piv(m.cols, false);
    for (auto c : piv) is_piv[c] = true;
    std::vector<std::vector<std::uint32_t>> ker;
    for (std::size_t f = 0; f < m.cols; ++f) {
        if (is_piv[f]) continue;
        std::vector<std::uint32_t> v(m.cols, 0);
        v[f] = 1;
        for (std::size_t i = 0; i < piv.size(); ++i)
            if (m.at(i, f)) v[piv[i]] = m.p - m.at(i, f);
        ker.push_back(std::move(v));
    }
    return ker;
}

// ---------------------------------------------------------------- integer SNF

namespace {

using Row = std::map<std::size_t, Integer>;

// Dense Smith form of a small matrix; returns nonzero diagonal (absolute values).
std::vector<Integer> dense_smith(std::vector<std::vector<Integer>> a)
{
    std::size_t R = a.size(), C = R ? a[0].size() : 0;
    std::vector<Integer> diag;
    std::size_t t = 0;
    while (t < R && t < C) {
        // pivot of minimal absolute value
        std::size_t pr = R, pc = C;
        for (std::size_t i = t; i < R; ++i)
            for (std::size_t j = t; j < C; ++j)
                if (sgn(a[i][j]) && (pr == R || abs(a[i][j]) < abs(a[pr][pc]))) pr = i, pc = j;
        if (pr == R) break;
        std::swap(a[t], a[pr]);
        for (auto& row : a) std::swap(row[t], row[pc]);
        for (;;) {
            bool dirty = false;
            for (std::size_t i = t + 1; i < R; ++i) {
                if (!sgn(a[i][t])) continue;
                Integer q;
                mpz_fdiv_q(q.get_mpz_t(), a[i][t].get_mpz_t(), a[t][t].get_mpz_t());
                for (std::size_t j = t; j < C; ++j) a[i][j] -= q * a[t][j];
                if (sgn(a[i][t])) {
                    std::swap(a[i], a[t]);
                    dirty = true;
                }
            }
            for (std::size_t j = t + 1; j < C; ++j) {
                if (!sgn(a[t][j])) continue;
                Integer q;
                mpz_fdiv_q(q.get_mpz_t(), a[t][j].get_mpz_t(), a[t][t].get_mpz_t());
                for (std::size_t i = t; i < R; ++i) a[i][j] -= q * a[i][t];
                if (sgn(a[t][j])) {
                    for (auto& row : a) std::swap(row[t], row[j]);
                    dirty = true;
                }
            }
            if (dirty) continue;
            // divisibility of the rest
            bool fixed = true;
            for (std::size_t i = t + 1; i < R && fixed; ++i)
                for (std::size_t j = t + 1; j < C; ++j)
                    if (sgn(a[i][j]) && a[i][j] % a[t][t] != 0) {
                        for (std::size_t k = t; k < C; ++k) a[t][k] += a[i][k];
                        fixed = false;
                        break;
                    }
            if (fixed) break;
        }
        diag.push_back(abs(a[t][t]));
        ++t;
    }
    return diag;
}

} // namespace

SmithReport smith_normal_form(const MatrixZ& m)
{
    // Sparse elimination of unit pivots, then dense Smith form of the remainder.
    std::vector<Row> rows(m.rows());
    std::vector<std::set<std::size_t>> colrows(m.cols());
    for (const auto& e : m.entries()) {
        if (sgn(e.value) == 0) continue;
        rows[e.row][e.col] += e.value;
        colrows[e.col].insert(e.row);
    }
    std::vector<bool> row_alive(m.rows(), true), col_alive(m.cols(), true);
    std::size_t units = 0;

    bool progress = true;
    while (progress) {
        progress = false;
        std::vector<std::size_t> order;
        for (std::size_t c = 0; c < m.cols(); ++c)
            if (col_alive[c] && !colrows[c].empty()) order.push_back(c);
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return colrows[a].size() < colrows[b].size(); });
        for (std::size_t c : order) {
            if (!col_alive[c] || colrows[c].empty()) continue;
            std::size_t best = SIZE_MAX, best_len = SIZE_MAX;
            for (std::size_t r : colrows[c]) {
                const Integer& v = rows[r].at(c);
                if ((v == 1 || v == -1) && rows[r].size() < best_len) best = r, best_len = rows[r].size();
            }
            if (best == SIZE_MAX) continue;
            const Row pivot = rows[best];
            const Integer pv = pivot.at(c);
            std::vector<std::size_t> targets(colrows[c].begin(), colrows[c].end());
            for (std::size_t r : targets) {
                if (r == best) continue;
                Integer f = rows[r].at(c) * pv; // pv = ±1 so division is multiplication
                for (const auto& [j, v] : pivot) {
                    auto it = rows[r].find(j);
                    if (it == rows[r].end()) {
                        rows[r].emplace(j, -f * v);
                        colrows[j].insert(r);
                    } else {
                        it->second -= f * v;
                        if (sgn(it->second) == 0) {
                            rows[r].erase(it);
                            colrows[j].erase(r);
                        }
                    }
                }
            }
            for (const auto& [j, v] : pivot) colrows[j].erase(best);
            rows[best].clear();
            row_alive[best] = false;
            col_alive[c] = false;
            ++units;
            progress = true;
        }
    }

    std::vector<std::size_t> rr, cc;
    std::map<std::size_t, std::size_t> cidx;
    for (std::size_t r = 0; r < m.rows(); ++r)
        if (row_alive[r] && !rows[r].empty()) rr.push_back(r);
    for (std::size_t c = 0; c < m.cols(); ++c)
        if (col_alive[c] && !colrows[c].empty()) cidx[c] = cc.size(), cc.push_back(c);
    std::vector<std::vector<Integer>> dense(rr.size(), std::vector<Integer>(cc.size(), 0));
    for (std::size_t i = 0; i < rr.size(); ++i)
        for (const auto& [j, v] : rows[rr[i]]) dense[i][cidx.at(j)] = v;
    auto rest = dense_smith(std::move(dense));

    SmithReport rep;
    for (std::size_t i = 0; i < units; ++i) rep.elementary_divisors.emplace_back(1);
    // dense_smith yields a divisibility chain already; units go first.
    for (auto& d : rest) rep.elementary_divisors.push_back(d);
    std::stable_sort(rep.elementary_divisors.begin(), rep.elementary_divisors.end());
    rep.rank = rep.elementary_divisors.size();
    return rep;
}

// Integer solve through Smith form with transforms.
std::optional<std::vector<Integer>> solve(const MatrixZ& m, const std::vector<Integer>& b)
{
    if (b.size() != m.rows()) throw DimensionError("solve: rhs length mismatch");
    std::size_t R = m.rows(), C = m.cols();
    std::vector<std::vector<Integer>> a(R, std::vector<Integer>(C, 0));
    for (const auto& e : m.entries()) a[e.row][e.col] += e.value;
    std::vector<Integer> y = b;                              // y = U b
    std::vector<std::vector<Integer>> V(C, std::vector<Integer>(C, 0)); // x = V z
    for (std::size_t i = 0; i < C; ++i) V[i][i] = 1;

    auto swap_rows = [&](std::size_t i, std::size_t j) {
        std::swap(a[i], a[j]);
        std::swap(y[i], y[j]);
    };
    auto swap_cols = [&](std::size_t i, std::size_t j) {
        for (auto& row : a) std::swap(row[i], row[j]);
        for (auto& row : V) std::swap(row[i], row[j]);
    };
    std::size_t t = 0;
    while (t < R && t < C) {
        std::size_t pr = R, pc = C;
        for (std::size_t i = t; i < R; ++i)
            for (std::size_t j = t; j < C; ++j)
                if (sgn(a[i][j]) && (pr == R || abs(a[i][j]) < abs(a[pr][pc]))) {
                    pr = i, pc = j;
                    if (abs(a[i][j]) == 1) break;
                }
        if (pr == R) break;
        swap_rows(t, pr);
        swap_cols(t, pc);
        for (;;) {
            bool dirty = false;
            for (std::size_t i = t + 1; i < R; ++i) {
                if (!sgn(a[i][t])) continue;
                Integer q;
                mpz_fdiv_q(q.get_mpz_t(), a[i][t].get_mpz_t(), a[t][t].get_mpz_t());
                for (std::size_t j = t; j < C; ++j)
                    if (sgn(a[t][j])) a[i][j] -= q * a[t][j];
                y[i] -= q * y[t];
                if (sgn(a[i][t])) {
                    swap_rows(i, t);
                    dirty = true;
                }
            }
            for (std::size_t j = t + 1; j < C; ++j) {
                if (!sgn(a[t][j])) continue;
                Integer q;
                mpz_fdiv_q(q.get_mpz_t(), a[t][j].get_mpz_t(), a[t][t].get_mpz_t());
                for (std::size_t i = t; i < R; ++i)
                    if (sgn(a[i][t])) a[i][j] -= q * a[i][t];
                for (std::size_t i = 0; i < C; ++i)
                    if (sgn(V[i][t])) V[i][j] -= q * V[i][t];
                if (sgn(a[t][j])) {
                    swap_cols(j, t);
                    dirty = true;
                }
            }
            if (!dirty) break;
        }
        ++t;
    }
    // a is now diagonal in the first t positions (divisibility not needed for solving)
    std::vector<Integer> z(C, 0);
    for (std::size_t i = 0; i < R; ++i) {
        if (i < t) {
            if (y[i] % a[i][i] != 0) return std::nullopt;
            z[i] = y[i] / a[i][i];
        } else if (sgn(y[i])) {
            return std::nullopt;
        }
    }
    std::vector<Integer> x(C, 0);
    for (std::size_t i = 0; i < C; ++i)
        for (std::size_t j = 0; j < t; ++j)
            if (sgn(V[i][j]) && sgn(z[j])) x[i] += V[i][j] * z[j];
    return x;
}

// ---------------------------------------------------------------- text format

void write_coordinate(std::ostream& os, const MatrixZ& m)
{
    os << m.rows() << ' ' << m.cols() << ' ' << m.nnz() << ' ' << m.domain() << '\n';
    for (const auto& e : m.entries()) os << e.row << ' ' << e.col << ' ' << e.value << '\n';
}

void write_coordinate(std::ostream& os, const MatrixFp& m)
{
    os << m.rows() << ' ' << m.cols() << ' ' << m.nnz() << ' ' << m.domain() << '\n';
    for (const auto& e : m.entries()) os << e.row << ' ' << e.col << ' ' << e.value << '\n';
}

MatrixZ read_coordinate_z(std::istream& is)
{
    std::size_t r, c, n;
    std::string dom;
    if (!(is >> r >> c >> n >> dom) || dom != "Z") throw std::runtime_error("bad coordinate header");
    MatrixZ m(r, c, 0);
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t i, j;
        std::string v;
        if (!(is >> i >> j >> v)) throw std::runtime_error("truncated coordinate file");
        m.add(i, j, Integer(v));
    }
    m.finalize();
    return m;
}

} // namespace coho
