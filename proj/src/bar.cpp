#include "cohomolab/bar.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace coho {

Limits Limits::from_env()
{
    Limits l;
    if (const char* c = std::getenv("COHOMOLAB_CACHE")) l.cache_dir = c;
    return l;
}

namespace {

std::size_t ipow_size(std::size_t b, unsigned e)
{
    std::size_t r = 1;
    for (unsigned i = 0; i < e; ++i) {
        if (b != 0 && r > static_cast<std::size_t>(-1) / b) throw ResourceLimit("cell count overflows");
        r *= b;
    }
    return r;
}

std::int64_t norm_value(std::int64_t v, std::uint32_t mod)
{
    return mod ? static_cast<std::int64_t>(mod_reduce(v, mod)) : v;
}

// Evaluates f on the bar tuple spanned by the given vertices of the simplex
// whose prefix products are P (P[0] = 1).
std::int64_t eval_face(const Cochain& f, const std::vector<Elem>& P, const std::vector<unsigned>& verts,
                       std::vector<Elem>& scratch)
{
    const auto& g = *f.group();
    scratch.resize(verts.size() - 1);
    for (std::size_t j = 1; j < verts.size(); ++j) {
        Elem e = g.mul(g.inv(P[verts[j - 1]]), P[verts[j]]);
        if (e == 0) return 0;
        scratch[j - 1] = e;
    }
    return f.at(scratch);
}

void prefix_products(const FiniteGroup& g, const std::vector<Elem>& t, std::vector<Elem>& P)
{
    P.assign(t.size() + 1, 0);
    for (std::size_t i = 0; i < t.size(); ++i) P[i + 1] = g.mul(P[i], t[i]);
}

} // namespace

// ---------------------------------------------------------------- Cochain

Cochain::Cochain(GroupPtr g, unsigned degree, std::uint32_t modulus) : g_(std::move(g)), deg_(degree), mod_(modulus)
{
    if (!g_) throw std::invalid_argument("cochain needs a group");
    if (modulus == 1) throw std::invalid_argument("modulus must be 0 or a prime");
    v_.assign(cell_count(*g_, degree), 0);
}

std::size_t cell_count(const FiniteGroup& g, unsigned n) { return ipow_size(g.order() - 1, n); }

std::size_t Cochain::index(const std::vector<Elem>& t) const
{
    if (t.size() != deg_) throw DimensionError("tuple length does not match cochain degree");
    const std::size_t b = g_->order() - 1;
    std::size_t idx = 0;
    for (Elem e : t) {
        if (e == 0 || e >= g_->order()) throw std::out_of_range("tuple entry is identity or out of range");
        idx = idx * b + (e - 1);
    }
    return idx;
}

std::vector<Elem> Cochain::tuple(std::size_t idx) const
{
    const std::size_t b = g_->order() - 1;
    std::vector<Elem> t(deg_);
    for (unsigned i = deg_; i-- > 0;) {
        t[i] = static_cast<Elem>(idx % b + 1);
        idx /= b;
    }
    return t;
}

std::int64_t Cochain::at(const std::vector<Elem>& t) const
{
    for (Elem e : t)
        if (e == 0) return 0;
    return v_[index(t)];
}

void Cochain::set(const std::vector<Elem>& t, std::int64_t v) { v_[index(t)] = norm_value(v, mod_); }

bool Cochain::is_zero() const
{
    for (auto x : v_)
        if (norm_value(x, mod_) != 0) return false;
    return true;
}

void Cochain::normalize()
{
    if (mod_)
        for (auto& x : v_) x = norm_value(x, mod_);
}

Cochain Cochain::reduced(std::uint32_t p) const
{
    if (mod_ != 0 && mod_ != p) throw std::invalid_argument("cannot reduce between different primes");
    Cochain r(g_, deg_, p);
    for (std::size_t i = 0; i < v_.size(); ++i) r.v_[i] = norm_value(v_[i], p);
    return r;
}

void Cochain::check_compatible(const Cochain& o) const
{
    if (g_ != o.g_ && g_->hash() != o.g_->hash()) throw std::invalid_argument("cochains on different groups");
    if (deg_ != o.deg_) throw DimensionError("cochain degrees differ");
    if (mod_ != o.mod_) throw std::invalid_argument("cochain coefficient rings differ");
}

Cochain& Cochain::operator+=(const Cochain& o)
{
    check_compatible(o);
    for (std::size_t i = 0; i < v_.size(); ++i)
        v_[i] = mod_ ? norm_value(v_[i] + o.v_[i], mod_) : checked_add(v_[i], o.v_[i]);
    return *this;
}

Cochain& Cochain::operator-=(const Cochain& o)
{
    check_compatible(o);
    for (std::size_t i = 0; i < v_.size(); ++i)
        v_[i] = mod_ ? norm_value(v_[i] - o.v_[i], mod_) : checked_add(v_[i], -o.v_[i]);
    return *this;
}

Cochain& Cochain::operator*=(std::int64_t s)
{
    if (mod_) {
        std::uint32_t sm = mod_reduce(s, mod_);
        for (auto& x : v_) x = mod_mul(static_cast<std::uint32_t>(norm_value(x, mod_)), sm, mod_);
    } else {
        for (auto& x : v_) x = checked_mul(x, s);
    }
    return *this;
}

bool Cochain::operator==(const Cochain& o) const
{
    check_compatible(o);
    for (std::size_t i = 0; i < v_.size(); ++i)
        if (norm_value(v_[i] - o.v_[i], mod_) != 0) return false;
    return true;
}

Cochain Cochain::random(GroupPtr g, unsigned degree, std::uint32_t modulus, std::mt19937_64& rng,
                        std::int64_t range)
{
    Cochain c(std::move(g), degree, modulus);
    if (modulus && range == 0) {
        std::uniform_int_distribution<std::uint32_t> d(0, modulus - 1);
        for (auto& x : c.v_) x = d(rng);
    } else {
        std::int64_t r = range ? range : 3;
        std::uniform_int_distribution<std::int64_t> d(-r, r);
        for (auto& x : c.v_) x = norm_value(d(rng), modulus);
    }
    return c;
}

Cochain Cochain::from_function(GroupPtr g, unsigned degree, std::uint32_t modulus,
                               const std::function<std::int64_t(const std::vector<Elem>&)>& f)
{
    Cochain c(std::move(g), degree, modulus);
    for (std::size_t i = 0; i < c.size(); ++i) c.v_[i] = norm_value(f(c.tuple(i)), modulus);
    return c;
}

// ---------------------------------------------------------------- products

Cochain coboundary(const Cochain& c)
{
    const auto& g = *c.group();
    const unsigned n = c.degree();
    const std::uint32_t mod = c.modulus();
    Cochain r(c.group(), n + 1, mod);
    std::vector<Elem> t, s(n);
    for (std::size_t idx = 0; idx < r.size(); ++idx) {
        t = r.tuple(idx);
        std::int64_t acc = 0;
        auto add = [&](std::int64_t v, bool neg) {
            acc = mod ? acc + (neg ? -v : v) : checked_add(acc, neg ? -v : v);
            if (mod) acc = norm_value(acc, mod);
        };
        std::copy(t.begin() + 1, t.end(), s.begin());
        add(c.at(s), false);
        for (unsigned i = 1; i <= n; ++i) {
            Elem m = g.mul(t[i - 1], t[i]);
            if (m == 0) continue;
            for (unsigned j = 0, k = 0; j <= n; ++j) {
                if (j == i) continue;
                s[k++] = (j == i - 1) ? m : t[j];
            }
            add(c.at(s), i % 2 == 1);
        }
        std::copy(t.begin(), t.end() - 1, s.begin());
        add(c.at(s), (n + 1) % 2 == 1);
        r[idx] = acc;
    }
    return r;
}

bool is_cocycle(const Cochain& c) { return coboundary(c).is_zero(); }

Cochain cup(const Cochain& u, const Cochain& v)
{
    if (u.group() != v.group() && u.group()->hash() != v.group()->hash())
        throw std::invalid_argument("cup: cochains on different groups");
    if (u.modulus() != v.modulus()) throw std::invalid_argument("cup: coefficient rings differ");
    const std::uint32_t mod = u.modulus();
    Cochain r(u.group(), u.degree() + v.degree(), mod);
    const std::size_t vs = v.size();
    for (std::size_t i = 0; i < u.size(); ++i) {
        std::int64_t a = u[i];
        if (a == 0) continue;
        for (std::size_t j = 0; j < vs; ++j) {
            std::int64_t b = v[j];
            if (b == 0) continue;
            r[i * vs + j] = mod ? static_cast<std::int64_t>(mod_mul(static_cast<std::uint32_t>(norm_value(a, mod)),
                                                                     static_cast<std::uint32_t>(norm_value(b, mod)), mod))
                                : checked_mul(a, b);
        }
    }
    return r;
}

// Steenrod's cup-1 on the simplex spanned by a bar tuple: for deg u = p, deg v = q,
// (u ⌣₁ v)(0..N) = Σ_{i=0}^{p-1} s(i) u(0..i, i+q..N) v(i..i+q), N = p+q-1.
Cochain cup1(const Cochain& u, const Cochain& v)
{
    if (u.group() != v.group() && u.group()->hash() != v.group()->hash())
        throw std::invalid_argument("cup1: cochains on different groups");
    if (u.modulus() != v.modulus()) throw std::invalid_argument("cup1: coefficient rings differ");
    const unsigned p = u.degree(), q = v.degree();
    const std::uint32_t mod = u.modulus();
    if (p == 0 || q == 0) return Cochain(u.group(), p + q == 0 ? 0 : p + q - 1, mod);
    const unsigned N = p + q - 1;
    Cochain r(u.group(), N, mod);
    const auto& g = *u.group();
    std::vector<Elem> P, su, sv;
    std::vector<unsigned> vu, vv;
    for (std::size_t idx = 0; idx < r.size(); ++idx) {
        prefix_products(g, r.tuple(idx), P);
        std::int64_t acc = 0;
        for (unsigned i = 0; i < p; ++i) {
            vu.clear();
            for (unsigned a = 0; a <= i; ++a) vu.push_back(a);
            for (unsigned a = i + q; a <= N; ++a) vu.push_back(a);
            vv.clear();
            for (unsigned a = i; a <= i + q; ++a) vv.push_back(a);
            std::int64_t x = eval_face(u, P, vu, su);
            if (x == 0) continue;
            std::int64_t y = eval_face(v, P, vv, sv);
            if (y == 0) continue;
            std::int64_t term = mod ? norm_value(static_cast<std::int64_t>(
                                                     mod_mul(static_cast<std::uint32_t>(x), static_cast<std::uint32_t>(y), mod)),
                                                 mod)
                                    : checked_mul(x, y);
            // sign (-1)^{(p-i)(q+1)} times the global sign (-1)^{p+q+1}
            bool neg = (((p - i) * (q + 1)) + p + q + 1) % 2 == 1;
            acc = mod ? norm_value(acc + (neg ? -term : term), mod) : checked_add(acc, neg ? -term : term);
        }
        r[idx] = acc;
    }
    return r;
}

Cochain bockstein_integral(const Cochain& u)
{
    const std::uint32_t p = u.modulus();
    if (p == 0) throw std::invalid_argument("bockstein needs F_p coefficients");
    if (!is_cocycle(u)) throw std::invalid_argument("bockstein of a non-cocycle");
    Cochain lift(u.group(), u.degree(), 0);
    for (std::size_t i = 0; i < u.size(); ++i) lift[i] = norm_value(u[i], p);
    Cochain d = coboundary(lift);
    for (std::size_t i = 0; i < d.size(); ++i) {
        if (d[i] % static_cast<std::int64_t>(p) != 0) throw std::logic_error("lift coboundary not divisible by p");
        d[i] /= static_cast<std::int64_t>(p);
    }
    return d;
}

Cochain bockstein(const Cochain& u) { return bockstein_integral(u).reduced(u.modulus()); }

// ---------------------------------------------------------------- coboundary matrices and classes

namespace {

template <class Add>
void coboundary_entries(const FiniteGroup& g, unsigned n, Add&& add)
{
    // row: (n+1)-cell, col: n-cell, coefficient of f(col) in (δf)(row)
    const std::size_t b = g.order() - 1;
    const std::size_t rows = ipow_size(b, n + 1);
    std::vector<Elem> t(n + 1), s(n);
    auto index_of = [&](const std::vector<Elem>& x) {
        std::size_t idx = 0;
        for (Elem e : x) idx = idx * b + (e - 1);
        return idx;
    };
    for (std::size_t row = 0; row < rows; ++row) {
        std::size_t x = row;
        for (unsigned i = n + 1; i-- > 0;) {
            t[i] = static_cast<Elem>(x % b + 1);
            x /= b;
        }
        std::copy(t.begin() + 1, t.end(), s.begin());
        add(row, index_of(s), 1);
        for (unsigned i = 1; i <= n; ++i) {
            Elem m = g.mul(t[i - 1], t[i]);
            if (m == 0) continue;
            for (unsigned j = 0, k = 0; j <= n; ++j) {
                if (j == i) continue;
                s[k++] = (j == i - 1) ? m : t[j];
            }
            add(row, index_of(s), i % 2 ? -1 : 1);
        }
        std::copy(t.begin(), t.end() - 1, s.begin());
        add(row, index_of(s), (n + 1) % 2 ? -1 : 1);
    }
}

EchelonBasisFp::SparseVec to_sparse(const Cochain& c)
{
    EchelonBasisFp::SparseVec v;
    for (std::size_t i = 0; i < c.size(); ++i) {
        std::int64_t x = norm_value(c[i], c.modulus());
        if (x) v.emplace_back(static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(x));
    }
    return v;
}

} // namespace

MatrixFp coboundary_matrix_fp(const GroupPtr& g, unsigned n, std::uint32_t p)
{
    MatrixFp m(cell_count(*g, n + 1), cell_count(*g, n), p);
    coboundary_entries(*g, n, [&](std::size_t r, std::size_t c, int v) { m.add(r, c, mod_reduce(v, p)); });
    m.finalize();
    return m;
}

MatrixZ coboundary_matrix_z(const GroupPtr& g, unsigned n)
{
    MatrixZ m(cell_count(*g, n + 1), cell_count(*g, n), 0);
    coboundary_entries(*g, n, [&](std::size_t r, std::size_t c, int v) { m.add(r, c, Integer(v)); });
    m.finalize();
    return m;
}

std::optional<Cochain> coboundary_preimage(const Cochain& c)
{
    if (c.degree() == 0) {
        if (c.is_zero()) return Cochain(c.group(), 0, c.modulus());
        return std::nullopt;
    }
    const unsigned n = c.degree() - 1;
    Cochain x(c.group(), n, c.modulus());
    if (c.modulus()) {
        const std::uint32_t p = c.modulus();
        std::vector<std::uint32_t> b(c.size());
        for (std::size_t i = 0; i < c.size(); ++i) b[i] = static_cast<std::uint32_t>(norm_value(c[i], p));
        auto sol = solve(coboundary_matrix_fp(c.group(), n, p), b);
        if (!sol) return std::nullopt;
        for (std::size_t i = 0; i < x.size(); ++i) x[i] = (*sol)[i];
    } else {
        std::vector<Integer> b(c.size());
        for (std::size_t i = 0; i < c.size(); ++i) b[i] = Integer(static_cast<long>(c[i]));
        auto sol = solve(coboundary_matrix_z(c.group(), n), b);
        if (!sol) return std::nullopt;
        for (std::size_t i = 0; i < x.size(); ++i) {
            if (!(*sol)[i].fits_slong_p()) throw std::overflow_error("coboundary preimage exceeds int64");
            x[i] = (*sol)[i].get_si();
        }
    }
    return x;
}

bool class_equal(const Cochain& u, const Cochain& v) { return coboundary_preimage(u - v).has_value(); }

bool class_equal_modulo(const Cochain& u, const Cochain& v, const std::vector<Cochain>& extra)
{
    Cochain d = u - v;
    if (extra.empty()) return coboundary_preimage(d).has_value();
    const unsigned n = d.degree();
    const std::uint32_t p = d.modulus();
    const std::size_t base = n == 0 ? 0 : cell_count(*d.group(), n - 1);
    if (p) {
        MatrixFp m(d.size(), base + extra.size(), p);
        if (n > 0)
            coboundary_entries(*d.group(), n - 1,
                               [&](std::size_t r, std::size_t c, int v) { m.add(r, c, mod_reduce(v, p)); });
        for (std::size_t k = 0; k < extra.size(); ++k)
            for (std::size_t i = 0; i < extra[k].size(); ++i)
                if (extra[k][i]) m.add(i, base + k, static_cast<std::uint32_t>(norm_value(extra[k][i], p)));
        m.finalize();
        std::vector<std::uint32_t> b(d.size());
        for (std::size_t i = 0; i < d.size(); ++i) b[i] = static_cast<std::uint32_t>(norm_value(d[i], p));
        return solve(m, b).has_value();
    }
    MatrixZ m(d.size(), base + extra.size(), 0);
    if (n > 0)
        coboundary_entries(*d.group(), n - 1, [&](std::size_t r, std::size_t c, int v) { m.add(r, c, Integer(v)); });
    for (std::size_t k = 0; k < extra.size(); ++k)
        for (std::size_t i = 0; i < extra[k].size(); ++i)
            if (extra[k][i]) m.add(i, base + k, Integer(static_cast<long>(extra[k][i])));
    m.finalize();
    std::vector<Integer> b(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) b[i] = Integer(static_cast<long>(d[i]));
    return solve(m, b).has_value();
}

std::vector<Cochain> cohomology_basis(const GroupPtr& g, unsigned n, std::uint32_t p)
{
    if (!is_prime(p)) throw std::invalid_argument("cohomology_basis needs a prime");
    if (n == 0) {
        Cochain one(g, 0, p);
        one[0] = 1;
        return {one};
    }
    const std::size_t dim = cell_count(*g, n);
    EchelonBasisFp ech(dim, p);
    // coboundaries first
    {
        MatrixFp d = coboundary_matrix_fp(g, n - 1, p);
        std::vector<EchelonBasisFp::SparseVec> cols(d.cols());
        for (const auto& e : d.entries()) cols[e.col].emplace_back(static_cast<std::uint32_t>(e.row), e.value);
        for (auto& c : cols) {
            std::sort(c.begin(), c.end());
            ech.insert(c);
        }
    }
    std::vector<Cochain> out;
    for (const auto& k : kernel_mod_p(coboundary_matrix_fp(g, n, p))) {
        Cochain c(g, n, p);
        for (std::size_t i = 0; i < dim; ++i) c[i] = k[i];
        if (ech.insert(to_sparse(c))) out.push_back(std::move(c));
    }
    return out;
}

// ---------------------------------------------------------------- Massey products

namespace {

Cochain random_cocycle(const GroupPtr& g, unsigned n, std::uint32_t p, std::mt19937_64& rng)
{
    Cochain z(g, n, p);
    std::uniform_int_distribution<std::uint32_t> d(0, p - 1);
    for (const auto& b : cohomology_basis(g, n, p)) z += static_cast<std::int64_t>(d(rng)) * b;
    if (n > 0) z += coboundary(Cochain::random(g, n - 1, p, rng));
    return z;
}

Cochain witness(const Cochain& target, const char* what)
{
    auto a = coboundary_preimage(target);
    if (!a) throw MasseyHypothesisError(std::string("Massey hypothesis fails: ") + what + " is not a coboundary");
    return *a;
}

void require_fp_cocycle(const Cochain& c)
{
    if (c.modulus() == 0) throw std::invalid_argument("Massey products are computed over F_p");
    if (!is_cocycle(c)) throw MasseyHypothesisError("Massey product of a non-cocycle");
}

} // namespace

MasseyResult massey(const Cochain& u, const Cochain& v, const Cochain& w, std::uint64_t witness_seed)
{
    return matrix_massey({u}, {{v}}, {w}, witness_seed);
}

MasseyResult matrix_massey(const std::vector<Cochain>& U, const std::vector<std::vector<Cochain>>& V,
                           const std::vector<Cochain>& W, std::uint64_t witness_seed)
{
    const std::size_t r = U.size(), s = W.size();
    if (r == 0 || s == 0 || V.size() != r) throw DimensionError("matrix Massey: shape mismatch");
    for (const auto& row : V)
        if (row.size() != s) throw DimensionError("matrix Massey: shape mismatch");
    for (const auto& c : U) require_fp_cocycle(c);
    for (const auto& c : W) require_fp_cocycle(c);
    for (const auto& row : V)
        for (const auto& c : row) require_fp_cocycle(c);
    const auto& g = U[0].group();
    const std::uint32_t p = U[0].modulus();
    const unsigned du = U[0].degree(), dv = V[0][0].degree(), dw = W[0].degree();
    std::mt19937_64 rng(witness_seed);

    std::vector<Cochain> a(s), b(r);
    for (std::size_t j = 0; j < s; ++j) {
        Cochain t(g, du + dv, p);
        for (std::size_t i = 0; i < r; ++i) t += cup(U[i], V[i][j]);
        a[j] = witness(t, "row product");
        if (witness_seed) a[j] += random_cocycle(g, du + dv - 1, p, rng);
    }
    for (std::size_t i = 0; i < r; ++i) {
        Cochain t(g, dv + dw, p);
        for (std::size_t j = 0; j < s; ++j) t += cup(V[i][j], W[j]);
        b[i] = witness(t, "column product");
        if (witness_seed) b[i] += random_cocycle(g, dv + dw - 1, p, rng);
    }
    MasseyResult res;
    res.representative = Cochain(g, du + dv + dw - 1, p);
    for (std::size_t i = 0; i < r; ++i) res.representative += cup(U[i], b[i]);
    if (du % 2) res.representative *= -1;
    for (std::size_t j = 0; j < s; ++j) res.representative -= cup(a[j], W[j]);
    if (!is_cocycle(res.representative)) throw std::logic_error("Massey representative is not a cocycle");

    const auto hb = cohomology_basis(g, dv + dw - 1, p);
    for (const auto& ui : U)
        for (const auto& h : hb) res.indeterminacy.push_back(cup(ui, h));
    const auto ha = cohomology_basis(g, du + dv - 1, p);
    for (const auto& h : ha)
        for (const auto& wj : W) res.indeterminacy.push_back(cup(h, wj));
    // drop classes that vanish
    std::vector<Cochain> kept;
    for (auto& c : res.indeterminacy)
        if (!class_equal_modulo(c, Cochain(g, c.degree(), p), kept)) kept.push_back(std::move(c));
    res.indeterminacy = std::move(kept);
    return res;
}

// ---------------------------------------------------------------- subgroups

SubgroupContext::SubgroupContext(Subgroup s, std::string name) : sub(std::move(s))
{
    group = subgroup_as_group(sub, std::move(name));
}

Cochain restrict_to(const Cochain& c, const SubgroupContext& h)
{
    if (c.group() != h.sub.parent) throw std::invalid_argument("restriction: subgroup of a different group");
    Cochain r(h.group, c.degree(), c.modulus());
    std::vector<Elem> t(c.degree());
    for (std::size_t idx = 0; idx < r.size(); ++idx) {
        auto s = r.tuple(idx);
        for (std::size_t i = 0; i < s.size(); ++i) t[i] = h.to_parent(s[i]);
        r[idx] = c.at(t);
    }
    return r;
}

Cochain transfer(const Cochain& c, const SubgroupContext& h)
{
    if (c.group() != h.group) throw std::invalid_argument("transfer: cochain is not on the subgroup");
    const auto& G = h.sub.parent;
    const auto& g = *G;
    const unsigned n = c.degree();
    const std::uint32_t mod = c.modulus();
    Cochain r(G, n, mod);
    // r(x) = x t with t the left-coset representative of x^{-1}: the H-equivariant retraction G -> H
    auto retract = [&](Elem x) { return h.from_parent(g.mul(x, h.sub.coset_rep(g.inv(x)))); };
    const auto& H = *h.group;
    std::vector<Elem> P, s(n);
    for (std::size_t idx = 0; idx < r.size(); ++idx) {
        prefix_products(g, r.tuple(idx), P);
        std::int64_t acc = 0;
        for (Elem t : h.sub.transversal) {
            Elem prev = retract(g.inv(t));
            bool zero = false;
            for (unsigned k = 1; k <= n; ++k) {
                Elem cur = retract(g.mul(g.inv(t), P[k]));
                Elem e = H.mul(H.inv(prev), cur);
                if (e == 0) {
                    zero = true;
                    break;
                }
                s[k - 1] = e;
                prev = cur;
            }
            if (zero) continue;
            std::int64_t v = c.at(s);
            acc = mod ? norm_value(acc + v, mod) : checked_add(acc, v);
        }
        r[idx] = acc;
    }
    return r;
}

Cochain conjugate(const Cochain& c, const SubgroupContext& h, Elem x)
{
    if (c.group() != h.group) throw std::invalid_argument("conjugate: cochain is not on the subgroup");
    const auto& g = *h.sub.parent;
    Cochain r(h.group, c.degree(), c.modulus());
    std::vector<Elem> t(c.degree());
    for (std::size_t idx = 0; idx < r.size(); ++idx) {
        auto s = r.tuple(idx);
        for (std::size_t i = 0; i < s.size(); ++i) {
            Elem y = g.conj(h.to_parent(s[i]), x);
            if (!h.sub.contains(y)) throw std::invalid_argument("conjugate: element does not normalize the subgroup");
            t[i] = h.from_parent(y);
        }
        r[idx] = c.at(t);
    }
    return r;
}

// ---------------------------------------------------------------- homology

Integer IntegralGroup::order() const
{
    if (rank > 0) return 0;
    Integer r = 1;
    for (const auto& t : torsion) r *= t;
    return r;
}

namespace {

constexpr std::uint32_t big_prime = 2147483629u;

// Bar boundary ∂_n: C_n -> C_{n-1} of the normalized complex.
template <class Add>
void boundary_entries(const FiniteGroup& g, unsigned n, Add&& add)
{
    const std::size_t b = g.order() - 1;
    const std::size_t cols = ipow_size(b, n);
    std::vector<Elem> t(n), s(n ? n - 1 : 0);
    auto index_of = [&](const std::vector<Elem>& x) {
        std::size_t idx = 0;
        for (Elem e : x) idx = idx * b + (e - 1);
        return idx;
    };
    for (std::size_t col = 0; col < cols; ++col) {
        std::size_t x = col;
        for (unsigned i = n; i-- > 0;) {
            t[i] = static_cast<Elem>(x % b + 1);
            x /= b;
        }
        std::copy(t.begin() + 1, t.end(), s.begin());
        add(index_of(s), col, 1);
        for (unsigned i = 1; i < n; ++i) {
            Elem m = g.mul(t[i - 1], t[i]);
            if (m == 0) continue;
            for (unsigned j = 0, k = 0; j < n; ++j) {
                if (j == i) continue;
                s[k++] = (j == i - 1) ? m : t[j];
            }
            add(index_of(s), col, i % 2 ? -1 : 1);
        }
        std::copy(t.begin(), t.end() - 1, s.begin());
        add(index_of(s), col, n % 2 ? -1 : 1);
    }
}

MatrixZ bar_boundary_z(const FiniteGroup& g, unsigned n, const Limits& lim)
{
    if (cell_count(g, n) > lim.max_cells) throw ResourceLimit("bar complex exceeds the cell limit");
    MatrixZ m(cell_count(g, n - 1), cell_count(g, n), 0);
    boundary_entries(g, n, [&](std::size_t r, std::size_t c, int v) { m.add(r, c, Integer(v)); });
    m.finalize();
    return m;
}

MatrixFp bar_boundary_fp(const FiniteGroup& g, unsigned n, std::uint32_t p, const Limits& lim)
{
    if (cell_count(g, n) > lim.max_cells) throw ResourceLimit("bar complex exceeds the cell limit");
    MatrixFp m(cell_count(g, n - 1), cell_count(g, n), p);
    boundary_entries(g, n, [&](std::size_t r, std::size_t c, int v) { m.add(r, c, mod_reduce(v, p)); });
    m.finalize();
    return m;
}

IntegralGroup assemble_integral(std::size_t cells_n, const SmithReport& dn, std::size_t rank_next)
{
    // H^n = Hom(H_n, Z) ⊕ Ext(H_{n-1}, Z)
    IntegralGroup r;
    if (cells_n < dn.rank + rank_next) throw std::logic_error("boundary ranks exceed cell count");
    r.rank = cells_n - dn.rank - rank_next;
    r.torsion = dn.torsion();
    return r;
}

} // namespace

std::vector<std::size_t> cohomology_dims_mod_p_direct(const GroupPtr& g, std::uint32_t p, unsigned max_degree,
                                                      const Limits& lim)
{
    if (!is_prime(p)) throw std::invalid_argument("p must be prime");
    std::vector<std::size_t> rk(max_degree + 2, 0);
    for (unsigned n = 1; n <= max_degree + 1; ++n) rk[n] = rank_mod_p(bar_boundary_fp(*g, n, p, lim));
    std::vector<std::size_t> dims;
    for (unsigned n = 0; n <= max_degree; ++n) dims.push_back(cell_count(*g, n) - rk[n] - rk[n + 1]);
    return dims;
}

IntegralGroup integral_cohomology_direct(const GroupPtr& g, unsigned n, const Limits& lim)
{
    if (n == 0) return {1, {}};
    auto dn = smith_normal_form(bar_boundary_z(*g, n, lim));
    auto dn1 = smith_normal_form(bar_boundary_z(*g, n + 1, lim));
    return assemble_integral(cell_count(*g, n), dn, dn1.rank);
}

std::vector<std::size_t> cohomology_dims_mod_p(const GroupPtr& g, std::uint32_t p, unsigned max_degree,
                                               const Limits& lim)
{
    if (!is_prime(p)) throw std::invalid_argument("p must be prime");
    if (!g->has_pc()) return cohomology_dims_mod_p_direct(g, p, max_degree, lim);
    MorseBar mb(g, lim);
    std::vector<std::size_t> rk(max_degree + 2, 0);
    for (unsigned n = 1; n <= max_degree + 1; ++n) rk[n] = rank_mod_p(reduce_mod_p(mb.boundary(n), p));
    std::vector<std::size_t> dims;
    for (unsigned n = 0; n <= max_degree; ++n) dims.push_back(mb.critical(n).size() - rk[n] - rk[n + 1]);
    return dims;
}

IntegralGroup integral_cohomology(const GroupPtr& g, unsigned n, const Limits& lim)
{
    if (n == 0) return {1, {}};
    if (!g->has_pc()) return integral_cohomology_direct(g, n, lim);
    MorseBar mb(g, lim);
    const auto& dn = mb.boundary(n);
    auto snf = smith_normal_form(dn);
    const std::size_t cells = mb.critical(n).size();
    // a rank mod a large prime bounds the rational rank from below
    std::size_t next = rank_mod_p(reduce_mod_p(mb.boundary(n + 1), big_prime));
    if (cells - snf.rank - next > 0) next = smith_normal_form(mb.boundary(n + 1)).rank;
    return assemble_integral(cells, snf, next);
}

// ---------------------------------------------------------------- Morse reduction

MorseBar::MorseBar(GroupPtr g, Limits lim) : g_(std::move(g)), lim_(std::move(lim))
{
    if (!g_->has_pc()) throw std::invalid_argument("Morse reduction needs a pc group");
    const std::size_t n = g_->order();
    first_letter_.assign(n, 0);
    first_exp_.assign(n, 0);
    last_letter_.assign(n, 0);
    last_exp_.assign(n, 0);
    length_.assign(n, 0);
    for (std::size_t a = 1; a < n; ++a) {
        const auto& e = g_->exponents(static_cast<Elem>(a));
        bool first = true;
        for (std::uint32_t i = 0; i < e.size(); ++i) {
            if (!e[i]) continue;
            if (first) first_letter_[a] = i, first_exp_[a] = e[i], first = false;
            last_letter_[a] = i;
            last_exp_[a] = e[i];
            length_[a] += e[i];
        }
    }
}

std::uint64_t MorseBar::key(const std::vector<Elem>& cell) const
{
    std::uint64_t k = 0;
    for (Elem e : cell) k = k * g_->order() + e;
    return k;
}

MorseBar::Class MorseBar::classify(const std::vector<Elem>& cell) const
{
    const auto& g = *g_;
    const auto& rel = g.pc().rel;
    if (cell.empty()) return {Kind::Critical, {}};
    auto letter_power = [&](std::uint32_t i, std::uint32_t e) {
        std::vector<std::uint32_t> x(rel.size(), 0);
        x[i] = e;
        return g.from_exponents(x);
    };
    const Elem w1 = cell[0];
    if (length_[w1] >= 2) {
        Elem x = letter_power(first_letter_[w1], 1);
        std::vector<Elem> up;
        up.reserve(cell.size() + 1);
        up.push_back(x);
        up.push_back(g.mul(g.inv(x), w1));
        up.insert(up.end(), cell.begin() + 1, cell.end());
        return {Kind::Redundant, std::move(up)};
    }
    Elem prev = w1;
    for (std::size_t k = 1; k < cell.size(); ++k) {
        const Elem w = cell[k];
        const std::uint32_t L = last_letter_[prev], eL = last_exp_[prev];
        const std::uint32_t F = first_letter_[w], f = first_exp_[w];
        Elem u;
        if (F < L)
            u = letter_power(F, 1);
        else if (F == L && rel[L] - eL <= f)
            u = letter_power(F, rel[L] - eL);
        else {
            std::vector<Elem> down(cell.begin(), cell.begin() + static_cast<long>(k) - 1);
            down.push_back(g.mul(prev, w));
            down.insert(down.end(), cell.begin() + static_cast<long>(k) + 1, cell.end());
            return {Kind::Collapsible, std::move(down)};
        }
        if (u != w) {
            std::vector<Elem> up(cell.begin(), cell.begin() + static_cast<long>(k));
            up.push_back(u);
            up.push_back(g.mul(g.inv(u), w));
            up.insert(up.end(), cell.begin() + static_cast<long>(k) + 1, cell.end());
            return {Kind::Redundant, std::move(up)};
        }
        prev = w;
    }
    return {Kind::Critical, {}};
}

std::vector<std::pair<std::vector<Elem>, std::int64_t>> MorseBar::faces(const std::vector<Elem>& cell) const
{
    const auto& g = *g_;
    const std::size_t n = cell.size();
    std::vector<std::pair<std::vector<Elem>, std::int64_t>> out;
    if (n == 0) return out;
    out.emplace_back(std::vector<Elem>(cell.begin() + 1, cell.end()), 1);
    for (std::size_t i = 1; i < n; ++i) {
        Elem m = g.mul(cell[i - 1], cell[i]);
        if (m == 0) continue;
        std::vector<Elem> f(cell.begin(), cell.begin() + static_cast<long>(i) - 1);
        f.push_back(m);
        f.insert(f.end(), cell.begin() + static_cast<long>(i) + 1, cell.end());
        out.emplace_back(std::move(f), i % 2 ? -1 : 1);
    }
    out.emplace_back(std::vector<Elem>(cell.begin(), cell.end() - 1), n % 2 ? -1 : 1);
    return out;
}

const std::vector<std::vector<Elem>>& MorseBar::critical(unsigned n)
{
    if (crit_.size() > n) return crit_[n];
    const auto& g = *g_;
    const auto& rel = g.pc().rel;
    auto letter_power = [&](std::uint32_t i, std::uint32_t e) {
        std::vector<std::uint32_t> x(rel.size(), 0);
        x[i] = e;
        return g.from_exponents(x);
    };
    if (crit_.empty()) crit_.push_back({{}});
    if (crit_.size() == 1 && n >= 1) {
        std::vector<std::vector<Elem>> c1;
        for (std::uint32_t i = 0; i < rel.size(); ++i) c1.push_back({letter_power(i, 1)});
        crit_.push_back(std::move(c1));
    }
    while (crit_.size() <= n) {
        std::vector<std::vector<Elem>> next;
        for (const auto& c : crit_.back()) {
            const Elem last = c.back();
            const std::uint32_t L = last_letter_[last], eL = last_exp_[last];
            for (std::uint32_t F = 0; F < L; ++F) {
                auto x = c;
                x.push_back(letter_power(F, 1));
                next.push_back(std::move(x));
            }
            auto x = c;
            x.push_back(letter_power(L, rel[L] - eL));
            next.push_back(std::move(x));
        }
        std::sort(next.begin(), next.end());
        crit_.push_back(std::move(next));
    }
    return crit_[n];
}

const MatrixZ& MorseBar::boundary(unsigned n)
{
    if (n == 0) throw std::invalid_argument("boundary degree must be positive");
    if (bd_.size() <= n) bd_.resize(n + 1);
    if (bd_[n]) return *bd_[n];
    std::string path;
    if (!lim_.cache_dir.empty()) {
        std::ostringstream name;
        name << std::hex << std::setw(16) << std::setfill('0') << g_->hash() << std::dec << "_morse_d" << n << "_Z.txt";
        path = (std::filesystem::path(lim_.cache_dir) / name.str()).string();
        std::ifstream in(path);
        if (in) {
            try {
                auto m = read_coordinate_z(in);
                if (m.rows() == critical(n - 1).size() && m.cols() == critical(n).size()) {
                    bd_[n] = std::move(m);
                    return *bd_[n];
                }
            } catch (const std::exception&) {
                // unreadable cache entries are recomputed
            }
        }
    }
    bd_[n] = compute_boundary(n);
    if (!path.empty()) {
        std::error_code ec;
        std::filesystem::create_directories(lim_.cache_dir, ec);
        std::string tmp = path + ".tmp";
        {
            std::ofstream out(tmp);
            if (out) write_coordinate(out, *bd_[n]);
        }
        std::filesystem::rename(tmp, path, ec);
    }
    return *bd_[n];
}

MatrixZ MorseBar::compute_boundary(unsigned n)
{
    using Vec = std::vector<std::pair<std::uint32_t, std::int64_t>>;
    critical(n);
    const auto& rows = crit_[n - 1];
    const auto& cols = crit_[n];
    std::unordered_map<std::uint64_t, std::uint32_t> row_index;
    for (std::uint32_t i = 0; i < rows.size(); ++i) row_index[key(rows[i])] = i;

    std::unordered_map<std::uint64_t, Vec> memo;
    std::unordered_set<std::uint64_t> active;

    auto add_scaled = [](Vec& acc, const Vec& v, std::int64_t s) {
        for (const auto& [i, x] : v) acc.emplace_back(i, checked_mul(x, s));
    };
    auto compact = [](Vec& v) {
        std::sort(v.begin(), v.end());
        Vec out;
        for (const auto& [i, x] : v) {
            if (!out.empty() && out.back().first == i)
                out.back().second = checked_add(out.back().second, x);
            else
                out.emplace_back(i, x);
        }
        out.erase(std::remove_if(out.begin(), out.end(), [](const auto& e) { return e.second == 0; }), out.end());
        v = std::move(out);
    };

    struct Frame {
        std::uint64_t key;
        std::vector<std::pair<std::vector<Elem>, std::int64_t>> terms;
        std::size_t next = 0;
        std::int64_t scale = 0; // -1/κ
        Vec acc;
    };

    // Flow of an (n-1)-cell onto critical (n-1)-cells.
    auto flow = [&](const std::vector<Elem>& start) -> const Vec& {
        const std::uint64_t k0 = key(start);
        if (auto it = memo.find(k0); it != memo.end()) return it->second;
        std::vector<Frame> stack;
        // Pushes a frame for a cell, or resolves it immediately; returns true if resolved.
        auto open = [&](const std::vector<Elem>& cell, std::uint64_t k) -> bool {
            if (memo.count(k)) return true;
            if (auto it = row_index.find(k); it != row_index.end()) {
                memo[k] = Vec{{it->second, 1}};
                return true;
            }
            auto cls = classify(cell);
            if (cls.kind == Kind::Critical) throw std::logic_error("critical cell missing from the critical list");
            if (cls.kind == Kind::Collapsible) {
                memo[k] = {};
                return true;
            }
            if (!active.insert(k).second) throw std::logic_error("Morse matching has a cycle");
            Frame f;
            f.key = k;
            std::int64_t kappa = 0;
            for (auto& [face, c] : faces(cls.partner)) {
                if (face == cell)
                    kappa += c;
                else
                    f.terms.emplace_back(std::move(face), c);
            }
            if (kappa != 1 && kappa != -1) throw std::logic_error("Morse matching coefficient is not a unit");
            f.scale = -kappa; // -1/κ for κ = ±1
            stack.push_back(std::move(f));
            ++explored_;
            if (memo.size() + stack.size() > lim_.max_cells)
                throw ResourceLimit("Morse flow exceeds the cell limit");
            return false;
        };
        open(start, k0);
        while (!stack.empty()) {
            Frame& top = stack.back();
            if (top.next == top.terms.size()) {
                compact(top.acc);
                std::uint64_t k = top.key;
                memo[k] = std::move(top.acc);
                active.erase(k);
                stack.pop_back();
                continue;
            }
            const auto& [face, c] = top.terms[top.next];
            std::uint64_t fk = key(face);
            if (open(face, fk)) {
                Frame& t = stack.back(); // open() did not push
                add_scaled(t.acc, memo.at(fk), checked_mul(c, t.scale));
                ++t.next;
                if (t.acc.size() > 4 * rows.size() + 64) compact(t.acc);
            }
            // otherwise the child frame runs first; the parent revisits this term afterwards
        }
        return memo.at(k0);
    };

    MatrixZ m(rows.size(), cols.size(), 0);
    for (std::size_t j = 0; j < cols.size(); ++j) {
        Vec acc;
        for (const auto& [face, c] : faces(cols[j])) add_scaled(acc, flow(face), c);
        compact(acc);
        for (const auto& [i, x] : acc) m.add(i, j, Integer(static_cast<long>(x)));
    }
    m.finalize();
    return m;
}

} // namespace coho
