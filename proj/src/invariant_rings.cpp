#include "cohomolab/invariant_rings.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <set>
#include <sstream>

namespace coho {

// ---------------------------------------------------------------- graded algebra

GradedAlgebra::GradedAlgebra(std::uint32_t p, std::vector<std::uint32_t> poly_degrees,
                             std::vector<std::uint32_t> ext_degrees, std::vector<std::string> names)
    : p_(p), pdeg_(std::move(poly_degrees)), edeg_(std::move(ext_degrees)), names_(std::move(names))
{
    if (!is_prime(p)) throw std::invalid_argument("GradedAlgebra: p must be prime");
    if (edeg_.size() > 16) throw std::invalid_argument("GradedAlgebra: too many exterior generators");
    for (auto d : pdeg_)
        if (d == 0) throw std::invalid_argument("GradedAlgebra: generator degrees must be positive");
    for (auto d : edeg_)
        if (d == 0) throw std::invalid_argument("GradedAlgebra: generator degrees must be positive");
    if (names_.empty()) {
        for (std::size_t i = 0; i < pdeg_.size(); ++i) names_.push_back("x" + std::to_string(i + 1));
        for (std::size_t i = 0; i < edeg_.size(); ++i) names_.push_back("w" + std::to_string(i + 1));
    }
    if (names_.size() != pdeg_.size() + edeg_.size()) throw std::invalid_argument("GradedAlgebra: name count");
}

std::uint32_t GradedAlgebra::degree(const Monomial& m) const
{
    std::uint32_t d = 0;
    for (std::size_t i = 0; i < pdeg_.size(); ++i) d += m.exps[i] * pdeg_[i];
    for (std::size_t i = 0; i < edeg_.size(); ++i)
        if (m.ext >> i & 1) d += edeg_[i];
    return d;
}

std::optional<std::uint32_t> GradedAlgebra::degree(const Element& x) const
{
    std::optional<std::uint32_t> d;
    for (const auto& [m, c] : x) {
        std::uint32_t e = degree(m);
        if (d && *d != e) throw NonHomogeneous("element is not homogeneous");
        d = e;
    }
    return d;
}

const std::vector<Monomial>& GradedAlgebra::basis(std::uint32_t d) const
{
    std::lock_guard<std::mutex> lock(mu_);
    auto it = basis_.find(d);
    if (it != basis_.end()) return it->second;
    std::vector<Monomial> out;
    Monomial m{std::vector<std::uint32_t>(pdeg_.size(), 0), 0};
    std::function<void(std::size_t, std::uint32_t)> rec = [&](std::size_t i, std::uint32_t rem) {
        if (i == pdeg_.size()) {
            if (rem == 0) out.push_back(m);
            return;
        }
        for (std::uint32_t e = 0; e * pdeg_[i] <= rem; ++e) {
            m.exps[i] = e;
            rec(i + 1, rem - e * pdeg_[i]);
        }
        m.exps[i] = 0;
    };
    for (std::uint32_t mask = 0; mask < (1u << edeg_.size()); ++mask) {
        std::uint32_t ed = 0;
        for (std::size_t i = 0; i < edeg_.size(); ++i)
            if (mask >> i & 1) ed += edeg_[i];
        if (ed > d) continue;
        m.ext = mask;
        rec(0, d - ed);
    }
    // graded lex: larger exponent vectors first
    std::sort(out.begin(), out.end(), [](const Monomial& a, const Monomial& b) { return b < a; });
    auto& idx = index_[d];
    for (std::size_t i = 0; i < out.size(); ++i) idx.emplace(out[i], i);
    return basis_.emplace(d, std::move(out)).first->second;
}

std::size_t GradedAlgebra::index(const Monomial& m) const
{
    std::uint32_t d = degree(m);
    basis(d);
    std::lock_guard<std::mutex> lock(mu_);
    return index_.at(d).at(m);
}

Element GradedAlgebra::one() const { return monomial(Monomial{std::vector<std::uint32_t>(pdeg_.size(), 0), 0}); }

Element GradedAlgebra::gen(std::size_t i) const
{
    Monomial m{std::vector<std::uint32_t>(pdeg_.size(), 0), 0};
    m.exps.at(i) = 1;
    return monomial(m);
}

Element GradedAlgebra::ext_gen(std::size_t i) const
{
    if (i >= edeg_.size()) throw std::out_of_range("exterior generator");
    return monomial(Monomial{std::vector<std::uint32_t>(pdeg_.size(), 0), 1u << i});
}

Element GradedAlgebra::monomial(const Monomial& m, std::uint32_t c) const
{
    if (m.exps.size() != pdeg_.size()) throw std::invalid_argument("monomial arity");
    Element x;
    if (c % p_) x.emplace(m, c % p_);
    return x;
}

Element GradedAlgebra::add(const Element& a, const Element& b) const
{
    Element r = a;
    for (const auto& [m, c] : b) {
        auto& slot = r[m];
        slot = mod_add(slot, c, p_);
        if (slot == 0) r.erase(m);
    }
    return r;
}

Element GradedAlgebra::sub(const Element& a, const Element& b) const { return add(a, scale(b, -1)); }

Element GradedAlgebra::scale(const Element& a, std::int64_t c) const
{
    std::uint32_t k = mod_reduce(c, p_);
    Element r;
    if (k == 0) return r;
    for (const auto& [m, v] : a) r.emplace(m, mod_mul(v, k, p_));
    return r;
}

std::pair<std::uint32_t, Monomial> GradedAlgebra::mul(const Monomial& a, const Monomial& b) const
{
    Monomial m{a.exps, a.ext | b.ext};
    if (a.ext & b.ext) return {0, m};
    for (std::size_t i = 0; i < m.exps.size(); ++i) m.exps[i] += b.exps[i];
    // moving each w_j of b left past the w_i of a with i > j
    int swaps = 0;
    for (std::uint32_t bb = b.ext; bb; bb &= bb - 1) {
        int j = std::countr_zero(bb);
        swaps += std::popcount(a.ext >> (j + 1));
    }
    return {swaps % 2 ? p_ - 1 : 1u, m};
}

Element GradedAlgebra::mul(const Element& a, const Element& b) const
{
    Element r;
    for (const auto& [ma, ca] : a)
        for (const auto& [mb, cb] : b) {
            auto [s, m] = mul(ma, mb);
            if (s == 0) continue;
            auto& slot = r[m];
            slot = mod_add(slot, mod_mul(mod_mul(ca, cb, p_), s, p_), p_);
        }
    std::erase_if(r, [](const auto& kv) { return kv.second == 0; });
    return r;
}

Element GradedAlgebra::pow(const Element& a, std::uint32_t e) const
{
    Element r = one(), base = a;
    while (e) {
        if (e & 1) r = mul(r, base);
        e >>= 1;
        if (e) base = mul(base, base);
    }
    return r;
}

std::vector<std::uint32_t> GradedAlgebra::coordinates(const Element& x, std::uint32_t d) const
{
    std::vector<std::uint32_t> v(basis(d).size(), 0);
    for (const auto& [m, c] : x) {
        if (degree(m) != d) throw NonHomogeneous("element has a term outside degree " + std::to_string(d));
        v[index(m)] = c;
    }
    return v;
}

Element GradedAlgebra::from_coordinates(std::uint32_t d, const std::vector<std::uint32_t>& v) const
{
    const auto& b = basis(d);
    if (v.size() != b.size()) throw DimensionError("coordinate vector length");
    Element x;
    for (std::size_t i = 0; i < v.size(); ++i)
        if (v[i] % p_) x.emplace(b[i], v[i] % p_);
    return x;
}

std::string GradedAlgebra::str(const Element& x) const
{
    if (x.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = x.rbegin(); it != x.rend(); ++it) {
        const auto& [m, c] = *it;
        if (!first) os << " + ";
        first = false;
        bool unit = true;
        if (c != 1) os << c, unit = false;
        for (std::size_t i = 0; i < m.exps.size(); ++i) {
            if (!m.exps[i]) continue;
            if (!unit) os << '*';
            os << names_[i];
            if (m.exps[i] > 1) os << '^' << m.exps[i];
            unit = false;
        }
        for (std::size_t i = 0; i < edeg_.size(); ++i) {
            if (!(m.ext >> i & 1)) continue;
            if (!unit) os << '*';
            os << names_[pdeg_.size() + i];
            unit = false;
        }
        if (unit) os << '1';
    }
    return os.str();
}

// ---------------------------------------------------------------- matrices

MatFp mat_identity(std::size_t n)
{
    MatFp m(n, std::vector<std::uint32_t>(n, 0));
    for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

MatFp mat_mul(const MatFp& a, const MatFp& b, std::uint32_t p)
{
    std::size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
    MatFp r(n, std::vector<std::uint32_t>(m, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t t = 0; t < k; ++t)
            if (a[i][t])
                for (std::size_t j = 0; j < m; ++j) r[i][j] = mod_add(r[i][j], mod_mul(a[i][t], b[t][j], p), p);
    return r;
}

MatFp mat_transpose(const MatFp& a)
{
    MatFp r(a.empty() ? 0 : a[0].size(), std::vector<std::uint32_t>(a.size()));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a[i].size(); ++j) r[j][i] = a[i][j];
    return r;
}

std::uint32_t mat_det(const MatFp& a, std::uint32_t p)
{
    DenseFp d(a.size(), a.size(), p);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a.size(); ++j) d.at(i, j) = a[i][j] % p;
    std::uint32_t det = 1;
    for (std::size_t c = 0; c < d.cols; ++c) {
        std::size_t r = c;
        while (r < d.rows && d.at(r, c) == 0) ++r;
        if (r == d.rows) return 0;
        if (r != c) {
            for (std::size_t j = 0; j < d.cols; ++j) std::swap(d.at(r, j), d.at(c, j));
            det = (p - det) % p;
        }
        det = mod_mul(det, d.at(c, c), p);
        std::uint32_t inv = mod_inv(d.at(c, c), p);
        for (std::size_t i = c + 1; i < d.rows; ++i) {
            std::uint32_t f = mod_mul(d.at(i, c), inv, p);
            if (!f) continue;
            for (std::size_t j = c; j < d.cols; ++j) d.at(i, j) = mod_sub(d.at(i, j), mod_mul(f, d.at(c, j), p), p);
        }
    }
    return det;
}

std::optional<MatFp> mat_inverse(const MatFp& a, std::uint32_t p)
{
    std::size_t n = a.size();
    DenseFp d(n, 2 * n, p);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) d.at(i, j) = a[i][j] % p;
        d.at(i, n + i) = 1;
    }
    auto piv = rref(d);
    if (piv.size() < n || piv[n - 1] != n - 1) return std::nullopt;
    MatFp r(n, std::vector<std::uint32_t>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) r[i][j] = d.at(i, n + j);
    return r;
}

// ---------------------------------------------------------------- actions

MatrixAction::MatrixAction(std::uint32_t prime, std::vector<MatFp> gens, std::vector<std::int32_t> ext_powers)
    : p(prime), generators(std::move(gens)), ext_det_power(std::move(ext_powers))
{
    for (auto& g : generators) {
        for (auto& row : g) {
            if (row.size() != g.size()) throw std::invalid_argument("MatrixAction: matrix not square");
            for (auto& x : row) x %= p;
        }
        if (mat_det(g, p) == 0) throw std::invalid_argument("MatrixAction: singular matrix");
    }
}

Element MatrixAction::apply(const GradedAlgebra& a, const MatFp& g, const Element& x) const
{
    const std::size_t n = a.npoly();
    if (g.size() != n) throw DimensionError("matrix size differs from the number of polynomial generators");
    for (std::size_t i = 1; i < n; ++i)
        if (a.poly_degrees()[i] != a.poly_degrees()[0])
            throw std::invalid_argument("linear action needs equal generator degrees");
    std::uint32_t det = mat_det(g, p);
    std::vector<Element> img(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (g[j][i]) img[i] = a.add(img[i], a.scale(a.gen(j), g[j][i]));
    std::map<std::pair<std::size_t, std::uint32_t>, Element> powers;
    auto power = [&](std::size_t i, std::uint32_t e) -> const Element& {
        auto key = std::make_pair(i, e);
        auto it = powers.find(key);
        if (it != powers.end()) return it->second;
        return powers.emplace(key, a.pow(img[i], e)).first->second;
    };
    Element out;
    for (const auto& [m, c] : x) {
        Element t = a.monomial(Monomial{std::vector<std::uint32_t>(n, 0), m.ext}, c);
        for (std::size_t k = 0; k < a.next(); ++k)
            if (m.ext >> k & 1) {
                std::int32_t e = k < ext_det_power.size() ? ext_det_power[k] : 0;
                std::uint32_t f = e >= 0 ? mod_pow(det, e, p) : mod_pow(mod_inv(det, p), -e, p);
                t = a.scale(t, f);
            }
        for (std::size_t i = 0; i < n; ++i)
            if (m.exps[i]) t = a.mul(t, power(i, m.exps[i]));
        out = a.add(out, t);
    }
    return out;
}

std::vector<MatFp> MatrixAction::closure(std::size_t cap) const
{
    if (generators.empty()) return {};
    std::set<MatFp> seen{mat_identity(generators[0].size())};
    std::vector<MatFp> q(seen.begin(), seen.end());
    for (std::size_t i = 0; i < q.size(); ++i)
        for (const auto& g : generators) {
            MatFp h = mat_mul(q[i], g, p);
            if (seen.insert(h).second) {
                q.push_back(std::move(h));
                if (q.size() > cap) throw std::runtime_error("matrix group larger than cap");
            }
        }
    return q;
}

MatrixAction MatrixAction::transposed() const
{
    std::vector<MatFp> g;
    for (const auto& m : generators) g.push_back(mat_transpose(m));
    return MatrixAction(p, std::move(g), ext_det_power);
}

MatrixAction MatrixAction::conjugated(const MatFp& c) const
{
    auto ci = mat_inverse(c, p);
    if (!ci) throw std::invalid_argument("conjugating matrix is singular");
    std::vector<MatFp> g;
    for (const auto& m : generators) g.push_back(mat_mul(mat_mul(*ci, m, p), c, p));
    return MatrixAction(p, std::move(g), ext_det_power);
}

std::vector<Element> fixed_subspace(const GradedAlgebra& a, const MatrixAction& act, std::uint32_t d)
{
    const auto& b = a.basis(d);
    const std::size_t n = b.size();
    std::vector<Element> out;
    if (n == 0) return out;
    const std::uint32_t p = a.p();
    DenseFp m(std::max<std::size_t>(1, act.generators.size()) * n, n, p);
    for (std::size_t k = 0; k < n; ++k) {
        Element x = a.monomial(b[k]);
        for (std::size_t g = 0; g < act.generators.size(); ++g) {
            auto col = a.coordinates(act.apply(a, act.generators[g], x), d);
            col[k] = mod_sub(col[k], 1, p);
            for (std::size_t i = 0; i < n; ++i) m.at(g * n + i, k) = col[i];
        }
    }
    for (const auto& v : kernel(m)) out.push_back(a.from_coordinates(d, v));
    return out;
}

std::vector<std::size_t> fixed_dims(const GradedAlgebra& a, const MatrixAction& act, std::uint32_t max_degree)
{
    std::vector<std::size_t> dims;
    for (std::uint32_t d = 0; d <= max_degree; ++d) dims.push_back(fixed_subspace(a, act, d).size());
    return dims;
}

// ---------------------------------------------------------------- subalgebras

namespace {

EchelonBasisFp::SparseVec sparse_coords(const GradedAlgebra& a, const Element& x)
{
    EchelonBasisFp::SparseVec v;
    for (const auto& [m, c] : x) v.emplace_back(static_cast<std::uint32_t>(a.index(m)), c);
    std::sort(v.begin(), v.end());
    return v;
}

} // namespace

Subalgebra::Subalgebra(const GradedAlgebra& a, std::vector<Element> gens, std::uint32_t max_degree)
    : a_(&a), max_(max_degree)
{
    std::vector<std::pair<std::uint32_t, Element>> g;
    for (auto& x : gens) {
        auto d = a.degree(x);
        if (!d || *d == 0) continue; // zero and constants add nothing
        g.emplace_back(*d, std::move(x));
    }
    for (std::uint32_t d = 0; d <= max_degree; ++d) {
        ech_.emplace_back(a.basis(d).size(), a.p());
        basis_.emplace_back();
        if (d == 0) {
            Element one = a.one();
            ech_[0].insert(sparse_coords(a, one));
            basis_[0].push_back(one);
            continue;
        }
        for (const auto& [e, x] : g) {
            if (e > d) continue;
            for (const auto& s : basis_[d - e]) {
                Element y = a.mul(x, s);
                if (y.empty()) continue;
                if (ech_[d].insert(sparse_coords(a, y))) basis_[d].push_back(std::move(y));
            }
        }
    }
}

std::vector<std::size_t> Subalgebra::dims() const
{
    std::vector<std::size_t> out;
    for (const auto& b : basis_) out.push_back(b.size());
    return out;
}

bool Subalgebra::contains(const Element& x) const
{
    auto d = a_->degree(x);
    if (!d) return true;
    if (*d > max_) throw std::out_of_range("element above the computed degree range");
    return ech_[*d].reduce(sparse_coords(*a_, x)).empty();
}

std::vector<std::size_t> subalgebra_dims(const GradedAlgebra& a, const std::vector<Element>& gens, std::uint32_t max_degree)
{
    return Subalgebra(a, gens, max_degree).dims();
}

bool span_contains(const GradedAlgebra& a, std::uint32_t d, const std::vector<Element>& ys, const std::vector<Element>& xs)
{
    EchelonBasisFp e(a.basis(d).size(), a.p());
    for (const auto& y : ys) {
        a.coordinates(y, d);
        e.insert(sparse_coords(a, y));
    }
    for (const auto& x : xs) {
        a.coordinates(x, d);
        if (!e.reduce(sparse_coords(a, x)).empty()) return false;
    }
    return true;
}

// ---------------------------------------------------------------- Dickson invariants

std::uint32_t primitive_root(std::uint32_t p)
{
    std::vector<std::uint32_t> primes;
    std::uint32_t r = p - 1;
    for (std::uint32_t q = 2; q * q <= r; ++q)
        if (r % q == 0) {
            primes.push_back(q);
            while (r % q == 0) r /= q;
        }
    if (r > 1) primes.push_back(r);
    for (std::uint32_t g = 2; g < p; ++g)
        if (std::all_of(primes.begin(), primes.end(), [&](std::uint32_t q) { return mod_pow(g, (p - 1) / q, p) != 1; }))
            return g;
    return 1;
}

std::vector<MatFp> sl2_generators(std::uint32_t p)
{
    (void)p;
    return {{{1, 1}, {0, 1}}, {{1, 0}, {1, 1}}};
}

std::vector<MatFp> gl2_generators(std::uint32_t p)
{
    auto g = sl2_generators(p);
    g.push_back({{1, 0}, {0, primitive_root(p)}});
    return g;
}

DicksonPair dickson_pair(const GradedAlgebra& r)
{
    const std::uint32_t p = r.p();
    if (r.npoly() != 2) throw std::invalid_argument("Dickson invariants need two polynomial generators");
    auto mono = [&](std::uint32_t i, std::uint32_t j, std::int64_t c) {
        Monomial m{std::vector<std::uint32_t>{i, j}, 0};
        return r.monomial(m, mod_reduce(c, p));
    };
    DicksonPair d;
    d.a = r.add(mono(p, 1, 1), mono(1, p, -1));
    for (std::uint32_t i = 0; i <= p; ++i) d.b = r.add(d.b, mono((p - 1) * (p - i), (p - 1) * i, 1));
    return d;
}

namespace {

RingComparison compare(const std::string& label, const GradedAlgebra& a, const MatrixAction& act,
                       const std::vector<Element>& gens, std::uint32_t max_degree)
{
    RingComparison r;
    r.label = label;
    for (const auto& g : act.generators)
        for (const auto& x : gens)
            if (act.apply(a, g, x) != x) r.generators_invariant = false;
    r.fixed = fixed_dims(a, act, max_degree);
    r.generated = subalgebra_dims(a, gens, max_degree);
    for (std::uint32_t d = 0; d <= max_degree; ++d)
        if (r.fixed[d] != r.generated[d]) {
            r.first_mismatch = d;
            break;
        }
    return r;
}

void check_prime(std::uint32_t p)
{
    if (p != 3 && p != 5 && p != 7) throw std::invalid_argument("Dickson check supports p in {3,5,7}");
}

} // namespace

DicksonReport dickson_check(std::uint32_t p, std::uint32_t max_degree, DicksonVariant variant)
{
    check_prime(p);
    if (max_degree > (p == 7 ? 60u : 30u)) throw std::invalid_argument("Dickson check: degree bound too large");
    GradedAlgebra r(p, {1, 1}, {}, {"x", "x'"});
    auto [a, b] = dickson_pair(r);
    if (variant == DicksonVariant::perturbed) b = r.add(b, r.pow(r.gen(0), p * (p - 1)));
    DicksonReport rep;
    rep.p = p;
    rep.max_degree = max_degree;
    rep.variant = variant;
    rep.sl = compare("SL2", r, MatrixAction(p, sl2_generators(p)), {a, b}, max_degree);
    rep.gl = compare("GL2", r, MatrixAction(p, gl2_generators(p)), {r.pow(a, p - 1), b}, max_degree);
    return rep;
}

DicksonReport twisted_dickson_check(std::uint32_t p, std::uint32_t max_degree)
{
    check_prime(p);
    GradedAlgebra r(p, {2, 2}, {3}, {"x", "x'", "w"});
    auto [a, b] = dickson_pair(r);
    Element w = r.ext_gen(0);
    DicksonReport rep;
    rep.p = p;
    rep.max_degree = max_degree;
    rep.sl = compare("SL2 twisted", r, MatrixAction(p, sl2_generators(p), {1}), {a, b, w}, max_degree);
    rep.gl = compare("GL2 twisted", r, MatrixAction(p, gl2_generators(p), {1}),
                     {r.pow(a, p - 1), b, r.mul(r.pow(a, p - 2), w)}, max_degree);
    return rep;
}

// ---------------------------------------------------------------- prime 5 of the Held group

std::vector<MatFp> held_5_matrices()
{
    return {{{2, 0}, {0, 3}}, {{2, 0}, {0, 2}}, {{0, 1}, {4, 0}}, {{1, 1}, {2, 3}}};
}

HeldReport held_5_part_check(std::uint32_t max_degree, bool transposed)
{
    if (max_degree > 120) throw std::invalid_argument("held_5_part_check: degree bound is 120");
    const std::uint32_t p = 5;
    HeldReport rep;
    rep.transposed = transposed;
    rep.max_degree = max_degree;
    GradedAlgebra r(p, {2, 2}, {3}, {"d", "d'", "e"});
    MatrixAction act(p, held_5_matrices(), {1});
    if (transposed) act = act.transposed();
    rep.group_order = act.closure().size();
    rep.fixed = fixed_dims(r, act, max_degree);
    for (std::uint32_t d = 0; d <= max_degree; ++d) {
        std::size_t n = 0;
        for (std::uint32_t c = 0; c <= 1; ++c)
            for (std::uint32_t e = 0; e <= 1; ++e)
                for (std::uint32_t a = 0; 16 * a + 24 * e + 15 * c <= d; ++a)
                    if ((d - 16 * a - 24 * e - 15 * c) % 24 == 0) ++n;
        rep.presented.push_back(n);
    }
    auto f16 = fixed_subspace(r, act, 16), f24 = fixed_subspace(r, act, 24), f15 = fixed_subspace(r, act, 15);
    std::vector<Element> gens;
    for (auto* v : {&f16, &f24, &f15}) gens.insert(gens.end(), v->begin(), v->end());
    rep.generated = subalgebra_dims(r, gens, max_degree);
    for (std::uint32_t d = 0; d <= max_degree; ++d)
        if (rep.fixed[d] != rep.presented[d] || rep.generated[d] != rep.fixed[d]) {
            rep.first_mismatch = d;
            break;
        }
    if (f16.size() == 1 && f24.size() == 2) {
        const Element &al = f16[0], &be = f24[0], &ga = f24[1];
        std::vector<Element> prods{r.pow(al, 3), r.mul(be, be), r.mul(be, ga), r.mul(ga, ga)};
        DenseFp m(r.basis(48).size(), 4, p);
        for (std::size_t j = 0; j < 4; ++j) {
            auto c = r.coordinates(prods[j], 48);
            for (std::size_t i = 0; i < c.size(); ++i) m.at(i, j) = c[i];
        }
        auto ker = kernel(m);
        if (ker.size() == 1) {
            const auto& k = ker[0];
            std::ostringstream os;
            os << k[0] << "*a^3 + " << k[1] << "*b^2 + " << k[2] << "*b*c + " << k[3] << "*c^2 = 0";
            rep.relation = os.str();
            std::uint32_t disc = mod_sub(mod_mul(k[2], k[2], p), mod_mul(4, mod_mul(k[1], k[3], p), p), p);
            // c^2 - 3b^2 has discriminant 12, a non-square mod 5
            rep.relation_normalizes = k[0] != 0 && disc != 0 && mod_pow(disc, (p - 1) / 2, p) == p - 1;
        }
    }
    return rep;
}

} // namespace coho
