#include "cohomolab/ring_models.hpp"

#include <random>
#include <regex>
#include <sstream>
#include <stdexcept>

namespace coho {

// ---------------------------------------------------------------- model

RingModel::RingModel(std::uint32_t p, std::uint32_t lambda) : p_(p), lambda_(lambda % p)
{
    if (p < 3 || !is_prime(p)) throw std::invalid_argument("RingModel: p must be an odd prime");
    if (lambda_ == 0) throw std::invalid_argument("RingModel: lambda must be a unit");
}

std::uint32_t RingModel::degree(const RMono& m) const
{
    return 2 * p_ * m.z + 2 * m.a + 2 * m.b + 3 * m.mu + 3 * m.nu + 2 * m.chi;
}

std::optional<std::uint32_t> RingModel::degree(const RElem& x) const
{
    std::optional<std::uint32_t> d;
    for (const auto& [m, c] : x) {
        std::uint32_t e = degree(m);
        if (d && *d != e) throw NonHomogeneous("ring element is not homogeneous");
        d = e;
    }
    return d;
}

bool RingModel::is_basis(const RMono& m) const
{
    if (m.mu > 1 || m.nu > 1) return false;
    if (m.chi) return m.chi >= 2 && m.chi <= p_ - 1 && !m.a && !m.b && !m.mu && !m.nu;
    if (m.nu) return !m.mu && m.b == 0;
    return m.a == 0 || m.b + m.mu <= p_ - 1;
}

const std::vector<RMono>& RingModel::basis(std::uint32_t d) const
{
    std::lock_guard<std::mutex> lock(mu_);
    auto it = basis_.find(d);
    if (it != basis_.end()) return it->second;
    std::vector<RMono> out;
    for (std::uint32_t z = 0; 2 * p_ * z <= d; ++z) {
        std::uint32_t r = d - 2 * p_ * z;
        if (r % 2 == 0 && r / 2 >= 2 && r / 2 <= p_ - 1) out.push_back(RMono{z, 0, 0, 0, 0, r / 2});
        if (r >= 3 && (r - 3) % 2 == 0) out.push_back(RMono{z, (r - 3) / 2, 0, 0, 1, 0});
        for (std::uint8_t e = 0; e <= 1; ++e) {
            if (r < 3u * e || (r - 3 * e) % 2) continue;
            std::uint32_t s = (r - 3 * e) / 2;
            for (std::uint32_t j = 0; j <= s; ++j) {
                std::uint32_t k = s - j;
                if (j == 0 || k + e <= p_ - 1) out.push_back(RMono{z, j, k, e, 0, 0});
            }
        }
    }
    std::sort(out.begin(), out.end());
    auto& idx = index_[d];
    for (std::size_t i = 0; i < out.size(); ++i) idx.emplace(out[i], i);
    return basis_.emplace(d, std::move(out)).first->second;
}

std::size_t RingModel::index(const RMono& m) const
{
    std::uint32_t d = degree(m);
    basis(d);
    std::lock_guard<std::mutex> lock(mu_);
    auto& idx = index_.at(d);
    auto it = idx.find(m);
    if (it == idx.end()) throw std::invalid_argument("not a basis monomial");
    return it->second;
}

void RingModel::reduce(Raw r, std::uint32_t c, RElem& out) const
{
    const std::uint32_t p = p_;
    while (true) {
        if (c == 0 || r.mu > 1 || r.nu > 1) return;
        if (r.chis.size() >= 2) {
            std::uint32_t i = r.chis[0], j = r.chis[1];
            if (i != p - 1 || j != p - 1) return;
            r.chis.erase(r.chis.begin(), r.chis.begin() + 2);
            // χ_{p-1}^2 = α^{2p-2} + β^{2p-2} - α^{p-1}β^{p-1}
            Raw t = r;
            t.a += 2 * p - 2;
            reduce(t, c, out);
            t = r;
            t.b += 2 * p - 2;
            reduce(t, c, out);
            r.a += p - 1;
            r.b += p - 1;
            c = p - c;
            continue;
        }
        if (r.chis.size() == 1 && (r.a || r.b || r.mu || r.nu)) {
            if (r.chis[0] < p - 1) return;
            r.chis.clear();
            c = p - c;
            if (r.a) r.a += p - 1;      // αχ = -α^p
            else if (r.b) r.b += p - 1; // βχ = -β^p
            else if (r.mu) r.b += p - 1; // μχ = -β^{p-1}μ
            else r.a += p - 1;          // νχ = -α^{p-1}ν
            continue;
        }
        if (r.mu && r.nu) {
            if (p == 3) return; // 3λζ vanishes mod 3
            r.mu = r.nu = 0;
            r.chis = {3};
            c = mod_mul(c, lambda_, p);
            continue;
        }
        if (r.nu && r.b) { // βν = αμ
            r.nu = 0;
            r.mu = 1;
            r.b -= 1;
            r.a += 1;
            continue;
        }
        break;
    }
    if (r.mu) {
        while (r.a >= 1 && r.b >= p - 1) r.a += p - 1, r.b -= p - 1; // αβ^{p-1}μ = α^pμ
    } else if (!r.nu) {
        while (r.a >= 1 && r.b >= p) r.a += p - 1, r.b -= p - 1; // αβ^p = α^pβ
    }
    RMono m{r.z, r.a, r.b, r.mu, r.nu, r.chis.empty() ? 0u : r.chis[0]};
    auto& slot = out[m];
    slot = mod_add(slot, c, p);
    if (slot == 0) out.erase(m);
}

RElem RingModel::monomial(const RMono& m, std::int64_t c) const
{
    Raw r{m.z, m.a, m.b, m.mu, m.nu, {}};
    if (m.chi) {
        if (m.chi < 2 || m.chi > p_ - 1) throw std::invalid_argument("chi index out of range");
        r.chis.push_back(m.chi);
    }
    RElem out;
    reduce(r, mod_reduce(c, p_), out);
    return out;
}

RElem RingModel::one() const { return monomial(RMono{}); }
RElem RingModel::alpha() const { return monomial(RMono{0, 1, 0, 0, 0, 0}); }
RElem RingModel::beta() const { return monomial(RMono{0, 0, 1, 0, 0, 0}); }
RElem RingModel::mu() const { return monomial(RMono{0, 0, 0, 1, 0, 0}); }
RElem RingModel::nu() const { return monomial(RMono{0, 0, 0, 0, 1, 0}); }
RElem RingModel::chi(std::uint32_t i) const { return monomial(RMono{0, 0, 0, 0, 0, i}); }
RElem RingModel::zeta() const { return monomial(RMono{1, 0, 0, 0, 0, 0}); }

RElem RingModel::add(const RElem& a, const RElem& b) const
{
    RElem r = a;
    for (const auto& [m, c] : b) {
        auto& slot = r[m];
        slot = mod_add(slot, c, p_);
        if (slot == 0) r.erase(m);
    }
    return r;
}

RElem RingModel::sub(const RElem& a, const RElem& b) const { return add(a, scale(b, -1)); }

RElem RingModel::scale(const RElem& a, std::int64_t c) const
{
    std::uint32_t k = mod_reduce(c, p_);
    RElem r;
    if (k == 0) return r;
    for (const auto& [m, v] : a) r.emplace(m, mod_mul(v, k, p_));
    return r;
}

RElem RingModel::mul(const RMono& x, const RMono& y) const
{
    RElem out;
    if ((x.mu && y.mu) || (x.nu && y.nu)) return out;
    Raw r{x.z + y.z, x.a + y.a, x.b + y.b, static_cast<std::uint8_t>(x.mu | y.mu),
          static_cast<std::uint8_t>(x.nu | y.nu), {}};
    if (x.chi) r.chis.push_back(x.chi);
    if (y.chi) r.chis.push_back(y.chi);
    reduce(std::move(r), x.nu && y.mu ? p_ - 1 : 1, out);
    return out;
}

RElem RingModel::mul(const RElem& a, const RElem& b) const
{
    RElem out;
    for (const auto& [ma, ca] : a)
        for (const auto& [mb, cb] : b) {
            std::uint32_t c = mod_mul(ca, cb, p_);
            for (const auto& [m, v] : mul(ma, mb)) {
                auto& slot = out[m];
                slot = mod_add(slot, mod_mul(c, v, p_), p_);
            }
        }
    std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
    return out;
}

RElem RingModel::pow(const RElem& a, std::uint32_t e) const
{
    RElem r = one(), base = a;
    while (e) {
        if (e & 1) r = mul(r, base);
        e >>= 1;
        if (e) base = mul(base, base);
    }
    return r;
}

std::vector<std::uint32_t> RingModel::coordinates(const RElem& x, std::uint32_t d) const
{
    std::vector<std::uint32_t> v(basis(d).size(), 0);
    for (const auto& [m, c] : x) {
        if (degree(m) != d) throw NonHomogeneous("ring element has a term outside degree " + std::to_string(d));
        v[index(m)] = c;
    }
    return v;
}

RElem RingModel::from_coordinates(std::uint32_t d, const std::vector<std::uint32_t>& v) const
{
    const auto& b = basis(d);
    if (v.size() != b.size()) throw DimensionError("coordinate vector length");
    RElem x;
    for (std::size_t i = 0; i < v.size(); ++i)
        if (v[i] % p_) x.emplace(b[i], v[i] % p_);
    return x;
}

std::string RingModel::str(const RElem& x) const
{
    if (x.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : x) {
        if (!first) os << " + ";
        first = false;
        std::vector<std::string> f;
        auto put = [&](const char* s, std::uint32_t e) {
            if (!e) return;
            f.push_back(e == 1 ? std::string(s) : std::string(s) + "^" + std::to_string(e));
        };
        put("zeta", m.z);
        put("alpha", m.a);
        put("beta", m.b);
        put("mu", m.mu);
        put("nu", m.nu);
        if (m.chi) f.push_back("chi" + std::to_string(m.chi));
        if (c != 1 || f.empty()) os << c;
        for (std::size_t i = 0; i < f.size(); ++i) os << (i || c != 1 ? "*" : "") << f[i];
    }
    return os.str();
}

// ---------------------------------------------------------------- validation

namespace {

std::vector<std::uint32_t> nonempty_degrees(const RingModel& r, std::uint32_t max_degree)
{
    std::vector<std::uint32_t> out;
    for (std::uint32_t d = 1; d <= max_degree; ++d)
        if (!r.basis(d).empty()) out.push_back(d);
    return out;
}

const RMono& random_basis(const RingModel& r, std::uint32_t d, std::mt19937_64& rng)
{
    const auto& b = r.basis(d);
    return b[std::uniform_int_distribution<std::size_t>(0, b.size() - 1)(rng)];
}

} // namespace

ModelCheck check_associativity(const RingModel& r, std::uint32_t max_degree, std::size_t samples, std::uint64_t seed)
{
    ModelCheck out;
    std::mt19937_64 rng(seed);
    auto degs = nonempty_degrees(r, max_degree);
    std::uniform_int_distribution<std::size_t> pick(0, degs.size() - 1);
    while (out.checked < samples) {
        std::uint32_t d1 = degs[pick(rng)], d2 = degs[pick(rng)], d3 = degs[pick(rng)];
        if (d1 + d2 + d3 > max_degree) continue;
        RElem x = r.monomial(random_basis(r, d1, rng)), y = r.monomial(random_basis(r, d2, rng)),
              z = r.monomial(random_basis(r, d3, rng));
        ++out.checked;
        if (r.mul(r.mul(x, y), z) != r.mul(x, r.mul(y, z))) {
            out.ok = false;
            out.failure = "(" + r.str(x) + ")(" + r.str(y) + ")(" + r.str(z) + ") not associative";
            return out;
        }
    }
    return out;
}

ModelCheck check_commutativity(const RingModel& r, std::uint32_t max_degree, std::size_t samples, std::uint64_t seed)
{
    ModelCheck out;
    std::mt19937_64 rng(seed);
    auto degs = nonempty_degrees(r, max_degree);
    std::uniform_int_distribution<std::size_t> pick(0, degs.size() - 1);
    while (out.checked < samples) {
        std::uint32_t d1 = degs[pick(rng)], d2 = degs[pick(rng)];
        if (d1 + d2 > max_degree) continue;
        RElem x = r.monomial(random_basis(r, d1, rng)), y = r.monomial(random_basis(r, d2, rng));
        ++out.checked;
        RElem yx = r.mul(y, x);
        if (d1 % 2 && d2 % 2) yx = r.scale(yx, -1);
        if (r.mul(x, y) != yx) {
            out.ok = false;
            out.failure = r.str(x) + " and " + r.str(y) + " do not graded-commute";
            return out;
        }
    }
    return out;
}

std::vector<std::string> failing_relations(const RingModel& r)
{
    const std::uint32_t p = r.p();
    std::vector<std::string> bad;
    auto expect = [&](const std::string& name, const RElem& lhs, const RElem& rhs) {
        if (lhs != rhs) bad.push_back(name);
    };
    RElem a = r.alpha(), b = r.beta(), m = r.mu(), n = r.nu(), z = r.zeta();
    expect("alpha*mu = beta*nu", r.mul(a, m), r.mul(b, n));
    expect("alpha^p*beta = beta^p*alpha", r.mul(r.pow(a, p), b), r.mul(r.pow(b, p), a));
    expect("alpha^p*mu = beta^p*nu", r.mul(r.pow(a, p), m), r.mul(r.pow(b, p), n));
    expect("mu^2 = 0", r.mul(m, m), {});
    expect("nu^2 = 0", r.mul(n, n), {});
    expect("mu*nu = -nu*mu", r.mul(m, n), r.scale(r.mul(n, m), -1));
    expect("mu*nu", r.mul(m, n), p == 3 ? RElem{} : r.scale(r.chi(3), r.lambda()));
    for (std::uint32_t i = 2; i <= p - 1; ++i) {
        RElem c = r.chi(i);
        bool top = i == p - 1;
        std::string s = std::to_string(i);
        expect("alpha*chi" + s, r.mul(a, c), top ? r.scale(r.pow(a, p), -1) : RElem{});
        expect("beta*chi" + s, r.mul(b, c), top ? r.scale(r.pow(b, p), -1) : RElem{});
        expect("mu*chi" + s, r.mul(m, c), top ? r.scale(r.mul(r.pow(b, p - 1), m), -1) : RElem{});
        expect("nu*chi" + s, r.mul(n, c), top ? r.scale(r.mul(r.pow(a, p - 1), n), -1) : RElem{});
        for (std::uint32_t j = 2; j <= p - 1; ++j) {
            RElem want;
            if (top && j == p - 1)
                want = r.sub(r.add(r.pow(a, 2 * p - 2), r.pow(b, 2 * p - 2)), r.mul(r.pow(a, p - 1), r.pow(b, p - 1)));
            expect("chi" + s + "*chi" + std::to_string(j), r.mul(c, r.chi(j)), want);
        }
        expect("zeta*chi" + s + " central", r.mul(z, c), r.mul(c, z));
    }
    return bad;
}

// ---------------------------------------------------------------- automorphisms

RingAutomorphism::RingAutomorphism(const RingModel& r, GeneratorImages images, std::string name)
    : r_(&r), img_(std::move(images)), name_(std::move(name))
{
    img_.chi.resize(r.p());
    auto need = [&](const RElem& x, std::uint32_t d, const char* what) {
        auto e = r.degree(x);
        if (e && *e != d) throw std::invalid_argument(std::string("image of ") + what + " has the wrong degree");
    };
    need(img_.alpha, 2, "alpha");
    need(img_.beta, 2, "beta");
    need(img_.mu, 3, "mu");
    need(img_.nu, 3, "nu");
    need(img_.zeta, 2 * r.p(), "zeta");
    for (std::uint32_t i = 2; i < r.p(); ++i) need(img_.chi[i], 2 * i, "chi");
}

RingAutomorphism RingAutomorphism::from_matrix(const RingModel& r, const MatFp& n, std::int64_t j, std::string name)
{
    if (n.size() != 2 || n[0].size() != 2 || n[1].size() != 2) throw std::invalid_argument("expected a 2x2 matrix");
    const std::uint32_t p = r.p();
    if (mod_reduce(j, p) == 0) throw std::invalid_argument("central scalar must be a unit");
    auto lin = [&](const RElem& x, std::int64_t s, const RElem& y, std::int64_t t) {
        return r.add(r.scale(x, s), r.scale(y, t));
    };
    std::int64_t n1 = n[0][0], n2 = n[0][1], n3 = n[1][0], n4 = n[1][1];
    GeneratorImages g;
    g.alpha = lin(r.alpha(), n1, r.beta(), n2);
    g.beta = lin(r.alpha(), n3, r.beta(), n4);
    g.mu = r.scale(lin(r.mu(), n4, r.nu(), n3), j);
    g.nu = r.scale(lin(r.mu(), n2, r.nu(), n1), j);
    std::uint32_t jj = mod_reduce(j, p);
    g.zeta = r.scale(r.zeta(), mod_pow(jj, p, p));
    g.chi.resize(p);
    for (std::uint32_t i = 2; i < p; ++i) g.chi[i] = r.scale(r.chi(i), mod_pow(jj, i, p));
    return RingAutomorphism(r, std::move(g), std::move(name));
}

RElem RingAutomorphism::apply(const RElem& x) const
{
    const RingModel& r = *r_;
    std::map<std::pair<int, std::uint32_t>, RElem> cache;
    auto power = [&](int which, const RElem& g, std::uint32_t e) -> const RElem& {
        auto key = std::make_pair(which, e);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
        return cache.emplace(key, r.pow(g, e)).first->second;
    };
    RElem out;
    for (const auto& [m, c] : x) {
        RElem t = r.scale(r.one(), c);
        if (m.z) t = r.mul(t, power(0, img_.zeta, m.z));
        if (m.a) t = r.mul(t, power(1, img_.alpha, m.a));
        if (m.b) t = r.mul(t, power(2, img_.beta, m.b));
        if (m.mu) t = r.mul(t, img_.mu);
        if (m.nu) t = r.mul(t, img_.nu);
        if (m.chi) t = r.mul(t, img_.chi.at(m.chi));
        out = r.add(out, t);
    }
    return out;
}

RingAutomorphism RingAutomorphism::compose(const RingAutomorphism& inner) const
{
    GeneratorImages g;
    g.alpha = apply(inner.img_.alpha);
    g.beta = apply(inner.img_.beta);
    g.mu = apply(inner.img_.mu);
    g.nu = apply(inner.img_.nu);
    g.zeta = apply(inner.img_.zeta);
    g.chi.resize(r_->p());
    for (std::uint32_t i = 2; i < r_->p(); ++i) g.chi[i] = apply(inner.img_.chi[i]);
    return RingAutomorphism(*r_, std::move(g), name_ + "*" + inner.name_);
}

ModelCheck RingAutomorphism::check_multiplicative(std::uint32_t max_degree, std::size_t samples, std::uint64_t seed) const
{
    const RingModel& r = *r_;
    ModelCheck out;
    std::mt19937_64 rng(seed);
    auto degs = nonempty_degrees(r, max_degree);
    std::uniform_int_distribution<std::size_t> pick(0, degs.size() - 1);
    while (out.checked < samples) {
        std::uint32_t d1 = degs[pick(rng)], d2 = degs[pick(rng)];
        if (d1 + d2 > max_degree) continue;
        RElem x = r.monomial(random_basis(r, d1, rng)), y = r.monomial(random_basis(r, d2, rng));
        ++out.checked;
        if (apply(r.mul(x, y)) != r.mul(apply(x), apply(y))) {
            out.ok = false;
            out.failure = name_ + " is not multiplicative on " + r.str(x) + ", " + r.str(y);
            return out;
        }
    }
    return out;
}

std::vector<RElem> fixed_subspace(const RingModel& r, const std::vector<RingAutomorphism>& gens, std::uint32_t d)
{
    const auto& b = r.basis(d);
    const std::size_t n = b.size();
    std::vector<RElem> out;
    if (n == 0) return out;
    DenseFp m(std::max<std::size_t>(1, gens.size()) * n, n, r.p());
    for (std::size_t k = 0; k < n; ++k) {
        RElem x = r.monomial(b[k]);
        for (std::size_t g = 0; g < gens.size(); ++g) {
            auto col = r.coordinates(gens[g].apply(x), d);
            col[k] = mod_sub(col[k], 1, r.p());
            for (std::size_t i = 0; i < n; ++i) m.at(g * n + i, k) = col[i];
        }
    }
    for (const auto& v : kernel(m)) out.push_back(r.from_coordinates(d, v));
    return out;
}

std::vector<std::vector<RElem>> fixed_subring(const RingModel& r, const std::vector<RingAutomorphism>& gens,
                                              std::uint32_t max_degree)
{
    std::vector<std::vector<RElem>> out;
    for (std::uint32_t d = 0; d <= max_degree; ++d) out.push_back(fixed_subspace(r, gens, d));
    return out;
}

// ---------------------------------------------------------------- subalgebras

namespace {

EchelonBasisFp::SparseVec sparse_coords(const RingModel& r, const RElem& x)
{
    EchelonBasisFp::SparseVec v;
    for (const auto& [m, c] : x) v.emplace_back(static_cast<std::uint32_t>(r.index(m)), c);
    std::sort(v.begin(), v.end());
    return v;
}

} // namespace

ModelSubalgebra::ModelSubalgebra(const RingModel& r, std::vector<RElem> gens, std::uint32_t max_degree)
    : r_(&r), max_(max_degree)
{
    std::vector<std::pair<std::uint32_t, RElem>> g;
    for (auto& x : gens) {
        auto d = r.degree(x);
        if (!d || *d == 0) continue;
        g.emplace_back(*d, std::move(x));
    }
    for (std::uint32_t d = 0; d <= max_degree; ++d) {
        ech_.emplace_back(r.basis(d).size(), r.p());
        basis_.emplace_back();
        if (d == 0) {
            ech_[0].insert(sparse_coords(r, r.one()));
            basis_[0].push_back(r.one());
            continue;
        }
        for (const auto& [e, x] : g) {
            if (e > d) continue;
            for (const auto& s : basis_[d - e]) {
                RElem y = r.mul(x, s);
                if (y.empty()) continue;
                if (ech_[d].insert(sparse_coords(r, y))) basis_[d].push_back(std::move(y));
            }
        }
    }
}

std::vector<std::size_t> ModelSubalgebra::dims() const
{
    std::vector<std::size_t> out;
    for (const auto& b : basis_) out.push_back(b.size());
    return out;
}

bool ModelSubalgebra::contains(const RElem& x) const
{
    auto d = r_->degree(x);
    if (!d) return true;
    if (*d > max_) throw std::out_of_range("element above the computed degree range");
    return ech_[*d].reduce(sparse_coords(*r_, x)).empty();
}

bool span_contains(const RingModel& r, std::uint32_t d, const std::vector<RElem>& ys, const std::vector<RElem>& xs)
{
    EchelonBasisFp e(r.basis(d).size(), r.p());
    for (const auto& y : ys) {
        r.coordinates(y, d);
        e.insert(sparse_coords(r, y));
    }
    for (const auto& x : xs) {
        r.coordinates(x, d);
        if (!e.reduce(sparse_coords(r, x)).empty()) return false;
    }
    return true;
}

// ---------------------------------------------------------------- restriction maps

Element RestrictionMap::apply(const RElem& x) const
{
    const GradedAlgebra& t = *target;
    Element out;
    for (const auto& [m, c] : x) {
        Element e = t.scale(t.one(), c);
        if (m.z) e = t.mul(e, t.pow(zeta, m.z));
        if (m.a) e = t.mul(e, t.pow(alpha, m.a));
        if (m.b) e = t.mul(e, t.pow(beta, m.b));
        if (m.mu) e = t.mul(e, mu);
        if (m.nu) e = t.mul(e, nu);
        if (m.chi) e = t.mul(e, chi.at(m.chi));
        out = t.add(out, e);
    }
    return out;
}

ModelCheck RestrictionMap::check_multiplicative(std::uint32_t max_degree, std::size_t samples, std::uint64_t seed) const
{
    const RingModel& r = *source;
    const GradedAlgebra& t = *target;
    ModelCheck out;
    std::mt19937_64 rng(seed);
    auto degs = nonempty_degrees(r, max_degree);
    std::uniform_int_distribution<std::size_t> pick(0, degs.size() - 1);
    while (out.checked < samples) {
        std::uint32_t d1 = degs[pick(rng)], d2 = degs[pick(rng)];
        if (d1 + d2 > max_degree) continue;
        RElem x = r.monomial(random_basis(r, d1, rng)), y = r.monomial(random_basis(r, d2, rng));
        ++out.checked;
        if (apply(r.mul(x, y)) != t.mul(apply(x), apply(y))) {
            out.ok = false;
            out.failure = "restriction to " + target_name + " not multiplicative on " + r.str(x) + ", " + r.str(y);
            return out;
        }
    }
    return out;
}

// ---------------------------------------------------------------- configurations

std::vector<RingAutomorphism> d8_automorphisms(const RingModel& r, bool printed_images)
{
    if (r.p() != 3) throw std::invalid_argument("the D8 action lives on the p = 3 model");
    std::vector<RingAutomorphism> g;
    g.push_back(RingAutomorphism::from_matrix(r, {{2, 0}, {0, 1}}, -1, "M1"));
    g.push_back(RingAutomorphism::from_matrix(r, {{1, 0}, {0, 2}}, -1, "M2"));
    auto m3 = RingAutomorphism::from_matrix(r, {{0, 2}, {1, 0}}, 1, "M3");
    if (printed_images) {
        GeneratorImages im = m3.images();
        im.zeta = r.scale(r.zeta(), -1);
        m3 = RingAutomorphism(r, std::move(im), "M3");
    }
    g.push_back(std::move(m3));
    return g;
}

std::vector<RingAutomorphism> s3xc3_automorphisms(const RingModel& r)
{
    if (r.p() != 7) throw std::invalid_argument("the S3xC3 action lives on the p = 7 model");
    return {RingAutomorphism::from_matrix(r, {{2, 0}, {0, 1}}, 2, "diag(2,1)"),
            RingAutomorphism::from_matrix(r, {{1, 0}, {0, 2}}, 2, "diag(1,2)"),
            RingAutomorphism::from_matrix(r, {{0, 1}, {1, 0}}, -1, "swap")};
}

RingAutomorphism shear_automorphism(const RingModel& r)
{
    return RingAutomorphism::from_matrix(r, {{1, 0}, {1, 1}}, 1, "shear");
}

std::string canonical_action_name(const std::string& name)
{
    // Accept a trailing "-<int>.<int>" reference suffix, e.g. "S3xC3-9.9" for "S3xC3".
    static const std::regex suffix(R"(-\d+\.\d+)");
    return std::regex_replace(name, suffix, "");
}

std::vector<RingAutomorphism> named_action(const RingModel& r, const std::string& raw)
{
    const std::string name = canonical_action_name(raw);
    if (name == "D8") return d8_automorphisms(r, true);
    if (name == "D8-det") return d8_automorphisms(r, false);
    if (name == "S3xC3") return s3xc3_automorphisms(r);
    if (name == "C3-shear") return {shear_automorphism(r)};
    if (name == "identity") return {RingAutomorphism::from_matrix(r, {{1, 0}, {0, 1}}, 1, "id")};
    throw std::invalid_argument("unknown named action: " + raw);
}

RestrictionMap restriction_to_BC(const RingModel& r)
{
    if (r.p() != 3) throw std::invalid_argument("restriction to <B,C> is configured for p = 3");
    auto t = std::make_shared<GradedAlgebra>(3, std::vector<std::uint32_t>{2, 2}, std::vector<std::uint32_t>{3},
                                             std::vector<std::string>{"b'", "g", "d"});
    RestrictionMap m;
    m.target_name = "<B,C>";
    m.source = &r;
    m.target = t;
    Element b = t->gen(0), g = t->gen(1);
    m.alpha = {};
    m.beta = b;
    m.mu = t->ext_gen(0);
    m.nu = {};
    m.zeta = t->sub(t->pow(g, 3), t->mul(t->pow(b, 2), g));
    m.chi.resize(3);
    m.chi[2] = t->scale(t->pow(b, 2), -1);
    return m;
}

RestrictionMap restriction_to_K(const RingModel& r)
{
    if (r.p() != 7) throw std::invalid_argument("restriction to K is configured for p = 7");
    auto t = std::make_shared<GradedAlgebra>(7, std::vector<std::uint32_t>{14, 2}, std::vector<std::uint32_t>{3},
                                             std::vector<std::string>{"z'", "e", "d"});
    RestrictionMap m;
    m.target_name = "K";
    m.source = &r;
    m.target = t;
    Element z = t->gen(0), e = t->gen(1), d = t->ext_gen(0);
    m.zeta = z;
    m.alpha = e;
    m.beta = t->scale(e, -1);
    m.mu = d;
    m.nu = t->scale(d, -1);
    m.chi.resize(7);
    m.chi[6] = t->scale(t->pow(e, 6), -1);
    return m;
}

namespace {

RElem mono(const RingModel& r, std::uint32_t z, std::uint32_t a, std::uint32_t b, std::uint8_t mu = 0,
           std::uint8_t nu = 0, std::uint32_t chi = 0, std::int64_t c = 1)
{
    return r.monomial(RMono{z, a, b, mu, nu, chi}, c);
}

} // namespace

std::vector<NamedElement> d8_generators(const RingModel& r, bool printed_images)
{
    RElem an = mono(r, 1, 1, 0, 0, 1), bm = mono(r, 1, 0, 1, 1, 0);
    return {{"chi2", r.chi(2)},
            {"alpha^2+beta^2", r.add(mono(r, 0, 2, 0), mono(r, 0, 0, 2))},
            {"alpha^2*beta^2", mono(r, 0, 2, 2)},
            printed_images ? NamedElement{"zeta*(alpha*nu-beta*mu)", r.sub(an, bm)}
                         : NamedElement{"zeta*(alpha*nu+beta*mu)", r.add(an, bm)},
            {"zeta^2", mono(r, 2, 0, 0)}};
}

std::vector<NamedElement> d8_span_list(const RingModel& r, std::uint32_t max_degree, bool printed_images)
{
    std::vector<NamedElement> out;
    auto keep = [&](std::string name, RElem x) {
        auto d = r.degree(x);
        if (d && *d <= max_degree) out.push_back({std::move(name), std::move(x)});
    };
    const std::uint32_t zd = 2 * r.p();
    const std::string sign = printed_images ? "-" : "+";
    for (std::uint32_t i = 0; 2 * i * zd <= max_degree; ++i) {
        std::string zi = "zeta^" + std::to_string(2 * i), zo = "zeta^" + std::to_string(2 * i + 1);
        keep(zi + "*chi2", mono(r, 2 * i, 0, 0, 0, 0, 2));
        for (std::uint32_t j = 0; 2 * i * zd + 4 * j <= max_degree; ++j) {
            std::string e = std::to_string(2 * j), o = std::to_string(2 * j + 1);
            keep(zi + "*(alpha^" + e + "+beta^" + e + ")", r.add(mono(r, 2 * i, 2 * j, 0), mono(r, 2 * i, 0, 2 * j)));
            RElem an = mono(r, 2 * i + 1, 2 * j + 1, 0, 0, 1), bm = mono(r, 2 * i + 1, 0, 2 * j + 1, 1, 0);
            keep(zo + "*(alpha^" + o + "*nu" + sign + "beta^" + o + "*mu)", printed_images ? r.sub(an, bm) : r.add(an, bm));
            if (j == 0) continue; // ζ^{2i}β² alone is not invariant
            keep(zi + "*alpha^" + e + "*beta^2", mono(r, 2 * i, 2 * j, 2));
            if (!printed_images) keep(zo + "*alpha^" + e + "*beta*mu", mono(r, 2 * i + 1, 2 * j, 1, 1));
        }
    }
    return out;
}

std::vector<NamedElement> s3xc3_generators(const RingModel& r)
{
    if (r.p() != 7) throw std::invalid_argument("p = 7 generators");
    return {{"alpha^3+beta^3", r.add(mono(r, 0, 3, 0), mono(r, 0, 0, 3))},
            {"alpha^3*beta^3", mono(r, 0, 3, 3)},
            {"chi6", r.chi(6)},
            {"alpha^5*beta*mu-alpha^2*beta^4*mu", r.sub(mono(r, 0, 5, 1, 1), mono(r, 0, 2, 4, 1))},
            {"zeta*alpha*mu", mono(r, 1, 1, 0, 1)},
            {"zeta*chi5", mono(r, 1, 0, 0, 0, 0, 5)},
            {"zeta*(alpha^5*beta^2-alpha^2*beta^5)", r.sub(mono(r, 1, 5, 2), mono(r, 1, 2, 5))},
            {"zeta^2*alpha*beta", mono(r, 2, 1, 1)},
            {"zeta^2*(alpha^2*nu-beta^2*mu)", r.sub(mono(r, 2, 2, 0, 0, 1), mono(r, 2, 0, 2, 1))},
            {"zeta^2*chi4", mono(r, 2, 0, 0, 0, 0, 4)},
            {"zeta^3*chi3", mono(r, 3, 0, 0, 0, 0, 3)},
            {"zeta^3*(alpha^3-beta^3)", r.sub(mono(r, 3, 3, 0), mono(r, 3, 0, 3))},
            {"zeta^4*chi2", mono(r, 4, 0, 0, 0, 0, 2)},
            {"zeta^5*(alpha^2*nu+beta^2*mu)", r.add(mono(r, 5, 2, 0, 0, 1), mono(r, 5, 0, 2, 1))},
            {"zeta^6", mono(r, 6, 0, 0)}};
}

std::vector<NamedElement> held_7_generators(const RingModel& r)
{
    if (r.p() != 7) throw std::invalid_argument("p = 7 generators");
    return {{"alpha^3+beta^3", r.add(mono(r, 0, 3, 0), mono(r, 0, 0, 3))},
            {"chi6-alpha^3*beta^3", r.sub(r.chi(6), mono(r, 0, 3, 3))},
            {"zeta*alpha*mu", mono(r, 1, 1, 0, 1)},
            {"zeta*chi5", mono(r, 1, 0, 0, 0, 0, 5)},
            {"zeta^2*alpha*beta", mono(r, 2, 1, 1)},
            {"zeta^2*(alpha^2*nu-beta^2*mu)", r.sub(mono(r, 2, 2, 0, 0, 1), mono(r, 2, 0, 2, 1))},
            {"zeta^2*chi4", mono(r, 2, 0, 0, 0, 0, 4)},
            {"zeta^3*chi3", mono(r, 3, 0, 0, 0, 0, 3)},
            {"zeta^3*(alpha^3-beta^3)", r.sub(mono(r, 3, 3, 0), mono(r, 3, 0, 3))},
            {"zeta^4*chi2", mono(r, 4, 0, 0, 0, 0, 2)},
            {"zeta^5*(alpha^2*nu+beta^2*mu)", r.add(mono(r, 5, 2, 0, 0, 1), mono(r, 5, 0, 2, 1))},
            {"zeta^6-alpha^39*beta^3", r.sub(mono(r, 6, 0, 0), mono(r, 0, 39, 3))}};
}

// ---------------------------------------------------------------- checks

DimComparison compare_dims(std::vector<std::size_t> lhs, std::vector<std::size_t> rhs)
{
    DimComparison c{std::move(lhs), std::move(rhs), std::nullopt};
    std::size_t n = std::max(c.lhs.size(), c.rhs.size());
    for (std::size_t d = 0; d < n; ++d) {
        std::size_t a = d < c.lhs.size() ? c.lhs[d] : 0, b = d < c.rhs.size() ? c.rhs[d] : 0;
        if (a != b) {
            c.first_mismatch = static_cast<std::uint32_t>(d);
            break;
        }
    }
    return c;
}

namespace {

std::vector<std::size_t> sizes(const std::vector<std::vector<RElem>>& v)
{
    std::vector<std::size_t> out;
    for (const auto& b : v) out.push_back(b.size());
    return out;
}

std::vector<RElem> values(const std::vector<NamedElement>& v)
{
    std::vector<RElem> out;
    for (const auto& x : v) out.push_back(x.value);
    return out;
}

bool all_fixed(const std::vector<RingAutomorphism>& gens, const std::vector<RElem>& xs)
{
    for (const auto& g : gens)
        for (const auto& x : xs)
            if (g.apply(x) != x) return false;
    return true;
}

} // namespace

ShearReport check_shear_fixed_ring(std::uint32_t p, std::uint32_t max_degree, bool trivial_action)
{
    RingModel r(p);
    std::vector<RingAutomorphism> act = {trivial_action ? RingAutomorphism::from_matrix(r, {{1, 0}, {0, 1}}, 1, "id")
                                                        : shear_automorphism(r)};
    auto fixed = fixed_subring(r, act, max_degree);
    std::vector<RElem> gens{r.alpha(), r.zeta()};
    for (std::uint32_t i = 2; i < p; ++i) gens.push_back(r.chi(i));
    RElem tail = r.sub(r.pow(r.beta(), p), r.mul(r.pow(r.alpha(), p - 1), r.beta()));
    for (std::uint32_t m = 0; 2 * (m + p) <= max_degree; ++m) gens.push_back(r.mul(r.pow(r.beta(), m), tail));
    auto gen = ModelSubalgebra(r, gens, max_degree).dims();
    std::vector<std::size_t> fe, ge;
    for (std::uint32_t d = 0; d <= max_degree; d += 2) {
        fe.push_back(fixed[d].size());
        ge.push_back(gen[d]);
    }
    ShearReport rep;
    rep.p = p;
    rep.max_degree = max_degree;
    rep.even = compare_dims(fe, ge);
    return rep;
}

D8Report check_d8_fixed_ring(std::uint32_t max_degree, bool printed_images)
{
    RingModel r(3);
    auto act = d8_automorphisms(r, printed_images);
    D8Report rep;
    rep.printed_images = printed_images;
    rep.max_degree = max_degree;
    auto fixed_bases = fixed_subring(r, act, max_degree);
    auto fixed = sizes(fixed_bases);
    auto span = d8_span_list(r, max_degree, printed_images);
    rep.span_fixed = all_fixed(act, values(span));
    std::vector<std::size_t> span_dims;
    for (std::uint32_t d = 0; d <= max_degree; ++d) {
        std::vector<RElem> here;
        for (const auto& x : span)
            if (r.degree(x.value) == d) here.push_back(x.value);
        DenseFp m(here.size(), r.basis(d).size(), 3);
        for (std::size_t i = 0; i < here.size(); ++i) {
            auto c = r.coordinates(here[i], d);
            for (std::size_t j = 0; j < c.size(); ++j) m.at(i, j) = c[j];
        }
        span_dims.push_back(here.empty() ? (d == 0 ? 1 : 0) : rank(m));
    }
    rep.fixed_vs_span = compare_dims(fixed, span_dims);
    if (rep.fixed_vs_span.first_mismatch) {
        std::uint32_t d = *rep.fixed_vs_span.first_mismatch;
        std::vector<RElem> here;
        for (const auto& x : span)
            if (r.degree(x.value) == d) here.push_back(x.value);
        for (const auto& x : fixed_bases[d])
            if (!span_contains(r, d, here, {x})) rep.unexplained.push_back(r.str(x));
    }
    auto gens = values(d8_generators(r, printed_images));
    rep.generators_fixed = all_fixed(act, gens);
    rep.span_vs_generated = compare_dims(span_dims, ModelSubalgebra(r, gens, max_degree).dims());

    auto res = restriction_to_BC(r);
    MatrixAction normaliser(3, {{{2, 0}, {0, 1}}, {{1, 0}, {0, 2}}, {{1, 1}, {0, 1}}}, {1});
    rep.stable_under_normaliser = true;
    for (const auto& x : gens) {
        Element y = res.apply(x);
        for (const auto& g : normaliser.generators)
            if (normaliser.apply(*res.target, g, y) != y) rep.stable_under_normaliser = false;
    }
    return rep;
}

S3C3Report check_s3xc3_fixed_ring(std::uint32_t max_degree, std::uint32_t lambda)
{
    RingModel r(7, lambda);
    auto act = s3xc3_automorphisms(r);
    S3C3Report rep;
    rep.max_degree = max_degree;
    rep.lambda = lambda;
    auto fifteen = values(s3xc3_generators(r));
    rep.generators_fixed = all_fixed(act, fifteen);
    ModelSubalgebra a(r, fifteen, max_degree);
    rep.fixed_vs_generated = compare_dims(sizes(fixed_subring(r, act, max_degree)), a.dims());
    auto other = values(held_7_generators(r));
    other.push_back(mono(r, 0, 3, 3));
    other.push_back(r.sub(mono(r, 0, 5, 1, 1), mono(r, 0, 2, 4, 1)));
    other.push_back(r.sub(mono(r, 1, 5, 2), mono(r, 1, 2, 5)));
    ModelSubalgebra b(r, other, max_degree);
    rep.fifteen_vs_twelve_plus_three = compare_dims(a.dims(), b.dims());
    for (const auto& x : fifteen)
        if (r.degree(x) <= max_degree && !b.contains(x)) rep.fifteen_vs_twelve_plus_three.first_mismatch = *r.degree(x);
    return rep;
}

bool RestrictionReport::pass() const
{
    for (const auto& l : lines)
        if (!l.in_target) return false;
    return image_vs_s_prime.pass();
}

RestrictionReport check_k_restriction(std::uint32_t max_target_degree)
{
    RingModel r(7);
    auto res = restriction_to_K(r);
    const GradedAlgebra& t = *res.target;
    Element z = t.gen(0), e = t.gen(1), d = t.ext_gen(0);
    Subalgebra s(t, {t.mul(z, e), t.add(t.pow(z, 6), t.pow(e, 42)), d}, max_target_degree);
    RestrictionReport rep;
    std::vector<Element> images;
    for (const auto& g : held_7_generators(r)) {
        Element y = res.apply(g.value);
        images.push_back(y);
        auto deg = t.degree(y);
        bool in = !deg || (*deg <= max_target_degree && s.contains(y));
        rep.lines.push_back({g.name, t.str(y), in});
    }
    auto ze = t.mul(z, e);
    std::vector<Element> sp{t.add(t.pow(z, 6), t.pow(e, 42)), t.pow(ze, 2), t.pow(ze, 3), t.mul(ze, d),
                            t.mul(t.pow(ze, 2), d)};
    rep.image_vs_s_prime = compare_dims(subalgebra_dims(t, images, max_target_degree),
                                        subalgebra_dims(t, sp, max_target_degree));
    return rep;
}

} // namespace coho
