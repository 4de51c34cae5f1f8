#include "cohomolab/char_chern.hpp"

#include <map>
#include <mutex>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace coho {

// ---------------------------------------------------------------- cyclotomic

std::vector<std::int64_t> cyclotomic_polynomial(std::uint32_t n)
{
    if (n == 0) throw std::invalid_argument("Phi_0 undefined");
    // x^n - 1 divided by Phi_d for every proper divisor d
    std::vector<std::int64_t> num(n + 1, 0);
    num[0] = -1;
    num[n] = 1;
    for (std::uint32_t d = 1; d < n; ++d) {
        if (n % d) continue;
        auto den = cyclotomic_polynomial(d);
        std::size_t dn = den.size() - 1;
        std::vector<std::int64_t> q(num.size() - dn, 0);
        for (std::size_t i = num.size(); i-- > dn;) {
            std::int64_t c = num[i]; // den is monic
            q[i - dn] = c;
            for (std::size_t j = 0; j <= dn; ++j) num[i - dn + j] -= c * den[j];
        }
        num = std::move(q);
    }
    return num;
}

namespace {

// x^e mod Phi_N for 0 <= e < N, as integer vectors of length phi(N)
const std::vector<std::vector<std::int64_t>>& power_table(std::uint32_t n)
{
    static std::mutex mu;
    static std::map<std::uint32_t, std::vector<std::vector<std::int64_t>>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    auto phi = cyclotomic_polynomial(n);
    std::size_t d = phi.size() - 1;
    std::vector<std::vector<std::int64_t>> t(n, std::vector<std::int64_t>(d, 0));
    std::vector<std::int64_t> cur(d, 0);
    cur[0] = 1;
    if (d == 0) throw std::logic_error("degenerate cyclotomic");
    for (std::uint32_t e = 0; e < n; ++e) {
        t[e] = cur;
        // multiply by x
        std::int64_t top = cur[d - 1];
        for (std::size_t i = d - 1; i > 0; --i) cur[i] = cur[i - 1];
        cur[0] = 0;
        for (std::size_t i = 0; i < d; ++i) cur[i] -= top * phi[i];
    }
    return cache.emplace(n, std::move(t)).first->second;
}

std::int64_t pmod(std::int64_t a, std::int64_t m) { return ((a % m) + m) % m; }

} // namespace

Cyclotomic::Cyclotomic(std::uint32_t conductor) : n_(conductor)
{
    if (conductor == 0) throw std::invalid_argument("conductor must be positive");
    c_.assign(power_table(conductor)[0].size(), 0);
}

Cyclotomic::Cyclotomic(std::uint32_t conductor, const Rational& r) : Cyclotomic(conductor) { c_[0] = r; }

Cyclotomic Cyclotomic::root(std::uint32_t conductor, std::int64_t k)
{
    Cyclotomic z(conductor);
    const auto& row = power_table(conductor)[static_cast<std::size_t>(pmod(k, conductor))];
    for (std::size_t i = 0; i < row.size(); ++i) z.c_[i] = row[i];
    return z;
}

bool Cyclotomic::is_zero() const
{
    for (const auto& x : c_)
        if (x != 0) return false;
    return true;
}

bool Cyclotomic::is_rational() const
{
    for (std::size_t i = 1; i < c_.size(); ++i)
        if (c_[i] != 0) return false;
    return true;
}

Rational Cyclotomic::rational() const
{
    if (!is_rational()) throw std::domain_error("cyclotomic value is not rational: " + str());
    return c_.empty() ? Rational(0) : c_[0];
}

Cyclotomic Cyclotomic::galois(std::int64_t k) const
{
    if (std::gcd(static_cast<std::int64_t>(n_), pmod(k, n_)) != 1 && n_ > 1)
        throw std::invalid_argument("Galois exponent not coprime to conductor");
    const auto& t = power_table(n_);
    Cyclotomic r(n_);
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        const auto& row = t[static_cast<std::size_t>(pmod(k * static_cast<std::int64_t>(i), n_))];
        for (std::size_t j = 0; j < row.size(); ++j)
            if (row[j]) r.c_[j] += c_[i] * row[j];
    }
    return r;
}

void Cyclotomic::check(const Cyclotomic& o) const
{
    if (n_ != o.n_) throw std::invalid_argument("cyclotomic conductors differ");
}

Cyclotomic& Cyclotomic::operator+=(const Cyclotomic& o)
{
    check(o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
}

Cyclotomic& Cyclotomic::operator-=(const Cyclotomic& o)
{
    check(o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
}

Cyclotomic& Cyclotomic::operator*=(const Rational& r)
{
    for (auto& x : c_) x *= r;
    return *this;
}

Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b)
{
    a.check(b);
    const auto& t = power_table(a.n_);
    std::size_t d = a.c_.size();
    std::vector<Rational> raw(d == 0 ? 0 : 2 * d - 1, 0);
    for (std::size_t i = 0; i < d; ++i) {
        if (a.c_[i] == 0) continue;
        for (std::size_t j = 0; j < d; ++j)
            if (b.c_[j] != 0) raw[i + j] += a.c_[i] * b.c_[j];
    }
    Cyclotomic r(a.n_);
    for (std::size_t e = 0; e < raw.size(); ++e) {
        if (raw[e] == 0) continue;
        const auto& row = t[e % a.n_];
        for (std::size_t j = 0; j < d; ++j)
            if (row[j]) r.c_[j] += raw[e] * row[j];
    }
    return r;
}

bool Cyclotomic::operator==(const Cyclotomic& o) const { return n_ == o.n_ && c_ == o.c_; }

std::string Cyclotomic::str() const
{
    std::ostringstream os;
    bool any = false;
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        if (any) os << " + ";
        os << c_[i].get_str();
        if (i) os << "*z" << n_ << '^' << i;
        any = true;
    }
    return any ? os.str() : "0";
}

// ---------------------------------------------------------------- characters

Cyclotomic inner_product(const ClassFunction& a, const ClassFunction& b)
{
    if (a.group != b.group) throw std::invalid_argument("class functions on different groups");
    const auto& g = *a.group;
    std::uint32_t n = a.values.front().conductor();
    Cyclotomic s(n);
    for (std::size_t c = 0; c < a.classes.size(); ++c) {
        Elem rep = a.classes[c][0];
        Cyclotomic term = a.values[c] * b(g.inv(rep));
        term *= Rational(static_cast<long>(a.classes[c].size()));
        s += term;
    }
    s *= Rational(1, static_cast<long>(g.order()));
    return s;
}

namespace {

// all linear characters of h, as exponent maps element -> k with value ζ_N^k
std::vector<std::vector<std::int64_t>> linear_characters(const FiniteGroup& g, const Subgroup& h, std::uint32_t n)
{
    std::vector<Elem> gens;
    for (Elem s : h.generators)
        if (s != 0) gens.push_back(s);
    std::vector<std::vector<std::int64_t>> out;
    std::vector<std::uint32_t> choice(gens.size(), 0);
    std::vector<std::uint32_t> ord(gens.size());
    for (std::size_t i = 0; i < gens.size(); ++i) ord[i] = g.element_order(gens[i]);
    const std::size_t m = h.order();
    while (true) {
        std::vector<std::int64_t> val(m, -1);
        val[h.position(0)] = 0;
        std::vector<Elem> q{0};
        bool ok = true;
        for (std::size_t i = 0; i < q.size() && ok; ++i) {
            std::int64_t v = val[h.position(q[i])];
            for (std::size_t s = 0; s < gens.size(); ++s) {
                Elem x = g.mul(q[i], gens[s]);
                std::int64_t w = (v + static_cast<std::int64_t>(choice[s]) * (n / ord[s])) % n;
                auto& slot = val[h.position(x)];
                if (slot < 0) {
                    slot = w;
                    q.push_back(x);
                } else if (slot != w) {
                    ok = false;
                    break;
                }
            }
        }
        if (ok) out.push_back(std::move(val));
        std::size_t i = 0;
        for (; i < gens.size(); ++i) {
            if (++choice[i] < ord[i]) break;
            choice[i] = 0;
        }
        if (i == gens.size()) break;
    }
    return out;
}

} // namespace

std::vector<ClassFunction> irreducible_characters(const GroupPtr& gp, const std::vector<Subgroup>& sources)
{
    const auto& g = *gp;
    const std::size_t order = g.order();
    const std::uint32_t n = g.exponent();
    ClassFunction proto;
    proto.group = gp;
    proto.classes = conjugacy_classes(g);
    proto.class_of.assign(order, 0);
    for (std::size_t c = 0; c < proto.classes.size(); ++c)
        for (Elem x : proto.classes[c]) proto.class_of[x] = c;

    std::vector<Subgroup> subs = sources.empty() ? all_subgroups(gp) : sources;
    // large subgroups first: linear characters of G, then small-index inductions
    std::stable_sort(subs.begin(), subs.end(),
                     [](const Subgroup& a, const Subgroup& b) { return a.order() > b.order(); });

    std::vector<ClassFunction> irr;
    mpz_class total = 0;
    const mpz_class target = static_cast<unsigned long>(order);
    for (const auto& h : subs) {
        if (total == target) break;
        for (const auto& lin : linear_characters(g, h, n)) {
            ClassFunction chi = proto;
            chi.values.clear();
            for (const auto& cls : proto.classes) {
                Elem rep = cls[0];
                std::vector<std::int64_t> cnt(n, 0);
                for (Elem x = 0; x < order; ++x) {
                    Elem y = g.conj(rep, x);
                    if (h.contains(y)) ++cnt[static_cast<std::size_t>(lin[h.position(y)])];
                }
                Cyclotomic v(n);
                for (std::uint32_t k = 0; k < n; ++k)
                    if (cnt[k]) {
                        Cyclotomic z = Cyclotomic::root(n, k);
                        z *= Rational(static_cast<long>(cnt[k]));
                        v += z;
                    }
                v *= Rational(1, static_cast<long>(h.order()));
                chi.values.push_back(std::move(v));
            }
            Cyclotomic norm = inner_product(chi, chi);
            if (!(norm == Cyclotomic(n, 1))) continue;
            bool dup = false;
            for (const auto& other : irr)
                if (other.values == chi.values) {
                    dup = true;
                    break;
                }
            if (dup) continue;
            Rational d = chi.degree();
            total += d.get_num() * d.get_num();
            irr.push_back(std::move(chi));
            if (total == target) break;
        }
    }
    if (total != target || irr.size() != proto.classes.size())
        throw CharacterError("induced characters do not exhaust the character table of " + g.name());
    std::stable_sort(irr.begin(), irr.end(),
                     [](const ClassFunction& a, const ClassFunction& b) { return a.degree() < b.degree(); });
    return irr;
}

// ---------------------------------------------------------------- Chern classes

std::vector<std::uint32_t> eigenvalue_multiplicities(const ClassFunction& chi, Elem c, std::uint32_t p)
{
    const auto& g = *chi.group;
    const std::uint32_t n = chi.values.front().conductor();
    if (g.element_order(c) != p || n % p) throw std::invalid_argument("element does not have order p");
    std::vector<std::uint32_t> a(p);
    for (std::uint32_t j = 0; j < p; ++j) {
        Cyclotomic s(n);
        Elem x = 0;
        for (std::uint32_t k = 0; k < p; ++k, x = g.mul(x, c)) {
            std::int64_t e = -static_cast<std::int64_t>(j * k) * (n / p);
            s += chi(x) * Cyclotomic::root(n, e);
        }
        s *= Rational(1, p);
        Rational r = s.rational();
        if (r.get_den() != 1 || r < 0) throw CharacterError("non-integral eigenvalue multiplicity");
        a[j] = static_cast<std::uint32_t>(r.get_num().get_ui());
    }
    return a;
}

ChernReport chern_exponents_at(const GroupPtr& g, const Subgroup& c, std::uint32_t p,
                               const std::vector<ClassFunction>& irreducibles)
{
    if (c.order() != p) throw std::invalid_argument("subgroup must have order p");
    Elem gen = c.members.at(1);
    ChernReport rep{c, {}, std::nullopt};
    for (const auto& chi : irreducibles) {
        if (chi.group != g) throw std::invalid_argument("character of another group");
        auto a = eigenvalue_multiplicities(chi, gen, p);
        // total Chern class prod_j (1 + j u)^{a_j} over F_p
        std::vector<std::uint32_t> poly{1};
        for (std::uint32_t j = 1; j < p; ++j)
            for (std::uint32_t t = 0; t < a[j]; ++t) {
                poly.push_back(0);
                for (std::size_t i = poly.size() - 1; i > 0; --i) poly[i] = (poly[i] + j * poly[i - 1]) % p;
            }
        for (std::size_t i = 1; i < poly.size(); ++i)
            if (poly[i]) rep.exponent_set.insert(static_cast<std::uint32_t>(i));
    }
    std::uint32_t m = 0;
    for (auto e : rep.exponent_set) m = std::gcd(m, e);
    if (m) rep.m = m;
    return rep;
}

PcReport pc_invariant(const GroupPtr& g, std::uint32_t p)
{
    auto irr = irreducible_characters(g);
    PcReport out;
    std::uint32_t l = 1, l2 = 1;
    for (const auto& c : order_p_subgroup_classes(g, p)) {
        auto r = chern_exponents_at(g, c, p, irr);
        if (r.m) {
            l = std::lcm(l, *r.m);
            l2 = std::lcm(l2, 2 * *r.m);
        }
        out.per_class.push_back(std::move(r));
    }
    out.pc = 2 * l;
    out.lcm_of_2m = l2;
    return out;
}

} // namespace coho
