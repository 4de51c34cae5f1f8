#include "cohomolab/group.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <queue>
#include <random>
#include <set>
#include <sstream>

#include "cohomolab/linalg.hpp"

namespace coho {

PcPresentation::PcPresentation(std::vector<std::uint32_t> relative_orders, std::vector<std::string> gen_names)
    : rel(std::move(relative_orders)), names(std::move(gen_names))
{
    const std::size_t k = rel.size();
    for (auto r : rel)
        if (r < 2) throw InvalidGroupSpec("relative orders must be at least 2");
    power.assign(k, std::vector<std::uint32_t>(k, 0));
    conj.assign(k, std::vector<std::vector<std::uint32_t>>(k));
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) {
            conj[i][j].assign(k, 0);
            conj[i][j][j] = 1;
        }
    if (names.size() != k) {
        names.clear();
        for (std::size_t i = 0; i < k; ++i) names.push_back("g" + std::to_string(i));
    }
}

namespace {

struct Collector {
    const PcPresentation& pc;

    void mul_word(std::vector<std::uint32_t>& e, const std::vector<std::uint32_t>& w, std::size_t depth) const
    {
        for (std::size_t k = 0; k < w.size(); ++k)
            for (std::uint32_t t = 0; t < w[k]; ++t) mul_gen(e, k, depth + 1);
    }

    void mul_gen(std::vector<std::uint32_t>& e, std::size_t i, std::size_t depth = 0) const
    {
        if (depth > 10000) throw std::runtime_error("collection failure: runaway recursion");
        const std::size_t k = pc.size();
        std::vector<std::pair<std::size_t, std::uint32_t>> tail;
        for (std::size_t j = i + 1; j < k; ++j)
            if (e[j]) {
                tail.emplace_back(j, e[j]);
                e[j] = 0;
            }
        if (++e[i] == pc.rel[i]) {
            e[i] = 0;
            check_support(pc.power[i], i);
            mul_word(e, pc.power[i], depth);
        }
        for (const auto& [j, x] : tail) {
            check_support(pc.conj[i][j], i);
            for (std::uint32_t t = 0; t < x; ++t) mul_word(e, pc.conj[i][j], depth);
        }
    }

    static void check_support(const std::vector<std::uint32_t>& w, std::size_t i)
    {
        for (std::size_t k = 0; k <= i && k < w.size(); ++k)
            if (w[k]) throw std::runtime_error("collection failure: relation word not in lower subgroup");
    }
};

} // namespace

Elem FiniteGroup::from_exponents(const std::vector<std::uint32_t>& e) const
{
    const auto& rel = pc_->rel;
    std::size_t idx = 0;
    for (std::size_t i = 0; i < rel.size(); ++i) idx = idx * rel[i] + (e[i] % rel[i]);
    return static_cast<Elem>(idx);
}

std::shared_ptr<const FiniteGroup> FiniteGroup::from_pc(const PcPresentation& pc, std::string name)
{
    std::size_t n = 1;
    for (auto r : pc.rel) {
        n *= r;
        if (n > max_order) throw InvalidGroupSpec("group order exceeds table limit");
    }
    const std::size_t k = pc.size();
    std::shared_ptr<FiniteGroup> g(new FiniteGroup());
    g->n_ = n;
    g->name_ = std::move(name);
    g->pc_ = pc;
    g->exps_.assign(n, std::vector<std::uint32_t>(k, 0));
    for (std::size_t a = 0; a < n; ++a) {
        std::size_t x = a;
        for (std::size_t i = k; i-- > 0;) {
            g->exps_[a][i] = static_cast<std::uint32_t>(x % pc.rel[i]);
            x /= pc.rel[i];
        }
    }
    Collector col{pc};
    std::vector<std::vector<Elem>> right(k, std::vector<Elem>(n));
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t a = 0; a < n; ++a) {
            auto e = g->exps_[a];
            col.mul_gen(e, i);
            right[i][a] = g->from_exponents(e);
        }
    auto apply_word = [&](Elem a, const std::vector<std::uint32_t>& w) {
        for (std::size_t j = 0; j < k; ++j)
            for (std::uint32_t t = 0; t < w[j]; ++t) a = right[j][a];
        return a;
    };
    // Consistency: right multiplications must satisfy every relation as permutations.
    for (std::size_t i = 0; i < k; ++i) {
        std::vector<bool> hit(n, false);
        for (std::size_t a = 0; a < n; ++a) hit[right[i][a]] = true;
        if (std::find(hit.begin(), hit.end(), false) != hit.end())
            throw std::runtime_error("collection failure: generator action not bijective");
        for (std::size_t a = 0; a < n; ++a) {
            Elem x = static_cast<Elem>(a);
            for (std::uint32_t t = 0; t < pc.rel[i]; ++t) x = right[i][x];
            if (x != apply_word(static_cast<Elem>(a), pc.power[i]))
                throw std::runtime_error("collection failure: power relation violated (inconsistent presentation)");
            for (std::size_t j = i + 1; j < k; ++j) {
                Elem lhs = right[i][right[j][a]];
                Elem rhs = apply_word(right[i][a], pc.conj[i][j]);
                if (lhs != rhs)
                    throw std::runtime_error(
                        "collection failure: conjugate relation violated (inconsistent presentation)");
            }
        }
    }
    g->table_.resize(n * n);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) g->table_[a * n + b] = apply_word(static_cast<Elem>(a), g->exps_[b]);
    for (std::size_t i = 0; i < k; ++i) {
        std::vector<std::uint32_t> e(k, 0);
        e[i] = 1;
        g->pc_gens_.push_back(g->from_exponents(e));
    }
    g->gens_ = g->pc_gens_;
    g->finish(0x5eed);
    return g;
}

std::shared_ptr<const FiniteGroup> FiniteGroup::from_table(std::vector<Elem> table, std::size_t order,
                                                           std::vector<Elem> generators, std::string name)
{
    if (order > max_order) throw InvalidGroupSpec("group order exceeds table limit");
    if (table.size() != order * order) throw InvalidGroupSpec("table size mismatch");
    std::shared_ptr<FiniteGroup> g(new FiniteGroup());
    g->n_ = order;
    g->table_ = std::move(table);
    g->gens_ = std::move(generators);
    g->name_ = std::move(name);
    for (std::size_t a = 0; a < order; ++a)
        if (g->mul(0, static_cast<Elem>(a)) != a || g->mul(static_cast<Elem>(a), 0) != a)
            throw std::runtime_error("element 0 is not the identity");
    g->finish(0x5eed);
    return g;
}

void FiniteGroup::finish(std::uint64_t spot_seed)
{
    inv_.assign(n_, 0);
    for (std::size_t a = 0; a < n_; ++a) {
        bool found = false;
        for (std::size_t b = 0; b < n_; ++b)
            if (table_[a * n_ + b] == 0) {
                inv_[a] = static_cast<Elem>(b);
                found = true;
                break;
            }
        if (!found) throw std::runtime_error("group table has no inverse");
    }
    std::mt19937_64 rng(spot_seed);
    std::uniform_int_distribution<std::size_t> pick(0, n_ - 1);
    for (int t = 0; t < 2000; ++t) {
        Elem a = static_cast<Elem>(pick(rng)), b = static_cast<Elem>(pick(rng)), c = static_cast<Elem>(pick(rng));
        if (mul(mul(a, b), c) != mul(a, mul(b, c))) throw std::runtime_error("group table not associative");
    }
    // generators must generate
    std::vector<bool> seen(n_, false);
    std::vector<Elem> q{0};
    seen[0] = true;
    for (std::size_t h = 0; h < q.size(); ++h)
        for (Elem s : gens_) {
            Elem x = mul(q[h], s);
            if (!seen[x]) seen[x] = true, q.push_back(x);
        }
    if (q.size() != n_) throw std::runtime_error("generators do not generate the group");
}

Elem FiniteGroup::power(Elem a, std::uint64_t e) const
{
    Elem r = 0;
    for (std::uint64_t i = 0; i < e; ++i) r = mul(r, a);
    return r;
}

std::uint32_t FiniteGroup::element_order(Elem a) const
{
    std::uint32_t k = 1;
    Elem x = a;
    while (x != 0) x = mul(x, a), ++k;
    return k;
}

std::uint32_t FiniteGroup::exponent() const
{
    std::uint64_t e = 1;
    for (std::size_t a = 0; a < n_; ++a) e = std::lcm(e, static_cast<std::uint64_t>(element_order(static_cast<Elem>(a))));
    return static_cast<std::uint32_t>(e);
}

std::uint64_t FiniteGroup::hash() const
{
    std::uint64_t h = 1469598103934665603ull;
    auto mix = [&](std::uint64_t v) {
        for (int i = 0; i < 8; ++i) {
            h ^= (v >> (8 * i)) & 0xff;
            h *= 1099511628211ull;
        }
    };
    mix(n_);
    for (Elem e : table_) mix(e);
    return h;
}

std::string FiniteGroup::describe(Elem a) const
{
    if (!pc_) return "#" + std::to_string(a);
    std::ostringstream os;
    bool any = false;
    for (std::size_t i = 0; i < pc_->size(); ++i)
        if (exps_[a][i]) {
            os << pc_->names[i];
            if (exps_[a][i] > 1) os << '^' << exps_[a][i];
            any = true;
        }
    return any ? os.str() : "1";
}

// ---------------------------------------------------------------- subgroups

bool Subgroup::contains(Elem g) const { return pos_.at(g) >= 0; }
Elem Subgroup::coset_rep(Elem g) const { return rep_of_.at(g); }
std::size_t Subgroup::position(Elem g) const
{
    if (pos_.at(g) < 0) throw std::out_of_range("element not in subgroup");
    return static_cast<std::size_t>(pos_[g]);
}

Subgroup subgroup_closure(const GroupPtr& g, const std::vector<Elem>& gens)
{
    Subgroup h;
    h.parent = g;
    h.generators = gens;
    const std::size_t n = g->order();
    std::vector<bool> in(n, false);
    std::vector<Elem> q{0};
    in[0] = true;
    for (std::size_t i = 0; i < q.size(); ++i)
        for (Elem s : gens) {
            if (s >= n) throw std::out_of_range("subgroup generator out of range");
            Elem x = g->mul(q[i], s);
            if (!in[x]) in[x] = true, q.push_back(x);
        }
    std::sort(q.begin(), q.end());
    h.members = q;
    if (n % h.members.size() != 0) throw std::logic_error("Lagrange violated");
    h.pos_.assign(n, -1);
    for (std::size_t i = 0; i < q.size(); ++i) h.pos_[q[i]] = static_cast<std::int32_t>(i);
    h.rep_of_.assign(n, static_cast<Elem>(n));
    for (Elem a = 0; a < n; ++a) {
        if (h.rep_of_[a] != n) continue;
        h.transversal.push_back(a);
        for (Elem m : h.members) h.rep_of_[g->mul(a, m)] = a;
    }
    return h;
}

GroupPtr subgroup_as_group(const Subgroup& h, std::string name)
{
    const auto& g = *h.parent;
    std::size_t m = h.order();
    std::vector<Elem> table(m * m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
            table[i * m + j] = static_cast<Elem>(h.position(g.mul(h.members[i], h.members[j])));
    std::vector<Elem> gens;
    for (Elem s : h.generators)
        if (s != 0) gens.push_back(static_cast<Elem>(h.position(s)));
    return FiniteGroup::from_table(std::move(table), m, std::move(gens), std::move(name));
}

std::vector<std::vector<Elem>> conjugacy_classes(const FiniteGroup& g)
{
    const std::size_t n = g.order();
    std::vector<bool> seen(n, false);
    std::vector<std::vector<Elem>> classes;
    for (Elem a = 0; a < n; ++a) {
        if (seen[a]) continue;
        std::set<Elem> cls;
        for (Elem x = 0; x < n; ++x) cls.insert(g.conj(a, x));
        for (Elem c : cls) seen[c] = true;
        classes.emplace_back(cls.begin(), cls.end());
    }
    return classes;
}

std::pair<Subgroup, Subgroup> center_and_derived(const GroupPtr& g)
{
    const std::size_t n = g->order();
    std::vector<Elem> center;
    for (Elem a = 0; a < n; ++a) {
        bool central = true;
        for (Elem s : g->generators())
            if (g->mul(a, s) != g->mul(s, a)) {
                central = false;
                break;
            }
        if (central) center.push_back(a);
    }
    std::set<Elem> comms;
    for (Elem a = 0; a < n; ++a)
        for (Elem b = 0; b < n; ++b) comms.insert(g->mul(g->mul(g->inv(a), g->inv(b)), g->mul(a, b)));
    return {subgroup_closure(g, center), subgroup_closure(g, std::vector<Elem>(comms.begin(), comms.end()))};
}

std::vector<Subgroup> order_p_subgroup_classes(const GroupPtr& g, std::uint32_t p)
{
    const std::size_t n = g->order();
    if (p < 2 || n % p != 0) throw std::invalid_argument("p does not divide |G|");
    // subgroup of order p identified by its least non-identity element
    std::vector<Elem> label(n, 0);
    std::vector<Elem> subs;
    for (Elem a = 1; a < n; ++a) {
        if (g->element_order(a) != p || label[a]) continue;
        Elem x = a;
        for (std::uint32_t k = 1; k < p; ++k, x = g->mul(x, a)) label[x] = a;
        subs.push_back(a);
    }
    std::vector<bool> done(n, false);
    std::vector<Subgroup> reps;
    for (Elem s : subs) {
        if (done[s]) continue;
        for (Elem x = 0; x < n; ++x) done[label[g->conj(s, x)]] = true;
        reps.push_back(subgroup_closure(g, {s}));
    }
    return reps;
}

std::vector<Subgroup> all_subgroups(const GroupPtr& g)
{
    const std::size_t n = g->order();
    if (n > 200) throw std::invalid_argument("subgroup enumeration capped at |G| <= 200");
    std::map<std::vector<Elem>, std::size_t> known;
    std::vector<Subgroup> list;
    auto add = [&](Subgroup h) {
        if (known.count(h.members)) return;
        known.emplace(h.members, list.size());
        list.push_back(std::move(h));
    };
    add(subgroup_closure(g, {}));
    for (std::size_t i = 0; i < list.size(); ++i) {
        std::vector<bool> covered(n, false);
        for (Elem m : list[i].members) covered[m] = true;
        for (Elem a = 1; a < n; ++a) {
            if (covered[a]) continue;
            auto gens = list[i].generators;
            gens.push_back(a);
            Subgroup k = subgroup_closure(g, gens);
            for (Elem m : k.members) covered[m] = true;
            add(std::move(k));
        }
    }
    std::stable_sort(list.begin(), list.end(), [](const Subgroup& a, const Subgroup& b) {
        return a.order() != b.order() ? a.order() < b.order() : a.members < b.members;
    });
    return list;
}

// ---------------------------------------------------------------- families

namespace {

std::uint32_t ipow(std::uint32_t b, std::uint32_t e)
{
    std::uint64_t r = 1;
    for (std::uint32_t i = 0; i < e; ++i) {
        r *= b;
        if (r > FiniteGroup::max_order * 16ull) throw InvalidGroupSpec("parameter too large");
    }
    return static_cast<std::uint32_t>(r);
}

void require_odd_prime(std::uint32_t p)
{
    if (p < 3 || !is_prime(p)) throw InvalidGroupSpec("p must be an odd prime");
}

using Mat = std::vector<std::vector<std::uint32_t>>;

Mat mat_mul(const Mat& a, const Mat& b, std::uint32_t p)
{
    std::size_t n = a.size();
    Mat c(n, std::vector<std::uint32_t>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k)
            if (a[i][k])
                for (std::size_t j = 0; j < n; ++j) c[i][j] = (c[i][j] + a[i][k] * b[k][j]) % p;
    return c;
}

Mat identity(std::size_t n)
{
    Mat m(n, std::vector<std::uint32_t>(n, 0));
    for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

// polynomial mult mod f (monic, degree n, coefficients low..high excluding leading 1)
std::vector<std::uint32_t> polymulmod(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b,
                                      const std::vector<std::uint32_t>& f, std::uint32_t p)
{
    std::size_t n = f.size();
    std::vector<std::uint64_t> c(2 * n, 0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) c[i + j] = (c[i + j] + static_cast<std::uint64_t>(a[i]) * b[j]) % p;
    for (std::size_t d = 2 * n - 1; d >= n; --d) {
        std::uint64_t co = c[d] % p;
        if (!co) continue;
        c[d] = 0;
        for (std::size_t i = 0; i < n; ++i) c[d - n + i] = (c[d - n + i] + (p - co) * f[i]) % p;
    }
    std::vector<std::uint32_t> r(n);
    for (std::size_t i = 0; i < n; ++i) r[i] = static_cast<std::uint32_t>(c[i]);
    return r;
}

std::vector<std::uint32_t> polypow(std::vector<std::uint32_t> b, std::uint64_t e, const std::vector<std::uint32_t>& f,
                                   std::uint32_t p)
{
    std::vector<std::uint32_t> r(f.size(), 0);
    r[0] = 1;
    while (e) {
        if (e & 1) r = polymulmod(r, b, f, p);
        b = polymulmod(b, b, f, p);
        e >>= 1;
    }
    return r;
}

} // namespace

Mat singer_matrix(std::uint32_t p, std::uint32_t n)
{
    if (!is_prime(p) || n < 1) throw InvalidGroupSpec("singer_matrix: bad parameters");
    std::uint64_t q = 1;
    for (std::uint32_t i = 0; i < n; ++i) q *= p;
    std::uint64_t ord = q - 1;
    std::vector<std::uint64_t> primes;
    std::uint64_t t = ord;
    for (std::uint64_t d = 2; d * d <= t; ++d)
        if (t % d == 0) {
            primes.push_back(d);
            while (t % d == 0) t /= d;
        }
    if (t > 1) primes.push_back(t);
    std::vector<std::uint32_t> f(n, 0), one(n, 0);
    one[0] = 1;
    for (std::uint64_t code = 0; code < q; ++code) {
        std::uint64_t c = code;
        for (std::uint32_t i = 0; i < n; ++i) f[i] = static_cast<std::uint32_t>(c % p), c /= p;
        if (f[0] == 0) continue;
        std::vector<std::uint32_t> x(n, 0);
        if (n == 1) x[0] = (p - f[0]) % p; // x = -f0 mod (x + f0)
        else x[1] = 1;
        if (polypow(x, ord, f, p) != one) continue;
        bool prim = true;
        for (auto r : primes)
            if (polypow(x, ord / r, f, p) == one) {
                prim = false;
                break;
            }
        if (!prim) continue;
        Mat m(n, std::vector<std::uint32_t>(n, 0));
        for (std::uint32_t j = 0; j + 1 < n; ++j) m[j + 1][j] = 1;
        for (std::uint32_t i = 0; i < n; ++i) m[i][n - 1] = (p - f[i]) % p;
        return m;
    }
    throw std::runtime_error("no primitive polynomial found");
}

GroupPtr cyclic_group(std::uint32_t m)
{
    if (m < 1) throw InvalidGroupSpec("cyclic order must be positive");
    if (m == 1) return FiniteGroup::from_table({0}, 1, {}, "C1");
    PcPresentation pc({m}, {"A"});
    return FiniteGroup::from_pc(pc, "C" + std::to_string(m));
}

GroupPtr direct_product(const GroupPtr& a, const GroupPtr& b)
{
    std::string name = a->name() + "x" + b->name();
    if (a->has_pc() && b->has_pc()) {
        const auto& pa = a->pc();
        const auto& pb = b->pc();
        std::size_t ka = pa.size(), kb = pb.size(), k = ka + kb;
        std::vector<std::uint32_t> rel = pa.rel;
        rel.insert(rel.end(), pb.rel.begin(), pb.rel.end());
        std::vector<std::string> names = pa.names;
        for (const auto& s : pb.names) names.push_back(s + "'");
        PcPresentation pc(rel, names);
        auto embed = [&](const std::vector<std::uint32_t>& w, std::size_t off) {
            std::vector<std::uint32_t> r(k, 0);
            for (std::size_t i = 0; i < w.size(); ++i) r[off + i] = w[i];
            return r;
        };
        for (std::size_t i = 0; i < ka; ++i) {
            pc.set_power(i, embed(pa.power[i], 0));
            for (std::size_t j = i + 1; j < ka; ++j) pc.set_conj(i, j, embed(pa.conj[i][j], 0));
        }
        for (std::size_t i = 0; i < kb; ++i) {
            pc.set_power(ka + i, embed(pb.power[i], ka));
            for (std::size_t j = i + 1; j < kb; ++j) pc.set_conj(ka + i, ka + j, embed(pb.conj[i][j], ka));
        }
        return FiniteGroup::from_pc(pc, name);
    }
    std::size_t na = a->order(), nb = b->order(), n = na * nb;
    if (n > FiniteGroup::max_order) throw InvalidGroupSpec("group order exceeds table limit");
    std::vector<Elem> table(n * n);
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
            table[x * n + y] = static_cast<Elem>(a->mul(static_cast<Elem>(x / nb), static_cast<Elem>(y / nb)) * nb +
                                                 b->mul(static_cast<Elem>(x % nb), static_cast<Elem>(y % nb)));
    std::vector<Elem> gens;
    for (Elem s : a->generators()) gens.push_back(static_cast<Elem>(s * nb));
    for (Elem s : b->generators()) gens.push_back(s);
    return FiniteGroup::from_table(std::move(table), n, std::move(gens), name);
}

GroupPtr p_group_P(std::uint32_t n, std::uint32_t p)
{
    require_odd_prime(p);
    if (n < 3) throw InvalidGroupSpec("P(n) requires n >= 3");
    std::uint32_t oc = ipow(p, n - 2), z = ipow(p, n - 3);
    PcPresentation pc({p, p, oc}, {"A", "B", "C"});
    // [A,B] = C^z, so B^A = B C^{-z}
    pc.set_conj(0, 1, {0, 1, (oc - z) % oc});
    return FiniteGroup::from_pc(pc, n == 3 ? "P2(" + std::to_string(p) + ")"
                                           : "P(" + std::to_string(n) + "," + std::to_string(p) + ")");
}

GroupPtr p_group_M(std::uint32_t n, std::uint32_t p)
{
    require_odd_prime(p);
    if (n < 3) throw InvalidGroupSpec("M(n) requires n >= 3");
    std::uint32_t ob = ipow(p, n - 1), z = ipow(p, n - 2);
    PcPresentation pc({p, ob}, {"A", "B"});
    // [B,A] = B^z, so B^A = B^{1+z}
    pc.set_conj(0, 1, {0, (1 + z) % ob});
    return FiniteGroup::from_pc(pc, "M(" + std::to_string(n) + "," + std::to_string(p) + ")");
}

GroupPtr p_group_B(std::uint32_t n, int epsilon, std::uint32_t p)
{
    require_odd_prime(p);
    if (n < 4) throw InvalidGroupSpec("B(n,e) requires n >= 4");
    int e = ((epsilon % static_cast<int>(p)) + static_cast<int>(p)) % static_cast<int>(p);
    if (e == 0) throw InvalidGroupSpec("epsilon must be a unit mod p");
    std::uint32_t oc = ipow(p, n - 2), z = ipow(p, n - 3);
    PcPresentation pc({p, p, oc}, {"A", "B", "C"});
    // [B,A] = C^{e z}: B^A = B C^{e z};  [A,C^{-1}] = B: C^A = B C
    pc.set_conj(0, 1, {0, 1, static_cast<std::uint32_t>((static_cast<std::uint64_t>(e) * z) % oc)});
    pc.set_conj(0, 2, {0, 1, 1});
    return FiniteGroup::from_pc(pc, "B(" + std::to_string(n) + "," + std::to_string(epsilon) + "," +
                                        std::to_string(p) + ")");
}

GroupPtr p_group_G_a1(std::uint32_t a, std::uint32_t p)
{
    require_odd_prime(p);
    if (a < 1) throw InvalidGroupSpec("G(a,1) requires a >= 1");
    PcPresentation pc({ipow(p, a), p, p}, {"A", "B", "C"});
    pc.set_conj(0, 1, {0, 1, p - 1}); // [A,B] = C
    return FiniteGroup::from_pc(pc, "G(" + std::to_string(a) + ",1," + std::to_string(p) + ")");
}

GroupPtr elementary_semidirect(std::uint32_t p, std::uint32_t n, std::vector<Mat> matrices)
{
    if (!is_prime(p) || n < 1) throw InvalidGroupSpec("semidirect: bad parameters");
    if (matrices.empty()) matrices.push_back(singer_matrix(p, n));
    for (auto& m : matrices) {
        if (m.size() != n) throw InvalidGroupSpec("semidirect: matrix size mismatch");
        for (auto& row : m) {
            if (row.size() != n) throw InvalidGroupSpec("semidirect: matrix size mismatch");
            for (auto& x : row) x %= p;
        }
    }
    // closure of the matrix group (BFS, deterministic)
    std::vector<Mat> q{identity(n)};
    std::map<Mat, std::size_t> idx{{q[0], 0}};
    for (std::size_t i = 0; i < q.size(); ++i)
        for (const auto& m : matrices) {
            Mat x = mat_mul(q[i], m, p);
            if (!idx.count(x)) {
                idx.emplace(x, q.size());
                q.push_back(x);
                if (q.size() > FiniteGroup::max_order) throw InvalidGroupSpec("matrix group too large");
            }
        }
    std::string name = "C" + std::to_string(p) + "^" + std::to_string(n) + ":" + std::to_string(q.size());
    if (matrices.size() == 1) {
        // cyclic top: pc generators t, e_1..e_n with e_j^t = M e_j
        std::vector<std::uint32_t> rel{static_cast<std::uint32_t>(q.size())};
        std::vector<std::string> names{"t"};
        for (std::uint32_t i = 0; i < n; ++i) rel.push_back(p), names.push_back("e" + std::to_string(i + 1));
        PcPresentation pc(rel, names);
        for (std::uint32_t j = 0; j < n; ++j) {
            std::vector<std::uint32_t> w(n + 1, 0);
            for (std::uint32_t i = 0; i < n; ++i) w[1 + i] = matrices[0][i][j];
            pc.set_conj(0, 1 + j, w);
        }
        return FiniteGroup::from_pc(pc, name);
    }
    // general: pairs (A, v) with (A,v)(B,w) = (BA, Bv + w)
    std::size_t pn = 1;
    for (std::uint32_t i = 0; i < n; ++i) pn *= p;
    std::size_t N = q.size() * pn;
    if (N > FiniteGroup::max_order) throw InvalidGroupSpec("group order exceeds table limit");
    auto vec_of = [&](std::size_t c) {
        std::vector<std::uint32_t> v(n);
        for (std::uint32_t i = n; i-- > 0;) v[i] = static_cast<std::uint32_t>(c % p), c /= p;
        return v;
    };
    auto code_of = [&](const std::vector<std::uint32_t>& v) {
        std::size_t c = 0;
        for (auto x : v) c = c * p + x;
        return c;
    };
    std::vector<Elem> table(N * N);
    for (std::size_t x = 0; x < N; ++x)
        for (std::size_t y = 0; y < N; ++y) {
            const Mat& A = q[x / pn];
            const Mat& B = q[y / pn];
            auto v = vec_of(x % pn), w = vec_of(y % pn);
            std::vector<std::uint32_t> r(n, 0);
            for (std::uint32_t i = 0; i < n; ++i) {
                std::uint64_t s = w[i];
                for (std::uint32_t j = 0; j < n; ++j) s += static_cast<std::uint64_t>(B[i][j]) * v[j];
                r[i] = static_cast<std::uint32_t>(s % p);
            }
            table[x * N + y] = static_cast<Elem>(idx.at(mat_mul(B, A, p)) * pn + code_of(r));
        }
    std::vector<Elem> gens;
    for (const auto& m : matrices) gens.push_back(static_cast<Elem>(idx.at(m) * pn));
    for (std::uint32_t i = 0; i < n; ++i) {
        std::vector<std::uint32_t> e(n, 0);
        e[i] = 1;
        gens.push_back(static_cast<Elem>(code_of(e)));
    }
    return FiniteGroup::from_table(std::move(table), N, std::move(gens), name);
}

GroupPtr build_group(const GroupSpec& s)
{
    const std::string& f = s.family;
    if (f == "cyclic") return cyclic_group(s.m ? s.m : s.n);
    if (f == "product") {
        if (s.factors.empty()) throw InvalidGroupSpec("product needs factors");
        GroupPtr g = build_group(s.factors[0]);
        for (std::size_t i = 1; i < s.factors.size(); ++i) g = direct_product(g, build_group(s.factors[i]));
        return g;
    }
    if (f == "P") return p_group_P(s.n, s.p);
    if (f == "P2") return p_group_P(3, s.p);
    if (f == "M") return p_group_M(s.n, s.p);
    if (f == "B") return p_group_B(s.n, s.epsilon, s.p);
    if (f == "G_a1") return p_group_G_a1(s.a, s.p);
    if (f == "semidirect") return elementary_semidirect(s.p, s.n, s.matrices);
    throw InvalidGroupSpec("unknown group family '" + f + "'");
}

} // namespace coho
