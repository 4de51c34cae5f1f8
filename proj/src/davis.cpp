#include "cohomolab/davis.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace coho {

namespace {

void check_simplex(const Simplex& s, std::uint32_t l)
{
    if (s.empty()) throw DavisError("empty simplex");
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] >= l) throw DavisError("vertex out of range");
        if (i && s[i] <= s[i - 1]) throw DavisError("simplex vertices must be strictly increasing");
    }
}

Simplex sorted(Simplex s)
{
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    return s;
}

} // namespace

SimplicialComplex SimplicialComplex::from_facets(std::uint32_t vertices, const std::vector<Simplex>& facets)
{
    std::vector<std::set<Simplex>> acc;
    for (const auto& raw : facets) {
        Simplex f = sorted(raw);
        check_simplex(f, vertices);
        if (f.size() > 24) throw DavisError("simplex too large");
        if (acc.size() < f.size()) acc.resize(f.size());
        const std::uint32_t n = static_cast<std::uint32_t>(f.size());
        for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
            Simplex s;
            for (std::uint32_t i = 0; i < n; ++i)
                if (mask >> i & 1) s.push_back(f[i]);
            acc[s.size() - 1].insert(std::move(s));
        }
    }
    SimplicialComplex k;
    k.l_ = vertices;
    for (auto& st : acc) k.cells_.emplace_back(st.begin(), st.end());
    return k;
}

SimplicialComplex SimplicialComplex::simplex(std::uint32_t vertices)
{
    Simplex f(vertices);
    std::iota(f.begin(), f.end(), 0u);
    return from_facets(vertices, {f});
}

SimplicialComplex SimplicialComplex::boundary_of_simplex(std::uint32_t dim)
{
    std::vector<Simplex> facets;
    for (std::uint32_t skip = 0; skip <= dim; ++skip) {
        Simplex f;
        for (std::uint32_t v = 0; v <= dim; ++v)
            if (v != skip) f.push_back(v);
        facets.push_back(f);
    }
    return from_facets(dim + 1, facets);
}

SimplicialComplex SimplicialComplex::discrete(std::uint32_t vertices)
{
    std::vector<Simplex> facets;
    for (std::uint32_t v = 0; v < vertices; ++v) facets.push_back({v});
    return from_facets(vertices, facets);
}

const std::vector<Simplex>& SimplicialComplex::cells(int d) const
{
    static const std::vector<Simplex> none;
    if (d < 0 || d >= static_cast<int>(cells_.size())) return none;
    return cells_[d];
}

std::vector<std::size_t> SimplicialComplex::f_vector() const
{
    std::vector<std::size_t> f;
    for (const auto& c : cells_) f.push_back(c.size());
    return f;
}

std::size_t SimplicialComplex::size() const
{
    std::size_t n = 0;
    for (const auto& c : cells_) n += c.size();
    return n;
}

bool SimplicialComplex::contains(const Simplex& s) const
{
    if (s.empty() || s.size() > cells_.size()) return false;
    return std::binary_search(cells_[s.size() - 1].begin(), cells_[s.size() - 1].end(), s);
}

std::size_t SimplicialComplex::index(const Simplex& s) const
{
    if (!contains(s)) throw DavisError("simplex not in complex");
    const auto& c = cells_[s.size() - 1];
    return static_cast<std::size_t>(std::lower_bound(c.begin(), c.end(), s) - c.begin());
}

std::vector<Simplex> SimplicialComplex::facets() const
{
    std::vector<Simplex> out;
    for (int d = 0; d <= dimension(); ++d)
        for (const auto& s : cells_[d]) {
            bool maximal = true;
            if (d + 1 <= dimension())
                for (std::uint32_t v = 0; v < l_ && maximal; ++v) {
                    if (std::binary_search(s.begin(), s.end(), v)) continue;
                    Simplex t = s;
                    t.insert(std::upper_bound(t.begin(), t.end(), v), v);
                    if (contains(t)) maximal = false;
                }
            if (maximal) out.push_back(s);
        }
    return out;
}

bool SimplicialComplex::adjacent(std::uint32_t a, std::uint32_t b) const
{
    if (a == b) return false;
    return contains({std::min(a, b), std::max(a, b)});
}

std::vector<std::vector<std::uint32_t>> SimplicialComplex::neighbours() const
{
    std::vector<std::vector<std::uint32_t>> nb(l_);
    for (const auto& e : cells(1)) {
        nb[e[0]].push_back(e[1]);
        nb[e[1]].push_back(e[0]);
    }
    for (auto& v : nb) std::sort(v.begin(), v.end());
    return nb;
}

std::int64_t SimplicialComplex::euler_characteristic() const
{
    std::int64_t chi = 0;
    for (std::size_t d = 0; d < cells_.size(); ++d)
        chi += (d % 2 ? -1 : 1) * static_cast<std::int64_t>(cells_[d].size());
    return chi;
}

std::optional<Simplex> SimplicialComplex::fullness_witness() const
{
    // Every clique has its prefix as a clique, so it suffices to extend simplices.
    auto nb = neighbours();
    for (const auto& layer : cells_)
        for (const auto& s : layer) {
            const auto& cand = nb[s.back()];
            for (auto it = std::upper_bound(cand.begin(), cand.end(), s.back()); it != cand.end(); ++it) {
                bool clique = true;
                for (std::size_t i = 0; i + 1 < s.size() && clique; ++i)
                    clique = std::binary_search(nb[s[i]].begin(), nb[s[i]].end(), *it);
                if (!clique) continue;
                Simplex t = s;
                t.push_back(*it);
                if (!contains(t)) return t;
            }
        }
    return std::nullopt;
}

SimplicialComplex barycentric_subdivision(const SimplicialComplex& k)
{
    // New vertices: all simplices of k, ordered by dimension then lexicographically.
    std::vector<std::size_t> offset(k.dimension() + 2, 0);
    for (int d = 0; d <= k.dimension(); ++d) offset[d + 1] = offset[d] + k.cells(d).size();
    auto id = [&](const Simplex& s) { return static_cast<std::uint32_t>(offset[s.size() - 1] + k.index(s)); };

    std::vector<Simplex> facets;
    for (auto f : k.facets()) {
        std::sort(f.begin(), f.end());
        do {
            Simplex chain, face;
            for (auto v : f) {
                face.insert(std::upper_bound(face.begin(), face.end(), v), v);
                chain.push_back(id(face));
            }
            facets.push_back(chain);
        } while (std::next_permutation(f.begin(), f.end()));
    }
    const auto total = static_cast<std::uint32_t>(offset.back());
    auto out = SimplicialComplex::from_facets(total, facets);
    std::vector<std::uint32_t> dims(total);
    for (int d = 0; d <= k.dimension(); ++d)
        for (std::size_t i = offset[d]; i < offset[d + 1]; ++i) dims[i] = static_cast<std::uint32_t>(d);
    out.set_origin_dimension(std::move(dims));
    return out;
}

SimplicialComplex link(const SimplicialComplex& k, const Simplex& raw)
{
    Simplex s = sorted(raw);
    if (!k.contains(s)) throw DavisError("link: simplex not in complex");
    std::vector<Simplex> faces;
    std::set<std::uint32_t> verts;
    for (int d = 0; d <= k.dimension(); ++d)
        for (const auto& t : k.cells(d)) {
            if (std::find_first_of(t.begin(), t.end(), s.begin(), s.end()) != t.end()) continue;
            Simplex u = t;
            u.insert(u.end(), s.begin(), s.end());
            if (!k.contains(sorted(u))) continue;
            faces.push_back(t);
            verts.insert(t.begin(), t.end());
        }
    std::map<std::uint32_t, std::uint32_t> relabel;
    for (auto v : verts) relabel.emplace(v, static_cast<std::uint32_t>(relabel.size()));
    for (auto& t : faces)
        for (auto& v : t) v = relabel.at(v);
    return SimplicialComplex::from_facets(static_cast<std::uint32_t>(relabel.size()), faces);
}

// ---------------------------------------------------------------- homology

Integer HomologyGroup::exponent() const
{
    Integer e = 1;
    for (const auto& t : torsion) mpz_lcm(e.get_mpz_t(), e.get_mpz_t(), t.get_mpz_t());
    return e;
}

std::string HomologyGroup::str() const
{
    std::ostringstream os;
    bool first = true;
    if (rank) {
        os << "Z";
        if (rank > 1) os << "^" << rank;
        first = false;
    }
    for (const auto& t : torsion) {
        os << (first ? "" : "+") << "Z/" << t.get_str();
        first = false;
    }
    if (first) os << "0";
    return os.str();
}

namespace {

MatrixZ boundary_matrix(const SimplicialComplex& k, int d)
{
    const auto& rows = k.cells(d - 1);
    const auto& cols = k.cells(d);
    MatrixZ m(rows.size(), cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j)
        for (std::size_t i = 0; i < cols[j].size(); ++i) {
            Simplex face = cols[j];
            face.erase(face.begin() + static_cast<std::ptrdiff_t>(i));
            m.add(k.index(face), j, Integer(i % 2 ? -1 : 1));
        }
    m.finalize();
    return m;
}

} // namespace

std::vector<HomologyGroup> homology(const SimplicialComplex& k)
{
    const int dim = k.dimension();
    if (dim < 0) return {};
    std::vector<SmithReport> snf(dim + 2);
    for (int d = 1; d <= dim; ++d) snf[d] = smith_normal_form(boundary_matrix(k, d));
    std::vector<HomologyGroup> h(dim + 1);
    for (int d = 0; d <= dim; ++d) {
        const std::size_t n = k.cells(d).size();
        h[d].rank = n - snf[d].rank - snf[d + 1].rank;
        h[d].torsion = snf[d + 1].torsion();
    }
    return h;
}

HomologyGroup cohomology_degree(const std::vector<HomologyGroup>& h, unsigned n)
{
    HomologyGroup out;
    if (n < h.size()) out.rank = h[n].rank;
    if (n >= 1 && n - 1 < h.size()) out.torsion = h[n - 1].torsion;
    return out;
}

HomologyGroup cohomology_degree(const SimplicialComplex& k, unsigned n)
{
    return cohomology_degree(homology(k), n);
}

// ---------------------------------------------------------------- Moore space

namespace {

struct Disc {
    std::vector<Simplex> triangles;  // disc vertex labels
    std::uint32_t vertices = 0;
    std::vector<std::int64_t> qid;   // identified label per disc vertex
};

std::set<Simplex> boundary_edges(const Disc& d)
{
    std::map<Simplex, int> count;
    for (const auto& t : d.triangles)
        for (int skip = 0; skip < 3; ++skip) {
            Simplex e;
            for (int i = 0; i < 3; ++i)
                if (i != skip) e.push_back(t[i]);
            ++count[e];
        }
    std::set<Simplex> out;
    for (const auto& [e, c] : count)
        if (c == 1) out.insert(e);
    return out;
}

// True when the identified triangulation is a simplicial complex with only the intended gluing.
bool clean_identification(const Disc& d)
{
    auto bd = boundary_edges(d);
    std::set<Simplex> tri;
    std::map<Simplex, Simplex> edge_origin;
    for (const auto& t : d.triangles) {
        Simplex img;
        for (auto v : t) img.push_back(static_cast<std::uint32_t>(d.qid[v]));
        img = sorted(img);
        if (img.size() != 3 || !tri.insert(img).second) return false;
        for (int skip = 0; skip < 3; ++skip) {
            Simplex e, ie;
            for (int i = 0; i < 3; ++i)
                if (i != skip) e.push_back(t[i]);
            for (auto v : e) ie.push_back(static_cast<std::uint32_t>(d.qid[v]));
            ie = sorted(ie);
            if (ie.size() != 2) return false;
            auto [it, fresh] = edge_origin.emplace(ie, e);
            if (!fresh && it->second != e && !(bd.count(e) && bd.count(it->second))) return false;
        }
    }
    return true;
}

Disc subdivide(const Disc& d)
{
    auto bd = boundary_edges(d);
    std::set<std::uint32_t> bverts;
    for (const auto& e : bd) bverts.insert(e.begin(), e.end());

    auto cx = SimplicialComplex::from_facets(d.vertices, d.triangles);
    auto sub = barycentric_subdivision(cx);
    std::vector<Simplex> all;
    for (int dd = 0; dd <= cx.dimension(); ++dd)
        for (const auto& s : cx.cells(dd)) all.push_back(s);

    Disc out;
    out.vertices = sub.vertex_count();
    out.triangles = sub.cells(2);
    std::map<Simplex, std::int64_t> intern;
    std::int64_t fresh = 0;
    out.qid.resize(out.vertices);
    for (std::uint32_t v = 0; v < out.vertices; ++v) {
        const auto& s = all[v];
        bool on_boundary = (s.size() == 1 && bverts.count(s[0])) || (s.size() == 2 && bd.count(s));
        if (!on_boundary) {
            out.qid[v] = -1 - fresh++;
            continue;
        }
        Simplex key;
        for (auto u : s) key.push_back(static_cast<std::uint32_t>(d.qid[u]));
        key = sorted(key);
        key.insert(key.begin(), static_cast<std::uint32_t>(s.size()));
        out.qid[v] = intern.emplace(key, static_cast<std::int64_t>(intern.size())).first->second;
    }
    // Interior labels follow the boundary ones.
    const auto nb = static_cast<std::int64_t>(intern.size());
    for (auto& q : out.qid)
        if (q < 0) q = nb + (-1 - q);
    return out;
}

} // namespace

SimplicialComplex moore_complex(std::uint32_t n)
{
    if (n < 2) throw DavisError("moore_complex needs n >= 2");
    // Labels: 0 centre, 1..3n ring, 3n+1..6n boundary.
    const std::uint32_t m = 3 * n;
    Disc d;
    d.vertices = 1 + 2 * m;
    auto ring = [&](std::uint32_t i) { return 1 + i % m; };
    auto bnd = [&](std::uint32_t i) { return 1 + m + i % m; };
    for (std::uint32_t i = 0; i < m; ++i) {
        d.triangles.push_back(sorted({0, ring(i), ring(i + 1)}));
        d.triangles.push_back(sorted({ring(i), ring(i + 1), bnd(i + 1)}));
        d.triangles.push_back(sorted({ring(i), bnd(i), bnd(i + 1)}));
    }
    // Boundary vertex i goes to i mod 3: the n-fold wrap of a 3-cycle.
    d.qid.resize(d.vertices);
    for (std::uint32_t v = 0; v < d.vertices; ++v)
        d.qid[v] = v > m ? static_cast<std::int64_t>((v - 1 - m) % 3) : static_cast<std::int64_t>(3 + v);

    for (int attempt = 0; attempt < 3 && !clean_identification(d); ++attempt) d = subdivide(d);
    if (!clean_identification(d)) throw DavisError("moore_complex: triangulation has repeated faces");

    std::int64_t top = 0;
    for (auto q : d.qid) top = std::max(top, q);
    std::vector<Simplex> facets;
    for (const auto& t : d.triangles) {
        Simplex img;
        for (auto v : t) img.push_back(static_cast<std::uint32_t>(d.qid[v]));
        facets.push_back(sorted(img));
    }
    auto k = SimplicialComplex::from_facets(static_cast<std::uint32_t>(top + 1), facets);

    auto h = homology(k);
    bool ok = h.size() == 3 && h[0] == HomologyGroup{1, {}} && h[1] == HomologyGroup{0, {Integer(n)}} &&
              h[2].is_zero();
    if (!ok) throw DavisError("moore_complex(" + std::to_string(n) + ") failed homology self-check");
    return k;
}

// ---------------------------------------------------------------- RACG and quotient

GraphProduct racg_from_complex(const SimplicialComplex& k)
{
    if (auto w = k.fullness_witness()) {
        std::string s;
        for (auto v : *w) s += (s.empty() ? "" : ",") + std::to_string(v);
        throw DavisError("complex is not full: clique {" + s + "} spans no simplex; subdivide first");
    }
    return GraphProduct{std::vector<std::uint32_t>(k.vertex_count(), 2), k};
}

Coloring greedy_coloring(const SimplicialComplex& k)
{
    auto nb = k.neighbours();
    Coloring c;
    c.method = "greedy";
    c.colour.assign(k.vertex_count(), 0);
    for (std::uint32_t v = 0; v < k.vertex_count(); ++v) {
        std::set<std::uint32_t> used;
        for (auto u : nb[v])
            if (u < v) used.insert(c.colour[u]);
        std::uint32_t col = 0;
        while (used.count(col)) ++col;
        c.colour[v] = col;
        c.k = std::max(c.k, col + 1);
    }
    return c;
}

Coloring torsion_free_coloring(const SimplicialComplex& k)
{
    if (const auto& od = k.origin_dimension()) {
        Coloring c;
        c.method = "dimension";
        c.colour = *od;
        for (auto x : c.colour) c.k = std::max(c.k, x + 1);
        return c;
    }
    return greedy_coloring(k);
}

namespace {

struct Nerve {
    std::vector<Simplex> spherical; // index 0 is the empty set
    std::map<Simplex, std::size_t> index;
};

Nerve nerve_of(const SimplicialComplex& k)
{
    Nerve n;
    n.spherical.push_back({});
    for (int d = 0; d <= k.dimension(); ++d)
        for (const auto& s : k.cells(d)) n.spherical.push_back(s);
    for (std::size_t i = 0; i < n.spherical.size(); ++i) n.index.emplace(n.spherical[i], i);
    return n;
}

} // namespace

DavisQuotient davis_quotient(const GraphProduct& gp, const Coloring& c)
{
    const auto& k = gp.nerve;
    for (auto o : gp.vertex_orders)
        if (o != 2) throw DavisError("davis_quotient handles right-angled Coxeter groups only");
    if (c.colour.size() != k.vertex_count()) throw DavisError("colouring size mismatch");
    if (c.k > 20) throw DavisError("too many colours");
    for (const auto& e : k.cells(1))
        if (c.colour[e[0]] == c.colour[e[1]]) throw DavisError("colouring is not proper on the 1-skeleton");

    auto nerve = nerve_of(k);
    const std::size_t ns = nerve.spherical.size();
    std::vector<std::uint32_t> cmask(ns, 0);
    for (std::size_t i = 0; i < ns; ++i)
        for (auto v : nerve.spherical[i]) cmask[i] |= 1u << c.colour[v];

    // Vertices (S, x) with x a canonical coset representative: x & cmask(S) == 0.
    std::map<std::pair<std::size_t, std::uint32_t>, std::uint32_t> vid;
    DavisQuotient q;
    const std::uint32_t cosets = 1u << c.k;
    for (std::size_t i = 0; i < ns; ++i)
        for (std::uint32_t x = 0; x < cosets; ++x)
            if ((x & cmask[i]) == 0) {
                vid.emplace(std::make_pair(i, x), static_cast<std::uint32_t>(q.labels.size()));
                q.labels.push_back({i, x});
            }

    std::vector<Simplex> facets;
    for (auto f : k.facets()) {
        std::sort(f.begin(), f.end());
        do {
            std::vector<std::size_t> chain{0};
            Simplex face;
            for (auto v : f) {
                face.insert(std::upper_bound(face.begin(), face.end(), v), v);
                chain.push_back(nerve.index.at(face));
            }
            for (std::uint32_t x = 0; x < cosets; ++x) {
                Simplex s;
                for (auto i : chain) s.push_back(vid.at({i, x & ~cmask[i]}));
                facets.push_back(s);
            }
        } while (std::next_permutation(f.begin(), f.end()));
    }
    // A complex with no vertices still has the cone point over the empty set.
    if (k.vertex_count() == 0)
        for (std::uint32_t x = 0; x < cosets; ++x) facets.push_back({vid.at({0, x})});

    q.source = gp;
    q.coloring = c;
    q.complex = SimplicialComplex::from_facets(static_cast<std::uint32_t>(q.labels.size()), facets);
    q.euler = q.complex.euler_characteristic();

    q.type_counts.assign(ns, 0);
    for (const auto& v : q.complex.cells(0)) ++q.type_counts[q.labels[v[0]].simplex];
    for (std::size_t i = 0; i < ns; ++i)
        if (q.type_counts[i] != (std::size_t{1} << (c.k - nerve.spherical[i].size())))
            throw DavisError("quotient vertex count law violated");

    Rational expect = orbifold_chi(k) * Rational(cosets);
    if (expect != Rational(q.euler)) throw DavisError("quotient Euler characteristic disagrees with orbifold value");
    return q;
}

// ---------------------------------------------------------------- Euler characteristics

Rational chiswell_chi(const SimplicialComplex& k)
{
    Rational sum = 0, w = 1;
    for (auto n : k.f_vector()) {
        sum += Rational(static_cast<unsigned long>(n)) * w;
        w /= -2;
    }
    return 1 - sum / 2;
}

Rational chiswell_chi_printed(const SimplicialComplex& k)
{
    Rational sum = 0, w = 1;
    for (auto n : k.f_vector()) {
        sum += Rational(static_cast<unsigned long>(n)) * w;
        w /= 2;
    }
    return 1 - sum / 2;
}

Rational orbifold_chi(const SimplicialComplex& k)
{
    // g(S) = signed count of chains starting at S = 1 - Σ_{T ⊋ S} g(T).
    auto nerve = nerve_of(k);
    const std::size_t ns = nerve.spherical.size();
    std::vector<std::int64_t> above(ns, 0), g(ns, 0);
    for (std::size_t i = ns; i-- > 0;) {
        g[i] = 1 - above[i];
        const auto& t = nerve.spherical[i];
        const auto sz = static_cast<std::uint32_t>(t.size());
        for (std::uint32_t mask = 0; mask + 1 < (1u << sz); ++mask) {
            Simplex s;
            for (std::uint32_t b = 0; b < sz; ++b)
                if (mask >> b & 1) s.push_back(t[b]);
            above[nerve.index.at(s)] += g[i];
        }
    }
    Rational chi = 0;
    for (std::size_t i = 0; i < ns; ++i) {
        Rational term(g[i]);
        mpz_mul_2exp(term.get_den_mpz_t(), term.get_den_mpz_t(), nerve.spherical[i].size());
        term.canonicalize();
        chi += term;
    }
    return chi;
}

namespace {

EulerReport euler_from(const SimplicialComplex& k, const DavisQuotient& q)
{
    EulerReport r;
    r.n = k.f_vector();
    r.chi_chiswell = chiswell_chi(k);
    r.chi_printed = chiswell_chi_printed(k);
    r.chi_orbifold = orbifold_chi(k);
    r.k = q.coloring.k;
    r.quotient_euler = q.euler;
    r.chi_quotient_over_index = Rational(q.euler) / Rational(std::uint64_t{1} << q.coloring.k);
    return r;
}

} // namespace

EulerReport euler_report(const SimplicialComplex& k)
{
    auto gp = racg_from_complex(k);
    auto q = davis_quotient(gp, torsion_free_coloring(k));
    return euler_from(k, q);
}

BestvinaReport bestvina(std::uint32_t n)
{
    BestvinaReport r;
    r.n = n;
    auto m = moore_complex(n);
    r.moore_homology = homology(m);
    r.moore_certified = true; // moore_complex throws otherwise
    auto kp = barycentric_subdivision(m);
    r.nerve_f_vector = kp.f_vector();
    auto q = davis_quotient(racg_from_complex(kp), torsion_free_coloring(kp));
    r.k = q.coloring.k;
    r.quotient_f_vector = q.complex.f_vector();
    r.quotient_homology = homology(q.complex);
    const auto& h = r.quotient_homology;
    r.h0_is_z = !h.empty() && h[0] == HomologyGroup{1, {}};
    r.high_vanish = true;
    for (std::size_t i = 4; i < h.size(); ++i) r.high_vanish = r.high_vanish && h[i].is_zero();
    r.h3 = cohomology_degree(h, 3);
    r.exponent_divides = Integer(n) % r.h3.exponent() == 0;
    r.rank_h3_zero = h.size() <= 3 || h[3].rank == 0;
    r.euler = euler_from(kp, q);
    return r;
}

} // namespace coho
