// Acceptance runner: one line per criterion, exit 0 iff the failures are exactly the expected ones.

#include <chrono>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>

#include <sys/resource.h>

#include <CLI11.hpp>

#include "checks.hpp"
#include "cohomolab/bar.hpp"
#include "cohomolab/char_chern.hpp"
#include "cohomolab/davis.hpp"
#include "cohomolab/invariant_rings.hpp"
#include "cohomolab/ring_models.hpp"

using namespace coho;

namespace {

struct Outcome {
    bool ok = false;
    std::string detail;
};

struct Criterion {
    int id;
    std::string title;
    double budget_seconds;
    std::function<Outcome()> run;
};

constexpr double kMemoryBudgetMb = 8192;

std::string dims_str(const std::vector<std::size_t>& v)
{
    std::ostringstream s;
    for (std::size_t i = 0; i < v.size(); ++i) s << (i ? "," : "[") << v[i];
    s << "]";
    return s.str();
}

double peak_rss_mb()
{
    rusage u{};
    getrusage(RUSAGE_SELF, &u);
    return u.ru_maxrss / 1024.0;
}

GroupPtr s3() { return elementary_semidirect(3, 1, {{{2}}}); }
GroupPtr c3c3() { return direct_product(cyclic_group(3), cyclic_group(3)); }

Outcome c1()
{
    auto d = cohomology_dims_mod_p(p_group_P(3, 3), 3, 4);
    std::vector<std::size_t> got(d.begin() + 1, d.end());
    return {got == std::vector<std::size_t>{2, 4, 6, 7}, "dims " + dims_str(got)};
}

Outcome c2()
{
    auto g = p_group_G_a1(2, 3);
    std::vector<std::size_t> orders;
    for (unsigned n = 1; n <= 3; ++n) orders.push_back(integral_cohomology(g, n).order().get_ui());
    return {orders == std::vector<std::size_t>{1, 27, 9}, "orders " + dims_str(orders)};
}

Outcome c3()
{
    bool ok = true;
    std::ostringstream s;
    for (std::uint32_t p : {3u, 5u, 7u}) {
        auto y = cohomology_basis(cyclic_group(p), 1, p).at(0);
        auto m = massey(y, y, y);
        bool indet = std::all_of(m.indeterminacy.begin(), m.indeterminacy.end(),
                                 [](const Cochain& c) { return coboundary_preimage(c).has_value(); });
        bool value = p == 3 ? class_equal(m.representative, bockstein(y)) && !coboundary_preimage(bockstein(y))
                            : coboundary_preimage(m.representative).has_value();
        ok = ok && indet && value;
        s << "C" << p << (p == 3 ? " beta(y)" : " zero") << (value ? " ok" : " WRONG") << "; ";
    }
    return {ok, s.str() + "indeterminacy zero"};
}

Outcome c4()
{
    bool formula = true, literal = true;
    std::ostringstream s;
    for (const auto& [name, g] : {std::pair{"C2", cyclic_group(2)}, {"C3", cyclic_group(3)}, {"S3", s3()}}) {
        auto t = checks::cochain_identities(g, 100, 17);
        formula = formula && t.all_hold();
        literal = literal && t.cup1_literal == t.trials;
        s << name << " leibniz " << t.leibniz << "/" << t.trials << " cup1 " << t.cup1_formula << " literal-sign "
          << t.cup1_literal << " hirsch " << t.hirsch << "; ";
    }
    bool obstructed = checks::literal_cup1_obstructed();
    s << "sign-corrected identities " << (formula ? "hold" : "FAIL") << "; literal + sign "
      << (obstructed ? "impossible (ab-ba not a coboundary on C3xC3)" : "not obstructed");
    return {formula && literal, s.str()};
}

Outcome c5()
{
    bool v3 = checks::corestriction_vanishes(3, 4);
    bool v5 = checks::corestriction_vanishes(5, 2);
    auto g = s3();
    Elem t = 0;
    for (Elem e = 1; e < g->order(); ++e)
        if (g->element_order(e) == 2) { t = e; break; }
    bool cr1 = checks::cor_res_is_index(g, {t}, 2, 4, 4, 1);
    auto c = c3c3();
    bool cr2 = checks::cor_res_is_index(c, {c->generators()[0]}, 3, 3, 3, 2);
    std::ostringstream s;
    s << "Cor=0 p=3 deg<=4 " << v3 << ", p=5 deg<=2 " << v5 << "; Cor.Res=index S3 mod 2 deg<=4 " << cr1
      << ", C3xC3 deg<=3 " << cr2;
    return {v3 && v5 && cr1 && cr2, s.str()};
}

Outcome c6()
{
    auto a = dickson_check(3, 24), b = dickson_check(5, 30);
    auto bad = dickson_check(3, 24, DicksonVariant::perturbed);
    std::ostringstream s;
    s << "p=3 D=24 " << a.pass() << ", p=5 D=30 " << b.pass() << ", perturbed control rejected " << !bad.pass();
    return {a.pass() && b.pass() && !bad.pass(), s.str()};
}

Outcome c7()
{
    auto r = held_5_part_check(120);
    std::ostringstream s;
    s << "group order " << r.group_order << ", degrees <=120 "
      << (r.first_mismatch ? "mismatch at " + std::to_string(*r.first_mismatch) : std::string("match"))
      << ", relation " << r.relation
      << (r.relation_normalizes ? " normalises to " + r.working_relation : " does not normalise");
    return {r.pass(), s.str()};
}

Outcome c8()
{
    auto printed = check_d8_fixed_ring(24, true);
    auto det = check_d8_fixed_ring(24, false);
    std::ostringstream s;
    s << "printed action: ";
    if (printed.fixed_vs_span.first_mismatch) {
        s << "fixed vs span first differs in degree " << *printed.fixed_vs_span.first_mismatch;
        if (!printed.unexplained.empty()) s << " (fixed, not spanned: " << printed.unexplained.front() << ")";
    } else {
        s << "span matches";
    }
    s << "; determinant-consistent action " << (det.pass() ? "matches" : "fails");
    return {printed.pass(), s.str()};
}

Outcome c9()
{
    auto a = check_s3xc3_fixed_ring(60);
    auto b = check_k_restriction(100);
    std::size_t in = 0;
    for (const auto& l : b.lines) in += l.in_target;
    std::ostringstream s;
    s << "fifteen fixed " << a.generators_fixed << ", generate through 60 " << a.fixed_vs_generated.pass()
      << "; restrictions in target " << in << "/" << b.lines.size();
    return {a.pass() && b.pass(), s.str()};
}

Outcome c10()
{
    auto a = check_shear_fixed_ring(3, 30), b = check_shear_fixed_ring(5, 40);
    auto control = check_shear_fixed_ring(3, 30, true);
    std::ostringstream s;
    s << "p=3 D=30 " << a.pass() << ", p=5 D=40 " << b.pass() << ", identity control rejected " << !control.pass();
    return {a.pass() && b.pass() && !control.pass(), s.str()};
}

Outcome c11()
{
    struct Case {
        std::string name;
        GroupPtr g;
        std::uint32_t p;
        std::optional<std::uint32_t> expected;
    };
    std::vector<Case> cases{{"C9", cyclic_group(9), 3, 2},
                            {"C3xC3", c3c3(), 3, 2},
                            {"P2(3)", p_group_P(3, 3), 3, 6},
                            {"P2(5)", p_group_P(3, 5), 5, 10},
                            {"C3^2:C8", elementary_semidirect(3, 2, {}), 3, 12},
                            {"C3", cyclic_group(3), 3, {}},
                            {"C5", cyclic_group(5), 5, {}},
                            {"C6", cyclic_group(6), 3, {}},
                            {"S3", s3(), 3, {}},
                            {"M3(3)", p_group_M(3, 3), 3, {}},
                            {"G(2,1)", p_group_G_a1(2, 3), 3, {}}};
    bool ok = true;
    std::ostringstream s;
    for (const auto& c : cases) {
        auto r = pc_invariant(c.g, c.p);
        std::uint64_t pn = 1;
        for (auto o = c.g->order(); o % c.p == 0; o /= c.p) pn *= c.p;
        std::uint64_t bound = 2 * (c.p - 1) * (pn / c.p);
        bool divides = r.pc != 0 && bound % r.pc == 0;
        bool match = !c.expected || r.pc == *c.expected;
        ok = ok && divides && match;
        s << c.name << "=" << r.pc << (match ? "" : "(WRONG)") << (divides ? "" : "(no divide)") << " ";
    }
    s << "| bound 2(p-1)p^(n-1)";
    return {ok, s.str()};
}

Outcome c12()
{
    struct Case {
        std::string name;
        SimplicialComplex k;
        Rational chi;
    };
    auto s2 = barycentric_subdivision(SimplicialComplex::boundary_of_simplex(3));
    std::vector<Case> cases{{"point", SimplicialComplex::simplex(1), Rational(1, 2)},
                            {"edge", SimplicialComplex::simplex(2), Rational(1, 4)},
                            {"two points", SimplicialComplex::discrete(2), Rational(0)},
                            {"triangle", SimplicialComplex::simplex(3), Rational(1, 8)},
                            {"(dD3)'", s2, Rational(0)},
                            {"Moore(2)'", barycentric_subdivision(moore_complex(2)), Rational(1, 2)}};
    bool ok = true;
    std::ostringstream s;
    for (const auto& c : cases) {
        auto e = euler_report(c.k);
        bool good = e.pass() && e.chi_chiswell == c.chi;
        ok = ok && good;
        s << c.name << " " << e.chi_orbifold.get_str() << (good ? "" : "(WRONG)") << "; ";
    }
    auto d4 = euler_report(barycentric_subdivision(SimplicialComplex::boundary_of_simplex(4)));
    bool positive = d4.pass() && d4.chi_orbifold > 0;
    s << "(dD4)' " << d4.chi_orbifold.get_str() << "; ";

    auto q = davis_quotient(racg_from_complex(s2), torsion_free_coloring(s2));
    bool links = true;
    for (const auto& v : q.complex.cells(0)) {
        auto h = homology(link(q.complex, v));
        links = links && h.size() == 3 && h[0] == HomologyGroup{1, {}} && h[1].is_zero() &&
                h[2] == HomologyGroup{1, {}};
    }
    s << "sphere quotient chi " << q.euler << ", " << q.complex.cells(0).size() << " vertex links "
      << (links ? "S2" : "NOT S2");
    return {ok && positive && q.euler == 0 && links, s.str()};
}

Outcome c13()
{
    bool ok = true;
    std::ostringstream s;
    for (std::uint32_t n : {2u, 3u, 4u}) {
        auto r = bestvina(n);
        ok = ok && r.pass();
        s << "n=" << n << " H3=" << r.h3.str() << " exponent " << r.h3.exponent().get_str()
          << (r.rank_h3_zero ? " rank0" : " rank>0") << (r.pass() ? "" : " FAIL") << "; ";
    }
    return {ok, s.str()};
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"acceptance criteria 1-13"};
    std::vector<int> expect_fail, only;
    app.add_option("--expect-fail", expect_fail, "criteria known to fail")->delimiter(',');
    app.add_option("--only", only, "run only these criteria")->delimiter(',');
    CLI11_PARSE(app, argc, argv);

    std::vector<Criterion> all{
        {1, "mod-3 dims of P2(3)", 900, c1},
        {2, "integral orders of G(2,1)", 1200, c2},
        {3, "Massey <y,y,y> on C3 C5 C7", 1, c3},
        {4, "cochain identities", 60, c4},
        {5, "transfer", 60, c5},
        {6, "Dickson invariants", 120, c6},
        {7, "5-part fixed ring", 300, c7},
        {8, "3-part D8 fixed ring", 120, c8},
        {9, "7-part S3xC3 fixed ring and restriction", 600, c9},
        {10, "shear fixed ring", 180, c10},
        {11, "pc invariant", 120, c11},
        {12, "Davis Euler characteristics", 300, c12},
        {13, "Bestvina quotients", 900, c13},
    };

    std::set<int> expected(expect_fail.begin(), expect_fail.end()), failed;
    for (const auto& c : all) {
        if (!only.empty() && std::find(only.begin(), only.end(), c.id) == only.end()) continue;
        auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("error: ") + e.what()};
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        double mb = peak_rss_mb();
        bool within = secs <= c.budget_seconds && mb <= kMemoryBudgetMb;
        bool ok = o.ok && within;
        if (!ok) failed.insert(c.id);
        std::printf("%-4s %2d %-40s %8.2fs/%gs %7.0fMB  %s%s\n", ok ? "PASS" : "FAIL", c.id, c.title.c_str(), secs,
                    c.budget_seconds, mb, o.detail.c_str(), within ? "" : " [over budget]");
        std::fflush(stdout);
    }
    for (int id : expected)
        if (!failed.count(id) && (only.empty() || std::find(only.begin(), only.end(), id) != only.end()))
            std::printf("note: criterion %d was expected to fail but passed\n", id);
    std::set<int> unexpected;
    for (int id : failed)
        if (!expected.count(id)) unexpected.insert(id);
    return unexpected.empty() ? 0 : 1;
}
