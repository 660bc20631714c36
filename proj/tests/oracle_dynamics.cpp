#include <doctest.h>

#include "helpers.hpp"
#include "qcluster/dilog_series.hpp"
#include "qcluster/mutation_engine.hpp"
#include "qcluster/polarization.hpp"
#include "qcluster/relations_suite.hpp"

using namespace qcluster;
using namespace qtest;

namespace {

std::vector<std::string> rendered(const PhiFactors& ph) {
    std::vector<std::string> out;
    for (const auto& f : ph.factors) out.push_back(ph.torus->render(f.eta));
    return out;
}

std::vector<std::string> rendered(const TorusForm& t, const std::vector<DilogFactor>& fs) {
    std::vector<std::string> out;
    for (const auto& f : fs) out.push_back(t.render(f.eta));
    return out;
}

}  // namespace

TEST_SUITE("mutation_engine") {
    TEST_CASE("monomial_transform on the A1 glued seed at 1bar") {
        const ClusterSeed s = glue_doubled(a1()).seed;
        const std::string k = bar_label(1);
        const LatticeMap L = monomial_transform(s, k);
        const TorusForm& t = *L.to;
        for (std::size_t i = 0; i < s.size(); ++i) {
            LatticeVector expect = t.unit(s.label(i));
            if (s.label(i) == k) {
                expect = lattice_add(t.zero(), t.unit(k), -1);
            } else if (s.b(k, s.label(i)) > Rational(0)) {
                expect = lattice_add(expect, t.unit(k), s.b(k, s.label(i)).num());
            }
            CHECK(L.images[i] == expect);
        }
        // 1 -> 1bar -> 2bar: only 2bar picks up e_1bar
        CHECK(L.images[s.index("1")] == t.unit("1"));
        CHECK(L.images[s.index(bar_label(2))] == t.parse_vector("1b,2b"));
    }
    TEST_CASE("mutation at a frozen node throws") {
        const ClusterSeed s = glue_doubled(a1()).seed;
        CHECK_THROWS_AS(monomial_transform(s, "1"), MutationAtFrozen);
        CHECK_THROWS_AS(mutate_seed(s, "1"), MutationAtFrozen);
    }
    TEST_CASE("A3 Phi1 composite pulls the mutated F1 path back to K'_1") {
        const PhiFactors ph = build_phi(a3(), PhiKind::phi1);
        const MutationSequence seq = derive_mutation_sequence(ph.factors, ph.torus);
        const FlipReport rep = verify_flip(ph, seq);
        REQUIRE(rep.all_ok());
        const TorusPtr fin = make_torus(seq.final_seed());
        const auto mutated = TorusElement::path_monomial(fin, rep.roots[0].mutated_path);
        CHECK(seq.M.apply(mutated) ==
              TorusElement::path_monomial(ph.torus, labels({"1", "3", "6", "1b", "4b", "6b", "7b"})));
    }
    TEST_CASE("A1 conjugation by g(X_1bar)") {
        const TorusPtr t = make_torus(glue_doubled(a1()).seed);
        const LatticeVector eta = t->unit(bar_label(1));
        FracElement f(TorusElement::path_polynomial(t, labels({"1", "1b", "2b"})));
        CHECK(ad_dilog_monomial(f, eta, Rational(1)).equals(TorusElement::monomial(t, t->unit("1"))));
        const auto K = TorusElement::path_monomial(t, labels({"1", "1b", "2b"}));
        CHECK(ad_dilog_monomial(FracElement(K), eta, Rational(1)).equals(K));
    }
    TEST_CASE("uv = q^2 vu: Ad_g(v)(u) = u + q vu") {
        ClusterSeed s({"u", "v"}, {false, false}, {Rational(1), Rational(1)});
        s.set_w(0, 1, Rational(-1));
        const TorusPtr t = make_torus(s);
        const auto u = TorusElement::monomial(t, t->unit("u"));
        const auto v = TorusElement::monomial(t, t->unit("v"));
        REQUIRE(u * v == (v * u).scaled(QLaurent::monomial(2)));
        const FracElement r = ad_dilog_monomial(FracElement(u), t->unit("v"), Rational(1));
        CHECK(r.equals(u + (v * u).scaled(QLaurent::monomial(1))));
    }
    TEST_CASE("A3 e3 factorization") {
        const BasicQuiverSeed s = build_basic_seed(a3());
        const TorusPtr t = make_torus(s.seed);
        const auto fs = dilog_factorize(*t, {t->parse_vector("3,5,9"), t->parse_vector("5,9"), t->parse_vector("9")},
                                        Rational(1));
        CHECK(rendered(*t, fs) == std::vector<std::string>{"3,5,9", "5,9", "9"});
        const auto one = dilog_factorize(*t, {t->parse_vector("3,5,9")}, Rational(1));
        REQUIRE(one.size() == 1);
        CHECK(one[0].eta == t->parse_vector("3,5,9"));
    }
    TEST_CASE("B3 e1 factorization") {
        const BasicQuiverSeed s = build_basic_seed(b3());
        const TorusPtr t = make_torus(s.seed);
        const auto fs = dilog_factorize(*t,
                                        {t->parse_vector("3,4,7,8,10"), t->parse_vector("4,7,8,10"),
                                         t->parse_vector("7,8,10"), t->parse_vector("8,10"), t->parse_vector("10")},
                                        Rational(1, 2));
        REQUIRE(fs.size() == 7);
        CHECK(fs[0].eta == t->parse_vector("3,4,7,8,10"));
        CHECK(fs[0].flavor == Rational(1, 2));
        CHECK(fs[1].eta == t->parse_vector("4,7,8,10"));
        CHECK(fs[1].flavor == Rational(1, 2));
        CHECK(fs[2].eta == t->parse_vector("4,7^2,8^2,10^2"));
        CHECK(fs[2].flavor == Rational(1));
    }
    TEST_CASE("Phi1 factors") {
        const PhiFactors p1 = build_phi(a1(), PhiKind::phi1);
        CHECK(rendered(p1) == std::vector<std::string>{bar_label(1)});
        const auto a = rendered(build_phi(a3(), PhiKind::phi1));
        REQUIRE(a.size() == 10);
        CHECK(std::vector<std::string>(a.end() - 3, a.end()) ==
              std::vector<std::string>{"6," + bar_label(2), bar_label(2), bar_label(1)});
        CHECK(build_phi(b3(), PhiKind::phi1).factors.size() == 35);
    }
    TEST_CASE("mutation sequences") {
        auto seq = [](const ReducedWord& w) {
            const PhiFactors ph = build_phi(w, PhiKind::phi1);
            return derive_mutation_sequence(ph.factors, ph.torus).nodes;
        };
        CHECK(seq(a1()) == labels({"1b"}));
        CHECK(seq(a3()) == labels({"1b", "2b", "6", "3b", "5", "3", "4b", "5b", "2b", "6b"}));
        const auto b = seq(b3());
        REQUIRE(b.size() == 35);
        CHECK(std::vector<std::string>(b.begin(), b.begin() + 4) == labels({"1b", "2b", "9", "6"}));
    }
    TEST_CASE("verify_flip") {
        for (const auto& [w, k] : {std::pair{a1(), PhiKind::phi1}, std::pair{a3(), PhiKind::phi1},
                                   std::pair{b3(), PhiKind::phi3}}) {
            const PhiFactors ph = build_phi(w, k);
            const FlipReport r = verify_flip(ph, derive_mutation_sequence(ph.factors, ph.torus));
            CHECK_MESSAGE(r.all_ok(), w.datum().name());
        }
        const PhiFactors a = build_phi(a1(), PhiKind::phi1);
        const ClusterSeed target = derive_mutation_sequence(a.factors, a.torus).final_seed();
        CHECK(target == mutate_seed(glue_doubled(a1()).seed, bar_label(1)));
    }
}

TEST_SUITE("dilog_series") {
    TEST_CASE("g(u+v) = g(u) g(v)") { CHECK(run_identity("guv", 8).ok); }
    TEST_CASE("g(v) u g*(v) = c + u") {
        CHECK(run_identity("gcon", 8).ok);
        CHECK(run_identity("g12", 8).ok);
    }
    TEST_CASE("short-short splitting") { CHECK(run_identity("gdouble", 6).ok); }
    TEST_CASE("PsiSeries functional equation") {
        for (int r : {1, 4, 8})
            for (const Rational& f : {Rational(1), Rational(1, 2), Rational(2)}) CHECK(PsiSeries::make(r, f).self_test());
    }
    TEST_CASE("unknown identity") { CHECK_THROWS(run_identity("nope")); }
}

TEST_SUITE("polarization") {
    TEST_CASE("A1 doubled operators") {
        const Polarization p = polarize(a1(), PolarVariant::doubled);
        CHECK(p.node("1") == LinearForm::parse("-u+2λ+2p").scaled(Rational(1, 2)));
        CHECK(p.node(bar_label(1)) == LinearForm::parse("u-2λ"));
        CHECK(p.node("1") + p.node(bar_label(1)) + p.node(bar_label(2)) == LinearForm::parse("u-λ"));
    }
    TEST_CASE("A3 single operator f3") {
        const Polarization p = polarize(a3(), PolarVariant::single_minus_sigma, false);
        CHECK(p.node("4").scaled(Rational(2)) == LinearForm::parse("u_2-u_4+2p_4"));
    }
    TEST_CASE("Omega equals w") {
        for (const auto& w : {a1(), a3(), b3()})
            for (PolarVariant v : {PolarVariant::doubled, PolarVariant::single_plus, PolarVariant::tensor_square})
                CHECK(polarize(w, v).omega_mismatches().empty());
    }
    TEST_CASE("A1 normalization shift") {
        const Polarization p = polarize(a1(), PolarVariant::doubled);
        const AffineShift s = normalization_shift(p, ShiftGoal::kill_lambda);
        CHECK(s.render() == std::vector<std::string>{"2p_1 ↦ 2p_1-λ_1", "u_1 ↦ u_1+λ_1"});
        const Polarization q = p.shifted(s);
        CHECK(q.node("1").scaled(Rational(2)) == LinearForm::parse("-u+2p"));
        CHECK((q.node("1") + q.node(bar_label(1)) + q.node(bar_label(2))).scaled(Rational(2)) ==
              LinearForm::parse("2u"));
        CHECK(normalization_shift(polarize(a1(), PolarVariant::doubled, false), ShiftGoal::kill_lambda).empty());
    }
    TEST_CASE("A3 tensor shift first line") {
        const Polarization p = polarize(a3(), PolarVariant::tensor_square);
        const auto lines = normalization_shift(p, ShiftGoal::kill_second_factor).render(FormStyle::ascii);
        REQUIRE_FALSE(lines.empty());
        CHECK(AffineShift::parse_line(lines[0]).target == Symbol{Symbol::P, 1, 0});
        const auto step = AffineShift::parse_line("2p_1 ↦ 2p_1-u_1'-u_3'-u_6'");
        bool found = false;
        for (const auto& l : lines) {
            const auto s = AffineShift::parse_line(l);
            found |= s.target == step.target && s.increment == step.increment;
        }
        CHECK(found);
    }
    TEST_CASE("Phi operators") {
        const PhiFactors a = build_phi(a1(), PhiKind::phi1);
        const auto r = render_phi_operators(a.factors, *a.torus, polarize(a1(), PolarVariant::doubled));
        REQUIRE(r.size() == 1);
        CHECK(r[0].exponent == LinearForm::parse("2u-4λ"));
        const PhiFactors t = build_phi(a3(), PhiKind::phi3);
        const auto e = render_phi_operators(t.factors, *t.torus, polarize(a3(), PolarVariant::tensor_square, false));
        REQUIRE(e.size() == 10);
        CHECK(e[0].exponent == LinearForm::parse("3u_1-u_2+2u_3-u_5+2u_6-u_1'-2p_1+2p_1'"));
    }
}

TEST_SUITE("relations_suite") {
    TEST_CASE("A2 single Serre") {
        const auto rep = run_borel_relations(realize(a2(), BorelMode::single));
        bool seen = false;
        for (const auto& c : rep.checks)
            if (c.name.find("Serre f_1 f_2") != std::string::npos) {
                seen = true;
                CHECK(c.pass);
            }
        CHECK(seen);
    }
    TEST_CASE("A3 doubled Cartan K'_1 f_2") {
        const BorelRealization r = realize(a3(), BorelMode::doubled);
        const auto& K = r.gens.at(1).K;
        const auto& f = r.gens.at(2).f;
        CHECK(K * f == (f * K).scaled(QLaurent::monomial(-1)));
    }
    TEST_CASE("B2 doubled Serre for the long-short pair") {
        const auto rep = run_borel_relations(realize(b2(), BorelMode::doubled));
        CHECK(rep.all_pass());
        const RootDatum D = b2().datum();
        CHECK((1 - D.a(1, 2) == 3 || 1 - D.a(2, 1) == 3));
    }
    TEST_CASE("golden A1 and B3") {
        const auto a = run_golden("A1");
        CHECK(a.checks.size() == 6);
        CHECK(a.all_pass());
        CHECK(run_golden("B3").all_pass());
    }
    TEST_CASE("golden A3 reports the Phi1 sequence") {
        bool seen = false;
        for (const auto& c : run_golden("A3").checks)
            if (c.name == "A3 phi1 factors, sequence, flip, mutated quiver") {
                seen = true;
                CHECK(c.pass);
            }
        CHECK(seen);
    }
    TEST_CASE("report formats") {
        VerificationReport r{"demo", {{"a", true, "", 1}, {"b<c", false, "x & y", 2}}};
        CHECK(r.failures() == 1);
        CHECK(r.to_junit().find("b&lt;c") != std::string::npos);
        CHECK(r.to_text().find("demo: 1/2 passed") != std::string::npos);
        CHECK(r.to_json().find("\"status\": \"fail\"") != std::string::npos);
    }
    TEST_CASE("thrown checks become failures") {
        const auto r = run_checks("t", {{"boom", []() -> std::string { throw std::runtime_error("bad"); }}}, 2);
        CHECK_FALSE(r.all_pass());
        CHECK(r.checks[0].residual == "exception: bad");
    }
}
