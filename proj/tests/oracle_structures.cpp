#include <doctest.h>

#include "helpers.hpp"
#include "qcluster/seed.hpp"
#include "qcluster/torus.hpp"

using namespace qcluster;
using namespace qtest;

TEST_SUITE("lie_data") {
    TEST_CASE("cartan_datum A2") {
        const RootDatum D = cartan_datum(LieType::A, 2);
        CHECK(D.cartan == std::vector<std::vector<int>>{{2, -1}, {-1, 2}});
        CHECK(D.d == std::vector<Rational>{Rational(1), Rational(1)});
    }
    TEST_CASE("cartan_datum A1") {
        const RootDatum D = cartan_datum(LieType::A, 1);
        CHECK(D.cartan == std::vector<std::vector<int>>{{2}});
        CHECK(D.d == std::vector<Rational>{Rational(1)});
    }
    TEST_CASE("cartan_datum B3 reversed has root 1 short") {
        const RootDatum D = cartan_datum(LieType::B, 3, ShortRootConvention::reversed);
        CHECK(D.d == std::vector<Rational>{Rational(1, 2), Rational(1), Rational(1)});
    }
    TEST_CASE("validate_reduced_word") {
        CHECK(a2().N() == 3);
        CHECK_THROWS_AS(word(LieType::A, 2, {1, 1, 2}), NotReduced);
        const ReducedWord w = a3();
        CHECK(w.N() == 6);
        CHECK(w.f_in() == std::vector<int>{1, 2, 4});
        CHECK(w.f_out() == std::vector<int>{7, 8, 9});
        CHECK(w.plus(1) == 3);
        CHECK(w.plus(3) == 6);
        CHECK(w.plus(6) == 7);
        CHECK(w.star(1) == 6);
    }
    TEST_CASE("reverse_word") {
        CHECK(reverse_word(a2()).letters() == std::vector<int>{1, 2, 1});
        CHECK(reverse_word(a3()).letters() == std::vector<int>{1, 2, 3, 1, 2, 1});
        CHECK(reverse_word(b3()).letters() == std::vector<int>{3, 2, 1, 2, 3, 2, 1, 2, 1});
    }
    TEST_CASE("sigma_bijection") {
        CHECK(sigma_bijection(a1(), reverse_word(a1())).at(1) == 1);
        const auto s = sigma_bijection(a3(), reverse_word(a3()));
        CHECK(s.at(1) == 1);  // first 1 of the reversed word
        CHECK(s.at(6) == 6);  // third 1 of the reversed word
    }
}

TEST_SUITE("seed_quiver") {
    TEST_CASE("A1 glued quiver mutated at 1bar") {
        const ClusterSeed s = glue_doubled(a1()).seed;
        const std::string o = "1", ob = bar_label(1), tb = bar_label(2);
        CHECK(arrow_pairs(s) == std::set<std::pair<std::string, std::string>>{{o, ob}, {ob, tb}});
        const ClusterSeed t = mutate_seed(s, ob);
        CHECK(arrow_pairs(t) == std::set<std::pair<std::string, std::string>>{{ob, o}, {tb, ob}, {o, tb}});
        CHECK(mutate_seed(t, ob) == s);
    }
    TEST_CASE("3-cycle mutation equals the matrix formula") {
        ClusterSeed s({"i", "k", "j"}, {false, false, false}, {Rational(1), Rational(1), Rational(1)});
        s.set_w(0, 1, Rational(1));   // i -> k
        s.set_w(1, 2, Rational(1));   // k -> j
        s.set_w(2, 0, Rational(1));   // j -> i
        const ClusterSeed t = mutate_seed(s, "k");
        for (std::size_t a = 0; a < 3; ++a)
            for (std::size_t b = 0; b < 3; ++b) {
                Rational expect = -s.b(a, b);
                if (a != 1 && b != 1) {
                    const Rational ik = s.b(a, 1), kj = s.b(1, b);
                    auto absr = [](const Rational& r) { return r < Rational(0) ? -r : r; };
                    expect = s.b(a, b) + (absr(ik) * kj + ik * absr(kj)) / Rational(2);
                }
                CHECK(t.b(a, b) == expect);
            }
        // the created arrow i -> j cancels the 2-cycle with j -> i
        CHECK(t.b("i", "j") == Rational(0));
    }
    TEST_CASE("gluing two A1 quivers") {
        const GluedSeed g = glue_doubled(a1());
        CHECK(g.seed.size() == 3);
        for (const auto& a : quiver_view(g.seed).arrows) CHECK(a.weight == Rational(1));
        CHECK_FALSE(g.seed.frozen(bar_label(1)));
    }
    TEST_CASE("gluing along the empty set is the disjoint union") {
        const ClusterSeed a = build_basic_seed(a1()).seed;
        const ClusterSeed b = build_basic_seed(a1(), Labeling::bar).seed;
        const Amalgamation m = amalgamate(a, b, {});
        CHECK(m.seed.size() == 4);
        CHECK(quiver_view(m.seed).arrows.size() == 2);
    }
    TEST_CASE("A3 double quiver has 1bar 2bar 3bar unfrozen") {
        const ClusterSeed s = glue_doubled(a3()).seed;
        for (int k : {1, 2, 3}) CHECK_FALSE(s.frozen(bar_label(k)));
    }
    TEST_CASE("A1 basic quiver DOT has three nodes") {
        const std::string dot = export_basic_dot(build_basic_seed(a1()));
        std::size_t nodes = 0;
        for (std::size_t p = dot.find("shape="); p != std::string::npos; p = dot.find("shape=", p + 1)) ++nodes;
        CHECK(nodes == 3);
        CHECK(dot.find("\"1\" [shape=box]") != std::string::npos);
        CHECK(dot.find("\"2\" [shape=box]") != std::string::npos);
    }
    TEST_CASE("JSON round trip") {
        for (const ClusterSeed& s : {glue_doubled(a3()).seed, glue_tensor(b3()).seed})
            CHECK(import_seed(export_json(s)) == s);
    }
    TEST_CASE("A3 basic quiver DOT edge count") {
        const std::string dot = export_basic_dot(build_basic_seed(a3()));
        std::size_t edges = 0;
        for (std::size_t p = dot.find("->"); p != std::string::npos; p = dot.find("->", p + 1)) ++edges;
        CHECK(edges == 16);
    }
}

TEST_SUITE("qtorus") {
    TEST_CASE("A1 glued: X_1 X_1bar = q^-1 X_{1,1bar}") {
        const TorusPtr t = make_torus(glue_doubled(a1()).seed);
        const auto x1 = TorusElement::monomial(t, t->unit("1"));
        const auto xb = TorusElement::monomial(t, t->unit(bar_label(1)));
        CHECK(x1 * xb == TorusElement::monomial(t, t->parse_vector("1,1b"), QLaurent::monomial(-1)));
        CHECK(x1 * xb - (xb * x1).scaled(QLaurent::monomial(-2)) == TorusElement(t));
        const auto one = TorusElement::constant(t, QLaurent(1));
        CHECK(x1 * one == x1);
    }
    TEST_CASE("commutator_quotient of an element with itself") {
        const TorusPtr t = make_torus(glue_doubled(a1()).seed);
        const auto x = TorusElement::path_polynomial(t, labels({"1", "1b", "2b"}));
        CHECK(commutator_quotient(x, x, Rational(1)).is_zero());
    }
    TEST_CASE("A1 [e-, f+]/(q - q^-1) = K'") {
        const BorelRealization r = realize(a1(), BorelMode::doubled);
        const BorelGenerators& g = r.gens.at(1);
        REQUIRE(g.e_minus);
        CHECK(commutator_quotient(*g.e_minus, g.f_plus, Rational(1)) == g.K);
    }
    TEST_CASE("A3 [e2-, f1+]/(q - q^-1) = 0") {
        const BorelRealization r = realize(a3(), BorelMode::doubled);
        CHECK(commutator_quotient(*r.gens.at(2).e_minus, r.gens.at(1).f_plus, Rational(1)).is_zero());
    }
    TEST_CASE("right_divide") {
        const TorusPtr t = make_torus(glue_doubled(a1()).seed);
        const auto eta = t->unit(bar_label(1));
        const QLaurent q = QLaurent::monomial(1);
        CHECK(right_divide(binomial(t, q, eta), q, eta) == TorusElement::constant(t, QLaurent(1)));
        const auto p = TorusElement::path_polynomial(t, labels({"1", "1b", "2b"}));
        CHECK(right_divide(p, q, eta) == TorusElement::monomial(t, t->unit("1")));
        CHECK_THROWS_AS(right_divide(TorusElement::monomial(t, t->unit("1")), q, eta), NotExactlyDivisible);
    }
}

TEST_SUITE("basic_quiver") {
    TEST_CASE("A1 basic quiver") {
        const ClusterSeed s = build_basic_seed(a1()).seed;
        CHECK(s.labels() == std::vector<std::string>{"1", "2"});
        CHECK(s.frozen("1"));
        CHECK(s.frozen("2"));
        CHECK(arrow_pairs(s) == std::set<std::pair<std::string, std::string>>{{"1", "2"}});
    }
    TEST_CASE("A3 basic quiver arrows") {
        const QuiverView v = quiver_view(build_basic_seed(a3()).seed);
        std::set<std::pair<std::string, std::string>> full, dashed;
        for (const auto& a : v.arrows) (a.style == ArrowStyle::dashed ? dashed : full).insert({a.source, a.target});
        CHECK(full == std::set<std::pair<std::string, std::string>>{
                          {"1", "3"}, {"3", "6"}, {"6", "7"}, {"2", "5"}, {"5", "8"}, {"4", "9"},
                          {"8", "6"}, {"6", "5"}, {"5", "3"}, {"3", "2"}, {"9", "5"}, {"5", "4"}});
        CHECK(dashed == std::set<std::pair<std::string, std::string>>{{"4", "2"}, {"2", "1"}, {"7", "8"}, {"8", "9"}});
    }
    TEST_CASE("B3 thin arrows lie on the root 1 row") {
        std::set<std::pair<std::string, std::string>> thin;
        for (const auto& a : quiver_view(build_basic_seed(b3()).seed).arrows)
            if (a.style == ArrowStyle::thin) thin.insert({a.source, a.target});
        CHECK(thin == std::set<std::pair<std::string, std::string>>{{"1", "3"}, {"3", "7"}, {"7", "10"}});
    }
    TEST_CASE("A3 F paths") {
        const BasicQuiverSeed s = build_basic_seed(a3());
        CHECK(f_path(s, 1).nodes == labels({"1", "3", "6", "7"}));
        CHECK(f_path(s, 2).nodes == labels({"2", "5", "8"}));
        CHECK(f_path(s, 3).nodes == labels({"4", "9"}));
    }
    TEST_CASE("E paths") {
        const BasicQuiverSeed s = build_basic_seed(a3());
        const PathPolynomial e2 = e_path(s, 2);
        CHECK(e2.str().find("8") != std::string::npos);
        const auto table = bundled_e_paths(a3());
        REQUIRE(table);
        CHECK(table->at(2) == std::vector<int>{8, 6, 11});
        const TorusPtr t = make_torus(s.seed);
        CHECK(e2.polynomial(t) == TorusElement::monomial(t, t->parse_vector("8")) +
                                      TorusElement::monomial(t, t->parse_vector("6,8")));
        const auto tb = bundled_e_paths(b3());
        REQUIRE(tb);
        CHECK(tb->at(1) == std::vector<int>{10, 8, 7, 4, 3, 13});
    }
    TEST_CASE("doubled generators") {
        auto check = [](const ReducedWord& w, int i, std::initializer_list<const char*> path,
                        std::initializer_list<const char*> k) {
            const BorelRealization r = assemble_borel(glue_doubled(w));
            const TorusPtr& t = r.torus;
            CHECK(r.gens.at(i).f == TorusElement::path_polynomial(t, labels(path)));
            CHECK(r.gens.at(i).K == TorusElement::path_monomial(t, labels(k)));
        };
        check(a1(), 1, {"1", "1b", "2b"}, {"1", "1b", "2b"});
        check(a3(), 1, {"1", "3", "6", "1b", "4b", "6b", "7b"}, {"1", "3", "6", "1b", "4b", "6b", "7b"});
        check(b3(), 3, {"5", "9", "1b", "5b", "12b"}, {"5", "9", "1b", "5b", "12b"});
    }
}
