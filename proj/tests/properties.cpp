#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>

#include "helpers.hpp"
#include "qcluster/dilog_series.hpp"
#include "qcluster/kernels.hpp"
#include "qcluster/mutation_engine.hpp"
#include "qcluster/polarization.hpp"
#include "qcluster/relations_suite.hpp"

using namespace qcluster;
using namespace qtest;
using namespace qcluster::kernels;

namespace {

std::vector<ReducedWord> panel() {
    return {a1(), a2(), a3(), b2(), b3(), word(LieType::B, 2, {1, 2, 1, 2}),
            word(LieType::C, 3, {1, 2, 1, 2, 3, 2, 1, 2, 3}, ShortRootConvention::reversed)};
}

std::vector<std::string> unfrozen(const ClusterSeed& s) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < s.size(); ++i)
        if (!s.frozen(i)) out.push_back(s.label(i));
    return out;
}

LatticeVector random_vector(std::mt19937& rng, std::size_t n, int lo = -2, int hi = 2) {
    std::uniform_int_distribution<int> d(lo, hi);
    LatticeVector v(n);
    for (auto& x : v) x = d(rng);
    return v;
}

TorusElement random_element(std::mt19937& rng, const TorusPtr& t, int terms = 3) {
    TorusElement x(t);
    std::uniform_int_distribution<int> c(-3, 3), e(-2, 2);
    for (int j = 0; j < terms; ++j) x.add_term(random_vector(rng, t->dim()), QLaurent::monomial(e(rng), c(rng) == 0 ? 1 : c(rng)));
    return x;
}

}  // namespace

TEST_SUITE("properties") {
    TEST_CASE("word maps") {
        for (const auto& w : panel()) {
            CHECK(reverse_word(reverse_word(w)).letters() == w.letters());
            for (int k = 1; k <= w.N(); ++k) {
                CHECK(w.minus(w.plus(k)) == k);
                CHECK(w.plus(k) > k);
                if (w.minus(k)) CHECK(w.minus(k) < k);
            }
            CHECK(static_cast<int>(w.f_in().size()) == w.n());
            CHECK(static_cast<int>(w.f_out().size()) == w.n());
        }
    }

    TEST_CASE("mutation keeps W skew and is an involution") {
        for (unsigned s = 1; s <= 60; ++s) {
            const ClusterSeed seed = random_seed(s);
            for (const auto& k : unfrozen(seed)) {
                const ClusterSeed t = mutate_seed(seed, k);
                CHECK(t.is_skew());
                CHECK(mutate_seed(t, k) == seed);
            }
        }
        for (const auto& w : panel()) {
            CHECK(glue_doubled(w).seed.is_skew());
            CHECK(glue_tensor(w).seed.is_skew());
        }
    }

    TEST_CASE("quantum mutation involution and form preservation on random seeds") {
        for (unsigned s = 1; s <= 150; ++s) {
            const ClusterSeed seed = random_seed(s);
            for (const auto& k : unfrozen(seed)) {
                CHECK_MESSAGE(check_mutation_involution(seed, k) == "", "seed ", s, " at ", k);
                CHECK_MESSAGE(check_form_preservation(seed, k) == "", "seed ", s, " at ", k);
            }
        }
    }

    TEST_CASE("a single quantum mutation is not the identity") {
        const ClusterSeed s = glue_doubled(a1()).seed;
        const std::string k = bar_label(1);
        const ClusterSeed t = mutate_seed(s, k);
        TorusPtr Ts = make_torus(s), Tt = make_torus(t);
        const auto x = TorusElement::monomial(Tt, Tt->unit("1"));
        const FracElement y = quantum_mutation(FracElement(x), s, k, Tt, Ts);
        CHECK_FALSE(y.equals(TorusElement::monomial(Ts, Ts->unit("1"))));
    }

    TEST_CASE("Ad g followed by Ad g* is the identity") {
        std::mt19937 rng(11);
        for (unsigned s = 1; s <= 40; ++s) {
            const ClusterSeed seed = random_seed(s, 5);
            const TorusPtr t = make_torus(seed);
            const std::size_t e = rng() % seed.size();
            const LatticeVector eta = t->unit(seed.label(e));
            const Rational d = seed.d(e);
            // only monomials with integral m = -(lambda, eta)/d
            TorusElement x(t);
            for (int j = 0; j < 3; ++j) {
                const LatticeVector v = random_vector(rng, t->dim());
                if ((t->pair(v, eta) / d).is_integer()) x.add_term(v, QLaurent(1 + j));
            }
            if (x.is_zero()) continue;
            for (Direction dir : {Direction::g, Direction::g_star}) {
                const Direction back = dir == Direction::g ? Direction::g_star : Direction::g;
                FracElement y = ad_dilog_monomial(ad_dilog_monomial(FracElement(x), eta, d, dir), eta, d, back);
                CHECK(y.equals(x));
            }
        }
    }

    TEST_CASE("closed form agrees with the series oracle") {
        const SeriesReport r = random_closed_form(60, 3, 8, 5);
        CHECK_MESSAGE(r.ok, (r.mismatches.empty() ? "" : r.mismatches[0]));
    }

    TEST_CASE("e-path factorizations agree with the series") {
        for (const auto& w : {a3(), b3()}) {
            const BasicQuiverSeed b = build_basic_seed(w);
            const TorusPtr t = make_torus(b.seed);
            const auto table = bundled_e_paths(w);
            REQUIRE(table);
            for (const auto& [i, path] : *table) {
                std::vector<LatticeVector> terms;
                LatticeVector acc = t->zero();
                std::vector<LatticeVector> prefixes;
                for (int k : path)
                    if (k <= w.N() + w.n()) {
                        acc = lattice_add(acc, t->unit(b.label(k)));
                        prefixes.push_back(acc);
                    }
                for (auto it = prefixes.rbegin(); it != prefixes.rend(); ++it) terms.push_back(*it);
                TorusElement p(t);
                for (const auto& v : terms) p.add_term(v, QLaurent(1));
                const Rational d = w.datum().mult(i);
                const auto fs = dilog_factorize(*t, terms, d);
                const SeriesReport r = verify_factorization_series(p, d, fs, 6);
                CHECK_MESSAGE(r.ok, w.datum().name(), " e_", i);
            }
        }
    }

    TEST_CASE("torus product is associative, graded and satisfies the exchange relation") {
        std::mt19937 rng(3);
        for (unsigned s = 1; s <= 20; ++s) {
            const TorusPtr t = make_torus(random_seed(s, 5));
            const auto a = random_element(rng, t), b = random_element(rng, t), c = random_element(rng, t);
            CHECK((a * b) * c == a * (b * c));
            const LatticeVector u = random_vector(rng, t->dim()), v = random_vector(rng, t->dim());
            const auto xu = TorusElement::monomial(t, u), xv = TorusElement::monomial(t, v);
            const Rational e = t->pair(u, v);
            CHECK(xu * xv == (xv * xu).scaled(QLaurent::monomial(e * Rational(-2))));
            const TorusElement prod = xu * xv;
            for (const auto& [deg, coef] : prod.terms()) CHECK(deg == lattice_add(u, v));
        }
    }

    TEST_CASE("right_divide inverts multiplication") {
        std::mt19937 rng(9);
        for (unsigned s = 1; s <= 20; ++s) {
            const TorusPtr t = make_torus(random_seed(s, 5));
            const auto p = random_element(rng, t);
            const LatticeVector eta = t->unit(t->labels()[rng() % t->dim()]);
            const QLaurent c = QLaurent::monomial(static_cast<int>(rng() % 5) - 2);
            CHECK(right_divide(p * binomial(t, c, eta), c, eta) == p);
        }
    }

    TEST_CASE("arrow styles match the stored weights") {
        for (const auto& w : panel()) {
            const ClusterSeed s = glue_doubled(w).seed;
            for (const auto& a : quiver_view(s).arrows) {
                CHECK(s.w(a.source, a.target) == a.weight);
                const Rational full = full_weight(s.d(a.source), s.d(a.target));
                if (a.style == ArrowStyle::dashed) CHECK(a.weight * Rational(2) == full);
                if (a.style == ArrowStyle::thick || a.style == ArrowStyle::thin) CHECK(a.weight == full);
            }
        }
    }

    TEST_CASE("polarization: Omega = w and coherence with the torus pairing") {
        std::mt19937 rng(17);
        for (const auto& w : panel()) {
            const bool sl = w.datum().type == LieType::A;
            for (PolarVariant v : {PolarVariant::doubled, PolarVariant::single_plus, PolarVariant::single_minus,
                                   PolarVariant::single_minus_sigma, PolarVariant::tensor_square}) {
                if (v == PolarVariant::single_minus_sigma && !sl) {
                    CHECK_THROWS(polarize(w, v));
                    continue;
                }
                for (bool lambda : {true, false}) {
                    const Polarization p = polarize(w, v, lambda);
                    CHECK_MESSAGE(p.omega_mismatches().empty(), w.datum().name(), " ", variant_name(v));
                    const TorusPtr t = make_torus(p.glued.seed);
                    for (int j = 0; j < 5; ++j) {
                        const LatticeVector a = random_vector(rng, t->dim()), b = random_vector(rng, t->dim());
                        CHECK(p.omega(p.form(a), p.form(b)) == t->pair(a, b));
                    }
                }
            }
        }
    }

    TEST_CASE("central shifts keep Omega") {
        for (const auto& w : {a1(), a2(), a3(), b2(), b3()}) {
            const Polarization p = polarize(w, PolarVariant::doubled);
            const AffineShift S = normalization_shift(p, ShiftGoal::kill_lambda);
            for (const auto& st : S.steps) CHECK_FALSE(st.increment.has_kind(Symbol::U));
            CHECK(p.shifted(S).omega_mismatches().empty());
            // a form free of the shifted symbols is untouched
            const LinearForm f = LinearForm::parse("λ_1");
            CHECK(S.apply(f) == f);
        }
    }

    TEST_CASE("relation battery") {
        for (const auto& w : {a2(), a3(), b2(), b3()})
            for (BorelMode m : {BorelMode::single, BorelMode::doubled, BorelMode::tensor_square}) {
                const VerificationReport r = run_borel_relations(realize(w, m), 4);
                CHECK_MESSAGE(r.all_pass(), r.to_text());
            }
    }

    TEST_CASE("kernel equivalence") {
        std::vector<const KernelSet*> sets{&scalar()};
        if (avx2()) sets.push_back(avx2());
        if (neon()) sets.push_back(neon());
        MESSAGE("kernels: ", sets.size(), ", active ", std::string(active().name));
        std::mt19937 rng(21);
        for (std::size_t n : {0u, 1u, 7u, 8u, 9u, 31u, 64u, 257u}) {
            std::vector<std::int32_t> a(n), b(n);
            for (std::size_t i = 0; i < n; ++i) {
                a[i] = static_cast<std::int32_t>(rng()) / 4;
                b[i] = static_cast<std::int32_t>(rng() % 2001) - 1000;
            }
            const std::int64_t ref = scalar().dot(a.data(), b.data(), n);
            std::vector<std::int32_t> ref_out(n);
            scalar().axpy(b.data(), b.data(), -3, ref_out.data(), n);
            for (const KernelSet* k : sets) {
                CHECK(k->dot(a.data(), b.data(), n) == ref);
                std::vector<std::int32_t> out(n);
                k->axpy(b.data(), b.data(), -3, out.data(), n);
                CHECK(out == ref_out);
            }
        }
    }

    TEST_CASE("golden directory override") {
        namespace fs = std::filesystem;
        const fs::path dir = fs::temp_directory_path() / ("qcluster_golden_" + std::to_string(::getpid()));
        fs::create_directories(dir);
        fs::copy_file(fs::path(golden_dir()) / "A1.json", dir / "A1.json", fs::copy_options::overwrite_existing);
        {
            std::ifstream in(dir / "A1.json");
            std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
            const auto p = text.find("\"1b\"", text.find("\"sequence\""));
            REQUIRE(p != std::string::npos);
            text.replace(p, 4, "\"2b\"");  // wrong Phi1 sequence
            std::ofstream(dir / "A1.json") << text;
        }
        ::setenv("QCLUSTER_GOLDEN_DIR", dir.c_str(), 1);
        CHECK(golden_dir() == dir.string());
        CHECK_FALSE(run_golden("A1").all_pass());
        ::unsetenv("QCLUSTER_GOLDEN_DIR");
        CHECK(run_golden("A1").all_pass());
        fs::remove_all(dir);
    }
}
