#include <chrono>
#include <random>
#include <sstream>

#include "qcluster/dilog_series.hpp"
#include "qcluster/mutation_engine.hpp"
#include "qcluster/polarization.hpp"
#include "qcluster/relations_suite.hpp"

namespace qcluster {

ClusterSeed random_seed(unsigned seed, int max_nodes) {
    std::mt19937 rng(seed);
    const int n = 2 + static_cast<int>(rng() % (max_nodes - 1));
    std::vector<std::string> labels;
    std::vector<bool> frozen;
    std::vector<Rational> d;
    const bool mixed = rng() % 2;
    for (int i = 0; i < n; ++i) {
        labels.push_back(std::to_string(i + 1));
        frozen.push_back(i > 0 && rng() % 4 == 0);
        d.push_back(mixed && rng() % 2 ? Rational(1, 2) : Rational(1));
    }
    ClusterSeed s(labels, frozen, d);
    std::uniform_int_distribution<int> m(-2, 2);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            // w = m max(d_i, d_j) keeps b integral in both directions
            const int c = rng() % 3 == 0 ? 0 : m(rng);
            if (c != 0) s.set_w(i, j, Rational(c) * std::max(d[i], d[j]));
        }
    s.validate();
    return s;
}

std::string check_mutation_involution(const ClusterSeed& s, const std::string& k) {
    const ClusterSeed t = mutate_seed(s, k);
    if (mutate_seed(t, k) != s) return "seed mutation is not an involution at " + k;
    TorusPtr Ts = make_torus(s), Tt = make_torus(t);
    std::string out;
    for (std::size_t i = 0; i < s.size(); ++i) {
        const TorusElement x = TorusElement::monomial(Ts, Ts->unit(s.label(i)));
        FracElement y = quantum_mutation(FracElement(x), t, k, Ts, Tt);
        FracElement z = quantum_mutation(y, s, k, Tt, Ts);
        if (!z.equals(x)) {
            out += (out.empty() ? "" : "; ") + std::string("X_") + s.label(i) + " -> " + z.str();
        }
    }
    return out;
}

std::string check_form_preservation(const ClusterSeed& s, const std::string& k) {
    const LatticeMap L = monomial_transform(s, k);
    const std::size_t n = s.size();
    std::string out;
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a + 1; b < n; ++b) {
            LatticeVector ea(n, 0), eb(n, 0);
            ea[a] = 1;
            eb[b] = 1;
            const Rational lhs = L.to->pair(L.apply(ea), L.apply(eb));
            const Rational rhs = L.from->pair(ea, eb);
            if (lhs != rhs)
                out += (out.empty() ? "" : "; ") + s.label(a) + "," + s.label(b) + ": " + lhs.str() + " vs " + rhs.str();
        }
    return out;
}

namespace {

using Clock = std::chrono::steady_clock;

std::string within(const std::string& failures, Clock::time_point t0, double budget_s) {
    const double s = std::chrono::duration<double>(Clock::now() - t0).count();
    std::string out = failures;
    if (s > budget_s) {
        std::ostringstream o;
        o << "runtime " << s << " s exceeds " << budget_s << " s";
        out += (out.empty() ? "" : "; ") + o.str();
    }
    return out;
}

// runs the named golden checks and concatenates their failures
std::string golden_subset(const std::string& example, const std::vector<std::string>& names) {
    std::string out;
    for (const auto& j : golden_jobs(example)) {
        bool wanted = false;
        for (const auto& n : names) wanted |= j.name == example + " " + n;
        if (!wanted) continue;
        std::string r;
        try {
            r = j.run();
        } catch (const std::exception& e) {
            r = std::string("exception: ") + e.what();
        }
        if (!r.empty()) out += (out.empty() ? "" : " | ") + j.name + ": " + r;
    }
    return out;
}

ReducedWord word_of(LieType t, int n, std::vector<int> w,
                    ShortRootConvention c = ShortRootConvention::bourbaki) {
    return validate_reduced_word(cartan_datum(t, n, c), w);
}

std::vector<ReducedWord> battery_words() {
    return {word_of(LieType::A, 2, {1, 2, 1}), word_of(LieType::A, 3, {1, 2, 1, 3, 2, 1}),
            word_of(LieType::B, 2, {1, 2, 1, 2}, ShortRootConvention::reversed),
            word_of(LieType::B, 3, {1, 2, 1, 2, 3, 2, 1, 2, 3}, ShortRootConvention::reversed)};
}

std::string relation_battery() {
    std::string out;
    for (const auto& w : battery_words())
        for (BorelMode m : {BorelMode::single, BorelMode::doubled, BorelMode::tensor_square}) {
            const VerificationReport r = run_borel_relations(realize(w, m));
            for (const auto& c : r.checks)
                if (!c.pass) out += (out.empty() ? "" : "; ") + c.name + ": " + c.residual;
        }
    return out;
}

std::string random_mutations(int count) {
    std::string out;
    int done = 0;
    for (unsigned s = 1; done < count; ++s) {
        const ClusterSeed seed = random_seed(s, 8);
        std::vector<std::string> ks;
        for (std::size_t i = 0; i < seed.size(); ++i)
            if (!seed.frozen(i)) ks.push_back(seed.label(i));
        if (ks.empty()) continue;
        const std::string& k = ks[s % ks.size()];
        std::string r = check_mutation_involution(seed, k);
        const std::string f = check_form_preservation(seed, k);
        if (!f.empty()) r += (r.empty() ? "" : "; ") + f;
        if (!r.empty()) out += (out.empty() ? "" : " | ") + ("seed " + std::to_string(s) + " at " + k + ": " + r);
        ++done;
    }
    return out;
}

std::string dilog_oracle() {
    std::string out;
    for (const auto& name : identity_names()) {
        const SeriesReport r = run_identity(name, 8, 7);
        if (!r.ok) out += (out.empty() ? "" : "; ") + name + ": " + (r.mismatches.empty() ? "" : r.mismatches[0]);
    }
    return out;
}

std::string omega_everywhere() {
    std::vector<ReducedWord> ws{word_of(LieType::A, 1, {1}), word_of(LieType::A, 2, {1, 2, 1}),
                                word_of(LieType::A, 3, {1, 2, 1, 3, 2, 1}),
                                word_of(LieType::B, 2, {1, 2, 1, 2}),
                                word_of(LieType::B, 3, {1, 2, 1, 2, 3, 2, 1, 2, 3}, ShortRootConvention::reversed),
                                word_of(LieType::C, 3, {1, 2, 1, 2, 3, 2, 1, 2, 3}, ShortRootConvention::reversed)};
    std::string out;
    for (const auto& w : ws) {
        const bool simply_laced = w.datum().type == LieType::A;
        for (PolarVariant v : {PolarVariant::doubled, PolarVariant::single_plus, PolarVariant::single_minus,
                               PolarVariant::single_minus_sigma, PolarVariant::tensor_square}) {
            if (v == PolarVariant::single_minus_sigma && !simply_laced) continue;
            for (bool lambda : {true, false}) {
                const auto bad = polarize(w, v, lambda).omega_mismatches();
                if (!bad.empty())
                    out += (out.empty() ? "" : "; ") + w.datum().name() + " " + variant_name(v) + ": " +
                           std::to_string(bad.size()) + " pairs";
            }
        }
    }
    return out;
}

}  // namespace

std::vector<CheckJob> acceptance_jobs() {
    std::vector<CheckJob> j;
    j.push_back({"1 basic quivers A3, B3", [] {
                     auto t0 = Clock::now();
                     std::string out = golden_subset("A3", {"basic quiver"});
                     const std::string b = golden_subset("B3", {"basic quiver"});
                     if (!b.empty()) out += (out.empty() ? "" : " | ") + b;
                     return within(out, t0, 1);
                 }});
    j.push_back({"2 A1 flip", [] {
                     auto t0 = Clock::now();
                     return within(golden_subset("A1", {"phi1 factors, sequence, flip, mutated quiver"}), t0, 1);
                 }});
    j.push_back({"3 A3 flip", [] {
                     auto t0 = Clock::now();
                     return within(golden_subset("A3", {"phi1 factors, sequence, flip, mutated quiver"}), t0, 10);
                 }});
    j.push_back({"4 B3 flips", [] {
                     auto t0 = Clock::now();
                     return within(golden_subset("B3", {"phi1 factors, sequence, flip, mutated quiver",
                                                        "phi3 factors, sequence, flip, mutated quiver"}),
                                   t0, 60);
                 }});
    j.push_back({"5 relation battery A2 A3 B2 B3 x single/doubled/tensor", [] {
                     auto t0 = Clock::now();
                     return within(relation_battery(), t0, 60);
                 }});
    j.push_back({"6 mutation involution and form preservation, 100 random seeds", [] {
                     return random_mutations(100);
                 }});
    j.push_back({"7 dilog oracle to order 8", [] {
                     auto t0 = Clock::now();
                     return within(dilog_oracle(), t0, 30);
                 }});
    j.push_back({"8 polarization golden", [] {
                     auto t0 = Clock::now();
                     std::string out = golden_subset("A1", {"operators", "normalization shifts"});
                     const std::string a3 = golden_subset(
                         "A3", {"operators", "tensor phi3 exponents", "tensor shift S", "tensor decomposition forms"});
                     if (!a3.empty()) out += (out.empty() ? "" : " | ") + a3;
                     const std::string om = omega_everywhere();
                     if (!om.empty()) out += (out.empty() ? "" : " | ") + std::string("Omega: ") + om;
                     return within(out, t0, 10);
                 }});
    return j;
}

VerificationReport run_acceptance(int threads) { return run_checks("acceptance", acceptance_jobs(), threads); }

}  // namespace qcluster
