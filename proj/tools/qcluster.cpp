#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "qcluster/dilog_series.hpp"
#include "qcluster/mutation_engine.hpp"
#include "qcluster/polarization.hpp"
#include "qcluster/relations_suite.hpp"

using namespace qcluster;
using ojson = nlohmann::ordered_json;

namespace {

struct CliConfig {
    std::string type = "A";
    int rank = 0;
    std::string word;
    std::string convention = "bourbaki";
    std::string seed_file;
    std::string example;
    std::string which = "phi1";
    std::string report = "text";
    std::string glue = "single";
    std::string variant = "doubled";
    std::string shift;
    std::string style = "unicode";
    std::string suite = "all";
    std::string identity = "all";
    std::string at;
    std::string monomial;
    int order = 8;
    int jobs = 1;
    unsigned rng = 1;
    bool emit_dot = false;
    bool no_lambda = false;
};

struct Usage : std::runtime_error {
    using std::runtime_error::runtime_error;
};

ReducedWord example_word(const std::string& ex) {
    if (ex == "A1") return validate_reduced_word(cartan_datum(LieType::A, 1), {1});
    if (ex == "A3") return validate_reduced_word(cartan_datum(LieType::A, 3), standard_a_word(3));
    if (ex == "B3")
        return validate_reduced_word(cartan_datum(LieType::B, 3, ShortRootConvention::reversed),
                                     {1, 2, 1, 2, 3, 2, 1, 2, 3});
    throw Usage("unknown example '" + ex + "' (A1|A3|B3)");
}

ReducedWord word_from(const CliConfig& c) {
    if (!c.example.empty()) return example_word(c.example);
    if (c.rank <= 0) throw Usage("--rank is required without --example");
    const LieType t = parse_lie_type(c.type);
    const RootDatum D = cartan_datum(t, c.rank, parse_convention(c.convention));
    std::vector<int> letters;
    if (!c.word.empty()) letters = parse_word(c.word);
    else if (t == LieType::A) letters = standard_a_word(c.rank);
    else throw Usage("--word is required for type " + c.type);
    return validate_reduced_word(D, letters);
}

FormStyle parse_style(const std::string& s) {
    if (s == "unicode") return FormStyle::unicode;
    if (s == "ascii") return FormStyle::ascii;
    if (s == "latex") return FormStyle::latex;
    throw Usage("unknown style '" + s + "'");
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Usage("cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

GluedSeed glued_from(const CliConfig& c) {
    const ReducedWord w = word_from(c);
    const BorelMode m = parse_mode(c.glue);
    if (m == BorelMode::single) return single_quiver(w);
    if (m == BorelMode::doubled) return glue_doubled(w);
    return glue_tensor(w);
}

std::vector<std::string> split_labels(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string t;
    while (std::getline(ss, t, ','))
        if (!t.empty()) out.push_back(normalize_label(t));
    return out;
}

int cmd_quiver_build(const CliConfig& c) {
    if (parse_mode(c.glue) == BorelMode::single) {
        const BasicQuiverSeed b = build_basic_seed(word_from(c));
        std::cout << (c.emit_dot ? export_basic_dot(b) : export_json(b.seed) + "\n");
        return 0;
    }
    const GluedSeed g = glued_from(c);
    std::cout << (c.emit_dot ? export_dot(g.seed) : export_json(g.seed) + "\n");
    return 0;
}

int cmd_quiver_paths(const CliConfig& c) {
    const ReducedWord w = word_from(c);
    const BasicQuiverSeed b = build_basic_seed(w);
    ojson j;
    j["word"] = w.letters();
    j["f_paths"] = ojson::object();
    j["e_paths"] = ojson::object();
    auto table = bundled_e_paths(w);
    for (int i = 1; i <= w.n(); ++i) {
        j["f_paths"][std::to_string(i)] = f_path(b, i).nodes;
        if (table && table->count(i)) j["e_paths"][std::to_string(i)] = table->at(i);
    }
    std::cout << j.dump(2) << "\n";
    return 0;
}

ClusterSeed seed_from(const CliConfig& c) {
    if (!c.seed_file.empty()) {
        if (!c.word.empty() || !c.example.empty()) throw Usage("--seed excludes --word and --example");
        return import_seed(read_file(c.seed_file));
    }
    return glued_from(c).seed;
}

int cmd_mutate(const CliConfig& c) {
    const auto ks = split_labels(c.at);
    if (ks.empty()) throw Usage("--at needs at least one node");
    std::vector<ClusterSeed> seeds{seed_from(c)};
    for (const auto& k : ks) seeds.push_back(mutate_seed(seeds.back(), k));
    if (c.emit_dot) {
        std::cout << export_dot(seeds.back());
        return 0;
    }
    ojson j;
    j["sequence"] = ks;
    j["seed"] = ojson::parse(export_json(seeds.back()));
    if (!c.monomial.empty()) {
        // X of the final seed pulled back through mu_{k_1}^q ... mu_{k_m}^q
        std::vector<TorusPtr> tori;
        for (const auto& s : seeds) tori.push_back(make_torus(s));
        FracElement x(TorusElement::monomial(tori.back(), tori.back()->parse_vector(c.monomial)));
        for (std::size_t m = ks.size(); m-- > 0;) x = quantum_mutation(x, seeds[m], ks[m], tori[m + 1], tori[m]);
        x.simplify();
        j["monomial"] = c.monomial;
        j["image"] = x.str();
        j["polynomial"] = x.is_polynomial();
    }
    std::cout << j.dump(2) << "\n";
    return 0;
}

int cmd_flip(const CliConfig& c) {
    const ReducedWord w = word_from(c);
    const PhiKind k = parse_phi(c.which);
    const PhiFactors ph = build_phi(w, k);
    const MutationSequence seq = derive_mutation_sequence(ph.factors, ph.torus);
    const FlipReport rep = verify_flip(ph, seq);
    if (c.emit_dot) {
        std::cout << export_dot(seq.final_seed(), phi_name(k));
        return rep.all_ok() ? 0 : 1;
    }
    if (c.report == "json") {
        ojson j;
        j["word"] = w.letters();
        j["type"] = w.datum().name();
        j["which"] = phi_name(k);
        j["factors"] = ojson::array();
        for (const auto& f : ph.factors)
            j["factors"].push_back({{"flavor", f.flavor.str()}, {"monomial", ph.torus->render(f.eta)}});
        j["sequence"] = seq.nodes;
        j["sequence_length"] = seq.nodes.size();
        j["roots"] = ojson::array();
        for (const auto& r : rep.roots)
            j["roots"].push_back({{"root", r.root},
                                  {"path_polynomial", r.path_polynomial_ok},
                                  {"full_monomial", r.full_monomial_ok},
                                  {"pullback", r.pullback_ok},
                                  {"mutated_path", r.mutated_path},
                                  {"residual", r.residual}});
        j["all_ok"] = rep.all_ok();
        j["mutated_seed"] = ojson::parse(export_json(seq.final_seed()));
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << phi_name(k) << " for " << w.datum().name() << " " << format_word(w.letters()) << "\n";
        for (const auto& f : ph.factors)
            std::cout << "  g_{" << f.flavor.str() << "}(X_{" << ph.torus->render(f.eta) << "})\n";
        std::cout << "sequence (" << seq.nodes.size() << "):";
        for (const auto& n : seq.nodes) std::cout << " " << n;
        std::cout << "\n";
        for (const auto& r : rep.roots) {
            std::cout << "root " << r.root << ": " << (r.path_polynomial_ok && r.full_monomial_ok && r.pullback_ok ? "ok" : "FAIL")
                      << " path";
            for (const auto& n : r.mutated_path) std::cout << " " << n;
            if (!r.residual.empty()) std::cout << " (" << r.residual << ")";
            std::cout << "\n";
        }
    }
    return rep.all_ok() ? 0 : 1;
}

std::vector<CheckJob> suite_jobs(const CliConfig& c) {
    std::vector<CheckJob> jobs;
    auto add = [&](std::vector<CheckJob> more) { jobs.insert(jobs.end(), more.begin(), more.end()); };
    const std::string& s = c.suite;
    if (s == "acceptance") return acceptance_jobs();
    if (s.rfind("golden-", 0) == 0) return golden_jobs(s.substr(7));
    if (s == "golden" || s == "all")
        for (const auto& e : golden_examples()) add(golden_jobs(e));
    if (s == "relations" || s == "all") {
        std::vector<ReducedWord> ws;
        if (c.rank > 0 || !c.example.empty()) {
            ws.push_back(word_from(c));
        } else {
            ws = {example_word("A3"), example_word("B3"),
                  validate_reduced_word(cartan_datum(LieType::A, 2), {1, 2, 1}),
                  validate_reduced_word(cartan_datum(LieType::B, 2, ShortRootConvention::reversed), {1, 2, 1, 2})};
        }
        for (const auto& w : ws)
            for (BorelMode m : {BorelMode::single, BorelMode::doubled, BorelMode::tensor_square}) {
                // realizations are shared by the jobs through the captured pointer
                auto r = std::make_shared<BorelRealization>(realize(w, m));
                for (auto& j : borel_relation_jobs(*r)) {
                    auto run = j.run;
                    jobs.push_back({j.name, [r, run] { return run(); }});
                }
            }
    }
    if (s == "oracle" || s == "all")
        for (const auto& n : identity_names())
            jobs.push_back({"oracle " + n, [n, order = c.order, rng = c.rng] {
                                const SeriesReport r = run_identity(n, order, rng);
                                std::string out;
                                for (const auto& m : r.mismatches) out += (out.empty() ? "" : "; ") + m;
                                return r.ok ? std::string() : (out.empty() ? "failed" : out);
                            }});
    if (jobs.empty()) throw Usage("unknown suite '" + s + "' (all|acceptance|golden|golden-A1|golden-A3|golden-B3|relations|oracle)");
    return jobs;
}

void print_report(const VerificationReport& r, const std::string& format) {
    if (format == "json") std::cout << r.to_json();
    else if (format == "junit") std::cout << r.to_junit();
    else if (format == "text") std::cout << r.to_text();
    else throw Usage("unknown report format '" + format + "'");
}

int cmd_verify(const CliConfig& c) {
    const VerificationReport r = run_checks(c.suite, suite_jobs(c), c.jobs);
    print_report(r, c.report);
    return r.all_pass() ? 0 : 1;
}

int cmd_polarize(const CliConfig& c) {
    const ReducedWord w = word_from(c);
    const PolarVariant v = parse_variant(c.variant);
    const Polarization p = polarize(w, v, !c.no_lambda);
    const FormStyle st = parse_style(c.style);
    ojson j;
    j["type"] = w.datum().name();
    j["word"] = w.letters();
    j["variant"] = variant_name(v);
    j["nodes"] = ojson::object();
    for (const auto& l : p.glued.seed.labels()) j["nodes"][c.style == "ascii" ? ascii_label(l) : l] = p.node(l).str(st);
    j["generators"] = ojson::object();
    for (int i = 1; i <= w.n(); ++i) {
        const auto path = p.glued.f_path_nodes(i);
        LinearForm acc;
        ojson terms = ojson::array();
        for (std::size_t a = 0; a < path.size(); ++a) {
            acc += p.node(path[a]);
            if (a + 1 < path.size()) terms.push_back(acc.scaled(Rational(2)).str(st));
        }
        j["generators"]["f" + std::to_string(i)] = terms;
        j["generators"]["K" + std::to_string(i)] = acc.scaled(Rational(2)).str(st);
    }
    j["omega_mismatches"] = p.omega_mismatches();
    if (!c.shift.empty()) {
        const ShiftGoal g = c.shift == "kill_lambda"          ? ShiftGoal::kill_lambda
                            : c.shift == "kill_second_factor" ? ShiftGoal::kill_second_factor
                                                              : throw Usage("unknown shift '" + c.shift + "'");
        j["shift"] = normalization_shift(p, g).render(st);
    }
    const bool phi_ok = (v == PolarVariant::doubled && c.which == "phi1") ||
                        (v == PolarVariant::tensor_square && c.which == "phi3");
    if (phi_ok) {
        const PhiFactors ph = build_phi(w, parse_phi(c.which));
        ojson ex = ojson::array();
        for (const auto& r : render_phi_operators(ph.factors, *ph.torus, p))
            ex.push_back({{"flavor", r.flavor.str()}, {"exponent", r.exponent.str(st)}});
        j[c.which + "_exponents"] = ex;
    }
    if (c.report == "json") {
        std::cout << j.dump(2) << "\n";
    } else {
        for (const auto& [k, v2] : j["generators"].items())
            std::cout << k << ": " << (v2.is_array() ? v2.dump() : v2.get<std::string>()) << "\n";
        if (j.contains("shift"))
            for (const auto& l : j["shift"]) std::cout << l.get<std::string>() << "\n";
        if (j.contains(c.which + "_exponents"))
            for (const auto& e : j[c.which + "_exponents"])
                std::cout << c.which << " g_{" << e["flavor"].get<std::string>() << "}(e^{pi b ("
                          << e["exponent"].get<std::string>() << ")})\n";
        std::cout << "Omega mismatches: " << p.omega_mismatches().size() << "\n";
    }
    return p.omega_mismatches().empty() ? 0 : 1;
}

int cmd_oracle(const CliConfig& c) {
    std::vector<std::string> names = c.identity == "all" ? identity_names() : std::vector<std::string>{c.identity};
    bool ok = true;
    ojson j = ojson::array();
    for (const auto& n : names) {
        const SeriesReport r = run_identity(n, c.order, c.rng);
        ok &= r.ok;
        if (c.report == "json") {
            j.push_back({{"identity", n}, {"order", r.order}, {"ok", r.ok}, {"mismatches", r.mismatches}});
        } else {
            std::cout << (r.ok ? "PASS " : "FAIL ") << n << " to order " << r.order << "\n";
            for (const auto& m : r.mismatches) std::cout << "  " << m << "\n";
        }
    }
    if (c.report == "json") std::cout << j.dump(2) << "\n";
    return ok ? 0 : 1;
}

void word_flags(CLI::App* app, CliConfig& c) {
    app->add_option("--type", c.type, "Lie type A..G");
    app->add_option("--rank", c.rank, "rank");
    app->add_option("--word", c.word, "reduced word, comma separated");
    app->add_option("--convention", c.convention, "bourbaki | reversed");
    app->add_option("--example", c.example, "A1 | A3 | B3");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"qcluster: quantum cluster realizations of Borel subalgebras"};
    app.require_subcommand(1);
    CliConfig c;

    auto* quiver = app.add_subcommand("quiver", "basic quivers and their gluings");
    quiver->require_subcommand(1);
    auto* build = quiver->add_subcommand("build", "emit the seed as JSON or DOT");
    word_flags(build, c);
    build->add_option("--glue", c.glue, "single | doubled | tensor_square");
    build->add_flag("--emit-dot", c.emit_dot, "DOT instead of JSON");
    auto* paths = quiver->add_subcommand("paths", "F_i and E_i paths");
    word_flags(paths, c);

    auto* mutate = app.add_subcommand("mutate", "mutate a seed along a sequence");
    word_flags(mutate, c);
    mutate->add_option("--seed", c.seed_file, "seed JSON file");
    mutate->add_option("--glue", c.glue, "single | doubled | tensor_square");
    mutate->add_option("--at", c.at, "nodes, comma separated, applied left to right")->required();
    mutate->add_option("--monomial", c.monomial, "monomial of the final seed to pull back, e.g. 1,3^2");
    mutate->add_flag("--emit-dot", c.emit_dot, "DOT of the mutated seed");

    auto* flip = app.add_subcommand("flip", "build Phi, derive its mutation sequence and verify the flip");
    word_flags(flip, c);
    flip->add_option("--which", c.which, "phi1 | phi3");
    flip->add_option("--report", c.report, "text | json");
    flip->add_flag("--emit-dot", c.emit_dot, "DOT of the mutated seed");

    auto* verify = app.add_subcommand("verify", "run verification suites");
    word_flags(verify, c);
    verify->add_option("--suite", c.suite, "all | acceptance | golden | golden-A1 | golden-A3 | golden-B3 | relations | oracle");
    verify->add_option("--report", c.report, "text | json | junit");
    verify->add_option("--jobs", c.jobs, "parallel checks")->check(CLI::PositiveNumber);
    verify->add_option("--order", c.order, "series order for the oracle suite");
    verify->add_option("--seed", c.rng, "random seed for the oracle suite");

    auto* polar = app.add_subcommand("polarize", "linear forms of a polarized seed");
    word_flags(polar, c);
    polar->add_option("--variant", c.variant, "doubled | single_plus | single_minus | single_minus_sigma | tensor_square");
    polar->add_flag("--no-lambda", c.no_lambda, "drop the lambda parameters");
    polar->add_option("--shift", c.shift, "kill_lambda | kill_second_factor");
    polar->add_option("--which", c.which, "phi1 (doubled) | phi3 (tensor_square) exponents");
    polar->add_option("--style", c.style, "unicode | ascii | latex");
    polar->add_option("--report", c.report, "text | json");

    auto* oracle = app.add_subcommand("oracle", "quantum dilogarithm series identities");
    oracle->add_option("--identity", c.identity, "all | guv | gcon | gdouble | g12 | random");
    oracle->add_option("--order", c.order, "truncation order")->check(CLI::PositiveNumber);
    oracle->add_option("--seed", c.rng, "random seed");
    oracle->add_option("--report", c.report, "text | json");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }
    try {
        if (build->parsed()) return cmd_quiver_build(c);
        if (paths->parsed()) return cmd_quiver_paths(c);
        if (mutate->parsed()) return cmd_mutate(c);
        if (flip->parsed()) return cmd_flip(c);
        if (verify->parsed()) return cmd_verify(c);
        if (polar->parsed()) return cmd_polarize(c);
        if (oracle->parsed()) return cmd_oracle(c);
    } catch (const Usage& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 2;
}
