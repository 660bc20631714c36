#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <sstream>

#include <json.hpp>

#include "qcluster/mutation_engine.hpp"
#include "qcluster/polarization.hpp"
#include "qcluster/relations_suite.hpp"

#ifndef QCLUSTER_DATA_DIR
#define QCLUSTER_DATA_DIR "data/golden"
#endif

namespace qcluster {

using json = nlohmann::json;

std::string golden_dir() {
    if (const char* e = std::getenv("QCLUSTER_GOLDEN_DIR"); e && *e) return e;
    return QCLUSTER_DATA_DIR;
}

std::vector<std::string> golden_examples() { return {"A1", "A3", "B3"}; }

namespace {

struct Golden {
    json data;
    ReducedWord word;
};

std::shared_ptr<const Golden> load(const std::string& example) {
    const std::string path = golden_dir() + "/" + example + ".json";
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open golden data " + path);
    auto g = std::make_shared<Golden>();
    g->data = json::parse(in);
    const json& d = g->data;
    RootDatum D = cartan_datum(parse_lie_type(d.at("type").get<std::string>()), d.at("rank").get<int>(),
                               parse_convention(d.at("convention").get<std::string>()));
    g->word = validate_reduced_word(D, d.at("word").get<std::vector<int>>());
    return g;
}

std::string ascii(const std::vector<std::string>& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + ascii_label(v[i]);
    return s + ")";
}

std::vector<std::string> normalized(const json& labels, const std::map<std::string, std::string>& relabel = {}) {
    std::vector<std::string> out;
    for (const auto& x : labels) {
        std::string l = x.is_number() ? std::to_string(x.get<int>()) : x.get<std::string>();
        if (auto it = relabel.find(l); it != relabel.end()) l = it->second;
        out.push_back(normalize_label(l));
    }
    return out;
}

void note(std::string& out, const std::string& msg) {
    if (msg.empty()) return;
    if (!out.empty()) out += "; ";
    out += msg;
}

// arrows drawn as styled paths against the seed's quiver view
std::string compare_quiver(const ClusterSeed& s, const json& paths, const std::map<std::string, std::string>& relabel) {
    struct Want {
        Rational weight;
        std::string style;
    };
    std::map<std::pair<std::string, std::string>, Want> want;
    std::string out;
    for (const auto& p : paths) {
        const auto nodes = normalized(p.at("nodes"), relabel);
        const std::string style = p.at("style");
        for (std::size_t a = 0; a + 1 < nodes.size(); ++a) {
            if (!s.has(nodes[a]) || !s.has(nodes[a + 1])) {
                note(out, "unknown node in " + ascii(nodes));
                continue;
            }
            Rational w = full_weight(s.d(nodes[a]), s.d(nodes[a + 1]));
            if (style == "dashed") w = w / Rational(2);
            auto [it, fresh] = want.try_emplace({nodes[a], nodes[a + 1]}, Want{w, style});
            if (!fresh) {
                it->second.weight += w;
                it->second.style = "multiple";
            }
        }
    }
    std::set<std::pair<std::string, std::string>> seen;
    for (const auto& a : quiver_view(s).arrows) {
        const std::string tag = ascii_label(a.source) + "->" + ascii_label(a.target);
        auto it = want.find({a.source, a.target});
        if (it == want.end()) {
            note(out, "extra " + tag);
            continue;
        }
        seen.insert(it->first);
        if (it->second.weight != a.weight) note(out, tag + " weight " + a.weight.str() + " want " + it->second.weight.str());
        if (it->second.style != style_name(a.style))
            note(out, tag + " style " + style_name(a.style) + " want " + it->second.style);
    }
    for (const auto& [k, w] : want)
        if (!seen.count(k)) note(out, "missing " + ascii_label(k.first) + "->" + ascii_label(k.second));
    return out;
}

std::string compare_node_kinds(const ClusterSeed& s, const json& bq) {
    std::set<std::string> frozen, shorts;
    for (const auto& l : normalized(bq.at("frozen"))) frozen.insert(l);
    for (const auto& l : normalized(bq.at("short"))) shorts.insert(l);
    std::string out;
    for (const auto& n : quiver_view(s).nodes) {
        if (n.frozen != (frozen.count(n.label) > 0)) note(out, ascii_label(n.label) + " frozen flag");
        if (n.short_root != (shorts.count(n.label) > 0)) note(out, ascii_label(n.label) + " short flag");
    }
    return out;
}

std::string check_basic_quiver(const Golden& g) {
    const ClusterSeed s = build_basic_seed(g.word).seed;
    std::string out = compare_quiver(s, g.data.at("basic_quiver").at("paths"), {});
    note(out, compare_node_kinds(s, g.data.at("basic_quiver")));
    return out;
}

std::string check_paths(const Golden& g) {
    std::string out;
    const BasicQuiverSeed b = build_basic_seed(g.word);
    const json& fp = g.data.at("f_paths");
    for (int i = 1; i <= g.word.n(); ++i) {
        const auto want = normalized(fp.at(i - 1));
        const auto got = f_path(b, i).nodes;
        if (got != want) note(out, "F_" + std::to_string(i) + " " + ascii(got) + " want " + ascii(want));
    }
    auto table = bundled_e_paths(g.word);
    if (!table) {
        note(out, "no bundled E-paths");
    } else {
        for (const auto& [key, v] : g.data.at("e_paths").items()) {
            const int i = std::stoi(key);
            const auto want = v.get<std::vector<int>>();
            if (!table->count(i) || table->at(i) != want) note(out, "E_" + key + " differs");
        }
    }
    const GluedSeed gd = glue_doubled(g.word);
    const json& gp = g.data.at("glued_f_paths");
    for (int i = 1; i <= g.word.n(); ++i) {
        const auto want = normalized(gp.at(i - 1));
        const auto got = gd.f_path_nodes(i);
        if (got != want) note(out, "glued F_" + std::to_string(i) + " " + ascii(got) + " want " + ascii(want));
    }
    return out;
}

std::string check_phi(const Golden& g, PhiKind which) {
    const json& d = g.data.at("phi").at(phi_name(which));
    const PhiFactors ph = build_phi(g.word, which);
    std::string out;
    const json& fs = d.at("factors");
    if (fs.size() != ph.factors.size()) {
        note(out, std::to_string(ph.factors.size()) + " factors, want " + std::to_string(fs.size()));
    }
    for (std::size_t j = 0; j < std::min(fs.size(), ph.factors.size()); ++j) {
        const LatticeVector eta = ph.torus->parse_vector(fs[j].at("monomial").get<std::string>());
        const Rational fl = Rational::parse(fs[j].at("flavor").get<std::string>());
        const DilogFactor& f = ph.factors[j];
        if (f.eta != eta || f.flavor != fl || f.direction != Direction::g)
            note(out, "factor " + std::to_string(j + 1) + " X_{" + ph.torus->render(f.eta) + "} want X_{" +
                          ph.torus->render(eta) + "}");
    }
    const MutationSequence seq = derive_mutation_sequence(ph.factors, ph.torus);
    const auto want_seq = normalized(d.at("sequence"));
    if (seq.nodes != want_seq) note(out, "sequence " + ascii(seq.nodes) + " want " + ascii(want_seq));
    const FlipReport rep = verify_flip(ph, seq);
    for (const auto& r : rep.roots) {
        if (!(r.path_polynomial_ok && r.full_monomial_ok && r.pullback_ok))
            note(out, "flip root " + std::to_string(r.root) + ": " + r.residual);
    }
    std::map<std::string, std::string> relabel;
    for (const auto& [k, v] : d.at("target").at("relabel").items()) relabel[k] = v.get<std::string>();
    std::string q = compare_quiver(seq.final_seed(), d.at("target").at("paths"), relabel);
    if (!q.empty()) note(out, "mutated quiver: " + q);
    return out;
}

std::vector<std::string> sorted_forms(const std::vector<LinearForm>& fs) {
    std::vector<std::string> s;
    for (const auto& f : fs) s.push_back(f.str(FormStyle::ascii));
    std::sort(s.begin(), s.end());
    return s;
}

std::vector<LinearForm> parse_forms(const json& list) {
    std::vector<LinearForm> out;
    for (const auto& x : list) out.push_back(LinearForm::parse(x.get<std::string>()));
    return out;
}

std::string join(const std::vector<std::string>& v) {
    std::string s;
    for (const auto& x : v) s += (s.empty() ? "" : " + ") + x;
    return s;
}

// 2 x prefix sums along the concatenated F_i path, the last one is K'_i
struct RootForms {
    std::vector<LinearForm> f;
    std::vector<LinearForm> left;  // prefix terms ending on the left copy
    LinearForm K;
};

RootForms root_forms(const Polarization& p, int i) {
    RootForms r;
    const auto path = p.glued.f_path_nodes(i);
    const std::size_t nl = p.glued.left_count(i);
    LinearForm acc;
    for (std::size_t a = 0; a < path.size(); ++a) {
        acc += p.node(path[a]);
        if (a + 1 == path.size()) break;
        r.f.push_back(acc.scaled(Rational(2)));
        if (a < nl) r.left.push_back(acc.scaled(Rational(2)));
    }
    r.K = acc.scaled(Rational(2));
    return r;
}

std::string compare_operators(const Polarization& p, const json& ops) {
    std::string out;
    for (int i = 1; i <= p.word.n(); ++i) {
        const std::string fi = "f" + std::to_string(i), Ki = "K" + std::to_string(i);
        if (!ops.contains(fi)) continue;
        const RootForms r = root_forms(p, i);
        auto got = sorted_forms(r.f), want = sorted_forms(parse_forms(ops.at(fi)));
        if (got != want) note(out, fi + ": " + join(got) + " want " + join(want));
        const LinearForm K = LinearForm::parse(ops.at(Ki).get<std::string>());
        if (r.K != K) note(out, Ki + ": " + r.K.str(FormStyle::ascii) + " want " + K.str(FormStyle::ascii));
    }
    const auto om = p.omega_mismatches();
    if (!om.empty()) note(out, "Omega != w on " + std::to_string(om.size()) + " pairs");
    return out;
}

// printed order up to swapping commuting factors
std::string compare_exponents(const Polarization& p, PhiKind which, const json& printed) {
    const PhiFactors ph = build_phi(p.word, which);
    const auto rendered = render_phi_operators(ph.factors, *ph.torus, p);
    std::string out;
    if (rendered.size() != printed.size())
        note(out, std::to_string(rendered.size()) + " factors, want " + std::to_string(printed.size()));
    std::vector<bool> used(rendered.size(), false);
    std::vector<std::pair<std::size_t, std::size_t>> hits;  // printed index, computed index
    for (std::size_t j = 0; j < printed.size(); ++j) {
        const LinearForm want = LinearForm::parse(printed[j].get<std::string>());
        std::optional<std::size_t> hit;
        for (std::size_t k = 0; k < rendered.size() && !hit; ++k)
            if (!used[k] && rendered[k].exponent == want) hit = k;
        if (!hit) {
            std::string near = "none";
            std::size_t best = SIZE_MAX;
            for (const auto& r : rendered) {
                const std::size_t dist = (r.exponent - want).coeffs().size();
                if (dist < best) best = dist, near = r.exponent.str(FormStyle::ascii);
            }
            note(out, "exponent " + std::to_string(j + 1) + " printed " + want.str(FormStyle::ascii) +
                          " has no computed factor (closest " + near + ")");
            continue;
        }
        used[*hit] = true;
        hits.emplace_back(j, *hit);
    }
    for (std::size_t a = 0; a < hits.size(); ++a)
        for (std::size_t b = a + 1; b < hits.size(); ++b)
            if (hits[a].second > hits[b].second &&
                !p.omega(rendered[hits[a].second].exponent, rendered[hits[b].second].exponent).is_zero())
                note(out, "exponents " + std::to_string(hits[a].first + 1) + " and " + std::to_string(hits[b].first + 1) +
                              " appear in non-commuting order");
    return out;
}

std::string compare_shift(const AffineShift& S, const json& lines) {
    std::string out;
    std::vector<AffineShift::Step> want;
    for (const auto& l : lines) want.push_back(AffineShift::parse_line(l.get<std::string>()));
    const auto rendered = S.render(FormStyle::ascii);
    std::set<std::size_t> used;
    for (std::size_t j = 0; j < want.size(); ++j) {
        bool found = false;
        for (std::size_t k = 0; k < S.steps.size(); ++k) {
            if (S.steps[k].target == want[j].target && S.steps[k].increment == want[j].increment) {
                found = true;
                used.insert(k);
            }
        }
        if (!found) {
            std::string got;
            for (std::size_t k = 0; k < S.steps.size(); ++k)
                if (S.steps[k].target == want[j].target) got = rendered[k];
            note(out, "printed '" + lines[j].get<std::string>() + "' computed '" + (got.empty() ? "none" : got) + "'");
        }
    }
    for (std::size_t k = 0; k < S.steps.size(); ++k)
        if (!used.count(k) && std::none_of(want.begin(), want.end(), [&](const AffineShift::Step& w) {
                return w.target == S.steps[k].target;
            }))
            note(out, "unprinted step '" + rendered[k] + "'");
    return out;
}

// S applied to the surviving left prefixes and to K'_i against the single-factor forms
std::string compare_normalized(const Polarization& p, const AffineShift& S, const json& target) {
    std::string out;
    for (int i = 1; i <= p.word.n(); ++i) {
        const std::string fi = "f" + std::to_string(i), Ki = "K" + std::to_string(i);
        if (!target.contains(fi)) continue;
        const RootForms r = root_forms(p, i);
        std::vector<LinearForm> left = r.left.empty() ? r.f : r.left;
        for (auto& f : left) f = S.apply(f);
        auto got = sorted_forms(left), want = sorted_forms(parse_forms(target.at(fi)));
        if (got != want) note(out, fi + ": " + join(got) + " want " + join(want));
        const LinearForm K = S.apply(r.K), wantK = LinearForm::parse(target.at(Ki).get<std::string>());
        if (K != wantK) note(out, Ki + ": " + K.str(FormStyle::ascii) + " want " + wantK.str(FormStyle::ascii));
    }
    return out;
}

json as_list(const json& v) { return v.is_array() ? v : json::array({v}); }

json normalized_target(const json& d) {
    json t = json::object();
    for (const auto& [k, v] : d.items()) t[k] = k[0] == 'f' ? as_list(v) : v;
    return t;
}

}  // namespace

std::vector<CheckJob> golden_jobs(const std::string& example) {
    std::shared_ptr<const Golden> g = load(example);
    const std::string tag = example + " ";
    std::vector<CheckJob> jobs;
    jobs.push_back({tag + "basic quiver", [g] { return check_basic_quiver(*g); }});
    jobs.push_back({tag + "F/E paths", [g] { return check_paths(*g); }});
    for (PhiKind k : {PhiKind::phi1, PhiKind::phi3}) {
        if (!g->data.at("phi").contains(phi_name(k))) continue;
        jobs.push_back({tag + phi_name(k) + " factors, sequence, flip, mutated quiver", [g, k] { return check_phi(*g, k); }});
    }
    if (!g->data.contains("polarization")) return jobs;
    const json& pol = g->data.at("polarization");
    const PolarVariant v = parse_variant(pol.at("variant").get<std::string>());
    const bool lambda = pol.at("lambda").get<bool>();
    const bool has_tensor = pol.contains("tensor");
    const bool tensor_ops = has_tensor && pol.at("tensor").contains("operators");

    jobs.push_back({tag + "operators", [g, v, lambda, tensor_ops] {
                        const json& pol = g->data.at("polarization");
                        const Polarization p = polarize(g->word, v, lambda);
                        std::string out = compare_operators(p, pol.at("operators"));
                        if (pol.contains("phi1_exponents"))
                            note(out, compare_exponents(p, PhiKind::phi1, pol.at("phi1_exponents")));
                        if (tensor_ops) {
                            const json& t = pol.at("tensor");
                            const Polarization pt = polarize(g->word, PolarVariant::tensor_square, false);
                            std::string o = compare_operators(pt, t.at("operators"));
                            note(o, compare_exponents(pt, PhiKind::phi3, t.at("phi3_exponents")));
                            if (!o.empty()) note(out, "tensor: " + o);
                        }
                        return out;
                    }});
    if (pol.contains("shift")) {
        jobs.push_back({tag + "normalization shifts", [g, v, lambda] {
                            const json& pol = g->data.at("polarization");
                            const Polarization p = polarize(g->word, v, lambda);
                            const AffineShift S = normalization_shift(p, ShiftGoal::kill_lambda);
                            std::string out = compare_shift(S, pol.at("shift"));
                            note(out, compare_normalized(p, S, normalized_target(pol.at("normalized"))));
                            if (pol.contains("tensor")) {
                                const json& t = pol.at("tensor");
                                const Polarization pt = polarize(g->word, PolarVariant::tensor_square, false);
                                const AffineShift St = normalization_shift(pt, ShiftGoal::kill_second_factor);
                                std::string o = compare_shift(St, t.at("shift"));
                                note(o, compare_normalized(pt, St, normalized_target(t.at("normalized"))));
                                if (!o.empty()) note(out, "tensor: " + o);
                            }
                            return out;
                        }});
    } else if (has_tensor) {
        // printed single-factor operators, their tensor exponents and the shift S
        jobs.push_back({tag + "tensor phi3 exponents", [g] {
                            const Polarization pt = polarize(g->word, PolarVariant::tensor_square, false);
                            return compare_exponents(pt, PhiKind::phi3,
                                                     g->data.at("polarization").at("tensor").at("phi3_exponents"));
                        }});
        jobs.push_back({tag + "tensor shift S", [g] {
                            const Polarization pt = polarize(g->word, PolarVariant::tensor_square, false);
                            const AffineShift S = normalization_shift(pt, ShiftGoal::kill_second_factor);
                            return compare_shift(S, g->data.at("polarization").at("tensor").at("shift"));
                        }});
        jobs.push_back({tag + "tensor decomposition forms", [g] {
                            const Polarization pt = polarize(g->word, PolarVariant::tensor_square, false);
                            const AffineShift S = normalization_shift(pt, ShiftGoal::kill_second_factor);
                            return compare_normalized(pt, S, g->data.at("polarization").at("operators"));
                        }});
    }
    return jobs;
}

VerificationReport run_golden(const std::string& example, int threads) {
    return run_checks("golden-" + example, golden_jobs(example), threads);
}

}  // namespace qcluster
