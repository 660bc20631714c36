#include "qcluster/basic_quiver.hpp"

#include <algorithm>
#include <functional>

namespace qcluster {

std::string node_label(Labeling lab, int k) {
    switch (lab) {
        case Labeling::plain: return plain_label(k);
        case Labeling::bar: return bar_label(k);
        case Labeling::prime: return prime_label(k);
    }
    return plain_label(k);
}

BasicQuiverSeed build_basic_seed(const ReducedWord& w, Labeling lab) {
    const int N = w.N(), n = w.n(), M = N + n;
    const RootDatum& D = w.datum();
    std::vector<std::string> labels;
    std::vector<bool> frozen;
    std::vector<Rational> d;
    for (int k = 1; k <= M; ++k) {
        labels.push_back(node_label(lab, k));
        frozen.push_back(w.is_frozen(k));
        d.push_back(D.mult(w.root(k)));
    }
    ClusterSeed s(labels, frozen, d);
    auto full = [&](int a, int b) { return full_weight(d[a - 1], d[b - 1]); };
    auto adj = [&](int a, int b) { return D.adjacent(w.root(a), w.root(b)); };
    auto add = [&](int a, int b, const Rational& v) { s.add_w(a - 1, b - 1, v); };

    for (int k = 1; k <= N; ++k) add(k, w.plus(k), full(k, w.plus(k)));
    for (int k = 1; k <= M; ++k)
        for (int l = 1; l < k; ++l) {
            if (!adj(k, l)) continue;
            if (k > N && l > N) continue;
            if (w.minus(l) < w.minus(k) && w.minus(k) < l) add(k, l, full(k, l));
        }
    const auto& fin = w.f_in();
    for (int k : fin)
        for (int l : fin)
            if (k > l && adj(k, l)) add(k, l, full(k, l) / 2);
    for (int k = N + 1; k <= M; ++k)
        for (int l = N + 1; l <= M; ++l)
            if (w.minus(k) > w.minus(l) && adj(k, l)) add(k, l, full(k, l) / 2);
    return BasicQuiverSeed{w, lab, s};
}

std::vector<std::string> PathPolynomial::polynomial_nodes() const {
    if (terminal || nodes.empty()) return nodes;
    return std::vector<std::string>(nodes.begin(), nodes.end() - 1);
}

TorusElement PathPolynomial::polynomial(const TorusPtr& t) const {
    TorusElement e(t);
    LatticeVector acc = t->zero();
    for (const auto& n : polynomial_nodes()) {
        acc[t->index(n)] += 1;
        e.add_term(acc, QLaurent(1));
    }
    return e;
}

TorusElement PathPolynomial::monomial(const TorusPtr& t) const { return TorusElement::path_monomial(t, nodes); }

std::string PathPolynomial::str() const {
    std::string s = "(";
    for (std::size_t i = 0; i < nodes.size(); ++i) s += (i ? "," : "") + nodes[i];
    if (terminal) s += "," + std::to_string(*terminal);
    return s + ")";
}

std::optional<EPathTable> bundled_e_paths(const ReducedWord& w) {
    const RootDatum& D = w.datum();
    const int N = w.N(), n = w.n();
    if (D.type == LieType::A && w.letters() == standard_a_word(n)) {
        // E_r = (N+r, last occurrence of r-1, second to last of r-2, ...)
        EPathTable t;
        for (int r = 1; r <= n; ++r) {
            std::vector<int> p{N + r};
            for (int s = r - 1, depth = 1; s >= 1; --s, ++depth) {
                auto row = w.row(s);
                row.pop_back();
                p.push_back(row[row.size() - depth]);
            }
            p.push_back(N + n + r);
            t[r] = p;
        }
        return t;
    }
    if (D.convention == ShortRootConvention::reversed && D.type == LieType::B) {
        if (n == 3 && w.letters() == std::vector<int>{1, 2, 1, 2, 3, 2, 1, 2, 3})
            return EPathTable{{1, {10, 8, 7, 4, 3, 13}}, {2, {11, 9, 6, 14}}, {3, {12, 15}}};
        if (n == 2 && w.letters() == std::vector<int>{1, 2, 1, 2})
            return EPathTable{{1, {5, 4, 3, 7}}, {2, {6, 8}}};
    }
    return std::nullopt;
}

std::map<int, std::vector<std::vector<int>>> search_e_paths(const ReducedWord& w, int max_len) {
    BasicQuiverSeed b = build_basic_seed(w);
    TorusPtr T = make_torus(b.seed);
    const int N = w.N(), n = w.n();
    std::vector<TorusElement> f, K;
    for (int j = 1; j <= n; ++j) {
        PathPolynomial p = f_path(b, j);
        f.push_back(p.polynomial(T));
        K.push_back(p.monomial(T));
    }
    std::map<int, std::vector<std::vector<int>>> out;
    for (int i = 1; i <= n; ++i) {
        const Rational di = w.datum().mult(i);
        std::vector<int> path{N + i};
        std::function<void()> rec = [&]() {
            std::vector<std::string> labels;
            for (int k : path) labels.push_back(b.label(k));
            TorusElement e = PathPolynomial{labels, N + n + i}.polynomial(T);
            bool ok = true;
            for (int j = 1; j <= n && ok; ++j) {
                try {
                    TorusElement c = commutator_quotient(e, f[j - 1], di);
                    ok = (i == j) ? c == K[j - 1] : c.is_zero();
                } catch (const NotDivisible&) {
                    ok = false;
                }
            }
            if (ok) {
                auto p = path;
                p.push_back(N + n + i);
                out[i].push_back(p);
            }
            if (static_cast<int>(path.size()) >= max_len) return;
            const int last = path.back();
            for (int k = 1; k <= N + n; ++k) {
                if (std::find(path.begin(), path.end(), k) != path.end()) continue;
                if (b.seed.w(last - 1, k - 1).sign() <= 0) continue;
                path.push_back(k);
                rec();
                path.pop_back();
            }
        };
        rec();
    }
    return out;
}

PathPolynomial f_path(const BasicQuiverSeed& s, int i) {
    PathPolynomial p;
    for (int k : s.word.row(i)) p.nodes.push_back(s.label(k));
    return p;
}

PathPolynomial e_path(const BasicQuiverSeed& s, int i, const EPathTable* user) {
    std::optional<EPathTable> table;
    if (user) table = *user;
    else table = bundled_e_paths(s.word);
    if (!table || !table->count(i))
        throw EPathUnavailable("no E-path data for root " + std::to_string(i) + " of word " +
                               format_word(s.word.letters()));
    const auto& idx = table->at(i);
    const int N = s.word.N(), n = s.word.n();
    PathPolynomial p;
    for (std::size_t j = 0; j < idx.size(); ++j) {
        int k = idx[j];
        if (j + 1 == idx.size() && k > N + n) {
            p.terminal = k;
            break;
        }
        if (k < 1 || k > N + n) throw EPathUnavailable("E-path node " + std::to_string(k) + " outside Q_F");
        p.nodes.push_back(s.label(k));
    }
    return p;
}

std::string mode_name(BorelMode m) {
    switch (m) {
        case BorelMode::single: return "single";
        case BorelMode::doubled: return "doubled";
        case BorelMode::tensor_square: return "tensor_square";
    }
    return "?";
}

BorelMode parse_mode(const std::string& s) {
    if (s == "single") return BorelMode::single;
    if (s == "doubled") return BorelMode::doubled;
    if (s == "tensor_square" || s == "tensor") return BorelMode::tensor_square;
    throw std::invalid_argument("unknown mode '" + s + "'");
}

std::string GluedSeed::left_node(int k) const {
    std::string l = node_label(left_lab, k);
    auto it = rename_left.find(l);
    return it == rename_left.end() ? l : it->second;
}

std::string GluedSeed::glue_node(int i) const {
    for (int k : right.f_in())
        if (right.root(k) == i) return right_node(k);
    throw std::logic_error("root without F_in node");
}

std::vector<std::string> GluedSeed::f_path_nodes(int i) const {
    std::vector<std::string> p;
    if (left) {
        auto row = left->row(i);
        row.pop_back();
        for (int k : row) p.push_back(left_node(k));
    }
    for (int k : right.row(i)) p.push_back(right_node(k));
    return p;
}

std::size_t GluedSeed::left_count(int i) const { return left ? left->row(i).size() - 1 : 0; }

GluedSeed single_quiver(const ReducedWord& w) {
    GluedSeed g{BorelMode::single, std::nullopt, w, Labeling::plain, Labeling::plain, build_basic_seed(w).seed, {}};
    return g;
}

namespace {
GluedSeed glue(BorelMode kind, const ReducedWord& l, const ReducedWord& r, Labeling rlab) {
    BasicQuiverSeed a = build_basic_seed(l, Labeling::plain);
    BasicQuiverSeed b = build_basic_seed(r, rlab);
    std::vector<std::pair<std::string, std::string>> pairs;
    for (int j = 1; j <= l.n(); ++j) {
        int fin = 0;
        for (int k : r.f_in())
            if (r.root(k) == j) fin = k;
        pairs.push_back({a.label(l.N() + j), b.label(fin)});
    }
    Amalgamation am = amalgamate(a.seed, b.seed, pairs);
    return GluedSeed{kind, l, r, Labeling::plain, rlab, am.seed, am.rename_a};
}
}  // namespace

GluedSeed glue_doubled(const ReducedWord& x) { return glue(BorelMode::doubled, x, reverse_word(x), Labeling::bar); }

GluedSeed glue_tensor(const ReducedWord& x) { return glue(BorelMode::tensor_square, x, x, Labeling::prime); }

std::string export_basic_dot(const BasicQuiverSeed& s, const std::string& name) {
    std::string dot = export_dot(s.seed, name);
    dot.erase(dot.rfind('}'));
    const int base = s.word.N() + s.word.n();
    for (int i = 1; i <= s.word.n(); ++i)
        dot += "  \"" + s.label(base + i) + "\" [shape=box, color=gray, fontcolor=gray];\n";
    return dot + "}\n";
}

BorelRealization assemble_borel(const GluedSeed& g, const EPathTable* user) {
    BorelRealization r{g, make_torus(g.seed), {}};
    const TorusPtr& T = r.torus;
    const ReducedWord& W = g.right;
    const int N = W.N();
    std::optional<EPathTable> et;
    if (user) et = *user;
    else et = bundled_e_paths(W);
    BasicQuiverSeed right_copy{W, g.right_lab, ClusterSeed()};

    for (int i = 1; i <= W.n(); ++i) {
        BorelGenerators G;
        G.root = i;
        G.path = g.f_path_nodes(i);
        G.f = TorusElement::path_polynomial(T, G.path);
        G.K = TorusElement::path_monomial(T, G.path);
        G.f_minus = TorusElement(T);
        G.f_plus = TorusElement(T);
        const std::size_t nl = g.left_count(i);
        std::vector<int> left_pos, right_pos = W.row(i);
        if (g.left) left_pos = g.left->row(i);
        LatticeVector acc = T->zero();
        for (std::size_t a = 0; a + 1 < G.path.size(); ++a) {
            acc[T->index(G.path[a])] += 1;
            TorusElement m = TorusElement::monomial(T, acc);
            if (a < nl) {
                G.f_minus += m;
                // tensor square: the left copy is the same word, Feigin form
                int p = left_pos[a];
                if (g.kind == BorelMode::doubled) G.parts.push_back({N + 1 - p, -1, m});
                else G.parts.push_back({p, +1, m});
            } else {
                G.f_plus += m;
                G.parts.push_back({right_pos[a - nl], +1, m, g.left ? 1 : 0});
            }
        }
        if (et && et->count(i)) {
            PathPolynomial ep = e_path(right_copy, i, &*et);
            G.e_minus = ep.polynomial(T);
        }
        r.gens.emplace(i, std::move(G));
    }
    return r;
}

BorelRealization realize(const ReducedWord& w, BorelMode mode, const EPathTable* user) {
    switch (mode) {
        case BorelMode::single: return assemble_borel(single_quiver(w), user);
        case BorelMode::doubled: {
            GluedSeed g = glue_doubled(reverse_word(w));
            return assemble_borel(g, user);
        }
        case BorelMode::tensor_square: return assemble_borel(glue_tensor(w), user);
    }
    throw std::logic_error("bad mode");
}

}  // namespace qcluster
