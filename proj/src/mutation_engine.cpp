#include "qcluster/mutation_engine.hpp"

#include <algorithm>

namespace qcluster {

LatticeVector LatticeMap::apply(const LatticeVector& v) const {
    LatticeVector out(images.empty() ? 0 : images[0].size(), 0);
    for (std::size_t i = 0; i < v.size(); ++i)
        if (v[i] != 0) out = lattice_add(out, images[i], v[i]);
    return out;
}

TorusElement LatticeMap::apply(const TorusElement& x) const {
    TorusElement r(to);
    for (const auto& [v, c] : x.terms()) r.add_term(apply(v), c);
    return r;
}

LatticeMap LatticeMap::compose(const LatticeMap& other) const {
    LatticeMap r{other.from, to, {}};
    for (const auto& img : other.images) r.images.push_back(apply(img));
    return r;
}

LatticeMap LatticeMap::identity(const TorusPtr& t) {
    LatticeMap r{t, t, {}};
    for (std::size_t i = 0; i < t->dim(); ++i) {
        LatticeVector v = t->zero();
        v[i] = 1;
        r.images.push_back(v);
    }
    return r;
}

LatticeMap monomial_transform(const ClusterSeed& s, const std::string& label, TorusPtr from, TorusPtr to) {
    const std::size_t k = s.index(label);
    if (s.frozen(k)) throw MutationAtFrozen("cannot mutate at frozen node " + s.label(k));
    if (!to) to = make_torus(s);
    if (!from) from = make_torus(mutate_seed(s, s.label(k)));
    LatticeMap L{from, to, {}};
    for (std::size_t i = 0; i < s.size(); ++i) {
        LatticeVector v(s.size(), 0);
        if (i == k) {
            v[k] = -1;
        } else {
            v[i] = 1;
            const Rational& b = s.b(k, i);
            if (b.sign() > 0) v[k] = static_cast<std::int32_t>(b.to_integer());
        }
        L.images.push_back(v);
    }
    return L;
}

namespace {

TorusElement binom_elem(const TorusPtr& t, const FracElement::Binomial& b) { return binomial(t, b.c, b.eta); }

bool commute(const TorusForm& t, const LatticeVector& a, const LatticeVector& b) { return t.pair(a, b).is_zero(); }

}  // namespace

void FracElement::simplify() {
    if (dens_.empty() || num_.is_zero()) {
        if (num_.is_zero()) dens_.clear();
        return;
    }
    const TorusForm& T = *num_.torus();
    bool all_commute = true;
    for (std::size_t i = 0; i < dens_.size() && all_commute; ++i)
        for (std::size_t j = i + 1; j < dens_.size() && all_commute; ++j)
            all_commute = commute(T, dens_[i].eta, dens_[j].eta);
    bool progress = true;
    while (progress && !dens_.empty()) {
        progress = false;
        std::size_t limit = all_commute ? dens_.size() : 1;
        for (std::size_t j = 0; j < limit; ++j) {
            TorusElement r;
            if (try_right_divide(num_, dens_[j].c, dens_[j].eta, r)) {
                num_ = std::move(r);
                dens_.erase(dens_.begin() + static_cast<std::ptrdiff_t>(j));
                progress = true;
                break;
            }
        }
    }
}

bool FracElement::equals(const TorusElement& p) const {
    if (dens_.empty()) return num_ == p;
    TorusElement x = p;
    for (auto it = dens_.rbegin(); it != dens_.rend(); ++it) x = x * binom_elem(p.torus(), *it);
    return x == num_;
}

std::string FracElement::str() const {
    std::string s = num_.str();
    if (dens_.empty()) return s;
    s = "(" + s + ")";
    for (const auto& d : dens_)
        s += " * (1 + (" + d.c.str() + ")X_{" + num_.torus()->render(d.eta) + "})^-1";
    return s;
}

FracElement FracElement::mapped(const LatticeMap& L) const {
    FracElement r(L.apply(num_));
    for (const auto& d : dens_) r.dens_.push_back({d.c, L.apply(d.eta)});
    return r;
}

FracElement ad_dilog_monomial(const FracElement& x, const LatticeVector& eta, const Rational& d, Direction dir) {
    const TorusPtr& T = x.num_.torus();
    const int sgn = dir == Direction::g ? 1 : -1;
    auto m_of = [&](const LatticeVector& lam) {
        Rational m = -T->pair(lam, eta) / d;
        if (!m.is_integer())
            throw NonIntegerCommutation("commutation exponent " + m.str() + " of X_{" + T->render(lam) +
                                        "} against X_{" + T->render(eta) + "} is not an integer");
        return static_cast<int>(m.to_integer()) * sgn;
    };
    auto factor = [&](int e) { return binomial(T, QLaurent::monomial(d * Rational(e)), eta); };

    // denominators of the original fraction must stay binomials
    std::vector<FracElement::Binomial> old_dens;
    for (const auto& b : x.dens_) {
        if (m_of(b.eta) != 0)
            throw NestedFraction("conjugation does not fix denominator X_{" + T->render(b.eta) + "}");
        old_dens.push_back(b);
    }

    int M = 0;
    std::vector<std::pair<LatticeVector, int>> ms;
    for (const auto& [lam, c] : x.num_.terms()) {
        int m = m_of(lam);
        ms.push_back({lam, m});
        M = std::max(M, -m);
    }
    // common denominator prod_{j<=M} (1 + q^{(2j-1) d sgn} X_eta)
    std::vector<TorusElement> up(M + 1);
    TorusElement num(T);
    std::size_t idx = 0;
    for (const auto& [lam, c] : x.num_.terms()) {
        const int m = ms[idx++].second;
        TorusElement t = TorusElement::monomial(T, lam, c);
        for (int j = 1; j <= m; ++j) t = t * factor(-(2 * j - 1) * sgn);
        for (int j = std::max(0, -m) + 1; j <= M; ++j) t = t * factor((2 * j - 1) * sgn);
        num += t;
    }
    FracElement r(num);
    for (int j = 1; j <= M; ++j) r.dens_.push_back({QLaurent::monomial(d * Rational((2 * j - 1) * sgn)), eta});
    for (auto& b : old_dens) r.dens_.push_back(b);
    r.simplify();
    return r;
}

FracElement quantum_mutation(const FracElement& x, const ClusterSeed& s, const std::string& k, const TorusPtr& from,
                             const TorusPtr& to) {
    LatticeMap L = monomial_transform(s, k, from, to);
    FracElement y = x.mapped(L);
    return ad_dilog_monomial(y, to->unit(s.label(s.index(k))), s.d(k), Direction::g_star);
}

std::vector<DilogFactor> dilog_factorize(const TorusForm& t, const std::vector<LatticeVector>& terms,
                                         const Rational& d) {
    std::vector<DilogFactor> out;
    for (std::size_t a = 0; a < terms.size(); ++a) {
        out.push_back({terms[a], d, Direction::g});
        if (a + 1 == terms.size()) break;
        Rational p = t.pair(terms[a], terms[a + 1]);
        if (p == -d) continue;
        if (p == -d * 2 && d == Rational(1, 2)) {
            out.push_back({lattice_add(terms[a], terms[a + 1]), Rational(1), Direction::g});
            continue;
        }
        throw ChainNotQSquared("terms X_{" + t.render(terms[a]) + "} and X_{" + t.render(terms[a + 1]) +
                               "} pair to " + p.str() + " with flavor " + d.str());
    }
    return out;
}

std::string phi_name(PhiKind k) { return k == PhiKind::phi1 ? "phi1" : "phi3"; }

PhiKind parse_phi(const std::string& s) {
    if (s == "phi1") return PhiKind::phi1;
    if (s == "phi3") return PhiKind::phi3;
    throw std::invalid_argument("unknown flip '" + s + "' (phi1|phi3)");
}

PhiFactors build_phi(const GluedSeed& g, PhiKind which, const EPathTable* user) {
    if (!g.left) throw std::invalid_argument("build_phi needs a glued seed");
    if (which == PhiKind::phi1 && g.kind != BorelMode::doubled)
        throw std::invalid_argument("phi1 acts on the doubled quiver");
    if (which == PhiKind::phi3 && g.kind != BorelMode::tensor_square)
        throw std::invalid_argument("phi3 acts on the tensor square quiver");
    const ReducedWord& W = *g.left;
    std::optional<EPathTable> et;
    if (user) et = *user;
    else et = bundled_e_paths(W);
    if (!et) throw EPathUnavailable("no E-path data for word " + format_word(W.letters()));

    PhiFactors r{g, make_torus(g.seed), {}, {}};
    const TorusForm& T = *r.torus;
    const int N = W.N();
    std::vector<int> order;
    for (int k = 1; k <= N; ++k) order.push_back(k);
    if (which == PhiKind::phi3) std::reverse(order.begin(), order.end());

    for (int k : order) {
        const int i = W.root(k);
        if (!et->count(i)) throw EPathUnavailable("no E-path for root " + std::to_string(i));
        std::vector<std::string> ep;
        for (int x : et->at(i))
            if (x <= N + W.n()) ep.push_back(g.left_node(x));
        const std::string gnode = g.left_node(N + i);
        const int pos = which == PhiKind::phi1 ? N + 1 - k : k;
        std::vector<std::string> prefix;
        for (int x : g.right.row(i)) {
            prefix.push_back(g.right_node(x));
            if (x == pos) break;
        }
        // prefix terms of the E-path, longest first
        std::vector<LatticeVector> terms;
        LatticeVector acc = T.zero();
        for (const auto& n : ep) {
            acc[T.index(n)] += 1;
            terms.push_back(acc);
        }
        std::reverse(terms.begin(), terms.end());
        const std::size_t gi = T.index(gnode);
        for (DilogFactor f : dilog_factorize(T, terms, W.datum().mult(i))) {
            // tensor argument: the glued coordinate spreads over the f-prefix
            const std::int32_t c = f.eta[gi];
            f.eta[gi] = 0;
            for (const auto& x : prefix) f.eta[T.index(x)] += c;
            r.factors.push_back(f);
            r.outer.push_back(k);
        }
    }
    return r;
}

PhiFactors build_phi(const ReducedWord& w, PhiKind which, const EPathTable* user) {
    return build_phi(which == PhiKind::phi1 ? glue_doubled(w) : glue_tensor(w), which, user);
}

MutationSequence derive_mutation_sequence(const std::vector<DilogFactor>& factors, const TorusPtr& torus) {
    MutationSequence seq{{}, {torus->seed()}, LatticeMap::identity(torus), LatticeMap::identity(torus)};
    TorusPtr cur_t = torus;
    for (auto it = factors.rbegin(); it != factors.rend(); ++it) {
        const ClusterSeed& cur = seq.seeds.back();
        std::vector<std::size_t> cand;
        for (std::size_t x = 0; x < cur.size(); ++x)
            if (!cur.frozen(x) && seq.M.images[x] == it->eta) cand.push_back(x);
        if (cand.size() != 1)
            throw NoMatchingNode("factor X_{" + torus->render(it->eta) + "} matches " + std::to_string(cand.size()) +
                                 " pushed-forward cluster variables at step " + std::to_string(seq.nodes.size() + 1));
        const std::size_t m = cand[0];
        if (cur.d(m) != it->flavor)
            throw NoMatchingNode("flavor " + it->flavor.str() + " of factor X_{" + torus->render(it->eta) +
                                 "} differs from multiplier of node " + cur.label(m));
        ClusterSeed next = mutate_seed(cur, cur.label(m));
        TorusPtr next_t = make_torus(next);
        LatticeMap L = monomial_transform(cur, cur.label(m), next_t, cur_t);
        seq.M = seq.M.compose(L);
        // inverse of L: e_m -> -e^_m, e_i -> e^_i + [b_mi]_+ e^_m
        LatticeMap Linv{cur_t, next_t, {}};
        for (std::size_t i = 0; i < cur.size(); ++i) {
            LatticeVector v(cur.size(), 0);
            if (i == m) {
                v[m] = -1;
            } else {
                v[i] = 1;
                if (cur.b(m, i).sign() > 0) v[m] = static_cast<std::int32_t>(cur.b(m, i).to_integer());
            }
            Linv.images.push_back(v);
        }
        seq.M_inverse = Linv.compose(seq.M_inverse);
        seq.M.from = next_t;
        seq.nodes.push_back(cur.label(m));
        seq.seeds.push_back(std::move(next));
        cur_t = next_t;
    }
    return seq;
}

FracElement apply_phi(const std::vector<DilogFactor>& factors, const FracElement& x) {
    FracElement y = x;
    for (auto it = factors.rbegin(); it != factors.rend(); ++it) y = ad_dilog_monomial(y, it->eta, it->flavor, it->direction);
    return y;
}

bool FlipReport::all_ok() const {
    return std::all_of(roots.begin(), roots.end(), [](const FlipRootReport& r) {
        return r.path_polynomial_ok && r.full_monomial_ok && r.pullback_ok;
    });
}

FlipReport verify_flip(const PhiFactors& phi, const MutationSequence& seq) {
    FlipReport rep{phi.glued.kind == BorelMode::doubled ? PhiKind::phi1 : PhiKind::phi3, {}, seq.nodes,
                   seq.final_seed()};
    const GluedSeed& g = phi.glued;
    const TorusPtr& T = phi.torus;
    const ClusterSeed& fin = seq.final_seed();
    for (int i = 1; i <= g.right.n(); ++i) {
        FlipRootReport rr;
        rr.root = i;
        std::vector<std::string> full = g.f_path_nodes(i);
        std::vector<std::string> left;
        for (int k : g.left->row(i)) left.push_back(g.left_node(k));
        TorusElement f = TorusElement::path_polynomial(T, full);
        TorusElement K = TorusElement::path_monomial(T, full);
        TorusElement want = TorusElement::path_polynomial(T, left);
        try {
            FracElement af = apply_phi(phi.factors, FracElement(f));
            FracElement aK = apply_phi(phi.factors, FracElement(K));
            rr.path_polynomial_ok = af.is_polynomial() && af.equals(want);
            rr.full_monomial_ok = aK.is_polynomial() && aK.equals(K);
            if (!rr.path_polynomial_ok) rr.residual = af.str();
            else if (!rr.full_monomial_ok) rr.residual = aK.str();
        } catch (const std::exception& e) {
            rr.residual = e.what();
        }
        // pull the left path back through M: consecutive prefixes must differ
        // by single nodes joined by arrows of the mutated seed, ending at F_out
        std::vector<LatticeVector> pre;
        LatticeVector acc = T->zero();
        for (std::size_t a = 0; a + 1 < left.size(); ++a) {
            acc[T->index(left[a])] += 1;
            pre.push_back(seq.M_inverse.apply(acc));
        }
        pre.push_back(seq.M_inverse.apply(K.terms().begin()->first));
        bool ok = true;
        LatticeVector prev = T->zero();
        std::vector<std::size_t> nodes;
        for (const auto& v : pre) {
            LatticeVector diff = lattice_add(v, prev, -1);
            std::size_t hits = 0, at = 0;
            for (std::size_t x = 0; x < diff.size(); ++x) {
                if (diff[x] == 1) {
                    ++hits;
                    at = x;
                } else if (diff[x] != 0) {
                    hits = 99;
                }
            }
            if (hits != 1) {
                ok = false;
                break;
            }
            nodes.push_back(at);
            prev = v;
        }
        if (ok) {
            for (std::size_t a = 0; a + 1 < nodes.size(); ++a)
                if (fin.w(nodes[a], nodes[a + 1]).sign() <= 0) ok = false;
            if (nodes.empty() || fin.label(nodes.back()) != g.right_node(g.right.N() + i)) ok = false;
        }
        for (auto x : nodes) rr.mutated_path.push_back(fin.label(x));
        rr.pullback_ok = ok;
        if (!ok && rr.residual.empty()) rr.residual = "pulled-back path is not a path of the mutated seed";
        rep.roots.push_back(std::move(rr));
    }
    return rep;
}

}  // namespace qcluster
