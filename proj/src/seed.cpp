#include "qcluster/seed.hpp"

#include <algorithm>
#include <sstream>

#include "json.hpp"

namespace qcluster {

namespace {
const std::string kMacron = "̄";
const std::string kPrime = "′";

bool ends_with(const std::string& s, const std::string& suf) {
    return s.size() >= suf.size() && s.compare(s.size() - suf.size(), suf.size(), suf) == 0;
}
}  // namespace

std::string plain_label(int k) { return std::to_string(k); }
std::string bar_label(int k) { return std::to_string(k) + kMacron; }
std::string prime_label(int k) { return std::to_string(k) + kPrime; }

std::string normalize_label(const std::string& s) {
    if (s.size() > 1 && std::isdigit(static_cast<unsigned char>(s[0]))) {
        std::string head = s.substr(0, s.size() - 1);
        bool digits = std::all_of(head.begin(), head.end(), [](unsigned char c) { return std::isdigit(c); });
        if (digits && s.back() == 'b') return head + kMacron;
        if (digits && s.back() == '\'') return head + kPrime;
    }
    return s;
}

std::string ascii_label(const std::string& s) {
    if (ends_with(s, kMacron)) return s.substr(0, s.size() - kMacron.size()) + "b";
    if (ends_with(s, kPrime)) return s.substr(0, s.size() - kPrime.size()) + "'";
    return s;
}

ClusterSeed::ClusterSeed(std::vector<std::string> labels, std::vector<bool> frozen, std::vector<Rational> d)
    : labels_(std::move(labels)), frozen_(std::move(frozen)), d_(std::move(d)) {
    if (frozen_.size() != labels_.size() || d_.size() != labels_.size())
        throw MalformedSeed("seed arrays have different lengths");
    for (std::size_t i = 0; i < labels_.size(); ++i) {
        if (!index_.emplace(labels_[i], i).second) throw MalformedSeed("duplicate node label " + labels_[i]);
        if (d_[i].sign() <= 0) throw MalformedSeed("multiplier of " + labels_[i] + " must be positive");
    }
    B_.assign(labels_.size() * labels_.size(), Rational(0));
}

std::optional<std::size_t> ClusterSeed::find(const std::string& label) const {
    auto it = index_.find(label);
    if (it == index_.end()) {
        auto jt = index_.find(normalize_label(label));
        if (jt == index_.end()) return std::nullopt;
        return jt->second;
    }
    return it->second;
}

std::size_t ClusterSeed::index(const std::string& label) const {
    auto i = find(label);
    if (!i) throw UnknownNode("unknown node '" + label + "'");
    return *i;
}

void ClusterSeed::set_w(std::size_t i, std::size_t j, const Rational& v) {
    if (i == j) {
        if (!v.is_zero()) throw MalformedSeed("diagonal w must vanish");
        return;
    }
    B_[i * size() + j] = v / d_[i];
    B_[j * size() + i] = -v / d_[j];
}

void ClusterSeed::add_w(std::size_t i, std::size_t j, const Rational& v) { set_w(i, j, w(i, j) + v); }

bool ClusterSeed::is_skew() const {
    for (std::size_t i = 0; i < size(); ++i)
        for (std::size_t j = 0; j <= i; ++j)
            if (w(i, j) != -w(j, i)) return false;
    return true;
}

void ClusterSeed::validate() const {
    if (!is_skew()) throw MalformedSeed("DB is not skew-symmetric");
    for (std::size_t i = 0; i < size(); ++i)
        for (std::size_t j = 0; j < size(); ++j)
            if ((!frozen_[i] || !frozen_[j]) && !b(i, j).is_integer())
                throw MalformedSeed("fractional b(" + labels_[i] + "," + labels_[j] + ") next to an unfrozen node");
}

bool operator==(const ClusterSeed& a, const ClusterSeed& b) {
    return a.labels_ == b.labels_ && a.frozen_ == b.frozen_ && a.d_ == b.d_ && a.B_ == b.B_;
}

ClusterSeed mutate_seed(const ClusterSeed& s, const std::string& label) {
    const std::size_t k = s.index(label);
    if (s.frozen(k)) throw MutationAtFrozen("cannot mutate at frozen node " + s.label(k));
    ClusterSeed r = s;
    const std::size_t n = s.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            Rational v;
            if (i == k || j == k) {
                v = -s.b(i, j);
            } else {
                const Rational& bik = s.b(i, k);
                const Rational& bkj = s.b(k, j);
                v = s.b(i, j) + (bik * bkj.abs() + bik.abs() * bkj) / 2;
            }
            // set through w so both halves stay consistent
            if (i < j) r.set_w(i, j, v * s.d(i));
        }
    return r;
}

Amalgamation amalgamate(const ClusterSeed& a, const ClusterSeed& b,
                        const std::vector<std::pair<std::string, std::string>>& gluing) {
    Amalgamation out;
    std::map<std::string, std::string> glue;
    std::map<std::string, std::string> used_b;
    for (const auto& [la, lb] : gluing) {
        std::size_t ia = a.index(la), ib = b.index(lb);
        if (!a.frozen(ia) || !b.frozen(ib))
            throw GluingNotInjective("glued nodes must be frozen: " + la + " ~ " + lb);
        if (a.d(ia) != b.d(ib))
            throw MultiplierMismatch("multiplier mismatch gluing " + la + " (" + a.d(ia).str() + ") to " + lb +
                                     " (" + b.d(ib).str() + ")");
        if (!glue.emplace(a.label(ia), b.label(ib)).second || !used_b.emplace(b.label(ib), la).second)
            throw GluingNotInjective("gluing is not injective at " + la + " ~ " + lb);
    }

    std::vector<std::string> labels;
    std::vector<bool> frozen;
    std::vector<Rational> d;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const std::string& l = a.label(i);
        if (glue.count(l)) {
            out.rename_a[l] = glue[l];
            continue;
        }
        if (b.has(l)) throw GluingNotInjective("label " + l + " occurs in both seeds");
        out.rename_a[l] = l;
        labels.push_back(l);
        frozen.push_back(a.frozen(i));
        d.push_back(a.d(i));
        out.embedding[l].push_back({'a', l});
    }
    for (std::size_t i = 0; i < b.size(); ++i) {
        const std::string& l = b.label(i);
        labels.push_back(l);
        frozen.push_back(used_b.count(l) ? false : b.frozen(i));
        d.push_back(b.d(i));
        if (used_b.count(l)) out.embedding[l].push_back({'a', used_b[l]});
        out.embedding[l].push_back({'b', l});
    }
    ClusterSeed s(labels, frozen, d);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = i + 1; j < a.size(); ++j) {
            Rational v = a.w(i, j);
            if (!v.is_zero()) s.add_w(s.index(out.rename_a[a.label(i)]), s.index(out.rename_a[a.label(j)]), v);
        }
    for (std::size_t i = 0; i < b.size(); ++i)
        for (std::size_t j = i + 1; j < b.size(); ++j) {
            Rational v = b.w(i, j);
            if (!v.is_zero()) s.add_w(s.index(b.label(i)), s.index(b.label(j)), v);
        }
    out.seed = std::move(s);
    return out;
}

std::string style_name(ArrowStyle s) {
    switch (s) {
        case ArrowStyle::thick: return "thick";
        case ArrowStyle::thin: return "thin";
        case ArrowStyle::dashed: return "dashed";
        case ArrowStyle::multiple: return "multiple";
    }
    return "?";
}

Rational full_weight(const Rational& da, const Rational& db) { return da == db ? da : Rational(1); }

QuiverView quiver_view(const ClusterSeed& s) {
    QuiverView v;
    for (std::size_t i = 0; i < s.size(); ++i) {
        v.nodes.push_back({s.label(i), s.frozen(i), s.d(i) < Rational(1)});
        for (std::size_t j = 0; j < s.size(); ++j) {
            Rational w = s.w(i, j);
            if (w.sign() <= 0) continue;
            Rational full = full_weight(s.d(i), s.d(j));
            ArrowStyle st = ArrowStyle::multiple;
            if (w == full)
                st = (s.d(i) < Rational(1) && s.d(j) < Rational(1)) ? ArrowStyle::thin : ArrowStyle::thick;
            else if (w * 2 == full)
                st = ArrowStyle::dashed;
            v.arrows.push_back({s.label(i), s.label(j), w, st});
        }
    }
    std::sort(v.arrows.begin(), v.arrows.end());
    return v;
}

std::string export_dot(const ClusterSeed& s, const std::string& name) {
    QuiverView v = quiver_view(s);
    std::ostringstream os;
    os << "digraph \"" << name << "\" {\n";
    for (const auto& n : v.nodes) {
        os << "  \"" << n.label << "\" [shape=" << (n.frozen ? "box" : "circle");
        if (n.short_root) os << ", style=dotted";
        os << "];\n";
    }
    for (const auto& a : v.arrows) {
        os << "  \"" << a.source << "\" -> \"" << a.target << "\" [label=\"" << a.weight.str() << "\"";
        switch (a.style) {
            case ArrowStyle::thick: os << ", penwidth=2"; break;
            case ArrowStyle::thin: os << ", penwidth=1"; break;
            case ArrowStyle::dashed: os << ", style=dashed"; break;
            case ArrowStyle::multiple: os << ", penwidth=3, color=blue"; break;
        }
        os << "];\n";
    }
    os << "}\n";
    return os.str();
}

std::string export_json(const ClusterSeed& s) {
    nlohmann::ordered_json j;
    j["nodes"] = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < s.size(); ++i)
        j["nodes"].push_back({{"id", s.label(i)}, {"frozen", s.frozen(i)}, {"d", s.d(i).str()}});
    j["B"] = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < s.size(); ++i)
        for (std::size_t k = 0; k < s.size(); ++k)
            if (!s.b(i, k).is_zero()) j["B"].push_back({s.label(i), s.label(k), s.b(i, k).str()});
    return j.dump(2);
}

ClusterSeed import_seed(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw MalformedSeed(std::string("malformed seed JSON: ") + e.what());
    }
    try {
        std::vector<std::string> labels;
        std::vector<bool> frozen;
        std::vector<Rational> d;
        for (const auto& n : j.at("nodes")) {
            labels.push_back(normalize_label(n.at("id").get<std::string>()));
            frozen.push_back(n.value("frozen", false));
            const auto& dv = n.contains("d") ? n.at("d") : nlohmann::json("1");
            d.push_back(dv.is_string() ? Rational::parse(dv.get<std::string>()) : Rational(dv.get<std::int64_t>()));
        }
        ClusterSeed s(labels, frozen, d);
        // B entries may be listed one-sided; fill the partner through W skewness
        std::vector<std::vector<std::optional<Rational>>> given(s.size(), std::vector<std::optional<Rational>>(s.size()));
        if (j.contains("B")) {
            for (const auto& e : j.at("B")) {
                if (!e.is_array() || e.size() != 3) throw MalformedSeed("B entries are [i, j, value]");
                std::size_t a = s.index(e[0].get<std::string>()), b = s.index(e[1].get<std::string>());
                Rational v = e[2].is_string() ? Rational::parse(e[2].get<std::string>())
                                              : Rational(e[2].get<std::int64_t>());
                given[a][b] = v;
            }
        }
        for (std::size_t a = 0; a < s.size(); ++a)
            for (std::size_t b = a + 1; b < s.size(); ++b) {
                auto& x = given[a][b];
                auto& y = given[b][a];
                if (x && y && s.d(a) * *x != -(s.d(b) * *y))
                    throw MalformedSeed("DB not skew at (" + s.label(a) + "," + s.label(b) + ")");
                if (x) s.set_w(a, b, s.d(a) * *x);
                else if (y) s.set_w(b, a, s.d(b) * *y);
            }
        s.validate();
        return s;
    } catch (const nlohmann::json::exception& e) {
        throw MalformedSeed(std::string("malformed seed JSON: ") + e.what());
    } catch (const std::invalid_argument& e) {
        if (dynamic_cast<const MalformedSeed*>(&e)) throw;
        throw MalformedSeed(std::string("malformed seed JSON: ") + e.what());
    }
}

}  // namespace qcluster
