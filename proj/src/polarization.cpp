#include "qcluster/polarization.hpp"

#include <cctype>

namespace qcluster {

LinearForm LinearForm::symbol(Symbol s, const Rational& c) {
    LinearForm f;
    f.add(s, c);
    return f;
}

void LinearForm::add(const Symbol& s, const Rational& c) {
    if (c.is_zero()) return;
    auto it = c_.find(s);
    if (it == c_.end()) {
        c_.emplace(s, c);
        return;
    }
    it->second += c;
    if (it->second.is_zero()) c_.erase(it);
}

Rational LinearForm::coef(const Symbol& s) const {
    auto it = c_.find(s);
    return it == c_.end() ? Rational(0) : it->second;
}

bool LinearForm::has_kind(Symbol::Kind k, int copy) const {
    for (const auto& [s, c] : c_)
        if (s.kind == k && (copy < 0 || s.copy == copy)) return true;
    return false;
}

LinearForm& LinearForm::operator+=(const LinearForm& o) {
    for (const auto& [s, c] : o.c_) add(s, c);
    return *this;
}

LinearForm& LinearForm::operator-=(const LinearForm& o) {
    for (const auto& [s, c] : o.c_) add(s, -c);
    return *this;
}

LinearForm LinearForm::scaled(const Rational& s) const {
    LinearForm f;
    for (const auto& [sym, c] : c_) f.add(sym, c * s);
    return f;
}

LinearForm LinearForm::without_lambda() const {
    LinearForm f;
    for (const auto& [s, c] : c_)
        if (s.kind != Symbol::L) f.add(s, c);
    return f;
}

namespace {

std::string symbol_name(const Symbol& s, FormStyle style) {
    std::string base;
    switch (s.kind) {
        case Symbol::U: base = "u"; break;
        case Symbol::P: base = "p"; break;
        case Symbol::L:
            base = style == FormStyle::unicode ? "λ" : style == FormStyle::latex ? "\\lambda" : "l";
            break;
        case Symbol::One: return "";
    }
    return base + "_" + std::to_string(s.index) + (s.copy ? "'" : "");
}

void replace_all(std::string& s, const std::string& from, const std::string& to) {
    for (std::size_t pos = 0; (pos = s.find(from, pos)) != std::string::npos; pos += to.size())
        s.replace(pos, from.size(), to);
}

std::string normalize_text(std::string t) {
    replace_all(t, "−", "-");
    replace_all(t, "′", "'");
    replace_all(t, "λ", "l");
    replace_all(t, "\\lambda", "l");
    replace_all(t, "\\l", "l");
    std::string out;
    for (char c : t)
        if (!std::isspace(static_cast<unsigned char>(c)) && c != '{' && c != '}') out += c;
    return out;
}

}  // namespace

std::string LinearForm::str(FormStyle style) const {
    if (c_.empty()) return "0";
    std::string s;
    for (const auto& [sym, c] : c_) {
        std::string name = symbol_name(sym, style);
        std::string coef;
        if (name.empty()) coef = c.abs().str();
        else if (c.abs() != Rational(1)) coef = c.abs().str();
        if (c.sign() < 0) s += "-";
        else if (!s.empty()) s += "+";
        s += coef + name;
    }
    return s;
}

LinearForm LinearForm::parse(const std::string& text) {
    const std::string t = normalize_text(text);
    if (t.empty()) throw FormParseError("empty linear form");
    if (t == "0") return LinearForm();
    LinearForm f;
    std::size_t i = 0;
    auto digits = [&]() {
        std::size_t b = i;
        while (i < t.size() && std::isdigit(static_cast<unsigned char>(t[i]))) ++i;
        return t.substr(b, i - b);
    };
    while (i < t.size()) {
        int sign = 1;
        if (t[i] == '+' || t[i] == '-') {
            sign = t[i] == '-' ? -1 : 1;
            ++i;
        }
        Rational c(1);
        bool has_coef = false;
        std::string num = digits();
        if (!num.empty()) {
            has_coef = true;
            c = Rational(std::stoll(num));
            if (i < t.size() && t[i] == '/') {
                ++i;
                std::string den = digits();
                if (den.empty()) throw FormParseError("bad fraction in '" + text + "'");
                c = Rational(std::stoll(num), std::stoll(den));
            }
        }
        Symbol sym;
        if (i < t.size() && (t[i] == 'u' || t[i] == 'p' || t[i] == 'l')) {
            sym.kind = t[i] == 'u' ? Symbol::U : t[i] == 'p' ? Symbol::P : Symbol::L;
            ++i;
            sym.index = 1;
            if (i < t.size() && t[i] == '_') {
                ++i;
                std::string idx = digits();
                if (idx.empty()) throw FormParseError("missing index in '" + text + "'");
                sym.index = std::stoi(idx);
            }
            if (i < t.size() && t[i] == '\'') {
                sym.copy = 1;
                ++i;
            }
        } else if (!has_coef) {
            throw FormParseError("unexpected '" + t.substr(i, 1) + "' in '" + text + "'");
        }
        f.add(sym, c * Rational(sign));
    }
    return f;
}

LinearForm AffineShift::apply(const LinearForm& f) const {
    LinearForm r = f;
    for (const auto& s : steps) {
        Rational c = f.coef(s.target);
        if (!c.is_zero()) r += s.increment.scaled(c);
    }
    return r;
}

std::vector<std::string> AffineShift::render(FormStyle style) const {
    std::vector<std::string> out;
    const std::string arrow = style == FormStyle::unicode ? " ↦ " : style == FormStyle::latex ? " \\mapsto " : " -> ";
    for (const auto& s : steps) {
        const bool mom = s.target.kind == Symbol::P;
        std::string lhs = (mom ? "2" : "") + symbol_name(s.target, style);
        std::string inc = (mom ? s.increment.scaled(2) : s.increment).str(style);
        out.push_back(lhs + arrow + lhs + (inc[0] == '-' ? "" : "+") + inc);
    }
    return out;
}

AffineShift::Step AffineShift::parse_line(const std::string& line) {
    std::string t = line;
    replace_all(t, "↦", "->");
    replace_all(t, "\\mapsto", "->");
    replace_all(t, "|->", "->");
    const auto pos = t.find("->");
    if (pos == std::string::npos) throw FormParseError("no arrow in shift '" + line + "'");
    LinearForm lhs = LinearForm::parse(t.substr(0, pos));
    LinearForm rhs = LinearForm::parse(t.substr(pos + 2));
    if (lhs.coeffs().size() != 1 || lhs.coeffs().begin()->first.central())
        throw FormParseError("shift target must be a single position or momentum: '" + line + "'");
    const auto [sym, c] = *lhs.coeffs().begin();
    return Step{sym, (rhs - lhs).scaled(Rational(1) / c)};
}

std::string variant_name(PolarVariant v) {
    switch (v) {
        case PolarVariant::doubled: return "doubled";
        case PolarVariant::single_plus: return "single_plus";
        case PolarVariant::single_minus: return "single_minus";
        case PolarVariant::single_minus_sigma: return "single_minus_sigma";
        case PolarVariant::tensor_square: return "tensor_square";
    }
    return "?";
}

PolarVariant parse_variant(const std::string& s) {
    for (PolarVariant v : {PolarVariant::doubled, PolarVariant::single_plus, PolarVariant::single_minus,
                           PolarVariant::single_minus_sigma, PolarVariant::tensor_square})
        if (s == variant_name(v)) return v;
    if (s == "single") return PolarVariant::single_minus_sigma;
    if (s == "tensor") return PolarVariant::tensor_square;
    throw std::invalid_argument("unknown polarization '" + s + "'");
}

const LinearForm& Polarization::node(const std::string& label) const {
    auto it = nodes.find(normalize_label(label));
    if (it == nodes.end()) throw UnpolarizedNode("node " + label + " has no linear form");
    return it->second;
}

LinearForm Polarization::form(const LatticeVector& v) const {
    LinearForm f;
    for (std::size_t x = 0; x < v.size(); ++x)
        if (v[x] != 0) f += node(glued.seed.label(x)).scaled(Rational(v[x]));
    return f;
}

Rational Polarization::omega(const LinearForm& a, const LinearForm& b) const {
    Rational t;
    for (const auto& [s, c] : a.coeffs()) {
        if (s.kind != Symbol::P && s.kind != Symbol::U) continue;
        const Rational d = word.datum().mult(word.root(s.index));
        Symbol dual{s.kind == Symbol::P ? Symbol::U : Symbol::P, s.index, s.copy};
        const Rational x = d * c * b.coef(dual);
        if (s.kind == Symbol::P) t += x;
        else t -= x;
    }
    return t;
}

std::vector<std::string> Polarization::omega_mismatches() const {
    std::vector<std::string> out;
    const ClusterSeed& s = glued.seed;
    for (std::size_t i = 0; i < s.size(); ++i)
        for (std::size_t j = i + 1; j < s.size(); ++j) {
            Rational o = omega(node(s.label(i)), node(s.label(j)));
            if (o != s.w(i, j))
                out.push_back("(" + s.label(i) + "," + s.label(j) + "): omega " + o.str() + " w " + s.w(i, j).str());
        }
    return out;
}

Polarization Polarization::shifted(const AffineShift& s) const {
    Polarization p = *this;
    for (auto& [l, f] : p.nodes) f = s.apply(f);
    return p;
}

LinearForm prefix_form(const ReducedWord& w, int k, int sign, int copy, bool lambda) {
    const RootDatum& D = w.datum();
    const int r = w.root(k);
    LinearForm f;
    for (int j = 1; j < k; ++j)
        f += LinearForm::symbol({Symbol::U, j, copy}, Rational(D.a(w.root(j), r) * sign, 2));
    f += LinearForm::symbol({Symbol::U, k, copy}, Rational(sign, 2));
    if (lambda) f += LinearForm::symbol({Symbol::L, r, copy}, Rational(-sign));
    f += LinearForm::symbol({Symbol::P, k, copy});
    return f;
}

LinearForm cartan_form(const ReducedWord& w, int i, int copy, bool lambda) {
    const RootDatum& D = w.datum();
    LinearForm f;
    for (int k = 1; k <= w.N(); ++k) f += LinearForm::symbol({Symbol::U, k, copy}, Rational(D.a(w.root(k), i), 2));
    if (lambda) f += LinearForm::symbol({Symbol::L, i, copy}, Rational(-1));
    return f;
}

namespace {

void telescope(Polarization& p, const std::vector<std::string>& labels, const std::vector<LinearForm>& prefixes) {
    LinearForm prev;
    for (std::size_t a = 0; a < labels.size(); ++a) {
        p.nodes[labels[a]] = prefixes[a] - prev;
        prev = prefixes[a];
    }
}

// sigma-transported minus prefixes along row(i) of w, without the F_out node
std::vector<LinearForm> sigma_minus(const ReducedWord& w, int i, int copy, bool lambda) {
    auto row = w.row(i);
    row.pop_back();
    std::vector<LinearForm> out;
    for (std::size_t j = 0; j < row.size(); ++j)
        out.push_back(prefix_form(w, row[row.size() - 1 - j], -1, copy, lambda));
    return out;
}

bool simply_laced(const RootDatum& D) {
    for (const auto& d : D.d)
        if (d != D.d.front()) return false;
    return true;
}

// each tensor factor carries sigma-transported "-" forms when simply laced, "+" forms otherwise
int tensor_base_sign(const ReducedWord& w) { return simply_laced(w.datum()) ? -1 : +1; }

std::vector<LinearForm> copy_prefixes(const ReducedWord& w, int i, int copy, bool lambda) {
    if (tensor_base_sign(w) < 0) return sigma_minus(w, i, copy, lambda);
    auto row = w.row(i);
    row.pop_back();
    std::vector<LinearForm> out;
    for (int k : row) out.push_back(prefix_form(w, k, +1, copy, lambda));
    return out;
}

}  // namespace

Polarization polarize(const ReducedWord& x, PolarVariant variant, bool lambda) {
    Polarization p;
    p.variant = variant;
    p.lambda = lambda;
    const int n = x.n(), N = x.N();
    if (variant == PolarVariant::single_minus_sigma && !simply_laced(x.datum()))
        throw std::invalid_argument("single_minus_sigma needs a simply laced type");
    switch (variant) {
        case PolarVariant::doubled: p.glued = glue_doubled(x); p.word = reverse_word(x); break;
        case PolarVariant::single_minus: p.glued = single_quiver(x); p.word = reverse_word(x); break;
        case PolarVariant::tensor_square:
            p.glued = glue_tensor(x);
            p.word = x;
            p.copies = 2;
            break;
        default: p.glued = single_quiver(x); p.word = x; break;
    }
    const ReducedWord& W = p.word;
    for (int i = 1; i <= n; ++i) {
        std::vector<std::string> labels = p.glued.f_path_nodes(i);
        std::vector<LinearForm> pre;
        switch (variant) {
            case PolarVariant::doubled: {
                auto lrow = x.row(i);
                lrow.pop_back();
                for (int q : lrow) pre.push_back(prefix_form(W, N + 1 - q, -1, 0, lambda));
                auto rrow = W.row(i);
                rrow.pop_back();
                for (int k : rrow) pre.push_back(prefix_form(W, k, +1, 0, lambda));
                pre.push_back(cartan_form(W, i, 0, lambda));
                break;
            }
            case PolarVariant::single_minus: {
                auto row = x.row(i);
                row.pop_back();
                for (int q : row) pre.push_back(prefix_form(W, N + 1 - q, -1, 0, lambda));
                pre.push_back(cartan_form(W, i, 0, lambda));
                break;
            }
            case PolarVariant::single_plus: {
                auto row = W.row(i);
                row.pop_back();
                for (int k : row) pre.push_back(prefix_form(W, k, +1, 0, lambda));
                pre.push_back(cartan_form(W, i, 0, lambda));
                break;
            }
            case PolarVariant::single_minus_sigma:
                pre = sigma_minus(W, i, 0, lambda);
                pre.push_back(cartan_form(W, i, 0, lambda));
                break;
            case PolarVariant::tensor_square: {
                pre = copy_prefixes(W, i, 0, lambda);
                const LinearForm K0 = cartan_form(W, i, 0, lambda);
                for (const auto& f : copy_prefixes(W, i, 1, lambda)) pre.push_back(K0 + f);
                pre.push_back(K0 + cartan_form(W, i, 1, lambda));
                break;
            }
        }
        telescope(p, labels, pre);
    }
    return p;
}

namespace {

// (A^T)^{-1} over the rationals
std::vector<std::vector<Rational>> inverse_transpose(const RootDatum& D) {
    const int n = D.rank;
    std::vector<std::vector<Rational>> M(n, std::vector<Rational>(2 * n));
    for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c) M[r][c] = Rational(D.cartan[c][r]);
        M[r][n + r] = Rational(1);
    }
    for (int c = 0; c < n; ++c) {
        int p = c;
        while (M[p][c].is_zero()) ++p;
        std::swap(M[p], M[c]);
        const Rational inv = Rational(1) / M[c][c];
        for (auto& x : M[c]) x = x * inv;
        for (int r = 0; r < n; ++r) {
            if (r == c || M[r][c].is_zero()) continue;
            const Rational f = M[r][c];
            for (int k = 0; k < 2 * n; ++k) M[r][k] -= f * M[c][k];
        }
    }
    std::vector<std::vector<Rational>> out(n, std::vector<Rational>(n));
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) out[r][c] = M[r][n + c];
    return out;
}

int first_occurrence(const ReducedWord& w, int r) {
    for (int k = 1; k <= w.N(); ++k)
        if (w.root(k) == r) return k;
    throw std::logic_error("letter missing from word");
}

// momentum steps p_k += -(central part of F^{k,s}) after the position shifts dU
void momentum_steps(AffineShift& out, const ReducedWord& W, const std::map<int, LinearForm>& dU, int sign, int copy,
                    bool with_lambda) {
    const RootDatum& D = W.datum();
    for (int k = 1; k <= W.N(); ++k) {
        LinearForm part;
        for (const auto& [j, inc] : dU) {
            if (j < k) part += inc.scaled(Rational(D.a(W.root(j), W.root(k)), 2));
            if (j == k) part += inc.scaled(Rational(1, 2));
        }
        if (with_lambda) part -= LinearForm::symbol({Symbol::L, W.root(k), copy});
        part = part.scaled(Rational(-sign));
        if (!part.is_zero()) out.steps.push_back({{Symbol::P, k, copy}, part});
    }
}

}  // namespace

AffineShift normalization_shift(const Polarization& p, ShiftGoal goal, int sign) {
    const ReducedWord& W = p.word;
    const int n = W.n();
    AffineShift out;
    if (goal == ShiftGoal::kill_lambda) {
        if (!p.lambda) return out;
        if (sign == 0) sign = p.variant == PolarVariant::single_plus ? +1 : -1;
        const auto inv = inverse_transpose(W.datum());
        std::vector<AffineShift::Step> ustep;
        for (int c = 0; c < p.copies; ++c) {
            std::map<int, LinearForm> dU;
            for (int r = 1; r <= n; ++r) {
                LinearForm C;
                for (int i = 1; i <= n; ++i) C += LinearForm::symbol({Symbol::L, i, c}, inv[r - 1][i - 1] * Rational(2));
                dU[first_occurrence(W, r)] = C;
            }
            momentum_steps(out, W, dU, sign, c, true);
            for (const auto& [k, inc] : dU) ustep.push_back({{Symbol::U, k, c}, inc});
        }
        for (auto& s : ustep) out.steps.push_back(s);
        return out;
    }
    if (p.copies != 2) throw std::invalid_argument("kill_second_factor needs a tensor square polarization");
    std::map<int, LinearForm> dU;
    for (int r = 1; r <= n; ++r) {
        LinearForm C;
        for (int k = 1; k <= W.N(); ++k)
            if (W.root(k) == r) C -= LinearForm::symbol({Symbol::U, k, 1});
        dU[first_occurrence(W, r)] = C;
    }
    momentum_steps(out, W, dU, tensor_base_sign(W), 0, false);
    for (const auto& [k, inc] : dU) out.steps.push_back({{Symbol::U, k, 0}, inc});
    return out;
}

std::optional<LatticeVector> solve_monomial(const Polarization& p, const LinearForm& f) {
    const ClusterSeed& s = p.glued.seed;
    const std::size_t n = s.size();
    std::map<Symbol, std::size_t> rows;
    for (std::size_t x = 0; x < n; ++x)
        for (const auto& [sym, c] : p.node(s.label(x)).coeffs()) rows.emplace(sym, rows.size());
    for (const auto& [sym, c] : f.coeffs())
        if (!rows.count(sym)) return std::nullopt;
    std::vector<std::vector<Rational>> A(rows.size(), std::vector<Rational>(n + 1));
    for (std::size_t x = 0; x < n; ++x)
        for (const auto& [sym, c] : p.node(s.label(x)).coeffs()) A[rows[sym]][x] = c;
    for (const auto& [sym, c] : f.coeffs()) A[rows[sym]][n] = c;
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t c = 0; c < n && row < A.size(); ++c) {
        std::size_t q = row;
        while (q < A.size() && A[q][c].is_zero()) ++q;
        if (q == A.size()) continue;
        std::swap(A[q], A[row]);
        const Rational inv = Rational(1) / A[row][c];
        for (auto& x : A[row]) x = x * inv;
        for (std::size_t r = 0; r < A.size(); ++r) {
            if (r == row || A[r][c].is_zero()) continue;
            const Rational m = A[r][c];
            for (std::size_t k = 0; k <= n; ++k) A[r][k] -= m * A[row][k];
        }
        pivots.push_back(c);
        ++row;
    }
    for (std::size_t r = row; r < A.size(); ++r)
        if (!A[r][n].is_zero()) return std::nullopt;
    LatticeVector v(n, 0);
    for (std::size_t r = 0; r < pivots.size(); ++r) {
        if (!A[r][n].is_integer()) return std::nullopt;
        v[pivots[r]] = static_cast<std::int32_t>(A[r][n].to_integer());
    }
    return v;
}

std::vector<RenderedFactor> render_phi_operators(const std::vector<DilogFactor>& factors, const TorusForm& torus,
                                                 const Polarization& p) {
    std::vector<RenderedFactor> out;
    for (const auto& f : factors) {
        LinearForm L;
        for (std::size_t x = 0; x < f.eta.size(); ++x)
            if (f.eta[x] != 0) L += p.node(torus.labels()[x]).scaled(Rational(f.eta[x]));
        out.push_back({f.flavor, L.scaled(Rational(2))});
    }
    return out;
}

}  // namespace qcluster
