#include "qcluster/lie_data.hpp"

#include <algorithm>
#include <sstream>

namespace qcluster {

char lie_type_char(LieType t) { return "ABCDEFG"[static_cast<int>(t)]; }

LieType parse_lie_type(const std::string& s) {
    if (s.size() == 1) {
        char c = static_cast<char>(std::toupper(static_cast<unsigned char>(s[0])));
        if (c >= 'A' && c <= 'G') return static_cast<LieType>(c - 'A');
    }
    throw InvalidDatum("unknown Lie type '" + s + "'");
}

std::string convention_name(ShortRootConvention c) {
    return c == ShortRootConvention::bourbaki ? "bourbaki" : "reversed";
}

ShortRootConvention parse_convention(const std::string& s) {
    if (s.empty() || s == "bourbaki" || s == "default") return ShortRootConvention::bourbaki;
    // alias used by the word JSON schema
    if (s == "reversed" || s == "paper") return ShortRootConvention::reversed;
    throw InvalidDatum("unknown short root convention '" + s + "'");
}

int RootDatum::positive_root_count() const {
    const int n = rank;
    switch (type) {
        case LieType::A: return n * (n + 1) / 2;
        case LieType::B:
        case LieType::C: return n * n;
        case LieType::D: return n * (n - 1);
        case LieType::E: return n == 6 ? 36 : n == 7 ? 63 : 120;
        case LieType::F: return 24;
        case LieType::G: return 6;
    }
    return 0;
}

std::string RootDatum::name() const { return std::string(1, lie_type_char(type)) + std::to_string(rank); }

RootDatum cartan_datum(LieType type, int rank, ShortRootConvention conv) {
    const int n = rank;
    bool ok = n >= 1;
    switch (type) {
        case LieType::A: break;
        case LieType::B:
        case LieType::C: ok = n >= 2; break;
        case LieType::D: ok = n >= 4; break;
        case LieType::E: ok = n >= 6 && n <= 8; break;
        case LieType::F: ok = n == 4; break;
        case LieType::G: ok = n == 2; break;
    }
    if (!ok)
        throw InvalidDatum("invalid rank " + std::to_string(n) + " for type " + lie_type_char(type));

    RootDatum r;
    r.type = type;
    r.rank = n;
    r.convention = conv;
    auto& A = r.cartan;
    A.assign(n, std::vector<int>(n, 0));
    r.d.assign(n, Rational(1));
    for (int i = 0; i < n; ++i) A[i][i] = 2;
    auto link = [&](int i, int j) { A[i][j] = A[j][i] = -1; };

    switch (type) {
        case LieType::A:
            for (int i = 0; i + 1 < n; ++i) link(i, i + 1);
            break;
        case LieType::B:
            for (int i = 0; i + 1 < n; ++i) link(i, i + 1);
            A[n - 1][n - 2] = -2;
            r.d[n - 1] = Rational(1, 2);
            break;
        case LieType::C:
            for (int i = 0; i + 1 < n; ++i) link(i, i + 1);
            A[n - 2][n - 1] = -2;
            for (int i = 0; i + 1 < n; ++i) r.d[i] = Rational(1, 2);
            break;
        case LieType::D:
            for (int i = 0; i + 2 < n; ++i) link(i, i + 1);
            link(n - 3, n - 1);
            break;
        case LieType::E:
            // 1-3-4-5-6-7-8 with 2 attached to 4
            link(0, 2);
            link(1, 3);
            for (int i = 2; i + 1 < n; ++i) link(i, i + 1);
            break;
        case LieType::F:
            link(0, 1);
            link(1, 2);
            link(2, 3);
            A[2][1] = -2;
            r.d[2] = r.d[3] = Rational(1, 2);
            break;
        case LieType::G:
            A[0][1] = -3;
            A[1][0] = -1;
            r.d[0] = Rational(1, 3);
            break;
    }

    if (conv == ShortRootConvention::reversed && (type == LieType::B || type == LieType::C)) {
        std::vector<std::vector<int>> R(n, std::vector<int>(n));
        std::vector<Rational> d(n);
        for (int i = 0; i < n; ++i) {
            d[i] = r.d[n - 1 - i];
            for (int j = 0; j < n; ++j) R[i][j] = A[n - 1 - i][n - 1 - j];
        }
        A = R;
        r.d = d;
    }
    return r;
}

int ReducedWord::root(int k) const {
    if (k >= 1 && k <= N()) return letters_[k - 1];
    if (k > N() && k <= N() + n()) return k - N();
    throw std::out_of_range("node index " + std::to_string(k) + " out of range");
}

int ReducedWord::plus(int k) const {
    if (k < 1 || k > N()) throw std::out_of_range("k^+ needs 1 <= k <= N");
    return plus_[k - 1];
}

int ReducedWord::minus(int k) const {
    if (k < 1 || k > N() + n()) throw std::out_of_range("k^- needs 1 <= k <= N+n");
    return minus_[k - 1];
}

int ReducedWord::star(int i) const {
    for (int k = N(); k >= 1; --k)
        if (letters_[k - 1] == i) return k;
    throw std::out_of_range("root " + std::to_string(i) + " absent from word");
}

std::vector<int> ReducedWord::f_out() const {
    std::vector<int> r;
    for (int j = 1; j <= n(); ++j) r.push_back(N() + j);
    return r;
}

bool ReducedWord::is_frozen(int k) const { return k > N() || minus(k) == 0; }

std::vector<int> ReducedWord::row(int i) const {
    std::vector<int> r;
    for (int k = 1; k <= N(); ++k)
        if (letters_[k - 1] == i) r.push_back(k);
    r.push_back(N() + i);
    return r;
}

namespace {

// s_i(beta) = beta - <beta, alpha_i^vee> alpha_i in the simple root basis
void reflect(const RootDatum& d, int i, std::vector<long long>& beta) {
    long long c = 0;
    for (int j = 0; j < d.rank; ++j) c += beta[j] * d.cartan[i - 1][j];
    beta[i - 1] -= c;
}

}  // namespace

ReducedWord validate_reduced_word(const RootDatum& datum, const std::vector<int>& letters) {
    const int n = datum.rank;
    for (int l : letters)
        if (l < 1 || l > n)
            throw std::invalid_argument("letter " + std::to_string(l) + " outside 1.." + std::to_string(n));
    // beta_k = s_{i_1} ... s_{i_{k-1}} (alpha_{i_k}) must be positive for all k
    for (std::size_t k = 0; k < letters.size(); ++k) {
        std::vector<long long> beta(n, 0);
        beta[letters[k] - 1] = 1;
        for (std::size_t j = k; j-- > 0;) reflect(datum, letters[j], beta);
        bool neg = std::any_of(beta.begin(), beta.end(), [](long long x) { return x < 0; });
        if (neg)
            throw NotReduced("word " + format_word(letters) + " is not reduced at position " +
                             std::to_string(k + 1));
    }
    if (static_cast<int>(letters.size()) != datum.positive_root_count())
        throw NotLongest("word length " + std::to_string(letters.size()) + " != " +
                         std::to_string(datum.positive_root_count()) + " positive roots of " +
                         datum.name());

    ReducedWord w;
    w.datum_ = datum;
    w.letters_ = letters;
    const int N = w.N();
    w.plus_.assign(N, 0);
    w.minus_.assign(N + n, 0);
    for (int k = 1; k <= N; ++k) {
        int p = N + letters[k - 1];
        for (int l = k + 1; l <= N; ++l)
            if (letters[l - 1] == letters[k - 1]) {
                p = l;
                break;
            }
        w.plus_[k - 1] = p;
        w.minus_[p - 1] = std::max(w.minus_[p - 1], k);
    }
    for (int k = 1; k <= N; ++k)
        if (w.minus_[k - 1] == 0) w.f_in_.push_back(k);
    return w;
}

ReducedWord reverse_word(const ReducedWord& w) {
    std::vector<int> r(w.letters().rbegin(), w.letters().rend());
    return validate_reduced_word(w.datum(), r);
}

std::map<int, int> sigma_bijection(const ReducedWord& word, const ReducedWord& reversed) {
    std::map<int, int> s;
    for (int i = 1; i <= word.n(); ++i) {
        auto a = reversed.row(i), b = word.row(i);
        if (a.size() != b.size()) throw std::invalid_argument("sigma: words have different letter counts");
        for (std::size_t j = 0; j < a.size(); ++j) s[a[j]] = b[j];
    }
    return s;
}

std::vector<int> standard_a_word(int n) {
    std::vector<int> w;
    for (int r = 1; r <= n; ++r)
        for (int j = r; j >= 1; --j) w.push_back(j);
    return w;
}

std::vector<int> parse_word(const std::string& csv) {
    std::vector<int> out;
    std::string tok;
    std::stringstream ss(csv);
    while (std::getline(ss, tok, ',')) {
        tok.erase(std::remove_if(tok.begin(), tok.end(), [](unsigned char c) { return std::isspace(c) || c == '(' || c == ')'; }),
                  tok.end());
        if (tok.empty()) continue;
        out.push_back(std::stoi(tok));
    }
    return out;
}

std::string format_word(const std::vector<int>& letters) {
    std::string s = "(";
    for (std::size_t i = 0; i < letters.size(); ++i) s += (i ? "," : "") + std::to_string(letters[i]);
    return s + ")";
}

}  // namespace qcluster
