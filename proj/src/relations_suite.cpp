#include "qcluster/relations_suite.hpp"

#include <atomic>
#include <chrono>
#include <sstream>
#include <thread>

#include <json.hpp>

namespace qcluster {

bool VerificationReport::all_pass() const { return failures() == 0; }

std::size_t VerificationReport::failures() const {
    std::size_t n = 0;
    for (const auto& c : checks) n += c.pass ? 0 : 1;
    return n;
}

void VerificationReport::append(const VerificationReport& other) {
    checks.insert(checks.end(), other.checks.begin(), other.checks.end());
}

std::string VerificationReport::to_json() const {
    nlohmann::ordered_json j;
    j["suite"] = suite;
    j["passed"] = checks.size() - failures();
    j["failed"] = failures();
    j["checks"] = nlohmann::ordered_json::array();
    for (const auto& c : checks) {
        nlohmann::ordered_json e;
        e["name"] = c.name;
        e["status"] = c.pass ? "pass" : "fail";
        e["residual"] = c.residual;
        e["ms"] = c.ms;
        j["checks"].push_back(e);
    }
    return j.dump(2) + "\n";
}

namespace {

std::string xml_escape(const std::string& s) {
    std::string o;
    for (char c : s) {
        switch (c) {
            case '&': o += "&amp;"; break;
            case '<': o += "&lt;"; break;
            case '>': o += "&gt;"; break;
            case '"': o += "&quot;"; break;
            default: o += c;
        }
    }
    return o;
}

std::string clip(std::string s, std::size_t n = 400) {
    if (s.size() > n) s = s.substr(0, n) + " ...";
    return s;
}

}  // namespace

std::string VerificationReport::to_junit() const {
    double total = 0;
    for (const auto& c : checks) total += c.ms;
    std::ostringstream o;
    o << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    o << "<testsuite name=\"" << xml_escape(suite) << "\" tests=\"" << checks.size() << "\" failures=\""
      << failures() << "\" time=\"" << total / 1000 << "\">\n";
    for (const auto& c : checks) {
        o << "  <testcase name=\"" << xml_escape(c.name) << "\" time=\"" << c.ms / 1000 << "\"";
        if (c.pass) {
            o << "/>\n";
        } else {
            o << ">\n    <failure message=\"" << xml_escape(clip(c.residual, 200)) << "\">"
              << xml_escape(c.residual) << "</failure>\n  </testcase>\n";
        }
    }
    o << "</testsuite>\n";
    return o.str();
}

std::string VerificationReport::to_text() const {
    std::ostringstream o;
    for (const auto& c : checks) {
        o << (c.pass ? "PASS " : "FAIL ") << c.name;
        if (!c.pass) o << "\n     " << clip(c.residual);
        o << "\n";
    }
    o << suite << ": " << checks.size() - failures() << "/" << checks.size() << " passed\n";
    return o.str();
}

VerificationReport run_checks(const std::string& suite, const std::vector<CheckJob>& jobs, int threads) {
    VerificationReport rep{suite, std::vector<CheckResult>(jobs.size())};
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < jobs.size(); i = next++) {
            CheckResult& r = rep.checks[i];
            r.name = jobs[i].name;
            auto t0 = std::chrono::steady_clock::now();
            try {
                r.residual = jobs[i].run();
                r.pass = r.residual.empty();
            } catch (const std::exception& e) {
                r.pass = false;
                r.residual = std::string("exception: ") + e.what();
            }
            r.ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
        }
    };
    const int n = std::max(1, std::min<int>(threads, static_cast<int>(jobs.size())));
    std::vector<std::thread> pool;
    for (int t = 1; t < n; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    return rep;
}

namespace {

QLaurent qpow(const Rational& e) { return QLaurent::monomial(e); }

std::string residual_of(const TorusElement& lhs, const TorusElement& rhs) {
    TorusElement d = lhs - rhs;
    return d.is_zero() ? "" : clip(d.str());
}

TorusElement power(const TorusElement& x, int k) {
    TorusElement r = TorusElement::constant(x.torus(), QLaurent(1));
    for (int j = 0; j < k; ++j) r = r * x;
    return r;
}

}  // namespace

std::vector<CheckJob> borel_relation_jobs(const BorelRealization& r, const std::string& prefix) {
    std::vector<CheckJob> jobs;
    const ReducedWord& W = r.glued.right;
    const RootDatum& D = W.datum();
    const BorelRealization* R = &r;
    const bool glued = r.glued.left.has_value();
    auto G = [R](int i) -> const BorelGenerators& { return R->gens.at(i); };
    const std::string tag = prefix.empty() ? D.name() + " " + mode_name(r.glued.kind) + ": " : prefix;

    for (int i = 1; i <= D.rank; ++i) {
        for (int j = 1; j <= D.rank; ++j) {
            if (i < j) {
                jobs.push_back({tag + "K'_" + std::to_string(i) + " K'_" + std::to_string(j) + " commute",
                                [=] { return residual_of(G(i).K * G(j).K, G(j).K * G(i).K); }});
            }
            jobs.push_back({tag + "Cartan K'_" + std::to_string(i) + " f_" + std::to_string(j), [=, &D] {
                                const Rational e = D.mult(i) * Rational(D.a(i, j));
                                return residual_of(G(i).K * G(j).f, (G(j).f * G(i).K).scaled(qpow(e)));
                            }});
            if (i != j && D.a(i, j) != 0) {
                jobs.push_back({tag + "Serre f_" + std::to_string(i) + " f_" + std::to_string(j), [=, &D] {
                                    const int m = 1 - D.a(i, j);
                                    const TorusElement& fi = G(i).f;
                                    TorusElement sum(fi.torus());
                                    for (int s = 0; s <= m; ++s) {
                                        TorusElement t = power(fi, m - s) * G(j).f * power(fi, s);
                                        QLaurent c = QLaurent::q_binomial(m, s, D.mult(i));
                                        sum += t.scaled(s % 2 ? -c : c);
                                    }
                                    return sum.is_zero() ? std::string() : clip(sum.str());
                                }});
            }
            if (G(i).e_minus) {
                jobs.push_back({tag + "[e^-_" + std::to_string(i) + ", f^+_" + std::to_string(j) + "]", [=, &D] {
                                    const TorusElement& fp = glued ? G(j).f_plus : G(j).f;
                                    TorusElement c = commutator_quotient(*G(i).e_minus, fp, D.mult(i));
                                    return residual_of(c, i == j ? G(i).K : TorusElement(fp.torus()));
                                }});
            }
        }
        if (glued) {
            jobs.push_back({tag + "f^-_" + std::to_string(i) + " f^+_" + std::to_string(i), [=, &D] {
                                const BorelGenerators& g = G(i);
                                return residual_of(g.f_minus * g.f_plus,
                                                   (g.f_plus * g.f_minus).scaled(qpow(D.mult(i) * Rational(-2))));
                            }});
        }
    }

    // prefix monomials f^{k,s}, f^{l,s} with l < k on the same copy:
    // f^k f^l = q_{i_k}^{s a_{i_k i_l}} f^l f^k
    for (int copy : {0, 1}) {
        if (copy == 1 && !glued) break;
        jobs.push_back({tag + "prefix monomials, copy " + std::to_string(copy), [=, &D, &W] {
                            std::vector<const BorelGenerators::Part*> ps;
                            for (const auto& [i, g] : R->gens)
                                for (const auto& p : g.parts)
                                    if (p.copy == copy) ps.push_back(&p);
                            std::string out;
                            for (const auto* a : ps) {
                                for (const auto* b : ps) {
                                    if (b->k >= a->k || a->sign != b->sign) continue;
                                    const int ik = W.root(a->k), il = W.root(b->k);
                                    const Rational e = D.mult(ik) * Rational(a->sign * D.a(ik, il));
                                    std::string res = residual_of(a->monomial * b->monomial,
                                                                  (b->monomial * a->monomial).scaled(qpow(e)));
                                    if (!res.empty() && out.empty())
                                        out = "k=" + std::to_string(a->k) + " l=" + std::to_string(b->k) + ": " + res;
                                }
                            }
                            return out;
                        }});
    }
    return jobs;
}

VerificationReport run_borel_relations(const BorelRealization& r, int threads) {
    const std::string name = r.glued.right.datum().name() + " " + mode_name(r.glued.kind);
    return run_checks(name, borel_relation_jobs(r), threads);
}

}  // namespace qcluster
