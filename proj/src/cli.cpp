#include "dlab/cli.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "dlab/dedekind.hpp"
#include "dlab/equidist.hpp"
#include "dlab/kloosterman.hpp"
#include "dlab/parallel.hpp"

namespace dlab::cli {

namespace {

using ordered_json = nlohmann::ordered_json;

// Usage-level problem detected after flag parsing (missing mode flag, bad
// enum value). Maps to exit code 2 like a parse error.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    std::string group_text = "sl2z";
    std::uint64_t level = 1;
    double x = 0.0;
    std::string k_text;
    std::int64_t m = 1;
    std::int64_t n = 1;
    std::int64_t a = 0;
    std::uint64_t c = 0;
    std::uint64_t cmax = 0;
    std::int64_t ma = 0, mb = 0, mc = 0, md = 0; // matrix entries for `phi`
    double s = 2.0;
    std::uint64_t bins = 20;
    std::uint64_t M = 50;
    std::uint64_t mmax = 5;
    int threads = 0;
    std::string format = "csv";
    std::string out;
    std::uint64_t seed = 0;
    std::string weighting = "unweighted";
    bool naive = false;
    bool weil = false;
    bool experimental = false;
    bool m_given = false; // --m passed explicitly (weyl single-frequency mode)
};

// Keys accepted in a config file. Matches the option grammar; anything else
// is rejected (exit 2). Keys not used by the chosen subcommand are inert.
const std::vector<std::string> kConfigKeys = {
    "group", "level", "x", "k", "m", "n", "a", "c", "cmax", "s", "bins", "M",
    "mmax", "threads", "format", "out", "seed", "weighting", "naive", "weil",
    "experimental",
};

std::string fmt(double v) {
    char buf[40];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

class Emitter {
public:
    explicit Emitter(std::string command) : command_(std::move(command)) {
        json_["command"] = command_;
        json_["config"] = ordered_json::object();
        json_["results"] = ordered_json::array();
    }

    // Echoed math-relevant inputs. Runtime knobs (threads, out) stay out so
    // output bytes depend only on the mathematical request.
    void config(const std::string& key, const ordered_json& v) { json_["config"][key] = v; }

    void columns(std::vector<std::string> cols) { columns_ = std::move(cols); }

    void row(std::vector<std::pair<std::string, ordered_json>> cells) {
        ordered_json obj = ordered_json::object();
        std::vector<std::string> csv;
        csv.reserve(cells.size());
        for (auto& [key, v] : cells) {
            obj[key] = v;
            if (v.is_string())
                csv.push_back(v.get<std::string>());
            else if (v.is_number_float())
                csv.push_back(fmt(v.get<double>()));
            else
                csv.push_back(v.dump());
        }
        json_["results"].push_back(std::move(obj));
        rows_.push_back(std::move(csv));
    }

    // Single-value result: bare line in CSV mode, one-field object in JSON.
    void bare(const std::string& key, const ordered_json& v) {
        bare_ = v.is_string() ? v.get<std::string>()
                              : (v.is_number_float() ? fmt(v.get<double>()) : v.dump());
        row({{key, v}});
    }

    void write(std::ostream& os, const std::string& format) const {
        if (format == "json") {
            os << json_.dump(2) << "\n";
            return;
        }
        if (bare_) {
            os << *bare_ << "\n";
            return;
        }
        for (std::size_t i = 0; i < columns_.size(); ++i)
            os << columns_[i] << (i + 1 < columns_.size() ? "," : "");
        os << "\n";
        for (const auto& r : rows_) {
            for (std::size_t i = 0; i < r.size(); ++i)
                os << r[i] << (i + 1 < r.size() ? "," : "");
            os << "\n";
        }
    }

private:
    std::string command_;
    ordered_json json_;
    std::vector<std::string> columns_;
    std::vector<std::vector<std::string>> rows_;
    std::optional<std::string> bare_;
};

GroupSpec group_of(const RunConfig& rc) { return GroupSpec::parse(rc.group_text, rc.level); }

Weight weight_of(const RunConfig& rc) {
    if (rc.k_text.empty()) throw UsageError("--k is required");
    return Weight::parse(rc.k_text);
}

std::uint64_t require_c(const RunConfig& rc) {
    if (rc.c < 1) throw UsageError("--c (>= 1) is required");
    return rc.c;
}

// ---- subcommand handlers ----

void cmd_dedekind(const RunConfig& rc, Emitter& em) {
    std::uint64_t c = require_c(rc);
    em.config("a", rc.a);
    em.config("c", c);
    em.config("naive", rc.naive);
    Integer a(static_cast<long>(rc.a)), cc(static_cast<unsigned long>(c));
    Rational v = rc.naive ? dedekind_sum_naive(a, cc) : dedekind_sum_fast(a, cc);
    em.columns({"s"});
    em.bare("s", v.str());
}

void cmd_phi(const RunConfig& rc, Emitter& em) {
    em.config("a", rc.ma);
    em.config("b", rc.mb);
    em.config("c", rc.mc);
    em.config("d", rc.md);
    UnimodularMatrix g(Integer(static_cast<long>(rc.ma)), Integer(static_cast<long>(rc.mb)),
                       Integer(static_cast<long>(rc.mc)), Integer(static_cast<long>(rc.md)));
    em.columns({"phi"});
    em.bare("phi", phi_cocycle(g).str());
}

void cmd_symbol(const RunConfig& rc, Emitter& em) {
    std::uint64_t c = require_c(rc);
    GroupSpec group = group_of(rc);
    // a is canonicalized into [0, c): the symbol lives on the double coset.
    std::int64_t a_red = rc.a % static_cast<std::int64_t>(c);
    if (a_red < 0) a_red += static_cast<std::int64_t>(c);
    em.config("group", group.name());
    em.config("a", a_red);
    em.config("c", c);
    Rational v = dedekind_symbol(DoubleCoset(group, c, static_cast<std::uint64_t>(a_red)));
    em.columns({"symbol"});
    em.bare("symbol", v.str());
}

void cmd_cosets(const RunConfig& rc, Emitter& em) {
    GroupSpec group = group_of(rc);
    em.config("group", group.name());
    em.config("x", rc.x);
    if (rc.x >= 1.0 && pi_count(group, rc.x).count > kDefaultCosetBudget)
        throw DomainError(Errc::ResourceLimit, "projected coset count exceeds the budget");
    em.columns({"c", "a", "b", "d"});
    for_each_coset(group, rc.x, [&](const DoubleCoset& dc) {
        UnimodularMatrix g = complete_matrix(dc);
        em.row({{"c", dc.c},
                {"a", dc.a},
                {"b", static_cast<std::int64_t>(g.b.get_si())},
                {"d", static_cast<std::int64_t>(g.d.get_si())}});
    });
}

void cmd_count(const RunConfig& rc, Emitter& em) {
    GroupSpec group = group_of(rc);
    em.config("group", group.name());
    em.config("x", rc.x);
    CountReport r = pi_count(group, rc.x);
    em.columns({"x", "count", "main_term", "ratio", "remainder"});
    em.row({{"x", r.x},
            {"count", r.count},
            {"main_term", r.main_term},
            {"ratio", r.ratio},
            {"remainder", r.remainder}});
}

void cmd_zeta(const RunConfig& rc, Emitter& em) {
    GroupSpec group = group_of(rc);
    em.config("group", group.name());
    em.config("s", rc.s);
    em.config("x", rc.x);
    double v = zeta_partial(group, rc.s, rc.x, rc.threads);
    em.columns({"partial_sum"});
    em.bare("partial_sum", v);
}

void cmd_kloosterman(const RunConfig& rc, Emitter& em) {
    em.config("m", rc.m);
    em.config("n", rc.n);
    if (rc.weil) {
        std::uint64_t p = require_c(rc);
        em.config("p", p);
        double ratio = weil_ratio(rc.m, rc.n, p);
        std::complex<double> sv = kloosterman_classical(rc.m, rc.n, p);
        double bound = 2.0 * std::sqrt(static_cast<double>(p));
        em.columns({"p", "abs_s", "bound", "ratio"});
        em.row({{"p", p}, {"abs_s", std::abs(sv)}, {"bound", bound}, {"ratio", ratio}});
        return;
    }
    if (rc.cmax >= 1) {
        Weighting w;
        if (rc.weighting == "unweighted")
            w = Weighting::Unweighted;
        else if (rc.weighting == "over_c")
            w = Weighting::OverC;
        else
            throw UsageError("--weighting must be 'unweighted' or 'over_c'");
        em.config("cmax", rc.cmax);
        em.config("weighting", rc.weighting);
        std::complex<double> v =
            kloosterman_partial_sum(rc.m, rc.n, static_cast<double>(rc.cmax), w, rc.threads);
        em.columns({"re", "im", "abs"});
        em.row({{"re", v.real()}, {"im", v.imag()}, {"abs", std::abs(v)}});
        return;
    }
    std::uint64_t c = require_c(rc);
    em.config("c", c);
    std::complex<double> v = kloosterman_classical(rc.m, rc.n, c);
    em.columns({"re", "im", "abs"});
    em.row({{"re", v.real()}, {"im", v.imag()}, {"abs", std::abs(v)}});
}

void cmd_twisted(const RunConfig& rc, Emitter& em) {
    GroupSpec group = group_of(rc);
    Weight k = weight_of(rc);
    em.config("group", group.name());
    em.config("k", k.str());
    auto one = [&](std::uint64_t c) {
        if (rc.experimental) return kloosterman_twisted_mn(k, rc.m, rc.n, c, group);
        return kloosterman_twisted(k, c, group);
    };
    if (rc.experimental) {
        em.config("m", rc.m);
        em.config("n", rc.n);
        em.config("experimental", true);
    }
    if (rc.cmax >= 1) {
        em.config("cmax", rc.cmax);
        em.columns({"c", "re", "im", "abs"});
        auto blocks = map_blocks<std::vector<std::complex<double>>>(
            1, rc.cmax + 1, 16, rc.threads, [&](std::uint64_t b, std::uint64_t e) {
                std::vector<std::complex<double>> vals;
                for (std::uint64_t c = b; c < e; ++c) vals.push_back(one(c));
                return vals;
            });
        std::uint64_t c = 1;
        for (const auto& blk : blocks)
            for (const auto& v : blk) {
                em.row({{"c", c}, {"re", v.real()}, {"im", v.imag()}, {"abs", std::abs(v)}});
                ++c;
            }
        return;
    }
    std::uint64_t c = require_c(rc);
    em.config("c", c);
    std::complex<double> v = one(c);
    em.columns({"c", "re", "im", "abs"});
    em.row({{"c", c}, {"re", v.real()}, {"im", v.imag()}, {"abs", std::abs(v)}});
}

void cmd_vardi(const RunConfig& rc, Emitter& em) {
    Weight k = weight_of(rc);
    if (rc.cmax < 1) throw UsageError("--cmax (>= 1) is required");
    em.config("k", k.str());
    em.config("cmax", rc.cmax);
    em.columns({"c", "residual"});
    auto blocks = map_blocks<std::vector<double>>(
        1, rc.cmax + 1, 16, rc.threads, [&](std::uint64_t b, std::uint64_t e) {
            std::vector<double> vals;
            for (std::uint64_t c = b; c < e; ++c) vals.push_back(vardi_check(k, c));
            return vals;
        });
    std::uint64_t c = 1;
    for (const auto& blk : blocks)
        for (double r : blk) {
            em.row({{"c", c}, {"residual", r}});
            ++c;
        }
}

void cmd_weyl(const RunConfig& rc, Emitter& em) {
    Weight k = weight_of(rc);
    GroupSpec group = group_of(rc);
    em.config("group", group.name());
    em.config("k", k.str());
    em.config("x", rc.x);
    SampleStream stream = sample_stream(k, group, rc.x, rc.threads);
    em.columns({"m", "re", "im", "normalized"});
    auto emit = [&](std::int64_t m) {
        WeylReport w = weyl_sum(stream, m, rc.threads);
        em.row({{"m", w.m},
                {"re", w.weyl_sum.real()},
                {"im", w.weyl_sum.imag()},
                {"normalized", w.normalized}});
    };
    if (rc.m_given) {
        em.config("m", rc.m);
        emit(rc.m);
    } else {
        em.config("mmax", rc.mmax);
        for (std::uint64_t m = 1; m <= rc.mmax; ++m) emit(static_cast<std::int64_t>(m));
    }
}

void cmd_discrepancy(const RunConfig& rc, Emitter& em) {
    Weight k = weight_of(rc);
    GroupSpec group = group_of(rc);
    em.config("group", group.name());
    em.config("k", k.str());
    em.config("x", rc.x);
    em.config("M", rc.M);
    SampleStream stream = sample_stream(k, group, rc.x, rc.threads);
    DiscrepancyReport r = erdos_turan_bound(stream, rc.M, rc.threads);
    em.columns({"N", "M", "star_discrepancy", "et_bound"});
    em.row({{"N", r.n_samples},
            {"M", r.m_truncation},
            {"star_discrepancy", r.star_discrepancy},
            {"et_bound", r.et_bound}});
}

void cmd_histogram(const RunConfig& rc, Emitter& em) {
    Weight k = weight_of(rc);
    GroupSpec group = group_of(rc);
    em.config("group", group.name());
    em.config("k", k.str());
    em.config("x", rc.x);
    em.config("bins", rc.bins);
    SampleStream stream = sample_stream(k, group, rc.x, rc.threads);
    auto counts = histogram(stream, rc.bins);
    em.columns({"bin", "lo", "hi", "count"});
    for (std::uint64_t j = 0; j < rc.bins; ++j) {
        em.row({{"bin", j},
                {"lo", static_cast<double>(j) / static_cast<double>(rc.bins)},
                {"hi", static_cast<double>(j + 1) / static_cast<double>(rc.bins)},
                {"count", counts[j]}});
    }
}

// ---- config file handling ----

std::vector<std::pair<std::string, std::string>> load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open config file '" + path + "'");
    std::vector<std::pair<std::string, std::string>> kv;
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        auto last = line.find_last_not_of(" \t\r");
        line = line.substr(first, last - first + 1);
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw UsageError("config line without '=': '" + line + "'");
        auto trim = [](std::string t) {
            auto b = t.find_first_not_of(" \t");
            auto e = t.find_last_not_of(" \t");
            return b == std::string::npos ? std::string() : t.substr(b, e - b + 1);
        };
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (std::find(kConfigKeys.begin(), kConfigKeys.end(), key) == kConfigKeys.end())
            throw UsageError("unknown config key '" + key + "'");
        if (value.empty()) throw UsageError("empty value for config key '" + key + "'");
        kv.emplace_back(key, value);
    }
    return kv;
}

bool truthy(const std::string& v) { return v == "1" || v == "true" || v == "yes" || v == "on"; }

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    RunConfig rc;
    std::string config_path;

    CLI::App app{"Dedekind symbols, double-coset counts, Kloosterman sums and "
                 "equidistribution statistics"};
    app.require_subcommand(0, 1);

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--threads", rc.threads, "worker threads (0 = DEDEKIND_LAB_THREADS or hardware)");
        sub->add_option("--format", rc.format)->check(CLI::IsMember({"csv", "json"}));
        sub->add_option("--out", rc.out, "write results to this file instead of stdout");
        sub->add_option("--config", config_path, "key=value defaults; explicit flags win");
        for (auto* opt : sub->get_options()) opt->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    };
    auto add_group = [&](CLI::App* sub) {
        sub->add_option("--group", rc.group_text, "sl2z or gamma0(N)");
        sub->add_option("--level", rc.level, "Gamma_0 level when --group gamma0");
    };

    CLI::App* c_dedekind = app.add_subcommand("dedekind", "Dedekind sum s(a; c)");
    c_dedekind->add_option("--a", rc.a)->required();
    c_dedekind->add_option("--c", rc.c)->required();
    c_dedekind->add_flag("--naive", rc.naive, "use the O(c) definition sum");
    add_common(c_dedekind);

    CLI::App* c_phi = app.add_subcommand("phi", "Rademacher Phi of (a b; c d)");
    c_phi->add_option("--a", rc.ma)->required();
    c_phi->add_option("--b", rc.mb)->required();
    c_phi->add_option("--c", rc.mc)->required();
    c_phi->add_option("--d", rc.md)->required();
    add_common(c_phi);

    CLI::App* c_symbol = app.add_subcommand("symbol", "Dedekind symbol of the coset (a, c)");
    c_symbol->add_option("--a", rc.a)->required();
    c_symbol->add_option("--c", rc.c)->required();
    add_group(c_symbol);
    add_common(c_symbol);

    CLI::App* c_cosets = app.add_subcommand("cosets", "enumerate double cosets with c <= x");
    c_cosets->add_option("--x", rc.x)->required();
    add_group(c_cosets);
    add_common(c_cosets);

    CLI::App* c_count = app.add_subcommand("count", "double-coset count pi(x) vs x^2/(pi V)");
    c_count->add_option("--x", rc.x)->required();
    add_group(c_count);
    add_common(c_count);

    CLI::App* c_zeta = app.add_subcommand("zeta", "partial sum of Z(s) up to x");
    c_zeta->add_option("--s", rc.s)->required();
    c_zeta->add_option("--x", rc.x)->required();
    add_group(c_zeta);
    add_common(c_zeta);

    CLI::App* c_kloos = app.add_subcommand("kloosterman", "classical S(m, n; c), scans, Weil check");
    c_kloos->add_option("--m", rc.m);
    c_kloos->add_option("--n", rc.n);
    c_kloos->add_option("--c", rc.c);
    c_kloos->add_option("--cmax", rc.cmax);
    c_kloos->add_option("--weighting", rc.weighting)->check(CLI::IsMember({"unweighted", "over_c"}));
    c_kloos->add_flag("--weil", rc.weil, "report |S(m,n;p)| / 2 sqrt(p) for prime p = --c");
    add_common(c_kloos);

    CLI::App* c_twisted = app.add_subcommand("twisted", "multiplier-twisted Kloosterman sums");
    c_twisted->add_option("--k", rc.k_text)->required();
    c_twisted->add_option("--c", rc.c);
    c_twisted->add_option("--cmax", rc.cmax);
    c_twisted->add_option("--m", rc.m);
    c_twisted->add_option("--n", rc.n);
    c_twisted->add_flag("--experimental", rc.experimental,
                        "general (m, n) twisted sums; no contract");
    add_group(c_twisted);
    add_common(c_twisted);

    CLI::App* c_vardi = app.add_subcommand("vardi", "Vardi identity residuals for c <= cmax");
    c_vardi->add_option("--k", rc.k_text)->required();
    c_vardi->add_option("--cmax", rc.cmax)->required();
    add_common(c_vardi);

    CLI::App* c_weyl = app.add_subcommand("weyl", "Weyl sums of the k*S value stream");
    c_weyl->add_option("--k", rc.k_text)->required();
    c_weyl->add_option("--x", rc.x)->required();
    c_weyl->add_option("--m", rc.m);
    c_weyl->add_option("--mmax", rc.mmax);
    add_group(c_weyl);
    add_common(c_weyl);

    CLI::App* c_disc = app.add_subcommand("discrepancy", "star discrepancy and Erdos-Turan bound");
    c_disc->add_option("--k", rc.k_text)->required();
    c_disc->add_option("--x", rc.x)->required();
    c_disc->add_option("--M", rc.M);
    add_group(c_disc);
    add_common(c_disc);

    CLI::App* c_hist = app.add_subcommand("histogram", "bin counts of the k*S value stream");
    c_hist->add_option("--k", rc.k_text)->required();
    c_hist->add_option("--x", rc.x)->required();
    c_hist->add_option("--bins", rc.bins);
    add_group(c_hist);
    add_common(c_hist);

    // Config defaults are injected as synthetic tokens before the user's
    // flags; TakeLast everywhere means explicit flags win.
    std::vector<std::string> tokens = args;
    try {
        std::string sub_name;
        for (const auto& t : tokens)
            if (!t.empty() && t[0] != '-') {
                sub_name = t;
                break;
            }
        std::string pre_path;
        for (std::size_t i = 0; i < tokens.size(); ++i) {
            if (tokens[i] == "--config" && i + 1 < tokens.size()) pre_path = tokens[i + 1];
            else if (tokens[i].rfind("--config=", 0) == 0) pre_path = tokens[i].substr(9);
        }
        if (!pre_path.empty() && !sub_name.empty()) {
            CLI::App* sub = app.get_subcommand_no_throw(sub_name);
            if (sub != nullptr) {
                std::vector<std::string> inject;
                for (const auto& [key, value] : load_config(pre_path)) {
                    const CLI::Option* opt = sub->get_option_no_throw("--" + key);
                    if (opt == nullptr) continue; // valid key, not used by this subcommand
                    if (opt->get_expected_min() == 0) {
                        if (truthy(value)) inject.push_back("--" + key);
                    } else {
                        inject.push_back("--" + key);
                        inject.push_back(value);
                    }
                }
                auto pos = std::find(tokens.begin(), tokens.end(), sub_name);
                tokens.insert(pos + 1, inject.begin(), inject.end());
            }
        }

        std::vector<std::string> reversed(tokens.rbegin(), tokens.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        app.exit(e, out, err);
        return 0;
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return 2;
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    }

    CLI::App* chosen = nullptr;
    for (CLI::App* sub : app.get_subcommands()) chosen = sub;
    if (chosen == nullptr) {
        out << app.help();
        return 2;
    }
    if (chosen == c_weyl) rc.m_given = c_weyl->count("--m") > 0;

    try {
        Emitter em(chosen->get_name());
        const std::string& name = chosen->get_name();
        if (name == "dedekind") cmd_dedekind(rc, em);
        else if (name == "phi") cmd_phi(rc, em);
        else if (name == "symbol") cmd_symbol(rc, em);
        else if (name == "cosets") cmd_cosets(rc, em);
        else if (name == "count") cmd_count(rc, em);
        else if (name == "zeta") cmd_zeta(rc, em);
        else if (name == "kloosterman") cmd_kloosterman(rc, em);
        else if (name == "twisted") cmd_twisted(rc, em);
        else if (name == "vardi") cmd_vardi(rc, em);
        else if (name == "weyl") cmd_weyl(rc, em);
        else if (name == "discrepancy") cmd_discrepancy(rc, em);
        else if (name == "histogram") cmd_histogram(rc, em);

        if (rc.out.empty()) {
            em.write(out, rc.format);
        } else {
            std::ofstream f(rc.out, std::ios::binary);
            if (!f) throw DomainError(Errc::BadArgument, "cannot open output file '" + rc.out + "'");
            em.write(f, rc.format);
        }
        return 0;
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        err << "error: Internal: " << e.what() << "\n";
        return 1;
    }
}

} // namespace dlab::cli
