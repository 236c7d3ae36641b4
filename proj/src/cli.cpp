#include "twistcoh/cli.hpp"

#include "twistcoh/frolicher.hpp"
#include "twistcoh/hopf.hpp"
#include "twistcoh/jets.hpp"
#include "twistcoh/twisted.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <thread>

namespace twistcoh::cli {

using nlohmann::json;

namespace {

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream is(text);
    while (std::getline(is, cur, sep)) {
        auto b = cur.find_first_not_of(" \t");
        auto e = cur.find_last_not_of(" \t");
        out.push_back(b == std::string::npos ? "" : cur.substr(b, e - b + 1));
    }
    return out;
}

template <class F>
auto config_guard(const std::string& what, F&& f) {
    try {
        return f();
    } catch (const Error& e) {
        throw ConfigError(what + ": " + e.what());
    }
}

constexpr std::size_t kMaxGrid = 100000;

std::string hex64(std::uint64_t h) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? sep : "") + parts[i];
    return out;
}

std::string join_ints(const std::vector<int>& v, const std::string& sep) {
    std::vector<std::string> parts;
    for (int x : v) parts.push_back(std::to_string(x));
    return join(parts, sep);
}

/// Evaluates f on every grid index with up to thread_count() workers; the
/// output keeps grid order and the first failure (by index) is rethrown.
template <class T>
std::vector<T> parallel_map(std::size_t count, const std::function<T(std::size_t)>& f) {
    std::vector<T> out(count);
    std::vector<std::exception_ptr> errors(count);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i; (i = next++) < count;) {
            try {
                out[i] = f(i);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    unsigned workers = std::min<unsigned>(thread_count(), static_cast<unsigned>(std::max<std::size_t>(count, 1)));
    std::vector<std::thread> pool;
    for (unsigned w = 1; w < workers; ++w) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    return out;
}

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    std::string str() const {
        std::string out = join(header, ",") + "\n";
        for (const auto& r : rows) out += join(r, ",") + "\n";
        return out;
    }
};

struct Report {
    json results = json::array();
    Table table;
    std::string digest;
};

std::vector<std::string> grid_strings(const std::vector<Scalar>& grid) {
    std::vector<std::string> out;
    for (const auto& a : grid) out.push_back(to_string(a));
    return out;
}

Model validated_model(const RunConfig& config) {
    Model m = load_model(config);
    ValidationReport report = validate(m);
    for (const auto& c : report.checks)
        if (c.enforced && !c.passed)
            throw ValidationFailure("model '" + m.name + "' fails " + c.constraint + " (witness " +
                                    join(c.witnesses, " ") + ")");
    return m;
}

std::vector<std::pair<int, int>> bidegrees(const RunConfig& config, int m) {
    if (config.pq) {
        auto [p, q] = *config.pq;
        if (p < 0 || q < 0 || p > m || q > m) throw ConfigError("--pq outside 0.." + std::to_string(m));
        return {*config.pq};
    }
    std::vector<std::pair<int, int>> out;
    for (int p = 0; p <= m; ++p)
        for (int q = 0; q <= m; ++q) out.emplace_back(p, q);
    return out;
}

Report cmd_mn(const RunConfig& config) {
    Model m = validated_model(config);
    TwistedFamily f(m);
    auto grid = parse_grid(config.alpha);
    Report r;
    r.digest = hex64(digest(m));
    r.table.header = {"alpha", "degree", "dim"};
    auto dims = parallel_map<std::vector<std::size_t>>(
        grid.size(), [&](std::size_t i) { return morse_novikov(f, Weight(grid[i])).degree_dims(); });
    for (std::size_t i = 0; i < grid.size(); ++i) {
        long euler = 0;
        for (std::size_t k = 0; k < dims[i].size(); ++k) {
            euler += (k % 2 ? -1 : 1) * static_cast<long>(dims[i][k]);
            r.table.rows.push_back({to_string(grid[i]), std::to_string(k), std::to_string(dims[i][k])});
        }
        r.results.push_back({{"alpha", to_string(grid[i])}, {"dims", dims[i]}, {"euler", euler}});
    }
    return r;
}

Report cmd_dolbeault(const RunConfig& config) {
    Model m = validated_model(config);
    TwistedFamily f(m);
    auto grid = parse_grid(config.alpha);
    auto pqs = bidegrees(config, f.complex_dim());
    Report r;
    r.digest = hex64(digest(m));
    r.table.header = {"alpha", "p", "q", "dim"};
    auto reports =
        parallel_map<CohomologyReport>(grid.size(), [&](std::size_t i) { return dolbeault(f, Weight(grid[i])); });
    for (std::size_t i = 0; i < grid.size(); ++i) {
        json h = json::array();
        for (auto [p, q] : pqs) {
            std::size_t d = reports[i].dim(p, q);
            h.push_back({{"p", p}, {"q", q}, {"dim", d}});
            r.table.rows.push_back({to_string(grid[i]), std::to_string(p), std::to_string(q), std::to_string(d)});
        }
        r.results.push_back({{"alpha", to_string(grid[i])}, {"h", h}});
    }
    return r;
}

Report cmd_bc(const RunConfig& config) {
    Model m = validated_model(config);
    TwistedFamily f(m);
    auto grid = parse_grid(config.alpha);
    auto pqs = bidegrees(config, f.complex_dim());
    Report r;
    r.digest = hex64(digest(m));
    r.table.header = {"alpha", "p", "q", "bc_dim", "ddc_holds", "ddc_left", "ddc_right"};
    auto rows = parallel_map<json>(grid.size(), [&](std::size_t i) {
        json entries = json::array();
        Weight w(grid[i]);
        for (auto [p, q] : pqs) {
            std::size_t bc = bott_chern(f, w, p, q).entries.front().dim;
            DdcVerdict v = ddc_lemma_check(f, w, p, q);
            entries.push_back({{"p", p},
                               {"q", q},
                               {"bc_dim", bc},
                               {"ddc_holds", v.holds},
                               {"ddc_left", v.left_dim},
                               {"ddc_right", v.right_dim}});
        }
        return entries;
    });
    for (std::size_t i = 0; i < grid.size(); ++i) {
        for (const auto& e : rows[i])
            r.table.rows.push_back({to_string(grid[i]), e["p"].dump(), e["q"].dump(), e["bc_dim"].dump(),
                                    e["ddc_holds"].dump(), e["ddc_left"].dump(), e["ddc_right"].dump()});
        r.results.push_back({{"alpha", to_string(grid[i])}, {"bidegrees", rows[i]}});
    }
    return r;
}

Report cmd_frolicher(const RunConfig& config) {
    Model m = validated_model(config);
    TwistedFamily f(m);
    auto grid = parse_grid(config.alpha);
    const int mc = f.complex_dim();
    auto pqs = bidegrees(config, mc);
    Report r;
    r.digest = hex64(digest(m));
    r.table.header = {"alpha", "p", "q"};
    for (int k = 1; k <= mc + 1; ++k) r.table.header.push_back("e" + std::to_string(k));
    for (auto h : {"degeneration_page", "e1_exact", "exgen_exact"}) r.table.header.push_back(h);
    auto rows = parallel_map<json>(grid.size(), [&](std::size_t i) {
        Weight w(grid[i]);
        auto all = pages(f, w, mc + 1);
        json page_list = json::array();
        for (const auto& page : all) {
            json dims = json::array();
            for (auto [p, q] : pqs) dims.push_back({{"p", p}, {"q", q}, {"dim", page.dim(p, q)}});
            page_list.push_back({{"r", page.r}, {"dims", dims}});
        }
        json e1 = json::array(), ex = json::array();
        for (auto [p, q] : pqs) {
            PartialExactness pe = e1_partial_exactness(f, w, p, q);
            e1.push_back({{"p", p}, {"q", q}, {"exact", pe.exact}, {"kernel_dim", pe.kernel_dim}, {"image_dim", pe.image_dim}});
            ExgenCheck g = exgen_check(f, w, p, q);
            ex.push_back({{"p", p},
                          {"q", q},
                          {"exact", g.exact},
                          {"source_dim", g.source_dim},
                          {"bc_dim", g.bc_dim},
                          {"mn_dim", g.mn_dim},
                          {"image_dim", g.image_dim},
                          {"kernel_dim", g.kernel_dim}});
        }
        return json{{"alpha", to_string(grid[i])},
                    {"pages", page_list},
                    {"degeneration_page", degeneration_page(f, w)},
                    {"e1_partial_exactness", e1},
                    {"exgen", ex}};
    });
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const json& res = rows[i];
        for (std::size_t j = 0; j < pqs.size(); ++j) {
            std::vector<std::string> row{to_string(grid[i]), std::to_string(pqs[j].first), std::to_string(pqs[j].second)};
            for (const auto& page : res["pages"]) row.push_back(page["dims"][j]["dim"].dump());
            row.push_back(res["degeneration_page"].dump());
            row.push_back(res["e1_partial_exactness"][j]["exact"].dump());
            row.push_back(res["exgen"][j]["exact"].dump());
            r.table.rows.push_back(std::move(row));
        }
        r.results.push_back(res);
    }
    return r;
}

Report cmd_spectrum(const RunConfig& config) {
    Model m = validated_model(config);
    TwistedFamily f(m);
    Report r;
    r.digest = hex64(digest(m));
    r.table.header = {"kind", "degree", "p", "q", "generic_dim", "rational_roots", "residual_factors"};
    std::vector<std::pair<std::string, SpectrumKind>> kinds{{"mn", SpectrumKind::MorseNovikov}};
    if (f.has_complex())
        for (auto k : {std::pair{"dolbeault", SpectrumKind::Dolbeault}, std::pair{"bc", SpectrumKind::BottChern},
                       std::pair{"ddc", SpectrumKind::Ddc}})
            kinds.push_back(k);
    auto reports = parallel_map<SpectrumReport>(kinds.size(), [&](std::size_t i) {
        SpectrumSelector sel{kinds[i].second, std::nullopt, std::nullopt};
        if (config.pq && kinds[i].second != SpectrumKind::MorseNovikov) sel.bidegree = *config.pq;
        if (config.pq && kinds[i].second == SpectrumKind::MorseNovikov) sel.degree = config.pq->first + config.pq->second;
        return exceptional_spectrum(f, sel);
    });
    auto roots_json = [](const std::vector<Rational>& roots) {
        std::vector<std::string> s;
        for (const auto& x : roots) s.push_back(to_string(x));
        return s;
    };
    auto polys_json = [](const std::vector<Poly>& polys) {
        std::vector<std::string> s;
        for (const auto& x : polys) s.push_back(x.to_string("a"));
        return s;
    };
    for (std::size_t i = 0; i < kinds.size(); ++i) {
        json entries = json::array();
        for (const auto& e : reports[i].entries) {
            entries.push_back({{"degree", e.degree},
                               {"p", e.p},
                               {"q", e.q},
                               {"generic_dim", e.generic_dim},
                               {"rational_roots", roots_json(e.rational_roots)},
                               {"residual_factors", polys_json(e.residual_factors)}});
            r.table.rows.push_back({kinds[i].first, std::to_string(e.degree), std::to_string(e.p), std::to_string(e.q),
                                    std::to_string(e.generic_dim), join(roots_json(e.rational_roots), ";"),
                                    join(polys_json(e.residual_factors), ";")});
        }
        r.results.push_back({{"kind", kinds[i].first},
                             {"rational_roots", roots_json(reports[i].rational_roots)},
                             {"residual_factors", polys_json(reports[i].residual_factors)},
                             {"entries", entries}});
    }
    return r;
}

std::vector<Rational> parse_beta(const std::string& text) {
    return config_guard("--beta", [&] {
        std::vector<Rational> beta;
        for (const auto& s : split(text, ',')) beta.push_back(parse_rational(s));
        return beta;
    });
}

std::vector<Rational> rational_grid(const std::vector<Scalar>& grid, const char* what) {
    std::vector<Rational> out;
    for (const auto& a : grid) {
        if (!a.is_rational()) throw ConfigError(std::string(what) + " needs rational weights");
        out.push_back(a.re());
    }
    return out;
}

Report cmd_hopf(const RunConfig& config) {
    HopfData h;
    h.beta = parse_beta(config.beta);
    h.n = static_cast<int>(h.beta.size());
    config_guard("--beta", [&] {
        check(h);
        return 0;
    });
    auto grid = rational_grid(parse_grid(config.alpha), "hopf");
    for (const auto& a : grid)
        if (sgn(a) <= 0) throw ConfigError("hopf weights must be positive");
    Report r;
    std::vector<std::string> beta_s;
    for (const auto& b : h.beta) beta_s.push_back(to_string(b));
    r.digest = hex64(fnv1a("hopf n=" + std::to_string(h.n) + " beta=" + join(beta_s, ",")));
    r.table.header = {"alpha", "p", "q", "dim", "monoid_member", "consistent"};
    auto points = parallel_map<ScanPoint>(grid.size(), [&](std::size_t i) {
        return vanishing_scan(h, {grid[i]}, config.monoid_bound).front();
    });
    for (const auto& pt : points) {
        json witness = pt.membership.witness ? json(*pt.membership.witness) : json(nullptr);
        for (std::size_t p = 0; p < pt.dims.size(); ++p)
            for (std::size_t q = 0; q < pt.dims[p].size(); ++q)
                r.table.rows.push_back({to_string(pt.alpha), std::to_string(p), std::to_string(q),
                                        std::to_string(pt.dims[p][q]), pt.membership.member ? "true" : "false",
                                        pt.consistent ? "true" : "false"});
        r.results.push_back({{"alpha", to_string(pt.alpha)},
                             {"dims", pt.dims},
                             {"all_zero", pt.all_zero},
                             {"monoid_member", pt.membership.member},
                             {"membership_complete", pt.membership.complete},
                             {"witness", witness},
                             {"consistent", pt.consistent}});
    }
    return r;
}

Report cmd_jets(const RunConfig& config) {
    if (config.jet_degree < 1) throw ConfigError("--jet-degree must be at least 1");
    const int d = config.jet_degree;
    auto parts = split(config.subst, ';');
    const int n = static_cast<int>(parts.size());
    std::vector<TruncatedSeries> s;
    for (const auto& p : parts) s.push_back(config_guard("--subst", [&] { return parse_series(p, n, d); }));
    JetAutomorphism t = config_guard("--subst", [&] { return JetAutomorphism(std::move(s)); });
    TruncatedSeries y = config_guard("--rhs", [&] { return parse_series(config.rhs, n, d); });
    auto grid = parse_grid(config.alpha);

    Report r;
    r.digest = hex64(fnv1a("jets subst=" + config.subst + " rhs=" + config.rhs + " D=" + std::to_string(d)));
    Eigenvalues ev = linear_eigenvalues(t);
    SpectrumMonoid monoid = spectrum(t, config.monoid_bound);
    json eigen = json::array();
    for (const auto& e : ev.rational) eigen.push_back({{"value", to_string(e.value)}, {"multiplicity", e.multiplicity}});
    json elements = json::array();
    for (const auto& e : monoid.elements) elements.push_back({{"value", to_string(e.value)}, {"exponents", e.exponents}});

    r.table.header = {"lambda", "status", "singular_degree", "witness", "residual_zero", "monoid_member", "membership_complete", "solution"};
    auto solves = parallel_map<json>(grid.size(), [&](std::size_t i) {
        const Scalar& lambda = grid[i];
        Membership mem = monoid_member(lambda, monoid);
        json out{{"lambda", to_string(lambda)},
                 {"monoid_member", mem.member},
                 {"membership_complete", mem.complete},
                 {"membership_witness", mem.witness ? json(*mem.witness) : json(nullptr)}};
        try {
            TruncatedSeries x = resolvent_solve(t, lambda, y, d);
            TruncatedSeries residual = substitute(x, t) - x * lambda - y.truncated(d);
            out["status"] = "solved";
            out["solution"] = x.to_string();
            out["residual_zero"] = residual.is_zero();
            out["singular_degree"] = nullptr;
            out["witness"] = nullptr;
        } catch (const SingularityError& e) {
            out["status"] = "singular";
            out["solution"] = nullptr;
            out["residual_zero"] = nullptr;
            out["singular_degree"] = e.degree();
            out["witness"] = e.witness() ? json(*e.witness()) : json(nullptr);
        }
        return out;
    });
    for (const auto& sv : solves) {
        auto field = [&](const char* key) {
            const json& v = sv[key];
            if (v.is_null()) return std::string();
            if (v.is_string()) return v.get<std::string>();
            if (v.is_array()) return join_ints(v.get<std::vector<int>>(), ";");
            return v.dump();
        };
        r.table.rows.push_back({field("lambda"), field("status"), field("singular_degree"), field("witness"),
                                field("residual_zero"), field("monoid_member"), field("membership_complete"),
                                "\"" + field("solution") + "\""});
    }
    std::vector<std::string> gens;
    for (const auto& g : monoid.generators) gens.push_back(to_string(g));
    r.results.push_back({{"eigenvalues", eigen},
                         {"generators", gens},
                         {"monoid_bound", monoid.bound},
                         {"monoid", elements},
                         {"solves", solves}});
    return r;
}

}  // namespace

std::vector<Scalar> parse_grid(const std::string& text) {
    if (text.find(':') != std::string::npos) {
        auto parts = split(text, ':');
        if (parts.size() != 3) throw ConfigError("range grid must be a:b:step");
        Rational a, b, step;
        config_guard("grid", [&] {
            a = parse_rational(parts[0]);
            b = parse_rational(parts[1]);
            step = parse_rational(parts[2]);
            return 0;
        });
        if (sgn(step) <= 0) throw ConfigError("grid step must be positive");
        if (b < a) throw ConfigError("grid range end precedes its start");
        std::vector<Scalar> out;
        for (Rational v = a; v <= b; v += step) {
            if (out.size() >= kMaxGrid) throw ConfigError("grid has more than 100000 points");
            out.emplace_back(v);
        }
        return out;
    }
    std::vector<Scalar> out;
    for (const auto& s : split(text, ',')) out.push_back(config_guard("grid", [&] { return parse_scalar(s); }));
    if (out.empty()) throw ConfigError("empty grid");
    return out;
}

std::pair<int, int> parse_pq(const std::string& text) {
    auto parts = split(text, ',');
    if (parts.size() != 2) throw ConfigError("--pq expects p,q");
    try {
        std::size_t u1 = 0, u2 = 0;
        int p = std::stoi(parts[0], &u1), q = std::stoi(parts[1], &u2);
        if (u1 != parts[0].size() || u2 != parts[1].size()) throw std::invalid_argument("pq");
        return {p, q};
    } catch (const std::logic_error&) {
        throw ConfigError("--pq expects two integers");
    }
}

Model load_model(const RunConfig& config) {
    Model m;
    const auto& names = builtin_names();
    if (std::find(names.begin(), names.end(), config.model) != names.end()) {
        m = builtin(config.model);
    } else {
        std::ifstream in(config.model);
        if (!in) throw ConfigError("model '" + config.model + "' is neither a builtin nor a readable file");
        std::stringstream buf;
        buf << in.rdbuf();
        m = parse_model(buf.str());
        if (m.name.empty()) m.name = std::filesystem::path(config.model).stem().string();
    }
    if (config.theta) {
        std::vector<Rational> theta;
        config_guard("--theta", [&] {
            for (const auto& s : split(*config.theta, ',')) theta.push_back(parse_rational(s));
            return 0;
        });
        if (theta.size() != static_cast<std::size_t>(m.dim))
            throw ConfigError("--theta needs " + std::to_string(m.dim) + " coefficients");
        m = with_theta(std::move(m), std::move(theta));
        // omega is tied to the shipped Lee form; a replaced one only needs d(theta) = 0.
        m.lck = false;
    }
    return m;
}

std::string run(const RunConfig& config) {
    if (config.format != "json" && config.format != "csv") throw ConfigError("--format must be json or csv");
    if (config.monoid_bound < 0) throw ConfigError("--monoid-bound must be nonnegative");
    Report report;
    if (config.command == "mn")
        report = cmd_mn(config);
    else if (config.command == "dolbeault")
        report = cmd_dolbeault(config);
    else if (config.command == "bc")
        report = cmd_bc(config);
    else if (config.command == "frolicher")
        report = cmd_frolicher(config);
    else if (config.command == "spectrum")
        report = cmd_spectrum(config);
    else if (config.command == "hopf")
        report = cmd_hopf(config);
    else if (config.command == "jets")
        report = cmd_jets(config);
    else
        throw ConfigError("unknown command '" + config.command + "'");

    if (config.format == "csv") return report.table.str();
    const bool uses_model = config.command != "hopf" && config.command != "jets";
    json resolved{{"command", config.command},
                  {"alpha", config.alpha},
                  {"grid", config.command == "spectrum" ? json::array() : json(grid_strings(parse_grid(config.alpha)))},
                  {"format", config.format},
                  {"jet_degree", config.jet_degree},
                  {"monoid_bound", config.monoid_bound},
                  {"pq", config.pq ? json{config.pq->first, config.pq->second} : json(nullptr)}};
    if (uses_model) {
        resolved["model"] = config.model;
        resolved["theta"] = config.theta ? json(*config.theta) : json(nullptr);
    }
    if (config.command == "hopf") resolved["beta"] = config.beta;
    if (config.command == "jets") {
        resolved["subst"] = config.subst;
        resolved["rhs"] = config.rhs;
    }
    json doc{{"config", resolved}, {"model_digest", report.digest}, {"results", report.results}};
    return doc.dump(2) + "\n";
}

int exit_code(const std::exception& e) {
    if (dynamic_cast<const ConfigError*>(&e)) return 2;
    if (dynamic_cast<const ParseError*>(&e)) return 3;
    if (dynamic_cast<const ModelError*>(&e)) return 4;
    if (dynamic_cast<const UnsupportedError*>(&e)) return 5;
    if (dynamic_cast<const SingularityError*>(&e)) return 6;
    if (dynamic_cast<const PreconditionError*>(&e) || dynamic_cast<const DimensionError*>(&e)) return 7;
    return 1;
}

std::string error_record(const std::exception& e) {
    static const char* kinds[] = {"ok", "error", "config", "parse", "validation", "unsupported", "singular", "internal"};
    int code = exit_code(e);
    json rec{{"error", {{"code", code}, {"kind", kinds[code]}, {"message", e.what()}}}};
    return rec.dump();
}

unsigned thread_count() {
    unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    const char* env = std::getenv("TWISTCOH_THREADS");
    if (!env || !*env) return hw;
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (*end != '\0' || v < 1) return 1;
    return static_cast<unsigned>(std::min<long>(v, 1024));
}

}  // namespace twistcoh::cli
