#include "twistcoh/model.hpp"

#include "twistcoh/errors.hpp"
#include "twistcoh/linalg.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <regex>
#include <sstream>
#include <tuple>

namespace twistcoh {

namespace {

Matrix standard_j(int n, const std::vector<std::pair<int, int>>& pairs) {
    // J e_a = e_b and J e_b = -e_a for each (a, b).
    Matrix j(static_cast<std::size_t>(n), static_cast<std::size_t>(n));
    for (auto [a, b] : pairs) {
        j(static_cast<std::size_t>(b), static_cast<std::size_t>(a)) = 1;
        j(static_cast<std::size_t>(a), static_cast<std::size_t>(b)) = -1;
    }
    return j;
}

void check_index(int idx, int n, const char* what) {
    if (idx < 0 || idx >= n)
        throw DimensionError(std::string(what) + " index " + std::to_string(idx + 1) + " out of range 1.." +
                             std::to_string(n));
}

}  // namespace

Model canonical(Model m) {
    const int n = m.dim;
    if (n < 0 || n > 30) throw DimensionError("model dimension out of supported range");
    if (m.j.rows() != static_cast<std::size_t>(n) || m.j.cols() != static_cast<std::size_t>(n))
        throw DimensionError("J must be n x n");
    if (m.theta.empty()) m.theta.assign(static_cast<std::size_t>(n), Rational(0));
    if (m.theta.size() != static_cast<std::size_t>(n)) throw DimensionError("theta must have n coefficients");

    std::map<std::tuple<int, int, int>, Rational> st;
    for (auto t : m.structure) {
        check_index(t.i, n, "structure");
        check_index(t.j, n, "structure");
        check_index(t.k, n, "structure");
        if (t.i == t.j) throw DimensionError("structure term e_i ^ e_i vanishes identically");
        if (t.i > t.j) {
            std::swap(t.i, t.j);
            t.coeff = -t.coeff;
        }
        st[{t.k, t.i, t.j}] += t.coeff;
    }
    m.structure.clear();
    for (const auto& [key, c] : st)
        if (sgn(c) != 0) m.structure.push_back({std::get<1>(key), std::get<2>(key), std::get<0>(key), c});

    std::map<std::pair<int, int>, Rational> om;
    for (auto t : m.omega) {
        check_index(t.i, n, "omega");
        check_index(t.j, n, "omega");
        if (t.i == t.j) throw DimensionError("omega term e_i ^ e_i vanishes identically");
        if (t.i > t.j) {
            std::swap(t.i, t.j);
            t.coeff = -t.coeff;
        }
        om[{t.i, t.j}] += t.coeff;
    }
    m.omega.clear();
    for (const auto& [key, c] : om)
        if (sgn(c) != 0) m.omega.push_back({key.first, key.second, c});
    return m;
}

Form generator_differential(const Model& m, int k) {
    Form f;
    for (const auto& t : m.structure)
        if (t.k == k) accumulate(f, (Mask{1} << t.i) | (Mask{1} << t.j), Scalar(t.coeff));
    return f;
}

Form exterior_derivative(const Model& m, const Form& f) {
    std::vector<Form> gens;
    for (int k = 0; k < m.dim; ++k) gens.push_back(generator_differential(m, k));
    Form out;
    for (const auto& [mask, c] : f) {
        int position = 0;
        for (Mask rest = mask; rest; rest &= rest - 1, ++position) {
            int gen = std::countr_zero(rest);
            Mask prefix = mask & ((Mask{1} << gen) - 1);
            Mask suffix = mask & ~((Mask{1} << (gen + 1)) - 1);
            Form term = wedge(Form{{prefix, Scalar(1)}}, wedge(gens[static_cast<std::size_t>(gen)], Form{{suffix, Scalar(1)}}));
            Scalar factor = (position % 2) ? -c : c;
            for (const auto& [tm, tc] : term) accumulate(out, tm, tc * factor);
        }
    }
    return out;
}

Form theta_form(const Model& m) {
    Form f;
    for (int i = 0; i < m.dim; ++i) accumulate(f, Mask{1} << i, Scalar(m.theta[static_cast<std::size_t>(i)]));
    return f;
}

Form omega_form(const Model& m) {
    Form f;
    for (const auto& t : m.omega) accumulate(f, (Mask{1} << t.i) | (Mask{1} << t.j), Scalar(t.coeff));
    return f;
}

Matrix differential_matrix(const Model& m, int k) {
    DegreeBasis from(m.dim, k), to(m.dim, k + 1);
    Matrix out(to.size(), from.size());
    for (std::size_t c = 0; c < from.size(); ++c) {
        Form image = exterior_derivative(m, Form{{from.masks()[c], Scalar(1)}});
        for (const auto& [mask, v] : image) out(to.index(mask), c) = v;
    }
    return out;
}

Matrix left_wedge_matrix(const Form& f, int n, int k, int form_degree) {
    DegreeBasis from(n, k), to(n, k + form_degree);
    Matrix out(to.size(), from.size());
    for (std::size_t c = 0; c < from.size(); ++c) {
        Form image = wedge(f, Form{{from.masks()[c], Scalar(1)}});
        for (const auto& [mask, v] : image) out(to.index(mask), c) = v;
    }
    return out;
}

Matrix holomorphic_coframe(const Matrix& j) {
    Matrix shifted = j;
    for (std::size_t k = 0; k < j.rows(); ++k) shifted(k, k) += Scalar::i();
    return kernel_basis(shifted).columns();
}

bool ValidationReport::all_passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const ValidationCheck& c) { return !c.enforced || c.passed; });
}

const ValidationCheck& ValidationReport::check(std::string_view constraint) const {
    for (const auto& c : checks)
        if (c.constraint == constraint) return c;
    throw PreconditionError("no validation check named " + std::string(constraint));
}

ValidationReport validate(const Model& m) {
    ValidationReport report;
    const auto n = static_cast<std::size_t>(m.dim);

    ValidationCheck jsq;
    jsq.constraint = std::string(kCheckJSquared);
    Matrix j2 = m.j * m.j + Matrix::identity(n);
    for (std::size_t c = 0; c < n; ++c)
        for (std::size_t r = 0; r < n; ++r)
            if (!j2(r, c).is_zero()) {
                jsq.passed = false;
                jsq.witnesses.push_back("e" + std::to_string(c + 1));
                break;
            }
    report.checks.push_back(jsq);

    ValidationCheck dsq;
    dsq.constraint = std::string(kCheckDSquared);
    for (int k = 0; k < m.dim; ++k)
        if (!exterior_derivative(m, generator_differential(m, k)).empty()) {
            dsq.passed = false;
            dsq.witnesses.push_back("e" + std::to_string(k + 1));
        }
    report.checks.push_back(dsq);

    const Form theta = theta_form(m);
    ValidationCheck closed;
    closed.constraint = std::string(kCheckThetaClosed);
    Form dtheta = exterior_derivative(m, theta);
    if (!dtheta.empty()) {
        closed.passed = false;
        for (const auto& [mask, c] : dtheta) closed.witnesses.push_back(monomial_label(mask));
    }
    report.checks.push_back(closed);

    ValidationCheck lck;
    lck.constraint = std::string(kCheckLck);
    lck.enforced = m.lck;
    const Form omega = omega_form(m);
    Form defect = add(exterior_derivative(m, omega), scaled(wedge(theta, omega), Scalar(-1)));
    if (!defect.empty()) {
        lck.passed = false;
        for (const auto& [mask, c] : defect) lck.witnesses.push_back(monomial_label(mask));
    }
    report.checks.push_back(lck);

    ValidationCheck integ;
    integ.constraint = std::string(kCheckIntegrable);
    if (!jsq.passed || m.dim % 2 != 0) {
        integ.passed = false;
        integ.witnesses.push_back(m.dim % 2 ? "odd dimension" : "J^2 != -1");
    } else {
        // The (0,2)-part of a 2-form beta vanishes iff beta ^ phi_1 ^ ... ^ phi_m = 0.
        Matrix coframe = holomorphic_coframe(m.j);
        std::vector<Form> phis;
        Form top{{0, Scalar(1)}};
        for (std::size_t c = 0; c < coframe.cols(); ++c) {
            Form phi;
            for (std::size_t r = 0; r < n; ++r) accumulate(phi, Mask{1} << r, coframe(r, c));
            phis.push_back(phi);
            top = wedge(top, phi);
        }
        for (std::size_t a = 0; a < phis.size(); ++a)
            if (!wedge(exterior_derivative(m, phis[a]), top).empty()) {
                integ.passed = false;
                integ.witnesses.push_back("phi" + std::to_string(a + 1));
            }
    }
    report.checks.push_back(integ);
    return report;
}

std::vector<std::string> builtin_names() { return {"hopf_surface", "inoue_sm", "kodaira_thurston", "torus2"}; }

Model inoue_sm_model(const Rational& rotation) {
    // Left-invariant coframe of the solvable group behind S_M: the half-plane
    // factor gives e1 = dx/y, e4 = dy/y; the C factor scales by y^{-1/2} and
    // rotates with the given constant.
    Model m;
    m.name = "inoue_sm";
    m.dim = 4;
    const Rational half(1, 2);
    m.structure = {
        {0, 3, 0, Rational(1)},
        {1, 3, 1, Rational(-half)},
        {2, 3, 1, Rational(-rotation)},
        {1, 3, 2, rotation},
        {2, 3, 2, Rational(-half)},
    };
    m.j = standard_j(4, {{0, 3}, {1, 2}});
    m.theta = {Rational(0), Rational(0), Rational(0), Rational(1)};
    m.omega = {{0, 3, Rational(1)}, {1, 2, Rational(1)}};
    m.lck = true;
    return canonical(std::move(m));
}

Model builtin(std::string_view name) {
    Model m;
    m.name = std::string(name);
    m.dim = 4;
    m.j = standard_j(4, {{0, 1}, {2, 3}});
    m.omega = {{0, 1, Rational(1)}, {2, 3, Rational(1)}};
    m.theta.assign(4, Rational(0));
    if (name == "torus2") {
        m.lck = true;
    } else if (name == "hopf_surface") {
        // R + su(2): de2 = e3^e4, de3 = e4^e2, de4 = e2^e3, Lee form -e1.
        m.structure = {{2, 3, 1, Rational(1)}, {3, 1, 2, Rational(1)}, {1, 2, 3, Rational(1)}};
        m.theta[0] = -1;
        m.lck = true;
    } else if (name == "kodaira_thurston") {
        m.structure = {{0, 1, 3, Rational(1)}};
        m.lck = false;
    } else if (name == "inoue_sm") {
        return inoue_sm_model(Rational(1));
    } else {
        throw ModelError("unknown builtin model '" + std::string(name) + "'");
    }
    return canonical(std::move(m));
}

std::string serialize(const Model& m) {
    std::ostringstream os;
    if (!m.name.empty()) os << "name: " << m.name << "\n";
    os << "dim: " << m.dim << "\n";
    os << "lck: " << (m.lck ? "true" : "false") << "\n";
    for (const auto& t : m.structure)
        os << "d: " << t.k + 1 << " <- " << to_string(t.coeff) << " * " << t.i + 1 << " ^ " << t.j + 1 << "\n";
    os << "J:\n";
    for (std::size_t r = 0; r < m.j.rows(); ++r) {
        for (std::size_t c = 0; c < m.j.cols(); ++c) os << (c ? " " : "") << to_string(m.j(r, c));
        os << "\n";
    }
    os << "theta:";
    for (const auto& t : m.theta) os << " " << to_string(t);
    os << "\n";
    for (const auto& t : m.omega) os << "omega: " << t.i + 1 << " ^ " << t.j + 1 << " : " << to_string(t.coeff) << "\n";
    return os.str();
}

namespace {

std::string trim(std::string_view s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_ws(const std::string& s) {
    std::istringstream is(s);
    std::vector<std::string> out;
    for (std::string tok; is >> tok;) out.push_back(tok);
    return out;
}

Rational rational_at(const std::string& tok, int line) {
    try {
        return parse_rational(tok);
    } catch (const ParseError& e) {
        throw ParseError(e.what(), line);
    }
}

}  // namespace

Model parse_model(std::string_view text) {
    static const std::regex d_re(R"(^(\d+)\s*<-\s*(\S+)\s*\*\s*(\d+)\s*\^\s*(\d+)$)");
    static const std::regex omega_re(R"(^(\d+)\s*\^\s*(\d+)\s*:\s*(\S+)$)");

    Model m;
    bool have_dim = false, have_j = false;
    struct Pending {
        int line;
        int a, b, c;
        Rational coeff;
    };
    std::vector<Pending> d_lines, omega_lines;
    std::vector<std::pair<int, std::vector<std::string>>> j_rows;
    std::vector<std::string> theta_tokens;
    int theta_line = 0;
    bool in_j = false;

    std::istringstream is{std::string(text)};
    std::string raw;
    int line_no = 0;
    while (std::getline(is, raw)) {
        ++line_no;
        auto hash = raw.find('#');
        std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
        if (line.empty()) continue;
        auto colon = line.find(':');
        std::string key = colon == std::string::npos ? "" : trim(line.substr(0, colon));
        static const std::vector<std::string> keys{"name", "dim", "lck", "d", "J", "theta", "omega"};
        bool is_key = std::find(keys.begin(), keys.end(), key) != keys.end();
        if (in_j && !is_key) {
            j_rows.emplace_back(line_no, split_ws(line));
            continue;
        }
        in_j = false;
        if (!is_key) throw ParseError("unrecognised line '" + line + "'", line_no);
        std::string value = trim(line.substr(colon + 1));
        if (key == "name") {
            m.name = value;
        } else if (key == "dim") {
            try {
                std::size_t used = 0;
                m.dim = std::stoi(value, &used);
                if (used != value.size() || m.dim <= 0) throw std::invalid_argument("dim");
            } catch (const std::exception&) {
                throw ParseError("malformed dim '" + value + "'", line_no);
            }
            have_dim = true;
        } else if (key == "lck") {
            if (value != "true" && value != "false") throw ParseError("lck must be true or false", line_no);
            m.lck = value == "true";
        } else if (key == "d") {
            std::smatch match;
            if (!std::regex_match(value, match, d_re))
                throw ParseError("malformed structure line, expected 'k <- c * i ^ j'", line_no);
            d_lines.push_back({line_no, std::stoi(match[1]), std::stoi(match[3]), std::stoi(match[4]),
                               rational_at(match[2], line_no)});
        } else if (key == "J") {
            if (have_j) throw ParseError("duplicate field J", line_no);
            have_j = true;
            in_j = true;
            if (!value.empty()) j_rows.emplace_back(line_no, split_ws(value));
        } else if (key == "theta") {
            theta_tokens = split_ws(value);
            theta_line = line_no;
        } else if (key == "omega") {
            std::smatch match;
            if (!std::regex_match(value, match, omega_re))
                throw ParseError("malformed omega line, expected 'i ^ j : c'", line_no);
            omega_lines.push_back({line_no, std::stoi(match[1]), std::stoi(match[2]), 0, rational_at(match[3], line_no)});
        }
    }
    if (!have_dim) throw ParseError("missing field dim");
    if (!have_j) throw ParseError("missing field J");
    const int n = m.dim;
    auto in_range = [n](int idx) { return idx >= 1 && idx <= n; };

    if (j_rows.size() != static_cast<std::size_t>(n))
        throw ParseError("J needs " + std::to_string(n) + " rows, found " + std::to_string(j_rows.size()));
    m.j = Matrix(static_cast<std::size_t>(n), static_cast<std::size_t>(n));
    for (std::size_t r = 0; r < j_rows.size(); ++r) {
        const auto& [ln, toks] = j_rows[r];
        if (toks.size() != static_cast<std::size_t>(n))
            throw ParseError("J row needs " + std::to_string(n) + " entries", ln);
        for (std::size_t c = 0; c < toks.size(); ++c) m.j(r, c) = Scalar(rational_at(toks[c], ln));
    }

    if (!theta_tokens.empty()) {
        if (theta_tokens.size() != static_cast<std::size_t>(n))
            throw ParseError("theta needs " + std::to_string(n) + " coefficients", theta_line);
        for (const auto& t : theta_tokens) m.theta.push_back(rational_at(t, theta_line));
    }

    std::map<std::tuple<int, int, int>, int> seen;
    for (const auto& p : d_lines) {
        if (!in_range(p.a) || !in_range(p.b) || !in_range(p.c))
            throw ParseError("structure index out of range 1.." + std::to_string(n), p.line);
        if (p.b == p.c) throw ParseError("structure term with repeated index", p.line);
        auto key = std::make_tuple(p.a, std::min(p.b, p.c), std::max(p.b, p.c));
        if (auto [it, inserted] = seen.emplace(key, p.line); !inserted)
            throw ParseError("duplicate structure triple (also on line " + std::to_string(it->second) + ")", p.line);
        m.structure.push_back({p.b - 1, p.c - 1, p.a - 1, p.coeff});
    }
    std::map<std::pair<int, int>, int> seen_omega;
    for (const auto& p : omega_lines) {
        if (!in_range(p.a) || !in_range(p.b)) throw ParseError("omega index out of range 1.." + std::to_string(n), p.line);
        if (p.a == p.b) throw ParseError("omega term with repeated index", p.line);
        auto key = std::make_pair(std::min(p.a, p.b), std::max(p.a, p.b));
        if (auto [it, inserted] = seen_omega.emplace(key, p.line); !inserted)
            throw ParseError("duplicate omega term (also on line " + std::to_string(it->second) + ")", p.line);
        m.omega.push_back({p.a - 1, p.b - 1, p.coeff});
    }
    return canonical(std::move(m));
}

Model with_theta(Model m, std::vector<Rational> theta) {
    if (theta.size() != static_cast<std::size_t>(m.dim)) throw DimensionError("theta must have n coefficients");
    m.theta = std::move(theta);
    return m;
}

Model change_coframe(const Model& m, const Matrix& g) {
    const auto n = static_cast<std::size_t>(m.dim);
    if (g.rows() != n || g.cols() != n || !g.is_rational()) throw DimensionError("coframe change must be a rational n x n matrix");
    Matrix ginv = inverse(g);
    Matrix to_new2 = exterior_power(ginv, 2);
    DegreeBasis deg2(m.dim, 2);

    Model out;
    out.name = m.name;
    out.dim = m.dim;
    out.lck = m.lck;
    out.j = ginv * m.j * g;
    for (std::size_t a = 0; a < n; ++a) {
        Form df;
        for (std::size_t i = 0; i < n; ++i)
            if (!g(i, a).is_zero()) df = add(df, scaled(generator_differential(m, static_cast<int>(i)), g(i, a)));
        Vector coords = to_new2 * deg2.to_vector(df);
        for (std::size_t idx = 0; idx < coords.size(); ++idx) {
            if (coords[idx].is_zero()) continue;
            Mask mask = deg2.masks()[idx];
            int lo = std::countr_zero(mask);
            int hi = 31 - std::countl_zero(mask);
            out.structure.push_back({lo, hi, static_cast<int>(a), coords[idx].re()});
        }
    }
    Vector theta(n);
    for (std::size_t i = 0; i < n; ++i) theta[i] = Scalar(m.theta[i]);
    for (const auto& t : ginv * theta) out.theta.push_back(t.re());
    Vector omega = to_new2 * deg2.to_vector(omega_form(m));
    for (std::size_t idx = 0; idx < omega.size(); ++idx) {
        if (omega[idx].is_zero()) continue;
        Mask mask = deg2.masks()[idx];
        out.omega.push_back({std::countr_zero(mask), 31 - std::countl_zero(mask), omega[idx].re()});
    }
    return canonical(std::move(out));
}

std::uint64_t digest(const Model& m) {
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : serialize(m)) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

}  // namespace twistcoh
