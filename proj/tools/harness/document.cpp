#include "harness/document.hpp"

#include "starforge/deform.hpp"
#include "starforge/errors.hpp"

#include <fstream>
#include <limits>
#include <sstream>

namespace starforge::harness {

namespace {

std::string at(const std::string& base, const std::string& key) { return base + "/" + key; }
std::string at(const std::string& base, size_t k) { return base + "/" + std::to_string(k); }

const json& field(const json& j, const std::string& key, const std::string& where) {
    if (!j.is_object()) throw ParseError(where, "expected an object");
    auto it = j.find(key);
    if (it == j.end()) throw ParseError(at(where, key), "missing field");
    return *it;
}

int int_at(const json& j, const std::string& where, int lo = std::numeric_limits<int>::min()) {
    if (!j.is_number_integer()) throw ParseError(where, "expected an integer");
    const auto v = j.get<long long>();
    if (v < lo || v > std::numeric_limits<int>::max()) throw ParseError(where, "integer out of range");
    return static_cast<int>(v);
}

std::vector<int> ints_at(const json& j, const std::string& where, int lo) {
    if (!j.is_array()) throw ParseError(where, "expected an array of integers");
    std::vector<int> out;
    for (size_t k = 0; k < j.size(); ++k) out.push_back(int_at(j[k], at(where, k), lo));
    return out;
}

Vec scalars_at(const json& j, const std::string& where) {
    if (!j.is_array()) throw ParseError(where, "expected an array of scalars");
    Vec out;
    for (size_t k = 0; k < j.size(); ++k) out.push_back(parse_scalar_at(j[k], at(where, k)));
    return out;
}

json emit_scalars(const Vec& v) {
    json a = json::array();
    for (const auto& s : v) a.push_back(emit_scalar(s));
    return a;
}

void check_version(const json& j, const std::string& where) {
    const int v = int_at(field(j, "version", where), at(where, "version"));
    if (v != format_version) throw ParseError(at(where, "version"), "unsupported version " + std::to_string(v));
}

json emit_base(const BaseFixture& b) {
    json j{{"fixture", b.fixture}};
    if (b.fixture == "pair") j["p"] = b.p;
    if (b.fixture == "initial") j["n"] = b.n;
    if (b.fixture == "lines") j["c"] = emit_scalars(b.c);
    if (b.fixture == "branch") {
        json phi = json::array();
        for (const auto& s : b.phi) phi.push_back(emit_scalars(s.coeffs()));
        j["phi"] = phi;
    }
    return j;
}

BaseFixture parse_base(const json& j, const std::string& where) {
    BaseFixture b;
    const json& kind = field(j, "fixture", where);
    if (!kind.is_string()) throw ParseError(at(where, "fixture"), "expected a string");
    b.fixture = kind.get<std::string>();
    if (b.fixture == "pair") {
        b.p = int_at(field(j, "p", where), at(where, "p"), 1);
    } else if (b.fixture == "initial") {
        b.n = int_at(field(j, "n", where), at(where, "n"), 2);
    } else if (b.fixture == "lines") {
        b.c = scalars_at(field(j, "c", where), at(where, "c"));
        if (b.c.size() < 2) throw ParseError(at(where, "c"), "need at least two slopes");
    } else if (b.fixture == "branch") {
        const json& phi = field(j, "phi", where);
        if (!phi.is_array() || phi.size() < 2) throw ParseError(at(where, "phi"), "need at least two branches");
        for (size_t k = 0; k < phi.size(); ++k) {
            Vec c = scalars_at(phi[k], at(at(where, "phi"), k));
            if (c.empty()) throw ParseError(at(at(where, "phi"), k), "empty branch");
            b.phi.emplace_back(std::move(c));
        }
    } else {
        throw ParseError(at(where, "fixture"), "unknown fixture '" + b.fixture + "'");
    }
    return b;
}

std::string line_column(const std::string& text, size_t byte) {
    size_t line = 1, col = 1;
    for (size_t k = 0; k + 1 < byte && k < text.size(); ++k) {
        if (text[k] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

}  // namespace

json parse_json_text(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        std::string msg = e.what();
        if (auto pos = msg.find("syntax error"); pos != std::string::npos) msg = msg.substr(pos);
        throw ParseError(line_column(text, e.byte), msg);
    }
}

json load_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(path.string(), "cannot read file");
    std::stringstream ss;
    ss << in.rdbuf();
    try {
        return parse_json_text(ss.str());
    } catch (const ParseError& e) {
        throw ParseError(path.string() + ", " + e.where(), std::string(e.what()).substr(e.where().size() + 2));
    }
}

json emit_scalar(const Scalar& s) { return to_string(s); }

Scalar parse_scalar_at(const json& j, const std::string& where) {
    if (j.is_number_integer()) return Scalar(j.get<long>());
    if (!j.is_string()) throw ParseError(where, "scalars are \"p/q\" strings or integers");
    try {
        return parse_scalar(j.get<std::string>());
    } catch (const Error& e) {
        throw ParseError(where, e.what());
    }
}

std::string document_kind(const json& j) {
    const json& k = field(j, "kind", "");
    if (!k.is_string()) throw ParseError("/kind", "expected a string");
    return k.get<std::string>();
}

json emit_document(const Presentation& p, const json& metadata) {
    json j;
    j["kind"] = p.is_star() ? "star" : "deformation";
    j["version"] = format_version;
    if (!p.is_star()) j["xdeg"] = p.xdeg();
    j["levels"] = p.q();
    json rows = json::array();
    for (const auto& r : p.basis().rows()) rows.push_back(emit_scalars(r));
    j["basis"] = rows;
    if (!metadata.empty()) j["metadata"] = metadata;
    return j;
}

Document parse_document(const json& j) {
    const std::string kind = document_kind(j);
    if (kind != "star" && kind != "deformation")
        throw ParseError("/kind", "expected star or deformation, got '" + kind + "'");
    check_version(j, "");
    int xdeg = 1;
    if (kind == "deformation") {
        xdeg = int_at(field(j, "xdeg", ""), "/xdeg", 2);
    } else if (j.contains("xdeg") && int_at(j["xdeg"], "/xdeg") != 1) {
        throw ParseError("/xdeg", "a star has x-degree bound 1");
    }
    const std::vector<int> levels = ints_at(field(j, "levels", ""), "/levels", 1);
    if (levels.empty()) throw ParseError("/levels", "no components");
    const Frame frame(xdeg, levels);
    const json& basis = field(j, "basis", "");
    if (!basis.is_array()) throw ParseError("/basis", "expected an array of rows");
    std::vector<Vec> rows;
    for (size_t k = 0; k < basis.size(); ++k) {
        Vec r = scalars_at(basis[k], at("/basis", k));
        if (static_cast<int>(r.size()) != frame.dim())
            throw ParseError(at("/basis", k), "row has " + std::to_string(r.size()) + " entries, the frame has " +
                                                  std::to_string(frame.dim()));
        rows.push_back(std::move(r));
    }
    Document d;
    d.presentation = Presentation::from_vectors(frame, rows);
    if (j.contains("metadata")) d.metadata = j["metadata"];
    return d;
}

json emit_bipoly(const BiPoly& b) {
    if (b.xdeg() == 1) return emit_scalars(b.coeffs());
    json rows = json::array();
    for (int a = 0; a < b.xdeg(); ++a) {
        Vec row(b.trunc());
        for (int k = 0; k < b.trunc(); ++k) row[k] = b.at(a, k);
        rows.push_back(emit_scalars(row));
    }
    return rows;
}

BiPoly parse_bipoly(const json& j, int xdeg, const std::string& where) {
    if (!j.is_array() || j.empty()) throw ParseError(where, "expected a non-empty coefficient array");
    std::vector<Vec> rows;
    if (j.front().is_array()) {
        for (size_t a = 0; a < j.size(); ++a) rows.push_back(scalars_at(j[a], at(where, a)));
    } else {
        rows.push_back(scalars_at(j, where));
    }
    if (static_cast<int>(rows.size()) > xdeg)
        throw ParseError(where, "has " + std::to_string(rows.size()) + " x-rows but the x-degree bound is " +
                                    std::to_string(xdeg));
    const size_t trunc = rows.front().size();
    if (trunc == 0) throw ParseError(where, "empty coefficient row");
    for (size_t a = 0; a < rows.size(); ++a)
        if (rows[a].size() != trunc) throw ParseError(at(where, a), "x-rows must have equal length");
    BiPoly b(xdeg, static_cast<int>(trunc));
    for (size_t a = 0; a < rows.size(); ++a)
        for (size_t k = 0; k < trunc; ++k) b.at(static_cast<int>(a), static_cast<int>(k)) = rows[a][k];
    return b;
}

json emit_germ(const MultiGerm& g) {
    json a = json::array();
    for (int i = 0; i < g.size(); ++i) a.push_back(emit_bipoly(g[i]));
    return a;
}

json emit_step(const ExtensionStep& s) {
    json beta = json::array();
    for (const auto& b : s.beta) beta.push_back(emit_bipoly(b));
    return json{{"p", s.p_new}, {"beta", beta}};
}

ExtensionStep parse_step(const json& j, int xdeg, const std::string& where) {
    ExtensionStep s;
    s.p_new = ints_at(field(j, "p", where), at(where, "p"), 1);
    const json& beta = field(j, "beta", where);
    if (!beta.is_array() || beta.size() != s.p_new.size())
        throw ParseError(at(where, "beta"), "expected one unit per entry of p");
    for (size_t k = 0; k < beta.size(); ++k) s.beta.push_back(parse_bipoly(beta[k], xdeg, at(at(where, "beta"), k)));
    return s;
}

json emit_script(const BuilderScript& s) {
    json j;
    j["kind"] = "builder-script";
    j["version"] = format_version;
    if (s.seed) j["seed"] = *s.seed;
    j["base"] = emit_base(s.base);
    if (s.xdeg != 1) j["xdeg"] = s.xdeg;
    if (s.random) {
        j["random"] = json{{"n_max", s.random->n_max}, {"p_max", s.random->p_max}};
    } else {
        json steps = json::array();
        for (const auto& st : s.steps) steps.push_back(emit_step(st));
        j["steps"] = steps;
    }
    return j;
}

BuilderScript parse_script(const json& j) {
    const std::string kind = document_kind(j);
    if (kind != "builder-script") throw ParseError("/kind", "expected builder-script, got '" + kind + "'");
    check_version(j, "");
    BuilderScript s;
    if (j.contains("seed")) {
        if (!j["seed"].is_number_unsigned()) throw ParseError("/seed", "expected a non-negative integer");
        s.seed = j["seed"].get<std::uint64_t>();
    }
    if (j.contains("xdeg")) s.xdeg = int_at(j["xdeg"], "/xdeg", 1);
    s.base = parse_base(field(j, "base", ""), "/base");
    const bool has_steps = j.contains("steps"), has_random = j.contains("random");
    if (has_steps == has_random) throw ParseError("", "a script has exactly one of 'steps' and 'random'");
    if (has_random) {
        if (s.base.fixture != "pair") throw ParseError("/base", "random towers start from a pair fixture");
        const json& r = j["random"];
        RandomSpec spec;
        spec.n_max = int_at(field(r, "n_max", "/random"), "/random/n_max", 2);
        spec.p_max = int_at(field(r, "p_max", "/random"), "/random/p_max", 1);
        s.random = spec;
    } else {
        const json& steps = j["steps"];
        if (!steps.is_array()) throw ParseError("/steps", "expected an array");
        for (size_t k = 0; k < steps.size(); ++k) s.steps.push_back(parse_step(steps[k], s.xdeg, at("/steps", k)));
    }
    return s;
}

Presentation base_presentation(const BaseFixture& b, int xdeg) {
    Presentation star;
    if (b.fixture == "pair") {
        star = make_congruence_pair_star(b.p);
    } else if (b.fixture == "lines") {
        star = make_lines_star(b.c);
    } else if (b.fixture == "initial") {
        star = make_initial_star(b.n);
    } else if (b.fixture == "branch") {
        star = make_branch_star(b.phi);
    } else {
        fail(ErrorKind::Usage, "unknown fixture '" + b.fixture + "'");
    }
    return xdeg == 1 ? star : make_product_deformation(star, xdeg);
}

BuildResult run_script(const BuilderScript& s, std::optional<std::uint64_t> seed_override) {
    BuildResult r;
    r.resolved = s;
    if (seed_override) r.resolved.seed = seed_override;
    if (s.random) {
        const std::uint64_t seed = r.resolved.seed.value_or(0);
        r.resolved.seed = seed;
        r.resolved.random.reset();
        const Tower t = random_tower(seed, s.random->n_max, s.random->p_max);
        r.resolved.base = BaseFixture{};
        r.resolved.base.p = t.base_p;
        for (const auto& st : t.steps) {
            ExtensionStep lifted{st.p_new, {}};
            for (const auto& b : st.beta) lifted.beta.push_back(b.resized_x(s.xdeg));
            r.resolved.steps.push_back(std::move(lifted));
        }
    }
    Presentation cur = base_presentation(r.resolved.base, r.resolved.xdeg);
    for (const auto& st : r.resolved.steps) {
        if (cur.is_star()) {
            cur = extend_star(cur, st);
        } else {
            DeformExtension e = extend_deformation(cur, st);
            if (!e.completion)
                fail(ErrorKind::Contradiction, "the quotient has no monomial basis, so the step has no free completion");
            cur = std::move(*e.completion);
        }
    }
    r.result = std::move(cur);
    return r;
}

}  // namespace starforge::harness
