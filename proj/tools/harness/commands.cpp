#include "harness/commands.hpp"

#include "harness/suites.hpp"
#include "starforge/compare.hpp"
#include "starforge/deform.hpp"
#include "starforge/errors.hpp"

#include <chrono>
#include <fstream>
#include <sstream>

namespace starforge::harness {

namespace {

using Clock = std::chrono::steady_clock;

json scalars(const std::vector<Scalar>& v) {
    json a = json::array();
    for (const auto& s : v) a.push_back(emit_scalar(s));
    return a;
}

std::string tuple_text(const std::vector<int>& v) {
    std::string s = "(";
    for (size_t k = 0; k < v.size(); ++k) s += (k ? "," : "") + std::to_string(v[k]);
    return s + ")";
}

std::string tuple_text(const std::vector<Scalar>& v) {
    std::string s = "(";
    for (size_t k = 0; k < v.size(); ++k) s += (k ? ", " : "") + to_string(v[k]);
    return s + ")";
}

std::string matrix_text(const Spectrum& m) {
    std::string s = "[";
    for (size_t i = 0; i < m.size(); ++i) {
        s += i ? ",[" : "[";
        for (size_t j = 0; j < m[i].size(); ++j) s += (j ? "," : "") + std::to_string(m[i][j]);
        s += "]";
    }
    return s + "]";
}

json check_json(const CheckEntry& c) {
    json j{{"name", c.name}, {"ok", c.ok}};
    if (!c.ok && !c.witness.empty()) j["witness"] = c.witness;
    return j;
}

void add(std::vector<CheckEntry>& checks, std::string name, bool ok, std::string witness = {}) {
    checks.push_back({std::move(name), ok, ok ? std::string() : std::move(witness)});
}

// Runs body, recording a failed check named `name` if it throws.
template <class F>
bool guarded(std::vector<CheckEntry>& checks, const std::string& name, F&& body) {
    try {
        body();
        return true;
    } catch (const Error& e) {
        add(checks, name, false, std::string(kind_name(e.kind())) + ": " + e.what());
        return false;
    }
}

std::string error_kind_text(const Error& e) { return kind_name(e.kind()); }

int exit_for(const Error& e) { return e.kind() == ErrorKind::Usage ? 2 : 1; }

json error_json(const std::string& kind, const std::string& message, const std::string& where = {}) {
    json j{{"kind", kind}, {"message", message}};
    if (!where.empty()) j["where"] = where;
    return j;
}

json top(const std::string& command, const std::vector<std::string>& args, const CommandOptions& o) {
    json j;
    j["command"] = command;
    j["args"] = args;
    if (o.seed) j["seed"] = *o.seed;
    if (o.trials >= 0) j["trials"] = o.trials;
    return j;
}

void finish(Outcome& out, Clock::time_point t0) {
    out.report["exit_code"] = out.exit_code;
    out.report["timing_ms"] = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

// A star, deformation or builder script, as a presentation.
struct Loaded {
    Presentation p;
    json metadata = json::object();
    std::string kind;
};

Loaded load_presentation(const std::string& file, const CommandOptions& o) {
    const json j = load_json_file(file);
    Loaded l;
    l.kind = document_kind(j);
    if (l.kind == "builder-script") {
        const BuildResult b = run_script(parse_script(j), o.seed);
        l.p = b.result;
        l.metadata["provenance"] = emit_script(b.resolved);
        if (b.resolved.seed) l.metadata["seed"] = *b.resolved.seed;
        return l;
    }
    Document d = parse_document(j);
    l.p = std::move(d.presentation);
    l.metadata = std::move(d.metadata);
    return l;
}

void write_file(const std::filesystem::path& path, const json& j) {
    std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path);
    if (!out) fail(ErrorKind::Usage, "cannot write " + path.string());
    out << j.dump(2) << "\n";
}

}  // namespace

json without_timing(json report) {
    report.erase("timing_ms");
    return report;
}

json analyze_presentation(const Presentation& p, std::vector<CheckEntry>& checks) {
    json inv;
    const int n = p.n();
    inv["kind"] = p.is_star() ? "star" : "deformation";
    inv["n"] = n;
    if (!p.is_star()) inv["xdeg"] = p.xdeg();
    inv["levels"] = p.q();
    inv["dim"] = p.dim();

    const ValidationReport v = validate(p);
    for (const auto& c : v.checks) checks.push_back({"validate: " + c.name, c.ok, c.witness});
    if (!v.valid()) {
        inv["skipped"] = "invariants need a valid presentation";
        return inv;
    }

    const Spectrum raw = raw_spectrum(p);
    inv["spectrum"] = raw;
    guarded(checks, "spectrum consistency", [&] { spectrum(p); });
    if (auto bad = ultrametric_violation(raw)) {
        add(checks, "ultrametric law", false,
            "triple (" + std::to_string((*bad)[0] + 1) + "," + std::to_string((*bad)[1] + 1) + "," +
                std::to_string((*bad)[2] + 1) + ")");
    } else {
        add(checks, "ultrametric law", true);
    }

    bool oblate = true;
    if (p.is_star()) {
        guarded(checks, "fiber", [&] {
            const FiberReport f = fiber_algebra(p);
            const int e = embedding_dimension(p);
            inv["fiber"] = json{{"dim", f.dim},
                                {"cotangent_dim", f.cotangent_dim},
                                {"principal", f.principal},
                                {"nilpotency", f.nilpotency},
                                {"oblate", f.oblate}};
            inv["embedding_dimension"] = e;
            inv["oblate"] = f.oblate;
            oblate = f.oblate;
            add(checks, "oblateness equivalence", f.oblate == (e <= 2),
                "fiber verdict " + std::string(f.oblate ? "oblate" : "not oblate") + ", embedding dimension " +
                    std::to_string(e));
        });
    }
    if (!oblate) {
        inv["skipped"] = "lambda, unit constants and sub-star ideals are computed for oblate stars";
        return inv;
    }

    guarded(checks, "lambda", [&] {
        inv["lambda"] = scalars(lambda(p));
        add(checks, "lambda", true);
    });
    guarded(checks, "unit constants", [&] {
        const UnitConstantTable t = unit_constant_table(p);
        json b = json::array();
        for (int i = 0; i < n; ++i) {
            json row = json::array();
            for (int j = 0; j < n; ++j) row.push_back(i == j ? json() : scalars(t.b[i][j]));
            b.push_back(row);
        }
        inv["unit_constants"] = b;
        for (const auto& c : t.checks) checks.push_back({"unit constants: " + c.name, c.ok, c.witness});
    });

    json ideals = json::array();
    const int limit = n <= 6 ? (1 << n) - 1 : n;
    for (int k = 1; k < limit; ++k) {
        std::vector<int> idx;
        if (n <= 6) {
            for (int i = 0; i < n; ++i)
                if (k & (1 << i)) idx.push_back(i);
        } else {
            idx.push_back(k - 1);
        }
        std::vector<int> shown;
        for (int i : idx) shown.push_back(i + 1);
        const std::string name = "sub-star ideal " + tuple_text(shown);
        guarded(checks, name, [&] {
            const SubstarIdeal s = substar_ideal_report(p, idx);
            const Frame hf = p.headroom(1).frame();
            ideals.push_back(json{{"indices", shown}, {"generator", to_string(hf.germ(s.generator))}, {"equal", s.equal}});
            add(checks, name, s.equal,
                "span of u_I B has dim " + std::to_string(s.span.dim()) + ", vanishing ideal dim " +
                    std::to_string(s.vanishing.dim()));
        });
    }
    inv["substar_ideals"] = ideals;

    if (!p.is_star()) {
        guarded(checks, "curve ideal", [&] {
            add(checks, "curve ideal generated by (u_ij) and pi", curve_ideal_generated(p));
        });
        guarded(checks, "extraction", [&] {
            const ExtractReport r = extract_star_report(p);
            for (const auto& c : r.checks) checks.push_back({"extraction: " + c.name, c.ok, c.witness});
            inv["extracted_star_levels"] = r.star.q();
        });
    }
    return inv;
}

Outcome cmd_analyze(const std::vector<std::string>& files, const CommandOptions& o) {
    const auto t0 = Clock::now();
    Outcome out;
    out.report = top("analyze", files, o);
    if (files.empty()) {
        out.exit_code = 2;
        out.report["error"] = error_json("usage", "analyze needs at least one file");
        out.text = "error: analyze needs at least one file\n";
        finish(out, t0);
        return out;
    }
    json results = json::array();
    std::ostringstream text;
    for (const auto& file : files) {
        json r{{"file", file}};
        try {
            const Loaded l = load_presentation(file, o);
            std::vector<CheckEntry> checks;
            r["invariants"] = analyze_presentation(l.p, checks);
            if (!l.metadata.empty()) r["metadata"] = l.metadata;
            json cj = json::array();
            int failed = 0;
            for (const auto& c : checks) {
                cj.push_back(check_json(c));
                if (!c.ok) ++failed;
            }
            r["checks"] = cj;
            r["ok"] = failed == 0;
            if (failed) out.exit_code = std::max(out.exit_code, 1);

            const json& inv = r["invariants"];
            text << file << ": " << inv["kind"].get<std::string>() << " n=" << l.p.n() << " levels "
                 << tuple_text(l.p.q()) << " dim " << l.p.dim() << "\n";
            if (inv.contains("spectrum")) text << "  spectrum " << matrix_text(inv["spectrum"].get<Spectrum>()) << "\n";
            if (inv.contains("lambda")) {
                std::vector<Scalar> lam;
                for (const auto& s : inv["lambda"]) lam.push_back(parse_scalar(s.get<std::string>()));
                text << "  lambda " << tuple_text(lam) << "\n";
            }
            if (inv.contains("oblate"))
                text << "  oblate " << (inv["oblate"].get<bool>() ? "yes" : "no") << " (embedding dimension "
                     << inv["embedding_dimension"].get<int>() << ")\n";
            if (inv.contains("skipped")) text << "  skipped: " << inv["skipped"].get<std::string>() << "\n";
            text << "  checks: " << checks.size() - failed << " passed, " << failed << " failed\n";
            for (const auto& c : checks)
                if (!c.ok) text << "  FAIL " << c.name << (c.witness.empty() ? "" : ": " + c.witness) << "\n";
        } catch (const ParseError& e) {
            r["error"] = error_json("parse", e.what(), e.where());
            out.exit_code = 2;
            text << file << ": parse error: " << e.what() << "\n";
        } catch (const Error& e) {
            r["error"] = error_json(error_kind_text(e), e.what());
            out.exit_code = std::max(out.exit_code, exit_for(e));
            text << file << ": " << error_kind_text(e) << ": " << e.what() << "\n";
        }
        results.push_back(r);
    }
    out.report["results"] = results;
    out.text = text.str();
    finish(out, t0);
    return out;
}

Outcome cmd_build(const std::vector<std::string>& files, const CommandOptions& o) {
    const auto t0 = Clock::now();
    Outcome out;
    out.report = top("build", files, o);
    if (files.empty()) {
        out.exit_code = 2;
        out.report["error"] = error_json("usage", "build needs a builder script");
        out.text = "error: build needs a builder script\n";
        finish(out, t0);
        return out;
    }
    json results = json::array();
    std::ostringstream text;
    for (const auto& file : files) {
        json r{{"file", file}};
        try {
            const BuilderScript script = parse_script(load_json_file(file));
            BuildResult b;
            try {
                b = run_script(script, o.seed);
            } catch (const Error& e) {
                r["error"] = error_json(error_kind_text(e), e.what());
                out.exit_code = std::max(out.exit_code, exit_for(e));
                text << file << ": refused: " << e.what() << "\n";
                results.push_back(r);
                continue;
            }
            json meta{{"provenance", emit_script(b.resolved)}};
            if (b.resolved.seed) meta["seed"] = *b.resolved.seed;
            const json doc = emit_document(b.result, meta);
            if (o.out_dir) {
                const auto path = *o.out_dir / (std::filesystem::path(file).stem().string() + ".built.json");
                write_file(path, doc);
                r["written"] = path.string();
            }
            r["document"] = doc;
            text << file << ": " << (b.result.is_star() ? "star" : "deformation") << " n=" << b.result.n() << " levels "
                 << tuple_text(b.result.q()) << " dim " << b.result.dim() << " after " << b.resolved.steps.size()
                 << " steps\n";
        } catch (const ParseError& e) {
            r["error"] = error_json("parse", e.what(), e.where());
            out.exit_code = 2;
            text << file << ": parse error: " << e.what() << "\n";
        } catch (const Error& e) {
            r["error"] = error_json(error_kind_text(e), e.what());
            out.exit_code = std::max(out.exit_code, exit_for(e));
            text << file << ": " << e.what() << "\n";
        }
        results.push_back(r);
    }
    out.report["results"] = results;
    out.text = text.str();
    finish(out, t0);
    return out;
}

Outcome cmd_compare(const std::vector<std::string>& files, const CommandOptions& o) {
    const auto t0 = Clock::now();
    Outcome out;
    out.report = top("compare", files, o);
    std::ostringstream text;
    try {
        if (files.size() != 2) fail(ErrorKind::Usage, "compare takes exactly two files");
        const Loaded a = load_presentation(files[0], o), b = load_presentation(files[1], o);
        const ComparisonReport c = compare_stars(a.p, b.p);
        json r;
        r["verdict"] = verdict_name(c.verdict);
        r["spectrum_a"] = c.spectrum_a;
        r["spectrum_b"] = c.spectrum_b;
        r["a_in_b"] = c.a_in_b;
        r["b_in_a"] = c.b_in_a;
        r["spectra_equal"] = c.spectra_equal;
        r["spans_equal"] = c.spans_equal;
        text << "verdict: " << verdict_name(c.verdict) << "\n";
        text << "  spectra " << matrix_text(c.spectrum_a) << " vs " << matrix_text(c.spectrum_b)
             << (c.spectra_equal ? " (equal)" : "") << "\n";
        if (c.verdict == Verdict::StrictlyIncluded) {
            r["smaller"] = files[c.smaller];
            r["dominance"] = c.dominance;
            if (c.gap) r["gap"] = std::vector<int>{c.gap->first + 1, c.gap->second + 1};
            text << "  smaller: " << files[c.smaller] << "; dominance " << (c.dominance ? "holds" : "FAILS") << "\n";
            if (c.gap) text << "  gap at (" << c.gap->first + 1 << "," << c.gap->second + 1 << ")\n";
            const Presentation& sub = c.smaller == 0 ? a.p : b.p;
            const Presentation& sup = c.smaller == 0 ? b.p : a.p;
            if (sub.is_star()) {
                const NonflatnessWitness w = nonflatness_witness(sub, sup);
                r["witness"] = json{{"component", w.component + 1},
                                    {"q_sup", w.q_sup},
                                    {"q_sub", w.q_sub},
                                    {"u", emit_germ(w.u)},
                                    {"v", emit_germ(w.v)},
                                    {"product_zero", w.product_zero},
                                    {"phi", scalars(w.phi.coeffs())},
                                    {"phi_nonzero", w.phi_nonzero},
                                    {"well_defined", w.well_defined},
                                    {"ok", w.ok()}};
                text << "  witness: u = " << to_string(w.u) << ", v = " << to_string(w.v)
                     << ", uv = " << (w.product_zero ? "0" : "nonzero") << ", phi(u (x) v) = " << to_string(w.phi)
                     << (w.well_defined ? "" : " (phi NOT well defined)") << "\n";
                if (!w.ok()) out.exit_code = 1;
            }
            if (!c.dominance) out.exit_code = 1;
        }
        out.report["result"] = r;
    } catch (const ParseError& e) {
        out.report["error"] = error_json("parse", e.what(), e.where());
        out.exit_code = 2;
        text << "parse error: " << e.what() << "\n";
    } catch (const Error& e) {
        out.report["error"] = error_json(error_kind_text(e), e.what());
        out.exit_code = exit_for(e);
        text << error_kind_text(e) << ": " << e.what() << "\n";
    }
    out.text = text.str();
    finish(out, t0);
    return out;
}

Outcome cmd_verify(const std::vector<std::string>& suite_names, const CommandOptions& o) {
    const auto t0 = Clock::now();
    Outcome out;
    out.report = top("verify", suite_names, o);
    std::vector<const Suite*> chosen;
    for (const auto& name : suite_names) {
        if (name == "all") {
            for (const auto& s : suites()) chosen.push_back(&s);
            continue;
        }
        const Suite* s = find_suite(name);
        if (!s) {
            out.exit_code = 2;
            std::string known;
            for (const auto& k : suites()) known += " " + k.name;
            out.report["error"] = error_json("usage", "unknown suite '" + name + "'");
            out.text = "error: unknown suite '" + name + "'; known suites:" + known + " all\n";
            finish(out, t0);
            return out;
        }
        chosen.push_back(s);
    }
    if (chosen.empty()) {
        out.exit_code = 2;
        out.report["error"] = error_json("usage", "verify needs a suite name");
        out.text = "error: verify needs a suite name\n";
        finish(out, t0);
        return out;
    }
    SuiteOptions so;
    so.seed = o.seed.value_or(0);
    out.report["seed"] = so.seed;
    so.trials = o.trials;
    so.threads = o.threads;
    json results = json::array();
    std::ostringstream text;
    for (const Suite* s : chosen) {
        const SuiteResult r = s->run(so);
        json j = to_json(r);
        if (o.out_dir)
            for (const auto& f : r.failures)
                if (!f.reproducer.is_null()) {
                    const auto path = *o.out_dir / (r.name + "-trial" + std::to_string(f.trial) + ".json");
                    write_file(path, f.reproducer);
                }
        results.push_back(j);
        if (!r.ok()) out.exit_code = 1;
        text << (r.ok() ? "PASS " : "FAIL ") << r.name << ": " << r.passed << "/" << r.trials << " trials";
        int fx_ok = 0;
        for (const auto& f : r.fixtures) fx_ok += f.ok;
        if (!r.fixtures.empty()) text << ", " << fx_ok << "/" << r.fixtures.size() << " fixtures";
        text << "\n";
        for (const auto& f : r.fixtures)
            if (!f.ok) text << "  fixture " << f.name << ": " << f.detail << "\n";
        int shown = 0;
        for (const auto& f : r.failures) {
            if (shown++ == 5) {
                text << "  ... " << r.failures.size() - 5 << " more failures\n";
                break;
            }
            text << "  trial " << f.trial << ": " << f.message << "\n";
            if (!f.reproducer.is_null()) text << "    reproducer: " << f.reproducer.dump() << "\n";
        }
    }
    out.report["suites"] = results;
    out.text = text.str();
    finish(out, t0);
    return out;
}

}  // namespace starforge::harness
