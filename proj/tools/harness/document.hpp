#pragma once

#include "starforge/build.hpp"

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace starforge::harness {

using json = nlohmann::json;

inline constexpr int format_version = 1;

// Malformed input. `where` is a JSON pointer into the document, or
// "line L, column C" for syntax errors.
class ParseError : public std::runtime_error {
public:
    ParseError(std::string where, const std::string& what)
        : std::runtime_error(where.empty() ? what : where + ": " + what), where_(std::move(where)) {}
    const std::string& where() const { return where_; }

private:
    std::string where_;
};

json load_json_file(const std::filesystem::path& path);
json parse_json_text(const std::string& text);

json emit_scalar(const Scalar& s);
Scalar parse_scalar_at(const json& j, const std::string& where);

// kind = star | deformation.
struct Document {
    Presentation presentation;
    json metadata = json::object();
};

json emit_document(const Presentation& p, const json& metadata = json::object());
Document parse_document(const json& j);

struct BaseFixture {
    std::string fixture = "pair";  // pair | lines | initial | branch
    int p = 1;
    int n = 2;
    std::vector<Scalar> c;
    std::vector<TruncSeries> phi;
};

struct RandomSpec {
    int n_max = 3;
    int p_max = 2;
};

struct BuilderScript {
    BaseFixture base;
    int xdeg = 1;
    std::vector<ExtensionStep> steps;
    std::optional<RandomSpec> random;  // steps drawn from the seed instead
    std::optional<std::uint64_t> seed;
};

json emit_bipoly(const BiPoly& b);
BiPoly parse_bipoly(const json& j, int xdeg, const std::string& where);
json emit_germ(const MultiGerm& g);

json emit_step(const ExtensionStep& s);
ExtensionStep parse_step(const json& j, int xdeg, const std::string& where);
json emit_script(const BuilderScript& s);
BuilderScript parse_script(const json& j);

Presentation base_presentation(const BaseFixture& b, int xdeg);

struct BuildResult {
    Presentation result;
    BuilderScript resolved;  // random draws replaced by their steps
};

// Throws starforge::Error from the constructor (degenerate steps included).
BuildResult run_script(const BuilderScript& s, std::optional<std::uint64_t> seed_override = std::nullopt);

// The document's kind field, or a ParseError.
std::string document_kind(const json& j);

}  // namespace starforge::harness
