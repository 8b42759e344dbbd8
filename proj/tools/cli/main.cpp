#include "harness/commands.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>

using namespace starforge::harness;

int main(int argc, char** argv) {
    CLI::App app{"starforge: exact invariants of oblate stars and fragmented deformations"};
    app.require_subcommand(1);

    CommandOptions opt;
    std::uint64_t seed = 0;
    std::string format = "json";
    std::string out_dir;
    std::vector<std::string> args;

    auto common = [&](CLI::App* sub) {
        sub->add_option("--seed", seed, "Seed for random draws");
        sub->add_option("--trials", opt.trials, "Trials per suite (default: the suite's own count)")->check(CLI::NonNegativeNumber);
        sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "text"}));
        sub->add_option("--threads", opt.threads, "Worker threads for verify (0: all cores)")->check(CLI::NonNegativeNumber);
        sub->add_option("--out-dir", out_dir, "Directory for built documents and reproducers");
    };
    CLI::App* analyze = app.add_subcommand("analyze", "Full invariant report for stars, deformations or builder scripts");
    CLI::App* build = app.add_subcommand("build", "Run builder scripts and emit the resulting documents");
    CLI::App* compare = app.add_subcommand("compare", "Compare two stars: inclusion, dominance, non-flatness witness");
    CLI::App* verify = app.add_subcommand("verify", "Run property suites ('all' runs every suite)");
    for (CLI::App* sub : {analyze, build, compare, verify}) {
        common(sub);
        sub->add_option(sub == verify ? "SUITE" : "FILE", args)->required();
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (analyze->count("--seed") || build->count("--seed") || compare->count("--seed") || verify->count("--seed"))
        opt.seed = seed;
    opt.format = format == "text" ? Format::Text : Format::Json;
    if (!out_dir.empty()) {
        opt.out_dir = out_dir;
    } else if (const char* env = std::getenv("STARFORGE_OUT_DIR"); env && *env) {
        opt.out_dir = env;
    }

    Outcome out;
    if (*analyze) out = cmd_analyze(args, opt);
    else if (*build) out = cmd_build(args, opt);
    else if (*compare) out = cmd_compare(args, opt);
    else out = cmd_verify(args, opt);

    if (opt.format == Format::Text) {
        std::cout << out.text;
    } else if (*build && out.exit_code == 0 && args.size() == 1 && !opt.out_dir) {
        std::cout << out.report["results"][0]["document"].dump(2) << "\n";
    } else {
        std::cout << out.report.dump(2) << "\n";
    }
    if (out.exit_code != 0 && opt.format == Format::Json && out.report.contains("error"))
        std::cerr << "error: " << out.report["error"]["message"].get<std::string>() << "\n";
    return out.exit_code;
}
