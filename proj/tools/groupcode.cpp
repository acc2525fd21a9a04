// groupcode: analyze, encode, draw and sweep wide-sense homomorphic encoders.

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "groupcode/commands.hpp"

namespace {

const char* kSpecHelp =
    "Encoder spec (JSON). G = U + S with U coordinates first; nu and omega list the "
    "images of G's generators in that order.";

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Group codes from wide-sense homomorphic encoders"};
    app.require_subcommand(1);

    std::string spec;
    auto* analyze = app.add_subcommand("analyze", "Controllability verdict, reachability chain and structure checks as JSON");
    analyze->add_option("spec", spec, kSpecHelp)->required();

    groupcode::EncodeOptions enc_opt;
    std::string state;
    auto* encode = app.add_subcommand("encode", "Run the encoder on an input word and print i, u, s, y per step");
    encode->add_option("spec", spec, kSpecHelp)->required();
    encode->add_option("--state", state, "Initial state, e.g. 00 or 0:3 (default: identity)");
    encode->add_option("--inputs", enc_opt.inputs, "Comma-separated input symbols, e.g. 0,1,1");
    encode->add_flag("--zero-tail", enc_opt.zero_tail, "Append the shortest padding back to the identity state");
    int max_tail = 0;
    encode->add_option("--max-tail", max_tail, "Longest padding searched (default: |S|)");

    int sections = 0;
    std::string dot_out;
    auto* trellis = app.add_subcommand("trellis", "Write the state diagram (0 sections) or a trellis as DOT");
    trellis->add_option("spec", spec, kSpecHelp)->required();
    trellis->add_option("--sections,-k", sections, "Number of trellis sections");
    trellis->add_option("--out,-o", dot_out, "Output file (default: stdout)");

    groupcode::SweepCommandOptions sw;
    std::string sweep_out;
    bool full = false;
    auto* sweep = app.add_subcommand("sweep", "Check every encoder with U = Z_p over all abelian extensions");
    sweep->add_option("--p", sw.primes, "Primes, e.g. --p 2 3")->expected(1, -1);
    sweep->add_option("--max-s-order", sw.max_state_order, "Largest |S| enumerated");
    sweep->add_option("--out,-o", sweep_out, "Write the JSON report here");
    sweep->add_flag("--no-dedup", full, "Evaluate every subgroup N instead of one per automorphism orbit");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : groupcode::kUserError;
    }

    if (*analyze) return groupcode::run_analyze(spec, std::cout, std::cerr);
    if (*encode) {
        if (encode->count("--state")) enc_opt.state = state;
        if (encode->count("--max-tail")) enc_opt.max_tail = max_tail;
        return groupcode::run_encode(spec, enc_opt, std::cout, std::cerr);
    }
    if (*trellis) {
        std::optional<std::string> out;
        if (trellis->count("--out")) out = dot_out;
        return groupcode::run_trellis(spec, sections, out, std::cout, std::cerr);
    }
    if (*sweep) {
        if (sweep->count("--out")) sw.out_path = sweep_out;
        sw.deduplicate = !full;
        sw.jobs = groupcode::jobs_from_environment();
        return groupcode::run_sweep(sw, std::cout, std::cerr);
    }
    return groupcode::kUserError;
}
