#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "treeitp/driver.hpp"

int main(int argc, char** argv) {
    using namespace treeitp;
    CLI::App app{"Tree interpolants from instantiation-based resolution proofs"};
    std::vector<std::string> files;
    std::string colouring = "heuristic";
    std::string validate = "full";
    std::string out_path;
    std::uint64_t seed = 0;
    int domain_size = 3;
    RunConfig config;

    app.add_option("files", files, "Problem and proof files, read in order")->required();
    app.add_option("--colouring", colouring, "heuristic, file or random (random:SEED also works)");
    app.add_option("--seed", seed, "Seed for random colouring");
    app.add_option("--validate", validate, "off, syntactic or full")
        ->check(CLI::IsMember({"off", "syntactic", "full"}));
    app.add_flag("--simplify", config.simplify, "Simplify printed interpolants");
    app.add_flag("--dump-partials", config.dump_partials, "Print every proof node's vector");
    app.add_option("--domain-size", domain_size, "Largest finite domain the oracle tries")
        ->check(CLI::PositiveNumber);
    app.add_option("--out", out_path, "Write results to this file instead of stdout");
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitInputError;
    }

    if (colouring == "heuristic") {
        config.colouring = ColouringSource::Heuristic;
    } else if (colouring == "file") {
        config.colouring = ColouringSource::File;
    } else if (colouring.rfind("random", 0) == 0) {
        config.colouring = ColouringSource::Random;
        if (colouring.size() > 7 && colouring[6] == ':') {
            try {
                config.seed = std::stoull(colouring.substr(7));
            } catch (const std::exception&) {
                std::cerr << "error: bad seed in --colouring " << colouring << "\n";
                return kExitInputError;
            }
        } else if (colouring != "random") {
            std::cerr << "error: unknown colouring " << colouring << "\n";
            return kExitInputError;
        }
    } else {
        std::cerr << "error: unknown colouring " << colouring << "\n";
        return kExitInputError;
    }
    if (app.count("--seed"))
        config.seed = seed;

    static const std::map<std::string, ValidationLevel> levels{
        {"off", ValidationLevel::Off},
        {"syntactic", ValidationLevel::Syntactic},
        {"full", ValidationLevel::Full}};
    config.validate = levels.at(validate);
    OracleBudget base;
    base.domain_size = domain_size;
    try {
        config.budget = OracleBudget::from_env(base);
    } catch (const Error& e) {
        std::cerr << "error: TREEITP_BUDGET: " << e.what() << "\n";
        return kExitInputError;
    }

    std::vector<std::string> texts;
    for (const std::string& path : files) {
        std::ifstream in(path);
        if (!in) {
            std::cerr << "error: cannot read " << path << "\n";
            return kExitInputError;
        }
        std::ostringstream text;
        text << in.rdbuf();
        texts.push_back(text.str());
    }

    if (out_path.empty())
        return run(config, texts, std::cout, std::cerr);
    std::ofstream out(out_path);
    if (!out) {
        std::cerr << "error: cannot write " << out_path << "\n";
        return kExitInputError;
    }
    int code = run(config, texts, out, std::cerr);
    out.close();
    if (!out) {
        std::cerr << "error: writing " << out_path << " failed\n";
        return kExitInputError;
    }
    return code;
}
