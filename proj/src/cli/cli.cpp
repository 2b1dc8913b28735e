#include "cli.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <stdexcept>

#include <CLI11.hpp>

#include "commands.hpp"
#include "ecgroups/parallel.hpp"
#include "ecgroups/quadforms.hpp"

namespace ecg::cli {

namespace {

struct Parser {
    CLI::App app{"Weighted counts of elliptic curves over prime fields by group of points", "ecgroups"};
    RunConfig cfg;
    std::string format = "csv";
    std::string out_path;
    std::string cache_path;

    // Integer option stored under `name` in cfg.params only when given.
    CLI::Option* integer(CLI::App* sub, const std::string& name, const std::string& help) {
        return sub->add_option_function<std::int64_t>(
            "--" + name, [this, name](const std::int64_t& v) { cfg.params[name] = v; }, help);
    }

    Parser() {
        app.require_subcommand(1);
        app.fallthrough();
        app.add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "json"}));
        app.add_option("--cutoff", cfg.cutoff, "Euler-product cutoff (>= 100)");
        app.add_option("--out", out_path, "Write output to this file instead of stdout");
        app.add_option("--threads", cfg.threads, "Worker threads (0: runtime default)");
        app.add_option("--seed", cfg.seed, "Seed for sampled checks");
        app.add_option("--class-cache", cache_path, "CSV cache of class numbers, loaded and saved");

        auto* mg = app.add_subcommand("mg", "Weighted count M(G) for G = Z/m x Z/mk");
        integer(mg, "m", "m >= 1")->required();
        integer(mg, "k", "k >= 1")->required();
        mg->add_flag("--per-prime", cfg.per_prime, "Add the per-prime breakdown");

        auto* mn = app.add_subcommand("mn", "Weighted count M(N) of curves with N points");
        integer(mn, "n", "N >= 1")->required();
        integer(mn, "x", "Split the decomposition at m <= x");

        auto* grid = app.add_subcommand("grid", "Table of M(G), main term and ratio over m <= mmax, k <= kmax");
        integer(grid, "mmax", "largest m")->required();
        integer(grid, "kmax", "largest k")->required();

        auto* constants = app.add_subcommand("constants", "Euler factors of K(G) or K(N)");
        integer(constants, "m", "m for K(G)");
        integer(constants, "k", "k for K(G)");
        integer(constants, "n", "N for K(N)");
        integer(constants, "lmax", "list factors for ell <= lmax (default 50)");

        auto* matrix = app.add_subcommand("matrix", "Matrix count #C_{N,n}(ell^e) and its density");
        integer(matrix, "N", "N >= 1")->required();
        integer(matrix, "n", "n >= 1 (default 1)");
        integer(matrix, "ell", "prime ell")->required();
        integer(matrix, "e", "level e >= 1")->required();
        integer(matrix, "budget", "largest enumeration size ell^(4e)");

        auto* verify = app.add_subcommand("verify", "Run a verification suite");
        verify->add_option("suite", cfg.suite, "Suite name")
            ->required()
            ->check(CLI::IsMember({"oracle", "matrix", "local", "constants", "identity", "asymptotic"}));
        for (const char* name : {"pmax", "lmax", "emax", "nmax", "dmax", "mmax", "kmax", "lcut", "budget",
                                 "samples", "klo", "khi"}) {
            integer(verify, name, "suite parameter");
        }
    }
};

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    Parser parser;
    try {
        parser.app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        // help requests exit 0, everything else is a usage error
        return parser.app.exit(e, out, err) == 0 ? 0 : static_cast<int>(ExitCode::usage);
    }

    RunConfig& cfg = parser.cfg;
    cfg.command = parser.app.get_subcommands().front()->get_name();
    cfg.format = parser.format == "json" ? Format::json : Format::csv;
    if (!parser.out_path.empty()) cfg.output_path = parser.out_path;
    if (!parser.cache_path.empty()) cfg.class_cache = parser.cache_path;

    try {
        cfg.validate();
        set_thread_count(cfg.threads);
        auto& cache = ClassNumberCache::global();
        if (cfg.class_cache && std::filesystem::exists(*cfg.class_cache)) cache.load_csv(*cfg.class_cache);

        const CommandResult result = execute(cfg);
        const std::string text = render(result.doc, cfg.format);
        if (cfg.output_path) {
            std::ofstream file(*cfg.output_path, std::ios::binary);
            if (!file) throw std::invalid_argument("cannot open " + cfg.output_path->string());
            file << text;
        } else {
            out << text;
        }
        if (cfg.class_cache) cache.save_csv(*cfg.class_cache);
        return static_cast<int>(result.code);
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return static_cast<int>(ExitCode::usage);
    } catch (const std::out_of_range& e) {
        err << "error: " << e.what() << "\n";
        return static_cast<int>(ExitCode::usage);
    } catch (const std::overflow_error& e) {
        err << "error: " << e.what() << "\n";
        return static_cast<int>(ExitCode::usage);
    } catch (const std::exception& e) {
        // internal cross-checks (two routes disagreeing) land here
        err << "check failed: " << e.what() << "\n";
        return static_cast<int>(ExitCode::mismatch);
    }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    std::vector<const char*> argv{"ecgroups"};
    for (const auto& a : args) argv.push_back(a.c_str());
    return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace ecg::cli
