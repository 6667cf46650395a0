/*
 *  Copyright (c) 2026  The aspine authors
 *
 *  Licensed under the Apache License, Version 2.0 (the "License");
 *  you may not use this file except in compliance with the License.
 *  You may obtain a copy of the License at
 *
 *    http://www.apache.org/licenses/LICENSE-2.0
 *
 *  Unless required by applicable law or agreed to in writing, software
 *  distributed under the License is distributed on an "AS IS" BASIS,
 *  WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 *  See the License for the specific language governing permissions and
 *  limitations under the License.
 */

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "aspine/oracle.hpp"
#include "aspine/program.hpp"
#include "aspine/solver.hpp"

namespace {

constexpr int kExitSat = 10;
constexpr int kExitUnsat = 20;
constexpr int kExitError = 1;
constexpr int kExitUsage = 2;

aspine::GroundProgram read_program(const std::string& path) {
    if (path == "-") return aspine::parse_program(std::cin);
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return aspine::parse_program(in);
}

void print_models(const std::vector<aspine::Model>& models) {
    std::size_t n = 0;
    for (const aspine::Model& m : models) {
        std::cout << "Answer: " << ++n << '\n';
        bool first = true;
        for (const std::string& name : m.atoms) {
            std::cout << (first ? "" : " ") << name;
            first = false;
        }
        std::cout << '\n';
    }
}

struct SolveOptions {
    std::string file;
    std::string mode = "fwd";
    std::string heur = "occ";
    unsigned workers = 1;
    std::string restarts = "off";
    std::uint64_t max_models = 1;
    std::uint32_t deps_words = 16;
    std::uint32_t fanout = 1;
    std::uint64_t seed = 0;
    bool verify = false;
    std::string stats;
    bool trace = false;
};

int run_solve(const SolveOptions& opt) {
    aspine::SolverConfig cfg;
    cfg.mode = opt.mode == "res" ? aspine::LearnMode::res : aspine::LearnMode::fwd;
    cfg.heuristic.kind = opt.heur == "jw"    ? aspine::HeuristicKind::jeroslow_wang
                         : opt.heur == "act" ? aspine::HeuristicKind::activity
                                             : aspine::HeuristicKind::occurrence_count;
    cfg.workers = opt.workers;
    cfg.max_models = opt.max_models;
    cfg.deps_words = opt.deps_words;
    cfg.conflict_fanout = opt.fanout;
    cfg.seed = opt.seed;
    cfg.verify = opt.verify;
    if (opt.restarts != "off") {
        // geometric:BASE:FACTOR
        std::istringstream in(opt.restarts);
        std::string kind, base, factor;
        std::getline(in, kind, ':');
        std::getline(in, base, ':');
        std::getline(in, factor, ':');
        if (kind != "geometric")
            throw CLI::ValidationError("--restarts", "expected off or geometric:BASE:FACTOR");
        cfg.restarts.enabled = true;
        if (!base.empty()) cfg.restarts.base = std::stoull(base);
        if (!factor.empty()) cfg.restarts.factor = std::stod(factor);
        if (cfg.restarts.base < 1 || cfg.restarts.factor <= 1.0)
            throw CLI::ValidationError("--restarts", "need BASE >= 1 and FACTOR > 1");
    }
    if (opt.trace)
        cfg.trace = [](const aspine::ConflictTrace& t) {
            std::cerr << "trace: mode=" << aspine::to_string(t.mode_used)
                      << " conflict=" << t.conflict_id << " learned_len=" << t.learned_length
                      << " backjump=" << t.backjump_level << '\n';
        };

    aspine::GroundProgram prog = read_program(opt.file);
    aspine::SolveResult res = aspine::solve(prog, cfg);

    print_models(res.models);
    std::cout << (res.status == aspine::SolveStatus::sat ? "SATISFIABLE" : "UNSATISFIABLE") << '\n';

    if (!opt.stats.empty()) {
        aspine::StatsContext ctx{opt.file, aspine::to_string(cfg.mode),
                                 aspine::to_string(cfg.heuristic.kind), cfg.workers, res.status,
                                 res.stats.models};
        if (opt.stats == "csv")
            std::cout << aspine::stats_csv_header() << '\n'
                      << aspine::emit_stats(res.stats, ctx, aspine::StatsFormat::csv) << '\n';
        else
            std::cout << aspine::emit_stats(res.stats, ctx, aspine::StatsFormat::human) << '\n';
    }
    return res.status == aspine::SolveStatus::sat ? kExitSat : kExitUnsat;
}

int run_oracle(const std::string& file) {
    aspine::GroundProgram prog = read_program(file);
    auto family = aspine::enumerate_answer_sets(prog);
    std::size_t n = 0;
    for (const auto& answer : family) {
        std::cout << "Answer: " << ++n << '\n';
        std::vector<std::string> names;
        for (aspine::AtomId a : answer) names.push_back(prog.name(a));
        std::sort(names.begin(), names.end());
        bool first = true;
        for (const std::string& name : names) {
            std::cout << (first ? "" : " ") << name;
            first = false;
        }
        std::cout << '\n';
    }
    std::cout << (family.empty() ? "UNSATISFIABLE" : "SATISFIABLE") << '\n';
    return family.empty() ? kExitUnsat : kExitSat;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"aspine - conflict-driven answer set solver"};
    app.require_subcommand(1);

    SolveOptions opt;
    CLI::App* solve = app.add_subcommand("solve", "compute answer sets of a ground program");
    solve->add_option("file", opt.file, "program file ('-' for stdin)")->required();
    solve->add_option("--mode", opt.mode, "learning mode")->check(CLI::IsMember({"fwd", "res"}));
    solve->add_option("--heur", opt.heur, "decision heuristic")
        ->check(CLI::IsMember({"occ", "jw", "act"}));
    solve->add_option("--workers", opt.workers, "worker pool size")->check(CLI::Range(1u, 256u));
    solve->add_option("--restarts", opt.restarts, "off or geometric:BASE:FACTOR");
    solve->add_option("-n", opt.max_models, "models to compute (0 = all)");
    solve->add_option("--deps-words", opt.deps_words, "dependency bitmap words (64 levels each)")
        ->check(CLI::Range(1u, 1024u));
    solve->add_option("--fanout", opt.fanout, "conflicts analyzed per round in fwd mode")
        ->check(CLI::Range(1u, 64u));
    solve->add_option("--seed", opt.seed, "random seed");
    solve->add_flag("--verify", opt.verify, "check every model against the oracle");
    solve->add_option("--stats", opt.stats, "print statistics")->check(CLI::IsMember({"csv", "human"}));
    solve->add_flag("--trace", opt.trace, "per-conflict trace on stderr");

    std::string oracle_file;
    CLI::App* oracle = app.add_subcommand("oracle", "brute-force answer set enumeration");
    oracle->add_option("file", oracle_file, "program file ('-' for stdin)")->required();

    try {
        app.parse(argc, argv);
        if (solve->parsed()) return run_solve(opt);
        return run_oracle(oracle_file);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    } catch (const aspine::ParseError& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitError;
    }
}
