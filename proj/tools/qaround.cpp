// Copyright 2026 The qaround Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line driver.
//
//   qaround compile FILE [--opt LEVEL] [--emit text|json] [--stats] [--verify]
//   qaround vchain --controls N [--opt LEVEL] [--emit text|json] [--stats] [--verify]
//   qaround check FILE
//
// Exit codes: 0 ok, 1 diagnostics, 2 verification failure, 3 internal error.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "qaround.hpp"

namespace {

using namespace qaround;

constexpr int kOk = 0;
constexpr int kDiagnostics = 1;
constexpr int kVerifyFailed = 2;
constexpr int kInternal = 3;

struct OutputOptions {
    std::string opt = "none";
    std::string emit;
    bool stats = false;
    bool verify = false;
};

ir::Circuit load(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw Error("cannot open '" + path + "'");
    }
    std::stringstream ss;
    ss << in.rdbuf();
    try {
        return frontend::parse(ss.str(), std::filesystem::path(path).stem().string());
    } catch (const ParseError& e) {
        throw Error(path + ":" + e.what());
    }
}

int compile(const ir::Circuit& input, const OutputOptions& o) {
    const auto level = passes::opt_level_from_name(o.opt);
    if (!level) {
        std::cerr << "error: unknown optimization level '" << o.opt << "'\n";
        return kDiagnostics;
    }
    const auto [out, reports] = passes::run_pipeline(input, *level);
    const std::string emit = o.emit.empty() && !o.stats && !o.verify ? "text" : o.emit;
    if (emit == "text") {
        std::cout << frontend::emit_text(out);
    } else if (emit == "json") {
        std::cout << frontend::emit_json(out).dump(2) << '\n';
    }
    if (o.stats) {
        std::cout << frontend::stats_json(frontend::stats(out), reports).dump(2) << '\n';
    }
    if (o.verify) {
        passes::VerifyResult v;
        try {
            v = passes::verify_equivalent(input, out);
        } catch (const TooLargeError& e) {
            std::cerr << "error: refusing to verify: " << e.what() << '\n';
            return kDiagnostics;
        }
        if (!v.equivalent) {
            std::cerr << "verification failed: " << v.detail << '\n';
            return kVerifyFailed;
        }
        std::cerr << "verified: " << v.detail << '\n';
    }
    return kOk;
}

int check(const ir::Circuit& c) {
    const auto verdicts = ancilla::check_circuit(c, passes::verified_library());
    if (verdicts.empty()) {
        std::cout << c.name << ": no aux scopes\n";
        return kOk;
    }
    bool ok = true;
    for (const auto& v : verdicts) {
        std::string qs;
        for (auto q : v.aux) {
            qs += (qs.empty() ? "" : ", ") + ir::to_string(q);
        }
        const std::string where = v.path.empty() ? "top level" : v.path;
        if (v.verdict.accepted()) {
            std::cout << "aux scope at " << where << " (" << qs << "): accepted, safe to release\n";
            continue;
        }
        ok = false;
        std::cout << "aux scope at " << where << " (" << qs << "): rejected\n";
        for (const auto& viol : v.verdict.violations) {
            std::cerr << "error: aux not provably uncomputed at " << viol.path << ": " << viol.reason << '\n';
        }
    }
    return ok ? kOk : kDiagnostics;
}

void add_output_options(CLI::App* sub, OutputOptions& o) {
    sub->add_option("--opt", o.opt, "optimization level")
        ->check(CLI::IsMember({"none", "ctrl", "approx", "all"}));
    sub->add_option("--emit", o.emit, "print the compiled circuit")->check(CLI::IsMember({"text", "json"}));
    sub->add_flag("--stats", o.stats, "print gate statistics as JSON");
    sub->add_flag("--verify", o.verify, "check the result against the input with the simulator");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Circuit compiler with conjugation-aware rewrites"};
    app.require_subcommand(1);

    OutputOptions compile_opts;
    std::string compile_file;
    auto* compile_cmd = app.add_subcommand("compile", "compile a .qc file");
    compile_cmd->add_option("file", compile_file, "input program")->required();
    add_output_options(compile_cmd, compile_opts);

    OutputOptions vchain_opts;
    std::size_t controls = 0;
    auto* vchain_cmd = app.add_subcommand("vchain", "build and compile the V-chain multi-controlled X");
    vchain_cmd->add_option("--controls", controls, "number of controls")->required()->check(CLI::Range(1, 64));
    add_output_options(vchain_cmd, vchain_opts);

    std::string check_file;
    auto* check_cmd = app.add_subcommand("check", "report aux uncomputation verdicts");
    check_cmd->add_option("file", check_file, "input program")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kOk : kDiagnostics;
    }

    try {
        if (*compile_cmd) {
            return compile(load(compile_file), compile_opts);
        }
        if (*vchain_cmd) {
            return compile(builders::build_v_chain(controls), vchain_opts);
        }
        return check(load(check_file));
    } catch (const RegistrationError& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return kInternal;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kDiagnostics;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return kInternal;
    }
}
