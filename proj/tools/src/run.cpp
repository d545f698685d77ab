// Copyright 2026 The smearlab Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "commands.hpp"

#include <iomanip>
#include <iostream>
#include <sstream>

#include <openssl/evp.h>

#include "smearlab/version.hpp"

namespace smearlab::cli {

void Run::check(std::string name, bool passed, std::string detail) {
    checks.push_back({std::move(name), passed, std::move(detail)});
}

void Run::write(const std::string &file, const std::string &content) const {
    write_text_file(out_dir / file, content);
}

const std::vector<std::string> &command_names() {
    static const std::vector<std::string> names{"convolve", "moments", "example1",
                                                "smear",    "phasespace", "sample"};
    return names;
}

std::string sha256_hex(const std::string &data) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int length = 0;
    if (EVP_Digest(data.data(), data.size(), digest, &length, EVP_sha256(), nullptr) != 1) {
        throw Error(ErrorCode::NumericalFailure, "SHA-256 digest failed");
    }
    std::ostringstream os;
    for (unsigned int i = 0; i < length; ++i) {
        os << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[i]);
    }
    return os.str();
}

Json resolve_config(const RunOptions &options) {
    Json config = Json::object();
    if (options.preset) {
        config = preset_config(options.command, *options.preset);
    }
    if (options.config) {
        Json file;
        try {
            file = Json::parse(read_text_file(*options.config));
        } catch (const Json::exception &e) {
            throw Error(ErrorCode::Parse, std::string("config: ") + e.what());
        }
        if (!file.is_object()) {
            throw Error(ErrorCode::Parse, "config must be a JSON object");
        }
        config.merge_patch(file);
    }
    if (options.seed) {
        config["seed"] = *options.seed;
    }
    return config;
}

namespace {

void dispatch(const std::string &command, Run &run) {
    if (command == "convolve") {
        cmd_convolve(run);
    } else if (command == "moments") {
        cmd_moments(run);
    } else if (command == "example1") {
        cmd_example1(run);
    } else if (command == "smear") {
        cmd_smear(run);
    } else if (command == "phasespace") {
        cmd_phasespace(run);
    } else if (command == "sample") {
        cmd_sample(run);
    } else {
        throw Error(ErrorCode::InvalidArgument, "unknown command " + command);
    }
}

Json report_json(const MomentReport &report) {
    Json windows = Json::array();
    for (const auto &w : report.windows) {
        windows.push_back({{"R", w.radius},
                           {"re", w.partial.real()},
                           {"im", w.partial.imag()},
                           {"abs_partial", w.partial_absolute}});
    }
    return {{"order", report.order}, {"verdict", std::string(to_string(report.verdict))}, {"windows", windows}};
}

int fail(const RunOptions &options, std::ostream &err, Json error) {
    const std::string text = error.dump(1) + "\n";
    err << text;
    try {
        write_text_file(options.out / "error.json", text);
    } catch (const Error &) {
        // The error JSON on stderr is the primary report.
    }
    return 1;
}

} // namespace

int run_command(const RunOptions &options, std::ostream &out, std::ostream &err) {
    try {
        Run run;
        run.config = resolve_config(options);
        run.out_dir = options.out;
        if (options.config) {
            run.context.base_dir = options.config->parent_path();
            if (run.context.base_dir.empty()) {
                run.context.base_dir = ".";
            }
        }
        run.provenance.add("command", options.command);
        run.provenance.add("preset", options.preset.value_or(""));
        run.provenance.add("config_sha256", sha256_hex(run.config.dump()));
        run.provenance.add("library_version", std::string(library_version()));
        std::string modules;
        for (const auto &[name, version] : module_versions()) {
            modules += (modules.empty() ? "" : ";") + std::string(name) + "=" + std::string(version);
        }
        run.provenance.add("module_versions", modules);
        if (run.config.contains("seed")) {
            run.provenance.add("seed", run.config.at("seed").dump());
        }
        std::filesystem::create_directories(run.out_dir);
        std::filesystem::remove(run.out_dir / "error.json");

        dispatch(options.command, run);

        bool ok = true;
        Json checks = Json::array();
        for (const auto &c : run.checks) {
            ok = ok && c.passed;
            checks.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
            out << (c.passed ? "PASS " : "FAIL ") << c.name << ": " << c.detail << "\n";
        }
        Json summary = run.summary;
        summary["checks"] = checks;
        summary["passed"] = ok;
        Json prov = Json::object();
        for (const auto &[k, v] : run.provenance.entries) {
            prov[k] = v;
        }
        summary["provenance"] = prov;
        run.write("summary.json", summary.dump(1) + "\n");
        out << (ok ? "all checks passed" : "some checks failed") << " (" << run.checks.size()
            << " checks), outputs in " << run.out_dir.string() << "\n";
        return ok ? 0 : 2;
    } catch (const NonconvergedMoment &e) {
        return fail(options, err,
                    {{"error", std::string(to_string(e.code()))},
                     {"message", e.what()},
                     {"report", report_json(e.report())}});
    } catch (const Error &e) {
        return fail(options, err, {{"error", std::string(to_string(e.code()))}, {"message", e.what()}});
    } catch (const std::filesystem::filesystem_error &e) {
        return fail(options, err, {{"error", std::string(to_string(ErrorCode::Io))}, {"message", e.what()}});
    } catch (const Json::exception &e) {
        return fail(options, err,
                    {{"error", std::string(to_string(ErrorCode::Parse))}, {"message", e.what()}});
    }
}

} // namespace smearlab::cli
