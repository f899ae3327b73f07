// Command-line front end for the bairex shared library. Exit codes:
//   0  success (verify: every check passed)
//   1  input, validation or mismatch error
//   2  verification failure (extend re-checks its own output before writing)

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "bairex/bairex.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitVerify = 2;

int complain(const std::string& prefix) {
    std::cerr << "error: " << prefix << ": " << bx_last_error() << "\n";
    return kExitInput;
}

bool read_file(const std::string& path, std::string& out) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        std::cerr << "error: cannot open '" << path << "'\n";
        return false;
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    out = buf.str();
    return true;
}

bool write_output(const std::string& path, const char* text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return true;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        std::cerr << "error: cannot write '" << path << "'\n";
        return false;
    }
    out << text;
    return out.good();
}

struct Overrides {
    std::string tolerance;
    std::string mode;
    std::string arithmetic;
    std::optional<unsigned> alpha;
};

void add_override_flags(CLI::App* cmd, Overrides& ov) {
    cmd->add_option("--tolerance", ov.tolerance,
                    "truncation tolerance (decimal or fraction, overrides the instance)");
    cmd->add_option("--mode", ov.mode, "signed or positive (overrides the instance)");
    cmd->add_option("--alpha", ov.alpha,
                    "class label recorded on the run (overrides the instance)")
        ->check(CLI::NonNegativeNumber);
    cmd->add_option("--arithmetic", ov.arithmetic,
                    "float or rational (overrides the instance)");
}

// Parses an instance file and applies flag overrides; nullptr on failure.
bx_instance* load_instance(const std::string& path, const Overrides& ov) {
    std::string text;
    if (!read_file(path, text)) return nullptr;
    bx_instance* instance = nullptr;
    if (bx_instance_parse(text.c_str(), &instance) != BX_OK) {
        complain("invalid instance '" + path + "'");
        return nullptr;
    }
    bool ok = true;
    if (!ov.tolerance.empty() && bx_instance_set_tolerance(instance, ov.tolerance.c_str()) != BX_OK)
        ok = false;
    if (ok && !ov.mode.empty() && bx_instance_set_mode(instance, ov.mode.c_str()) != BX_OK)
        ok = false;
    if (ok && ov.alpha && bx_instance_set_alpha(instance, *ov.alpha) != BX_OK) ok = false;
    if (ok && !ov.arithmetic.empty() &&
        bx_instance_set_arithmetic(instance, ov.arithmetic.c_str()) != BX_OK)
        ok = false;
    if (!ok) {
        complain("invalid option");
        bx_instance_free(instance);
        return nullptr;
    }
    return instance;
}

int run_extend(const std::string& instance_path, const std::string& output_path,
               const std::string& plot_path, const Overrides& ov) {
    bx_instance* instance = load_instance(instance_path, ov);
    if (!instance) return kExitInput;

    bx_result* result = nullptr;
    if (bx_extend(instance, &result) != BX_OK) {
        int rc = complain("extend failed");
        bx_instance_free(instance);
        return rc;
    }

    // Re-check the fresh result before writing anything; a failure here is an
    // engine defect, never expected.
    bx_report* report = nullptr;
    if (bx_verify(instance, result, &report) != BX_OK) {
        int rc = complain("self-verification failed to run");
        bx_result_free(result);
        bx_instance_free(instance);
        return rc;
    }
    if (bx_report_overall(report) != 1) {
        char* rtext = nullptr;
        if (bx_report_to_json(report, &rtext) == BX_OK) {
            std::cerr << rtext;
            bx_string_free(rtext);
        }
        std::cerr << "error: self-verification failed; this is a bug in the engine\n";
        bx_report_free(report);
        bx_result_free(result);
        bx_instance_free(instance);
        return kExitVerify;
    }
    bx_report_free(report);

    char* text = nullptr;
    if (bx_result_to_json(result, &text) != BX_OK) {
        int rc = complain("serialization failed");
        bx_result_free(result);
        bx_instance_free(instance);
        return rc;
    }
    bool wrote = write_output(output_path, text);
    bx_string_free(text);

    if (wrote && !plot_path.empty()) {
        char* table = nullptr;
        if (bx_plot_table(instance, result, &table) != BX_OK) {
            int rc = complain("plot data");
            bx_result_free(result);
            bx_instance_free(instance);
            return rc;
        }
        wrote = write_output(plot_path, table);
        bx_string_free(table);
    }

    bx_result_free(result);
    bx_instance_free(instance);
    return wrote ? kExitOk : kExitInput;
}

int run_verify(const std::string& result_path, const std::string& instance_path,
               const std::string& output_path, const Overrides& ov) {
    bx_instance* instance = load_instance(instance_path, ov);
    if (!instance) return kExitInput;

    std::string result_text;
    if (!read_file(result_path, result_text)) {
        bx_instance_free(instance);
        return kExitInput;
    }
    bx_result* result = nullptr;
    if (bx_result_parse(result_text.c_str(), &result) != BX_OK) {
        int rc = complain("invalid result '" + result_path + "'");
        bx_instance_free(instance);
        return rc;
    }

    bx_report* report = nullptr;
    if (bx_verify(instance, result, &report) != BX_OK) {
        int rc = complain("verification aborted");
        bx_result_free(result);
        bx_instance_free(instance);
        return rc;
    }

    char* text = nullptr;
    bool wrote = false;
    if (bx_report_to_json(report, &text) == BX_OK) {
        wrote = write_output(output_path, text);
        bx_string_free(text);
    }
    int overall = bx_report_overall(report);

    bx_report_free(report);
    bx_result_free(result);
    bx_instance_free(instance);
    if (!wrote) return kExitInput;
    return overall == 1 ? kExitOk : kExitVerify;
}

int run_plot(const std::string& result_path, const std::string& instance_path,
             const std::string& output_path, const Overrides& ov) {
    bx_instance* instance = load_instance(instance_path, ov);
    if (!instance) return kExitInput;

    std::string result_text;
    if (!read_file(result_path, result_text)) {
        bx_instance_free(instance);
        return kExitInput;
    }
    bx_result* result = nullptr;
    if (bx_result_parse(result_text.c_str(), &result) != BX_OK) {
        int rc = complain("invalid result '" + result_path + "'");
        bx_instance_free(instance);
        return rc;
    }

    char* table = nullptr;
    if (bx_plot_table(instance, result, &table) != BX_OK) {
        int rc = complain("plot data");
        bx_result_free(result);
        bx_instance_free(instance);
        return rc;
    }
    bool wrote = write_output(output_path, table);
    bx_string_free(table);

    bx_result_free(result);
    bx_instance_free(instance);
    return wrote ? kExitOk : kExitInput;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"sup-norm-preserving extension of sampled functions on finite metric spaces"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(bx_version()));

    std::string instance_path, result_path, output_path, plot_path;
    Overrides ov;

    CLI::App* extend = app.add_subcommand(
        "extend", "run the extension on an instance file and write the result document");
    extend->add_option("instance", instance_path, "instance JSON file")->required();
    extend->add_option("-o,--output", output_path, "result path (default: stdout)");
    extend->add_option("--plot", plot_path, "also write plot table to this path");
    add_override_flags(extend, ov);

    CLI::App* verify = app.add_subcommand(
        "verify", "check a result document against its instance and write the report");
    verify->add_option("result", result_path, "result JSON file")->required();
    verify->add_option("instance", instance_path, "instance JSON file")->required();
    verify->add_option("-o,--output", output_path, "report path (default: stdout)");
    add_override_flags(verify, ov);

    CLI::App* plot = app.add_subcommand(
        "plot", "write the plot table for a result (requires coordinates)");
    plot->add_option("result", result_path, "result JSON file")->required();
    plot->add_option("instance", instance_path, "instance JSON file")->required();
    plot->add_option("-o,--output", output_path, "table path (default: stdout)");
    add_override_flags(plot, ov);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitInput;
    }

    if (extend->parsed()) return run_extend(instance_path, output_path, plot_path, ov);
    if (verify->parsed()) return run_verify(result_path, instance_path, output_path, ov);
    if (plot->parsed()) return run_plot(result_path, instance_path, output_path, ov);
    return kExitInput;
}
