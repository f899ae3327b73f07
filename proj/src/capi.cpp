#include "bairex/bairex.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "bairex/io.hpp"

struct bx_instance {
    bairex::ProblemInstance inst;
};

struct bx_result {
    bairex::AnyOutcome out;
};

struct bx_report {
    bairex::VerificationReport rep;
};

namespace {

thread_local std::string g_last_error;

void set_error(const std::string& msg) { g_last_error = msg; }

bx_status fail(bx_status code, const std::string& msg) {
    set_error(msg);
    return code;
}

// Runs fn, translating exceptions into status codes.
template <class Fn>
bx_status guarded(Fn&& fn) {
    try {
        return fn();
    } catch (const bairex::MismatchError& e) {
        return fail(BX_ERR_MISMATCH, e.what());
    } catch (const bairex::ParseError& e) {
        return fail(BX_ERR_PARSE, e.what());
    } catch (const bairex::ValidationError& e) {
        return fail(BX_ERR_VALIDATION, e.what());
    } catch (const std::bad_alloc&) {
        return fail(BX_ERR_INTERNAL, "out of memory");
    } catch (const std::exception& e) {
        return fail(BX_ERR_INTERNAL, e.what());
    } catch (...) {
        return fail(BX_ERR_INTERNAL, "unknown error");
    }
}

char* copy_string(const std::string& text) {
    char* out = static_cast<char*>(std::malloc(text.size() + 1));
    if (out) std::memcpy(out, text.c_str(), text.size() + 1);
    return out;
}

}  // namespace

extern "C" {

const char* bx_version(void) { return "1.0.0"; }

const char* bx_last_error(void) { return g_last_error.c_str(); }

bx_status bx_instance_parse(const char* json_text, bx_instance** out_instance) {
    if (!json_text || !out_instance) return fail(BX_ERR_ARGUMENT, "null argument");
    *out_instance = nullptr;
    return guarded([&] {
        auto* handle = new bx_instance{bairex::parse_instance(json_text)};
        *out_instance = handle;
        return BX_OK;
    });
}

void bx_instance_free(bx_instance* instance) { delete instance; }

bx_status bx_instance_set_tolerance(bx_instance* instance, const char* text) {
    if (!instance || !text) return fail(BX_ERR_ARGUMENT, "null argument");
    return guarded([&] {
        bairex::Rational tol = bairex::rational_from_text(text);
        if (!(tol > 0)) throw bairex::ValidationError("tolerance must be positive");
        instance->inst.tolerance_exact = tol;
        instance->inst.tolerance_float = bairex::to_double(tol);
        return BX_OK;
    });
}

bx_status bx_instance_set_mode(bx_instance* instance, const char* mode) {
    if (!instance || !mode) return fail(BX_ERR_ARGUMENT, "null argument");
    return guarded([&] {
        instance->inst.mode = bairex::mode_from_name(mode);
        return BX_OK;
    });
}

bx_status bx_instance_set_alpha(bx_instance* instance, unsigned alpha) {
    if (!instance) return fail(BX_ERR_ARGUMENT, "null argument");
    instance->inst.alpha = alpha;
    return BX_OK;
}

bx_status bx_instance_set_arithmetic(bx_instance* instance, const char* arithmetic) {
    if (!instance || !arithmetic) return fail(BX_ERR_ARGUMENT, "null argument");
    return guarded([&] {
        instance->inst.arithmetic = bairex::arithmetic_from_name(arithmetic);
        return BX_OK;
    });
}

bx_status bx_extend(const bx_instance* instance, bx_result** out_result) {
    if (!instance || !out_result) return fail(BX_ERR_ARGUMENT, "null argument");
    *out_result = nullptr;
    return guarded([&] {
        auto* handle = new bx_result{bairex::run_instance(instance->inst)};
        *out_result = handle;
        return BX_OK;
    });
}

bx_status bx_result_parse(const char* json_text, bx_result** out_result) {
    if (!json_text || !out_result) return fail(BX_ERR_ARGUMENT, "null argument");
    *out_result = nullptr;
    return guarded([&] {
        auto* handle = new bx_result{bairex::parse_result(json_text)};
        *out_result = handle;
        return BX_OK;
    });
}

bx_status bx_result_to_json(const bx_result* result, char** out_text) {
    if (!result || !out_text) return fail(BX_ERR_ARGUMENT, "null argument");
    *out_text = nullptr;
    return guarded([&] {
        std::string text = bairex::result_to_json(result->out);
        *out_text = copy_string(text);
        if (!*out_text) return fail(BX_ERR_INTERNAL, "out of memory");
        return BX_OK;
    });
}

void bx_result_free(bx_result* result) { delete result; }

bx_status bx_verify(const bx_instance* instance, const bx_result* result,
                    bx_report** out_report) {
    if (!instance || !result || !out_report) return fail(BX_ERR_ARGUMENT, "null argument");
    *out_report = nullptr;
    return guarded([&] {
        auto* handle = new bx_report{bairex::verify_result(instance->inst, result->out)};
        *out_report = handle;
        return BX_OK;
    });
}

int bx_report_overall(const bx_report* report) {
    if (!report) return -1;
    return report->rep.overall ? 1 : 0;
}

bx_status bx_report_to_json(const bx_report* report, char** out_text) {
    if (!report || !out_text) return fail(BX_ERR_ARGUMENT, "null argument");
    *out_text = nullptr;
    return guarded([&] {
        std::string text = bairex::report_to_json(report->rep);
        *out_text = copy_string(text);
        if (!*out_text) return fail(BX_ERR_INTERNAL, "out of memory");
        return BX_OK;
    });
}

void bx_report_free(bx_report* report) { delete report; }

bx_status bx_plot_table(const bx_instance* instance, const bx_result* result,
                        char** out_text) {
    if (!instance || !result || !out_text) return fail(BX_ERR_ARGUMENT, "null argument");
    *out_text = nullptr;
    return guarded([&] {
        std::string text = bairex::plot_table(instance->inst, result->out);
        *out_text = copy_string(text);
        if (!*out_text) return fail(BX_ERR_INTERNAL, "out of memory");
        return BX_OK;
    });
}

void bx_string_free(char* text) { std::free(text); }

}  // extern "C"
