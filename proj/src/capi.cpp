#include "evodrh.h"

#include <cmath>
#include <string>

#include "evodrh/pipeline.hpp"

using namespace evodrh;

struct evodrh_config {
    RunConfig cfg;
};
struct evodrh_result {
    FiltrationResult result;
};

namespace {

thread_local std::string g_last_error;

evodrh_status status_of(ErrorCode code) {
    switch (code) {
        case ErrorCode::InvalidArgument: return EVODRH_ERR_INVALID_ARGUMENT;
        case ErrorCode::Parse: return EVODRH_ERR_PARSE;
        case ErrorCode::Io: return EVODRH_ERR_IO;
        case ErrorCode::Resource: return EVODRH_ERR_RESOURCE;
        case ErrorCode::Solver: return EVODRH_ERR_SOLVER;
        case ErrorCode::OracleMismatch: return EVODRH_ERR_ORACLE_MISMATCH;
        case ErrorCode::Internal: return EVODRH_ERR_INTERNAL;
    }
    return EVODRH_ERR_INTERNAL;
}

template <typename Fn>
evodrh_status guarded(Fn&& fn) {
    try {
        fn();
        g_last_error.clear();
        return EVODRH_OK;
    } catch (const Error& e) {
        g_last_error = e.what();
        return status_of(e.code());
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return EVODRH_ERR_INTERNAL;
    } catch (...) {
        g_last_error = "unknown error";
        return EVODRH_ERR_INTERNAL;
    }
}

} // namespace

extern "C" {

const char* evodrh_version(void) { return "0.1.0"; }

const char* evodrh_last_error(void) { return g_last_error.c_str(); }

evodrh_config* evodrh_config_create(void) { return new (std::nothrow) evodrh_config; }

void evodrh_config_destroy(evodrh_config* cfg) { delete cfg; }

evodrh_status evodrh_config_set(evodrh_config* cfg, const char* key,
                                const char* value) {
    if (!cfg || !key || !value) {
        g_last_error = "null argument";
        return EVODRH_ERR_INVALID_ARGUMENT;
    }
    return guarded([&] { cfg->cfg.set(key, value); });
}

evodrh_status evodrh_config_load_file(evodrh_config* cfg, const char* path) {
    if (!cfg || !path) {
        g_last_error = "null argument";
        return EVODRH_ERR_INVALID_ARGUMENT;
    }
    return guarded([&] {
        RunConfig loaded = RunConfig::from_file(path);
        cfg->cfg = loaded;
    });
}

evodrh_status evodrh_run_sweep(const evodrh_config* cfg, evodrh_result** out) {
    if (!cfg || !out) {
        g_last_error = "null argument";
        return EVODRH_ERR_INVALID_ARGUMENT;
    }
    *out = nullptr;
    return guarded([&] {
        auto* r = new evodrh_result;
        try {
            r->result = run_sweep(cfg->cfg);
        } catch (...) {
            delete r;
            throw;
        }
        *out = r;
    });
}

void evodrh_result_destroy(evodrh_result* result) { delete result; }

evodrh_status evodrh_result_emit(const evodrh_result* result, const char* dir) {
    if (!result || !dir) {
        g_last_error = "null argument";
        return EVODRH_ERR_INVALID_ARGUMENT;
    }
    return guarded([&] { emit_outputs(result->result, dir); });
}

double evodrh_result_c_max(const evodrh_result* result) {
    return result ? result->result.c_max : std::nan("");
}

size_t evodrh_result_row_count(const evodrh_result* result) {
    return result ? result->result.rows.size() : 0;
}

evodrh_status evodrh_result_row(const evodrh_result* result, size_t index,
                                double* c, long long betti[3], double fiedler[3]) {
    if (!result || index >= result->result.rows.size()) {
        g_last_error = "row index out of range";
        return EVODRH_ERR_INVALID_ARGUMENT;
    }
    const SpectrumSet& row = result->result.rows[index];
    if (c) *c = row.c;
    if (betti)
        for (int i = 0; i < 3; ++i)
            betti[i] = static_cast<long long>(row.betti[static_cast<std::size_t>(i)]);
    if (fiedler)
        for (int i = 0; i < 3; ++i)
            fiedler[i] = row.fiedler[static_cast<std::size_t>(i)];
    return EVODRH_OK;
}

size_t evodrh_result_interval_count(const evodrh_result* result) {
    return result ? result->result.intervals.size() : 0;
}

evodrh_status evodrh_result_interval(const evodrh_result* result, size_t index,
                                     int* dim, double* birth, double* death,
                                     int* generator) {
    if (!result || index >= result->result.intervals.size()) {
        g_last_error = "interval index out of range";
        return EVODRH_ERR_INVALID_ARGUMENT;
    }
    const Interval& iv = result->result.intervals[index];
    if (dim) *dim = iv.dim;
    if (birth) *birth = iv.birth;
    if (death) *death = iv.death;
    if (generator) *generator = iv.generator;
    return EVODRH_OK;
}

size_t evodrh_result_warning_count(const evodrh_result* result) {
    return result ? result->result.warnings.size() : 0;
}

const char* evodrh_result_warning(const evodrh_result* result, size_t index) {
    if (!result || index >= result->result.warnings.size()) return "";
    return result->result.warnings[index].c_str();
}

} // extern "C"
