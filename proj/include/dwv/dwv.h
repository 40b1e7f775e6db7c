/*
 * Copyright 2026 The dwv Authors
 * SPDX-License-Identifier: Apache-2.0
 *
 * C interface to libdwv. All handles are opaque. Functions return a
 * dwv_status; on failure the message is available from
 * dwv_last_error_message() on the calling thread. Strings returned through
 * char** out-parameters are owned by the caller and released with
 * dwv_string_free().
 */

#ifndef DWV_DWV_H
#define DWV_DWV_H

#include <stddef.h>
#include <stdint.h>

#if defined(DWV_BUILDING_LIBRARY)
#define DWV_API __attribute__((visibility("default")))
#else
#define DWV_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum dwv_status {
    DWV_OK = 0,
    DWV_E_INVALID_ARGUMENT = 1,
    DWV_E_UNKNOWN_CATEGORY = 2,
    DWV_E_ALL_ZERO = 3,
    DWV_E_NEGATIVE_WEIGHT = 4,
    DWV_E_EMPTY_INPUT = 5,
    DWV_E_AXIS_MISMATCH = 6,
    DWV_E_EMPTY_SELECTION = 7,
    DWV_E_OUT_OF_RANGE = 8,
    DWV_E_MISSING_BASELINE = 9,
    DWV_E_UNKNOWN_CENSUS_TABLE = 10,
    DWV_E_INVALID_WORLDVIEW = 11,
    DWV_E_BACKEND_UNAVAILABLE = 12,
    DWV_E_INVALID_REQUEST = 13,
    DWV_E_PAYLOAD_UNREADABLE = 14,
    DWV_E_NO_FACE_DETECTED = 15,
    DWV_E_EMPTY_PROMPT = 16,
    DWV_E_UNKNOWN_SESSION = 17,
    DWV_E_UNKNOWN_JOB = 18,
    DWV_E_UNKNOWN_IMAGE = 19,
    DWV_E_JOB_ALREADY_RUNNING = 20,
    DWV_E_CONFIG = 21,
    DWV_E_IO = 22,
    DWV_E_INTERNAL = 99
} dwv_status;

typedef struct dwv_context dwv_context;   /* configuration + backends */
typedef struct dwv_service dwv_service;   /* running HTTP service */
typedef struct dwv_adapter dwv_adapter;   /* running adapter-protocol server */

DWV_API const char* dwv_version(void);
DWV_API const char* dwv_status_name(dwv_status status);
DWV_API const char* dwv_last_error_message(void);
DWV_API void dwv_string_free(char* s);

/* config_path may be NULL for built-in defaults. When apply_env is non-zero,
 * DWV_PORT and DWV_STORE override the service settings. */
DWV_API dwv_status dwv_context_create(const char* config_path, int apply_env, dwv_context** out);
DWV_API void dwv_context_destroy(dwv_context* ctx);

/* Overrides the image store / session log directory. */
DWV_API dwv_status dwv_context_set_store(dwv_context* ctx, const char* path);

DWV_API dwv_status dwv_registry_json(const dwv_context* ctx, char** out_json);
DWV_API dwv_status dwv_census_json(const dwv_context* ctx, char** out_json);

/* worldview: mini-syntax or JSON object text. baseline_json: DistributionSet
 * JSON or NULL. Writes the target DistributionSet JSON. */
DWV_API dwv_status dwv_target_json(const dwv_context* ctx, const char* worldview, const char* baseline_json,
                                   char** out_json);

/* sampler: "stochastic" or "quota". Writes a JSON array of triples. */
DWV_API dwv_status dwv_sample_triples_json(const dwv_context* ctx, const char* target_json, size_t n, uint64_t seed,
                                           const char* sampler, char** out_json);

typedef struct dwv_audit_options {
    const char* prompts_path;
    const char* const* worldviews; /* mini-syntax strings */
    size_t worldview_count;
    size_t count;
    uint64_t seed;
    const char* sampler; /* NULL = stochastic */
    const char* format;  /* "table" or "structured"; NULL = table */
} dwv_audit_options;

/* Writes the rendered report. *all_ok is set to 1 iff no row failed. */
DWV_API dwv_status dwv_audit_run(const dwv_context* ctx, const dwv_audit_options* options, char** out_report,
                                 int* all_ok);

/* Replays a session recorded in the context's store. Writes a JSON report;
 * *identical is 1 iff every image id and distribution matched. */
DWV_API dwv_status dwv_replay_session(const dwv_context* ctx, const char* session_id, char** out_json,
                                      int* identical);

/* Starts the HTTP service in the background. host NULL / port < 0 use the
 * configured values; port 0 picks a free port. */
DWV_API dwv_status dwv_service_start(const dwv_context* ctx, const char* host, int port, dwv_service** out);
DWV_API int dwv_service_port(const dwv_service* service);
DWV_API void dwv_service_stop(dwv_service* service);
DWV_API void dwv_service_destroy(dwv_service* service);

/* Serves the in-process synthetic generator/classifier over the adapter
 * protocol. */
DWV_API dwv_status dwv_adapter_start(const dwv_context* ctx, const char* host, int port, dwv_adapter** out);
DWV_API int dwv_adapter_port(const dwv_adapter* adapter);
DWV_API void dwv_adapter_destroy(dwv_adapter* adapter);

#ifdef __cplusplus
}
#endif

#endif /* DWV_DWV_H */
