// Copyright 2026 The hhminer Authors
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

/* C interface to the hhminer library.
 *
 * Every function that can fail returns an hm_status; on failure the message
 * of the most recent error on the calling thread is available from
 * hm_last_error(). Handles are opaque and owned by the caller, who releases
 * them with the matching *_destroy / *_free function. Strings returned by the
 * library stay valid until the next call on the same handle (or, for
 * hm_last_error, the next failing call on the same thread).
 */

#ifndef HHMINER_HHMINER_H_
#define HHMINER_HHMINER_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define HM_API __declspec(dllexport)
#elif defined(__GNUC__)
#define HM_API __attribute__((visibility("default")))
#else
#define HM_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum hm_status {
  HM_OK = 0,
  HM_ERR_INVALID_ARGUMENT,
  HM_ERR_IO,
  HM_ERR_INVALID_CONFIG,
  HM_ERR_MALFORMED_HAND,
  HM_ERR_UNSUPPORTED_VARIANT,
  HM_ERR_INCONSISTENT_HAND,
  HM_ERR_ILLEGAL_ACTION,
  HM_ERR_UNKNOWN_ACTOR,
  HM_ERR_DUPLICATE_CARD,
  HM_ERR_WRONG_CARD_COUNT,
  HM_ERR_PRE_FLOP_BOARD,
  HM_ERR_WRONG_BOARD_SIZE,
  HM_ERR_OUT_OF_RANGE_INPUT,
  HM_ERR_MISSING_HOLE_CARDS,
  HM_ERR_FOLD_NOT_ALLOWED,
  HM_ERR_ALL_ATTRIBUTES_REMOVED,
  HM_ERR_ARFF_SYNTAX,
  HM_ERR_EMPTY_DATASET,
  HM_ERR_DEGENERATE_FIT,
  HM_ERR_SCHEMA_MISMATCH,
  HM_ERR_TOO_FEW_PROFILES,
  HM_ERR_PROFILE_INCOMPLETE,
  HM_ERR_MODEL_MISMATCH,
  HM_ERR_MISSING_UPSTREAM,
  HM_ERR_INTERNAL
} hm_status;

HM_API const char* hm_version(void);
HM_API const char* hm_status_name(hm_status status);
HM_API const char* hm_last_error(void);

/* Pipeline: configuration plus the file-based mining stages. */
typedef struct hm_pipeline hm_pipeline;

HM_API hm_status hm_pipeline_create(hm_pipeline** out);
HM_API void hm_pipeline_destroy(hm_pipeline* pipeline);
/* "key = value" file; later calls override earlier ones. */
HM_API hm_status hm_pipeline_load_config(hm_pipeline* pipeline, const char* path);
HM_API hm_status hm_pipeline_set(hm_pipeline* pipeline, const char* key, const char* value);
/* Current value of a configuration key, as text. */
HM_API hm_status hm_pipeline_get(hm_pipeline* pipeline, const char* key, const char** value);

HM_API hm_status hm_pipeline_ingest(hm_pipeline* pipeline, const char* const* paths, size_t n_paths);
HM_API hm_status hm_pipeline_extract(hm_pipeline* pipeline);
HM_API hm_status hm_pipeline_cluster_actions(hm_pipeline* pipeline);
HM_API hm_status hm_pipeline_profile(hm_pipeline* pipeline);
HM_API hm_status hm_pipeline_cluster_players(hm_pipeline* pipeline);
HM_API hm_status hm_pipeline_classify(hm_pipeline* pipeline);
/* player may be NULL. */
HM_API hm_status hm_pipeline_predict(hm_pipeline* pipeline, const char* player);
/* street: "preflop", "postflop" or "all"; path may be NULL. */
HM_API hm_status hm_pipeline_export_arff(hm_pipeline* pipeline, const char* street, const char* path);
/* models_dir may be NULL (use the output directory). */
HM_API hm_status hm_pipeline_report(hm_pipeline* pipeline, const char* models_dir);
/* Summary text of the last successful stage. */
HM_API const char* hm_pipeline_summary(const hm_pipeline* pipeline);

/* Writes the models built from the published centroid tables. */
HM_API hm_status hm_write_reference_models(const char* dir);

/* Writes a scripted three-archetype corpus to log_path and the planted
 * labels ("player_id,archetype" lines) to truth_path (may be NULL). */
HM_API hm_status hm_synth_write(const char* log_path, const char* truth_path, uint64_t seed, size_t players,
                                size_t hands);

/* Equity. Cards are text such as "As Kh". */
HM_API hm_status hm_hand_strength(const char* hole, const char* board, int n_opponents, double* out);
HM_API hm_status hm_hand_potential(const char* hole, const char* board, size_t lookahead_cap, uint64_t seed,
                                   double* ppot, double* npot);
HM_API hm_status hm_win_probability(double hs, double ppot, double npot, double* out);
HM_API hm_status hm_preflop_win_prob(const char* hole, int n_opponents, int samples, uint64_t seed, double* out);

/* Fitted mixture model (action or strategy). */
typedef struct hm_model hm_model;

HM_API hm_status hm_model_load(const char* path, hm_model** out);
HM_API void hm_model_free(hm_model* model);
HM_API size_t hm_model_k(const hm_model* model);
HM_API size_t hm_model_n_attributes(const hm_model* model);
HM_API const char* hm_model_id(const hm_model* model);
/* row holds one value per schema attribute; nominal cells carry the value
 * index. */
HM_API hm_status hm_model_assign(const hm_model* model, const double* row, size_t n, size_t* cluster,
                                 double* distance);

#ifdef __cplusplus
}
#endif

#endif /* HHMINER_HHMINER_H_ */
