/*
   Copyright 2026 the reclab authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

/* C interface of the reclab shared library.
 *
 * Conventions:
 *  - every function returns an rl_status; RL_OK (0) means success
 *  - output strings are heap-allocated JSON documents released with
 *    rl_string_free
 *  - rl_last_error() returns a thread-local message for the last failure
 *  - compound inputs (elements, symbols, engine requests) are JSON strings
 *    in the schemas documented in the README; field handles are opaque
 */

#ifndef RECLAB_H
#define RECLAB_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum rl_status {
    RL_OK = 0,
    RL_ERR_PRECISION_EXHAUSTED = 1,
    RL_ERR_NON_INVERTIBLE = 2,
    RL_ERR_NOT_A_SUBFIELD = 3,
    RL_ERR_INVALID_PRIME = 4,
    RL_ERR_WINDOW_OVERFLOW = 5,
    RL_ERR_NOT_LUBIN_TATE = 6,
    RL_ERR_NON_CONVERGENT = 7,
    RL_ERR_NOT_IN_MAXIMAL_IDEAL = 8,
    RL_ERR_ALL_COEFFICIENTS_NON_UNIT = 9,
    RL_ERR_ROOT_NOT_FOUND = 10,
    RL_ERR_AMBIENT_TOO_SMALL = 11,
    RL_ERR_DIVISION_MISMATCH = 12,
    RL_ERR_NO_REPRESENTATION = 13,
    RL_ERR_ANNIHILATOR_VIOLATION = 14,
    RL_ERR_ZERO_ENTRY = 15,
    RL_ERR_AMBIENT_MISMATCH = 16,
    RL_ERR_SHAPE_NOT_SUPPORTED = 17,
    RL_ERR_DOMAIN_VIOLATION = 18,
    RL_ERR_REPRESENTATION_MISMATCH = 19,
    RL_ERR_PLAN_INVALID = 20,
    RL_ERR_INVARIANT_MISSING = 21,
    RL_ERR_TORSION_MISSING = 22,
    RL_ERR_INDEX_MISMATCH = 23,
    RL_ERR_UNRAMIFIED_ASSUMPTION_VIOLATED = 24,
    RL_ERR_CONFIG = 25,
    RL_ERR_BAD_ARGUMENT = 100,
    RL_ERR_INTERNAL = 101
} rl_status;

typedef struct rl_field rl_field;

const char* rl_version(void);
const char* rl_last_error(void);
void rl_string_free(char* s);

/* field construction: JSON descriptor {"p": int, "tower": [{"poly": [...],
 * "kind": "eisenstein"|"unramified"}...]} or the cyclotomic builder */
rl_status rl_field_from_json(const char* desc_json, int prec_p, rl_field** out);
rl_status rl_field_cyclotomic(int64_t p, int n, int prec_p, rl_field** out);
void rl_field_free(rl_field* f);
/* {"p", "degree", "e", "f", "different", "tower": ...} */
rl_status rl_field_info(const rl_field* f, char** out_json);

/* element arithmetic helpers over a field handle; elements are
 * {"coords": [[digit...]...], "precision": int, "denom_exp"?: int} */
rl_status rl_log_eval(const rl_field* f, const char* elem_json, char** out_json);
rl_status rl_elem_op(const rl_field* f, const char* op, const char* a_json, const char* b_json,
                     char** out_json);

/* pairing engines; the request carries everything:
 * {"engine": "ah"|"iwasawa"|"kolyvagin"|"wiles"|"iwasawa-gen"|"ah-higher",
 *  "p", "d", "level", "s"?, "precision"?, "window"?, "dmax"?,
 *  "u"?/"w"?/"g"? (classical), "alpha"?/"x"? (higher), "units"?,
 *  "stronger"?, "xi"?, "g_series"?, "cbar"?, "plan"?: "auto"} */
rl_status rl_pair_eval(const char* request_json, char** out_json);

/* {"n", "p", "rho"?, "h"?, "qS"?} -> plan with m, k, t, kappa, c1, c2 */
rl_status rl_plan(const char* request_json, char** out_json);

/* {"p", "n", "a": elem, "b": elem, "precision"?} over Q_p(zeta_{p^n}) */
rl_status rl_oracle_hilbert(const char* request_json, char** out_json);

/* {"suite", "p"?, "seed"?, "samples"?, "precision"?} -> per-line report */
rl_status rl_check(const char* request_json, char** out_json);

#ifdef __cplusplus
}
#endif

#endif
