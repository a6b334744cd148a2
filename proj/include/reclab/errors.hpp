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

#ifndef RECLAB_ERRORS_HPP
#define RECLAB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace reclab {

enum class Errc {
    ok = 0,
    precision_exhausted,
    non_invertible,
    not_a_subfield,
    invalid_prime,
    window_overflow,
    not_lubin_tate,
    non_convergent,
    not_in_maximal_ideal,
    all_coefficients_non_unit,
    root_not_found,
    ambient_too_small,
    division_mismatch,
    no_representation,
    annihilator_violation,
    zero_entry,
    ambient_mismatch,
    shape_not_supported,
    domain_violation,
    representation_mismatch,
    plan_invalid,
    invariant_missing,
    torsion_missing,
    index_mismatch,
    unramified_assumption_violated,
    config_error,
};

const char* errc_name(Errc c);

/// All fallible operations throw Error; the C API translates to status codes.
class Error : public std::runtime_error {
  public:
    Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
    Errc code() const { return code_; }

  private:
    Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

} // namespace reclab

#endif
