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

#ifndef RECLAB_JSON_IO_HPP
#define RECLAB_JSON_IO_HPP

#include <json.hpp>

#include "reclab/pairing.hpp"

namespace reclab {

using nlohmann::json;

// All numbers serialize in exact digit form: coordinates are little-endian
// base-p digit lists, never floats.

json field_to_json(const LocalField& F);
LocalField field_from_json(const json& j, int prec_p);

json elem_to_json(const FieldElement& x);
FieldElement elem_from_json(const json& j, const LocalField& F);

json laurent_to_json(const LaurentElement& x);
LaurentElement laurent_from_json(const json& j, const LaurentField& fld);

json fgl_to_json(const FormalGroupLaw& G);

json symbol_to_json(const MilnorSymbol& s);
MilnorSymbol symbol_from_json(const json& j, const LaurentField& fld);

json pv_to_json(const PairingValue& v, i64 p);

json plan_to_json(const PairingPlan& plan);

} // namespace reclab

#endif
