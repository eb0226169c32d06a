#pragma once

#include <cstdint>
#include <string>

#include "json.hpp"

#include "valkey/pcs.hpp"

namespace valkey {

using nlohmann::json;

json to_json(const ExtValue &v);
json to_json(const Poly &f);
json to_json(const EpsilonReport &r);
json to_json(const SupportSet &s);
json to_json(const AlphaPsi &a);
json to_json(const KeyStatus &k);
json to_json(const LimitCheck &l);
json to_json(const CompleteSetReport &c);
json to_json(const PcsCheck &c);
json to_json(const FixedValueReport &f);
json to_json(const DominantIndex &d);
json to_json(const TypeReport &t);
json to_json(const AgreementReport &a);
json to_json(const SequenceKeysReport &s);

/// The common report document: {operation, inputs, result, certificates,
/// grid-parameters, budget, seed}.
json envelope(const std::string &operation, json inputs, json result, json certificates,
              const std::string &grid_spec, std::size_t budget, std::uint64_t seed);

/// Indented key: value rendering of a report for `--output text`.
std::string render_text(const json &doc);

} // namespace valkey
