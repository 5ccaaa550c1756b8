#pragma once

#include <string>

#include <json.hpp>

#include "cuspcobord/invariants.hpp"
#include "cuspcobord/morse_model.hpp"
#include "cuspcobord/moves.hpp"
#include "cuspcobord/singular_pattern.hpp"

namespace cuspcobord {

using Json = nlohmann::json;

/// Malformed or unexpected JSON input.
class SchemaError : public Error {
 public:
  using Error::Error;
};

Json to_json(const MorseDescriptor& d);
MorseDescriptor descriptor_from_json(const Json& j);

/// Elements without an "id" get fresh "a<k>" / "c<k>" labels.
Json to_json(const SingularPattern& p);
SingularPattern pattern_from_json(const Json& j);

Json to_json(const Move& m);
Move move_from_json(const Json& j);

Json to_json(const MoveTrace& t);
MoveTrace trace_from_json(const Json& j);

Json to_json(const Obstruction& o);

/// {"<id>": 1 | -1, ...}
Json to_json(const SignAssignment& s);
SignAssignment sigma_from_json(const Json& j);

/// Reads and parses a JSON file; SchemaError on I/O or syntax failure.
Json read_json_file(const std::string& path);

}  // namespace cuspcobord
