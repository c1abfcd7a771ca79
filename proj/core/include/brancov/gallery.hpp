#pragma once

#include "brancov/json_io.hpp"

#include <optional>
#include <string>
#include <vector>

namespace brancov {

/// A named example map with its expected facts. Every fixture round-trips
/// through serialization bit-exactly (serialization is canonical).
struct Fixture {
    std::string name;
    std::string description;
    Json map;                            // {"source":..., "target":..., "vertex_map":...}
    std::optional<Json> reference_weight;
    Json expected;                       // verdict and scalar facts, used by tests and CI
    std::optional<std::string> note;
};

/// The fixture gallery: tripod and variants, circle wrappings, the
/// two-circles-with-interval geometry, covers, identity.
const std::vector<Fixture>& gallery();

const Fixture& fixture(const std::string& name);

Json fixture_to_json(const Fixture& f);

}  // namespace brancov
