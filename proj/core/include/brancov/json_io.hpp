#pragma once

#include "brancov/expectation.hpp"
#include "brancov/hilbert.hpp"
#include "brancov/index.hpp"
#include "brancov/surjection.hpp"
#include "brancov/weights.hpp"

#include <json.hpp>

#include <memory>
#include <string>

namespace brancov {

using Json = nlohmann::ordered_json;

// ---- complexes -----------------------------------------------------------

/// {"vertices":[...], "simplices":[[...]], "lengths":{"a-b":"3/2"}}
/// Rationals are "p/q" strings; only maximal simplices and non-unit lengths
/// are emitted, so serialization is canonical.
Json complex_to_json(const Complex& cx);
std::shared_ptr<const Complex> complex_from_json(const Json& j);

// ---- maps ------------------------------------------------------------------

struct ParsedMap {
    std::shared_ptr<const Complex> source;
    std::shared_ptr<const Complex> target;
    std::map<std::string, std::string> vertex_map;
};

/// {"source": <complex>, "target": <complex>, "vertex_map": {"y":"x"}}.
/// Accepts either a bare map object or a fixture wrapper carrying "map".
ParsedMap map_from_json(const Json& j);
Json map_to_json(const SimplicialSurjection& p);

// ---- functions -------------------------------------------------------------

/// {"subdivision_level": k, "values": {"vertex": ["re","im"]}}
Json pl_function_to_json(const PLFunction& f, int level = 0);
PLFunction pl_function_from_json(const Complex& cx, const Json& j);
int pl_function_level(const Json& j);

Json piecewise_to_json(const PiecewiseFunction& h);

// ---- weights ----------------------------------------------------------------

/// {"pieces": {"j.k.t": {"vertices": {...}, "edges": {"a-b": [[t,v],...]}}}}
/// Pieces follow the canonical Borel decomposition; a flat
/// {"vertices":..., "edges":...} object is accepted on input.
Json weight_to_json(const WeightFunction& mu, const BorelPartition& partition);
WeightFunction weight_from_json(const SimplicialSurjection& p, const Json& j);

// ---- reports ----------------------------------------------------------------

Json classification_to_json(const Classification& cls, const Complex& source,
                            const Complex& target);
Json strata_to_json(const Stratification& strat, const Complex& target);
Json weight_report_to_json(const WeightReport& report);
Json axiom_report_to_json(const AxiomReport& report);
Json norm_equivalence_to_json(const NormEquivalenceReport& report);
Json index_finite_to_json(const IndexFiniteReport& report, const Complex& source);
Json partition_to_json(const BorelPartition& partition, const SimplicialSurjection& p);
Json index_element_to_json(const IndexElement& m);
Json reconstruction_to_json(const ReconstructionReport& report);
Json quasi_basis_to_json(const QuasiBasis& qb);
Json quasi_basis_report_to_json(const QuasiBasisReport& report);
Json projectivity_to_json(const ProjectivityVerdict& verdict);

}  // namespace brancov
