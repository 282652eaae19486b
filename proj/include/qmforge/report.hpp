#pragma once

#include <string>

#include <json.hpp>

#include "qmforge/continuity.hpp"
#include "qmforge/decomposition.hpp"
#include "qmforge/free_product.hpp"
#include "qmforge/overlap_graphs.hpp"
#include "qmforge/quasimorphism.hpp"

namespace qmf {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchemaVersion = "qmforge-report/1";

// every report carries {"schema", "kind"} first
Json envelope(const std::string& kind);

Json to_json(const PieceSeq& s);
Json to_json(const DefectEstimate& e);
Json to_json(const KappaReport& k);
Json to_json(const DeltaTriangle& t);
Json to_json(const AxiomReport& a);
Json to_json(const ContinuityProfile& p);
Json to_json(const GraphMetrics& m);
Json to_json(const Digraph& g);
Json to_json(const OverlapGraphBundle& b, std::size_t exact_limit);
Json to_json(const CoefficientMap& c);
Json to_json(const HomogenizationReport& h);
Json to_json(const StarData& s);
Json to_json(const UlamWitness& u);

Json natural_or_inf(std::size_t n);

}  // namespace qmf
