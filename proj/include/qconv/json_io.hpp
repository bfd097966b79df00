#ifndef QCONV_JSON_IO_HPP
#define QCONV_JSON_IO_HPP

#include <string>
#include <vector>

#include "json.hpp"

#include "qconv/convolution.hpp"
#include "qconv/inequalities.hpp"

namespace qconv {

using Json = nlohmann::json;

inline constexpr const char* kToolVersion = "1.0.0";

// What a top-level input object describes, decided by its keys.
enum class InputKind { spec, group, ring, structure, theta_swap };

InputKind detect_input(const Json& j);

// All parsers throw InvalidInput with a message naming the offending field.
SpecPtr parse_spec(const Json& j);
Element parse_element(const SpecPtr& spec, const Json& j);
GroupTable parse_group(const Json& j);
FusionRing parse_ring(const Json& j);
ConvolutionStructure parse_structure(const Json& j);
Antipode parse_antipode(const SpecPtr& spec, const Json& j);

Json load_json_file(const std::string& path);

Json spec_json(const AlgebraSpec& spec);
Json element_json(const Element& x);
Json ring_json(const FusionRing& R);
Json validation_json(const RingValidation& v);
Json criterion_json(const CriterionReport& r);
Json axiom_report_json(const AxiomReport& r);
Json inequality_report_json(const InequalityReport& r);

struct RunManifest {
  std::string command;
  std::vector<std::string> inputs;
  std::uint64_t seed = 0;
  double tol = 1e-9;
  int threads = 1;
  int samples = 0;
  int budget = 0;
  std::string format = "json";
};

Json manifest_json(const RunManifest& m);

// Deterministic dump: sorted object keys (nlohmann's ordering) and every
// float printed with 17 significant digits so values round-trip exactly.
std::string dump_json(const Json& j, int indent = 2);

// Human-readable rendering of a report object.
std::string render_markdown(const Json& j);

}  // namespace qconv

#endif
