#pragma once

#include <optional>
#include <string>

#include "json.hpp"
#include "qnet/eoa.hpp"
#include "qnet/netmodel.hpp"
#include "qnet/polytope.hpp"
#include "qnet/qsim.hpp"
#include "qnet/regions.hpp"
#include "qnet/shallowcert.hpp"

namespace qnet {

/// Insertion-ordered so that output bytes follow construction order.
using Json = nlohmann::ordered_json;

/// Reads a JSON document; parse failures become InputError.
Json read_json_file(const std::string& path);

constexpr const char* kBuiltinPrefix = "builtin:";

// ------------------------------------------------------------------ network

Network network_from_json(const Json& j);
Json network_to_json(const Network& net);
/// "builtin:<name>" or a file path.
Network load_network(const std::string& spec);

// ---------------------------------------------------------------- polytopes

/// {"dim", "halfspaces":[{"a","b"}], "vertices", "provenance"}; the
/// half-spaces written are the facets.
Json polytope_to_json(const RatePolytope& p);
RatePolytope polytope_from_json(const Json& j);
RatePolytope load_polytope(const std::string& path);
/// Vertex rows then facet rows, for plotting.
std::string polytope_csv(const RatePolytope& p);

// -------------------------------------------------------------------- state

/// {"registers":[{"party","name","qubit"}], "amplitudes":[[bits, re, im]]}.
/// Character q of `bits` is the value of qubit q.
Json state_to_json(const PureState& s);
PureState state_from_json(const Json& j);

// ------------------------------------------------------------------ scripts

Json step_to_json(const Step& s);
Step step_from_json(const Json& j);

/// A script file: the script plus the network, scenario and rates it
/// targets, when given.
struct ScriptDocument {
  ProtocolScript script;
  std::optional<Network> network;
  std::optional<Scenario> scenario;
  std::optional<RationalVector> expected_rates;
};

Json script_to_json(const ProtocolScript& script, const std::optional<Network>& network = {},
                    std::optional<Scenario> scenario = {},
                    const std::optional<RationalVector>& expected_rates = {});
ScriptDocument script_from_json(const Json& j);
/// "builtin:<script name>" or a file path.
ScriptDocument load_script(const std::string& spec);

// ------------------------------------------------------------------ reports

Json rational_vector_json(const RationalVector& v);
Json cut_bound_to_json(const Network& net, const CutBound& c);
Json path_to_json(const Network& net, const AdmissiblePath& p);
Json ledger_to_json(const Ledger& l);
Json verify_report_to_json(const VerifyReport& r);
Json certificate_to_json(const Network& net, const ShallowCertificate& c);
Json two_pair_to_json(const Network& net, const TwoPairExact& t);
Json gap_to_json(const GapReport& g);
Json eoa_to_json(const EoaResult& r, const MergingLedger& ledger);

}  // namespace qnet
