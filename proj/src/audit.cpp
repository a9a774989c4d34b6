#include <algorithm>
#include <set>

#include "qnet/qsim.hpp"

namespace qnet {

AuditReport secret_sharing_audit(const PureState& snapshot, const std::vector<std::string>& references,
                                 const std::vector<std::string>& significant,
                                 const std::vector<std::string>& unauthorized,
                                 const std::vector<std::string>& rest) {
  std::set<std::string> seen;
  for (const auto* group : {&references, &significant, &unauthorized, &rest}) {
    for (const auto& r : *group) {
      if (!snapshot.has(r)) throw InputError("unknown register '" + r + "' in audit partition");
      if (!seen.insert(r).second) throw InputError("register '" + r + "' listed twice in audit partition");
    }
  }
  for (const auto& l : snapshot.labels()) {
    if (!seen.count(l.name)) throw InputError("audit partition does not cover register '" + l.name + "'");
  }
  std::vector<std::string> shares = significant;
  shares.insert(shares.end(), unauthorized.begin(), unauthorized.end());
  std::vector<std::string> with_ref = shares;
  with_ref.insert(with_ref.end(), references.begin(), references.end());

  AuditReport a;
  // The global state is pure, so the secret's entropy is S(R).
  a.secret_entropy = entropy(snapshot, references);
  a.significant_entropy = entropy(snapshot, significant);
  a.gamma = mutual_info(snapshot, unauthorized, references);
  a.eps_prime = a.secret_entropy - (entropy(snapshot, shares) - entropy(snapshot, with_ref));
  a.bound = a.secret_entropy - (a.eps_prime + a.gamma) / 2;
  a.holds = a.significant_entropy >= a.bound - kEntropyTol;
  return a;
}

AuditReport audit_checkpoint(const RunResult& run, std::string_view label,
                             const std::vector<std::string>& significant_edges,
                             const std::vector<std::string>& unauthorized_edges) {
  auto snap = std::find_if(run.checkpoints.begin(), run.checkpoints.end(),
                           [&](const Snapshot& s) { return s.label == label; });
  if (snap == run.checkpoints.end()) throw InputError("no checkpoint '" + std::string(label) + "'");
  const PureState& st = snap->state;
  std::set<std::string> sig, unauth;
  for (const auto& r : run.ledger.payload(significant_edges)) {
    if (st.has(r)) sig.insert(r);
  }
  for (const auto& r : run.ledger.payload(unauthorized_edges)) {
    if (st.has(r) && !sig.count(r)) unauth.insert(r);
  }
  std::vector<std::string> refs, rest;
  for (const auto& l : st.labels()) {
    if (sig.count(l.name) || unauth.count(l.name)) continue;
    auto it = snap->registers.find(l.name);
    if (it != snap->registers.end() && it->second.reference) {
      refs.push_back(l.name);
    } else {
      rest.push_back(l.name);
    }
  }
  return secret_sharing_audit(st, refs, {sig.begin(), sig.end()}, {unauth.begin(), unauth.end()}, rest);
}

}  // namespace qnet
