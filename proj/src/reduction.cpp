#include "aklt/reduction.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace aklt {

std::string_view to_string(ErrorPolicy policy) {
  switch (policy) {
    case ErrorPolicy::by_basis: return "by_basis";
    case ErrorPolicy::all_x: return "all_x";
    case ErrorPolicy::all_y: return "all_y";
    case ErrorPolicy::phase: return "phase";
  }
  return "unknown";
}

ErrorPolicy parse_error_policy(std::string_view name) {
  if (name == "by_basis") return ErrorPolicy::by_basis;
  if (name == "all_x") return ErrorPolicy::all_x;
  if (name == "all_y") return ErrorPolicy::all_y;
  if (name == "phase") return ErrorPolicy::phase;
  throw std::invalid_argument("unknown error policy '" + std::string(name) + "'");
}

bool phase_says_y(const Lattice& lattice, const DomainPartition& partition, DomainId d) {
  const Basis alpha = partition.basis_of_domain[d];
  int imaginary = 0;
  for (SiteId s : partition.members[d])
    for (SiteId u : lattice.neighbors(s)) {
      const DomainId e = partition.domain_of[u];
      if (e != d && flip_is_imaginary(alpha, partition.basis_of_domain[e])) ++imaginary;
    }
  return imaginary % 2 == 1;
}

ErrorPlan plan_errors(const Lattice& lattice, const DomainPartition& partition, ErrorPolicy policy) {
  ErrorPlan plan;
  plan.policy = policy;
  for (std::size_t d = 0; d < partition.size(); ++d) {
    const auto& members = partition.members[d];
    std::size_t remaining = members.size();
    bool undesired = false;
    for (SiteId s : members) {
      if (lattice.spin2x(s) != 4) continue;
      if (remaining > 1) {
        plan.code_reductions.push_back(s);
        --remaining;
      } else {
        undesired = true;
      }
    }
    if (!undesired) continue;
    bool as_y = false;
    switch (policy) {
      case ErrorPolicy::by_basis: as_y = partition.basis_of_domain[d] == Basis::y; break;
      case ErrorPolicy::all_x: as_y = false; break;
      case ErrorPolicy::all_y: as_y = true; break;
      case ErrorPolicy::phase: as_y = phase_says_y(lattice, partition, static_cast<DomainId>(d)); break;
    }
    (as_y ? plan.y_vertices : plan.x_vertices).push_back(static_cast<VertexId>(d));
  }
  std::sort(plan.code_reductions.begin(), plan.code_reductions.end());
  return plan;
}

void apply_error_plan(DomainGraph& g, const ErrorPlan& plan, const TieBreak& tie_break) {
  if (!plan.code_reductions.empty()) {
    std::vector<VertexId> owner(static_cast<std::size_t>(plan.code_reductions.back()) + 1, -1);
    for (VertexId v : g.vertex_ids())
      for (SiteId s : g.vertex(v).members)
        if (static_cast<std::size_t>(s) < owner.size()) owner[s] = v;
    for (SiteId s : plan.code_reductions)
      if (owner[s] >= 0) --g.vertex(owner[s]).encoded_sites;
  }
  for (VertexId v : plan.x_vertices)
    if (g.contains(v)) apply_treat_x(g, v);
  for (VertexId v : plan.y_vertices)
    if (g.contains(v)) apply_treat_y(g, v, tie_break);
}

DomainGraph worst_case_reduce(const Lattice& lattice, const PovmConfiguration& config, ErrorPolicy policy,
                              const TieBreak& tie_break) {
  const DomainPartition partition = find_domains(lattice, config);
  DomainGraph g = domain_graph(lattice, partition);
  apply_error_plan(g, plan_errors(lattice, partition, policy), tie_break);
  return g;
}

DomainGraph best_case_reduce(const Lattice& lattice, const PovmConfiguration& config) {
  return domain_graph(lattice, find_domains(lattice, config));
}

}  // namespace aklt
