#pragma once

#include <string_view>
#include <vector>

#include "aklt/domain_graph.hpp"
#include "aklt/domains.hpp"
#include "aklt/lattice.hpp"
#include "aklt/povm.hpp"

namespace aklt {

/// How a K outcome on a single-site spin-2 domain is read: by_basis maps
/// x, z -> logical X and y -> logical Y; all_x / all_y force one class.
/// phase derives it from the state: the domain's logical X operator carries
/// one factor flip_amplitude(alpha, beta) per lattice edge leaving the domain,
/// so the phi^- measurement is logical Y iff an odd number of those factors
/// are imaginary.
enum class ErrorPolicy { by_basis, all_x, all_y, phase };

/// The phase rule above for domain d.
bool phase_says_y(const Lattice& lattice, const DomainPartition& partition, DomainId d);

std::string_view to_string(ErrorPolicy policy);
ErrorPolicy parse_error_policy(std::string_view name);

struct ErrorPlan {
  std::vector<VertexId> x_vertices;     // ascending
  std::vector<VertexId> y_vertices;     // ascending
  std::vector<SiteId> code_reductions;  // flipped spin-2 sites absorbed by their domain
  ErrorPolicy policy = ErrorPolicy::by_basis;
};

/// Worst case: every spin-2 site is flipped from F to K. Inside each domain the
/// flipped sites are removed in ascending site order as code reductions while
/// more than one site remains; a flipped site that would be the last one
/// becomes an undesired logical measurement on the domain.
ErrorPlan plan_errors(const Lattice& lattice, const DomainPartition& partition, ErrorPolicy policy);

/// Applies the code reductions (bookkeeping only), then treat_x on every
/// surviving x vertex and treat_y on every surviving y vertex, ascending.
void apply_error_plan(DomainGraph& g, const ErrorPlan& plan, const TieBreak& tie_break = lowest_neighbor);

DomainGraph worst_case_reduce(const Lattice& lattice, const PovmConfiguration& config, ErrorPolicy policy,
                              const TieBreak& tie_break = lowest_neighbor);

/// No F -> K flips: the domain graph itself.
DomainGraph best_case_reduce(const Lattice& lattice, const PovmConfiguration& config);

}  // namespace aklt
