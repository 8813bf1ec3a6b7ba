#pragma once

#include "coarsen_tools/experiment.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace coarsen::tools {

struct TableOptions {
  /// epsilon, eig_err, eig_err_norm, sin_theta, gamma1, gamma2 or wall_ms.
  std::string metric = "eig_err";
  /// text or csv.
  std::string format = "text";
};

/// Pivots result rows to one line per (graph, k, ratio) and one column per
/// method. Missing cells are left blank and reported on `warn`; the return
/// value is their count.
std::size_t write_table(std::ostream& out, std::ostream& warn, const std::vector<ResultRow>& rows,
                        const TableOptions& opts);

}  // namespace coarsen::tools
