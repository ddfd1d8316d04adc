#ifndef RDF_REPORT_HPP_
#define RDF_REPORT_HPP_

#include <string>

namespace rdf {

/// Outcome of one exact check. `detail` holds the residual or a reason.
struct Report {
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0;  // wall time, filled in by the suites
};

}  // namespace rdf

#endif  // RDF_REPORT_HPP_
