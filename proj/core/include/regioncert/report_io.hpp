#pragma once

#include <string>
#include <vector>

#include "regioncert/certificates.hpp"

namespace regioncert {

// Certificate report schema (JSON):
//   { "certified": bool,
//     "reports": [ { "theorem": "relu-deep", "verdict": "refuted",
//                    "clauses": [ { "name": ..., "pass": bool, "witness": ... } ],
//                    "splits":  [ { "layer": 1, "basis_cols": [0, 2] } ] } ] }
std::string reports_to_json(const std::vector<CertificateReport>& reports);

/// Fixed-width text table, one row per theorem followed by its failed clauses.
std::string reports_to_table(const std::vector<CertificateReport>& reports);

}  // namespace regioncert
