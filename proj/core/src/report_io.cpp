#include "regioncert/report_io.hpp"

#include <iomanip>
#include <sstream>

#include "json.hpp"

namespace regioncert {

std::string reports_to_json(const std::vector<CertificateReport>& reports) {
    using nlohmann::json;
    json doc;
    doc["certified"] = any_certified(reports);
    json arr = json::array();
    for (const auto& r : reports) {
        json jr;
        jr["theorem"] = std::string(theorem_name(r.theorem));
        jr["verdict"] = std::string(verdict_name(r.verdict));
        json clauses = json::array();
        for (const auto& c : r.clauses) {
            clauses.push_back({{"name", c.name}, {"pass", c.pass}, {"witness", c.witness}});
        }
        jr["clauses"] = std::move(clauses);
        json splits = json::array();
        for (const auto& s : r.split_choices) splits.push_back({{"layer", s.layer}, {"basis_cols", s.basis_cols}});
        jr["splits"] = std::move(splits);
        arr.push_back(std::move(jr));
    }
    doc["reports"] = std::move(arr);
    return doc.dump(2) + "\n";
}

std::string reports_to_table(const std::vector<CertificateReport>& reports) {
    std::ostringstream os;
    os << std::left << std::setw(22) << "theorem" << std::setw(14) << "verdict" << "detail\n";
    for (const auto& r : reports) {
        os << std::setw(22) << theorem_name(r.theorem) << std::setw(14) << verdict_name(r.verdict);
        if (const ClauseResult* f = r.first_failure()) {
            os << f->name << ": " << f->witness;
        } else {
            os << r.clauses.size() << " clauses pass";
        }
        os << '\n';
    }
    return os.str();
}

}  // namespace regioncert
