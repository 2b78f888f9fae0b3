#include "quatlat/report.hpp"

#include <sstream>

#include "quatlat/class_numbers.hpp"
#include "quatlat/quaternion.hpp"

namespace quatlat {

namespace {

std::string nbar_key(const std::vector<int>& nbar) {
    if (nbar.size() == 1) return std::to_string(nbar[0]);
    return std::to_string(nbar[0]) + "," + std::to_string(nbar[1]);
}

Json genus_json(const GenusRecord& g) {
    Json j;
    j["case"] = g.case_id;
    Json labels = Json::array();
    for (const auto& l : g.labels) labels.push_back(l.name);
    j["labels"] = labels;
    j["endomorphism_order"] = g.endo.name;
    j["h"] = static_cast<int64_t>(g.h);
    j["justification"] = g.justification;
    return j;
}

Json count_result_json(const CountResult& r) {
    Json j;
    j["case"] = nbar_key(r.nbar);
    j["p"] = r.p;
    j["o"] = static_cast<int64_t>(r.o_value);
    if (!r.block_counts.empty()) j["block_orbit_counts"] = r.block_counts;
    Json genera = Json::array();
    for (const auto& g : r.genera) genera.push_back(genus_json(g));
    j["genera"] = genera;
    Json trace = Json::array();
    for (const auto& t : r.trace) {
        Json e;
        e["fact"] = t.fact;
        e["source"] = t.source;
        trace.push_back(e);
    }
    j["trace"] = trace;
    return j;
}

} // namespace

Json report_table(int precision) {
    Json j;
    j["schema_version"] = "1";
    j["command"] = "table";
    j["precision"] = precision;
    Json rows = Json::array();
    Json totals;
    for (int p : {2, 3, 5}) {
        TotalsRow row = ssp2_total(p, precision);
        Json r;
        r["p"] = p;
        Json cases = Json::array();
        for (size_t i = 0; i < row.columns.size(); ++i) {
            const auto& col = row.columns[i];
            Json c;
            c["case"] = nbar_key(col.nbar);
            c["coefficient"] = census_columns()[i].coefficient;
            c["value"] = static_cast<int64_t>(col.value);
            c["provenance"] = col.provenance;
            cases.push_back(c);
        }
        r["cases"] = cases;
        r["constant_term"] = 2;  // o(1) + o(2)
        r["total"] = static_cast<int64_t>(row.total);
        rows.push_back(r);
        totals[std::to_string(p)] = static_cast<int64_t>(row.total);
    }
    j["rows"] = rows;
    j["totals"] = totals;
    return j;
}

Json report_case(const std::vector<int>& nbar, int p, int precision) {
    Json j;
    j["schema_version"] = "1";
    j["command"] = "count";
    j["precision"] = precision;
    CaseValue cv = case_value(nbar, p, precision);
    j["case"] = nbar_key(cv.nbar);
    j["p"] = p;
    j["o"] = static_cast<int64_t>(cv.value);
    j["provenance"] = cv.provenance;
    if (!cv.details.empty()) j["detail"] = count_result_json(cv.details.front());
    return j;
}

Json report_units(int p) {
    Json j;
    j["schema_version"] = "1";
    j["command"] = "units";
    j["p"] = p;
    ZOrder o = maximal_order(p);
    auto units = unit_group(o);
    j["unit_order"] = units.size();
    Json list = Json::array();
    for (const auto& u : units) {
        std::ostringstream os;
        os << "(" << u.c[0] << ", " << u.c[1] << ", " << u.c[2] << ", " << u.c[3] << ")";
        list.push_back(os.str());
    }
    j["units_in_1_i_j_ij_coordinates"] = list;
    Json images = Json::array();
    auto img_json = [](const UnitImageReport& r) {
        Json e;
        e["target"] = r.target;
        e["target_order"] = r.target_order;
        e["image_order"] = r.image_order;
        e["kernel_order"] = r.kernel_order;
        e["kernel_is_pm1"] = r.kernel_is_pm1;
        e["surjective"] = r.surjective;
        e["index"] = r.index;
        return e;
    };
    if (p == 2) images.push_back(img_json(unit_image_in_order_units(2)));
    images.push_back(img_json(unit_image_in_residue_units(p)));
    j["images"] = images;
    j["serre_kernel_check"] = serre_kernel_check(p);
    return j;
}

std::string render_table_markdown(const Json& t) {
    std::ostringstream os;
    os << "| p |";
    for (const auto& c : t["rows"][0]["cases"]) os << " o(" << c["case"].get<std::string>() << ") |";
    os << " total |\n|---|";
    for (size_t i = 0; i < t["rows"][0]["cases"].size(); ++i) os << "---|";
    os << "---|\n";
    for (const auto& row : t["rows"]) {
        os << "| " << row["p"].get<int>() << " |";
        for (const auto& c : row["cases"]) {
            os << " " << c["value"].get<int64_t>();
            if (c["provenance"].get<std::string>() == "computed") os << "*";
            os << " |";
        }
        os << " " << row["total"].get<int64_t>() << " |\n";
    }
    os << "\n`*` = computed here; unstarred entries come from the published table.\n";
    os << "total = 2 + 2 o(3) + o(4) + 2 o(5) + o(8) + o(12) + o(1,2) + 2 o(2,3) + 2 o(2,4) + 2 "
          "o(2,6) + 2 o(3,4) + o(3,6)\n";
    return os.str();
}

std::string render_case_markdown(const Json& r) {
    std::ostringstream os;
    os << "o(" << r["case"].get<std::string>() << ") at p = " << r["p"].get<int>() << ": "
       << r["o"].get<int64_t>() << "  [" << r["provenance"].get<std::string>() << "]\n";
    if (r.contains("detail")) {
        const auto& d = r["detail"];
        if (d.contains("block_orbit_counts")) {
            os << "  per-Delta orbit counts:";
            for (const auto& b : d["block_orbit_counts"]) os << " " << b.get<int>();
            os << "\n";
        }
        os << "  genera:\n";
        for (const auto& g : d["genera"]) {
            os << "    - ";
            for (const auto& l : g["labels"]) os << l.get<std::string>() << " ";
            os << "| End = " << g["endomorphism_order"].get<std::string>()
               << " | h = " << g["h"].get<int64_t>() << "\n";
            os << "      " << g["justification"].get<std::string>() << "\n";
        }
        os << "  trace:\n";
        for (const auto& t : d["trace"])
            os << "    - " << t["fact"].get<std::string>() << "  ["
               << t["source"].get<std::string>() << "]\n";
    }
    return os.str();
}

std::string render_units_markdown(const Json& r) {
    std::ostringstream os;
    os << "unit group of the maximal order at p = " << r["p"].get<int>() << ": order "
       << r["unit_order"].get<int>() << "\n";
    os << "units (coordinates in 1, i, j, ij):\n";
    for (const auto& u : r["units_in_1_i_j_ij_coordinates"])
        os << "  " << u.get<std::string>() << "\n";
    for (const auto& img : r["images"]) {
        os << "image in " << img["target"].get<std::string>() << ": order "
           << img["image_order"].get<int>() << " of " << img["target_order"].get<int>()
           << (img["surjective"].get<bool>() ? " (surjective)" : "")
           << ", kernel order " << img["kernel_order"].get<int>() << ", index "
           << img["index"].get<int>() << "\n";
    }
    os << "finite-order units congruent to 1 mod p are +-1: "
       << (r["serre_kernel_check"].get<bool>() ? "yes" : "NO") << "\n";
    return os.str();
}

} // namespace quatlat
