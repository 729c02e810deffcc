#include "ncpmap/serialize.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>

#include "ncpmap/errors.hpp"

namespace ncpmap {

double round_sig(double x, int digits) {
    if (!std::isfinite(x) || x == 0.0) return x;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, x);
    return std::strtod(buf, nullptr);
}

namespace {

// JSON has no infinity; divergent values are written as strings.
json number(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    return round_sig(x);
}

}  // namespace

json to_json(const BlochVector &p) { return json::array({number(p.a1), number(p.a2), number(p.a3)}); }

json to_json(const FixedLine &line) {
    if (line.whole_ball) return {{"kind", "ball"}};
    return {{"kind", "line"}, {"axis", to_json(line.axis)}};
}

json to_json(const CMat4 &m) {
    json rows = json::array();
    for (std::size_t r = 0; r < 4; ++r) {
        json row = json::array();
        for (std::size_t c = 0; c < 4; ++c) row.push_back({{"re", number(m(r, c).real())}, {"im", number(m(r, c).imag())}});
        rows.push_back(row);
    }
    return rows;
}

json map_document(const SuperOp &op, MapRep rep) {
    if (rep == MapRep::Superop) return {{"rep", "superop"}, {"matrix", to_json(op.A)}};
    return {{"rep", "choi"}, {"matrix", to_json(reshuffle(op.A))}};
}

json map_document(const SingularMap &m) {
    return {{"singular", true},
            {"family", m.family},
            {"parameter", number(m.parameter)},
            {"invariant_set", to_json(m.invariant_set)}};
}

json map_document(const AnyMap &m, MapRep rep) {
    if (const auto *op = std::get_if<SuperOp>(&m)) return map_document(*op, rep);
    return map_document(std::get<SingularMap>(m));
}

namespace {

double read_number(const json &j, const std::string &where) {
    if (j.is_number()) return j.get<double>();
    throw IoError(where + ": expected a number");
}

BlochVector read_bloch(const json &j, const std::string &where) {
    if (!j.is_array() || j.size() != 3) throw IoError(where + ": expected [a1, a2, a3]");
    return {read_number(j[0], where), read_number(j[1], where), read_number(j[2], where)};
}

}  // namespace

CMat4 matrix_from_json(const json &j) {
    if (!j.is_array() || j.size() != 4) throw IoError("matrix: expected 4 rows");
    CMat4 m;
    for (std::size_t r = 0; r < 4; ++r) {
        const auto &row = j[r];
        if (!row.is_array() || row.size() != 4)
            throw IoError("matrix row " + std::to_string(r) + ": expected 4 entries");
        for (std::size_t c = 0; c < 4; ++c) {
            const auto &e = row[c];
            const std::string where = "matrix[" + std::to_string(r) + "][" + std::to_string(c) + "]";
            if (e.is_number()) {
                m(r, c) = e.get<double>();
            } else if (e.is_object() && e.contains("re")) {
                const double re = read_number(e.at("re"), where + ".re");
                const double im = e.contains("im") ? read_number(e.at("im"), where + ".im") : 0.0;
                m(r, c) = cplx{re, im};
            } else {
                throw IoError(where + ": expected {\"re\": x, \"im\": y}");
            }
        }
    }
    return m;
}

AnyMap map_from_document(const json &doc) {
    if (!doc.is_object()) throw IoError("map document: expected a JSON object");
    if (doc.value("singular", false)) {
        SingularMap m;
        m.family = doc.value("family", std::string{"unknown"});
        if (doc.contains("parameter") && doc["parameter"].is_number()) m.parameter = doc["parameter"].get<double>();
        if (!doc.contains("invariant_set")) throw IoError("singular map: missing invariant_set");
        const auto &set = doc["invariant_set"];
        const std::string kind = set.value("kind", std::string{});
        if (kind == "ball") {
            m.invariant_set = FixedLine{{}, true};
        } else if (kind == "line") {
            if (!set.contains("axis")) throw IoError("invariant_set: missing axis");
            BlochVector axis = read_bloch(set["axis"], "invariant_set.axis");
            const double n = axis.norm();
            if (n == 0.0) throw IoError("invariant_set.axis: zero vector");
            m.invariant_set = FixedLine{(1.0 / n) * axis, false};
        } else {
            throw IoError("invariant_set.kind: expected \"line\" or \"ball\"");
        }
        return m;
    }
    if (!doc.contains("rep") || !doc["rep"].is_string()) throw IoError("map document: missing \"rep\"");
    if (!doc.contains("matrix")) throw IoError("map document: missing \"matrix\"");
    const std::string rep = doc["rep"].get<std::string>();
    const CMat4 m = matrix_from_json(doc["matrix"]);
    if (rep == "superop") return SuperOp{m};
    if (rep == "choi") return superop_from_choi(ChoiMatrix{m});
    throw IoError("map document: \"rep\" must be \"choi\" or \"superop\"");
}

AnyMap map_from_text(const std::string &text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error &e) {
        throw IoError(std::string("JSON parse error: ") + e.what());
    }
    return map_from_document(doc);
}

json to_json(const CPVerdict &v) {
    json eig = json::array();
    for (double e : v.choi_eigenvalues) eig.push_back(number(e));
    return {{"classification", to_string(v.classification)},
            {"eigenvalues", eig},
            {"min_eigenvalue", number(v.min_eigenvalue)}};
}

json to_json(const ValidityVerdict &v) {
    json w = json::array();
    for (const auto &p : v.witnesses) w.push_back(to_json(p));
    return {{"status", to_string(v.status)},
            {"witnesses", w},
            {"sampled_fraction", number(v.sampled_fraction)},
            {"canonical_probes", v.canonical_probes},
            {"canonical_passed", v.canonical_passed},
            {"sampled_probes", v.sampled_probes},
            {"local_probes", v.local_probes},
            {"local_passed", v.local_passed}};
}

json domain_summary(const DomainReport &r) {
    json s = {{"descriptor", r.descriptor},
              {"points", r.points.size()},
              {"in_domain", r.in_domain_count},
              {"fraction", number(r.fraction)}};
    if (r.in_domain_count > 0) {
        s["bounds"] = {{"lower", to_json(r.lower)}, {"upper", to_json(r.upper)}, {"max_radius", number(r.max_radius)}};
    }
    return s;
}

json to_json(const MeasureEstimate &e) {
    return {{"family", e.family},
            {"n", e.n},
            {"seed", e.seed},
            {"cp_fraction", number(e.cp_fraction)},
            {"ncp_fraction", number(e.ncp_fraction)},
            {"ratio", number(e.ratio)},
            {"stderr", number(e.stderr_cp)},
            {"stderr_ratio", number(e.stderr_ratio)},
            {"workers", e.workers}};
}

json to_json(const DivergenceScan &s) {
    json pts = json::array();
    for (const auto &p : s.points)
        pts.push_back({{"parameter", number(p.parameter)},
                       {"max_abs_eigenvalue", number(p.max_abs_eigenvalue)},
                       {"eigenvalue_sum", number(p.eigenvalue_sum)},
                       {"exceeds", p.exceeds}});
    return {{"family", s.family},
            {"bound", number(s.bound)},
            {"points", pts},
            {"sup", number(s.sup)},
            {"bound_exceeded", s.bound_exceeded}};
}

json to_json(const CpBoundednessReport &r) {
    return {{"n", r.n},
            {"violations", r.violations},
            {"min_eigenvalue", number(r.min_eigenvalue)},
            {"max_eigenvalue", number(r.max_eigenvalue)}};
}

}  // namespace ncpmap
