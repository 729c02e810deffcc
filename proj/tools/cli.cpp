#include "cli.hpp"

#include <CLI11.hpp>

#include <cctype>
#include <cmath>
#include <ctime>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

#include "ncpmap/domain.hpp"
#include "ncpmap/errors.hpp"
#include "ncpmap/families.hpp"
#include "ncpmap/measure.hpp"
#include "ncpmap/serialize.hpp"

namespace ncpmap::cli {

namespace {

class ExprParser {
  public:
    explicit ExprParser(const std::string &text) : s_(text) {}

    double parse() {
        const double v = expr();
        skip_ws();
        if (pos_ != s_.size()) fail("unexpected '" + s_.substr(pos_) + "'");
        return v;
    }

  private:
    [[noreturn]] void fail(const std::string &why) const { throw IoError("bad angle literal '" + s_ + "': " + why); }

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool eat(char c) {
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    double expr() {
        double v = term();
        for (;;) {
            if (eat('+')) v += term();
            else if (eat('-')) v -= term();
            else return v;
        }
    }

    double term() {
        double v = factor();
        for (;;) {
            if (eat('*')) v *= factor();
            else if (eat('/')) v /= factor();
            else return v;
        }
    }

    double factor() {
        if (eat('-')) return -factor();
        if (eat('+')) return factor();
        if (eat('(')) {
            const double v = expr();
            if (!eat(')')) fail("missing ')'");
            return v;
        }
        skip_ws();
        if (s_.compare(pos_, 2, "pi") == 0) {
            pos_ += 2;
            return std::numbers::pi;
        }
        const char *begin = s_.c_str() + pos_;
        char *end = nullptr;
        const double v = std::strtod(begin, &end);
        if (end == begin) fail("expected a number or 'pi'");
        pos_ += static_cast<std::size_t>(end - begin);
        return v;
    }

    std::string s_;
    std::size_t pos_ = 0;
};

std::vector<std::string> split(const std::string &s, char sep) {
    std::vector<std::string> parts;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep)) parts.push_back(cur);
    return parts;
}

std::string read_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open map file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Accepts a bare map document or the output envelope of the map command.
AnyMap map_from_file(const std::string &path) {
    const std::string text = read_file(path);
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error &e) {
        throw IoError(std::string("JSON parse error: ") + e.what());
    }
    if (doc.is_object() && doc.value("command", std::string{}) == "map" && doc.contains("result"))
        return map_from_document(doc["result"]);
    return map_from_document(doc);
}

std::string utc_timestamp() {
    const std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::size_t parse_count(const std::string &s, const std::string &what) {
    try {
        std::size_t used = 0;
        const auto v = std::stoull(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return static_cast<std::size_t>(v);
    } catch (const std::exception &) {
        throw IoError("bad " + what + " '" + s + "'");
    }
}

ScanMode parse_mode(const std::string &spec, std::uint64_t seed) {
    const auto parts = split(spec, ':');
    if (parts.size() == 2 && parts[0] == "grid") return GridMode{static_cast<int>(parse_count(parts[1], "grid resolution"))};
    if ((parts.size() == 2 || parts.size() == 3) && parts[0] == "mc") {
        MonteCarloMode mc{parse_count(parts[1], "sample count"), seed};
        if (parts.size() == 3) mc.seed = parse_count(parts[2], "seed");
        return mc;
    }
    throw IoError("bad --mode '" + spec + "' (expected grid:RES or mc:N[:SEED])");
}

std::array<double, 3> parse_angle_triple(const std::string &spec, const std::string &what) {
    const auto parts = split(spec, ',');
    if (parts.size() != 3) throw IoError("bad " + what + " '" + spec + "' (expected theta,phi,xi)");
    return {parse_angle(parts[0]), parse_angle(parts[1]), parse_angle(parts[2])};
}

struct Common {
    bool no_timestamp = false;
    double cp_tol = kCpTol;
    double physical_tol = kPhysicalTol;
};

struct Output {
    std::string command;
    json config = json::object();
    json result;
};

void emit(const Output &o, const Common &common, std::ostream &out) {
    json doc = {{"command", o.command}, {"config", o.config}, {"result", o.result}};
    if (!common.no_timestamp) doc["timestamp"] = utc_timestamp();
    out << doc.dump(2) << '\n';
}

// ---------------------------------------------------------------------------

struct FamilyArgs {
    std::string family;
    std::string theta = "0";
    double nu = 1.0;
    double q1 = 0.0;
    double q2 = 0.0;
    std::string q_angles = "pi,pi/2,-pi/2";
    std::string eta = "1,1,1";
};

AnyMap build_family(const FamilyArgs &a, json &config) {
    config["family"] = a.family;
    if (a.family == "bncp") return superop_from_choi(bncp_example());
    if (a.family == "identity") return SuperOp{CMat4::identity()};
    if (a.family == "cnot") {
        config["theta"] = a.theta;
        return cnot_intermediate_map(parse_angle(a.theta));
    }
    if (a.family == "cnot-first") {
        config["theta"] = a.theta;
        return cnot_first_map(parse_angle(a.theta));
    }
    if (a.family == "dephasing") {
        config["nu"] = a.nu;
        config["q1"] = a.q1;
        config["q2"] = a.q2;
        return dephasing_intermediate(DephasingModel(a.nu), a.q1, a.q2);
    }
    if (a.family == "controlled-q") {
        config["q"] = a.q_angles;
        config["theta"] = a.theta;
        const auto q = parse_angle_triple(a.q_angles, "--q");
        return controlled_q_intermediate_map({q[0], q[1], q[2], parse_angle(a.theta)});
    }
    if (a.family == "pauli") {
        config["eta"] = a.eta;
        const auto parts = split(a.eta, ',');
        if (parts.size() != 3) throw IoError("bad --eta '" + a.eta + "'");
        return superop_from_choi(pauli_choi({parse_angle(parts[0]), parse_angle(parts[1]), parse_angle(parts[2])}));
    }
    throw IoError("unknown family '" + a.family + "'");
}

void add_family_options(CLI::App *cmd, FamilyArgs &a) {
    cmd->add_option("--family", a.family, "bncp | identity | cnot | cnot-first | dephasing | controlled-q | pauli");
    cmd->add_option("--theta", a.theta, "CNOT or control angle (radians, 'pi/4' literals allowed)");
    cmd->add_option("--nu", a.nu, "dephasing non-Markovianity parameter in (0, 1]");
    cmd->add_option("--q1", a.q1, "dephasing start parameter");
    cmd->add_option("--q2", a.q2, "dephasing end parameter");
    cmd->add_option("--q", a.q_angles, "controlled-Q angles theta,phi,xi");
    cmd->add_option("--eta", a.eta, "Pauli transfer eigenvalues eta1,eta2,eta3");
}

AnyMap load_map(const std::string &file, const FamilyArgs &fam, json &config) {
    if (!file.empty() && !fam.family.empty()) throw IoError("give either a map file or --family, not both");
    if (!file.empty()) {
        config["map_file"] = file;
        return map_from_file(file);
    }
    if (fam.family.empty()) throw IoError("a map file or --family is required");
    return build_family(fam, config);
}

}  // namespace

double parse_angle(const std::string &text) { return ExprParser(text).parse(); }

std::vector<double> parse_grid(const std::string &spec) {
    const auto parts = split(spec, ':');
    if (parts.size() == 4 && parts[0] == "linspace")
        return linspace(parse_angle(parts[1]), parse_angle(parts[2]), parse_count(parts[3], "grid size"));
    if (parts.size() == 4 && parts[0] == "approach") {
        const double center = parse_angle(parts[1]);
        const auto k1 = static_cast<int>(parse_count(parts[2], "exponent"));
        const auto k2 = static_cast<int>(parse_count(parts[3], "exponent"));
        std::vector<double> g;
        for (int k = k1; k <= k2; ++k) g.push_back(center - std::pow(10.0, -k));
        return g;
    }
    if (parts.size() == 1) {
        std::vector<double> g;
        for (const auto &v : split(spec, ',')) g.push_back(parse_angle(v));
        if (g.empty()) throw IoError("empty grid");
        return g;
    }
    throw IoError("bad grid spec '" + spec + "'");
}

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Qubit map analysis: representations, CP classification, positivity domains, measures"};
    app.name("ncpmap");
    app.require_subcommand(1);
    app.fallthrough();
    Common common;
    app.add_flag("--no-timestamp", common.no_timestamp, "omit the timestamp field from JSON output");
    app.add_option("--cp-tol", common.cp_tol, "CP threshold: min Choi eigenvalue >= -tol");
    app.add_option("--physical-tol", common.physical_tol, "state physicality threshold: min eigenvalue >= -tol");

    // classify
    std::string classify_file;
    auto *classify = app.add_subcommand("classify", "CP/NCP verdict for a JSON map document");
    classify->add_option("map", classify_file, "map document")->required();

    // domain
    std::string domain_file, domain_mode = "grid:32", domain_out;
    std::uint64_t domain_seed = 0;
    FamilyArgs domain_family;
    auto *domain = app.add_subcommand("domain", "positivity-domain scan");
    domain->add_option("map", domain_file, "map document (or use --family)");
    add_family_options(domain, domain_family);
    domain->add_option("--mode", domain_mode, "grid:RES or mc:N[:SEED]");
    domain->add_option("--seed", domain_seed, "Monte Carlo seed");
    domain->add_option("--out", domain_out, "CSV output path");

    // measure
    std::string measure_family = "pauli", measure_u = "0,0,0";
    std::size_t measure_n = 1000000;
    std::uint64_t measure_seed = 0;
    unsigned measure_workers = 1;
    auto *measure = app.add_subcommand("measure", "Monte Carlo CP/NCP volume measure");
    measure->add_option("--family", measure_family, "pauli | rotated | unrestricted");
    measure->add_option("--n", measure_n, "number of samples");
    measure->add_option("--seed", measure_seed, "seed");
    measure->add_option("--workers", measure_workers, "worker threads");
    measure->add_option("--u", measure_u, "rotation Rz(phi) Ry(theta) Rz(xi) as theta,phi,xi");

    // scan
    std::string scan_family = "cnot", scan_grid = "approach:pi/4:1:7", scan_q = "pi,pi/2,-pi/2";
    double scan_bound = 1e6;
    auto *scan = app.add_subcommand("scan", "Choi eigenvalue divergence scan of intermediate maps");
    scan->add_option("--family", scan_family, "cnot | controlled-q | identity");
    scan->add_option("--grid", scan_grid, "v1,v2,... | linspace:LO:HI:N | approach:C:K1:K2");
    scan->add_option("--bound", scan_bound, "divergence bound M");
    scan->add_option("--q", scan_q, "controlled-Q angles theta,phi,xi");

    // validate
    std::string validate_file;
    FamilyArgs validate_family;
    ProbeConfig probes;
    auto *validate = app.add_subcommand("validate", "search for a nonempty positivity domain");
    validate->add_option("map", validate_file, "map document (or use --family)");
    add_family_options(validate, validate_family);
    validate->add_option("--probes", probes.ball_samples, "uniform ball samples");
    validate->add_option("--line-points", probes.line_points, "points per fixed line");
    validate->add_option("--seed", probes.seed, "sampling seed");

    // map
    std::string map_rep = "choi";
    FamilyArgs map_family;
    auto *mapcmd = app.add_subcommand("map", "emit the JSON map document of a family member");
    add_family_options(mapcmd, map_family);
    mapcmd->add_option("--rep", map_rep, "choi | superop");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kSuccess : kInputError;
    }

    try {
        Output o;
        if (*classify) {
            o.command = "classify";
            o.config["map_file"] = classify_file;
            const auto map = map_from_file(classify_file);
            const auto *op = std::get_if<SuperOp>(&map);
            if (!op) throw IoError("cannot classify a singular map: its Choi matrix diverges");
            o.config["cp_tol"] = common.cp_tol;
            o.result = to_json(ncpmap::classify(choi_from_superop(*op), common.cp_tol));
        } else if (*domain) {
            o.command = "domain";
            const auto map = load_map(domain_file, domain_family, o.config);
            o.config["mode"] = domain_mode;
            o.config["seed"] = domain_seed;
            const auto mode = parse_mode(domain_mode, domain_seed);
            o.config["physical_tol"] = common.physical_tol;
            const auto report = scan_domain(map, mode, o.config.dump(), common.physical_tol);
            o.result = domain_summary(report);
            json lines = json::array();
            json witnesses = json::array();
            for (const auto &line : detect_fixed_lines(map)) {
                lines.push_back(to_json(line));
                if (line.whole_ball) continue;
                for (int i = 0; i <= 10; ++i) {
                    const BlochVector p = line.at(-1.0 + 0.2 * i);
                    try {
                        const auto phys = is_physical(ncpmap::apply(map, p), common.physical_tol);
                        if (phys.physical) witnesses.push_back(to_json(p));
                    } catch (const DivergentMap &) {
                    }
                }
            }
            o.result["fixed_lines"] = lines;
            o.result["fixed_line_witnesses"] = witnesses;
            if (!domain_out.empty()) {
                o.config["out"] = domain_out;
                export_domain(report, domain_out);
            }
        } else if (*measure) {
            o.command = "measure";
            o.config = {{"family", measure_family}, {"n", measure_n}, {"seed", measure_seed}, {"workers", measure_workers}};
            MeasureFamily fam;
            if (measure_family == "pauli") fam = MeasureFamily::Pauli;
            else if (measure_family == "rotated") fam = MeasureFamily::Rotated;
            else if (measure_family == "unrestricted") fam = MeasureFamily::Unrestricted;
            else throw IoError("unknown measure family '" + measure_family + "'");
            CMat2 u = CMat2::identity();
            if (fam == MeasureFamily::Rotated) {
                o.config["u"] = measure_u;
                const auto ang = parse_angle_triple(measure_u, "--u");
                u = zyz_unitary(ang[0], ang[1], ang[2]);
            }
            o.result = to_json(estimate_measure(fam, u, measure_n, measure_seed, measure_workers));
            // Results must not depend on the worker count.
            o.result.erase("workers");
        } else if (*scan) {
            o.command = "scan";
            o.config = {{"family", scan_family}, {"grid", scan_grid}, {"bound", scan_bound}};
            DivergenceFamilySpec spec;
            if (scan_family == "cnot") spec.kind = DivergenceFamily::Cnot;
            else if (scan_family == "identity") spec.kind = DivergenceFamily::Identity;
            else if (scan_family == "controlled-q") {
                spec.kind = DivergenceFamily::ControlledQ;
                o.config["q"] = scan_q;
                const auto q = parse_angle_triple(scan_q, "--q");
                spec.q_theta = q[0];
                spec.q_phi = q[1];
                spec.q_xi = q[2];
            } else throw IoError("unknown scan family '" + scan_family + "'");
            o.result = to_json(divergence_scan(spec, parse_grid(scan_grid), scan_bound));
        } else if (*validate) {
            o.command = "validate";
            const auto map = load_map(validate_file, validate_family, o.config);
            o.config["probes"] = probes.ball_samples;
            o.config["line_points"] = probes.line_points;
            o.config["seed"] = probes.seed;
            probes.physical_tol = common.physical_tol;
            o.config["physical_tol"] = common.physical_tol;
            o.result = to_json(check_validity(map, probes));
        } else if (*mapcmd) {
            o.command = "map";
            const auto map = build_family(map_family, o.config);
            o.config["rep"] = map_rep;
            if (map_rep != "choi" && map_rep != "superop") throw IoError("--rep must be choi or superop");
            o.result = map_document(map, map_rep == "choi" ? MapRep::Choi : MapRep::Superop);
        }
        emit(o, common, out);
        return kSuccess;
    } catch (const RejectedByTheory &e) {
        err << "rejected: " << e.what() << '\n';
        return kRejectedByTheory;
    } catch (const IoError &e) {
        err << "input error: " << e.what() << '\n';
        return kInputError;
    } catch (const OutOfRange &e) {
        err << "input error: " << e.what() << '\n';
        return kInputError;
    } catch (const OutOfCube &e) {
        err << "input error: " << e.what() << '\n';
        return kInputError;
    } catch (const NotHermitian &e) {
        err << "input error: " << e.what() << '\n';
        return kInputError;
    } catch (const NotUnitary &e) {
        err << "input error: " << e.what() << '\n';
        return kInputError;
    } catch (const Error &e) {
        err << "numerical failure: " << e.what() << '\n';
        return kNumericalFailure;
    }
}

}  // namespace ncpmap::cli
