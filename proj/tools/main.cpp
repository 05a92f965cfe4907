#include "loopfilt/suite.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using json = nlohmann::ordered_json;
using lf::Rat;

namespace {

enum Exit { Ok = 0, ConfigError = 2, Unsupported = 3, PropertyFailure = 4 };

struct ConfigParse : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SessionConfig {
    std::string type = "A";
    int rank = 1;
    std::string twist = "none";
    int n = 0;  // 0: order of the twist
    std::vector<std::string> x;  // empty: origin
    std::string r = "0";
    std::uint64_t seed = 0;
    int samples = 32;
    std::string depth_cap;  // empty: r + 2
    std::vector<std::string> coeffs;
    bool serial = false;

    json to_json() const {
        json j;
        j["type"] = type;
        j["rank"] = rank;
        j["twist"] = twist;
        j["n"] = n;
        j["x"] = x;
        j["r"] = r;
        j["seed"] = seed;
        j["samples"] = samples;
        j["depth_cap"] = depth_cap;
        j["coeffs"] = coeffs;
        return j;
    }
};

void load_config(const std::string& path, SessionConfig& c) {
    std::ifstream in(path);
    if (!in) throw ConfigParse("cannot open config file '" + path + "'");
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigParse(std::string("config file: ") + e.what());
    }
    if (!j.is_object()) throw ConfigParse("config file must hold a JSON object");
    try {
        for (const auto& [key, val] : j.items()) {
            if (key == "type") c.type = val.get<std::string>();
            else if (key == "rank") c.rank = val.get<int>();
            else if (key == "twist") c.twist = val.get<std::string>();
            else if (key == "n") c.n = val.get<int>();
            else if (key == "x") c.x = val.get<std::vector<std::string>>();
            else if (key == "r") c.r = val.get<std::string>();
            else if (key == "seed") c.seed = val.get<std::uint64_t>();
            else if (key == "samples") c.samples = val.get<int>();
            else if (key == "depth_cap") c.depth_cap = val.get<std::string>();
            else if (key == "coeffs") c.coeffs = val.get<std::vector<std::string>>();
            else throw ConfigParse("unknown config key '" + key + "'");
        }
    } catch (const json::type_error& e) {
        throw ConfigParse(std::string("config file: ") + e.what());
    }
}

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(item);
    return out;
}

Rat rat_field(const std::string& name, const std::string& text) {
    try {
        return lf::parse_rat(text);
    } catch (const std::exception& e) {
        throw ConfigParse(name + ": " + e.what());
    }
}

// Validated session objects built from the config.
struct Session {
    SessionConfig cfg;
    lf::TwistedLoopDatum d;
    lf::ApartmentPoint x;
    Rat r, cap;

    explicit Session(const SessionConfig& c) : cfg(c) {
        if (c.type.size() != 1) throw ConfigParse("type must be a single letter");
        if (c.rank < 1) throw ConfigParse("rank must be positive");
        if (c.n < 0) throw ConfigParse("n must be non-negative");
        if (c.samples < 0) throw ConfigParse("samples must be non-negative");
        d = lf::make_loop_datum(c.type[0], c.rank, c.twist, c.n);
        x = lf::origin(d);
        if (!c.x.empty()) {
            if (static_cast<int>(c.x.size()) != d.res_rank)
                throw ConfigParse("x needs " + std::to_string(d.res_rank) + " coordinates for " + d.name);
            for (size_t i = 0; i < c.x.size(); ++i) x.coords[i] = rat_field("x", c.x[i]);
        }
        r = rat_field("r", c.r);
        cap = c.depth_cap.empty() ? Rat(r + 2) : rat_field("depth_cap", c.depth_cap);
        if (cap < r) throw ConfigParse("depth_cap must be at least r");
    }

    lf::GradedElement element(const lf::GradedAlgebra& G) const {
        lf::GradedElement z = lf::zero_element(G, r);
        if (cfg.coeffs.size() != z.coeffs.size())
            throw ConfigParse("element needs " + std::to_string(z.coeffs.size()) + " coefficients at r=" +
                              lf::to_string(r) + ", got " + std::to_string(cfg.coeffs.size()));
        for (size_t i = 0; i < z.coeffs.size(); ++i) {
            try {
                z.coeffs[i] = lf::parse_scalar(cfg.coeffs[i], d.n);
            } catch (const std::exception& e) {
                throw ConfigParse("coeffs: " + std::string(e.what()));
            }
        }
        return z;
    }
};

json rats(const std::vector<Rat>& v) {
    json a = json::array();
    for (const auto& q : v) a.push_back(lf::to_string(q));
    return a;
}

json quotient_json(const lf::TwistedLoopDatum& d, const lf::MPQuotient& q) {
    json j;
    j["total_dim"] = q.total_dim;
    j["spaces"] = json::array();
    for (const auto& s : q.spaces)
        j["spaces"].push_back(
            {{"alpha", s.alpha}, {"level", lf::to_string(s.level)}, {"dim", s.dim()}, {"basis", lf::basis_labels(d.datum, s)}});
    return j;
}

struct Outcome {
    json result;
    bool ok = true;
    std::vector<std::vector<std::string>> table;  // first row is the header
};

Outcome cmd_quotient(const Session& s) {
    Outcome o;
    auto q = lf::mp_quotient(s.d, s.x, s.r);
    o.result = quotient_json(s.d, q);
    o.table.push_back({"alpha", "level", "dim"});
    for (const auto& sp : q.spaces) {
        std::string a;
        for (size_t i = 0; i < sp.alpha.size(); ++i) a += (i ? "," : "") + std::to_string(sp.alpha[i]);
        o.table.push_back({"(" + a + ")", lf::to_string(sp.level), std::to_string(sp.dim())});
    }
    o.table.push_back({"total", "", std::to_string(q.total_dim)});
    return o;
}

Outcome cmd_jumps(const Session& s) {
    Outcome o;
    auto js = lf::jump_set(s.d, s.x, lf::Window{s.r, s.r + 1});
    o.result["window"] = {lf::to_string(s.r), lf::to_string(s.r + 1)};
    o.result["jumps"] = rats(js);
    o.table.push_back({"jump"});
    for (const auto& j : js) o.table.push_back({lf::to_string(j)});
    return o;
}

Outcome cmd_grade(const Session& s) {
    Outcome o;
    lf::GradedAlgebra G(s.d, s.x);
    o.result["components"] = json::array();
    o.table.push_back({"residue", "dim"});
    for (const auto& [j, q] : G.components()) {
        o.result["components"].push_back({{"residue", lf::to_string(j)}, {"dim", q.total_dim}});
        o.table.push_back({lf::to_string(j), std::to_string(q.total_dim)});
    }
    o.result["reductive_quotient_dim"] = lf::reductive_quotient_dim(s.d, s.x);
    return o;
}

Outcome cmd_qmap(const Session& s) {
    Outcome o;
    lf::GradedAlgebra G(s.d, s.x);
    auto inv = lf::invariant_system(s.d.datum);
    auto z = s.element(G);
    auto q = lf::q_xr(G, inv, z);
    o.result["element"] = lf::graded_str(G, z);
    o.result["degrees"] = inv.labels;
    o.result["experimental"] = inv.experimental;
    o.result["q"] = json::parse(q.json(inv));
    o.result["exponent_gate"] = lf::exponent_gate(s.d, inv, s.r);
    o.result["nilpotent"] = lf::is_nilpotent(G, z);
    o.table.push_back({"degree,exponent", "value"});
    for (const auto& [key, val] : q.entries)
        o.table.push_back({inv.labels[key.first] + "," + lf::to_string(key.second), val.str()});
    return o;
}

json basecase_json(const lf::BasecaseReport& rep) { return json::parse(rep.json()); }

Outcome cmd_strata(const Session& s, bool full) {
    Outcome o;
    lf::GradedAlgebra G(s.d, s.x);
    auto inv = lf::invariant_system(s.d.datum);
    auto rep = lf::verify_basecase(G, inv, s.r, s.cfg.samples, s.cfg.seed, !s.cfg.serial);
    json j = basecase_json(rep);
    if (!full) j.erase("samples");
    o.result = j;
    o.ok = rep.all_pass();
    o.table.push_back({"stratum", "count", "checks"});
    for (const auto& st : rep.strata) {
        std::string c;
        if (!st.label.diamond)
            for (int k = 0; k < 5; ++k) c += st.checks[k].fail ? 'F' : '.';
        o.table.push_back({st.label.str(), std::to_string(st.count), c});
    }
    return o;
}

Outcome cmd_destabilize(const Session& s) {
    Outcome o;
    lf::GradedAlgebra G(s.d, s.x);
    auto inv = lf::invariant_system(s.d.datum);
    auto z = s.element(G);
    o.result["element"] = lf::graded_str(G, z);
    bool unstable = lf::unstable_test(G, inv, z);
    o.result["unstable"] = unstable;
    o.table.push_back({"field", "value"});
    o.table.push_back({"unstable", unstable ? "yes" : "no"});
    if (!unstable) return o;
    auto y = lf::destabilize(G, inv, z);
    bool deeper = lf::strictly_deepened(s.d, y, s.r, lf::f_embed(G, z));
    bool sandwich = lf::sandwich_test(s.d, s.x, y, s.r);
    o.result["y"] = rats(y.coords);
    o.result["strictly_deepened"] = deeper;
    o.result["sandwich"] = sandwich;
    o.ok = deeper && sandwich;
    o.table.push_back({"y", y.str()});
    o.table.push_back({"strictly_deepened", deeper ? "yes" : "no"});
    return o;
}

Outcome cmd_deepen(const Session& s) {
    Outcome o;
    auto res = lf::deepening_lp(s.d, s.x, s.r);
    o.result["status"] = lf::to_string(res.status);
    o.result["program"] = res.program.str();
    o.table.push_back({"field", "value"});
    o.table.push_back({"status", lf::to_string(res.status)});
    if (res.status == lf::LPResult::Status::Optimal) {
        bool primal = lf::verify_primal(res.program, res.solution);
        bool dual = lf::verify_dual(res.program, res.solution);
        o.result["s"] = lf::to_string(res.s);
        o.result["y"] = rats(res.y.coords);
        o.result["dual"] = rats(res.solution.dual);
        o.result["primal_verified"] = primal;
        o.result["dual_verified"] = dual;
        o.ok = primal && dual;
        o.table.push_back({"s", lf::to_string(res.s)});
        o.table.push_back({"y", res.y.str()});
    }
    return o;
}

Outcome cmd_align(const Session& s) {
    Outcome o;
    lf::GradedAlgebra G(s.d, s.x);
    auto z = s.element(G);
    if (!lf::is_semisimple(G, z)) throw lf::NotSemisimple("align: element is not semisimple");
    lf::Sampler rng(s.cfg.seed);
    lf::LoopElement F = lf::f_embed(G, z);
    lf::LoopElement W = lf::make_rat(1, 2) * lf::random_lattice_element(G, 0, s.cap - s.r, true, rng);
    lf::LoopElement g1 = lf::exp_ad(s.d, s.x, W, F, s.cap);
    auto res = lf::align_lift(G, z, g1, s.cap);
    bool commutes = lf::loop_bracket(s.d.datum, F, res.g).is_zero();
    o.result["element"] = lf::graded_str(G, z);
    o.result["lift"] = lf::loop_str(s.d.datum, g1);
    o.result["aligned"] = lf::loop_str(s.d.datum, res.g);
    o.result["conjugators"] = res.conjugators.size();
    o.result["commutes"] = commutes;
    o.ok = commutes;
    o.table.push_back({"field", "value"});
    o.table.push_back({"conjugators", std::to_string(res.conjugators.size())});
    o.table.push_back({"commutes", commutes ? "yes" : "no"});
    return o;
}

Outcome cmd_suite(const SessionConfig& c) {
    Outcome o;
    lf::SuiteOptions opt;
    opt.seed = c.seed;
    opt.parallel = !c.serial;
    opt.basecase_samples = c.samples;
    o.result["criteria"] = json::array();
    o.table.push_back({"id", "criterion", "result", "detail"});
    for (const auto& cr : lf::run_suite(opt)) {
        o.result["criteria"].push_back({{"id", cr.id},
                                        {"name", cr.name},
                                        {"pass", cr.pass},
                                        {"checks", cr.checks},
                                        {"failures", cr.failures},
                                        {"detail", cr.detail}});
        o.ok = o.ok && cr.pass;
        o.table.push_back({std::to_string(cr.id), cr.name, cr.pass ? "PASS" : "FAIL", cr.detail});
    }
    return o;
}

void print_table(const std::vector<std::vector<std::string>>& rows) {
    std::vector<size_t> w;
    for (const auto& row : rows)
        for (size_t i = 0; i < row.size(); ++i) {
            if (w.size() <= i) w.push_back(0);
            w[i] = std::max(w[i], row[i].size());
        }
    for (const auto& row : rows) {
        std::string line;
        for (size_t i = 0; i < row.size(); ++i) {
            std::string cell = row[i];
            if (i + 1 < row.size()) cell.resize(w[i], ' ');
            line += (i ? "  " : "") + cell;
        }
        std::cout << line << "\n";
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Moy-Prasad filtrations, graded Lie algebras and their invariant maps"};
    app.require_subcommand(1, 1);
    app.fallthrough();

    std::string config_path, json_path, type, twist, r, x, coeffs, depth_cap;
    int rank = 0, n = -1, samples = -1;
    std::uint64_t seed = 0;
    bool table = false, serial = false;
    app.add_option("--config", config_path, "JSON config file; flags override it");
    app.add_option("--type", type, "Cartan type letter (A-G)");
    app.add_option("--rank", rank, "Rank");
    app.add_option("--twist", twist, "Diagram symmetry: none, swap, triality");
    app.add_option("--n", n, "Order of the loop rotation (0: order of the twist)");
    app.add_option("--x", x, "Apartment point, comma-separated rationals p/q");
    app.add_option("--r", r, "Depth r as p/q");
    auto* seed_opt = app.add_option("--seed", seed, "Sampling seed");
    app.add_option("--samples", samples, "Sample size for strata and verify-basecase");
    app.add_option("--depth-cap", depth_cap, "Truncation depth for align (default r+2)");
    app.add_option("--coeffs", coeffs, "Element of h_r: comma-separated coefficients in the quotient basis");
    app.add_option("--json", json_path, "Also write the JSON report to this path");
    app.add_flag("--table", table, "Print a table instead of JSON");
    app.add_flag("--serial", serial, "Disable parallel sample loops");

    std::vector<std::pair<std::string, std::string>> commands = {
        {"quotient", "Dump the Moy-Prasad quotient k_{x,r}/k_{x,r+}"},
        {"jumps", "Jumps of the filtration in [r, r+1)"},
        {"grade", "Dimensions of the graded pieces h_j"},
        {"qmap", "Bigraded invariants of an element of h_r"},
        {"strata", "Strata met by sampled semisimple elements of h_r"},
        {"destabilize", "Move x so that an unstable element becomes deeper"},
        {"deepen", "Deepening linear program for k_{x,r}"},
        {"align", "Align a conjugated lift of a semisimple element"},
        {"verify-basecase", "Run checks (a)-(e) on sampled semisimple elements"},
        {"suite", "Run all acceptance properties"}};
    for (const auto& [name, help] : commands) app.add_subcommand(name, help);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return ConfigError;
    }
    std::string command = app.get_subcommands().front()->get_name();

    try {
        SessionConfig c;
        if (!config_path.empty()) load_config(config_path, c);
        if (!type.empty()) c.type = type;
        if (rank) c.rank = rank;
        if (!twist.empty()) c.twist = twist;
        if (n >= 0) c.n = n;
        if (!x.empty()) c.x = split_list(x);
        if (!r.empty()) c.r = r;
        if (seed_opt->count()) c.seed = seed;
        if (samples >= 0) c.samples = samples;
        if (!depth_cap.empty()) c.depth_cap = depth_cap;
        if (!coeffs.empty()) c.coeffs = split_list(coeffs);
        c.serial = serial;

        Outcome out;
        if (command == "suite") {
            out = cmd_suite(c);
        } else {
            Session s(c);
            if (command == "quotient") out = cmd_quotient(s);
            else if (command == "jumps") out = cmd_jumps(s);
            else if (command == "grade") out = cmd_grade(s);
            else if (command == "qmap") out = cmd_qmap(s);
            else if (command == "strata") out = cmd_strata(s, false);
            else if (command == "verify-basecase") out = cmd_strata(s, true);
            else if (command == "destabilize") out = cmd_destabilize(s);
            else if (command == "deepen") out = cmd_deepen(s);
            else if (command == "align") out = cmd_align(s);
        }

        json report;
        report["command"] = command;
        report["config"] = c.to_json();
        report["ok"] = out.ok;
        report["result"] = out.result;
        if (!json_path.empty()) {
            std::ofstream f(json_path);
            if (!f) throw ConfigParse("cannot write '" + json_path + "'");
            f << report.dump(2) << "\n";
        }
        if (table)
            print_table(out.table);
        else
            std::cout << report.dump(2) << "\n";
        return out.ok ? Ok : PropertyFailure;
    } catch (const lf::UnsupportedType& e) {
        std::cerr << "unsupported: " << e.what() << "\n";
        return Unsupported;
    } catch (const lf::UnsupportedTypeForInvariants& e) {
        std::cerr << "unsupported: " << e.what() << "\n";
        return Unsupported;
    } catch (const lf::NotADiagramSymmetry& e) {
        std::cerr << "unsupported: " << e.what() << "\n";
        return Unsupported;
    } catch (const lf::NeedsConjugation& e) {
        std::cerr << "unsupported: " << e.what() << "\n";
        return Unsupported;
    } catch (const ConfigParse& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return ConfigError;
    } catch (const lf::InconsistentOracles& e) {
        std::cerr << "property failure: " << e.what() << "\n";
        return PropertyFailure;
    } catch (const lf::NoAlignment& e) {
        std::cerr << "property failure: " << e.what() << "\n";
        return PropertyFailure;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return ConfigError;
    } catch (const std::exception& e) {
        std::cerr << "property failure: " << e.what() << "\n";
        return PropertyFailure;
    }
}
