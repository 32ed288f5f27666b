#pragma once

#include "preqlat/prequant.hpp"
#include "preqlat/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cctype>
#include <chrono>
#include <cstdint>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

/// Command-line jobs: parsing, presets, dispatch and report rendering.
namespace preqlat::cli {

using nlohmann::json;

inline constexpr const char* kToolName = "preqlat";
inline constexpr const char* kVersion = "1.0.0";

enum ExitCode : int { kOk = 0, kCheckFailure = 1, kInputError = 2 };

struct JobDescriptor {
    std::string command;  ///< cohomology | lattice | verify | examples
    std::string preset;   ///< thurston | torus | surface, empty with --input
    std::string input_path;
    std::string r = "1", a = "1", b = "1";
    std::optional<std::string> c;
    std::string m, omega, g, vol = "1";
    std::string level = "1";
    std::vector<std::string> suites;
    int trials = -1;
    std::uint64_t seed = 42;
    std::string output_path;
    std::string format = "text";

    json to_json() const {
        json j = {{"command", command}, {"format", format}};
        if (!input_path.empty()) j["input"] = input_path;
        if (!output_path.empty()) j["output"] = output_path;
        if (command == "cohomology" || command == "lattice") {
            if (!preset.empty()) j["preset"] = preset;
            if (preset == "thurston") {
                j["r"] = r;
                j["a"] = a;
                j["b"] = b;
                if (c) j["c"] = *c;
            } else if (preset == "torus") {
                j["m"] = m;
                if (!omega.empty()) j["omega"] = omega;
            } else if (preset == "surface") {
                j["g"] = g;
                j["vol"] = vol;
            }
            if (command == "lattice") j["level"] = level;
        }
        if (command == "verify") {
            j["suites"] = suites;
            j["trials"] = trials;
            j["seed"] = std::to_string(seed);
        }
        return j;
    }
};

/// Error carrying the engine that raised it.
class ModuleError : public std::runtime_error {
public:
    ModuleError(std::string module, const std::string& what, bool input)
        : std::runtime_error(what), module_(std::move(module)), input_(input) {}
    const std::string& module() const { return module_; }
    bool is_input_error() const { return input_; }

private:
    std::string module_;
    bool input_;
};

/// Runs f, tagging any exception with the module name.
template <class F>
auto in_module(const std::string& module, F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const ModuleError&) {
        throw;
    } catch (const std::invalid_argument& e) {
        throw ModuleError(module, e.what(), true);
    } catch (const std::domain_error& e) {
        throw ModuleError(module, e.what(), true);
    } catch (const std::exception& e) {
        throw ModuleError(module, e.what(), false);
    }
}

// ---------------------------------------------------------------- parsing

struct ParseResult {
    std::optional<JobDescriptor> job;
    int exit_code = kOk;
    std::string message;  ///< help text or error
};

inline ParseResult parse_job(const std::vector<std::string>& args) {
    JobDescriptor job;
    CLI::App app{"Integral cohomology, integrable cocycle lattices and torus cocycle checks", kToolName};
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);

    std::string seed_text;
    auto add_output = [&](CLI::App* sub) {
        sub->add_option("--format", job.format, "text or json")->check(CLI::IsMember({"text", "json"}));
        sub->add_option("--output", job.output_path, "write the report to this file");
    };
    auto add_problem = [&](CLI::App* sub) {
        sub->add_option("--preset", job.preset, "thurston, torus or surface")
            ->check(CLI::IsMember({"thurston", "torus", "surface"}));
        sub->add_option("--input", job.input_path, "JSON problem file");
        sub->add_option("--r", job.r, "Heisenberg level r (thurston)");
        sub->add_option("--a", job.a, "coefficient a of omega_ab (thurston)");
        sub->add_option("--b", job.b, "coefficient b of omega_ab (thurston)");
        sub->add_option("--c", job.c, "torsion label of the Euler class (thurston)");
        sub->add_option("--m", job.m, "torus dimension (torus)");
        sub->add_option("--omega", job.omega, "symplectic class such as e12+e34 (torus)");
        sub->add_option("--g", job.g, "genus (surface)");
        sub->add_option("--vol", job.vol, "symplectic volume, a positive integer (surface)");
        add_output(sub);
    };

    auto* coh = app.add_subcommand("cohomology", "integral cohomology ring of a preset or presentation");
    add_problem(coh);
    auto* lat = app.add_subcommand("lattice", "lattice of integrable cocycle classes");
    add_problem(lat);
    lat->add_option("--level", job.level, "level k >= 1");
    auto* ver = app.add_subcommand("verify", "seeded randomized identity checks on tori");
    ver->add_option("--suite", job.suites, "suite name (repeatable or comma separated), or all")->delimiter(',');
    ver->add_option("--trials", job.trials, "trials per randomized family");
    ver->add_option("--seed", seed_text, "64-bit seed");
    ver->add_option("--input", job.input_path, "JSON suite descriptor");
    add_output(ver);
    auto* ex = app.add_subcommand("examples", "compare the worked examples with their closed forms");
    add_output(ex);

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        std::ostringstream out, err;
        int code = app.exit(e, out, err);
        if (code == 0) return {std::nullopt, kOk, out.str()};
        return {std::nullopt, kInputError, std::string(kToolName) + ": error [cli]: " + err.str()};
    }
    job.command = app.get_subcommands().front()->get_name();

    try {
        auto given = [&](const char* flag) { return app.get_subcommands().front()->count(flag) > 0; };
        if (job.command == "cohomology" || job.command == "lattice") {
            if (job.preset.empty() == job.input_path.empty())
                throw InputError("give exactly one of --preset or --input");
            const std::vector<std::pair<std::string, std::vector<std::string>>> owners{
                {"thurston", {"--r", "--a", "--b", "--c"}}, {"torus", {"--m", "--omega"}}, {"surface", {"--g", "--vol"}}};
            for (const auto& [preset, flags] : owners)
                for (const auto& f : flags)
                    if (given(f.c_str()) && job.preset != preset)
                        throw InputError(f + " does not apply to " + (job.preset.empty() ? "--input" : "preset " + job.preset));
            if (job.preset == "thurston") {
                if (parse_integer(job.r) <= 0) throw InputError("r must be positive");
                if (parse_integer(job.a) == 0 || parse_integer(job.b) == 0) throw InputError("a and b must be nonzero");
                if (job.c) {
                    Integer c = parse_integer(*job.c);
                    if (c < 0 || c >= parse_integer(job.r)) throw InputError("c must lie in {0, ..., r-1}");
                }
            }
            if (job.preset == "torus") {
                if (job.m.empty()) throw InputError("torus preset needs --m");
                Integer m = parse_integer(job.m);
                if (m < 1 || m > 9) throw InputError("torus dimension must be between 1 and 9");
            }
            if (job.preset == "surface") {
                if (job.g.empty()) throw InputError("surface preset needs --g");
                if (parse_integer(job.g) < 0) throw InputError("genus must be non-negative");
                if (parse_integer(job.vol) <= 0) throw InputError("vol must be a positive integer");
            }
            if (parse_integer(job.level) < 1) throw InputError("level k must be at least 1");
        }
        if (job.command == "verify") {
            if (!seed_text.empty()) {
                if (!detail::all_digits(seed_text) || seed_text.size() > 20) throw InputError("seed must be a 64-bit unsigned integer");
                Integer s = parse_integer(seed_text);
                if (s > Integer(std::numeric_limits<std::uint64_t>::max())) throw InputError("seed exceeds 64 bits");
                job.seed = static_cast<std::uint64_t>(s);
            }
            if (job.trials == 0 || job.trials < -1) throw InputError("trials must be positive");
            for (const auto& s : job.suites)
                if (s != "all" && std::find(verify::suite_names().begin(), verify::suite_names().end(), s) ==
                                      verify::suite_names().end())
                    throw InputError("unknown suite '" + s + "'");
        }
    } catch (const InputError& e) {
        return {std::nullopt, kInputError, std::string(kToolName) + ": error [cli]: " + e.what()};
    }
    return {job, kOk, {}};
}

inline ParseResult parse_job(int argc, const char* const* argv) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return parse_job(args);
}

// ---------------------------------------------------------------- problems

inline json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw InputError("malformed JSON in " + path + ": " + e.what());
    }
}

/// Parses "e12+e34", "2e13-e24", ... into a 2-cochain (1-based indices, single digits).
inline cealg::Cochain parse_two_form(const std::string& text, int dim) {
    cealg::Cochain w(dim, 2);
    std::size_t i = 0;
    auto fail = [&] { return InputError("malformed 2-form '" + text + "'"); };
    bool any = false;
    while (i < text.size()) {
        if (text[i] == ' ') {
            ++i;
            continue;
        }
        std::string coeff;
        if (text[i] == '+' || text[i] == '-') coeff += text[i++];
        while (i < text.size() && text[i] == ' ') ++i;
        while (i < text.size() && (std::isdigit(static_cast<unsigned char>(text[i])) || text[i] == '/')) coeff += text[i++];
        if (i + 2 >= text.size() || text[i] != 'e' || !std::isdigit(static_cast<unsigned char>(text[i + 1])) ||
            !std::isdigit(static_cast<unsigned char>(text[i + 2])))
            throw fail();
        const int p = text[i + 1] - '0', q = text[i + 2] - '0';
        if (p < 1 || p > dim || q < 1 || q > dim || p == q) throw fail();
        i += 3;
        Rational c = 1;
        if (coeff == "-") c = -1;
        else if (!coeff.empty() && coeff != "+") c = parse_rational(coeff.front() == '+' ? coeff.substr(1) : coeff);
        if (p < q) w.add_term({p - 1, q - 1}, c);
        else w.add_term({q - 1, p - 1}, -c);
        any = true;
    }
    if (!any) throw fail();
    return w;
}

/// A manifold, optionally with a symplectic class and the torsion part of the Euler class.
struct Problem {
    std::string description;
    cohom::CohomologyRing ring;
    std::optional<cealg::Cochain> omega_cochain;  ///< cochain-model rings
    std::optional<cohom::CohomologyClass> omega;  ///< direct rings
    std::optional<cealg::Cochain> euler_shift;    ///< torsion cochain added to omega
    std::optional<cohom::IntVector> euler_torsion;
    bool all_torsion_labels = true;
};

/// {"dim": m, "basis": [names], "brackets": [{"i": 1, "j": 2, "c": {"3": "p/q"}}]}, 1-based indices.
inline cealg::LiePresentation presentation_from_json(const json& j) {
    std::vector<std::string> names;
    if (j.contains("basis")) {
        names = j.at("basis").get<std::vector<std::string>>();
        if (j.contains("dim") && j.at("dim").get<int>() != static_cast<int>(names.size()))
            throw InputError("dim does not match the number of basis names");
    } else {
        if (!j.contains("dim")) throw InputError("presentation needs dim or basis");
        const int dim = j.at("dim").get<int>();
        if (dim <= 0) throw InputError("dim must be positive");
        for (int i = 1; i <= dim; ++i) names.push_back("e" + std::to_string(i));
    }
    cealg::LiePresentation L(names);
    const int m = L.dim();
    std::map<std::pair<int, int>, std::map<int, Rational>> br;
    for (const auto& b : j.value("brackets", json::array())) {
        int i = b.at("i").get<int>() - 1, jj = b.at("j").get<int>() - 1;
        if (i < 0 || jj < 0 || i >= m || jj >= m) throw InputError("bracket index out of range");
        if (i == jj) throw InputError("bracket [e_i, e_i] must vanish");
        const int sign = i < jj ? 1 : -1;
        if (i > jj) std::swap(i, jj);
        for (const auto& [key, val] : b.at("c").items()) {
            const Integer k = parse_integer(key);
            if (k < 1 || k > m) throw InputError("bracket target index out of range");
            br[{i, jj}][static_cast<int>(k) - 1] += sign * parse_rational(val.get<std::string>());
        }
    }
    for (const auto& [ij, coeffs] : br) L.set_bracket(ij.first, ij.second, coeffs);
    return L;
}

inline cealg::Cochain two_form_from_json(const json& j, int dim) {
    if (j.is_string()) return parse_two_form(j.get<std::string>(), dim);
    cealg::Cochain w(dim, 2);
    for (const auto& t : j) {
        auto mono = t.at("monomial").get<std::vector<int>>();
        if (mono.size() != 2) throw InputError("omega monomials have two indices");
        int p = mono[0] - 1, q = mono[1] - 1;
        if (p < 0 || q < 0 || p >= dim || q >= dim || p == q) throw InputError("omega index out of range");
        Rational c = parse_rational(t.at("c").get<std::string>());
        if (p < q) w.add_term({p, q}, c);
        else w.add_term({q, p}, -c);
    }
    return w;
}

inline Problem make_problem(const JobDescriptor& job) {
    Problem P;
    if (job.preset == "thurston") {
        const Integer r = parse_integer(job.r), a = parse_integer(job.a), b = parse_integer(job.b);
        P.description = "Thurston-type nilmanifold M_r, r=" + job.r + ", omega = " + job.a + " h*^x* + " + job.b + " z*^p*";
        P.ring = in_module("cohomring", [&] { return cohom::CohomologyRing::from_lie_algebra(cealg::heisenberg_times_line(r)); });
        cealg::Cochain w(4, 2);  // a h*^x* + b z*^p* in the basis (x, p, z, h)
        w.add_term({0, 3}, Rational(-a));
        w.add_term({1, 2}, Rational(-b));
        P.omega_cochain = w;
        if (job.c) {
            cealg::Cochain shift(4, 2);
            shift.add_term({0, 1}, Rational(parse_integer(*job.c)));
            P.euler_shift = shift;
            P.all_torsion_labels = false;
        }
    } else if (job.preset == "torus") {
        const int m = static_cast<int>(parse_integer(job.m));
        P.description = "torus T^" + job.m;
        P.ring = in_module("cohomring", [&] { return cohom::CohomologyRing::torus(m); });
        std::string om = job.omega;
        if (om.empty() && m % 2 == 0)
            for (int i = 1; i < m; i += 2) om += (om.empty() ? "e" : "+e") + std::to_string(i) + std::to_string(i + 1);
        if (!om.empty()) {
            P.omega_cochain = parse_two_form(om, m);
            P.description += ", omega = " + om;
        }
    } else if (job.preset == "surface") {
        const int g = static_cast<int>(parse_integer(job.g));
        P.description = "closed surface of genus " + job.g + ", vol = " + job.vol;
        P.ring = cohom::CohomologyRing::surface(g);
        P.omega = P.ring.make_class(2, {parse_integer(job.vol)});
    } else {
        const json j = load_json(job.input_path);
        P.description = j.value("description", "presentation from " + job.input_path);
        auto L = in_module("cealg", [&] { return presentation_from_json(j); });
        P.ring = in_module("cohomring", [&] { return cohom::CohomologyRing::from_lie_algebra(L, j.value("kind", "nilmanifold")); });
        if (j.contains("omega")) P.omega_cochain = two_form_from_json(j.at("omega"), L.dim());
        if (j.contains("euler_torsion")) {
            cohom::IntVector t;
            for (const auto& s : j.at("euler_torsion")) t.push_back(parse_integer(s.get<std::string>()));
            P.euler_torsion = t;
            P.all_torsion_labels = false;
        }
    }
    return P;
}

// ---------------------------------------------------------------- rendering

/// q*(2pi)^d rendered with a symbolic pi, e.g. 3/(8π), -π^2/2.
inline std::string render(const ExactScalar& s) {
    const int d = s.pi_power();
    Rational q = s.value();
    if (d == 0 || q == 0) return preqlat::to_string(q);
    for (int i = 0; i < std::abs(d); ++i) q = d > 0 ? Rational(q * 2) : Rational(q / 2);
    const std::string pi = std::abs(d) == 1 ? "π" : "π^" + std::to_string(std::abs(d));
    Integer num = numerator(q), den = denominator(q);
    const std::string sign = num < 0 ? "-" : "";
    num = abs(num);
    if (d > 0) {
        std::string top = (num == 1 ? "" : num.str() + "·") + pi;
        return sign + (den == 1 ? top : top + "/" + den.str());
    }
    if (den == 1) return sign + num.str() + "/" + pi;
    return sign + num.str() + "/(" + den.str() + pi + ")";
}

inline std::string pad(std::string s, std::size_t w) {
    // count code points so that π does not skew the columns
    std::size_t len = 0;
    for (unsigned char ch : s)
        if ((ch & 0xC0) != 0x80) ++len;
    if (len < w) s.append(w - len, ' ');
    return s;
}

inline std::string table(const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& rows) {
    std::vector<std::size_t> w(header.size(), 0);
    auto width = [](const std::string& s) {
        std::size_t n = 0;
        for (unsigned char ch : s)
            if ((ch & 0xC0) != 0x80) ++n;
        return n;
    };
    for (std::size_t i = 0; i < header.size(); ++i) w[i] = width(header[i]);
    for (const auto& r : rows)
        for (std::size_t i = 0; i < r.size(); ++i) w[i] = std::max(w[i], width(r[i]));
    std::ostringstream out;
    auto line = [&](const std::vector<std::string>& r) {
        for (std::size_t i = 0; i < r.size(); ++i) out << (i ? "  " : "") << pad(r[i], i + 1 == r.size() ? 0 : w[i]);
        out << "\n";
    };
    line(header);
    std::vector<std::string> rule;
    for (auto x : w) rule.push_back(std::string(x, '-'));
    line(rule);
    for (const auto& r : rows) line(r);
    return out.str();
}

inline std::string group_string(const cohom::GroupSummary& g) {
    std::string s;
    if (g.betti > 0) s = g.betti == 1 ? "Z" : "Z^" + std::to_string(g.betti);
    for (const auto& t : g.torsion) s += (s.empty() ? "" : " + ") + std::string("Z/") + t.str();
    return s.empty() ? "0" : s;
}

// ---------------------------------------------------------------- commands

struct RunResult {
    json report;
    std::string text;
    int exit_code = kOk;
};

inline json cohomology_json(const cohom::CohomologyRing& R) {
    json groups = json::array();
    for (int k = 0; k <= R.top_degree(); ++k) {
        const auto& g = R.group(k);
        json tors = json::array(), rel = json::array();
        json gens = g.free_names;
        for (const auto& t : g.torsion_names) gens.push_back(t);
        for (std::size_t i = 0; i < g.torsion.size(); ++i) {
            tors.push_back(g.torsion[i].str());
            rel.push_back(g.torsion[i].str() + "*(" + g.torsion_names[i] + ") = 0");
        }
        groups.push_back({{"degree", k},
                          {"group", group_string(g)},
                          {"betti", g.betti},
                          {"torsion", tors},
                          {"free_generators", g.free_names},
                          {"torsion_generators", g.torsion_names},
                          {"generators", gens},
                          {"relations", rel}});
    }
    json cups = json::array();
    if (R.top_degree() >= 2) {
        const auto& h1 = R.group(1);
        for (std::size_t i = 0; i < h1.betti; ++i)
            for (std::size_t j = i + 1; j < h1.betti; ++j)
                cups.push_back({{"left", h1.free_names[i]},
                                {"right", h1.free_names[j]},
                                {"product", R.class_name(R.cup(R.free_generator(1, i), R.free_generator(1, j)))}});
    }
    return {{"ring", R.label()}, {"kind", R.kind()}, {"top_degree", R.top_degree()}, {"groups", groups}, {"h1_cup_products", cups}};
}

inline RunResult run_cohomology(const JobDescriptor& job) {
    Problem P = make_problem(job);
    RunResult out;
    out.report["cohomology"] = in_module("cohomring", [&] { return cohomology_json(P.ring); });
    out.report["description"] = P.description;
    std::ostringstream txt;
    txt << P.description << "\n" << P.ring.label() << "\n\n";
    std::vector<std::vector<std::string>> rows;
    for (const auto& g : out.report["cohomology"]["groups"]) {
        std::string gens;
        for (const auto& n : g["free_generators"]) gens += (gens.empty() ? "" : ", ") + n.get<std::string>();
        std::string tors;
        for (std::size_t i = 0; i < g["torsion"].size(); ++i)
            tors += (tors.empty() ? "" : ", ") + g["torsion_generators"][i].get<std::string>() + " (order " +
                    g["torsion"][i].get<std::string>() + ")";
        rows.push_back({"H^" + std::to_string(g["degree"].get<int>()), g["group"], gens, tors});
    }
    txt << table({"degree", "group", "free generators", "torsion generators"}, rows);
    if (!out.report["cohomology"]["h1_cup_products"].empty()) {
        txt << "\ncup products on H^1:\n";
        for (const auto& c : out.report["cohomology"]["h1_cup_products"])
            txt << "  " << c["left"].get<std::string>() << " ⌣ " << c["right"].get<std::string>() << " = "
                << c["product"].get<std::string>() << "\n";
    }
    out.text = txt.str();
    return out;
}

inline RunResult run_lattice(const JobDescriptor& job) {
    Problem P = make_problem(job);
    const auto& R = P.ring;
    const Integer level = parse_integer(job.level);
    return in_module("prequant", [&] {
        prequant::SymplecticClass w;
        if (P.omega) {
            w = prequant::make_symplectic(R, *P.omega);
        } else {
            if (!P.omega_cochain) throw InputError("lattice needs a symplectic class");
            w = prequant::make_symplectic(R, R.reduce(*P.omega_cochain));
        }
        const Rational vol = prequant::liouville_volume(R, w);
        prequant::EulerClass e;
        if (P.euler_shift) e = {R.reduce(*P.omega_cochain + *P.euler_shift), w.n};
        else e = prequant::euler_class(R, w, P.euler_torsion.value_or(cohom::IntVector{}));
        if (e.cls.coords.free != w.omega.coords.free) throw std::logic_error("Euler class has the wrong free part");

        auto lat = prequant::integrable_lattice(R, e, level);
        RunResult out;
        out.report["description"] = P.description;
        json L = prequant::lattice_report(lat, R, P.all_torsion_labels ? prequant::euler_candidates(R, w)
                                                                       : std::vector<prequant::EulerClass>{});
        L["ring"] = R.label();
        L["n"] = w.n;
        L["symplectic_class"] = R.class_name(w.omega);
        L["volume"] = preqlat::to_string(vol);
        L["euler_class"] = R.class_name(e.cls);
        out.report["lattice"] = L;

        std::ostringstream txt;
        txt << P.description << "\n";
        txt << "ring           " << R.label() << "\n";
        txt << "[omega]        " << L["symplectic_class"].get<std::string>() << "  (vol = " << preqlat::to_string(vol)
            << ", n = " << w.n << ")\n";
        txt << "Euler class    " << L["euler_class"].get<std::string>() << "\n";
        txt << "level k        " << level.str() << "\n";
        txt << "prefactor      " << render(lat.prefactor) << "  = (n+1)k/(2π vol)\n";
        txt << "rank           " << lat.rank() << "\n";
        if (lat.rank() == 0) txt << "generators     none (the lattice is {0})\n";
        for (const auto& g : L["generators"]) txt << "generator      " << g["names"].get<std::string>() << "\n";
        if (L.contains("candidates")) {
            txt << "\nper torsion label of the Euler class:\n";
            std::vector<std::vector<std::string>> rows;
            for (const auto& c : L["candidates"]) {
                std::string gens;
                for (const auto& n : c["generators"]) gens += (gens.empty() ? "" : ", ") + n.get<std::string>();
                rows.push_back({c["euler_class"], std::to_string(c["rank"].get<std::size_t>()), gens.empty() ? "-" : gens});
            }
            txt << table({"Euler class", "rank", "generators"}, rows);
        }
        out.text = txt.str();
        return out;
    });
}

inline RunResult run_verify(const JobDescriptor& job_in) {
    JobDescriptor job = job_in;
    if (!job.input_path.empty()) {
        const json d = load_json(job.input_path);
        if (d.contains("suites")) job.suites = d.at("suites").get<std::vector<std::string>>();
        if (d.contains("trials")) job.trials = d.at("trials").get<int>();
        if (d.contains("seed")) {
            const auto& s = d.at("seed");
            job.seed = s.is_string() ? static_cast<std::uint64_t>(parse_integer(s.get<std::string>())) : s.get<std::uint64_t>();
        }
    }
    if (job.suites.empty()) job.suites = {"all"};
    auto rep = in_module("toruscalc", [&] { return verify::run_suites(job.suites, job.seed, job.trials); });
    RunResult out;
    out.report["verify"] = rep.to_json();
    out.report["job"] = job.to_json();
    out.exit_code = rep.ok() ? kOk : kCheckFailure;
    std::ostringstream txt;
    txt << "seed " << job.seed << "\n\n";
    std::vector<std::vector<std::string>> rows;
    for (const auto& f : rep.families)
        rows.push_back({f.name, std::to_string(f.passed) + "/" + std::to_string(f.trials), f.ok() ? "pass" : "FAIL"});
    txt << table({"family", "passed", "status"}, rows);
    for (const auto& f : rep.families)
        if (f.first_failure) txt << "\nfirst failure in " << f.name << ":\n" << f.first_failure->dump(2) << "\n";
    txt << "\n" << (rep.ok() ? "all checks passed" : "some checks FAILED") << "\n";
    out.text = txt.str();
    return out;
}

struct ExampleRow {
    std::string example;
    std::string quantity;
    std::string computed;
    std::string expected;
    bool match = false;
};

inline std::vector<ExampleRow> run_examples_rows() {
    std::vector<ExampleRow> rows;
    auto lattice_of = [](const cohom::CohomologyRing& R, const cohom::CohomologyClass& euler, int n) {
        return prequant::integrable_lattice(R, {euler, n}, 1);
    };
    // surfaces: rank 2g, coefficient 1/(pi vol)
    for (int g = 0; g <= 3; ++g)
        for (int vol : {1, 2, 5}) {
            auto R = cohom::CohomologyRing::surface(g);
            auto w = prequant::make_symplectic(R, R.make_class(2, {vol}));
            auto lat = lattice_of(R, w.omega, w.n);
            const std::string name = "surface g=" + std::to_string(g) + " vol=" + std::to_string(vol);
            rows.push_back({name, "rank", std::to_string(lat.rank()), std::to_string(2 * g), lat.rank() == static_cast<std::size_t>(2 * g)});
            ExactScalar expect(Rational(2, vol), -1);  // 1/(pi vol)
            rows.push_back({name, "coefficient", render(lat.prefactor), render(expect), lat.prefactor == expect});
        }
    // Kaehler tori: the lattice is {0}
    for (int m : {4, 6}) {
        auto R = cohom::CohomologyRing::torus(m);
        std::string om;
        for (int i = 1; i < m; i += 2) om += (om.empty() ? "e" : "+e") + std::to_string(i) + std::to_string(i + 1);
        auto w = prequant::make_symplectic(R, R.reduce(parse_two_form(om, m)));
        auto lat = lattice_of(R, w.omega, w.n);
        rows.push_back({"Kähler T^" + std::to_string(m) + " omega=" + om, "rank", std::to_string(lat.rank()), "0", lat.rank() == 0});
    }
    // Thurston-type nilmanifolds: generator (r/gcd(r,b)) x*, coefficient 3rk/(2 pi a gcd(r,b))
    const int cases[][3] = {{1, 1, 1}, {2, 1, 3}, {2, 1, 2}, {3, 2, 3}, {6, 1, 4}, {6, 3, 4}};
    for (const auto& cs : cases) {
        const Integer r = cs[0], a = cs[1], b = cs[2];
        auto T = prequant::thurston(r, a, b);
        const Integer gg = gcd(r, b), t = r / gg;
        for (Integer c = 0; c < r; ++c) {
            cealg::Cochain w(4, 2), shift(4, 2);
            w.add_term({0, 3}, Rational(-a));
            w.add_term({1, 2}, Rational(-b));
            shift.add_term({0, 1}, Rational(c));
            auto lat = lattice_of(T.ring, T.ring.reduce(w + shift), T.omega.n);
            const std::string name = "Thurston r=" + r.str() + " a=" + a.str() + " b=" + b.str() + " c=" + c.str();
            std::string gen = lat.rank() == 1 ? prequant::generator_name(T.ring, lat.generators[0]) : "rank " + std::to_string(lat.rank());
            std::string expect_gen = (t == 1 ? std::string() : t.str() + "*") + "x*";
            rows.push_back({name, "generator", gen, expect_gen, gen == expect_gen});
            ExactScalar coeff = lat.rank() == 1 ? lat.prefactor * ExactScalar(lat.generators[0][0] * Rational(b)) : ExactScalar();
            ExactScalar expect(Rational(3 * r, a * gg), -1);
            rows.push_back({name, "coefficient", render(coeff), render(expect), coeff == expect});
        }
    }
    return rows;
}

inline RunResult run_examples(const JobDescriptor&) {
    auto rows = in_module("prequant", [] { return run_examples_rows(); });
    RunResult out;
    json arr = json::array();
    bool ok = true;
    std::vector<std::vector<std::string>> trows;
    for (const auto& r : rows) {
        arr.push_back({{"example", r.example}, {"quantity", r.quantity}, {"computed", r.computed}, {"expected", r.expected}, {"match", r.match}});
        trows.push_back({r.example, r.quantity, r.computed, r.expected, r.match ? "ok" : "MISMATCH"});
        ok = ok && r.match;
    }
    out.report["examples"] = {{"rows", arr}, {"all_match", ok}};
    out.text = table({"example", "quantity", "computed", "expected", "status"}, trows) +
               (ok ? "\nall examples match\n" : "\nsome examples do NOT match\n");
    out.exit_code = ok ? kOk : kCheckFailure;
    return out;
}

inline std::string utc_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    std::ostringstream s;
    s << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
    return s.str();
}

/// Dispatches a job.  The report carries tool, version, job echo, the result
/// section and a timestamp, which is the only nondeterministic field.
inline RunResult run(const JobDescriptor& job) {
    RunResult out;
    if (job.command == "cohomology") out = run_cohomology(job);
    else if (job.command == "lattice") out = run_lattice(job);
    else if (job.command == "verify") out = run_verify(job);
    else if (job.command == "examples") out = run_examples(job);
    else throw InputError("unknown command " + job.command);
    out.report["tool"] = kToolName;
    out.report["version"] = kVersion;
    if (!out.report.contains("job")) out.report["job"] = job.to_json();
    out.report["status"] = out.exit_code == kOk ? "ok" : "check_failure";
    out.report["timestamp"] = utc_timestamp();
    return out;
}

/// Report without the timestamp: the part covered by the determinism contract.
inline json deterministic_part(json report) {
    report.erase("timestamp");
    return report;
}

/// Full command-line entry point; returns the process exit code.
inline int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    ParseResult parsed = parse_job(args);
    if (!parsed.job) {
        (parsed.exit_code == kOk ? out : err) << parsed.message << (parsed.message.empty() || parsed.message.back() == '\n' ? "" : "\n");
        return parsed.exit_code;
    }
    const JobDescriptor& job = *parsed.job;
    RunResult res;
    try {
        res = run(job);
    } catch (const ModuleError& e) {
        err << kToolName << ": error [" << e.module() << "]: " << e.what() << "\n";
        return e.is_input_error() ? kInputError : kCheckFailure;
    } catch (const InputError& e) {
        err << kToolName << ": error [cli]: " << e.what() << "\n";
        return kInputError;
    } catch (const json::exception& e) {
        err << kToolName << ": error [cli]: malformed input: " << e.what() << "\n";
        return kInputError;
    } catch (const std::exception& e) {
        err << kToolName << ": error: " << e.what() << "\n";
        return kCheckFailure;
    }
    const std::string body = job.format == "json" ? res.report.dump(2) + "\n" : res.text;
    if (job.output_path.empty()) {
        out << body;
    } else {
        std::ofstream f(job.output_path);
        if (!f) {
            err << kToolName << ": error [cli]: cannot write " << job.output_path << "\n";
            return kInputError;
        }
        f << body;
        out << "report written to " << job.output_path << " (" << res.report["status"].get<std::string>() << ")\n";
    }
    return res.exit_code;
}

}  // namespace preqlat::cli
