// Command-line surface: discover quadratic first integrals of conservative
// Newtonian systems on flat space, verify them numerically, and report the
// bracket algebra.
#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>

#include "qfi/dynamics.hpp"
#include "qfi/parse.hpp"
#include "qfi/pencil.hpp"
#include "qfi/phase.hpp"
#include "qfi/solver.hpp"

using nlohmann::json;
using namespace qfi;

namespace {

constexpr int kExitParse = 2;
constexpr int kExitDimension = 3;
constexpr int kExitVerification = 4;
constexpr int kExitDrift = 5;

struct FamilyRun {
    bool run1 = true, run2 = true, run3 = true;
};

FamilyRun parse_families(const std::string& selector) {
    if (selector == "all" || selector.empty()) return {};
    FamilyRun run{false, false, false};
    for (char c : selector) {
        if (c == '1') run.run1 = true;
        else if (c == '2') run.run2 = true;
        else if (c == '3') run.run3 = true;
        else if (c != ',')
            throw CLI::ValidationError("--families expects a subset of 1,2,3 or 'all'");
    }
    return run;
}

json params_to_json(const std::vector<std::vector<Rational>>& vectors) {
    json out = json::array();
    for (const auto& v : vectors) {
        json row = json::array();
        for (const Rational& q : v) row.push_back(q.get_str());
        out.push_back(row);
    }
    return out;
}

struct Discovery {
    Potential V;
    GeometryConfig g;
    SolutionSpace family1;
    SolutionSpace family2;
    std::vector<ExponentialSolution> family3;
    std::vector<NumericRateCandidate> numeric_rates;
    FamilyRun run;
};

Discovery discover(int dim, const std::string& potential_text, const FamilyRun& run) {
    Discovery d{parse_potential(potential_text, dim), geometry(dim), {}, {}, {}, {}, run};
    if (run.run1) d.family1 = solve_family_t2(d.g, d.V);
    if (run.run2) d.family2 = solve_family_t3(d.g, d.V);
    if (run.run3) {
        const PencilScan scan = critical_rates(build_pencil(d.g, d.V));
        d.family3 = assemble_exp_family(d.g, d.V, scan);
        d.numeric_rates = scan.numeric;
    }
    return d;
}

std::vector<Qfi> all_qfis(const Discovery& d) {
    std::vector<Qfi> out = d.family1.basis;
    out.insert(out.end(), d.family2.basis.begin(), d.family2.basis.end());
    out.insert(out.end(), d.family2.lfi_basis.begin(), d.family2.lfi_basis.end());
    for (const ExponentialSolution& sol : d.family3)
        out.insert(out.end(), sol.qfis.begin(), sol.qfis.end());
    return out;
}

json discovery_to_json(const Discovery& d, const std::string& potential_text) {
    json families = json::array();
    if (d.run.run1) {
        json f;
        f["family"] = 1;
        f["dimension"] = d.family1.basis.size();
        f["params"] = params_to_json(d.family1.param_basis);
        f["basis"] = json::array();
        for (const Qfi& I : d.family1.basis) f["basis"].push_back(json::parse(qfi_to_json(I)));
        families.push_back(f);
    }
    if (d.run.run2) {
        json f;
        f["family"] = 2;
        f["dimension"] = d.family2.basis.size();
        f["params"] = params_to_json(d.family2.param_basis);
        f["basis"] = json::array();
        for (const Qfi& I : d.family2.basis) f["basis"].push_back(json::parse(qfi_to_json(I)));
        f["lfi_dimension"] = d.family2.lfi_basis.size();
        f["lfi_params"] = params_to_json(d.family2.lfi_param_basis);
        f["lfi_basis"] = json::array();
        for (const Qfi& I : d.family2.lfi_basis)
            f["lfi_basis"].push_back(json::parse(qfi_to_json(I)));
        families.push_back(f);
    }
    if (d.run.run3) {
        json f;
        f["family"] = 3;
        size_t total = 0;
        json rates = json::array();
        json basis = json::array();
        json params = json::array();
        for (const ExponentialSolution& sol : d.family3) {
            json r;
            r["lambda2"] = sol.rate.mu.get_str();
            r["kernel_dimension"] = sol.l_basis.size();
            rates.push_back(r);
            for (const Qfi& I : sol.qfis) basis.push_back(json::parse(qfi_to_json(I)));
            total += sol.qfis.size();
            for (const VectorField& l : sol.l_basis) {
                json row = json::array();
                for (const Rational& q : *l.params) row.push_back(q.get_str());
                params.push_back(row);
            }
        }
        f["dimension"] = total;
        f["rates"] = rates;
        f["params"] = params;
        f["basis"] = basis;
        json numeric = json::array();
        for (const NumericRateCandidate& c : d.numeric_rates)
            numeric.push_back({{"lambda2", c.mu}, {"residual", c.residual}});
        f["numeric_rates"] = numeric;
        families.push_back(f);
    }
    json out;
    out["dim"] = d.g.dim;
    out["potential"] = potential_text;
    out["families"] = families;
    return out;
}

void print_family_text(std::ostream& os, const Discovery& d) {
    if (d.run.run1) {
        os << "family 1 (time powers up to t^2): dimension " << d.family1.basis.size() << "\n";
        for (size_t i = 0; i < d.family1.basis.size(); ++i)
            os << "  [" << i + 1 << "] " << canonical_display(d.family1.basis[i]) << "\n";
    }
    if (d.run.run2) {
        os << "family 2 (time powers up to t^3): dimension " << d.family2.basis.size() << "\n";
        for (size_t i = 0; i < d.family2.basis.size(); ++i)
            os << "  [" << i + 1 << "] " << canonical_display(d.family2.basis[i]) << "\n";
        if (!d.family2.lfi_basis.empty()) {
            os << "  degenerate linear first integrals: " << d.family2.lfi_basis.size() << "\n";
            for (size_t i = 0; i < d.family2.lfi_basis.size(); ++i)
                os << "  (lfi " << i + 1 << ") " << canonical_display(d.family2.lfi_basis[i])
                   << "\n";
        }
    }
    if (d.run.run3) {
        if (d.family3.empty()) {
            os << "family 3 (exponential): no critical rates\n";
            for (const NumericRateCandidate& c : d.numeric_rates)
                os << "  non-exact real rate candidate lambda^2 = " << c.mu << " (residual "
                   << c.residual << ")\n";
        } else {
            for (const ExponentialSolution& sol : d.family3) {
                os << "family 3 (exponential): lambda^2 = " << sol.rate.mu.get_str()
                   << ", kernel dimension " << sol.l_basis.size() << "\n";
                for (size_t i = 0; i < sol.qfis.size(); ++i)
                    os << "  [" << i + 1 << "] " << canonical_display(sol.qfis[i]) << "\n";
            }
        }
    }
}

void emit(const json& payload, const std::string& format, const std::string& out_path,
          const std::function<void(std::ostream&)>& text_printer) {
    if (!out_path.empty()) {
        std::ofstream file(out_path);
        if (!file) throw std::runtime_error("cannot write " + out_path);
        file << payload.dump(2) << "\n";
    }
    if (format == "json")
        std::cout << payload.dump(2) << "\n";
    else
        text_printer(std::cout);
}

std::vector<Qfi> load_qfis_from_file(const std::string& path) {
    std::ifstream file(path);
    if (!file) throw std::runtime_error("cannot read " + path);
    json j = json::parse(file);
    std::vector<Qfi> out;
    auto push_qfi = [&out](const json& obj) { out.push_back(qfi_from_json_text(obj.dump())); };
    if (j.is_array()) {
        for (const auto& obj : j) push_qfi(obj);
    } else if (j.contains("families")) {
        for (const auto& family : j.at("families")) {
            for (const auto& obj : family.value("basis", json::array())) push_qfi(obj);
            for (const auto& obj : family.value("lfi_basis", json::array())) push_qfi(obj);
        }
    } else if (j.contains("terms")) {
        push_qfi(j);
    } else {
        throw std::runtime_error("unrecognized integral file layout: " + path);
    }
    return out;
}

// Regular seeded states for a potential: skip seeds whose trajectory comes
// close to the singular radius.
std::vector<std::pair<std::vector<double>, std::vector<double>>> regular_states(
    const Potential& V, unsigned seed, int count, double t_end, double h) {
    std::vector<std::pair<std::vector<double>, std::vector<double>>> states;
    bool singular = false;
    for (const auto& [m, c] : V.expr.terms())
        if (m.r < 0) singular = true;
    int index = 0;
    while (static_cast<int>(states.size()) < count && index < count * 30) {
        std::vector<double> q0, v0;
        seeded_state(seed, index++, V.dim, q0, v0);
        if (singular) {
            const Trajectory probe = integrate(V, q0, v0, t_end, h * 10);
            double r_min = 1e30;
            for (const auto& q : probe.q) {
                double s = 0;
                for (double c : q) s += c * c;
                r_min = std::min(r_min, std::sqrt(s));
            }
            if (probe.truncated || r_min < 0.35) continue;
        }
        states.emplace_back(std::move(q0), std::move(v0));
    }
    return states;
}

int cmd_find(int dim, const std::string& potential_text, const std::string& families,
             const std::string& format, const std::string& out_path) {
    Discovery d = discover(dim, potential_text, parse_families(families));
    emit(discovery_to_json(d, potential_text), format, out_path,
         [&d](std::ostream& os) { print_family_text(os, d); });
    return 0;
}

int cmd_verify(int dim, const std::string& potential_text, const std::string& qfi_source,
               double t_end, double h, int seeds, double tol, unsigned seed,
               const std::string& format, const std::string& out_path) {
    const Potential V = parse_potential(potential_text, dim);
    std::vector<Qfi> qfis;
    if (qfi_source == "auto") {
        Discovery d = discover(dim, potential_text, {});
        qfis = all_qfis(d);
    } else {
        qfis = load_qfis_from_file(qfi_source);
    }
    const auto states = regular_states(V, seed, seeds, t_end, h);
    json results = json::array();
    double max_drift = 0;
    for (size_t s = 0; s < states.size(); ++s) {
        const Trajectory traj = integrate(V, states[s].first, states[s].second, t_end, h);
        for (size_t i = 0; i < qfis.size(); ++i) {
            const double value = drift(qfis[i], traj);
            max_drift = std::max(max_drift, value);
            json row;
            row["qfi"] = i + 1;
            row["seed_index"] = s;
            row["drift"] = value;
            results.push_back(row);
        }
    }
    json payload;
    payload["dim"] = dim;
    payload["potential"] = potential_text;
    payload["qfi_count"] = qfis.size();
    payload["tol"] = tol;
    payload["max_drift"] = max_drift;
    payload["results"] = results;
    emit(payload, format, out_path, [&](std::ostream& os) {
        os << "integrals: " << qfis.size() << ", initial conditions: " << states.size() << "\n";
        for (const auto& row : results)
            os << "  qfi " << row["qfi"] << " seed " << row["seed_index"] << " drift "
               << row["drift"].get<double>() << "\n";
        os << "max drift " << max_drift << " (tol " << tol << ")\n";
    });
    return max_drift <= tol ? 0 : kExitDrift;
}

int cmd_brackets(int dim, const std::string& potential_text, const std::string& set_source,
                 int samples, unsigned seed, const std::string& format,
                 const std::string& out_path) {
    const Potential V = parse_potential(potential_text, dim);
    std::vector<PhaseFunction> set;
    std::vector<std::string> names;
    const auto form = power_law_form(V);
    json identities = json::array();
    if (set_source == "auto" && dim == 3 && form && form->ell == 1) {
        set.push_back(hamiltonian(V));
        names.push_back("H");
        for (int a = 0; a < 3; ++a) {
            set.push_back(angular_momentum(3, a));
            names.push_back("L" + std::to_string(a + 1));
        }
        for (int a = 0; a < 3; ++a) {
            set.push_back(runge_lenz(a, form->k));
            names.push_back("R" + std::to_string(a + 1));
        }
        // {L_a, L_b} = eps_abc L_c, {R_a, L_b} = eps_abc R_c, {R_a, R_b} = -2 eps_abc L_c H
        bool algebra = true;
        for (int a = 0; a < 3 && algebra; ++a) {
            const int b = (a + 1) % 3, c = (a + 2) % 3;
            algebra = poisson_bracket(set[1 + a], set[1 + b]) == set[1 + c] &&
                      poisson_bracket(set[4 + a], set[1 + b]) == set[4 + c];
            PhaseFunction rr = poisson_bracket(set[4 + a], set[4 + b]);
            PhaseFunction expected = set[1 + c] * set[0];
            expected.scale(-2);
            algebra = algebra && rr == expected;
        }
        identities.push_back({{"name", "rotation and Runge-Lenz algebra"}, {"holds", algebra}});
        identities.push_back(
            {{"name", "R.L = 0 and R^2 = k^2 + 2 H L^2"},
             {"holds", relation_check_runge_lenz(V)}});
    } else if (set_source == "auto" && dim == 3 && form && form->ell == -2) {
        set.push_back(hamiltonian(V));
        names.push_back("H");
        for (int a = 0; a < 3; ++a) {
            set.push_back(angular_momentum(3, a));
            names.push_back("L" + std::to_string(a + 1));
        }
        set.push_back(oscillator_tensor(0, 0, form->k));
        names.push_back("B11");
        bool algebra = true;
        for (int a = 0; a < 3 && algebra; ++a) {
            const int b = (a + 1) % 3, c = (a + 2) % 3;
            algebra = poisson_bracket(set[1 + a], set[1 + b]) == set[1 + c];
        }
        identities.push_back({{"name", "rotation algebra"}, {"holds", algebra}});
    } else if (set_source == "auto") {
        set.push_back(hamiltonian(V));
        names.push_back("H");
        Discovery d = discover(dim, potential_text, {true, false, false});
        int counter = 0;
        for (const Qfi& I : d.family1.basis) {
            bool steady = true;
            for (const QfiTerm& t : I.terms)
                if (!(t.time == TimeBasis::poly(0))) steady = false;
            if (!steady) continue;
            set.push_back(phase_from_qfi(I));
            names.push_back("Q" + std::to_string(++counter));
        }
    } else {
        int counter = 0;
        for (const Qfi& I : load_qfis_from_file(set_source)) {
            set.push_back(phase_from_qfi(I));
            names.push_back("I" + std::to_string(++counter));
        }
    }

    const auto involution = involution_check(set);
    const int rank = set.empty() ? 0
                                 : functional_independence(
                                       set, std::max(samples, static_cast<int>(set.size())), seed);
    json payload;
    payload["dim"] = dim;
    payload["potential"] = potential_text;
    payload["set"] = names;
    json matrix = json::array();
    for (const auto& row : involution) {
        json r = json::array();
        for (bool b : row) r.push_back(b);
        matrix.push_back(r);
    }
    payload["involution"] = matrix;
    payload["identities"] = identities;
    payload["independence_rank"] = rank;
    payload["seed"] = seed;
    emit(payload, format, out_path, [&](std::ostream& os) {
        os << "set:";
        for (const auto& n : names) os << ' ' << n;
        os << "\ninvolution matrix (1 = commutes):\n";
        for (size_t i = 0; i < involution.size(); ++i) {
            os << "  " << names[i] << ":";
            for (bool b : involution[i]) os << ' ' << (b ? '1' : '0');
            os << "\n";
        }
        for (const auto& id : identities)
            os << (id["holds"].get<bool>() ? "holds: " : "FAILS: ") << id["name"].get<std::string>()
               << "\n";
        os << "functional independence rank: " << rank << "\n";
    });
    return 0;
}

int cmd_noether(int dim, const std::string& potential_text, const std::string& qfi_source,
                const std::string& format, const std::string& out_path) {
    std::vector<Qfi> qfis;
    if (qfi_source == "auto") {
        Discovery d = discover(dim, potential_text, {});
        qfis = all_qfis(d);
    } else {
        qfis = load_qfis_from_file(qfi_source);
    }
    json payload;
    payload["dim"] = dim;
    payload["potential"] = potential_text;
    json items = json::array();
    std::vector<std::string> lines;
    for (const Qfi& I : qfis) {
        const NoetherGenerator gen = noether_generator(I);
        const Qfi back = qfi_from_generator(gen);
        if (!(back == I)) throw VerificationError("generator read-off failed to round-trip");
        json item;
        item["integral"] = canonical_display(I);
        item["generator"] = display(gen);
        item["qfi"] = json::parse(qfi_to_json(I));
        items.push_back(item);
        lines.push_back(canonical_display(I) + "\n  -> " + display(gen));
    }
    payload["generators"] = items;
    emit(payload, format, out_path, [&](std::ostream& os) {
        for (const auto& line : lines) os << line << "\n";
    });
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"discover and verify quadratic first integrals of conservative systems"};
    app.require_subcommand(1);

    int dim = 3;
    std::string potential_text, families = "all", format = "text", out_path;
    std::string qfi_source = "auto", set_source = "auto";
    double t_end = 10.0, step = 1e-3, tol = 1e-8;
    int seeds = 10, samples = 24;
    unsigned seed = 0;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--dim", dim, "configuration dimension (2 or 3)");
        cmd->add_option("--potential", potential_text, "potential expression, e.g. \"-1/r\"")
            ->required();
        cmd->add_option("--format", format, "text or json")
            ->check(CLI::IsMember({"text", "json"}));
        cmd->add_option("--out", out_path, "also write the JSON report to this file");
    };

    CLI::App* find = app.add_subcommand("find", "solve the three integral families");
    add_common(find);
    find->add_option("--families", families, "subset of 1,2,3 or 'all'");

    CLI::App* verify = app.add_subcommand("verify", "numeric drift check of integrals");
    add_common(verify);
    verify->add_option("--qfi", qfi_source, "'auto' or a JSON file of integrals");
    verify->add_option("--t-end", t_end, "integration window");
    verify->add_option("--step", step, "RK4 step");
    verify->add_option("--seeds", seeds, "number of seeded initial conditions");
    verify->add_option("--tol", tol, "drift tolerance");
    verify->add_option("--seed", seed, "base random seed");

    CLI::App* brackets = app.add_subcommand("brackets", "involution and independence report");
    add_common(brackets);
    brackets->add_option("--set", set_source, "'auto' or a JSON file of integrals");
    brackets->add_option("--samples", samples, "sample points for the independence rank");
    brackets->add_option("--seed", seed, "random seed");

    CLI::App* noether = app.add_subcommand("noether", "print symmetry generators of integrals");
    add_common(noether);
    noether->add_option("--qfi", qfi_source, "'auto' or a JSON file of integrals");

    CLI11_PARSE(app, argc, argv);

    try {
        if (find->parsed()) return cmd_find(dim, potential_text, families, format, out_path);
        if (verify->parsed())
            return cmd_verify(dim, potential_text, qfi_source, t_end, step, seeds, tol, seed,
                              format, out_path);
        if (brackets->parsed())
            return cmd_brackets(dim, potential_text, set_source, samples, seed, format, out_path);
        if (noether->parsed()) return cmd_noether(dim, potential_text, qfi_source, format, out_path);
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitParse;
    } catch (const DimensionError& e) {
        std::cerr << "dimension error: " << e.what() << "\n";
        return kExitDimension;
    } catch (const VerificationError& e) {
        std::cerr << "internal verification failure: " << e.what() << "\n";
        return kExitVerification;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
