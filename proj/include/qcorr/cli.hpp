// cli.hpp
// Command-line front end: state-expression parsing, subcommand dispatch and
// JSON/CSV reporting.
#pragma once

#include "covariance.hpp"
#include "cuts.hpp"
#include "distill.hpp"
#include "named_states.hpp"
#include "postulates.hpp"
#include "serialize.hpp"
#include "work.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace qcorr {

namespace detail {

inline std::string trimmed(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t");
    return s.substr(begin, end - begin + 1);
}

inline QuantumState parse_state_atom(const std::string& atom) {
    if (atom.empty()) throw std::invalid_argument("empty state atom");
    if (atom.front() == '@') return load_state(atom.substr(1));
    const auto colon = atom.find(':');
    const std::string name = atom.substr(0, colon);
    std::map<std::string, double> params;
    if (colon != std::string::npos) {
        std::stringstream rest(atom.substr(colon + 1));
        std::string pair;
        while (std::getline(rest, pair, ',')) {
            const auto eq = pair.find('=');
            if (eq == std::string::npos || eq == 0) {
                throw std::invalid_argument("state parameters must look like key=value: " + pair);
            }
            try {
                std::size_t used = 0;
                const double value = std::stod(pair.substr(eq + 1), &used);
                if (used != pair.size() - eq - 1) throw std::invalid_argument(pair);
                params[pair.substr(0, eq)] = value;
            } catch (const std::invalid_argument&) {
                throw std::invalid_argument("bad numeric value in state parameter: " + pair);
            } catch (const std::out_of_range&) {
                throw std::invalid_argument("bad numeric value in state parameter: " + pair);
            }
        }
    }
    return named_state(name, params);
}

} // namespace detail

// Grammar: atoms joined by '*', each atom either a named state with optional
// key=value parameters ("w_mixture:n=3,fidelity=0.5") or "@file.json".
inline QuantumState parse_state_expression(const std::string& expression) {
    std::stringstream ss(expression);
    std::string atom;
    std::vector<QuantumState> factors;
    while (std::getline(ss, atom, '*')) {
        factors.push_back(detail::parse_state_atom(detail::trimmed(atom)));
    }
    if (factors.empty()) throw std::invalid_argument("empty state expression");
    QuantumState out = factors.front();
    for (std::size_t i = 1; i < factors.size(); ++i) {
        out = tensor_product(out, factors[i]);
    }
    return out;
}

namespace detail {

inline nlohmann::json report_envelope(const std::string& command, nlohmann::json payload) {
    return nlohmann::json{{"tool", "qcorr"},
                          {"version", library_version},
                          {"command", command},
                          {"payload", std::move(payload)}};
}

inline void emit_report(std::ostream& out, const std::string& command, nlohmann::json payload) {
    out << report_envelope(command, std::move(payload)).dump(2) << "\n";
}

inline std::string csv_number(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", x);
    return buf;
}

inline nlohmann::json analyze_payload(const QuantumState& state) {
    nlohmann::json payload;
    payload["num_parties"] = state.num_parties();
    nlohmann::json cuts = nlohmann::json::array();
    if (state.num_parties() >= 2) {
        for (const auto& report : analyze_cuts(state)) {
            cuts.push_back({{"cut", report.cut.to_string()},
                            {"distance", round12(report.distance)},
                            {"product", report.product}});
        }
    }
    payload["cuts"] = std::move(cuts);
    payload["genuinely_correlated"] = has_genuine_correlations(state);
    payload["degree"] = degree_of_correlations(state);
    nlohmann::json factors = nlohmann::json::array();
    for (const auto& factor : factorize(state).factors) {
        factors.push_back({{"parties", factor.parties}, {"num_parties", factor.parties.size()}});
    }
    payload["factors"] = std::move(factors);
    return payload;
}

} // namespace detail

inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"qubit-system correlation toolkit"};
    app.name("qcorr");
    app.require_subcommand(1);

    std::string state_expr;
    std::string observables;
    std::string which_figure;
    std::string scenario_name;
    std::string functional_name = "degree";
    double epsilon = 0.5;
    double theta = 0.0;
    double phi = 0.0;
    double fidelity = 0.0;
    std::size_t closed_n = 3;
    std::size_t measuring = 0;
    std::size_t split_index = 0;
    std::size_t samples = 0;
    std::uint64_t seed = 1;
    std::vector<std::size_t> figure_n;
    std::vector<std::size_t> extend_parties;
    bool do_scan = false;
    bool closed_form = false;
    bool do_optimize = false;

    auto* analyze = app.add_subcommand("analyze", "cut structure, degree and factorization");
    analyze->add_option("--state", state_expr, "state expression")->required();

    auto* covariance_cmd = app.add_subcommand("covariance", "n-party covariance of local observables");
    covariance_cmd->add_option("--state", state_expr, "state expression")->required();
    covariance_cmd->add_option("--observables", observables,
                               "one Pauli letter (X, Y, Z or I) per party");
    covariance_cmd->add_flag("--scan", do_scan, "scan Pauli strings for the largest magnitude");
    covariance_cmd->add_option("--samples", samples, "sample this many strings instead of all");
    covariance_cmd->add_option("--seed", seed, "sampling seed");

    auto* distill_cmd = app.add_subcommand("distill", "local filtering toward the W state");
    distill_cmd->add_option("--state", state_expr, "state expression");
    distill_cmd->add_option("--epsilon", epsilon, "filter strength in (0, 1]")->required();
    distill_cmd->add_flag("--closed-form", closed_form, "evaluate the closed forms instead");
    distill_cmd->add_option("--n", closed_n, "party count for the closed forms");

    auto* figure_cmd = app.add_subcommand("figure", "reference curves as CSV");
    figure_cmd->add_option("--which", which_figure, "fig2 or fig3")->required();
    figure_cmd->add_option("--n", figure_n, "override the party counts");

    auto* postulates_cmd = app.add_subcommand("postulates", "scenario checks for a functional");
    postulates_cmd->add_option("--state", state_expr, "state expression")->required();
    postulates_cmd
        ->add_option("--scenario", scenario_name, "add, filter, split, split-all or extend")
        ->required();
    postulates_cmd->add_option("--functional", functional_name,
                               "degree, presence or covariance-max");
    postulates_cmd->add_option("--epsilon", epsilon, "filter strength for the filter scenario");
    postulates_cmd->add_option("--seed", seed, "seed for the extend scenario");
    postulates_cmd->add_option("--party", split_index, "party to split");
    postulates_cmd->add_option("--parties", extend_parties, "parties to extend (default all)");

    auto* work_cmd = app.add_subcommand("work", "work extracted by the measurement family");
    work_cmd->add_option("--state", state_expr, "state expression")->required();
    work_cmd->add_option("--measuring", measuring, "party measured in the tunable basis");
    work_cmd->add_option("--theta", theta, "polar angle of the measurement basis");
    work_cmd->add_option("--phi", phi, "azimuthal angle of the measurement basis");
    work_cmd->add_flag("--optimize", do_optimize, "optimize the basis and the measured party");

    auto* delta_cmd = app.add_subcommand("delta-w", "unrestricted vs cut-restricted work gap");
    delta_cmd->add_option("--state", state_expr, "state expression")->required();

    std::vector<std::string> argv_storage;
    argv_storage.reserve(args.size() + 1);
    argv_storage.push_back("qcorr");
    for (const auto& a : args) argv_storage.push_back(a);
    std::vector<char*> argv;
    argv.reserve(argv_storage.size());
    for (auto& s : argv_storage) argv.push_back(s.data());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());

        if (analyze->parsed()) {
            detail::emit_report(out, "analyze", detail::analyze_payload(parse_state_expression(state_expr)));
            return 0;
        }

        if (covariance_cmd->parsed()) {
            const QuantumState state = parse_state_expression(state_expr);
            nlohmann::json payload;
            const bool have_observables = !observables.empty();
            if (have_observables == do_scan) {
                throw std::invalid_argument("choose exactly one of --observables and --scan");
            }
            if (do_scan) {
                const CovarianceScanResult result =
                    samples > 0 ? pauli_covariance_scan_sampled(state, samples, seed)
                                : pauli_covariance_scan(state);
                payload["mode"] = samples > 0 ? "sampled" : "full";
                if (samples > 0) {
                    payload["samples"] = samples;
                    payload["seed"] = seed;
                }
                payload["num_strings"] = result.values.size();
                payload["max_abs"] = round12(result.max_abs);
                payload["argmax"] = result.argmax;
            } else {
                payload["observables"] = observables;
                payload["covariance"] = round12(
                    covariance(state, LocalObservableList::from_pauli_string(observables)));
            }
            detail::emit_report(out, "covariance", std::move(payload));
            return 0;
        }

        if (distill_cmd->parsed()) {
            nlohmann::json payload;
            payload["epsilon"] = round12(epsilon);
            const bool have_state = !state_expr.empty();
            if (have_state == closed_form) {
                throw std::invalid_argument("choose exactly one of --state and --closed-form");
            }
            if (closed_form) {
                const FilterClosedForms forms = w_mixture_filter_closed_forms(closed_n, epsilon);
                payload["n"] = closed_n;
                payload["success_probability"] = round12(forms.success_probability);
                payload["fidelity"] = round12(forms.fidelity);
            } else {
                const QuantumState state = parse_state_expression(state_expr);
                const DistillationOutcome outcome = distill_by_local_filtering(state, epsilon);
                payload["num_parties"] = state.num_parties();
                payload["success_probability"] = round12(outcome.success_probability);
                payload["fidelity"] = round12(outcome.fidelity);
            }
            detail::emit_report(out, "distill", std::move(payload));
            return 0;
        }

        if (figure_cmd->parsed()) {
            if (which_figure == "fig2") {
                std::vector<std::size_t> ns =
                    figure_n.empty() ? std::vector<std::size_t>{3, 5, 7, 9, 49, 499} : figure_n;
                out << "n,fidelity,success_probability\n";
                for (std::size_t n : ns) {
                    for (int k = 1; k <= 99; ++k) {
                        const double f = 0.5 + 0.005 * k;
                        out << n << "," << detail::csv_number(f) << ","
                            << detail::csv_number(success_probability_for_fidelity(n, f)) << "\n";
                    }
                }
            } else if (which_figure == "fig3") {
                std::vector<std::size_t> ns =
                    figure_n.empty() ? std::vector<std::size_t>{3, 9} : figure_n;
                out << "n,fidelity,covariance\n";
                for (std::size_t n : ns) {
                    for (int k = 0; k <= 100; ++k) {
                        const double f = 0.01 * k;
                        out << n << "," << detail::csv_number(f) << ","
                            << detail::csv_number(w_mixture_sigma_z_covariance(n, f)) << "\n";
                    }
                }
            } else {
                throw std::invalid_argument("unknown figure: " + which_figure);
            }
            return 0;
        }

        if (postulates_cmd->parsed()) {
            const QuantumState state = parse_state_expression(state_expr);
            ScenarioKind kind;
            if (scenario_name == "add") kind = ScenarioKind::add_uncorrelated_party;
            else if (scenario_name == "filter") kind = ScenarioKind::local_filter;
            else if (scenario_name == "split") kind = ScenarioKind::split_party;
            else if (scenario_name == "split-all") kind = ScenarioKind::split_all_parties;
            else if (scenario_name == "extend") kind = ScenarioKind::random_local_extension;
            else throw std::invalid_argument("unknown scenario: " + scenario_name);

            std::function<double(const QuantumState&)> functional;
            bool zero_preserving = false;
            if (functional_name == "degree") {
                functional = [](const QuantumState& s) {
                    return static_cast<double>(degree_of_correlations(s));
                };
            } else if (functional_name == "presence") {
                zero_preserving = true;
                functional = [](const QuantumState& s) {
                    return has_genuine_correlations(s) ? 1.0 : 0.0;
                };
            } else if (functional_name == "covariance-max") {
                zero_preserving = true;
                functional = [](const QuantumState& s) {
                    return pauli_covariance_scan(s).max_abs;
                };
            } else {
                throw std::invalid_argument("unknown functional: " + functional_name);
            }

            ScenarioParams params;
            params.epsilon = epsilon;
            params.seed = seed;
            params.split_party_index = split_index;
            params.parties = extend_parties;
            const PostulateReport report =
                run_postulate_scenario(state, functional, zero_preserving, kind, params);
            detail::emit_report(out, "postulates",
                                {{"scenario", to_string(report.scenario)},
                                 {"functional", functional_name},
                                 {"value_before", round12(report.value_before)},
                                 {"value_after", round12(report.value_after)},
                                 {"allowed_increase", round12(report.allowed_increase)},
                                 {"zero_preserving", report.zero_preserving},
                                 {"verdict", to_string(report.verdict)}});
            return 0;
        }

        if (work_cmd->parsed()) {
            const QuantumState state = parse_state_expression(state_expr);
            nlohmann::json payload;
            if (do_optimize) {
                const UnrestrictedOptimum best = unrestricted_protocol_optimum(state);
                payload["measuring"] = best.measuring;
                payload["theta"] = round12(best.optimum.theta);
                payload["phi"] = round12(best.optimum.phi);
                payload["work"] = round12(best.optimum.work);
            } else {
                payload["measuring"] = measuring;
                payload["theta"] = round12(theta);
                payload["phi"] = round12(phi);
                payload["work"] = round12(protocol_family_work(state, measuring, theta, phi));
            }
            detail::emit_report(out, "work", std::move(payload));
            return 0;
        }

        if (delta_cmd->parsed()) {
            const QuantumState state = parse_state_expression(state_expr);
            const DeltaWResult result = delta_w(state);
            nlohmann::json cuts = nlohmann::json::array();
            for (const auto& entry : result.restricted) {
                cuts.push_back({{"cut", entry.cut.to_string()}, {"work", round12(entry.work)}});
            }
            detail::emit_report(out, "delta-w",
                                {{"unrestricted",
                                  {{"measuring", result.unrestricted.measuring},
                                   {"theta", round12(result.unrestricted.optimum.theta)},
                                   {"phi", round12(result.unrestricted.optimum.phi)},
                                   {"work", round12(result.unrestricted.optimum.work)}}},
                                 {"cuts", std::move(cuts)},
                                 {"best_cut", result.best_cut.to_string()},
                                 {"best_restricted", round12(result.best_restricted)},
                                 {"delta_w", round12(result.delta_w)}});
            return 0;
        }

        err << "no subcommand selected\n";
        return 1;
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 1;
    } catch (const size_limit_error& e) {
        err << "error: " << e.what() << "\n";
        return 3;
    } catch (const branch_impossible_error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

} // namespace qcorr
