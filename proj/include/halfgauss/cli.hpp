// Copyright 2026 The halfgauss Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "halfgauss/clifford.hpp"
#include "halfgauss/expsum.hpp"
#include "halfgauss/gauss.hpp"
#include "halfgauss/hardness.hpp"
#include "halfgauss/holant.hpp"
#include "halfgauss/jsonio.hpp"
#include "halfgauss/oracle.hpp"
#include "halfgauss/testing.hpp"
#include "halfgauss/text.hpp"

namespace hg::cli {

enum ExitCode { kOk = 0, kUsage = 1, kFault = 2 };

/// Raised when a command ran but its own checks failed.
class CheckFailed : public std::runtime_error {
   public:
    CheckFailed(const std::string &what, json report) : std::runtime_error(what), report_(std::move(report)) {}
    const json &report() const { return report_; }

   private:
    json report_;
};

namespace detail {

inline std::string read_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw std::invalid_argument("cannot open '" + path + "'");
    }
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

inline double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

inline json rule_counts_json(const SumValue &z) {
    json j = json::object();
    for (const auto &[k, v] : z.rule_counts()) {
        j[k] = v;
    }
    return j;
}

inline json rational_json(const mpq_class &q) {
    return {{"exact", q.get_str()}, {"approx", q.get_d()}};
}

inline json checks_json(const std::vector<RelationCheck> &checks, bool &all) {
    json arr = json::array();
    all = true;
    for (const auto &c : checks) {
        arr.push_back({{"identity", c.name}, {"holds", c.holds}});
        all = all && c.holds;
    }
    return arr;
}

}  // namespace detail

/// Runs one command line; args exclude the program name.
inline int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Exact quadratic exponential sums, qudit Clifford simulation and Holant evaluation"};
    app.require_subcommand(1);
    u64 budget = 0;
    bool approx_only = false;
    app.add_option("--budget", budget, "Brute-force term budget (default 10^7, or HG_BUDGET)");
    app.add_flag("--approx-only", approx_only, "Show only floating approximations of exact values");

    json result;
    std::function<void()> action;

    // eval-sum
    std::string mode = "half", poly, conv_name = "default";
    u64 d = 2, phase = 0;
    int vars = 0;
    bool show_cert = false;
    auto *eval_sum = app.add_subcommand("eval-sum", "Evaluate a multivariate sum exactly");
    eval_sum->add_option("--mode", mode, "half | full | general")->check(CLI::IsMember({"half", "full", "general"}));
    eval_sum->add_option("--d", d, "Modulus")->required();
    eval_sum->add_option("--phase", phase, "Phase modulus for --mode general (default 2d)");
    eval_sum->add_option("--poly", poly, "Polynomial, e.g. \"x1^2 + 2*x1*x2\"")->required();
    eval_sum->add_option("--vars", vars, "Number of variables (default: highest index)");
    eval_sum->add_option("--convention", conv_name, "default | minus")->check(CLI::IsMember({"default", "minus"}));
    eval_sum->add_flag("--certificate", show_cert, "Include the reduction certificate");
    eval_sum->callback([&] {
        action = [&] {
            IntPolynomial p = parse_polynomial(poly);
            p.n = std::max(p.n, vars);
            result["mode"] = mode;
            result["d"] = d;
            result["poly"] = format_polynomial(p);
            if (mode == "general") {
                u64 b = phase ? phase : 2 * d;
                CyclotomicNumber v = brute_sum({d, b, p});
                result["phase"] = b;
                result["path"] = "brute-force";
                result["value"] = value_json(v, approx_only);
                result["pretty"] = approx_only ? json(nullptr) : json(to_string(v));
                return;
            }
            auto q = p.as_quadratic();
            if (!q) {
                throw std::invalid_argument("--mode " + mode + " needs a quadratic polynomial; use --mode general");
            }
            SumValue z;
            if (mode == "half") {
                SignConvention conv = convention_from_string(conv_name);
                result["convention"] = convention_name(conv);
                z = eval_half_gauss(d, *q, conv, show_cert);
            } else {
                z = eval_gauss_quadratic(d, *q, show_cert);
            }
            result["value"] = value_json(z.value, approx_only);
            result["pretty"] = approx_only ? json(nullptr) : json(to_string(z.value));
            result["monomial"] = monomial_json(z.monomial);
            if (show_cert) {
                result["certificate"] = certificate_json(z.certificate);
                result["rule_counts"] = detail::rule_counts_json(z);
            }
        };
    });

    // eval-gauss
    i64 a = 1;
    bool half = false;
    auto *eval_gauss = app.add_subcommand("eval-gauss", "Univariate Gauss sum G(a, d) or G_1/2(a, d)");
    eval_gauss->add_option("--a", a, "Coefficient coprime to d")->required();
    eval_gauss->add_option("--d", d, "Modulus")->required();
    eval_gauss->add_flag("--half", half, "Half Gauss sum");
    eval_gauss->add_option("--convention", conv_name, "default | minus")->check(CLI::IsMember({"default", "minus"}));
    eval_gauss->callback([&] {
        action = [&] {
            SurdMonomial m = half ? half_gauss_sum_monomial(a, d, convention_from_string(conv_name))
                                  : gauss_sum_monomial(a, d);
            result["a"] = a;
            result["d"] = d;
            result["half"] = half;
            if (half) {
                result["convention"] = conv_name;
            }
            result["value"] = value_json(m.to_cyclotomic(), approx_only);
            result["pretty"] = approx_only ? json(nullptr) : json(to_string(m.to_cyclotomic()));
            result["monomial"] = monomial_json(m);
        };
    });

    // check-periodic
    int k2 = 0;
    auto *check_per = app.add_subcommand("check-periodic", "Test the periodicity condition");
    check_per->add_option("--d", d, "Modulus")->required();
    check_per->add_option("--poly", poly, "Quadratic polynomial")->required();
    check_per->add_option("--k", k2, "With d = 2: test the 2^k condition instead");
    check_per->callback([&] {
        action = [&] {
            QuadraticForm q = parse_quadratic(poly);
            result["d"] = d;
            result["poly"] = format_polynomial(q);
            if (k2 > 0) {
                if (d != 2) {
                    throw std::invalid_argument("--k applies to d = 2 only");
                }
                result["k"] = k2;
                result["periodic"] = check_periodicity_2k(q, k2);
            } else {
                result["periodic"] = check_periodicity(d, q);
            }
        };
    });

    // simulate
    std::string circuit_file, in_digits, out_digits, outcome;
    int measure = 0;
    u64 samples = 0, seed = 1;
    bool want_state = false;
    auto *simulate = app.add_subcommand("simulate", "Strong or weak simulation of a qudit Clifford circuit");
    simulate->add_option("--circuit", circuit_file, "Circuit file")->required();
    simulate->add_option("--in", in_digits, "Input basis state, e.g. 012")->required();
    auto *o_out = simulate->add_option("--out", out_digits, "Output basis state for an amplitude");
    auto *o_measure = simulate->add_option("--measure", measure, "Number of leading registers measured");
    simulate->add_option("--outcome", outcome, "Outcome digits for --measure");
    auto *o_sample = simulate->add_option("--sample", samples, "Number of samples to draw");
    simulate->add_option("--seed", seed, "Sampler seed");
    auto *o_state = simulate->add_flag("--statevector", want_state, "Dense exact output state");
    o_out->excludes(o_measure)->excludes(o_state);
    o_sample->excludes(o_out)->excludes(o_state);
    simulate->callback([&] {
        action = [&] {
            Circuit c = parse_circuit(detail::read_file(circuit_file));
            for (const Gate &g : c.gates) {
                if (is_qubit_only(g.kind) || g.kind == GateKind::CCZ) {
                    throw std::invalid_argument(std::string("simulate: ") + gate_name(g.kind) +
                                                " is not a qudit Clifford generator");
                }
            }
            std::vector<u64> ain = parse_digits(in_digits);
            check_digits(ain, c.d, c.m, "--in");
            NormalizedCircuit nc = normalize(c);
            auto [S, L] = phase_polynomial(nc);
            result["d"] = c.d;
            result["m"] = c.m;
            result["h"] = nc.h;
            result["n"] = nc.n;
            result["phase_polynomial"] = format_polynomial(S);
            result["in"] = format_digits(ain, c.d);
            if (!out_digits.empty()) {
                std::vector<u64> b = parse_digits(out_digits);
                CyclotomicNumber amp = amplitude(nc, ain, b);
                result["out"] = format_digits(b, c.d);
                result["amplitude"] = value_json(amp, approx_only);
            } else if (samples > 0) {
                int k = measure > 0 ? measure : c.m;
                auto draws = sample(nc, ain, k, samples, seed);
                json arr = json::array();
                std::map<std::string, u64> freq;
                for (const auto &s : draws) {
                    std::string t = format_digits(s, c.d);
                    arr.push_back(t);
                    freq[t]++;
                }
                result["measured"] = k;
                result["seed"] = seed;
                result["samples"] = arr;
                result["frequencies"] = freq;
            } else if (measure > 0) {
                std::vector<u64> b = parse_digits(outcome);
                if (static_cast<int>(b.size()) != measure) {
                    throw std::invalid_argument("--outcome needs exactly --measure digits");
                }
                mpq_class p = probability_marginal(nc, ain, b);
                result["measured"] = measure;
                result["outcome"] = format_digits(b, c.d);
                result["probability"] = approx_only ? json{{"approx", p.get_d()}} : detail::rational_json(p);
            } else if (want_state) {
                auto sv = statevector(c, ain);
                json arr = json::array();
                for (u64 idx = 0; idx < sv.size(); idx++) {
                    if (sv[idx].is_zero()) {
                        continue;
                    }
                    std::vector<u64> b(c.m);
                    u64 t = idx;
                    for (int r = c.m - 1; r >= 0; r--) {
                        b[r] = t % c.d;
                        t /= c.d;
                    }
                    arr.push_back({{"basis", format_digits(b, c.d)}, {"value", value_json(sv[idx], approx_only)}});
                }
                result["statevector"] = arr;
            } else {
                throw std::invalid_argument("simulate needs one of --out, --measure, --sample, --statevector");
            }
        };
    });

    // holant
    std::string grid_file;
    bool brute = false;
    auto *holant_cmd = app.add_subcommand("holant", "Evaluate a Holant signature grid");
    holant_cmd->add_option("--grid", grid_file, "Grid JSON file")->required();
    holant_cmd->add_flag("--brute", brute, "Also sum term by term and compare");
    holant_cmd->callback([&] {
        action = [&] {
            SignatureGrid g = grid_from_json(json::parse(detail::read_file(grid_file)));
            std::string path;
            CyclotomicNumber v = holant(g, &path);
            result["d"] = g.d;
            result["edges"] = g.edges.size();
            result["vertices"] = g.vertices.size();
            result["path"] = path;
            result["value"] = value_json(v, approx_only);
            if (brute && path != "brute") {
                CyclotomicNumber b = holant_brute(g);
                result["brute"] = value_json(b, approx_only);
                result["agree"] = b == v;
                if (!(b == v)) {
                    throw CheckFailed("holant: tractable evaluator disagrees with brute force", result);
                }
            }
        };
    });

    // count-zeros
    i64 target = 0;
    auto *count_zeros = app.add_subcommand("count-zeros", "Count solutions of f(x) = j via half Gauss sums");
    count_zeros->add_option("--d", d, "Modulus")->required();
    count_zeros->add_option("--poly", poly, "Polynomial")->required();
    count_zeros->add_option("--j", target, "Target value");
    count_zeros->add_option("--vars", vars, "Number of variables");
    count_zeros->add_flag("--brute", brute, "Also count term by term");
    count_zeros->callback([&] {
        action = [&] {
            IntPolynomial p = parse_polynomial(poly);
            p.n = std::max(p.n, vars);
            const u64 M = d % 2 == 0 ? 2 * d : d;
            result["d"] = d;
            result["poly"] = format_polynomial(p);
            result["j"] = target;
            result["modulus"] = M;
            auto q = p.as_quadratic();
            bool fast = q && check_periodicity(d, *q);
            if (fast) {
                auto c = fourier_zero_count(d, *q, target).as_rational();
                if (!c || c->get_den() != 1) {
                    throw ConsistencyFault("count-zeros: Fourier count is not an integer");
                }
                result["method"] = "fourier";
                result["count"] = c->get_num().get_str();
            }
            if (!fast || brute) {
                u64 direct = count_solutions(d, p, target, M);
                result[fast ? "brute_count" : "count"] = std::to_string(direct);
                if (!fast) {
                    result["method"] = "brute-force";
                } else if (result["count"].get<std::string>() != std::to_string(direct)) {
                    throw ConsistencyFault("count-zeros: Fourier and direct counts differ");
                }
            }
        };
    });

    // table1
    int max_n = 18;
    auto *table1 = app.add_subcommand("table1", "Runtime evidence for the Z_{1/2^k}(2, f) classification");
    table1->add_option("--max-n", max_n, "Variables per instance (3..20)");
    table1->callback([&] {
        action = [&] {
            json rows = json::array();
            bool ok = true;
            for (const auto &r : classification_evidence(max_n)) {
                rows.push_back({{"cell", r.cell},
                                {"periodic", r.periodic},
                                {"degree", r.degree},
                                {"k", r.k},
                                {"n", r.n},
                                {"expected", r.expected},
                                {"path", r.path},
                                {"exponential", r.exponential},
                                {"seconds", r.seconds},
                                {"value", approx_only ? json(nullptr) : json(r.value)},
                                {"consistent", r.consistent()}});
                ok = ok && r.consistent();
            }
            result["rows"] = rows;
            result["consistent"] = ok;
            if (!ok) {
                throw CheckFailed("table1: a cell ran on an unexpected path", result);
            }
        };
    });

    // gadgets
    auto *gadgets = app.add_subcommand("gadgets", "Check the {H, Z, CS} gadget identities exactly");
    gadgets->add_option("--seed", seed, "Seed of the random rebuilt circuit");
    gadgets->callback([&] {
        action = [&] {
            bool all = false;
            result["identities"] = detail::checks_json(verify_gadgets(seed), all);
            result["all_hold"] = all;
            if (!all) {
                throw CheckFailed("gadgets: an identity failed", result);
            }
        };
    });

    // count-deg3
    auto *count_deg3 = app.add_subcommand("count-deg3", "Count zeros of a cubic phase polynomial from circuit amplitudes");
    count_deg3->add_option("--circuit", circuit_file, "Diagonal circuit over Z, G, CZ, CCZ")->required();
    count_deg3->add_option("--k", target, "Target value");
    count_deg3->callback([&] {
        action = [&] {
            Circuit D = parse_circuit(detail::read_file(circuit_file));
            IntPolynomial f = diagonal_phase_polynomial(D);
            u64 M = degree3_count_modulus(D.d);
            u64 via = degree3_zero_count_demo(D, target);
            u64 direct = count_solutions(D.d, f, target, M);
            result["d"] = D.d;
            result["n"] = D.m;
            result["phase_polynomial"] = format_polynomial(f);
            result["k"] = target;
            result["modulus"] = M;
            result["count"] = via;
            result["direct_count"] = direct;
            if (via != direct) {
                throw ConsistencyFault("count-deg3: amplitude route and direct count differ");
            }
        };
    });

    // verify-relations
    u64 max_d = 0;
    auto *relations = app.add_subcommand("verify-relations", "Check the qudit Clifford relations exactly");
    relations->add_option("--d", d, "Dimension (2..16)");
    relations->add_option("--max-d", max_d, "Check every d from 2 to this value");
    relations->callback([&] {
        action = [&] {
            u64 lo = max_d ? 2 : d, hi = max_d ? max_d : d;
            if (lo < 2 || hi > 16) {
                throw std::invalid_argument("verify-relations supports 2 <= d <= 16");
            }
            json per = json::array();
            bool all = true;
            for (u64 dd = lo; dd <= hi; dd++) {
                bool ok = false;
                per.push_back({{"d", dd}, {"relations", detail::checks_json(verify_gate_relations(dd), ok)}});
                all = all && ok;
            }
            result["results"] = per;
            result["all_hold"] = all;
            if (!all) {
                throw CheckFailed("verify-relations: a relation failed", result);
            }
        };
    });

    // selftest
    int st_max_n = 2;
    u64 st_max_d = 4, st_random = 0;
    auto *selftest = app.add_subcommand("selftest", "Exhaustive oracle sweep of the exact evaluators");
    selftest->add_option("--max-d", st_max_d, "Largest modulus");
    selftest->add_option("--max-n", st_max_n, "Largest number of variables");
    selftest->add_option("--random", st_random, "Extra random instances (d up to 2 max-d, n up to max-n + 2)");
    selftest->add_option("--seed", seed, "Seed for --random");
    selftest->callback([&] {
        action = [&] {
            if (st_max_d < 2 || st_max_n < 1) {
                throw std::invalid_argument("selftest needs --max-d >= 2 and --max-n >= 1");
            }
            long double est = 0;
            for (u64 dd = 2; dd <= st_max_d; dd++) {
                for (int n = 1; n <= st_max_n; n++) {
                    est += std::pow(static_cast<long double>(2 * dd), n * (n + 3) / 2) *
                           std::pow(static_cast<long double>(dd), n);
                }
            }
            if (est > 5e8L) {
                throw BudgetExceeded("selftest: exhaustive sweep", est, static_cast<u64>(5e8));
            }
            auto t0 = std::chrono::steady_clock::now();
            SweepReport total;
            json per = json::array();
            for (u64 dd = 2; dd <= st_max_d; dd++) {
                for (int n = 1; n <= st_max_n; n++) {
                    SweepReport r = sweep_half_gauss_exhaustive(dd, n, SignConvention::Default);
                    if (dd % 2 == 0) {
                        r += sweep_half_gauss_exhaustive(dd, n, SignConvention::MinusForEven);
                    }
                    per.push_back({{"d", dd}, {"n", n}, {"cases", r.cases}, {"failures", r.failures}});
                    total += r;
                }
            }
            if (st_random > 0) {
                SweepReport r = sweep_half_gauss_random(2, 2 * st_max_d, st_max_n + 2, st_random, seed);
                per.push_back({{"random", st_random}, {"cases", r.cases}, {"failures", r.failures}});
                total += r;
            }
            result["cases"] = total.cases;
            result["failures"] = total.failures;
            result["witnesses"] = total.witnesses;
            result["sweeps"] = per;
            result["seconds"] = detail::seconds_since(t0);
            if (total.failures) {
                throw CheckFailed("selftest: mismatches against brute force", result);
            }
        };
    });

    // bench
    int bench_n = 500;
    u64 bench_d = 720;
    auto *bench = app.add_subcommand("bench", "Time one random periodic quadratic instance");
    bench->add_option("--n", bench_n, "Variables");
    bench->add_option("--d", bench_d, "Modulus");
    bench->add_option("--seed", seed, "Instance seed");
    bench->callback([&] {
        action = [&] {
            if (bench_n < 1 || bench_d < 2) {
                throw std::invalid_argument("bench needs --n >= 1 and --d >= 2");
            }
            std::mt19937_64 rng(seed);
            QuadraticForm f = random_periodic_quadratic(bench_d, bench_n, rng);
            auto t0 = std::chrono::steady_clock::now();
            SumValue z = eval_half_gauss(bench_d, f, SignConvention::Default, true);
            double secs = detail::seconds_since(t0);
            long double log10_terms = bench_n * std::log10(static_cast<long double>(bench_d));
            bool in_budget = log10_terms <= std::log10(static_cast<long double>(brute_budget()));
            result["n"] = bench_n;
            result["d"] = bench_d;
            result["seed"] = seed;
            result["terms_in_f"] = f.alpha.size() + f.beta.size();
            result["seconds"] = secs;
            result["value"] = approx_only ? json(nullptr) : json(z.monomial.pretty());
            result["brute_fallback"] = z.brute_fallback;
            result["branching"] = 0;
            result["certificate_steps"] = z.certificate.size();
            result["rule_counts"] = detail::rule_counts_json(z);
            result["replay_matches"] = z.replay() == z.monomial;
            std::ostringstream terms;
            terms.precision(4);
            terms << "10^" << static_cast<double>(log10_terms);
            json bf{{"terms", terms.str()}, {"within_budget", in_budget}, {"attempted", in_budget}};
            if (in_budget) {
                bf["agree"] = z.monomial.to_cyclotomic() == brute_half_gauss(bench_d, f);
            }
            result["brute_force"] = bf;
            if (!(z.replay() == z.monomial) || (in_budget && !bf["agree"].get<bool>())) {
                throw ConsistencyFault("bench: certificate or brute-force cross-check failed");
            }
        };
    });

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp &e) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp &e) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError &e) {
        out << json{{"error", e.what()}, {"kind", "usage"}}.dump(2) << "\n";
        err << "usage error: " << e.what() << "\n";
        return kUsage;
    }
    if (budget > 0) {
        set_brute_budget(budget);
    }
    auto emit_error = [&](const char *kind, const std::string &msg, json extra = json()) {
        json j{{"error", msg}, {"kind", kind}};
        if (!extra.is_null()) {
            j["report"] = std::move(extra);
        }
        out << j.dump(2) << "\n";
        err << kind << ": " << msg << "\n";
    };
    try {
        action();
    } catch (const CheckFailed &e) {
        emit_error("check-failed", e.what(), e.report());
        return kFault;
    } catch (const ConsistencyFault &e) {
        emit_error("consistency", e.what());
        return kFault;
    } catch (const BudgetExceeded &e) {
        emit_error("budget", e.what());
        return kUsage;
    } catch (const AperiodicError &e) {
        emit_error("aperiodic", e.what());
        return kUsage;
    } catch (const std::invalid_argument &e) {
        emit_error("usage", e.what());
        return kUsage;
    } catch (const json::exception &e) {
        emit_error("usage", e.what());
        return kUsage;
    } catch (const std::out_of_range &e) {
        emit_error("usage", e.what());
        return kUsage;
    } catch (const std::exception &e) {
        emit_error("consistency", e.what());
        return kFault;
    }
    out << result.dump(2) << "\n";
    return kOk;
}

}  // namespace hg::cli
