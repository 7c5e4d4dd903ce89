// Command-line surface for the Gaussian-line toolkit. One binary, subcommand
// style; exit code 0 = success/verified, 1 = negative answer (non-member,
// composite, counterexample, nothing found), 2 = usage or budget error.

#include "gaussline/bertrand.hpp"
#include "gaussline/crt.hpp"
#include "gaussline/divisibility.hpp"
#include "gaussline/gaussian_int.hpp"
#include "gaussline/line.hpp"
#include "gaussline/primality.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <iostream>
#include <thread>

using nlohmann::json;
using namespace gaussline;

namespace {

struct GlobalOpts {
    std::string format = "human";
    unsigned long budget = 0;  // 0 = library defaults
    unsigned long seed = 0;
};

FactorBudget factor_budget(const GlobalOpts& g) {
    FactorBudget b;
    if (g.budget > 0) b.rho_iterations = g.budget;
    return b;
}

bool json_out(const GlobalOpts& g) { return g.format == "json"; }

void require_not_csv(const GlobalOpts& g) {
    if (g.format == "csv") {
        throw CLI::ValidationError("--format csv is only available for the bertrand subcommand");
    }
}

json witness_to_json(const DivisorWitness& w) {
    json j{{"member", w.member}};
    if (w.member) {
        j["residue"] = w.residue->get_str();
        j["modulus"] = w.modulus->get_str();
        j["witness_index"] = w.witness_index->get_str();
    }
    return j;
}

std::string mode_label(const BertrandReport& r) {
    return to_string(r.mode) + (r.negative ? "-neg" : "");
}

void print_report(const BertrandReport& r, const GlobalOpts& g, bool timing) {
    if (g.format == "json") {
        json j{{"line", r.line},
               {"mode", mode_label(r)},
               {"n_max", r.n_max.get_str()},
               {"verdict", to_string(r.verdict)},
               {"primes_found", r.primes_found.get_str()},
               {"max_window_fill", r.max_window_fill}};
        if (r.counterexample_n) j["counterexample_n"] = r.counterexample_n->get_str();
        if (timing) j["wall_time"] = r.wall_time_seconds;
        std::cout << j.dump() << "\n";
    } else if (g.format == "csv") {
        std::cout << r.line << "," << to_string(r.verdict) << "," << r.n_max << ","
                  << r.primes_found << "," << r.max_window_fill << "\n";
    } else {
        std::cout << "line: " << r.line << "\n"
                  << "mode: " << mode_label(r) << "\n"
                  << "n_max: " << r.n_max << "\n"
                  << "verdict: " << to_string(r.verdict) << "\n";
        if (r.counterexample_n) std::cout << "counterexample_n: " << *r.counterexample_n << "\n";
        std::cout << "primes_found: " << r.primes_found << "\n"
                  << "max_window_fill: " << r.max_window_fill << "\n";
        if (timing) std::cout << "wall_time: " << r.wall_time_seconds << "s\n";
    }
}

void print_line_record(const GaussianLine& line, const GlobalOpts& g) {
    if (json_out(g)) {
        json j{{"line", line.str()},
               {"alpha0", line.alpha0().str()},
               {"delta", line.delta().str()},
               {"Delta", line.invariant().get_str()},
               {"primitive", line.primitive()}};
        std::cout << j.dump() << "\n";
    } else {
        std::cout << "line: " << line.str() << "\n"
                  << "alpha0: " << line.alpha0() << "\n"
                  << "delta: " << line.delta() << "\n"
                  << "Delta: " << line.invariant() << "\n"
                  << "primitive: " << (line.primitive() ? "true" : "false") << "\n";
    }
}

std::vector<GaussianCongruence> parse_congruences(const std::string& text) {
    std::vector<GaussianCongruence> out;
    size_t pos = 0;
    while (pos <= text.size()) {
        size_t comma = text.find(',', pos);
        std::string item = text.substr(pos, comma == std::string::npos ? comma : comma - pos);
        size_t at = item.find('@');
        if (at == std::string::npos) {
            throw std::invalid_argument("invalid congruence (expected \"residue@modulus\"): \"" +
                                        item + "\"");
        }
        out.push_back({GaussianInt::parse(item.substr(0, at)), GaussianInt::parse(item.substr(at + 1))});
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"gaussline: exact arithmetic on Gaussian lines and Bertrand-type verification"};
    app.require_subcommand(1);

    GlobalOpts g;
    if (const char* env = std::getenv("GAUSSLINE_BUDGET")) {
        g.budget = std::strtoul(env, nullptr, 10);
    }
    app.add_option("--format", g.format, "Output format")
        ->check(CLI::IsMember({"human", "json", "csv"}))
        ->capture_default_str();
    app.add_option("--budget", g.budget,
                   "Work budget for factorization / prime search (overrides GAUSSLINE_BUDGET)");
    app.add_option("--seed", g.seed, "Seed for randomized options");

    int rc = 0;

    // ---- canonicalization ----
    std::string arg_point, arg_dir, arg_p, arg_q;
    auto* canon = app.add_subcommand("canon", "Canonical line through a point with a direction");
    canon->add_option("point", arg_point)->required();
    canon->add_option("direction", arg_dir)->required();
    canon->callback([&] {
        require_not_csv(g);
        print_line_record(GaussianLine::from_point_direction(GaussianInt::parse(arg_point),
                                                             GaussianInt::parse(arg_dir)),
                          g);
    });
    auto* canon2 = app.add_subcommand("canon2", "Canonical line through two points");
    canon2->add_option("p", arg_p)->required();
    canon2->add_option("q", arg_q)->required();
    canon2->callback([&] {
        require_not_csv(g);
        print_line_record(
            GaussianLine::from_two_points(GaussianInt::parse(arg_p), GaussianInt::parse(arg_q)), g);
    });

    // ---- line queries ----
    std::string arg_line, arg_n;
    auto* point = app.add_subcommand("point", "Point alpha0 + n*delta of a line");
    point->add_option("line", arg_line)->required();
    point->add_option("n", arg_n)->required();
    point->callback([&] {
        require_not_csv(g);
        GaussianInt p = GaussianLine::parse(arg_line).point_at(Int(arg_n));
        if (json_out(g)) {
            std::cout << json{{"point", p.str()}}.dump() << "\n";
        } else {
            std::cout << p << "\n";
        }
    });
    auto* normc = app.add_subcommand("norm", "Norm of the point at index n");
    normc->add_option("line", arg_line)->required();
    normc->add_option("n", arg_n)->required();
    normc->callback([&] {
        require_not_csv(g);
        Int v = GaussianLine::parse(arg_line).norm_at(Int(arg_n));
        if (json_out(g)) {
            std::cout << json{{"norm", v.get_str()}}.dump() << "\n";
        } else {
            std::cout << v << "\n";
        }
    });

    // ---- core / primality queries ----
    std::string arg_beta, arg_a, arg_b;
    auto* nuc = app.add_subcommand("nu", "nu(beta) = N(beta)/gcd(re, im)");
    nuc->add_option("beta", arg_beta)->required();
    nuc->callback([&] {
        require_not_csv(g);
        Int v = nu(GaussianInt::parse(arg_beta));
        if (json_out(g)) {
            std::cout << json{{"nu", v.get_str()}}.dump() << "\n";
        } else {
            std::cout << v << "\n";
        }
    });
    auto* gcdc = app.add_subcommand("gcd", "Canonical-associate gcd over Z[i]");
    gcdc->add_option("a", arg_a)->required();
    gcdc->add_option("b", arg_b)->required();
    gcdc->callback([&] {
        require_not_csv(g);
        GaussianInt v = gcd(GaussianInt::parse(arg_a), GaussianInt::parse(arg_b));
        if (json_out(g)) {
            std::cout << json{{"gcd", v.str()}}.dump() << "\n";
        } else {
            std::cout << v << "\n";
        }
    });
    auto* factorc = app.add_subcommand("factor", "Factor beta into Gaussian primes");
    factorc->add_option("beta", arg_beta)->required();
    factorc->callback([&] {
        require_not_csv(g);
        auto f = factor_gaussian(GaussianInt::parse(arg_beta), factor_budget(g));
        if (json_out(g)) {
            json factors = json::array();
            for (const auto& [p, e] : f.factors) {
                factors.push_back({{"prime", p.str()}, {"exponent", e}});
            }
            std::cout << json{{"unit", f.unit.str()}, {"factors", factors}}.dump() << "\n";
        } else {
            std::cout << f.unit;
            for (const auto& [p, e] : f.factors) {
                std::cout << " * (" << p << ")";
                if (e > 1) std::cout << "^" << e;
            }
            std::cout << "\n";
        }
    });
    auto* isprimec = app.add_subcommand("isprime", "Gaussian primality of beta");
    isprimec->add_option("beta", arg_beta)->required();
    isprimec->callback([&] {
        require_not_csv(g);
        bool v = is_gaussian_prime(GaussianInt::parse(arg_beta));
        if (json_out(g)) {
            std::cout << json{{"prime", v}}.dump() << "\n";
        } else {
            std::cout << (v ? "true" : "false") << "\n";
        }
        rc = v ? 0 : 1;
    });
    auto* splitc = app.add_subcommand("split", "Factorization type of a rational prime in Z[i]");
    splitc->add_option("p", arg_a)->required();
    splitc->callback([&] {
        require_not_csv(g);
        PrimeClass cls = classify_prime(Int(arg_a));
        const char* tag = cls.tag == PrimeClassTag::Ramified ? "ramified"
                          : cls.tag == PrimeClassTag::Split  ? "split"
                                                             : "inert";
        if (json_out(g)) {
            json j{{"class", tag}};
            if (cls.witness) j["witness"] = cls.witness->str();
            std::cout << j.dump() << "\n";
        } else {
            std::cout << tag;
            if (cls.witness) std::cout << " " << *cls.witness;
            std::cout << "\n";
        }
    });

    // ---- divisibility queries ----
    auto* dividesc = app.add_subcommand("divides", "Divisor-set membership with witness (JSON)");
    dividesc->add_option("line", arg_line)->required();
    dividesc->add_option("beta", arg_beta)->required();
    dividesc->callback([&] {
        GaussianLine line = GaussianLine::parse(arg_line);
        GaussianInt beta = GaussianInt::parse(arg_beta);
        // Real/imaginary lines fall outside the divisor-set theorem; the
        // periodicity query answers them by rational divisibility.
        DivisorWitness w = line.invariant() == 0 ? divisor_index(line, beta)
                                                 : divisor_set_contains(line, beta, factor_budget(g));
        std::cout << witness_to_json(w).dump() << "\n";
        rc = w.member ? 0 : 1;
    });
    auto* rsetc = app.add_subcommand("rset", "Rational set of a line (divisors of Delta)");
    rsetc->add_option("line", arg_line)->required();
    rsetc->callback([&] {
        require_not_csv(g);
        RationalSet rs = rational_set(GaussianLine::parse(arg_line), factor_budget(g));
        if (json_out(g)) {
            json divs = json::array();
            for (const Int& d : rs.divisors) divs.push_back(d.get_str());
            std::cout << json{{"infinite", rs.infinite}, {"divisors", divs}}.dump() << "\n";
        } else if (rs.infinite) {
            std::cout << "infinite\n";
        } else {
            for (size_t i = 0; i < rs.divisors.size(); ++i) {
                std::cout << (i ? " " : "") << rs.divisors[i];
            }
            std::cout << "\n";
        }
    });
    auto* gpsetc = app.add_subcommand("gpset", "Gaussian-prime set membership");
    gpsetc->add_option("line", arg_line)->required();
    gpsetc->add_option("pi", arg_beta)->required();
    gpsetc->callback([&] {
        require_not_csv(g);
        bool v = gp_set_contains(GaussianLine::parse(arg_line), GaussianInt::parse(arg_beta));
        if (json_out(g)) {
            std::cout << json{{"member", v}}.dump() << "\n";
        } else {
            std::cout << (v ? "member" : "not member") << "\n";
        }
        rc = v ? 0 : 1;
    });
    auto* profilec = app.add_subcommand("profile", "Exact prime-power division profile");
    profilec->add_option("line", arg_line)->required();
    profilec->add_option("p", arg_a)->required();
    profilec->callback([&] {
        require_not_csv(g);
        ExactPowerProfile prof = exact_power_profile(GaussianLine::parse(arg_line), Int(arg_a));
        if (auto* sp = std::get_if<SplitPowerProfile>(&prof)) {
            if (json_out(g)) {
                std::cout << json{{"case", "split"},
                                  {"pi", sp->pi.str()},
                                  {"pi_all_powers", sp->pi_all_powers},
                                  {"pi_conj", sp->pi_conj.str()},
                                  {"pi_conj_all_powers", sp->pi_conj_all_powers}}
                                 .dump()
                          << "\n";
            } else {
                std::cout << "case: split\n"
                          << "pi: " << sp->pi << "\n"
                          << "pi_all_powers: " << (sp->pi_all_powers ? "true" : "false") << "\n"
                          << "pi_conj: " << sp->pi_conj << "\n"
                          << "pi_conj_all_powers: " << (sp->pi_conj_all_powers ? "true" : "false")
                          << "\n";
            }
        } else if (auto* ta = std::get_if<TwoAdicProfile>(&prof)) {
            if (json_out(g)) {
                json ts = json::array();
                for (const Int& t : ta->exact_ts) ts.push_back(t.get_str());
                std::cout << json{{"case", "two-adic"},
                                  {"s", ta->s.get_str()},
                                  {"max_t", ta->max_t.get_str()},
                                  {"exact_ts", ts}}
                                 .dump()
                          << "\n";
            } else {
                std::cout << "case: two-adic\n"
                          << "s: " << ta->s << "\n"
                          << "max_t: " << ta->max_t << "\n"
                          << "exact_ts:";
                for (const Int& t : ta->exact_ts) std::cout << " " << t;
                std::cout << "\n";
            }
        } else {
            const auto& in = std::get<InertPowerProfile>(prof);
            if (json_out(g)) {
                std::cout << json{{"case", "inert"}, {"s", in.s.get_str()}}.dump() << "\n";
            } else {
                std::cout << "case: inert\n"
                          << "s: " << in.s << "\n";
            }
        }
    });

    // ---- CRT / construction ----
    std::string arg_spec;
    auto* crtc = app.add_subcommand("crt", "CRT over Z[i]; congruences \"residue@modulus,...\"");
    crtc->add_option("congruences", arg_spec)->required();
    crtc->callback([&] {
        require_not_csv(g);
        CrtSolution sol = crt_gaussian(parse_congruences(arg_spec));
        if (json_out(g)) {
            std::cout << json{{"value", sol.value.str()}, {"modulus", sol.modulus.str()}}.dump()
                      << "\n";
        } else {
            std::cout << sol.value << " mod " << sol.modulus << "\n";
        }
    });
    auto* crtlinec = app.add_subcommand("crtline", "CRT for a Gaussian line; constraints \"mu@b,...\"");
    crtlinec->add_option("line", arg_line)->required();
    crtlinec->add_option("constraints", arg_spec)->required();
    crtlinec->callback([&] {
        require_not_csv(g);
        LineCrtResult res = crt_line(GaussianLine::parse(arg_line), parse_constraints(arg_spec),
                                     factor_budget(g));
        if (json_out(g)) {
            std::cout << json{{"t", res.t.get_str()}, {"modulus", res.modulus.get_str()}}.dump()
                      << "\n";
        } else {
            std::cout << res.t << " mod " << res.modulus << "\n";
        }
    });
    std::string arg_lambda = "1";
    bool arg_randomize = false;
    auto* mklinec =
        app.add_subcommand("mkline", "Construct a primitive line with prescribed divisibility");
    mklinec->add_option("constraints", arg_spec)->required();
    mklinec->add_option("--lambda", arg_lambda, "Base-point multiplier (default 1)");
    mklinec->add_flag("--randomize", arg_randomize, "Draw lambda from --seed instead");
    mklinec->callback([&] {
        require_not_csv(g);
        ConstructOptions opts;
        opts.lambda = GaussianInt::parse(arg_lambda);
        if (arg_randomize) opts.randomize_seed = g.seed;
        if (g.budget > 0) opts.prime_candidate_budget = g.budget;
        opts.factor_budget = factor_budget(g);
        ConstructionResult res = construct_line(parse_constraints(arg_spec), opts);
        if (json_out(g)) {
            json gammas = json::array(), omegas = json::array();
            for (const auto& x : res.plan.gammas) gammas.push_back(x.str());
            for (const auto& x : res.plan.omegas) omegas.push_back(x.str());
            std::cout << json{{"line", res.line.str()},
                              {"alpha0", res.line.alpha0().str()},
                              {"delta", res.line.delta().str()},
                              {"plan",
                               {{"gammas", gammas},
                                {"lambda", res.plan.lambda.str()},
                                {"omegas", omegas},
                                {"beta", res.plan.beta.str()},
                                {"tau", res.plan.tau.str()},
                                {"M", res.plan.big_m.get_str()}}}}
                             .dump()
                      << "\n";
        } else {
            std::cout << "line: " << res.line << "\n"
                      << "alpha0: " << res.line.alpha0() << "\n"
                      << "delta: " << res.line.delta() << "\n"
                      << "lambda: " << res.plan.lambda << "\n"
                      << "beta: " << res.plan.beta << "\n"
                      << "tau: " << res.plan.tau << "\n"
                      << "M: " << res.plan.big_m << "\n";
        }
    });

    // ---- verification ----
    std::string arg_mode = "weak", arg_checkpoint;
    std::string arg_nmax = "10000";
    bool arg_resume = false, arg_negative = false, arg_timing = false;
    int arg_threads = static_cast<int>(std::thread::hardware_concurrency());
    unsigned long arg_sieve_bound = 10'000, arg_cp_every = 1'000'000;
    auto* bertrandc = app.add_subcommand("bertrand", "Verify a Bertrand-type conjecture on a line");
    bertrandc->add_option("line", arg_line)->required();
    bertrandc->add_option("--mode", arg_mode)->check(CLI::IsMember({"weak", "strong"}));
    bertrandc->add_option("--nmax", arg_nmax, "Verify for 1 < n <= nmax");
    bertrandc->add_option("--checkpoint", arg_checkpoint, "Checkpoint file (weak mode)");
    bertrandc->add_flag("--resume", arg_resume, "Resume from the checkpoint file");
    bertrandc->add_option("--threads", arg_threads, "Worker threads (default: hardware)");
    bertrandc->add_flag("--negative", arg_negative, "Also verify the mirrored direction n < -1");
    bertrandc->add_option("--sieve-bound", arg_sieve_bound, "Sieve prefilter prime bound");
    bertrandc->add_flag("--timing", arg_timing, "Include wall time in the report");
    bertrandc->add_option("--checkpoint-every", arg_cp_every, "Checkpoint cadence in indices");
    bertrandc->callback([&] {
        GaussianLine line = GaussianLine::parse(arg_line);
        VerifyOptions opts;
        opts.threads = arg_threads;
        opts.sieve_prime_bound = arg_sieve_bound;
        opts.checkpoint_path = arg_checkpoint;
        opts.resume = arg_resume;
        opts.checkpoint_every_indices = arg_cp_every;
        const bool strong = arg_mode == "strong";
        if (strong && (arg_resume || !arg_checkpoint.empty())) {
            throw CLI::ValidationError(
                "checkpoint/resume is supported for weak mode only (strong runs are bounded)");
        }
        Int n_max(arg_nmax);
        std::vector<BertrandReport> reports;
        reports.push_back(strong ? verify_strong(line, n_max, opts)
                                 : verify_weak(line, n_max, opts));
        if (arg_negative) {
            opts.negative_direction = true;
            reports.push_back(strong ? verify_strong(line, n_max, opts)
                                     : verify_weak(line, n_max, opts));
        }
        if (g.format == "csv") {
            std::cout << "line,verdict,n_max,primes_found,max_window_fill\n";
        }
        for (const auto& r : reports) {
            print_report(r, g, arg_timing);
            if (r.verdict != BertrandVerdict::Verified) rc = 1;
        }
    });

    // ---- prime APs ----
    unsigned long arg_k = 1;
    std::string arg_bound = "1000";
    auto* apc = app.add_subcommand("apsearch", "Shortest prime arithmetic progression on a line");
    apc->add_option("line", arg_line)->required();
    apc->add_option("-k,--length", arg_k, "Progression length")->required();
    apc->add_option("--bound", arg_bound, "Largest index considered");
    apc->callback([&] {
        require_not_csv(g);
        auto found = prime_ap_search(GaussianLine::parse(arg_line), arg_k, Int(arg_bound));
        if (json_out(g)) {
            json j{{"found", found.has_value()}};
            if (found) {
                json idx = json::array();
                for (const Int& n : *found) idx.push_back(n.get_str());
                j["indices"] = idx;
            }
            std::cout << j.dump() << "\n";
        } else if (found) {
            for (size_t i = 0; i < found->size(); ++i) std::cout << (i ? " " : "") << (*found)[i];
            std::cout << "\n";
        } else {
            std::cout << "none\n";
        }
        rc = found ? 0 : 1;
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return rc;
}
