#include "gaussline/bertrand.hpp"

#include "gaussline/primality.hpp"

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <ctime>
#include <deque>
#include <fstream>
#include <future>

namespace gaussline {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

std::string now_utc_iso8601() {
    std::time_t t = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

Int mod_reduce(const Int& a, const Int& m) {
    Int r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

// One walking direction along a line: point(n) = base + n*step for n >= 0.
// The mirrored direction flips step and the odd polynomial coefficient.
struct Walk {
    GaussianInt base;
    GaussianInt step;
    Int A, B, C;  // N(point(n)) = A n^2 + B n + C
    Int Delta;

    GaussianInt at(const Int& n) const { return base + step * n; }
    Int norm_at(const Int& n) const { return (A * n + B) * n + C; }
};

Walk make_walk(const GaussianLine& line, bool negative) {
    auto poly = line.norm_poly();
    if (!negative) return {line.alpha0(), line.delta(), poly.A, poly.B, poly.C, line.invariant()};
    return {line.alpha0(), -line.delta(), poly.A, -poly.B, poly.C, line.invariant()};
}

// Is the point at index n a Gaussian prime? Norm-first: the norm being a
// rational prime settles it; otherwise only an associate of an inert
// rational prime (norm q^2, point on an axis) qualifies.
bool is_prime_point(const Walk& walk, const Int& n) {
    Int f = walk.norm_at(n);
    if (f <= 1) return false;
    if (is_rational_prime(f)) return true;
    if (!mpz_perfect_square_p(f.get_mpz_t())) return false;
    Int q;
    mpz_sqrt(q.get_mpz_t(), f.get_mpz_t());
    if (q % 4 != 3 || !is_rational_prime(q)) return false;
    GaussianInt point = walk.at(n);
    return point.re() == 0 || point.im() == 0;
}

std::vector<std::uint32_t> primes_up_to(std::uint32_t bound) {
    std::vector<char> composite(bound + 1, 0);
    std::vector<std::uint32_t> out;
    for (std::uint32_t p = 2; p <= bound; ++p) {
        if (composite[p]) continue;
        out.push_back(p);
        for (std::uint64_t m = (std::uint64_t)p * p; m <= bound; m += p) composite[m] = 1;
    }
    return out;
}

u64 powmod_small(u64 base, u64 exp, u64 m) {
    u64 out = 1 % m;
    base %= m;
    while (exp > 0) {
        if (exp & 1) out = (u128)out * base % m;
        base = (u128)base * base % m;
        exp >>= 1;
    }
    return out;
}

u64 inv_mod_prime(u64 x, u64 q) { return powmod_small(x % q, q - 2, q); }

// Prepared striking table for f(n) = A n^2 + B n + C over one walk: the
// roots of f mod q for every prime q <= bound that has any. Root-finding
// needs only a square root of -1 mod q since Disc(f) = -4*Delta^2.
class SieveContext {
public:
    SieveContext(Int A, Int B, Int C, Int Delta, unsigned long bound)
        : A_(std::move(A)), B_(std::move(B)), C_(std::move(C)), Delta_(std::move(Delta)) {
        bound = std::min(bound, 1'000'000ul);
        if (bound < 2) return;
        for (std::uint32_t q : primes_up_to(static_cast<std::uint32_t>(bound))) {
            Entry e;
            e.q = q;
            if (q == 2) {
                if (mpz_even_p(C_.get_mpz_t())) e.roots[e.nroots++] = 0;
                Int f1 = A_ + B_ + C_;
                if (mpz_even_p(f1.get_mpz_t())) e.roots[e.nroots++] = 1;
            } else {
                u64 aq = mpz_fdiv_ui(A_.get_mpz_t(), q);
                u64 bq = mpz_fdiv_ui(B_.get_mpz_t(), q);
                u64 cq = mpz_fdiv_ui(C_.get_mpz_t(), q);
                u64 dq = mpz_fdiv_ui(Delta_.get_mpz_t(), q);
                if (aq != 0) {
                    u64 inv2a = inv_mod_prime(2 * aq % q, q);
                    if (dq == 0) {
                        e.roots[e.nroots++] = (u128)((q - bq) % q) * inv2a % q;
                    } else if (q % 4 == 1) {
                        u64 x = sqrt_minus_one_mod_u64(q);
                        u64 sq = (u128)(2 * dq % q) * x % q;  // sqrt of -4*Delta^2
                        e.roots[e.nroots++] = (u128)(((q - bq) + sq) % q) * inv2a % q;
                        e.roots[e.nroots++] = (u128)(((q - bq) + (q - sq)) % q) * inv2a % q;
                    }
                    // q = 3 (mod 4), q coprime to Delta: -4*Delta^2 is a
                    // non-residue, no roots.
                } else if (bq != 0) {
                    e.roots[e.nroots++] = (u128)((q - cq) % q) * inv_mod_prime(bq, q) % q;
                }
                // aq == bq == 0 forces q | C on a line through a lattice
                // point, impossible on primitive input; strike nothing.
            }
            if (e.nroots > 0) entries_.push_back(e);
        }
    }

    // Survival bits over [lo, hi): false means f(n) has a factor q <= bound
    // with f(n) not a q-power.
    std::vector<bool> run(const Int& lo, const Int& hi) const {
        if (hi <= lo) return {};
        size_t len = mpz_get_ui(Int(hi - lo).get_mpz_t());
        std::vector<bool> alive(len, true);
        for (const Entry& e : entries_) {
            for (int i = 0; i < e.nroots; ++i) {
                Int first = mod_reduce(Int(static_cast<unsigned long>(e.roots[i])) - lo, e.q);
                for (size_t idx = mpz_get_ui(first.get_mpz_t()); idx < len; idx += e.q) {
                    alive[idx] = false;
                }
            }
        }
        restore_prime_powers(lo, hi, alive);
        return alive;
    }

private:
    struct Entry {
        u64 q = 0;
        u64 roots[2] = {0, 0};
        int nroots = 0;
    };

    Int eval(const Int& n) const { return (A_ * n + B_) * n + C_; }

    // Mark n with f(n) an exact prime power q^k back alive: such a point can
    // still be a Gaussian prime (norm q or inert q^2).
    void restore_prime_powers(const Int& lo, const Int& hi, std::vector<bool>& alive) const {
        Int last = hi - 1;
        Int f_lo = eval(lo), f_hi = eval(last);
        Int fmax = std::max(f_lo, f_hi);
        Int fmin = std::min(f_lo, f_hi);
        Int v0;
        mpz_fdiv_q(v0.get_mpz_t(), Int(-B_).get_mpz_t(), Int(2 * A_).get_mpz_t());
        for (const Int& cand : {v0, Int(v0 + 1)}) {
            if (cand >= lo && cand <= last) fmin = std::min(fmin, eval(cand));
        }
        Int twoA = 2 * A_;
        for (const Entry& e : entries_) {
            Int qk(static_cast<unsigned long>(e.q));
            while (qk < fmin) qk *= e.q;
            for (; qk <= fmax; qk *= e.q) {
                Int disc = B_ * B_ - 4 * A_ * (C_ - qk);
                if (disc < 0 || !mpz_perfect_square_p(disc.get_mpz_t())) continue;
                Int root;
                mpz_sqrt(root.get_mpz_t(), disc.get_mpz_t());
                for (const Int& num : {Int(-B_ + root), Int(-B_ - root)}) {
                    if (!mpz_divisible_p(num.get_mpz_t(), twoA.get_mpz_t())) continue;
                    Int n = num / twoA;
                    if (n >= lo && n <= last) {
                        alive[mpz_get_ui(Int(n - lo).get_mpz_t())] = true;
                    }
                }
            }
        }
    }

    Int A_, B_, C_, Delta_;
    std::vector<Entry> entries_;
};

// Least prime index in (from, from + window], sieving block by block.
std::optional<Int> next_prime_in_walk(const Walk& walk, const SieveContext* ctx, const Int& from,
                                      const Int& window, int threads) {
    const unsigned long block = 1 << 14;
    Int end = from + window;
    Int pos = from;
    while (pos < end) {
        Int hi = pos + block;
        if (hi > end) hi = end;
        size_t len = mpz_get_ui(Int(hi - pos).get_mpz_t());
        if (ctx == nullptr || len < 64) {
            for (Int n = pos + 1; n <= hi; ++n) {
                if (is_prime_point(walk, n)) return n;
            }
        } else {
            std::vector<bool> alive = ctx->run(pos + 1, hi + 1);
            std::vector<size_t> survivors;
            survivors.reserve(len / 4);
            for (size_t i = 0; i < len; ++i) {
                if (alive[i]) survivors.push_back(i);
            }
            if (threads <= 1) {
                for (size_t i : survivors) {
                    Int n = pos + 1 + static_cast<unsigned long>(i);
                    if (is_prime_point(walk, n)) return n;
                }
            } else {
                // Waves of candidates, each split across threads; the least
                // prime in a wave wins, so results match the serial order.
                const size_t wave = static_cast<size_t>(threads) * 16;
                for (size_t w = 0; w < survivors.size(); w += wave) {
                    size_t wend = std::min(survivors.size(), w + wave);
                    std::vector<std::future<std::optional<size_t>>> futs;
                    size_t per = (wend - w + threads - 1) / threads;
                    for (size_t t0 = w; t0 < wend; t0 += per) {
                        size_t t1 = std::min(wend, t0 + per);
                        futs.push_back(std::async(std::launch::async, [&, t0, t1] {
                            for (size_t i = t0; i < t1; ++i) {
                                Int n = pos + 1 + static_cast<unsigned long>(survivors[i]);
                                if (is_prime_point(walk, n)) return std::optional<size_t>(i);
                            }
                            return std::optional<size_t>();
                        }));
                    }
                    std::optional<size_t> best;
                    for (auto& f : futs) {
                        auto r = f.get();
                        if (r && (!best || *r < *best)) best = r;
                    }
                    if (best) return Int(pos + 1 + static_cast<unsigned long>(survivors[*best]));
                }
            }
        }
        pos = hi;
    }
    return std::nullopt;
}

nlohmann::json checkpoint_to_json(const Checkpoint& cp) {
    return nlohmann::json{{"line", cp.line},
                          {"verified_up_to", cp.verified_up_to.get_str()},
                          {"chain_tail", cp.chain_tail.get_str()},
                          {"mode", to_string(cp.mode)},
                          {"negative", cp.negative},
                          {"primes_found", cp.primes_found.get_str()},
                          {"max_window_fill", cp.max_window_fill},
                          {"timestamp", cp.timestamp}};
}

}  // namespace

std::string to_string(BertrandMode mode) {
    return mode == BertrandMode::Weak ? "weak" : "strong";
}

std::string to_string(BertrandVerdict verdict) {
    switch (verdict) {
        case BertrandVerdict::Verified: return "verified";
        case BertrandVerdict::Counterexample: return "counterexample";
        case BertrandVerdict::BudgetExhausted: return "budget_exhausted";
    }
    return "?";
}

void append_checkpoint(const std::string& path, const Checkpoint& record) {
    std::ofstream out(path, std::ios::app);
    if (!out) throw std::runtime_error("cannot open checkpoint file: " + path);
    out << checkpoint_to_json(record).dump() << "\n";
}

std::optional<Checkpoint> load_checkpoint(const std::string& path, const std::string& line,
                                          BertrandMode mode, bool negative) {
    std::ifstream in(path);
    if (!in) return std::nullopt;
    std::optional<Checkpoint> last;
    std::string row;
    while (std::getline(in, row)) {
        if (row.empty()) continue;
        nlohmann::json j = nlohmann::json::parse(row, nullptr, false);
        if (j.is_discarded()) continue;  // tolerate a torn trailing record
        if (j.value("line", "") != line || j.value("mode", "") != to_string(mode) ||
            j.value("negative", false) != negative) {
            continue;
        }
        Checkpoint cp;
        cp.line = line;
        cp.mode = mode;
        cp.negative = negative;
        cp.verified_up_to = Int(j.at("verified_up_to").get<std::string>());
        cp.chain_tail = Int(j.at("chain_tail").get<std::string>());
        cp.primes_found = Int(j.at("primes_found").get<std::string>());
        cp.max_window_fill = j.at("max_window_fill").get<double>();
        cp.timestamp = j.value("timestamp", "");
        last = cp;
    }
    return last;
}

std::optional<Int> next_prime_index(const GaussianLine& line, const Int& from, const Int& window,
                                    const VerifyOptions& options) {
    if (!line.primitive()) throw std::invalid_argument("next_prime_index: line is not primitive");
    if (window < 1) return std::nullopt;
    Walk walk = make_walk(line, options.negative_direction);
    if (window < 256) {
        return next_prime_in_walk(walk, nullptr, from, window, 1);
    }
    SieveContext ctx(walk.A, walk.B, walk.C, walk.Delta, options.sieve_prime_bound);
    return next_prime_in_walk(walk, &ctx, from, window, std::max(1, options.threads));
}

BertrandReport verify_weak(const GaussianLine& line, const Int& n_max,
                           const VerifyOptions& options) {
    if (!line.primitive()) throw std::invalid_argument("verify_weak: line is not primitive");
    if (n_max <= 1) throw std::invalid_argument("verify_weak: n_max must be > 1");
    auto t_start = std::chrono::steady_clock::now();
    Walk walk = make_walk(line, options.negative_direction);
    SieveContext ctx(walk.A, walk.B, walk.C, walk.Delta, options.sieve_prime_bound);
    int threads = std::max(1, options.threads);

    BertrandReport report;
    report.line = line.str();
    report.mode = BertrandMode::Weak;
    report.negative = options.negative_direction;
    report.n_max = n_max;

    Int ell = 1;
    Int primes_found = 0;
    double max_fill = 0.0;

    if (options.resume && !options.checkpoint_path.empty()) {
        auto cp = load_checkpoint(options.checkpoint_path, report.line, BertrandMode::Weak,
                                  options.negative_direction);
        if (cp) {
            if (!is_prime_point(walk, cp->chain_tail)) {
                throw std::runtime_error("corrupt checkpoint: chain tail " +
                                         cp->chain_tail.get_str() + " is not a prime index");
            }
            ell = cp->chain_tail;
            primes_found = cp->primes_found;
            max_fill = cp->max_window_fill;
        }
    }

    auto last_cp = std::chrono::steady_clock::now();
    Int indices_since_cp = 0;
    const auto write_cp = [&]() {
        if (options.checkpoint_path.empty() || primes_found == 0) return;
        Checkpoint cp{report.line, ell - 1,      ell,     BertrandMode::Weak,
                      report.negative, primes_found, max_fill, now_utc_iso8601()};
        append_checkpoint(options.checkpoint_path, cp);
    };

    while (ell <= n_max) {
        Int window = walk.norm_at(ell);
        std::optional<Int> nxt = next_prime_in_walk(walk, &ctx, ell, window, threads);
        if (!nxt && ell == 1) {
            // Bootstrap fallback: the chain wants a prime in (1, 1+N(a_1)],
            // but the conjecture only quantifies over n > 1, whose tightest
            // window is (2, 2+N(a_2)] -- a superset, since n + N(a_n) is
            // increasing. A prime there still covers every 1 < n < l_1.
            Int reach = 2 + walk.norm_at(2);
            nxt = next_prime_in_walk(walk, &ctx, 1 + window, reach - (1 + window), threads);
            if (!nxt) {
                report.verdict = BertrandVerdict::Counterexample;
                report.counterexample_n = 2;
                break;
            }
            window = walk.norm_at(2);
            ell = 2;  // fill is measured against n = 2's window
        }
        if (!nxt) {
            report.verdict = BertrandVerdict::Counterexample;
            report.counterexample_n = ell;
            break;
        }
        Int gap = *nxt - ell;
        max_fill = std::max(max_fill, gap.get_d() / window.get_d());
        ++primes_found;
        ell = *nxt;
        indices_since_cp += gap;
        auto now = std::chrono::steady_clock::now();
        if (indices_since_cp >= options.checkpoint_every_indices ||
            std::chrono::duration<double>(now - last_cp).count() >=
                options.checkpoint_every_seconds) {
            write_cp();
            last_cp = now;
            indices_since_cp = 0;
        }
    }
    write_cp();
    report.primes_found = primes_found;
    report.max_window_fill = max_fill;
    report.wall_time_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
    return report;
}

BertrandReport verify_strong(const GaussianLine& line, const Int& n_max,
                             const VerifyOptions& options) {
    if (!line.primitive()) throw std::invalid_argument("verify_strong: line is not primitive");
    if (n_max <= 1) throw std::invalid_argument("verify_strong: n_max must be > 1");
    auto t_start = std::chrono::steady_clock::now();
    Walk walk = make_walk(line, options.negative_direction);

    BertrandReport report;
    report.line = line.str();
    report.mode = BertrandMode::Strong;
    report.negative = options.negative_direction;
    report.n_max = n_max;

    std::deque<Int> cache;  // prime indices in (n, frontier], ascending
    Int frontier = 1;
    Int primes_found = 0;
    double max_fill = 0.0;

    for (Int n = 2; n <= n_max; ++n) {
        Int width = nu(walk.at(n));
        Int target = n + width;
        while (!cache.empty() && cache.front() <= n) cache.pop_front();
        while (cache.empty() && frontier < target) {
            ++frontier;
            if (is_prime_point(walk, frontier)) {
                cache.push_back(frontier);
                ++primes_found;
            }
        }
        if (!cache.empty() && cache.front() <= target) {
            Int gap = cache.front() - n;
            max_fill = std::max(max_fill, gap.get_d() / width.get_d());
        } else {
            report.verdict = BertrandVerdict::Counterexample;
            report.counterexample_n = n;
            break;
        }
    }
    report.primes_found = primes_found;
    report.max_window_fill = max_fill;
    report.wall_time_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
    return report;
}

std::vector<bool> sieve_candidates(const GaussianLine& line, const Int& lo, const Int& hi,
                                   unsigned long prime_bound) {
    if (!line.primitive()) throw std::invalid_argument("sieve_candidates: line is not primitive");
    if (hi <= lo) return {};
    if (Int(hi - lo) > 100'000'000) {
        throw std::invalid_argument("sieve_candidates: range too large");
    }
    auto poly = line.norm_poly();
    SieveContext ctx(poly.A, poly.B, poly.C, line.invariant(), prime_bound);
    return ctx.run(lo, hi);
}

std::optional<std::vector<Int>> prime_ap_search(const GaussianLine& line, unsigned long k,
                                                const Int& n_bound) {
    if (!line.primitive()) throw std::invalid_argument("prime_ap_search: line is not primitive");
    if (k < 1) throw std::invalid_argument("prime_ap_search: k must be >= 1");
    if (n_bound < 0) return std::nullopt;
    if (n_bound > 50'000'000) throw budget_error("prime_ap_search: n_bound too large");
    Walk walk = make_walk(line, false);
    unsigned long bound = mpz_get_ui(n_bound.get_mpz_t());
    std::vector<char> prime(bound + 1, 0);
    for (unsigned long n = 0; n <= bound; ++n) prime[n] = is_prime_point(walk, Int(n));

    for (unsigned long start = 0; start <= bound; ++start) {
        if (!prime[start]) continue;
        if (k == 1) return std::vector<Int>{Int(start)};
        for (unsigned long step = 1; start + (k - 1) * step <= bound; ++step) {
            bool ok = true;
            for (unsigned long j = 1; j < k; ++j) {
                if (!prime[start + j * step]) {
                    ok = false;
                    break;
                }
            }
            if (ok) {
                std::vector<Int> out;
                for (unsigned long j = 0; j < k; ++j) out.push_back(Int(start + j * step));
                return out;
            }
        }
    }
    return std::nullopt;
}

}  // namespace gaussline
