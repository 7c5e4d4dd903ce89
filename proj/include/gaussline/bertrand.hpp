#pragma once

#include "gaussline/gaussian_int.hpp"
#include "gaussline/line.hpp"

#include <optional>
#include <string>
#include <vector>

namespace gaussline {

enum class BertrandMode { Weak, Strong };

enum class BertrandVerdict { Verified, Counterexample, BudgetExhausted };

std::string to_string(BertrandMode mode);
std::string to_string(BertrandVerdict verdict);

/// Resumable progress record; serialized as one JSON object per line of the
/// checkpoint file. primes_found and max_window_fill ride along so a resumed
/// run reproduces the one-shot report exactly.
struct Checkpoint {
    std::string line;     // canonical textual form
    Int verified_up_to;   // largest n with the conjecture established
    Int chain_tail;       // index of the last prime in the chain
    BertrandMode mode;
    bool negative = false;  // mirrored-direction run
    Int primes_found;
    double max_window_fill = 0.0;
    std::string timestamp;  // ISO-8601 UTC
};

struct BertrandReport {
    std::string line;
    BertrandMode mode;
    bool negative = false;
    Int n_max;
    BertrandVerdict verdict = BertrandVerdict::Verified;
    std::optional<Int> counterexample_n;
    Int primes_found;
    // Largest fraction of a window scanned before a prime appeared.
    double max_window_fill = 0.0;
    double wall_time_seconds = 0.0;
};

struct VerifyOptions {
    int threads = 1;
    // Sieve prefilter bound; effective bound is tuned down for small windows.
    unsigned long sieve_prime_bound = 10'000;
    // Checkpointing: disabled when the path is empty.
    std::string checkpoint_path;
    bool resume = false;
    unsigned long checkpoint_every_indices = 1'000'000;
    double checkpoint_every_seconds = 30.0;
    // Walk the mirrored direction (indices n < -1) instead of n > 1.
    bool negative_direction = false;
};

/// Least n in (from, from + window] whose point is a Gaussian prime, or
/// absent. Sieve-prefiltered, then primality-tested in ascending order.
std::optional<Int> next_prime_index(const GaussianLine& line, const Int& from, const Int& window,
                                    const VerifyOptions& options = {});

/// Weak Bertrand verification: builds the prime chain l_1 < l_2 < ... with
/// each l_{i+1} in (l_i, l_i + N(point(l_i))], starting from the window
/// after index 1, until the chain passes n_max. Sound because N(point(n))
/// is strictly increasing for n > 0 on canonical lines.
BertrandReport verify_weak(const GaussianLine& line, const Int& n_max,
                           const VerifyOptions& options = {});

/// Strong Bertrand verification: per-index check that some Gaussian prime
/// index lies in (n, n + nu(point(n))] for every 1 < n <= n_max. Per-index
/// because nu is not monotonic; discovered primes are cached and reused.
BertrandReport verify_strong(const GaussianLine& line, const Int& n_max,
                             const VerifyOptions& options = {});

/// Composite prefilter over indices [lo, hi): bit n-lo survives unless
/// f(n) = N(point(n)) has a rational prime factor q <= prime_bound with
/// f(n) not a power of q. Survival is necessary, not sufficient, for the
/// point to be a Gaussian prime; no prime index is ever struck.
std::vector<bool> sieve_candidates(const GaussianLine& line, const Int& lo, const Int& hi,
                                   unsigned long prime_bound);

/// Lexicographically least (start, step), start >= 0, step >= 1, with all of
/// start, start+step, ..., start+(k-1)*step <= n_bound prime points; returns
/// the k indices, or absent. k = 1 returns the least prime index.
std::optional<std::vector<Int>> prime_ap_search(const GaussianLine& line, unsigned long k,
                                                const Int& n_bound);

/// Append a checkpoint record to the file (one JSON object per line).
void append_checkpoint(const std::string& path, const Checkpoint& record);

/// Latest checkpoint in the file matching (line, mode, negative), if any.
std::optional<Checkpoint> load_checkpoint(const std::string& path, const std::string& line,
                                          BertrandMode mode, bool negative);

}  // namespace gaussline
