#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "abe/scheme.hpp"

namespace abe {

// Executable indistinguishability game. The adversary names two challenge
// policies, may query keys subject to the admissibility constraint
// (L satisfies both challenge policies or neither), receives the encryption
// of one of its two messages under the corresponding policy, and guesses
// which. Advantage = Pr[guess correct] - 1/2, reported with a binomial
// 95% confidence interval.

// Key-query oracle handed to the adversary during phases 1 and 2. Rejects
// inadmissible queries (the query fails, the game continues).
class KeyOracle {
public:
    KeyOracle(const MasterKey& mk, const Policy& w0, const Policy& w1, Rng& rng,
              std::optional<std::size_t> query_limit);

    std::optional<SecretKey> query(const AttributeList& list);

    bool any_key_satisfies_both() const { return satisfied_both_; }
    std::size_t query_count() const { return verdicts_.size(); }
    const std::vector<bool>& verdicts() const { return verdicts_; }

private:
    const MasterKey& mk_;
    const Policy& w0_;
    const Policy& w1_;
    Rng& rng_;
    std::optional<std::size_t> query_limit_;
    bool satisfied_both_ = false;
    std::vector<bool> verdicts_;  // true = admissible, key granted
};

class Adversary {
public:
    virtual ~Adversary() = default;

    // Init: the two challenge access policies, fixed before setup.
    virtual std::pair<Policy, Policy> choose_policies(const UniversePtr& universe,
                                                      Rng& rng) = 0;
    // Setup: public parameters.
    virtual void receive_public_key(const PublicKey& pk) {}
    // Phases 1 and 2: key queries through the oracle.
    virtual void phase1(KeyOracle& oracle, Rng& rng) {}
    virtual void phase2(KeyOracle& oracle, Rng& rng) {}
    // Challenge: two messages. If a granted key satisfies both challenge
    // policies they must be equal; the challenger enforces this.
    virtual std::pair<GTElement, GTElement> choose_messages(const ParamsPtr& params,
                                                            Rng& rng) = 0;
    // Guess.
    virtual int guess(const Ciphertext& challenge, Rng& rng) = 0;
};

struct TrialRecord {
    std::size_t index = 0;
    int d = 0;
    int d_prime = 0;
    std::size_t query_count = 0;
    std::vector<bool> verdicts;
    bool aborted = false;     // adversary interface violation
    std::string abort_reason;

    bool correct() const { return !aborted && d == d_prime; }
};

struct GameResult {
    std::size_t trials = 0;     // completed (non-aborted) trials
    std::size_t correct = 0;
    double advantage = 0.0;     // correct/trials - 1/2
    double ci_low = 0.0;        // 95% CI on the advantage
    double ci_high = 0.0;
    std::vector<TrialRecord> transcripts;

    // Line-delimited transcript log, one record per trial.
    std::string transcript_log() const;
};

struct GameConfig {
    std::size_t trials = 1000;
    std::optional<std::size_t> query_limit;  // unbounded by default
    std::uint64_t seed = 0;
};

GameResult run_game(Adversary& adversary, UniversePtr universe, ParamsPtr params,
                    const GameConfig& config);

// DBDH instance generator: (g^a, g^b, g^c, Z) with Z = e(g,g)^{abc} when
// real, uniform in G_T otherwise. The ground-truth flag is kept for scoring.
struct DBDHInstance {
    ParamsPtr params;
    GElement g_a;
    GElement g_b;
    GElement g_c;
    GTElement z;
    bool real;
};

DBDHInstance make_dbdh_instance(const ParamsPtr& params, bool real, Rng& rng);

}  // namespace abe
