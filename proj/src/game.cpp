#include "abe/game.hpp"

#include <cmath>
#include <sstream>

namespace abe {

KeyOracle::KeyOracle(const MasterKey& mk, const Policy& w0, const Policy& w1,
                     Rng& rng, std::optional<std::size_t> query_limit)
    : mk_(mk), w0_(w0), w1_(w1), rng_(rng), query_limit_(query_limit) {}

std::optional<SecretKey> KeyOracle::query(const AttributeList& list) {
    if (query_limit_ && query_count() >= *query_limit_)
        return std::nullopt;
    bool sat0 = satisfies(list, w0_);
    bool sat1 = satisfies(list, w1_);
    bool admissible = sat0 == sat1;
    verdicts_.push_back(admissible);
    if (!admissible) return std::nullopt;
    if (sat0 && sat1) satisfied_both_ = true;
    return keygen(mk_, list, rng_);
}

std::string GameResult::transcript_log() const {
    std::ostringstream out;
    for (const auto& t : transcripts) {
        out << "trial=" << t.index << " d=" << t.d << " dprime=" << t.d_prime
            << " queries=" << t.query_count << " verdicts=";
        if (t.verdicts.empty()) out << "-";
        for (bool v : t.verdicts) out << (v ? 'A' : 'R');
        out << " result="
            << (t.aborted ? "aborted" : (t.correct() ? "correct" : "wrong"));
        if (t.aborted) out << " reason=\"" << t.abort_reason << "\"";
        out << "\n";
    }
    return out.str();
}

GameResult run_game(Adversary& adversary, UniversePtr universe, ParamsPtr params,
                    const GameConfig& config) {
    GameResult result;
    Bytes seed_bytes;
    append_u64(seed_bytes, config.seed);

    for (std::size_t trial = 0; trial < config.trials; ++trial) {
        SeededRng rng = SeededRng::derive(seed_bytes, trial);
        TrialRecord record;
        record.index = trial;

        auto [w0, w1] = adversary.choose_policies(universe, rng);
        auto [pk, mk] = setup(universe, params, rng);
        adversary.receive_public_key(pk);

        KeyOracle oracle(mk, w0, w1, rng, config.query_limit);
        adversary.phase1(oracle, rng);

        auto [m0, m1] = adversary.choose_messages(params, rng);
        if (oracle.any_key_satisfies_both() && !(m0 == m1)) {
            record.aborted = true;
            record.abort_reason = "distinct messages after both-satisfying key";
            record.query_count = oracle.query_count();
            record.verdicts = oracle.verdicts();
            result.transcripts.push_back(std::move(record));
            continue;
        }

        int d = static_cast<int>(rng.next_u64() & 1);
        const Policy& wd = d == 0 ? w0 : w1;
        Ciphertext challenge = encrypt(pk, d == 0 ? m0 : m1, wd, rng);

        adversary.phase2(oracle, rng);
        int d_prime = adversary.guess(challenge, rng);

        record.d = d;
        record.d_prime = d_prime;
        record.query_count = oracle.query_count();
        record.verdicts = oracle.verdicts();
        if (record.correct()) ++result.correct;
        ++result.trials;
        result.transcripts.push_back(std::move(record));
    }

    if (result.trials > 0) {
        double p_hat = static_cast<double>(result.correct) / result.trials;
        double half_width =
            1.96 * std::sqrt(p_hat * (1.0 - p_hat) / result.trials);
        result.advantage = p_hat - 0.5;
        result.ci_low = result.advantage - half_width;
        result.ci_high = result.advantage + half_width;
    }
    return result;
}

DBDHInstance make_dbdh_instance(const ParamsPtr& params, bool real, Rng& rng) {
    GElement g = generator(params);
    Scalar a = random_scalar(params, rng);
    Scalar b = random_scalar(params, rng);
    Scalar c = random_scalar(params, rng);
    GTElement z = real ? pow(pairing_base(params), a.mul(b).mul(c))
                       : random_gt(params, rng);
    return {params, pow(g, a), pow(g, b), pow(g, c), std::move(z), real};
}

}  // namespace abe
