#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "abe/hybrid.hpp"

namespace {

// Exit codes: 0 ok, 1 usage, 2 crypto / not satisfied, 3 format / integrity.
constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kCrypto = 2;
constexpr int kFormat = 3;

abe::Bytes read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw abe::Error("cannot open " + path);
    return abe::Bytes(std::istreambuf_iterator<char>(in),
                      std::istreambuf_iterator<char>());
}

std::string read_text_file(const std::string& path) {
    auto bytes = read_file(path);
    return std::string(bytes.begin(), bytes.end());
}

void write_file(const std::string& path, std::span<const std::uint8_t> data) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw abe::Error("cannot open " + path + " for writing");
    out.write(reinterpret_cast<const char*>(data.data()),
              static_cast<std::streamsize>(data.size()));
    if (!out) throw abe::Error("write to " + path + " failed");
}

std::vector<std::uint8_t> parse_hex(const std::string& hex) {
    if (hex.size() % 2) throw abe::Error("odd-length hex seed");
    std::vector<std::uint8_t> out;
    for (std::size_t i = 0; i < hex.size(); i += 2)
        out.push_back(static_cast<std::uint8_t>(
            std::stoul(hex.substr(i, 2), nullptr, 16)));
    return out;
}

int run(int argc, char** argv) {
    CLI::App app{"Attribute-based file encryption with hidden access policies"};
    app.require_subcommand(1);

    // setup
    std::string universe_path, pk_path, mk_path, seed_hex;
    unsigned bits = 61;
    auto* setup_cmd = app.add_subcommand("setup", "generate public and master keys");
    setup_cmd->add_option("--universe", universe_path, "universe file")->required();
    setup_cmd->add_option("--pk", pk_path, "public key output")->required();
    setup_cmd->add_option("--mk", mk_path, "master key output")->required();
    setup_cmd->add_option("--bits", bits, "prime bit length (61..63)");
    setup_cmd->add_option("--seed", seed_hex, "hex seed for deterministic setup");

    // keygen
    std::string kg_mk, attrs_text, sk_out;
    auto* keygen_cmd = app.add_subcommand("keygen", "issue an attribute secret key");
    keygen_cmd->add_option("--mk", kg_mk, "master key file")->required();
    keygen_cmd->add_option("--attrs", attrs_text, "attribute list, e.g. dept=cs,level=phd")
        ->required();
    keygen_cmd->add_option("--out", sk_out, "secret key output")->required();

    // encrypt
    std::string enc_pk, policy_text, in_path, out_path;
    auto* encrypt_cmd = app.add_subcommand("encrypt", "encrypt a file under a policy");
    encrypt_cmd->add_option("--pk", enc_pk, "public key file")->required();
    encrypt_cmd->add_option("--policy", policy_text, "access policy")->required();
    encrypt_cmd->add_option("--in", in_path, "plaintext input")->required();
    encrypt_cmd->add_option("--out", out_path, "ciphertext output")->required();

    // decrypt
    std::string dec_sk, dec_in, dec_out;
    auto* decrypt_cmd = app.add_subcommand("decrypt", "decrypt a file blindly");
    decrypt_cmd->add_option("--sk", dec_sk, "secret key file")->required();
    decrypt_cmd->add_option("--in", dec_in, "ciphertext input")->required();
    decrypt_cmd->add_option("--out", dec_out, "plaintext output")->required();

    // policy-check
    std::string pc_universe, pc_policy, pc_attrs;
    auto* check_cmd =
        app.add_subcommand("policy-check", "test an attribute list against a policy");
    check_cmd->add_option("--universe", pc_universe, "universe file")->required();
    check_cmd->add_option("--policy", pc_policy, "access policy")->required();
    check_cmd->add_option("--attrs", pc_attrs, "attribute list")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kOk : kUsage;
    }

    if (*setup_cmd) {
        auto universe = abe::Universe::parse(read_text_file(universe_path));
        abe::ParamsPtr params;
        abe::SeededRng seeded(0);
        abe::SystemRng system;
        abe::Rng* rng = &system;
        if (!seed_hex.empty()) {
            auto seed = parse_hex(seed_hex);
            params = abe::group_setup(bits, abe::BackendId::Transparent,
                                      std::span<const std::uint8_t>(seed));
            // Key material comes from a derived stream so it does not replay
            // the draws used for prime generation.
            seeded = abe::SeededRng::derive(std::span<const std::uint8_t>(seed), 1);
            rng = &seeded;
        } else {
            params = abe::group_setup(bits, abe::BackendId::Transparent);
        }
        auto [pk, mk] = abe::setup(universe, params, *rng);
        write_file(pk_path, pk.serialize());
        write_file(mk_path, mk.serialize());
        return kOk;
    }

    if (*keygen_cmd) {
        auto mk = abe::MasterKey::deserialize(read_file(kg_mk));
        auto list = abe::AttributeList::parse(mk.universe, attrs_text);
        abe::SystemRng rng;
        auto sk = abe::keygen(mk, list, rng);
        write_file(sk_out, sk.serialize());
        return kOk;
    }

    if (*encrypt_cmd) {
        auto pk = abe::PublicKey::deserialize(read_file(enc_pk));
        auto policy = abe::parse_policy(policy_text, pk.universe);
        auto plain = read_file(in_path);
        abe::SystemRng rng;
        auto ct = abe::hybrid_encrypt(pk, policy, plain, rng);
        write_file(out_path, ct.serialize());
        return kOk;
    }

    if (*decrypt_cmd) {
        auto sk = abe::SecretKey::deserialize(read_file(dec_sk));
        auto ct = abe::HybridCiphertext::deserialize(read_file(dec_in));
        // Plaintext stays in memory until the MAC has verified; the output
        // file is not touched on any failure path.
        auto plain = abe::hybrid_decrypt(sk, ct);
        write_file(dec_out, plain);
        return kOk;
    }

    if (*check_cmd) {
        auto universe = abe::Universe::parse(read_text_file(pc_universe));
        auto policy = abe::parse_policy(pc_policy, universe);
        auto list = abe::AttributeList::parse(universe, pc_attrs);
        if (abe::satisfies(list, policy)) {
            std::cout << "satisfied\n";
            return kOk;
        }
        std::cout << "unsatisfied\n";
        return kCrypto;
    }

    return kUsage;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const abe::NotSatisfiedError&) {
        // Deliberately unspecific: the hidden policy extends to error text.
        std::cerr << "error: not satisfied or wrong key\n";
        return kCrypto;
    } catch (const abe::IntegrityError&) {
        std::cerr << "error: ciphertext integrity check failed\n";
        return kFormat;
    } catch (const abe::FormatError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kFormat;
    } catch (const abe::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const abe::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }
}
