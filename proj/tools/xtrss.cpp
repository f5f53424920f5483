// Command-line front end for the xtrss library. Multi-party sessions are
// driven over plain files: a params file, a registry, per-participant key
// files, the public bulletin, recovery share files and scenario reports.
// Every command is deterministic under --seed, and all writes are atomic
// (temp file + rename) so concurrent readers never observe partial output.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "xtrss/errors.hpp"
#include "xtrss/harness.hpp"
#include "xtrss/numtheory.hpp"
#include "xtrss/vmss.hpp"

namespace {

using namespace xtrss;

// Exit codes, one class per failure family.
enum ExitCode {
    kOk = 0,
    kError = 1,
    kUsage = 64,
    kConstraint = 65,
    kVerifyFailed = 66,
    kCheater = 67,
    kInsufficient = 68,
    kGeneration = 69,
    kCollision = 70,
    kFormat = 71,
    kDegenerate = 72,
};

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FormatError("cannot open " + path);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

void atomic_write(const std::string& path, const std::string& content) {
    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw FormatError("cannot write " + tmp);
        out << content;
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw FormatError("cannot move " + tmp + " into place");
}

struct KeyFile {
    std::string id;
    mpz_class x;
    Fp2 y;
};

std::string serialize_key(const KeyFile& key) {
    std::ostringstream out;
    out << "# xtrss key (private)\nformat=1\n";
    out << "id=" << key.id << "\n";
    out << "x=" << key.x.get_str() << "\n";
    out << "y=" << key.y.str() << "\n";
    return out.str();
}

KeyFile parse_key(const std::string& text, const XtrParams& params) {
    std::istringstream in(text);
    std::string line;
    std::string id, xs, ys;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        auto eq = line.find('=');
        if (eq == std::string::npos) throw FormatError("key: bad line " + line);
        std::string k = line.substr(0, eq), v = line.substr(eq + 1);
        if (k == "id") id = v;
        if (k == "x") xs = v;
        if (k == "y") ys = v;
    }
    if (id.empty() || xs.empty() || ys.empty())
        throw FormatError("key: missing id/x/y");
    KeyFile key;
    key.id = id;
    if (key.x.set_str(xs, 10) != 0) throw FormatError("key: bad x");
    key.y = Fp2::parse(ys, params.field->p);
    return key;
}

std::vector<mpz_class> parse_secret_list(const std::string& text,
                                         const mpz_class& q) {
    std::vector<mpz_class> out;
    std::string piece;
    std::istringstream in(text);
    while (std::getline(in, piece, ',')) {
        std::istringstream ws(piece);
        std::string token;
        while (ws >> token) {
            mpz_class v;
            if (v.set_str(token, 10) != 0)
                throw FormatError("bad secret \"" + token + "\"");
            if (v <= 0 || v >= q)
                throw ParamError("secrets must be nonzero and below q = " +
                                 q.get_str());
            out.push_back(v);
        }
    }
    return out;
}

Scheme scheme_of(int variant) {
    if (variant != 1 && variant != 2)
        throw ParamError("variant must be 1 or 2");
    return variant == 1 ? Scheme::One : Scheme::Two;
}

// -- commands ---------------------------------------------------------------

int cmd_setup(unsigned lambda, std::uint64_t seed, const std::string& out) {
    Rng rng(seed);
    XtrParams params = generate_params(lambda, rng);
    atomic_write(out, write_params(params));
    std::cout << "params: lambda=" << params.lambda << " p=" << params.p
              << " q=" << params.q << " -> " << out << "\n";
    return kOk;
}

int cmd_keygen(const std::string& params_path, const std::string& id,
               std::uint64_t seed, const std::string& out) {
    XtrParams params = read_params(slurp(params_path));
    Rng rng(seed);
    XtrKeypair kp = keygen(params, rng);
    atomic_write(out, serialize_key(KeyFile{id, kp.x, kp.y}));
    std::cout << "key: id=" << id << " y=" << kp.y.str() << " -> " << out
              << "\n";
    std::cout << "note: the key file holds the private exponent; keep it "
                 "out of the public directory (e.g. chmod 600)\n";
    return kOk;
}

int cmd_register(const std::string& params_path, const std::string& registry_path,
                 const std::string& key_path) {
    XtrParams params = read_params(slurp(params_path));
    Registry registry;
    std::ifstream probe(registry_path);
    if (probe.good()) registry = parse_registry(slurp(registry_path), params);
    KeyFile key = parse_key(slurp(key_path), params);
    registry = register_participant(params, registry, key.id, key.y);
    atomic_write(registry_path, serialize_registry(registry));
    std::cout << "registry: " << registry.entries.size() << " participants -> "
              << registry_path << "\n";
    return kOk;
}

int cmd_deal(const std::string& params_path, const std::string& registry_path,
             int variant, int k, const std::string& secrets_arg,
             const std::string& secrets_file, std::uint64_t seed,
             const std::string& bulletin_out, const std::string& state_out) {
    XtrParams params = read_params(slurp(params_path));
    Registry registry = parse_registry(slurp(registry_path), params);
    std::string raw = secrets_arg;
    if (!secrets_file.empty()) raw = slurp(secrets_file);
    std::vector<mpz_class> secrets = parse_secret_list(raw, params.q);
    if (secrets.empty()) throw ParamError("no secrets given");

    SchemeConfig config{scheme_of(variant), k,
                        static_cast<int>(registry.entries.size()),
                        static_cast<int>(secrets.size())};
    Rng rng(seed);
    auto dealt = deal(params, config, registry, secrets, rng);
    long count = dealt.bulletin.public_item_count();
    long expected = 3L * config.m + config.l + 9;
    if (count != expected)
        throw MathError("public item accounting broke: " + std::to_string(count) +
                        " != " + std::to_string(expected));
    atomic_write(bulletin_out, serialize_bulletin(dealt.bulletin));
    atomic_write(state_out, serialize_dealer_state(dealt.state));
    std::cout << "bulletin: m=" << config.m << " l=" << config.l << " k=" << k
              << " public items=" << count << " (3m+l+9) -> " << bulletin_out
              << "\n";
    std::cout << "dealer state (private) -> " << state_out << "\n";
    return kOk;
}

int cmd_verify(const std::string& bulletin_path, const std::string& key_path,
               long index, const std::string& share_out) {
    Bulletin bulletin = parse_bulletin(slurp(bulletin_path));
    KeyFile key = parse_key(slurp(key_path), bulletin.params);

    const BulletinRow* row =
        index > 0 ? bulletin.find_seq(index - 1) : bulletin.find_id(key.id);
    if (!row)
        throw ParamError(index > 0 ? "no participant at index " +
                                         std::to_string(index)
                                   : "id \"" + key.id + "\" not in bulletin");
    if (row->id != key.id || row->y != key.y)
        throw ParamError("key file does not match the bulletin entry");
    long idx = row->seq + 1;

    bool all_ok = true;
    mpz_class u = extract_subshadow(bulletin, idx, key.x);
    bool own = verify_own(bulletin, idx, u);
    all_ok = all_ok && own;
    std::cout << "own:" << idx << (own ? " ok" : " FAIL") << "\n";
    for (const auto& chk : verify_consistency(bulletin)) {
        std::cout << "consistency:" << chk.instance
                  << (chk.pass ? " ok" : " FAIL") << "\n";
        all_ok = all_ok && chk.pass;
    }
    if (all_ok && !share_out.empty()) {
        atomic_write(share_out,
                     serialize_share(RecoveryShare{key.id, idx, u}));
        std::cout << "share -> " << share_out << "\n";
    }
    std::cout << (all_ok ? "verdict: consistent" : "verdict: FAILED") << "\n";
    return all_ok ? kOk : kVerifyFailed;
}

int cmd_recover(const std::string& bulletin_path,
                const std::vector<std::string>& share_paths,
                const std::string& way_name) {
    Bulletin bulletin = parse_bulletin(slurp(bulletin_path));
    RecoveryWay way;
    if (way_name == "lagrange")
        way = RecoveryWay::Interpolation;
    else if (way_name == "consecutive")
        way = RecoveryWay::Consecutive;
    else
        throw ParamError("--way must be lagrange or consecutive");
    std::vector<RecoveryShare> shares;
    for (const auto& path : share_paths)
        shares.push_back(parse_share(slurp(path)));
    auto secrets = recover(bulletin, shares, way);
    for (const auto& s : secrets)
        std::cout << "slot=" << s.slot << " secret=" << s.value << "\n";
    if (secrets.empty()) std::cout << "(no secrets on the bulletin)\n";
    return kOk;
}

int cmd_dynamic_add_participant(const std::string& bulletin_path,
                                const std::string& state_path,
                                const std::string& key_path,
                                const std::string& bulletin_out,
                                const std::string& state_out) {
    Bulletin bulletin = parse_bulletin(slurp(bulletin_path));
    DealerState state = parse_dealer_state(slurp(state_path));
    KeyFile key = parse_key(slurp(key_path), bulletin.params);
    auto grown = add_participant(bulletin, state, key.id, key.y);
    atomic_write(bulletin_out, serialize_bulletin(grown.bulletin));
    atomic_write(state_out, serialize_dealer_state(grown.state));
    const BulletinRow* row = grown.bulletin.find_id(key.id);
    std::cout << "added id=" << key.id << " at sequence index " << row->seq
              << " (participant index " << row->seq + 1 << ")\n";
    return kOk;
}

int cmd_dynamic_change_threshold(const std::string& bulletin_path,
                                 const std::string& state_path, int new_k,
                                 std::uint64_t seed,
                                 const std::string& bulletin_out,
                                 const std::string& state_out) {
    Bulletin bulletin = parse_bulletin(slurp(bulletin_path));
    DealerState state = parse_dealer_state(slurp(state_path));

    // Re-deal over the current membership with the currently shared secrets.
    Registry registry;
    for (const auto& row : bulletin.rows)
        registry = register_participant(bulletin.params, registry, row.id, row.y);
    std::vector<mpz_class> secrets;
    for (const auto& mask : bulletin.masks) {
        bool found = false;
        for (const auto& [slot, value] : state.secrets)
            if (slot == mask.slot) {
                secrets.push_back(value);
                found = true;
            }
        if (!found)
            throw FormatError("dealer state lacks the secret for slot " +
                              std::to_string(mask.slot));
    }
    SchemeConfig config{bulletin.variant,
                        bulletin.k,
                        static_cast<int>(bulletin.rows.size()),
                        static_cast<int>(secrets.size())};
    Rng rng(seed);
    auto redealt = change_threshold(bulletin.params, config, registry, secrets,
                                    new_k, rng);
    atomic_write(bulletin_out, serialize_bulletin(redealt.bulletin));
    atomic_write(state_out, serialize_dealer_state(redealt.state));
    std::cout << "threshold changed to k=" << new_k
              << "; bulletin re-dealt with fresh randomness\n";
    return kOk;
}

TamperSpec demo_tamper(const std::string& scenario, long index) {
    if (scenario == "control")
        return TamperSpec{TamperTarget::E, 1, TamperMode::None, 0};
    if (scenario == "init-subshadow")
        return TamperSpec{TamperTarget::InitSubshadow, index ? index : 1,
                          TamperMode::Increment, 0};
    if (scenario == "mask-subshadow")
        return TamperSpec{TamperTarget::MaskSubshadow, index ? index : 3,
                          TamperMode::Increment, 0};
    if (scenario == "tamper-e")
        return TamperSpec{TamperTarget::E, index ? index : 1,
                          TamperMode::Increment, 0};
    if (scenario == "tamper-t")
        return TamperSpec{TamperTarget::T, index ? index : 1,
                          TamperMode::Randomize, 0};
    if (scenario == "tamper-z")
        return TamperSpec{TamperTarget::Z, index ? index : 1,
                          TamperMode::Increment, 0};
    if (scenario == "tamper-c")
        return TamperSpec{TamperTarget::ConstC, 0, TamperMode::Increment, 0};
    if (scenario == "tamper-tail")
        return TamperSpec{TamperTarget::Tail, index, TamperMode::Increment, 0};
    throw ParamError("unknown scenario \"" + scenario + "\"");
}

int cmd_demo_attack(const std::string& scenario, std::uint64_t seed,
                    const std::string& out, unsigned lambda, int variant,
                    int k, int m, int l, long index, long partner) {
    Rng prng(seed);
    XtrParams params =
        lambda ? generate_params(lambda, prng) : make_params(23, 13, prng);
    SchemeConfig config{scheme_of(variant), k, m, l};
    Rng rng(seed + 1);

    std::string text;
    if (scenario == "matrix") {
        std::vector<SchemeConfig> configs = {{Scheme::One, k, m, l},
                                             {Scheme::Two, k, m, l},
                                             {Scheme::Two, k, k, l}};
        text = run_coverage_matrix(params, configs, seed);
    } else if (scenario == "session") {
        text = run_session(params, config, rng).serialize();
    } else if (scenario == "participant-cheat") {
        text = run_participant_cheat(params, config, index ? index : 2, partner,
                                     TamperMode::Increment, rng)
                   .serialize();
    } else if (scenario == "relabel") {
        text = run_participant_cheat(params, config, index ? index : 1,
                                     partner ? partner : 2,
                                     TamperMode::Randomize, rng)
                   .serialize();
    } else if (scenario == "conspiracy") {
        text = run_participant_cheat(params, config, index ? index : 1,
                                     partner ? partner : 2,
                                     TamperMode::SwapWith, rng)
                   .serialize();
    } else {
        text = run_dealer_attack(params, config, demo_tamper(scenario, index),
                                 rng)
                   .serialize();
    }
    atomic_write(out, text);
    std::cout << text;
    std::cout << "report -> " << out << "\n";
    return kOk;
}

int dispatch_error() {
    try {
        throw;
    } catch (const CheaterError& e) {
        std::cerr << "error: " << e.what() << "\n";
        for (const auto& id : e.ids()) std::cerr << "cheater: " << id << "\n";
        return kCheater;
    } catch (const InsufficientSharesError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInsufficient;
    } catch (const ShadowCollisionError& e) {
        std::cerr << "error: " << e.what() << "\n";
        std::cerr << "hint: regenerate the keypair with a fresh seed\n";
        return kCollision;
    } catch (const IdentityError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kCollision;
    } catch (const BlindingDegenerateError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kDegenerate;
    } catch (const GenerationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kGeneration;
    } catch (const MalformedBulletinError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kVerifyFailed;
    } catch (const FormatError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kFormat;
    } catch (const ConstraintError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kConstraint;
    } catch (const ParamError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kConstraint;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kError;
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"verifiable multi-secret sharing over the XTR group"};
    app.require_subcommand(1);

    unsigned lambda = 5;
    std::uint64_t seed = 0;
    int variant = 2, k = 2, m = 4, l = 2, new_k = 2, slot = 1;
    long index = 0, partner = 0;
    std::string params_path, registry_path, bulletin_path, state_path,
        key_path, out_path, bulletin_out, state_out, share_out, id,
        secrets_arg, secrets_file, way = "lagrange", scenario = "control",
        secret_value;
    std::vector<std::string> share_paths;

    auto* setup = app.add_subcommand("setup", "generate public parameters");
    setup->add_option("--lambda", lambda, "bit length of p and q (>= 5)")
        ->required();
    setup->add_option("--seed", seed, "deterministic seed");
    setup->add_option("--out", out_path, "params file")->required();

    auto* kg = app.add_subcommand("keygen", "generate a participant keypair");
    kg->add_option("--params", params_path)->required();
    kg->add_option("--id", id, "participant identifier")->required();
    kg->add_option("--seed", seed);
    kg->add_option("--out", out_path, "key file (private)")->required();

    auto* reg = app.add_subcommand("register",
                                   "add a participant's (id, y) to the registry");
    reg->add_option("--params", params_path)->required();
    reg->add_option("--registry", registry_path)->required();
    reg->add_option("--key", key_path, "key file; only id and y are read")
        ->required();

    auto* dl = app.add_subcommand("deal", "split secrets onto a bulletin");
    dl->add_option("--params", params_path)->required();
    dl->add_option("--registry", registry_path)->required();
    dl->add_option("--variant", variant, "scheme variant: 1 or 2");
    dl->add_option("--k", k, "threshold")->required();
    dl->add_option("--secrets", secrets_arg, "comma-separated secrets in GF(q)*");
    dl->add_option("--secrets-file", secrets_file);
    dl->add_option("--seed", seed);
    dl->add_option("--bulletin", bulletin_out, "bulletin file")->required();
    dl->add_option("--state", state_out, "dealer state file (private)")
        ->required();

    auto* vf = app.add_subcommand("verify",
                                  "extract own subshadow and run all checks");
    vf->add_option("--bulletin", bulletin_path)->required();
    vf->add_option("--key", key_path)->required();
    vf->add_option("--index", index, "participant index (default: by id)");
    vf->add_option("--share-out", share_out,
                   "write the verified share for later recovery");

    auto* rc = app.add_subcommand("recover", "reconstruct secrets from shares");
    rc->add_option("--bulletin", bulletin_path)->required();
    rc->add_option("--way", way, "lagrange | consecutive");
    rc->add_option("--share", share_paths, "share file (repeatable)")
        ->required();

    auto* dyn = app.add_subcommand("dynamic", "dealer-side bulletin updates");
    dyn->require_subcommand(1);
    auto* dap = dyn->add_subcommand("add-participant");
    dap->add_option("--bulletin", bulletin_path)->required();
    dap->add_option("--state", state_path)->required();
    dap->add_option("--key", key_path, "new participant's key file")->required();
    dap->add_option("--bulletin-out", bulletin_out)->required();
    dap->add_option("--state-out", state_out)->required();
    auto* drp = dyn->add_subcommand("remove-participant");
    drp->add_option("--bulletin", bulletin_path)->required();
    drp->add_option("--id", id)->required();
    drp->add_option("--bulletin-out", bulletin_out)->required();
    auto* das = dyn->add_subcommand("add-secret");
    das->add_option("--bulletin", bulletin_path)->required();
    das->add_option("--state", state_path)->required();
    das->add_option("--secret", secret_value)->required();
    das->add_option("--bulletin-out", bulletin_out)->required();
    das->add_option("--state-out", state_out)->required();
    auto* drs = dyn->add_subcommand("remove-secret");
    drs->add_option("--bulletin", bulletin_path)->required();
    drs->add_option("--slot", slot)->required();
    drs->add_option("--bulletin-out", bulletin_out)->required();
    auto* dct = dyn->add_subcommand("change-threshold");
    dct->add_option("--bulletin", bulletin_path)->required();
    dct->add_option("--state", state_path)->required();
    dct->add_option("--new-k", new_k)->required();
    dct->add_option("--seed", seed);
    dct->add_option("--bulletin-out", bulletin_out)->required();
    dct->add_option("--state-out", state_out)->required();

    auto* demo = app.add_subcommand("demo-attack",
                                    "run an adversarial scenario and report");
    demo->add_option("--scenario", scenario,
                     "control | init-subshadow | mask-subshadow | tamper-e | "
                     "tamper-t | tamper-z | tamper-c | tamper-tail | "
                     "participant-cheat | relabel | conspiracy | session | "
                     "matrix")
        ->required();
    demo->add_option("--seed", seed);
    demo->add_option("--out", out_path, "report file")->required();
    demo->add_option("--lambda", lambda,
                     "generate params of this size (default: fixed toy group)")
        ->expected(1)
        ->default_val(0u);
    demo->add_option("--variant", variant);
    demo->add_option("--k", k);
    demo->add_option("--m", m);
    demo->add_option("--l", l);
    demo->add_option("--index", index, "tamper / cheater position");
    demo->add_option("--partner", partner, "conspiracy partner index");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (setup->parsed()) {
            if (lambda < 5) {
                std::cerr << "error: --lambda must be at least 5\n";
                return kUsage;
            }
            return cmd_setup(lambda, seed, out_path);
        }
        if (kg->parsed()) return cmd_keygen(params_path, id, seed, out_path);
        if (reg->parsed())
            return cmd_register(params_path, registry_path, key_path);
        if (dl->parsed())
            return cmd_deal(params_path, registry_path, variant, k, secrets_arg,
                            secrets_file, seed, bulletin_out, state_out);
        if (vf->parsed())
            return cmd_verify(bulletin_path, key_path, index, share_out);
        if (rc->parsed()) return cmd_recover(bulletin_path, share_paths, way);
        if (dap->parsed())
            return cmd_dynamic_add_participant(bulletin_path, state_path,
                                               key_path, bulletin_out,
                                               state_out);
        if (drp->parsed()) {
            Bulletin bulletin = parse_bulletin(slurp(bulletin_path));
            atomic_write(bulletin_out,
                         serialize_bulletin(remove_participant(bulletin, id)));
            std::cout << "removed id=" << id << "\n";
            return kOk;
        }
        if (das->parsed()) {
            Bulletin bulletin = parse_bulletin(slurp(bulletin_path));
            DealerState state = parse_dealer_state(slurp(state_path));
            mpz_class v;
            if (v.set_str(secret_value, 10) != 0)
                throw FormatError("bad --secret value");
            auto grown = add_secret(bulletin, state, v);
            atomic_write(bulletin_out, serialize_bulletin(grown.bulletin));
            atomic_write(state_out, serialize_dealer_state(grown.state));
            std::cout << "added secret slot "
                      << grown.bulletin.masks.back().slot << "\n";
            return kOk;
        }
        if (drs->parsed()) {
            Bulletin bulletin = parse_bulletin(slurp(bulletin_path));
            atomic_write(bulletin_out,
                         serialize_bulletin(remove_secret(bulletin, slot)));
            std::cout << "removed secret slot " << slot << "\n";
            return kOk;
        }
        if (dct->parsed())
            return cmd_dynamic_change_threshold(bulletin_path, state_path, new_k,
                                                seed, bulletin_out, state_out);
        if (demo->parsed())
            return cmd_demo_attack(scenario, seed, out_path, lambda, variant, k,
                                   m, l, index, partner);
    } catch (...) {
        return dispatch_error();
    }
    return kUsage;
}
