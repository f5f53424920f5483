#include "xtrss/harness.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "xtrss/errors.hpp"
#include "xtrss/numtheory.hpp"

namespace xtrss {

const char* tamper_target_name(TamperTarget target) {
    switch (target) {
        case TamperTarget::E: return "E";
        case TamperTarget::T: return "T";
        case TamperTarget::Z: return "z";
        case TamperTarget::ConstC: return "c";
        case TamperTarget::Tail: return "tail";
        case TamperTarget::InitSubshadow: return "init-subshadow";
        case TamperTarget::MaskSubshadow: return "mask-subshadow";
    }
    return "?";
}

const char* tamper_mode_name(TamperMode mode) {
    switch (mode) {
        case TamperMode::None: return "none";
        case TamperMode::Increment: return "increment";
        case TamperMode::Randomize: return "randomize";
        case TamperMode::SwapWith: return "swap-with";
    }
    return "?";
}

std::string ScenarioReport::serialize() const {
    auto join = [](const std::vector<std::string>& items) {
        std::string out;
        for (std::size_t i = 0; i < items.size(); ++i)
            out += (i ? "," : "") + items[i];
        return out.empty() ? "-" : out;
    };
    std::ostringstream out;
    out << "[scenario]\n";
    out << "name=" << scenario << "\n";
    out << "tampered=" << join(tampered) << "\n";
    out << "checks_run=" << join(checks_run) << "\n";
    out << "checks_failed=" << join(checks_failed) << "\n";
    out << "covered=" << (covered ? "true" : "false") << "\n";
    out << "detected=" << (detected ? "true" : "false") << "\n";
    out << "detector=" << detector << "\n";
    return out.str();
}

namespace {

// Registry, keypairs and secrets for one scenario. Keys are retained so the
// harness can play every participant.
struct Cast {
    Registry registry;
    std::vector<XtrKeypair> keys;
    std::vector<mpz_class> secrets;
};

Cast assemble_cast(const XtrParams& params, const SchemeConfig& config,
                   Rng& rng) {
    Cast cast;
    for (int i = 0; i < config.m; ++i) {
        for (int attempt = 0;; ++attempt) {
            if (attempt > 4096)
                throw GenerationError(
                    "harness: the group cannot supply enough distinct shadows");
            XtrKeypair kp = keygen(params, rng);
            try {
                cast.registry = register_participant(
                    params, cast.registry, "p" + std::to_string(i + 1), kp.y);
                cast.keys.push_back(kp);
                break;
            } catch (const ShadowCollisionError&) {
            }
        }
    }
    for (int j = 0; j < config.l; ++j)
        cast.secrets.push_back(rng.range(1, params.q - 1));
    return cast;
}

mpz_class tweak(const mpz_class& v, const mpz_class& q, TamperMode mode,
                Rng& rng, bool nonzero) {
    switch (mode) {
        case TamperMode::None:
            return v;
        case TamperMode::Increment: {
            mpz_class out = mod(v + 1, q);
            if (nonzero && out == 0) out = 1;
            return out;
        }
        default: {
            mpz_class out = nonzero ? rng.range(1, q - 1) : rng.below(q);
            while (out == v) out = nonzero ? rng.range(1, q - 1) : rng.below(q);
            return out;
        }
    }
}

// The construction phase as a dishonest dealer runs it. Returns the
// bulletin plus the list of tampered-item labels.
std::pair<Bulletin, std::vector<std::string>> dishonest_deal(
    const XtrParams& params, const SchemeConfig& config, const Cast& cast,
    const TamperSpec& tamper, Rng& rng) {
    const mpz_class& q = params.q;
    const int k = config.k, m = config.m, l = config.l;
    std::vector<std::string> touched;

    if (tamper.mode == TamperMode::None ||
        (tamper.target != TamperTarget::InitSubshadow &&
         tamper.target != TamperTarget::MaskSubshadow)) {
        // Honest construction, then direct edits of published items.
        auto dealt = deal(params, config, cast.registry, cast.secrets, rng);
        Bulletin bulletin = std::move(dealt.bulletin);
        if (tamper.mode == TamperMode::None) return {std::move(bulletin), {}};
        switch (tamper.target) {
            case TamperTarget::E: {
                auto& row = bulletin.rows.at(tamper.index - 1);
                row.e = tweak(row.e, q, tamper.mode, rng, false);
                touched.push_back("E:" + std::to_string(tamper.index));
                break;
            }
            case TamperTarget::T: {
                auto& row = bulletin.rows.at(tamper.index - 1);
                if (tamper.mode == TamperMode::SwapWith) {
                    auto& other = bulletin.rows.at(tamper.swap_index - 1);
                    if (row.t != other.t) {
                        std::swap(row.t, other.t);
                        touched.push_back("T:" + std::to_string(tamper.index));
                        touched.push_back("T:" +
                                          std::to_string(tamper.swap_index));
                    }
                } else {
                    // Stay inside the subgroup so the exponent algebra is
                    // the thing under test, not the membership gate.
                    Fp6 fake = tamper.mode == TamperMode::Increment
                                   ? row.t * params.g
                                   : params.g_pow(rng.below(q));
                    while (fake == row.t) fake = params.g_pow(rng.below(q));
                    row.t = fake;
                    touched.push_back("T:" + std::to_string(tamper.index));
                }
                break;
            }
            case TamperTarget::Z: {
                for (auto& mask : bulletin.masks) {
                    if (mask.slot != tamper.index) continue;
                    mask.z = tweak(mask.z, q, tamper.mode, rng, false);
                    touched.push_back("z:" + std::to_string(tamper.index));
                }
                if (touched.empty())
                    throw ParamError("harness: no mask at that slot");
                break;
            }
            case TamperTarget::ConstC: {
                bulletin.c = tweak(bulletin.c, q, tamper.mode, rng, true);
                touched.push_back("c");
                break;
            }
            case TamperTarget::Tail: {
                mpz_class& v = tamper.index == 0 ? bulletin.tail0 : bulletin.tail1;
                v = tweak(v, q, tamper.mode, rng, false);
                touched.push_back("tail:" + std::to_string(tamper.index));
                break;
            }
            default:
                break;
        }
        return {std::move(bulletin), std::move(touched)};
    }

    // Sequence-level substitutions need a construction run of their own.
    std::vector<mpz_class> init;
    for (int i = 0; i < k; ++i) init.push_back(rng.range(1, q - 1));
    mpz_class c = rng.range(1, q - 1);

    mpz_class b;
    std::vector<mpz_class> kappa(m);
    for (int attempt = 0;; ++attempt) {
        if (attempt >= 64)
            throw BlindingDegenerateError("harness: no usable blinding exponent");
        b = rng.range(2, q - 3);
        bool ok = true;
        for (int i = 0; i < m && ok; ++i) {
            kappa[i] = encode_to_zq(trace_ladder(cast.registry.entries[i].y, b), q);
            if (kappa[i] == 0) ok = false;
        }
        if (ok) break;
    }

    long j = tamper.index; // participant whose subshadow is substituted
    std::vector<mpz_class> enc_values(m); // what E_i actually encrypts
    std::vector<mpz_class> seq_terms;     // sequence behind T, z and the tail

    if (tamper.target == TamperTarget::InitSubshadow) {
        // Mirror of the substituted-share attack at a position below the
        // threshold: the recursion is seeded with a substitute while P_j's
        // ciphertext still carries the original value.
        mpz_class original = init[j - 1];
        init[j - 1] = tweak(original, q, tamper.mode, rng, true);
        touched.push_back("u_" + std::to_string(j - 1) + "(init)");
        NlrSpec spec(nlr_variant(config.variant), k, q, c, init);
        seq_terms = generate(spec, m + l + 1).terms;
        for (int i = 0; i < m; ++i) enc_values[i] = seq_terms[i];
        enc_values[j - 1] = original;
    } else {
        // Substitution past the threshold: E_j and T_j are made mutually
        // consistent with a fake value; the sequence itself stays honest.
        NlrSpec spec(nlr_variant(config.variant), k, q, c, init);
        seq_terms = generate(spec, m + l + 1).terms;
        for (int i = 0; i < m; ++i) enc_values[i] = seq_terms[i];
        enc_values[j - 1] = tweak(seq_terms[j - 1], q, tamper.mode, rng, true);
        touched.push_back("u_" + std::to_string(j - 1) + "(mask)");
    }

    Bulletin bulletin;
    bulletin.params = params;
    bulletin.header = trace_ladder(params.c(), b);
    bulletin.variant = config.variant;
    bulletin.k = k;
    for (int i = 0; i < m; ++i) {
        // T commits to the same value E carries for the mask substitution,
        // and to the sequence value for the init substitution.
        const mpz_class& committed =
            tamper.target == TamperTarget::InitSubshadow ? seq_terms[i]
                                                         : enc_values[i];
        bulletin.rows.push_back(BulletinRow{
            cast.registry.entries[i].id, cast.registry.entries[i].y, i,
            mod(kappa[i] * enc_values[i], q), params.g_pow(committed)});
    }
    for (int jj = 1; jj <= l; ++jj)
        bulletin.masks.push_back(MaskRow{
            jj, m + jj - 1, mod(cast.secrets[jj - 1] - seq_terms[m + jj - 1], q)});
    bulletin.c = c;
    bulletin.tail_seq = m + l;
    bulletin.tail0 = seq_terms[m + l];
    bulletin.tail1 = seq_terms[m + l + 1];
    return {std::move(bulletin), std::move(touched)};
}

// Which verification check structurally binds the tampered datum, if any.
bool statically_covered(const TamperSpec& tamper, const SchemeConfig& config) {
    if (tamper.mode == TamperMode::None) return false;
    switch (tamper.target) {
        case TamperTarget::E:
        case TamperTarget::T:
        case TamperTarget::InitSubshadow:
            return true; // the owner's commitment check
        case TamperTarget::MaskSubshadow:
            // Needs a recurrence instance covering position index-1.
            return config.m >= config.k + 1;
        case TamperTarget::ConstC:
            // Instance 0 has unit right-hand side; an instance n >= 1 must
            // exist for c to matter.
            return config.m >= config.k + 2;
        case TamperTarget::Z:
        case TamperTarget::Tail:
            return false;
    }
    return false;
}

// Verification phase over a bulletin, played by every participant.
void run_verification(const Bulletin& bulletin, const Cast& cast,
                      ScenarioReport& report) {
    const XtrParams& params = bulletin.params;
    bool subgroup_ok = true;
    for (std::size_t i = 0; i < cast.keys.size(); ++i) {
        const BulletinRow& row = bulletin.rows[i];
        std::string label = "subgroup:" + std::to_string(row.seq + 1);
        report.checks_run.push_back(label);
        if (!subgroup_check(params, row.t)) {
            subgroup_ok = false;
            report.checks_failed.push_back(label);
            if (report.detector.empty())
                report.detector = "participant " + std::to_string(row.seq + 1);
        }
    }
    for (std::size_t i = 0; i < cast.keys.size(); ++i) {
        const BulletinRow& row = bulletin.rows[i];
        long index = row.seq + 1;
        mpz_class u = extract_subshadow(bulletin, index, cast.keys[i].x);
        std::string label = "own:" + std::to_string(index);
        report.checks_run.push_back(label);
        if (!verify_own(bulletin, index, u)) {
            report.checks_failed.push_back(label);
            if (report.detector.empty())
                report.detector = "participant " + std::to_string(index);
        }
    }
    if (subgroup_ok) {
        // All commitments are in the group; the product checks cannot throw.
        for (const auto& chk : verify_consistency(bulletin)) {
            std::string label = "consistency:" + std::to_string(chk.instance);
            report.checks_run.push_back(label);
            if (!chk.pass) {
                report.checks_failed.push_back(label);
                if (report.detector.empty())
                    report.detector =
                        "participant " + std::to_string(chk.instance + 1);
            }
        }
    }
    report.detected = !report.checks_failed.empty();
    if (report.detector.empty()) report.detector = "none";
}

} // namespace

ScenarioReport run_dealer_attack(const XtrParams& params,
                                 const SchemeConfig& config,
                                 const TamperSpec& tamper, Rng& rng) {
    Cast cast = assemble_cast(params, config, rng);
    auto [bulletin, touched] = dishonest_deal(params, config, cast, tamper, rng);

    ScenarioReport report;
    report.scenario = std::string("dealer-attack:") +
                      tamper_target_name(tamper.target) + ":" +
                      std::to_string(tamper.index) + ":" +
                      tamper_mode_name(tamper.mode);
    report.tampered = std::move(touched);
    // A tamper that changed nothing (control mode, or a swap of equal
    // commitments) is not covered by definition.
    report.covered =
        statically_covered(tamper, config) && !report.tampered.empty();
    run_verification(bulletin, cast, report);
    return report;
}

ScenarioReport run_participant_cheat(const XtrParams& params,
                                     const SchemeConfig& config,
                                     long cheat_index, long partner_index,
                                     TamperMode mode, Rng& rng) {
    Cast cast = assemble_cast(params, config, rng);
    auto dealt = deal(params, config, cast.registry, cast.secrets, rng);
    const Bulletin& bulletin = dealt.bulletin;

    ScenarioReport report;
    report.scenario = std::string("participant-cheat:") +
                      std::to_string(cheat_index) + ":" +
                      tamper_mode_name(mode);
    report.covered = mode != TamperMode::None;

    // Coalition of k containing the cheat; the partner joins only for the
    // two-sided conspiracy. For the relabel the partner must stay out, since
    // the cheater claims the partner's position.
    std::vector<long> members = {cheat_index};
    if (mode == TamperMode::SwapWith && partner_index != cheat_index)
        members.push_back(partner_index);
    for (long i = 1; static_cast<int>(members.size()) < config.k; ++i) {
        if (mode == TamperMode::Randomize && i == partner_index) continue;
        if (std::find(members.begin(), members.end(), i) == members.end())
            members.push_back(i);
    }
    std::sort(members.begin(), members.end());

    auto honest_share = [&](long i) {
        mpz_class u = extract_subshadow(bulletin, i, cast.keys[i - 1].x);
        return RecoveryShare{bulletin.rows[i - 1].id, i, u};
    };
    std::vector<RecoveryShare> shares;
    for (long i : members) shares.push_back(honest_share(i));
    auto find_share = [&](long i) {
        return std::find_if(shares.begin(), shares.end(),
                            [&](const RecoveryShare& s) { return s.index == i; });
    };
    switch (mode) {
        case TamperMode::None:
            break;
        case TamperMode::Increment: {
            auto it = find_share(cheat_index);
            it->u = mod(it->u + 1, params.q);
            report.tampered.push_back("share:" + it->id);
            break;
        }
        case TamperMode::Randomize: {
            // Relabel: the cheater claims the partner's position and value.
            auto it = find_share(cheat_index);
            auto partner = honest_share(partner_index);
            it->index = partner.index;
            it->u = partner.u;
            report.tampered.push_back("share:" + it->id);
            break;
        }
        case TamperMode::SwapWith: {
            // Conspiracy: both parties exchange keys and positions.
            auto a = find_share(cheat_index);
            auto b = find_share(partner_index);
            std::swap(a->index, b->index);
            std::swap(a->u, b->u);
            report.tampered.push_back("share:" + a->id);
            report.tampered.push_back("share:" + b->id);
            break;
        }
    }

    report.checks_run.push_back("recovery:cross-verify");
    try {
        auto secrets = recover(bulletin, shares, RecoveryWay::Interpolation);
        report.checks_run.push_back("recovery:secrets");
        bool correct = secrets.size() == cast.secrets.size();
        for (std::size_t i = 0; correct && i < secrets.size(); ++i)
            correct = secrets[i].value == cast.secrets[i];
        if (!correct) report.checks_failed.push_back("recovery:secrets");
    } catch (const CheaterError& e) {
        for (const auto& id : e.ids())
            report.checks_failed.push_back("recovery:cross-verify:" + id);
    }
    report.detected = !report.checks_failed.empty();
    report.detector = report.detected ? "recovery coalition" : "none";
    return report;
}

ScenarioReport run_session(const XtrParams& params, const SchemeConfig& config,
                           Rng& rng) {
    Cast cast = assemble_cast(params, config, rng);
    ScenarioReport report;
    report.scenario = "session:variant" +
                      std::to_string(static_cast<int>(config.variant)) + ":k" +
                      std::to_string(config.k) + ":m" + std::to_string(config.m) +
                      ":l" + std::to_string(config.l);
    report.detector = "none";

    auto step = [&](const std::string& name, bool ok) {
        report.checks_run.push_back(name);
        if (!ok) report.checks_failed.push_back(name);
    };
    auto matches = [](const std::vector<RecoveredSecret>& got,
                      const std::vector<std::pair<int, mpz_class>>& want) {
        if (got.size() != want.size()) return false;
        for (std::size_t i = 0; i < got.size(); ++i)
            if (got[i].slot != want[i].first || got[i].value != want[i].second)
                return false;
        return true;
    };

    auto dealt = deal(params, config, cast.registry, cast.secrets, rng);
    Bulletin bulletin = std::move(dealt.bulletin);
    DealerState state = std::move(dealt.state);
    std::vector<std::pair<int, mpz_class>> expect;
    for (int j = 0; j < config.l; ++j)
        expect.emplace_back(j + 1, cast.secrets[j]);

    step("accounting:3m+l+9",
         bulletin.public_item_count() == 3L * config.m + config.l + 9);

    bool verified = true;
    for (int i = 1; i <= config.m; ++i) {
        mpz_class u = extract_subshadow(bulletin, i, cast.keys[i - 1].x);
        verified = verified && verify_own(bulletin, i, u);
    }
    for (const auto& chk : verify_consistency(bulletin))
        verified = verified && chk.pass;
    step("verification:honest", verified);

    auto shares_for = [&](const Bulletin& bl, const std::vector<long>& idx) {
        std::vector<RecoveryShare> out;
        for (long i : idx) {
            const BulletinRow* row = bl.find_seq(i - 1);
            mpz_class x;
            for (std::size_t c2 = 0; c2 < cast.keys.size(); ++c2)
                if (cast.registry.entries[c2].id == row->id) x = cast.keys[c2].x;
            out.push_back(
                RecoveryShare{row->id, i, extract_subshadow(bl, i, x)});
        }
        return out;
    };

    std::vector<long> coalition;
    for (long i = 1; i <= config.k; ++i) coalition.push_back(i);
    auto way1 = recover(bulletin, shares_for(bulletin, coalition),
                        RecoveryWay::Interpolation);
    auto way2 = recover(bulletin, shares_for(bulletin, coalition),
                        RecoveryWay::Consecutive);
    step("recovery:way1", matches(way1, expect));
    step("recovery:way2", matches(way2, expect));

    bool below_threshold_rejected = false;
    try {
        std::vector<long> small(coalition.begin(), coalition.end() - 1);
        recover(bulletin, shares_for(bulletin, small), RecoveryWay::Interpolation);
    } catch (const InsufficientSharesError&) {
        below_threshold_rejected = true;
    }
    step("threshold:k-1-rejected", below_threshold_rejected);

    // Dynamic operations. Removing first frees a shadow value, so the
    // later addition works even in tiny groups with few distinct traces.
    std::string removed_id = "p" + std::to_string(config.m);
    bulletin = remove_participant(bulletin, removed_id);
    std::vector<long> rest;
    for (long i = 1; i <= config.k; ++i) rest.push_back(i);
    step("dynamic:remove-participant",
         matches(recover(bulletin, shares_for(bulletin, rest),
                         RecoveryWay::Interpolation),
                 expect));

    XtrKeypair fresh{};
    for (int attempt = 0;; ++attempt) {
        if (attempt > 4096)
            throw GenerationError("session: no fresh shadow available");
        fresh = keygen(params, rng);
        bool clash = false;
        for (const auto& row : bulletin.rows) clash = clash || row.y == fresh.y;
        if (!clash) break;
    }
    auto grown = add_participant(bulletin, state, "pnew", fresh.y);
    bulletin = std::move(grown.bulletin);
    state = std::move(grown.state);
    const BulletinRow* fresh_row = bulletin.find_id("pnew");
    {
        std::vector<RecoveryShare> shares;
        shares.push_back(RecoveryShare{
            "pnew", fresh_row->seq + 1,
            extract_subshadow(bulletin, fresh_row->seq + 1, fresh.x)});
        std::vector<long> fill;
        for (long i = 1; static_cast<int>(shares.size() + fill.size()) < config.k;
             ++i)
            fill.push_back(i);
        for (const auto& s : shares_for(bulletin, fill)) shares.push_back(s);
        step("dynamic:add-participant",
             matches(recover(bulletin, shares, RecoveryWay::Interpolation),
                     expect));
    }

    mpz_class s_new = rng.range(1, params.q - 1);
    auto widened = add_secret(bulletin, state, s_new);
    bulletin = std::move(widened.bulletin);
    state = std::move(widened.state);
    expect.emplace_back(config.l + 1, s_new);
    step("dynamic:add-secret",
         matches(recover(bulletin, shares_for(bulletin, rest),
                         RecoveryWay::Interpolation),
                 expect));

    bulletin = remove_secret(bulletin, 1);
    expect.erase(expect.begin());
    step("dynamic:remove-secret",
         matches(recover(bulletin, shares_for(bulletin, rest),
                         RecoveryWay::Interpolation),
                 expect));

    // Threshold change is a fresh deal over the current membership.
    Registry current;
    std::vector<mpz_class> current_keys;
    for (const auto& row : bulletin.rows) {
        current = register_participant(params, current, row.id, row.y);
        for (std::size_t c2 = 0; c2 < cast.keys.size(); ++c2)
            if (cast.registry.entries[c2].id == row.id)
                current_keys.push_back(cast.keys[c2].x);
        if (row.id == "pnew") current_keys.push_back(fresh.x);
    }
    std::vector<mpz_class> current_secrets;
    for (const auto& [slot, value] : expect) current_secrets.push_back(value);
    int new_k = config.k < static_cast<int>(bulletin.rows.size()) ? config.k + 1
                                                                  : config.k;
    SchemeConfig fresh_config{config.variant, config.k,
                              static_cast<int>(bulletin.rows.size()),
                              static_cast<int>(current_secrets.size())};
    auto redealt = change_threshold(params, fresh_config, current,
                                    current_secrets, new_k, rng);

    std::vector<RecoveryShare> new_shares;
    for (int i = 0; i < new_k; ++i) {
        const BulletinRow& row = redealt.bulletin.rows[i];
        new_shares.push_back(RecoveryShare{
            row.id, row.seq + 1,
            extract_subshadow(redealt.bulletin, row.seq + 1, current_keys[i])});
    }
    auto after = recover(redealt.bulletin, new_shares, RecoveryWay::Interpolation);
    bool threshold_ok = after.size() == current_secrets.size();
    for (std::size_t i = 0; threshold_ok && i < after.size(); ++i)
        threshold_ok = after[i].value == current_secrets[i];
    step("dynamic:change-threshold", threshold_ok);

    bool tightened = new_k == config.k;
    if (!tightened) {
        try {
            new_shares.pop_back();
            recover(redealt.bulletin, new_shares, RecoveryWay::Interpolation);
        } catch (const InsufficientSharesError&) {
            tightened = true;
        }
    }
    step("dynamic:new-threshold-enforced", tightened);

    report.detected = !report.checks_failed.empty();
    if (report.detected) report.detector = "session assertions";
    return report;
}

std::string run_coverage_matrix(const XtrParams& params,
                                const std::vector<SchemeConfig>& configs,
                                std::uint64_t seed) {
    std::ostringstream out;
    out << "# tamper coverage matrix\n";
    out << "# covered=1 means at least one verification check binds the "
           "tampered item\n";
    Rng rng(seed);
    for (const auto& config : configs) {
        out << "config variant=" << static_cast<int>(config.variant)
            << " k=" << config.k << " m=" << config.m << " l=" << config.l
            << " p=" << params.p.get_str() << " q=" << params.q.get_str()
            << " seed=" << seed << "\n";
        long covered_rows = 0, covered_detected = 0, uncovered_rows = 0;

        auto emit = [&](const TamperSpec& tamper) {
            ScenarioReport report = run_dealer_attack(params, config, tamper, rng);
            out << "row target=" << tamper_target_name(tamper.target)
                << " index=" << tamper.index
                << " mode=" << tamper_mode_name(tamper.mode);
            if (tamper.mode == TamperMode::SwapWith)
                out << " swap=" << tamper.swap_index;
            out << " covered=" << report.covered
                << " detected=" << report.detected << " failed=";
            if (report.checks_failed.empty())
                out << "-";
            else
                for (std::size_t i = 0; i < report.checks_failed.size(); ++i)
                    out << (i ? "," : "") << report.checks_failed[i];
            out << "\n";
            if (report.covered) {
                ++covered_rows;
                if (report.detected) ++covered_detected;
            } else {
                ++uncovered_rows;
            }
        };

        emit(TamperSpec{TamperTarget::E, 1, TamperMode::None, 0});
        for (TamperMode mode : {TamperMode::Increment, TamperMode::Randomize}) {
            for (long i = 1; i <= config.m; ++i)
                emit(TamperSpec{TamperTarget::E, i, mode, 0});
            for (long i = 1; i <= config.m; ++i)
                emit(TamperSpec{TamperTarget::T, i, mode, 0});
            for (long j = 1; j <= config.k; ++j)
                emit(TamperSpec{TamperTarget::InitSubshadow, j, mode, 0});
            for (long j = config.k + 1; j <= config.m; ++j)
                emit(TamperSpec{TamperTarget::MaskSubshadow, j, mode, 0});
            for (long slot = 1; slot <= config.l; ++slot)
                emit(TamperSpec{TamperTarget::Z, slot, mode, 0});
            emit(TamperSpec{TamperTarget::ConstC, 0, mode, 0});
            emit(TamperSpec{TamperTarget::Tail, 0, mode, 0});
            emit(TamperSpec{TamperTarget::Tail, 1, mode, 0});
        }
        if (config.m >= 2)
            emit(TamperSpec{TamperTarget::T, 1, TamperMode::SwapWith, 2});

        out << "summary covered=" << covered_rows
            << " covered_detected=" << covered_detected
            << " uncovered=" << uncovered_rows << "\n";
    }
    return out.str();
}

} // namespace xtrss
