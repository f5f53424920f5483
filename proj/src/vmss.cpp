#include "xtrss/vmss.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "xtrss/errors.hpp"
#include "xtrss/numtheory.hpp"

namespace xtrss {

NlrVariant nlr_variant(Scheme s) {
    return s == Scheme::One ? NlrVariant::Nlr1 : NlrVariant::Nlr2;
}

namespace {

void require_valid_id(const std::string& id) {
    if (id.empty() || id.size() > 64)
        throw ParamError("participant id must be 1..64 characters");
    for (char ch : id) {
        bool ok = (ch >= 'a' && ch <= 'z') || (ch >= 'A' && ch <= 'Z') ||
                  (ch >= '0' && ch <= '9') || ch == '_' || ch == '-' || ch == '.';
        if (!ok)
            throw ParamError("participant id may use [A-Za-z0-9_.-] only");
    }
}

// q must beat every binomial coefficient of the threshold; checked at deal
// time because k is unknown when parameters are generated.
void require_threshold_fits(int k, const mpz_class& q) {
    mpz_class top = binomial(k, k / 2);
    if (q <= top)
        throw ConstraintError("q = " + q.get_str() + " must exceed C(" +
                              std::to_string(k) + "," + std::to_string(k / 2) +
                              ") = " + top.get_str());
}

// Grow the dealer sequence in place until index upto exists.
void ensure_terms(DealerState& state, long upto) {
    long have = static_cast<long>(state.terms.size()) - 1;
    if (upto <= have) return;
    long s = have - state.k + 1;
    std::vector<mpz_class> window(state.terms.end() - state.k,
                                  state.terms.end());
    auto grown = extend_consecutive(nlr_variant(state.variant), window, s,
                                    state.c, state.k, state.q, upto);
    state.terms.insert(state.terms.end(), grown.begin() + state.k, grown.end());
}

mpz_class shared_blinding_key(const XtrParams& params, const Fp2& y,
                              const mpz_class& b) {
    return encode_to_zq(trace_ladder(y, b), params.q);
}

} // namespace

Registry register_participant(const XtrParams& params, const Registry& registry,
                              const std::string& id, const Fp2& y) {
    require_valid_id(id);
    if (!y.prime() || *y.prime() != params.p)
        throw ParamError("register: shadow not over GF(p^2)");
    for (const auto& entry : registry.entries) {
        if (entry.id == id)
            throw IdentityError("register: duplicate id \"" + id + "\"");
        if (entry.y == y)
            throw ShadowCollisionError(
                "register: shadow already registered; pick a new private key");
    }
    Registry out = registry;
    out.entries.push_back(RegistryEntry{id, y});
    return out;
}

const BulletinRow* Bulletin::find_id(const std::string& id) const {
    for (const auto& row : rows)
        if (row.id == id) return &row;
    return nullptr;
}

const BulletinRow* Bulletin::find_seq(long seq) const {
    for (const auto& row : rows)
        if (row.seq == seq) return &row;
    return nullptr;
}

long Bulletin::public_item_count() const {
    // lambda, p, q, g, Tr(g), Tr(g^b); one item per registry pair; one per
    // E; one per T; one per mask; c and the two tail terms.
    return 6 + 3 * static_cast<long>(rows.size()) +
           static_cast<long>(masks.size()) + 3;
}

long Bulletin::max_published_seq() const {
    long top = tail_seq + 1;
    for (const auto& row : rows) top = std::max(top, row.seq);
    for (const auto& mask : masks) top = std::max(top, mask.seq);
    return top;
}

DealResult deal(const XtrParams& params, const SchemeConfig& config,
                const Registry& registry, const std::vector<mpz_class>& secrets,
                Rng& rng) {
    const mpz_class& q = params.q;
    if (config.k < 1 || config.k > config.m)
        throw ConstraintError("deal: need 1 <= k <= m");
    require_threshold_fits(config.k, q);
    if (config.m != static_cast<int>(registry.entries.size()))
        throw ParamError("deal: registry holds " +
                         std::to_string(registry.entries.size()) +
                         " entries, config expects " + std::to_string(config.m));
    if (config.l < 1 || config.l != static_cast<int>(secrets.size()))
        throw ParamError("deal: need l >= 1 secrets matching the config");
    for (const auto& s : secrets)
        if (s <= 0 || s >= q)
            throw ParamError("deal: secrets must lie in GF(q)*");
    if (q <= config.m + config.l + 2)
        throw ConstraintError(
            "deal: q too small to give distinct interpolation nodes");

    const int k = config.k, m = config.m, l = config.l;

    // Recursion setup: constant and initial values from GF(q)*.
    std::vector<mpz_class> init;
    init.reserve(k);
    for (int i = 0; i < k; ++i) init.push_back(rng.range(1, q - 1));
    mpz_class c = rng.range(1, q - 1);
    NlrSpec spec(nlr_variant(config.variant), k, q, c, init);
    auto seq = generate(spec, m + l + 1);

    // One blinding exponent for the whole deal; re-drawn while any
    // participant's blinding key degenerates to 0 mod q.
    mpz_class b;
    std::vector<mpz_class> kappa(m);
    bool ok = false;
    for (int attempt = 0; attempt < 64 && !ok; ++attempt) {
        b = rng.range(2, q - 3);
        ok = true;
        for (int i = 0; i < m && ok; ++i) {
            kappa[i] = shared_blinding_key(params, registry.entries[i].y, b);
            if (kappa[i] == 0) ok = false;
        }
    }
    if (!ok)
        throw BlindingDegenerateError(
            "deal: could not find a non-degenerate blinding exponent");

    Bulletin bulletin;
    bulletin.params = params;
    bulletin.header = trace_ladder(params.c(), b);
    bulletin.variant = config.variant;
    bulletin.k = k;
    for (int i = 0; i < m; ++i) {
        const mpz_class& u = seq.terms[i];
        bulletin.rows.push_back(BulletinRow{registry.entries[i].id,
                                            registry.entries[i].y, i,
                                            mod(kappa[i] * u, q),
                                            params.g_pow(u)});
    }
    for (int j = 1; j <= l; ++j) {
        long mask_seq = m + j - 1;
        bulletin.masks.push_back(
            MaskRow{j, mask_seq, mod(secrets[j - 1] - seq.terms[mask_seq], q)});
    }
    bulletin.c = c;
    bulletin.tail_seq = m + l;
    bulletin.tail0 = seq.terms[m + l];
    bulletin.tail1 = seq.terms[m + l + 1];

    DealerState state;
    state.variant = config.variant;
    state.k = k;
    state.q = q;
    state.b = b;
    state.c = c;
    state.terms = seq.terms;
    for (int j = 1; j <= l; ++j) state.secrets.emplace_back(j, secrets[j - 1]);
    state.next_slot = l + 1;
    state.next_mask_seq = m + l;
    return DealResult{std::move(bulletin), std::move(state)};
}

mpz_class extract_subshadow(const Bulletin& bulletin, long index,
                            const mpz_class& x) {
    const BulletinRow* row = bulletin.find_seq(index - 1);
    if (!row)
        throw ParamError("extract: no participant at index " +
                         std::to_string(index));
    return decrypt_scalar(bulletin.params,
                          ScalarCiphertext{bulletin.header, row->e}, x);
}

bool verify_own(const Bulletin& bulletin, long index, const mpz_class& u) {
    const BulletinRow* row = bulletin.find_seq(index - 1);
    if (!row)
        throw ParamError("verify_own: no participant at index " +
                         std::to_string(index));
    return bulletin.params.g_pow(mod(u, bulletin.params.q)) == row->t;
}

std::vector<ConsistencyCheck> verify_consistency(const Bulletin& bulletin) {
    const XtrParams& params = bulletin.params;
    const mpz_class& q = params.q;
    const int k = bulletin.k;

    // Exponent arithmetic mod q is meaningless for elements outside the
    // order-q subgroup, so gate every commitment first.
    std::map<long, const BulletinRow*> by_seq;
    for (const auto& row : bulletin.rows) {
        if (!subgroup_check(params, row.t))
            throw MalformedBulletinError(
                "commitment outside the XTR group at index " +
                std::to_string(row.seq + 1));
        by_seq[row.seq] = &row;
    }

    std::vector<ConsistencyCheck> checks;
    for (const auto& [n, row] : by_seq) {
        bool window_present = true;
        for (long d = 1; d <= k && window_present; ++d)
            window_present = by_seq.count(n + d) > 0;
        if (!window_present) continue;

        // Scheme 1: prod_j T_{n+k-j}^C(k,j)          ?= g^(c (-1)^n n)
        // Scheme 2: prod_j T_{n+k-j}^((-1)^j C(k,j)) ?= g^(c n)
        // Negative exponents are folded onto the right-hand side so only
        // small binomial exponents ever touch the commitments.
        Fp6 lhs = Fp6::one(params.field);
        Fp6 rhs = Fp6::one(params.field);
        for (int j = 0; j <= k; ++j) {
            const Fp6& t = by_seq.at(n + k - j)->t;
            Fp6 term = t.pow(binomial(k, j));
            if (bulletin.variant == Scheme::Two && j % 2 == 1)
                rhs = rhs * term;
            else
                lhs = lhs * term;
        }
        mpz_class expo = mod(bulletin.c * n, q);
        if (bulletin.variant == Scheme::One && n % 2 == 1) expo = mod(-expo, q);
        rhs = rhs * params.g_pow(expo);
        checks.push_back(ConsistencyCheck{n, lhs == rhs});
    }
    return checks;
}

namespace {

struct VerifiedShare {
    long seq;
    mpz_class u;
};

// Registry binding plus commitment check for every share; throws one
// CheaterError naming all offenders.
std::vector<VerifiedShare> cross_verify(const Bulletin& bulletin,
                                        const std::vector<RecoveryShare>& shares) {
    std::vector<std::string> cheaters;
    std::set<std::string> ids;
    std::set<long> seqs;
    std::vector<VerifiedShare> out;
    for (const auto& share : shares) {
        if (!ids.insert(share.id).second)
            throw ParamError("recover: duplicate share for id \"" + share.id +
                             "\"");
        const BulletinRow* row = bulletin.find_id(share.id);
        if (!row || row->seq != share.index - 1) {
            // Unknown identity, or identity claiming a foreign position.
            cheaters.push_back(share.id);
            continue;
        }
        mpz_class u = mod(share.u, bulletin.params.q);
        if (bulletin.params.g_pow(u) != row->t) {
            cheaters.push_back(share.id);
            continue;
        }
        if (!seqs.insert(row->seq).second)
            throw ParamError("recover: duplicate index " +
                             std::to_string(share.index));
        out.push_back(VerifiedShare{row->seq, std::move(u)});
    }
    if (!cheaters.empty()) {
        std::string msg = "recover: cross-verification failed for:";
        for (const auto& id : cheaters) msg += " " + id;
        throw CheaterError(msg, cheaters);
    }
    return out;
}

} // namespace

std::vector<RecoveredSecret> recover(const Bulletin& bulletin,
                                     const std::vector<RecoveryShare>& shares,
                                     RecoveryWay way) {
    const mpz_class& q = bulletin.params.q;
    const int k = bulletin.k;
    auto verified = cross_verify(bulletin, shares);
    std::sort(verified.begin(), verified.end(),
              [](const VerifiedShare& a, const VerifiedShare& b) {
                  return a.seq < b.seq;
              });

    auto masks = bulletin.masks;
    std::sort(masks.begin(), masks.end(),
              [](const MaskRow& a, const MaskRow& b) { return a.slot < b.slot; });
    std::vector<RecoveredSecret> out;

    if (way == RecoveryWay::Interpolation) {
        if (static_cast<int>(verified.size()) < k)
            throw InsufficientSharesError(
                "recover: need at least k = " + std::to_string(k) +
                " verified shares");
        std::vector<NlrPoint> points;
        for (int i = 0; i < k; ++i)
            points.emplace_back(verified[i].seq, verified[i].u);
        points.emplace_back(bulletin.tail_seq, bulletin.tail0);
        points.emplace_back(bulletin.tail_seq + 1, bulletin.tail1);
        auto poly =
            recover_polynomial(nlr_variant(bulletin.variant), points, k, q);
        for (const auto& mask : masks) {
            mpz_class u = eval_closed_form(nlr_variant(bulletin.variant), poly,
                                           mask.seq, q);
            out.push_back(RecoveredSecret{mask.slot, mod(mask.z + u, q)});
        }
        return out;
    }

    // Consecutive way: locate a run of k adjacent sequence indices and walk
    // the recurrence forward from it.
    long run_start = -1;
    for (std::size_t i = 0; i + k <= verified.size() && run_start < 0; ++i) {
        bool consecutive = true;
        for (int d = 1; d < k && consecutive; ++d)
            consecutive = verified[i + d].seq == verified[i].seq + d;
        if (consecutive) run_start = static_cast<long>(i);
    }
    if (run_start < 0)
        throw InsufficientSharesError(
            "recover: consecutive way needs k = " + std::to_string(k) +
            " shares with adjacent indices");
    long s = verified[run_start].seq;
    for (const auto& mask : masks)
        if (mask.seq < s)
            throw InsufficientSharesError(
                "recover: consecutive window starts past mask index " +
                std::to_string(mask.seq));
    long top = s + k - 1;
    for (const auto& mask : masks) top = std::max(top, mask.seq);
    std::vector<mpz_class> window;
    for (int d = 0; d < k; ++d) window.push_back(verified[run_start + d].u);
    auto terms = extend_consecutive(nlr_variant(bulletin.variant), window, s,
                                    bulletin.c, k, q, top);
    for (const auto& mask : masks)
        out.push_back(
            RecoveredSecret{mask.slot, mod(mask.z + terms[mask.seq - s], q)});
    return out;
}

DealResult add_participant(const Bulletin& bulletin, const DealerState& state,
                           const std::string& id, const Fp2& y) {
    const XtrParams& params = bulletin.params;
    require_valid_id(id);
    if (!y.prime() || *y.prime() != params.p)
        throw ParamError("add_participant: shadow not over GF(p^2)");
    for (const auto& row : bulletin.rows) {
        if (row.id == id)
            throw IdentityError("add_participant: duplicate id \"" + id + "\"");
        if (row.y == y)
            throw ShadowCollisionError(
                "add_participant: shadow already registered");
    }
    mpz_class kappa = shared_blinding_key(params, y, state.b);
    if (kappa == 0)
        throw BlindingDegenerateError(
            "add_participant: blinding key degenerates; participant must pick "
            "a new private key");

    // The literal next-free-index rule (index m+1, subshadow u_m) would hand
    // the newcomer the mask of secret 1; allocate strictly past everything
    // published instead.
    long seq = bulletin.max_published_seq() + 1;
    DealerState new_state = state;
    ensure_terms(new_state, seq);
    const mpz_class& u = new_state.terms[seq];

    Bulletin out = bulletin;
    out.rows.push_back(
        BulletinRow{id, y, seq, mod(kappa * u, params.q), params.g_pow(u)});
    return DealResult{std::move(out), std::move(new_state)};
}

Bulletin remove_participant(const Bulletin& bulletin, const std::string& id) {
    Bulletin out = bulletin;
    auto it = std::find_if(out.rows.begin(), out.rows.end(),
                           [&](const BulletinRow& r) { return r.id == id; });
    if (it == out.rows.end())
        throw IdentityError("remove_participant: unknown id \"" + id + "\"");
    out.rows.erase(it);
    return out;
}

DealResult add_secret(const Bulletin& bulletin, const DealerState& state,
                      const mpz_class& s_new) {
    const mpz_class& q = bulletin.params.q;
    if (s_new <= 0 || s_new >= q)
        throw ParamError("add_secret: secret must lie in GF(q)*");

    DealerState new_state = state;
    int slot = new_state.next_slot++;
    long mask_seq = new_state.next_mask_seq++;

    Bulletin out = bulletin;
    ensure_terms(new_state, mask_seq);
    out.masks.push_back(
        MaskRow{slot, mask_seq, mod(s_new - new_state.terms[mask_seq], q)});

    // The tail moves two steps past everything consumed or parked, including
    // participants allocated beyond the old tail.
    long tail_seq = mask_seq;
    for (const auto& row : out.rows) tail_seq = std::max(tail_seq, row.seq);
    for (const auto& mask : out.masks) tail_seq = std::max(tail_seq, mask.seq);
    tail_seq += 1;
    ensure_terms(new_state, tail_seq + 1);
    out.tail_seq = tail_seq;
    out.tail0 = new_state.terms[tail_seq];
    out.tail1 = new_state.terms[tail_seq + 1];

    new_state.secrets.emplace_back(slot, s_new);
    return DealResult{std::move(out), std::move(new_state)};
}

Bulletin remove_secret(const Bulletin& bulletin, int slot) {
    Bulletin out = bulletin;
    auto it = std::find_if(out.masks.begin(), out.masks.end(),
                           [&](const MaskRow& m) { return m.slot == slot; });
    if (it == out.masks.end())
        throw ParamError("remove_secret: no secret at slot " +
                         std::to_string(slot));
    out.masks.erase(it);
    return out;
}

DealResult change_threshold(const XtrParams& params, const SchemeConfig& config,
                            const Registry& registry,
                            const std::vector<mpz_class>& secrets, int new_k,
                            Rng& rng) {
    SchemeConfig fresh = config;
    fresh.k = new_k;
    return deal(params, fresh, registry, secrets, rng);
}

} // namespace xtrss
