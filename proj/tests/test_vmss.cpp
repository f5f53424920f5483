#include <doctest.h>

#include <algorithm>

#include "xtrss/errors.hpp"
#include "xtrss/numtheory.hpp"
#include "xtrss/vmss.hpp"

using namespace xtrss;

namespace {

// A full toy session: parameters, keypairs, registry, one deal.
struct Session {
    XtrParams params;
    std::vector<XtrKeypair> keys;
    Registry registry;
    std::vector<mpz_class> secrets;
    Bulletin bulletin;
    DealerState state;

    RecoveryShare share_of(int i) const { // 1-based participant index
        mpz_class u = extract_subshadow(bulletin, i, keys[i - 1].x);
        return RecoveryShare{bulletin.rows[i - 1].id, i, u};
    }
    std::vector<RecoveryShare> shares_of(const std::vector<int>& idx) const {
        std::vector<RecoveryShare> out;
        for (int i : idx) out.push_back(share_of(i));
        return out;
    }
};

// The group at p = 23, q = 13 owns exactly four distinct traces (nonzero
// exponents fall into orbits {n, 3n, 9n} mod 13), so at most four
// participants can register distinct shadows there. Sessions needing more
// run at p = 53, q = 919 instead, which is still instant.
Session make_session(Scheme variant, int k, int m, int l, std::uint64_t seed) {
    Session s{};
    Rng rng(seed);
    s.params = m <= 4 ? make_params(23, 13, rng) : make_params(53, 919, rng);
    for (int i = 0; i < m; ++i) {
        for (;;) {
            XtrKeypair kp = keygen(s.params, rng);
            try {
                s.registry = register_participant(
                    s.params, s.registry, "p" + std::to_string(i + 1), kp.y);
                s.keys.push_back(kp);
                break;
            } catch (const ShadowCollisionError&) {
                // toy group has few shadows; draw again
            }
        }
    }
    for (int j = 0; j < l; ++j) s.secrets.push_back(rng.range(1, 12));
    auto result =
        deal(s.params, SchemeConfig{variant, k, m, l}, s.registry, s.secrets, rng);
    s.bulletin = std::move(result.bulletin);
    s.state = std::move(result.state);
    return s;
}

std::vector<mpz_class> values_of(const std::vector<RecoveredSecret>& secrets) {
    std::vector<mpz_class> out;
    for (const auto& s : secrets) out.push_back(s.value);
    return out;
}

} // namespace

TEST_CASE("registration contract") {
    Rng rng(3);
    XtrParams params = make_params(23, 13, rng);
    Registry registry;
    XtrKeypair a = keygen(params, rng);
    registry = register_participant(params, registry, "alice", a.y);
    CHECK_THROWS_AS(register_participant(params, registry, "alice2", a.y),
                    ShadowCollisionError);
    CHECK_THROWS_AS(register_participant(params, registry, "alice", a.y),
                    IdentityError);
    CHECK_THROWS_AS(register_participant(params, registry, "bad id", a.y),
                    ParamError);

    XtrKeypair b = keygen(params, rng);
    while (b.y == a.y) b = keygen(params, rng);
    registry = register_participant(params, registry, "bob", b.y);
    CHECK(registry.entries.size() == 2);
    CHECK(registry.entries[0].id == "alice");
    CHECK(registry.entries[1].id == "bob");
}

TEST_CASE("deal publishes 3m + l + 9 items") {
    Session s = make_session(Scheme::Two, 2, 5, 2, 11);
    CHECK(s.bulletin.public_item_count() == 26);
    CHECK(s.bulletin.rows.size() == 5);
    CHECK(s.bulletin.masks.size() == 2);
    CHECK(s.bulletin.tail_seq == 7);
}

TEST_CASE("deal input validation") {
    Session s = make_session(Scheme::Two, 2, 3, 1, 13);
    Rng rng(17);
    SUBCASE("zero secret") {
        CHECK_THROWS_AS(deal(s.params, SchemeConfig{Scheme::Two, 2, 3, 1},
                             s.registry, {0}, rng),
                        ParamError);
    }
    SUBCASE("threshold too large for q = 13") {
        // C(6,3) = 20 > 13; rejected before the registry is even consulted.
        try {
            deal(s.params, SchemeConfig{Scheme::Two, 6, 6, 1}, s.registry,
                 {mpz_class(5)}, rng);
            FAIL("expected ConstraintError");
        } catch (const ConstraintError& e) {
            CHECK(std::string(e.what()).find("C(6,3) = 20") !=
                  std::string::npos);
        }
    }
    SUBCASE("k > m") {
        CHECK_THROWS_AS(deal(s.params, SchemeConfig{Scheme::Two, 4, 3, 1},
                             s.registry, {mpz_class(5)}, rng),
                        ConstraintError);
    }
    SUBCASE("registry size mismatch") {
        CHECK_THROWS_AS(deal(s.params, SchemeConfig{Scheme::Two, 2, 4, 1},
                             s.registry, {mpz_class(5)}, rng),
                        ParamError);
    }
}

TEST_CASE("honest bulletins verify and recover, both schemes, both ways") {
    int instance = 0;
    for (Scheme variant : {Scheme::One, Scheme::Two}) {
        for (std::uint64_t seed = 1; seed <= 50; ++seed) {
            Session s = make_session(variant, 2 + seed % 3, 4 + seed % 3, 2,
                                     1000 + seed);
            int k = s.bulletin.k, m = static_cast<int>(s.bulletin.rows.size());
            ++instance;

            // Every participant extracts its own subshadow and verifies.
            for (int i = 1; i <= m; ++i) {
                mpz_class u = extract_subshadow(s.bulletin, i, s.keys[i - 1].x);
                CHECK(u == s.state.terms[i - 1]);
                CHECK(verify_own(s.bulletin, i, u));
                CHECK_FALSE(verify_own(s.bulletin, i, u + 1));
            }
            auto checks = verify_consistency(s.bulletin);
            CHECK(checks.size() == static_cast<std::size_t>(m - k));
            for (const auto& chk : checks) CHECK(chk.pass);

            // Any k participants recover the secrets; the two ways agree.
            std::vector<int> coalition;
            for (int i = 0; i < k; ++i)
                coalition.push_back(1 + (static_cast<int>(seed) + i * 2) % m);
            std::sort(coalition.begin(), coalition.end());
            coalition.erase(std::unique(coalition.begin(), coalition.end()),
                            coalition.end());
            while (static_cast<int>(coalition.size()) < k) {
                for (int i = 1; i <= m; ++i)
                    if (std::find(coalition.begin(), coalition.end(), i) ==
                        coalition.end()) {
                        coalition.push_back(i);
                        break;
                    }
                std::sort(coalition.begin(), coalition.end());
            }
            auto lag = recover(s.bulletin, s.shares_of(coalition),
                               RecoveryWay::Interpolation);
            CHECK(values_of(lag) == s.secrets);

            std::vector<int> run;
            for (int i = 1; i <= k; ++i) run.push_back(i);
            auto con = recover(s.bulletin, s.shares_of(run),
                               RecoveryWay::Consecutive);
            CHECK(values_of(con) == s.secrets);
        }
    }
    CHECK(instance == 100);
}

TEST_CASE("extract rejects bad indices and exposes wrong keys via T") {
    Session s = make_session(Scheme::Two, 2, 4, 2, 23);
    CHECK_THROWS_AS(extract_subshadow(s.bulletin, 0, s.keys[0].x), ParamError);
    CHECK_THROWS_AS(extract_subshadow(s.bulletin, 9, s.keys[0].x), ParamError);

    // A wrong key yields a subshadow failing the commitment check unless the
    // blinding keys collide (exponent conjugacy or encoding collision).
    int failures = 0, total = 0;
    for (mpz_class xw = 2; xw < 13; ++xw) {
        if (xw == s.keys[0].x) continue;
        mpz_class u = extract_subshadow(s.bulletin, 1, xw);
        ++total;
        if (!verify_own(s.bulletin, 1, u)) ++failures;
    }
    CHECK(failures * 2 > total);
}

TEST_CASE("consistency instance 0 has unit right-hand side") {
    // Tampering with the published constant c leaves instance 0 intact
    // (exponent c*0 = 0) but breaks every later instance.
    Session s = make_session(Scheme::Two, 2, 5, 1, 29);
    Bulletin tampered = s.bulletin;
    tampered.c = mod(tampered.c + 1, s.params.q);
    if (tampered.c == 0) tampered.c = 1;
    auto checks = verify_consistency(tampered);
    REQUIRE(checks.size() == 3);
    for (const auto& chk : checks) {
        if (chk.instance == 0)
            CHECK(chk.pass);
        else
            CHECK_FALSE(chk.pass);
    }
}

TEST_CASE("non-subgroup commitment is flagged with its index") {
    Session s = make_session(Scheme::One, 2, 4, 1, 31);
    Bulletin tampered = s.bulletin;
    tampered.rows[2].t =
        Fp6::theta(s.params.field) + Fp6::one(s.params.field);
    try {
        verify_consistency(tampered);
        FAIL("expected MalformedBulletinError");
    } catch (const MalformedBulletinError& e) {
        CHECK(std::string(e.what()).find("index 3") != std::string::npos);
    }
}

TEST_CASE("recover rejects cheaters by name") {
    Session s = make_session(Scheme::Two, 3, 5, 2, 37);
    SUBCASE("falsified subshadow") {
        auto shares = s.shares_of({1, 2, 3});
        shares[1].u = mod(shares[1].u + 1, s.params.q);
        try {
            recover(s.bulletin, shares, RecoveryWay::Interpolation);
            FAIL("expected CheaterError");
        } catch (const CheaterError& e) {
            CHECK(e.ids() == std::vector<std::string>{"p2"});
        }
    }
    SUBCASE("conspiracy: exchanged identities") {
        auto shares = s.shares_of({1, 2, 3});
        // p1 and p3 swap: each claims the other's index and subshadow.
        auto honest = shares;
        shares[0] = RecoveryShare{"p1", honest[2].index, honest[2].u};
        shares[2] = RecoveryShare{"p3", honest[0].index, honest[0].u};
        try {
            recover(s.bulletin, shares, RecoveryWay::Interpolation);
            FAIL("expected CheaterError");
        } catch (const CheaterError& e) {
            CHECK(e.ids() == std::vector<std::string>{"p1", "p3"});
        }
    }
    SUBCASE("insufficient shares") {
        CHECK_THROWS_AS(
            recover(s.bulletin, s.shares_of({1, 2}), RecoveryWay::Interpolation),
            InsufficientSharesError);
        CHECK_THROWS_AS(
            recover(s.bulletin, s.shares_of({1, 2, 4}), RecoveryWay::Consecutive),
            InsufficientSharesError);
    }
    SUBCASE("duplicate share") {
        auto shares = s.shares_of({1, 2, 3});
        shares[2] = shares[0];
        CHECK_THROWS_AS(recover(s.bulletin, shares, RecoveryWay::Interpolation),
                        ParamError);
    }
}

TEST_CASE("add_participant") {
    // m = 3 of the four toy shadows, leaving one for the newcomer.
    Session s = make_session(Scheme::Two, 2, 3, 2, 41);
    Rng rng(43);
    XtrKeypair fresh = keygen(s.params, rng);
    while (std::any_of(s.bulletin.rows.begin(), s.bulletin.rows.end(),
                       [&](const BulletinRow& r) { return r.y == fresh.y; }))
        fresh = keygen(s.params, rng);

    auto grown = add_participant(s.bulletin, s.state, "newbie", fresh.y);

    // First fresh index past the published tail: m + l + 2.
    const BulletinRow* row = grown.bulletin.find_id("newbie");
    REQUIRE(row);
    CHECK(row->seq == 3 + 2 + 2);
    // Append-only: nothing already published moves.
    for (std::size_t i = 0; i < s.bulletin.rows.size(); ++i) {
        CHECK(grown.bulletin.rows[i].e == s.bulletin.rows[i].e);
        CHECK(grown.bulletin.rows[i].t == s.bulletin.rows[i].t);
    }
    REQUIRE(grown.bulletin.masks.size() == s.bulletin.masks.size());
    for (std::size_t i = 0; i < s.bulletin.masks.size(); ++i)
        CHECK(grown.bulletin.masks[i].z == s.bulletin.masks[i].z);
    CHECK(grown.bulletin.tail_seq == s.bulletin.tail_seq);
    CHECK(grown.bulletin.tail0 == s.bulletin.tail0);
    CHECK(grown.bulletin.public_item_count() == 3 * 4 + 2 + 9);

    // The newcomer plus any k-1 originals can recover.
    mpz_class u = extract_subshadow(grown.bulletin, row->seq + 1, fresh.x);
    CHECK(verify_own(grown.bulletin, row->seq + 1, u));
    std::vector<RecoveryShare> shares = {
        RecoveryShare{"newbie", row->seq + 1, u}};
    mpz_class u2 = extract_subshadow(grown.bulletin, 2, s.keys[1].x);
    shares.push_back(RecoveryShare{"p2", 2, u2});
    auto secrets = recover(grown.bulletin, shares, RecoveryWay::Interpolation);
    CHECK(values_of(secrets) == s.secrets);

    CHECK_THROWS_AS(add_participant(grown.bulletin, grown.state, "p1", fresh.y),
                    IdentityError);
    CHECK_THROWS_AS(
        add_participant(grown.bulletin, grown.state, "clone", s.keys[0].y),
        ShadowCollisionError);
}

TEST_CASE("remove_participant") {
    Session s = make_session(Scheme::Two, 2, 4, 1, 47);
    auto share1 = s.share_of(1);
    Bulletin shrunk = remove_participant(s.bulletin, "p1");
    CHECK(shrunk.rows.size() == 3);
    CHECK(shrunk.public_item_count() == 3 * 3 + 1 + 9);

    // The removed participant's share now fails cross-verification.
    auto shares = std::vector<RecoveryShare>{share1, s.share_of(2)};
    try {
        recover(shrunk, shares, RecoveryWay::Interpolation);
        FAIL("expected CheaterError");
    } catch (const CheaterError& e) {
        CHECK(e.ids() == std::vector<std::string>{"p1"});
    }

    // Remaining participants still recover.
    std::vector<RecoveryShare> rest = {s.share_of(2), s.share_of(3)};
    CHECK(values_of(recover(shrunk, rest, RecoveryWay::Interpolation)) ==
          s.secrets);

    CHECK_THROWS_AS(remove_participant(shrunk, "p1"), IdentityError);
}

TEST_CASE("add_secret") {
    Session s = make_session(Scheme::Two, 2, 4, 2, 53);
    mpz_class extra = 11;
    auto grown = add_secret(s.bulletin, s.state, extra);
    CHECK(grown.bulletin.masks.size() == 3);
    CHECK(grown.bulletin.public_item_count() == 3 * 4 + 3 + 9);
    // Consumed the old tail start; tail slides forward.
    CHECK(grown.bulletin.masks[2].seq == s.bulletin.tail_seq);
    CHECK(grown.bulletin.tail_seq == s.bulletin.tail_seq + 1);

    auto secrets =
        recover(grown.bulletin, s.shares_of({2, 3}), RecoveryWay::Interpolation);
    REQUIRE(secrets.size() == 3);
    CHECK(secrets[2].slot == 3);
    CHECK(secrets[2].value == extra);
    CHECK(values_of(secrets) ==
          std::vector<mpz_class>{s.secrets[0], s.secrets[1], extra});

    CHECK_THROWS_AS(add_secret(s.bulletin, s.state, 0), ParamError);
}

TEST_CASE("remove_secret") {
    Session s = make_session(Scheme::Two, 2, 4, 3, 59);
    Bulletin pruned = remove_secret(s.bulletin, 2);
    CHECK(pruned.masks.size() == 2);
    CHECK(serialize_bulletin(pruned).find("z slot=2") == std::string::npos);

    auto secrets = recover(pruned, s.shares_of({1, 2}), RecoveryWay::Interpolation);
    REQUIRE(secrets.size() == 2);
    CHECK(secrets[0].slot == 1);
    CHECK(secrets[0].value == s.secrets[0]);
    CHECK(secrets[1].slot == 3);
    CHECK(secrets[1].value == s.secrets[2]);

    // Surviving slots keep their indices; re-adding restores recoverability.
    auto readded = add_secret(pruned, s.state, s.secrets[1]);
    auto again =
        recover(readded.bulletin, s.shares_of({1, 2}), RecoveryWay::Interpolation);
    REQUIRE(again.size() == 3);
    CHECK(again[2].value == s.secrets[1]);

    Bulletin empty = remove_secret(remove_secret(pruned, 1), 3);
    CHECK(recover(empty, s.shares_of({1, 2}), RecoveryWay::Interpolation).empty());
    CHECK_THROWS_AS(remove_secret(empty, 1), ParamError);
    CHECK_THROWS_AS(remove_secret(s.bulletin, 9), ParamError);
}

TEST_CASE("change_threshold") {
    Session s = make_session(Scheme::Two, 2, 5, 2, 61);
    Rng rng(67);
    auto redealt = change_threshold(
        s.params, SchemeConfig{Scheme::Two, 2, 5, 2}, s.registry, s.secrets, 3,
        rng);
    CHECK(redealt.bulletin.k == 3);

    auto fresh_share = [&](int i) {
        mpz_class u =
            extract_subshadow(redealt.bulletin, i, s.keys[i - 1].x);
        return RecoveryShare{redealt.bulletin.rows[i - 1].id, i, u};
    };
    std::vector<RecoveryShare> three = {fresh_share(1), fresh_share(3),
                                        fresh_share(5)};
    CHECK(values_of(recover(redealt.bulletin, three,
                            RecoveryWay::Interpolation)) == s.secrets);
    std::vector<RecoveryShare> two = {fresh_share(1), fresh_share(3)};
    CHECK_THROWS_AS(recover(redealt.bulletin, two, RecoveryWay::Interpolation),
                    InsufficientSharesError);

    // Old subshadows mostly fail against the re-dealt commitments.
    int failing = 0;
    for (int i = 1; i <= 5; ++i) {
        mpz_class old_u = extract_subshadow(s.bulletin, i, s.keys[i - 1].x);
        if (!verify_own(redealt.bulletin, i, old_u)) ++failing;
    }
    CHECK(failing >= 4);
}

TEST_CASE("bulletin serialization") {
    Session s = make_session(Scheme::One, 3, 5, 2, 71);
    std::string text = serialize_bulletin(s.bulletin);
    SUBCASE("round trip is byte-stable and registry survives") {
        Bulletin back = parse_bulletin(text);
        CHECK(serialize_bulletin(back) == text);
        REQUIRE(back.rows.size() == s.bulletin.rows.size());
        for (std::size_t i = 0; i < back.rows.size(); ++i) {
            CHECK(back.rows[i].id == s.bulletin.rows[i].id);
            CHECK(back.rows[i].y == s.bulletin.rows[i].y);
            CHECK(back.rows[i].seq == s.bulletin.rows[i].seq);
            CHECK(back.rows[i].e == s.bulletin.rows[i].e);
            CHECK(back.rows[i].t == s.bulletin.rows[i].t);
        }
        CHECK(back.c == s.bulletin.c);
        CHECK(back.tail0 == s.bulletin.tail0);
        CHECK(back.tail1 == s.bulletin.tail1);
        // Parsed bulletins verify and recover like the originals.
        for (const auto& chk : verify_consistency(back)) CHECK(chk.pass);
        CHECK(values_of(recover(back, s.shares_of({2, 3, 4}),
                                RecoveryWay::Interpolation)) == s.secrets);
    }
    SUBCASE("count integrity line is enforced") {
        auto posn = text.rfind("count=");
        std::string broken = text.substr(0, posn) + "count=99\n";
        CHECK_THROWS_AS(parse_bulletin(broken), FormatError);
    }
    SUBCASE("truncation rejected") {
        CHECK_THROWS_AS(parse_bulletin(text.substr(0, text.size() / 2)),
                        FormatError);
    }
    SUBCASE("the count line matches the 3m + l + 9 accounting") {
        auto posn = text.rfind("count=");
        CHECK(text.substr(posn) ==
              "count=" + std::to_string(3 * 5 + 2 + 9) + "\n");
    }
}

TEST_CASE("dealer state serialization") {
    Session s = make_session(Scheme::Two, 2, 4, 2, 73);
    std::string text = serialize_dealer_state(s.state);
    DealerState back = parse_dealer_state(text);
    CHECK(serialize_dealer_state(back) == text);
    CHECK(back.b == s.state.b);
    CHECK(back.terms == s.state.terms);
    CHECK(back.secrets == s.state.secrets);

    // A parsed state drives dynamic operations identically.
    auto a = add_secret(s.bulletin, s.state, 7);
    auto b = add_secret(s.bulletin, back, 7);
    CHECK(serialize_bulletin(a.bulletin) == serialize_bulletin(b.bulletin));
}

TEST_CASE("share serialization") {
    Session s = make_session(Scheme::Two, 2, 4, 1, 79);
    RecoveryShare share = s.share_of(2);
    RecoveryShare back = parse_share(serialize_share(share));
    CHECK(back.id == share.id);
    CHECK(back.index == share.index);
    CHECK(back.u == share.u);
    CHECK_THROWS_AS(parse_share("id=a\nindex=1\n"), FormatError);
}

TEST_CASE("registry serialization") {
    Session s = make_session(Scheme::Two, 2, 4, 1, 83);
    std::string text = serialize_registry(s.registry);
    Registry back = parse_registry(text, s.params);
    CHECK(serialize_registry(back) == text);
    REQUIRE(back.entries.size() == 4);
    for (std::size_t i = 0; i < 4; ++i) {
        CHECK(back.entries[i].id == s.registry.entries[i].id);
        CHECK(back.entries[i].y == s.registry.entries[i].y);
    }
}
