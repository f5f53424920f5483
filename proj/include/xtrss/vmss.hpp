#ifndef XTRSS_VMSS_HPP
#define XTRSS_VMSS_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "xtrss/nlr.hpp"
#include "xtrss/xtr.hpp"

namespace xtrss {

// Scheme 1 runs the Nlr1 recursion, Scheme 2 the Nlr2 recursion; everything
// else (keys, encryption, commitments, bulletin layout) is shared.
enum class Scheme { One = 1, Two = 2 };

NlrVariant nlr_variant(Scheme s);

struct SchemeConfig {
    Scheme variant = Scheme::Two;
    int k = 0; // threshold
    int m = 0; // participants at deal time
    int l = 0; // secrets at deal time
};

// Pre-deal registry: ordered (id, public shadow) pairs. Position i (1-based)
// becomes participant index i, holding subshadow u_{i-1}.
struct RegistryEntry {
    std::string id;
    Fp2 y;
};

struct Registry {
    std::vector<RegistryEntry> entries;
};

// Appends (id, y); rejects duplicate ids and duplicate shadows (the latter
// asks the caller to regenerate the keypair).
Registry register_participant(const XtrParams& params, const Registry& registry,
                              const std::string& id, const Fp2& y);

// One participant in a published bulletin. seq is the position of the
// participant's subshadow in the dealer sequence: i-1 for the original
// participant P_i, a fresh index beyond the published tail for participants
// added later.
struct BulletinRow {
    std::string id;
    Fp2 y;
    long seq = 0;
    mpz_class e; // encrypted subshadow, kappa * u_seq mod q
    Fp6 t;       // commitment g^{u_seq}
};

// One shared secret's mask. slot is the stable 1-based secret number (slots
// survive removals untouched); seq the consumed sequence index, z the mask
// S - u_seq mod q.
struct MaskRow {
    int slot = 0;
    long seq = 0;
    mpz_class z;
};

// Every public value the dealer releases. The serialized form tags each
// counted item so the public-value accounting (3m + l + 9 for a fresh deal)
// is mechanically checkable.
struct Bulletin {
    XtrParams params;
    Fp2 header; // Tr(g^b)
    Scheme variant = Scheme::Two;
    int k = 0;
    std::vector<BulletinRow> rows;
    std::vector<MaskRow> masks;
    mpz_class c;       // recursion constant
    long tail_seq = 0; // published terms u_{tail_seq}, u_{tail_seq+1}
    mpz_class tail0, tail1;

    const BulletinRow* find_id(const std::string& id) const;
    const BulletinRow* find_seq(long seq) const;
    long public_item_count() const;
    // Largest sequence index referenced by any published value.
    long max_published_seq() const;
};

// Everything the dealer keeps private across the protocol and the dynamic
// operations. Never serialized into the bulletin.
struct DealerState {
    Scheme variant = Scheme::Two;
    int k = 0;
    mpz_class q;
    mpz_class b;                 // blinding exponent
    mpz_class c;                 // recursion constant
    std::vector<mpz_class> terms; // u_0 .. (extended on demand)
    std::vector<std::pair<int, mpz_class>> secrets; // slot -> value
    int next_slot = 1;
    long next_mask_seq = 0;
};

struct DealResult {
    Bulletin bulletin;
    DealerState state;
};

DealResult deal(const XtrParams& params, const SchemeConfig& config,
                const Registry& registry, const std::vector<mpz_class>& secrets,
                Rng& rng);

// Participant index -> subshadow, by decrypting E with the private key.
mpz_class extract_subshadow(const Bulletin& bulletin, long index,
                            const mpz_class& x);

// T_index = g^u.
bool verify_own(const Bulletin& bulletin, long index, const mpz_class& u);

struct ConsistencyCheck {
    long instance = 0; // recurrence instance index n, covering u_n .. u_{n+k}
    bool pass = false;
};

// Subgroup-checks every commitment, then evaluates the recurrence product
// for every instance whose k+1 commitments are all published.
std::vector<ConsistencyCheck> verify_consistency(const Bulletin& bulletin);

// A claimed contribution at recovery time. index is the 1-based participant
// index (seq + 1); the registry binding and the commitment are both checked
// before any share is used.
struct RecoveryShare {
    std::string id;
    long index = 0;
    mpz_class u;
};

enum class RecoveryWay { Interpolation, Consecutive };

struct RecoveredSecret {
    int slot = 0;
    mpz_class value;
};

std::vector<RecoveredSecret> recover(const Bulletin& bulletin,
                                     const std::vector<RecoveryShare>& shares,
                                     RecoveryWay way);

DealResult add_participant(const Bulletin& bulletin, const DealerState& state,
                           const std::string& id, const Fp2& y);

Bulletin remove_participant(const Bulletin& bulletin, const std::string& id);

DealResult add_secret(const Bulletin& bulletin, const DealerState& state,
                      const mpz_class& s_new);

Bulletin remove_secret(const Bulletin& bulletin, int slot);

DealResult change_threshold(const XtrParams& params, const SchemeConfig& config,
                            const Registry& registry,
                            const std::vector<mpz_class>& secrets, int new_k,
                            Rng& rng);

// --- serialization -------------------------------------------------------

std::string serialize_registry(const Registry& registry);
Registry parse_registry(const std::string& text, const XtrParams& params);

std::string serialize_bulletin(const Bulletin& bulletin);
Bulletin parse_bulletin(const std::string& text);

std::string serialize_dealer_state(const DealerState& state);
DealerState parse_dealer_state(const std::string& text);

std::string serialize_share(const RecoveryShare& share);
RecoveryShare parse_share(const std::string& text);

} // namespace xtrss

#endif
