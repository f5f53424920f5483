#ifndef XTRSS_HARNESS_HPP
#define XTRSS_HARNESS_HPP

#include <string>
#include <vector>

#include "xtrss/vmss.hpp"

namespace xtrss {

// What the dishonest party touches. E/T/InitSubshadow/MaskSubshadow take a
// 1-based participant index, Z a mask slot, Tail 0 or 1; ConstC has no
// index. InitSubshadow substitutes one initial value before the sequence is
// generated (the published data is consistent with the substitute while the
// participant's ciphertext carries the original); MaskSubshadow publishes an
// E/T pair consistent with a substituted value at a position past the
// threshold while the rest of the sequence stays honest.
enum class TamperTarget { E, T, Z, ConstC, Tail, InitSubshadow, MaskSubshadow };

enum class TamperMode { None, Increment, Randomize, SwapWith };

struct TamperSpec {
    TamperTarget target = TamperTarget::E;
    long index = 0;
    TamperMode mode = TamperMode::Increment;
    long swap_index = 0;
};

const char* tamper_target_name(TamperTarget target);
const char* tamper_mode_name(TamperMode mode);

// Outcome of one scenario. detected is true exactly when checks_failed is
// nonempty; covered says whether the tampered datum is bound by at least
// one check the verification phase can compute, so uncovered-but-undetected
// rows are an honest empirical finding, not a failure.
struct ScenarioReport {
    std::string scenario;
    std::vector<std::string> tampered;
    std::vector<std::string> checks_run;
    std::vector<std::string> checks_failed;
    bool covered = false;
    bool detected = false;
    std::string detector; // "participant <i>", "recovery coalition", "none"

    std::string serialize() const;
};

// Dealer performs a (possibly tampered) construction phase; every
// participant then runs the verification phase. Reports which checks fire.
ScenarioReport run_dealer_attack(const XtrParams& params,
                                 const SchemeConfig& config,
                                 const TamperSpec& tamper, Rng& rng);

// Honest deal, then a recovery in which participant cheat_index falsifies
// its contribution: Increment bumps the subshadow, Randomize relabels the
// share to partner_index's position, SwapWith is the two-party conspiracy
// where cheat_index and partner_index exchange private keys, None is the
// all-honest control.
ScenarioReport run_participant_cheat(const XtrParams& params,
                                     const SchemeConfig& config,
                                     long cheat_index, long partner_index,
                                     TamperMode mode, Rng& rng);

// Full honest lifecycle: deal, verification, both recovery ways, the
// below-threshold branch, and one of each dynamic operation with recovery
// re-checked after every step.
ScenarioReport run_session(const XtrParams& params, const SchemeConfig& config,
                           Rng& rng);

// Every tamper target at every position, increment and randomize modes,
// plus control rows, for each config. Returns the matrix as text (one row
// per scenario) for golden-file comparison; asserts nothing itself.
std::string run_coverage_matrix(const XtrParams& params,
                                const std::vector<SchemeConfig>& configs,
                                std::uint64_t seed);

} // namespace xtrss

#endif
