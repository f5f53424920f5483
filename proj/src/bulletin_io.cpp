#include <map>
#include <sstream>
#include <set>

#include "xtrss/errors.hpp"
#include "xtrss/numtheory.hpp"
#include "xtrss/vmss.hpp"

// Line-oriented text formats. Every file is byte-reproducible for a fixed
// seed: field order is pinned, integers are decimal, GF(p^2) elements are
// "z1,z2" and GF(p^6) elements six comma-separated decimals. The bulletin
// tags each counted public item with its own line and ends with an
// integrity line carrying the item count.

namespace xtrss {

namespace {

std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        lines.push_back(line);
    }
    return lines;
}

std::pair<std::string, std::string> split_kv(const std::string& token) {
    auto eq = token.find('=');
    if (eq == std::string::npos)
        throw FormatError("expected key=value, got \"" + token + "\"");
    return {token.substr(0, eq), token.substr(eq + 1)};
}

// "row id=p1 seq=0 y=1,2" -> tag "row" + ordered key/value pairs.
std::pair<std::string, std::map<std::string, std::string>>
split_record(const std::string& line) {
    std::istringstream in(line);
    std::string tag, token;
    in >> tag;
    std::map<std::string, std::string> kv;
    while (in >> token) kv.insert(split_kv(token));
    return {tag, kv};
}

mpz_class parse_mpz(const std::string& text) {
    mpz_class v;
    if (text.empty() || v.set_str(text, 10) != 0)
        throw FormatError("bad decimal integer \"" + text + "\"");
    return v;
}

long parse_long(const std::string& text) {
    mpz_class v = parse_mpz(text);
    if (!v.fits_slong_p()) throw FormatError("integer out of range");
    return v.get_si();
}

mpz_class parse_range(const std::string& text, const mpz_class& bound) {
    mpz_class v = parse_mpz(text);
    if (v < 0 || v >= bound) throw FormatError("value out of range");
    return v;
}

const std::string& want(const std::map<std::string, std::string>& kv,
                        const std::string& key) {
    auto it = kv.find(key);
    if (it == kv.end()) throw FormatError("missing field \"" + key + "\"");
    return it->second;
}

} // namespace

std::string serialize_registry(const Registry& registry) {
    std::ostringstream out;
    out << "# xtrss registry\nformat=1\n";
    for (const auto& entry : registry.entries)
        out << "row id=" << entry.id << " y=" << entry.y.str() << "\n";
    return out.str();
}

Registry parse_registry(const std::string& text, const XtrParams& params) {
    Registry registry;
    for (const auto& line : split_lines(text)) {
        if (line == "format=1") continue;
        auto [tag, kv] = split_record(line);
        if (tag != "row") throw FormatError("registry: unexpected line " + line);
        registry = register_participant(
            params, registry, want(kv, "id"),
            Fp2::parse(want(kv, "y"), params.field->p));
    }
    return registry;
}

std::string serialize_bulletin(const Bulletin& bulletin) {
    std::ostringstream out;
    long count = 0;
    out << "# xtrss bulletin\nformat=1\n[params]\n";
    out << "lambda=" << bulletin.params.lambda << "\n";
    out << "p=" << bulletin.params.p.get_str() << "\n";
    out << "q=" << bulletin.params.q.get_str() << "\n";
    out << "g=" << bulletin.params.g.str() << "\n";
    out << "tr_g=" << bulletin.params.c().str() << "\n";
    out << "tr_gb=" << bulletin.header.str() << "\n";
    count += 6;
    out << "[meta]\n";
    out << "variant=" << static_cast<int>(bulletin.variant) << "\n";
    out << "k=" << bulletin.k << "\n";
    out << "tail_seq=" << bulletin.tail_seq << "\n";
    out << "[registry]\n";
    for (const auto& row : bulletin.rows) {
        out << "row id=" << row.id << " seq=" << row.seq
            << " y=" << row.y.str() << "\n";
        ++count;
    }
    out << "[construction]\n";
    for (const auto& row : bulletin.rows) {
        out << "e seq=" << row.seq << " v=" << row.e.get_str() << "\n";
        ++count;
    }
    for (const auto& row : bulletin.rows) {
        out << "t seq=" << row.seq << " v=" << row.t.str() << "\n";
        ++count;
    }
    for (const auto& mask : bulletin.masks) {
        out << "z slot=" << mask.slot << " seq=" << mask.seq
            << " v=" << mask.z.get_str() << "\n";
        ++count;
    }
    out << "c=" << bulletin.c.get_str() << "\n";
    out << "tail0=" << bulletin.tail0.get_str() << "\n";
    out << "tail1=" << bulletin.tail1.get_str() << "\n";
    count += 3;
    out << "count=" << count << "\n";
    return out.str();
}

Bulletin parse_bulletin(const std::string& text) {
    auto lines = split_lines(text);
    std::size_t pos = 0;
    auto next = [&]() -> const std::string& {
        if (pos >= lines.size()) throw FormatError("bulletin: truncated file");
        return lines[pos++];
    };
    auto expect = [&](const std::string& want_line) {
        if (next() != want_line)
            throw FormatError("bulletin: expected \"" + want_line + "\"");
    };
    auto take_kv = [&](const std::string& key) {
        auto [k, v] = split_kv(next());
        if (k != key) throw FormatError("bulletin: expected key " + key);
        return v;
    };

    expect("format=1");
    expect("[params]");
    std::string params_text;
    params_text += "lambda=" + take_kv("lambda") + "\n";
    params_text += "p=" + take_kv("p") + "\n";
    params_text += "q=" + take_kv("q") + "\n";
    std::string g_text = take_kv("g");
    std::string tr_g = take_kv("tr_g");
    auto comma = tr_g.find(',');
    if (comma == std::string::npos) throw FormatError("bulletin: bad tr_g");
    params_text += "c.z1=" + tr_g.substr(0, comma) + "\n";
    params_text += "c.z2=" + tr_g.substr(comma + 1) + "\n";
    params_text += "g=" + g_text + "\n";

    Bulletin bulletin;
    bulletin.params = read_params(params_text);
    const mpz_class& q = bulletin.params.q;
    long count = 6;

    bulletin.header = Fp2::parse(take_kv("tr_gb"), bulletin.params.field->p);
    expect("[meta]");
    long variant = parse_long(take_kv("variant"));
    if (variant != 1 && variant != 2)
        throw FormatError("bulletin: variant must be 1 or 2");
    bulletin.variant = variant == 1 ? Scheme::One : Scheme::Two;
    bulletin.k = static_cast<int>(parse_long(take_kv("k")));
    if (bulletin.k < 1) throw FormatError("bulletin: bad threshold");
    bulletin.tail_seq = parse_long(take_kv("tail_seq"));
    if (bulletin.tail_seq < 0) throw FormatError("bulletin: bad tail_seq");

    expect("[registry]");
    std::set<std::string> ids;
    std::set<long> seqs;
    while (pos < lines.size() && lines[pos] != "[construction]") {
        auto [tag, kv] = split_record(next());
        if (tag != "row") throw FormatError("bulletin: unexpected " + tag);
        BulletinRow row;
        row.id = want(kv, "id");
        row.seq = parse_long(want(kv, "seq"));
        row.y = Fp2::parse(want(kv, "y"), bulletin.params.field->p);
        if (!ids.insert(row.id).second)
            throw FormatError("bulletin: duplicate id " + row.id);
        if (row.seq < 0 || !seqs.insert(row.seq).second)
            throw FormatError("bulletin: duplicate sequence index");
        bulletin.rows.push_back(std::move(row));
        ++count;
    }
    expect("[construction]");
    for (auto& row : bulletin.rows) {
        auto [tag, kv] = split_record(next());
        if (tag != "e" || parse_long(want(kv, "seq")) != row.seq)
            throw FormatError("bulletin: construction rows out of order");
        row.e = parse_range(want(kv, "v"), q);
        ++count;
    }
    for (auto& row : bulletin.rows) {
        auto [tag, kv] = split_record(next());
        if (tag != "t" || parse_long(want(kv, "seq")) != row.seq)
            throw FormatError("bulletin: construction rows out of order");
        row.t = Fp6::parse(want(kv, "v"), bulletin.params.field);
        ++count;
    }
    std::set<int> slots;
    while (pos < lines.size() && lines[pos].rfind("z ", 0) == 0) {
        auto [tag, kv] = split_record(next());
        MaskRow mask;
        mask.slot = static_cast<int>(parse_long(want(kv, "slot")));
        mask.seq = parse_long(want(kv, "seq"));
        mask.z = parse_range(want(kv, "v"), q);
        if (mask.slot < 1 || !slots.insert(mask.slot).second)
            throw FormatError("bulletin: duplicate mask slot");
        if (mask.seq < 0) throw FormatError("bulletin: bad mask index");
        bulletin.masks.push_back(std::move(mask));
        ++count;
    }
    bulletin.c = parse_range(take_kv("c"), q);
    if (bulletin.c == 0) throw FormatError("bulletin: zero recursion constant");
    bulletin.tail0 = parse_range(take_kv("tail0"), q);
    bulletin.tail1 = parse_range(take_kv("tail1"), q);
    count += 3;

    long declared = parse_long(take_kv("count"));
    if (declared != count)
        throw FormatError("bulletin: integrity count mismatch: file says " +
                          std::to_string(declared) + ", counted " +
                          std::to_string(count));
    if (count != bulletin.public_item_count())
        throw FormatError("bulletin: item count disagrees with structure");
    if (pos != lines.size())
        throw FormatError("bulletin: trailing content");
    return bulletin;
}

std::string serialize_dealer_state(const DealerState& state) {
    std::ostringstream out;
    out << "# xtrss dealer state (private)\nformat=1\n";
    out << "variant=" << static_cast<int>(state.variant) << "\n";
    out << "k=" << state.k << "\n";
    out << "q=" << state.q.get_str() << "\n";
    out << "b=" << state.b.get_str() << "\n";
    out << "c=" << state.c.get_str() << "\n";
    out << "next_slot=" << state.next_slot << "\n";
    out << "next_mask_seq=" << state.next_mask_seq << "\n";
    out << "terms=";
    for (std::size_t i = 0; i < state.terms.size(); ++i)
        out << (i ? "," : "") << state.terms[i].get_str();
    out << "\n";
    out << "secrets=";
    for (std::size_t i = 0; i < state.secrets.size(); ++i)
        out << (i ? " " : "") << state.secrets[i].first << ":"
            << state.secrets[i].second.get_str();
    out << "\n";
    return out.str();
}

DealerState parse_dealer_state(const std::string& text) {
    std::map<std::string, std::string> kv;
    for (const auto& line : split_lines(text)) kv.insert(split_kv(line));
    for (const char* key : {"variant", "k", "q", "b", "c", "next_slot",
                            "next_mask_seq", "terms", "secrets"})
        if (!kv.count(key))
            throw FormatError(std::string("dealer state: missing ") + key);

    DealerState state;
    long variant = parse_long(kv["variant"]);
    if (variant != 1 && variant != 2)
        throw FormatError("dealer state: variant must be 1 or 2");
    state.variant = variant == 1 ? Scheme::One : Scheme::Two;
    state.k = static_cast<int>(parse_long(kv["k"]));
    state.q = parse_mpz(kv["q"]);
    state.b = parse_mpz(kv["b"]);
    state.c = parse_range(kv["c"], state.q);
    state.next_slot = static_cast<int>(parse_long(kv["next_slot"]));
    state.next_mask_seq = parse_long(kv["next_mask_seq"]);
    std::istringstream terms(kv["terms"]);
    std::string piece;
    while (std::getline(terms, piece, ','))
        state.terms.push_back(parse_range(piece, state.q));
    if (static_cast<long>(state.terms.size()) < state.k)
        throw FormatError("dealer state: too few sequence terms");
    std::istringstream secrets(kv["secrets"]);
    while (secrets >> piece) {
        auto colon = piece.find(':');
        if (colon == std::string::npos)
            throw FormatError("dealer state: bad secret entry");
        state.secrets.emplace_back(
            static_cast<int>(parse_long(piece.substr(0, colon))),
            parse_range(piece.substr(colon + 1), state.q));
    }
    return state;
}

std::string serialize_share(const RecoveryShare& share) {
    std::ostringstream out;
    out << "# xtrss recovery share\nformat=1\n";
    out << "id=" << share.id << "\n";
    out << "index=" << share.index << "\n";
    out << "u=" << share.u.get_str() << "\n";
    return out.str();
}

RecoveryShare parse_share(const std::string& text) {
    std::map<std::string, std::string> kv;
    for (const auto& line : split_lines(text)) kv.insert(split_kv(line));
    for (const char* key : {"id", "index", "u"})
        if (!kv.count(key))
            throw FormatError(std::string("share: missing ") + key);
    RecoveryShare share;
    share.id = kv["id"];
    share.index = parse_long(kv["index"]);
    share.u = parse_mpz(kv["u"]);
    if (share.u < 0) throw FormatError("share: negative subshadow");
    return share;
}

} // namespace xtrss
