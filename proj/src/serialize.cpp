#include "qexpand/serialize.hpp"

#include "qexpand/errors.hpp"

#include <json.hpp>

#include <cerrno>
#include <cstdlib>
#include <map>
#include <utility>

namespace qexpand {
namespace {

using ojson = nlohmann::ordered_json;

[[noreturn]] void bad(const std::string& what) {
    throw std::invalid_argument("malformed serialized value: " + what);
}

ojson parse_or_throw(const std::string& text) {
    ojson j = ojson::parse(text, nullptr, /*allow_exceptions=*/false);
    if (j.is_discarded())
        bad("not valid JSON");
    return j;
}

const ojson& field(const ojson& j, const char* name) {
    if (!j.is_object())
        bad("expected an object with field \"" + std::string(name) + '"');
    auto it = j.find(name);
    if (it == j.end())
        bad("missing field \"" + std::string(name) + '"');
    return *it;
}

long get_long(const ojson& j, const char* name) {
    const ojson& f = field(j, name);
    if (!f.is_number_integer())
        bad("field \"" + std::string(name) + "\" must be an integer");
    return f.get<long>();
}

std::string get_string(const ojson& j, const char* name) {
    const ojson& f = field(j, name);
    if (!f.is_string())
        bad("field \"" + std::string(name) + "\" must be a string");
    return f.get<std::string>();
}

bool get_bool(const ojson& j, const char* name) {
    const ojson& f = field(j, name);
    if (!f.is_boolean())
        bad("field \"" + std::string(name) + "\" must be a boolean");
    return f.get<bool>();
}

Int int_from_value(const ojson& v) {
    if (!v.is_string())
        bad("big integers must be decimal strings");
    auto parsed = int_from_string(v.get<std::string>());
    if (!parsed)
        bad("bad integer literal \"" + v.get<std::string>() + '"');
    return *parsed;
}

Rat rat_from_value(const ojson& v) {
    if (!v.is_string())
        bad("rationals must be decimal strings");
    auto parsed = rat_from_string(v.get<std::string>());
    if (!parsed)
        bad("bad rational literal \"" + v.get<std::string>() + '"');
    return *parsed;
}

long parse_long_key(const std::string& s) {
    errno = 0;
    char* end = nullptr;
    long v = std::strtol(s.c_str(), &end, 10);
    if (end == s.c_str() || *end != '\0' || errno == ERANGE)
        bad("bad integer key \"" + s + '"');
    return v;
}

FamilyId family_from(const std::string& s) {
    auto fid = FamilyId::parse(s);
    if (!fid)
        bad("unknown family id \"" + s + '"');
    return *fid;
}

// --- value encoders -------------------------------------------------------

ojson qlaurent_to(const QLaurent& p) {
    ojson coeffs = ojson::array();
    for (const Int& c : p.coeffs())
        coeffs.push_back(int_to_string(c));
    ojson out;
    out["offset"] = p.offset();
    out["coeffs"] = std::move(coeffs);
    return out;
}

QLaurent qlaurent_from(const ojson& j) {
    long offset = get_long(j, "offset");
    const ojson& coeffs = field(j, "coeffs");
    if (!coeffs.is_array())
        bad("field \"coeffs\" must be an array");
    std::vector<Int> c;
    c.reserve(coeffs.size());
    for (const ojson& v : coeffs)
        c.push_back(int_from_value(v));
    return QLaurent::from_coeffs(offset, std::move(c));
}

ojson jrange_to(const JRange& r) {
    ojson out;
    out["lo"] = r.lo;
    out["hi"] = r.hi;
    return out;
}

JRange jrange_from(const ojson& j) {
    return JRange{get_long(j, "lo"), get_long(j, "hi")};
}

// --- coefficient tables ----------------------------------------------------

template <typename V, typename Enc>
ojson table_to(const CoeffTable<V>& t, Enc enc) {
    ojson entries = ojson::object();
    for (long j = t.range.lo; j <= t.range.hi; ++j)
        entries[std::to_string(j)] = enc(t.at(j));
    ojson out;
    out["family"] = t.family.str();
    out["k"] = t.k;
    out["r"] = t.r;
    out["provenance"] = t.provenance;
    out["entries"] = std::move(entries);
    return out;
}

template <typename V, typename Dec>
CoeffTable<V> table_from(const ojson& j, Dec dec) {
    CoeffTable<V> t;
    t.family = family_from(get_string(j, "family"));
    t.k = get_long(j, "k");
    t.r = get_long(j, "r");
    t.provenance = get_string(j, "provenance");
    const ojson& entries = field(j, "entries");
    if (!entries.is_object())
        bad("field \"entries\" must be an object");
    std::map<long, V> byj;
    for (auto it = entries.begin(); it != entries.end(); ++it) {
        long jj = parse_long_key(it.key());
        if (!byj.emplace(jj, dec(it.value())).second)
            bad("duplicate entry key " + it.key());
    }
    if (byj.empty()) {
        t.range = JRange{0, -1};
        return t;
    }
    t.range = JRange{byj.begin()->first, byj.rbegin()->first};
    if (static_cast<long>(byj.size()) != t.range.hi - t.range.lo + 1)
        bad("entries must cover a contiguous j window");
    t.values.reserve(byj.size());
    for (auto& [jj, v] : byj)
        t.values.push_back(std::move(v));
    return t;
}

const auto enc_int = [](const Int& v) { return ojson(int_to_string(v)); };
const auto enc_rat = [](const Rat& v) { return ojson(rat_to_string(v)); };

// --- reports ----------------------------------------------------------------

std::string params_flat(const std::map<std::string, long>& params) {
    std::string out;
    for (const auto& [name, value] : params) {
        if (!out.empty())
            out += ' ';
        out += name + "=" + std::to_string(value);
    }
    return out;
}

ojson report_to(const ProofReport& rep) {
    ojson params = ojson::object();
    for (const auto& [name, value] : rep.params)
        params[name] = value;
    ojson out;
    out["statement"] = rep.statement;
    out["family"] = rep.family.str();
    out["params"] = std::move(params);
    out["status"] = to_string(rep.status);
    out["degree_bound"] = rep.degree_bound_used;
    out["points_checked"] = rep.points_checked;
    if (rep.counterexample)
        out["counterexample"] = *rep.counterexample;
    return out;
}

ProofStatus status_from(const std::string& s) {
    if (s == "proved")
        return ProofStatus::proved;
    if (s == "falsified")
        return ProofStatus::falsified;
    if (s == "checked-only")
        return ProofStatus::checked_only;
    bad("unknown status \"" + s + '"');
}

ProofReport report_from(const ojson& j) {
    ProofReport rep;
    rep.statement = get_string(j, "statement");
    rep.family = family_from(get_string(j, "family"));
    const ojson& params = field(j, "params");
    if (!params.is_object())
        bad("field \"params\" must be an object");
    for (auto it = params.begin(); it != params.end(); ++it) {
        if (!it.value().is_number_integer())
            bad("param \"" + it.key() + "\" must be an integer");
        rep.params[it.key()] = it.value().get<long>();
    }
    rep.status = status_from(get_string(j, "status"));
    rep.degree_bound_used = get_long(j, "degree_bound");
    rep.points_checked = get_long(j, "points_checked");
    if (auto it = j.find("counterexample"); it != j.end()) {
        if (!it->is_string())
            bad("field \"counterexample\" must be a string");
        rep.counterexample = it->get<std::string>();
    }
    return rep;
}

// --- discovery data ----------------------------------------------------------

ojson discovered_to(const DiscoveredS& row) {
    ojson values = ojson::object();
    for (const auto& [j, v] : row.values)
        values[std::to_string(j)] = rat_to_string(v);
    ojson out;
    out["family"] = row.family_tag;
    out["k"] = row.k;
    out["i"] = row.i;
    out["support"] = jrange_to(row.support);
    out["values"] = std::move(values);
    out["integral"] = row.integral;
    out["margin"] = row.consistency_margin;
    return out;
}

DiscoveredS discovered_from(const ojson& j) {
    DiscoveredS row;
    row.family_tag = get_string(j, "family");
    row.k = get_long(j, "k");
    row.i = get_long(j, "i");
    row.support = jrange_from(field(j, "support"));
    const ojson& values = field(j, "values");
    if (!values.is_object())
        bad("field \"values\" must be an object");
    for (auto it = values.begin(); it != values.end(); ++it)
        row.values[parse_long_key(it.key())] = rat_from_value(it.value());
    row.integral = get_bool(j, "integral");
    row.consistency_margin = get_long(j, "margin");
    return row;
}

ojson candidate_to(const RecurrenceCandidate& c) {
    ojson coeffs = ojson::array();
    for (const auto& poly : c.coefficients) {
        ojson p = ojson::array();
        for (const Int& v : poly)
            p.push_back(int_to_string(v));
        coeffs.push_back(std::move(p));
    }
    ojson out;
    out["order"] = c.order;
    out["coeff_degree"] = c.coeff_degree;
    out["coefficients"] = std::move(coeffs);
    out["fit_window"] = jrange_to(c.fit_window);
    out["verify_window"] = jrange_to(c.verify_window);
    out["display"] = c.str(); // derived convenience; ignored on parse
    return out;
}

RecurrenceCandidate candidate_from(const ojson& j) {
    RecurrenceCandidate c;
    c.order = get_long(j, "order");
    c.coeff_degree = get_long(j, "coeff_degree");
    const ojson& coeffs = field(j, "coefficients");
    if (!coeffs.is_array())
        bad("field \"coefficients\" must be an array of arrays");
    for (const ojson& poly : coeffs) {
        if (!poly.is_array())
            bad("field \"coefficients\" must be an array of arrays");
        std::vector<Int> p;
        p.reserve(poly.size());
        for (const ojson& v : poly)
            p.push_back(int_from_value(v));
        c.coefficients.push_back(std::move(p));
    }
    c.fit_window = jrange_from(field(j, "fit_window"));
    c.verify_window = jrange_from(field(j, "verify_window"));
    return c;
}

const char* axis_name(SliceAxis a) {
    switch (a) {
    case SliceAxis::k: return "k";
    case SliceAxis::j: return "j";
    case SliceAxis::i: return "i";
    }
    throw arithmetic_bug("unhandled slice axis");
}

SliceAxis axis_from(const std::string& s) {
    if (s == "k")
        return SliceAxis::k;
    if (s == "j")
        return SliceAxis::j;
    if (s == "i")
        return SliceAxis::i;
    bad("unknown slice axis \"" + s + '"');
}

ojson probe_to(const ProbeReport& rep) {
    ojson slice;
    slice["axis"] = axis_name(rep.slice.axis);
    slice["j_offset"] = rep.slice.j_offset;
    slice["k"] = rep.slice.k;
    slice["j"] = rep.slice.j;
    slice["i"] = rep.slice.i;
    ojson values = ojson::array();
    for (const Rat& v : rep.slice_values)
        values.push_back(rat_to_string(v));
    ojson out;
    out["d"] = rep.d;
    out["slice"] = std::move(slice);
    out["length"] = rep.length;
    out["degenerate"] = rep.degenerate;
    out["slice_values"] = std::move(values);
    out["candidate"] = rep.candidate ? candidate_to(*rep.candidate) : ojson(nullptr);
    return out;
}

ProbeReport probe_from(const ojson& j) {
    ProbeReport rep;
    rep.d = get_long(j, "d");
    const ojson& slice = field(j, "slice");
    rep.slice.axis = axis_from(get_string(slice, "axis"));
    rep.slice.j_offset = get_long(slice, "j_offset");
    rep.slice.k = get_long(slice, "k");
    rep.slice.j = get_long(slice, "j");
    rep.slice.i = get_long(slice, "i");
    rep.length = get_long(j, "length");
    rep.degenerate = get_bool(j, "degenerate");
    const ojson& values = field(j, "slice_values");
    if (!values.is_array())
        bad("field \"slice_values\" must be an array");
    for (const ojson& v : values)
        rep.slice_values.push_back(rat_from_value(v));
    const ojson& cand = field(j, "candidate");
    if (!cand.is_null())
        rep.candidate = candidate_from(cand);
    return rep;
}

std::string dump(const ojson& j) {
    return j.dump(2);
}

// --- CSV helpers -------------------------------------------------------------

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos)
        return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"')
            out += "\"\"";
        else
            out += ch;
    }
    out += '"';
    return out;
}

std::string qlaurent_pairs(const QLaurent& p) {
    if (p.is_zero())
        return "";
    std::string out;
    for (long e = p.lo(); e <= p.hi(); ++e) {
        Int c = p.coeff(e);
        if (c == 0)
            continue;
        if (!out.empty())
            out += ' ';
        out += std::to_string(e) + ":" + int_to_string(c);
    }
    return out;
}

template <typename V, typename Fmt>
std::string table_csv(const CoeffTable<V>& t, Fmt fmt) {
    std::string out = "j,value\n";
    for (long j = t.range.lo; j <= t.range.hi; ++j)
        out += std::to_string(j) + "," + csv_escape(fmt(t.at(j))) + "\n";
    return out;
}

constexpr const char* kReportHeader =
    "statement,family,params,status,degree_bound,points_checked,counterexample\n";

std::string report_row(const ProofReport& rep) {
    return csv_escape(rep.statement) + "," + csv_escape(rep.family.str()) + "," +
           csv_escape(params_flat(rep.params)) + "," + to_string(rep.status) + "," +
           std::to_string(rep.degree_bound_used) + "," + std::to_string(rep.points_checked) +
           "," + csv_escape(rep.counterexample.value_or("")) + "\n";
}

// --- plain helpers -------------------------------------------------------------

template <typename V, typename Fmt>
std::string table_plain(const CoeffTable<V>& t, Fmt fmt) {
    std::string out = "coefficient table " + t.family.str() + "  k=" + std::to_string(t.k) +
                      " r=" + std::to_string(t.r) + "  [" + t.provenance + "]\n";
    if (t.range.hi < t.range.lo)
        return out + "  (empty)\n";
    for (long j = t.range.lo; j <= t.range.hi; ++j)
        out += "  j=" + std::to_string(j) + ": " + fmt(t.at(j)) + "\n";
    return out;
}

std::string slice_description(const SliceSpec& s) {
    switch (s.axis) {
    case SliceAxis::k: {
        std::string off = s.j_offset == 0 ? std::string("m")
                                          : "m" + std::string(s.j_offset < 0 ? "" : "+") +
                                                std::to_string(s.j_offset);
        return "S(m, " + off + ", " + std::to_string(s.i) + ") in m";
    }
    case SliceAxis::j:
        return "S(" + std::to_string(s.k) + ", m, " + std::to_string(s.i) + ") in m";
    case SliceAxis::i:
        return "S(" + std::to_string(s.k) + ", " + std::to_string(s.j) + ", m) in m";
    }
    throw arithmetic_bug("unhandled slice axis");
}

} // namespace

// --- format names ---------------------------------------------------------------

std::optional<OutputFormat> parse_format(std::string_view s) {
    if (s == "json")
        return OutputFormat::json;
    if (s == "csv")
        return OutputFormat::csv;
    if (s == "plain")
        return OutputFormat::plain;
    return std::nullopt;
}

std::string to_string(OutputFormat f) {
    switch (f) {
    case OutputFormat::json: return "json";
    case OutputFormat::csv: return "csv";
    case OutputFormat::plain: return "plain";
    }
    throw arithmetic_bug("unhandled output format");
}

// --- JSON ------------------------------------------------------------------------

std::string to_json(const QLaurent& p) { return dump(qlaurent_to(p)); }
std::string to_json(const IntTable& t) { return dump(table_to(t, enc_int)); }
std::string to_json(const RatTable& t) { return dump(table_to(t, enc_rat)); }
std::string to_json(const QTable& t) {
    return dump(table_to(t, [](const QLaurent& v) { return qlaurent_to(v); }));
}

std::string to_json(const SchmidtRow& row) {
    ojson values = ojson::array();
    for (const Rat& v : row.values)
        values.push_back(rat_to_string(v));
    ojson ni = ojson::array();
    for (long k : row.non_integral)
        ni.push_back(k);
    ojson out;
    out["r"] = row.r;
    out["values"] = std::move(values);
    out["non_integral"] = std::move(ni);
    return dump(out);
}

std::string to_json(const ProofReport& rep) { return dump(report_to(rep)); }

std::string to_json(const std::vector<ProofReport>& reps) {
    ojson out = ojson::array();
    for (const ProofReport& rep : reps)
        out.push_back(report_to(rep));
    return dump(out);
}

std::string to_json(const DiscoveredS& row) { return dump(discovered_to(row)); }

std::string to_json(const std::vector<DiscoveredS>& rows) {
    ojson out = ojson::array();
    for (const DiscoveredS& row : rows)
        out.push_back(discovered_to(row));
    return dump(out);
}

std::string to_json(const RecurrenceCandidate& cand) { return dump(candidate_to(cand)); }
std::string to_json(const ProbeReport& rep) { return dump(probe_to(rep)); }

QLaurent qlaurent_from_json(const std::string& text) {
    return qlaurent_from(parse_or_throw(text));
}

IntTable int_table_from_json(const std::string& text) {
    return table_from<Int>(parse_or_throw(text), int_from_value);
}

RatTable rat_table_from_json(const std::string& text) {
    return table_from<Rat>(parse_or_throw(text), rat_from_value);
}

QTable q_table_from_json(const std::string& text) {
    return table_from<QLaurent>(parse_or_throw(text), [](const ojson& v) {
        return qlaurent_from(v);
    });
}

SchmidtRow schmidt_row_from_json(const std::string& text) {
    ojson j = parse_or_throw(text);
    SchmidtRow row;
    row.r = get_long(j, "r");
    const ojson& values = field(j, "values");
    if (!values.is_array())
        bad("field \"values\" must be an array");
    for (const ojson& v : values)
        row.values.push_back(rat_from_value(v));
    const ojson& ni = field(j, "non_integral");
    if (!ni.is_array())
        bad("field \"non_integral\" must be an array");
    for (const ojson& v : ni) {
        if (!v.is_number_integer())
            bad("field \"non_integral\" must hold integers");
        row.non_integral.push_back(v.get<long>());
    }
    return row;
}

ProofReport proof_report_from_json(const std::string& text) {
    return report_from(parse_or_throw(text));
}

std::vector<ProofReport> proof_reports_from_json(const std::string& text) {
    ojson j = parse_or_throw(text);
    if (!j.is_array())
        bad("expected an array of reports");
    std::vector<ProofReport> reps;
    reps.reserve(j.size());
    for (const ojson& item : j)
        reps.push_back(report_from(item));
    return reps;
}

DiscoveredS discovered_s_from_json(const std::string& text) {
    return discovered_from(parse_or_throw(text));
}

std::vector<DiscoveredS> discovered_s_list_from_json(const std::string& text) {
    ojson j = parse_or_throw(text);
    if (!j.is_array())
        bad("expected an array of discovered rows");
    std::vector<DiscoveredS> rows;
    rows.reserve(j.size());
    for (const ojson& item : j)
        rows.push_back(discovered_from(item));
    return rows;
}

RecurrenceCandidate recurrence_from_json(const std::string& text) {
    return candidate_from(parse_or_throw(text));
}

ProbeReport probe_report_from_json(const std::string& text) {
    return probe_from(parse_or_throw(text));
}

// --- CSV ----------------------------------------------------------------------

std::string to_csv(const IntTable& t) {
    return table_csv(t, [](const Int& v) { return int_to_string(v); });
}

std::string to_csv(const RatTable& t) {
    return table_csv(t, [](const Rat& v) { return rat_to_string(v); });
}

std::string to_csv(const QTable& t) {
    return table_csv(t, qlaurent_pairs);
}

std::string to_csv(const SchmidtRow& row) {
    std::string out = "k,value\n";
    for (size_t k = 0; k < row.values.size(); ++k)
        out += std::to_string(k) + "," + csv_escape(rat_to_string(row.values[k])) + "\n";
    return out;
}

std::string to_csv(const ProofReport& rep) {
    return std::string(kReportHeader) + report_row(rep);
}

std::string to_csv(const std::vector<ProofReport>& reps) {
    std::string out = kReportHeader;
    for (const ProofReport& rep : reps)
        out += report_row(rep);
    return out;
}

std::string to_csv(const DiscoveredS& row) {
    std::string out = "j,value\n";
    for (const auto& [j, v] : row.values)
        out += std::to_string(j) + "," + csv_escape(rat_to_string(v)) + "\n";
    return out;
}

std::string to_csv(const std::vector<DiscoveredS>& rows) {
    std::string out = "k,i,j,value\n";
    for (const DiscoveredS& row : rows)
        for (const auto& [j, v] : row.values)
            out += std::to_string(row.k) + "," + std::to_string(row.i) + "," +
                   std::to_string(j) + "," + csv_escape(rat_to_string(v)) + "\n";
    return out;
}

std::string to_csv(const RecurrenceCandidate& cand) {
    std::string out = "l,e,coefficient\n";
    for (size_t l = 0; l < cand.coefficients.size(); ++l)
        for (size_t e = 0; e < cand.coefficients[l].size(); ++e)
            out += std::to_string(l) + "," + std::to_string(e) + "," +
                   csv_escape(int_to_string(cand.coefficients[l][e])) + "\n";
    return out;
}

// --- plain --------------------------------------------------------------------

std::string to_plain(const IntTable& t) {
    return table_plain(t, [](const Int& v) { return int_to_string(v); });
}

std::string to_plain(const RatTable& t) {
    return table_plain(t, [](const Rat& v) { return rat_to_string(v); });
}

std::string to_plain(const QTable& t) {
    return table_plain(t, [](const QLaurent& v) { return v.str(); });
}

std::string to_plain(const SchmidtRow& row) {
    long nmax = static_cast<long>(row.values.size()) - 1;
    std::string out = "Schmidt numbers c^(" + std::to_string(row.r) + ")_k, k = 0.." +
                      std::to_string(nmax) + "\n";
    for (long k = 0; k <= nmax; ++k)
        out += "  k=" + std::to_string(k) + ": " +
               rat_to_string(row.values[static_cast<size_t>(k)]) + "\n";
    if (row.all_integral()) {
        out += "  all entries integral\n";
    } else {
        out += "  non-integral at k =";
        for (long k : row.non_integral)
            out += " " + std::to_string(k);
        out += "\n";
    }
    return out;
}

std::string to_plain(const ProofReport& rep) {
    std::string out = "[" + to_string(rep.status) + "] " + rep.statement + "  " +
                      rep.family.str();
    std::string p = params_flat(rep.params);
    if (!p.empty())
        out += "  " + p;
    out += "  (degree bound " + std::to_string(rep.degree_bound_used) + ", points " +
           std::to_string(rep.points_checked) + ")\n";
    if (rep.counterexample)
        out += "  counterexample: " + *rep.counterexample + "\n";
    return out;
}

std::string to_plain(const std::vector<ProofReport>& reps) {
    std::string out;
    long proved = 0, falsified = 0, checked = 0;
    for (const ProofReport& rep : reps) {
        out += to_plain(rep);
        switch (rep.status) {
        case ProofStatus::proved: ++proved; break;
        case ProofStatus::falsified: ++falsified; break;
        case ProofStatus::checked_only: ++checked; break;
        }
    }
    out += "summary: " + std::to_string(reps.size()) + " reports | " +
           std::to_string(proved) + " proved | " + std::to_string(falsified) +
           " falsified | " + std::to_string(checked) + " checked-only\n";
    return out;
}

std::string to_plain(const DiscoveredS& row) {
    std::string out = "discovered S row [" + row.family_tag + "]  k=" + std::to_string(row.k) +
                      " i=" + std::to_string(row.i);
    if (row.support.hi < row.support.lo)
        out += "  support (empty)";
    else
        out += "  support [" + std::to_string(row.support.lo) + ", " +
               std::to_string(row.support.hi) + "]";
    out += "  margin " + std::to_string(row.consistency_margin) +
           (row.integral ? "  integral" : "  NON-INTEGRAL");
    out += "\n";
    for (const auto& [j, v] : row.values)
        out += "  j=" + std::to_string(j) + ": " + rat_to_string(v) + "\n";
    return out;
}

std::string to_plain(const std::vector<DiscoveredS>& rows) {
    std::string out;
    for (const DiscoveredS& row : rows)
        out += to_plain(row);
    return out;
}

std::string to_plain(const RecurrenceCandidate& cand) {
    return "recurrence candidate: order " + std::to_string(cand.order) +
           ", coefficient degree " + std::to_string(cand.coeff_degree) + "\n  " + cand.str() +
           "\n  fitted on m in [" + std::to_string(cand.fit_window.lo) + ", " +
           std::to_string(cand.fit_window.hi) + "]; verified on held-out m in [" +
           std::to_string(cand.verify_window.lo) + ", " +
           std::to_string(cand.verify_window.hi) + "]\n";
}

std::string to_plain(const ProbeReport& rep) {
    std::string out = "holonomic probe  d=" + std::to_string(rep.d) + "  slice " +
                      slice_description(rep.slice) + "  length " + std::to_string(rep.length) +
                      "\n";
    std::string values;
    for (const Rat& v : rep.slice_values) {
        if (!values.empty())
            values += ", ";
        values += rat_to_string(v);
    }
    out += "  values: " + values + "\n";
    if (rep.degenerate)
        out += "  degenerate: the slice is identically zero\n";
    else if (rep.candidate)
        out += "  candidate: " + rep.candidate->str() + "\n";
    else
        out += "  no recurrence found within the search bounds\n";
    return out;
}

} // namespace qexpand
