#pragma once

#include <cctype>
#include <cmath>
#include <cstdio>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "qss/errors.hpp"
#include "qss/scheme.hpp"

namespace qss {

namespace detail {

inline std::vector<std::string> split_string(const std::string& s, char delim) {
    std::vector<std::string> parts;
    std::string cur;
    for (char c : s) {
        if (c == delim) {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    parts.push_back(cur);
    return parts;
}

inline int parse_int_strict(const std::string& s, const char* what) {
    if (s.empty()) throw Error(std::string(what) + ": empty integer");
    std::size_t pos = 0;
    int value = 0;
    try {
        value = std::stoi(s, &pos);
    } catch (const std::exception&) {
        throw Error(std::string(what) + ": bad integer '" + s + "'");
    }
    if (pos != s.size()) throw Error(std::string(what) + ": bad integer '" + s + "'");
    return value;
}

inline std::vector<int> parse_int_list(const std::string& s, const char* what) {
    if (s == "-") return {};
    std::vector<int> out;
    for (const std::string& part : split_string(s, ','))
        out.push_back(parse_int_strict(part, what));
    return out;
}

inline double parse_double_strict(const std::string& s, const char* what) {
    if (s.empty()) throw Error(std::string(what) + ": empty number");
    std::size_t pos = 0;
    double value = 0.0;
    try {
        value = std::stod(s, &pos);
    } catch (const std::exception&) {
        throw Error(std::string(what) + ": bad number '" + s + "'");
    }
    if (pos != s.size()) throw Error(std::string(what) + ": bad number '" + s + "'");
    return value;
}

inline std::string render_int_list(const std::vector<int>& v) {
    if (v.empty()) return "-";
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i > 0) out += ',';
        out += std::to_string(v[i]);
    }
    return out;
}

inline void validate_bundle_label(const std::string& label) {
    if (label.empty()) throw Error("bundle label must be nonempty");
    for (char c : label)
        if (c == ':' || c == ';' || c == ',' || std::isspace(static_cast<unsigned char>(c)))
            throw Error("bundle label '" + label + "' has a reserved character");
}

inline std::string render_bundles(const std::vector<Bundle>& bundles) {
    std::string out;
    for (std::size_t i = 0; i < bundles.size(); ++i) {
        validate_bundle_label(bundles[i].label);
        if (i > 0) out += ';';
        out += bundles[i].label + ':' + render_int_list(bundles[i].coords);
    }
    return out;
}

inline std::vector<Bundle> parse_bundles(const std::string& s) {
    std::vector<Bundle> bundles;
    for (const std::string& part : split_string(s, ';')) {
        const auto pieces = split_string(part, ':');
        if (pieces.size() != 2) throw Error("bundle entry '" + part + "' is not label:coords");
        validate_bundle_label(pieces[0]);
        bundles.push_back(Bundle{pieces[0], parse_int_list(pieces[1], "bundle coordinates")});
    }
    return bundles;
}

// %.17g round-trips doubles exactly; negative zero is written as plain zero.
inline std::string render_double(double v) {
    if (v == 0.0) v = 0.0;
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return std::string(buf);
}

struct KeyValueBlock {
    std::map<std::string, std::string> fields;

    const std::string& need(const std::string& key, const char* what) const {
        const auto it = fields.find(key);
        if (it == fields.end())
            throw Error(std::string(what) + ": missing field '" + key + "'");
        return it->second;
    }
};

inline void take_field(KeyValueBlock& block, const std::string& line, const char* what) {
    const auto eq = line.find('=');
    if (eq == std::string::npos || eq == 0)
        throw Error(std::string(what) + ": bad line '" + line + "'");
    const std::string key = line.substr(0, eq);
    if (block.fields.count(key))
        throw Error(std::string(what) + ": duplicate field '" + key + "'");
    block.fields[key] = line.substr(eq + 1);
}

}  // namespace detail

inline void write_scheme(std::ostream& out, const SchemeSpec& spec) {
    out << "QSS1-SCHEME\n";
    out << "k=" << spec.k << '\n';
    out << "n=" << spec.n << '\n';
    out << "q=" << spec.params.q.q << '\n';
    out << "s=" << spec.params.s << '\n';
    out << "points=" << detail::render_int_list(spec.params.points) << '\n';
    out << "discarded=" << detail::render_int_list(spec.discarded) << '\n';
    out << "bundles=" << detail::render_bundles(spec.bundles) << '\n';
}

inline SchemeSpec read_scheme(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line != "QSS1-SCHEME")
        throw Error("scheme file: missing QSS1-SCHEME header");
    detail::KeyValueBlock block;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        detail::take_field(block, line, "scheme file");
    }
    for (const auto& kv : block.fields)
        if (kv.first != "k" && kv.first != "n" && kv.first != "q" && kv.first != "s" &&
            kv.first != "points" && kv.first != "discarded" && kv.first != "bundles")
            throw Error("scheme file: unknown field '" + kv.first + "'");
    const int k = detail::parse_int_strict(block.need("k", "scheme file"), "scheme file k");
    const int n = detail::parse_int_strict(block.need("n", "scheme file"), "scheme file n");
    const int q = detail::parse_int_strict(block.need("q", "scheme file"), "scheme file q");
    const int s = detail::parse_int_strict(block.need("s", "scheme file"), "scheme file s");
    const std::vector<int> points =
        detail::parse_int_list(block.need("points", "scheme file"), "scheme file points");
    const std::vector<int> discarded =
        detail::parse_int_list(block.need("discarded", "scheme file"), "scheme file discarded");
    const std::vector<Bundle> bundles = detail::parse_bundles(block.need("bundles", "scheme file"));
    const CodeParams params(k, static_cast<int>(points.size()), Prime(q), s, points);
    return SchemeSpec(k, n, params, discarded, bundles);
}

inline void write_state(std::ostream& out, const SharedState& shared) {
    if (shared.reference_count() != 0)
        throw Error("state file cannot hold reference registers");
    out << "QSS1\n";
    out << "q=" << shared.spec.params.q.q << '\n';
    out << "dims=" << detail::render_int_list(shared.global.system.dims) << '\n';
    out << "discarded=" << detail::render_int_list(shared.spec.discarded) << '\n';
    out << "bundles=" << detail::render_bundles(shared.spec.bundles) << '\n';
    for (Index idx = 0; idx < shared.global.system.dimension(); ++idx) {
        const complexd amp = shared.global.amps[static_cast<std::size_t>(idx)];
        if (std::abs(amp) < 1e-15) continue;
        out << "amp " << idx << ' ' << detail::render_double(amp.real()) << ' '
            << detail::render_double(amp.imag()) << '\n';
    }
}

inline SharedState read_state(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line != "QSS1")
        throw Error("state file: missing QSS1 header");
    detail::KeyValueBlock block;
    std::vector<std::string> amp_lines;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line.rfind("amp ", 0) == 0)
            amp_lines.push_back(line.substr(4));
        else if (!amp_lines.empty())
            throw Error("state file: field after amplitude lines");
        else
            detail::take_field(block, line, "state file");
    }
    for (const auto& kv : block.fields)
        if (kv.first != "q" && kv.first != "dims" && kv.first != "discarded" &&
            kv.first != "bundles")
            throw Error("state file: unknown field '" + kv.first + "'");
    const int q = detail::parse_int_strict(block.need("q", "state file"), "state file q");
    const std::vector<int> dims =
        detail::parse_int_list(block.need("dims", "state file"), "state file dims");
    const std::vector<int> discarded =
        detail::parse_int_list(block.need("discarded", "state file"), "state file discarded");
    const std::vector<Bundle> bundles = detail::parse_bundles(block.need("bundles", "state file"));
    if (dims.empty()) throw Error("state file: empty dims");
    for (int d : dims)
        if (d != q) throw Error("state file: register dimensions must all equal q");
    const int m = static_cast<int>(dims.size());
    if (m % 2 == 0) throw Error("state file: register count must be odd (m = 2k-1)");
    const int k = (m + 1) / 2;
    std::vector<int> points(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) points[static_cast<std::size_t>(i)] = i;
    const CodeParams params(k, m, Prime(q), q, points);
    const int n = m - static_cast<int>(discarded.size());
    const SchemeSpec spec(k, n, params, discarded, bundles);

    RegisterSystem sys(dims);
    std::vector<complexd> amps(static_cast<std::size_t>(sys.dimension()), complexd(0.0, 0.0));
    std::vector<bool> seen(static_cast<std::size_t>(sys.dimension()), false);
    if (amp_lines.empty()) throw Error("state file: no amplitude lines");
    for (const std::string& rest : amp_lines) {
        const auto parts = detail::split_string(rest, ' ');
        if (parts.size() != 3) throw Error("state file: bad amplitude line 'amp " + rest + "'");
        const long long idx =
            detail::parse_int_strict(parts[0], "state file amplitude index");
        if (idx < 0 || idx >= sys.dimension())
            throw Error("state file: amplitude index " + parts[0] + " out of range");
        if (seen[static_cast<std::size_t>(idx)])
            throw Error("state file: duplicate amplitude index " + parts[0]);
        seen[static_cast<std::size_t>(idx)] = true;
        amps[static_cast<std::size_t>(idx)] =
            complexd(detail::parse_double_strict(parts[1], "state file amplitude"),
                     detail::parse_double_strict(parts[2], "state file amplitude"));
    }
    double norm_sq = 0.0;
    for (const complexd& a : amps) norm_sq += std::norm(a);
    if (std::abs(norm_sq - 1.0) > 1e-9)
        throw Error("state file: amplitudes are not normalized");
    return SharedState{PureState::normalized(sys, std::move(amps)), spec, std::nullopt};
}

}  // namespace qss
