#include "pid/ingest.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

namespace pid::ingest {

std::size_t BinSpec::bin_of(double value) const {
    std::size_t i = 0;
    while (i < cuts.size() && value >= cuts[i]) ++i;
    return i;
}

void BinSpec::validate() const {
    if (cuts.empty()) throw MalformedFile("bin spec needs at least one cut");
    for (std::size_t i = 1; i < cuts.size(); ++i)
        if (!(cuts[i] > cuts[i - 1]))
            throw MalformedFile("bin cuts must be strictly increasing");
    if (labels.size() != cuts.size() + 1)
        throw MalformedFile("bin spec needs one label per interval");
    for (std::size_t i = 0; i < labels.size(); ++i)
        for (std::size_t j = i + 1; j < labels.size(); ++j)
            if (labels[i] == labels[j]) throw MalformedFile("bin labels must be distinct");
}

BinSpec BinSpec::with_default_labels(std::vector<double> cuts) {
    auto num = [](double v) {
        std::ostringstream os;
        os << v;
        return os.str();
    };
    BinSpec spec;
    spec.cuts = std::move(cuts);
    spec.labels.push_back("<" + num(spec.cuts.front()));
    for (std::size_t i = 0; i + 1 < spec.cuts.size(); ++i)
        spec.labels.push_back(num(spec.cuts[i]) + "-" + num(spec.cuts[i + 1]));
    spec.labels.push_back(">=" + num(spec.cuts.back()));
    spec.validate();
    return spec;
}

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

bool is_missing(const std::string& cell) { return cell.empty() || cell == "?"; }

std::vector<std::string> split(const std::string& line, char delim) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream is(line);
    while (std::getline(is, field, delim)) out.push_back(trim(field));
    if (!line.empty() && line.back() == delim) out.emplace_back();
    return out;
}

// Locale-independent numeric parse of a full token.
bool parse_double(const std::string& s, double& out) {
    if (s.empty()) return false;
    const char* first = s.data();
    const char* last = s.data() + s.size();
    if (*first == '+') ++first;  // from_chars rejects a leading plus
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc{} && ptr == last;
}

std::size_t resolve_column(const std::vector<std::string>& header_fields,
                           const std::string& name, bool has_header) {
    if (has_header) {
        for (std::size_t i = 0; i < header_fields.size(); ++i)
            if (header_fields[i] == name) return i;
        throw UnknownColumn("column '" + name + "' not found in header");
    }
    double idx;
    if (!parse_double(name, idx) || idx < 0 || idx != std::floor(idx))
        throw UnknownColumn("headerless input needs a 0-based column index, got '" + name + "'");
    return static_cast<std::size_t>(idx);
}

// Categorical values get indices in first-appearance order; binned values
// are mapped through the fixed bin labels.
struct ColumnReader {
    const ColumnSpec* spec;
    std::size_t index = 0;
    std::vector<std::string> seen;                // categorical labels in order
    std::map<std::string, std::size_t> seen_idx;

    // Returns the symbol index, or npos if the row must be dropped.
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);
    std::size_t consume(const std::vector<std::string>& fields) {
        if (index >= fields.size()) return npos;  // short row = missing cell
        const std::string& cell = fields[index];
        if (is_missing(cell)) return npos;
        if (spec->bins) {
            double v;
            if (!parse_double(cell, v))
                throw UnparseableNumeric("cannot parse '" + cell + "' in binned column '" +
                                         spec->name + "'");
            return spec->bins->bin_of(v);
        }
        auto it = seen_idx.find(cell);
        if (it != seen_idx.end()) return it->second;
        std::size_t id = seen.size();
        seen.push_back(cell);
        seen_idx.emplace(cell, id);
        return id;
    }

    Alphabet alphabet() const {
        if (spec->bins) return Alphabet(spec->bins->labels);
        return Alphabet(seen);
    }
    std::size_t current_size() const {
        return spec->bins ? spec->bins->labels.size() : seen.size();
    }
};

}  // namespace

IngestReport load_joint_from_table(const std::string& path, const DatasetConfig& config) {
    if (config.s_column.name == config.y_column.name ||
        config.s_column.name == config.z_column.name ||
        config.y_column.name == config.z_column.name)
        throw UnknownColumn("the three columns must be distinct");
    if (config.s_column.bins) config.s_column.bins->validate();
    if (config.y_column.bins) config.y_column.bins->validate();
    if (config.z_column.bins) config.z_column.bins->validate();

    std::ifstream in(path);
    if (!in) throw MalformedFile("cannot open '" + path + "'");

    std::string line;
    std::vector<std::string> header_fields;
    if (config.header) {
        if (!std::getline(in, line)) throw EmptyAfterFiltering("'" + path + "' is empty");
        header_fields = split(line, config.delimiter);
    }

    ColumnReader rs{&config.s_column}, ry{&config.y_column}, rz{&config.z_column};
    rs.index = resolve_column(header_fields, config.s_column.name, config.header);
    ry.index = resolve_column(header_fields, config.y_column.name, config.header);
    rz.index = resolve_column(header_fields, config.z_column.name, config.header);

    IngestReport report;
    std::vector<std::array<std::size_t, 3>> triples;
    while (std::getline(in, line)) {
        if (trim(line).empty()) continue;
        ++report.rows_total;
        auto fields = split(line, config.delimiter);
        std::size_t is = rs.consume(fields);
        std::size_t iy = ry.consume(fields);
        std::size_t iz = rz.consume(fields);
        if (is == ColumnReader::npos || iy == ColumnReader::npos || iz == ColumnReader::npos) {
            ++report.rows_dropped;
            continue;
        }
        triples.push_back({is, iy, iz});
    }
    report.rows_kept = triples.size();
    if (triples.empty()) throw EmptyAfterFiltering("no usable rows in '" + path + "'");

    if (config.alpha < 0.0) throw MalformedFile("additive smoothing must be nonnegative");
    std::size_t ns = rs.current_size(), ny = ry.current_size(), nz = rz.current_size();
    std::vector<double> counts(ns * ny * nz, config.alpha);
    for (const auto& t : triples) counts[(t[0] * ny + t[1]) * nz + t[2]] += 1.0;
    double total = static_cast<double>(triples.size()) + config.alpha * double(counts.size());
    for (double& c : counts) c /= total;

    report.joint =
        JointDistribution(rs.alphabet(), ry.alphabet(), rz.alphabet(), std::move(counts));
    return report;
}

namespace {

void require_token_label(const std::string& label) {
    if (label.empty()) throw MalformedFile("empty label cannot be serialized");
    for (char c : label)
        if (std::isspace(static_cast<unsigned char>(c)) || std::iscntrl(static_cast<unsigned char>(c)))
            throw MalformedFile("label '" + label + "' contains whitespace; not serializable");
}

void write_alphabet(std::ostream& out, const char* var, const Alphabet& a) {
    out << "alphabet " << var;
    for (const auto& l : a.labels()) {
        require_token_label(l);
        out << ' ' << l;
    }
    out << '\n';
}

}  // namespace

void write_joint(const JointDistribution& joint, std::ostream& out) {
    out << "pid-joint v1\n";
    write_alphabet(out, "S", joint.alphabet_s());
    write_alphabet(out, "Y", joint.alphabet_y());
    write_alphabet(out, "Z", joint.alphabet_z());
    char buf[64];
    for (std::size_t s = 0; s < joint.ns(); ++s)
        for (std::size_t y = 0; y < joint.ny(); ++y)
            for (std::size_t z = 0; z < joint.nz(); ++z) {
                double v = joint.at(s, y, z);
                if (v == 0.0) continue;
                std::snprintf(buf, sizeof buf, "%.17g", v);
                out << "p " << joint.alphabet_s().label(s) << ' ' << joint.alphabet_y().label(y)
                    << ' ' << joint.alphabet_z().label(z) << ' ' << buf << '\n';
            }
}

void save_joint(const JointDistribution& joint, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw MalformedFile("cannot open '" + path + "' for writing");
    write_joint(joint, out);
    if (!out) throw MalformedFile("write to '" + path + "' failed");
}

JointDistribution read_joint(std::istream& in, const std::string& origin) {
    auto fail = [&origin](std::size_t lineno, const std::string& why) {
        std::ostringstream msg;
        msg << origin << ":" << lineno << ": " << why;
        throw MalformedFile(msg.str());
    };

    std::string line;
    std::size_t lineno = 0;
    if (!std::getline(in, line)) fail(1, "empty file");
    ++lineno;
    if (trim(line) != "pid-joint v1") fail(lineno, "expected header 'pid-joint v1'");

    std::map<std::string, Alphabet> alphabets;
    struct Cell {
        std::string s, y, z;
        double p;
        std::size_t lineno;
    };
    std::vector<Cell> cells;
    while (std::getline(in, line)) {
        ++lineno;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        std::istringstream is(t);
        std::string kind;
        is >> kind;
        if (kind == "alphabet") {
            std::string var;
            is >> var;
            if (var != "S" && var != "Y" && var != "Z") fail(lineno, "unknown variable '" + var + "'");
            std::vector<std::string> labels;
            std::string l;
            while (is >> l) labels.push_back(l);
            if (labels.empty()) fail(lineno, "alphabet line has no labels");
            if (alphabets.count(var)) fail(lineno, "duplicate alphabet for " + var);
            alphabets.emplace(var, Alphabet(std::move(labels)));
        } else if (kind == "p") {
            Cell c;
            std::string ptoken;
            if (!(is >> c.s >> c.y >> c.z >> ptoken)) fail(lineno, "malformed cell line");
            if (!parse_double(ptoken, c.p)) fail(lineno, "malformed probability '" + ptoken + "'");
            if (c.p < 0.0) fail(lineno, "negative probability");
            c.lineno = lineno;
            cells.push_back(std::move(c));
        } else {
            fail(lineno, "unknown line kind '" + kind + "'");
        }
    }
    for (const char* var : {"S", "Y", "Z"})
        if (!alphabets.count(var)) fail(lineno, std::string("missing alphabet for ") + var);

    const Alphabet &as = alphabets.at("S"), &ay = alphabets.at("Y"), &az = alphabets.at("Z");
    std::vector<double> pmf(as.size() * ay.size() * az.size(), 0.0);
    for (const auto& c : cells) {
        long s = as.index_of(c.s), y = ay.index_of(c.y), z = az.index_of(c.z);
        if (s < 0) fail(c.lineno, "unknown S label '" + c.s + "'");
        if (y < 0) fail(c.lineno, "unknown Y label '" + c.y + "'");
        if (z < 0) fail(c.lineno, "unknown Z label '" + c.z + "'");
        pmf[(static_cast<std::size_t>(s) * ay.size() + static_cast<std::size_t>(y)) * az.size() +
            static_cast<std::size_t>(z)] = c.p;
    }
    try {
        return JointDistribution(as, ay, az, std::move(pmf));
    } catch (const Error& e) {
        throw MalformedFile(origin + ": " + e.what());
    }
}

JointDistribution load_joint(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw MalformedFile("cannot open '" + path + "'");
    return read_joint(in, path);
}

}  // namespace pid::ingest
