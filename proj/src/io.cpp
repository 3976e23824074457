#include "evgeom/io.hpp"

#include <fstream>
#include <json.hpp>
#include <set>
#include <sstream>

namespace evgeom {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

u64 parse_u64(const std::string& s) {
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
        throw io_error("expected a non-negative integer, got '" + s + "'");
    try {
        return std::stoull(s);
    } catch (const std::out_of_range&) {
        throw io_error("integer out of range: '" + s + "'");
    }
}

void write_entry(std::ostream& os, const Gf& gf, std::uint8_t value) {
    std::uint32_t v = value;
    for (std::uint32_t i = 0; i < gf.e(); ++i) {
        if (i) os << ',';
        os << v % gf.p();
        v /= gf.p();
    }
}

std::uint8_t parse_entry(const Gf& gf, const std::string& s) {
    auto digits = split(s, ',');
    if (digits.size() != gf.e()) throw io_error("coordinate has wrong number of GF(p) coefficients");
    u64 packed = 0;
    for (std::size_t i = digits.size(); i-- > 0;) {
        u64 d = parse_u64(digits[i]);
        if (d >= gf.p()) throw io_error("GF(p) coefficient out of range");
        packed = packed * gf.p() + d;
    }
    return static_cast<std::uint8_t>(packed);
}

void write_row(std::ostream& os, const Gf& gf, const std::vector<std::uint8_t>& row) {
    for (std::size_t i = 0; i < row.size(); ++i) {
        if (i) os << ';';
        write_entry(os, gf, row[i]);
    }
    os << '\n';
}

std::vector<std::uint8_t> parse_row(const Gf& gf, const std::string& line, std::size_t expect) {
    auto entries = split(line, ';');
    if (entries.size() != expect) throw io_error("row has wrong number of coordinates");
    std::vector<std::uint8_t> out;
    out.reserve(expect);
    for (const auto& e : entries) out.push_back(parse_entry(gf, e));
    return out;
}

std::string next_line(std::istream& is, const char* what) {
    std::string line;
    if (!std::getline(is, line)) throw io_error(std::string("unexpected end of file, expected ") + what);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return line;
}

}  // namespace

void write_pointset(std::ostream& os, const PointSet& set) {
    const Gf& gf = set.gf();
    os << set.q << ',' << gf.p() << ',' << gf.e() << ',' << set.ambient_dim << ',' << set.label << ','
       << set.size() << '\n';
    for (const auto& p : set.points) write_row(os, gf, p.coords);
    if (!set.group_generators.empty()) {
        os << "GROUP " << set.group_generators.size() << '\n';
        for (const auto& g : set.group_generators) {
            for (int r = 0; r < g.rows; ++r) {
                std::vector<std::uint8_t> row(g.data.begin() + (std::size_t)r * g.cols,
                                              g.data.begin() + (std::size_t)(r + 1) * g.cols);
                write_row(os, gf, row);
            }
        }
    }
}

PointSet read_pointset(std::istream& is) {
    auto header = split(next_line(is, "header"), ',');
    if (header.size() < 6) throw io_error("point set header needs q,p,m,ambient_dim,label,count");
    PointSet set;
    set.q = static_cast<std::uint32_t>(parse_u64(header[0]));
    u64 p = parse_u64(header[1]);
    u64 m = parse_u64(header[2]);
    set.ambient_dim = static_cast<int>(parse_u64(header[3]));
    u64 count = parse_u64(header.back());
    // The label may itself contain commas; rejoin the middle fields.
    std::string label;
    for (std::size_t i = 4; i + 1 < header.size(); ++i) {
        if (i > 4) label += ',';
        label += header[i];
    }
    set.label = label;

    const Gf& gf = Gf::of(set.q);  // throws for non-prime-powers
    if (gf.p() != p || gf.e() != m) throw io_error("header p,m do not match q");
    if (set.ambient_dim < 0 || set.ambient_dim + 1 > kMaxWidth)
        throw io_error("unsupported ambient dimension");

    std::set<std::vector<std::uint8_t>> seen;
    for (u64 i = 0; i < count; ++i) {
        auto row = parse_row(gf, next_line(is, "point"), set.ambient_dim + 1);
        ProjectivePoint pt{row};
        bool zero = true;
        for (auto c : row) zero &= (c == 0);
        if (zero) throw io_error("zero vector is not a projective point");
        if (normalize(gf, row) != pt) throw io_error("point is not in normalized form");
        if (!seen.insert(pt.coords).second) throw io_error("duplicate point in file");
        set.points.push_back(std::move(pt));
    }

    std::string line;
    if (std::getline(is, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!line.empty()) {
            std::istringstream hs(line);
            std::string tag;
            u64 g = 0;
            hs >> tag >> g;
            if (tag != "GROUP") throw io_error("unexpected trailing content: " + line);
            const int n1 = set.ambient_dim + 1;
            for (u64 k = 0; k < g; ++k) {
                GfMatrix mgen;
                mgen.rows = mgen.cols = n1;
                mgen.data.assign((std::size_t)n1 * n1, 0);
                for (int r = 0; r < n1; ++r) {
                    auto row = parse_row(gf, next_line(is, "generator row"), n1);
                    for (int c = 0; c < n1; ++c) mgen.at(r, c) = row[c];
                }
                if (!is_invertible(gf, mgen)) throw io_error("group generator is singular");
                for (const auto& pt : set.points) {
                    if (!seen.count(normalize(gf, apply(gf, mgen, pt.coords)).coords))
                        throw io_error("group generator does not map the point set onto itself");
                }
                set.group_generators.push_back(std::move(mgen));
            }
        }
    }
    return set;
}

void write_pointset_file(const std::string& path, const PointSet& set) {
    std::ofstream os(path);
    if (!os) throw io_error("cannot open for writing: " + path);
    write_pointset(os, set);
    if (!os) throw io_error("write failed: " + path);
}

PointSet read_pointset_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw io_error("cannot open for reading: " + path);
    return read_pointset(is);
}

void write_check_matrix(std::ostream& os, const CheckMatrix& m) {
    const Gf& gf = Gf::of(m.q);
    os << m.q << ',' << m.rows << ',' << m.cols << '\n';
    for (int r = 0; r < m.rows; ++r) {
        std::vector<std::uint8_t> row(m.data.begin() + (std::size_t)r * m.cols,
                                      m.data.begin() + (std::size_t)(r + 1) * m.cols);
        write_row(os, gf, row);
    }
}

CheckMatrix read_check_matrix(std::istream& is) {
    auto header = split(next_line(is, "header"), ',');
    if (header.size() != 3) throw io_error("check matrix header needs q,rows,cols");
    CheckMatrix m;
    m.q = static_cast<std::uint32_t>(parse_u64(header[0]));
    m.rows = static_cast<int>(parse_u64(header[1]));
    m.cols = static_cast<int>(parse_u64(header[2]));
    const Gf& gf = Gf::of(m.q);
    if (m.rows <= 0 || m.cols <= 0) throw io_error("degenerate matrix shape");
    m.data.assign((std::size_t)m.rows * m.cols, 0);
    for (int r = 0; r < m.rows; ++r) {
        auto row = parse_row(gf, next_line(is, "matrix row"), m.cols);
        for (int c = 0; c < m.cols; ++c) m.at(r, c) = row[c];
    }
    return m;
}

void write_check_matrix_file(const std::string& path, const CheckMatrix& m) {
    std::ofstream os(path);
    if (!os) throw io_error("cannot open for writing: " + path);
    write_check_matrix(os, m);
}

CheckMatrix read_check_matrix_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw io_error("cannot open for reading: " + path);
    return read_check_matrix(is);
}

std::string report_to_json(const VerificationReport& rep) {
    nlohmann::json j;
    j["check"] = rep.check;
    j["passed"] = rep.passed;
    nlohmann::json w = nlohmann::json::array();
    for (const auto& p : rep.witness) {
        nlohmann::json row = nlohmann::json::array();
        for (auto c : p.coords) row.push_back((int)c);
        w.push_back(row);
    }
    j["witness"] = w;
    j["witness_role"] = rep.witness_role;
    nlohmann::json counts = nlohmann::json::object();
    for (const auto& [k, v] : rep.counts) counts[k] = v;
    j["counts"] = counts;
    j["work"] = rep.work;
    j["reduction"] = reduction_name(rep.reduction);
    j["elapsed_ms"] = rep.elapsed_ms;
    return j.dump();
}

}  // namespace evgeom
