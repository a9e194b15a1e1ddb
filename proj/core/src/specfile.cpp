#include "crystalline/specfile.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace crystalline {

namespace {

struct LineParser {
    const std::string& s;
    int line;
    std::size_t pos = 0;

    [[noreturn]] void fail(const std::string& expected) const {
        throw ParseError(line, (int)pos + 1, expected);
    }
    void skip_ws() {
        while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t')) ++pos;
    }
    bool eat(char c) {
        skip_ws();
        if (pos < s.size() && s[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }
    void expect(char c) {
        if (!eat(c)) fail(std::string("'") + c + "'");
    }
    bool done() {
        skip_ws();
        return pos == s.size();
    }
    BigInt integer() {
        skip_ws();
        std::size_t start = pos;
        if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) ++pos;
        std::size_t digits = pos;
        while (pos < s.size() && std::isdigit((unsigned char)s[pos])) ++pos;
        if (pos == digits) {
            pos = start;
            fail("integer");
        }
        return BigInt(s.substr(start, pos - start));
    }
    std::string word() {
        skip_ws();
        std::size_t start = pos;
        while (pos < s.size() && (std::isalnum((unsigned char)s[pos]) || s[pos] == '-' ||
                                  s[pos] == '_'))
            ++pos;
        if (pos == start) fail("identifier");
        return s.substr(start, pos - start);
    }

    // a+b*T sums of integer terms and T terms
    RElem relem(const RingSpec& R) {
        RElem acc(0);
        bool first = true;
        for (;;) {
            skip_ws();
            int sign = 1;
            if (eat('+')) {
                sign = 1;
            } else if (eat('-')) {
                sign = -1;
            } else if (!first) {
                break;
            }
            skip_ws();
            if (pos < s.size() && s[pos] == 'T') {
                ++pos;
                acc = radd(acc, RElem(0, sign));
            } else {
                BigInt c = integer() * sign;
                skip_ws();
                if (pos < s.size() && s[pos] == '*') {
                    ++pos;
                    skip_ws();
                    if (pos >= s.size() || s[pos] != 'T') fail("'T'");
                    ++pos;
                    acc = radd(acc, RElem(0, c));
                } else {
                    acc = radd(acc, RElem(c));
                }
            }
            first = false;
        }
        if (first) fail("ring literal");
        if (R.kind == RingKind::Integers && acc.b != 0) fail("integer literal (base ring is Z)");
        return acc;
    }

    KElem kelem(const RingSpec& R) {
        skip_ws();
        if (eat('(')) {
            RElem num = relem(R);
            expect(')');
            expect('/');
            BigInt den = integer();
            if (den <= 0) fail("positive denominator");
            return knormalize({num, den});
        }
        // sum of terms, each optionally /q and *T
        KElem acc = kfrom_int(0);
        bool first = true;
        for (;;) {
            skip_ws();
            int sign = 1;
            if (eat('+')) {
                sign = 1;
            } else if (eat('-')) {
                sign = -1;
            } else if (!first) {
                break;
            }
            skip_ws();
            BigInt num = 1;
            bool is_t = false;
            if (pos < s.size() && s[pos] == 'T') {
                ++pos;
                is_t = true;
            } else {
                num = integer();
            }
            BigInt den = 1;
            if (!is_t) {
                skip_ws();
                if (pos < s.size() && s[pos] == '/') {
                    ++pos;
                    den = integer();
                    if (den <= 0) fail("positive denominator");
                }
                skip_ws();
                if (pos < s.size() && s[pos] == '*') {
                    ++pos;
                    skip_ws();
                    if (pos >= s.size() || s[pos] != 'T') fail("'T'");
                    ++pos;
                    is_t = true;
                }
            }
            KElem term{is_t ? RElem(0, num * sign) : RElem(num * sign), den};
            acc = kadd(acc, knormalize(term));
            first = false;
        }
        if (first) fail("field literal");
        if (R.kind == RingKind::Integers && acc.num.b != 0) fail("rational literal (base ring is Z)");
        return acc;
    }
};

std::vector<std::string> split_commas(const std::string& s) {
    std::vector<std::string> out;
    int depth = 0;
    std::string cur;
    for (char c : s) {
        if (c == '(') ++depth;
        if (c == ')') --depth;
        if (c == ',' && depth == 0) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

struct RawLine {
    int number;
    std::string key, value;   // key = value
    std::string section;      // set for section headers
    std::string section_arg;  // trailing name in "[lattice NAME]"
};

}  // namespace

SpecFile parse_spec(const std::string& text) {
    std::vector<RawLine> lines;
    {
        std::istringstream in(text);
        std::string raw;
        int number = 0;
        while (std::getline(in, raw)) {
            ++number;
            std::string s = raw;
            auto hash = s.find('#');
            if (hash != std::string::npos) s = s.substr(0, hash);
            auto notspace = [](unsigned char c) { return !std::isspace(c); };
            auto b = std::find_if(s.begin(), s.end(), notspace);
            auto e = std::find_if(s.rbegin(), s.rend(), notspace).base();
            if (b >= e) continue;
            s = std::string(b, e);
            RawLine l;
            l.number = number;
            if (s.front() == '[') {
                if (s.back() != ']') throw ParseError(number, (int)s.size(), "']'");
                std::string body = s.substr(1, s.size() - 2);
                auto sp = body.find(' ');
                l.section = body.substr(0, sp);
                if (sp != std::string::npos) {
                    l.section_arg = body.substr(sp + 1);
                    auto b2 = l.section_arg.find_first_not_of(' ');
                    l.section_arg = b2 == std::string::npos ? "" : l.section_arg.substr(b2);
                }
                if (l.section.empty()) throw ParseError(number, 2, "section name");
            } else {
                auto eq = s.find('=');
                if (eq == std::string::npos) throw ParseError(number, (int)s.size(), "'='");
                auto trim = [](std::string t) {
                    auto b2 = t.find_first_not_of(" \t");
                    auto e2 = t.find_last_not_of(" \t");
                    return b2 == std::string::npos ? "" : t.substr(b2, e2 - b2 + 1);
                };
                l.key = trim(s.substr(0, eq));
                l.value = trim(s.substr(eq + 1));
                if (l.key.empty()) throw ParseError(number, 1, "key");
            }
            lines.push_back(std::move(l));
        }
        if (lines.empty()) throw ParseError(1, 1, "a [ring] section");
    }

    SpecFile out;
    bool saw_ring = false, saw_group = false, saw_action = false, saw_alpha = false;
    bool kind_set = false;
    int d = 0;
    bool d_set = false;
    int group_n = -1;
    std::vector<std::vector<int>> group_rows;
    std::vector<std::string> alpha_rows_text;
    std::vector<int> alpha_rows_line;
    std::string action_text;
    int action_line = 0;

    std::string cur_section;
    std::string cur_name;
    std::vector<std::pair<int, std::string>> cur_gens;  // line, text
    std::string cur_comps;
    int cur_comps_line = 0;

    std::vector<std::tuple<std::string, std::vector<std::pair<int, std::string>>>> lattice_raw;
    std::vector<std::tuple<std::string, int, std::string>> graded_raw;

    auto flush_section = [&]() {
        if (cur_section == "lattice") {
            if (cur_gens.empty())
                throw ParseError(1, 1, "at least one gen line in [lattice " + cur_name + "]");
            lattice_raw.emplace_back(cur_name, cur_gens);
        } else if (cur_section == "graded") {
            if (cur_comps.empty())
                throw ParseError(1, 1, "a comps line in [graded " + cur_name + "]");
            graded_raw.emplace_back(cur_name, cur_comps_line, cur_comps);
        }
        cur_gens.clear();
        cur_comps.clear();
    };

    for (const RawLine& l : lines) {
        if (!l.section.empty()) {
            flush_section();
            cur_section = l.section;
            cur_name = l.section_arg;
            if (cur_section == "ring") saw_ring = true;
            else if (cur_section == "group") saw_group = true;
            else if (cur_section == "action") saw_action = true;
            else if (cur_section == "alpha") saw_alpha = true;
            else if (cur_section == "lattice" || cur_section == "graded") {
                if (cur_name.empty()) throw ParseError(l.number, 2, "a section name");
            } else {
                throw ParseError(l.number, 2, "one of ring/group/action/alpha/lattice/graded");
            }
            continue;
        }
        if (cur_section == "ring") {
            if (l.key == "kind") {
                if (l.value == "rational-integers") out.ring = RingSpec::integers();
                else if (l.value == "quadratic") out.ring.kind = RingKind::Quadratic;
                else throw ParseError(l.number, 1, "rational-integers or quadratic");
                kind_set = true;
            } else if (l.key == "d") {
                LineParser p{l.value, l.number};
                d = (int)p.integer().convert_to<long>();
                if (!p.done()) p.fail("end of line");
                d_set = true;
            } else {
                throw ParseError(l.number, 1, "kind or d");
            }
        } else if (cur_section == "group") {
            if (l.key == "n") {
                LineParser p{l.value, l.number};
                group_n = (int)p.integer().convert_to<long>();
                if (!p.done()) p.fail("end of line");
                if (group_n < 1 || group_n > 16) throw ParseError(l.number, 1, "1 <= n <= 16");
            } else if (l.key == "row") {
                std::vector<int> row;
                for (const std::string& cell : split_commas(l.value)) {
                    LineParser p{cell, l.number};
                    row.push_back((int)p.integer().convert_to<long>());
                    if (!p.done()) p.fail("end of entry");
                }
                group_rows.push_back(std::move(row));
            } else {
                throw ParseError(l.number, 1, "n or row");
            }
        } else if (cur_section == "action") {
            if (l.key != "map") throw ParseError(l.number, 1, "map");
            action_text = l.value;
            action_line = l.number;
        } else if (cur_section == "alpha") {
            if (l.key != "row") throw ParseError(l.number, 1, "row");
            alpha_rows_text.push_back(l.value);
            alpha_rows_line.push_back(l.number);
        } else if (cur_section == "lattice") {
            if (l.key != "gen") throw ParseError(l.number, 1, "gen");
            cur_gens.emplace_back(l.number, l.value);
        } else if (cur_section == "graded") {
            if (l.key != "comps") throw ParseError(l.number, 1, "comps");
            cur_comps = l.value;
            cur_comps_line = l.number;
        } else {
            throw ParseError(l.number, 1, "a section header");
        }
    }
    flush_section();

    if (!saw_ring || !kind_set) throw ParseError(1, 1, "a [ring] section with kind");
    if (out.ring.kind == RingKind::Quadratic) {
        if (!d_set) throw ParseError(1, 1, "d for a quadratic ring");
        out.ring = RingSpec::quadratic(d);
    }
    if (!saw_group || group_n < 0) throw ParseError(1, 1, "a [group] section with n");
    if ((int)group_rows.size() != group_n) throw ParseError(1, 1, "n group rows");
    for (const auto& row : group_rows)
        if ((int)row.size() != group_n) throw ParseError(1, 1, "n entries per group row");
    out.group.n = group_n;
    out.group.mul = group_rows;
    if (!saw_action) throw ParseError(1, 1, "an [action] section");
    {
        std::vector<std::string> cells = split_commas(action_text);
        if ((int)cells.size() != group_n) throw ParseError(action_line, 1, "n action entries");
        for (const std::string& cell : cells) {
            auto b = cell.find_first_not_of(" \t");
            auto e = cell.find_last_not_of(" \t");
            std::string w = b == std::string::npos ? "" : cell.substr(b, e - b + 1);
            if (w == "id") out.action.push_back({false});
            else if (w == "conj") out.action.push_back({true});
            else throw ParseError(action_line, 1, "id or conj");
        }
    }
    if (!saw_alpha || (int)alpha_rows_text.size() != group_n)
        throw ParseError(1, 1, "an [alpha] section with n rows");
    for (std::size_t i = 0; i < alpha_rows_text.size(); ++i) {
        std::vector<std::string> cells = split_commas(alpha_rows_text[i]);
        if ((int)cells.size() != group_n)
            throw ParseError(alpha_rows_line[i], 1, "n alpha entries");
        RRow row;
        for (const std::string& cell : cells) {
            LineParser p{cell, alpha_rows_line[i]};
            row.push_back(p.relem(out.ring));
            if (!p.done()) p.fail("end of entry");
        }
        out.alpha.push_back(std::move(row));
    }
    for (const auto& [name, gens] : lattice_raw) {
        std::vector<KRow> rows;
        for (const auto& [line, textrow] : gens) {
            std::vector<std::string> cells = split_commas(textrow);
            if ((int)cells.size() != group_n) throw ParseError(line, 1, "n coefficients");
            KRow row;
            for (const std::string& cell : cells) {
                LineParser p{cell, line};
                row.push_back(p.kelem(out.ring));
                if (!p.done()) p.fail("end of entry");
            }
            rows.push_back(std::move(row));
        }
        out.lattices.emplace_back(name, std::move(rows));
    }
    for (const auto& [name, line, text] : graded_raw) {
        std::vector<std::string> cells = split_commas(text);
        if ((int)cells.size() != group_n) throw ParseError(line, 1, "n components");
        KRow row;
        for (const std::string& cell : cells) {
            LineParser p{cell, line};
            row.push_back(p.kelem(out.ring));
            if (!p.done()) p.fail("end of entry");
        }
        out.graded.emplace_back(name, std::move(row));
    }
    return out;
}

ParsedSpec instantiate_spec(const SpecFile& file) {
    ParsedSpec out;
    out.file = file;
    out.ring = make_crystal_ring(file.ring, file.group, file.action, file.alpha);
    for (const auto& [name, rows] : file.lattices) {
        std::vector<AElement> gens;
        for (const KRow& row : rows) gens.push_back(elem_from_coeffs(out.ring, row));
        out.lattices.emplace_back(name, lattice_from_generators(out.ring, gens));
    }
    for (const auto& [name, row] : file.graded) {
        std::vector<FracIdeal> comps;
        for (const KElem& c : row) {
            if (c.is_zero()) throw ZeroIdealError("graded section with a zero component");
            comps.push_back(make_frac_ideal(file.ring, c));
        }
        out.graded.emplace_back(name, make_graded(out.ring, std::move(comps)));
    }
    return out;
}

const FullLattice& ParsedSpec::lattice(const std::string& name) const {
    for (const auto& [n, l] : lattices)
        if (n == name) return l;
    throw Error("E_NO_SUCH_LATTICE", "no lattice named '" + name + "' in the ring file");
}

const GradedLattice& ParsedSpec::graded_lattice(const std::string& name) const {
    for (const auto& [n, g] : graded)
        if (n == name) return g;
    throw Error("E_NO_SUCH_LATTICE", "no graded lattice named '" + name + "' in the ring file");
}

std::string print_spec(const SpecFile& file) {
    std::ostringstream os;
    os << "[ring]\n";
    os << "kind = " << (file.ring.kind == RingKind::Quadratic ? "quadratic" : "rational-integers")
       << "\n";
    if (file.ring.kind == RingKind::Quadratic) os << "d = " << file.ring.d << "\n";
    os << "\n[group]\n";
    os << "n = " << file.group.n << "\n";
    for (const auto& row : file.group.mul) {
        os << "row = ";
        for (std::size_t j = 0; j < row.size(); ++j) os << (j ? ", " : "") << row[j];
        os << "\n";
    }
    os << "\n[action]\n";
    os << "map = ";
    for (std::size_t g = 0; g < file.action.size(); ++g)
        os << (g ? ", " : "") << (file.action[g].conjugates ? "conj" : "id");
    os << "\n";
    os << "\n[alpha]\n";
    for (const auto& row : file.alpha) {
        os << "row = ";
        for (std::size_t j = 0; j < row.size(); ++j)
            os << (j ? ", " : "") << relem_to_string(file.ring, row[j]);
        os << "\n";
    }
    for (const auto& [name, rows] : file.lattices) {
        os << "\n[lattice " << name << "]\n";
        for (const KRow& row : rows) {
            os << "gen = ";
            for (std::size_t j = 0; j < row.size(); ++j)
                os << (j ? ", " : "") << kelem_to_string(file.ring, row[j]);
            os << "\n";
        }
    }
    for (const auto& [name, row] : file.graded) {
        os << "\n[graded " << name << "]\n";
        os << "comps = ";
        for (std::size_t j = 0; j < row.size(); ++j)
            os << (j ? ", " : "") << kelem_to_string(file.ring, row[j]);
        os << "\n";
    }
    return os.str();
}

KElem parse_kelem(const RingSpec& R, const std::string& text) {
    LineParser p{text, 1};
    KElem k = p.kelem(R);
    if (!p.done()) p.fail("end of literal");
    return k;
}

}  // namespace crystalline
