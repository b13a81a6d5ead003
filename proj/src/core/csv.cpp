#include "core/csv.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "core/errors.hpp"

namespace aucgibbs {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

}  // namespace

ScoreData parse_scores_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || trim(line) != "score,group")
        throw std::invalid_argument("csv: expected header line \"score,group\"");

    std::vector<double> u, v;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string row = trim(line);
        if (row.empty()) continue;
        const auto comma = row.find(',');
        if (comma == std::string::npos)
            throw std::invalid_argument("csv: line " + std::to_string(lineno) +
                                        ": expected \"score,group\"");
        const std::string score_s = trim(row.substr(0, comma));
        const std::string group_s = trim(row.substr(comma + 1));
        double score;
        try {
            std::size_t pos = 0;
            score = std::stod(score_s, &pos);
            if (pos != score_s.size()) throw std::invalid_argument("trailing junk");
        } catch (const std::exception&) {
            throw std::invalid_argument("csv: line " + std::to_string(lineno) +
                                        ": unparseable score \"" + score_s + "\"");
        }
        if (!std::isfinite(score))
            throw std::invalid_argument("csv: line " + std::to_string(lineno) +
                                        ": score must be finite");
        if (group_s == "1")
            u.push_back(score);
        else if (group_s == "0")
            v.push_back(score);
        else
            throw std::invalid_argument("csv: line " + std::to_string(lineno) +
                                        ": group must be 0 or 1, got \"" + group_s + "\"");
    }
    if (u.size() < 2 || v.size() < 2)
        throw std::invalid_argument("csv: need at least 2 rows in each group (got " +
                                    std::to_string(u.size()) + " in group 1, " +
                                    std::to_string(v.size()) + " in group 0)");
    return ScoreData(std::move(u), std::move(v));
}

ScoreData read_scores_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("csv: cannot open \"" + path + "\"");
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return parse_scores_csv(buf.str());
    } catch (const std::invalid_argument& e) {
        throw std::invalid_argument(std::string(e.what()) + " [" + path + "]");
    }
}

std::string canonical_scores_csv(const ScoreData& data) {
    std::string out = "score,group\n";
    char buf[64];
    for (double x : data.u) {
        std::snprintf(buf, sizeof buf, "%.17g,1\n", x);
        out += buf;
    }
    for (double x : data.v) {
        std::snprintf(buf, sizeof buf, "%.17g,0\n", x);
        out += buf;
    }
    return out;
}

void write_scores_csv(const std::string& path, const ScoreData& data) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("csv: cannot write \"" + path + "\"");
    out << canonical_scores_csv(data);
    if (!out) throw IoError("csv: write failed for \"" + path + "\"");
}

}  // namespace aucgibbs
