#include "qdt/io.hpp"

#include <charconv>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "qdt/errors.hpp"

namespace qdt {

namespace {

std::ofstream open_out(const std::string& path) {
    std::ofstream f(path, std::ios::binary); // binary keeps LF endings everywhere
    if (!f) throw IoError("cannot open for writing: " + path);
    return f;
}

void finish_out(std::ofstream& f, const std::string& path) {
    f.flush();
    if (!f) throw IoError("write failed: " + path);
}

std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            out.push_back(line.substr(start));
            return out;
        }
        out.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
}

template <typename T>
T parse_number(std::string_view field, std::size_t line_no, const char* what) {
    T value{};
    const char* first = field.data();
    const char* last = field.data() + field.size();
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last)
        throw CsvParseError(line_no, std::string("bad ") + what + " field '" +
                                         std::string(field) + "'");
    return value;
}

const char* state_name(CatState s) { return s == CatState::Phi1_Alive ? "alive" : "dead"; }
const char* action_name(Action a) { return a == Action::A1_BelieveAlive ? "alive" : "dead"; }

} // namespace

void write_history_csv(const std::string& path, const CatHistory& h) {
    std::ofstream f = open_out(path);
    f << "k,decayed,x,v\n";
    char buf[96];
    for (const auto& rec : h.records) {
        std::snprintf(buf, sizeof buf, "%" PRIu64 ",%d,%" PRId64 ",%.17g\n", rec.k,
                      rec.state == CatState::Phi2_Dead ? 1 : 0, rec.x, rec.v);
        f << buf;
    }
    finish_out(f, path);
}

CatHistory read_history_csv(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open for reading: " + path);

    std::string line;
    std::size_t line_no = 1;
    if (!std::getline(f, line)) throw CsvParseError(1, "missing header");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "k,decayed,x,v")
        throw CsvParseError(1, "expected header 'k,decayed,x,v', got '" + line + "'");

    std::vector<bool> decays;
    std::int64_t x_prev = 0;
    while (std::getline(f, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue; // tolerate a trailing blank line
        const auto fields = split_fields(line);
        if (fields.size() != 4)
            throw CsvParseError(line_no, "expected 4 fields, got " + std::to_string(fields.size()));
        const auto k = parse_number<std::uint64_t>(fields[0], line_no, "k");
        const auto decayed = parse_number<int>(fields[1], line_no, "decayed");
        const auto x = parse_number<std::int64_t>(fields[2], line_no, "x");
        const auto v = parse_number<double>(fields[3], line_no, "v");
        if (k != decays.size() + 1)
            throw CsvParseError(line_no, "k must be sequential from 1, got " + std::to_string(k));
        if (decayed != 0 && decayed != 1)
            throw CsvParseError(line_no, "decayed must be 0 or 1");
        // records obey the walk law: x moves by exactly ±1 as dictated by
        // the decay flag, and v is that step's size
        if (x != x_prev + (decayed == 1 ? -1 : 1))
            throw CsvParseError(line_no, "x inconsistent with the ±1 walk");
        if (v != step_value(x_prev, x))
            throw CsvParseError(line_no, "v must equal |x_k - x_{k-1}|");
        decays.push_back(decayed == 1);
        x_prev = x;
    }
    if (decays.empty()) throw CsvParseError(line_no, "history has no records");
    return history_from_decays(decays);
}

void write_generations_csv(const std::string& path, const std::vector<GenerationStats>& stats) {
    std::ofstream f = open_out(path);
    f << "gen,best_fitness,mean_fitness,best_tree\n";
    char buf[128];
    for (const auto& row : stats) {
        std::snprintf(buf, sizeof buf, "%" PRIu64 ",%.6f,%.6f,", row.generation,
                      row.best_fitness, row.mean_fitness);
        f << buf << row.best_tree_text << '\n';
    }
    finish_out(f, path);
}

void write_decisions_csv(const std::string& path, const std::vector<DecisionRow>& rows) {
    std::ofstream f = open_out(path);
    f << "k,state,action,belief,strategy_id,signed_belief,value,cumulative_value\n";
    char buf[192];
    for (const auto& row : rows) {
        std::snprintf(buf, sizeof buf, "%" PRIu64 ",%s,%s,%.6f,%" PRIu64 ",%.6f,%.6f,%.6f\n",
                      row.k, state_name(row.state), action_name(row.action), row.belief,
                      row.strategy_id, row.signed_belief, row.value, row.cumulative_value);
        f << buf;
    }
    finish_out(f, path);
}

void write_text_file(const std::string& path, const std::string& contents) {
    std::ofstream f = open_out(path);
    f << contents;
    finish_out(f, path);
}

std::string read_text_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open for reading: " + path);
    std::ostringstream os;
    os << f.rdbuf();
    return os.str();
}

} // namespace qdt
