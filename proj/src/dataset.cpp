#include "spinsift/dataset.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "spinsift/errors.hpp"

namespace spinsift {

namespace {

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

double parse_target(std::string_view field, std::size_t line_no) {
    double value = 0.0;
    const char* end = field.data() + field.size();
    const auto [ptr, ec] = std::from_chars(field.data(), end, value);
    if (ec != std::errc{} || ptr != end)
        throw ValidationError("line " + std::to_string(line_no) + ": bad target value '" + std::string(field) + "'");
    if (!std::isfinite(value)) throw ValidationError("line " + std::to_string(line_no) + ": non-finite target");
    return value;
}

}  // namespace

Dataset parse_dataset_csv(const std::string& text) {
    Dataset data;
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    bool saw_header = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto fields = split_fields(line);
        if (!saw_header) {
            if (fields.size() < 2 || fields[0] != "bits" || fields[1] != "target")
                throw ValidationError("dataset header must start with 'bits,target'");
            saw_header = true;
            continue;
        }
        if (fields.size() < 2)
            throw ValidationError("line " + std::to_string(line_no) + ": expected at least 2 columns");
        Sample s;
        s.x = Bitstring::parse(fields[0]);
        s.y = parse_target(fields[1], line_no);
        if (data.samples.empty())
            data.n = s.x.size();
        else if (s.x.size() != data.n)
            throw ValidationError("line " + std::to_string(line_no) + ": bitstring length differs from first row");
        data.samples.push_back(s);
    }
    if (!saw_header) throw ValidationError("dataset is empty (missing header)");
    return data;
}

Dataset read_dataset_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot open dataset: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_dataset_csv(buf.str());
}

std::string dataset_to_csv(const Dataset& data) {
    std::ostringstream out;
    out << "bits,target\n";
    out.precision(17);
    for (const Sample& s : data.samples) out << s.x.str() << "," << s.y << "\n";
    return out.str();
}

void write_dataset_csv(const Dataset& data, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ValidationError("cannot write dataset: " + path);
    out << dataset_to_csv(data);
}

}  // namespace spinsift
