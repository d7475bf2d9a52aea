#include "jdkelly/market_io.hpp"

#include <cctype>
#include <cstring>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace jdkelly {

using nlohmann::json;

namespace {

// Maps JSON pointers of an already well-formed document to the line on
// which each value starts.
class LineIndex {
public:
    explicit LineIndex(std::string_view text) : text_(text) { value(""); }

    int line_of(std::string pointer) const
    {
        for (;;) {
            if (const auto it = lines_.find(pointer); it != lines_.end()) return it->second;
            const auto slash = pointer.rfind('/');
            if (slash == std::string::npos) return 1;
            pointer.erase(slash);
        }
    }

private:
    void skip_ws()
    {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
            if (text_[pos_] == '\n') ++line_;
            ++pos_;
        }
    }

    std::string string_token()
    {
        std::string out;
        ++pos_;  // opening quote
        while (pos_ < text_.size() && text_[pos_] != '"') {
            if (text_[pos_] == '\\' && pos_ + 1 < text_.size()) ++pos_;
            out += text_[pos_++];
        }
        ++pos_;
        return out;
    }

    static std::string escape(const std::string& key)
    {
        std::string out;
        for (char ch : key) {
            if (ch == '~') out += "~0";
            else if (ch == '/') out += "~1";
            else out += ch;
        }
        return out;
    }

    void value(const std::string& pointer)
    {
        skip_ws();
        if (pos_ >= text_.size()) return;
        lines_.emplace(pointer, line_);
        const char ch = text_[pos_];
        if (ch == '{') {
            ++pos_;
            for (;;) {
                skip_ws();
                if (pos_ >= text_.size() || text_[pos_] == '}') break;
                if (text_[pos_] == ',') {
                    ++pos_;
                    continue;
                }
                const int key_line = line_;
                const std::string key = string_token();
                const std::string child = pointer + "/" + escape(key);
                skip_ws();
                ++pos_;  // ':'
                lines_.emplace(child, key_line);
                value(child);
            }
            ++pos_;
        } else if (ch == '[') {
            ++pos_;
            for (int index = 0;;) {
                skip_ws();
                if (pos_ >= text_.size() || text_[pos_] == ']') break;
                if (text_[pos_] == ',') {
                    ++pos_;
                    continue;
                }
                value(pointer + "/" + std::to_string(index++));
            }
            ++pos_;
        } else if (ch == '"') {
            string_token();
        } else {
            while (pos_ < text_.size() && !std::strchr(",]} \t\r\n", text_[pos_])) ++pos_;
        }
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    int line_ = 1;
    std::map<std::string, int> lines_;
};

class SchemaReader {
public:
    SchemaReader(const json& doc, const LineIndex& lines) : doc_(doc), lines_(lines) {}

    [[noreturn]] void fail(const std::string& pointer, const std::string& message) const
    {
        throw MarketParseError(lines_.line_of(pointer), pointer.empty() ? "/" : pointer, message);
    }

    const json& at(const std::string& pointer) const { return doc_.at(json::json_pointer(pointer)); }

    bool has(const std::string& pointer) const { return doc_.contains(json::json_pointer(pointer)); }

    double number(const std::string& pointer) const
    {
        if (!has(pointer)) fail(pointer, "missing required number");
        const auto& v = at(pointer);
        if (!v.is_number()) fail(pointer, "expected a number, got " + std::string(v.type_name()));
        return v.get<double>();
    }

    Vector vector(const std::string& pointer, Eigen::Index n) const
    {
        if (!has(pointer)) fail(pointer, "missing required array");
        const auto& v = at(pointer);
        if (n == 1 && v.is_number()) return Vector::Constant(1, v.get<double>());
        if (!v.is_array()) fail(pointer, "expected an array of " + std::to_string(n) + " numbers");
        if (static_cast<Eigen::Index>(v.size()) != n) {
            fail(pointer, "expected " + std::to_string(n) + " entries, got " + std::to_string(v.size()));
        }
        Vector out(n);
        for (Eigen::Index i = 0; i < n; ++i) out[i] = number(pointer + "/" + std::to_string(i));
        return out;
    }

private:
    const json& doc_;
    const LineIndex& lines_;
};

int line_of_byte(std::string_view text, std::size_t byte)
{
    int line = 1;
    for (std::size_t i = 0; i < std::min(byte, text.size()); ++i) {
        if (text[i] == '\n') ++line;
    }
    return line;
}

}  // namespace

MarketParseError::MarketParseError(int line, std::string pointer, const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ": " + pointer + ": " + message),
      line_(line),
      pointer_(std::move(pointer))
{
}

MarketSpec parse_market_json(std::string_view text)
{
    json doc;
    try {
        doc = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        // e.byte is one past the offending character
        throw MarketParseError(line_of_byte(text, e.byte > 0 ? e.byte - 1 : 0), "/", e.what());
    }
    const LineIndex lines(text);
    const SchemaReader read(doc, lines);
    if (!doc.is_object()) read.fail("", "market document must be a JSON object");

    static const std::set<std::string> known = {"n", "nu", "mu", "sigma", "rho", "r", "lambda", "atoms", "name"};
    for (const auto& [key, _] : doc.items()) {
        if (!known.count(key)) read.fail("/" + key, "unknown key '" + key + "'");
    }

    if (!read.has("/n")) read.fail("/n", "missing required key 'n'");
    const auto& n_value = read.at("/n");
    if (!n_value.is_number_integer() || n_value.get<long long>() < 1) read.fail("/n", "n must be a positive integer");
    const auto n = static_cast<Eigen::Index>(n_value.get<long long>());

    const bool has_nu = read.has("/nu");
    const bool has_mu = read.has("/mu");
    if (has_nu == has_mu) read.fail(has_mu ? "/mu" : "", "give exactly one of 'nu' (geometric) or 'mu' (arithmetic) drift");

    MarketSpec spec;
    auto& d = spec.diffusion;
    d.sigma = read.vector("/sigma", n);
    if (has_mu) {
        d.mu = read.vector("/mu", n);
    } else {
        d.mu = read.vector("/nu", n) + 0.5 * d.sigma.cwiseProduct(d.sigma);
    }
    d.r = read.number("/r");

    d.rho = Matrix::Identity(n, n);
    if (read.has("/rho")) {
        const auto& rho = read.at("/rho");
        if (n == 1 && rho.is_number()) {
            d.rho(0, 0) = rho.get<double>();
        } else {
            if (!rho.is_array() || static_cast<Eigen::Index>(rho.size()) != n) {
                read.fail("/rho", "expected an " + std::to_string(n) + "x" + std::to_string(n) + " array of arrays");
            }
            for (Eigen::Index i = 0; i < n; ++i) d.rho.row(i) = read.vector("/rho/" + std::to_string(i), n).transpose();
        }
    }

    spec.jumps.lambda = read.number("/lambda");
    if (read.has("/atoms")) {
        const auto& atoms = read.at("/atoms");
        if (!atoms.is_array()) read.fail("/atoms", "expected an array of {x, p} objects");
        for (std::size_t k = 0; k < atoms.size(); ++k) {
            const std::string base = "/atoms/" + std::to_string(k);
            if (!atoms[k].is_object()) read.fail(base, "expected an object with keys x and p");
            for (const auto& [key, _] : atoms[k].items()) {
                if (key != "x" && key != "p") read.fail(base + "/" + key, "unknown key '" + key + "'");
            }
            spec.jumps.atoms.push_back({read.vector(base + "/x", n), read.number(base + "/p")});
        }
    } else if (spec.jumps.lambda > 0.0) {
        read.fail("/atoms", "missing 'atoms' while lambda > 0");
    }
    return spec;
}

MarketSpec load_market(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open market file " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_market_json(buf.str());
}

json market_to_json(const MarketSpec& spec)
{
    auto vec = [](const Vector& v) { return std::vector<double>(v.data(), v.data() + v.size()); };
    const auto& d = spec.diffusion;
    json rho = json::array();
    for (Eigen::Index i = 0; i < d.rho.rows(); ++i) rho.push_back(vec(d.rho.row(i).transpose()));
    json atoms = json::array();
    for (const auto& a : spec.jumps.atoms) atoms.push_back({{"x", vec(a.x)}, {"p", a.p}});
    return {{"n", spec.n()}, {"mu", vec(d.mu)},         {"sigma", vec(d.sigma)}, {"rho", rho},
            {"r", d.r},      {"lambda", spec.jumps.lambda}, {"atoms", atoms}};
}

}  // namespace jdkelly
