#pragma once
#include <fstream>
#include <istream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace mskt {

/// Flat key=value configuration. Every key present in the file must be
/// consumed by a get_* call; finish() rejects leftovers so typos in physics
/// parameters cannot pass silently.
class Config {
  public:
    Config() = default;

    static Config parse(std::istream& in, const std::string& name = "<stream>") {
        Config cfg;
        cfg.name_ = name;
        std::string line;
        int lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            const size_t start = line.find_first_not_of(" \t\r");
            if (start == std::string::npos || line[start] == '#') continue;
            const size_t eq = line.find('=');
            if (eq == std::string::npos)
                throw std::invalid_argument(name + ":" + std::to_string(lineno) +
                                            ": expected key=value");
            auto trim = [](std::string s) {
                const size_t a = s.find_first_not_of(" \t\r");
                const size_t b = s.find_last_not_of(" \t\r");
                return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
            };
            const std::string key = trim(line.substr(0, eq));
            const std::string val = trim(line.substr(eq + 1));
            if (key.empty())
                throw std::invalid_argument(name + ":" + std::to_string(lineno) + ": empty key");
            if (!cfg.values_.insert({key, val}).second)
                throw std::invalid_argument(name + ":" + std::to_string(lineno) +
                                            ": duplicate key '" + key + "'");
            cfg.order_.push_back(key);
        }
        return cfg;
    }

    static Config parse_file(const std::string& path) {
        std::ifstream in(path);
        if (!in) throw std::invalid_argument("cannot open config file: " + path);
        return parse(in, path);
    }

    static Config parse_string(const std::string& text) {
        std::istringstream in(text);
        return parse(in, "<inline>");
    }

    bool has(const std::string& key) const { return values_.count(key) > 0; }

    std::string get_string(const std::string& key) const {
        auto it = values_.find(key);
        if (it == values_.end())
            throw std::invalid_argument(name_ + ": missing required key '" + key + "'");
        consumed_.insert(key);
        return it->second;
    }

    std::string get_string(const std::string& key, const std::string& fallback) const {
        return has(key) ? get_string(key) : fallback;
    }

    double get_double(const std::string& key) const { return to_double(key, get_string(key)); }
    double get_double(const std::string& key, double fallback) const {
        return has(key) ? get_double(key) : fallback;
    }

    int get_int(const std::string& key) const {
        const std::string s = get_string(key);
        size_t pos = 0;
        int v = 0;
        try { v = std::stoi(s, &pos); } catch (...) { pos = std::string::npos; }
        if (pos != s.size())
            throw std::invalid_argument(name_ + ": key '" + key + "' is not an integer: " + s);
        return v;
    }
    int get_int(const std::string& key, int fallback) const {
        return has(key) ? get_int(key) : fallback;
    }

    /// Reject any key that was never consumed.
    void finish() const {
        std::vector<std::string> leftovers;
        for (const auto& k : order_)
            if (!consumed_.count(k)) leftovers.push_back(k);
        if (!leftovers.empty()) {
            std::string msg = name_ + ": unknown key(s):";
            for (const auto& k : leftovers) msg += " '" + k + "'";
            throw std::invalid_argument(msg);
        }
    }

    /// Deterministic echo of the raw contents (file order), for CSV metadata.
    std::string echo() const {
        std::string out;
        for (const auto& k : order_) {
            if (!out.empty()) out += " ";
            out += k + "=" + values_.at(k);
        }
        return out;
    }

  private:
    double to_double(const std::string& key, const std::string& s) const {
        size_t pos = 0;
        double v = 0;
        try { v = std::stod(s, &pos); } catch (...) { pos = std::string::npos; }
        if (pos != s.size())
            throw std::invalid_argument(name_ + ": key '" + key + "' is not a number: " + s);
        return v;
    }

    std::string name_ = "<empty>";
    std::map<std::string, std::string> values_;
    std::vector<std::string> order_;
    mutable std::set<std::string> consumed_;
};

}  // namespace mskt
