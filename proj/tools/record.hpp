// Line-oriented result records for the command-line front end. One JSON
// object per line, fixed field order, floats at 17 significant digits, so
// identical invocations produce byte-identical output.
#pragma once

#include <cstdio>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace lpheat_cli {

inline std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

struct OutputRecord {
    std::string command;
    std::string family;
    std::vector<double> alpha;
    std::optional<double> t;
    std::vector<std::pair<std::string, double>> inputs;
    std::vector<std::pair<std::string, double>> outputs;
    std::string status = "ok";  // ok | domain_error | nonconvergence

    std::string to_json_line() const {
        std::string s = "{\"command\":\"" + command + "\",\"family\":\"" + family + "\",\"alpha\":[";
        for (std::size_t i = 0; i < alpha.size(); ++i) {
            if (i) s += ",";
            s += fmt17(alpha[i]);
        }
        s += "],\"t\":";
        s += t ? fmt17(*t) : "null";
        s += ",\"inputs\":{";
        for (std::size_t i = 0; i < inputs.size(); ++i) {
            if (i) s += ",";
            s += "\"" + inputs[i].first + "\":" + fmt17(inputs[i].second);
        }
        s += "},\"outputs\":{";
        for (std::size_t i = 0; i < outputs.size(); ++i) {
            if (i) s += ",";
            s += "\"" + outputs[i].first + "\":" + fmt17(outputs[i].second);
        }
        s += "},\"status\":\"" + status + "\"}";
        return s;
    }
};

}  // namespace lpheat_cli
