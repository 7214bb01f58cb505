// Runs every documented CLI invocation and compares its JSON with the committed output.
#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

using json = nlohmann::json;

namespace {

std::string quote(const std::string& s) {
    std::string r = "'";
    for (char c : s) r += c == '\'' ? std::string("'\\''") : std::string(1, c);
    return r + "'";
}

struct Run {
    int status;
    std::string out;
};

Run run(const std::string& bin, const std::vector<std::string>& args) {
    std::string cmd = quote(bin);
    for (const auto& a : args) cmd += " " + quote(a);
    cmd += " 2>/dev/null";
    FILE* p = popen(cmd.c_str(), "r");
    if (!p) return {-1, ""};
    std::string out;
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, n);
    int st = pclose(p);
    return {WIFEXITED(st) ? WEXITSTATUS(st) : -1, out};
}

// Field-by-field comparison; numbers agree to 1e-9 relative or absolute.
bool same(const json& a, const json& b, const std::string& path, std::string& why) {
    if (a.is_number() && b.is_number()) {
        double x = a.get<double>(), y = b.get<double>();
        if (std::abs(x - y) <= 1e-9 * std::max(1.0, std::max(std::abs(x), std::abs(y)))) return true;
        why = path + ": " + a.dump() + " vs " + b.dump();
        return false;
    }
    if (a.type() != b.type()) {
        why = path + ": type differs";
        return false;
    }
    if (a.is_object()) {
        if (a.size() != b.size()) {
            why = path + ": key count differs";
            return false;
        }
        for (auto it = a.begin(); it != a.end(); ++it) {
            if (!b.contains(it.key())) {
                why = path + "." + it.key() + ": missing";
                return false;
            }
            if (!same(it.value(), b.at(it.key()), path + "." + it.key(), why)) return false;
        }
        return true;
    }
    if (a.is_array()) {
        if (a.size() != b.size()) {
            why = path + ": length differs";
            return false;
        }
        for (std::size_t i = 0; i < a.size(); ++i)
            if (!same(a[i], b[i], path + "[" + std::to_string(i) + "]", why)) return false;
        return true;
    }
    if (a != b) {
        why = path + ": " + a.dump() + " vs " + b.dump();
        return false;
    }
    return true;
}

// Arguments of "$ lsym ..." lines, with double-quoted words.
std::vector<std::vector<std::string>> documented(const std::string& readme) {
    std::ifstream in(readme);
    std::vector<std::vector<std::string>> out;
    std::string line;
    while (std::getline(in, line)) {
        if (line.rfind("$ lsym ", 0) != 0) continue;
        std::vector<std::string> words;
        std::string cur;
        bool quoted = false, any = false;
        for (char c : line.substr(7)) {
            if (c == '"') {
                quoted = !quoted;
                any = true;
            } else if (c == ' ' && !quoted) {
                if (any || !cur.empty()) words.push_back(cur);
                cur.clear();
                any = false;
            } else {
                cur += c;
            }
        }
        if (any || !cur.empty()) words.push_back(cur);
        out.push_back(words);
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 3) {
        std::cerr << "usage: cli_examples <lsym binary> <examples.json> [README.md]\n";
        return 2;
    }
    json corpus = json::parse(std::ifstream(argv[2]));
    int failures = 0;
    for (const auto& ex : corpus) {
        auto args = ex.at("args").get<std::vector<std::string>>();
        std::string label;
        for (const auto& a : args) label += " " + a;
        Run r = run(argv[1], args);
        std::string why;
        bool ok = r.status == ex.at("exit").get<int>();
        if (!ok) why = "exit " + std::to_string(r.status) + ", expected " + ex.at("exit").dump();
        if (ok && !ex.at("stdout").is_null()) {
            try {
                ok = same(ex.at("stdout"), json::parse(r.out), "$", why);
            } catch (const json::exception& e) {
                ok = false;
                why = std::string("stdout is not JSON: ") + e.what();
            }
        }
        if (ok && ex.at("stdout").is_null() && !r.out.empty()) {
            ok = false;
            why = "unexpected output on stdout";
        }
        std::cout << (ok ? "PASS" : "FAIL") << " lsym" << label << (ok ? "" : "  (" + why + ")") << "\n";
        if (!ok) ++failures;
    }
    if (argc > 3) {
        for (const auto& args : documented(argv[3])) {
            bool found = false;
            for (const auto& ex : corpus) found = found || ex.at("args").get<std::vector<std::string>>() == args;
            std::string label;
            for (const auto& a : args) label += " " + a;
            if (!found) {
                std::cout << "FAIL documented invocation missing from the corpus: lsym" << label << "\n";
                ++failures;
            }
        }
    }
    std::cout << (failures == 0 ? "all CLI examples reproduce\n" : std::to_string(failures) + " CLI example(s) differ\n");
    return failures == 0 ? 0 : 1;
}
