#include <sympjet/cli.hpp>

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace fs = std::filesystem;
using sympjet::Json;

namespace
{

std::string read_all(std::istream &in)
{
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string render(const Json &report, const std::string &format)
{
    if (format == "text") {
        return sympjet::render_text(report);
    }
    return report.dump(2) + "\n";
}

bool write_file(const fs::path &path, const std::string &text)
{
    std::ofstream out(path, std::ios::binary);
    out << text;
    return bool(out);
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Exact jet normal forms for symplectomorphisms and glancing pairs"};
    std::string command;
    std::string input;
    std::string output;
    std::string format = "json";
    std::string jobs_dir;
    std::optional<unsigned> order;
    std::optional<std::uint64_t> seed;
    std::optional<unsigned> n;

    app.add_option("command", command,
                   "normalize-diffeo, normalize-pair, glancing-check, parametrize-form, km-form, poincare or selftest; "
                   "overrides the job's command");
    app.add_option("-i,--input", input, "job file (default: standard input)");
    app.add_option("-o,--output", output, "report file (default: standard output)");
    app.add_option("-f,--format", format, "report format")->check(CLI::IsMember({"json", "text"}));
    app.add_option("--order", order, "jet order N");
    app.add_option("--seed", seed, "seed for sampled checks");
    app.add_option("--n", n, "number of extra symplectic pairs");
    app.add_option("--jobs", jobs_dir, "run every *.json job in a directory, writing <stem>.report.json")
        ->check(CLI::ExistingDirectory);
    CLI11_PARSE(app, argc, argv);

    const sympjet::JobOverrides overrides{order, seed};

    auto run_text = [&](const std::string &text) {
        Json parsed;
        try {
            parsed = Json::parse(text);
        } catch (const Json::parse_error &) {
            return sympjet::run_job_text(text, overrides);
        }
        if (parsed.is_object()) {
            if (!command.empty()) {
                parsed["command"] = command;
            }
            if (n) {
                parsed["n"] = *n;
            }
        }
        return sympjet::run_job(parsed, overrides);
    };

    if (!jobs_dir.empty()) {
        std::vector<fs::path> files;
        for (const auto &e : fs::directory_iterator(jobs_dir)) {
            const auto name = e.path().filename().string();
            if (e.is_regular_file() && e.path().extension() == ".json" &&
                name.find(".report.") == std::string::npos) {
                files.push_back(e.path());
            }
        }
        std::sort(files.begin(), files.end());
        int worst = 0;
        for (const auto &f : files) {
            std::ifstream in(f, std::ios::binary);
            const Json report = run_text(read_all(in));
            const int code = sympjet::report_exit_status(report);
            worst = std::max(worst, code);
            const fs::path out = f.parent_path() / (f.stem().string() + ".report.json");
            if (!write_file(out, render(report, "json"))) {
                std::cerr << "cannot write " << out << "\n";
                return 1;
            }
            std::cout << f.filename().string() << ": " << report.value("status", "?") << " (exit " << code << ")\n";
        }
        return worst;
    }

    std::string text;
    if (input.empty() || input == "-") {
        if (!command.empty() && command == "selftest") {
            text = "{\"command\": \"selftest\"}";
        } else {
            text = read_all(std::cin);
        }
    } else {
        std::ifstream in(input, std::ios::binary);
        if (!in) {
            std::cerr << "cannot read " << input << "\n";
            return 1;
        }
        text = read_all(in);
    }
    const Json report = run_text(text);
    const std::string rendered = render(report, format);
    if (output.empty()) {
        std::cout << rendered;
    } else if (!write_file(output, rendered)) {
        std::cerr << "cannot write " << output << "\n";
        return 1;
    }
    return sympjet::report_exit_status(report);
}
