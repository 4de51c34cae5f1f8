#include <iostream>

#include "commands.hpp"

int main(int argc, char** argv)
{
    std::vector<std::string> args(argv + 1, argv + argc);
    auto r = coho::cli::run(args);
    if (r.report.contains("help")) {
        std::cout << r.report["help"].get<std::string>();
        return 0;
    }
    if (r.report.contains("error")) std::cerr << "error: " << r.report["error"].get<std::string>() << "\n";
    std::cout << r.report.dump(2) << "\n";
    return r.code;
}
