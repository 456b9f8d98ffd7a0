// Prints the naive-oracle closure of a model file, one fact per line in
// canonical order. Used to produce the committed golden fact lists that the
// engine is tested against.

#include <fstream>
#include <iostream>
#include <sstream>

#include "dicheck/model.hpp"
#include "dicheck/specl.hpp"
#include "oracle.hpp"

int main(int argc, char** argv) {
    if (argc != 2) {
        std::cerr << "usage: oracle_closure <model-file>\n";
        return 2;
    }
    std::ifstream in(argv[1]);
    if (!in) {
        std::cerr << "cannot read " << argv[1] << "\n";
        return 2;
    }
    std::ostringstream buf;
    buf << in.rdbuf();

    auto parsed = dicheck::specl::parse_model(buf.str());
    if (!parsed.decls) {
        std::cerr << dicheck::format_diagnostics(parsed.diagnostics);
        return 2;
    }
    auto built = dicheck::model::build_model(*parsed.decls);
    if (!built.model) {
        std::cerr << dicheck::format_diagnostics(built.diagnostics);
        return 2;
    }
    auto closure = oracle::naive_closure(*built.model, built.model->declared_facts);
    for (const auto& fact : closure) {
        std::cout << dicheck::model::to_string(fact) << "\n";
    }
    return 0;
}
