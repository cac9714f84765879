// Writes the shipped fixture spec files. Usage: fixture_export [directory]
// (default: fixtures/ under the current directory). The unit tests assert
// that the shipped files match the builders byte for byte, so rerun this
// after changing src/fixtures.cpp.

#include "sscc/fixtures.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>

int main(int argc, char** argv) {
    namespace fs = std::filesystem;
    fs::path dir = argc > 1 ? argv[1] : "fixtures";
    fs::create_directories(dir);

    auto write = [&](const std::string& name, const sscc::SystemSpec& spec) {
        fs::path p = dir / name;
        std::ofstream out(p, std::ios::binary);
        out << sscc::render_spec(spec);
        if (!out) {
            std::cerr << "failed to write " << p.string() << "\n";
            std::exit(1);
        }
        std::cout << p.string() << "\n";
    };

    write("containers.sscc", sscc::fixture_container());
    write("tasks.sscc", sscc::fixture_tasks());
    write("inference_consistency.sscc",
          sscc::fixture_inference_chain(sscc::f_cmp("X", sscc::IntOp::Lt, 5)));
    write("inference_knowledge.sscc", sscc::fixture_inference_chain(sscc::f_true()));

    sscc::HierarchyGenSpec chain;
    chain.depth = 2;
    chain.branching = sscc::StochasticExpression::constant(1);
    chain.seeding = sscc::TargetSeeding::DeepestLeaf;
    chain.seed = 0;
    write("robot_chain.sscc", sscc::fixture_robot(chain));

    sscc::HierarchyGenSpec tree;
    tree.depth = 3;
    tree.branching = sscc::StochasticExpression::constant(2);
    tree.seeding = sscc::TargetSeeding::DeepestLeaf;
    tree.seed = 7;
    write("robot_tree.sscc", sscc::fixture_robot(tree));

    return 0;
}
