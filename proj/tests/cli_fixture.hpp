#pragma once

// Scratch directory with a handful of .hg inputs for driving the command line in-process.

#include "tightree/cli.hpp"
#include "tightree/hg_format.hpp"
#include "tightree/tree_gen.hpp"

#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

struct CliRun {
    int code = 0;
    std::string out;
    std::string err;
};

class CliFixture {
public:
    CliFixture() {
        static int counter = 0;
        dir_ = std::filesystem::temp_directory_path() /
               ("tightree_cli_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
        std::filesystem::create_directories(dir_);
        using namespace tightree;
        save_hg(dir_ / "k4.hg", complete_hypergraph(3, 4));
        save_hg(dir_ / "k21.hg", complete_hypergraph(3, 21));
        save_hg(dir_ / "k22.hg", complete_hypergraph(3, 22));
        save_hg(dir_ / "tree20.hg", random_tight_tree(3, 20, 2, 1).tree);
        write("loose.hg", "3 6\n0 1 2\n3 4 5\n");
        write("path2.hg", "3 4\n0 1 2\n0 1 3\n");
        write("fano.hg", "3 7\n0 1 2\n0 3 4\n0 5 6\n1 3 5\n1 4 6\n2 3 6\n2 4 5\n");
        write("broken.hg", "# header next\n3 5\n0 1 7\n");
    }
    ~CliFixture() {
        std::error_code ec;
        std::filesystem::remove_all(dir_, ec);
    }
    CliFixture(const CliFixture&) = delete;
    CliFixture& operator=(const CliFixture&) = delete;

    std::string path(const std::string& name) const { return (dir_ / name).string(); }

    CliRun run(const std::vector<std::string>& args) const {
        std::ostringstream out, err;
        CliRun r;
        r.code = tightree::run(args, out, err);
        r.out = out.str();
        r.err = err.str();
        return r;
    }

    /// One representative invocation per verb.
    std::vector<std::vector<std::string>> every_verb() const {
        return {
            {"analyze", path("tree20.hg")},
            {"embed", "--trace", path("tree20.hg"), path("k22.hg")},
            {"turan", "-n", "6", path("path2.hg")},
            {"verify-weights", path("k22.hg")},
            {"peel", path("fano.hg"), "-q", "1"},
            {"enumerate", "-r", "3", "-t", "5"},
            {"steiner", "-n", "40", "-t", "6"},
            {"audit", "--trace", path("k22.hg"), path("tree20.hg")},
        };
    }

private:
    void write(const std::string& name, const std::string& text) const { std::ofstream(dir_ / name) << text; }

    std::filesystem::path dir_;
};
