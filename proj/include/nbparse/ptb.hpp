#ifndef NBPARSE_PTB_HPP
#define NBPARSE_PTB_HPP

#include <stdexcept>
#include <string>
#include <vector>

#include "nbparse/tree.hpp"

namespace nbparse {

// Bracketed-format parse failure, with 1-based position of the offending input.
class PtbError : public std::runtime_error {
  public:
    PtbError(const std::string& msg, int line, int column)
        : std::runtime_error(msg + " at line " + std::to_string(line) + ", column " +
                             std::to_string(column)),
          line(line),
          column(column) {}
    int line;
    int column;
};

struct PtbOptions {
    // Strip functional tags and coindexation ("NP-SBJ" -> "NP", "NP=2" -> "NP").
    // Labels starting with '-' (-LRB-, -NONE-, ...) are left alone.
    bool strip_function_tags = true;
    // Drop -NONE- leaves (traces) and any node left empty by the removal.
    bool drop_traces = true;
};

// Parses one or more bracketed trees. An outer wrapper pair with an empty
// label, as in "( (S ...) )", is dissolved. Spans are assigned per tree.
std::vector<Tree> read_ptb(const std::string& text, const PtbOptions& options = {});

std::vector<Tree> read_ptb_file(const std::string& path, const PtbOptions& options = {});

// Inverse of read_ptb up to label normalization: read_ptb(write_ptb(t))
// yields a tree structurally equal to t.
std::string write_ptb(const Tree& tree);

void write_ptb_file(const std::string& path, const std::vector<Tree>& trees);

}  // namespace nbparse

#endif
