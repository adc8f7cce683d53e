// SPDX-License-Identifier: Apache-2.0
//
// Spec-file loader. One declaration per line:
//
//   key <name> = <qname>[:<instance>].<field> : <int|real|bool|str|intList>
//   control <name> = package|class|method|thread
//   derive <name> = haversine(<lat>,<lon>,<refLat>,<refLon>)
//                 | compass(<lat>,<lon>,<refLat>,<refLon>[,<epsilonMeters>])
//   filter <prefix-pattern>
//   abs <attr> = bool(<predicate over attr>) | range[c1:c2:...:cn]
//   path <name> on <attr> = (<f1>) ~~> (<f2>) ~~> (<f3>)
//   prop <name> = <property text>
//   buffer <n>
//
// `#` starts a comment at the beginning of a line or when preceded by
// whitespace outside a string literal (so `up#max` and "#" inside strings
// survive).
//
// The model's attribute vector is inferred: declared keys in declaration
// order, then the control attribute, then derived attributes — except that
// a key serving only as a derivation input (referenced by no abs, path, or
// prop declaration) is dropped from the vector.

#pragma once

#include <istream>
#include <string>
#include <vector>

#include "fsmrv/abstraction.hpp"
#include "fsmrv/pipeline.hpp"
#include "fsmrv/prop/ast.hpp"

namespace fsmrv {

struct prop_decl {
    std::string name;
    std::string text;                   // source text as written
    expr_ptr parsed;                    // original AST
    std::vector<expr_ptr> normalized;   // after Table-1 splits
    int line = 0;
};

struct spec_config {
    model_schema schema;
    std::vector<abstraction_fn> fns;  // parallel to schema.attrs
    bool has_abs = false;             // any non-identity declaration present
    std::vector<path_spec> paths;
    std::vector<prop_decl> props;
    size_t buffer_size = 1024;

    // The path spec covering a P property's slots, or nullptr.
    const path_spec* path_for(const expr_ptr& p) const;
};

// Throws parse_error (with line numbers) and config_error.
spec_config parse_spec_text(const std::string& text, const std::string& where = "spec");
spec_config load_spec_file(const std::string& filename);

}  // namespace fsmrv
