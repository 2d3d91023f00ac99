// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 hanjakit contributors

#include "hanjakit/variants.hpp"

#include <fstream>
#include <numeric>
#include <sstream>
#include <tuple>

#include "hanjakit/errors.hpp"

namespace hanjakit {

namespace {

std::pair<std::string, std::string> unordered_pair(const std::string& a, const std::string& b) {
    return a < b ? std::make_pair(a, b) : std::make_pair(b, a);
}

std::vector<std::string> split_tabs(const std::string& line) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    for (;;) {
        std::size_t tab = line.find('\t', start);
        if (tab == std::string::npos) {
            fields.push_back(line.substr(start));
            return fields;
        }
        fields.push_back(line.substr(start, tab - start));
        start = tab + 1;
    }
}

struct UnionFind {
    std::vector<std::size_t> parent;

    explicit UnionFind(std::size_t n) : parent(n) {
        std::iota(parent.begin(), parent.end(), std::size_t(0));
    }

    std::size_t find(std::size_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }

    void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};

} // namespace

const char* relation_kind_name(RelationKind kind) {
    switch (kind) {
    case RelationKind::Variant: return "variant";
    case RelationKind::Simplified: return "simplified";
    case RelationKind::Interchangeable: return "interchangeable";
    case RelationKind::Confusable: return "confusable";
    }
    return "unknown";
}

VariantTable load_variant_table(std::string_view bytes) {
    VariantTable table;
    std::set<std::tuple<std::string, std::string, std::string>> seen;

    std::istringstream in{std::string(bytes)};
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty() || line[0] == '#') {
            continue;
        }
        std::vector<std::string> fields = split_tabs(line);
        if (fields.size() < 3 || fields.size() > 4) {
            throw TableError("line " + std::to_string(line_no) +
                                 ": expected kind<TAB>a<TAB>b[<TAB>note]",
                             line_no);
        }
        const std::string& kind_token = fields[0];
        const std::string& a = fields[1];
        const std::string& b = fields[2];
        std::string note = fields.size() == 4 ? fields[3] : std::string();

        if (a.empty() || b.empty()) {
            throw TableError("line " + std::to_string(line_no) + ": empty character class",
                             line_no);
        }
        if (a == b) {
            throw TableError("line " + std::to_string(line_no) + ": relation of \"" + a +
                                 "\" with itself",
                             line_no);
        }
        // Representative rows are directional (a is the representative of
        // b's component); all other kinds dedupe as unordered pairs.
        auto [lo, hi] = kind_token == "representative" ? std::make_pair(a, b)
                                                       : unordered_pair(a, b);
        if (!seen.insert({kind_token, lo, hi}).second) {
            throw DuplicateRelationError("line " + std::to_string(line_no) + ": duplicate " +
                                             kind_token + " relation (" + a + ", " + b + ")",
                                         line_no);
        }

        if (kind_token == "representative") {
            table.representatives.emplace_back(a, b);
        } else if (kind_token == "variant") {
            table.relations.push_back({RelationKind::Variant, a, b, note});
        } else if (kind_token == "simplified") {
            table.relations.push_back({RelationKind::Simplified, a, b, note});
        } else if (kind_token == "interchangeable") {
            table.relations.push_back({RelationKind::Interchangeable, a, b, note});
        } else if (kind_token == "confusable") {
            table.relations.push_back({RelationKind::Confusable, a, b, note});
        } else {
            throw TableError("line " + std::to_string(line_no) + ": unknown kind \"" +
                                 kind_token + "\"",
                             line_no);
        }
    }
    return table;
}

VariantTable load_variant_table_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open variant table: " + path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return load_variant_table(buf.str());
}

EquivalenceIndex compile_equivalence(const VariantTable& table) {
    // Collect every class mentioned by a merging relation or declaration.
    std::map<std::string, std::size_t> ids;
    auto id_of = [&](const std::string& c) {
        return ids.emplace(c, ids.size()).first->second;
    };
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    for (const VariantRelation& rel : table.relations) {
        if (rel.kind == RelationKind::Confusable) {
            continue;
        }
        edges.emplace_back(id_of(rel.a), id_of(rel.b));
    }
    for (const auto& [rep, member] : table.representatives) {
        edges.emplace_back(id_of(rep), id_of(member));
    }

    UnionFind uf(ids.size());
    for (const auto& [a, b] : edges) {
        uf.unite(a, b);
    }

    std::vector<const std::string*> names(ids.size());
    for (const auto& [name, id] : ids) {
        names[id] = &name;
    }

    // Declared representatives win; otherwise the smallest member. UTF-8
    // byte order equals codepoint order, so plain string comparison is the
    // codepoint tie-break.
    std::map<std::size_t, std::string> declared;
    for (const auto& [rep, member] : table.representatives) {
        std::size_t root = uf.find(ids.at(member));
        auto [it, inserted] = declared.emplace(root, rep);
        if (!inserted && it->second != rep) {
            throw ConflictingRepresentativeError(
                "component of \"" + member + "\" has conflicting representatives \"" +
                it->second + "\" and \"" + rep + "\"");
        }
    }
    std::map<std::size_t, std::string> smallest;
    for (std::size_t i = 0; i < ids.size(); ++i) {
        std::size_t root = uf.find(i);
        auto it = smallest.find(root);
        if (it == smallest.end() || *names[i] < it->second) {
            smallest[root] = *names[i];
        }
    }

    EquivalenceIndex index;
    for (std::size_t i = 0; i < ids.size(); ++i) {
        std::size_t root = uf.find(i);
        auto decl = declared.find(root);
        index.representative_[*names[i]] =
            decl != declared.end() ? decl->second : smallest.at(root);
    }
    for (const VariantRelation& rel : table.relations) {
        if (rel.kind == RelationKind::Confusable) {
            index.confusables_.insert(unordered_pair(rel.a, rel.b));
        }
    }
    return index;
}

std::string EquivalenceIndex::normalize(const std::string& c) const {
    auto it = representative_.find(c);
    return it != representative_.end() ? it->second : c;
}

bool EquivalenceIndex::are_equivalent(const std::string& a, const std::string& b) const {
    return normalize(a) == normalize(b);
}

bool EquivalenceIndex::is_confusable_pair(const std::string& a, const std::string& b) const {
    return confusables_.count(unordered_pair(a, b)) > 0;
}

} // namespace hanjakit
