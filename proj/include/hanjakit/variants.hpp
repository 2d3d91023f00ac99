// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 hanjakit contributors

#pragma once

#include <map>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace hanjakit {

// Character-morphology relations. Variant, Simplified and Interchangeable
// merge classes for scoring; Confusable marks look-alikes with unrelated
// sound/meaning and never merges anything.
enum class RelationKind { Variant, Simplified, Interchangeable, Confusable };

const char* relation_kind_name(RelationKind kind);

struct VariantRelation {
    RelationKind kind;
    std::string a;
    std::string b;
    std::string note;

    bool operator==(const VariantRelation&) const = default;
};

struct VariantTable {
    std::vector<VariantRelation> relations;
    // Declared component representatives: (representative, member) rows in
    // file order. The representative is a member of the component.
    std::vector<std::pair<std::string, std::string>> representatives;
};

// Compiled equivalence classes with a designated representative per
// component, plus the confusable pair set kept outside the equivalence.
// Immutable after compile; concurrent lookups are safe.
class EquivalenceIndex {
public:
    EquivalenceIndex() = default;

    // Representative of c's component; c itself when absent from the index.
    std::string normalize(const std::string& c) const;

    bool are_equivalent(const std::string& a, const std::string& b) const;

    bool is_confusable_pair(const std::string& a, const std::string& b) const;

    const std::set<std::pair<std::string, std::string>>& confusable_pairs() const {
        return confusables_;
    }

    // class -> representative for every class mentioned in the source table.
    const std::map<std::string, std::string>& mapping() const { return representative_; }

    bool empty() const { return representative_.empty() && confusables_.empty(); }

private:
    friend EquivalenceIndex compile_equivalence(const VariantTable& table);

    std::map<std::string, std::string> representative_;
    std::set<std::pair<std::string, std::string>> confusables_; // (min, max) pairs
};

// TSV, one relation per line:
//   kind TAB char_a TAB char_b [TAB note]
// kind in {representative, variant, simplified, interchangeable, confusable};
// '#' lines and blank lines are skipped. A "representative" row declares
// char_a the representative of char_b's component.
VariantTable load_variant_table(std::string_view bytes);

VariantTable load_variant_table_file(const std::string& path);

// Union-find over Variant/Simplified/Interchangeable edges. Representative
// per component: the declared one if any, else the smallest member in
// codepoint order. Two conflicting declarations in one component is an error.
EquivalenceIndex compile_equivalence(const VariantTable& table);

} // namespace hanjakit
