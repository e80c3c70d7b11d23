#pragma once

#include <string_view>

#include "typesql/execeval/table.hpp"
#include "typesql/typerec/gazetteer.hpp"
#include "typesql/typerec/type_tag.hpp"

namespace typesql {

enum class TypingMode { Insensitive, Content };

std::string_view mode_name(TypingMode mode);
TypingMode parse_mode(std::string_view name);

/// Tokenized question with every tag NONE.
TaggedQuestion untagged(std::string_view question);

// Each pass only tags spans whose tokens are all still NONE, scanning n-grams
// of length 6 down to 1, leftmost first.

void tag_schema_columns(TaggedQuestion& tq, const TableSchema& schema);
void tag_content(TaggedQuestion& tq, const Table& table);
void tag_numbers(TaggedQuestion& tq);
void tag_entities(TaggedQuestion& tq, const Gazetteer& gazetteer);

/// Schema columns, then cell values (content mode), then numbers and dates,
/// then gazetteer entities. Content mode requires `table`.
TaggedQuestion recognize(std::string_view question, const TableSchema& schema,
                         const Table* table, TypingMode mode, const Gazetteer* gazetteer);

}  // namespace typesql
