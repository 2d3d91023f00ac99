// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 hanjakit contributors

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hanjakit {

// Base of all toolkit errors. `code()` is a stable machine-readable
// identifier; the CLI emits it in its error JSON.
class Error : public std::runtime_error {
public:
    explicit Error(std::string message, std::string code = "error")
        : std::runtime_error(std::move(message)), code_(std::move(code)) {}

    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

class IoError : public Error {
public:
    explicit IoError(std::string message) : Error(std::move(message), "io_error") {}
};

// Malformed input syntax. `byte_offset` is the position reported by the
// parser, 0 when the failure is structural rather than lexical.
class ParseError : public Error {
public:
    ParseError(std::string message, std::size_t byte_offset = 0)
        : Error(std::move(message), "parse_error"), byte_offset_(byte_offset) {}

    std::size_t byte_offset() const noexcept { return byte_offset_; }

private:
    std::size_t byte_offset_;
};

// Semantic violation in otherwise well-formed data.
class ValidationError : public Error {
public:
    ValidationError(std::string message, std::string annotation_id = {})
        : Error(std::move(message), "validation_error"), annotation_id_(std::move(annotation_id)) {}

    const std::string& annotation_id() const noexcept { return annotation_id_; }

private:
    std::string annotation_id_;
};

class TableError : public Error {
public:
    TableError(std::string message, std::size_t line = 0)
        : Error(std::move(message), "table_error"), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

class DuplicateRelationError : public TableError {
public:
    DuplicateRelationError(std::string message, std::size_t line = 0)
        : TableError(std::move(message), line) {}
};

class ConflictingRepresentativeError : public Error {
public:
    explicit ConflictingRepresentativeError(std::string message)
        : Error(std::move(message), "conflicting_representative") {}
};

class MissingClassError : public Error {
public:
    explicit MissingClassError(std::string message, std::string cls = {})
        : Error(std::move(message), "missing_class"), class_(std::move(cls)) {}

    const std::string& missing_class() const noexcept { return class_; }

private:
    std::string class_;
};

class InconsistentMatchingError : public Error {
public:
    explicit InconsistentMatchingError(std::string message)
        : Error(std::move(message), "inconsistent_matching") {}
};

class UnknownDocIdError : public Error {
public:
    explicit UnknownDocIdError(std::string message)
        : Error(std::move(message), "unknown_doc_id") {}
};

} // namespace hanjakit
