// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 npkg contributors

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace npkg {

// Base class for all recoverable npkg errors. The CLI maps these to exit
// code 2 (data error); anything else is a bug.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class IoError : public Error {
public:
    explicit IoError(const std::string& path, const std::string& what)
        : Error(path + ": " + what), path_(path) {}

    const std::string& path() const noexcept { return path_; }

private:
    std::string path_;
};

class ParseError : public Error {
public:
    ParseError(std::string file, std::size_t line, const std::string& what)
        : Error(file + ":" + std::to_string(line) + ": " + what),
          file_(std::move(file)),
          line_(line) {}

    const std::string& file() const noexcept { return file_; }
    std::size_t line() const noexcept { return line_; }

private:
    std::string file_;
    std::size_t line_;
};

class DuplicateNode : public Error {
public:
    explicit DuplicateNode(const std::string& id, const std::string& context = {})
        : Error("duplicate node id: " + id + (context.empty() ? "" : " (" + context + ")")),
          id_(id) {}

    const std::string& id() const noexcept { return id_; }

private:
    std::string id_;
};

class NodeNotFound : public Error {
public:
    explicit NodeNotFound(const std::string& id) : Error("unknown node id: " + id), id_(id) {}

    const std::string& id() const noexcept { return id_; }

private:
    std::string id_;
};

class RelationNotRegistered : public Error {
public:
    explicit RelationNotRegistered(const std::string& id)
        : Error("relation not in registry: " + id), id_(id) {}

    const std::string& id() const noexcept { return id_; }

private:
    std::string id_;
};

class RegistryMismatch : public Error {
public:
    RegistryMismatch() : Error("graphs were built against different relation registries") {}
};

class UndefinedChange : public Error {
public:
    explicit UndefinedChange(const std::string& field)
        : Error("percent change undefined: baseline " + field + " is zero"), field_(field) {}

    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

}  // namespace npkg
