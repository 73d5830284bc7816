#pragma once

#include <cstdio>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace infconv {

/// Minimal JSON tree with deterministic, byte-stable output: insertion-order
/// objects, doubles printed with 17 significant digits so they round-trip
/// losslessly. Non-finite doubles are encoded as the strings "inf", "-inf",
/// "nan" (JSON has no literals for them).
class JsonValue {
public:
    JsonValue() : kind_(Kind::Null) {}

    static JsonValue object() {
        JsonValue v;
        v.kind_ = Kind::Object;
        return v;
    }
    static JsonValue array() {
        JsonValue v;
        v.kind_ = Kind::Array;
        return v;
    }
    static JsonValue number(double x) {
        JsonValue v;
        if (x != x) {
            v.kind_ = Kind::String;
            v.str_ = "nan";
        } else if (x == 1.0 / 0.0 || x == -1.0 / 0.0) {
            v.kind_ = Kind::String;
            v.str_ = x > 0 ? "inf" : "-inf";
        } else {
            v.kind_ = Kind::Number;
            char buf[64];
            std::snprintf(buf, sizeof(buf), "%.17g", x);
            v.str_ = buf;
        }
        return v;
    }
    static JsonValue integer(long long x) {
        JsonValue v;
        v.kind_ = Kind::Number;
        v.str_ = std::to_string(x);
        return v;
    }
    static JsonValue boolean(bool b) {
        JsonValue v;
        v.kind_ = Kind::Bool;
        v.str_ = b ? "true" : "false";
        return v;
    }
    static JsonValue string(std::string s) {
        JsonValue v;
        v.kind_ = Kind::String;
        v.str_ = std::move(s);
        return v;
    }

    JsonValue& set(const std::string& key, JsonValue value) {
        members_.emplace_back(key, std::move(value));
        return *this;
    }
    JsonValue& push(JsonValue value) {
        items_.push_back(std::move(value));
        return *this;
    }

    std::string dump(int indent = 2) const {
        std::string out;
        write(out, indent, 0);
        out.push_back('\n');
        return out;
    }

private:
    enum class Kind { Null, Bool, Number, String, Object, Array };

    static void escape(std::string& out, const std::string& s) {
        out.push_back('"');
        for (char c : s) {
            switch (c) {
                case '"': out += "\\\""; break;
                case '\\': out += "\\\\"; break;
                case '\n': out += "\\n"; break;
                case '\t': out += "\\t"; break;
                case '\r': out += "\\r"; break;
                default:
                    if (static_cast<unsigned char>(c) < 0x20) {
                        char buf[8];
                        std::snprintf(buf, sizeof(buf), "\\u%04x", c);
                        out += buf;
                    } else {
                        out.push_back(c);
                    }
            }
        }
        out.push_back('"');
    }

    void write(std::string& out, int indent, int depth) const {
        const std::string pad(static_cast<std::size_t>(indent) * (depth + 1), ' ');
        const std::string close_pad(static_cast<std::size_t>(indent) * depth, ' ');
        switch (kind_) {
            case Kind::Null: out += "null"; break;
            case Kind::Bool:
            case Kind::Number: out += str_; break;
            case Kind::String: escape(out, str_); break;
            case Kind::Object: {
                if (members_.empty()) {
                    out += "{}";
                    break;
                }
                out += "{\n";
                for (std::size_t i = 0; i < members_.size(); ++i) {
                    out += pad;
                    escape(out, members_[i].first);
                    out += ": ";
                    members_[i].second.write(out, indent, depth + 1);
                    if (i + 1 < members_.size()) out.push_back(',');
                    out.push_back('\n');
                }
                out += close_pad + "}";
                break;
            }
            case Kind::Array: {
                if (items_.empty()) {
                    out += "[]";
                    break;
                }
                out += "[\n";
                for (std::size_t i = 0; i < items_.size(); ++i) {
                    out += pad;
                    items_[i].write(out, indent, depth + 1);
                    if (i + 1 < items_.size()) out.push_back(',');
                    out.push_back('\n');
                }
                out += close_pad + "]";
                break;
            }
        }
    }

    Kind kind_;
    std::string str_;
    std::vector<std::pair<std::string, JsonValue>> members_;
    std::vector<JsonValue> items_;
};

}  // namespace infconv
