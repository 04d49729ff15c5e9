#ifndef REFRABILL_TOOLS_JSONIO_HPP
#define REFRABILL_TOOLS_JSONIO_HPP

// Streaming JSON writer with deterministic number formatting (17 significant
// digits), so identical runs produce byte-identical reports.

#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

namespace refrabill::tools {

class JsonWriter {
public:
    JsonWriter& begin_object() { return open('{'); }
    JsonWriter& end_object() { return close('}'); }
    JsonWriter& begin_array() { return open('['); }
    JsonWriter& end_array() { return close(']'); }

    JsonWriter& key(const std::string& k) {
        separator();
        out_ << '"' << escape(k) << "\":";
        pending_value_ = true;
        return *this;
    }

    JsonWriter& value(double v) {
        separator();
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.17g", v);
        out_ << buf;
        return *this;
    }
    JsonWriter& value(int v) { return value_raw(std::to_string(v)); }
    JsonWriter& value(long v) { return value_raw(std::to_string(v)); }
    JsonWriter& value(std::size_t v) { return value_raw(std::to_string(v)); }
    JsonWriter& value(bool v) { return value_raw(v ? "true" : "false"); }
    JsonWriter& value(const char* v) { return value(std::string(v)); }
    JsonWriter& value(const std::string& v) {
        separator();
        out_ << '"' << escape(v) << '"';
        return *this;
    }
    /// Inserts a pre-serialized JSON fragment.
    JsonWriter& raw(const std::string& json) { return value_raw(json); }

    template <typename T>
    JsonWriter& kv(const std::string& k, const T& v) {
        key(k);
        return value(v);
    }
    JsonWriter& kv_raw(const std::string& k, const std::string& json) {
        key(k);
        return value_raw(json);
    }

    JsonWriter& numbers(const std::vector<double>& vs) {
        begin_array();
        for (double v : vs) value(v);
        return end_array();
    }
    JsonWriter& integers(const std::vector<int>& vs) {
        begin_array();
        for (int v : vs) value(v);
        return end_array();
    }

    std::string str() const { return out_.str(); }

private:
    std::ostringstream out_;
    std::vector<bool> first_;
    bool pending_value_ = false;

    static std::string escape(const std::string& s) {
        std::string r;
        for (char c : s) {
            if (c == '"' || c == '\\') r += '\\';
            if (c == '\n') {
                r += "\\n";
                continue;
            }
            r += c;
        }
        return r;
    }

    void separator() {
        if (pending_value_) {
            pending_value_ = false;
            return;
        }
        if (!first_.empty()) {
            if (!first_.back()) out_ << ',';
            first_.back() = false;
        }
    }

    JsonWriter& value_raw(const std::string& s) {
        separator();
        out_ << s;
        return *this;
    }

    JsonWriter& open(char c) {
        separator();
        out_ << c;
        first_.push_back(true);
        return *this;
    }
    JsonWriter& close(char c) {
        out_ << c;
        first_.pop_back();
        return *this;
    }
};

/// Writes text to a file, creating parent directories is the caller's job.
void write_file(const std::string& path, const std::string& text);

} // namespace refrabill::tools

#endif
