#pragma once

#include <string>
#include <vector>

namespace kqent {

/// Fixed-format float serialization: 17 significant digits, round-trip
/// exact, identical bytes across runs.
std::string format_double(double x);

/**
 Minimal JSON emitter with deterministic output: keys appear in the
 order they are written, floats go through format_double, no locale
 dependence. Parsing of input files is done with nlohmann::json; this
 writer exists so that emitted results are byte-stable.
*/
class JsonWriter {
public:
    void begin_object();
    void end_object();
    void begin_array();
    void end_array();
    void key(const std::string& name);
    void value(double v);
    void value(int v);
    void value(long long v);
    void value(bool v);
    void value(const std::string& v);
    void null_value();
    /// Splice an already-serialized JSON value verbatim.
    void raw(const std::string& serialized);

    const std::string& str() const { return out_; }

private:
    void separator();

    std::string out_;
    std::vector<bool> need_comma_;
    bool pending_key_ = false;
};

std::string json_escape(const std::string& s);

} // namespace kqent
