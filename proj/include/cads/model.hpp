// Copyright 2026 The cads Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <fstream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "cads/error.hpp"

namespace cads {

/// One deployable variant of a microservice. A version with ed_watts == 0 is
/// the "off" variant of an optional microservice: it draws no power, serves
/// no QoE or revenue, and still forwards a fraction q of its inbound users.
struct VersionSpec {
    std::string name;
    std::optional<std::string> instance_type;  ///< informational machine-class label
    double ed_watts = 0.0;  ///< average power draw of one instance (W, i.e. Wh per hour)
    double q = 1.0;         ///< fraction of users forwarded to the next microservice, in [0,1]
    std::optional<std::uint64_t> uc;  ///< user requests one instance handles per hour; absent on off versions
    double qoe = 0.0;       ///< quality-of-experience score, in [0,1]
    double rev = 0.0;       ///< revenue units earned while this version is deployed

    bool is_off() const { return ed_watts == 0.0; }

    friend bool operator==(const VersionSpec&, const VersionSpec&) = default;
};

/// A stage of the linear workflow chain, offering one or more versions.
struct Microservice {
    std::string name;
    bool optional = false;
    std::vector<VersionSpec> versions;

    friend bool operator==(const Microservice&, const Microservice&) = default;
};

/// The annotated application: an ordered chain of microservices plus the
/// objective weights. Immutable after parse_application; safe to share
/// across threads.
struct ApplicationModel {
    std::string name;
    std::vector<Microservice> microservices;
    double alpha = 0.5;  ///< weight of the QoE term
    double beta = 0.5;   ///< weight of the revenue term

    std::size_t size() const { return microservices.size(); }

    friend bool operator==(const ApplicationModel&, const ApplicationModel&) = default;
};

/// An assignment of one version index to each microservice, in chain order.
/// Ordering is lexicographic over the index tuple.
struct Configuration {
    std::vector<int> chosen;

    friend bool operator==(const Configuration&, const Configuration&) = default;
    friend bool operator<(const Configuration& a, const Configuration& b) {
        return a.chosen < b.chosen;
    }
};

namespace detail {

inline std::string version_context(const Microservice& ms, const std::string& version_name) {
    return "microservice \"" + ms.name + "\" version \"" + version_name + "\"";
}

// Identifier strings end up unquoted in CSV output, so separators and line
// breaks are rejected at the door.
inline void check_identifier(const std::string& value, const std::string& what) {
    if (value.empty()) {
        throw ValidationError(what + ": name must be non-empty");
    }
    for (char c : value) {
        if (c == ',' || c == ';' || c == '\n' || c == '\r') {
            throw ValidationError(what + ": name \"" + value +
                                  "\" must not contain ',', ';' or line breaks");
        }
    }
}

inline void reject_unknown_fields(const nlohmann::json& obj,
                                  std::initializer_list<const char*> allowed,
                                  const std::string& context) {
    for (const auto& item : obj.items()) {
        bool known = false;
        for (const char* key : allowed) {
            if (item.key() == key) {
                known = true;
                break;
            }
        }
        if (!known) {
            throw ParseError(context + ": unknown field \"" + item.key() + "\"");
        }
    }
}

inline double require_number(const nlohmann::json& obj, const char* key,
                             const std::string& context) {
    if (!obj.contains(key)) {
        throw ParseError(context + ": missing field \"" + key + "\"");
    }
    if (!obj.at(key).is_number()) {
        throw ParseError(context + ": field \"" + key + "\" must be a number");
    }
    return obj.at(key).get<double>();
}

inline std::string require_string(const nlohmann::json& obj, const char* key,
                                  const std::string& context) {
    if (!obj.contains(key)) {
        throw ParseError(context + ": missing field \"" + key + "\"");
    }
    if (!obj.at(key).is_string()) {
        throw ParseError(context + ": field \"" + key + "\" must be a string");
    }
    return obj.at(key).get<std::string>();
}

}  // namespace detail

/// Checks every model invariant; throws ValidationError naming the offending
/// microservice or version.
inline void validate_application(const ApplicationModel& app) {
    detail::check_identifier(app.name, "application");
    if (app.microservices.empty()) {
        throw ValidationError("application \"" + app.name +
                              "\": must contain at least one microservice");
    }
    if (app.alpha < 0.0 || app.beta < 0.0) {
        throw ValidationError("application \"" + app.name +
                              "\": alpha and beta must be non-negative");
    }
    if (app.alpha + app.beta <= 0.0) {
        throw ValidationError("application \"" + app.name + "\": alpha + beta must be positive");
    }
    for (std::size_t i = 0; i < app.microservices.size(); ++i) {
        const Microservice& ms = app.microservices[i];
        detail::check_identifier(ms.name, "microservice #" + std::to_string(i));
        for (std::size_t j = i + 1; j < app.microservices.size(); ++j) {
            if (app.microservices[j].name == ms.name) {
                throw ValidationError("duplicate microservice name \"" + ms.name + "\"");
            }
        }
        if (ms.versions.empty()) {
            throw ValidationError("microservice \"" + ms.name +
                                  "\": must offer at least one version");
        }
        int off_count = 0;
        for (std::size_t v = 0; v < ms.versions.size(); ++v) {
            const VersionSpec& ver = ms.versions[v];
            const std::string ctx = detail::version_context(ms, ver.name);
            detail::check_identifier(ver.name, "microservice \"" + ms.name + "\" version #" +
                                                   std::to_string(v));
            for (std::size_t w = v + 1; w < ms.versions.size(); ++w) {
                if (ms.versions[w].name == ver.name) {
                    throw ValidationError("microservice \"" + ms.name +
                                          "\": duplicate version name \"" + ver.name + "\"");
                }
            }
            if (ver.ed_watts < 0.0) {
                throw ValidationError(ctx + ": ed_watts must be non-negative");
            }
            if (ver.q < 0.0 || ver.q > 1.0) {
                throw ValidationError(ctx + ": q must lie in [0,1]");
            }
            if (ver.qoe < 0.0 || ver.qoe > 1.0) {
                throw ValidationError(ctx + ": qoe must lie in [0,1]");
            }
            if (ver.rev < 0.0) {
                throw ValidationError(ctx + ": rev must be non-negative");
            }
            if (ver.is_off()) {
                ++off_count;
                if (ver.qoe != 0.0) {
                    throw ValidationError(ctx + ": an off version must have qoe = 0");
                }
                if (ver.rev != 0.0) {
                    throw ValidationError(ctx + ": an off version must have rev = 0");
                }
                if (ver.instance_type.has_value()) {
                    throw ValidationError(ctx + ": an off version must not name an instance_type");
                }
                if (ver.uc.has_value()) {
                    throw ValidationError(ctx + ": an off version must not declare uc");
                }
            } else {
                if (!ver.uc.has_value()) {
                    throw ValidationError(ctx + ": uc is required on a powered version");
                }
                if (*ver.uc == 0) {
                    throw ValidationError(ctx + ": uc must be a positive integer");
                }
            }
        }
        if (ms.optional && off_count != 1) {
            throw ValidationError("microservice \"" + ms.name +
                                  "\": an optional microservice needs exactly one version with "
                                  "ed_watts = 0, found " +
                                  std::to_string(off_count));
        }
        if (!ms.optional && off_count != 0) {
            throw ValidationError("microservice \"" + ms.name +
                                  "\": a mandatory microservice must not have a version with "
                                  "ed_watts = 0");
        }
    }
}

/// Parses and validates an application description. The document is a JSON
/// object: {"name", "alpha"?, "beta"?, "microservices": [{"name", "optional",
/// "versions": [{"name", "instance_type"?, "ed_watts", "q", "uc"?, "qoe",
/// "rev"}]}]}. Unknown fields are rejected; alpha and beta default to 0.5.
inline ApplicationModel parse_application(const nlohmann::json& doc) {
    if (!doc.is_object()) {
        throw ParseError("application document: top-level value must be a JSON object");
    }
    detail::reject_unknown_fields(doc, {"name", "alpha", "beta", "microservices"},
                                  "application document");
    ApplicationModel app;
    app.name = detail::require_string(doc, "name", "application document");
    if (doc.contains("alpha")) {
        app.alpha = detail::require_number(doc, "alpha", "application document");
    }
    if (doc.contains("beta")) {
        app.beta = detail::require_number(doc, "beta", "application document");
    }
    if (!doc.contains("microservices") || !doc.at("microservices").is_array()) {
        throw ParseError("application document: field \"microservices\" must be an array");
    }
    for (const auto& ms_doc : doc.at("microservices")) {
        if (!ms_doc.is_object()) {
            throw ParseError("application document: each microservice must be a JSON object");
        }
        detail::reject_unknown_fields(ms_doc, {"name", "optional", "versions"}, "microservice");
        Microservice ms;
        ms.name = detail::require_string(ms_doc, "name", "microservice");
        const std::string ms_ctx = "microservice \"" + ms.name + "\"";
        if (!ms_doc.contains("optional") || !ms_doc.at("optional").is_boolean()) {
            throw ParseError(ms_ctx + ": field \"optional\" must be a boolean");
        }
        ms.optional = ms_doc.at("optional").get<bool>();
        if (!ms_doc.contains("versions") || !ms_doc.at("versions").is_array()) {
            throw ParseError(ms_ctx + ": field \"versions\" must be an array");
        }
        for (const auto& ver_doc : ms_doc.at("versions")) {
            if (!ver_doc.is_object()) {
                throw ParseError(ms_ctx + ": each version must be a JSON object");
            }
            detail::reject_unknown_fields(
                ver_doc, {"name", "instance_type", "ed_watts", "q", "uc", "qoe", "rev"}, ms_ctx);
            VersionSpec ver;
            ver.name = detail::require_string(ver_doc, "name", ms_ctx);
            const std::string ctx = detail::version_context(ms, ver.name);
            if (ver_doc.contains("instance_type")) {
                if (!ver_doc.at("instance_type").is_string()) {
                    throw ParseError(ctx + ": field \"instance_type\" must be a string");
                }
                ver.instance_type = ver_doc.at("instance_type").get<std::string>();
            }
            ver.ed_watts = detail::require_number(ver_doc, "ed_watts", ctx);
            ver.q = detail::require_number(ver_doc, "q", ctx);
            if (ver_doc.contains("uc")) {
                if (!ver_doc.at("uc").is_number_unsigned() || ver_doc.at("uc").get<std::uint64_t>() == 0) {
                    throw ParseError(ctx + ": field \"uc\" must be a positive integer");
                }
                ver.uc = ver_doc.at("uc").get<std::uint64_t>();
            }
            ver.qoe = detail::require_number(ver_doc, "qoe", ctx);
            ver.rev = detail::require_number(ver_doc, "rev", ctx);
            ms.versions.push_back(std::move(ver));
        }
        app.microservices.push_back(std::move(ms));
    }
    validate_application(app);
    return app;
}

inline ApplicationModel parse_application(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("application document: ") + e.what());
    }
    return parse_application(doc);
}

inline ApplicationModel load_application(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError("cannot open application file \"" + path + "\"");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    try {
        return parse_application(buffer.str());
    } catch (const Error& e) {
        throw ParseError(path + ": " + e.what());
    }
}

/// Serializes a model back to the document schema. parse_application of the
/// result reproduces the model exactly.
inline nlohmann::json serialize_application(const ApplicationModel& app) {
    nlohmann::json doc;
    doc["name"] = app.name;
    doc["alpha"] = app.alpha;
    doc["beta"] = app.beta;
    doc["microservices"] = nlohmann::json::array();
    for (const Microservice& ms : app.microservices) {
        nlohmann::json ms_doc;
        ms_doc["name"] = ms.name;
        ms_doc["optional"] = ms.optional;
        ms_doc["versions"] = nlohmann::json::array();
        for (const VersionSpec& ver : ms.versions) {
            nlohmann::json ver_doc;
            ver_doc["name"] = ver.name;
            if (ver.instance_type) {
                ver_doc["instance_type"] = *ver.instance_type;
            }
            ver_doc["ed_watts"] = ver.ed_watts;
            ver_doc["q"] = ver.q;
            if (ver.uc) {
                ver_doc["uc"] = *ver.uc;
            }
            ver_doc["qoe"] = ver.qoe;
            ver_doc["rev"] = ver.rev;
            ms_doc["versions"].push_back(std::move(ver_doc));
        }
        doc["microservices"].push_back(std::move(ms_doc));
    }
    return doc;
}

/// Throws unless the configuration assigns a valid version index to every
/// microservice of the chain.
inline void validate_configuration(const ApplicationModel& app, const Configuration& config) {
    if (config.chosen.size() != app.size()) {
        throw ValidationError("configuration assigns " + std::to_string(config.chosen.size()) +
                              " versions but the application has " + std::to_string(app.size()) +
                              " microservices");
    }
    for (std::size_t i = 0; i < config.chosen.size(); ++i) {
        const int v = config.chosen[i];
        if (v < 0 || static_cast<std::size_t>(v) >= app.microservices[i].versions.size()) {
            throw ValidationError("configuration index " + std::to_string(v) +
                                  " is out of range for microservice \"" +
                                  app.microservices[i].name + "\"");
        }
    }
}

/// Number of distinct configurations: the product of per-microservice version
/// counts. Throws on overflow of the 64-bit count.
inline std::uint64_t config_count(const ApplicationModel& app) {
    std::uint64_t count = 1;
    for (const Microservice& ms : app.microservices) {
        const std::uint64_t k = ms.versions.size();
        if (count > UINT64_MAX / k) {
            throw ValidationError("configuration space of \"" + app.name +
                                  "\" exceeds the 64-bit count");
        }
        count *= k;
    }
    return count;
}

/// Advances a configuration to its lexicographic successor (last index varies
/// fastest). Returns false when the last configuration is passed in.
inline bool advance_configuration(const ApplicationModel& app, Configuration& config) {
    for (std::size_t i = config.chosen.size(); i-- > 0;) {
        if (config.chosen[i] + 1 < static_cast<int>(app.microservices[i].versions.size())) {
            ++config.chosen[i];
            std::fill(config.chosen.begin() + static_cast<std::ptrdiff_t>(i) + 1,
                      config.chosen.end(), 0);
            return true;
        }
    }
    return false;
}

/// Calls fn for every configuration, in lexicographic order over
/// (microservice index, version index).
template <typename Fn>
void for_each_configuration(const ApplicationModel& app, Fn&& fn) {
    Configuration config{std::vector<int>(app.size(), 0)};
    do {
        fn(const_cast<const Configuration&>(config));
    } while (advance_configuration(app, config));
}

/// Lazily iterable view over the configuration space, in the same
/// lexicographic order as for_each_configuration.
class ConfigSpace {
public:
    explicit ConfigSpace(const ApplicationModel& app) : app_(&app) {}

    class iterator {
    public:
        using value_type = Configuration;
        using reference = const Configuration&;
        using pointer = const Configuration*;
        using difference_type = std::ptrdiff_t;
        using iterator_category = std::input_iterator_tag;

        iterator() = default;
        iterator(const ApplicationModel* app, bool at_end) : app_(app), done_(at_end) {
            if (!done_) {
                current_.chosen.assign(app_->size(), 0);
            }
        }

        reference operator*() const { return current_; }
        pointer operator->() const { return &current_; }

        iterator& operator++() {
            done_ = !advance_configuration(*app_, current_);
            return *this;
        }
        void operator++(int) { ++*this; }

        friend bool operator==(const iterator& a, const iterator& b) {
            return a.done_ == b.done_ && (a.done_ || a.current_ == b.current_);
        }
        friend bool operator!=(const iterator& a, const iterator& b) { return !(a == b); }

    private:
        const ApplicationModel* app_ = nullptr;
        Configuration current_;
        bool done_ = true;
    };

    iterator begin() const { return iterator(app_, false); }
    iterator end() const { return iterator(app_, true); }

private:
    const ApplicationModel* app_;
};

inline ConfigSpace config_space(const ApplicationModel& app) { return ConfigSpace(app); }

/// Renders a configuration as its version names joined by ';', in chain order.
inline std::string format_configuration(const ApplicationModel& app, const Configuration& config) {
    std::string out;
    for (std::size_t i = 0; i < config.chosen.size(); ++i) {
        if (i > 0) {
            out += ';';
        }
        out += app.microservices[i].versions[static_cast<std::size_t>(config.chosen[i])].name;
    }
    return out;
}

}  // namespace cads
